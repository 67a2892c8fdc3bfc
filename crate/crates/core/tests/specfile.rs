#[path = "support/docgen.rs"]
mod docgen;

use lieforge::corpus;
use lieforge::specfile::{instantiate, parse, render};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_documents_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..100 {
        let doc = docgen::random_document(&mut rng);
        let text = render(&doc);
        let parsed = parse(&text).unwrap_or_else(|e| panic!("doc {i}: {e}\n{text}"));
        assert_eq!(parsed, doc, "doc {i}\n{text}");
        assert_eq!(render(&parsed), text);
    }
}

#[test]
fn corrupted_fixtures_report_their_line() {
    let fixtures = docgen::corrupt_fixtures();
    assert_eq!(fixtures.len(), 10);
    for (name, text, line) in fixtures {
        let err = parse(&text).expect_err(&name);
        assert_eq!(err.line, line, "{name}: {err}");
    }
}

#[test]
fn truncation_is_coherent() {
    let doc = parse(corpus::ESVLA_LIE).unwrap();
    let big = instantiate(&doc, Some(5)).unwrap();
    let small = instantiate(&doc, Some(3)).unwrap();
    for (i, g) in small.generators().iter().enumerate() {
        for (j, h) in small.generators().iter().enumerate() {
            let (a, fa) = small.table().bracket_gen(i, j);
            if fa {
                continue;
            }
            let bi = big.position(g).unwrap();
            let bj = big.position(h).unwrap();
            let (b, _) = big.table().bracket_gen(bi, bj);
            assert_eq!(small.to_element(&a), big.to_element(&b), "[{g}, {h}]");
        }
    }
}
