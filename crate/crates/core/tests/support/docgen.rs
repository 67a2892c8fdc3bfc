//! Random valid spec documents and the corrupted fixture set.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use lieforge::algebra::{Convention, Element, GeneratorId, IndexKind, Parity};
use lieforge::linalg::{rat, Rational};
use lieforge::specfile::{
    AlgebraSpecDoc, BracketRule, CocycleDecl, EntryDecl, FamilyDecl, FormDecl, GenPattern,
    IndexPattern, LinearCondition, Located, Poly, RuleTerm, Var,
};
use rand::seq::SliceRandom;
use rand::Rng;

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
    rat(rng.gen_range(-4..=4), den)
}

fn poly<R: Rng>(rng: &mut R, max_degree: u32) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(0..4) {
        let a = rng.gen_range(0..=max_degree);
        let b = rng.gen_range(0..=max_degree - a);
        p.add_monomial((a, b), small_rational(rng));
    }
    p
}

fn offset_for<R: Rng>(rng: &mut R, kind: IndexKind) -> Rational {
    let base = rng.gen_range(-2i64..=2);
    match kind {
        IndexKind::Integer => rat(base, 1),
        IndexKind::Half => rat(2 * base + 1, 2),
        IndexKind::Mixed => rat(rng.gen_range(-4i64..=4), 2),
    }
}

fn index_for<R: Rng>(rng: &mut R, kind: IndexKind) -> i64 {
    loop {
        let d = rng.gen_range(-6i64..=6);
        if kind.admits(d) {
            return d;
        }
    }
}

fn pattern<R: Rng>(rng: &mut R, fam: &FamilyDecl, var: Var, literal: bool) -> GenPattern {
    let index = if literal && rng.gen_bool(0.3) {
        IndexPattern::Literal(rat(index_for(rng, fam.kind), 2))
    } else {
        IndexPattern::Var {
            var,
            offset: offset_for(rng, fam.kind),
        }
    };
    GenPattern {
        family: fam.symbol.clone(),
        index,
    }
}

fn element<R: Rng>(rng: &mut R, gens: &[GeneratorId]) -> Element {
    let mut e = Element::zero();
    for _ in 0..rng.gen_range(0..3) {
        e.add_term(gens.choose(rng).unwrap().clone(), &small_rational(rng));
    }
    e
}

/// A random document that the parser accepts.
pub fn random_document<R: Rng>(rng: &mut R) -> AlgebraSpecDoc {
    let convention = if rng.gen_bool(0.5) {
        Convention::Plain
    } else {
        Convention::Super
    };
    let mut doc = AlgebraSpecDoc::new(format!("doc{}", rng.gen_range(0..1000)), convention);
    let symbols = ["A", "B", "C", "Lx", "e", "Y2"];
    let nfam = rng.gen_range(1..=4);
    let mut line = 2;
    for sym in symbols.choose_multiple(rng, nfam) {
        let kind = *[IndexKind::Integer, IndexKind::Half, IndexKind::Mixed]
            .choose(rng)
            .unwrap();
        let parity = if rng.gen_bool(0.5) {
            Parity::Even
        } else {
            Parity::Odd
        };
        doc.families.push(Located::new(
            line,
            FamilyDecl {
                symbol: sym.to_string(),
                kind,
                parity,
            },
        ));
        line += 1;
    }
    let families: Vec<FamilyDecl> = doc.families.iter().map(|f| f.value.clone()).collect();
    let mut pool: BTreeSet<GeneratorId> = BTreeSet::new();
    for _ in 0..rng.gen_range(1..6) {
        let f = families.choose(rng).unwrap();
        pool.insert(GeneratorId::new(f.symbol.clone(), index_for(rng, f.kind)));
    }
    let gens: Vec<GeneratorId> = pool.into_iter().collect();
    if rng.gen_bool(0.5) {
        for g in &gens {
            doc.basis.push(Located::new(line, g.clone()));
        }
        line += 1;
    }
    let mut seen = BTreeSet::new();
    for _ in 0..rng.gen_range(0..5) {
        let l = families.choose(rng).unwrap();
        let r = families.choose(rng).unwrap();
        if !seen.insert((l.symbol.clone(), r.symbol.clone())) {
            continue;
        }
        let terms = (0..rng.gen_range(0..3))
            .map(|_| {
                let t = families.choose(rng).unwrap();
                RuleTerm {
                    coefficient: poly(rng, 2),
                    family: t.symbol.clone(),
                    offset: rat(rng.gen_range(-4i64..=4), 2),
                }
            })
            .collect();
        let when = rng.gen_bool(0.3).then(|| LinearCondition(poly(rng, 1)));
        doc.rules.push(Located::new(
            line,
            BracketRule {
                left: pattern(rng, l, Var::M, false),
                right: pattern(rng, r, Var::N, false),
                terms,
                when,
            },
        ));
        line += 1;
    }
    let mut pairs = BTreeSet::new();
    for _ in 0..rng.gen_range(0..4) {
        let a = gens.choose(rng).unwrap().clone();
        let b = gens.choose(rng).unwrap().clone();
        if pairs.insert((a.clone(), b.clone())) {
            let value = element(rng, &gens);
            doc.entries
                .push(Located::new(line, EntryDecl { left: a, right: b, value }));
            line += 1;
        }
    }
    let mut pairs = BTreeSet::new();
    for _ in 0..rng.gen_range(0..3) {
        let a = gens.choose(rng).unwrap().clone();
        let b = gens.choose(rng).unwrap().clone();
        if pairs.insert((a.clone(), b.clone())) {
            let value = element(rng, &gens);
            doc.products
                .push(Located::new(line, EntryDecl { left: a, right: b, value }));
            line += 1;
        }
    }
    match rng.gen_range(0..3) {
        0 => {}
        1 => {
            doc.form.push(Located::new(line, FormDecl::Standard));
            line += 1;
        }
        _ => {
            let mut pairs = BTreeSet::new();
            for _ in 0..rng.gen_range(1..3) {
                let a = gens.choose(rng).unwrap().clone();
                let b = gens.choose(rng).unwrap().clone();
                if pairs.insert((a.clone(), b.clone())) {
                    doc.form.push(Located::new(
                        line,
                        FormDecl::Entry {
                            left: a,
                            right: b,
                            value: small_rational(rng),
                        },
                    ));
                    line += 1;
                }
            }
        }
    }
    let mut keys = BTreeSet::new();
    for _ in 0..rng.gen_range(0..4) {
        let name = ["w", "omega", "c1"].choose(rng).unwrap().to_string();
        let l = families.choose(rng).unwrap();
        let r = families.choose(rng).unwrap();
        let left = pattern(rng, l, Var::M, true);
        let right = pattern(rng, r, Var::N, true);
        if !keys.insert(format!("{name} {left:?} {right:?}")) {
            continue;
        }
        let when = rng.gen_bool(0.5).then(|| LinearCondition(poly(rng, 1)));
        doc.cocycles.push(Located::new(
            line,
            CocycleDecl {
                name,
                left,
                right,
                value: poly(rng, 2),
                when,
            },
        ));
        line += 1;
    }
    doc
}

pub fn corrupt_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures/corrupt")
        .canonicalize()
        .expect("fixture directory")
}

/// `(file name, text, expected error line)` for every corrupted fixture.
pub fn corrupt_fixtures() -> Vec<(String, String, usize)> {
    let mut out = Vec::new();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corrupt_fixture_dir())
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "lie"))
        .collect();
    paths.sort();
    for p in paths {
        let text = std::fs::read_to_string(&p).expect("fixture");
        let expected = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# error-line: "))
            .and_then(|n| n.trim().parse().ok())
            .expect("fixture header");
        out.push((
            p.file_name().unwrap().to_string_lossy().into_owned(),
            text,
            expected,
        ));
    }
    out
}
