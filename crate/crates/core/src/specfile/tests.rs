use super::*;
use crate::algebra::Scope;
use crate::corpus;
use crate::linalg::rat;

fn doc_with(lines: &str) -> Result<AlgebraSpecDoc, ParseError> {
    parse(&format!(
        "algebra t convention super\nfamily L integer even\nfamily Y half odd\n{lines}\n"
    ))
}

#[test]
fn virasoro_rule_coefficient() {
    let doc = doc_with("rule L[m] L[n] => (n - m) L[m+n]").unwrap();
    let rule = &doc.rules[0].value;
    assert_eq!(rule.terms.len(), 1);
    let expected = Poly::var(Var::N).add(&Poly::var(Var::M).neg());
    assert_eq!(rule.terms[0].coefficient, expected);
    assert_eq!(rule.terms[0].family, "L");
    assert!(rule.terms[0].offset.is_zero());
    assert_eq!(doc.rules[0].line, 4);
}

#[test]
fn half_rule_offset_and_coefficient() {
    let doc = doc_with("rule Y[m+1/2] Y[n+1/2] => 2 L[m+n+1]").unwrap();
    let rule = &doc.rules[0].value;
    assert_eq!(rule.terms[0].coefficient, Poly::constant(int(2)));
    assert_eq!(rule.terms[0].offset, int(1));
    assert_eq!(
        rule.left.index,
        IndexPattern::Var {
            var: Var::M,
            offset: rat(1, 2)
        }
    );
}

#[test]
fn undeclared_family_names_symbol_and_line() {
    let err = doc_with("\nrule L[m] Z[n] => 1 L[m+n]").unwrap_err();
    assert_eq!(err.line, 5);
    assert_eq!(err.col, 11);
    match &err.kind {
        ParseErrorKind::Semantic(msg) => assert!(msg.contains('Z'), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn duplicate_rule_rejected() {
    let err = doc_with("rule L[m] L[n] => 0\nrule L[m] L[n+1] => 0").unwrap_err();
    assert_eq!(err.line, 5);
    assert!(matches!(err.kind, ParseErrorKind::Semantic(_)));
}

#[test]
fn syntax_error_lists_expected_tokens() {
    let err = doc_with("rule L[m] L[n] (n - m) L[m+n]").unwrap_err();
    assert_eq!((err.line, err.col), (4, 16));
    match err.kind {
        ParseErrorKind::Syntax { expected, found } => {
            assert_eq!(expected, vec!["'=>'".to_string()]);
            assert_eq!(found, "'('");
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn variables_are_positional() {
    let err = doc_with("rule L[n] L[m] => 0").unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::Semantic(_)));
}

#[test]
fn half_family_needs_half_offset() {
    assert!(doc_with("rule L[m] Y[n] => 0").is_err());
    assert!(doc_with("rule L[m] Y[n-1/2] => 0").is_ok());
}

#[test]
fn one_family_renders_two_lines() {
    let mut doc = AlgebraSpecDoc::new("a", Convention::Plain);
    doc.families.push(Located::new(
        2,
        FamilyDecl {
            symbol: "e".into(),
            kind: IndexKind::Integer,
            parity: Parity::Even,
        },
    ));
    let text = render(&doc);
    assert_eq!(text, "algebra a convention plain\nfamily e integer even\n");
    assert_eq!(parse(&text).unwrap(), doc);
}

#[test]
fn half_coefficient_survives_round_trip() {
    let doc = doc_with("rule L[m] L[n] => 1/2 L[m+n]").unwrap();
    let text = render(&doc);
    assert!(text.contains("1/2 L[m+n]"), "{text}");
    let again = parse(&text).unwrap();
    assert_eq!(again, doc);
    assert_eq!(again.rules[0].value.terms[0].coefficient, Poly::constant(rat(1, 2)));
}

#[test]
fn bundled_files_round_trip() {
    for text in [
        corpus::ESVLA_LIE,
        corpus::HEISENBERG_LIE,
        corpus::SL2_LIE,
        corpus::SNLA_ZERO_LIE,
        corpus::SNLA_SQUARE_LIE,
        corpus::SUPER_QM_LIE,
    ] {
        let doc = parse(text).unwrap();
        let rendered = render(&doc);
        assert_eq!(parse(&rendered).unwrap(), doc, "{rendered}");
        assert_eq!(render(&parse(&rendered).unwrap()), rendered);
    }
}

#[test]
fn cocycle_lines_parse() {
    let doc = parse(corpus::ESVLA_LIE).unwrap();
    assert_eq!(doc.cocycle_names(), vec!["omega1", "omega2", "omega3"]);
    let w2 = &doc.cocycle_lines("omega2")[0].value;
    assert_eq!(w2.value, Poly::var(Var::M).scale(&rat(1, 2)));
    let cond = w2.when.as_ref().unwrap();
    assert!(cond.holds(&int(2), &int(-3)));
    assert!(!cond.holds(&int(2), &int(-2)));
}

#[test]
fn esvla_window_three_sizes() {
    let doc = parse(corpus::ESVLA_LIE).unwrap();
    let inst = instantiate(&doc, Some(3)).unwrap();
    assert_eq!(inst.dim(), 27);
    let count = |f: &str| inst.generators().iter().filter(|g| g.family == f).count();
    assert_eq!((count("L"), count("M"), count("N"), count("Y")), (7, 7, 7, 6));
    let ys: Vec<i64> = inst
        .generators()
        .iter()
        .filter(|g| g.family == "Y")
        .map(|g| g.doubled_index)
        .collect();
    assert_eq!(ys, vec![-5, -3, -1, 1, 3, 5]);
}

#[test]
fn strict_mode_flags_half_n_outputs() {
    let doc = parse(corpus::ESVLA_LIE).unwrap();
    let inst = instantiate(&doc, Some(3)).unwrap();
    let flagged: Vec<_> = inst
        .findings()
        .iter()
        .filter(|f| f.code == "ill_kinded_index")
        .collect();
    // every (M_m, Y_{n+1/2}) pair with both in the window
    assert_eq!(flagged.len(), 7 * 6);
    assert!(flagged.iter().all(|f| f.location.starts_with("[M_")));
    assert!(flagged.iter().all(|f| f.line == Some(16)));
}

#[test]
fn extended_mode_keeps_n_outputs() {
    let mut doc = parse(corpus::ESVLA_LIE).unwrap();
    doc.family_mut("N").unwrap().kind = IndexKind::Mixed;
    let inst = instantiate(&doc, Some(3)).unwrap();
    assert!(inst.findings().is_empty());
    let m1 = Element::generator(GeneratorId::at("M", 1));
    let y = Element::generator(GeneratorId::half("Y", 0));
    let (v, boundary) = inst.bracket(&m1, &y).unwrap();
    assert!(!boundary);
    assert_eq!(v, Element::generator(GeneratorId::half("N", 1)));
}

#[test]
fn abelian_basis_document() {
    let doc = parse("algebra ab convention plain\nfamily e integer even\nbasis e[1] e[2] e[3] e[4]\n")
        .unwrap();
    let inst = instantiate(&doc, Some(7)).unwrap();
    assert_eq!(inst.dim(), 4);
    assert_eq!(inst.table().pairs().count(), 0);
    assert_eq!(inst.window(), None);
}

#[test]
fn basis_files_match_programmatic_corpus() {
    let pairs = [
        (corpus::HEISENBERG_LIE, corpus::heisenberg()),
        (corpus::SL2_LIE, corpus::sl2()),
        (corpus::SUPER_QM_LIE, corpus::super_qm()),
    ];
    for (text, inst) in pairs {
        let built = instantiate(&parse(text).unwrap(), None).unwrap();
        assert_eq!(built.canonical_dump(), inst.canonical_dump());
    }
}

#[test]
fn missing_window_is_an_error() {
    let doc = parse(corpus::ESVLA_LIE).unwrap();
    assert_eq!(instantiate(&doc, None).unwrap_err(), InstantiateError::MissingWindow);
    assert_eq!(instantiate(&doc, Some(0)).unwrap_err(), InstantiateError::WindowTooSmall);
}

#[test]
fn instantiate_is_deterministic() {
    let doc = parse(corpus::ESVLA_LIE).unwrap();
    let a = instantiate(&doc, Some(4)).unwrap().canonical_dump();
    let b = instantiate(&parse(&render(&doc)).unwrap(), Some(4))
        .unwrap()
        .canonical_dump();
    assert_eq!(a, b);
}

#[test]
fn table_has_no_dangling_generators() {
    let mut doc = parse(corpus::ESVLA_LIE).unwrap();
    doc.family_mut("N").unwrap().kind = IndexKind::Mixed;
    let inst = instantiate(&doc, Some(3)).unwrap();
    for (_, v) in inst.table().pairs() {
        assert!(v.indices().all(|k| k < inst.dim()));
    }
    assert!(inst.check_jacobi(Scope::Interior).checked > 0);
}

#[test]
fn entry_accepts_implicit_unit_and_minus() {
    let doc = parse(
        "algebra x convention plain\nfamily e integer even\nentry e[1] e[2] => e[1] - 1/3 e[2]\n",
    )
    .unwrap();
    let v = &doc.entries[0].value.value;
    assert_eq!(v.coefficient(&GeneratorId::at("e", 1)), int(1));
    assert_eq!(v.coefficient(&GeneratorId::at("e", 2)), rat(-1, 3));
    assert_eq!(parse(&render(&doc)).unwrap(), doc);
}
