use num_traits::{One, Signed, Zero};

use super::{
    AlgebraSpecDoc, BracketRule, CocycleDecl, EntryDecl, FormDecl, GenPattern, IndexPattern,
    Poly, RuleTerm,
};
use crate::algebra::{Element, GeneratorId};
use crate::linalg::{fmt_rational, Rational};

fn monomial_vars(a: u32, b: u32) -> Vec<String> {
    let mut out = Vec::new();
    for (name, e) in [("m", a), ("n", b)] {
        match e {
            0 => {}
            1 => out.push(name.to_string()),
            _ => out.push(format!("{name}^{e}")),
        }
    }
    out
}

/// Polynomial as `c*m^a*n^b` terms joined by signs, highest degree first.
pub(super) fn poly_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut monos: Vec<((u32, u32), &Rational)> = p.monomials().collect();
    monos.sort_by(|(x, _), (y, _)| (y.0 + y.1, y.0).cmp(&(x.0 + x.1, x.0)));
    let mut out = String::new();
    for (i, ((a, b), c)) in monos.into_iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let vars = monomial_vars(a, b);
        let mut parts = Vec::new();
        if !mag.is_one() || vars.is_empty() {
            parts.push(fmt_rational(&mag));
        }
        parts.extend(vars);
        out.push_str(&parts.join("*"));
    }
    out
}

fn signed_offset(offset: &Rational) -> String {
    if offset.is_zero() {
        String::new()
    } else if offset.is_negative() {
        format!("-{}", fmt_rational(&-offset.clone()))
    } else {
        format!("+{}", fmt_rational(offset))
    }
}

fn genpat_text(p: &GenPattern) -> String {
    let idx = match &p.index {
        IndexPattern::Var { var, offset } => format!("{}{}", var.name(), signed_offset(offset)),
        IndexPattern::Literal(v) => fmt_rational(v),
    };
    format!("{}[{}]", p.family, idx)
}

fn generator_text(g: &GeneratorId) -> String {
    format!("{}[{}]", g.family, fmt_rational(&g.index()))
}

fn term_text(t: &RuleTerm, first: bool) -> String {
    let target = format!("{}[m+n{}]", t.family, signed_offset(&t.offset));
    let (neg, coef) = match t.coefficient.as_constant() {
        Some(c) if c.is_negative() => (true, Some(-c)),
        Some(c) => (false, Some(c)),
        None => (false, None),
    };
    let sign = match (first, neg) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    };
    let body = match coef {
        Some(c) if c.is_one() => target,
        Some(c) => format!("{} {target}", fmt_rational(&c)),
        None => format!("({}) {target}", poly_text(&t.coefficient)),
    };
    format!("{sign}{body}")
}

fn rule_text(r: &BracketRule) -> String {
    let rhs = if r.terms.is_empty() {
        "0".to_string()
    } else {
        r.terms
            .iter()
            .enumerate()
            .map(|(i, t)| term_text(t, i == 0))
            .collect()
    };
    let mut s = format!(
        "rule {} {} => {rhs}",
        genpat_text(&r.left),
        genpat_text(&r.right)
    );
    if let Some(w) = &r.when {
        s.push_str(&format!(" when {} = 0", poly_text(&w.0)));
    }
    s
}

fn element_text(e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (g, c)) in e.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i == 0, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&fmt_rational(&mag));
            out.push(' ');
        }
        out.push_str(&generator_text(g));
    }
    out
}

fn entry_text(kw: &str, e: &EntryDecl) -> String {
    format!(
        "{kw} {} {} => {}",
        generator_text(&e.left),
        generator_text(&e.right),
        element_text(&e.value)
    )
}

fn cocycle_text(c: &CocycleDecl) -> String {
    let mut s = format!(
        "cocycle {} {} {} => {}",
        c.name,
        genpat_text(&c.left),
        genpat_text(&c.right),
        poly_text(&c.value)
    );
    if let Some(w) = &c.when {
        s.push_str(&format!(" when {} = 0", poly_text(&w.0)));
    }
    s
}

/// Canonical text for a document. Section order is fixed; line order within
/// a section follows the document.
pub fn render(doc: &AlgebraSpecDoc) -> String {
    let mut lines = vec![format!(
        "algebra {} convention {}",
        doc.name,
        doc.convention.keyword()
    )];
    for f in &doc.families {
        let f = &f.value;
        lines.push(format!(
            "family {} {} {}",
            f.symbol,
            f.kind.keyword(),
            f.parity.keyword()
        ));
    }
    if !doc.basis.is_empty() {
        let gens: Vec<String> = doc.basis.iter().map(|g| generator_text(&g.value)).collect();
        lines.push(format!("basis {}", gens.join(" ")));
    }
    lines.extend(doc.rules.iter().map(|r| rule_text(&r.value)));
    lines.extend(doc.entries.iter().map(|e| entry_text("entry", &e.value)));
    lines.extend(doc.products.iter().map(|e| entry_text("product", &e.value)));
    for f in &doc.form {
        lines.push(match &f.value {
            FormDecl::Standard => "form standard".to_string(),
            FormDecl::Entry { left, right, value } => format!(
                "form {} {} => {}",
                generator_text(left),
                generator_text(right),
                fmt_rational(value)
            ),
        });
    }
    lines.extend(doc.cocycles.iter().map(|c| cocycle_text(&c.value)));
    let mut out = lines.join("\n");
    out.push('\n');
    out
}
