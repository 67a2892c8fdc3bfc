use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use super::{AlgebraSpecDoc, BracketRule};
use crate::algebra::{
    AlgebraError, AlgebraInstance, Element, Family, GeneratorId, IndexKind, InstanceBuilder,
    InstanceFinding,
};
use crate::linalg::{fmt_rational, int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstantiateError {
    #[error("window must be at least 1")]
    WindowTooSmall,
    #[error("document has no basis line, so a window is required")]
    MissingWindow,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn window_generators(family: &Family, window: u32) -> Vec<GeneratorId> {
    let bound = 2 * window as i64;
    (-bound..=bound)
        .filter(|&d| family.kind.admits(d))
        .map(|d| GeneratorId::new(family.symbol.clone(), d))
        .collect()
}

fn to_doubled(index: &Rational) -> Option<i64> {
    let d = index * int(2);
    if d.is_integer() {
        i64::try_from(d.to_integer()).ok()
    } else {
        None
    }
}

struct RuleContext<'a> {
    families: &'a [Family],
    present: &'a BTreeSet<GeneratorId>,
}

impl RuleContext<'_> {
    fn kind(&self, symbol: &str) -> IndexKind {
        self.families
            .iter()
            .find(|f| f.symbol == symbol)
            .map(|f| f.kind)
            .expect("parser checked family")
    }

    /// Evaluates one rule on an ordered pair. Returns the value, whether a
    /// nonzero term fell outside the generator set, and kind findings.
    fn apply(
        &self,
        rule: &BracketRule,
        line: usize,
        g: &GeneratorId,
        h: &GeneratorId,
    ) -> Option<(Element, bool, Vec<InstanceFinding>)> {
        let m = rule.left.bind(g, self.kind(&g.family))?;
        let n = rule.right.bind(h, self.kind(&h.family))?;
        if let Some(cond) = &rule.when {
            if !cond.holds(&m, &n) {
                return None;
            }
        }
        let mut value = Element::zero();
        let mut boundary = false;
        let mut findings = Vec::new();
        for term in &rule.terms {
            let coef = term.coefficient.eval(&m, &n);
            if coef.is_zero() {
                continue;
            }
            let index = &m + &n + &term.offset;
            let kind = self.kind(&term.family);
            let doubled = to_doubled(&index).filter(|&d| kind.admits(d));
            let Some(d) = doubled else {
                findings.push(InstanceFinding {
                    code: "ill_kinded_index".into(),
                    line: Some(line),
                    location: format!("[{g}, {h}]"),
                    detail: format!(
                        "result index {} is not valid for {} family {}",
                        fmt_rational(&index),
                        kind.keyword(),
                        term.family
                    ),
                });
                boundary = true;
                continue;
            };
            let target = GeneratorId::new(term.family.clone(), d);
            if self.present.contains(&target) {
                value.add_term(target, &coef);
            } else {
                boundary = true;
            }
        }
        Some((value, boundary, findings))
    }
}

/// Builds an instance from a document. Documents with a `basis` line use
/// exactly those generators and ignore `window`; otherwise every family is
/// instantiated over indices with `|index| <= window`.
///
/// Rule terms whose result lies outside the generator set are dropped and
/// the pair is marked as a boundary pair. Terms whose result index does not
/// fit the result family's kind are dropped the same way and also reported
/// as `ill_kinded_index` findings.
pub fn instantiate(
    doc: &AlgebraSpecDoc,
    window: Option<u32>,
) -> Result<AlgebraInstance, InstantiateError> {
    let families: Vec<Family> = doc
        .families
        .iter()
        .map(|f| Family::new(f.value.symbol.clone(), f.value.kind, f.value.parity))
        .collect();
    let mut builder = InstanceBuilder::new(doc.name.clone(), doc.convention);
    for f in &families {
        builder.family(f.clone());
    }
    let generators: Vec<GeneratorId> = if doc.basis.is_empty() {
        let w = window.ok_or(InstantiateError::MissingWindow)?;
        if w < 1 {
            return Err(InstantiateError::WindowTooSmall);
        }
        builder.window(w);
        families
            .iter()
            .flat_map(|f| window_generators(f, w))
            .collect()
    } else {
        doc.basis.iter().map(|g| g.value.clone()).collect()
    };
    for g in &generators {
        builder.generator(g.clone());
    }
    let present: BTreeSet<GeneratorId> = generators.iter().cloned().collect();
    let ctx = RuleContext {
        families: &families,
        present: &present,
    };
    let mut ordered: Vec<&GeneratorId> = present.iter().collect();
    ordered.sort_by_key(|g| {
        (
            families.iter().position(|f| f.symbol == g.family),
            g.doubled_index,
        )
    });
    for rule in &doc.rules {
        let lefts: Vec<&&GeneratorId> = ordered
            .iter()
            .filter(|g| g.family == rule.value.left.family)
            .collect();
        let rights: Vec<&&GeneratorId> = ordered
            .iter()
            .filter(|g| g.family == rule.value.right.family)
            .collect();
        for g in &lefts {
            for h in &rights {
                let Some((value, boundary, findings)) = ctx.apply(&rule.value, rule.line, g, h)
                else {
                    continue;
                };
                for f in findings {
                    builder.finding(f);
                }
                builder.bracket_with_boundary((**g).clone(), (**h).clone(), value, boundary);
            }
        }
    }
    for e in &doc.entries {
        builder.bracket(e.value.left.clone(), e.value.right.clone(), e.value.value.clone());
    }
    Ok(builder.build()?)
}
