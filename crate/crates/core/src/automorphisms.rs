//! Candidate automorphism checks and the scalar coefficient recurrences.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraInstance, Element, GeneratorId, Scope};
use crate::cohomology::LinearEndo;
use crate::linalg::{fmt_rational, parse_rational, Rational, SparseMatrix, SparseVec};
use crate::report::{Finding, Report};
use crate::snla::{ProductTable, SymplecticForm};
use crate::workers;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("map is singular: rank {rank} < {dim}")]
    Singular { rank: usize, dim: usize },
    #[error("dimension mismatch: map {map}, target {target}")]
    DimMismatch { map: usize, target: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("scaling factor must be nonzero")]
    ZeroAlpha,
}

fn parse_err(line: usize, message: impl Into<String>) -> AutError {
    AutError::Parse {
        line,
        message: message.into(),
    }
}

fn same_dim(map: &LinearEndo, target: usize) -> Result<(), AutError> {
    if map.dim() == target {
        Ok(())
    } else {
        Err(AutError::DimMismatch {
            map: map.dim(),
            target,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutViolation {
    pub pair: (GeneratorId, GeneratorId),
    /// `φ[x, y]`.
    pub mapped_bracket: Element,
    /// `[φx, φy]`.
    pub bracket_of_images: Element,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AutReport {
    pub violations: Vec<AutViolation>,
    pub checked: usize,
    pub skipped: usize,
}

/// Requires full rank, then compares `φ[x, y]` with `[φx, φy]` on generator
/// pairs `x <= y` (interior ones for windowed instances). Pairs that touch
/// the window boundary are skipped.
pub fn check_automorphism(a: &AlgebraInstance, phi: &LinearEndo) -> Result<AutReport, AutError> {
    same_dim(phi, a.dim())?;
    let rank = phi.rank();
    if rank != a.dim() {
        return Err(AutError::Singular { rank, dim: a.dim() });
    }
    let members = a.scope_members(if a.window().is_some() {
        Scope::Interior
    } else {
        Scope::All
    });
    let mut pairs = Vec::new();
    for (p, &i) in members.iter().enumerate() {
        for &j in &members[p..] {
            pairs.push((i, j));
        }
    }
    let results = workers::parallel_map(&pairs, |&(i, j)| {
        let (xy, f1) = a.table().bracket_gen(i, j);
        let (images, f2) = a.bracket_coords(&phi.image(i), &phi.image(j));
        if f1 || f2 {
            return None;
        }
        let mapped = phi.apply(&xy);
        Some((mapped != images).then(|| AutViolation {
            pair: (a.generator(i).clone(), a.generator(j).clone()),
            mapped_bracket: a.to_element(&mapped),
            bracket_of_images: a.to_element(&images),
        }))
    });
    let mut out = AutReport::default();
    for r in results {
        match r {
            None => out.skipped += 1,
            Some(v) => {
                out.checked += 1;
                out.violations.extend(v);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplectoCheck {
    pub passes: bool,
    /// `φᵀ Ω φ - Ω`.
    pub residual: SparseMatrix,
}

pub fn check_symplectomorphism(f: &SymplecticForm, phi: &LinearEndo) -> Result<SymplectoCheck, AutError> {
    same_dim(phi, f.dim())?;
    let pulled = phi.matrix.transpose().mul(f.matrix()).mul(&phi.matrix);
    let residual = pulled.sub(f.matrix());
    Ok(SymplectoCheck {
        passes: residual.is_zero(),
        residual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMismatch {
    pub pair: (usize, usize),
    pub mapped_product: SparseVec,
    pub product_of_images: SparseVec,
}

/// Ordered pairs with `φ(e_i . e_j) != φ(e_i) . φ(e_j)`.
pub fn check_product_preserved(p: &ProductTable, phi: &LinearEndo) -> Result<Vec<ProductMismatch>, AutError> {
    same_dim(phi, p.dim())?;
    let mut out = Vec::new();
    for i in 0..p.dim() {
        for j in 0..p.dim() {
            let mapped = phi.apply(&p.product_gen(i, j));
            let images = p.mul(&phi.image(i), &phi.image(j));
            if mapped != images {
                out.push(ProductMismatch {
                    pair: (i, j),
                    mapped_product: mapped,
                    product_of_images: images,
                });
            }
        }
    }
    Ok(out)
}

/// Coefficients `a_n, b_n, c_n` on integers and `d` keyed by doubled index,
/// so `d_{k+1/2}` lives at `2k + 1` and an integer-indexed `d_m` at `2m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoefficientFamily {
    pub window: u32,
    pub a: BTreeMap<i64, Rational>,
    pub b: BTreeMap<i64, Rational>,
    pub c: BTreeMap<i64, Rational>,
    pub d: BTreeMap<i64, Rational>,
}

fn read(map: &BTreeMap<i64, Rational>, k: i64) -> Rational {
    map.get(&k).cloned().unwrap_or_else(Rational::zero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceViolation {
    pub relation: char,
    pub m: i64,
    pub n: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub violations: Vec<RecurrenceViolation>,
    pub pairs_checked: usize,
    /// Integer-indexed `d` reads; these slots are not half-integer indices.
    pub d_integer_reads: usize,
    /// Integer-indexed `d` reads that found no stored value.
    pub d_missing_reads: usize,
}

/// For all integer `m, n` with `|m|, |n|, |m+n| <= W`:
///
/// - `a_{m+n} = a_m a_n`
/// - `b_{m+n} = a_m b_n + b_m a_n`
/// - `c_{m+n} = a_m c_n + c_m a_n`
/// - `d_{m+n+1/2} = (m/2 - n) d_m d_n`, with `d_m`, `d_n` read literally at
///   integer indices (absent values count as zero) and the left side read
///   at the half-integer index when it is inside the window.
pub fn check_recurrences(cf: &CoefficientFamily) -> RecurrenceReport {
    let w = i64::from(cf.window);
    let mut out = RecurrenceReport::default();
    for m in -w..=w {
        for n in -w..=w {
            let s = m + n;
            if s.abs() > w {
                continue;
            }
            out.pairs_checked += 1;
            let (am, an) = (read(&cf.a, m), read(&cf.a, n));
            let mut push = |relation, lhs: Rational, rhs: Rational| {
                if lhs != rhs {
                    out.violations.push(RecurrenceViolation {
                        relation,
                        m,
                        n,
                        lhs,
                        rhs,
                    });
                }
            };
            push('a', read(&cf.a, s), &am * &an);
            push('b', read(&cf.b, s), &am * read(&cf.b, n) + read(&cf.b, m) * &an);
            push('c', read(&cf.c, s), &am * read(&cf.c, n) + read(&cf.c, m) * &an);
            // d_{s+1/2}: doubled index 2s+1, inside the window when |s+1/2| <= W.
            let lhs_key = 2 * s + 1;
            if lhs_key.abs() <= 2 * w {
                let coef = Rational::new(m.into(), 2.into()) - Rational::from_integer(n.into());
                let rhs = coef * read(&cf.d, 2 * m) * read(&cf.d, 2 * n);
                push('d', read(&cf.d, lhs_key), rhs);
            }
        }
    }
    for m in -w..=w {
        out.d_integer_reads += 1;
        if !cf.d.contains_key(&(2 * m)) {
            out.d_missing_reads += 1;
        }
    }
    out
}

/// `a_n = αⁿ`, `b = c = d = 0` on the window.
pub fn scaling_candidate(alpha: &Rational, window: u32) -> Result<CoefficientFamily, AutError> {
    if alpha.is_zero() {
        return Err(AutError::ZeroAlpha);
    }
    let w = i64::from(window);
    let mut cf = CoefficientFamily {
        window,
        ..Default::default()
    };
    for n in -w..=w {
        let p = i32::try_from(n).expect("window fits i32");
        cf.a.insert(n, alpha.pow(p));
        cf.b.insert(n, Rational::zero());
        cf.c.insert(n, Rational::zero());
    }
    for k in -2 * w..=2 * w {
        if k % 2 != 0 {
            cf.d.insert(k, Rational::zero());
        }
    }
    Ok(cf)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// `dim d` followed by `d` rows of `d` rationals. Column `j` is the image of
/// generator `j`.
pub fn parse_map(text: &str) -> Result<LinearEndo, AutError> {
    let mut lines = content_lines(text);
    let (line, head) = lines.next().ok_or_else(|| parse_err(1, "empty map file"))?;
    let dim: usize = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", d] => d.parse().map_err(|_| parse_err(line, format!("bad dimension '{d}'")))?,
        _ => return Err(parse_err(line, "expected 'dim <d>'")),
    };
    if dim == 0 {
        return Err(parse_err(line, "dimension must be positive"));
    }
    let mut m = SparseMatrix::zeros(dim, dim);
    let mut last = line;
    for r in 0..dim {
        let (line, row) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {dim} rows, found {r}")))?;
        last = line;
        let values: Vec<&str> = row.split_whitespace().collect();
        if values.len() != dim {
            return Err(parse_err(line, format!("expected {dim} entries, found {}", values.len())));
        }
        for (c, v) in values.iter().enumerate() {
            let x = parse_rational(v).ok_or_else(|| parse_err(line, format!("bad rational '{v}'")))?;
            m.set(r, c, x);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing content after matrix rows"));
    }
    Ok(LinearEndo::new(m))
}

/// `coef <a|b|c|d> <index> <value>` lines; `d` accepts half-integer indices.
pub fn parse_coefficients(text: &str, window: u32) -> Result<CoefficientFamily, AutError> {
    let mut cf = CoefficientFamily {
        window,
        ..Default::default()
    };
    for (line, l) in content_lines(text) {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let ["coef", name, index, value] = parts.as_slice() else {
            return Err(parse_err(line, "expected 'coef <name> <index> <value>'"));
        };
        let idx = parse_rational(index).ok_or_else(|| parse_err(line, format!("bad index '{index}'")))?;
        let doubled = &idx * Rational::from_integer(2.into());
        if !doubled.is_integer() {
            return Err(parse_err(line, format!("index {index} is not a multiple of 1/2")));
        }
        let doubled: i64 = doubled
            .to_integer()
            .try_into()
            .map_err(|_| parse_err(line, "index out of range"))?;
        let value = parse_rational(value).ok_or_else(|| parse_err(line, format!("bad rational '{value}'")))?;
        let (map, key) = match *name {
            "a" | "b" | "c" => {
                if doubled % 2 != 0 {
                    return Err(parse_err(line, format!("{name} needs an integer index")));
                }
                let map = match *name {
                    "a" => &mut cf.a,
                    "b" => &mut cf.b,
                    _ => &mut cf.c,
                };
                (map, doubled / 2)
            }
            "d" => (&mut cf.d, doubled),
            other => return Err(parse_err(line, format!("unknown coefficient '{other}'"))),
        };
        if map.insert(key, value).is_some() {
            return Err(parse_err(line, format!("duplicate coef {name} {index}")));
        }
    }
    Ok(cf)
}

pub fn automorphism_report(a: &AlgebraInstance, r: &AutReport) -> Report {
    let mut rep = Report::new("aut verify");
    rep.summary("dim", a.dim());
    rep.summary("pairs_checked", r.checked);
    rep.summary("pairs_skipped", r.skipped);
    rep.summary("bracket_violations", r.violations.len());
    rep.extend(r.violations.iter().map(|v| {
        Finding::violation(
            "bracket_not_preserved",
            format!("({}, {})", v.pair.0, v.pair.1),
            format!("phi[x, y] = {} but [phi x, phi y] = {}", v.mapped_bracket, v.bracket_of_images),
        )
    }));
    rep
}

pub fn symplecto_findings(a: &AlgebraInstance, check: &SymplectoCheck) -> Vec<Finding> {
    check
        .residual
        .iter()
        .map(|((i, j), v)| {
            Finding::violation(
                "form_not_preserved",
                format!("({}, {})", a.generator(i), a.generator(j)),
                format!("residual {}", fmt_rational(v)),
            )
        })
        .collect()
}

pub fn product_findings(a: &AlgebraInstance, list: &[ProductMismatch]) -> Vec<Finding> {
    list.iter()
        .map(|m| {
            Finding::violation(
                "product_not_preserved",
                format!("({}, {})", a.generator(m.pair.0), a.generator(m.pair.1)),
                format!(
                    "phi(x.y) = {} but phi(x).phi(y) = {}",
                    a.to_element(&m.mapped_product),
                    a.to_element(&m.product_of_images)
                ),
            )
        })
        .collect()
}

fn index_text(doubled: i64) -> String {
    fmt_rational(&Rational::new(doubled.into(), 2.into()))
}

pub fn recurrence_report(cf: &CoefficientFamily, r: &RecurrenceReport) -> Report {
    let mut rep = Report::new("aut recurrences");
    rep.summary("window", cf.window);
    rep.summary("pairs_checked", r.pairs_checked);
    for rel in ['a', 'b', 'c', 'd'] {
        rep.summary(
            format!("{rel}_violations"),
            r.violations.iter().filter(|v| v.relation == rel).count(),
        );
    }
    rep.summary("d_integer_reads", r.d_integer_reads);
    rep.summary("d_missing_reads", r.d_missing_reads);
    rep.extend(r.violations.iter().map(|v| {
        let lhs_index = if v.relation == 'd' {
            index_text(2 * (v.m + v.n) + 1)
        } else {
            (v.m + v.n).to_string()
        };
        Finding::violation(
            format!("recurrence_{}", v.relation),
            format!("(m={}, n={})", v.m, v.n),
            format!(
                "{}_{} = {} but the right side is {}",
                v.relation,
                lhs_index,
                fmt_rational(&v.lhs),
                fmt_rational(&v.rhs)
            ),
        )
    }));
    rep.push(Finding::info(
        "d_index_mismatch",
        "d",
        "the d relation reads d at integer indices on the right and a half-integer index on the left; evaluated as stored, missing values are zero",
    ));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::linalg::{int, rat};
    use crate::snla::standard_form;

    fn endo(rows: &[&[i64]]) -> LinearEndo {
        LinearEndo::new(SparseMatrix::from_i64(rows))
    }

    #[test]
    fn identity_is_automorphism() {
        for a in corpus::lie_corpus() {
            let r = check_automorphism(&a, &LinearEndo::identity(a.dim())).unwrap();
            assert!(r.violations.is_empty(), "{}", a.name());
        }
    }

    #[test]
    fn heisenberg_rotation_and_scaling() {
        let h = corpus::heisenberg();
        let rot = endo(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(check_automorphism(&h, &rot).unwrap().violations.is_empty());
        let scale = endo(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let r = check_automorphism(&h, &scale).unwrap();
        assert_eq!(r.violations.len(), 1);
        let v = &r.violations[0];
        assert_eq!(v.pair, (GeneratorId::at("e", 1), GeneratorId::at("e", 2)));
        assert_eq!(v.mapped_bracket, Element::term(GeneratorId::at("e", 3), int(2)));
        assert_eq!(v.bracket_of_images, Element::generator(GeneratorId::at("e", 3)));
    }

    #[test]
    fn singular_map_rejected() {
        let h = corpus::heisenberg();
        let z = endo(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        assert_eq!(check_automorphism(&h, &z), Err(AutError::Singular { rank: 2, dim: 3 }));
    }

    #[test]
    fn symplectomorphism_cases() {
        let f = standard_form(1);
        assert!(check_symplectomorphism(&f, &LinearEndo::identity(2)).unwrap().passes);
        let mut d = SparseMatrix::zeros(2, 2);
        d.set(0, 0, int(2));
        d.set(1, 1, rat(1, 2));
        assert!(check_symplectomorphism(&f, &LinearEndo::new(d)).unwrap().passes);
        let two = endo(&[&[2, 0], &[0, 2]]);
        let c = check_symplectomorphism(&f, &two).unwrap();
        assert!(!c.passes);
        assert_eq!(c.residual, f.matrix().scaled(&int(3)));
    }

    #[test]
    fn product_preservation() {
        let mut p = ProductTable::zero(2);
        assert!(check_product_preserved(&p, &endo(&[&[3, 1], &[0, 5]])).unwrap().is_empty());
        p.set(0, 0, SparseVec::unit(1)).unwrap();
        assert!(check_product_preserved(&p, &LinearEndo::identity(2)).unwrap().is_empty());
        assert!(check_product_preserved(&p, &endo(&[&[2, 0], &[0, 4]])).unwrap().is_empty());
        assert_eq!(check_product_preserved(&p, &endo(&[&[2, 0], &[0, 2]])).unwrap().len(), 1);
    }

    #[test]
    fn recurrence_examples() {
        let cf = scaling_candidate(&int(2), 8).unwrap();
        let r = check_recurrences(&cf);
        assert!(r.violations.is_empty());
        let mut cf = cf;
        for n in -8..=8i64 {
            let p = int(2).pow(i32::try_from(n).unwrap());
            cf.b.insert(n, int(n) * p);
        }
        assert!(check_recurrences(&cf).violations.is_empty());

        let mut lin = CoefficientFamily {
            window: 2,
            ..Default::default()
        };
        for n in -2..=2 {
            lin.a.insert(n, int(n));
        }
        let r = check_recurrences(&lin);
        assert!(r.violations.iter().any(|v| v.relation == 'a'
            && v.m == 1
            && v.n == 1
            && v.lhs == int(2)
            && v.rhs == int(1)));
    }

    #[test]
    fn d_relation_is_literal() {
        let mut cf = scaling_candidate(&int(1), 2).unwrap();
        // Integer-indexed d values feed the right side.
        cf.d.insert(2, int(1));
        cf.d.insert(0, int(1));
        let r = check_recurrences(&cf);
        // m=1, n=0: d_{3/2} = 0 but (1/2) d_1 d_0 = 1/2.
        assert!(r.violations.iter().any(|v| v.relation == 'd' && v.m == 1 && v.n == 0 && v.rhs == rat(1, 2)));
        assert_eq!(r.d_integer_reads, 5);
        assert_eq!(r.d_missing_reads, 3);
    }

    #[test]
    fn scaling_values() {
        assert!(check_recurrences(&scaling_candidate(&int(1), 3).unwrap()).violations.is_empty());
        assert_eq!(scaling_candidate(&int(3), 4).unwrap().a[&4], int(81));
        assert_eq!(scaling_candidate(&rat(1, 2), 3).unwrap().a[&-3], int(8));
        assert_eq!(scaling_candidate(&int(0), 3), Err(AutError::ZeroAlpha));
    }

    #[test]
    fn map_file_parsing() {
        let m = parse_map("# rotation\ndim 2\n0 -1\n1 0\n").unwrap();
        assert_eq!(m.image(0), SparseVec::unit(1));
        assert_eq!(parse_map("dim 2\n1 0\n").unwrap_err(), parse_err(3, "expected 2 rows, found 1"));
        assert!(matches!(parse_map("dim 2\n1 0 0\n0 1\n"), Err(AutError::Parse { line: 2, .. })));
        assert!(matches!(parse_map("dim 1\n1/0\n"), Err(AutError::Parse { line: 2, .. })));
    }

    #[test]
    fn coefficient_file_parsing() {
        let cf = parse_coefficients("coef a 1 2\ncoef d 1/2 3\n# x\ncoef d -1 1\n", 2).unwrap();
        assert_eq!(cf.a[&1], int(2));
        assert_eq!(cf.d[&1], int(3));
        assert_eq!(cf.d[&-2], int(1));
        assert!(matches!(parse_coefficients("coef a 1/2 1\n", 1), Err(AutError::Parse { line: 1, .. })));
        assert!(matches!(parse_coefficients("coef a 1 1\ncoef a 1 2\n", 1), Err(AutError::Parse { line: 2, .. })));
        assert!(matches!(parse_coefficients("coef q 1 1\n", 1), Err(AutError::Parse { line: 1, .. })));
    }

    #[test]
    fn windowed_instance_uses_interior() {
        let a = crate::esvla::build_esvla(&crate::esvla::EsvlaConfig::new(3)).unwrap();
        let r = check_automorphism(&a, &LinearEndo::identity(a.dim())).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.checked > 0);
    }
}
