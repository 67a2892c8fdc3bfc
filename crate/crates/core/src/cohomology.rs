//! Derivations, 2-cocycles with trivial coefficients, coboundaries, H² and
//! one-dimensional central extensions.
//!
//! The cocycle residual of a triple `(x, y, w)` is the central component of
//! the graded Jacobi sum of the extension,
//! `s(x,w) ω(x,[y,w]) + s(y,x) ω(y,[w,x]) + s(w,y) ω(w,[x,y])`
//! with `s` the Koszul sign, so an extension satisfies Jacobi exactly when
//! the cochain passes [`check_cocycle`].

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    AlgebraInstance, Convention, Family, GeneratorId, IndexKind, Parity, Scope,
};
use crate::linalg::{self, Rational, SparseMatrix, SparseVec};
use crate::specfile::AlgebraSpecDoc;
use crate::workers;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("windowed instances need the grade-zero restriction")]
    GradeRestrictionRequired,
    #[error("no cochain named {0}")]
    UnknownCochain(String),
}

/// Which linear maps and cochains are considered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Grading {
    #[default]
    Any,
    /// Maps preserving the grade, cochains supported on grade sum zero.
    GradeZero,
}

fn require_grading(a: &AlgebraInstance, g: Grading) -> Result<(), CohomologyError> {
    if a.window().is_some() && g == Grading::Any {
        Err(CohomologyError::GradeRestrictionRequired)
    } else {
        Ok(())
    }
}

/// Linear map on the generator basis; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEndo {
    pub matrix: SparseMatrix,
}

impl LinearEndo {
    pub fn new(matrix: SparseMatrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "endomorphism must be square");
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(SparseMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.mul_sparse(v)
    }

    /// Image of `e_j`.
    pub fn image(&self, j: usize) -> SparseVec {
        self.matrix.col(j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearEndo) -> LinearEndo {
        LinearEndo::new(self.matrix.mul(&other.matrix))
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Exact inverse, `None` when singular.
    pub fn inverse(&self) -> Option<LinearEndo> {
        let n = self.dim();
        let mut m = SparseMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let x = linalg::solve(&self.matrix, &e)?;
            for (i, v) in x.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        let inv = LinearEndo::new(m);
        (self.compose(&inv) == LinearEndo::identity(n)).then_some(inv)
    }

    /// Entries flattened as `row * n + col`.
    pub fn flatten(&self) -> SparseVec {
        let n = self.dim();
        SparseVec::from_pairs(self.matrix.iter().map(|((r, c), v)| (r * n + c, v.clone())))
    }

    pub fn unflatten(n: usize, v: &SparseVec) -> LinearEndo {
        let mut m = SparseMatrix::zeros(n, n);
        for (k, c) in v.iter() {
            m.set(k / n, k % n, c.clone());
        }
        LinearEndo::new(m)
    }
}

/// Matrix of `ad_{e_a}` as an endomorphism.
pub fn ad(a: &AlgebraInstance, g: usize) -> LinearEndo {
    LinearEndo::new(a.ad_matrix(g))
}

/// Ordered pair whose supplied value disagrees with the symmetry axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainConflict {
    pub pair: (usize, usize),
    pub residual: Rational,
}

/// Scalar 2-cochain on generator pairs, stored on canonical pairs `i <= j`.
/// `ω(e_j, e_i) = s ω(e_i, e_j)` with the same sign `s` as the bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub name: String,
    super_odd: Vec<bool>,
    values: BTreeMap<(usize, usize), Rational>,
    conflicts: Vec<CochainConflict>,
}

impl Cochain2 {
    pub fn zero(a: &AlgebraInstance, name: impl Into<String>) -> Self {
        let super_odd = (0..a.dim())
            .map(|i| a.convention() == Convention::Super && a.parity(i).is_odd())
            .collect();
        Self {
            name: name.into(),
            super_odd,
            values: BTreeMap::new(),
            conflicts: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.super_odd.len()
    }

    /// Factor `s` with `ω(e_b, e_a) = s ω(e_a, e_b)`.
    pub fn swap_sign(&self, a: usize, b: usize) -> Rational {
        if self.super_odd[a] && self.super_odd[b] {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// Builds a cochain from ordered values. Reverse-order values fill
    /// missing canonical slots or are compared against them; a plain-mode
    /// diagonal value is kept and reported as a conflict.
    pub fn from_ordered(
        a: &AlgebraInstance,
        name: impl Into<String>,
        ordered: BTreeMap<(usize, usize), Rational>,
    ) -> Self {
        let mut c = Self::zero(a, name);
        let mut reverse = Vec::new();
        let mut present = BTreeSet::new();
        for ((i, j), v) in ordered {
            if i <= j {
                present.insert((i, j));
                if i == j && !c.swap_sign(i, i).is_one() && !v.is_zero() {
                    c.conflicts.push(CochainConflict {
                        pair: (i, i),
                        residual: v.clone(),
                    });
                }
                if !v.is_zero() {
                    c.values.insert((i, j), v);
                }
            } else {
                reverse.push(((i, j), v));
            }
        }
        for ((i, j), v) in reverse {
            let s = c.swap_sign(j, i);
            if present.insert((j, i)) {
                let implied = &v * &s;
                if !implied.is_zero() {
                    c.values.insert((j, i), implied);
                }
            } else {
                let forced = c.values.get(&(j, i)).map_or_else(Rational::zero, |x| x * &s);
                let residual = v - forced;
                if !residual.is_zero() {
                    c.conflicts.push(CochainConflict {
                        pair: (i, j),
                        residual,
                    });
                }
            }
        }
        c
    }

    /// Cochain named `name` from the `cocycle` lines of a document.
    pub fn from_spec(
        a: &AlgebraInstance,
        doc: &AlgebraSpecDoc,
        name: &str,
    ) -> Result<Self, CohomologyError> {
        let lines = doc.cocycle_lines(name);
        if lines.is_empty() {
            return Err(CohomologyError::UnknownCochain(name.to_string()));
        }
        let kind = |g: &GeneratorId| -> IndexKind {
            a.families()
                .iter()
                .find(|f| f.symbol == g.family)
                .map_or(IndexKind::Integer, |f| f.kind)
        };
        let mut ordered = BTreeMap::new();
        for line in lines {
            let decl = &line.value;
            for (i, g) in a.generators().iter().enumerate() {
                let Some(m) = decl.left.bind(g, kind(g)) else {
                    continue;
                };
                for (j, h) in a.generators().iter().enumerate() {
                    let Some(n) = decl.right.bind(h, kind(h)) else {
                        continue;
                    };
                    if decl.when.as_ref().is_some_and(|w| !w.holds(&m, &n)) {
                        continue;
                    }
                    let v = decl.value.eval(&m, &n);
                    let slot: &mut Rational = ordered.entry((i, j)).or_insert_with(Rational::zero);
                    *slot += v;
                }
            }
        }
        Ok(Self::from_ordered(a, name, ordered))
    }

    /// `ω(e_a, e_b)`.
    pub fn value(&self, a: usize, b: usize) -> Rational {
        if a <= b {
            self.values.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
        } else {
            self.values
                .get(&(b, a))
                .map_or_else(Rational::zero, |v| v * self.swap_sign(b, a))
        }
    }

    /// `ω(x, y)` for vectors.
    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> Rational {
        let mut total = Rational::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let v = self.value(i, j);
                if !v.is_zero() {
                    total += v * a * b;
                }
            }
        }
        total
    }

    pub fn set(&mut self, a: usize, b: usize, value: Rational) {
        let (key, v) = if a <= b {
            ((a, b), value)
        } else {
            ((b, a), value * self.swap_sign(b, a))
        };
        if v.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> + '_ {
        self.values.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn conflicts(&self) -> &[CochainConflict] {
        &self.conflicts
    }

    /// True when every supported pair has equal parities.
    pub fn is_even(&self, a: &AlgebraInstance) -> bool {
        self.values.keys().all(|&(i, j)| a.parity(i) == a.parity(j))
    }

    pub fn add_scaled(&mut self, other: &Cochain2, factor: &Rational) {
        for (&(i, j), v) in &other.values {
            let cur = self.value(i, j);
            self.set(i, j, cur + v * factor);
        }
    }
}

/// `δf(x, y) = f([x, y])` for a 1-cochain `f` given by its values on
/// generators.
pub fn coboundary(a: &AlgebraInstance, f: &SparseVec, name: impl Into<String>) -> Cochain2 {
    let mut c = Cochain2::zero(a, name);
    for ((i, j), v) in a.table().pairs() {
        let x = f.dot(v);
        if !x.is_zero() {
            c.values.insert((i, j), x);
        }
    }
    c
}

/// Terms `coef * ω(p, q)` in the cyclic sum of `(x, y, w)`, or `None` when
/// a needed bracket lost terms at the window boundary.
fn cyclic_terms(a: &AlgebraInstance, x: usize, y: usize, w: usize) -> Option<Vec<(usize, usize, Rational)>> {
    let t = a.table();
    let mut out = Vec::new();
    for (p, b, c) in [(x, y, w), (y, w, x), (w, x, y)] {
        let (inner, boundary) = t.bracket_gen(b, c);
        if boundary {
            return None;
        }
        let s = t.koszul(p, c);
        for (k, coef) in inner.iter() {
            out.push((p, k, coef * &s));
        }
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleViolation {
    pub triple: [GeneratorId; 3],
    pub residual: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub violations: Vec<CocycleViolation>,
    pub checked: usize,
    pub skipped: usize,
}

impl CocycleReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Triples of `scope` (with repetition) whose cyclic sum is nonzero.
pub fn check_cocycle(a: &AlgebraInstance, omega: &Cochain2, scope: Scope) -> CocycleReport {
    let triples = a.triples(scope);
    let results = workers::parallel_map(&triples, |&[x, y, w]| {
        cyclic_terms(a, x, y, w).map(|terms| {
            let mut total = Rational::zero();
            for (p, q, c) in terms {
                total += omega.value(p, q) * c;
            }
            total
        })
    });
    let mut report = CocycleReport::default();
    for (t, r) in triples.iter().zip(results) {
        match r {
            None => report.skipped += 1,
            Some(v) => {
                report.checked += 1;
                if !v.is_zero() {
                    report.violations.push(CocycleViolation {
                        triple: t.map(|i| a.generator(i).clone()),
                        residual: v,
                    });
                }
            }
        }
    }
    report
}

/// Unknown pairs of the cochain space: canonical pairs admitted by the
/// symmetry, even in super mode, grade sum zero when restricted.
fn cochain_unknowns(a: &AlgebraInstance, grading: Grading) -> Vec<(usize, usize)> {
    let members = a.scope_members(Scope::Interior);
    let probe = Cochain2::zero(a, "");
    let mut out = Vec::new();
    for (p, &i) in members.iter().enumerate() {
        for &j in members.iter().skip(p) {
            if i == j && !probe.swap_sign(i, i).is_one() {
                continue;
            }
            if a.convention() == Convention::Super && a.parity(i) != a.parity(j) {
                continue;
            }
            if grading == Grading::GradeZero && a.doubled_grade(i) + a.doubled_grade(j) != 0 {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

fn cochain_from_coords(
    a: &AlgebraInstance,
    unknowns: &[(usize, usize)],
    v: &SparseVec,
    name: String,
) -> Cochain2 {
    let mut c = Cochain2::zero(a, name);
    for (k, x) in v.iter() {
        let (i, j) = unknowns[k];
        c.values.insert((i, j), x.clone());
    }
    c
}

fn cocycle_system(a: &AlgebraInstance, unknowns: &[(usize, usize)], grading: Grading) -> SparseMatrix {
    let col: BTreeMap<(usize, usize), usize> =
        unknowns.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let probe = Cochain2::zero(a, "");
    let triples: Vec<[usize; 3]> = a
        .triples(Scope::Interior)
        .into_iter()
        .filter(|t| {
            grading == Grading::Any
                || t.iter().map(|&i| a.doubled_grade(i)).sum::<i64>() == 0
        })
        .collect();
    let rows = workers::parallel_map(&triples, |&[x, y, w]| {
        let terms = cyclic_terms(a, x, y, w)?;
        let mut row = SparseVec::new();
        for (p, q, c) in terms {
            let (key, sign) = if p <= q {
                ((p, q), Rational::one())
            } else {
                ((q, p), probe.swap_sign(q, p))
            };
            if let Some(&k) = col.get(&key) {
                row.add_term(k, &(c * sign));
            }
        }
        (!row.is_zero()).then_some(row)
    });
    let rows: Vec<SparseVec> = rows.into_iter().flatten().collect();
    SparseMatrix::from_rows(&rows, unknowns.len())
}

/// Basis of the 2-cocycles.
pub fn cocycle2_space(a: &AlgebraInstance, grading: Grading) -> Result<Vec<Cochain2>, CohomologyError> {
    require_grading(a, grading)?;
    let unknowns = cochain_unknowns(a, grading);
    let system = cocycle_system(a, &unknowns, grading);
    Ok(linalg::nullspace(&system)
        .iter()
        .enumerate()
        .map(|(k, v)| cochain_from_coords(a, &unknowns, v, format!("z{}", k + 1)))
        .collect())
}

fn coboundary_vectors(a: &AlgebraInstance, unknowns: &[(usize, usize)], grading: Grading) -> Vec<SparseVec> {
    let members = a.scope_members(Scope::Interior);
    let mut out = Vec::new();
    for &k in &members {
        if grading == Grading::GradeZero && a.doubled_grade(k) != 0 {
            continue;
        }
        if a.convention() == Convention::Super && a.parity(k).is_odd() {
            continue;
        }
        let mut v = SparseVec::new();
        for (col, &(i, j)) in unknowns.iter().enumerate() {
            let (b, boundary) = a.table().bracket_gen(i, j);
            if !boundary {
                v.set(col, b.coord(k));
            }
        }
        out.push(v);
    }
    out
}

/// Basis of the coboundaries `δf`.
pub fn coboundary2_space(a: &AlgebraInstance, grading: Grading) -> Result<Vec<Cochain2>, CohomologyError> {
    require_grading(a, grading)?;
    let unknowns = cochain_unknowns(a, grading);
    Ok(linalg::span_basis(&coboundary_vectors(a, &unknowns, grading))
        .iter()
        .enumerate()
        .map(|(k, v)| cochain_from_coords(a, &unknowns, v, format!("b{}", k + 1)))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H2Report {
    pub cocycles: usize,
    pub coboundaries: usize,
    /// `dim Z² - dim (B² ∩ Z²)`.
    pub h2: usize,
}

pub fn h2_dimension(a: &AlgebraInstance, grading: Grading) -> Result<H2Report, CohomologyError> {
    require_grading(a, grading)?;
    if a.dim() <= 1 {
        return Ok(H2Report {
            cocycles: 0,
            coboundaries: 0,
            h2: 0,
        });
    }
    let unknowns = cochain_unknowns(a, grading);
    let system = cocycle_system(a, &unknowns, grading);
    let z = linalg::nullspace(&system);
    let b = coboundary_vectors(a, &unknowns, grading);
    let b_dim = linalg::span_rank(&b);
    let meet = linalg::intersection_dim(&z, &b);
    Ok(H2Report {
        cocycles: z.len(),
        coboundaries: b_dim,
        h2: z.len() - meet,
    })
}

/// Unknown entries `D[r][c]` of a derivation, keyed by position.
fn derivation_unknowns(a: &AlgebraInstance, grading: Grading) -> Vec<(usize, usize)> {
    let n = a.dim();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if a.convention() == Convention::Super && a.parity(r) != a.parity(c) {
                continue;
            }
            if grading == Grading::GradeZero && a.doubled_grade(r) != a.doubled_grade(c) {
                continue;
            }
            out.push((r, c));
        }
    }
    out
}

/// Basis of the (even, in super mode) derivations. Pairs whose bracket or
/// whose image brackets lose terms at the window boundary impose nothing.
pub fn derivation_space(a: &AlgebraInstance, grading: Grading) -> Result<Vec<LinearEndo>, CohomologyError> {
    require_grading(a, grading)?;
    let n = a.dim();
    let unknowns = derivation_unknowns(a, grading);
    let col: BTreeMap<(usize, usize), usize> =
        unknowns.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut sources: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(r, c) in &unknowns {
        sources[c].push(r);
    }
    let t = a.table();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    let blocks = workers::parallel_map(&pairs, |&(x, y)| {
        let (xy, boundary) = t.bracket_gen(x, y);
        if boundary
            || sources[x].iter().any(|&k| t.is_boundary(k, y))
            || sources[y].iter().any(|&k| t.is_boundary(x, k))
        {
            return Vec::new();
        }
        // component r of D[x,y] - [Dx,y] - [x,Dy]
        let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (k, coef) in xy.iter() {
            for &r in &sources[k] {
                rows.entry(r).or_default().add_term(col[&(r, k)], coef);
            }
        }
        for &k in &sources[x] {
            let (v, _) = t.bracket_gen(k, y);
            for (r, coef) in v.iter() {
                rows.entry(r).or_default().add_term(col[&(k, x)], &-coef.clone());
            }
        }
        for &k in &sources[y] {
            let (v, _) = t.bracket_gen(x, k);
            for (r, coef) in v.iter() {
                rows.entry(r).or_default().add_term(col[&(k, y)], &-coef.clone());
            }
        }
        rows.into_values().filter(|r| !r.is_zero()).collect()
    });
    let rows: Vec<SparseVec> = blocks.into_iter().flatten().collect();
    let system = SparseMatrix::from_rows(&rows, unknowns.len());
    Ok(linalg::nullspace(&system)
        .iter()
        .map(|v| {
            let mut m = SparseMatrix::zeros(n, n);
            for (k, x) in v.iter() {
                let (r, c) = unknowns[k];
                m.set(r, c, x.clone());
            }
            LinearEndo::new(m)
        })
        .collect())
}

/// True when `D[x,y] = [Dx,y] + [x,Dy]` on every non-boundary pair.
pub fn is_derivation(a: &AlgebraInstance, d: &LinearEndo) -> bool {
    let n = a.dim();
    (0..n).all(|x| {
        (x..n).all(|y| {
            let (xy, boundary) = a.table().bracket_gen(x, y);
            if boundary {
                return true;
            }
            let (mut rhs, f1) = a.bracket_coords(&d.image(x), &SparseVec::unit(y));
            let (r, f2) = a.bracket_coords(&SparseVec::unit(x), &d.image(y));
            rhs.add_scaled(&r, &Rational::one());
            f1 || f2 || d.apply(&xy) == rhs
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InnerSplit {
    pub total: usize,
    pub inner: usize,
    pub outer: usize,
}

/// Splits a derivation basis into inner and outer parts. Inner derivations
/// are the `ad_g` that are themselves in the space (`g` of grade zero under
/// the restriction, even in super mode).
pub fn inner_split(a: &AlgebraInstance, ders: &[LinearEndo], grading: Grading) -> InnerSplit {
    let ads: Vec<SparseVec> = (0..a.dim())
        .filter(|&g| grading == Grading::Any || a.doubled_grade(g) == 0)
        .filter(|&g| a.convention() == Convention::Plain || !a.parity(g).is_odd())
        .map(|g| ad(a, g).flatten())
        .collect();
    let der_vecs: Vec<SparseVec> = ders.iter().map(LinearEndo::flatten).collect();
    let inner = linalg::intersection_dim(&ads, &der_vecs);
    InnerSplit {
        total: ders.len(),
        inner,
        outer: ders.len() - inner,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationReport {
    pub basis: Vec<LinearEndo>,
    pub split: InnerSplit,
}

pub fn derivations(a: &AlgebraInstance, grading: Grading) -> Result<DerivationReport, CohomologyError> {
    let basis = derivation_space(a, grading)?;
    let split = inner_split(a, &basis, grading);
    Ok(DerivationReport { basis, split })
}

fn fresh_symbol(a: &AlgebraInstance) -> String {
    let taken: BTreeSet<&str> = a.families().iter().map(|f| f.symbol.as_str()).collect();
    std::iter::once("Z".to_string())
        .chain((1..).map(|k| format!("Z{k}")))
        .find(|s| !taken.contains(s.as_str()))
        .expect("some symbol is free")
}

/// `A ⊕ k z` with `[x, y]' = [x, y] + ω(x, y) z` and `z` central. `z` is the
/// last generator, index 0 of a new family; it is odd when `ω` is an odd
/// cochain on a super instance.
pub fn central_extension(a: &AlgebraInstance, omega: &Cochain2) -> AlgebraInstance {
    let n = a.dim();
    let z_parity = if a.convention() == Convention::Super && !omega.is_even(a) {
        Parity::Odd
    } else {
        Parity::Even
    };
    let symbol = fresh_symbol(a);
    let mut families: Vec<Family> = a.families().to_vec();
    families.push(Family::new(symbol.clone(), IndexKind::Integer, z_parity));
    let mut generators = a.generators().to_vec();
    generators.push(GeneratorId::at(symbol.clone(), 0));
    let mut b = a.table_builder(&[z_parity]);
    let mut keys: BTreeSet<(usize, usize)> = a.table().pairs().map(|(k, _)| k).collect();
    keys.extend(a.table().boundary_pairs());
    keys.extend(omega.support().map(|(k, _)| k));
    for (i, j) in keys {
        let (v, boundary) = a.table().bracket_gen(i, j);
        let mut v = v.into_owned();
        let w = omega.value(i, j);
        if !w.is_zero() {
            v.set(n, w);
        }
        b.set(i, j, v, boundary);
    }
    let mut parity: BTreeMap<String, Parity> = a.table().family_parity().clone();
    parity.insert(symbol.clone(), z_parity);
    let mut notes = a.notes().to_vec();
    notes.push(format!("central extension of {} by {}", a.name(), omega.name));
    a.with_parts(
        format!("{}_ext", a.name()),
        families,
        generators,
        b.build(parity),
        notes,
    )
}
