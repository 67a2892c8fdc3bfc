//! Finite symplectic Novikov Lie algebras: product tables, symplectic forms,
//! the identity checks, central extensions and a brute-force search.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    AlgebraError, AlgebraInstance, AlternatingViolation, Convention, Element, Family, GeneratorId,
    IndexKind, InstanceBuilder, JacobiReport, Parity, Scope,
};
use crate::cohomology::{self, Cochain2, Grading};
use crate::linalg::{self, fmt_rational, Rational, SparseMatrix, SparseVec};
use crate::report::{Finding, Report};
use crate::specfile::{AlgebraSpecDoc, EntryDecl, FamilyDecl, FormDecl, Located};
use crate::workers;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SnlaError {
    #[error("symplectic form needs even dimension, got {0}")]
    OddDimension(usize),
    #[error("form is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("form is degenerate: rank {rank} < {dim}")]
    Degenerate { rank: usize, dim: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("document needs an explicit basis")]
    NoBasis,
    #[error("document has no form")]
    NoForm,
    #[error("bracket rules are not supported here; use entries")]
    RulesNotSupported,
    #[error("plain convention required")]
    SuperConvention,
    #[error("{0} is not a basis generator")]
    UnknownGenerator(String),
    #[error("search dimension must be 2 or 4, got {0}")]
    SearchDim(usize),
    #[error("empty coefficient set")]
    NoCoefficients,
    #[error("search space too large; give a budget")]
    NeedBudget,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `e_i . e_j = sum_k c_ij^k e_k` on positions `0..dim`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductTable {
    dim: usize,
    entries: BTreeMap<(usize, usize), SparseVec>,
}

impl ProductTable {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// From constants in `(i, j, k)` lexicographic order, length `dim^3`.
    pub fn from_constants(dim: usize, constants: &[Rational]) -> Self {
        assert_eq!(constants.len(), dim * dim * dim);
        let mut p = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let base = (i * dim + j) * dim;
                let v = SparseVec::from_dense(&constants[base..base + dim]);
                p.set(i, j, v).expect("indices in range");
            }
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, i: usize, j: usize, value: SparseVec) -> Result<(), SnlaError> {
        for idx in [i, j].into_iter().chain(value.indices()) {
            if idx >= self.dim {
                return Err(SnlaError::IndexOutOfRange {
                    index: idx,
                    dim: self.dim,
                });
            }
        }
        if value.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> + '_ {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn product_gen(&self, i: usize, j: usize) -> SparseVec {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(v) = self.entries.get(&(i, j)) {
                    out.add_scaled(v, &(a * b));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Constants in `(i, j, k)` lexicographic order.
    pub fn constants(&self) -> Vec<Rational> {
        let d = self.dim;
        let mut out = vec![Rational::zero(); d * d * d];
        for (&(i, j), v) in &self.entries {
            for (k, c) in v.iter() {
                out[(i * d + j) * d + k] = c.clone();
            }
        }
        out
    }
}

/// Skew-symmetric nondegenerate form, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    matrix: SparseMatrix,
}

impl SymplecticForm {
    pub fn new(matrix: SparseMatrix) -> Result<Self, SnlaError> {
        let n = matrix.rows();
        if matrix.cols() != n {
            return Err(SnlaError::DimMismatch(n, matrix.cols()));
        }
        if n % 2 == 1 {
            return Err(SnlaError::OddDimension(n));
        }
        for i in 0..n {
            for j in i..n {
                if !(matrix.get(i, j) + matrix.get(j, i)).is_zero() {
                    return Err(SnlaError::NotSkew(i + 1, j + 1));
                }
            }
        }
        let rank = linalg::rank(&matrix);
        if rank != n {
            return Err(SnlaError::Degenerate { rank, dim: n });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn value(&self, i: usize, j: usize) -> Rational {
        self.matrix.get(i, j)
    }

    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> Rational {
        let mut total = Rational::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let v = self.matrix.get(i, j);
                if !v.is_zero() {
                    total += v * a * b;
                }
            }
        }
        total
    }

    /// The form as a 2-cochain on `a` (same generator order).
    pub fn to_cochain(&self, a: &AlgebraInstance, name: &str) -> Cochain2 {
        let mut c = Cochain2::zero(a, name);
        for ((i, j), v) in self.matrix.iter() {
            if i < j {
                c.set(i, j, v.clone());
            }
        }
        c
    }
}

/// `+1` at `(i, j)` for `i < j` with `i + j = 2n + 1` (1-based), `-1` at the
/// mirror.
pub fn standard_form(n: usize) -> SymplecticForm {
    assert!(n >= 1, "standard_form needs n >= 1");
    let d = 2 * n;
    let mut m = SparseMatrix::zeros(d, d);
    for i in 0..n {
        let j = d - 1 - i;
        m.set(i, j, Rational::one());
        m.set(j, i, -Rational::one());
    }
    SymplecticForm::new(m).expect("standard form is symplectic")
}

/// Where the Lie bracket comes from.
#[derive(Clone, Debug)]
pub enum BracketSource {
    Commutator,
    Explicit,
}

impl BracketSource {
    pub fn keyword(&self) -> &'static str {
        match self {
            BracketSource::Commutator => "commutator",
            BracketSource::Explicit => "explicit",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SnlaInstance {
    pub product: ProductTable,
    pub form: SymplecticForm,
    pub source: BracketSource,
    bracket: AlgebraInstance,
}

fn default_generators(dim: usize) -> (Vec<Family>, Vec<GeneratorId>) {
    (
        vec![Family::new("e", IndexKind::Integer, Parity::Even)],
        (1..=dim).map(|i| GeneratorId::at("e", i as i64)).collect(),
    )
}

fn bracket_instance(
    name: &str,
    families: &[Family],
    generators: &[GeneratorId],
    values: &BTreeMap<(usize, usize), SparseVec>,
) -> Result<AlgebraInstance, AlgebraError> {
    let mut b = InstanceBuilder::new(name, Convention::Plain);
    for f in families {
        b.family(f.clone());
    }
    for g in generators {
        b.generator(g.clone());
    }
    let elem = |v: &SparseVec| {
        Element::from_terms(v.iter().map(|(k, c)| (generators[k].clone(), c.clone())))
    };
    for (&(i, j), v) in values {
        b.bracket(generators[i].clone(), generators[j].clone(), elem(v));
    }
    b.build()
}

/// `[e_i, e_j] = e_i . e_j - e_j . e_i`, for canonical pairs `i < j`.
pub fn commutator_bracket(p: &ProductTable) -> BTreeMap<(usize, usize), SparseVec> {
    let mut out = BTreeMap::new();
    for i in 0..p.dim() {
        for j in i + 1..p.dim() {
            let v = p.product_gen(i, j).sub(&p.product_gen(j, i));
            if !v.is_zero() {
                out.insert((i, j), v);
            }
        }
    }
    out
}

impl SnlaInstance {
    /// Generators `e_1 .. e_dim`, commutator bracket.
    pub fn new(name: &str, product: ProductTable, form: SymplecticForm) -> Result<Self, SnlaError> {
        if product.dim() != form.dim() {
            return Err(SnlaError::DimMismatch(product.dim(), form.dim()));
        }
        let (families, generators) = default_generators(product.dim());
        let bracket = bracket_instance(name, &families, &generators, &commutator_bracket(&product))?;
        Ok(Self {
            product,
            form,
            source: BracketSource::Commutator,
            bracket,
        })
    }

    /// Reads basis, `product` lines, the form and optional `entry` lines (an
    /// explicit bracket overriding the commutator).
    pub fn from_doc(doc: &AlgebraSpecDoc) -> Result<Self, SnlaError> {
        if doc.convention != Convention::Plain {
            return Err(SnlaError::SuperConvention);
        }
        if !doc.rules.is_empty() {
            return Err(SnlaError::RulesNotSupported);
        }
        if doc.basis.is_empty() {
            return Err(SnlaError::NoBasis);
        }
        let families: Vec<Family> = doc
            .families
            .iter()
            .map(|f| Family::new(f.value.symbol.clone(), f.value.kind, f.value.parity))
            .collect();
        let generators: Vec<GeneratorId> = doc.basis.iter().map(|g| g.value.clone()).collect();
        // Canonical generator order, as the instance builder will use.
        let probe = bracket_instance(&doc.name, &families, &generators, &BTreeMap::new())?;
        let order = probe.generators().to_vec();
        let dim = order.len();
        let pos = |g: &GeneratorId| {
            probe
                .position(g)
                .ok_or_else(|| SnlaError::UnknownGenerator(g.to_string()))
        };
        let coords = |e: &Element| -> Result<SparseVec, SnlaError> {
            let mut v = SparseVec::new();
            for (g, c) in e.iter() {
                v.add_term(pos(g)?, c);
            }
            Ok(v)
        };
        let mut product = ProductTable::zero(dim);
        for p in &doc.products {
            let (i, j) = (pos(&p.value.left)?, pos(&p.value.right)?);
            product.set(i, j, coords(&p.value.value)?)?;
        }
        let form = form_from_doc(doc, dim, &pos)?;
        let (source, bracket) = if doc.entries.is_empty() {
            let b = bracket_instance(&doc.name, &families, &order, &commutator_bracket(&product))?;
            (BracketSource::Commutator, b)
        } else {
            let mut b = InstanceBuilder::new(doc.name.clone(), Convention::Plain);
            for f in &families {
                b.family(f.clone());
            }
            for g in &order {
                b.generator(g.clone());
            }
            for e in &doc.entries {
                b.bracket(e.value.left.clone(), e.value.right.clone(), e.value.value.clone());
            }
            (BracketSource::Explicit, b.build()?)
        };
        Ok(Self {
            product,
            form,
            source,
            bracket,
        })
    }

    pub fn name(&self) -> &str {
        self.bracket.name()
    }

    pub fn dim(&self) -> usize {
        self.product.dim()
    }

    pub fn bracket(&self) -> &AlgebraInstance {
        &self.bracket
    }

    pub fn generators(&self) -> &[GeneratorId] {
        self.bracket.generators()
    }

    /// Document form: basis, products, form entries (or `form standard`), and
    /// bracket entries when the bracket is explicit.
    pub fn to_doc(&self) -> AlgebraSpecDoc {
        let gens = self.generators();
        let elem = |v: &SparseVec| {
            Element::from_terms(v.iter().map(|(k, c)| (gens[k].clone(), c.clone())))
        };
        let mut doc = AlgebraSpecDoc::new(self.name(), Convention::Plain);
        for f in self.bracket.families() {
            doc.families.push(Located::new(
                0,
                FamilyDecl {
                    symbol: f.symbol.clone(),
                    kind: f.kind,
                    parity: f.parity,
                },
            ));
        }
        doc.basis = gens.iter().map(|g| Located::new(0, g.clone())).collect();
        for ((i, j), v) in self.product.entries() {
            doc.products.push(Located::new(
                0,
                EntryDecl {
                    left: gens[i].clone(),
                    right: gens[j].clone(),
                    value: elem(v),
                },
            ));
        }
        if self.form == standard_form(self.dim() / 2) {
            doc.form.push(Located::new(0, FormDecl::Standard));
        } else {
            for ((i, j), v) in self.form.matrix().iter() {
                if i < j {
                    doc.form.push(Located::new(
                        0,
                        FormDecl::Entry {
                            left: gens[i].clone(),
                            right: gens[j].clone(),
                            value: v.clone(),
                        },
                    ));
                }
            }
        }
        if matches!(self.source, BracketSource::Explicit) {
            for ((i, j), v) in self.bracket.table().pairs() {
                doc.entries.push(Located::new(
                    0,
                    EntryDecl {
                        left: gens[i].clone(),
                        right: gens[j].clone(),
                        value: elem(v),
                    },
                ));
            }
        }
        doc
    }
}

fn form_from_doc(
    doc: &AlgebraSpecDoc,
    dim: usize,
    pos: &dyn Fn(&GeneratorId) -> Result<usize, SnlaError>,
) -> Result<SymplecticForm, SnlaError> {
    if doc.form.is_empty() {
        return Err(SnlaError::NoForm);
    }
    if doc.form.iter().any(|f| matches!(f.value, FormDecl::Standard)) {
        if dim % 2 == 1 {
            return Err(SnlaError::OddDimension(dim));
        }
        return Ok(standard_form(dim / 2));
    }
    let mut given: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for f in &doc.form {
        if let FormDecl::Entry { left, right, value } = &f.value {
            given.insert((pos(left)?, pos(right)?), value.clone());
        }
    }
    let mut m = SparseMatrix::zeros(dim, dim);
    for (&(i, j), v) in &given {
        m.set(i, j, v.clone());
        if !given.contains_key(&(j, i)) {
            m.set(j, i, -v.clone());
        }
    }
    SymplecticForm::new(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductViolation {
    pub triple: (usize, usize, usize),
    pub left: SparseVec,
    pub right: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatViolation {
    pub triple: (usize, usize, usize),
    pub left: Rational,
    pub right: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormCocycleViolation {
    pub triple: (usize, usize, usize),
    pub sum: Rational,
}

fn all_triples(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
}

/// `(e_i . e_j) . e_k = (e_i . e_k) . e_j`.
pub fn check_novikov(p: &ProductTable) -> Vec<ProductViolation> {
    let u = SparseVec::unit;
    all_triples(p.dim())
        .filter_map(|(i, j, k)| {
            let left = p.mul(&p.product_gen(i, j), &u(k));
            let right = p.mul(&p.product_gen(i, k), &u(j));
            (left != right).then_some(ProductViolation {
                triple: (i, j, k),
                left,
                right,
            })
        })
        .collect()
}

/// `e_i . (e_j . e_k) = (e_i . e_j) . e_k`.
pub fn check_associative(p: &ProductTable) -> Vec<ProductViolation> {
    let u = SparseVec::unit;
    all_triples(p.dim())
        .filter_map(|(i, j, k)| {
            let left = p.mul(&u(i), &p.product_gen(j, k));
            let right = p.mul(&p.product_gen(i, j), &u(k));
            (left != right).then_some(ProductViolation {
                triple: (i, j, k),
                left,
                right,
            })
        })
        .collect()
}

/// `(x.y).z - x.(y.z) = (y.x).z - y.(x.z)` on basis triples.
pub fn check_left_symmetric(p: &ProductTable) -> Vec<ProductViolation> {
    let u = SparseVec::unit;
    let assoc = |i: usize, j: usize, k: usize| {
        p.mul(&p.product_gen(i, j), &u(k))
            .sub(&p.mul(&u(i), &p.product_gen(j, k)))
    };
    all_triples(p.dim())
        .filter_map(|(i, j, k)| {
            let left = assoc(i, j, k);
            let right = assoc(j, i, k);
            (left != right).then_some(ProductViolation {
                triple: (i, j, k),
                left,
                right,
            })
        })
        .collect()
}

/// `ω(e_i . e_j, e_k) = ω(e_i, e_j . e_k)`.
pub fn check_compat(p: &ProductTable, f: &SymplecticForm) -> Vec<CompatViolation> {
    let u = SparseVec::unit;
    all_triples(p.dim())
        .filter_map(|(i, j, k)| {
            let left = f.eval(&p.product_gen(i, j), &u(k));
            let right = f.eval(&u(i), &p.product_gen(j, k));
            (left != right).then_some(CompatViolation {
                triple: (i, j, k),
                left,
                right,
            })
        })
        .collect()
}

/// `ω([x,y],z) + ω([y,z],x) + ω([z,x],y) = 0` over triples `i <= j <= k`.
pub fn check_symplectic_cocycle(f: &SymplecticForm, b: &AlgebraInstance) -> Vec<FormCocycleViolation> {
    let t = b.table();
    let u = SparseVec::unit;
    let mut out = Vec::new();
    let d = b.dim();
    for i in 0..d {
        for j in i..d {
            for k in j..d {
                let mut sum = Rational::zero();
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    sum += f.eval(&t.bracket_gen(x, y).0, &u(z));
                }
                if !sum.is_zero() {
                    out.push(FormCocycleViolation {
                        triple: (i, j, k),
                        sum,
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct SnlaVerification {
    pub novikov: Vec<ProductViolation>,
    pub associative: Vec<ProductViolation>,
    pub compat: Vec<CompatViolation>,
    pub cocycle: Vec<FormCocycleViolation>,
    pub alternating: Vec<AlternatingViolation>,
    pub jacobi: JacobiReport,
    pub two_step_solvable: bool,
}

impl SnlaVerification {
    pub fn passes(&self) -> bool {
        self.novikov.is_empty()
            && self.associative.is_empty()
            && self.compat.is_empty()
            && self.cocycle.is_empty()
            && self.alternating.is_empty()
            && self.jacobi.passes()
            && self.two_step_solvable
    }
}

/// Every check at once. The form was validated when it was built.
pub fn verify_snla(s: &SnlaInstance) -> SnlaVerification {
    SnlaVerification {
        novikov: check_novikov(&s.product),
        associative: check_associative(&s.product),
        compat: check_compat(&s.product, &s.form),
        cocycle: check_symplectic_cocycle(&s.form, &s.bracket),
        alternating: s.bracket.check_alternating(),
        jacobi: s.bracket.check_jacobi(Scope::All),
        two_step_solvable: s.bracket.is_two_step_solvable(),
    }
}

fn vec_text(s: &SnlaInstance, v: &SparseVec) -> String {
    s.bracket.to_element(v).to_string()
}

/// Report with one finding per failing triple; triples are written with
/// generator names.
pub fn verification_report(s: &SnlaInstance, v: &SnlaVerification) -> Report {
    let g = s.generators();
    let tri = |(i, j, k): (usize, usize, usize)| format!("({}, {}, {})", g[i], g[j], g[k]);
    let mut r = Report::new("snla verify");
    r.summary("dim", s.dim());
    r.summary("novikov_violations", v.novikov.len());
    r.summary("associativity_violations", v.associative.len());
    r.summary("compat_violations", v.compat.len());
    r.summary("cocycle_violations", v.cocycle.len());
    r.summary("alternating_violations", v.alternating.len());
    r.summary("jacobi_violations", v.jacobi.violations.len());
    r.summary("two_step_solvable", i64::from(v.two_step_solvable));
    r.push(Finding::info("bracket_source", s.name(), s.source.keyword()));
    for (code, list) in [("novikov_violation", &v.novikov), ("associativity_violation", &v.associative)] {
        r.extend(list.iter().map(|x| {
            Finding::violation(
                code,
                tri(x.triple),
                format!("left {} right {}", vec_text(s, &x.left), vec_text(s, &x.right)),
            )
        }));
    }
    r.extend(v.compat.iter().map(|x| {
        Finding::violation(
            "compat_violation",
            tri(x.triple),
            format!("left {} right {}", fmt_rational(&x.left), fmt_rational(&x.right)),
        )
    }));
    r.extend(v.cocycle.iter().map(|x| {
        Finding::violation("form_cocycle_violation", tri(x.triple), format!("sum {}", fmt_rational(&x.sum)))
    }));
    r.extend(v.alternating.iter().map(|x| {
        Finding::violation(
            "alternating_violation",
            format!("({}, {})", x.pair.0, x.pair.1),
            format!("residual {}", x.residual),
        )
    }));
    r.extend(v.jacobi.violations.iter().map(|x| {
        Finding::violation(
            "jacobi_violation",
            format!("({}, {}, {})", x.triple[0], x.triple[1], x.triple[2]),
            format!("residual {}", x.residual),
        )
    }));
    if !v.two_step_solvable {
        r.push(Finding::violation("not_two_step_solvable", s.name(), "derived subalgebra is not abelian"));
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub center_dim: usize,
    pub derived_dim: usize,
    pub h2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    /// Position in the lexicographic enumeration.
    pub ordinal: u128,
    pub constants: Vec<Rational>,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub dim: usize,
    pub coeffs: Vec<Rational>,
    /// `None` when the count overflows.
    pub total_candidates: Option<u128>,
    pub examined: u128,
    pub partial: bool,
    pub hits: Vec<SearchHit>,
}

const SEARCH_BLOCK: u128 = 1 << 16;
const UNBUDGETED_LIMIT: u128 = 1 << 24;

fn decode(mut t: u128, q: u128, len: usize, coeffs: &[Rational]) -> Vec<Rational> {
    let mut digits = vec![0usize; len];
    for slot in digits.iter_mut().rev() {
        *slot = (t % q) as usize;
        t /= q;
    }
    digits.into_iter().map(|d| coeffs[d].clone()).collect()
}

fn candidate_passes(p: &ProductTable, form: &SymplecticForm) -> Option<SnlaInstance> {
    if !check_associative(p).is_empty() || !check_novikov(p).is_empty() || !check_compat(p, form).is_empty() {
        return None;
    }
    let s = SnlaInstance::new("candidate", p.clone(), form.clone()).ok()?;
    verify_snla(&s).passes().then_some(s)
}

fn fingerprint(a: &AlgebraInstance) -> Fingerprint {
    Fingerprint {
        center_dim: a.center().dim(),
        derived_dim: a.derived_subalgebra().len(),
        h2: cohomology::h2_dimension(a, Grading::Any).map_or(0, |h| h.h2),
    }
}

/// Enumerates all structure constants over `coeffs` (sorted, deduplicated)
/// in lexicographic order, keeping those that pass every check with the
/// standard form. At most `budget` candidates are examined.
pub fn snla_search(dim: usize, coeffs: &[Rational], budget: Option<u128>) -> Result<SearchResult, SnlaError> {
    snla_search_with(workers::worker_count(), dim, coeffs, budget)
}

/// [`snla_search`] with an explicit worker count.
pub fn snla_search_with(
    threads: usize,
    dim: usize,
    coeffs: &[Rational],
    budget: Option<u128>,
) -> Result<SearchResult, SnlaError> {
    if dim != 2 && dim != 4 {
        return Err(SnlaError::SearchDim(dim));
    }
    let mut coeffs = coeffs.to_vec();
    coeffs.sort();
    coeffs.dedup();
    if coeffs.is_empty() {
        return Err(SnlaError::NoCoefficients);
    }
    let len = dim * dim * dim;
    let q = coeffs.len() as u128;
    let total = u32::try_from(len).ok().and_then(|e| q.checked_pow(e));
    let limit = match (budget, total) {
        (Some(b), Some(t)) => b.min(t),
        (Some(b), None) => b,
        (None, Some(t)) if t <= UNBUDGETED_LIMIT => t,
        (None, _) => return Err(SnlaError::NeedBudget),
    };
    let form = standard_form(dim / 2);
    let mut hits = Vec::new();
    let mut start = 0u128;
    while start < limit {
        let end = (start + SEARCH_BLOCK).min(limit);
        let block: Vec<u128> = (start..end).collect();
        let found = workers::parallel_map_with(threads, &block, |&t| {
            let constants = decode(t, q, len, &coeffs);
            let p = ProductTable::from_constants(dim, &constants);
            candidate_passes(&p, &form).map(|s| SearchHit {
                ordinal: t,
                constants,
                fingerprint: fingerprint(s.bracket()),
            })
        });
        hits.extend(found.into_iter().flatten());
        start = end;
    }
    Ok(SearchResult {
        dim,
        coeffs,
        total_candidates: total,
        examined: limit,
        partial: total.is_none_or(|t| limit < t),
        hits,
    })
}

pub fn search_report(r: &SearchResult) -> Report {
    let mut rep = Report::new("snla search");
    rep.summary("dim", r.dim);
    rep.summary("coefficients", r.coeffs.len());
    rep.summary("examined", r.examined);
    // summaries are i64; larger counts go to a finding in full
    match r.total_candidates.map(i64::try_from) {
        Some(Ok(t)) => {
            rep.summary("total_candidates", t);
        }
        Some(Err(_)) => {
            let t = r.total_candidates.unwrap_or_default().to_string();
            rep.push(Finding::info("total_candidates", "search", t));
        }
        None => {
            rep.push(Finding::info("total_candidates", "search", "more than 2^128"));
        }
    }
    rep.summary("partial", i64::from(r.partial));
    rep.summary("results", r.hits.len());
    let coeffs: Vec<String> = r.coeffs.iter().map(fmt_rational).collect();
    rep.push(Finding::info("coefficients", "search", coeffs.join(",")));
    if r.partial {
        rep.push(Finding::info("partial", "search", format!("budget stopped after {} candidates", r.examined)));
    }
    for h in &r.hits {
        let c: Vec<String> = h.constants.iter().map(fmt_rational).collect();
        rep.push(Finding::info(
            "snla",
            format!("candidate {:08}", h.ordinal),
            format!(
                "constants [{}] center {} derived {} h2 {}",
                c.join(","),
                h.fingerprint.center_dim,
                h.fingerprint.derived_dim,
                h.fingerprint.h2
            ),
        ));
    }
    rep
}

#[derive(Clone, Debug)]
pub enum ExtensionVariant {
    /// `[x, y] + ω(x, y) z`.
    Standard,
    /// `[x, y] + ω(x . y, d) z` for a caller-chosen element `d`.
    AsWritten { designated: SparseVec },
}

/// Adds a central generator `z` with the bracket twisted by the form.
pub fn snla_central_extension(s: &SnlaInstance, variant: &ExtensionVariant) -> AlgebraInstance {
    let a = &s.bracket;
    match variant {
        ExtensionVariant::Standard => {
            let omega = s.form.to_cochain(a, "omega");
            cohomology::central_extension(a, &omega)
        }
        ExtensionVariant::AsWritten { designated } => {
            let mut families = a.families().to_vec();
            let mut symbol = "z".to_string();
            let mut k = 1;
            while families.iter().any(|f| f.symbol == symbol) {
                symbol = format!("z{k}");
                k += 1;
            }
            families.push(Family::new(symbol.clone(), IndexKind::Integer, Parity::Even));
            let z = GeneratorId::at(symbol, 0);
            let gens = a.generators();
            let mut b = InstanceBuilder::new(format!("{}_ext_as_written", a.name()), Convention::Plain);
            for f in families {
                b.family(f);
            }
            for g in gens {
                b.generator(g.clone());
            }
            b.generator(z.clone());
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let (v, _) = a.table().bracket_gen(i, j);
                    let mut e = a.to_element(&v);
                    let w = s.form.eval(&s.product.product_gen(i, j), designated);
                    e.add_term(z.clone(), &w);
                    if !e.is_zero() {
                        b.bracket(gens[i].clone(), gens[j].clone(), e);
                    }
                }
            }
            for n in a.notes() {
                b.note(n.clone());
            }
            b.note(format!(
                "as-written extension (experimental): [x, y] + omega(x.y, d) z with d = {}",
                a.to_element(designated)
            ));
            b.build().expect("extension of a valid instance is valid")
        }
    }
}
