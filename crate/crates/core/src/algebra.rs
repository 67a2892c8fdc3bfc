//! Generators, elements, bracket tables and the structural checks that apply
//! to any finite (possibly window-truncated) algebra.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, fmt_rational, Rational, SparseMatrix, SparseVec};
use crate::workers;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexKind {
    Integer,
    Half,
    /// Integer and half-integer indices both allowed.
    Mixed,
}

impl IndexKind {
    pub fn admits(self, doubled_index: i64) -> bool {
        match self {
            IndexKind::Integer => doubled_index % 2 == 0,
            IndexKind::Half => doubled_index % 2 != 0,
            IndexKind::Mixed => true,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            IndexKind::Integer => "integer",
            IndexKind::Half => "half",
            IndexKind::Mixed => "mixed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Alternating bracket, ordinary Jacobi identity.
    Plain,
    /// Graded-antisymmetric bracket with parity signs.
    Super,
}

impl Convention {
    pub fn keyword(self) -> &'static str {
        match self {
            Convention::Plain => "plain",
            Convention::Super => "super",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    pub symbol: String,
    pub kind: IndexKind,
    pub parity: Parity,
}

impl Family {
    pub fn new(symbol: impl Into<String>, kind: IndexKind, parity: Parity) -> Self {
        Self {
            symbol: symbol.into(),
            kind,
            parity,
        }
    }
}

/// A basis generator. The index is stored doubled so that half-integer
/// indices stay exact integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneratorId {
    pub family: String,
    pub doubled_index: i64,
}

impl GeneratorId {
    pub fn new(family: impl Into<String>, doubled_index: i64) -> Self {
        Self {
            family: family.into(),
            doubled_index,
        }
    }

    /// Generator with integer index `index`.
    pub fn at(family: impl Into<String>, index: i64) -> Self {
        Self::new(family, 2 * index)
    }

    /// Generator with index `index + 1/2`.
    pub fn half(family: impl Into<String>, index: i64) -> Self {
        Self::new(family, 2 * index + 1)
    }

    pub fn index(&self) -> Rational {
        linalg::rat(self.doubled_index, 2)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, fmt_rational(&self.index()))
    }
}

/// Sparse rational combination of generators. No stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<GeneratorId, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: GeneratorId) -> Self {
        Self::term(g, Rational::one())
    }

    pub fn term(g: GeneratorId, coef: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(g, &coef);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (GeneratorId, Rational)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (g, c) in terms {
            e.add_term(g, &c);
        }
        e
    }

    pub fn add_term(&mut self, g: GeneratorId, coef: &Rational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(g.clone()).or_insert_with(Rational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, factor: &Rational) {
        for (g, c) in &other.terms {
            self.add_term(g.clone(), &(c * factor));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Element {
        let mut e = Element::zero();
        e.add_scaled(self, factor);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &GeneratorId) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorId, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            match (k, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mag.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{}*{g}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum AlgebraError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("family {0} is not declared")]
    UndeclaredFamily(String),
    #[error("family {0} declared twice")]
    DuplicateFamily(String),
    #[error("generator {0} listed twice")]
    DuplicateGenerator(String),
    #[error("index of {0} does not match the kind of its family")]
    KindMismatch(String),
    #[error("bracket [{0}, {1}] given twice")]
    DuplicateBracket(String, String),
}

/// A reverse-order table value that disagrees with the value implied by the
/// canonical entry and the symmetry axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryConflict {
    /// Ordered pair as it was supplied, `left > right` in canonical order.
    pub pair: (usize, usize),
    /// Supplied value minus the value forced by symmetry.
    pub residual: SparseVec,
}

/// Something noticed while building an instance (for example a rule producing
/// an index of the wrong kind).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFinding {
    pub code: String,
    pub line: Option<usize>,
    pub location: String,
    pub detail: String,
}

/// Structure constants on canonical generator pairs `(i, j)` with `i <= j`.
#[derive(Clone, Debug)]
pub struct BracketTable {
    convention: Convention,
    parity: BTreeMap<String, Parity>,
    gen_parity: Vec<Parity>,
    pairs: BTreeMap<(usize, usize), SparseVec>,
    boundary: BTreeSet<(usize, usize)>,
    conflicts: Vec<SymmetryConflict>,
}

impl BracketTable {
    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn family_parity(&self) -> &BTreeMap<String, Parity> {
        &self.parity
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> + '_ {
        self.pairs.iter().map(|(&k, v)| (k, v))
    }

    pub fn boundary_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.boundary.iter().copied()
    }

    pub fn conflicts(&self) -> &[SymmetryConflict] {
        &self.conflicts
    }

    /// `(-1)^{|a||b|}`, always 1 under the plain convention.
    pub fn koszul(&self, a: usize, b: usize) -> Rational {
        if self.both_odd(a, b) {
            -Rational::one()
        } else {
            Rational::one()
        }
    }

    fn both_odd(&self, a: usize, b: usize) -> bool {
        self.convention == Convention::Super
            && self.gen_parity[a].is_odd()
            && self.gen_parity[b].is_odd()
    }

    /// Factor `s` with `[b, a] = s [a, b]`.
    pub fn swap_sign(&self, a: usize, b: usize) -> Rational {
        if self.both_odd(a, b) {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// `[e_a, e_b]` and whether any term was lost at the window boundary.
    pub fn bracket_gen(&self, a: usize, b: usize) -> (Cow<'_, SparseVec>, bool) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let boundary = self.boundary.contains(&(lo, hi));
        match self.pairs.get(&(lo, hi)) {
            None => (Cow::Owned(SparseVec::new()), boundary),
            Some(v) if a <= b => (Cow::Borrowed(v), boundary),
            Some(v) => (Cow::Owned(v.scaled(&self.swap_sign(lo, hi))), boundary),
        }
    }

    pub fn is_boundary(&self, a: usize, b: usize) -> bool {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.boundary.contains(&key)
    }

    pub fn gen_parity(&self, a: usize) -> Parity {
        self.gen_parity[a]
    }
}

/// Collects ordered bracket values and folds them into a canonical table.
#[derive(Clone, Debug)]
pub struct TableBuilder {
    convention: Convention,
    gen_parity: Vec<Parity>,
    ordered: BTreeMap<(usize, usize), (SparseVec, bool)>,
}

impl TableBuilder {
    pub fn new(convention: Convention, gen_parity: Vec<Parity>) -> Self {
        Self {
            convention,
            gen_parity,
            ordered: BTreeMap::new(),
        }
    }

    /// Records `[e_a, e_b] = value`; `boundary` marks a value that lost
    /// out-of-window terms. Returns `false` if the ordered pair was already set.
    pub fn set(&mut self, a: usize, b: usize, value: SparseVec, boundary: bool) -> bool {
        if self.ordered.contains_key(&(a, b)) {
            return false;
        }
        self.ordered.insert((a, b), (value, boundary));
        true
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.ordered.contains_key(&(a, b))
    }

    pub fn build(self, parity: BTreeMap<String, Parity>) -> BracketTable {
        let mut table = BracketTable {
            convention: self.convention,
            parity,
            gen_parity: self.gen_parity,
            pairs: BTreeMap::new(),
            boundary: BTreeSet::new(),
            conflicts: Vec::new(),
        };
        // Canonical-order entries first, then reverse-order entries either fill
        // the gap or are compared against the canonical value.
        let mut present: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut reverse = Vec::new();
        for ((a, b), (value, boundary)) in self.ordered {
            if a <= b {
                present.insert((a, b));
                if boundary {
                    table.boundary.insert((a, b));
                }
                if !value.is_zero() {
                    table.pairs.insert((a, b), value);
                }
            } else {
                reverse.push(((a, b), value, boundary));
            }
        }
        for ((a, b), value, boundary) in reverse {
            let key = (b, a);
            let sign = table.swap_sign(b, a);
            if !present.contains(&key) {
                if boundary {
                    table.boundary.insert(key);
                }
                let implied = value.scaled(&sign);
                if !implied.is_zero() {
                    table.pairs.insert(key, implied);
                }
                present.insert(key);
                continue;
            }
            if boundary {
                table.boundary.insert(key);
            }
            let forced = table
                .pairs
                .get(&key)
                .map(|v| v.scaled(&sign))
                .unwrap_or_default();
            let residual = value.sub(&forced);
            if !residual.is_zero() && !table.boundary.contains(&key) {
                table.conflicts.push(SymmetryConflict {
                    pair: (a, b),
                    residual,
                });
            }
        }
        table
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Generators with `|index| <= W - margin` (all generators when unwindowed).
    Interior,
    All,
}

/// A finite algebra given by structure constants over an ordered generator
/// list, optionally a truncation window of a graded algebra.
#[derive(Clone, Debug)]
pub struct AlgebraInstance {
    name: String,
    families: Vec<Family>,
    generators: Vec<GeneratorId>,
    lookup: HashMap<GeneratorId, usize>,
    table: BracketTable,
    window: Option<u32>,
    interior_margin: u32,
    findings: Vec<InstanceFinding>,
    notes: Vec<String>,
}

pub const DEFAULT_INTERIOR_MARGIN: u32 = 2;

/// Programmatic construction of an [`AlgebraInstance`].
#[derive(Clone, Debug)]
pub struct InstanceBuilder {
    name: String,
    convention: Convention,
    families: Vec<Family>,
    generators: Vec<GeneratorId>,
    window: Option<u32>,
    interior_margin: u32,
    brackets: Vec<(GeneratorId, GeneratorId, Element, bool)>,
    findings: Vec<InstanceFinding>,
    notes: Vec<String>,
}

impl InstanceBuilder {
    pub fn new(name: impl Into<String>, convention: Convention) -> Self {
        Self {
            name: name.into(),
            convention,
            families: Vec::new(),
            generators: Vec::new(),
            window: None,
            interior_margin: DEFAULT_INTERIOR_MARGIN,
            brackets: Vec::new(),
            findings: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn family(&mut self, family: Family) -> &mut Self {
        self.families.push(family);
        self
    }

    pub fn generator(&mut self, g: GeneratorId) -> &mut Self {
        self.generators.push(g);
        self
    }

    pub fn window(&mut self, window: u32) -> &mut Self {
        self.window = Some(window);
        self
    }

    pub fn interior_margin(&mut self, margin: u32) -> &mut Self {
        self.interior_margin = margin;
        self
    }

    /// Sets the ordered bracket `[x, y] = value`.
    pub fn bracket(&mut self, x: GeneratorId, y: GeneratorId, value: Element) -> &mut Self {
        self.brackets.push((x, y, value, false));
        self
    }

    /// Like [`bracket`](Self::bracket) but records a window-boundary drop.
    pub fn bracket_with_boundary(
        &mut self,
        x: GeneratorId,
        y: GeneratorId,
        value: Element,
        boundary: bool,
    ) -> &mut Self {
        self.brackets.push((x, y, value, boundary));
        self
    }

    pub fn finding(&mut self, finding: InstanceFinding) -> &mut Self {
        self.findings.push(finding);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn build(self) -> Result<AlgebraInstance, AlgebraError> {
        let mut family_pos: HashMap<&str, usize> = HashMap::new();
        for (i, f) in self.families.iter().enumerate() {
            if family_pos.insert(f.symbol.as_str(), i).is_some() {
                return Err(AlgebraError::DuplicateFamily(f.symbol.clone()));
            }
        }
        let mut generators = self.generators.clone();
        for g in &generators {
            let Some(&fi) = family_pos.get(g.family.as_str()) else {
                return Err(AlgebraError::UndeclaredFamily(g.family.clone()));
            };
            if !self.families[fi].kind.admits(g.doubled_index) {
                return Err(AlgebraError::KindMismatch(g.to_string()));
            }
        }
        generators.sort_by_key(|g| (family_pos[g.family.as_str()], g.doubled_index));
        if let Some(w) = generators.windows(2).find(|w| w[0] == w[1]) {
            return Err(AlgebraError::DuplicateGenerator(w[0].to_string()));
        }
        let lookup: HashMap<GeneratorId, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let gen_parity: Vec<Parity> = generators
            .iter()
            .map(|g| self.families[family_pos[g.family.as_str()]].parity)
            .collect();
        let to_vec = |e: &Element| -> Result<SparseVec, AlgebraError> {
            let mut v = SparseVec::new();
            for (g, c) in e.iter() {
                let i = *lookup
                    .get(g)
                    .ok_or_else(|| AlgebraError::UnknownGenerator(g.to_string()))?;
                v.add_term(i, c);
            }
            Ok(v)
        };
        let mut builder = TableBuilder::new(self.convention, gen_parity);
        for (x, y, value, boundary) in &self.brackets {
            let a = *lookup
                .get(x)
                .ok_or_else(|| AlgebraError::UnknownGenerator(x.to_string()))?;
            let b = *lookup
                .get(y)
                .ok_or_else(|| AlgebraError::UnknownGenerator(y.to_string()))?;
            if !builder.set(a, b, to_vec(value)?, *boundary) {
                return Err(AlgebraError::DuplicateBracket(x.to_string(), y.to_string()));
            }
        }
        let parity = self
            .families
            .iter()
            .map(|f| (f.symbol.clone(), f.parity))
            .collect();
        Ok(AlgebraInstance {
            name: self.name,
            families: self.families,
            generators,
            lookup,
            table: builder.build(parity),
            window: self.window,
            interior_margin: self.interior_margin,
            findings: self.findings,
            notes: self.notes,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingViolation {
    pub pair: (GeneratorId, GeneratorId),
    pub residual: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleViolation {
    pub triple: [GeneratorId; 3],
    pub residual: Element,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JacobiReport {
    pub violations: Vec<TripleViolation>,
    pub checked: usize,
    /// Triples skipped because a needed bracket left the window.
    pub skipped: usize,
}

impl JacobiReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub basis: Vec<Element>,
    /// Candidate generators forced out because some bracket left the window.
    pub pinned: usize,
}

impl CenterReport {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl AlgebraInstance {
    /// Single-family finite algebra on `e_1 .. e_dim` from structure constants
    /// `[e_i, e_j] = sum c e_k`, with 1-based indices.
    pub fn from_structure_constants(
        name: &str,
        dim: usize,
        brackets: &[((usize, usize), Vec<(usize, Rational)>)],
    ) -> Result<AlgebraInstance, AlgebraError> {
        let mut b = InstanceBuilder::new(name, Convention::Plain);
        b.family(Family::new("e", IndexKind::Integer, Parity::Even));
        for i in 1..=dim {
            b.generator(GeneratorId::at("e", i as i64));
        }
        for ((i, j), terms) in brackets {
            let value = Element::from_terms(
                terms
                    .iter()
                    .map(|(k, c)| (GeneratorId::at("e", *k as i64), c.clone())),
            );
            b.bracket(GeneratorId::at("e", *i as i64), GeneratorId::at("e", *j as i64), value);
        }
        b.build()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &GeneratorId {
        &self.generators[i]
    }

    pub fn position(&self, g: &GeneratorId) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn convention(&self) -> Convention {
        self.table.convention
    }

    pub fn window(&self) -> Option<u32> {
        self.window
    }

    pub fn interior_margin(&self) -> u32 {
        self.interior_margin
    }

    pub fn findings(&self) -> &[InstanceFinding] {
        &self.findings
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.table.gen_parity[i]
    }

    /// Doubled index of generator `i`, used as its grade.
    pub fn doubled_grade(&self, i: usize) -> i64 {
        self.generators[i].doubled_index
    }

    pub fn is_interior(&self, i: usize) -> bool {
        match self.window {
            None => true,
            Some(w) => {
                let bound = 2 * (w as i64 - self.interior_margin as i64);
                self.generators[i].doubled_index.abs() <= bound
            }
        }
    }

    pub fn scope_members(&self, scope: Scope) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| scope == Scope::All || self.is_interior(i))
            .collect()
    }

    pub fn to_coords(&self, x: &Element) -> Result<SparseVec, AlgebraError> {
        let mut v = SparseVec::new();
        for (g, c) in x.iter() {
            let i = self
                .position(g)
                .ok_or_else(|| AlgebraError::UnknownGenerator(g.to_string()))?;
            v.add_term(i, c);
        }
        Ok(v)
    }

    pub fn to_element(&self, v: &SparseVec) -> Element {
        Element::from_terms(v.iter().map(|(i, c)| (self.generators[i].clone(), c.clone())))
    }

    /// Bilinear extension of the table; the flag is set when a contributing
    /// generator pair lost terms at the window boundary.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<(Element, bool), AlgebraError> {
        let (v, boundary) = self.bracket_coords(&self.to_coords(x)?, &self.to_coords(y)?);
        Ok((self.to_element(&v), boundary))
    }

    pub fn bracket_coords(&self, x: &SparseVec, y: &SparseVec) -> (SparseVec, bool) {
        let mut out = SparseVec::new();
        let mut boundary = false;
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let (v, flag) = self.table.bracket_gen(i, j);
                boundary |= flag;
                if !v.is_zero() {
                    out.add_scaled(&v, &(a * b));
                }
            }
        }
        (out, boundary)
    }

    /// `[e_a, y]` for a vector `y`.
    pub fn bracket_gen_vec(&self, a: usize, y: &SparseVec) -> (SparseVec, bool) {
        let mut out = SparseVec::new();
        let mut boundary = false;
        for (j, b) in y.iter() {
            let (v, flag) = self.table.bracket_gen(a, j);
            boundary |= flag;
            if !v.is_zero() {
                out.add_scaled(&v, b);
            }
        }
        (out, boundary)
    }

    /// Matrix of `ad_{e_a}`: column `j` holds the coordinates of `[e_a, e_j]`.
    pub fn ad_matrix(&self, a: usize) -> SparseMatrix {
        let n = self.dim();
        let mut m = SparseMatrix::zeros(n, n);
        for j in 0..n {
            let (v, _) = self.table.bracket_gen(a, j);
            for (k, c) in v.iter() {
                m.set(k, j, c.clone());
            }
        }
        m
    }

    pub fn check_alternating(&self) -> Vec<AlternatingViolation> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            if self.table.swap_sign(i, i).is_one() {
                continue;
            }
            let (v, _) = self.table.bracket_gen(i, i);
            if !v.is_zero() {
                out.push((
                    (i, i),
                    AlternatingViolation {
                        pair: (self.generators[i].clone(), self.generators[i].clone()),
                        residual: self.to_element(&v),
                    },
                ));
            }
        }
        for c in &self.table.conflicts {
            let (a, b) = c.pair;
            out.push((
                (b, a),
                AlternatingViolation {
                    pair: (self.generators[a].clone(), self.generators[b].clone()),
                    residual: self.to_element(&c.residual),
                },
            ));
        }
        out.sort_by_key(|(k, _)| *k);
        out.into_iter().map(|(_, v)| v).collect()
    }

    /// Graded Jacobi sum for the triple, or `None` when a needed bracket left
    /// the window.
    pub fn jacobi_sum(&self, x: usize, y: usize, z: usize) -> Option<SparseVec> {
        let t = &self.table;
        let mut total = SparseVec::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let (inner, f1) = t.bracket_gen(b, c);
            if f1 {
                return None;
            }
            let (outer, f2) = self.bracket_gen_vec(a, &inner);
            if f2 {
                return None;
            }
            total.add_scaled(&outer, &t.koszul(a, c));
        }
        Some(total)
    }

    /// Unordered generator triples (with repetition) from `scope`.
    pub fn triples(&self, scope: Scope) -> Vec<[usize; 3]> {
        let members = self.scope_members(scope);
        let mut out = Vec::new();
        for (p, &i) in members.iter().enumerate() {
            for (q, &j) in members.iter().enumerate().skip(p) {
                for &k in members.iter().skip(q) {
                    out.push([i, j, k]);
                }
            }
        }
        out
    }

    pub fn check_jacobi(&self, scope: Scope) -> JacobiReport {
        let triples = self.triples(scope);
        let results = workers::parallel_map(&triples, |&[i, j, k]| self.jacobi_sum(i, j, k));
        let mut report = JacobiReport::default();
        for (t, r) in triples.iter().zip(results) {
            match r {
                None => report.skipped += 1,
                Some(sum) => {
                    report.checked += 1;
                    if !sum.is_zero() {
                        report.violations.push(TripleViolation {
                            triple: t.map(|i| self.generators[i].clone()),
                            residual: self.to_element(&sum),
                        });
                    }
                }
            }
        }
        report
    }

    /// Interior elements commuting with every interior generator.
    pub fn center(&self) -> CenterReport {
        let members = self.scope_members(Scope::Interior);
        let n = members.len();
        let mut rows: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        let mut pinned = BTreeSet::new();
        for (col, &x) in members.iter().enumerate() {
            for &g in &members {
                let (v, boundary) = self.table.bracket_gen(x, g);
                if boundary {
                    pinned.insert(col);
                }
                for (k, c) in v.iter() {
                    rows.entry((g, k)).or_default().set(col, c.clone());
                }
            }
        }
        let mut equations: Vec<SparseVec> = rows.into_values().collect();
        equations.extend(pinned.iter().map(|&col| SparseVec::unit(col)));
        let m = SparseMatrix::from_rows(&equations, n);
        let basis = linalg::nullspace(&m)
            .into_iter()
            .map(|v| self.to_element(&v.remap(|c| members[c])))
            .collect();
        CenterReport {
            basis,
            pinned: pinned.len(),
        }
    }

    /// Canonical basis of the span of all interior brackets `[g, h]`.
    pub fn derived_subalgebra(&self) -> Vec<Element> {
        self.derived_coords()
            .iter()
            .map(|v| self.to_element(v))
            .collect()
    }

    fn derived_coords(&self) -> Vec<SparseVec> {
        let members = self.scope_members(Scope::Interior);
        let mut ech = linalg::Echelon::new(self.dim());
        for (p, &i) in members.iter().enumerate() {
            for &j in members.iter().skip(p) {
                let (v, boundary) = self.table.bracket_gen(i, j);
                if !boundary && !v.is_zero() {
                    ech.insert(&v);
                }
            }
        }
        ech.rref_rows()
    }

    /// True when every bracket between derived-subalgebra basis vectors
    /// vanishes.
    pub fn is_two_step_solvable(&self) -> bool {
        let derived = self.derived_coords();
        derived.iter().enumerate().all(|(p, u)| {
            derived
                .iter()
                .skip(p)
                .all(|v| self.bracket_coords(u, v).0.is_zero())
        })
    }

    /// Number of canonical pairs that lost terms at the window boundary.
    pub fn boundary_pair_count(&self) -> usize {
        self.table.boundary.len()
    }

    /// Deterministic text dump of generators and nonzero table entries.
    pub fn canonical_dump(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "algebra {} convention {}\n",
            self.name,
            self.convention().keyword()
        ));
        if let Some(w) = self.window {
            out.push_str(&format!("window {w} margin {}\n", self.interior_margin));
        }
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        out.push_str(&format!("generators {}\n", gens.join(" ")));
        for ((a, b), v) in &self.table.pairs {
            out.push_str(&format!(
                "[{}, {}] = {}\n",
                self.generators[*a],
                self.generators[*b],
                self.to_element(v)
            ));
        }
        for (a, b) in &self.table.boundary {
            out.push_str(&format!(
                "boundary [{}, {}]\n",
                self.generators[*a], self.generators[*b]
            ));
        }
        out
    }

    pub(crate) fn with_parts(
        &self,
        name: String,
        families: Vec<Family>,
        generators: Vec<GeneratorId>,
        table: BracketTable,
        notes: Vec<String>,
    ) -> AlgebraInstance {
        let lookup = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        AlgebraInstance {
            name,
            families,
            generators,
            lookup,
            table,
            window: self.window,
            interior_margin: self.interior_margin,
            findings: self.findings.clone(),
            notes,
        }
    }

    pub(crate) fn table_builder(&self, extra_parity: &[Parity]) -> TableBuilder {
        let mut parity = self.table.gen_parity.clone();
        parity.extend_from_slice(extra_parity);
        TableBuilder::new(self.convention(), parity)
    }

    /// Formats a generator triple as `(x, y, z)`.
    pub fn describe(&self, ids: &[usize]) -> String {
        let parts: Vec<String> = ids.iter().map(|&i| self.generators[i].to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

pub fn describe_ids(ids: &[GeneratorId]) -> String {
    let parts: Vec<String> = ids.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
