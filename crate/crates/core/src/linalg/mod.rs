//! Exact rational scalars and sparse linear algebra.
//!
//! Every coefficient handled by the toolkit is a [`Rational`]. Vectors are
//! sparse maps from coordinate to nonzero value; matrices are sparse maps from
//! `(row, col)` to nonzero value.

mod dense;
mod echelon;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use dense::{rank_dense, rref_dense};
pub use echelon::Echelon;

/// Arbitrary-precision exact rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den`. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-1/2"`, `"+4/6"`. Denominators must be nonzero.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let text = text.strip_prefix('+').unwrap_or(text);
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Sparse vector over the rationals. No stored coordinate is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec(BTreeMap<usize, Rational>);

impl SparseVec {
    pub fn new() -> Self {
        Self(BTreeMap::new())
    }

    pub fn unit(index: usize) -> Self {
        let mut v = Self::new();
        v.0.insert(index, Rational::one());
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut v = Self::new();
        for (i, c) in pairs {
            v.add_term(i, &c);
        }
        v
    }

    /// Dense slice to sparse.
    pub fn from_dense(values: &[Rational]) -> Self {
        Self(
            values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (&i, c) in &self.0 {
            out[i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, index: usize) -> Option<&Rational> {
        self.0.get(&index)
    }

    /// Coordinate value, zero when absent.
    pub fn coord(&self, index: usize) -> Rational {
        self.0.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, index: usize, value: Rational) {
        if value.is_zero() {
            self.0.remove(&index);
        } else {
            self.0.insert(index, value);
        }
    }

    pub fn add_term(&mut self, index: usize, value: &Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.0.entry(index).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.0.remove(&index);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.0 {
            self.add_term(i, &(c * factor));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        Self(self.0.iter().map(|(&i, c)| (i, c * factor)).collect())
    }

    pub fn neg(&self) -> SparseVec {
        Self(self.0.iter().map(|(&i, c)| (i, -c)).collect())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .0
            .iter()
            .filter_map(|(i, c)| large.0.get(i).map(|d| c * d))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    /// Largest stored coordinate plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.0.keys().next_back().map_or(0, |&i| i + 1)
    }

    /// Applies a coordinate relabelling.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.0.iter().map(|(&i, c)| (map(i), c.clone())))
    }
}

impl FromIterator<(usize, Rational)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        Self::from_pairs(iter)
    }
}

/// Sparse rational matrix. No stored entry is zero, all indices in bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    /// Builds a matrix whose rows are the given sparse vectors.
    pub fn from_rows(rows: &[SparseVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) outside {}x{}",
            self.rows,
            self.cols
        );
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Rational) {
        let current = self.get(row, col);
        self.set(row, col, current + value);
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> + '_ {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn row(&self, row: usize) -> SparseVec {
        self.entries
            .range((row, 0)..(row + 1, 0))
            .map(|(&(_, c), v)| (c, v.clone()))
            .collect()
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].set(c, v.clone());
        }
        out
    }

    pub fn col(&self, col: usize) -> SparseVec {
        self.entries
            .iter()
            .filter(|(&(_, c), _)| c == col)
            .map(|(&(r, _), v)| (r, v.clone()))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r] += v * &x[c];
        }
        out
    }

    pub fn mul_sparse(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(r, c), v) in &self.entries {
            if let Some(xc) = x.get(c) {
                out.add_term(r, &(v * xc));
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let other_rows = other.row_vectors();
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (&(r, k), v) in &self.entries {
            for (c, w) in other_rows[k].iter() {
                out.add_to(r, c, &(v * w));
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scaled(&-Rational::one()))
    }

    pub fn scaled(&self, factor: &Rational) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        if factor.is_zero() {
            return out;
        }
        out.entries = self
            .entries
            .iter()
            .map(|(&k, v)| (k, v * factor))
            .collect();
        out
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| fmt_rational(&self.get(r, c)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrices at or below this size in both dimensions use the dense route.
pub const DENSE_LIMIT: usize = 64;

fn use_dense(m: &SparseMatrix) -> bool {
    m.rows() <= DENSE_LIMIT && m.cols() <= DENSE_LIMIT
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    if use_dense(m) {
        rank_dense(&m.to_dense())
    } else {
        rank_sparse(m)
    }
}

/// Rank through the sparse fraction-free route regardless of size.
pub fn rank_sparse(m: &SparseMatrix) -> usize {
    let mut ech = Echelon::new(m.cols());
    for row in m.row_vectors() {
        ech.insert(&row);
    }
    ech.rank()
}

/// Basis of `{ v : M v = 0 }`, one vector per free column in ascending order.
/// Each vector has a 1 at its free column and zeros at the other free columns.
pub fn nullspace(m: &SparseMatrix) -> Vec<SparseVec> {
    if use_dense(m) {
        nullspace_dense(m)
    } else {
        nullspace_sparse(m)
    }
}

pub fn nullspace_sparse(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut ech = Echelon::new(m.cols());
    for row in m.row_vectors() {
        ech.insert(&row);
    }
    nullspace_from_rref(&ech.rref_rows(), m.cols())
}

pub fn nullspace_dense(m: &SparseMatrix) -> Vec<SparseVec> {
    let (rref, _) = rref_dense(&m.to_dense());
    let rows: Vec<SparseVec> = rref
        .iter()
        .map(|r| SparseVec::from_dense(r))
        .filter(|r| !r.is_zero())
        .collect();
    nullspace_from_rref(&rows, m.cols())
}

/// Rows must be in reduced row echelon form with leading coefficient 1.
fn nullspace_from_rref(rows: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    let mut pivot_of_col: BTreeMap<usize, usize> = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        let lead = row.indices().next().expect("zero row in rref");
        pivot_of_col.insert(lead, r);
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_of_col.contains_key(c)) {
        let mut v = SparseVec::unit(free);
        for (&pc, &r) in &pivot_of_col {
            if let Some(x) = rows[r].get(free) {
                v.set(pc, -x.clone());
            }
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `M x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &SparseMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length must equal rows");
    let cols = m.cols();
    let mut ech = Echelon::new(cols + 1);
    for (r, mut row) in m.row_vectors().into_iter().enumerate() {
        row.set(cols, b[r].clone());
        ech.insert(&row);
    }
    let mut x = vec![Rational::zero(); cols];
    for row in ech.rref_rows() {
        let lead = row.indices().next().expect("zero row in rref");
        if lead == cols {
            return None;
        }
        x[lead] = row.coord(cols);
    }
    Some(x)
}

/// Dimension of the span of the given vectors.
pub fn span_rank(vectors: &[SparseVec]) -> usize {
    let cols = vectors.iter().map(SparseVec::support_bound).max().unwrap_or(0);
    let mut ech = Echelon::new(cols);
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Canonical (reduced echelon) basis of the span of the given vectors.
pub fn span_basis(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let cols = vectors.iter().map(SparseVec::support_bound).max().unwrap_or(0);
    let mut ech = Echelon::new(cols);
    for v in vectors {
        ech.insert(v);
    }
    ech.rref_rows()
}

/// `dim(span(a) ∩ span(b))` via `dim a + dim b - dim(a + b)`.
pub fn intersection_dim(a: &[SparseVec], b: &[SparseVec]) -> usize {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let both: Vec<SparseVec> = a.iter().chain(b.iter()).cloned().collect();
    ra + rb - span_rank(&both)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecq(xs: &[Rational]) -> Vec<Rational> {
        xs.to_vec()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&SparseMatrix::zeros(2, 2)), 0);
        assert_eq!(rank(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&SparseMatrix::identity(2)).is_empty());
        let ns = nullspace(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].to_dense(2), vecq(&[int(-2), int(1)]));
        let ns = nullspace(&SparseMatrix::zeros(1, 3));
        assert_eq!(ns.len(), 3);
    }

    #[test]
    fn solve_examples() {
        let x = solve(&SparseMatrix::identity(2), &[rat(3, 2), int(-1)]).unwrap();
        assert_eq!(x, vecq(&[rat(3, 2), int(-1)]));
        let m = SparseMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(solve(&m, &[int(1), int(3)]).is_none());
        let z = SparseMatrix::zeros(2, 2);
        let x = solve(&z, &[int(0), int(0)]).unwrap();
        assert!(z.mul_vec(&x).iter().all(Zero::is_zero));
        assert_eq!(x, vecq(&[int(0), int(0)]));
    }

    #[test]
    fn zero_rows_have_zero_rank() {
        assert_eq!(rank(&SparseMatrix::zeros(0, 5)), 0);
        assert_eq!(nullspace(&SparseMatrix::zeros(0, 2)).len(), 2);
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4/6"), Some(rat(2, 3)));
        assert_eq!(parse_rational("+7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(fmt_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(fmt_rational(&int(5)), "5");
    }

    #[test]
    fn sparse_vec_never_stores_zero() {
        let mut v = SparseVec::unit(3);
        v.add_term(3, &int(-1));
        assert!(v.is_zero());
        v.set(1, int(0));
        assert_eq!(v.nnz(), 0);
    }

    #[test]
    fn large_sparse_path_matches_dense() {
        // 70 x 70 bidiagonal with one dependent row: above the dense limit.
        let n = 70;
        let mut m = SparseMatrix::zeros(n, n);
        for i in 0..n - 1 {
            m.set(i, i, int(1));
            m.set(i, i + 1, rat(-1, 2));
        }
        let mut last = m.row(0);
        last.add_scaled(&m.row(1), &int(3));
        for (c, v) in last.iter() {
            m.set(n - 1, c, v.clone());
        }
        assert_eq!(rank(&m), n - 1);
        assert_eq!(rank_dense(&m.to_dense()), n - 1);
        let ns = nullspace(&m);
        assert_eq!(ns, nullspace_dense(&m));
        for v in &ns {
            assert!(m.mul_sparse(v).is_zero());
        }
    }
}
