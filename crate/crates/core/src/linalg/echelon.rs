//! Sparse fraction-free row echelon form.
//!
//! Rows are inserted one at a time and reduced against the existing pivot rows
//! using integer cross-multiplication, so no fractions appear during
//! elimination. Pivot rows are kept primitive (content 1, positive leading
//! coefficient). The pivot for each column is the first inserted row that
//! still has a nonzero entry there after reduction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, SparseVec};

type IntRow = Vec<(usize, BigInt)>;

#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Inserts a row; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, row: &SparseVec) -> bool {
        debug_assert!(row.support_bound() <= self.cols);
        let mut work = to_int_row(row);
        let mut cursor = 0;
        loop {
            let next = work
                .iter()
                .enumerate()
                .skip(cursor)
                .find(|(_, (c, _))| self.pivots.contains_key(c))
                .map(|(pos, (c, _))| (pos, *c));
            let Some((pos, col)) = next else { break };
            let pivot = &self.pivots[&col];
            work = eliminate(&work, pivot, col);
            // Entries before `pos` are untouched and have no pivot.
            cursor = pos;
        }
        if work.is_empty() {
            return false;
        }
        make_primitive(&mut work);
        let lead = work[0].0;
        self.pivots.insert(lead, work);
        true
    }

    /// Would `row` increase the rank? Does not modify `self`.
    pub fn is_independent(&self, row: &SparseVec) -> bool {
        self.clone().insert(row)
    }

    /// Reduced row echelon rows with leading coefficient 1, sorted by
    /// leading column.
    pub fn rref_rows(&self) -> Vec<SparseVec> {
        let mut reduced: BTreeMap<usize, IntRow> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut work = row.clone();
            let mut cursor = 1;
            loop {
                let next = work
                    .iter()
                    .enumerate()
                    .skip(cursor)
                    .find(|(_, (c, _))| reduced.contains_key(c))
                    .map(|(pos, (c, _))| (pos, *c));
                let Some((pos, c)) = next else { break };
                work = eliminate(&work, &reduced[&c], c);
                cursor = pos;
            }
            make_primitive(&mut work);
            reduced.insert(col, work);
        }
        reduced
            .into_values()
            .map(|row| {
                let lead = row[0].1.clone();
                row.into_iter()
                    .map(|(c, v)| (c, Rational::new(v, lead.clone())))
                    .collect()
            })
            .collect()
    }
}

fn to_int_row(row: &SparseVec) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in row.iter() {
        lcm = lcm.lcm(v.denom());
    }
    row.iter()
        .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect()
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row[0].1.is_negative();
    if !g.is_one() || negate {
        let g = if negate { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * work - b * pivot` with the multipliers chosen to cancel `work[col]`.
fn eliminate(work: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let target = &work
        .iter()
        .find(|(c, _)| *c == col)
        .expect("column present")
        .1;
    let lead = &pivot[0].1;
    let g = target.gcd(lead);
    let a = lead / &g;
    let b = target / &g;
    let mut out = Vec::with_capacity(work.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < work.len() || j < pivot.len() {
        let ci = work.get(i).map(|x| x.0);
        let cj = pivot.get(j).map(|x| x.0);
        match (ci, cj) {
            (Some(x), Some(y)) if x == y => {
                let v = &a * &work[i].1 - &b * &pivot[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, &a * &work[i].1));
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, &a * &work[i].1));
                i += 1;
            }
            (_, Some(y)) => {
                let v = -(&b * &pivot[j].1);
                out.push((y, v));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    if !a.is_one() {
        // Keep entries small; sign normalization happens on insertion.
        let mut g = BigInt::zero();
        for (_, v) in &out {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() && !g.is_zero() {
            for (_, v) in out.iter_mut() {
                *v = &*v / &g;
            }
        }
    }
    out
}
