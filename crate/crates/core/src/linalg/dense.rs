//! Dense elimination for small systems, also an independent cross-check of
//! the sparse route. Forward elimination is Bareiss on integer rows (each
//! step divides exactly by the previous pivot); the back substitution that
//! produces the reduced form runs over the pivot rows only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect()
}

/// Row echelon form by fraction-free elimination with the first nonzero
/// pivot in row order. Returns the pivot rows and their columns.
fn bareiss(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m = integer_rows(rows);
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let lead = &pivot_row[c];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = lead * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
            // columns left of c are already zero in every row below r
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Reduced row echelon form and pivot columns. Pivot rows come first; the
/// remaining rows are zero.
pub fn rref_dense(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let (ech, pivots) = bareiss(rows);
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(nrows);
    // bottom-up: each row is reduced against the already final rows below it
    for (k, row) in ech.iter().enumerate().rev() {
        let c = pivots[k];
        let mut v: Vec<Rational> = row
            .iter()
            .map(|x| Rational::new(x.clone(), row[c].clone()))
            .collect();
        for (done, &pc) in out.iter().zip(pivots[k + 1..].iter().rev()) {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for (x, p) in v.iter_mut().zip(done).skip(pc) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        out.push(v);
    }
    out.reverse();
    out.resize(nrows, vec![Rational::zero(); ncols]);
    (out, pivots)
}

pub fn rank_dense(rows: &[Vec<Rational>]) -> usize {
    bareiss(rows).1.len()
}
