//! Random matrices and algebras for property tests, plus a naive dense
//! Jacobi oracle that shares no code with the library checker.

#![allow(dead_code)]

use lieforge::algebra::AlgebraInstance;
use lieforge::cohomology::LinearEndo;
use lieforge::linalg::{rat, Rational, SparseMatrix, SparseVec};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
    rat(rng.gen_range(-3..=3), den)
}

/// Entries nonzero with probability `density`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                m.set(r, c, small_rational(rng));
            }
        }
    }
    m
}

/// Rank-deficient on purpose: a product of two thin factors.
pub fn low_rank_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, rank: usize) -> SparseMatrix {
    let a = random_matrix(rng, rows, rank, 0.7);
    let b = random_matrix(rng, rank, cols, 0.7);
    a.mul(&b)
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> LinearEndo {
    loop {
        let mut m = random_matrix(rng, n, n, 0.5);
        for i in 0..n {
            if rng.gen_bool(0.5) {
                m.add_to(i, i, &rat(1, 1));
            }
        }
        let e = LinearEndo::new(m);
        if e.is_invertible() {
            return e;
        }
    }
}

/// Random alternating table on `e_1 .. e_dim` (usually not Jacobi).
pub fn random_table<R: Rng>(rng: &mut R, dim: usize, density: f64) -> AlgebraInstance {
    let mut brackets = Vec::new();
    for i in 1..=dim {
        for j in i + 1..=dim {
            let mut terms: Vec<(usize, Rational)> = Vec::new();
            for k in 1..=dim {
                if rng.gen_bool(density) {
                    let c = small_rational(rng);
                    if !c.is_zero() {
                        terms.push((k, c));
                    }
                }
            }
            if !terms.is_empty() {
                brackets.push(((i, j), terms));
            }
        }
    }
    AlgebraInstance::from_structure_constants("random", dim, &brackets).unwrap()
}

/// Structure constants of `a` in the basis `f_i = P e_i`.
pub fn change_basis(a: &AlgebraInstance, p: &LinearEndo, name: &str) -> AlgebraInstance {
    let inv = p.inverse().expect("invertible");
    let n = a.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (v, _) = a.bracket_coords(&p.image(i), &p.image(j));
            let w = inv.apply(&v);
            let terms: Vec<(usize, Rational)> = w.iter().map(|(k, c)| (k + 1, c.clone())).collect();
            if !terms.is_empty() {
                brackets.push(((i + 1, j + 1), terms));
            }
        }
    }
    AlgebraInstance::from_structure_constants(name, n, &brackets).unwrap()
}

/// Dense `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
pub fn dense_constants(a: &AlgebraInstance) -> Vec<Vec<Vec<Rational>>> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = SparseVec::unit(i);
                    let y = SparseVec::unit(j);
                    a.bracket_coords(&x, &y).0.to_dense(n)
                })
                .collect()
        })
        .collect()
}

/// Sorted triples `i <= j <= k` whose plain Jacobi sum is nonzero.
pub fn naive_jacobi_failures(c: &[Vec<Vec<Rational>>]) -> Vec<[usize; 3]> {
    let n = c.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let mut sum = vec![Rational::zero(); n];
                for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for l in 0..n {
                        if c[y][z][l].is_zero() {
                            continue;
                        }
                        for (m, s) in sum.iter_mut().enumerate() {
                            *s += &c[y][z][l] * &c[x][l][m];
                        }
                    }
                }
                if sum.iter().any(|s| !s.is_zero()) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}
