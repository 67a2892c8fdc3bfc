//! Small named algebras used by tests, examples and the CLI.

use crate::algebra::{
    AlgebraInstance, Convention, Element, Family, GeneratorId, IndexKind, InstanceBuilder, Parity,
};
use crate::linalg::{int, Rational};

/// Bundled spec files.
pub const ESVLA_LIE: &str = include_str!("../data/esvla.lie");
pub const HEISENBERG_LIE: &str = include_str!("../data/heisenberg.lie");
pub const SL2_LIE: &str = include_str!("../data/sl2.lie");
pub const SNLA_ZERO_LIE: &str = include_str!("../data/snla_zero.lie");
pub const SNLA_SQUARE_LIE: &str = include_str!("../data/snla_square.lie");
pub const SUPER_QM_LIE: &str = include_str!("../data/super_qm.lie");

fn sc(name: &str, dim: usize, brackets: &[((usize, usize), &[(usize, i64)])]) -> AlgebraInstance {
    let owned: Vec<((usize, usize), Vec<(usize, Rational)>)> = brackets
        .iter()
        .map(|(p, terms)| (*p, terms.iter().map(|&(k, c)| (k, int(c))).collect()))
        .collect();
    AlgebraInstance::from_structure_constants(name, dim, &owned).expect("corpus table is valid")
}

/// `[e1, e2] = e3`.
pub fn heisenberg() -> AlgebraInstance {
    sc("heisenberg", 3, &[((1, 2), &[(3, 1)])])
}

/// `e1 = e, e2 = f, e3 = h` with `[e,f] = h, [h,e] = 2e, [h,f] = -2f`.
pub fn sl2() -> AlgebraInstance {
    sc(
        "sl2",
        3,
        &[((1, 2), &[(3, 1)]), ((3, 1), &[(1, 2)]), ((3, 2), &[(2, -2)])],
    )
}

pub fn abelian(dim: usize) -> AlgebraInstance {
    sc(&format!("abelian{dim}"), dim, &[])
}

/// Four-dimensional filiform: `[e1, e2] = e3, [e1, e3] = e4`.
pub fn filiform4() -> AlgebraInstance {
    sc("filiform4", 4, &[((1, 2), &[(3, 1)]), ((1, 3), &[(4, 1)])])
}

/// Non-abelian two-dimensional: `[e1, e2] = e2`.
pub fn affine2() -> AlgebraInstance {
    sc("affine2", 2, &[((1, 2), &[(2, 1)])])
}

/// `aff(1) + aff(1)`: `[e1, e2] = e2, [e3, e4] = e4`.
pub fn affine2_squared() -> AlgebraInstance {
    sc(
        "affine2_squared",
        4,
        &[((1, 2), &[(2, 1)]), ((3, 4), &[(4, 1)])],
    )
}

/// Superalgebra with even `H` and odd `Q`, `[Q, Q] = 2H`.
pub fn super_qm() -> AlgebraInstance {
    let mut b = InstanceBuilder::new("super_qm", Convention::Super);
    b.family(Family::new("H", IndexKind::Integer, Parity::Even));
    b.family(Family::new("Q", IndexKind::Integer, Parity::Odd));
    let h = GeneratorId::at("H", 0);
    let q = GeneratorId::at("Q", 0);
    b.generator(h.clone()).generator(q.clone());
    b.bracket(q.clone(), q, Element::term(h, int(2)));
    b.build().expect("corpus table is valid")
}

/// Lie algebras (plain convention, Jacobi holds) of dimension at most 6.
pub fn lie_corpus() -> Vec<AlgebraInstance> {
    vec![
        heisenberg(),
        sl2(),
        filiform4(),
        affine2(),
        affine2_squared(),
        abelian(1),
        abelian(2),
        abelian(3),
        abelian(4),
        abelian(5),
        abelian(6),
    ]
}
