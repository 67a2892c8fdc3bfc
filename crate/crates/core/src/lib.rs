//! Exact verification toolkit for Lie, Lie super, Novikov and symplectic
//! structure constants.

pub mod algebra;
pub mod automorphisms;
pub mod checks;
pub mod cohomology;
pub mod corpus;
pub mod esvla;
pub mod linalg;
pub mod report;
pub mod snla;
pub mod specfile;
pub mod workers;

pub use algebra::{
    AlgebraError, AlgebraInstance, Convention, Element, Family, GeneratorId, IndexKind, Parity,
    Scope,
};
pub use linalg::{Rational, SparseMatrix, SparseVec};
