//! Twisted-domain algebra on `Hom(C, L)` over the rationals.
//!
//! Finite-dimensional structures are given by structure constants. A
//! coassociative coalgebra `C` and a multilinear map `φ` on `L` induce an
//! operator `Φ` on `Hom(C, L)`; this crate builds those operators, checks
//! the identities they satisfy exactly, and computes the cohomology of the
//! induced Chevalley–Eilenberg and Lie–Rinehart complexes by rank.

pub mod algebra;
pub mod coalgebra;
pub mod cohomology;
pub mod convolution;
pub mod corpus;
pub mod error;
pub mod format;
pub mod guard;
pub mod lie_rinehart;
pub mod linalg;
pub mod space;
pub mod td;
pub mod witness;

pub use algebra::multilinear::MultilinearMap;
pub use algebra::{AssociativeAlgebra, LieAlgebra, LieModule, PoissonAlgebra};
pub use coalgebra::{Coalgebra, SymmetryClass};
pub use error::{Error, Result};
pub use guard::Guard;
pub use linalg::{Permutation, RationalMatrix, Scalar};
pub use space::{BasedSpace, Space};
pub use witness::{CheckReport, Verdict, Witness};
