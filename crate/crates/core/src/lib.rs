//! Exact computations with automorphisms of free associative and free
//! nonassociative algebras over the rationals: polynomial arithmetic,
//! Jacobians and derivatives, elementary factorization of 2x2 matrices over
//! polynomial rings, and tame/wild decisions with checkable certificates.

pub mod alphabet;
pub mod autom;
pub mod cring;
pub mod deriv;
pub mod error;
pub mod field;
pub mod ge2;
pub mod linalg;
pub mod lincomb;
pub mod metab;
pub mod natree;
pub mod ncpoly;
pub mod parse;
pub mod report;

pub use alphabet::{Alphabet, Ctx, Var};
pub use autom::{NcEndo, Verdict};
pub use cring::{CMatrix, CPoly};
pub use error::{Error, Result};
pub use field::Q;
pub use natree::{NaEndo, NaPoly};
pub use ncpoly::NcPoly;
