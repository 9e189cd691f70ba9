//! Exact computations for the mirror and twisted Heisenberg-Virasoro
//! algebras: brackets, normal ordering in the enveloping algebra, concrete
//! restricted modules, Sugawara operators and linear-algebra probes.

pub mod algebra;
pub mod doc;
pub mod error;
pub mod expvec;
pub mod formulas;
pub mod lin;
pub mod linalg;
pub mod modules;
pub mod pbw;
pub mod probes;
pub mod rational;
pub mod report;
pub mod sugawara;

pub use error::{Error, Result};
pub use rational::Q;
