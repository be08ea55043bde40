//! Exact computations with monomial ideals: ordinary and symbolic powers,
//! integral closures of powers, Newton polyhedra, Waldschmidt constants and
//! (asymptotic) resurgence.

pub mod closure;
pub mod decompose;
pub mod error;
pub mod fixtures;
pub mod hilbert;
pub mod ideal;
pub mod lattice;
pub mod lp;
pub mod membership;
pub mod monomial;
pub mod polyhedron;
pub mod rational;
pub mod resurgence;
pub mod symbolic;

pub use decompose::{DecompositionReport, PrimeSupport};
pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use membership::{Containment, Limits, Workspace};
pub use monomial::Monomial;
pub use polyhedron::{Halfspace, NewtonPolyhedron};
pub use rational::Rational;
pub use symbolic::{SymbolicMode, SymbolicScheme};
