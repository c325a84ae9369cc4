//! Exact computations for equivariant vector bundles on projective spaces
//! and Bott towers: fans, Klyachko filtrations, restrictions to invariant
//! curves, nefness, Mori cone generators and Seshadri constants.
//!
//! All arithmetic is over arbitrary-precision integers and rationals.

pub mod cli;
pub mod error;
pub mod fan;
pub mod klyachko;
pub mod lattice;
pub mod oracle;
pub mod par;
pub mod positivity;
pub mod serde_int;
pub mod seshadri;
pub mod subspace;

pub use error::{Error, Result};
pub use fan::{BottNumbers, CurveClass, DivisorClass, Fan, FanFamily, InvariantCurve};
pub use klyachko::{builtin, Builtin, EquivariantBundle, Filtration, RestrictionProfile, SplittingType};
pub use lattice::{Int, LatticeVec, Rational};
pub use par::Execution;
