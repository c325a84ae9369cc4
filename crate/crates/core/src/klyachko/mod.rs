//! Equivariant bundles as Klyachko filtrations or character multisets.

mod bundle;
mod builtin;
mod decomposition;
mod filtration;
mod restriction;

pub use bundle::{character_counts, BundleData, EquivariantBundle};
pub use builtin::{builtin, Builtin};
pub use decomposition::{adapted_decomposition, adapted_decomposition_seeded, is_adapted, DecompLine, MAX_RANK};
pub use filtration::Filtration;
pub use restriction::{restrict_to_curve, restriction_profile, CurveRestriction, RestrictionProfile, SplittingType};
