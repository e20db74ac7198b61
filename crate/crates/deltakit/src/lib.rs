//! Exact-arithmetic toolkit for finite-dimensional (super)algebras given by
//! structure constants.
//!
//! The crate computes, over ℚ or F_p (p an odd prime) and without a single
//! floating-point operation:
//!
//! - δ-derivations, even/odd δ-superderivations, centroids, and generalized
//!   δ-derivation pairs (χ, φ), as nullspaces of exact linear systems
//!   ([`solver`]);
//! - identity verdicts (Lie, associative, alternative, Jordan, super
//!   variants) with concrete counterexamples on failure ([`identities`]);
//! - annihilators, plus-algebras, direct sums, units and base changes
//!   ([`algebra`]);
//! - Kantor-style doubles A ⊕ Ax and the correspondence between their even
//!   δ-superderivations and derivation spaces of the base ([`double`]);
//! - a catalog of concrete algebras (sl₂, 2×2 matrices, modular Witt, the
//!   Kaplansky superalgebra K₃, abelian fixtures) plus the infinite Witt
//!   algebra with windowed ½-derivation verification ([`catalog`], [`witt`]);
//! - a deterministic JSON interchange format for algebras and solution
//!   spaces ([`mod@format`]).

pub mod algebra;
pub mod catalog;
pub mod double;
pub mod error;
pub mod field;
pub mod format;
pub mod identities;
pub mod linalg;
pub mod oracle;
pub mod solver;
pub mod witt;

pub use algebra::{AlgebraSpec, Element, Parity, ProductKind, Side, Tensor};
pub use double::{even_correspondence, extend_map, kantor_double, lie_double, CorrespondenceReport, DoubleSpec};
pub use error::{Error, Result};
pub use field::{FieldConfig, Scalar};
pub use identities::{check_identities, Identity, IdentityReport, IdentityVerdict, Witness};
pub use linalg::{LinearMap, Matrix, Subspace};
pub use solver::{
    centroid, chi_phi, chi_phi_check, classify, classify_space, delta_derivations,
    delta_derivations_wrt, delta_superderivations, generalized_delta_derivations,
    is_delta_derivation, is_delta_derivation_wrt, ChiPhiLaw, ChiPhiReport, Classification,
    DerivationCheck, MapParity, Member, SolutionBasis, SolutionSpace, SpaceKind,
    TrivialityReason, Verdict,
};
pub use witt::{
    check_half_derivation_window, search_half_derivation_tuples, witt_bracket, GradedWittElement,
    StandardPolyMap, TupleSearchResult, WindowReport, WittWindow,
};
