//! Standard modules and stratification checks for bound quiver algebras.
//!
//! Everything is exact: scalars are rationals or residues modulo a prime.
//! Modules are right modules, stored as representations of the quiver with
//! one matrix per arrow. Left-module questions go through
//! [`BoundAlgebra::opposite`].

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod error;
pub mod field;
pub mod linalg;
pub mod module;
pub mod quiver;
pub mod stratify;

pub use algebra::{build_algebra, BoundAlgebra, PairSpaces, Quotient};
pub use error::Error;
pub use field::{Field, Scalar};
pub use linalg::{kernel_basis, rref, Mat, Subspace, Vector};
pub use module::{
    ext1, free_right_module, hom_space, is_projective, projective_cover, quotient_module, radical_of_module,
    submodule_as_module, submodule_generated, subquotient, top_dims, trace, trace_of_vertices, ModuleMap, Presentation,
    Projectivity, RightModule, Submodule,
};
pub use quiver::{Arrow, Path, Quiver, Relation};
pub use stratify::{
    CanonicalFiltration, CheckReport, FiltrationCheck, HomPair, Membership, Reason, StandardModule, StratPlan,
    Stratification, TraceFiltration, Verdict, Witness,
};
