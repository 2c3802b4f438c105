//! Two-generator circulant graphs `C_n(i, j)`, their single-arc subdivisions,
//! closed-form automorphism groups, and the symmetry parameters
//! (determining number, distinguishing number, cost of 2-distinguishing).
//!
//! Every closed form in this crate has an independent counterpart: the
//! backtracking automorphism oracle in [`brute`] and the exhaustive searches
//! in [`symparams`]. The `verify_*` functions run both routes and compare.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod brute;
pub mod circulant;
pub mod error;
pub mod graph;
pub mod group;
pub mod search;
pub mod spec;
pub mod subdivided;
pub mod symparams;
pub mod zmod;

pub use brute::{brute_automorphisms, Budget, PermGroupRaw};
pub use circulant::{normalize, CirculantSpec};
pub use error::{Error, Result};
pub use graph::Graph;
pub use group::{closed_form_group, group_order, AutGroup, GroupElement, Perm, StructureTag};
pub use spec::GraphSpec;
pub use subdivided::{Arc, ArcRegime, SubVertex, SubdividedSpec};
pub use symparams::{closed_form_params, Method, SymmetryReport};
