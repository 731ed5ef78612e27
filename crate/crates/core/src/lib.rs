//! Marked Dynkin diagrams and the combinatorics of lines on rational
//! homogeneous spaces: line families, relative tangent splitting types,
//! uniform-bundle thresholds, gap bounds and Chow-ring checks.
//!
//! Everything here is pure computation over integers and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;

pub mod chow;
pub mod diagram;
pub mod marked;
pub mod roots;
pub mod tangent;
pub mod thresholds;

pub use diagram::{CartanMatrix, CartanType, Component, DynkinDiagram, Edge, Family, RootLength};
pub use error::Error;
pub use marked::{CaseTag, LineFamilyReport, MarkedDiagram, ProductSpace};
pub use tangent::{SplittingType, Tag, WeightSet};
pub use thresholds::{GapBound, SplittingProfile, Threshold, Verdict, VmrtFamily};

pub use roots::{positive_roots, Root};

pub type Result<T, E = Error> = core::result::Result<T, E>;
