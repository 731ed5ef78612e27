//! Integer Chow rings: graded quotient presentations, Schubert calculus on
//! Grassmannians, and the vanishing arguments for the exceptional cases.

use alloc::string::String;
use alloc::vec::Vec;

mod lattice;
pub mod poly;
pub mod ring;
pub mod schubert;
pub mod vanishing;

pub use ring::{build_ring, graded_dim, normal_form, Element, GradedQuotientRing, Monomial, Preset, Reduced};
pub use schubert::{pieri, schubert_mult, verify_lemma31, Grassmannian, Lemma31Report, Partition, SchubertElement};
pub use vanishing::{verify_vanishing, DeductionReport, VanishingCase};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChowError {
    #[error("degree cap {cap} exceeds the dimension {dimension}")]
    CapTooLarge { cap: u32, dimension: u32 },
    #[error("degree {degree} is above the cap {cap}")]
    DegreeOverCap { degree: u32, cap: u32 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("integer overflow during lattice reduction")]
    Overflow,
    #[error("unknown or invalid preset {0}")]
    UnknownPreset(String),
    #[error("{partition} does not fit in the {rows}x{cols} box")]
    OutOfBox { partition: String, rows: u32, cols: u32 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("deduction failed for {case}; surviving constraints: {}", surviving.join("; "))]
    DeductionFailed { case: String, surviving: Vec<String> },
}
