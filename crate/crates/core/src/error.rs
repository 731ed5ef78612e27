use alloc::string::String;
use alloc::vec::Vec;

use crate::diagram::Family;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported diagram type {family}{rank}")]
    UnsupportedType { family: Family, rank: usize },
    #[error("node {node} is not a node of {diagram}")]
    UnknownNode { diagram: String, node: usize },
    #[error("node {node} is not marked in {space}")]
    NodeNotMarked { space: String, node: usize },
    #[error("factor index {index} out of range 1..={count}")]
    NoSuchFactor { index: usize, count: usize },
    #[error("no closed form for {family}{n} at node {k}")]
    UnsupportedCase { family: Family, n: usize, k: usize },
    #[error("case I at node {node} of factor {factor}: the universal family is the space itself")]
    CaseIHasNoRelativeTangent { factor: usize, node: usize },
    #[error("expected exactly one marked node, found {count}")]
    MultipleMarks { count: usize },
    #[error("{space} falls outside the classified VMRT families")]
    Unclassified { space: String },
    #[error("profiles disagree on rank: expected {expected}, found {found}")]
    ProfileRankMismatch { expected: usize, found: usize },
    #[error("no profile supplied for node {node} of factor {factor}")]
    MissingProfile { factor: usize, node: usize },
    #[error("profile must have at least one entry")]
    EmptyProfile,
    #[error("marked set {marked:?} is empty or out of range for {diagram}")]
    BadMarking { diagram: String, marked: Vec<usize> },
}
