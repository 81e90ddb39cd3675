use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed cycle notation: {0}")]
    Parse(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group is not primitive")]
    NotPrimitive,
    #[error("group contains the alternating group of its degree")]
    ContainsAlternating,
    #[error("partition is not invariant under the group")]
    NotInvariant,
    #[error("invalid block system: {0}")]
    BadBlocks(String),
    #[error("element does not lie in the group")]
    NotInGroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{what} {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: String,
        cap: u64,
    },
    #[error("no such subgroup: {0}")]
    NoSuchSubgroup(&'static str),
    #[error("degree {degree} above exhaustive cap {cap}")]
    DegreeAboveCap { degree: usize, cap: usize },
    #[error("largeness check failed: {0}")]
    NotLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
