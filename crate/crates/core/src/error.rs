use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("dart {0} is glued to itself")]
    FixedDart(usize),

    #[error("dart {dart} out of range for {face_count} faces")]
    DartOutOfRange { dart: usize, face_count: usize },

    #[error("gluing is not an involution: dart {0} is used twice")]
    NotInvolution(usize),

    #[error("surface is disconnected ({0} components); split it first")]
    Disconnected(usize),

    #[error("surface has boundary; a closed surface is required")]
    HasBoundary,

    #[error("surface is closed; a surface with boundary is required")]
    Closed,

    #[error("surface has no faces")]
    Empty,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("triangle list is not an oriented manifold: directed edge ({0}, {1}) appears twice")]
    BadTriangleList(usize, usize),

    #[error("no connected sample after {0} attempts")]
    RetryLimit(usize),

    #[error("closed stars of high-degree vertices overlap at vertex {0}")]
    StarOverlap(usize),

    #[error("surface has no vertex of degree greater than 6")]
    NoHighDegreeVertex,

    #[error("genus {0} is too small; genus at least 2 is required")]
    GenusTooSmall(u64),

    #[error("structure does not satisfy the gluing conditions at dart {0}")]
    InvalidStructure(usize),

    #[error("walk is disconnected between step {0} and step {1}")]
    DisconnectedWalk(usize, usize),

    #[error("face development failed: {0}")]
    Development(String),

    #[error("provenance does not match surface: {0}")]
    Provenance(String),

    #[error("cover verification failed: {0}")]
    CoverCheck(String),

    #[error("T = {requested} exceeds the census cap {cap}; raise the cap explicitly")]
    CensusCap { requested: usize, cap: usize },

    #[error("odd triangle count {0}: no closed surface exists")]
    OddFaceCount(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
