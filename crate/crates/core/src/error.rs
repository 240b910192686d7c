use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported plane order {0}: only q = 1 and prime q are constructed")]
    UnsupportedOrder(usize),

    #[error("lines {0} and {1} are equal, their intersection is not a point")]
    AmbiguousIntersection(usize, usize),

    #[error("lines {0} and {1} do not meet in exactly one point")]
    NoUniqueIntersection(usize, usize),

    #[error("points {0} and {1} do not span exactly one line")]
    NoUniqueJoin(usize, usize),

    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),

    #[error("no Singer cycle is known for this plane")]
    NoSingerCycle,

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("unknown point name `{0}`")]
    UnknownPoint(String),

    #[error("point-line correspondence is not a bijection: {0}")]
    LambdaNotBijective(String),

    #[error("letter refers to point index {0}, which is outside the plane")]
    ForeignLetter(usize),

    #[error("elements belong to different groups")]
    MixedGroups,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("estimated {estimate} vertices exceeds the cap of {cap}")]
    ResourceCap { estimate: u128, cap: usize },

    #[error("vertex at distance {distance} needs a ball of radius > {distance}, got {radius}")]
    InsufficientRadius { distance: usize, radius: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
