use thiserror::Error;

/// Errors raised across the crate.
///
/// Search outcomes such as "no embedding" or "budget exhausted" are not
/// errors; they are reported through the dedicated outcome enums.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("coloring does not assign vertex {0}")]
    PartialColoring(usize),

    #[error("color {color} of vertex {vertex} outside palette 1..={palette}")]
    ColorOutOfPalette { vertex: usize, color: u64, palette: u64 },

    #[error("embedding map is partial: expected {expected} entries, got {got}")]
    PartialMap { expected: usize, got: usize },

    #[error("embedding map is not injective: graph vertex {0} used twice")]
    NonInjective(usize),

    #[error("tree vertices {0} and {1} are comparable")]
    ComparablePair(usize, usize),

    #[error("palette too small: {palette} < {needed}")]
    PaletteTooSmall { palette: u64, needed: u64 },

    #[error("part {part} of the partition is not stable")]
    NonStablePart { part: usize },

    #[error("creature condition violated: vertex {vertex} has {outside} outside neighbours, need fewer than {c}")]
    CreatureViolated { vertex: usize, outside: usize, c: u64 },

    #[error("base coloring is improper on edge {0}-{1}")]
    ImproperBaseColoring(usize, usize),

    #[error("callback broke its contract: {0}")]
    Contract(String),

    #[error("precondition clique number < {t} violated at base level")]
    BaseCliqueViolation { t: u32 },

    #[error("bound arithmetic overflowed for d={d}, k={k}, t={t}")]
    BoundOverflow { d: u32, k: u32, t: u32 },

    #[error("oracle budget exceeded: {0}")]
    TooLarge(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
