//! Error types shared across the toolkit.

use std::path::PathBuf;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analysing contact networks.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    // --- fetching / parsing ---
    #[error("invalid PDB id {0:?}: expected 4 alphanumeric characters")]
    InvalidId(String),
    #[error("fetch of {id} failed: {reason}")]
    FetchFailed { id: String, reason: String },
    #[error("cache directory {0} is not writable: {1}")]
    CacheUnwritable(PathBuf, String),
    #[error("no CA ATOM records found in input")]
    NoCalphaAtoms,
    #[error("malformed ATOM record at line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error("trace has {trace_len} residues but network has {network_n} nodes")]
    SizeMismatch { trace_len: usize, network_n: usize },

    // --- network construction / persistence ---
    #[error("cannot build a network from an empty trace")]
    EmptyTrace,
    #[error("operation needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("invalid construction parameters: {0}")]
    InvalidSpec(String),
    #[error("partition does not match the network it is applied to")]
    PartitionMismatch,
    #[error("network file parse error at line {line}: {reason}")]
    ParseError { line: usize, reason: String },
    #[error("unsupported network file version {found:?} (expected {expected:?})")]
    VersionMismatch { found: String, expected: String },

    // --- metrics ---
    #[error("reference formulas require mean degree > 1, got {0}")]
    DomainError(f64),
    #[error("operation requires at least one edge")]
    NoEdges,
    #[error("correlation undefined: zero variance input")]
    ZeroVariance,
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("not enough data points: need {need}, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("all values must be positive for a log-log fit")]
    NonPositiveValue,
    #[error("no reachable node pairs")]
    NoPairs,
    #[error("all node pairs are unreachable")]
    AllPairsUnreachable,

    // --- rewiring / dynamics / generation ---
    #[error("rewiring needs at least 2 eligible edges, found {0}")]
    TooFewEligibleEdges(usize),
    #[error("network has no long-range links at le_th={0}")]
    NoLongRangeLinks(u32),
    #[error("trajectory too short for window {window}: {len} records")]
    TrajectoryTooShort { len: usize, window: usize },
    #[error("no betweenness snapshot was recorded at step {0}")]
    SnapshotNotRecorded(usize),
    #[error("band admits only {available} free pairs, cannot place {requested} links")]
    BandExhausted { available: usize, requested: usize },

    // --- batch / io ---
    #[error("every manifest entry failed; see exclusions")]
    AllEntriesFailed,
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("protein {id}: {source}")]
    Protein {
        id: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    pub fn for_protein(id: impl Into<String>, source: Error) -> Self {
        Error::Protein {
            id: id.into(),
            source: Box::new(source),
        }
    }

    /// Process exit code class: 1 usage, 2 data, 3 network/io.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::FetchFailed { .. } | Error::CacheUnwritable(..) | Error::Io { .. } => 3,
            Error::Protein { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}
