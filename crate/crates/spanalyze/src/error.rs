use thiserror::Error;

/// Crate-wide error type.
///
/// Variants carry the single-line messages the CLI prints; `exit_code`
/// maps them onto the documented process exit statuses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("empty core set")]
    EmptyCoreSet,

    #[error("density undefined for a graph with fewer than 2 vertices")]
    DensityUndefined,

    #[error("outside collection scope: no home-country affiliation on publication {id}")]
    OutsideCollectionScope { id: String },

    #[error("missing GERD for region {region}")]
    MissingGerd { region: String },

    #[error("missing GERD value for year {year}")]
    MissingGerdYear { year: i32 },

    #[error("boundary-spanning network needs at least 2 input graphs, got {got}")]
    TooFewGraphs { got: usize },

    #[error("no boundary authors")]
    NoBoundaryAuthors,

    #[error("empty graph")]
    EmptyGraph,

    #[error("insufficient publication history for year {year}")]
    InsufficientHistory { year: i32 },

    #[error("no publications in year {year}")]
    NoPublicationsInYear { year: i32 },

    #[error("zero variance in predictor")]
    ZeroVariancePredictor,

    #[error("constant input to correlation")]
    ConstantCorrelationInput,

    #[error("too few points: need at least {need}, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("missing artifact {name}")]
    MissingArtifact { name: String },

    #[error("invalid config field {field}: {message}")]
    Config { field: String, message: String },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// Process exit status for the CLI: 2 for a missing pipeline artifact,
    /// 3 for a config violation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MissingArtifact { .. } => 2,
            Error::Config { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
