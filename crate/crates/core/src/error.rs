use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("state has {got} bits but the graph has {expected} edges")]
    StateLength { expected: usize, got: usize },
    #[error("constraint references circle {0}, which does not exist")]
    NoSuchCircle(usize),
    #[error("{edges} edges exceeds the enumeration cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("graph has a topological bridge at edge {0}")]
    Bridge(usize),
    #[error("malformed graph: {0}")]
    Graph(String),
    #[error("malformed region: {0}")]
    Region(String),
    #[error("cap has {cap} spokes but region has {region}")]
    SpokeMismatch { cap: usize, region: usize },
    #[error("invalid cap: {0}")]
    Cap(String),
    #[error("parse error at {start}..{end}: {msg}")]
    Parse { start: usize, end: usize, msg: String },
    #[error("snapshot: {0}")]
    Snapshot(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
