use thiserror::Error;

/// Broad class of a failure, used by front ends to choose an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input.
    Input,
    /// A verified inequality or identity did not hold.
    Verdict,
    /// Numerical breakdown or an internal consistency check.
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Document(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("index vector of length {found} on a graph of dimension {expected}")]
    IndexLength { expected: usize, found: usize },
    #[error("vertex `{0}` is isolated")]
    IsolatedVertex(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("invalid rational coordinate `{0}`")]
    Rational(String),
    #[error("disconnected fundamental graph: {components} components")]
    DisconnectedFundamental { components: usize },
    #[error("disconnected lifted graph: cycle indices generate the sublattice with basis {basis:?}")]
    DisconnectedLift { basis: Vec<Vec<i64>> },
    #[error("invalid fundamental domain: {0}")]
    Domain(String),
    #[error("quasimomentum has length {found}, expected {expected}")]
    ThetaLength { expected: usize, found: usize },
    #[error("potential has length {found}, expected {expected}")]
    PotentialLength { expected: usize, found: usize },
    #[error("matrix is not Hermitian: asymmetry {0:e}")]
    NotHermitian(f64),
    #[error("grid size {0} must be even and at least 2")]
    GridSize(usize),
    #[error("band sweep supports dimension at most 3, got {0}")]
    SweepDimension(usize),
    #[error("torus quotient has {0} vertices, above the cap of {cap}", cap = crate::spectra::TORUS_ORACLE_CAP)]
    TorusTooLarge(usize),
    #[error("flat band at {0} for the pure Laplacian (the points -1 and 1 are never flat bands)")]
    FlatAtUnit(f64),
    #[error("the metric correspondence requires zero potential")]
    NonzeroPotential,
    #[error("{0} lies outside [-1, 1]")]
    XiDomain(f64),
    #[error("top Dirichlet eigenvalue {0} is not below 1")]
    DirichletTop(f64),
    #[error("inconsistent eigendata: {0}")]
    Eigendata(String),
    #[error("bracket {n} is inverted: [{lo}, {hi}]")]
    InvertedBracket { n: usize, lo: f64, hi: f64 },
    #[error("empty bracket intersection for band {0}")]
    EmptyIntersection(usize),
    #[error("negative band length sum {0}")]
    NegativeInput(f64),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::EmptyIntersection(_) | Error::FlatAtUnit(_) => ErrorKind::Verdict,
            Error::NotHermitian(_) | Error::DirichletTop(_) | Error::Eigendata(_) | Error::InvertedBracket { .. } => {
                ErrorKind::Numerical
            }
            _ => ErrorKind::Input,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Document(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
