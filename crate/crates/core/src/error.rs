use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("samples are inconsistent with degree bound {0}")]
    Inconsistent(usize),
    #[error("grid is not a full tensor grid: {0}")]
    PartialGrid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("generators have mixed degrees ({0} and {1})")]
    MixedDegree(usize, usize),
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("unknown catalog group {0:?}")]
    UnknownGroup(String),
    #[error("degree {degree} too small for {name} (need at least {min})")]
    DegreeTooSmall {
        name: String,
        degree: usize,
        min: usize,
    },
    #[error("line {line}: {message}")]
    GeneratorFile { line: usize, message: String },
    #[error("group of order {order} is too large to enumerate triples")]
    TooManyTriples { order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("w does not lie in the affine span of x, y, z")]
    NotCoplanar,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid orbit start: {0}")]
    InvalidStart(String),
    #[error("orbit of size {size} exceeds the scan cap {cap}")]
    ScanCapExceeded { size: usize, cap: usize },
    #[error("kite parameter a={0} must satisfy -1 < a < 1")]
    KiteOutOfRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("group {0} does not act transitively")]
    NotTransitive(String),
    #[error("certificate failure: triple {triple:?} has det 0 at alpha={alpha}, beta={beta}")]
    CertificateFailure {
        triple: [usize; 3],
        alpha: String,
        beta: String,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}
