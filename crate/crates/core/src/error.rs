use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("color {color} out of range for {k} colors")]
    ColorOutOfRange { color: usize, k: usize },

    #[error("self-loop ({vertex},{vertex}) in color {color}")]
    SelfLoop { vertex: usize, color: usize },

    #[error("vertex {vertex} is not in the restricting subset")]
    NotInSubset { vertex: usize },

    #[error("vertex set is empty")]
    EmptySubset,

    #[error("universe mismatch: expected {expected} vertices, found {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("digraph is not complete: no arc between {u} and {v}")]
    NotComplete { u: usize, v: usize },

    #[error("color {color} is not transitive")]
    NotTransitive { color: usize },

    #[error(
        "fractional domination solver did not converge: achieved slack {achieved}, \
         required {required} (after {iterations} iterations)"
    )]
    SolverNonConvergence {
        achieved: f64,
        required: f64,
        iterations: usize,
    },

    #[error(
        "density violation at vertex {vertex}: per-color masses {masses:?} all below {threshold}"
    )]
    DensityViolation {
        vertex: usize,
        masses: Vec<f64>,
        threshold: f64,
    },

    #[error(
        "coverage stalled at pick {step}: best candidate covers {best} of uncovered mass \
         {uncovered}, need at least eps = {eps} of it"
    )]
    CoverageStalled {
        step: usize,
        best: f64,
        uncovered: f64,
        eps: f64,
    },

    #[error("geometric decay violated after {step} picks: uncovered {uncovered} > {limit}")]
    DecayViolation {
        step: usize,
        uncovered: f64,
        limit: f64,
    },

    #[error("invalid dense triple: {0}")]
    InvalidTriple(String),

    #[error("path {path:?} repeats no color")]
    NoRepeat { path: Vec<usize> },

    #[error("integer overflow evaluating the bound for k = {k}")]
    Overflow { k: usize },

    #[error("refusing exact search on {n} vertices (cap {cap})")]
    TooLarge { n: usize, cap: usize },

    #[error("certificate failed verification: {}", .0.join("; "))]
    Verification(Vec<String>),

    #[error("at partition path {path:?}: {source}")]
    AtPath {
        path: Vec<usize>,
        #[source]
        source: Box<Error>,
    },

    #[error("instance format: {0}")]
    Format(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at_path(self, path: &[usize]) -> Self {
        match self {
            e @ Error::AtPath { .. } => e,
            e => Error::AtPath {
                path: path.to_vec(),
                source: Box::new(e),
            },
        }
    }

    /// Strips any path annotation.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtPath { source, .. } => source.root_cause(),
            e => e,
        }
    }
}
