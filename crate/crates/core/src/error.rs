use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("not a lattice: elements {0} and {1} have no {2}")]
    NotALattice(String, String, &'static str),

    #[error("map is not monotone: {0} <= {1} but images are not ordered")]
    NotMonotone(String, String),

    #[error("map shape mismatch: {0}")]
    Shape(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("law `{law}` fails at {witness}")]
    LawFailure { law: String, witness: String },

    #[error("generator `{0}` does not belong to the domain")]
    ForeignGenerator(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("undecidable side condition: {0}")]
    Undecidable(String),

    #[error("infinite domain: {0}")]
    InfiniteDomain(String),

    #[error("image shape violation for `{generator}`: {reason}")]
    ImageShape { generator: String, reason: String },

    #[error("missing adjoint: {0}")]
    MissingAdjoint(String),

    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("serialization: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl Error {
    /// Stable name of the variant, for machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPoset(_) => "invalid-poset",
            Error::NotALattice(..) => "not-a-lattice",
            Error::NotMonotone(..) => "not-monotone",
            Error::Shape(_) => "shape",
            Error::Precondition(_) => "precondition",
            Error::LawFailure { .. } => "law-failure",
            Error::ForeignGenerator(_) => "foreign-generator",
            Error::Domain(_) => "domain",
            Error::Undecidable(_) => "undecidable",
            Error::InfiniteDomain(_) => "infinite-domain",
            Error::ImageShape { .. } => "image-shape",
            Error::MissingAdjoint(_) => "missing-adjoint",
            Error::Parse { .. } => "parse",
            Error::TooLarge(_) => "too-large",
            Error::Json(_) => "json",
        }
    }
}
