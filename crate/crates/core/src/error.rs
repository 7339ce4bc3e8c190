use thiserror::Error;

use crate::contact::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid semigroup sequence: {0}")]
    InvalidSemigroup(String),
    #[error("invalid characteristic data: {0}")]
    InvalidCharData(String),
    #[error("invalid generalized characteristic sequence: {0}")]
    InvalidGenChar(String),
    #[error("characteristic prefix is not strictly below the diameter")]
    PrefixNotBelowDiameter,
    #[error("no supporting line: {0}")]
    UnsupportedLine(String),
    #[error("germ fails validation: {}", fmt_violations(.0))]
    InvalidGerm(Vec<Violation>),
    #[error("invalid probe contacts: {0}")]
    InvalidContacts(String),
    #[error("probe is not a smooth branch")]
    NotSmooth,
    #[error("ball contains no branch of the germ")]
    EmptyBall,
    #[error("ball is not in the family of the germ: {0}")]
    BallOutsideFamily(String),
    #[error("ball is not eligible for this probe: {0}")]
    BallNotEligible(String),
    #[error("germ is nonsingular")]
    NonsingularGerm,
    #[error("germ has no Eggers balls")]
    EmptyEggers,
    #[error("probe is a branch of the germ")]
    BranchOfGerm,
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("face {0} is not on the polygon")]
    FaceNotOnPolygon(String),
    #[error("polynomial is not reduced at the origin: {0}")]
    NotReduced(String),
    #[error("irrational multiple root on face {face}: minimal polynomial {poly}")]
    IrrationalTrackRoot { face: String, poly: String },
    #[error("unsupported branch shape: {0}")]
    UnsupportedBranchShape(String),
    #[error("cross-check mismatch: {0}")]
    Mismatch(String),
    #[error("document error: {0}")]
    Document(String),
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::Document(_) | Error::ZeroPolynomial => 2,
            Error::UnsupportedBranchShape(_) => 4,
            Error::IrrationalTrackRoot { .. } => 5,
            Error::Mismatch(_) => 1,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
