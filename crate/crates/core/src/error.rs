use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("identifier `{0}` is declared both as a place and as a transition")]
    PlaceTransitionClash(String),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("unknown transition `{0}`")]
    UnknownTransition(String),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("event `{0}` is not declared reversible")]
    NotReversible(String),
    #[error("flow pair ({0}, {1}) must join a place and a transition")]
    BadFlow(String, String),
    #[error("transition `{0}` has an empty preset")]
    EmptyPreset(String),
    #[error("backward transition `{0}` is also listed as the reversed transition of `{1}`")]
    BackwardChain(String, String),
    #[error("step {step:?} is not enabled at marking {marking:?}")]
    NotEnabled { step: Vec<String>, marking: Vec<String> },
    #[error("firing {step:?} puts a second token on place `{place}`: the net is not safe")]
    Unsafe { step: Vec<String>, place: String },
    #[error("exploration bound of {bound} states exceeded (frontier holds {frontier} states)")]
    BoundExceeded { bound: usize, frontier: usize },
    #[error("transition `{0}` fired twice along one firing sequence")]
    FiredTwice(String),
    #[error("configuration {config:?} is reached with two different markings")]
    AmbiguousMarking { config: Vec<String> },
    #[error("input is not a valid {}", .0.kind)]
    Invalid(Box<ValidationReport>),
    #[error("name clash: `{0}` is generated twice")]
    NameClash(String),
    #[error("morphism endpoints do not match: {0}")]
    Mismatch(String),
    #[error("undo label `{0}` does not name a backward transition")]
    NotBackward(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(report: ValidationReport) -> Self {
        Error::Invalid(Box::new(report))
    }
}
