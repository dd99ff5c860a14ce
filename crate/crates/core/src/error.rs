use std::path::PathBuf;

use crate::player_set::PlayerSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("subsets {a} and {b} overlap")]
    Overlap { a: PlayerSet, b: PlayerSet },

    #[error("{0} must be nonempty")]
    EmptySet(&'static str),

    #[error("subset {set} has players outside a team of {n}")]
    OutOfTeam { set: PlayerSet, n: usize },

    #[error("{what} supports at most {max} players, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("invalid team size {0}")]
    InvalidTeamSize(usize),

    #[error("u(empty set) must be 0, got {0}")]
    NonzeroEmptyValue(f64),

    #[error("payoff table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },

    #[error("{0}")]
    Domain(String),

    #[error("missing utility for assessor {assessor} on outcome `{outcome}`")]
    MissingUtility {
        assessor: PlayerSet,
        outcome: String,
    },

    #[error("missing consequence for coalition {0}")]
    MissingConsequence(PlayerSet),

    #[error("game is not {structure}: {detail}")]
    Structure {
        structure: &'static str,
        detail: String,
    },

    #[error("{location}: {message}")]
    Load { location: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn load(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Load {
            location: location.into(),
            message: message.into(),
        }
    }
}
