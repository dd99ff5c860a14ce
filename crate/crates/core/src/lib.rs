//! Subset team games: every subset of a team carries its own utility over
//! outcomes, and contributions split into altruistic and competitive parts.
//!
//! * [`game_core`]: TU games, Shapley value, convexity, the core.
//! * [`st_game`]: ST games, contribution metrics, cooperation space, predicates.
//! * [`additivity`]: additive, co-additive and bi-additive structure, perception graphs.
//! * [`cobb_douglas`]: the resource-contribution game and its sweeps.
//! * [`game_io`]: `.game` documents and CSV tables.
//! * [`cli`]: the commands behind the `stgames` binary.

pub mod additivity;
pub mod cli;
pub mod cobb_douglas;
pub mod error;
pub mod game_core;
pub mod game_io;
pub mod player_set;
pub mod random;
pub mod scenarios;
pub mod st_game;

pub use error::{Error, Result};
pub use player_set::PlayerSet;
