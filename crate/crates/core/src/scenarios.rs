//! Built-in games.

use crate::game_core::TuGame;
use crate::player_set::PlayerSet;
use crate::st_game::{Consequence, OutcomeId, StGame, UtilityTable};

/// The two-player dilemma viewed as a team: playing together each player
/// gets 2 and the pair 4; alone each gets 1.
pub fn prisoners_dilemma() -> StGame {
    let outcomes = vec!["together".to_string(), "alone_a".into(), "alone_b".into()];
    let mut v = Consequence::unassigned(2);
    let (a, b, ab) = (
        PlayerSet::singleton(0),
        PlayerSet::singleton(1),
        PlayerSet::full(2),
    );
    v.set(ab, OutcomeId(0));
    v.set(a, OutcomeId(1));
    v.set(b, OutcomeId(2));
    let mut u = UtilityTable::new();
    for (s, x, value) in [
        (ab, 0, 4.0),
        (a, 0, 2.0),
        (b, 0, 2.0),
        (a, 1, 1.0),
        (b, 2, 1.0),
    ] {
        u.insert(s, OutcomeId(x), value).expect("distinct entries");
    }
    StGame::new(2, outcomes, v, u).expect("complete table")
}

/// Player 0 holds a left glove, players 1 and 2 a right glove each; a pair
/// of gloves is worth 1.
pub fn glove() -> TuGame {
    TuGame::from_fn(3, |s| {
        if s.contains(0) && (s.contains(1) || s.contains(2)) {
            1.0
        } else {
            0.0
        }
    })
    .expect("three players")
}

/// Any two of three players win 1.
pub fn majority3() -> TuGame {
    TuGame::from_fn(3, |s| if s.len() >= 2 { 1.0 } else { 0.0 }).expect("three players")
}
