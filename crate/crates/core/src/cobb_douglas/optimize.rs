//! Rational (utility-maximizing) contributions.

use super::CobbDouglasGame;
use crate::error::{Error, Result};
use crate::player_set::PlayerSet;
use crate::st_game::SubsetUtility;

const SCAN_INTERVALS: usize = 256;
const GOLDEN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optimum {
    pub x: f64,
    pub value: f64,
}

/// Maximizes `f` on `[lo, hi]`.
///
/// A 257-point scan picks the best sample (smallest `x` on ties), then a
/// golden-section search refines inside the neighbouring scan cells. The
/// refined point replaces the scan point only if it is strictly better, so
/// plateaus resolve toward the smaller argument.
pub fn maximize_on_interval(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Optimum {
    if hi <= lo {
        return Optimum {
            x: lo,
            value: f(lo),
        };
    }
    let step = (hi - lo) / SCAN_INTERVALS as f64;
    let at = |k: usize| {
        if k == SCAN_INTERVALS {
            hi
        } else {
            lo + step * k as f64
        }
    };
    let mut best_k = 0;
    let mut best = f(lo);
    for k in 1..=SCAN_INTERVALS {
        let v = f(at(k));
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let mut a = at(best_k.saturating_sub(1));
    let mut b = at((best_k + 1).min(SCAN_INTERVALS));

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let v = f(x);
    if v > best {
        Optimum { x, value: v }
    } else {
        Optimum {
            x: at(best_k),
            value: best,
        }
    }
}

/// The contribution `x_a ∈ [0, X_a]` maximizing `u_{a}(T)` with every other
/// contribution held fixed.
pub fn rational_contribution(game: &CobbDouglasGame, player: usize) -> Result<Optimum> {
    let n = game.players();
    if player >= n {
        return Err(Error::domain(format!(
            "player {player} outside a team of {n}"
        )));
    }
    let cap = game.config().resources[player];
    if cap <= 0.0 {
        return Err(Error::domain(format!("player {player} has no resources")));
    }
    let me = PlayerSet::singleton(player);
    let team = game.team();
    Ok(maximize_on_interval(
        |x| game.with_contribution(player, x).utility(me, team),
        0.0,
        cap,
    ))
}

/// The common contribution `t` that every member of `group` makes to
/// maximize `u_group(T)`, others fixed. `t` ranges up to the smallest
/// member's resources.
pub fn rational_group_contribution(game: &CobbDouglasGame, group: PlayerSet) -> Result<Optimum> {
    let n = game.players();
    if group.is_empty() {
        return Err(Error::EmptySet("contributing group"));
    }
    if !group.fits(n) {
        return Err(Error::OutOfTeam { set: group, n });
    }
    let cap = group
        .players()
        .map(|a| game.config().resources[a])
        .fold(f64::INFINITY, f64::min);
    if cap <= 0.0 {
        return Err(Error::domain(format!("group {group} has no resources")));
    }
    let team = game.team();
    let objective = |t: f64| {
        let g = group
            .players()
            .fold(game.clone(), |g, a| g.with_contribution(a, t));
        g.utility(group, team)
    };
    Ok(maximize_on_interval(objective, 0.0, cap))
}
