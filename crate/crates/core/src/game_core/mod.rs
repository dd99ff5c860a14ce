//! Transferable-utility (TU) cooperative games.
//!
//! A [`TuGame`] stores one value per coalition, indexed by the coalition's
//! bitmask. Everything here is exhaustive over subsets, so the exponential
//! operations carry explicit size bounds.

mod core_lp;

pub use core_lp::{core_witness, CoreWitness};

use crate::error::{Error, Result};
use crate::player_set::PlayerSet;

/// Largest team for the `2^n` subset sums.
pub const MAX_EXHAUSTIVE_PLAYERS: usize = 20;
/// Largest team for the `n!` join-order enumeration.
pub const MAX_PERMUTATION_PLAYERS: usize = 8;
/// Largest team for the exact core feasibility check.
pub const MAX_CORE_PLAYERS: usize = 10;

/// Absolute tolerance used by every floating-point predicate unless overridden.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct TuGame {
    n: usize,
    values: Vec<f64>,
}

impl TuGame {
    /// Builds a game from a table of `2^n` values indexed by coalition mask.
    /// The entry for the empty coalition must be exactly zero.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_EXHAUSTIVE_PLAYERS {
            return Err(Error::InvalidTeamSize(n));
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: values.len(),
            });
        }
        if values[0] != 0.0 {
            return Err(Error::NonzeroEmptyValue(values[0]));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!("non-finite coalition value {v}")));
        }
        Ok(TuGame { n, values })
    }

    /// Builds a game by evaluating `f` on every nonempty coalition and pinning `u(∅) = 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(PlayerSet) -> f64) -> Result<Self> {
        if n == 0 || n > MAX_EXHAUSTIVE_PLAYERS {
            return Err(Error::InvalidTeamSize(n));
        }
        let values = PlayerSet::full(n)
            .subsets()
            .map(|s| if s.is_empty() { 0.0 } else { f(s) })
            .collect();
        TuGame::new(n, values)
    }

    pub fn players(&self) -> usize {
        self.n
    }

    pub fn grand_coalition(&self) -> PlayerSet {
        PlayerSet::full(self.n)
    }

    pub fn value(&self, s: PlayerSet) -> f64 {
        self.values[s.index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn check_set(&self, s: PlayerSet) -> Result<()> {
        if s.fits(self.n) {
            Ok(())
        } else {
            Err(Error::OutOfTeam { set: s, n: self.n })
        }
    }
}

/// A division of `u(T)` among the players.
#[derive(Clone, Debug, PartialEq)]
pub struct Allocation(pub Vec<f64>);

impl Allocation {
    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn coalition_total(&self, s: PlayerSet) -> f64 {
        s.players().map(|i| self.0[i]).sum()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// `m_A(B) = u(A ∪ B) − u(B)` for disjoint `A`, `B`.
pub fn marginal_contribution(game: &TuGame, a: PlayerSet, b: PlayerSet) -> Result<f64> {
    game.check_set(a)?;
    game.check_set(b)?;
    if !a.is_disjoint(b) {
        return Err(Error::Overlap { a, b });
    }
    Ok(game.value(a.union(b)) - game.value(b))
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Shapley value as a weighted sum over the coalitions each player can join,
/// with weight `|S|!(n−1−|S|)!/n!`.
pub fn shapley_value(game: &TuGame) -> Allocation {
    let n = game.n;
    // |S|!(n-1-|S|)!/n! = 1 / (n * C(n-1, |S|))
    let weights: Vec<f64> = (0..n)
        .map(|s| 1.0 / (n as f64 * binomial(n - 1, s)))
        .collect();
    let full = game.grand_coalition();
    let phi = (0..n)
        .map(|i| {
            full.without(i)
                .subsets()
                .map(|s| weights[s.len()] * (game.value(s.with(i)) - game.value(s)))
                .sum()
        })
        .collect();
    Allocation(phi)
}

/// Shapley value through the size-stratified form: the mean over sizes `k`
/// of the average marginal contribution to coalitions of size `k`.
pub fn shapley_value_stratified(game: &TuGame) -> Allocation {
    let n = game.n;
    let full = game.grand_coalition();
    let phi = (0..n)
        .map(|i| {
            let mut by_size = vec![0.0; n];
            for s in full.without(i).subsets() {
                by_size[s.len()] += game.value(s.with(i)) - game.value(s);
            }
            by_size
                .iter()
                .enumerate()
                .map(|(k, total)| total / binomial(n - 1, k))
                .sum::<f64>()
                / n as f64
        })
        .collect();
    Allocation(phi)
}

/// Shapley value by averaging marginal contributions over all `n!` join orders.
pub fn shapley_by_permutations(game: &TuGame) -> Result<Allocation> {
    let n = game.n;
    if n > MAX_PERMUTATION_PLAYERS {
        return Err(Error::TooLarge {
            what: "permutation enumeration",
            n,
            max: MAX_PERMUTATION_PLAYERS,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut totals = vec![0.0; n];
    let mut count = 0usize;
    let mut visit = |order: &[usize]| {
        let mut joined = PlayerSet::EMPTY;
        for &p in order {
            let next = joined.with(p);
            totals[p] += game.value(next) - game.value(joined);
            joined = next;
        }
        count += 1;
    };

    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    visit(&order);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            visit(&order);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(Allocation(
        totals.into_iter().map(|t| t / count as f64).collect(),
    ))
}

/// Marginal contributions weakly increase with the coalition joined.
///
/// Uses the local form: for every `i`, every `S ∌ i` and every `j ∉ S ∪ {i}`,
/// `u(S∪{i}) − u(S) ≤ u(S∪{i,j}) − u(S∪{j})`. Chaining single-player steps
/// covers every nested pair `S ⊆ S'`.
pub fn is_convex(game: &TuGame, tol: f64) -> bool {
    let full = game.grand_coalition();
    (0..game.n).all(|i| {
        full.without(i).subsets().all(|s| {
            let gain = game.value(s.with(i)) - game.value(s);
            full.difference(s.with(i)).players().all(|j| {
                let sj = s.with(j);
                gain <= game.value(sj.with(i)) - game.value(sj) + tol
            })
        })
    })
}

/// Same property checked directly over every nested pair `S ⊆ S'` not containing `i`.
pub fn is_convex_nested(game: &TuGame, tol: f64) -> bool {
    let full = game.grand_coalition();
    (0..game.n).all(|i| {
        let rest = full.without(i);
        rest.subsets().all(|big| {
            let big_gain = game.value(big.with(i)) - game.value(big);
            big.subsets()
                .all(|s| game.value(s.with(i)) - game.value(s) <= big_gain + tol)
        })
    })
}

/// `u(A ∪ B) ≥ u(A) + u(B)` for all disjoint nonempty `A`, `B`.
pub fn is_superadditive(game: &TuGame, tol: f64) -> bool {
    let full = game.grand_coalition();
    full.nonempty_subsets().all(|a| {
        full.difference(a)
            .nonempty_subsets()
            .filter(|b| b.bits() > a.bits())
            .all(|b| game.value(a.union(b)) + tol >= game.value(a) + game.value(b))
    })
}

/// Efficiency plus coalitional rationality: `Σφ = u(T)` and `Σ_{i∈S} φ_i ≥ u(S)` for every `S`.
pub fn in_core(game: &TuGame, phi: &Allocation, tol: f64) -> Result<bool> {
    if phi.0.len() != game.n {
        return Err(Error::domain(format!(
            "allocation has {} entries for a {}-player game",
            phi.0.len(),
            game.n
        )));
    }
    let full = game.grand_coalition();
    if (phi.total() - game.value(full)).abs() > tol {
        return Ok(false);
    }
    Ok(full
        .nonempty_subsets()
        .all(|s| phi.coalition_total(s) + tol >= game.value(s)))
}

/// Decides whether the core is nonempty using exact rational arithmetic.
pub fn core_is_nonempty(game: &TuGame) -> Result<bool> {
    Ok(core_witness(game)?.is_some())
}
