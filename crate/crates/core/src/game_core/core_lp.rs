//! Exact core feasibility.
//!
//! The core `{φ : Σ_{i∈S} φ_i ≥ u(S) ∀S, Σφ = u(T)}` is nonempty iff the
//! balancing program
//!
//! ```text
//! maximize   Σ_S λ_S u(S)
//! subject to Σ_{S∋i} λ_S = 1   for every player i
//!            λ ≥ 0
//! ```
//!
//! has optimum `u(T)`. The singleton columns form an identity basis, so the
//! simplex starts feasible. At optimality the simplex multipliers `y` satisfy
//! `y(S) ≥ u(S)` for every `S` and `Σy` equals the optimum, which makes `y`
//! a core allocation whenever the optimum is `u(T)`.
//!
//! All arithmetic is over `BigRational`; the `f64` payoffs convert exactly.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Allocation, TuGame, MAX_CORE_PLAYERS};
use crate::error::{Error, Result};
use crate::player_set::PlayerSet;

/// A core allocation certified by the exact simplex.
#[derive(Clone, Debug)]
pub struct CoreWitness {
    pub exact: Vec<BigRational>,
    pub allocation: Allocation,
}

fn to_rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("coalition values are finite")
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Returns a core allocation when the core is nonempty, `None` otherwise.
pub fn core_witness(game: &TuGame) -> Result<Option<CoreWitness>> {
    let n = game.players();
    if n > MAX_CORE_PLAYERS {
        return Err(Error::TooLarge {
            what: "core feasibility",
            n,
            max: MAX_CORE_PLAYERS,
        });
    }
    let full = game.grand_coalition();
    // column j <-> coalition mask j + 1
    let columns: Vec<PlayerSet> = full.nonempty_subsets().collect();
    let cost: Vec<BigRational> = columns
        .iter()
        .map(|&s| to_rational(game.value(s)))
        .collect();

    let mut basis: Vec<usize> = (0..n).map(|i| (1usize << i) - 1).collect();
    let mut b_inv: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut x_b: Vec<BigRational> = vec![BigRational::one(); n];

    loop {
        // y = c_B B^{-1}
        let y: Vec<BigRational> = (0..n)
            .map(|c| {
                (0..n).fold(BigRational::zero(), |acc, r| {
                    acc + &cost[basis[r]] * &b_inv[r][c]
                })
            })
            .collect();

        // Bland's rule: lowest-index column with positive reduced cost.
        let entering = columns.iter().enumerate().find_map(|(j, &s)| {
            let y_s = s.players().fold(BigRational::zero(), |acc, i| acc + &y[i]);
            let reduced = &cost[j] - y_s;
            reduced.is_positive().then_some(j)
        });

        let Some(entering) = entering else {
            let optimum = y.iter().fold(BigRational::zero(), |acc, v| acc + v);
            if optimum > to_rational(game.value(full)) {
                return Ok(None);
            }
            let allocation = Allocation(y.iter().map(to_f64).collect());
            return Ok(Some(CoreWitness {
                exact: y,
                allocation,
            }));
        };

        // direction d = B^{-1} a_entering
        let col = columns[entering];
        let d: Vec<BigRational> = (0..n)
            .map(|r| {
                col.players()
                    .fold(BigRational::zero(), |acc, i| acc + &b_inv[r][i])
            })
            .collect();

        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..n {
            if !d[r].is_positive() {
                continue;
            }
            let ratio = &x_b[r] / &d[r];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // every λ_S ≤ 1, so the program is bounded
        let (pivot_row, step) = leave.expect("balancing program is bounded");

        let pivot = d[pivot_row].clone();
        for v in b_inv[pivot_row].iter_mut() {
            *v = &*v / &pivot;
        }
        x_b[pivot_row] = step;
        for r in 0..n {
            if r == pivot_row || d[r].is_zero() {
                continue;
            }
            let factor = d[r].clone();
            let pivot_inv = b_inv[pivot_row].clone();
            for (v, p) in b_inv[r].iter_mut().zip(&pivot_inv) {
                *v -= &factor * p;
            }
            let delta = &factor * &x_b[pivot_row];
            x_b[r] -= delta;
        }
        basis[pivot_row] = entering;
    }
}
