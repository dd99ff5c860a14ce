//! Seeded random game generators for property sweeps.
//!
//! Every generator draws from the caller's RNG only, so a fixed seed gives a
//! fixed sequence of games regardless of thread count.

use rand::Rng;

use crate::additivity::BiAdditiveMatrix;
use crate::error::Result;
use crate::game_core::TuGame;
use crate::player_set::PlayerSet;
use crate::st_game::StGame;

/// Tabulated ST game with every `u_A(S)` uniform in `[lo, hi)`.
pub fn st_game(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Result<StGame> {
    StGame::from_fn(n, |_, _| rng.random_range(lo..hi))
}

/// TU game with `u(S)` uniform in `[lo, hi)` for nonempty `S`.
pub fn tu_game(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Result<TuGame> {
    TuGame::from_fn(n, |s| {
        if s.is_empty() {
            0.0
        } else {
            rng.random_range(lo..hi)
        }
    })
}

/// Nonnegative combination of unanimity games `u_R(S) = [R ⊆ S]`, each carrier
/// `R` drawn with probability `density`. Such games are convex.
pub fn convex_game(rng: &mut impl Rng, n: usize, density: f64) -> Result<TuGame> {
    let team = PlayerSet::full(n);
    let mut carriers = Vec::new();
    for r in team.nonempty_subsets() {
        if rng.random_bool(density) {
            carriers.push((r, rng.random_range(0.0..1.0)));
        }
    }
    TuGame::from_fn(n, |s| {
        carriers
            .iter()
            .filter(|(r, _)| r.is_subset(s))
            .map(|(_, w)| w)
            .sum()
    })
}

/// How individual assessments `u_a(S)` are drawn for [`additive_game`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndividualShape {
    /// Independent uniform values in `[-1, 1)`.
    Arbitrary,
    /// Sums of nonnegative per-member weights, so `u_a` grows with `S`.
    Monotone,
    /// Monotone plus small uniform noise.
    NoisyMonotone,
}

/// Additive game `u_A(S) = Σ_{a∈A} u_a(S)` over independently drawn `u_a`.
pub fn additive_game(rng: &mut impl Rng, n: usize, shape: IndividualShape) -> Result<StGame> {
    let subsets = 1usize << n;
    let mut individual = vec![vec![0.0; subsets]; n];
    for row in individual.iter_mut() {
        let weights: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        for (bits, slot) in row.iter_mut().enumerate().skip(1) {
            let s = PlayerSet::from_bits(bits as u64);
            let monotone: f64 = s.players().map(|b| weights[b]).sum();
            *slot = match shape {
                IndividualShape::Arbitrary => rng.random_range(-1.0..1.0),
                IndividualShape::Monotone => monotone,
                IndividualShape::NoisyMonotone => monotone + rng.random_range(-0.1..0.1),
            };
        }
    }
    StGame::from_fn(n, |a, s| {
        a.players().map(|p| individual[p][s.index()]).sum()
    })
}

/// Co-additive game `u_A(S) = Σ_{b∈S} w_A(b)` with `w_A(b)` uniform in `[lo, hi)`.
pub fn coadditive_game(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Result<StGame> {
    let w: Vec<Vec<f64>> = (0..1usize << n)
        .map(|_| (0..n).map(|_| rng.random_range(lo..hi)).collect())
        .collect();
    StGame::from_fn(n, |a, s| s.players().map(|b| w[a.index()][b]).sum())
}

/// Perception matrix with entries uniform in `[lo, hi)`.
pub fn biadditive_matrix(
    rng: &mut impl Rng,
    n: usize,
    lo: f64,
    hi: f64,
) -> Result<BiAdditiveMatrix> {
    BiAdditiveMatrix::new(n, (0..n * n).map(|_| rng.random_range(lo..hi)).collect())
}

/// A disjoint pair `(A, B)` of the `n`-player team; `A` is nonempty, `B` may be empty.
pub fn disjoint_pair(rng: &mut impl Rng, n: usize) -> (PlayerSet, PlayerSet) {
    loop {
        let (mut a, mut b) = (PlayerSet::EMPTY, PlayerSet::EMPTY);
        for p in 0..n {
            match rng.random_range(0..3) {
                0 => a = a.with(p),
                1 => b = b.with(p),
                _ => {}
            }
        }
        if !a.is_empty() {
            return (a, b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additivity::{is_additive, is_biadditive, is_coadditive};
    use crate::game_core::is_convex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_their_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            assert!(is_convex(&convex_game(&mut rng, n, 0.5).unwrap(), 1e-12));
            for shape in [
                IndividualShape::Arbitrary,
                IndividualShape::Monotone,
                IndividualShape::NoisyMonotone,
            ] {
                assert!(is_additive(&additive_game(&mut rng, n, shape).unwrap(), 1e-9).unwrap());
            }
            assert!(
                is_coadditive(&coadditive_game(&mut rng, n, -1.0, 1.0).unwrap(), 1e-9).unwrap()
            );
            let m = biadditive_matrix(&mut rng, n, -1.0, 1.0).unwrap();
            assert!(is_biadditive(&m.to_game().unwrap(), 1e-9).unwrap());
        }
    }

    #[test]
    fn seeded_sequences_repeat() {
        let a = st_game(&mut ChaCha8Rng::seed_from_u64(9), 3, 0.0, 1.0).unwrap();
        let b = st_game(&mut ChaCha8Rng::seed_from_u64(9), 3, 0.0, 1.0).unwrap();
        assert_eq!(a, b);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (a, b) = disjoint_pair(&mut rng, 4);
            assert!(!a.is_empty() && a.is_disjoint(b) && a.union(b).fits(4));
        }
    }
}
