//! Random Cobb-Douglas instances for Monte Carlo sweeps.

use rand::Rng;

use super::{CobbDouglasConfig, CobbDouglasGame, ContributionProfile, PayoffScheme, ValueFunction};
use crate::error::Result;
use crate::player_set::PlayerSet;
use crate::random::disjoint_pair;

/// One sampled game with a disjoint pair to evaluate.
#[derive(Clone, Debug)]
pub struct Instance {
    pub game: CobbDouglasGame,
    pub a: PlayerSet,
    pub b: PlayerSet,
}

/// `2..=6` players, `θ ∈ (0, 1)`, `f(x) = αx^β` with `α ∈ [0.1, 3]` and
/// `β ∈ [0.5, 3]`, resources in `[0.1, 2]`. Contributions hit both ends of
/// `[0, X_a]` with probability 0.1 each.
pub fn random_config(rng: &mut impl Rng) -> Result<(CobbDouglasConfig, ContributionProfile)> {
    let n = rng.random_range(2..=6);
    let theta = loop {
        let t: f64 = rng.random_range(0.0..1.0);
        if t > 0.0 {
            break t;
        }
    };
    let value = ValueFunction::power(rng.random_range(0.1..=3.0), rng.random_range(0.5..=3.0))?;
    let resources: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..=2.0)).collect();
    let x = resources
        .iter()
        .map(|&cap| match rng.random_range(0..10) {
            0 => 0.0,
            1 => cap,
            _ => rng.random_range(0.0..=cap),
        })
        .collect();
    Ok((
        CobbDouglasConfig::new(theta, value, resources)?,
        ContributionProfile(x),
    ))
}

/// A random configuration under `scheme` with a random disjoint pair.
pub fn random_instance(rng: &mut impl Rng, scheme: PayoffScheme) -> Result<Instance> {
    let (cfg, x) = random_config(rng)?;
    let n = cfg.players();
    let (a, b) = disjoint_pair(rng, n);
    Ok(Instance {
        game: CobbDouglasGame::new(cfg, scheme, x)?,
        a,
        b,
    })
}
