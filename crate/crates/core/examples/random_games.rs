//! Seeded random games: how often random ST games, TU games and perception
//! matrices satisfy the predicates.
//!
//! ```text
//! cargo run --example random_games -- 7
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stgames::game_core::{core_is_nonempty, is_convex};
use stgames::random;
use stgames::st_game::{is_fully_cooperative, is_sensible};

fn main() -> stgames::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 200;
    let (mut sensible, mut coop, mut convex, mut core, mut matrix_coop) = (0, 0, 0, 0, 0);
    for _ in 0..trials {
        let g = random::st_game(&mut rng, 4, -1.0, 1.0)?;
        sensible += is_sensible(&g, 0.0)? as u32;
        coop += is_fully_cooperative(&g, 0.0)? as u32;
        let tu = random::convex_game(&mut rng, 4, 0.5)?;
        convex += is_convex(&tu, 1e-9) as u32;
        let tu = random::tu_game(&mut rng, 4, 0.0, 1.0)?;
        core += core_is_nonempty(&tu)? as u32;
        let m = random::biadditive_matrix(&mut rng, 4, -0.2, 1.0)?;
        matrix_coop += is_fully_cooperative(&m.to_game()?, 0.0)? as u32;
    }
    println!("seed {seed}, {trials} draws of 4 players");
    println!("  uniform ST game sensible: {sensible}, fully cooperative: {coop}");
    println!("  unanimity combination convex: {convex}");
    println!("  uniform TU game with nonempty core: {core}");
    println!("  perception matrix in [-0.2, 1] fully cooperative: {matrix_coop}");
    Ok(())
}
