//! Payoff schemes in the Cobb-Douglas contribution game: who stays cohesive,
//! and how large a team an equal-pay rule can hold together.
//!
//! ```text
//! cargo run --example cobb_douglas_stability
//! ```

use stgames::cobb_douglas::{
    cd_fully_cooperative, max_stable_team_size, rational_contribution, CobbDouglasConfig,
    CobbDouglasGame, ContributionProfile, PayoffScheme, TeamSizeBound, ValueFunction,
};
use stgames::st_game::is_fully_cooperative;
use stgames::PlayerSet;

fn main() -> stgames::Result<()> {
    let cfg = CobbDouglasConfig::new(0.75, ValueFunction::power(1.0, 1.5)?, vec![1.0; 4])?;
    let x = ContributionProfile(vec![1.0, 0.4, 0.4, 0.2]);
    for scheme in [
        PayoffScheme::Proportional,
        PayoffScheme::Equal,
        PayoffScheme::hybrid(0.5)?,
    ] {
        let g = CobbDouglasGame::new(cfg.clone(), scheme, x.clone())?;
        let best = rational_contribution(&g, 0)?;
        let (strong, rest) = (PlayerSet::singleton(0), PlayerSet::from_players(1..4));
        println!(
            "{}: fully cooperative {}, rest gains from player 0 {}, player 0 best reply {:.4} (utility {:.4})",
            scheme.label(),
            is_fully_cooperative(&g, 1e-9)?,
            cd_fully_cooperative(&g, rest, strong, 1e-9)?,
            best.x,
            best.value
        );
    }

    println!("largest team holding a player who brings 30% (beta 1.5):");
    for gamma in [0.0, 0.25, 0.5, 0.75] {
        let size = match max_stable_team_size(gamma, 0.3, 1.5)? {
            TeamSizeBound::Bounded(k) => k.to_string(),
            TeamSizeBound::Unbounded => "any".into(),
        };
        println!("  gamma {gamma}: {size}");
    }
    Ok(())
}
