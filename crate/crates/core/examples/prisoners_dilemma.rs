//! Cooperation-space points and predicates of a two-player prisoner's dilemma
//! written as an ST game.
//!
//! ```text
//! cargo run --example prisoners_dilemma
//! ```

use stgames::scenarios::prisoners_dilemma;
use stgames::st_game::{
    all_coop_points, is_fully_cooperative, is_sensible, reduce_to_tu, TuReduction,
};

fn main() -> stgames::Result<()> {
    let g = prisoners_dilemma();
    println!("outcomes: {:?}", g.outcomes());
    for p in all_coop_points(&g)? {
        println!(
            "{}: altruism {}, competitive {}, marginal {} ({})",
            p.subset,
            p.altruism,
            p.competitive,
            p.marginal,
            p.quadrant(1e-9).as_str()
        );
    }
    println!("sensible: {}", is_sensible(&g, 1e-9)?);
    println!("fully cooperative: {}", is_fully_cooperative(&g, 1e-9)?);
    match reduce_to_tu(&g, 1e-9)? {
        TuReduction::Reduced(tu) => println!("TU values: {:?}", tu.values()),
        TuReduction::Rejected { a, b, competitive } => {
            println!("not a TU game: c_{a}({a}∪{b}) = {competitive}")
        }
    }
    Ok(())
}
