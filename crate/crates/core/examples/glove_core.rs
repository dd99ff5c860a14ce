//! Shapley value and core of the glove game, with the exact core witness.
//!
//! ```text
//! cargo run --example glove_core
//! ```

use stgames::game_core::{
    core_witness, in_core, is_convex, is_superadditive, shapley_by_permutations, shapley_value,
    shapley_value_stratified,
};
use stgames::scenarios::{glove, majority3};

fn main() -> stgames::Result<()> {
    for (name, g) in [("glove", glove()), ("majority", majority3())] {
        let phi = shapley_value(&g);
        // three independent evaluations of the same value
        let strat = shapley_value_stratified(&g);
        let perm = shapley_by_permutations(&g)?;
        println!("{name}: shapley {:?}", phi.as_slice());
        println!("  stratified {:?}", strat.as_slice());
        println!("  permutations {:?}", perm.as_slice());
        println!(
            "  convex {}, superadditive {}, shapley in core {}",
            is_convex(&g, 1e-9),
            is_superadditive(&g, 1e-9),
            in_core(&g, &phi, 1e-9)?
        );
        match core_witness(&g)? {
            Some(w) => {
                let exact: Vec<String> = w.exact.iter().map(|q| q.to_string()).collect();
                println!("  core witness [{}]", exact.join(", "));
            }
            None => println!("  core is empty"),
        }
    }
    Ok(())
}
