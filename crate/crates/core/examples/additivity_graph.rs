//! A bi-additive game from a perception matrix: fast metrics against the generic
//! ones, then the perception graph as an edge list.
//!
//! ```text
//! cargo run --example additivity_graph
//! ```

use stgames::additivity::{
    export_graph, extract_matrix, fast_metrics, is_biadditive, BiAdditiveMatrix,
};
use stgames::st_game::{altruistic_contribution, competitive_contribution, is_sensible};
use stgames::PlayerSet;

fn main() -> stgames::Result<()> {
    // row a: how player a values each member
    let m = BiAdditiveMatrix::from_rows(&[
        vec![1.0, 0.5, -0.25],
        vec![0.2, 1.0, 0.3],
        vec![-0.5, 0.1, 1.0],
    ])?;
    let g = m.to_game()?;
    println!("bi-additive: {}", is_biadditive(&g, 1e-12)?);
    println!(
        "recovered matrix equal: {}",
        extract_matrix(&g, 1e-12)? == m
    );

    let (a, b) = (PlayerSet::singleton(0), PlayerSet::from_players([1, 2]));
    let fast = fast_metrics(&m, a, b)?;
    println!(
        "A={a}, B={b}: fast (a={}, c={}), generic (a={}, c={})",
        fast.altruism,
        fast.competitive,
        altruistic_contribution(&g, a, b)?,
        competitive_contribution(&g, a, b)?
    );
    println!("sensible: {}", is_sensible(&g, 1e-12)?);

    let graph = export_graph(&m);
    println!("outgoing weight of {a}: {}", graph.outgoing_weight(a));
    print!("{}", graph.to_edge_list());
    Ok(())
}
