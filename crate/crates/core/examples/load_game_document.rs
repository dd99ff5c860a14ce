//! Reads a `.game` document, reports where a malformed one goes wrong, and
//! writes a metrics table as CSV.
//!
//! ```text
//! cargo run --example load_game_document
//! ```

use stgames::game_io::{num, parse_game, to_document, GameDocument, LoadedGame, Table};
use stgames::st_game::all_coop_points;

const DOC: &str = r#"
version = 1
kind = "st"
players = ["ann", "bo"]
outcomes = ["shared", "solo_ann", "solo_bo"]

[[consequence]]
coalition = ["ann", "bo"]
outcome = "shared"
[[consequence]]
coalition = ["ann"]
outcome = "solo_ann"
[[consequence]]
coalition = ["bo"]
outcome = "solo_bo"

[[utility]]
assessor = ["ann", "bo"]
outcome = "shared"
value = 5
[[utility]]
assessor = ["ann"]
outcome = "shared"
value = 2
[[utility]]
assessor = ["bo"]
outcome = "shared"
value = 3
[[utility]]
assessor = ["ann"]
outcome = "solo_ann"
value = 1
[[utility]]
assessor = ["bo"]
outcome = "solo_bo"
value = 2
"#;

fn main() -> stgames::Result<()> {
    let doc = parse_game(DOC, "inline.game")?;
    let LoadedGame::St(g) = &doc.game else {
        unreachable!()
    };
    let mut table = Table::new(["subset", "altruism", "competitive"]);
    for p in all_coop_points(g)? {
        table.push(vec![
            doc.subset_label(p.subset),
            num(p.altruism),
            num(p.competitive),
        ])?;
    }
    print!("{}", String::from_utf8_lossy(&table.to_csv()?));

    let broken = DOC.replace("coalition = [\"bo\"]", "coalition = [\"cy\"]");
    if let Err(e) = parse_game(&broken, "broken.game") {
        println!("{e}");
    }

    let tu = GameDocument::with_default_names(LoadedGame::Tu(stgames::scenarios::glove()));
    print!("{}", to_document(&tu)?);
    Ok(())
}
