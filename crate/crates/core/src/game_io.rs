//! `.game` documents and CSV tables.
//!
//! A document is TOML. Subsets are written as arrays of player names and
//! converted to bitmasks at load. Four kinds exist:
//!
//! ```toml
//! version = 1
//! kind = "st"
//! players = ["A", "B"]
//! outcomes = ["together", "alone_a", "alone_b"]
//!
//! [[consequence]]
//! coalition = ["A", "B"]
//! outcome = "together"
//!
//! [[utility]]
//! assessor = ["A", "B"]
//! outcome = "together"
//! value = 4.0
//! ```
//!
//! * `kind = "tu"` lists `[[value]]` entries with `coalition` and `value`,
//!   one per nonempty coalition; `u(∅)` may be given only as 0.
//! * `kind = "matrix"` gives a bi-additive perception matrix as `matrix = [[..], ..]`,
//!   row `a` holding `u_a({b})`.
//! * `kind = "cobb-douglas"` carries a `[cobb_douglas]` table with `theta`,
//!   optional `gamma`, either `alpha` and `beta` or `value_table = [[x, f], ..]`,
//!   `resources`, and optional `contributions`.
//!
//! Every validation error carries the line of the offending entry and its field.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::additivity::BiAdditiveMatrix;
use crate::cobb_douglas::{CobbDouglasConfig, ContributionProfile, ValueFunction};
use crate::error::{Error, Result};
use crate::game_core::{TuGame, MAX_EXHAUSTIVE_PLAYERS};
use crate::player_set::PlayerSet;
use crate::st_game::{Consequence, OutcomeId, StGame, SubsetUtility, UtilityTable};

/// The only document version understood.
pub const VERSION: i64 = 1;

/// Cobb-Douglas parameters as stored in a document.
#[derive(Clone, Debug, PartialEq)]
pub struct CobbDouglasSpec {
    pub config: CobbDouglasConfig,
    pub gamma: Option<f64>,
    pub contributions: Option<ContributionProfile>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedGame {
    St(StGame),
    Tu(TuGame),
    Matrix(BiAdditiveMatrix),
    CobbDouglas(CobbDouglasSpec),
}

impl LoadedGame {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadedGame::St(_) => "st",
            LoadedGame::Tu(_) => "tu",
            LoadedGame::Matrix(_) => "matrix",
            LoadedGame::CobbDouglas(_) => "cobb-douglas",
        }
    }
}

/// A validated document: player names and the game they index.
#[derive(Clone, Debug, PartialEq)]
pub struct GameDocument {
    pub players: Vec<String>,
    pub game: LoadedGame,
}

impl GameDocument {
    /// Players named `p0, p1, ..`.
    pub fn with_default_names(game: LoadedGame) -> Self {
        let n = match &game {
            LoadedGame::St(g) => g.players(),
            LoadedGame::Tu(g) => g.players(),
            LoadedGame::Matrix(m) => m.size(),
            LoadedGame::CobbDouglas(s) => s.config.players(),
        };
        GameDocument {
            players: (0..n).map(|i| format!("p{i}")).collect(),
            game,
        }
    }

    /// `{A,B}` using player names.
    pub fn subset_label(&self, s: PlayerSet) -> String {
        let names: Vec<&str> = s.players().map(|p| self.players[p].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: Spanned<i64>,
    kind: Spanned<String>,
    players: Spanned<Vec<Spanned<String>>>,
    #[serde(default)]
    outcomes: Vec<Spanned<String>>,
    #[serde(default)]
    consequence: Vec<Spanned<RawConsequence>>,
    #[serde(default)]
    utility: Vec<Spanned<RawUtility>>,
    #[serde(default)]
    value: Vec<Spanned<RawValue>>,
    matrix: Option<Spanned<Vec<Vec<f64>>>>,
    cobb_douglas: Option<Spanned<RawCobbDouglas>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConsequence {
    coalition: Spanned<Vec<Spanned<String>>>,
    outcome: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUtility {
    assessor: Spanned<Vec<Spanned<String>>>,
    outcome: Spanned<String>,
    value: Spanned<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValue {
    coalition: Spanned<Vec<Spanned<String>>>,
    value: Spanned<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCobbDouglas {
    theta: Spanned<f64>,
    gamma: Option<Spanned<f64>>,
    alpha: Option<Spanned<f64>>,
    beta: Option<Spanned<f64>>,
    value_table: Option<Spanned<Vec<(f64, f64)>>>,
    resources: Spanned<Vec<f64>>,
    contributions: Option<Spanned<Vec<f64>>>,
}

struct Ctx<'a> {
    source: &'a str,
    origin: &'a str,
    names: BTreeMap<String, usize>,
}

impl Ctx<'_> {
    fn line(&self, offset: usize) -> usize {
        self.source[..offset.min(self.source.len())]
            .bytes()
            .filter(|&b| b == b'\n')
            .count()
            + 1
    }

    fn err<T>(
        &self,
        span: std::ops::Range<usize>,
        field: &str,
        msg: impl Into<String>,
    ) -> Result<T> {
        Err(Error::load(
            format!("{}:{}: field `{field}`", self.origin, self.line(span.start)),
            msg,
        ))
    }

    fn subset(&self, names: &Spanned<Vec<Spanned<String>>>, field: &str) -> Result<PlayerSet> {
        let mut s = PlayerSet::EMPTY;
        for name in names.get_ref() {
            match self.names.get(name.get_ref()) {
                None => {
                    return self.err(
                        name.span(),
                        field,
                        format!("unknown player `{}`", name.get_ref()),
                    )
                }
                Some(&p) if s.contains(p) => {
                    return self.err(
                        name.span(),
                        field,
                        format!("player `{}` repeated", name.get_ref()),
                    )
                }
                Some(&p) => s = s.with(p),
            }
        }
        Ok(s)
    }
}

fn label(names: &[String], s: PlayerSet) -> String {
    let parts: Vec<&str> = s.players().map(|p| names[p].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Parses a document; `origin` names the source in error messages.
pub fn parse_game(source: &str, origin: &str) -> Result<GameDocument> {
    let raw: RawDocument = toml::from_str(source).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let line = source[..span.start.min(source.len())].matches('\n').count() + 1;
                format!("{origin}:{line}")
            }
            None => origin.to_string(),
        };
        Error::load(location, e.message().to_string())
    })?;
    let mut ctx = Ctx {
        source,
        origin,
        names: BTreeMap::new(),
    };

    if *raw.version.get_ref() != VERSION {
        return ctx.err(
            raw.version.span(),
            "version",
            format!(
                "unsupported version {}, expected {VERSION}",
                raw.version.get_ref()
            ),
        );
    }
    let players: Vec<String> = raw
        .players
        .get_ref()
        .iter()
        .map(|p| p.get_ref().clone())
        .collect();
    if players.is_empty() {
        return ctx.err(
            raw.players.span(),
            "players",
            "at least one player is required",
        );
    }
    for (i, p) in raw.players.get_ref().iter().enumerate() {
        if p.get_ref().is_empty() {
            return ctx.err(p.span(), "players", "player names must be nonempty");
        }
        if ctx.names.insert(p.get_ref().clone(), i).is_some() {
            return ctx.err(
                p.span(),
                "players",
                format!("duplicate player `{}`", p.get_ref()),
            );
        }
    }
    let n = players.len();

    let kind = raw.kind.get_ref().as_str();
    let unexpected = |present: bool, field: &str, span: std::ops::Range<usize>| -> Result<()> {
        if present {
            ctx.err(span, field, format!("not allowed in a `{kind}` document"))
        } else {
            Ok(())
        }
    };
    let game = match kind {
        "st" => {
            unexpected(
                !raw.value.is_empty(),
                "value",
                raw.value.first().map_or(0..0, |v| v.span()),
            )?;
            unexpected(
                raw.matrix.is_some(),
                "matrix",
                raw.matrix.as_ref().map_or(0..0, |v| v.span()),
            )?;
            unexpected(
                raw.cobb_douglas.is_some(),
                "cobb_douglas",
                raw.cobb_douglas.as_ref().map_or(0..0, |v| v.span()),
            )?;
            LoadedGame::St(load_st(&ctx, &raw, &players)?)
        }
        "tu" => {
            unexpected(
                !raw.utility.is_empty(),
                "utility",
                raw.utility.first().map_or(0..0, |v| v.span()),
            )?;
            unexpected(
                !raw.consequence.is_empty(),
                "consequence",
                raw.consequence.first().map_or(0..0, |v| v.span()),
            )?;
            LoadedGame::Tu(load_tu(&ctx, &raw, &players)?)
        }
        "matrix" => {
            let Some(rows) = &raw.matrix else {
                return ctx.err(
                    raw.kind.span(),
                    "matrix",
                    "a matrix document needs `matrix`",
                );
            };
            if rows.get_ref().len() != n || rows.get_ref().iter().any(|r| r.len() != n) {
                return ctx.err(rows.span(), "matrix", format!("expected a {n}x{n} matrix"));
            }
            let m = BiAdditiveMatrix::from_rows(rows.get_ref())
                .or_else(|e| ctx.err(rows.span(), "matrix", e.to_string()))?;
            LoadedGame::Matrix(m)
        }
        "cobb-douglas" => {
            let Some(block) = &raw.cobb_douglas else {
                return ctx.err(
                    raw.kind.span(),
                    "cobb_douglas",
                    "a cobb-douglas document needs `[cobb_douglas]`",
                );
            };
            LoadedGame::CobbDouglas(load_cobb_douglas(&ctx, block.get_ref(), n)?)
        }
        other => {
            return ctx.err(
                raw.kind.span(),
                "kind",
                format!("unknown kind `{other}`, expected st, tu, matrix or cobb-douglas"),
            )
        }
    };
    Ok(GameDocument { players, game })
}

fn load_st(ctx: &Ctx, raw: &RawDocument, players: &[String]) -> Result<StGame> {
    let n = players.len();
    if n > MAX_EXHAUSTIVE_PLAYERS {
        return ctx.err(
            raw.players.span(),
            "players",
            format!("at most {MAX_EXHAUSTIVE_PLAYERS} players"),
        );
    }
    let mut outcome_ids = BTreeMap::new();
    for (i, o) in raw.outcomes.iter().enumerate() {
        if outcome_ids
            .insert(o.get_ref().clone(), OutcomeId(i as u32))
            .is_some()
        {
            return ctx.err(
                o.span(),
                "outcomes",
                format!("duplicate outcome `{}`", o.get_ref()),
            );
        }
    }
    let outcome = |o: &Spanned<String>, field: &str| -> Result<OutcomeId> {
        match outcome_ids.get(o.get_ref()) {
            Some(&x) => Ok(x),
            None => ctx.err(
                o.span(),
                field,
                format!("undeclared outcome `{}`", o.get_ref()),
            ),
        }
    };

    let mut v = Consequence::unassigned(n);
    let mut seen = BTreeSet::new();
    for entry in &raw.consequence {
        let e = entry.get_ref();
        let s = ctx.subset(&e.coalition, "consequence.coalition")?;
        if s.is_empty() {
            return ctx.err(
                e.coalition.span(),
                "consequence.coalition",
                "the empty coalition has no outcome",
            );
        }
        if !seen.insert(s) {
            return ctx.err(
                e.coalition.span(),
                "consequence.coalition",
                format!("coalition {} assigned twice", label(players, s)),
            );
        }
        v.set(s, outcome(&e.outcome, "consequence.outcome")?);
    }
    let team = PlayerSet::full(n);
    let outcomes_span = raw.outcomes.first().map_or(0..0, |o| o.span());
    if let Some(s) = team.nonempty_subsets().find(|s| !seen.contains(s)) {
        return ctx.err(
            outcomes_span,
            "consequence",
            format!(
                "missing consequence entry for coalition {}",
                label(players, s)
            ),
        );
    }

    let mut u = UtilityTable::new();
    for entry in &raw.utility {
        let e = entry.get_ref();
        let a = ctx.subset(&e.assessor, "utility.assessor")?;
        if a.is_empty() {
            return ctx.err(
                e.assessor.span(),
                "utility.assessor",
                "the empty set assesses nothing",
            );
        }
        let x = outcome(&e.outcome, "utility.outcome")?;
        let value = *e.value.get_ref();
        if !value.is_finite() {
            return ctx.err(
                e.value.span(),
                "utility.value",
                format!("non-finite value {value}"),
            );
        }
        if u.get(a, x).is_some() {
            return ctx.err(
                entry.span(),
                "utility",
                format!(
                    "duplicate utility for assessor {} on outcome `{}`",
                    label(players, a),
                    e.outcome.get_ref()
                ),
            );
        }
        u.insert(a, x, value)?;
    }
    for s in team.nonempty_subsets() {
        let x = v.get(s);
        if let Some(a) = s.nonempty_subsets().find(|&a| u.get(a, x).is_none()) {
            return ctx.err(
                outcomes_span.clone(),
                "utility",
                format!(
                    "missing utility for assessor {} on outcome `{}`, the consequence of {}",
                    label(players, a),
                    raw.outcomes[x.index()].get_ref(),
                    label(players, s)
                ),
            );
        }
    }
    let outcomes = raw.outcomes.iter().map(|o| o.get_ref().clone()).collect();
    StGame::new(n, outcomes, v, u)
}

fn load_tu(ctx: &Ctx, raw: &RawDocument, players: &[String]) -> Result<TuGame> {
    let n = players.len();
    if n > MAX_EXHAUSTIVE_PLAYERS {
        return ctx.err(
            raw.players.span(),
            "players",
            format!("at most {MAX_EXHAUSTIVE_PLAYERS} players"),
        );
    }
    let mut values: Vec<Option<f64>> = vec![None; 1 << n];
    for entry in &raw.value {
        let e = entry.get_ref();
        let s = ctx.subset(&e.coalition, "value.coalition")?;
        let x = *e.value.get_ref();
        if !x.is_finite() {
            return ctx.err(
                e.value.span(),
                "value.value",
                format!("non-finite value {x}"),
            );
        }
        if s.is_empty() && x != 0.0 {
            return ctx.err(
                e.value.span(),
                "value.value",
                format!("u(empty set) must be 0, got {x}"),
            );
        }
        if values[s.index()].replace(x).is_some() {
            return ctx.err(
                entry.span(),
                "value",
                format!("duplicate value for coalition {}", label(players, s)),
            );
        }
    }
    let span = raw.value.first().map_or(raw.kind.span(), |v| v.span());
    if let Some(s) = PlayerSet::full(n)
        .nonempty_subsets()
        .find(|s| values[s.index()].is_none())
    {
        return ctx.err(
            span,
            "value",
            format!("missing value for coalition {}", label(players, s)),
        );
    }
    TuGame::new(n, values.into_iter().map(|v| v.unwrap_or(0.0)).collect())
}

fn load_cobb_douglas(ctx: &Ctx, raw: &RawCobbDouglas, n: usize) -> Result<CobbDouglasSpec> {
    let value = match (&raw.alpha, &raw.beta, &raw.value_table) {
        (Some(alpha), Some(beta), None) => ValueFunction::power(*alpha.get_ref(), *beta.get_ref())
            .or_else(|e| ctx.err(alpha.span(), "cobb_douglas.alpha", e.to_string()))?,
        (None, None, Some(table)) => ValueFunction::tabulated(table.get_ref().clone())
            .or_else(|e| ctx.err(table.span(), "cobb_douglas.value_table", e.to_string()))?,
        _ => {
            return ctx.err(
                raw.theta.span(),
                "cobb_douglas",
                "give either `alpha` and `beta` or `value_table`",
            )
        }
    };
    if raw.resources.get_ref().len() != n {
        return ctx.err(
            raw.resources.span(),
            "cobb_douglas.resources",
            format!(
                "{} resources for {n} players",
                raw.resources.get_ref().len()
            ),
        );
    }
    let config =
        CobbDouglasConfig::new(*raw.theta.get_ref(), value, raw.resources.get_ref().clone())
            .or_else(|e| ctx.err(raw.theta.span(), "cobb_douglas", e.to_string()))?;
    let gamma = match &raw.gamma {
        Some(g) if !(0.0..=1.0).contains(g.get_ref()) => {
            return ctx.err(
                g.span(),
                "cobb_douglas.gamma",
                format!("gamma must lie in [0, 1], got {}", g.get_ref()),
            )
        }
        g => g.as_ref().map(|g| *g.get_ref()),
    };
    let contributions = match &raw.contributions {
        None => None,
        Some(x) => {
            let profile = ContributionProfile(x.get_ref().clone());
            profile
                .validate(&config)
                .or_else(|e| ctx.err(x.span(), "cobb_douglas.contributions", e.to_string()))?;
            Some(profile)
        }
    };
    Ok(CobbDouglasSpec {
        config,
        gamma,
        contributions,
    })
}

pub fn load_game(path: impl AsRef<Path>) -> Result<GameDocument> {
    let path = path.as_ref();
    let source = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_game(&source, &path.display().to_string())
}

pub fn read_game(mut reader: impl io::Read, origin: &str) -> Result<GameDocument> {
    let mut source = String::new();
    reader
        .read_to_string(&mut source)
        .map_err(|source| Error::Io {
            path: origin.into(),
            source,
        })?;
    parse_game(&source, origin)
}

#[derive(Serialize)]
struct OutDocument<'a> {
    version: i64,
    kind: &'a str,
    players: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    outcomes: Option<&'a [String]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    consequence: Vec<OutConsequence<'a>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    utility: Vec<OutUtility<'a>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    value: Vec<OutValue<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cobb_douglas: Option<OutCobbDouglas>,
}

#[derive(Serialize)]
struct OutConsequence<'a> {
    coalition: Vec<&'a str>,
    outcome: &'a str,
}

#[derive(Serialize)]
struct OutUtility<'a> {
    assessor: Vec<&'a str>,
    outcome: &'a str,
    value: f64,
}

#[derive(Serialize)]
struct OutValue<'a> {
    coalition: Vec<&'a str>,
    value: f64,
}

#[derive(Serialize)]
struct OutCobbDouglas {
    theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_table: Option<Vec<(f64, f64)>>,
    resources: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contributions: Option<Vec<f64>>,
}

/// Serializes a document; [`parse_game`] reads it back to an equal value.
/// ST utilities are written in assessor-then-outcome order.
pub fn to_document(doc: &GameDocument) -> Result<String> {
    let names =
        |s: PlayerSet| -> Vec<&str> { s.players().map(|p| doc.players[p].as_str()).collect() };
    let mut out = OutDocument {
        version: VERSION,
        kind: doc.game.kind(),
        players: &doc.players,
        outcomes: None,
        matrix: None,
        consequence: Vec::new(),
        utility: Vec::new(),
        value: Vec::new(),
        cobb_douglas: None,
    };
    match &doc.game {
        LoadedGame::St(g) => {
            let outcomes = g.outcomes();
            out.outcomes = Some(outcomes);
            out.consequence = g
                .team()
                .nonempty_subsets()
                .map(|s| OutConsequence {
                    coalition: names(s),
                    outcome: &outcomes[g.consequence().get(s).index()],
                })
                .collect();
            out.utility = g
                .utilities()
                .iter()
                .map(|(a, x, value)| OutUtility {
                    assessor: names(a),
                    outcome: &outcomes[x.index()],
                    value,
                })
                .collect();
        }
        LoadedGame::Tu(g) => {
            out.value = g
                .grand_coalition()
                .nonempty_subsets()
                .map(|s| OutValue {
                    coalition: names(s),
                    value: g.value(s),
                })
                .collect();
        }
        LoadedGame::Matrix(m) => {
            out.matrix = Some(m.rows().map(|r| r.to_vec()).collect());
        }
        LoadedGame::CobbDouglas(cd) => {
            let cfg = &cd.config;
            let (alpha, beta, value_table) = match &cfg.value {
                ValueFunction::Power { alpha, beta } => (Some(*alpha), Some(*beta), None),
                ValueFunction::Tabulated(k) => (None, None, Some(k.clone())),
            };
            out.cobb_douglas = Some(OutCobbDouglas {
                theta: cfg.theta,
                gamma: cd.gamma,
                alpha,
                beta,
                value_table,
                resources: cfg.resources.clone(),
                contributions: cd.contributions.as_ref().map(|c| c.0.clone()),
            });
        }
    }
    toml::to_string(&out).map_err(|e| Error::domain(format!("serialization failed: {e}")))
}

pub fn save_game(doc: &GameDocument, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_document(doc)?).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A rectangular table with named columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::domain(format!(
                "row has {} cells for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.into_inner()
            .map_err(|e| Error::domain(format!("csv buffer: {}", e.error())))
    }
}

/// Shortest decimal that reads back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Writes `table` as CSV: header row, `\n`-terminated rows, full-precision decimals.
pub fn write_table(table: &Table, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, table.to_csv()?).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{glove, prisoners_dilemma};

    const PD: &str = r#"
version = 1
kind = "st"
players = ["A", "B"]
outcomes = ["together", "alone_a", "alone_b"]

[[consequence]]
coalition = ["A", "B"]
outcome = "together"

[[consequence]]
coalition = ["A"]
outcome = "alone_a"

[[consequence]]
coalition = ["B"]
outcome = "alone_b"

[[utility]]
assessor = ["A", "B"]
outcome = "together"
value = 4

[[utility]]
assessor = ["A"]
outcome = "together"
value = 2.0

[[utility]]
assessor = ["B"]
outcome = "together"
value = 2.0

[[utility]]
assessor = ["A"]
outcome = "alone_a"
value = 1.0

[[utility]]
assessor = ["B"]
outcome = "alone_b"
value = 1.0
"#;

    fn load_err(src: &str) -> String {
        parse_game(src, "doc.game").unwrap_err().to_string()
    }

    #[test]
    fn dilemma_document() {
        let doc = parse_game(PD, "pd.game").unwrap();
        assert_eq!(doc.players, ["A", "B"]);
        let LoadedGame::St(g) = &doc.game else {
            panic!()
        };
        assert_eq!(g.utility(g.team(), g.team()), 4.0);
        assert_eq!(*g, prisoners_dilemma());
    }

    #[test]
    fn missing_consequence_names_the_subset() {
        let src = PD.replace(
            "[[consequence]]\ncoalition = [\"B\"]\noutcome = \"alone_b\"\n",
            "",
        );
        let msg = load_err(&src);
        assert!(
            msg.contains("missing consequence entry for coalition {B}"),
            "{msg}"
        );
        assert!(msg.contains("doc.game:"), "{msg}");
    }

    #[test]
    fn located_errors() {
        let msg = load_err(&PD.replace("players = [\"A\", \"B\"]", "players = [\"A\", \"C\"]"));
        assert!(msg.contains("unknown player `B`"), "{msg}");
        assert!(msg.contains("field `consequence.coalition`"), "{msg}");
        assert!(msg.contains("doc.game:8:"), "{msg}");

        let dup =
            format!("{PD}\n[[utility]]\nassessor = [\"B\"]\noutcome = \"alone_b\"\nvalue = 3.0\n");
        let msg = load_err(&dup);
        assert!(msg.contains("duplicate utility for assessor {B}"), "{msg}");
        assert!(msg.contains("doc.game:44:"), "{msg}");

        let msg = load_err(&PD.replace("value = 2.0", "value = \"two\""));
        assert!(msg.starts_with("doc.game:27"), "{msg}");

        let msg = load_err(&PD.replace("version = 1", "version = 2"));
        assert!(msg.contains("unsupported version 2"), "{msg}");

        let msg = load_err(&PD.replace(
            "assessor = [\"A\"]\noutcome = \"alone_a\"",
            "assessor = [\"A\"]\noutcome = \"alone_b\"",
        ));
        assert!(
            msg.contains("missing utility for assessor {A} on outcome `alone_a`"),
            "{msg}"
        );

        let msg = load_err(&PD.replace("kind = \"st\"", "kind = \"xx\""));
        assert!(msg.contains("unknown kind"), "{msg}");
    }

    #[test]
    fn tu_documents() {
        let src = r#"
version = 1
kind = "tu"
players = ["L", "R1", "R2"]
value = [
  { coalition = [], value = 0 },
  { coalition = ["L"], value = 0 },
  { coalition = ["R1"], value = 0 },
  { coalition = ["R2"], value = 0 },
  { coalition = ["L", "R1"], value = 1 },
  { coalition = ["L", "R2"], value = 1 },
  { coalition = ["R1", "R2"], value = 0 },
  { coalition = ["L", "R1", "R2"], value = 1 },
]
"#;
        let doc = parse_game(src, "glove.game").unwrap();
        assert_eq!(doc.game, LoadedGame::Tu(glove()));
        let msg = load_err(&src.replace("coalition = [], value = 0", "coalition = [], value = 1"));
        assert!(msg.contains("u(empty set) must be 0"), "{msg}");
        let msg = load_err(&src.replace("  { coalition = [\"R1\", \"R2\"], value = 0 },\n", ""));
        assert!(msg.contains("missing value for coalition {R1,R2}"), "{msg}");
    }

    #[test]
    fn round_trips() {
        let docs = [
            parse_game(PD, "pd").unwrap(),
            GameDocument::with_default_names(LoadedGame::Tu(glove())),
            GameDocument::with_default_names(LoadedGame::Matrix(
                BiAdditiveMatrix::from_rows(&[vec![1.0, -0.5], vec![0.1 + 0.2, 2.0]]).unwrap(),
            )),
            GameDocument::with_default_names(LoadedGame::CobbDouglas(CobbDouglasSpec {
                config: CobbDouglasConfig::new(
                    0.75,
                    ValueFunction::power(1.0, 1.5).unwrap(),
                    vec![1.0, 2.0],
                )
                .unwrap(),
                gamma: Some(0.25),
                contributions: Some(ContributionProfile(vec![0.5, 1.0 / 3.0])),
            })),
            GameDocument::with_default_names(LoadedGame::CobbDouglas(CobbDouglasSpec {
                config: CobbDouglasConfig::new(
                    0.5,
                    ValueFunction::tabulated(vec![(0.0, 0.0), (1.0, 2.0)]).unwrap(),
                    vec![1.0],
                )
                .unwrap(),
                gamma: None,
                contributions: None,
            })),
        ];
        for doc in docs {
            let text = to_document(&doc).unwrap();
            let back = parse_game(&text, "written").unwrap();
            assert_eq!(back, doc, "{text}");
            assert_eq!(to_document(&back).unwrap(), text);
        }
    }

    #[test]
    fn cobb_douglas_errors() {
        let src = r#"
version = 1
kind = "cobb-douglas"
players = ["a", "b"]

[cobb_douglas]
theta = 0.75
alpha = 1.0
beta = 1.5
resources = [1.0, 1.0]
contributions = [0.5, 1.5]
"#;
        let msg = load_err(src);
        assert!(
            msg.contains("doc.game:11: field `cobb_douglas.contributions`"),
            "{msg}"
        );
        let msg = load_err(&src.replace("theta = 0.75", "theta = 1.5"));
        assert!(msg.contains("theta must lie in [0, 1]"), "{msg}");
        let msg = load_err(&src.replace("beta = 1.5\n", ""));
        assert!(msg.contains("either `alpha` and `beta`"), "{msg}");
    }

    #[test]
    fn tables() {
        let mut t = Table::new(["subset", "altruism"]);
        assert_eq!(t.to_csv().unwrap(), b"subset,altruism\n");
        t.push(vec!["{A,B}".into(), num(0.1 + 0.2)]).unwrap();
        assert_eq!(
            String::from_utf8(t.to_csv().unwrap()).unwrap(),
            "subset,altruism\n\"{A,B}\",0.30000000000000004\n"
        );
        assert!(t.push(vec!["x".into()]).is_err());
    }
}
