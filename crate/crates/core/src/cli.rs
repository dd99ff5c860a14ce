//! The `stgames` command line.
//!
//! Commands build an [`Output`]: a human summary for standard output plus
//! the files to write. Nothing touches the filesystem until [`Output::commit`],
//! so commands are easy to test and a failing command writes nothing.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::additivity::{export_graph, extract_matrix, is_additive, is_coadditive};
use crate::cobb_douglas::sample::random_instance;
use crate::cobb_douglas::{
    cd_cooperation_margin, cd_sensibility_check, cooperation_path, frontier_grid, payoff_grid,
    rational_grid, CobbDouglasGame, PayoffScheme, TwoGroupSetting, ValueFunction,
};
use crate::error::{Error, Result};
use crate::game_core::{
    core_witness, in_core, is_convex, is_superadditive, shapley_value, TuGame, DEFAULT_TOLERANCE,
    MAX_CORE_PLAYERS,
};
use crate::game_io::{
    load_game, num, to_document, CobbDouglasSpec, GameDocument, LoadedGame, Table,
};
use crate::player_set::PlayerSet;
use crate::scenarios;
use crate::st_game::{
    all_coop_points, altruistic_contribution, cohesion_violation, in_st_core, is_fully_cooperative,
    is_sensible, reduce_to_tu, sensibility_violation, StGame, SubsetUtility, TuReduction,
};

/// Thread-count override for the parallel sweeps.
pub const THREADS_ENV: &str = "STGAMES_THREADS";

const DEFAULT_GAMMAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const DEFAULT_RESOLUTION: usize = 101;
const DEFAULT_THETA: f64 = 0.75;
const DEFAULT_ALPHA: f64 = 1.0;
const DEFAULT_BETA: f64 = 1.5;

#[derive(Parser, Debug)]
#[command(name = "stgames", version, about = "Subset team game analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cooperation-space points of every nonempty proper subset.
    Metrics(MetricsArgs),
    /// Predicates, additive structure and, for TU games, Shapley and core facts.
    Classify(GameArgs),
    /// Shapley value of a TU game (or an ST game that reduces to one).
    Shapley(OutputArgs),
    /// Core nonemptiness with an exact witness.
    Core(OutputArgs),
    /// Reduce a zero-competition ST game to a TU document.
    #[command(name = "reduce-tu")]
    ReduceTu(OutputArgs),
    /// Perception graph of a bi-additive game as a `.edges` list.
    Graph(OutputArgs),
    /// Cobb-Douglas sweeps.
    Cobb {
        #[command(subcommand)]
        command: CobbCommand,
    },
    /// Write a built-in game and classify it.
    Scenario(ScenarioArgs),
}

#[derive(Args, Debug)]
pub struct GameArgs {
    /// `.game` document.
    pub game: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub input: GameArgs,
    #[arg(short, long, default_value = "metrics.csv")]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[command(flatten)]
    pub input: GameArgs,
    /// Defaults to `<command>.csv`, `reduced.game` or `graph.edges`.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Pd,
    Glove,
    Majority3,
}

#[derive(Args, Debug)]
pub struct ScenarioArgs {
    pub name: Scenario,
    /// Defaults to `<name>.game`.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    pub tol: f64,
}

#[derive(Subcommand, Debug)]
pub enum CobbCommand {
    /// Payoff and utility over both groups' average contributions.
    Sweep(CobbArgs),
    /// Rational paths through cooperation space.
    Path(CobbArgs),
    /// Maximum stable team size over gamma and the contribution ratio.
    Frontier(CobbArgs),
    /// Rational contributions of A with zero-altruism roots.
    Rational(CobbArgs),
    /// Seeded Monte Carlo check of sensibility and the cooperation factorization.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CobbArgs {
    /// Cobb-Douglas document supplying theta, gamma and the value function.
    #[arg(long)]
    pub game: Option<PathBuf>,
    #[arg(long, value_parser = parse_unit)]
    pub theta: Option<f64>,
    /// Comma-separated payoff mixes in [0, 1].
    #[arg(long, value_parser = parse_gammas)]
    pub gammas: Option<Gammas>,
    #[arg(long, value_parser = parse_positive)]
    pub alpha: Option<f64>,
    #[arg(long, value_parser = parse_positive)]
    pub beta: Option<f64>,
    #[arg(long = "sizeA", alias = "size-a", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=32))]
    pub size_a: u32,
    #[arg(long = "sizeB", alias = "size-b", default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=32))]
    pub size_b: u32,
    /// Samples per axis.
    #[arg(long, default_value_t = DEFAULT_RESOLUTION, value_parser = parse_resolution)]
    pub resolution: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    pub tol: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Configurations per payoff scheme.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    pub tol: f64,
    #[arg(short, long, default_value = "cobb_check.csv")]
    pub output: PathBuf,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gammas(pub Vec<f64>);

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_unit(s: &str) -> std::result::Result<f64, String> {
    let x = parse_f64(s)?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, 1]"))
    }
}

fn parse_positive(s: &str) -> std::result::Result<f64, String> {
    let x = parse_f64(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("{x} must be positive"))
    }
}

fn parse_tolerance(s: &str) -> std::result::Result<f64, String> {
    let x = parse_f64(s)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("tolerance {x} must be nonnegative"))
    }
}

fn parse_resolution(s: &str) -> std::result::Result<usize, String> {
    let r: usize = s
        .parse()
        .map_err(|_| format!("`{s}` is not a sample count"))?;
    if (2..=10_001).contains(&r) {
        Ok(r)
    } else {
        Err(format!("resolution {r} outside 2..=10001"))
    }
}

fn parse_gammas(s: &str) -> std::result::Result<Gammas, String> {
    let g = s
        .split(',')
        .map(parse_unit)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Gammas(g))
}

/// What a command prints and writes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Output {
    pub summary: String,
    pub files: Vec<(PathBuf, Vec<u8>)>,
}

impl Output {
    fn line(&mut self, text: impl AsRef<str>) {
        self.summary.push_str(text.as_ref());
        self.summary.push('\n');
    }

    fn file(&mut self, path: PathBuf, bytes: Vec<u8>) {
        self.line(format!("wrote {}", path.display()));
        self.files.push((path, bytes));
    }

    fn table(&mut self, path: PathBuf, table: &Table) -> Result<()> {
        self.line(format!("{} rows", table.len()));
        self.file(path, table.to_csv()?);
        Ok(())
    }

    pub fn commit(&self) -> Result<()> {
        for (path, bytes) in &self.files {
            std::fs::write(path, bytes).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(())
    }
}

/// Parses `args`, applies the thread override, runs, writes, prints.
/// Returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return 2;
    }
    match run(cli).and_then(|out| out.commit().map(|_| out)) {
        Ok(out) => {
            print!("{}", out.summary);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Error::domain(format!(
            "{THREADS_ENV}={raw} is not a positive thread count"
        ))
    })?;
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

pub fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Metrics(a) => cmd_metrics(&load_game(&a.input.game)?, a.input.tol, a.output),
        Command::Classify(a) => cmd_classify(&load_game(&a.game)?, a.tol),
        Command::Shapley(a) => cmd_shapley(
            &load_game(&a.input.game)?,
            a.input.tol,
            a.output.unwrap_or_else(|| "shapley.csv".into()),
        ),
        Command::Core(a) => cmd_core(
            &load_game(&a.input.game)?,
            a.input.tol,
            a.output.unwrap_or_else(|| "core.csv".into()),
        ),
        Command::ReduceTu(a) => cmd_reduce_tu(
            &load_game(&a.input.game)?,
            a.input.tol,
            a.output.unwrap_or_else(|| "reduced.game".into()),
        ),
        Command::Graph(a) => cmd_graph(
            &load_game(&a.input.game)?,
            a.input.tol,
            a.output.unwrap_or_else(|| "graph.edges".into()),
        ),
        Command::Cobb { command } => cmd_cobb(command),
        Command::Scenario(a) => {
            let path = a.output.unwrap_or_else(|| {
                let name = match a.name {
                    Scenario::Pd => "pd",
                    Scenario::Glove => "glove",
                    Scenario::Majority3 => "majority3",
                };
                format!("{name}.game").into()
            });
            cmd_scenario(a.name, a.tol, path)
        }
    }
}

/// The built-in document for `name`.
pub fn scenario_document(name: Scenario) -> GameDocument {
    let (players, game): (&[&str], LoadedGame) = match name {
        Scenario::Pd => (&["A", "B"], LoadedGame::St(scenarios::prisoners_dilemma())),
        Scenario::Glove => (&["L", "R1", "R2"], LoadedGame::Tu(scenarios::glove())),
        Scenario::Majority3 => (&["a", "b", "c"], LoadedGame::Tu(scenarios::majority3())),
    };
    GameDocument {
        players: players.iter().map(|s| s.to_string()).collect(),
        game,
    }
}

/// TU games embed with `u_A(S) = u(S)`, so every competitive contribution is zero.
fn tu_as_st(g: &TuGame) -> Result<StGame> {
    StGame::from_fn(g.players(), |_, s| g.value(s))
}

fn cobb_game(cd: &CobbDouglasSpec) -> Result<CobbDouglasGame> {
    let contributions = cd.contributions.clone().ok_or_else(|| {
        Error::domain("the cobb_douglas block needs `contributions` for this command")
    })?;
    let gamma = cd
        .gamma
        .ok_or_else(|| Error::domain("the cobb_douglas block needs `gamma` for this command"))?;
    CobbDouglasGame::new(
        cd.config.clone(),
        PayoffScheme::hybrid(gamma)?,
        contributions,
    )
}

fn with_subset_game<T>(
    doc: &GameDocument,
    f: impl FnOnce(&dyn SubsetUtility) -> Result<T>,
) -> Result<T> {
    match &doc.game {
        LoadedGame::St(g) => f(g),
        LoadedGame::Tu(g) => f(&tu_as_st(g)?),
        LoadedGame::Matrix(m) => f(m),
        LoadedGame::CobbDouglas(cd) => f(&cobb_game(cd)?),
    }
}

/// Cooperation-space table: `subset, complement, altruism, competitive, marginal, quadrant`.
pub fn cmd_metrics(doc: &GameDocument, tol: f64, output: PathBuf) -> Result<Output> {
    let points = with_subset_game(doc, |g| all_coop_points(g))?;
    let mut table = Table::new([
        "subset",
        "complement",
        "altruism",
        "competitive",
        "marginal",
        "quadrant",
    ]);
    let team = PlayerSet::full(doc.players.len());
    for p in &points {
        table.push(vec![
            doc.subset_label(p.subset),
            doc.subset_label(team.difference(p.subset)),
            num(p.altruism),
            num(p.competitive),
            num(p.marginal),
            p.quadrant(tol).to_string(),
        ])?;
    }
    let mut out = Output::default();
    let in_first = points
        .iter()
        .filter(|p| p.in_closed_first_quadrant(tol))
        .count();
    out.line(format!(
        "{} points, {in_first} in the closed first quadrant",
        points.len()
    ));
    out.table(output, &table)?;
    Ok(out)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn allocation_text(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| num(*v)).collect();
    format!("({})", parts.join(", "))
}

fn classify_subset_game(
    doc: &GameDocument,
    g: &dyn SubsetUtility,
    tol: f64,
    out: &mut Output,
) -> Result<()> {
    let sensible = is_sensible(g, tol)?;
    out.line(format!("sensible: {}", yes(sensible)));
    if let Some((a, b, c)) = sensibility_violation(g, tol)? {
        out.line(format!(
            "  c_{}({}) = {}",
            doc.subset_label(a),
            doc.subset_label(a.union(b)),
            num(c)
        ));
    }
    let full = is_fully_cooperative(g, tol)?;
    out.line(format!("fully-cooperative: {}", yes(full)));
    if let Some((a, b, v)) = cohesion_violation(g, g.team(), tol)? {
        out.line(format!(
            "  a_{}({}) = {}",
            doc.subset_label(a),
            doc.subset_label(a.union(b)),
            num(v)
        ));
    }
    if let LoadedGame::St(st) = &doc.game {
        let member = in_st_core(
            st.players(),
            st.outcomes(),
            st.consequence(),
            st.utilities(),
            tol,
        )?;
        out.line(format!("st-core: {}", yes(member)));
    }
    let additive = is_additive(g, tol)?;
    let coadditive = is_coadditive(g, tol)?;
    let structure = match (additive, coadditive) {
        (true, true) => "bi-additive",
        (true, false) => "additive",
        (false, true) => "co-additive",
        (false, false) => "none",
    };
    out.line(format!("structure: {structure}"));
    if additive && coadditive {
        let m = extract_matrix(g, tol)?;
        for (name, row) in doc.players.iter().zip(m.rows()) {
            out.line(format!("  {name}: {}", allocation_text(row)));
        }
    }
    match reduce_to_tu(g, tol)? {
        TuReduction::Reduced(_) => out.line("tu-reducible: yes"),
        TuReduction::Rejected { a, b, competitive } => out.line(format!(
            "tu-reducible: no (c_{}({}) = {})",
            doc.subset_label(a),
            doc.subset_label(a.union(b)),
            num(competitive)
        )),
    }
    Ok(())
}

fn classify_tu(g: &TuGame, tol: f64, out: &mut Output) -> Result<()> {
    out.line(format!("convex: {}", yes(is_convex(g, tol))));
    out.line(format!("superadditive: {}", yes(is_superadditive(g, tol))));
    let phi = shapley_value(g);
    out.line(format!("shapley: {}", allocation_text(phi.as_slice())));
    out.line(format!("shapley-in-core: {}", yes(in_core(g, &phi, tol)?)));
    if g.players() <= MAX_CORE_PLAYERS {
        match core_witness(g)? {
            Some(w) => out.line(format!(
                "core: nonempty, witness {}",
                allocation_text(w.allocation.as_slice())
            )),
            None => out.line("core: empty"),
        }
    }
    Ok(())
}

pub fn cmd_classify(doc: &GameDocument, tol: f64) -> Result<Output> {
    let mut out = Output::default();
    out.line(format!(
        "kind: {}, {} players ({})",
        doc.game.kind(),
        doc.players.len(),
        doc.players.join(", ")
    ));
    match &doc.game {
        LoadedGame::Tu(g) => {
            classify_tu(g, tol, &mut out)?;
            classify_subset_game(doc, &tu_as_st(g)?, tol, &mut out)?;
        }
        _ => with_subset_game(doc, |g| classify_subset_game(doc, g, tol, &mut out))?,
    }
    Ok(out)
}

fn tu_of(doc: &GameDocument, tol: f64) -> Result<TuGame> {
    let reduce = |g: &dyn SubsetUtility| match reduce_to_tu(g, tol)? {
        TuReduction::Reduced(t) => Ok(t),
        TuReduction::Rejected { a, b, competitive } => Err(Error::Structure {
            structure: "a TU game",
            detail: format!(
                "c_{}({}) = {}",
                doc.subset_label(a),
                doc.subset_label(a.union(b)),
                num(competitive)
            ),
        }),
    };
    match &doc.game {
        LoadedGame::Tu(g) => Ok(g.clone()),
        _ => with_subset_game(doc, reduce),
    }
}

/// `player, shapley`.
pub fn cmd_shapley(doc: &GameDocument, tol: f64, output: PathBuf) -> Result<Output> {
    let g = tu_of(doc, tol)?;
    let phi = shapley_value(&g);
    let mut table = Table::new(["player", "shapley"]);
    for (name, v) in doc.players.iter().zip(phi.as_slice()) {
        table.push(vec![name.clone(), num(*v)])?;
    }
    let mut out = Output::default();
    out.line(format!("shapley: {}", allocation_text(phi.as_slice())));
    out.table(output, &table)?;
    Ok(out)
}

/// `player, shapley, core_witness`; the witness column is empty when the core is.
pub fn cmd_core(doc: &GameDocument, tol: f64, output: PathBuf) -> Result<Output> {
    let g = tu_of(doc, tol)?;
    let phi = shapley_value(&g);
    let witness = core_witness(&g)?;
    let mut out = Output::default();
    match &witness {
        Some(w) => {
            out.line("core: nonempty");
            let exact: Vec<String> = w.exact.iter().map(|q| q.to_string()).collect();
            out.line(format!("witness: ({})", exact.join(", ")));
        }
        None => out.line("core: empty"),
    }
    out.line(format!("shapley-in-core: {}", yes(in_core(&g, &phi, tol)?)));
    let mut table = Table::new(["player", "shapley", "core_witness"]);
    for (i, name) in doc.players.iter().enumerate() {
        let w = witness
            .as_ref()
            .map_or(String::new(), |w| num(w.allocation.as_slice()[i]));
        table.push(vec![name.clone(), num(phi.as_slice()[i]), w])?;
    }
    out.table(output, &table)?;
    Ok(out)
}

pub fn cmd_reduce_tu(doc: &GameDocument, tol: f64, output: PathBuf) -> Result<Output> {
    let mut out = Output::default();
    let reduced = match &doc.game {
        LoadedGame::Tu(g) => TuReduction::Reduced(g.clone()),
        _ => with_subset_game(doc, |g| reduce_to_tu(g, tol))?,
    };
    match reduced {
        TuReduction::Reduced(g) => {
            out.line("reducible: yes");
            let tu = GameDocument {
                players: doc.players.clone(),
                game: LoadedGame::Tu(g),
            };
            out.file(output, to_document(&tu)?.into_bytes());
        }
        TuReduction::Rejected { a, b, competitive } => out.line(format!(
            "reducible: no, c_{}({}) = {}",
            doc.subset_label(a),
            doc.subset_label(a.union(b)),
            num(competitive)
        )),
    }
    Ok(out)
}

/// `src dst weight` lines, one per nonzero matrix entry.
pub fn cmd_graph(doc: &GameDocument, tol: f64, output: PathBuf) -> Result<Output> {
    let m = match &doc.game {
        LoadedGame::Matrix(m) => m.clone(),
        _ => with_subset_game(doc, |g| extract_matrix(g, tol))?,
    };
    let graph = export_graph(&m);
    let mut out = Output::default();
    out.line(format!(
        "{} vertices, {} edges",
        graph.vertices,
        graph.edges.len()
    ));
    out.file(output, graph.to_edge_list().into_bytes());
    Ok(out)
}

pub fn cmd_scenario(name: Scenario, tol: f64, output: PathBuf) -> Result<Output> {
    let doc = scenario_document(name);
    let mut out = Output::default();
    out.file(output, to_document(&doc)?.into_bytes());
    let report = cmd_classify(&doc, tol)?;
    out.summary.push_str(&report.summary);
    Ok(out)
}

/// Resolved Cobb-Douglas sweep parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct CobbSettings {
    pub theta: f64,
    pub value: ValueFunction,
    pub gammas: Vec<f64>,
    pub size_a: usize,
    pub size_b: usize,
    pub resolution: usize,
    pub tol: f64,
}

impl CobbSettings {
    fn beta_cell(&self) -> String {
        self.value.exponent().map_or(String::new(), num)
    }

    fn setting(&self) -> Result<TwoGroupSetting> {
        TwoGroupSetting::new(self.theta, self.value.clone(), self.size_a, self.size_b)
    }
}

/// Merges flags over an optional document; each override is reported.
pub fn resolve_cobb(args: &CobbArgs, out: &mut Output) -> Result<CobbSettings> {
    let cd = match &args.game {
        None => None,
        Some(path) => match load_game(path)?.game {
            LoadedGame::CobbDouglas(cd) => Some(cd),
            other => {
                return Err(Error::domain(format!(
                    "{} is a `{}` document, expected cobb-douglas",
                    path.display(),
                    other.kind()
                )))
            }
        },
    };
    let mut notice = |flag: &str, flag_value: String, doc_value: String| {
        out.line(format!(
            "notice: --{flag} {flag_value} overrides document value {doc_value}"
        ));
    };

    let theta = match (&cd, args.theta) {
        (Some(s), Some(t)) => {
            if t != s.config.theta {
                notice("theta", num(t), num(s.config.theta));
            }
            t
        }
        (Some(s), None) => s.config.theta,
        (None, t) => t.unwrap_or(DEFAULT_THETA),
    };

    let gammas = match (&cd, &args.gammas) {
        (Some(CobbDouglasSpec { gamma: Some(g), .. }), Some(list)) => {
            notice("gammas", list_text(&list.0), num(*g));
            list.0.clone()
        }
        (Some(CobbDouglasSpec { gamma: Some(g), .. }), None) => vec![*g],
        (_, Some(list)) => list.0.clone(),
        (_, None) => DEFAULT_GAMMAS.to_vec(),
    };

    let value = match (
        cd.as_ref().map(|s| &s.config.value),
        args.alpha,
        args.beta,
    ) {
        (None, alpha, beta) => {
            ValueFunction::power(alpha.unwrap_or(DEFAULT_ALPHA), beta.unwrap_or(DEFAULT_BETA))?
        }
        (Some(v), None, None) => v.clone(),
        (
            Some(ValueFunction::Power {
                alpha: da,
                beta: db,
            }),
            alpha,
            beta,
        ) => {
            if let Some(a) = alpha.filter(|a| a != da) {
                notice("alpha", num(a), num(*da));
            }
            if let Some(b) = beta.filter(|b| b != db) {
                notice("beta", num(b), num(*db));
            }
            ValueFunction::power(alpha.unwrap_or(*da), beta.unwrap_or(*db))?
        }
        (Some(ValueFunction::Tabulated(_)), alpha, beta) => {
            let given = [
                alpha.map(|a| format!("alpha {}", num(a))),
                beta.map(|b| format!("beta {}", num(b))),
            ];
            out.line(format!(
                "notice: power value function ({}) overrides the document's value_table",
                given.into_iter().flatten().collect::<Vec<_>>().join(", ")
            ));
            ValueFunction::power(alpha.unwrap_or(DEFAULT_ALPHA), beta.unwrap_or(DEFAULT_BETA))?
        }
    };

    if gammas.is_empty() {
        return Err(Error::domain("at least one gamma is required"));
    }
    Ok(CobbSettings {
        theta,
        value,
        gammas,
        size_a: args.size_a as usize,
        size_b: args.size_b as usize,
        resolution: args.resolution,
        tol: args.tol,
    })
}

fn list_text(xs: &[f64]) -> String {
    xs.iter().map(|x| num(*x)).collect::<Vec<_>>().join(",")
}

fn unit_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| k as f64 / (points - 1) as f64)
        .collect()
}

const SETTING_COLUMNS: [&str; 5] = ["gamma", "theta", "beta", "sizeA", "sizeB"];

fn setting_cells(s: &CobbSettings, gamma: f64) -> Vec<String> {
    vec![
        num(gamma),
        num(s.theta),
        s.beta_cell(),
        s.size_a.to_string(),
        s.size_b.to_string(),
    ]
}

fn table_with(extra: &[&str]) -> Table {
    Table::new(SETTING_COLUMNS.iter().chain(extra).copied())
}

pub fn cobb_sweep_table(s: &CobbSettings) -> Result<Table> {
    let xs = unit_grid(s.resolution);
    let cells = payoff_grid(&s.setting()?, &s.gammas, &xs, &xs, s.tol)?;
    let mut t = table_with(&[
        "xA_avg",
        "xB_avg",
        "payoff",
        "payoff_b",
        "total_value",
        "utility",
        "altruism",
        "competitive",
        "marginal",
        "quadrant",
    ]);
    for c in cells {
        let mut row = setting_cells(s, c.gamma);
        row.extend([
            num(c.xa_avg),
            num(c.xb_avg),
            num(c.payoff),
            num(c.payoff_b),
            num(c.total_value),
            num(c.utility),
            num(c.point.altruism),
            num(c.point.competitive),
            num(c.point.marginal),
            c.quadrant.to_string(),
        ]);
        t.push(row)?;
    }
    Ok(t)
}

pub fn cobb_path_table(s: &CobbSettings) -> Result<Table> {
    let setting = s.setting()?;
    let mut t = table_with(&[
        "xA_avg",
        "xB_avg",
        "payoff",
        "utility",
        "altruism",
        "competitive",
        "marginal",
        "quadrant",
    ]);
    for &gamma in &s.gammas {
        for p in cooperation_path(&setting, PayoffScheme::hybrid(gamma)?, s.resolution, s.tol)? {
            let mut row = setting_cells(s, gamma);
            row.extend([
                num(p.xa_avg),
                num(p.xb_avg),
                num(p.payoff),
                num(p.utility),
                num(p.point.altruism),
                num(p.point.competitive),
                num(p.point.marginal),
                p.quadrant.to_string(),
            ]);
            t.push(row)?;
        }
    }
    Ok(t)
}

pub fn cobb_rational_table(s: &CobbSettings) -> Result<Table> {
    let cells = rational_grid(&s.setting()?, &s.gammas, &unit_grid(s.resolution), s.tol)?;
    let mut t = table_with(&[
        "xB_avg",
        "xA_rational",
        "utility",
        "zero_altruism_xA",
        "altruism",
        "cohesive",
    ]);
    for c in cells {
        let mut row = setting_cells(s, c.gamma);
        row.extend([
            num(c.xb_avg),
            num(c.xa_rational),
            num(c.utility),
            c.zero_altruism_xa.map_or(String::new(), num),
            num(c.altruism),
            c.cohesive.to_string(),
        ]);
        t.push(row)?;
    }
    Ok(t)
}

/// Ratios `k / (resolution − 1)` for `k ≥ 1`, so `r = 0` is skipped.
pub fn cobb_frontier_table(s: &CobbSettings) -> Result<Table> {
    let beta = s
        .value
        .exponent()
        .ok_or_else(|| Error::domain("the team-size frontier needs a power value function"))?;
    let ratios: Vec<f64> = unit_grid(s.resolution).into_iter().skip(1).collect();
    let mut t = Table::new(["gamma", "ratio", "beta", "bound", "max_team_size"]);
    for c in frontier_grid(&s.gammas, &ratios, beta)? {
        t.push(vec![
            num(c.gamma),
            num(c.ratio),
            num(c.beta),
            c.bound.map_or(String::new(), num),
            c.size.to_string(),
        ])?;
    }
    Ok(t)
}

/// Schemes swept by `cobb check`.
pub fn check_schemes() -> [PayoffScheme; 5] {
    [
        PayoffScheme::Proportional,
        PayoffScheme::Equal,
        PayoffScheme::Hybrid(0.25),
        PayoffScheme::Hybrid(0.5),
        PayoffScheme::Hybrid(0.75),
    ]
}

/// One Monte Carlo sample of the sensibility and factorization checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckSample {
    pub players: usize,
    pub a: PlayerSet,
    pub b: PlayerSet,
    pub competitive: f64,
    /// `a_A(A∪B)`; zero when `B` is empty.
    pub altruism: f64,
    /// `f_B(A∪B) − f_B(B)`; zero when `B` is empty.
    pub margin: f64,
    pub reserve_b: f64,
}

impl CheckSample {
    pub fn sensible(&self, tol: f64) -> bool {
        self.competitive >= -tol
    }

    /// Signs of altruism and margin agree, checked only where `x̂_B > 0`.
    /// Values within `tol` of zero count as either sign.
    pub fn signs_agree(&self, tol: f64) -> bool {
        if self.b.is_empty() || self.reserve_b <= 0.0 {
            return true;
        }
        let sign = |x: f64| {
            if x > tol {
                1
            } else if x < -tol {
                -1
            } else {
                0
            }
        };
        let (s1, s2) = (sign(self.altruism), sign(self.margin));
        s1 == s2 || s1 == 0 || s2 == 0
    }
}

/// `samples` seeded configurations per scheme. Each scheme draws from its own
/// stream derived from `seed`, so results do not depend on scheduling.
pub fn cobb_check_samples(
    seed: u64,
    samples: u64,
) -> Result<Vec<(PayoffScheme, Vec<CheckSample>)>> {
    check_schemes()
        .into_par_iter()
        .enumerate()
        .map(|(k, scheme)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let rows = (0..samples)
                .map(|_| {
                    let inst = random_instance(&mut rng, scheme)?;
                    let (g, a, b) = (&inst.game, inst.a, inst.b);
                    let (altruism, margin) = if b.is_empty() {
                        (0.0, 0.0)
                    } else {
                        (
                            altruistic_contribution(g, a, b)?,
                            cd_cooperation_margin(g, a, b)?,
                        )
                    };
                    Ok(CheckSample {
                        players: g.players(),
                        a,
                        b,
                        competitive: cd_sensibility_check(g, a, b)?,
                        altruism,
                        margin,
                        reserve_b: g.reserve(b),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((scheme, rows))
        })
        .collect()
}

pub fn cmd_cobb_check(args: &CheckArgs) -> Result<Output> {
    let results = cobb_check_samples(args.seed, args.samples)?;
    let mut t = Table::new([
        "scheme",
        "sample",
        "players",
        "A",
        "B",
        "competitive",
        "altruism",
        "margin",
        "sensible",
        "signs_agree",
    ]);
    let mut out = Output::default();
    let mut failures = 0usize;
    for (scheme, rows) in &results {
        let min_c = rows
            .iter()
            .map(|r| r.competitive)
            .fold(f64::INFINITY, f64::min);
        let insensible = rows.iter().filter(|r| !r.sensible(args.tol)).count();
        let disagree = rows.iter().filter(|r| !r.signs_agree(args.tol)).count();
        failures += insensible + disagree;
        out.line(format!(
            "{}: min competitive {}, {insensible} insensible, {disagree} sign disagreements",
            scheme.label(),
            num(min_c)
        ));
        for (i, r) in rows.iter().enumerate() {
            t.push(vec![
                scheme.label(),
                i.to_string(),
                r.players.to_string(),
                r.a.to_string(),
                r.b.to_string(),
                num(r.competitive),
                num(r.altruism),
                num(r.margin),
                r.sensible(args.tol).to_string(),
                r.signs_agree(args.tol).to_string(),
            ])?;
        }
    }
    out.line(format!("seed {}: {failures} violations", args.seed));
    out.table(args.output.clone(), &t)?;
    Ok(out)
}

fn default_path(output: &Option<PathBuf>, name: &str) -> PathBuf {
    output
        .clone()
        .unwrap_or_else(|| Path::new(name).to_path_buf())
}

type TableBuilder = fn(&CobbSettings) -> Result<Table>;

pub fn cmd_cobb(command: CobbCommand) -> Result<Output> {
    let mut out = Output::default();
    let (args, build, name): (CobbArgs, TableBuilder, &str) = match command {
        CobbCommand::Check(a) => return cmd_cobb_check(&a),
        CobbCommand::Sweep(a) => (a, cobb_sweep_table, "cobb_sweep.csv"),
        CobbCommand::Path(a) => (a, cobb_path_table, "cobb_path.csv"),
        CobbCommand::Frontier(a) => (a, cobb_frontier_table, "cobb_frontier.csv"),
        CobbCommand::Rational(a) => (a, cobb_rational_table, "cobb_rational.csv"),
    };
    let settings = resolve_cobb(&args, &mut out)?;
    let table = build(&settings)?;
    out.table(default_path(&args.output, name), &table)?;
    Ok(out)
}
