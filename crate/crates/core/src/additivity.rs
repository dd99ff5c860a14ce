//! Additive structure in subset utilities.
//!
//! * additive: `u_A(S) = Σ_{a∈A} u_a(S)` for all `A ⊆ S`
//! * co-additive: `u_A(S) = Σ_{b∈S} u_A({b})` for all `A ⊆ S`
//! * bi-additive: both, so `u_A(S) = Σ_{a∈A, b∈S} M[a][b]` with `M[a][b] = u_a({b})`
//!
//! Each structure gives closed forms for the contribution metrics, which the
//! `*_fast_metrics` functions evaluate without touching the generic machinery.
//!
//! # Graph orientation
//!
//! [`export_graph`] puts weight `M[y][x]` on the edge `x → y`: the value `x`
//! provides as perceived by `y`. With this orientation the altruism of `A` is
//! the total weight of edges leaving `A`, and the competitive contribution of
//! `A` within `A∪B` is the total weight of edges ending in `A` whose source
//! lies in `A∪B`.

use std::fmt::Write as _;
use std::io;

use crate::error::{Error, Result};
use crate::player_set::PlayerSet;
use crate::st_game::{is_fully_cooperative, is_sensible, StGame, SubsetUtility, MAX_PAIR_PLAYERS};

/// Closed-form metrics for one `(A, B)` pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FastMetrics {
    pub altruism: f64,
    pub competitive: f64,
    pub marginal: f64,
}

fn check_size<G: SubsetUtility + ?Sized>(g: &G) -> Result<()> {
    if g.players() > MAX_PAIR_PLAYERS {
        return Err(Error::TooLarge {
            what: "additivity detection",
            n: g.players(),
            max: MAX_PAIR_PLAYERS,
        });
    }
    Ok(())
}

/// First `(A, S)` with `A ⊆ S` violating additivity.
pub fn additivity_violation<G: SubsetUtility + ?Sized>(
    g: &G,
    tol: f64,
) -> Option<(PlayerSet, PlayerSet)> {
    let team = g.team();
    team.nonempty_subsets().find_map(|s| {
        s.nonempty_subsets()
            .filter(|a| a.len() > 1)
            .find(|&a| {
                let sum: f64 = a
                    .players()
                    .map(|p| g.utility(PlayerSet::singleton(p), s))
                    .sum();
                (g.utility(a, s) - sum).abs() > tol
            })
            .map(|a| (a, s))
    })
}

/// First `(A, S)` with `A ⊆ S` violating co-additivity; an undefined `u_A({b})`
/// counts as a violation.
pub fn coadditivity_violation<G: SubsetUtility + ?Sized>(
    g: &G,
    tol: f64,
) -> Option<(PlayerSet, PlayerSet)> {
    let team = g.team();
    team.nonempty_subsets().find_map(|s| {
        s.nonempty_subsets()
            .find(|&a| {
                let sum: Option<f64> = s
                    .players()
                    .map(|b| g.try_utility(a, PlayerSet::singleton(b)))
                    .sum();
                match sum {
                    Some(sum) => (g.utility(a, s) - sum).abs() > tol,
                    None => true,
                }
            })
            .map(|a| (a, s))
    })
}

pub fn is_additive<G: SubsetUtility + ?Sized>(g: &G, tol: f64) -> Result<bool> {
    check_size(g)?;
    Ok(additivity_violation(g, tol).is_none())
}

pub fn is_coadditive<G: SubsetUtility + ?Sized>(g: &G, tol: f64) -> Result<bool> {
    check_size(g)?;
    Ok(coadditivity_violation(g, tol).is_none())
}

pub fn is_biadditive<G: SubsetUtility + ?Sized>(g: &G, tol: f64) -> Result<bool> {
    Ok(is_additive(g, tol)? && is_coadditive(g, tol)?)
}

/// Perception matrix of a bi-additive game: `get(a, b)` is `u_a({b})`, the
/// value of `b` to the team as perceived by `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiAdditiveMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl BiAdditiveMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || n > crate::player_set::MAX_PLAYERS {
            return Err(Error::InvalidTeamSize(n));
        }
        if entries.len() != n * n {
            return Err(Error::TableLength {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(BiAdditiveMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("perception matrix must be square"));
        }
        BiAdditiveMatrix::new(n, rows.concat())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        BiAdditiveMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, assessor: usize, member: usize) -> f64 {
        self.entries[assessor * self.n + member]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.n)
    }

    /// `Σ_{a∈A, b∈S} M[a][b]`.
    pub fn block_sum(&self, assessors: PlayerSet, members: PlayerSet) -> f64 {
        assessors
            .players()
            .map(|a| members.players().map(|b| self.get(a, b)).sum::<f64>())
            .sum()
    }

    /// Tabulated game with one outcome per coalition and every `u_A(S)` stored.
    pub fn to_game(&self) -> Result<StGame> {
        StGame::from_fn(self.n, |a, s| self.block_sum(a, s))
    }
}

impl SubsetUtility for BiAdditiveMatrix {
    fn players(&self) -> usize {
        self.n
    }

    fn utility(&self, assessor: PlayerSet, coalition: PlayerSet) -> f64 {
        self.block_sum(assessor, coalition)
    }

    fn try_utility(&self, assessor: PlayerSet, coalition: PlayerSet) -> Option<f64> {
        Some(self.block_sum(assessor, coalition))
    }
}

/// Reads `M[a][b] = u_a({b})` from a bi-additive game.
pub fn extract_matrix<G: SubsetUtility + ?Sized>(g: &G, tol: f64) -> Result<BiAdditiveMatrix> {
    check_size(g)?;
    if let Some((a, s)) = additivity_violation(g, tol) {
        return Err(Error::Structure {
            structure: "bi-additive",
            detail: format!("additivity fails for assessor {a} in coalition {s}"),
        });
    }
    let n = g.players();
    let mut entries = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let v = g
                .try_utility(PlayerSet::singleton(a), PlayerSet::singleton(b))
                .ok_or_else(|| Error::Structure {
                    structure: "bi-additive",
                    detail: format!("singleton assessment u_{a}({{{b}}}) is not tabulated"),
                })?;
            entries.push(v);
        }
    }
    if let Some((a, s)) = coadditivity_violation(g, tol) {
        return Err(Error::Structure {
            structure: "bi-additive",
            detail: format!("co-additivity fails for assessor {a} in coalition {s}"),
        });
    }
    BiAdditiveMatrix::new(n, entries)
}

fn check_disjoint(a: PlayerSet, b: PlayerSet) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySet("contributing subset A"));
    }
    if !a.is_disjoint(b) {
        return Err(Error::Overlap { a, b });
    }
    Ok(())
}

/// Bi-additive closed forms: `c = Σ_{a∈A, x∈A∪B} M[a][x]`, `a = Σ_{b∈B, x∈A} M[b][x]`.
pub fn fast_metrics(m: &BiAdditiveMatrix, a: PlayerSet, b: PlayerSet) -> Result<FastMetrics> {
    check_disjoint(a, b)?;
    let competitive = m.block_sum(a, a.union(b));
    let altruism = m.block_sum(b, a);
    Ok(FastMetrics {
        altruism,
        competitive,
        marginal: altruism + competitive,
    })
}

/// Additive closed forms: `c = Σ_{a∈A} u_a(A∪B)`, `a = Σ_{b∈B} (u_b(A∪B) − u_b(B))`.
pub fn additive_fast_metrics<G: SubsetUtility + ?Sized>(
    g: &G,
    a: PlayerSet,
    b: PlayerSet,
) -> Result<FastMetrics> {
    check_disjoint(a, b)?;
    let s = a.union(b);
    let single = |p: usize, c: PlayerSet| g.utility(PlayerSet::singleton(p), c);
    let competitive = a.players().map(|p| single(p, s)).sum::<f64>();
    let altruism = b
        .players()
        .map(|p| single(p, s) - single(p, b))
        .sum::<f64>();
    Ok(FastMetrics {
        altruism,
        competitive,
        marginal: altruism + competitive,
    })
}

/// Co-additive closed forms: `a = Σ_{x∈A} u_B({x})`,
/// `c = Σ_{x∈A∪B} (u_{A∪B}({x}) − u_B({x}))`.
///
/// Requires the off-coalition singleton assessments; fails if one is missing.
pub fn coadditive_fast_metrics<G: SubsetUtility + ?Sized>(
    g: &G,
    a: PlayerSet,
    b: PlayerSet,
) -> Result<FastMetrics> {
    check_disjoint(a, b)?;
    let s = a.union(b);
    let lookup = |assessor: PlayerSet, x: usize| {
        g.try_utility(assessor, PlayerSet::singleton(x))
            .ok_or_else(|| Error::Structure {
                structure: "co-additive",
                detail: format!("u_{assessor}({{{x}}}) is not tabulated"),
            })
    };
    let mut altruism = 0.0;
    if !b.is_empty() {
        for x in a.players() {
            altruism += lookup(b, x)?;
        }
    }
    let mut competitive = 0.0;
    for x in s.players() {
        competitive += lookup(s, x)? - lookup(b, x)?;
    }
    Ok(FastMetrics {
        altruism,
        competitive,
        marginal: altruism + competitive,
    })
}

/// Predicates read off an additive or co-additive structure next to the
/// generic predicates they characterize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredicateReport {
    /// Structural sensibility condition.
    pub sensible: bool,
    /// Structural full-cooperation condition.
    pub fully_cooperative: bool,
    /// Generic `is_sensible`.
    pub generic_sensible: bool,
    /// Generic `is_fully_cooperative`.
    pub generic_fully_cooperative: bool,
}

impl PredicateReport {
    pub fn agrees(&self) -> bool {
        self.sensible == self.generic_sensible
            && self.fully_cooperative == self.generic_fully_cooperative
    }
}

/// For additive games:
/// * sensible ⇔ `u_a(S) ≥ 0` for every `a ∈ S`
/// * fully cooperative ⇐ `u_b(A∪B) ≥ u_b(B)` for every `b ∈ B` and disjoint `A`, `B`
///
/// The second condition is player-wise. Full cooperation only needs the sum
/// over `b ∈ B` to be nonnegative, so the player-wise form is sufficient but
/// not necessary once `|B| ≥ 2`. `fully_cooperative` reports the player-wise form.
pub fn additive_predicates<G: SubsetUtility + ?Sized>(g: &G, tol: f64) -> Result<PredicateReport> {
    if !is_additive(g, tol)? {
        return Err(Error::Structure {
            structure: "additive",
            detail: format!("{:?}", additivity_violation(g, tol)),
        });
    }
    let team = g.team();
    let single = |p: usize, c: PlayerSet| g.utility(PlayerSet::singleton(p), c);
    let sensible = team
        .nonempty_subsets()
        .all(|s| s.players().all(|p| single(p, s) >= -tol));
    let fully_cooperative = team.nonempty_subsets().all(|b| {
        team.difference(b).nonempty_subsets().all(|a| {
            b.players()
                .all(|p| single(p, a.union(b)) - single(p, b) >= -tol)
        })
    });
    Ok(PredicateReport {
        sensible,
        fully_cooperative,
        generic_sensible: is_sensible(g, tol)?,
        generic_fully_cooperative: is_fully_cooperative(g, tol)?,
    })
}

/// For co-additive games:
/// * fully cooperative ⇔ `u_B({a}) ≥ 0` for every nonempty `B` and `a ∉ B`
/// * sensible ⇐ `u_{A∪B}({b}) ≥ u_B({b})` for every `b ∈ A∪B` and disjoint `A`, `B`
///
/// As with [`additive_predicates`], the term-wise sensibility condition is
/// sufficient; sensibility itself constrains only the sum over `b`.
pub fn coadditive_predicates<G: SubsetUtility + ?Sized>(
    g: &G,
    tol: f64,
) -> Result<PredicateReport> {
    if !is_coadditive(g, tol)? {
        return Err(Error::Structure {
            structure: "co-additive",
            detail: format!("{:?}", coadditivity_violation(g, tol)),
        });
    }
    let team = g.team();
    let view = |assessor: PlayerSet, x: usize| {
        g.try_utility(assessor, PlayerSet::singleton(x))
            .expect("co-additive games define every singleton assessment")
    };
    let fully_cooperative = team
        .nonempty_subsets()
        .all(|b| team.difference(b).players().all(|x| view(b, x) >= -tol));
    let sensible = team.nonempty_subsets().all(|a| {
        team.difference(a).subsets().all(|b| {
            let s = a.union(b);
            s.players().all(|x| {
                let base = if b.is_empty() { 0.0 } else { view(b, x) };
                view(s, x) - base >= -tol
            })
        })
    });
    Ok(PredicateReport {
        sensible,
        fully_cooperative,
        generic_sensible: is_sensible(g, tol)?,
        generic_fully_cooperative: is_fully_cooperative(g, tol)?,
    })
}

/// A directed weighted edge `source → target`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// Players as vertices; edge `x → y` carries `M[y][x]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerceptionGraph {
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

impl PerceptionGraph {
    /// Total weight of edges leaving `a`.
    pub fn outgoing_weight(&self, a: PlayerSet) -> f64 {
        self.edges
            .iter()
            .filter(|e| a.contains(e.source) && !a.contains(e.target))
            .map(|e| e.weight)
            .sum()
    }

    /// Total weight of edges ending in `a` whose source lies in `within`.
    pub fn incoming_weight(&self, a: PlayerSet, within: PlayerSet) -> f64 {
        self.edges
            .iter()
            .filter(|e| a.contains(e.target) && within.contains(e.source))
            .map(|e| e.weight)
            .sum()
    }

    /// `src dst weight` lines, zero-indexed vertices.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.source, e.target, e.weight).unwrap();
        }
        out
    }

    pub fn write_edge_list<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.to_edge_list().as_bytes())
    }

    pub fn parse_edge_list(text: &str, vertices: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::load(format!("line {}", lineno + 1), msg.to_string());
            let mut parts = line.split_whitespace();
            let mut next = || parts.next().ok_or_else(|| bad("expected `src dst weight`"));
            let source: usize = next()?.parse().map_err(|_| bad("bad source vertex"))?;
            let target: usize = next()?.parse().map_err(|_| bad("bad target vertex"))?;
            let weight: f64 = next()?.parse().map_err(|_| bad("bad weight"))?;
            if source >= vertices || target >= vertices {
                return Err(bad("vertex out of range"));
            }
            edges.push(Edge {
                source,
                target,
                weight,
            });
        }
        Ok(PerceptionGraph { vertices, edges })
    }
}

/// Every nonzero matrix entry becomes an edge, ordered by `(source, target)`.
pub fn export_graph(m: &BiAdditiveMatrix) -> PerceptionGraph {
    let n = m.size();
    let mut edges = Vec::new();
    for source in 0..n {
        for target in 0..n {
            let weight = m.get(target, source);
            if weight != 0.0 {
                edges.push(Edge {
                    source,
                    target,
                    weight,
                });
            }
        }
    }
    PerceptionGraph { vertices: n, edges }
}
