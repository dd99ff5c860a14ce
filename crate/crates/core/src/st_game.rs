//! Subset team games.
//!
//! Every subset `A` of the team has its own assessment `u_A` of an outcome,
//! and coalition `S` produces outcome `V(S)`. The subset utility is
//! `u_A(S) = u_A(V(S))`. The empty assessor values everything at zero and
//! `V(∅)` is a null outcome.
//!
//! The contribution metrics of a set `A` joining a disjoint set `B` are
//!
//! ```text
//! m_A(A∪B) = u_{A∪B}(A∪B) − u_B(B)        total marginal
//! c_A(A∪B) = u_{A∪B}(A∪B) − u_B(A∪B)      competitive (same outcome, two assessors)
//! a_A(A∪B) = u_B(A∪B)     − u_B(B)        altruistic  (same assessor, two outcomes)
//! ```
//!
//! so that `m = c + a`. The pair `(a_A, c_A)` with `B = T∖A` is the subset's
//! point in cooperation space.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game_core::{TuGame, MAX_EXHAUSTIVE_PLAYERS};
use crate::player_set::PlayerSet;

/// Largest team for predicates that quantify over all disjoint pairs.
pub const MAX_PAIR_PLAYERS: usize = 16;

/// A family of subset utilities `u_A(S)`.
pub trait SubsetUtility: Sync {
    fn players(&self) -> usize;

    /// `u_A(S)` for a nonempty assessor `A ⊆ S`.
    fn utility(&self, assessor: PlayerSet, coalition: PlayerSet) -> f64;

    /// `u_A(S)` for any pair, or `None` where the game does not define it.
    fn try_utility(&self, assessor: PlayerSet, coalition: PlayerSet) -> Option<f64> {
        if assessor.is_empty() {
            Some(0.0)
        } else if assessor.is_subset(coalition) {
            Some(self.utility(assessor, coalition))
        } else {
            None
        }
    }

    fn team(&self) -> PlayerSet {
        PlayerSet::full(self.players())
    }
}

/// `u_A(S)` with the empty-assessor convention.
fn assess<G: SubsetUtility + ?Sized>(g: &G, assessor: PlayerSet, coalition: PlayerSet) -> f64 {
    if assessor.is_empty() {
        0.0
    } else {
        g.utility(assessor, coalition)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeId(pub u32);

impl OutcomeId {
    /// `V(∅)`.
    pub const NULL: OutcomeId = OutcomeId(u32::MAX);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The consequence function `V`, one outcome per coalition mask.
#[derive(Clone, Debug, PartialEq)]
pub struct Consequence(Vec<OutcomeId>);

impl Consequence {
    /// Every nonempty coalition starts unassigned (`NULL`).
    pub fn unassigned(n: usize) -> Self {
        Consequence(vec![OutcomeId::NULL; 1usize << n])
    }

    pub fn set(&mut self, coalition: PlayerSet, outcome: OutcomeId) {
        if !coalition.is_empty() {
            self.0[coalition.index()] = outcome;
        }
    }

    pub fn get(&self, coalition: PlayerSet) -> OutcomeId {
        self.0[coalition.index()]
    }

    fn len(&self) -> usize {
        self.0.len()
    }
}

/// Sparse table of assessments keyed by `(assessor, outcome)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UtilityTable(BTreeMap<(PlayerSet, OutcomeId), f64>);

impl UtilityTable {
    pub fn new() -> Self {
        UtilityTable::default()
    }

    /// Inserts an entry, rejecting duplicates.
    pub fn insert(&mut self, assessor: PlayerSet, outcome: OutcomeId, value: f64) -> Result<()> {
        if assessor.is_empty() {
            return Err(Error::domain("the empty assessor is fixed at zero"));
        }
        if self.0.insert((assessor, outcome), value).is_some() {
            return Err(Error::domain(format!(
                "duplicate utility for assessor {assessor} on outcome {}",
                outcome.0
            )));
        }
        Ok(())
    }

    pub fn get(&self, assessor: PlayerSet, outcome: OutcomeId) -> Option<f64> {
        self.0.get(&(assessor, outcome)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PlayerSet, OutcomeId, f64)> + '_ {
        self.0.iter().map(|(&(a, x), &v)| (a, x, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A tabulated subset team game.
#[derive(Clone, Debug, PartialEq)]
pub struct StGame {
    n: usize,
    outcomes: Vec<String>,
    consequence: Consequence,
    utilities: UtilityTable,
}

impl StGame {
    /// Validates that `V` covers every nonempty coalition and that every
    /// `u_A(V(S))` with `A ⊆ S` is tabulated.
    pub fn new(
        n: usize,
        outcomes: Vec<String>,
        consequence: Consequence,
        utilities: UtilityTable,
    ) -> Result<Self> {
        if n == 0 || n > MAX_EXHAUSTIVE_PLAYERS {
            return Err(Error::InvalidTeamSize(n));
        }
        if consequence.len() != 1usize << n {
            return Err(Error::TableLength {
                expected: 1usize << n,
                got: consequence.len(),
            });
        }
        let team = PlayerSet::full(n);
        for s in team.nonempty_subsets() {
            let x = consequence.get(s);
            if x == OutcomeId::NULL {
                return Err(Error::MissingConsequence(s));
            }
            if x.index() >= outcomes.len() {
                return Err(Error::domain(format!(
                    "coalition {s} maps to undeclared outcome {}",
                    x.0
                )));
            }
        }
        for (a, x, v) in utilities.iter() {
            if !a.fits(n) {
                return Err(Error::OutOfTeam { set: a, n });
            }
            if x.index() >= outcomes.len() {
                return Err(Error::domain(format!(
                    "utility refers to undeclared outcome {}",
                    x.0
                )));
            }
            if !v.is_finite() {
                return Err(Error::domain(format!(
                    "non-finite utility {v} for assessor {a}"
                )));
            }
        }
        for s in team.nonempty_subsets() {
            let x = consequence.get(s);
            for a in s.nonempty_subsets() {
                if utilities.get(a, x).is_none() {
                    return Err(Error::MissingUtility {
                        assessor: a,
                        outcome: outcomes[x.index()].clone(),
                    });
                }
            }
        }
        Ok(StGame {
            n,
            outcomes,
            consequence,
            utilities,
        })
    }

    /// One distinct outcome per coalition, with `u_A(S) = f(A, S)` tabulated
    /// for every nonempty `A` and `S` (including `A ⊄ S`).
    pub fn from_fn(n: usize, mut f: impl FnMut(PlayerSet, PlayerSet) -> f64) -> Result<Self> {
        if n == 0 || n > MAX_EXHAUSTIVE_PLAYERS {
            return Err(Error::InvalidTeamSize(n));
        }
        let team = PlayerSet::full(n);
        let mut outcomes = Vec::with_capacity((1 << n) - 1);
        let mut consequence = Consequence::unassigned(n);
        let mut utilities = UtilityTable::new();
        for s in team.nonempty_subsets() {
            let x = OutcomeId(outcomes.len() as u32);
            outcomes.push(format!("V{s}"));
            consequence.set(s, x);
            for a in team.nonempty_subsets() {
                utilities.insert(a, x, f(a, s))?;
            }
        }
        StGame::new(n, outcomes, consequence, utilities)
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn consequence(&self) -> &Consequence {
        &self.consequence
    }

    pub fn utilities(&self) -> &UtilityTable {
        &self.utilities
    }

    /// `u_A(x)` for an outcome directly.
    pub fn assessment(&self, assessor: PlayerSet, outcome: OutcomeId) -> Option<f64> {
        if assessor.is_empty() {
            return Some(0.0);
        }
        self.utilities.get(assessor, outcome)
    }
}

impl SubsetUtility for StGame {
    fn players(&self) -> usize {
        self.n
    }

    fn utility(&self, assessor: PlayerSet, coalition: PlayerSet) -> f64 {
        self.try_utility(assessor, coalition)
            .unwrap_or_else(|| panic!("u_{assessor}({coalition}) is not tabulated"))
    }

    fn try_utility(&self, assessor: PlayerSet, coalition: PlayerSet) -> Option<f64> {
        if assessor.is_empty() {
            return Some(0.0);
        }
        if coalition.is_empty() {
            return None;
        }
        self.utilities
            .get(assessor, self.consequence.get(coalition))
    }
}

fn check_pair<G: SubsetUtility + ?Sized>(g: &G, a: PlayerSet, b: PlayerSet) -> Result<()> {
    let n = g.players();
    for s in [a, b] {
        if !s.fits(n) {
            return Err(Error::OutOfTeam { set: s, n });
        }
    }
    if a.is_empty() {
        return Err(Error::EmptySet("contributing subset A"));
    }
    if !a.is_disjoint(b) {
        return Err(Error::Overlap { a, b });
    }
    Ok(())
}

/// `m_A(A∪B) = u_{A∪B}(A∪B) − u_B(B)`.
pub fn total_marginal<G: SubsetUtility + ?Sized>(g: &G, a: PlayerSet, b: PlayerSet) -> Result<f64> {
    check_pair(g, a, b)?;
    let s = a.union(b);
    Ok(assess(g, s, s) - assess(g, b, b))
}

/// `c_A(A∪B) = u_{A∪B}(A∪B) − u_B(A∪B)`.
pub fn competitive_contribution<G: SubsetUtility + ?Sized>(
    g: &G,
    a: PlayerSet,
    b: PlayerSet,
) -> Result<f64> {
    check_pair(g, a, b)?;
    let s = a.union(b);
    Ok(assess(g, s, s) - assess(g, b, s))
}

/// `a_A(A∪B) = u_B(A∪B) − u_B(B)`; `B` must be nonempty.
pub fn altruistic_contribution<G: SubsetUtility + ?Sized>(
    g: &G,
    a: PlayerSet,
    b: PlayerSet,
) -> Result<f64> {
    check_pair(g, a, b)?;
    if b.is_empty() {
        return Err(Error::EmptySet("receiving subset B"));
    }
    Ok(g.utility(b, a.union(b)) - g.utility(b, b))
}

/// Position of a point in cooperation space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quadrant {
    I,
    II,
    III,
    IV,
    /// On the altruism axis (`c ≈ 0`, `a ≠ 0`).
    AxisA,
    /// On the competitive axis (`a ≈ 0`, `c ≠ 0`).
    AxisC,
    Origin,
}

impl Quadrant {
    /// Open quadrants with a symmetric `±tol` band around each axis.
    pub fn classify(altruism: f64, competitive: f64, tol: f64) -> Quadrant {
        let a_zero = altruism.abs() <= tol;
        let c_zero = competitive.abs() <= tol;
        match (a_zero, c_zero) {
            (true, true) => Quadrant::Origin,
            (false, true) => Quadrant::AxisA,
            (true, false) => Quadrant::AxisC,
            (false, false) => match (altruism > 0.0, competitive > 0.0) {
                (true, true) => Quadrant::I,
                (false, true) => Quadrant::II,
                (false, false) => Quadrant::III,
                (true, false) => Quadrant::IV,
            },
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Quadrant::I => "I",
            Quadrant::II => "II",
            Quadrant::III => "III",
            Quadrant::IV => "IV",
            Quadrant::AxisA => "axis-a",
            Quadrant::AxisC => "axis-c",
            Quadrant::Origin => "origin",
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The metrics of `subset` joining the rest of the team.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoopPoint {
    pub subset: PlayerSet,
    pub altruism: f64,
    pub competitive: f64,
    pub marginal: f64,
    /// `subset` is the whole team, so the rest is empty and `a = 0` by convention.
    pub grand: bool,
}

impl CoopPoint {
    pub fn quadrant(&self, tol: f64) -> Quadrant {
        Quadrant::classify(self.altruism, self.competitive, tol)
    }

    /// Closed first quadrant: `a ≥ −tol` and `c ≥ −tol`.
    pub fn in_closed_first_quadrant(&self, tol: f64) -> bool {
        self.altruism >= -tol && self.competitive >= -tol
    }
}

pub fn classify_quadrant(p: &CoopPoint, tol: f64) -> Quadrant {
    p.quadrant(tol)
}

/// `(a_A(T), c_A(T), m_A(T))` with `B = T∖A`. For `A = T`, `a = 0` and `c = m = u_T(T)`.
pub fn coop_point<G: SubsetUtility + ?Sized>(g: &G, a: PlayerSet) -> Result<CoopPoint> {
    let team = g.team();
    let b = team.difference(a);
    let competitive = competitive_contribution(g, a, b)?;
    let marginal = total_marginal(g, a, b)?;
    let altruism = if b.is_empty() {
        0.0
    } else {
        altruistic_contribution(g, a, b)?
    };
    Ok(CoopPoint {
        subset: a,
        altruism,
        competitive,
        marginal,
        grand: b.is_empty(),
    })
}

/// One point per nonempty proper subset, ascending mask order.
pub fn all_coop_points<G: SubsetUtility + ?Sized>(g: &G) -> Result<Vec<CoopPoint>> {
    let team = g.team();
    if g.players() > MAX_EXHAUSTIVE_PLAYERS {
        return Err(Error::TooLarge {
            what: "cooperation-space enumeration",
            n: g.players(),
            max: MAX_EXHAUSTIVE_PLAYERS,
        });
    }
    let subsets: Vec<PlayerSet> = team.nonempty_subsets().filter(|&s| s != team).collect();
    subsets.par_iter().map(|&a| coop_point(g, a)).collect()
}

/// The `A = T` point.
pub fn grand_coop_point<G: SubsetUtility + ?Sized>(g: &G) -> CoopPoint {
    coop_point(g, g.team()).expect("the team is nonempty")
}

fn check_pair_size<G: SubsetUtility + ?Sized>(g: &G) -> Result<()> {
    if g.players() > MAX_PAIR_PLAYERS {
        return Err(Error::TooLarge {
            what: "disjoint-pair predicates",
            n: g.players(),
            max: MAX_PAIR_PLAYERS,
        });
    }
    Ok(())
}

/// Finds the first pair `(A, B ⊆ S∖A)` in ascending mask order for which
/// `bad` holds. `A` ranges over nonempty subsets of `within`; `B` includes
/// the empty set only when `include_empty_b` is set.
fn find_pair<G, F>(
    g: &G,
    within: PlayerSet,
    include_empty_b: bool,
    bad: F,
) -> Option<(PlayerSet, PlayerSet, f64)>
where
    G: SubsetUtility + ?Sized,
    F: Fn(&G, PlayerSet, PlayerSet) -> Option<f64> + Sync,
{
    let assessors: Vec<PlayerSet> = within.nonempty_subsets().collect();
    assessors
        .par_iter()
        .filter_map(|&a| {
            within
                .difference(a)
                .subsets()
                .filter(|b| include_empty_b || !b.is_empty())
                .find_map(|b| bad(g, a, b).map(|v| (a, b, v)))
        })
        .find_first(|_| true)
}

/// All competitive contributions `c_A(A∪B)` are `≥ −tol`, including `B = ∅`.
pub fn is_sensible<G: SubsetUtility + ?Sized>(g: &G, tol: f64) -> Result<bool> {
    Ok(sensibility_violation(g, tol)?.is_none())
}

/// The first `(A, B, c)` with `c_A(A∪B) < −tol`.
pub fn sensibility_violation<G: SubsetUtility + ?Sized>(
    g: &G,
    tol: f64,
) -> Result<Option<(PlayerSet, PlayerSet, f64)>> {
    check_pair_size(g)?;
    Ok(find_pair(g, g.team(), true, |g, a, b| {
        let s = a.union(b);
        let c = assess(g, s, s) - assess(g, b, s);
        (c < -tol).then_some(c)
    }))
}

/// All altruistic contributions between disjoint nonempty subsets of `s` are `≥ −tol`.
pub fn is_cohesive<G: SubsetUtility + ?Sized>(g: &G, s: PlayerSet, tol: f64) -> Result<bool> {
    Ok(cohesion_violation(g, s, tol)?.is_none())
}

/// The first `(A, B, a)` inside `s` with `a_A(A∪B) < −tol`.
pub fn cohesion_violation<G: SubsetUtility + ?Sized>(
    g: &G,
    s: PlayerSet,
    tol: f64,
) -> Result<Option<(PlayerSet, PlayerSet, f64)>> {
    if s.is_empty() {
        return Err(Error::EmptySet("coalition"));
    }
    if !s.fits(g.players()) {
        return Err(Error::OutOfTeam {
            set: s,
            n: g.players(),
        });
    }
    check_pair_size(g)?;
    Ok(find_pair(g, s, false, |g, a, b| {
        let v = g.utility(b, a.union(b)) - g.utility(b, b);
        (v < -tol).then_some(v)
    }))
}

/// Every coalition is cohesive, which is the same as the whole team being cohesive.
pub fn is_fully_cooperative<G: SubsetUtility + ?Sized>(g: &G, tol: f64) -> Result<bool> {
    is_cohesive(g, g.team(), tol)
}

/// ST-core membership: does this utility family make `V` fully cooperative?
pub fn in_st_core(
    n: usize,
    outcomes: &[String],
    consequence: &Consequence,
    utilities: &UtilityTable,
    tol: f64,
) -> Result<bool> {
    let game = StGame::new(n, outcomes.to_vec(), consequence.clone(), utilities.clone())?;
    is_fully_cooperative(&game, tol)
}

/// Embeds an NTU game: `u_A(x) = Σ_{a∈A} u_a(x)`. `individual[a][x]` is player
/// `a`'s utility for outcome `x`.
pub fn from_ntu(
    n: usize,
    outcomes: Vec<String>,
    consequence: Consequence,
    individual: &[Vec<f64>],
) -> Result<StGame> {
    if individual.len() != n {
        return Err(Error::domain(format!(
            "{} individual utility rows for {n} players",
            individual.len()
        )));
    }
    if let Some(row) = individual.iter().find(|r| r.len() != outcomes.len()) {
        return Err(Error::domain(format!(
            "individual utility row has {} entries for {} outcomes",
            row.len(),
            outcomes.len()
        )));
    }
    let mut utilities = UtilityTable::new();
    for a in PlayerSet::full(n).nonempty_subsets() {
        #[allow(clippy::needless_range_loop)]
        for x in 0..outcomes.len() {
            let v = a.players().map(|p| individual[p][x]).sum();
            utilities.insert(a, OutcomeId(x as u32), v)?;
        }
    }
    StGame::new(n, outcomes, consequence, utilities)
}

/// Outcome of [`reduce_to_tu`].
#[derive(Clone, Debug, PartialEq)]
pub enum TuReduction {
    Reduced(TuGame),
    /// A pair whose competitive contribution is not zero.
    Rejected {
        a: PlayerSet,
        b: PlayerSet,
        competitive: f64,
    },
}

/// When every `c_A(A∪B)` over disjoint nonempty pairs vanishes, all subsets
/// assess each outcome alike and the game is the TU game `u(S) = u_S(V(S))`.
pub fn reduce_to_tu<G: SubsetUtility + ?Sized>(g: &G, tol: f64) -> Result<TuReduction> {
    check_pair_size(g)?;
    let witness = find_pair(g, g.team(), false, |g, a, b| {
        let s = a.union(b);
        let c = g.utility(s, s) - g.utility(b, s);
        (c.abs() > tol).then_some(c)
    });
    if let Some((a, b, competitive)) = witness {
        return Ok(TuReduction::Rejected { a, b, competitive });
    }
    let tu = TuGame::from_fn(g.players(), |s| g.utility(s, s))?;
    Ok(TuReduction::Reduced(tu))
}
