//! The resource-contribution game with Cobb-Douglas subset utility.
//!
//! Player `a` holds resources `X_a` and contributes `x_a ≤ X_a`, keeping
//! `x̂_a = X_a − x_a` in reserve. A coalition `S` produces value `f(x_S)`
//! which a [`PayoffScheme`] divides among its members. The subset `A ⊆ S`
//! balances its payment against its reserves:
//!
//! ```text
//! u_A(S) = (payoff_A(S))^θ · (x̂_A)^{1−θ}
//! ```
//!
//! [`CobbDouglasGame`] implements [`SubsetUtility`], so every generic metric
//! applies to it directly.

mod figures;
mod optimize;
pub mod sample;

pub use figures::{
    cooperation_path, frontier_grid, payoff_grid, rational_grid, zero_altruism_contour,
    ContourRoots, FrontierCell, GridCell, PathPoint, RationalCell, TwoGroupSetting,
};
pub use optimize::{
    maximize_on_interval, rational_contribution, rational_group_contribution, Optimum,
};

use crate::error::{Error, Result};
use crate::player_set::{PlayerSet, MAX_PLAYERS};
use crate::st_game::{altruistic_contribution, competitive_contribution, SubsetUtility};

/// `U_θ(y, z) = y^θ z^{1−θ}` with `0^0 = 1`.
pub fn cd_value(theta: f64, y: f64, z: f64) -> Result<f64> {
    if y < 0.0 || z < 0.0 {
        return Err(Error::domain(format!(
            "Cobb-Douglas inputs must be nonnegative, got ({y}, {z})"
        )));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::domain(format!(
            "theta must lie in [0, 1], got {theta}"
        )));
    }
    Ok(cd_unchecked(theta, y, z))
}

// powf(0, 0) == 1, which gives the pure-payoff and pure-reserve limits at θ ∈ {0, 1}.
fn cd_unchecked(theta: f64, y: f64, z: f64) -> f64 {
    y.powf(theta) * z.powf(1.0 - theta)
}

/// The value `f(x)` produced from a total contribution `x`.
#[derive(Clone, Debug, PartialEq)]
pub enum ValueFunction {
    /// `f(x) = α x^β`.
    Power { alpha: f64, beta: f64 },
    /// Piecewise-linear interpolation through `(x, f(x))` knots starting at
    /// `(0, 0)`; the last segment extends past the final knot.
    Tabulated(Vec<(f64, f64)>),
}

impl ValueFunction {
    pub fn power(alpha: f64, beta: f64) -> Result<Self> {
        let f = ValueFunction::Power { alpha, beta };
        f.validate()?;
        Ok(f)
    }

    pub fn tabulated(knots: Vec<(f64, f64)>) -> Result<Self> {
        let f = ValueFunction::Tabulated(knots);
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ValueFunction::Power { alpha, beta } => {
                if !(*alpha > 0.0 && alpha.is_finite()) {
                    return Err(Error::domain(format!(
                        "alpha must be positive, got {alpha}"
                    )));
                }
                if !(*beta > 0.0 && beta.is_finite()) {
                    return Err(Error::domain(format!("beta must be positive, got {beta}")));
                }
            }
            ValueFunction::Tabulated(knots) => {
                if knots.len() < 2 {
                    return Err(Error::domain(
                        "a tabulated value function needs at least two knots",
                    ));
                }
                if knots[0] != (0.0, 0.0) {
                    return Err(Error::domain(
                        "a tabulated value function must start at (0, 0)",
                    ));
                }
                if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err(Error::domain("tabulated knots must have increasing x"));
                }
                if knots.iter().any(|&(_, y)| y < 0.0 || !y.is_finite()) {
                    return Err(Error::domain(
                        "tabulated values must be finite and nonnegative",
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match self {
            ValueFunction::Power { alpha, beta } => alpha * x.powf(*beta),
            ValueFunction::Tabulated(knots) => {
                let k = knots
                    .windows(2)
                    .position(|w| x <= w[1].0)
                    .unwrap_or(knots.len() - 2);
                let (x0, y0) = knots[k];
                let (x1, y1) = knots[k + 1];
                (y0 + (y1 - y0) * (x - x0) / (x1 - x0)).max(0.0)
            }
        }
    }

    /// `β` for power functions.
    pub fn exponent(&self) -> Option<f64> {
        match self {
            ValueFunction::Power { beta, .. } => Some(*beta),
            ValueFunction::Tabulated(_) => None,
        }
    }
}

/// How `f(x_S)` is divided among the members of `S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PayoffScheme {
    /// `(x_A / x_S) f(x_S)`
    Proportional,
    /// `(|A| / |S|) f(x_S)`
    Equal,
    /// `γ · proportional + (1 − γ) · equal`
    Hybrid(f64),
}

impl PayoffScheme {
    pub fn hybrid(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::domain(format!(
                "gamma must lie in [0, 1], got {gamma}"
            )));
        }
        Ok(PayoffScheme::Hybrid(gamma))
    }

    /// Weight on the proportional share.
    pub fn gamma(self) -> f64 {
        match self {
            PayoffScheme::Proportional => 1.0,
            PayoffScheme::Equal => 0.0,
            PayoffScheme::Hybrid(g) => g,
        }
    }

    /// Share of `f(x_S)` paid to a subset contributing `x_a` of `x_s` with
    /// `size_a` of `size_s` members. Zero when nothing is contributed.
    pub fn share(self, x_a: f64, x_s: f64, size_a: usize, size_s: usize) -> f64 {
        if x_s <= 0.0 {
            return 0.0;
        }
        let proportional = x_a / x_s;
        let equal = size_a as f64 / size_s as f64;
        let g = self.gamma();
        g * proportional + (1.0 - g) * equal
    }

    pub fn label(self) -> String {
        match self {
            PayoffScheme::Proportional => "proportional".into(),
            PayoffScheme::Equal => "equal".into(),
            PayoffScheme::Hybrid(g) => format!("hybrid({g})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CobbDouglasConfig {
    pub theta: f64,
    pub value: ValueFunction,
    /// `X_a` per player.
    pub resources: Vec<f64>,
}

impl CobbDouglasConfig {
    pub fn new(theta: f64, value: ValueFunction, resources: Vec<f64>) -> Result<Self> {
        let cfg = CobbDouglasConfig {
            theta,
            value,
            resources,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::domain(format!(
                "theta must lie in [0, 1], got {}",
                self.theta
            )));
        }
        self.value.validate()?;
        let n = self.resources.len();
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::InvalidTeamSize(n));
        }
        if let Some(x) = self
            .resources
            .iter()
            .find(|x| !(**x >= 0.0 && x.is_finite()))
        {
            return Err(Error::domain(format!(
                "resources must be nonnegative, got {x}"
            )));
        }
        Ok(())
    }

    pub fn players(&self) -> usize {
        self.resources.len()
    }
}

/// Contributions `x_a`, one per player.
#[derive(Clone, Debug, PartialEq)]
pub struct ContributionProfile(pub Vec<f64>);

impl ContributionProfile {
    pub fn validate(&self, cfg: &CobbDouglasConfig) -> Result<()> {
        if self.0.len() != cfg.players() {
            return Err(Error::domain(format!(
                "{} contributions for {} players",
                self.0.len(),
                cfg.players()
            )));
        }
        for (a, (&x, &cap)) in self.0.iter().zip(&cfg.resources).enumerate() {
            if !(0.0..=cap).contains(&x) {
                return Err(Error::domain(format!(
                    "player {a} contributes {x}, outside [0, {cap}]"
                )));
            }
        }
        Ok(())
    }
}

/// A fully specified instance: configuration, payoff scheme and contributions.
#[derive(Clone, Debug, PartialEq)]
pub struct CobbDouglasGame {
    cfg: CobbDouglasConfig,
    scheme: PayoffScheme,
    profile: ContributionProfile,
}

impl CobbDouglasGame {
    pub fn new(
        cfg: CobbDouglasConfig,
        scheme: PayoffScheme,
        profile: ContributionProfile,
    ) -> Result<Self> {
        cfg.validate()?;
        profile.validate(&cfg)?;
        PayoffScheme::hybrid(scheme.gamma())?;
        Ok(CobbDouglasGame {
            cfg,
            scheme,
            profile,
        })
    }

    pub fn config(&self) -> &CobbDouglasConfig {
        &self.cfg
    }

    pub fn scheme(&self) -> PayoffScheme {
        self.scheme
    }

    pub fn profile(&self) -> &ContributionProfile {
        &self.profile
    }

    /// Replaces one player's contribution, clamped to `[0, X_a]`.
    pub fn with_contribution(&self, player: usize, x: f64) -> CobbDouglasGame {
        let mut next = self.clone();
        next.profile.0[player] = x.clamp(0.0, self.cfg.resources[player]);
        next
    }

    /// `x_S`.
    pub fn contribution(&self, s: PlayerSet) -> f64 {
        s.players().map(|a| self.profile.0[a]).sum()
    }

    /// `x̂_S = X_S − x_S`.
    pub fn reserve(&self, s: PlayerSet) -> f64 {
        s.players()
            .map(|a| (self.cfg.resources[a] - self.profile.0[a]).max(0.0))
            .sum()
    }

    /// `f(x_S)`.
    pub fn coalition_value(&self, s: PlayerSet) -> f64 {
        self.cfg.value.eval(self.contribution(s))
    }

    /// Payment to `a ⊆ s` under the game's scheme.
    pub fn payoff(&self, a: PlayerSet, s: PlayerSet) -> f64 {
        payoff_unchecked(self.scheme, self, a, s)
    }
}

fn payoff_unchecked(scheme: PayoffScheme, g: &CobbDouglasGame, a: PlayerSet, s: PlayerSet) -> f64 {
    let x_s = g.contribution(s);
    let share = scheme.share(g.contribution(a), x_s, a.len(), s.len());
    share * g.cfg.value.eval(x_s)
}

impl SubsetUtility for CobbDouglasGame {
    fn players(&self) -> usize {
        self.cfg.players()
    }

    fn utility(&self, assessor: PlayerSet, coalition: PlayerSet) -> f64 {
        cd_unchecked(
            self.cfg.theta,
            self.payoff(assessor, coalition),
            self.reserve(assessor),
        )
    }
}

fn check_subset(g: &CobbDouglasGame, a: PlayerSet, s: PlayerSet) -> Result<()> {
    let n = g.players();
    if !s.fits(n) {
        return Err(Error::OutOfTeam { set: s, n });
    }
    if s.is_empty() {
        return Err(Error::EmptySet("coalition"));
    }
    if !a.is_subset(s) {
        return Err(Error::domain(format!("{a} is not a subset of {s}")));
    }
    Ok(())
}

/// Payment to `a ⊆ s` under an arbitrary scheme.
pub fn payoff(
    scheme: PayoffScheme,
    game: &CobbDouglasGame,
    a: PlayerSet,
    s: PlayerSet,
) -> Result<f64> {
    check_subset(game, a, s)?;
    PayoffScheme::hybrid(scheme.gamma())?;
    Ok(payoff_unchecked(scheme, game, a, s))
}

/// `u_A(S)` for `A ⊆ S`.
pub fn cd_subset_utility(game: &CobbDouglasGame, a: PlayerSet, s: PlayerSet) -> Result<f64> {
    check_subset(game, a, s)?;
    if a.is_empty() {
        return Ok(0.0);
    }
    Ok(game.utility(a, s))
}

/// `c_A(A∪B)`, which is never negative for this game: both the payment and
/// the reserve of `A∪B` dominate those of `B`.
pub fn cd_sensibility_check(game: &CobbDouglasGame, a: PlayerSet, b: PlayerSet) -> Result<f64> {
    competitive_contribution(game, a, b)
}

/// `f_B(A∪B) ≥ f_B(B)`, the payoff form of `a_A(A∪B) ≥ 0`.
///
/// `a_A(A∪B) = ((f_B(A∪B))^θ − (f_B(B))^θ) · (x̂_B)^{1−θ}`, so the two agree
/// in sign whenever `θ > 0` and `x̂_B > 0`.
pub fn cd_fully_cooperative(
    game: &CobbDouglasGame,
    a: PlayerSet,
    b: PlayerSet,
    tol: f64,
) -> Result<bool> {
    Ok(cd_cooperation_margin(game, a, b)? >= -tol)
}

/// `f_B(A∪B) − f_B(B)`.
pub fn cd_cooperation_margin(game: &CobbDouglasGame, a: PlayerSet, b: PlayerSet) -> Result<f64> {
    // validates the pair
    altruistic_contribution(game, a, b)?;
    Ok(game.payoff(b, a.union(b)) - game.payoff(b, b))
}

/// `f(y)/y ≥ f(x)/x` for `0 < x ≤ y`: nondecreasing average return.
pub fn avg_return_condition(f: &ValueFunction, x: f64, y: f64) -> Result<bool> {
    if !(x > 0.0 && y >= x) {
        return Err(Error::domain(format!(
            "average-return check needs 0 < x <= y, got x={x}, y={y}"
        )));
    }
    let (rx, ry) = (f.eval(x) / x, f.eval(y) / y);
    Ok(ry >= rx - 1e-12 * rx.abs().max(1.0))
}

/// Power functions have nondecreasing average return iff `β ≥ 1`
/// (`f'(x) = αβx^{β−1} ≥ αx^{β−1} = f(x)/x`).
pub fn power_has_increasing_returns(beta: f64) -> bool {
    beta >= 1.0
}

/// Largest stable team under a hybrid scheme with `f = αx^β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TeamSizeBound {
    Bounded(u64),
    Unbounded,
}

impl std::fmt::Display for TeamSizeBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TeamSizeBound::Bounded(s) => write!(f, "{s}"),
            TeamSizeBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

fn check_frontier_inputs(gamma: f64, ratio: f64, beta: f64) -> Result<()> {
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::domain(format!(
            "ratio x_b/x_S must lie in (0, 1], got {ratio}"
        )));
    }
    if !(beta > 1.0 && beta.is_finite()) {
        return Err(Error::domain(format!(
            "team-size bound needs beta > 1, got {beta}"
        )));
    }
    PayoffScheme::hybrid(gamma)?;
    Ok(())
}

/// `(1 − γ) / (r^β − γ r)` when the denominator is positive.
pub fn team_size_bound_value(gamma: f64, ratio: f64, beta: f64) -> Result<Option<f64>> {
    check_frontier_inputs(gamma, ratio, beta)?;
    let denom = ratio.powf(beta) - gamma * ratio;
    Ok((denom > 0.0).then(|| (1.0 - gamma) / denom))
}

/// A player contributing the fraction `ratio = x_b / x_S` of the team total
/// stays cohesive with the rest iff `|S| ≤ (1 − γ)/(r^β − γ r)`. A
/// nonpositive denominator means any team size is stable.
pub fn max_stable_team_size(gamma: f64, ratio: f64, beta: f64) -> Result<TeamSizeBound> {
    Ok(match team_size_bound_value(gamma, ratio, beta)? {
        None => TeamSizeBound::Unbounded,
        Some(v) => TeamSizeBound::Bounded(v.floor() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn two_player(scheme: PayoffScheme, value: ValueFunction, x: [f64; 2]) -> CobbDouglasGame {
        let cfg = CobbDouglasConfig::new(0.75, value, vec![10.0, 10.0]).unwrap();
        CobbDouglasGame::new(cfg, scheme, ContributionProfile(x.to_vec())).unwrap()
    }

    #[test]
    fn cobb_douglas_value() {
        assert_eq!(cd_value(0.5, 4.0, 1.0).unwrap(), 2.0);
        assert_eq!(cd_value(1.0, 3.5, 0.0).unwrap(), 3.5);
        assert_eq!(cd_value(0.0, 0.0, 2.0).unwrap(), 2.0);
        assert_eq!(cd_value(0.75, 16.0, 1.0).unwrap(), 8.0);
        assert_eq!(cd_value(0.75, 16.0, 0.0).unwrap(), 0.0);
        assert!(cd_value(0.5, -1.0, 1.0).is_err());
        assert!(cd_value(1.5, 1.0, 1.0).is_err());

        // y + z = 10 at θ = 1/2 peaks at y = z
        let (best, _) = (0..=1000)
            .map(|k| {
                let y = k as f64 / 100.0;
                (y, cd_value(0.5, y, 10.0 - y).unwrap())
            })
            .fold((0.0, f64::MIN), |acc, p| if p.1 > acc.1 { p } else { acc });
        assert!((best - 5.0).abs() < 1e-9);
    }

    #[test]
    fn payoff_schemes() {
        let sq = ValueFunction::power(1.0, 2.0).unwrap();
        let (a, s) = (PlayerSet::singleton(0), PlayerSet::full(2));
        let cases = [
            (PayoffScheme::Proportional, 10.0),
            (PayoffScheme::Equal, 12.5),
            (PayoffScheme::Hybrid(0.5), 11.25),
        ];
        for (scheme, expected) in cases {
            let g = two_player(scheme, sq.clone(), [2.0, 3.0]);
            assert!((g.payoff(a, s) - expected).abs() < 1e-12, "{scheme:?}");
            assert!((g.payoff(a, s) + g.payoff(s.difference(a), s) - 25.0).abs() < 1e-12);
        }
        let g = two_player(PayoffScheme::Hybrid(1.0), sq.clone(), [2.0, 3.0]);
        assert_eq!(g.payoff(a, s), 10.0);
        let g = two_player(PayoffScheme::Hybrid(0.0), sq.clone(), [2.0, 3.0]);
        assert_eq!(g.payoff(a, s), 12.5);

        // nothing contributed, nothing paid
        let g = two_player(PayoffScheme::Proportional, sq, [0.0, 0.0]);
        assert_eq!(g.payoff(a, s), 0.0);
        assert!(payoff(PayoffScheme::Equal, &g, s, a).is_err());
    }

    #[test]
    fn subset_utility_examples() {
        let g = two_player(
            PayoffScheme::Equal,
            ValueFunction::power(1.0, 1.0).unwrap(),
            [10.0, 6.0],
        );
        // x̂_A = 0 with θ < 1 leaves nothing
        assert_eq!(
            cd_subset_utility(&g, PlayerSet::singleton(0), PlayerSet::full(2)).unwrap(),
            0.0
        );
        // payoff 8, reserve 4 for player 1: 8^0.75 * 4^0.25
        let u = cd_subset_utility(&g, PlayerSet::singleton(1), PlayerSet::full(2)).unwrap();
        assert!((u - 8f64.powf(0.75) * 4f64.powf(0.25)).abs() < 1e-12);
    }

    #[test]
    fn sensibility_and_cooperation() {
        let f = ValueFunction::power(1.0, 1.5).unwrap();
        let (a, b) = (PlayerSet::singleton(0), PlayerSet::singleton(1));
        for scheme in [
            PayoffScheme::Proportional,
            PayoffScheme::Equal,
            PayoffScheme::Hybrid(0.3),
        ] {
            let g = two_player(scheme, f.clone(), [1.0, 7.0]);
            assert!(cd_sensibility_check(&g, a, b).unwrap() >= -TOL);
        }
        let g = two_player(PayoffScheme::Proportional, f.clone(), [1.0, 7.0]);
        assert!(cd_fully_cooperative(&g, a, b, TOL).unwrap());
        // b carries the team under equal pay and would do better alone
        let g = two_player(PayoffScheme::Equal, f.clone(), [0.5, 7.0]);
        assert!(!cd_fully_cooperative(&g, a, b, TOL).unwrap());
        assert!(altruistic_contribution(&g, a, b).unwrap() < 0.0);

        // B gives everything, A nothing, θ = 1: c = f_A(A∪B) ≥ 0
        let cfg = CobbDouglasConfig::new(1.0, f, vec![1.0, 1.0]).unwrap();
        let g = CobbDouglasGame::new(
            cfg,
            PayoffScheme::Equal,
            ContributionProfile(vec![0.0, 1.0]),
        )
        .unwrap();
        let c = cd_sensibility_check(&g, a, b).unwrap();
        assert!((c - g.payoff(a, PlayerSet::full(2))).abs() < 1e-12);
    }

    #[test]
    fn average_return() {
        let f = ValueFunction::power(1.0, 1.5).unwrap();
        assert!(avg_return_condition(&f, 1.0, 2.0).unwrap());
        let root = ValueFunction::power(1.0, 0.5).unwrap();
        assert!(!avg_return_condition(&root, 1.0, 4.0).unwrap());
        assert!(avg_return_condition(&f, 0.0, 1.0).is_err());
        assert!(avg_return_condition(&f, 2.0, 1.0).is_err());
        for beta in [0.5, 0.9, 1.0, 1.2, 3.0] {
            let f = ValueFunction::power(2.0, beta).unwrap();
            assert_eq!(
                power_has_increasing_returns(beta),
                avg_return_condition(&f, 0.5, 3.0).unwrap()
            );
        }
    }

    #[test]
    fn team_size_examples() {
        assert_eq!(
            max_stable_team_size(1.0, 0.5, 1.5).unwrap(),
            TeamSizeBound::Unbounded
        );
        assert_eq!(
            max_stable_team_size(0.0, 0.5, 1.5).unwrap(),
            TeamSizeBound::Bounded(2)
        );
        assert_eq!(
            max_stable_team_size(0.5, 0.5, 1.5).unwrap(),
            TeamSizeBound::Bounded(4)
        );
        let v = team_size_bound_value(0.0, 0.5, 1.5).unwrap().unwrap();
        assert!((v - 2f64.powf(1.5)).abs() < 1e-12);
        assert!(max_stable_team_size(0.5, 0.0, 1.5).is_err());
        assert!(max_stable_team_size(0.5, 1.5, 1.5).is_err());
        assert!(max_stable_team_size(0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn tabulated_value_function() {
        let f = ValueFunction::tabulated(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]).unwrap();
        assert_eq!(f.eval(0.5), 0.5);
        assert_eq!(f.eval(1.5), 2.5);
        assert_eq!(f.eval(3.0), 7.0);
        assert!(ValueFunction::tabulated(vec![(0.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(ValueFunction::tabulated(vec![(0.0, 0.0), (0.0, 2.0)]).is_err());
    }

    #[test]
    fn invalid_profiles() {
        let cfg = CobbDouglasConfig::new(0.5, ValueFunction::power(1.0, 1.5).unwrap(), vec![1.0])
            .unwrap();
        assert!(CobbDouglasGame::new(
            cfg.clone(),
            PayoffScheme::Equal,
            ContributionProfile(vec![2.0])
        )
        .is_err());
        assert!(CobbDouglasGame::new(
            cfg,
            PayoffScheme::Hybrid(1.5),
            ContributionProfile(vec![0.5])
        )
        .is_err());
    }
}
