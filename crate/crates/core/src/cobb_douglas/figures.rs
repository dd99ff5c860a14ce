//! Two-group sweeps: a subset `A` of `size_a` players next to a disjoint
//! subset `B` of `size_b`, each group contributing symmetrically (every
//! member gives the group's average). Every player holds the same resource
//! pool, `1` by default.

use rayon::prelude::*;

use super::optimize::{rational_group_contribution, Optimum};
use super::{
    max_stable_team_size, team_size_bound_value, CobbDouglasConfig, CobbDouglasGame,
    ContributionProfile, PayoffScheme, TeamSizeBound, ValueFunction,
};
use crate::error::{Error, Result};
use crate::player_set::{PlayerSet, MAX_PLAYERS};
use crate::st_game::{coop_point, CoopPoint, Quadrant, SubsetUtility};

/// Sample points examined by [`zero_altruism_contour`] before bisection.
pub const CONTOUR_SCAN_POINTS: usize = 1024;
const BISECTION_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct TwoGroupSetting {
    pub theta: f64,
    pub value: ValueFunction,
    pub size_a: usize,
    pub size_b: usize,
    /// Resources per player.
    pub resource: f64,
}

impl TwoGroupSetting {
    pub fn new(theta: f64, value: ValueFunction, size_a: usize, size_b: usize) -> Result<Self> {
        let s = TwoGroupSetting {
            theta,
            value,
            size_a,
            size_b,
            resource: 1.0,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.size_a == 0 || self.size_b == 0 {
            return Err(Error::domain("both groups need at least one player"));
        }
        if self.size_a + self.size_b > MAX_PLAYERS {
            return Err(Error::TooLarge {
                what: "two-group setting",
                n: self.size_a + self.size_b,
                max: MAX_PLAYERS,
            });
        }
        if !(self.resource > 0.0 && self.resource.is_finite()) {
            return Err(Error::domain(format!(
                "per-player resources must be positive, got {}",
                self.resource
            )));
        }
        self.config().validate()
    }

    pub fn group_a(&self) -> PlayerSet {
        PlayerSet::full(self.size_a)
    }

    pub fn group_b(&self) -> PlayerSet {
        PlayerSet::full(self.size_a + self.size_b).difference(self.group_a())
    }

    pub fn config(&self) -> CobbDouglasConfig {
        CobbDouglasConfig {
            theta: self.theta,
            value: self.value.clone(),
            resources: vec![self.resource; self.size_a + self.size_b],
        }
    }

    /// The game where every member of `A` gives `xa_avg` and every member of `B` gives `xb_avg`.
    pub fn game(&self, scheme: PayoffScheme, xa_avg: f64, xb_avg: f64) -> Result<CobbDouglasGame> {
        let mut x = vec![xa_avg; self.size_a];
        x.extend(std::iter::repeat_n(xb_avg, self.size_b));
        CobbDouglasGame::new(self.config(), scheme, ContributionProfile(x))
    }

    /// `A`'s best symmetric contribution given `B`'s average.
    pub fn rational_a(&self, scheme: PayoffScheme, xb_avg: f64) -> Result<Optimum> {
        let g = self.game(scheme, 0.0, xb_avg)?;
        rational_group_contribution(&g, self.group_a())
    }
}

/// Sign changes of `a_A(A∪B)` along `x_A` (per-member average).
#[derive(Clone, Debug, PartialEq)]
pub struct ContourRoots {
    pub roots: Vec<f64>,
}

impl ContourRoots {
    /// `None` when the sampled interval has no root.
    pub fn smallest(&self) -> Option<f64> {
        self.roots.first().copied()
    }
}

/// Solves `a_A(A∪B) = 0` for `A`'s average contribution on `[0, resource]`.
///
/// Works on the payoff form `f_B(A∪B) − f_B(B)`, which has the same sign as
/// the altruism whenever `θ > 0` and `B` keeps a reserve, and stays
/// informative when it does not. Every sign change on a 1024-point scan is
/// bisected to `1e-8`; sampled zeros count as roots.
pub fn zero_altruism_contour(
    setting: &TwoGroupSetting,
    scheme: PayoffScheme,
    xb_avg: f64,
) -> Result<ContourRoots> {
    setting.validate()?;
    if !(0.0..=setting.resource).contains(&xb_avg) {
        return Err(Error::domain(format!(
            "B's average contribution {xb_avg} outside [0, {}]",
            setting.resource
        )));
    }
    let (a, b) = (setting.group_a(), setting.group_b());
    let s = a.union(b);
    let margin = |t: f64| -> Result<f64> {
        let g = setting.game(scheme, t, xb_avg)?;
        Ok(g.payoff(b, s) - g.payoff(b, b))
    };
    let hi = setting.resource;
    let xs: Vec<f64> = (0..CONTOUR_SCAN_POINTS)
        .map(|k| hi * k as f64 / (CONTOUR_SCAN_POINTS - 1) as f64)
        .collect();
    let vals = xs.iter().map(|&x| margin(x)).collect::<Result<Vec<_>>>()?;

    let mut roots = Vec::new();
    for k in 0..xs.len() {
        if vals[k] == 0.0 {
            if k == 0 || vals[k - 1] != 0.0 {
                roots.push(xs[k]);
            }
            continue;
        }
        if k + 1 < xs.len() && vals[k + 1] != 0.0 && (vals[k] < 0.0) != (vals[k + 1] < 0.0) {
            let (mut lo, mut hi) = (xs[k], xs[k + 1]);
            let lo_negative = vals[k] < 0.0;
            while hi - lo > BISECTION_TOL {
                let mid = 0.5 * (lo + hi);
                let v = margin(mid)?;
                if v == 0.0 {
                    lo = mid;
                    hi = mid;
                } else if (v < 0.0) == lo_negative {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    Ok(ContourRoots { roots })
}

/// One point of a rational-behaviour path through cooperation space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathPoint {
    pub xb_avg: f64,
    pub xa_avg: f64,
    pub payoff: f64,
    pub utility: f64,
    pub point: CoopPoint,
    pub quadrant: Quadrant,
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// For `samples` values of `B`'s average contribution across `[0, resource]`,
/// `A` contributes rationally and the pair `(a_A, c_A)` is recorded.
pub fn cooperation_path(
    setting: &TwoGroupSetting,
    scheme: PayoffScheme,
    samples: usize,
    tol: f64,
) -> Result<Vec<PathPoint>> {
    setting.validate()?;
    if samples < 2 {
        return Err(Error::domain(format!(
            "a path needs at least 2 samples, got {samples}"
        )));
    }
    let (a, full) = (
        setting.group_a(),
        setting.group_a().union(setting.group_b()),
    );
    linspace(0.0, setting.resource, samples)
        .into_par_iter()
        .map(|xb| {
            let opt = setting.rational_a(scheme, xb)?;
            let g = setting.game(scheme, opt.x, xb)?;
            let point = coop_point(&g, a)?;
            Ok(PathPoint {
                xb_avg: xb,
                xa_avg: opt.x,
                payoff: g.payoff(a, full),
                utility: g.utility(a, full),
                point,
                quadrant: point.quadrant(tol),
            })
        })
        .collect()
}

/// A cell of the payoff/utility surface over the two groups' averages.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridCell {
    pub gamma: f64,
    pub xa_avg: f64,
    pub xb_avg: f64,
    /// `h_A(A∪B)`.
    pub payoff: f64,
    /// `h_B(A∪B)`.
    pub payoff_b: f64,
    /// `f(x_A + x_B)`.
    pub total_value: f64,
    /// `u_A(A∪B)`.
    pub utility: f64,
    pub point: CoopPoint,
    pub quadrant: Quadrant,
}

/// Rectangular sample ordered by `gamma`, then `xa`, then `xb`.
pub fn payoff_grid(
    setting: &TwoGroupSetting,
    gammas: &[f64],
    xa_values: &[f64],
    xb_values: &[f64],
    tol: f64,
) -> Result<Vec<GridCell>> {
    setting.validate()?;
    let (a, b) = (setting.group_a(), setting.group_b());
    let s = a.union(b);
    let cells: Vec<(f64, f64, f64)> = gammas
        .iter()
        .flat_map(|&g| {
            xa_values
                .iter()
                .flat_map(move |&xa| xb_values.iter().map(move |&xb| (g, xa, xb)))
        })
        .collect();
    cells
        .into_par_iter()
        .map(|(gamma, xa, xb)| {
            let game = setting.game(PayoffScheme::hybrid(gamma)?, xa, xb)?;
            let point = coop_point(&game, a)?;
            Ok(GridCell {
                gamma,
                xa_avg: xa,
                xb_avg: xb,
                payoff: game.payoff(a, s),
                payoff_b: game.payoff(b, s),
                total_value: game.coalition_value(s),
                utility: game.utility(a, s),
                point,
                quadrant: point.quadrant(tol),
            })
        })
        .collect()
}

/// Rational contribution of `A` against `B`'s average, with the zero-altruism root.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCell {
    pub gamma: f64,
    pub xb_avg: f64,
    pub xa_rational: f64,
    pub utility: f64,
    pub zero_altruism_xa: Option<f64>,
    pub altruism: f64,
    pub cohesive: bool,
}

/// Ordered by `gamma`, then `xb`.
pub fn rational_grid(
    setting: &TwoGroupSetting,
    gammas: &[f64],
    xb_values: &[f64],
    tol: f64,
) -> Result<Vec<RationalCell>> {
    setting.validate()?;
    let a = setting.group_a();
    let cells: Vec<(f64, f64)> = gammas
        .iter()
        .flat_map(|&g| xb_values.iter().map(move |&xb| (g, xb)))
        .collect();
    cells
        .into_par_iter()
        .map(|(gamma, xb)| {
            let scheme = PayoffScheme::hybrid(gamma)?;
            let opt = setting.rational_a(scheme, xb)?;
            let game = setting.game(scheme, opt.x, xb)?;
            let point = coop_point(&game, a)?;
            let root = zero_altruism_contour(setting, scheme, xb)?;
            Ok(RationalCell {
                gamma,
                xb_avg: xb,
                xa_rational: opt.x,
                utility: opt.value,
                zero_altruism_xa: root.smallest(),
                altruism: point.altruism,
                cohesive: point.altruism >= -tol,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrontierCell {
    pub gamma: f64,
    pub ratio: f64,
    pub beta: f64,
    /// The real-valued bound, `None` when unbounded.
    pub bound: Option<f64>,
    pub size: TeamSizeBound,
}

/// Maximum stable team size over `gammas × ratios`, ordered by `gamma`, then `ratio`.
pub fn frontier_grid(gammas: &[f64], ratios: &[f64], beta: f64) -> Result<Vec<FrontierCell>> {
    let mut out = Vec::with_capacity(gammas.len() * ratios.len());
    for &gamma in gammas {
        for &ratio in ratios {
            out.push(FrontierCell {
                gamma,
                ratio,
                beta,
                bound: team_size_bound_value(gamma, ratio, beta)?,
                size: max_stable_team_size(gamma, ratio, beta)?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::st_game::altruistic_contribution;

    const TOL: f64 = 1e-9;

    fn setting(size_a: usize, size_b: usize) -> TwoGroupSetting {
        TwoGroupSetting::new(
            0.75,
            ValueFunction::power(1.0, 1.5).unwrap(),
            size_a,
            size_b,
        )
        .unwrap()
    }

    #[test]
    fn equal_pay_contour_closed_form() {
        // (x_A + 1)^1.5 / 2 = 1  ⇒  x_A = 2^(2/3) − 1; bisection of the
        // scalar equation gives the frozen value.
        let s = setting(1, 1);
        let roots = zero_altruism_contour(&s, PayoffScheme::Equal, 1.0).unwrap();
        let expected = {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if (mid + 1.0).powf(1.5) < 2.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        assert!((expected - 0.587_401_051_968_2).abs() < 1e-12);
        assert_eq!(roots.roots.len(), 1);
        assert!((roots.smallest().unwrap() - expected).abs() < 1e-8);
    }

    #[test]
    fn proportional_contour_only_at_zero() {
        let s = setting(2, 3);
        let roots = zero_altruism_contour(&s, PayoffScheme::Proportional, 0.6).unwrap();
        assert_eq!(roots.roots, vec![0.0]);
        // dense sampling: altruism never negative
        for k in 0..=200 {
            let t = k as f64 / 200.0;
            let g = s.game(PayoffScheme::Proportional, t, 0.6).unwrap();
            assert!(altruistic_contribution(&g, s.group_a(), s.group_b()).unwrap() >= -TOL);
        }
    }

    #[test]
    fn contour_without_root() {
        // B idle: equal pay hands B a share of A's output, zero only at x_A = 0
        let s = setting(1, 1);
        let roots = zero_altruism_contour(&s, PayoffScheme::Equal, 0.0).unwrap();
        assert_eq!(roots.roots, vec![0.0]);
        assert!(zero_altruism_contour(&s, PayoffScheme::Equal, 1.5).is_err());

        // concave f: sqrt(1 + x_A) / 2 < 1 on the whole interval
        let concave =
            TwoGroupSetting::new(0.75, ValueFunction::power(1.0, 0.5).unwrap(), 1, 1).unwrap();
        let roots = zero_altruism_contour(&concave, PayoffScheme::Equal, 1.0).unwrap();
        assert_eq!(roots.smallest(), None);
    }

    #[test]
    fn path_shapes() {
        let s = setting(2, 2);
        for gamma in [0.0, 0.5, 1.0] {
            let path = cooperation_path(&s, PayoffScheme::Hybrid(gamma), 11, TOL).unwrap();
            assert_eq!(path.len(), 11);
            assert_eq!(path[0].xb_avg, 0.0);
            assert_eq!(path[10].xb_avg, 1.0);
            for p in &path {
                assert!(p.point.altruism >= -TOL, "gamma {gamma}: {p:?}");
                assert!((p.point.marginal - p.point.altruism - p.point.competitive).abs() < 1e-9);
            }
        }
        assert!(cooperation_path(&s, PayoffScheme::Equal, 1, TOL).is_err());
    }

    #[test]
    fn free_riding_appears_for_large_b() {
        let s = setting(2, 10);
        let path = cooperation_path(&s, PayoffScheme::Equal, 21, TOL).unwrap();
        assert!(path
            .iter()
            .any(|p| p.xb_avg > 0.8 && p.xb_avg < 1.0 && p.point.altruism < 0.0));
    }

    #[test]
    fn grid_cells_split_the_value() {
        let s = setting(2, 10);
        let cells = payoff_grid(
            &s,
            &[0.0, 0.5, 1.0],
            &[0.0, 0.5, 1.0],
            &[0.0, 0.25, 1.0],
            TOL,
        )
        .unwrap();
        assert_eq!(cells.len(), 27);
        for c in &cells {
            assert!((c.payoff + c.payoff_b - c.total_value).abs() <= 1e-9 * c.total_value.max(1.0));
        }
        let single = payoff_grid(&s, &[0.5], &[0.3], &[0.7], TOL).unwrap();
        let g = s.game(PayoffScheme::Hybrid(0.5), 0.3, 0.7).unwrap();
        let full = s.group_a().union(s.group_b());
        assert_eq!(single[0].payoff, g.payoff(s.group_a(), full));
        assert_eq!(single[0].utility, g.utility(s.group_a(), full));
    }

    #[test]
    fn frontier_cells() {
        let cells = frontier_grid(&[0.0, 1.0], &[0.5], 1.5).unwrap();
        assert_eq!(cells[0].size, TeamSizeBound::Bounded(2));
        assert!((cells[0].bound.unwrap() - 2.828_427_124_746_19).abs() < 1e-12);
        assert_eq!(cells[1].size, TeamSizeBound::Unbounded);
        assert_eq!(cells[1].bound, None);
    }

    #[test]
    fn rational_cells() {
        let s = setting(1, 1);
        let cells = rational_grid(&s, &[0.0, 1.0], &[0.0, 0.5, 1.0], TOL).unwrap();
        assert_eq!(cells.len(), 6);
        for c in &cells {
            assert_eq!(c.cohesive, c.altruism >= -TOL);
        }
    }
}
