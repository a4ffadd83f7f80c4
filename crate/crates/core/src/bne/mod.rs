//! Races on the fan when biases are private and drawn from a known
//! distribution.
//!
//! In the symmetric equilibrium studied here each agent takes the direct
//! path when its bias is at most a cutoff `y` and otherwise procrastinates to
//! the end of the spine. With `p = F(y)` the share of direct-path takers,
//! the cutoff is `r·p/2 + c` against one opponent and `r·d(p, m) + c` against
//! `m`, so `p` solves a scalar fixed point. Everything here is `f64`.

mod lambert;

pub use lambert::lambert_w0;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{fan_path, make_fan, FanSpec, PathRecord};

const TOLERANCE: f64 = 1e-12;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BneError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("only the trivial fixed point p = 0 exists")]
    NoNontrivialFixedPoint(Box<FanBneSolution>),
}

impl BneError {
    /// The `p = 0` solution carried by `NoNontrivialFixedPoint`.
    pub fn fallback(&self) -> Option<&FanBneSolution> {
        match self {
            BneError::NoNontrivialFixedPoint(s) => Some(s),
            BneError::InvalidParameters(_) => None,
        }
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, BneError> {
    Err(BneError::InvalidParameters(msg.into()))
}

/// Prior over biases. `c` below is the support's lower end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BiasDistribution {
    /// Uniform on `[lo, hi]`.
    Uniform { lo: f64, hi: f64 },
    /// `c + Exp(rate)`.
    ShiftedExponential { shift: f64, rate: f64 },
    /// `F(z) = 1 − 1/(z − c + 1)` on `[c, ∞)`.
    ShiftedEqualRevenue { shift: f64 },
}

impl BiasDistribution {
    pub fn uniform(lo: f64, hi: f64) -> Result<Self, BneError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return invalid(format!("uniform needs finite lo < hi, got [{lo}, {hi}]"));
        }
        Ok(BiasDistribution::Uniform { lo, hi })
    }

    pub fn shifted_exponential(shift: f64, rate: f64) -> Result<Self, BneError> {
        if !(shift.is_finite() && rate.is_finite() && rate > 0.0) {
            return invalid(format!("exponential needs finite shift and rate > 0, got {shift}, {rate}"));
        }
        Ok(BiasDistribution::ShiftedExponential { shift, rate })
    }

    pub fn shifted_equal_revenue(shift: f64) -> Result<Self, BneError> {
        if !shift.is_finite() {
            return invalid(format!("equal-revenue shift must be finite, got {shift}"));
        }
        Ok(BiasDistribution::ShiftedEqualRevenue { shift })
    }

    pub fn support_lower(&self) -> f64 {
        match *self {
            BiasDistribution::Uniform { lo, .. } => lo,
            BiasDistribution::ShiftedExponential { shift, .. } | BiasDistribution::ShiftedEqualRevenue { shift } => shift,
        }
    }

    pub fn cdf(&self, z: f64) -> f64 {
        self.cdf_above(z - self.support_lower())
    }

    /// `F(c + x)`. Evaluating through the excess `x` keeps full relative
    /// precision for tiny `x`, where `F(c + x) − x·k` would otherwise cancel.
    pub fn cdf_above(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            BiasDistribution::Uniform { lo, hi } => (x / (hi - lo)).min(1.0),
            BiasDistribution::ShiftedExponential { rate, .. } => -(-rate * x).exp_m1(),
            BiasDistribution::ShiftedEqualRevenue { .. } => x / (x + 1.0),
        }
    }

    /// Inverse CDF on `[0, 1)`; used for inverse-transform sampling.
    pub fn quantile(&self, u: f64) -> f64 {
        let c = self.support_lower();
        match *self {
            BiasDistribution::Uniform { lo, hi } => lo + u * (hi - lo),
            BiasDistribution::ShiftedExponential { rate, .. } => c - (-u).ln_1p() / rate,
            BiasDistribution::ShiftedEqualRevenue { .. } => c - 1.0 + 1.0 / (1.0 - u),
        }
    }
}

/// Mixed opponent over fan paths `P0..Pn`.
#[derive(Debug, Clone, PartialEq)]
pub struct FanOpponentProfile {
    probs: Vec<f64>,
}

impl FanOpponentProfile {
    pub fn new(probs: Vec<f64>) -> Result<Self, BneError> {
        if probs.len() < 2 {
            return invalid("a fan has at least two paths");
        }
        if probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return invalid("path probabilities must be finite and nonnegative");
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return invalid(format!("path probabilities sum to {total}, not 1"));
        }
        Ok(FanOpponentProfile { probs })
    }

    /// `P0` with probability `p`, `Pn` otherwise.
    pub fn two_point(n: usize, p: f64) -> Result<Self, BneError> {
        if !(0.0..=1.0).contains(&p) || n == 0 {
            return invalid(format!("need n >= 1 and p in [0,1], got n={n}, p={p}"));
        }
        let mut probs = vec![0.0; n + 1];
        probs[0] = p;
        probs[n] += 1.0 - p;
        Ok(FanOpponentProfile { probs })
    }

    pub fn point(n: usize, i: usize) -> Result<Self, BneError> {
        if i > n {
            return invalid(format!("P{i} does not exist on an {n}-fan"));
        }
        let mut probs = vec![0.0; n + 1];
        probs[i] = 1.0;
        Ok(FanOpponentProfile { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Index of the fan path a naive agent with bias `b` walks against
/// `opponent`. At `v_i` it exits iff `(r/2)·Pr[P_i or P_(i+1)] >= c^i (b − c)`.
pub fn fan_agent_exit(spec: &FanSpec, bias: f64, opponent: &FanOpponentProfile, reward: f64) -> Result<usize, BneError> {
    let n = spec.n();
    if opponent.probs.len() != n + 1 {
        return invalid(format!("opponent profile has {} entries for an {n}-fan", opponent.probs.len()));
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    if !(reward >= 0.0) {
        return invalid(format!("reward must be nonnegative, got {reward}"));
    }
    let c = spec.c_f64();
    let mut scale = 1.0;
    for i in 0..n {
        let gain = reward / 2.0 * (opponent.probs[i] + opponent.probs[i + 1]);
        if gain >= scale * (bias - c) {
            return Ok(i);
        }
        scale *= c;
    }
    Ok(n)
}

/// [`fan_agent_exit`] as a path on [`make_fan`]`(spec)`.
pub fn fan_agent_path(spec: &FanSpec, bias: f64, opponent: &FanOpponentProfile, reward: f64) -> Result<PathRecord, BneError> {
    let i = fan_agent_exit(spec, bias, opponent, reward)?;
    Ok(fan_path(&make_fan(spec), i).expect("fan paths exist"))
}


/// Round to 12 significant digits for stable JSON output.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn ser_sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(sig12(*x))
}

/// A symmetric cutoff equilibrium on the fan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FanBneSolution {
    /// Probability an agent takes the direct path.
    #[serde(serialize_with = "ser_sig12")]
    pub p: f64,
    /// Biases at or below this take the direct path.
    #[serde(serialize_with = "ser_sig12")]
    pub cutoff: f64,
    /// `p` must exceed this for the cutoff strategy to be an equilibrium.
    #[serde(serialize_with = "ser_sig12")]
    pub threshold: f64,
    pub valid: bool,
    /// Expected cost relative to the direct path, `p + (1 − p)·c^n`.
    #[serde(serialize_with = "ser_sig12")]
    pub cost_ratio: f64,
    /// `|F(cutoff) − p|`.
    #[serde(serialize_with = "ser_sig12")]
    pub residual: f64,
    /// Number of opponents each agent races.
    pub opponents: u32,
}

/// Largest root in `(0, 1]` of `g`, given `g(p) = F(cutoff(p)) − p`
/// (so `g(1) <= 0`). `None` when only the trivial root `p = 0` exists.
fn largest_root(g: impl Fn(f64) -> f64) -> Option<f64> {
    if g(1.0) >= 0.0 {
        return Some(1.0);
    }
    // downward scan: linear over (1e-3, 1), then geometric toward 0
    let linear = (1..1000).map(|k| 1.0 - k as f64 * 1e-3);
    let geometric = (1..=40).map(|j| 1e-3 * 0.5f64.powi(j));
    let mut hi = 1.0;
    for lo in linear.chain(geometric) {
        let value = g(lo);
        if value == 0.0 {
            return Some(lo);
        }
        if value > 0.0 {
            return Some(bisect(&g, lo, hi));
        }
        hi = lo;
    }
    None
}

/// Sign change with `g(lo) > 0 > g(hi)`.
fn bisect(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let value = g(mid);
        if value == 0.0 {
            return mid;
        }
        if value > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_reward(reward: f64) -> Result<(), BneError> {
    if !(reward.is_finite() && reward >= 0.0) {
        return invalid(format!("reward must be finite and nonnegative, got {reward}"));
    }
    Ok(())
}

fn solve(
    spec: &FanSpec,
    dist: &BiasDistribution,
    opponents: u32,
    threshold: f64,
    excess: impl Fn(f64) -> f64,
) -> Result<FanBneSolution, BneError> {
    let root = largest_root(|p| dist.cdf_above(excess(p)) - p);
    let p = root.unwrap_or(0.0);
    let x = excess(p);
    let c_n = spec.c_f64().powi(spec.n() as i32);
    let solution = FanBneSolution {
        p,
        cutoff: dist.support_lower() + x,
        threshold,
        valid: root.is_some() && p > threshold,
        cost_ratio: p + (1.0 - p) * c_n,
        residual: (dist.cdf_above(x) - p).abs(),
        opponents,
    };
    match root {
        Some(_) => Ok(solution),
        None => Err(BneError::NoNontrivialFixedPoint(Box::new(solution))),
    }
}

/// Two-agent cutoff equilibrium: the largest `p` with `F(r·p/2 + c) = p`,
/// `c` being the bias distribution's lower end. Valid iff
/// `p > 1/(c^(n−1) + 1)` for the fan's growth factor `c`.
pub fn solve_fan_bne(spec: &FanSpec, dist: &BiasDistribution, reward: f64) -> Result<FanBneSolution, BneError> {
    check_reward(reward)?;
    let threshold = 1.0 / (spec.c_f64().powi(spec.n() as i32 - 1) + 1.0);
    solve(spec, dist, 1, threshold, |p| reward * p / 2.0)
}

/// Same race against `m` opponents: `F(r·d(p, m) + c) = p`, valid iff
/// `p > ln(1 + m + (m+1)/(2c^(n−1)))/m`.
pub fn solve_fan_bne_multi(spec: &FanSpec, dist: &BiasDistribution, reward: f64, m: u32) -> Result<FanBneSolution, BneError> {
    check_reward(reward)?;
    if m == 0 {
        return invalid("need at least one opponent");
    }
    let mf = m as f64;
    let threshold = (1.0 + mf + (mf + 1.0) / (2.0 * spec.c_f64().powi(spec.n() as i32 - 1))).ln() / mf;
    solve(spec, dist, m, threshold, |p| reward * reward_share_factor(p, m))
}

/// Fixed point in closed form where one exists.
pub fn closed_form_p(dist: &BiasDistribution, reward: f64) -> f64 {
    match *dist {
        BiasDistribution::Uniform { lo, hi } => {
            if reward >= 2.0 * (hi - lo) {
                1.0
            } else {
                0.0
            }
        }
        BiasDistribution::ShiftedEqualRevenue { .. } => {
            if reward >= 2.0 {
                (reward - 2.0) / reward
            } else {
                0.0
            }
        }
        BiasDistribution::ShiftedExponential { rate, .. } => {
            let a = rate * reward / 2.0;
            if a <= 1.0 {
                0.0
            } else {
                1.0 + lambert_w0(-a * (-a).exp()) / a
            }
        }
    }
}

/// Expected prize share of a direct-path taker racing `m` opponents who each
/// take it with probability `p`, in units of `r`, minus what it would get by
/// procrastinating: `d(p, m) = (1 − (1−p)^m (1 + p·m)) / (p(m+1))`.
pub fn reward_share_factor(p: f64, m: u32) -> f64 {
    let mf = m as f64;
    if p < 1e-8 {
        return mf * p / 2.0;
    }
    -(mf * (-p).ln_1p() + (p * mf).ln_1p()).exp_m1() / (p * (mf + 1.0))
}

/// `E[1/(N+1)]` for `N ~ Bin(m, p)`, which is `(1 − (1−p)^(m+1))/(p(m+1))`.
pub fn expected_inverse_share(p: f64, m: u32) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let m1 = m as f64 + 1.0;
    if p < 1e-12 {
        return 1.0 - (m as f64) * p / 2.0;
    }
    -(m1 * (-p).ln_1p()).exp_m1() / (p * m1)
}

/// Upper bound `(√(4s + s²) − s)/2` on the equal-revenue equilibrium `p`
/// when each of the `m + 1` agents' fair share of the prize is `s`.
pub fn equal_revenue_share_bound(per_agent: f64) -> f64 {
    ((4.0 * per_agent + per_agent * per_agent).sqrt() - per_agent) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasInterval {
    #[serde(serialize_with = "ser_sig12")]
    pub lo: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub hi: f64,
}

impl BiasInterval {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

/// On the modified 3-fan, a profile mixing only `P0` and `P3` is upset by
/// some bias: either one in `[c + rp/2, c2/c]` (prefers `P1`) or one in
/// `[c2/c, (2c3 + r(1−p))/(2c2)]` (prefers `P2`). At least one is nonempty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPathIntervals {
    pub first: BiasInterval,
    pub second: BiasInterval,
}

impl TwoPathIntervals {
    pub fn some_nonempty(&self) -> bool {
        !self.first.is_empty() || !self.second.is_empty()
    }
}

pub fn two_path_bne_intervals(c: f64, c2: f64, c3: f64, reward: f64, p: f64) -> Result<TwoPathIntervals, BneError> {
    let ordered = 1.0 < c && c * c < c2 && c2 * c2 < c3 && c3.is_finite();
    if !ordered {
        return invalid(format!("need 1 < c < c^2 < c2 < c2^2 < c3, got {c}, {c2}, {c3}"));
    }
    check_reward(reward)?;
    if !(p > 0.0 && p < 1.0) {
        return invalid(format!("p must lie in (0, 1), got {p}"));
    }
    Ok(TwoPathIntervals {
        first: BiasInterval {
            lo: c + reward * p / 2.0,
            hi: c2 / c,
        },
        second: BiasInterval {
            lo: c2 / c,
            hi: (2.0 * c3 + reward * (1.0 - p)) / (2.0 * c2),
        },
    })
}

/// One row of a reward sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(serialize_with = "ser_sig12")]
    pub r: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub p: f64,
    pub valid: bool,
    #[serde(serialize_with = "ser_sig12")]
    pub cost_ratio: f64,
}

/// Two-agent solutions over a list of rewards; trivial fixed points appear as `p = 0`.
pub fn sweep_fan_bne(spec: &FanSpec, dist: &BiasDistribution, rewards: &[f64]) -> Result<Vec<SweepRow>, BneError> {
    rewards
        .iter()
        .map(|&r| {
            let s = match solve_fan_bne(spec, dist, r) {
                Ok(s) => s,
                Err(BneError::NoNontrivialFixedPoint(s)) => *s,
                Err(e) => return Err(e),
            };
            Ok(SweepRow {
                r,
                p: s.p,
                valid: s.valid,
                cost_ratio: s.cost_ratio,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn fan(n: usize, c: i64) -> FanSpec {
        FanSpec::new(n, int(c)).unwrap()
    }

    #[test]
    fn agent_rule_against_a_point_mass() {
        let spec = fan(3, 2);
        let opp = FanOpponentProfile::point(3, 0).unwrap();
        assert_eq!(fan_agent_exit(&spec, 2.5, &opp, 2.0).unwrap(), 0);
        assert_eq!(fan_agent_exit(&spec, 3.5, &opp, 2.0).unwrap(), 3);
        let path = fan_agent_path(&spec, 3.5, &opp, 2.0).unwrap();
        assert_eq!(path.len(), 4);
    }

    #[test]
    fn no_reward_means_procrastinate() {
        let spec = fan(4, 2);
        for probs in [vec![1.0, 0.0, 0.0, 0.0, 0.0], vec![0.2, 0.2, 0.2, 0.2, 0.2]] {
            let opp = FanOpponentProfile::new(probs).unwrap();
            assert_eq!(fan_agent_exit(&spec, 2.01, &opp, 0.0).unwrap(), 4);
        }
    }

    #[test]
    fn bad_profiles() {
        assert!(FanOpponentProfile::new(vec![0.5, 0.4]).is_err());
        assert!(FanOpponentProfile::new(vec![1.5, -0.5]).is_err());
        let opp = FanOpponentProfile::point(2, 0).unwrap();
        assert!(fan_agent_exit(&fan(3, 2), 3.0, &opp, 1.0).is_err());
    }

    #[test]
    fn equal_revenue_half() {
        let dist = BiasDistribution::shifted_equal_revenue(2.0).unwrap();
        let s = solve_fan_bne(&fan(5, 2), &dist, 4.0).unwrap();
        assert!((s.p - 0.5).abs() < 1e-9);
        assert!((s.cost_ratio - 16.5).abs() < 1e-7);
        assert!(s.valid);
        assert!(s.residual < 1e-9);
    }

    #[test]
    fn uniform_all_or_nothing() {
        let dist = BiasDistribution::uniform(1.0, 3.0).unwrap();
        let spec = fan(5, 2);
        assert_eq!(solve_fan_bne(&spec, &dist, 4.0).unwrap().p, 1.0);
        assert_eq!(solve_fan_bne(&spec, &dist, 7.0).unwrap().p, 1.0);
        assert!(solve_fan_bne(&spec, &dist, 3.999).is_err());
        let err = solve_fan_bne(&spec, &dist, 3.9).unwrap_err();
        let fallback = err.fallback().unwrap();
        assert_eq!(fallback.p, 0.0);
        assert!(!fallback.valid);
    }

    #[test]
    fn exponential_matches_lambert() {
        let dist = BiasDistribution::shifted_exponential(2.0, 1.0).unwrap();
        let s = solve_fan_bne(&fan(5, 2), &dist, 10.0).unwrap();
        let closed = closed_form_p(&dist, 10.0);
        assert!((s.p - closed).abs() < 1e-8);
        assert!((closed - 0.993_02).abs() < 1e-5);
    }

    #[test]
    fn closed_forms() {
        let er = BiasDistribution::shifted_equal_revenue(2.0).unwrap();
        assert_eq!(closed_form_p(&er, 2.0), 0.0);
        assert_eq!(closed_form_p(&er, 1.0), 0.0);
        assert_eq!(closed_form_p(&BiasDistribution::uniform(1.0, 3.0).unwrap(), 4.0), 1.0);
        let ex = BiasDistribution::shifted_exponential(2.0, 1.0).unwrap();
        assert_eq!(closed_form_p(&ex, 2.0), 0.0);
    }

    #[test]
    fn exponential_tail_bound() {
        // (1 − p)·e^(λr/2) falls from +∞ at λr = 2 toward 1; it drops below 2 near λr ≈ 2.7
        for lr in [3.0, 3.5, 5.0, 10.0, 20.0, 50.0] {
            let ex = BiasDistribution::shifted_exponential(1.5, 1.0).unwrap();
            let p = closed_form_p(&ex, lr);
            assert!(p >= 1.0 - 2.0 * (-lr / 2.0f64).exp(), "lr={lr} p={p}");
        }
    }

    #[test]
    fn share_factor_values() {
        assert!((reward_share_factor(1.0, 3) - 0.25).abs() < 1e-15);
        assert!((reward_share_factor(0.5, 2) - 1.0 / 3.0).abs() < 1e-15);
        assert!((reward_share_factor(1e-10, 4) - 2e-10).abs() < 1e-20);
    }

    #[test]
    fn inverse_share_values() {
        assert!((expected_inverse_share(0.5, 1) - 0.75).abs() < 1e-15);
        assert_eq!(expected_inverse_share(0.3, 0), 1.0);
        assert!((expected_inverse_share(1.0, 4) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn multi_with_one_opponent_is_the_two_agent_case() {
        let spec = fan(5, 2);
        for dist in [
            BiasDistribution::shifted_equal_revenue(2.0).unwrap(),
            BiasDistribution::shifted_exponential(2.0, 0.7).unwrap(),
        ] {
            for r in [3.0, 4.0, 9.0, 30.0] {
                let a = solve_fan_bne(&spec, &dist, r).unwrap();
                let b = solve_fan_bne_multi(&spec, &dist, r, 1).unwrap();
                assert!((a.p - b.p).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn equal_revenue_multi_under_share_bound() {
        let spec = fan(5, 2);
        let dist = BiasDistribution::shifted_equal_revenue(2.0).unwrap();
        for s in [1.0, 4.0, 16.0] {
            let mut last = 0.0;
            for m in [1u32, 2, 5, 20, 100] {
                let p = match solve_fan_bne_multi(&spec, &dist, s * (m as f64 + 1.0), m) {
                    Ok(sol) => sol.p,
                    Err(e) => e.fallback().unwrap().p,
                };
                assert!(p <= equal_revenue_share_bound(s) + 1e-9, "s={s} m={m} p={p}");
                assert!(p >= last - 1e-9, "not monotone at s={s} m={m}");
                last = p;
            }
        }
        assert!((equal_revenue_share_bound(4.0) - 0.828_427).abs() < 1e-6);
    }

    #[test]
    fn two_path_examples() {
        let iv = two_path_bne_intervals(2.0, 5.0, 26.0, 0.0, 0.5).unwrap();
        assert_eq!((iv.first.lo, iv.first.hi), (2.0, 2.5));
        assert!(!iv.first.is_empty());
        let iv = two_path_bne_intervals(2.0, 5.0, 26.0, 10.0, 0.5).unwrap();
        assert!(iv.first.is_empty() && !iv.second.is_empty());
        assert!(two_path_bne_intervals(2.0, 4.0, 26.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn sweep_rows() {
        let dist = BiasDistribution::shifted_equal_revenue(2.0).unwrap();
        let rows = sweep_fan_bne(&fan(3, 2), &dist, &[1.0, 2.0, 4.0]).unwrap();
        assert_eq!((rows[0].p, rows[1].p), (0.0, 0.0));
        assert!((rows[2].p - 0.5).abs() < 1e-9);
    }

    #[test]
    fn json_rounding() {
        assert_eq!(sig12(0.1 + 0.2), 0.3);
        assert_eq!(sig12(16.500000000000004), 16.5);
    }

    proptest! {
        #[test]
        fn share_factor_identities(p in 1e-6f64..=1.0, m in 1u32..200) {
            prop_assert!(reward_share_factor(p, m) > 0.0);
            prop_assert!((reward_share_factor(p, 1) - p / 2.0).abs() <= 1e-15);
        }

        #[test]
        fn solver_residual(r in 0.0f64..60.0, shift in 1.1f64..4.0, rate in 0.05f64..3.0) {
            let spec = FanSpec::new(4, int(2)).unwrap();
            for dist in [
                BiasDistribution::shifted_equal_revenue(shift).unwrap(),
                BiasDistribution::shifted_exponential(shift, rate).unwrap(),
                BiasDistribution::uniform(shift, shift + rate).unwrap(),
            ] {
                let s = match solve_fan_bne(&spec, &dist, r) {
                    Ok(s) => s,
                    Err(e) => e.fallback().unwrap().clone(),
                };
                prop_assert!((0.0..=1.0).contains(&s.p));
                prop_assert!(s.residual <= 1e-9);
                prop_assert!((s.p - closed_form_p(&dist, r)).abs() <= 1e-8, "{:?} r={} p={}", dist, r, s.p);
            }
        }

        #[test]
        fn two_path_never_both_empty(
            c in 1.01f64..5.0, a in 1.01f64..4.0, b in 1.01f64..4.0, r in 0.0f64..1e3, p in 0.001f64..0.999,
        ) {
            let c2 = c * c * a;
            let c3 = c2 * c2 * b;
            prop_assert!(two_path_bne_intervals(c, c2, c3, r, p).unwrap().some_nonempty());
        }
    }
}
