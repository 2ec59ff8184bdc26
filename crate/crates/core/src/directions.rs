//! Conjugate-gradient coefficient formulas, the direction update and the
//! restart test.
//!
//! Every formula consumes the same quintuple of vectors from one accepted
//! step: the new and old gradients, the previous direction, the step
//! `s = x_new - x_old` and the gradient change `y = g_new - g_old`. The
//! hybrid coefficient blends NHS and HRM through a weight `theta` derived
//! from a conjugacy condition on the new direction; out-of-range weights are
//! clamped to the nearest pure method.

use crate::error::{Error, Result};
use crate::vecops::dot;

/// The gradient/direction quintuple every coefficient formula consumes.
///
/// All five slices share one dimension and `y` must equal `g_new - g_old`
/// componentwise; the constructor asserts both.
#[derive(Debug, Clone, Copy)]
pub struct BetaInputs<'a> {
    pub g_new: &'a [f64],
    pub g_old: &'a [f64],
    pub d_old: &'a [f64],
    pub s: &'a [f64],
    pub y: &'a [f64],
}

impl<'a> BetaInputs<'a> {
    pub fn new(
        g_new: &'a [f64],
        g_old: &'a [f64],
        d_old: &'a [f64],
        s: &'a [f64],
        y: &'a [f64],
    ) -> Self {
        let n = g_new.len();
        assert!(
            g_old.len() == n && d_old.len() == n && s.len() == n && y.len() == n,
            "all five vectors must share one dimension"
        );
        for i in 0..n {
            assert!(
                y[i] == g_new[i] - g_old[i],
                "y must equal g_new - g_old exactly (component {i})"
            );
        }
        Self {
            g_new,
            g_old,
            d_old,
            s,
            y,
        }
    }
}

/// Tunables of the hybrid coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridParams {
    /// HRM denominator mixing weight, in (0, 1).
    pub tau: f64,
    /// NHS denominator parameter, > 1.
    pub u: f64,
    /// Conjugacy scale in the theta formula, > 0.
    pub t: f64,
    /// Lower clamp for theta; 0 gives the plain hybrid, forcing
    /// `theta_min = theta_max` pins the weight (useful for method-equality
    /// checks).
    pub theta_min: f64,
    /// Upper clamp for theta.
    pub theta_max: f64,
}

impl Default for HybridParams {
    fn default() -> Self {
        Self {
            tau: 0.4,
            u: 1.1,
            t: 1.0,
            theta_min: 0.0,
            theta_max: 1.0,
        }
    }
}

impl HybridParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::InvalidConfig(format!("tau must lie in (0,1), got {}", self.tau)));
        }
        if !(self.u > 1.0) {
            return Err(Error::InvalidConfig(format!("u must exceed 1, got {}", self.u)));
        }
        if !(self.t > 0.0) {
            return Err(Error::InvalidConfig(format!("t must be positive, got {}", self.t)));
        }
        if !(0.0 <= self.theta_min && self.theta_min <= self.theta_max && self.theta_max <= 1.0) {
            return Err(Error::InvalidConfig(
                "theta bounds must satisfy 0 <= theta_min <= theta_max <= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Which case of the hybrid fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaBranch {
    /// theta clamped to 0: pure NHS.
    ThetaZeroNhs,
    /// theta strictly inside (0, 1): the blended coefficient.
    InteriorAwhm,
    /// theta clamped to 1: pure HRM.
    ThetaOneHrm,
    /// A constituent formula was degenerate; beta falls back to 0
    /// (steepest descent).
    DegenerateFallback,
}

/// Hybrid coefficient plus the weight and branch that produced it.
#[derive(Debug, Clone, Copy)]
pub struct BetaOutcome {
    pub beta: f64,
    pub theta: f64,
    pub branch: BetaBranch,
}

/// Fletcher-Reeves: ratio of squared gradient norms.
pub fn beta_fr(inp: &BetaInputs) -> Result<f64> {
    let denom = dot(inp.g_old, inp.g_old);
    if denom == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(dot(inp.g_new, inp.g_new) / denom)
}

/// Polak-Ribiere-Polyak.
pub fn beta_prp(inp: &BetaInputs) -> Result<f64> {
    let denom = dot(inp.g_old, inp.g_old);
    if denom == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(dot(inp.g_new, inp.y) / denom)
}

/// Hestenes-Stiefel.
pub fn beta_hs(inp: &BetaInputs) -> Result<f64> {
    let denom = dot(inp.y, inp.d_old);
    if denom == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(dot(inp.g_new, inp.y) / denom)
}

/// HRM: a PRP-style numerator with gradient rescaling over a blend of the
/// old gradient and old direction norms.
pub fn beta_hrm(inp: &BetaInputs, p: &HybridParams) -> Result<f64> {
    let g_old_sq = dot(inp.g_old, inp.g_old);
    let d_old_sq = dot(inp.d_old, inp.d_old);
    let denom = p.tau * g_old_sq + (1.0 - p.tau) * d_old_sq;
    if denom == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    if g_old_sq == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    let ratio = dot(inp.g_new, inp.g_new).sqrt() / g_old_sq.sqrt();
    let numer = dot(inp.g_new, inp.g_new) - ratio * dot(inp.g_new, inp.g_old);
    Ok(numer / denom)
}

/// NHS: nonnegative by construction.
///
/// The denominator is read as `max{ max{0, u g_new'd_old} + ||g_old||^2,
/// d_old'y }`: the inner max truncates only the `u` term, so the whole
/// denominator never drops below `||g_old||^2`.
pub fn beta_nhs(inp: &BetaInputs, p: &HybridParams) -> Result<f64> {
    let g_old_sq = dot(inp.g_old, inp.g_old);
    if g_old_sq == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    let g_new_sq = dot(inp.g_new, inp.g_new);
    let ratio = g_new_sq.sqrt() / g_old_sq.sqrt();
    let numer = g_new_sq - ratio * dot(inp.g_new, inp.g_old).max(0.0);
    let denom = ((p.u * dot(inp.g_new, inp.d_old)).max(0.0) + g_old_sq).max(dot(inp.d_old, inp.y));
    if denom <= 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(numer / denom)
}

/// Raw (unclamped) hybrid weight from the conjugacy condition
/// `d_new'y = -t s'g_new`.
///
/// A vanishing denominator falls back to 0, selecting the pure NHS case.
pub fn theta_new(inp: &BetaInputs, b_nhs: f64, b_hrm: f64, p: &HybridParams) -> f64 {
    let dty = dot(inp.d_old, inp.y);
    let numer = -p.t * dot(inp.s, inp.g_new) + dot(inp.g_new, inp.y) - b_nhs * dty;
    let denom = (b_hrm - b_nhs) * dty;
    if !denom.is_finite() || denom.abs() < 1e-30 * (1.0 + numer.abs()) {
        return 0.0;
    }
    numer / denom
}

/// The adaptive hybrid coefficient: theta-weighted blend of NHS and HRM.
///
/// Degenerate constituents collapse to `beta = 0`; out-of-range weights are
/// clamped, preserving the three-case structure (0 -> NHS, interior ->
/// blend, 1 -> HRM).
pub fn beta_awhm(inp: &BetaInputs, p: &HybridParams) -> BetaOutcome {
    let (b_nhs, b_hrm) = match (beta_nhs(inp, p), beta_hrm(inp, p)) {
        (Ok(n), Ok(h)) => (n, h),
        _ => {
            return BetaOutcome {
                beta: 0.0,
                theta: 0.0,
                branch: BetaBranch::DegenerateFallback,
            }
        }
    };
    let theta = theta_new(inp, b_nhs, b_hrm, p).clamp(p.theta_min, p.theta_max);
    if theta <= 0.0 {
        BetaOutcome {
            beta: b_nhs,
            theta: 0.0,
            branch: BetaBranch::ThetaZeroNhs,
        }
    } else if theta >= 1.0 {
        BetaOutcome {
            beta: b_hrm,
            theta: 1.0,
            branch: BetaBranch::ThetaOneHrm,
        }
    } else {
        BetaOutcome {
            beta: (1.0 - theta) * b_nhs + theta * b_hrm,
            theta,
            branch: BetaBranch::InteriorAwhm,
        }
    }
}

/// The direction update `-g_new + beta * d_old`; with no previous direction
/// (first iteration) the result is plain steepest descent `-g_new`.
pub fn direction(g_new: &[f64], beta: f64, d_old: Option<&[f64]>) -> Result<Vec<f64>> {
    match d_old {
        None => Ok(g_new.iter().map(|v| -v).collect()),
        Some(d) => {
            if d.len() != g_new.len() {
                return Err(Error::DimensionMismatch {
                    expected: g_new.len(),
                    got: d.len(),
                });
            }
            Ok(g_new.iter().zip(d).map(|(g, d)| -g + beta * d).collect())
        }
    }
}

/// Powell-style restart test: true when consecutive gradients are too far
/// from orthogonal, instructing the solver to fall back to `-g_new`.
pub fn restart_check(g_new: &[f64], g_old: &[f64], nu: f64) -> bool {
    assert!(nu > 0.0, "restart threshold must be positive");
    dot(g_new, g_old).abs() >= nu * dot(g_new, g_new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vecops::sub;

    /// Build inputs with the `y = g_new - g_old` invariant satisfied.
    fn inputs<'a>(
        g_new: &'a [f64],
        g_old: &'a [f64],
        d_old: &'a [f64],
        s: &'a [f64],
        y: &'a [f64],
    ) -> BetaInputs<'a> {
        BetaInputs::new(g_new, g_old, d_old, s, y)
    }

    fn with_y(g_new: &[f64], g_old: &[f64]) -> Vec<f64> {
        sub(g_new, g_old)
    }

    #[test]
    fn fr_hand_values() {
        let s = [0.0, 0.0];
        let cases = [
            ([1.0, 1.0], [1.0, 1.0], 1.0),
            ([2.0, 0.0], [1.0, 0.0], 4.0),
            // (1 + 4) / (4 + 1) by hand.
            ([1.0, 2.0], [2.0, 1.0], 1.0),
        ];
        for (g_new, g_old, want) in cases {
            let y = with_y(&g_new, &g_old);
            let inp = inputs(&g_new, &g_old, &[0.0, 0.0], &s, &y);
            assert_eq!(beta_fr(&inp).unwrap(), want);
        }
        let y = [0.0, 0.0];
        let inp = inputs(&[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0], &s, &y);
        assert!(matches!(beta_fr(&inp), Err(Error::DegenerateDenominator)));
    }

    #[test]
    fn prp_hand_values() {
        let s = [0.0, 0.0];
        let d = [0.0, 0.0];
        // Equal gradients: zero numerator.
        let y = with_y(&[1.0, 1.0], &[1.0, 1.0]);
        assert_eq!(beta_prp(&inputs(&[1.0, 1.0], &[1.0, 1.0], &d, &s, &y)).unwrap(), 0.0);
        // Orthogonal gradients: (1 - 0) / 1 by hand.
        let y = with_y(&[0.0, 1.0], &[1.0, 0.0]);
        assert_eq!(beta_prp(&inputs(&[0.0, 1.0], &[1.0, 0.0], &d, &s, &y)).unwrap(), 1.0);
        // 2(2 - 1) / 1 by hand.
        let y = with_y(&[2.0, 0.0], &[1.0, 0.0]);
        assert_eq!(beta_prp(&inputs(&[2.0, 0.0], &[1.0, 0.0], &d, &s, &y)).unwrap(), 2.0);
    }

    #[test]
    fn hs_hand_values() {
        let s = [0.0, 0.0];
        // y = (-1, 1), numerator 1, denominator 1.
        let g_new = [0.0, 1.0];
        let g_old = [1.0, 0.0];
        let d_old = [-1.0, 0.0];
        let y = with_y(&g_new, &g_old);
        assert_eq!(beta_hs(&inputs(&g_new, &g_old, &d_old, &s, &y)).unwrap(), 1.0);

        // Equal gradients with a usable denominator: y = 0 kills beta but
        // also the denominator -> degenerate.
        let y = [0.0, 0.0];
        assert!(matches!(
            beta_hs(&inputs(&[1.0, 1.0], &[1.0, 1.0], &[1.0, 0.0], &s, &y)),
            Err(Error::DegenerateDenominator)
        ));

        // y orthogonal to d_old with y != 0.
        let g_new = [1.0, 1.0];
        let g_old = [1.0, 0.0];
        let d_old = [1.0, 0.0];
        let y = with_y(&g_new, &g_old); // (0, 1) _|_ (1, 0)
        assert!(matches!(
            beta_hs(&inputs(&g_new, &g_old, &d_old, &s, &y)),
            Err(Error::DegenerateDenominator)
        ));
    }

    #[test]
    fn hrm_hand_values() {
        let p = HybridParams::default();
        let s = [0.0, 0.0];

        // Positively collinear gradients annihilate the numerator.
        let g_new = [3.0, 6.0];
        let g_old = [1.0, 2.0];
        let d_old = [0.5, -0.5];
        let y = with_y(&g_new, &g_old);
        let b = beta_hrm(&inputs(&g_new, &g_old, &d_old, &s, &y), &p).unwrap();
        assert!(b.abs() < 1e-12, "beta {b}");

        // num = 1 - (1/1)*0 = 1; den = 0.4*1 + 0.6*1 = 1.
        let g_new = [0.0, 1.0];
        let g_old = [1.0, 0.0];
        let d_old = [-1.0, 0.0];
        let y = with_y(&g_new, &g_old);
        assert_eq!(beta_hrm(&inputs(&g_new, &g_old, &d_old, &s, &y), &p).unwrap(), 1.0);

        // Both norms zero: degenerate.
        let y = [0.0, 1.0];
        assert!(matches!(
            beta_hrm(&inputs(&[0.0, 1.0], &[0.0, 0.0], &[0.0, 0.0], &s, &y), &p),
            Err(Error::DegenerateDenominator)
        ));
    }

    #[test]
    fn nhs_hand_values() {
        let p = HybridParams::default();
        let s = [0.0, 0.0];

        // num = 1; y = (-1, 1); d_old'y = 1; u-term truncates to 0; D = 1.
        let g_new = [0.0, 1.0];
        let g_old = [1.0, 0.0];
        let d_old = [-1.0, 0.0];
        let y = with_y(&g_new, &g_old);
        assert_eq!(beta_nhs(&inputs(&g_new, &g_old, &d_old, &s, &y), &p).unwrap(), 1.0);

        // Equal gradients: numerator identically zero.
        let g = [2.0, -1.0];
        let y = [0.0, 0.0];
        assert_eq!(beta_nhs(&inputs(&g, &g, &[1.0, 1.0], &s, &y), &p).unwrap(), 0.0);
    }

    #[test]
    fn theta_hand_values() {
        let p = HybridParams::default();
        // g_new = (0,1) with y = (-1,1) implies g_old = (1,0).
        let g_new = [0.0, 1.0];
        let g_old = [1.0, 0.0];
        let d_old = [-1.0, 0.0];
        let s = [1.0, 0.0];
        let y = with_y(&g_new, &g_old);
        // num = -0 + 1 - 1*1 = 0.
        assert_eq!(theta_new(&inputs(&g_new, &g_old, &d_old, &s, &y), 1.0, 2.0, &p), 0.0);

        // b_hrm == b_nhs: denominator degenerates, fall back to 0.
        assert_eq!(theta_new(&inputs(&g_new, &g_old, &d_old, &s, &y), 1.5, 1.5, &p), 0.0);

        // Perturbed instance, all terms recomputed by hand:
        // g_new = (0.1, 1), y = (-1, 1) => g_old = (1.1, 0);
        // num = -(0.1) + (0.1*-1 + 1*1) - 1*(1) = -0.1 + 0.9 - 1 = -0.2;
        // den = (2 - 1) * 1 = 1.
        let g_new = [0.1, 1.0];
        let g_old = [1.1, 0.0];
        let y = with_y(&g_new, &g_old);
        let th = theta_new(&inputs(&g_new, &g_old, &d_old, &s, &y), 1.0, 2.0, &p);
        assert!((th - (-0.2)).abs() < 1e-15, "theta {th}");
    }

    #[test]
    fn awhm_cases() {
        let p = HybridParams::default();

        // theta_raw <= 0 must hand back beta_nhs bit-for-bit.
        let g_new = [0.1, 1.0];
        let g_old = [1.1, 0.0];
        let d_old = [-1.0, 0.0];
        let s = [1.0, 0.0];
        let y = with_y(&g_new, &g_old);
        let inp = inputs(&g_new, &g_old, &d_old, &s, &y);
        let out = beta_awhm(&inp, &p);
        let th = theta_new(&inp, beta_nhs(&inp, &p).unwrap(), beta_hrm(&inp, &p).unwrap(), &p);
        if th <= 0.0 {
            assert_eq!(out.branch, BetaBranch::ThetaZeroNhs);
            assert_eq!(out.beta, beta_nhs(&inp, &p).unwrap());
            assert_eq!(out.theta, 0.0);
        }

        // Pinning theta to 1 hands back beta_hrm exactly.
        let pinned = HybridParams {
            theta_min: 1.0,
            theta_max: 1.0,
            ..p
        };
        let out = beta_awhm(&inp, &pinned);
        assert_eq!(out.branch, BetaBranch::ThetaOneHrm);
        assert_eq!(out.beta, beta_hrm(&inp, &p).unwrap());

        // Pinning theta to 1/2 yields the even blend of the two formulas.
        let half = HybridParams {
            theta_min: 0.5,
            theta_max: 0.5,
            ..p
        };
        let out = beta_awhm(&inp, &half);
        assert_eq!(out.branch, BetaBranch::InteriorAwhm);
        let want = 0.5 * beta_nhs(&inp, &p).unwrap() + 0.5 * beta_hrm(&inp, &p).unwrap();
        assert!((out.beta - want).abs() < 1e-15);

        // Degenerate constituents collapse to steepest descent.
        let y0 = [0.0, 0.0];
        let zero = inputs(&[0.0, 0.0], &[0.0, 0.0], &[1.0, 1.0], &s, &y0);
        let out = beta_awhm(&zero, &p);
        assert_eq!(out.branch, BetaBranch::DegenerateFallback);
        assert_eq!(out.beta, 0.0);
    }

    #[test]
    fn direction_update() {
        // beta = 0 is exact steepest descent.
        assert_eq!(direction(&[1.0, -2.0], 0.0, Some(&[5.0, 5.0])).unwrap(), vec![-1.0, 2.0]);
        assert_eq!(direction(&[1.0, 0.0], 1.0, Some(&[0.0, 1.0])).unwrap(), vec![-1.0, 1.0]);
        // First iteration: no previous direction.
        assert_eq!(direction(&[1.0, -2.0], 7.0, None).unwrap(), vec![-1.0, 2.0]);
        assert!(matches!(
            direction(&[1.0], 1.0, Some(&[1.0, 2.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn restart_cases() {
        // Orthogonal gradients: no restart.
        assert!(!restart_check(&[0.0, 1.0], &[1.0, 0.0], 0.2));
        // Identical nonzero gradients: restart.
        assert!(restart_check(&[1.0, 1.0], &[1.0, 1.0], 0.2));
        // Zero new gradient: 0 >= 0 holds (the solver terminates anyway).
        assert!(restart_check(&[0.0, 0.0], &[1.0, 0.0], 0.2));
    }
}
