//! Support-size equations.
//!
//! Each equation matches the logarithmic derivative of the chemical profile on
//! the support of `u` with the one on the neighbouring empty region. Roots are
//! found by bisection inside the certified bracket, on the equation multiplied
//! through by its denominators so that the poles at the bracket ends disappear.
//! The ratio forms (`f_*`) are exported for residual checks.

use serde::{Deserialize, Serialize};

use crate::compound::{s0, s1, t0, t1};
use crate::error::{admissibility, Error, Result};
use crate::numerics::{bisect, brackets};
use crate::specfun::{i0e, i1e, j0, j0_root, j1, j1_root, k0e, k1e};
use crate::thresholds::{ratio_predecessor, ratio_successor, BOUNDARY_TOL};

/// Which support equation a bracket belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportEquation {
    InnerRing,
    OuterRing,
    AnnulusDecreasing,
    AnnulusIncreasing,
    WholeSpace,
    VolcanoCenter,
}

/// Interval carrying a verified sign change of a support equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub target: SupportEquation,
    pub certified: bool,
}

impl RootBracket {
    fn new(lo: f64, hi: f64, target: SupportEquation, f: impl Fn(f64) -> f64) -> Self {
        RootBracket {
            lo,
            hi,
            target,
            certified: lo < hi && brackets(f(lo), f(hi)),
        }
    }

    fn solve(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        if !self.certified {
            return Err(Error::NoRoot(format!(
                "{:?}: no sign change on [{}, {}]",
                self.target, self.lo, self.hi
            )));
        }
        Ok(bisect(f, self.lo, self.hi))
    }
}

/// Result of a support solve that may sit on an admissibility boundary, where the
/// support fills the whole sub-interval and no bracket exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solved {
    Root(RootBracket),
    Filled(f64),
}

// ---------------------------------------------------------------------------
// Ratio forms

/// `ω J_0(ωr)/J_1(ωr) - T_0(r;R)/T_1(r;R)`.
pub fn f_inner(r: f64, omega: f64, anchor: f64) -> f64 {
    omega * j0(omega * r) / j1(omega * r) - t0(r, anchor) / t1(r, anchor)
}

/// `ω S_0(r;ω,R)/S_1(r;ω,R) - I_0(R-r)/I_1(R-r)`.
pub fn f_outer(r: f64, omega: f64, anchor: f64) -> f64 {
    omega * s0(r, omega, anchor) / s1(r, omega, anchor) - i0e(anchor - r) / i1e(anchor - r)
}

/// `ω S_0(-r;ω,a)/S_1(-r;ω,a) - T_0(a+r;b)/T_1(a+r;b)`.
pub fn f_annulus_decreasing(r: f64, omega: f64, a: f64, b: f64) -> f64 {
    omega * s0(-r, omega, a) / s1(-r, omega, a) - t0(a + r, b) / t1(a + r, b)
}

/// `ω S_0(r;ω,b)/S_1(r;ω,b) - T_0(b-r;a)/T_1(b-r;a)`; reduces to [`f_outer`] at `a = 0`.
pub fn f_annulus_increasing(r: f64, omega: f64, a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return f_outer(r, omega, b);
    }
    omega * s0(r, omega, b) / s1(r, omega, b) - t0(b - r, a) / t1(b - r, a)
}

/// `ω J_0(ωr)/J_1(ωr) + K_0(r)/K_1(r)`.
pub fn f_wholespace(r: f64, omega: f64) -> f64 {
    omega * j0(omega * r) / j1(omega * r) + k0e(r) / k1e(r)
}

// Denominator-free forms used for bisection.

fn g_inner(r: f64, omega: f64, anchor: f64) -> f64 {
    omega * j0(omega * r) * t1(r, anchor) - j1(omega * r) * t0(r, anchor)
}

/// Exterior profile and its derivative left of an increasing mode anchored at `a`.
fn exterior_left(rho: f64, a: f64) -> (f64, f64) {
    if a == 0.0 {
        (i0e(rho), i1e(rho))
    } else {
        (t0(rho, a), t1(rho, a))
    }
}

fn g_increasing(r: f64, omega: f64, a: f64, b: f64) -> f64 {
    let (p0, p1) = exterior_left(b - r, a);
    omega * s0(r, omega, b) * p1 - s1(r, omega, b) * p0
}

fn g_decreasing(r: f64, omega: f64, a: f64, b: f64) -> f64 {
    omega * s0(-r, omega, a) * t1(a + r, b) - s1(-r, omega, a) * t0(a + r, b)
}

fn g_wholespace(r: f64, omega: f64) -> f64 {
    omega * j0(omega * r) * k1e(r) + j1(omega * r) * k0e(r)
}

// ---------------------------------------------------------------------------
// Brackets and solves

/// Bracket `(j_{0,1}/ω, j_{1,1}/ω)` for the inner-ring radius, or the filled
/// case `r_1 = R` when `ωR = j_{1,1}`.
pub fn bracket_r1(omega: f64, anchor: f64) -> Result<Solved> {
    let z = omega * anchor;
    let j11 = j1_root(1);
    if z < j11 * (1.0 - BOUNDARY_TOL) {
        return Err(admissibility(format!(
            "inner ring needs ωR > j11 (ωR = {z:.12})"
        )));
    }
    if z <= j11 * (1.0 + BOUNDARY_TOL) {
        return Ok(Solved::Filled(anchor));
    }
    let lo = j0_root(1) / omega;
    let hi = j11 / omega;
    Ok(Solved::Root(RootBracket::new(lo, hi, SupportEquation::InnerRing, |r| {
        g_inner(r, omega, anchor)
    })))
}

/// Inner-ring support radius `r_1` anchored at `anchor`.
pub fn solve_r1(omega: f64, anchor: f64) -> Result<f64> {
    match bracket_r1(omega, anchor)? {
        Solved::Filled(v) => Ok(v),
        Solved::Root(b) => b.solve(|r| g_inner(r, omega, anchor)),
    }
}

/// First positive roots `(s_0^{(1)}, s_1^{(1)})` of `S_0(·;ω,b)` and `S_1(·;ω,b)`,
/// or `None` when `S_1` has no root in `(0, b)`.
pub fn s_roots(omega: f64, b: f64) -> Option<(f64, f64)> {
    let p = ratio_predecessor(omega, b)?;
    let s1r = b - p;
    let s0r = bisect(|r| s0(r, omega, b), 0.0, s1r);
    Some((s0r, s1r))
}

/// First positive roots of `S_0(-·;ω,a)` and `S_1(-·;ω,a)`.
pub fn s_roots_reflected(omega: f64, a: f64) -> (f64, f64) {
    let s1r = ratio_successor(omega, a) - a;
    let s0r = bisect(|r| s0(-r, omega, a), 0.0, s1r);
    (s0r, s1r)
}

/// Bracket for the increasing-mode width `r_4` on `(a, b)`; `a = 0` is the outer ring.
pub fn bracket_r4(omega: f64, a: f64, b: f64) -> Result<Solved> {
    let target = if a == 0.0 {
        SupportEquation::OuterRing
    } else {
        SupportEquation::AnnulusIncreasing
    };
    if a == 0.0 {
        let (z, j11) = (omega * b, j1_root(1));
        if z < j11 * (1.0 - BOUNDARY_TOL) {
            return Err(admissibility(format!("outer ring needs ωR > j11 (ωR = {z:.12})")));
        }
        if z <= j11 * (1.0 + BOUNDARY_TOL) {
            return Ok(Solved::Filled(b));
        }
    }
    let p = match ratio_predecessor(omega, b) {
        Some(p) => p,
        None if a == 0.0 => {
            return Err(admissibility(format!(
                "outer ring needs ωR > j11 (ωR = {:.12})",
                omega * b
            )))
        }
        None => return Err(Error::NoRoot(format!("χ below χ_ab for ({a}, {b})"))),
    };
    if (p - a).abs() <= BOUNDARY_TOL * b {
        return Ok(Solved::Filled(b - a));
    }
    if p < a {
        return Err(if a == 0.0 {
            admissibility(format!("outer ring needs ωR > j11 (ωR = {:.12})", omega * b))
        } else {
            Error::NoRoot(format!("χ below χ_ab for ({a}, {b})"))
        });
    }
    let s1r = b - p;
    let s0r = bisect(|r| s0(r, omega, b), 0.0, s1r);
    Ok(Solved::Root(RootBracket::new(s0r, s1r, target, |r| {
        g_increasing(r, omega, a, b)
    })))
}

/// Outer-ring width `r_2` anchored at `anchor`.
pub fn solve_r2(omega: f64, anchor: f64) -> Result<f64> {
    solve_r4(omega, 0.0, anchor)
}

/// Increasing-mode width `r_4` on the annulus `(a, b)`.
pub fn solve_r4(omega: f64, a: f64, b: f64) -> Result<f64> {
    match bracket_r4(omega, a, b)? {
        Solved::Filled(v) => Ok(v),
        Solved::Root(br) => br.solve(|r| g_increasing(r, omega, a, b)),
    }
}

/// Bracket for the decreasing-mode width `r_3` on `(a, b)` with `a > 0`.
pub fn bracket_r3(omega: f64, a: f64, b: f64) -> Result<Solved> {
    if a == 0.0 {
        return bracket_r1(omega, b);
    }
    let s = ratio_successor(omega, a);
    if (s - b).abs() <= BOUNDARY_TOL * b {
        return Ok(Solved::Filled(b - a));
    }
    if s > b {
        return Err(Error::NoRoot(format!("χ below χ_ab for ({a}, {b})")));
    }
    let s1r = s - a;
    let s0r = bisect(|r| s0(-r, omega, a), 0.0, s1r);
    Ok(Solved::Root(RootBracket::new(
        s0r,
        s1r,
        SupportEquation::AnnulusDecreasing,
        |r| g_decreasing(r, omega, a, b),
    )))
}

/// Decreasing-mode width `r_3` on `(a, b)`; `a = 0` is the inner ring.
pub fn solve_r3(omega: f64, a: f64, b: f64) -> Result<f64> {
    if a == 0.0 {
        return solve_r1(omega, b);
    }
    match bracket_r3(omega, a, b)? {
        Solved::Filled(v) => Ok(v),
        Solved::Root(br) => br.solve(|r| g_decreasing(r, omega, a, b)),
    }
}

/// Support radius `r*` of the whole-space solution.
pub fn solve_rstar_wholespace(omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::NoRoot("χ <= 1: the whole-space problem has no solution".into()));
    }
    let br = RootBracket::new(
        j0_root(1) / omega,
        j1_root(1) / omega,
        SupportEquation::WholeSpace,
        |r| g_wholespace(r, omega),
    );
    br.solve(|r| g_wholespace(r, omega))
}

/// A ring of `u` straddling an interior maximum `center` of `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub center: f64,
    /// Width of the support left of `center`.
    pub left: f64,
    /// Width of the support right of `center`.
    pub right: f64,
}

/// Continuity defect `S_0(r_l;ω,c) - S_0(-r_r;ω,c)` of a ring centred at `c`
/// between the valleys `left` and `right`.
pub fn peak_defect(omega: f64, left: f64, c: f64, right: f64) -> Result<(f64, f64, f64)> {
    let rl = solve_r4(omega, left, c)?;
    let rr = solve_r3(omega, c, right)?;
    Ok((s0(rl, omega, c) - s0(-rr, omega, c), rl, rr))
}

/// Admissible centre interval `(succ(left), pred(right))` for a ring.
pub fn peak_window(omega: f64, left: f64, right: f64) -> Result<(f64, f64)> {
    let lo = ratio_successor(omega, left);
    let hi = ratio_predecessor(omega, right)
        .ok_or_else(|| admissibility(format!("no room for a ring inside ({left}, {right})")))?;
    if hi <= lo {
        return Err(admissibility(format!(
            "no room for a ring inside ({left}, {right}) at ω = {omega}"
        )));
    }
    Ok((lo, hi))
}

/// Centre of a ring between `left` (0 for the disk centre) and `right`, from the
/// sign change of [`peak_defect`] across the admissible window.
pub fn solve_peak(omega: f64, left: f64, right: f64) -> Result<Peak> {
    let (lo, hi) = peak_window(omega, left, right)?;
    let span = hi - lo;
    let a = lo + 1e-9 * span;
    let b = hi - 1e-9 * span;
    let g = |c: f64| peak_defect(omega, left, c, right).map(|v| v.0).unwrap_or(f64::NAN);
    let (ga, gb) = (g(a), g(b));
    if !(ga > 0.0 && gb < 0.0) {
        return Err(Error::NoRoot(format!(
            "ring centre: no sign change on ({lo}, {hi}) (G = {ga:e}, {gb:e})"
        )));
    }
    let c = bisect(g, a, b);
    let (_, rl, rr) = peak_defect(omega, left, c, right)?;
    Ok(Peak {
        center: c,
        left: rl,
        right: rr,
    })
}

/// Volcano centre `R_0^*` with its two half-widths.
pub fn solve_volcano_center(omega: f64, big_r: f64) -> Result<Peak> {
    solve_peak(omega, 0.0, big_r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thresholds::omega_of;

    #[test]
    fn r1_bracket_and_residual() {
        let r1 = solve_r1(1.0, 5.0).unwrap();
        assert!(r1 > 2.4048 && r1 < 3.8317);
        assert!(f_inner(r1, 1.0, 5.0).abs() < 1e-10);
    }

    #[test]
    fn r1_decreases_in_chi() {
        let a = solve_r1(omega_of(50.0), 5.0).unwrap();
        let b = solve_r1(omega_of(10.0), 5.0).unwrap();
        assert!(a < b);
    }

    #[test]
    fn r2_in_lemma_bracket() {
        let w = omega_of(10.0);
        let r2 = solve_r2(w, 5.0).unwrap();
        let (s0r, s1r) = s_roots(w, 5.0).unwrap();
        assert!(s0r < r2 && r2 < s1r);
        assert!(f_outer(r2, w, 5.0).abs() < 1e-9);
    }

    #[test]
    fn r4_reduces_to_r2() {
        let w = omega_of(10.0);
        assert_eq!(solve_r4(w, 0.0, 5.0).unwrap(), solve_r2(w, 5.0).unwrap());
    }

    #[test]
    fn annulus_below_threshold_has_no_root() {
        let chi_ab = crate::thresholds::chi_ab(2.5, 5.0);
        let w = omega_of(0.9 * chi_ab);
        assert!(matches!(solve_r3(w, 2.5, 5.0), Err(Error::NoRoot(_))));
        assert!(matches!(solve_r4(w, 2.5, 5.0), Err(Error::NoRoot(_))));
    }

    #[test]
    fn wholespace_root() {
        let r = solve_rstar_wholespace(1.0).unwrap();
        assert!(r > 2.4048 && r < 3.8317);
        assert!(f_wholespace(r, 1.0).abs() < 1e-10);
        assert!(solve_rstar_wholespace(0.0).is_err());
    }
}
