//! Critical chemotaxis rates and geometric thresholds.
//!
//! Most quantities here reduce to the ratio-matching equation
//! `J_1(ωr)/Y_1(ωr) = J_1(ωc)/Y_1(ωc)`. The ratio is strictly decreasing between
//! consecutive roots of `Y_1`, so every match is isolated to one such branch and
//! found by bisection on `Φ_c(r) = Y_1(ωc) J_1(ωr) - J_1(ωc) Y_1(ωr)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::compound::{s0, t0, t1};
use crate::error::{admissibility, Error, Result};
use crate::numerics::{bisect, brackets};
use crate::specfun::{i0e, i1e, j1, j1_root, y1, y1_root};
use crate::supports;

/// Relative slack used when a parameter sits exactly on a threshold.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Critical values gathered for one parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSet {
    pub chi_k: Vec<f64>,
    pub omega_ab: Option<f64>,
    pub chi2_star: Option<f64>,
    pub rbar0: Option<f64>,
    pub rbar0_k: BTreeMap<u32, f64>,
}

impl ThresholdSet {
    /// Everything that exists for disk radius `R` at rate `chi`. `kmax` bounds
    /// the list of bifurcation values; `annulus` adds `ω_{a,b}`.
    pub fn compute(big_r: f64, chi: f64, kmax: u32, annulus: Option<(f64, f64)>) -> Self {
        let chi_k = (1..=kmax).map(|k| chi_k(big_r, k)).collect();
        let omega_ab = annulus.map(|(a, b)| omega_ab(a, b));
        let w = omega_of(chi);
        let mut rbar0_k = BTreeMap::new();
        for k0 in 2..=kmax.max(2) {
            if let Ok(v) = rbar0(w, big_r, k0) {
                rbar0_k.insert(k0, v);
            }
        }
        ThresholdSet {
            chi_k,
            omega_ab,
            chi2_star: chi2_star(big_r).ok(),
            rbar0: rbar0_k.get(&2).copied(),
            rbar0_k,
        }
    }
}

/// `ω = sqrt(χ - 1)`, or 0 for `χ <= 1`.
pub fn omega_of(chi: f64) -> f64 {
    (chi - 1.0).max(0.0).sqrt()
}

/// `χ_k = (j_{1,k}/R)^2 + 1`.
pub fn chi_k(big_r: f64, k: u32) -> f64 {
    let w = j1_root(k) / big_r;
    w * w + 1.0
}

/// Index `k` with `j_{1,k} < z <= j_{1,k+1}`, counting a value within
/// [`BOUNDARY_TOL`] of a root as having passed it.
pub fn mode_index(z: f64) -> u32 {
    let mut k = 0;
    while j1_root(k + 1) < z * (1.0 + BOUNDARY_TOL) {
        k += 1;
    }
    k
}

fn phi(c: f64, omega: f64, r: f64) -> f64 {
    y1(omega * c) * j1(omega * r) - j1(omega * c) * y1(omega * r)
}

/// Number of `Y_1` roots strictly below `z`.
fn y1_branch(z: f64) -> u32 {
    let mut m = 0;
    while y1_root(m + 1) < z {
        m += 1;
    }
    m
}

fn y1_root_or_zero(m: u32) -> f64 {
    if m == 0 {
        0.0
    } else {
        y1_root(m)
    }
}

/// Smallest `r > a` with `J_1(ωr)/Y_1(ωr) = J_1(ωa)/Y_1(ωa)`; `j_{1,1}/ω` when `a = 0`.
pub fn ratio_successor(omega: f64, a: f64) -> f64 {
    if a <= 0.0 {
        return j1_root(1) / omega;
    }
    let m = y1_branch(omega * a);
    let lo = y1_root(m + 1) / omega;
    let hi = y1_root(m + 2) / omega;
    bisect(|r| phi(a, omega, r), lo, hi)
}

/// Largest `r < b` with `J_1(ωr)/Y_1(ωr) = J_1(ωb)/Y_1(ωb)`, if any.
pub fn ratio_predecessor(omega: f64, b: f64) -> Option<f64> {
    let m = y1_branch(omega * b);
    if m == 0 {
        return None;
    }
    let hi = y1_root(m) / omega;
    let lo = if m == 1 {
        1e-9 * hi
    } else {
        y1_root_or_zero(m - 1) / omega
    };
    let f = |r: f64| phi(b, omega, r);
    if !brackets(f(lo), f(hi)) {
        return None;
    }
    Some(bisect(f, lo, hi))
}

/// `ω_{a,b}`: the smallest `ω > j_{1,1}/b` matching the `J_1/Y_1` ratio at `a` and `b`.
pub fn omega_ab(a: f64, b: f64) -> f64 {
    assert!(0.0 <= a && a < b, "omega_ab needs 0 <= a < b");
    let lo = j1_root(1) / b;
    if a == 0.0 {
        return lo;
    }
    let hi = j1_root(1) / (b - a);
    // The successor of `a` moves inward as ω grows.
    bisect(|w| ratio_successor(w, a) - b, lo, hi)
}

/// `χ_{a,b} = ω_{a,b}^2 + 1`.
pub fn chi_ab(a: f64, b: f64) -> f64 {
    let w = omega_ab(a, b);
    w * w + 1.0
}

/// Lower end of the admissible valley interval, `j_{1,1}/ω`.
pub fn r_under0(omega: f64) -> f64 {
    j1_root(1) / omega
}

/// `R̄_0^{(k0)}`: the `(k0-1)`-th ratio match below `R`.
pub fn rbar0(omega: f64, big_r: f64, k0: u32) -> Result<f64> {
    let k = mode_index(omega * big_r);
    if k0 < 2 || k0 > k {
        return Err(admissibility(format!(
            "k0 = {k0} outside [2, {k}] for ωR = {:.6}",
            omega * big_r
        )));
    }
    let mut c = big_r;
    for _ in 1..k0 {
        c = ratio_predecessor(omega, c)
            .ok_or_else(|| Error::NoRoot(format!("no ratio match below r = {c}")))?;
    }
    Ok(c)
}

/// Sign function whose change locates `χ_2^*`: `S_0(r_ν; ω, R) + 2/(πωR)` with
/// `r_ν = R - R̄_0 + r_2(ω, R̄_0)`.
pub fn chi2_star_indicator(omega: f64, big_r: f64) -> Result<f64> {
    let rb = rbar0(omega, big_r, 2)?;
    let r2 = supports::solve_r2(omega, rb)?;
    let r_nu = big_r - rb + r2;
    Ok(s0(r_nu, omega, big_r) + 2.0 / (PI * omega * big_r))
}

/// `χ_2^*` with the default scan (step `1e-3 j_{1,2}/R`, window up to `50 j_{1,2}/R`).
pub fn chi2_star(big_r: f64) -> Result<f64> {
    let w2 = j1_root(2) / big_r;
    chi2_star_scan(big_r, 1e-3 * w2, 50.0 * w2)
}

/// `χ_2^*` scanning `ω` upward from `j_{1,2}/R` in steps of `step` up to `omega_max`.
pub fn chi2_star_scan(big_r: f64, step: f64, omega_max: f64) -> Result<f64> {
    let w2 = j1_root(2) / big_r;
    let f = |w: f64| chi2_star_indicator(w, big_r).unwrap_or(f64::NAN);
    let mut a = w2 + step;
    let mut fa = f(a);
    while a < omega_max {
        let b = a + step;
        let fb = f(b);
        if fa.is_finite() && fb.is_finite() && brackets(fa, fb) {
            let w = bisect(f, a, b);
            return Ok(w * w + 1.0);
        }
        a = b;
        fa = fb;
    }
    Err(Error::SearchExhausted(format!(
        "no sign change of the chi2* indicator for omega in ({w2}, {omega_max})"
    )))
}

/// `R̂_0`: root in `(0, R)` of `I_0(r)/I_1(r) = -T_0(r;R)/T_1(r;R)`.
pub fn r_hat0(big_r: f64) -> f64 {
    let f = |r: f64| i0e(r) / i1e(r) + t0(r, big_r) / t1(r, big_r);
    bisect(f, 1e-6 * big_r, big_r * (1.0 - 1e-9))
}
