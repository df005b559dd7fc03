//! Real-argument Bessel functions of orders 0, 1 and 2 and their positive roots.
//!
//! Small arguments use power series. Ordinary functions on the middle band use
//! Miller's backward recurrence with the Neumann series for `Y`. Large arguments
//! use the Hankel expansion. `K` on `x >= 2` is computed from the integral
//! `K_n(x) = ∫_0^∞ exp(-x cosh t) cosh(nt) dt` with the trapezoid rule, which
//! converges geometrically for this integrand.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_MAX: f64 = 2.0;
const HANKEL_MIN: f64 = 25.0;
const I_ASYMPTOTIC_MIN: f64 = 30.0;
const K_SERIES_MAX: f64 = 2.0;

/// Family of Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    J,
    Y,
    I,
    K,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecfunError {
    #[error("argument {0} outside the domain of the requested function")]
    Domain(f64),
    #[error("unsupported order {0}")]
    Order(u32),
    #[error("result overflows f64 at x = {0}")]
    Overflow(f64),
}

/// Checked evaluation of `Kind_order(x)`.
pub fn bessel(kind: Kind, order: u32, x: f64) -> Result<f64, SpecfunError> {
    if order > 2 || (order == 2 && kind == Kind::Y) || (order == 2 && kind == Kind::K) {
        return Err(SpecfunError::Order(order));
    }
    if !(x >= 0.0) {
        return Err(SpecfunError::Domain(x));
    }
    match kind {
        Kind::J => Ok([j0, j1, j2][order as usize](x)),
        Kind::Y | Kind::K if x == 0.0 => Err(SpecfunError::Domain(x)),
        Kind::Y => Ok([y0, y1][order as usize](x)),
        Kind::K => {
            let v = [k0, k1][order as usize](x);
            if v == 0.0 && x > 0.0 {
                // Underflow is not an error, but report it through the scaled form.
                Ok(0.0)
            } else {
                Ok(v)
            }
        }
        Kind::I => {
            let v = [i0, i1, i2][order as usize](x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(SpecfunError::Overflow(x))
            }
        }
    }
}

/// Exponentially scaled evaluation: `exp(-x) I_n(x)` and `exp(x) K_n(x)`.
/// `J` and `Y` are returned unscaled.
pub fn bessel_scaled(kind: Kind, order: u32, x: f64) -> Result<f64, SpecfunError> {
    match kind {
        Kind::I => {
            if order > 2 {
                return Err(SpecfunError::Order(order));
            }
            if !(x >= 0.0) {
                return Err(SpecfunError::Domain(x));
            }
            Ok([i0e, i1e, i2e][order as usize](x))
        }
        Kind::K => {
            if order > 1 {
                return Err(SpecfunError::Order(order));
            }
            if !(x > 0.0) {
                return Err(SpecfunError::Domain(x));
            }
            Ok([k0e, k1e][order as usize](x))
        }
        _ => bessel(kind, order, x),
    }
}

// ---------------------------------------------------------------------------
// J and Y

pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_MAX {
        j_series(0, x)
    } else if x < HANKEL_MIN {
        miller(x).j0
    } else {
        hankel(0, x).0
    }
}

pub fn j1(x: f64) -> f64 {
    let s = x.signum();
    let x = x.abs();
    let v = if x < SERIES_MAX {
        j_series(1, x)
    } else if x < HANKEL_MIN {
        miller(x).j1
    } else {
        hankel(1, x).0
    };
    s * v
}

pub fn j2(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_MAX {
        j_series(2, x)
    } else if x < HANKEL_MIN {
        miller(x).j2
    } else {
        hankel(2, x).0
    }
}

/// `Y_0(x)` for `x > 0`; NaN otherwise.
pub fn y0(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x < SERIES_MAX {
        y0_series(x)
    } else if x < HANKEL_MIN {
        miller(x).y0
    } else {
        hankel(0, x).1
    }
}

/// `Y_1(x)` for `x > 0`; NaN otherwise.
pub fn y1(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x < SERIES_MAX {
        y1_series(x)
    } else if x < HANKEL_MIN {
        miller(x).y1
    } else {
        hankel(1, x).1
    }
}

fn j_series(n: u32, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= 0.5 * x / k as f64;
    }
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + n as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn y0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * k);
        harmonic += 1.0 / k;
        let add = -term * harmonic;
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    (2.0 / PI) * (((0.5 * x).ln() + EULER_GAMMA) * j0(x) + sum)
}

fn y1_series(x: f64) -> f64 {
    // psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut hk = 0.0;
    let mut hk1 = 1.0;
    let mut sum = term * (hk + hk1 - 2.0 * EULER_GAMMA);
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + 1.0));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1.0);
        let add = term * (hk + hk1 - 2.0 * EULER_GAMMA);
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    -2.0 / (PI * x) + (2.0 / PI) * (0.5 * x).ln() * j1(x) - (0.5 * x / PI) * sum
}

struct MillerValues {
    j0: f64,
    j1: f64,
    j2: f64,
    y0: f64,
    y1: f64,
}

fn miller(x: f64) -> MillerValues {
    let n = (((1.2 * x) as usize + 40) + 1) & !1;
    let mut v = [0.0f64; 80];
    v[n] = 1e-30;
    for k in (1..=n).rev() {
        v[k - 1] = (2.0 * k as f64 / x) * v[k] - v[k + 1];
        if v[k - 1].abs() > 1e250 {
            for w in v[k - 1..].iter_mut() {
                *w *= 1e-250;
            }
        }
    }
    let mut norm = v[0];
    let mut k = 2;
    while k <= n {
        norm += 2.0 * v[k];
        k += 2;
    }
    for w in v[..=n].iter_mut() {
        *w /= norm;
    }
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k < n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sign * v[2 * k] / k as f64;
        s1 += sign * (v[2 * k - 1] - v[2 * k + 1]) / k as f64;
        k += 1;
    }
    MillerValues {
        j0: v[0],
        j1: v[1],
        j2: v[2],
        y0: (2.0 / PI) * (lg * v[0] - 2.0 * s0),
        y1: (2.0 / PI) * (-v[0] / x + lg * v[1] + s1),
    }
}

/// Hankel expansion terms `P(x, n)`, `Q(x, n)` summed to machine precision.
pub(crate) fn hankel_pq(n: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (n * n) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut t = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        t *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if t.abs() > prev {
            break;
        }
        prev = t.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * t;
        } else {
            p += sign * t;
        }
        if t.abs() < 1e-17 {
            break;
        }
    }
    (p, q)
}

fn hankel(n: u32, x: f64) -> (f64, f64) {
    let (p, q) = hankel_pq(n, x);
    let (s, c) = x.sin_cos();
    // phase x - (n/2 + 1/4) pi
    let (cp, sp) = match n {
        0 => ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2),
        1 => ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2),
        _ => (-(c + s) * FRAC_1_SQRT_2, -(s - c) * FRAC_1_SQRT_2),
    };
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * cp - q * sp), amp * (p * sp + q * cp))
}

// ---------------------------------------------------------------------------
// I and K

pub fn i0(x: f64) -> f64 {
    let x = x.abs();
    if x < I_ASYMPTOTIC_MIN {
        i_series(0, x)
    } else {
        i0e(x) * x.exp()
    }
}

pub fn i1(x: f64) -> f64 {
    let s = x.signum();
    let x = x.abs();
    let v = if x < I_ASYMPTOTIC_MIN {
        i_series(1, x)
    } else {
        i1e(x) * x.exp()
    };
    s * v
}

pub fn i2(x: f64) -> f64 {
    let x = x.abs();
    if x < I_ASYMPTOTIC_MIN {
        i_series(2, x)
    } else {
        i2e(x) * x.exp()
    }
}

pub fn i0e(x: f64) -> f64 {
    let x = x.abs();
    if x < I_ASYMPTOTIC_MIN {
        i_series(0, x) * (-x).exp()
    } else {
        i_asymptotic(0, x)
    }
}

pub fn i1e(x: f64) -> f64 {
    let s = x.signum();
    let x = x.abs();
    let v = if x < I_ASYMPTOTIC_MIN {
        i_series(1, x) * (-x).exp()
    } else {
        i_asymptotic(1, x)
    };
    s * v
}

pub fn i2e(x: f64) -> f64 {
    let x = x.abs();
    if x < I_ASYMPTOTIC_MIN {
        i_series(2, x) * (-x).exp()
    } else {
        i_asymptotic(2, x)
    }
}

fn i_series(n: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= 0.5 * x / k as f64;
    }
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + n as f64));
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    sum
}

fn i_asymptotic(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let mut sum = 1.0;
    let mut t = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        t *= -(mu - odd * odd) / (k as f64 * 8.0 * x);
        if t.abs() > prev {
            break;
        }
        prev = t.abs();
        sum += t;
        if t.abs() < 1e-17 {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// `K_0(x)` for `x > 0`; NaN otherwise.
pub fn k0(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x < K_SERIES_MAX {
        k0_series(x)
    } else {
        k_integral(0, x) * (-x).exp()
    }
}

/// `K_1(x)` for `x > 0`; NaN otherwise.
pub fn k1(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x < K_SERIES_MAX {
        k1_series(x)
    } else {
        k_integral(1, x) * (-x).exp()
    }
}

pub fn k0e(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x < K_SERIES_MAX {
        k0_series(x) * x.exp()
    } else {
        k_integral(0, x)
    }
}

pub fn k1e(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x < K_SERIES_MAX {
        k1_series(x) * x.exp()
    } else {
        k_integral(1, x)
    }
}

fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = 0.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * k);
        harmonic += 1.0 / k;
        let add = term * harmonic;
        sum += add;
        if add <= 1e-17 * sum {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0(x) + sum
}

fn k1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut hk = 0.0;
    let mut hk1 = 1.0;
    let mut sum = hk + hk1 - 2.0 * EULER_GAMMA;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + 1.0));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1.0);
        let add = term * (hk + hk1 - 2.0 * EULER_GAMMA);
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    1.0 / x + (0.5 * x).ln() * i1(x) - 0.25 * x * sum
}

/// `exp(x) K_n(x) = ∫_0^∞ exp(-x (cosh t - 1)) cosh(n t) dt` by the trapezoid rule.
fn k_integral(n: u32, x: f64) -> f64 {
    // The peak narrows like x^(-1/2); the step follows it.
    let h = (0.5 / x.sqrt()).min(0.0625);
    let mut sum = 0.5;
    let mut k = 1.0;
    loop {
        let t = k * h;
        let sh = (0.5 * t).sinh();
        let e = (-2.0 * x * sh * sh).exp();
        let term = if n == 0 { e } else { e * t.cosh() };
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        k += 1.0;
    }
    sum * h
}

// ---------------------------------------------------------------------------
// Roots

/// Functions whose positive roots are tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootKind {
    J0,
    J1,
    Y1,
}

impl RootKind {
    fn eval(self, x: f64) -> f64 {
        match self {
            RootKind::J0 => j0(x),
            RootKind::J1 => j1(x),
            RootKind::Y1 => y1(x),
        }
    }

    fn deriv(self, x: f64) -> f64 {
        match self {
            RootKind::J0 => -j1(x),
            RootKind::J1 => j0(x) - j1(x) / x,
            RootKind::Y1 => y0(x) - y1(x) / x,
        }
    }

    /// McMahon's leading terms.
    fn guess(self, n: u32) -> f64 {
        let (nu, shift) = match self {
            RootKind::J0 => (0.0, 0.25),
            RootKind::J1 => (1.0, 0.25),
            RootKind::Y1 => (1.0, 0.75),
        };
        let beta = (n as f64 + 0.5 * nu - shift) * PI;
        let mu = 4.0 * nu * nu;
        beta - (mu - 1.0) / (8.0 * beta) - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta).powi(3))
    }
}

/// `n`-th positive root (`n >= 1`) of the given function.
pub fn nth_root(kind: RootKind, n: u32) -> f64 {
    assert!(n >= 1, "root index starts at 1");
    let g = kind.guess(n);
    let mut x = g;
    for _ in 0..50 {
        let dx = kind.eval(x) / kind.deriv(x);
        x -= dx;
        if dx.abs() <= 1e-15 * x {
            break;
        }
    }
    if (x - g).abs() < 0.5 && x > 0.0 {
        return polish(kind, x);
    }
    // Newton left the basin; bisect a bracket of half-width 1 around the guess.
    let (mut lo, mut hi) = ((g - 1.0).max(1e-3), g + 1.0);
    let mut flo = kind.eval(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = kind.eval(mid);
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    polish(kind, 0.5 * (lo + hi))
}

fn polish(kind: RootKind, x: f64) -> f64 {
    let d = kind.deriv(x);
    if d != 0.0 {
        x - kind.eval(x) / d
    } else {
        x
    }
}

/// Ordered table of the first positive roots of one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselRootTable {
    pub kind: RootKind,
    pub roots: Vec<f64>,
}

impl BesselRootTable {
    pub fn new(kind: RootKind, count: u32) -> Self {
        BesselRootTable {
            kind,
            roots: (1..=count).map(|n| nth_root(kind, n)).collect(),
        }
    }

    /// Largest `k` with `roots[k-1] < x`, or 0.
    pub fn count_below(&self, x: f64) -> usize {
        self.roots.partition_point(|&r| r < x)
    }
}

/// `j_{0,n}`.
pub fn j0_root(n: u32) -> f64 {
    nth_root(RootKind::J0, n)
}

/// `j_{1,n}`.
pub fn j1_root(n: u32) -> f64 {
    nth_root(RootKind::J1, n)
}

/// `y_{1,n}`.
pub fn y1_root(n: u32) -> f64 {
    nth_root(RootKind::Y1, n)
}

/// Index `k` with `j_{1,k} < x <= j_{1,k+1}`; 0 when `x <= j_{1,1}`.
pub fn j1_interval(x: f64) -> u32 {
    let mut k = 0;
    while j1_root(k + 1) < x {
        k += 1;
    }
    k
}
