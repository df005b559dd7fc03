//! Compound cylinder functions anchored at a radius.
//!
//! * `T_0(r; R) = K_1(R) I_0(r) + I_1(R) K_0(r)`, `T_1 = ∂_r T_0`
//! * `S_0(r; ω, R) = Y_1(ωR) J_0(ω(R-r)) - J_1(ωR) Y_0(ω(R-r))`, `S_1` with `J_1, Y_1` inside
//! * `V_0(r; ω, R) = Y_0(ωR) J_0(ω(R-r)) - J_0(ωR) Y_0(ω(R-r))`, `V_1` likewise
//!
//! `T` is evaluated through the scaled modified functions so large anchors do not overflow.

use std::f64::consts::PI;

use crate::specfun::{self, i0e, i1e, j0, j1, k0e, k1e, y0, y1};

/// Value and radial derivative of a compound function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompoundEval {
    pub value: f64,
    pub derivative_wrt_r: f64,
}

/// `T_order(r; anchor)`. Requires `r > 0` and `anchor > 0`.
pub fn t(order: u32, r: f64, anchor: f64) -> f64 {
    let up = (r - anchor).exp();
    let down = (anchor - r).exp();
    match order {
        0 => k1e(anchor) * i0e(r) * up + i1e(anchor) * k0e(r) * down,
        1 => k1e(anchor) * i1e(r) * up - i1e(anchor) * k1e(r) * down,
        _ => panic!("T is defined for orders 0 and 1"),
    }
}

pub fn t0(r: f64, anchor: f64) -> f64 {
    t(0, r, anchor)
}

pub fn t1(r: f64, anchor: f64) -> f64 {
    t(1, r, anchor)
}

/// `∂_r T_1(r; anchor)`, from the modified Bessel equation.
pub fn t2(r: f64, anchor: f64) -> f64 {
    t0(r, anchor) - t1(r, anchor) / r
}

pub fn t_eval(r: f64, anchor: f64) -> CompoundEval {
    CompoundEval {
        value: t0(r, anchor),
        derivative_wrt_r: t1(r, anchor),
    }
}

/// `S_order(r; ω, anchor)`. Requires `ω(anchor - r) > 0`.
pub fn s(order: u32, r: f64, omega: f64, anchor: f64) -> f64 {
    let z = omega * (anchor - r);
    let a = omega * anchor;
    match order {
        0 => y1(a) * j0(z) - j1(a) * y0(z),
        1 => y1(a) * j1(z) - j1(a) * y1(z),
        _ => panic!("S is defined for orders 0 and 1"),
    }
}

pub fn s0(r: f64, omega: f64, anchor: f64) -> f64 {
    s(0, r, omega, anchor)
}

pub fn s1(r: f64, omega: f64, anchor: f64) -> f64 {
    s(1, r, omega, anchor)
}

/// `∂_r S_1(r; ω, anchor) = -ω S_0 + S_1 / (anchor - r)`.
pub fn s1_dr(r: f64, omega: f64, anchor: f64) -> f64 {
    -omega * s0(r, omega, anchor) + s1(r, omega, anchor) / (anchor - r)
}

pub fn s_eval(r: f64, omega: f64, anchor: f64) -> CompoundEval {
    CompoundEval {
        value: s0(r, omega, anchor),
        derivative_wrt_r: omega * s1(r, omega, anchor),
    }
}

/// `V_order(r; ω, anchor)`.
pub fn v(order: u32, r: f64, omega: f64, anchor: f64) -> f64 {
    let z = omega * (anchor - r);
    let a = omega * anchor;
    match order {
        0 => y0(a) * j0(z) - j0(a) * y0(z),
        1 => y0(a) * j1(z) - j0(a) * y1(z),
        _ => panic!("V is defined for orders 0 and 1"),
    }
}

/// Leading large-`ω anchor` behaviour of `S_order`.
pub fn s_asymptotic(order: u32, r: f64, omega: f64, anchor: f64) -> f64 {
    let amp = 2.0 / (PI * omega * (anchor * (anchor - r)).sqrt());
    match order {
        0 => -amp * (omega * r).cos(),
        1 => amp * (omega * r).sin(),
        _ => panic!("S is defined for orders 0 and 1"),
    }
}

/// Two-term Hankel factors with rigorous remainder intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqBracket {
    /// Two-term value of `P` at the midpoint convention `θ = 1/2`.
    pub p: f64,
    pub q: f64,
    /// `[lo, hi]` enclosing the exact `P`.
    pub p_range: (f64, f64),
    /// `[lo, hi]` enclosing the exact `Q`.
    pub q_range: (f64, f64),
}

impl PqBracket {
    /// Interval for `J_n(x)` implied by the `P`, `Q` ranges.
    pub fn j_range(&self, x: f64, order: u32) -> (f64, f64) {
        let phase = x - (0.5 * order as f64 + 0.25) * PI;
        let (sp, cp) = phase.sin_cos();
        self.corners(x, |p, q| p * cp - q * sp)
    }

    /// Interval for `Y_n(x)` implied by the `P`, `Q` ranges.
    pub fn y_range(&self, x: f64, order: u32) -> (f64, f64) {
        let phase = x - (0.5 * order as f64 + 0.25) * PI;
        let (sp, cp) = phase.sin_cos();
        self.corners(x, |p, q| p * sp + q * cp)
    }

    fn corners(&self, x: f64, f: impl Fn(f64, f64) -> f64) -> (f64, f64) {
        let amp = (2.0 / (PI * x)).sqrt();
        let vals = [
            f(self.p_range.0, self.q_range.0),
            f(self.p_range.0, self.q_range.1),
            f(self.p_range.1, self.q_range.0),
            f(self.p_range.1, self.q_range.1),
        ];
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (amp * lo, amp * hi)
    }
}

/// `P(x, n)` and `Q(x, n)` truncated after two terms, with `θ ∈ (0, 1)` remainders
/// turned into intervals. Requires `x > 1`.
pub fn pq_expansion(x: f64, order: u32) -> PqBracket {
    let x2 = x * x;
    let x3 = x2 * x;
    let (p_range, q_range) = match order {
        0 => (
            (1.0 - 9.0 / (128.0 * x2), 1.0),
            (-1.0 / (8.0 * x), -1.0 / (8.0 * x) + 75.0 / (1024.0 * x3)),
        ),
        1 => (
            (1.0, 1.0 + 15.0 / (128.0 * x2)),
            (3.0 / (8.0 * x) - 105.0 / (1024.0 * x3), 3.0 / (8.0 * x)),
        ),
        _ => panic!("expansion is provided for orders 0 and 1"),
    };
    PqBracket {
        p: 0.5 * (p_range.0 + p_range.1),
        q: 0.5 * (q_range.0 + q_range.1),
        p_range,
        q_range,
    }
}

/// `P(x, n)`, `Q(x, n)` summed to machine precision (valid for large `x`).
pub fn pq_point(x: f64, order: u32) -> (f64, f64) {
    specfun::hankel_pq(order, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{i0, i1, k0, k1};

    #[test]
    fn t_definitions() {
        assert_eq!(t1(5.0, 5.0), 0.0);
        let direct = k1(5.0) * i0(1.0) + i1(5.0) * k0(1.0);
        assert!((t0(1.0, 5.0) - direct).abs() < 1e-14 * direct);
        let h = 1e-5;
        let fd = (t0(2.0 + h, 5.0) - t0(2.0 - h, 5.0)) / (2.0 * h);
        assert!((fd - t1(2.0, 5.0)).abs() < 1e-9);
    }

    #[test]
    fn t_signs_inside_anchor() {
        for i in 1..100 {
            let r = 0.05 * i as f64;
            assert!(t0(r, 5.0) > 0.0);
            assert!(t1(r, 5.0) < 0.0);
        }
    }

    #[test]
    fn s_at_anchor() {
        assert_eq!(s1(0.0, 2.0, 5.0), 0.0);
        assert!((s0(0.0, 2.0, 5.0) + 2.0 / (PI * 10.0)).abs() < 1e-15);
        let direct = y1(5.0) * j0(4.0) - j1(5.0) * y0(4.0);
        assert!((s0(1.0, 1.0, 5.0) - direct).abs() < 1e-15);
    }

    #[test]
    fn v_at_anchor() {
        assert_eq!(v(0, 0.0, 1.3, 4.0), 0.0);
        assert!((v(1, 0.0, 1.0, 3.0) - 2.0 / (3.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn cross_identity_example() {
        let (r, w, big) = (1.0, 2.0, 5.0);
        let lhs = s0(r, w, big) * v(1, r, w, big) - v(0, r, w, big) * s1(r, w, big);
        let rhs = -4.0 / (PI * PI * 4.0 * 5.0 * 4.0);
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn asymptotic_quarter_wave() {
        let (w, big) = (40.0, 5.0);
        let r = PI / (2.0 * w);
        let expect = 2.0 / (PI * w * (big * (big - r)).sqrt());
        assert!((s_asymptotic(1, r, w, big) - expect).abs() < 1e-15);
        assert!(s_asymptotic(0, r, w, big).abs() < 1e-17);
        assert!(s0(r, w, big).abs() < 1.0 / (w * big).powi(2));
    }

    #[test]
    fn pq_brackets() {
        let b = pq_expansion(7.0, 0);
        assert_eq!(b.p_range, (1.0 - 9.0 / (128.0 * 49.0), 1.0));
        let b = pq_expansion(7.0, 1);
        assert_eq!(b.q_range, (3.0 / 56.0 - 105.0 / (1024.0 * 343.0), 3.0 / 56.0));
        let x = 50.0;
        let (lo, hi) = pq_expansion(x, 0).j_range(x, 0);
        assert!(lo <= j0(x) && j0(x) <= hi);
    }
}
