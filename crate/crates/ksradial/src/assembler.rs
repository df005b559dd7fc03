//! Piecewise closed-form steady states.
//!
//! A solution is an ordered list of segments. Each segment carries one [`Form`]
//! whose fields are the coefficients of `u` and `v` on that interval. On the
//! support of `u` the profile is a cylinder-function wave with `u - χv` constant;
//! off the support `u = 0` and `v` is a modified-Bessel shell. Amplitudes are
//! chained left to right by continuity of `v` and scaled to the total mass.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::compound::{t0, t1};
use crate::error::{admissibility, Error, Result};
use crate::specfun::{i0, i1, j0, j0_root, j1, j1_root, k0e, k1e, y0, y1};
use crate::supports::{self, solve_peak};
use crate::thresholds::{
    chi2_star, chi_ab, chi_k, mode_index, omega_of, ratio_predecessor, ratio_successor, rbar0,
    BOUNDARY_TOL,
};

/// Serialize an unbounded radius as `null`.
mod unbounded {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

/// Chemotaxis rate, disk radius and total mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub chi: f64,
    /// Disk radius; infinite for the whole plane.
    #[serde(rename = "R", with = "unbounded")]
    pub radius: f64,
    #[serde(rename = "M")]
    pub mass: f64,
}

impl ModelParams {
    pub fn new(chi: f64, radius: f64, mass: f64) -> Result<Self> {
        if !(chi > 0.0 && chi.is_finite()) {
            return Err(Error::InvalidInput(format!("chi must be positive, got {chi}")));
        }
        if !(radius > 0.0) {
            return Err(Error::InvalidInput(format!("R must be positive, got {radius}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidInput(format!("M must be positive, got {mass}")));
        }
        Ok(ModelParams { chi, radius, mass })
    }

    /// Whole-plane parameters.
    pub fn plane(chi: f64, mass: f64) -> Result<Self> {
        Self::new(chi, f64::INFINITY, mass)
    }

    /// `ω = sqrt(χ - 1)`.
    pub fn omega(&self) -> f64 {
        omega_of(self.chi)
    }

    /// `ū = M / (π R²)`.
    pub fn ubar(&self) -> f64 {
        self.mass / (PI * self.radius * self.radius)
    }
}

/// Family tag with the free parameters that select a member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Constant,
    Bifurcation { k: u32, epsilon: f64 },
    InnerRing,
    OuterRing,
    AnnulusDecreasing { a: f64 },
    AnnulusIncreasing { a: f64 },
    AnnulusBifurcation { a: f64, epsilon: f64 },
    MexicanHat { r0: f64 },
    VolcanoAttached,
    VolcanoDetached,
    AiryHat { k0: u32, r0: f64 },
    AiryVolcano { k0: u32 },
    WholeSpace,
    LogPotential,
}

impl Family {
    /// Number of sign changes of `v'` the family must show.
    pub fn expected_sign_changes(&self) -> usize {
        match *self {
            Family::Bifurcation { k, epsilon } if epsilon != 0.0 => k as usize - 1,
            Family::MexicanHat { .. } | Family::VolcanoAttached | Family::VolcanoDetached => 1,
            Family::AiryHat { k0, .. } | Family::AiryVolcano { k0 } => k0 as usize - 1,
            _ => 0,
        }
    }

    /// Number of connected components of the support of `u`.
    pub fn expected_components(&self) -> usize {
        match *self {
            Family::MexicanHat { .. } => 2,
            Family::AiryHat { k0, .. } => k0 as usize / 2 + 1,
            Family::AiryVolcano { k0 } => (k0 as usize).div_ceil(2),
            _ => 1,
        }
    }
}

/// Coefficients of `(u, v)` on one segment. `Z` below is `J_0(ωr)` for caps and
/// `S_0(A - r; ω, A) = Y_1(ωA) J_0(ωr) - J_1(ωA) Y_0(ωr)` for waves anchored at `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", content = "coefficients", rename_all = "snake_case")]
pub enum Form {
    /// `u = v = level`.
    Flat { level: f64 },
    /// `u = level + ε χ J_0(kr)`, `v = level + ε J_0(kr)`.
    Mode { level: f64, epsilon: f64, wavenumber: f64 },
    /// `u = level + ε χ Z_A(r)`, `v = level + ε Z_A(r)`.
    SMode { level: f64, epsilon: f64, anchor: f64 },
    /// `u = amp (J_0(ωr) - J_0(ω e))`, `v = amp (J_0(ωr)/χ - J_0(ω e))`.
    Cap { amp: f64, edge: f64 },
    /// `u = amp (Z_A(r) - Z_A(e))`, `v = amp (Z_A(r)/χ - Z_A(e))`.
    Wave { amp: f64, anchor: f64, edge: f64 },
    /// `u = 0`, `v = amp T_0(r; A)`.
    Shell { amp: f64, anchor: f64 },
    /// `u = 0`, `v = amp I_0(r)`.
    IShell { amp: f64 },
    /// `u = 0`, `v = amp K_0(r)`.
    KShell { amp: f64 },
    /// Logarithmic potential: `u = amp (J_0(√χ r) - J_0(√χ e))`, `v = amp J_0(√χ r)/χ + level`.
    LogCap { amp: f64, edge: f64, level: f64 },
    /// Logarithmic potential tail: `u = 0`, `v = -amp ln r`.
    LogTail { amp: f64 },
}

/// Pointwise values of `u`, `v` and the first two derivatives of `v`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Sample {
    pub u: f64,
    pub v: f64,
    pub dv: f64,
    pub d2v: f64,
}

/// `(Z, Z', Z'')` for `Z = J_0(ωr)`.
fn cap_z(omega: f64, r: f64) -> (f64, f64, f64) {
    let x = omega * r;
    let j1_over_x = if x < 1e-8 { 0.5 } else { j1(x) / x };
    let z = j0(x);
    (z, -omega * j1(x), -omega * omega * (z - j1_over_x))
}

/// `(Z, Z', Z'')` for `Z = Y_1(ωA) J_0(ωr) - J_1(ωA) Y_0(ωr)`.
fn wave_z(omega: f64, anchor: f64, r: f64) -> (f64, f64, f64) {
    let (ya, ja) = (y1(omega * anchor), j1(omega * anchor));
    let x = omega * r;
    let z = ya * j0(x) - ja * y0(x);
    let w = ya * j1(x) - ja * y1(x);
    (z, -omega * w, -omega * omega * (z - w / x))
}

/// `∫ Z r dr` antiderivative for the wave anchored at `A`.
fn wave_moment(omega: f64, anchor: f64, r: f64) -> f64 {
    let (ya, ja) = (y1(omega * anchor), j1(omega * anchor));
    let x = omega * r;
    r * (ya * j1(x) - ja * y1(x)) / omega
}

fn i_shell(r: f64) -> (f64, f64, f64) {
    let i1r = if r < 1e-8 { 0.5 } else { i1(r) / r };
    let a = i0(r);
    (a, i1(r), a - i1r)
}

fn k_shell(r: f64) -> (f64, f64, f64) {
    let s = (-r).exp();
    let (a, b) = (k0e(r) * s, k1e(r) * s);
    (a, -b, a + b / r)
}

impl Form {
    /// True when `u` is not identically zero on the segment.
    pub fn carries_mass(&self) -> bool {
        !matches!(
            self,
            Form::Shell { .. } | Form::IShell { .. } | Form::KShell { .. } | Form::LogTail { .. }
        )
    }

    pub fn eval(&self, r: f64, p: &ModelParams) -> Sample {
        let chi = p.chi;
        let w = p.omega();
        match *self {
            Form::Flat { level } => Sample {
                u: level,
                v: level,
                dv: 0.0,
                d2v: 0.0,
            },
            Form::Mode {
                level,
                epsilon,
                wavenumber,
            } => {
                let (z, dz, d2z) = cap_z(wavenumber, r);
                Sample {
                    u: level + epsilon * chi * z,
                    v: level + epsilon * z,
                    dv: epsilon * dz,
                    d2v: epsilon * d2z,
                }
            }
            Form::SMode {
                level,
                epsilon,
                anchor,
            } => {
                let (z, dz, d2z) = wave_z(w, anchor, r);
                Sample {
                    u: level + epsilon * chi * z,
                    v: level + epsilon * z,
                    dv: epsilon * dz,
                    d2v: epsilon * d2z,
                }
            }
            Form::Cap { amp, edge } => {
                let (z, dz, d2z) = cap_z(w, r);
                let ze = j0(w * edge);
                Sample {
                    u: amp * (z - ze),
                    v: amp * (z / chi - ze),
                    dv: amp * dz / chi,
                    d2v: amp * d2z / chi,
                }
            }
            Form::Wave { amp, anchor, edge } => {
                let (z, dz, d2z) = wave_z(w, anchor, r);
                let ze = wave_z(w, anchor, edge).0;
                Sample {
                    u: amp * (z - ze),
                    v: amp * (z / chi - ze),
                    dv: amp * dz / chi,
                    d2v: amp * d2z / chi,
                }
            }
            Form::Shell { amp, anchor } => {
                let (a, b) = (t0(r, anchor), t1(r, anchor));
                Sample {
                    u: 0.0,
                    v: amp * a,
                    dv: amp * b,
                    d2v: amp * (a - b / r),
                }
            }
            Form::IShell { amp } => {
                let (a, b, c) = i_shell(r);
                Sample {
                    u: 0.0,
                    v: amp * a,
                    dv: amp * b,
                    d2v: amp * c,
                }
            }
            Form::KShell { amp } => {
                let (a, b, c) = k_shell(r);
                Sample {
                    u: 0.0,
                    v: amp * a,
                    dv: amp * b,
                    d2v: amp * c,
                }
            }
            Form::LogCap { amp, edge, level } => {
                let k = chi.sqrt();
                let (z, dz, d2z) = cap_z(k, r);
                Sample {
                    u: amp * (z - j0(k * edge)),
                    v: amp * z / chi + level,
                    dv: amp * dz / chi,
                    d2v: amp * d2z / chi,
                }
            }
            Form::LogTail { amp } => Sample {
                u: 0.0,
                v: -amp * r.ln(),
                dv: -amp / r,
                d2v: amp / (r * r),
            },
        }
    }

    /// `2π ∫_lo^hi u r dr` in closed form.
    pub fn mass(&self, lo: f64, hi: f64, p: &ModelParams) -> f64 {
        let w = p.omega();
        let chi = p.chi;
        let disk = |c: f64| c * (hi * hi - lo * lo) / 2.0;
        let j_moment = |k: f64, r: f64| r * j1(k * r) / k;
        let inner = match *self {
            Form::Flat { level } => disk(level),
            Form::Mode {
                level,
                epsilon,
                wavenumber: k,
            } => disk(level) + epsilon * chi * (j_moment(k, hi) - j_moment(k, lo)),
            Form::SMode {
                level,
                epsilon,
                anchor,
            } => {
                disk(level)
                    + epsilon * chi * (wave_moment(w, anchor, hi) - wave_moment(w, anchor, lo))
            }
            Form::Cap { amp, edge } => {
                amp * (j_moment(w, hi) - j_moment(w, lo)) - disk(amp * j0(w * edge))
            }
            Form::Wave { amp, anchor, edge } => {
                let ze = wave_z(w, anchor, edge).0;
                amp * (wave_moment(w, anchor, hi) - wave_moment(w, anchor, lo)) - disk(amp * ze)
            }
            Form::LogCap { amp, edge, .. } => {
                let k = chi.sqrt();
                amp * (j_moment(k, hi) - j_moment(k, lo)) - disk(amp * j0(k * edge))
            }
            _ => 0.0,
        };
        2.0 * PI * inner
    }

    /// `u - χ v` on the support, when the segment carries mass.
    pub fn lambda(&self, p: &ModelParams) -> Option<f64> {
        let chi = p.chi;
        let w = p.omega();
        match *self {
            Form::Flat { level } | Form::Mode { level, .. } | Form::SMode { level, .. } => {
                Some(level * (1.0 - chi))
            }
            Form::Cap { amp, edge } => Some(amp * (chi - 1.0) * j0(w * edge)),
            Form::Wave { amp, anchor, edge } => {
                Some(amp * (chi - 1.0) * wave_z(w, anchor, edge).0)
            }
            Form::LogCap { level, .. } => Some(-chi * level),
            _ => None,
        }
    }

    fn scaled(self, s: f64) -> Form {
        match self {
            Form::Cap { amp, edge } => Form::Cap {
                amp: amp * s,
                edge,
            },
            Form::Wave { amp, anchor, edge } => Form::Wave {
                amp: amp * s,
                anchor,
                edge,
            },
            Form::Shell { amp, anchor } => Form::Shell {
                amp: amp * s,
                anchor,
            },
            Form::IShell { amp } => Form::IShell { amp: amp * s },
            Form::KShell { amp } => Form::KShell { amp: amp * s },
            other => other,
        }
    }

    /// Mutable view of every stored coefficient, in declaration order.
    pub fn coefficients_mut(&mut self) -> Vec<&mut f64> {
        match self {
            Form::Flat { level } => vec![level],
            Form::Mode {
                level,
                epsilon,
                wavenumber,
            } => vec![level, epsilon, wavenumber],
            Form::SMode {
                level,
                epsilon,
                anchor,
            } => vec![level, epsilon, anchor],
            Form::Cap { amp, edge } => vec![amp, edge],
            Form::Wave { amp, anchor, edge } => vec![amp, anchor, edge],
            Form::Shell { amp, anchor } => vec![amp, anchor],
            Form::IShell { amp } | Form::KShell { amp } | Form::LogTail { amp } => vec![amp],
            Form::LogCap { amp, edge, level } => vec![amp, edge, level],
        }
    }
}

/// One interval of a piecewise solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: f64,
    #[serde(with = "unbounded")]
    pub hi: f64,
    #[serde(flatten)]
    pub form: Form,
}

/// A connected component of the support of `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub lo: f64,
    pub hi: f64,
    pub lambda: f64,
    pub mass: f64,
}

/// Radial steady state assembled from closed-form segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseRadialSolution {
    pub params: ModelParams,
    pub family: Family,
    /// Left end of the domain: 0 for disks, `a` for annuli.
    pub inner: f64,
    pub segments: Vec<Segment>,
}

impl PiecewiseRadialSolution {
    /// Right end of the domain (infinite for the plane).
    pub fn outer(&self) -> f64 {
        self.segments.last().map_or(self.inner, |s| s.hi)
    }

    /// Interior segment boundaries.
    pub fn knots(&self) -> Vec<f64> {
        self.segments.iter().skip(1).map(|s| s.lo).collect()
    }

    /// Index of the segment containing `r` (the left one at a knot).
    pub fn segment_index(&self, r: f64) -> usize {
        self.segments
            .iter()
            .position(|s| r <= s.hi)
            .unwrap_or(self.segments.len() - 1)
    }

    pub fn eval(&self, r: f64) -> Sample {
        let s = &self.segments[self.segment_index(r)];
        s.form.eval(r, &self.params)
    }

    /// Total mass from the closed-form moments.
    pub fn mass(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.form.mass(s.lo, s.hi, &self.params))
            .sum()
    }

    /// Support components with their Lagrange constants and masses.
    pub fn components(&self) -> Vec<Component> {
        let mut out: Vec<Component> = Vec::new();
        let mut open = false;
        for s in &self.segments {
            match s.form.lambda(&self.params) {
                Some(lambda) => {
                    let m = s.form.mass(s.lo, s.hi, &self.params);
                    match out.last_mut() {
                        Some(c) if open => {
                            c.hi = s.hi;
                            c.mass += m;
                        }
                        _ => out.push(Component {
                            lo: s.lo,
                            hi: s.hi,
                            lambda,
                            mass: m,
                        }),
                    }
                    open = true;
                }
                None => open = false,
            }
        }
        out
    }

    /// Largest `u` over a uniform sample plus all segment ends.
    pub fn sup_u(&self, samples: usize) -> f64 {
        let hi = self.sample_outer();
        let mut m: f64 = 0.0;
        for i in 0..=samples {
            let r = self.inner + (hi - self.inner) * i as f64 / samples as f64;
            m = m.max(self.eval(r).u);
        }
        for s in &self.segments {
            if s.form.carries_mass() {
                m = m.max(s.form.eval(s.lo, &self.params).u);
                if s.hi.is_finite() {
                    m = m.max(s.form.eval(s.hi, &self.params).u);
                }
            }
        }
        m
    }

    /// Right end used for sampling: the domain end, or the last knot plus 30 on the plane.
    pub fn sample_outer(&self) -> f64 {
        let hi = self.outer();
        if hi.is_finite() {
            hi
        } else {
            self.segments.last().map_or(0.0, |s| s.lo) + 30.0
        }
    }
}

// ---------------------------------------------------------------------------
// Chain construction

/// Unit-amplitude piece of a chain.
#[derive(Debug, Clone, Copy)]
enum Piece {
    Cap { edge: f64 },
    Wave { anchor: f64, edge: f64 },
    Shell { anchor: f64 },
    IShell,
    KShell,
}

impl Piece {
    fn unit(self) -> Form {
        match self {
            Piece::Cap { edge } => Form::Cap { amp: 1.0, edge },
            Piece::Wave { anchor, edge } => Form::Wave {
                amp: 1.0,
                anchor,
                edge,
            },
            Piece::Shell { anchor } => Form::Shell { amp: 1.0, anchor },
            Piece::IShell => Form::IShell { amp: 1.0 },
            Piece::KShell => Form::KShell { amp: 1.0 },
        }
    }
}

/// Join pieces `(lo, hi, piece)` by continuity of `v` and normalise to mass `M`.
/// Zero-length pieces are dropped.
fn chain(
    p: ModelParams,
    family: Family,
    inner: f64,
    pieces: &[(f64, f64, Piece)],
) -> Result<PiecewiseRadialSolution> {
    let mut segments: Vec<Segment> = Vec::new();
    for &(lo, hi, piece) in pieces {
        if !(hi > lo) {
            continue;
        }
        let form = piece.unit();
        let v_left = segments.last().map_or(1.0, |prev| prev.form.eval(lo, &p).v);
        let v_unit = form.eval(lo, &p).v;
        if !(v_unit.is_finite() && v_unit != 0.0) {
            return Err(Error::NoRoot(format!("degenerate junction at r = {lo}")));
        }
        let form = form.scaled(v_left / v_unit);
        segments.push(Segment { lo, hi, form });
    }
    let mut sol = PiecewiseRadialSolution {
        params: p,
        family,
        inner,
        segments,
    };
    let m = sol.mass();
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::NoRoot(format!("chain mass {m} is not positive")));
    }
    let s = p.mass / m;
    for seg in &mut sol.segments {
        seg.form = seg.form.scaled(s);
    }
    Ok(sol)
}

fn require_disk(p: &ModelParams) -> Result<()> {
    if p.radius.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput("family requires a finite radius".into()))
    }
}

fn near(x: f64, target: f64) -> bool {
    (x - target).abs() <= 1e-9 * target.abs().max(1.0)
}

/// Constant steady state `u = v = M/(πR²)`.
pub fn constant(p: ModelParams) -> Result<PiecewiseRadialSolution> {
    require_disk(&p)?;
    Ok(PiecewiseRadialSolution {
        params: p,
        family: Family::Constant,
        inner: 0.0,
        segments: vec![Segment {
            lo: 0.0,
            hi: p.radius,
            form: Form::Flat { level: p.ubar() },
        }],
    })
}

/// Admissible `ε` interval of the `k`-th bifurcation family.
pub fn bifurcation_epsilon_range(p: &ModelParams, k: u32) -> (f64, f64) {
    let ck = chi_k(p.radius, k);
    let u = p.ubar();
    (-u / ck, u / (-j0(j1_root(1)) * ck))
}

/// Member `ε` of the family bifurcating from the constant at `χ = χ_k`.
pub fn bifurcation_family(p: ModelParams, k: u32, epsilon: f64) -> Result<PiecewiseRadialSolution> {
    require_disk(&p)?;
    if k == 0 {
        return Err(Error::InvalidInput("mode index k starts at 1".into()));
    }
    let ck = chi_k(p.radius, k);
    if !near(p.chi, ck) {
        return Err(admissibility(format!("bifurcation needs χ = χ_{k} = {ck}, got {}", p.chi)));
    }
    let (lo, hi) = bifurcation_epsilon_range(&p, k);
    let slack = 1e-12 * (hi - lo);
    if epsilon < lo - slack || epsilon > hi + slack {
        return Err(admissibility(format!(
            "ε = {epsilon} outside [{lo}, {hi}]: u would turn negative"
        )));
    }
    Ok(PiecewiseRadialSolution {
        params: p,
        family: Family::Bifurcation { k, epsilon },
        inner: 0.0,
        segments: vec![Segment {
            lo: 0.0,
            hi: p.radius,
            form: Form::Mode {
                level: p.ubar(),
                epsilon,
                wavenumber: j1_root(k) / p.radius,
            },
        }],
    })
}

fn require_above_chi1(p: &ModelParams) -> Result<()> {
    let c1 = chi_k(p.radius, 1);
    if p.chi < c1 * (1.0 - BOUNDARY_TOL) {
        return Err(admissibility(format!(
            "χ = {} <= χ_1 = {c1}: only the constant solution exists",
            p.chi
        )));
    }
    Ok(())
}

/// Radially decreasing ring supported on `[0, r_1)`.
pub fn inner_ring(p: ModelParams) -> Result<PiecewiseRadialSolution> {
    require_disk(&p)?;
    require_above_chi1(&p)?;
    let big_r = p.radius;
    let r1 = supports::solve_r1(p.omega(), big_r)?;
    chain(
        p,
        Family::InnerRing,
        0.0,
        &[
            (0.0, r1, Piece::Cap { edge: r1 }),
            (r1, big_r, Piece::Shell { anchor: big_r }),
        ],
    )
}

/// Radially increasing ring supported on `(R - r_2, R]`.
pub fn outer_ring(p: ModelParams) -> Result<PiecewiseRadialSolution> {
    require_disk(&p)?;
    require_above_chi1(&p)?;
    let big_r = p.radius;
    let r2 = supports::solve_r2(p.omega(), big_r)?;
    if r2 >= big_r {
        // At χ_1 the ring fills the disk and `u` vanishes only at the centre.
        let (lo, _) = bifurcation_epsilon_range(&p, 1);
        return Ok(PiecewiseRadialSolution {
            params: p,
            family: Family::OuterRing,
            inner: 0.0,
            segments: vec![Segment {
                lo: 0.0,
                hi: big_r,
                form: Form::Mode {
                    level: p.ubar(),
                    epsilon: lo,
                    wavenumber: j1_root(1) / big_r,
                },
            }],
        });
    }
    let e = big_r - r2;
    chain(
        p,
        Family::OuterRing,
        0.0,
        &[
            (0.0, e, Piece::IShell),
            (
                e,
                big_r,
                Piece::Wave {
                    anchor: big_r,
                    edge: e,
                },
            ),
        ],
    )
}

/// Direction of a monotone annulus mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Decreasing,
    Increasing,
}

/// Monotone mode on the annulus `(a, R)` with no-flux conditions at both ends.
pub fn annulus_mode(p: ModelParams, a: f64, dir: Direction) -> Result<PiecewiseRadialSolution> {
    require_disk(&p)?;
    let b = p.radius;
    if !(a >= 0.0 && a < b) {
        return Err(Error::InvalidInput(format!("annulus needs 0 <= a < R, got a = {a}")));
    }
    if a == 0.0 {
        let mut sol = match dir {
            Direction::Decreasing => inner_ring(p)?,
            Direction::Increasing => outer_ring(p)?,
        };
        sol.family = match dir {
            Direction::Decreasing => Family::AnnulusDecreasing { a },
            Direction::Increasing => Family::AnnulusIncreasing { a },
        };
        return Ok(sol);
    }
    let w = p.omega();
    match dir {
        Direction::Decreasing => {
            let r3 = supports::solve_r3(w, a, b)?;
            let e = a + r3;
            chain(
                p,
                Family::AnnulusDecreasing { a },
                a,
                &[
                    (a, e, Piece::Wave { anchor: a, edge: e }),
                    (e, b, Piece::Shell { anchor: b }),
                ],
            )
        }
        Direction::Increasing => {
            let r4 = supports::solve_r4(w, a, b)?;
            let e = b - r4;
            chain(
                p,
                Family::AnnulusIncreasing { a },
                a,
                &[
                    (a, e, Piece::Shell { anchor: a }),
                    (e, b, Piece::Wave { anchor: b, edge: e }),
                ],
            )
        }
    }
}

/// Admissible `ε` interval of the annulus family at `χ = χ_{a,R}`.
pub fn annulus_epsilon_range(p: &ModelParams, a: f64) -> (f64, f64) {
    let b = p.radius;
    let w = omega_of(chi_ab(a, b));
    let u = p.mass / (PI * (b * b - a * a));
    let chi = w * w + 1.0;
    let za = wave_z(w, b, a).0;
    let zb = wave_z(w, b, b).0;
    let ends = [-u / (chi * za), -u / (chi * zb)];
    (ends[0].min(ends[1]), ends[0].max(ends[1]))
}

/// Member `ε` of the family bifurcating from the constant on `(a, R)` at `χ = χ_{a,R}`.
pub fn annulus_bifurcation(p: ModelParams, a: f64, epsilon: f64) -> Result<PiecewiseRadialSolution> {
    require_disk(&p)?;
    let b = p.radius;
    if !(a > 0.0 && a < b) {
        return Err(Error::InvalidInput(format!("annulus needs 0 < a < R, got a = {a}")));
    }
    let cab = chi_ab(a, b);
    if !near(p.chi, cab) {
        return Err(admissibility(format!("annulus bifurcation needs χ = χ_ab = {cab}, got {}", p.chi)));
    }
    let (lo, hi) = annulus_epsilon_range(&p, a);
    let slack = 1e-12 * (hi - lo);
    if epsilon < lo - slack || epsilon > hi + slack {
        return Err(admissibility(format!(
            "ε = {epsilon} outside [{lo}, {hi}]: u would turn negative"
        )));
    }
    Ok(PiecewiseRadialSolution {
        params: p,
        family: Family::AnnulusBifurcation { a, epsilon },
        inner: a,
        segments: vec![Segment {
            lo: a,
            hi: b,
            form: Form::SMode {
                level: p.mass / (PI * (b * b - a * a)),
                epsilon,
                anchor: b,
            },
        }],
    })
}

/// Admissible interval `[R̲_0, R̄_0^{(k0)}]` for the first valley of a hat.
pub fn hat_window(p: &ModelParams, k0: u32) -> Result<(f64, f64)> {
    let w = p.omega();
    let k = mode_index(w * p.radius);
    if k0 < 2 || k0 > k {
        return Err(admissibility(format!(
            "k0 = {k0} needs χ > χ_{k0} (χ = {}, highest mode {k})",
            p.chi
        )));
    }
    Ok((j1_root(1) / w, rbar0(w, p.radius, k0)?))
}

/// Non-monotone solution with a central ring and a boundary ring; `v` has its
/// minimum at `r0`.
pub fn mexican_hat(p: ModelParams, r0: f64) -> Result<PiecewiseRadialSolution> {
    let mut sol = ring_chain(p, 2, Variant::Hat, Some(r0))?;
    sol.family = Family::MexicanHat { r0 };
    Ok(sol)
}

/// Single interior ring; the support touches `R` when `χ <= χ_2^*`.
pub fn volcano(p: ModelParams) -> Result<PiecewiseRadialSolution> {
    require_disk(&p)?;
    let c2 = chi_k(p.radius, 2);
    if p.chi <= c2 * (1.0 + BOUNDARY_TOL) {
        return Err(admissibility(format!("volcano needs χ > χ_2 = {c2}, got {}", p.chi)));
    }
    let star = chi2_star(p.radius)?;
    if p.chi <= star * (1.0 + 1e-9) {
        volcano_attached(p)
    } else {
        ring_chain(p, 2, Variant::Volcano, None).map(|mut s| {
            s.family = Family::VolcanoDetached;
            s
        })
    }
}

fn volcano_attached(p: ModelParams) -> Result<PiecewiseRadialSolution> {
    let w = p.omega();
    let big_r = p.radius;
    let rb = rbar0(w, big_r, 2)?;
    let r2 = supports::solve_r2(w, rb)?;
    let e = rb - r2;
    chain(
        p,
        Family::VolcanoAttached,
        0.0,
        &[
            (0.0, e, Piece::IShell),
            (e, big_r, Piece::Wave { anchor: rb, edge: e }),
        ],
    )
}

/// Whether `v` starts with a maximum (hat) or a minimum (volcano) at the centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Hat,
    Volcano,
}

/// Higher-order concentric-ring solution with `k0 - 1` sign changes of `v'`.
///
/// `v` has critical points `0 = x_0 < x_1 < ... < x_{k0} = R` alternating
/// between maxima (rings of `u`) and minima (gaps). Minima are placed at a
/// common relative position `θ` between their extreme admissible locations;
/// each interior maximum is then fixed by continuity of `v`.
pub fn airy(
    p: ModelParams,
    k0: u32,
    variant: Variant,
    r0: Option<f64>,
) -> Result<PiecewiseRadialSolution> {
    match variant {
        Variant::Hat => {
            let r0 = r0.ok_or_else(|| Error::InvalidInput("hat variant needs R0".into()))?;
            let mut sol = ring_chain(p, k0, variant, Some(r0))?;
            sol.family = Family::AiryHat { k0, r0 };
            Ok(sol)
        }
        Variant::Volcano if k0 == 2 => {
            let mut sol = volcano(p)?;
            if sol.family == Family::VolcanoDetached {
                sol.family = Family::AiryVolcano { k0 };
            }
            Ok(sol)
        }
        Variant::Volcano => {
            let mut sol = ring_chain(p, k0, variant, None)?;
            sol.family = Family::AiryVolcano { k0 };
            Ok(sol)
        }
    }
}

fn iterate(f: impl Fn(f64) -> Option<f64>, x: f64, n: u32) -> Option<f64> {
    (0..n).try_fold(x, |c, _| f(c))
}

fn ring_chain(
    p: ModelParams,
    k0: u32,
    variant: Variant,
    r0: Option<f64>,
) -> Result<PiecewiseRadialSolution> {
    require_disk(&p)?;
    let w = p.omega();
    let big_r = p.radius;
    let k = mode_index(w * big_r);
    if k0 < 2 || k0 > k {
        return Err(admissibility(format!(
            "k0 = {k0} needs χ > χ_{k0} (χ = {}, highest mode {k})",
            p.chi
        )));
    }
    let succ = |c: f64| Some(ratio_successor(w, c));
    let pred = |c: f64| ratio_predecessor(w, c);
    // Largest admissible position of critical point j.
    let upper = |j: u32| {
        iterate(pred, big_r, k0 - j)
            .ok_or_else(|| Error::NoRoot("no ratio match below R".into()))
    };

    let n = k0 as usize;
    let mut x = vec![0.0; n + 1];
    x[n] = big_r;
    let theta = match variant {
        Variant::Hat => {
            let r0 = r0.ok_or_else(|| Error::InvalidInput("hat needs R0".into()))?;
            let (lo, hi) = (j1_root(1) / w, upper(1)?);
            let tol = BOUNDARY_TOL * big_r;
            if r0 < lo - tol || r0 > hi + tol {
                return Err(admissibility(format!(
                    "R0 = {r0} outside [R_under0, R_bar0] = [{lo}, {hi}]"
                )));
            }
            x[1] = r0.clamp(lo, hi);
            if k0 > 2 && (x[1] - lo <= tol || hi - x[1] <= tol) {
                return Err(admissibility(format!(
                    "R0 = {r0} at an end of [{lo}, {hi}]: rings of order {k0} degenerate"
                )));
            }
            if hi > lo {
                (x[1] - lo) / (hi - lo)
            } else {
                0.0
            }
        }
        Variant::Volcano => 0.5,
    };
    let mut j = match variant {
        Variant::Hat => 3,
        Variant::Volcano => 2,
    };
    while j < n {
        let lo = iterate(succ, x[j - 2], 2).unwrap();
        x[j] = lo + theta * (upper(j as u32)? - lo);
        j += 2;
    }

    let is_peak = |j: usize| j.is_multiple_of(2) == (variant == Variant::Hat);
    // Support interval of each ring, keyed by its critical point.
    let mut rings: Vec<(f64, f64, Piece)> = Vec::new();
    for j in 0..=n {
        if !is_peak(j) {
            continue;
        }
        if j == 0 {
            let r1 = supports::solve_r1(w, x[1])?;
            rings.push((0.0, r1, Piece::Cap { edge: r1 }));
        } else if j == n {
            let r4 = supports::solve_r4(w, x[n - 1], big_r)?;
            let e = big_r - r4;
            rings.push((
                e,
                big_r,
                Piece::Wave {
                    anchor: big_r,
                    edge: e,
                },
            ));
        } else {
            let pk = solve_peak(w, x[j - 1], x[j + 1])?;
            let e = pk.center - pk.left;
            rings.push((
                e,
                pk.center + pk.right,
                Piece::Wave {
                    anchor: pk.center,
                    edge: e,
                },
            ));
        }
    }

    let mut pieces = Vec::new();
    let mut cursor = 0.0;
    let mut next = 0;
    for j in 0..=n {
        if is_peak(j) {
            let (lo, hi, piece) = rings[next];
            pieces.push((lo, hi, piece));
            cursor = hi;
            next += 1;
        } else {
            let end = rings.get(next).map_or(big_r, |r| r.0);
            let piece = if j == 0 {
                Piece::IShell
            } else {
                Piece::Shell { anchor: x[j] }
            };
            pieces.push((cursor, end, piece));
            cursor = end;
        }
    }
    let family = match variant {
        Variant::Hat => Family::AiryHat {
            k0,
            r0: r0.unwrap_or(x[1]),
        },
        Variant::Volcano => Family::AiryVolcano { k0 },
    };
    chain(p, family, 0.0, &pieces)
}

/// Whole-plane solution: a cap on `[0, r*)` with a `K_0` tail.
pub fn whole_space(p: ModelParams) -> Result<PiecewiseRadialSolution> {
    if p.radius.is_finite() {
        return Err(Error::InvalidInput("whole-space solution needs R = ∞".into()));
    }
    let rs = supports::solve_rstar_wholespace(p.omega())?;
    chain(
        p,
        Family::WholeSpace,
        0.0,
        &[
            (0.0, rs, Piece::Cap { edge: rs }),
            (rs, f64::INFINITY, Piece::KShell),
        ],
    )
}

/// Plane solution with the logarithmic potential `-Δv = u`; `v` is fixed by
/// `v = -(M/2π) ln r` outside the support.
pub fn log_potential(p: ModelParams) -> Result<PiecewiseRadialSolution> {
    let k = p.chi.sqrt();
    let edge = j0_root(1) / k;
    let tail = p.mass / (2.0 * PI);
    let amp = p.mass * k / (2.0 * PI * edge * j1(j0_root(1)));
    Ok(PiecewiseRadialSolution {
        params: ModelParams {
            radius: f64::INFINITY,
            ..p
        },
        family: Family::LogPotential,
        inner: 0.0,
        segments: vec![
            Segment {
                lo: 0.0,
                hi: edge,
                form: Form::LogCap {
                    amp,
                    edge,
                    level: -tail * edge.ln(),
                },
            },
            Segment {
                lo: edge,
                hi: f64::INFINITY,
                form: Form::LogTail { amp: tail },
            },
        ],
    })
}
