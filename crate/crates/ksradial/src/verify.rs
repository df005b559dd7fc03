//! Grid checks that an assembled solution solves the stationary system.
//!
//! Residuals use the analytic derivatives of each segment. Knot jumps compare
//! the left and right segment formulas at the shared radius. Mass is integrated
//! by Gauss-Legendre panels independently of the closed-form moments.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::assembler::{Family, Form, PiecewiseRadialSolution};
use crate::error::{Error, Result};
use crate::numerics::Quadrature;
use crate::specfun::j1_root;

/// Sampled radial profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialField {
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub dv: Vec<f64>,
}

impl RadialField {
    /// Sample a solution on `n + 1` uniform nodes; a node at the origin is
    /// moved to `1e-9` times the domain length.
    pub fn sample(sol: &PiecewiseRadialSolution, n: usize) -> Self {
        let lo = sol.inner;
        let hi = sol.sample_outer();
        let mut f = RadialField {
            r: Vec::with_capacity(n + 1),
            u: Vec::with_capacity(n + 1),
            v: Vec::with_capacity(n + 1),
            dv: Vec::with_capacity(n + 1),
        };
        for i in 0..=n {
            let mut r = lo + (hi - lo) * i as f64 / n as f64;
            if r == 0.0 {
                r = 1e-9 * hi;
            }
            let s = sol.eval(r);
            f.r.push(r);
            f.u.push(s.u);
            f.v.push(s.v);
            f.dv.push(s.dv);
        }
        f
    }
}

/// Equation residuals of a sampled field, by finite differences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldResidual {
    pub u_sup: f64,
    /// `max |-v'' - v'/r + v - u|` over interior nodes.
    pub v_residual: f64,
    /// Largest spread of `u - χv` over a run of nodes with `u > 1e-9 ‖u‖∞`.
    pub flux_constancy: f64,
}

/// Residuals of a field on increasing nodes; `log` drops the `+v` term.
pub fn field_residuals(f: &RadialField, chi: f64, log: bool) -> FieldResidual {
    let n = f.r.len();
    let u_sup = f.u.iter().cloned().fold(0.0, f64::max);
    let mut v_residual: f64 = 0.0;
    for i in 1..n.saturating_sub(1) {
        let (h0, h1) = (f.r[i] - f.r[i - 1], f.r[i + 1] - f.r[i]);
        let d1 = (f.v[i + 1] - f.v[i]) / h1;
        let d0 = (f.v[i] - f.v[i - 1]) / h0;
        let d2v = 2.0 * (d1 - d0) / (h0 + h1);
        let dv = (h0 * d1 + h1 * d0) / (h0 + h1);
        let screen = if log { 0.0 } else { f.v[i] };
        v_residual = v_residual.max((-d2v - dv / f.r[i] + screen - f.u[i]).abs());
    }
    let mut flux_constancy: f64 = 0.0;
    let mut run: Option<(f64, f64)> = None;
    for i in 0..n {
        if f.u[i] > 1e-9 * u_sup {
            let x = f.u[i] - chi * f.v[i];
            let (lo, hi) = run.unwrap_or((x, x));
            run = Some((lo.min(x), hi.max(x)));
        } else if let Some((lo, hi)) = run.take() {
            flux_constancy = flux_constancy.max(hi - lo);
        }
    }
    if let Some((lo, hi)) = run {
        flux_constancy = flux_constancy.max(hi - lo);
    }
    FieldResidual {
        u_sup,
        v_residual,
        flux_constancy,
    }
}

/// Jumps of the left and right segment formulas at one knot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KnotJump {
    pub r: f64,
    pub u: f64,
    pub v: f64,
    pub dv: f64,
    pub d2v: f64,
}

/// Support topology and monotonicity compared with the family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub components: usize,
    pub expected_components: usize,
    pub sign_changes: usize,
    pub expected_sign_changes: usize,
    /// Mismatches between the family parameters and the stored segments.
    pub inconsistencies: Vec<String>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.components == self.expected_components
            && self.sign_changes == self.expected_sign_changes
            && self.inconsistencies.is_empty()
    }
}

/// Tolerances applied by [`VerificationReport::failures`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub residual: f64,
    pub flux: f64,
    pub mass: f64,
    pub jump: f64,
    pub boundary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-8,
            flux: 1e-9,
            mass: 1e-10,
            jump: 1e-6,
            boundary: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub grid_size: usize,
    pub u_sup: f64,
    /// `max |v'' + v'/r - v + u|` (`-v` omitted for the logarithmic potential).
    pub v_residual_max: f64,
    /// Largest spread of `u - χv` over one support component.
    pub flux_constancy: f64,
    pub mass_error: f64,
    pub continuity: Vec<KnotJump>,
    /// Largest jump, relative to `max(1, ‖u‖∞, ‖v‖∞)`.
    pub max_jump: f64,
    pub u_nonnegative: bool,
    pub v_positive: bool,
    pub min_u: f64,
    pub min_v: f64,
    /// `|v'|` at the inner and outer ends of the domain.
    pub boundary: (f64, f64),
    pub structure: StructureReport,
}

impl VerificationReport {
    /// Names of the checks that fail under `tol`.
    pub fn failures_with(&self, tol: &Tolerances) -> Vec<String> {
        let scale = self.u_sup.max(1.0);
        let mut out = Vec::new();
        if !(self.v_residual_max <= tol.residual * scale) {
            out.push(format!("v_residual_max = {:e}", self.v_residual_max));
        }
        if !(self.flux_constancy <= tol.flux * self.u_sup.max(f64::MIN_POSITIVE)) {
            out.push(format!("flux_constancy = {:e}", self.flux_constancy));
        }
        if !(self.mass_error <= tol.mass) {
            out.push(format!("mass_error = {:e}", self.mass_error));
        }
        if !(self.max_jump <= tol.jump) {
            out.push(format!("continuity = {:e}", self.max_jump));
        }
        if !self.u_nonnegative {
            out.push(format!("positivity: min u = {:e}", self.min_u));
        }
        if !self.v_positive {
            out.push(format!("positivity: min v = {:e}", self.min_v));
        }
        let b = self.boundary.0.max(self.boundary.1);
        if !(b <= tol.boundary * scale) {
            out.push(format!("boundary: |v'| = {b:e}"));
        }
        if !self.structure.ok() {
            out.push(format!(
                "structure: {} components (expected {}), {} sign changes of v' (expected {}){}",
                self.structure.components,
                self.structure.expected_components,
                self.structure.sign_changes,
                self.structure.expected_sign_changes,
                self.structure
                    .inconsistencies
                    .iter()
                    .map(|s| format!("; {s}"))
                    .collect::<String>()
            ));
        }
        out
    }

    pub fn failures(&self) -> Vec<String> {
        self.failures_with(&Tolerances::default())
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

fn is_log(sol: &PiecewiseRadialSolution) -> bool {
    sol.family == Family::LogPotential
}

/// Mass `2π ∫ u r dr` by composite Gauss-Legendre on each segment.
pub fn quadrature_mass(sol: &PiecewiseRadialSolution) -> f64 {
    let q = Quadrature::new(20);
    sol.segments
        .iter()
        .filter(|s| s.form.carries_mass())
        .map(|s| {
            let f = |r: f64| s.form.eval(r, &sol.params).u * r;
            2.0 * PI * q.integrate(f, s.lo, s.hi, 16)
        })
        .sum()
}

fn knot_jumps(sol: &PiecewiseRadialSolution) -> Vec<KnotJump> {
    let p = &sol.params;
    sol.segments
        .windows(2)
        .map(|w| {
            let r = w[1].lo;
            let a = w[0].form.eval(r, p);
            let b = w[1].form.eval(r, p);
            KnotJump {
                r,
                u: (a.u - b.u).abs(),
                v: (a.v - b.v).abs(),
                dv: (a.dv - b.dv).abs(),
                d2v: (a.d2v - b.d2v).abs(),
            }
        })
        .collect()
}

/// Topology, monotonicity and parameter consistency.
pub fn structure_check(sol: &PiecewiseRadialSolution) -> StructureReport {
    let field = RadialField::sample(sol, 20_000);
    let u_sup = field.u.iter().cloned().fold(0.0, f64::max);
    let thr = 1e-9 * u_sup;
    let mut components = 0;
    let mut inside = false;
    for &u in &field.u {
        let now = u > thr;
        if now && !inside {
            components += 1;
        }
        inside = now;
    }
    let dv_sup = field.dv.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let dthr = 1e-7 * dv_sup;
    let mut sign_changes = 0;
    let mut last = 0.0f64;
    for &d in &field.dv {
        if d.abs() <= dthr {
            continue;
        }
        if last != 0.0 && d.signum() != last {
            sign_changes += 1;
        }
        last = d.signum();
    }
    StructureReport {
        components,
        expected_components: sol.family.expected_components(),
        sign_changes,
        expected_sign_changes: sol.family.expected_sign_changes(),
        inconsistencies: consistency(sol),
    }
}

fn consistency(sol: &PiecewiseRadialSolution) -> Vec<String> {
    let mut out = Vec::new();
    let p = &sol.params;
    let segs = &sol.segments;
    if segs.is_empty() {
        out.push("no segments".into());
        return out;
    }
    if segs[0].lo != sol.inner {
        out.push(format!("first segment starts at {} not {}", segs[0].lo, sol.inner));
    }
    for w in segs.windows(2) {
        if w[0].hi != w[1].lo {
            out.push(format!("segments not contiguous at {} / {}", w[0].hi, w[1].lo));
        }
    }
    if segs.iter().any(|s| !(s.hi > s.lo)) {
        out.push("empty or reversed segment".into());
    }
    let outer = sol.outer();
    if p.radius.is_finite() && outer != p.radius {
        out.push(format!("domain ends at {outer}, R = {}", p.radius));
    }
    let first_shell_anchor = segs.iter().find_map(|s| match s.form {
        Form::Shell { anchor, .. } => Some(anchor),
        _ => None,
    });
    match sol.family {
        Family::Bifurcation { k, epsilon } => match segs[0].form {
            Form::Mode {
                epsilon: e,
                wavenumber,
                ..
            } => {
                if e != epsilon {
                    out.push(format!("mode ε = {e}, family ε = {epsilon}"));
                }
                let want = j1_root(k) / p.radius;
                if (wavenumber - want).abs() > 1e-12 * want {
                    out.push(format!("wavenumber {wavenumber}, expected {want}"));
                }
            }
            _ => out.push("bifurcation family without a mode segment".into()),
        },
        Family::AnnulusBifurcation { a, epsilon } => {
            if sol.inner != a {
                out.push(format!("inner radius {} differs from a = {a}", sol.inner));
            }
            match segs[0].form {
                Form::SMode { epsilon: e, .. } if e == epsilon => {}
                _ => out.push(format!("annulus mode ε differs from family ε = {epsilon}")),
            }
        }
        Family::AnnulusDecreasing { a } | Family::AnnulusIncreasing { a } => {
            if sol.inner != a {
                out.push(format!("inner radius {} differs from a = {a}", sol.inner));
            }
        }
        Family::MexicanHat { r0 } | Family::AiryHat { r0, .. }
            if first_shell_anchor != Some(r0) => {
                out.push(format!(
                    "valley anchor {first_shell_anchor:?} differs from R0 = {r0}"
                ));
            }
        _ => {}
    }
    out
}

/// Verify `sol` on a grid of `grid_size + 1` nodes.
pub fn verify(sol: &PiecewiseRadialSolution, grid_size: usize) -> Result<VerificationReport> {
    if grid_size < 1000 {
        return Err(Error::InvalidInput(format!(
            "grid_size must be at least 1000, got {grid_size}"
        )));
    }
    let p = &sol.params;
    let log = is_log(sol);
    let lo = sol.inner;
    let hi = sol.sample_outer();
    let mut residual: f64 = 0.0;
    let mut u_sup: f64 = 0.0;
    let mut v_sup: f64 = 0.0;
    let mut min_u = f64::INFINITY;
    let mut min_v = f64::INFINITY;
    // (min λ, max λ) per support component
    let mut spans: Vec<(f64, f64)> = Vec::new();
    let mut prev_seg: Option<usize> = None;
    for i in 0..=grid_size {
        let mut r = lo + (hi - lo) * i as f64 / grid_size as f64;
        if r == 0.0 {
            r = 1e-9 * hi;
        }
        let idx = sol.segment_index(r);
        let seg = &sol.segments[idx];
        let s = seg.form.eval(r, p);
        let screen = if log { 0.0 } else { s.v };
        residual = residual.max((s.d2v + s.dv / r - screen + s.u).abs());
        u_sup = u_sup.max(s.u);
        v_sup = v_sup.max(s.v.abs());
        min_u = min_u.min(s.u);
        min_v = min_v.min(s.v);
        if seg.form.carries_mass() {
            let lambda = s.u - p.chi * s.v;
            let new_run = match prev_seg {
                Some(j) => !sol.segments[j].form.carries_mass(),
                None => true,
            };
            if new_run || spans.is_empty() {
                spans.push((lambda, lambda));
            } else {
                let last = spans.last_mut().unwrap();
                last.0 = last.0.min(lambda);
                last.1 = last.1.max(lambda);
            }
        }
        prev_seg = Some(idx);
    }
    for s in &sol.segments {
        if s.form.carries_mass() {
            u_sup = u_sup.max(s.form.eval(s.lo.max(1e-9 * hi), p).u);
        }
    }
    let flux = spans.iter().fold(0.0f64, |m, (a, b)| m.max(b - a));

    let mass = quadrature_mass(sol);
    let mass_error = (mass - p.mass).abs() / p.mass;

    let continuity = knot_jumps(sol);
    let jump_scale = 1f64.max(u_sup).max(v_sup);
    let max_jump = continuity
        .iter()
        .map(|j| j.u.max(j.v).max(j.dv).max(j.d2v))
        .fold(0.0, f64::max)
        / jump_scale;

    let inner_dv = if lo == 0.0 {
        inner_at_origin(sol)
    } else {
        sol.eval(lo).dv.abs()
    };
    let outer_dv = if sol.outer().is_finite() {
        sol.eval(hi).dv.abs()
    } else {
        0.0
    };
    let u_tol = 1e-12 * u_sup.max(1.0);
    Ok(VerificationReport {
        grid_size,
        u_sup,
        v_residual_max: residual,
        flux_constancy: flux,
        mass_error,
        continuity,
        max_jump,
        u_nonnegative: min_u >= -u_tol,
        v_positive: log || min_v > 0.0,
        min_u,
        min_v,
        boundary: (inner_dv, outer_dv),
        structure: structure_check(sol),
    })
}

/// `|v'(0)|`, evaluated exactly at the origin.
fn inner_at_origin(sol: &PiecewiseRadialSolution) -> f64 {
    sol.segments[0].form.eval(0.0, &sol.params).dv.abs()
}
