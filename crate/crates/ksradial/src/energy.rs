//! Free energy `E(u, v) = (1/χ)∫u² + ∫(|∇v|² + v² - 2uv)` of steady states.
//!
//! At a steady state `E = (1/χ) Σ_i λ_i m_i`, where `λ_i = u - χv` on the `i`-th
//! support component and `m_i` is its mass. The quadrature value integrates the
//! defining functional directly and serves as a cross-check.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::assembler::{Family, ModelParams, PiecewiseRadialSolution};
use crate::error::{Error, Result};
use crate::numerics::Quadrature;
use crate::specfun::{j0, j1};
use crate::supports::solve_r1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    /// `(1/χ) Σ λ_i m_i`.
    pub total: f64,
    /// `(λ_i, m_i)` per support component.
    pub per_component: Vec<(f64, f64)>,
    /// Family-specific analytic value, when one exists.
    pub closed_form: Option<f64>,
    pub quadrature: f64,
    /// `|closed_form - quadrature|`, or `|total - quadrature|` without a closed form.
    pub discrepancy: f64,
}

/// Energy of the constant state, `-ω² M² / (χ π R²)`.
pub fn constant_energy(p: &ModelParams) -> f64 {
    let w = p.omega();
    -w * w * p.mass * p.mass / (p.chi * PI * p.radius * p.radius)
}

/// Inner-ring energy `(ω²M²/χπ) · ωJ_0(ωr_1) / (2 r_1 J_1(ωr_1) - ω r_1² J_0(ωr_1))`.
pub fn inner_ring_energy(p: &ModelParams) -> Result<f64> {
    let w = p.omega();
    let r1 = solve_r1(w, p.radius)?;
    let (a, b) = (j0(w * r1), j1(w * r1));
    Ok(w * w * p.mass * p.mass / (p.chi * PI) * w * a / (2.0 * r1 * b - w * r1 * r1 * a))
}

fn closed_form(sol: &PiecewiseRadialSolution) -> Result<Option<f64>> {
    let p = &sol.params;
    Ok(match sol.family {
        Family::Constant | Family::Bifurcation { .. } => Some(constant_energy(p)),
        Family::AnnulusBifurcation { a, .. } => {
            let w = p.omega();
            let area = PI * (p.radius * p.radius - a * a);
            Some(-w * w * p.mass * p.mass / (p.chi * area))
        }
        Family::InnerRing => Some(inner_ring_energy(p)?),
        _ => None,
    })
}

/// Direct integration of the free-energy functional over the sampled domain.
pub fn quadrature_energy(sol: &PiecewiseRadialSolution) -> f64 {
    let p = &sol.params;
    let q = Quadrature::new(20);
    let end = sol.sample_outer();
    sol.segments
        .iter()
        .map(|s| {
            let hi = s.hi.min(end);
            let f = |r: f64| {
                let e = s.form.eval(r, p);
                (e.u * e.u / p.chi + e.dv * e.dv + e.v * e.v - 2.0 * e.u * e.v) * r
            };
            2.0 * PI * q.integrate(f, s.lo, hi, 32)
        })
        .sum()
}

/// Energy of a steady state. Fails when `u - χv` is not constant on a component.
pub fn energy(sol: &PiecewiseRadialSolution) -> Result<EnergyReport> {
    if sol.family == Family::LogPotential {
        return Err(Error::InvalidInput(
            "the logarithmic potential has no finite free energy".into(),
        ));
    }
    let p = &sol.params;
    let u_sup = sol.sup_u(2000).max(1.0);
    for s in sol.segments.iter().filter(|s| s.form.carries_mass()) {
        let lambda = s.form.lambda(p).unwrap_or(f64::NAN);
        for i in 0..=16 {
            let r = s.lo + (s.hi - s.lo) * i as f64 / 16.0;
            let e = s.form.eval(r, p);
            let d = e.u - p.chi * e.v - lambda;
            if !(d.abs() <= 1e-8 * u_sup * p.chi) {
                return Err(Error::InvalidInput(format!(
                    "u - χv varies on the support near r = {r} (deviation {d:e})"
                )));
            }
        }
    }
    let comps = sol.components();
    let per_component: Vec<(f64, f64)> = comps.iter().map(|c| (c.lambda, c.mass)).collect();
    let total = per_component.iter().map(|(l, m)| l * m).sum::<f64>() / p.chi;
    let closed = closed_form(sol)?;
    let quadrature = quadrature_energy(sol);
    Ok(EnergyReport {
        total,
        per_component,
        closed_form: closed,
        quadrature,
        discrepancy: (closed.unwrap_or(total) - quadrature).abs(),
    })
}

/// One pairwise comparison in a [`Hierarchy`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ordering {
    pub lower: Family,
    pub higher: Family,
    pub holds: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hierarchy {
    /// Energies sorted ascending.
    pub sorted: Vec<(Family, f64)>,
    /// Orderings expected for the families present.
    pub checks: Vec<Ordering>,
}

impl Hierarchy {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Sort energies and check `E(inner) < E(outer) < E(constant)` and
/// `E(hat), E(volcano) < E(constant)` for the families present. A strict
/// inequality needs a margin of `1e-10 |E(constant)|`.
pub fn hierarchy(solutions: &[PiecewiseRadialSolution]) -> Result<Hierarchy> {
    let mut sorted = Vec::with_capacity(solutions.len());
    for s in solutions {
        if let Some(first) = solutions.first() {
            if first.params != s.params {
                return Err(Error::InvalidInput("hierarchy needs shared parameters".into()));
            }
        }
        sorted.push((s.family, energy(s)?.total));
    }
    let find = |pred: fn(&Family) -> bool| sorted.iter().filter(|(f, _)| pred(f)).cloned().collect::<Vec<_>>();
    let constant = find(|f| matches!(f, Family::Constant));
    let inner = find(|f| matches!(f, Family::InnerRing));
    let outer = find(|f| matches!(f, Family::OuterRing));
    let others = find(|f| {
        matches!(
            f,
            Family::MexicanHat { .. } | Family::VolcanoAttached | Family::VolcanoDetached
        )
    });
    let tol = constant.first().map_or(0.0, |c| 1e-10 * c.1.abs());
    let mut checks = Vec::new();
    let mut cmp = |lo: &(Family, f64), hi: &(Family, f64)| {
        checks.push(Ordering {
            lower: lo.0,
            higher: hi.0,
            holds: hi.1 - lo.1 > tol,
            margin: hi.1 - lo.1,
        })
    };
    for i in &inner {
        for o in &outer {
            cmp(i, o);
        }
    }
    for c in &constant {
        for x in inner.iter().chain(&outer).chain(&others) {
            cmp(x, c);
        }
    }
    sorted.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(Hierarchy { sorted, checks })
}

/// `F(k) = Σ m_i² / (R_i² - R_{i-1}²)` for the partition `0 = R_0 < R_1 < ... < R_k`
/// given as `radii = [R_1, ..., R_k]`.
pub fn partition_bound(masses: &[f64], radii: &[f64]) -> Result<f64> {
    if masses.is_empty() || masses.len() != radii.len() {
        return Err(Error::InvalidInput(
            "partition needs one radius per mass".into(),
        ));
    }
    if masses.iter().any(|m| !(*m > 0.0)) {
        return Err(Error::InvalidInput("masses must be positive".into()));
    }
    let mut prev = 0.0;
    let mut f = 0.0;
    for (m, r) in masses.iter().zip(radii) {
        if !(*r > prev) {
            return Err(Error::InvalidInput("radii must increase from 0".into()));
        }
        f += m * m / (r * r - prev * prev);
        prev = *r;
    }
    Ok(f)
}
