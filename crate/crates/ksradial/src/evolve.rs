//! Radial finite-volume integrator for `u_t = ∇·(u∇u - χu∇v)` on a disk.
//!
//! Writing the flux as `u ∇ξ` with `ξ = χv - u`, face velocities are
//! differences of `ξ` and the density is upwinded by their sign. The
//! semi-discrete scheme conserves mass exactly, keeps `u >= 0` under the step
//! bound and dissipates the discrete free energy. By default `v` solves
//! `-Δv + v = u` at every step; the parabolic option advances
//! `v_t = Δv - v + u` implicitly instead.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::assembler::ModelParams;
use crate::error::{Error, Result};
use crate::numerics::solve_tridiagonal;
use crate::verify::RadialField;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolveConfig {
    pub params: ModelParams,
    pub cells: usize,
    /// Upper bound on the step.
    pub dt_initial: f64,
    pub t_end: f64,
    /// Fraction of the transport step bound `h / max|χ∂v|` actually used.
    pub cfl: f64,
    pub snapshot_every: usize,
    /// Advance `v` by its own parabolic equation instead of solving it each step.
    pub parabolic: bool,
    /// Stop early once `max |u_t| <= steady_tol · max u`.
    pub steady_tol: Option<f64>,
}

impl EvolveConfig {
    pub fn new(params: ModelParams, cells: usize, t_end: f64) -> Self {
        EvolveConfig {
            params,
            cells,
            dt_initial: 1e-2,
            t_end,
            cfl: 0.5,
            snapshot_every: 1000,
            parabolic: false,
            steady_tol: None,
        }
    }
}

/// Uniform cell-centred grid on `[0, R]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub h: f64,
    pub centres: Vec<f64>,
    /// Face areas `2π r_{i+1/2}` for the interior faces `i = 0..n-1`.
    pub areas: Vec<f64>,
    /// Cell areas `π (r_{i+1/2}² - r_{i-1/2}²)`.
    pub volumes: Vec<f64>,
}

impl Grid {
    pub fn new(radius: f64, cells: usize) -> Self {
        let h = radius / cells as f64;
        let centres = (0..cells).map(|i| (i as f64 + 0.5) * h).collect();
        let areas = (1..cells).map(|i| 2.0 * PI * i as f64 * h).collect();
        let volumes = (0..cells)
            .map(|i| {
                let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
                PI * (b * b - a * a)
            })
            .collect();
        Grid {
            h,
            centres,
            areas,
            volumes,
        }
    }

    pub fn len(&self) -> usize {
        self.centres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centres.is_empty()
    }

    pub fn mass(&self, u: &[f64]) -> f64 {
        u.iter().zip(&self.volumes).map(|(a, b)| a * b).sum()
    }

    /// Cell values of `f` at the centres, scaled to total mass `m`.
    pub fn project(&self, f: impl Fn(f64) -> f64, m: f64) -> Vec<f64> {
        let mut u: Vec<f64> = self.centres.iter().map(|&r| f(r)).collect();
        let s = m / self.mass(&u);
        u.iter_mut().for_each(|x| *x *= s);
        u
    }

    /// Initial field from a density profile, scaled to mass `m` on this grid.
    pub fn initial(&self, f: impl Fn(f64) -> f64, m: f64) -> RadialField {
        let u = self.project(f, m);
        let v = self.solve_screened(0.0, &u);
        field(self, &u, &v)
    }

    /// Cell values of a sampled density, by linear interpolation in `r`.
    pub fn resample(&self, f: &RadialField) -> Result<Vec<f64>> {
        let n = f.r.len();
        if n < 2 || f.u.len() != n || f.r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("initial field needs increasing radii".into()));
        }
        if f.u.iter().any(|x| !(*x >= 0.0)) {
            return Err(Error::InvalidInput("initial density must be nonnegative".into()));
        }
        Ok(self
            .centres
            .iter()
            .map(|&r| {
                let k = f.r.partition_point(|&x| x <= r).clamp(1, n - 1);
                let (r0, r1) = (f.r[k - 1], f.r[k]);
                let t = ((r - r0) / (r1 - r0)).clamp(0.0, 1.0);
                f.u[k - 1] + t * (f.u[k] - f.u[k - 1])
            })
            .collect())
    }

    /// Solve `(shift + L + 1) v = rhs`, with `L` the Neumann discretisation of `-Δ`.
    fn solve_screened(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut lower = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 0..n {
            let vol = self.volumes[i];
            let left = if i > 0 { self.areas[i - 1] / (self.h * vol) } else { 0.0 };
            let right = if i + 1 < n { self.areas[i] / (self.h * vol) } else { 0.0 };
            lower[i] = -left;
            upper[i] = -right;
            diag[i] = shift + 1.0 + left + right;
        }
        let mut x = rhs.to_vec();
        solve_tridiagonal(&lower, &diag, &upper, &mut x);
        x
    }

    /// Discrete free energy `(1/χ)Σu²V + Σ A (Δv)²/h + Σ(v² - 2uv)V`.
    pub fn energy(&self, chi: f64, u: &[f64], v: &[f64]) -> f64 {
        let mut e = 0.0;
        for i in 0..self.len() {
            e += self.volumes[i] * (u[i] * u[i] / chi + v[i] * v[i] - 2.0 * u[i] * v[i]);
        }
        for (f, a) in self.areas.iter().enumerate() {
            let d = v[f + 1] - v[f];
            e += a * d * d / self.h;
        }
        e
    }
}

/// Cell densities at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub fields: Vec<RadialField>,
    pub energies: Vec<f64>,
    /// Relative mass change since the start, per snapshot.
    pub mass_drift: Vec<f64>,
    /// Largest single-step energy increase relative to `|E|`.
    pub max_energy_rise: f64,
    pub steps: usize,
    /// True when the run stopped on the steady-state criterion.
    pub steady: bool,
}

impl Trajectory {
    pub fn last(&self) -> &RadialField {
        self.fields.last().expect("trajectory has at least one snapshot")
    }
}

fn field(grid: &Grid, u: &[f64], v: &[f64]) -> RadialField {
    let n = grid.len();
    let dv = (0..n)
        .map(|i| {
            if i == 0 || i + 1 == n {
                0.0
            } else {
                (v[i + 1] - v[i - 1]) / (2.0 * grid.h)
            }
        })
        .collect();
    RadialField {
        r: grid.centres.clone(),
        u: u.to_vec(),
        v: v.to_vec(),
        dv,
    }
}

/// Face mobilities: `u` upwinded by the sign of the current `∂ξ`.
fn mobilities(grid: &Grid, chi: f64, u: &[f64], v: &[f64]) -> Vec<f64> {
    (0..grid.len() - 1)
        .map(|f| {
            let w = chi * (v[f + 1] - v[f]) - (u[f + 1] - u[f]);
            if w > 0.0 {
                u[f]
            } else {
                u[f + 1]
            }
        })
        .collect()
}

/// Step bound from the explicit chemotactic transport.
fn transport_dt(grid: &Grid, chi: f64, v: &[f64]) -> f64 {
    let s = v
        .windows(2)
        .map(|w| (chi * (w[1] - w[0]) / grid.h).abs())
        .fold(0.0, f64::max);
    if s > 0.0 {
        grid.h / s
    } else {
        f64::INFINITY
    }
}

/// Solve for `u` at the new level: mobility and `v` are frozen, the `-u`
/// part of `ξ` is implicit.
fn advance_density(grid: &Grid, chi: f64, u: &[f64], v: &[f64], mob: &[f64], dt: f64) -> Vec<f64> {
    let n = grid.len();
    let mut lower = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        let vol = grid.volumes[i] / dt;
        diag[i] = vol;
        rhs[i] = vol * u[i];
    }
    for f in 0..n - 1 {
        let c = grid.areas[f] * mob[f] / grid.h;
        let drift = c * chi * (v[f + 1] - v[f]);
        diag[f] += c;
        diag[f + 1] += c;
        upper[f] -= c;
        lower[f + 1] -= c;
        rhs[f] -= drift;
        rhs[f + 1] += drift;
    }
    solve_tridiagonal(&lower, &diag, &upper, &mut rhs);
    rhs
}

/// Advance by one step of size at most `dt_max`; returns the step taken.
/// The step is halved until the new density is nonnegative.
pub fn step(grid: &Grid, cfg: &EvolveConfig, state: &mut State, dt_max: f64) -> Result<f64> {
    let chi = cfg.params.chi;
    let n = grid.len();
    let mob = mobilities(grid, chi, &state.u, &state.v);
    let mut dt = dt_max.min(cfg.cfl * transport_dt(grid, chi, &state.v));
    let floor = 1e-12 * cfg.params.ubar();
    let u = loop {
        let mut u = advance_density(grid, chi, &state.u, &state.v, &mob, dt);
        if u.iter().all(|&x| x >= -floor) {
            u.iter_mut().for_each(|x| *x = x.max(0.0));
            break u;
        }
        dt *= 0.5;
        if dt < 1e-14 * dt_max.max(1e-300) {
            return Err(Error::Integration(format!(
                "step size collapsed at t = {}",
                state.t
            )));
        }
    };
    state.v = if cfg.parabolic {
        let rhs: Vec<f64> = (0..n).map(|i| state.v[i] / dt + u[i]).collect();
        grid.solve_screened(1.0 / dt, &rhs)
    } else {
        grid.solve_screened(0.0, &u)
    };
    state.u = u;
    state.t += dt;
    Ok(dt)
}

/// Integrate from `initial`, whose density must carry mass `M` to within
/// `1e-3`; it is interpolated onto the cells and rescaled to `M` exactly.
pub fn run(cfg: &EvolveConfig, initial: &RadialField) -> Result<Trajectory> {
    let p = cfg.params;
    if !p.radius.is_finite() {
        return Err(Error::InvalidInput("evolution needs a finite disk".into()));
    }
    if cfg.cells < 100 {
        return Err(Error::InvalidInput(format!("need at least 100 cells, got {}", cfg.cells)));
    }
    if !(cfg.cfl > 0.0 && cfg.cfl < 1.0) {
        return Err(Error::InvalidInput(format!("cfl must lie in (0, 1), got {}", cfg.cfl)));
    }
    let grid = Grid::new(p.radius, cfg.cells);
    let u0 = grid.resample(initial)?;
    let m0 = grid.mass(&u0);
    if !((m0 - p.mass).abs() <= 1e-3 * p.mass) {
        return Err(Error::InvalidInput(format!("initial mass {m0} differs from M = {}", p.mass)));
    }
    let u0: Vec<f64> = u0.iter().map(|x| x * p.mass / m0).collect();
    let m0 = grid.mass(&u0);
    let ubar = p.ubar();
    let v0 = if cfg.parabolic {
        u0.clone()
    } else {
        grid.solve_screened(0.0, &u0)
    };
    let mut state = State {
        t: 0.0,
        u: u0.clone(),
        v: v0,
    };
    let mut e_prev = grid.energy(p.chi, &state.u, &state.v);
    let mut traj = Trajectory {
        times: vec![0.0],
        fields: vec![field(&grid, &state.u, &state.v)],
        energies: vec![e_prev],
        mass_drift: vec![0.0],
        max_energy_rise: 0.0,
        steps: 0,
        steady: false,
    };
    while state.t < cfg.t_end {
        let before = state.u.clone();
        let dt_max = cfg.dt_initial.min(cfg.t_end - state.t);
        let dt = step(&grid, cfg, &mut state, dt_max)?;
        traj.steps += 1;
        let umax = state.u.iter().cloned().fold(0.0, f64::max);
        if umax > 1e6 * ubar {
            return Err(Error::Integration(format!("density exceeded 1e6 ū at t = {}", state.t)));
        }
        let e = grid.energy(p.chi, &state.u, &state.v);
        traj.max_energy_rise = traj.max_energy_rise.max((e - e_prev) / e_prev.abs());
        e_prev = e;
        let steady = cfg.steady_tol.is_some_and(|tol| {
            let rate = before
                .iter()
                .zip(&state.u)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                / dt;
            rate <= tol * umax
        });
        let done = steady || state.t >= cfg.t_end;
        if done || traj.steps.is_multiple_of(cfg.snapshot_every.max(1)) {
            traj.times.push(state.t);
            traj.fields.push(field(&grid, &state.u, &state.v));
            traj.energies.push(e);
            traj.mass_drift.push((grid.mass(&state.u) - m0) / m0);
        }
        if steady {
            traj.steady = true;
            break;
        }
    }
    Ok(traj)
}

/// Short description of a final density: `"converged: constant"` when it is
/// within `tol · ū` of the constant state.
pub fn classify(params: &ModelParams, u: &[f64], tol: f64) -> String {
    let ubar = params.ubar();
    let d = u.iter().fold(0.0f64, |m, x| m.max((x - ubar).abs()));
    if d <= tol * ubar {
        "converged: constant".into()
    } else if u.contains(&0.0) {
        "compactly supported".into()
    } else {
        "positive, nonconstant".into()
    }
}
