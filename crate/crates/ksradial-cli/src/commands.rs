//! Subcommand implementations.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use ksradial::assembler::{self, Direction, ModelParams, PiecewiseRadialSolution, Variant};
use ksradial::energy::energy;
use ksradial::evolve::{classify, run, EvolveConfig, Grid};
use ksradial::thresholds::{chi_ab, chi_k};
use ksradial::verify::{verify, RadialField, VerificationReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{EvolveArgs, FamilyArgs, Kind, Observable, SolveArgs, SweepArgs, VerifyArgs};
use crate::descriptor;
use crate::output::{field_csv, json, num, profile_csv, read_profile};
use crate::CliError;

fn need<T>(x: Option<T>, flag: &str, kind: Kind) -> Result<T, CliError> {
    x.ok_or_else(|| CliError::Parse(format!("--{flag} is required for {kind:?}")))
}

fn params(f: &FamilyArgs, chi: f64) -> Result<ModelParams, CliError> {
    if f.kind.on_plane() {
        if f.radius.is_some() || f.b.is_some() {
            return Err(CliError::Parse(format!("{:?} lives on the plane; drop --R", f.kind)));
        }
        return Ok(ModelParams::plane(chi, f.mass.unwrap_or(1.0))?);
    }
    let radius = match (f.radius, f.b) {
        (Some(r), Some(b)) if r != b => {
            return Err(CliError::Parse(format!("--b = {b} differs from --R = {r}")))
        }
        (Some(r), _) | (None, Some(r)) => r,
        (None, None) => 5.0,
    };
    let mass = f.mass.unwrap_or(PI * radius * radius);
    Ok(ModelParams::new(chi, radius, mass)?)
}

/// Rate at which a bifurcation kind exists, if the kind fixes it.
pub fn pinned_chi(f: &FamilyArgs) -> Result<Option<f64>, CliError> {
    let radius = f.b.or(f.radius).unwrap_or(5.0);
    Ok(match f.kind {
        Kind::Bifurcation => Some(chi_k(radius, f.k0.unwrap_or(1))),
        Kind::AnnulusBifurcation => {
            let a = need(f.a, "a", f.kind)?;
            if !(a > 0.0 && a < radius) {
                return Err(CliError::Parse(format!("--a must lie in (0, R), got {a}")));
            }
            Some(chi_ab(a, radius))
        }
        _ => None,
    })
}

pub fn build(f: &FamilyArgs, chi: f64) -> Result<PiecewiseRadialSolution, CliError> {
    let p = params(f, chi)?;
    let k = f.kind;
    Ok(match k {
        Kind::Constant => assembler::constant(p)?,
        Kind::Bifurcation => {
            let mode = f.k0.unwrap_or(1);
            assembler::bifurcation_family(p, mode, need(f.epsilon, "epsilon", k)?)?
        }
        Kind::Inner => assembler::inner_ring(p)?,
        Kind::Outer => assembler::outer_ring(p)?,
        Kind::AnnulusDecreasing => {
            assembler::annulus_mode(p, need(f.a, "a", k)?, Direction::Decreasing)?
        }
        Kind::AnnulusIncreasing => {
            assembler::annulus_mode(p, need(f.a, "a", k)?, Direction::Increasing)?
        }
        Kind::AnnulusBifurcation => {
            assembler::annulus_bifurcation(p, need(f.a, "a", k)?, need(f.epsilon, "epsilon", k)?)?
        }
        Kind::Hat => assembler::mexican_hat(p, need(f.r0, "R0", k)?)?,
        Kind::Volcano => assembler::volcano(p)?,
        Kind::AiryHat => {
            assembler::airy(p, need(f.k0, "k0", k)?, Variant::Hat, Some(need(f.r0, "R0", k)?))?
        }
        Kind::AiryVolcano => assembler::airy(p, need(f.k0, "k0", k)?, Variant::Volcano, None)?,
        Kind::Wholespace => assembler::whole_space(p)?,
        Kind::Logpotential => assembler::log_potential(p)?,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn with_ext(stem: &Path, ext: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn check(rep: &VerificationReport) -> Result<(), CliError> {
    let failures = rep.failures();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(failures.join("; ")))
    }
}

pub fn solve(a: &SolveArgs) -> Result<(), CliError> {
    let chi = match (pinned_chi(&a.family)?, a.chi) {
        (Some(c), Some(given)) if (given - c).abs() > 1e-9 * c => {
            eprintln!("note: {:?} exists only at χ = {c}; ignoring --chi {given}", a.family.kind);
            c
        }
        (Some(c), _) => c,
        (None, Some(c)) => c,
        (None, None) => return Err(CliError::Parse("--chi is required".into())),
    };
    let sol = build(&a.family, chi)?;
    let json_path = with_ext(&a.out, "json");
    let csv_path = with_ext(&a.out, "csv");
    write(&json_path, &descriptor::to_text(&sol))?;
    write(&csv_path, &profile_csv(&sol, a.samples))?;
    println!("{}", json_path.display());
    println!("{}", csv_path.display());
    check(&verify(&sol, a.samples.max(1000))?)
}

fn observe(sol: &PiecewiseRadialSolution, o: Observable) -> Result<String, CliError> {
    Ok(match o {
        Observable::Supnorm => num(sol.sup_u(4000)),
        Observable::Support => num(sol.components().iter().map(|c| c.hi - c.lo).sum()),
        Observable::Energy => num(energy(sol)?.total),
        Observable::Knots => sol.knots().iter().map(|&k| num(k)).collect::<Vec<_>>().join(" "),
    })
}

fn grid(a: &SweepArgs) -> Result<Vec<f64>, CliError> {
    if !(a.chi_min > 0.0 && a.chi_max >= a.chi_min) || a.points == 0 {
        return Err(CliError::Parse("need 0 < --chi-min <= --chi-max and --points >= 1".into()));
    }
    let n = a.points;
    Ok((0..n)
        .map(|i| {
            let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
            if a.log {
                a.chi_min * (a.chi_max / a.chi_min).powf(t)
            } else {
                a.chi_min + (a.chi_max - a.chi_min) * t
            }
        })
        .collect())
}

/// Rows `chi,<observable>`; failed points leave the second cell empty.
pub fn sweep_rows(a: &SweepArgs) -> Result<Vec<(f64, Option<String>)>, CliError> {
    let chis = grid(a)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    Ok(pool.install(|| {
        chis.par_iter()
            .map(|&chi| {
                let cell = build(&a.family, chi).and_then(|s| observe(&s, a.observable)).ok();
                (chi, cell)
            })
            .collect()
    }))
}

pub fn sweep(a: &SweepArgs) -> Result<(), CliError> {
    let rows = sweep_rows(a)?;
    let name = format!("{:?}", a.observable).to_lowercase();
    let mut text = format!("chi,{name}\n");
    for (chi, cell) in &rows {
        text.push_str(&format!("{},{}\n", num(*chi), cell.as_deref().unwrap_or("")));
    }
    let failed = rows.iter().filter(|r| r.1.is_none()).count();
    if failed > 0 {
        eprintln!("{failed} of {} points failed", rows.len());
    }
    match &a.out {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    failures: Vec<String>,
    report: &'a VerificationReport,
}

pub fn verify_cmd(a: &VerifyArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&a.descriptor)
        .map_err(|e| CliError::Parse(format!("{}: {e}", a.descriptor.display())))?;
    let sol = descriptor::parse(&text)?;
    let rep = verify(&sol, a.samples)?;
    let out = VerifyOutput {
        passed: rep.passed(),
        failures: rep.failures(),
        report: &rep,
    };
    match &a.out {
        Some(p) => write(p, &json(&out))?,
        None => print!("{}", json(&out)),
    }
    check(&rep)
}

#[derive(Serialize)]
struct EvolveOutput {
    final_state: String,
    steps: usize,
    steady: bool,
    max_energy_rise: f64,
    times: Vec<f64>,
    energies: Vec<f64>,
    mass_drift: Vec<f64>,
}

pub fn evolve(a: &EvolveArgs) -> Result<(), CliError> {
    let mass = a.mass.unwrap_or(PI * a.radius * a.radius);
    let p = ModelParams::new(a.chi, a.radius, mass)?;
    let cfg = EvolveConfig {
        params: p,
        cells: a.cells,
        dt_initial: a.dt,
        t_end: a.t_end,
        cfl: a.cfl,
        snapshot_every: a.snapshot_every,
        parabolic: a.parabolic,
        steady_tol: a.steady_tol,
    };
    let initial = match &a.profile {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            let (r, u) = read_profile(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            let n = r.len();
            RadialField {
                r,
                u,
                v: vec![0.0; n],
                dv: vec![0.0; n],
            }
        }
        None => {
            if a.cells == 0 {
                return Err(CliError::Parse("--cells must be positive".into()));
            }
            let amp = a.amplitude;
            Grid::new(a.radius, a.cells).initial(|r| 1.0 + amp * (PI * r / a.radius).cos(), mass)
        }
    };
    let traj = run(&cfg, &initial)?;
    fs::create_dir_all(&a.out)?;
    for (t, f) in traj.times.iter().zip(&traj.fields) {
        write(&a.out.join(format!("profile_t{t:.6}.csv")), &field_csv(f))?;
    }
    let final_state = classify(&p, &traj.last().u, 1e-6);
    let report = EvolveOutput {
        final_state: final_state.clone(),
        steps: traj.steps,
        steady: traj.steady,
        max_energy_rise: traj.max_energy_rise,
        times: traj.times.clone(),
        energies: traj.energies.clone(),
        mass_drift: traj.mass_drift.clone(),
    };
    write(&a.out.join("report.json"), &json(&report))?;
    println!("final state: {final_state}");
    let drift = traj.mass_drift.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    if drift > 1e-10 {
        return Err(CliError::Invariant(format!("mass_drift = {drift:e}")));
    }
    if traj.max_energy_rise > 1e-6 {
        return Err(CliError::Invariant(format!("energy rise = {:e}", traj.max_energy_rise)));
    }
    Ok(())
}
