//! Acceptance criteria, one result line each.
//!
//! A criterion that quotes a value the model does not produce is printed as
//! FAIL with the numbers found and does not abort the run; any other failure
//! exits nonzero.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use ksradial::assembler::*;
use ksradial::compound::{s0, s1, v as vfun};
use ksradial::energy::{energy, hierarchy, partition_bound};
use ksradial::evolve::{classify, run, EvolveConfig, Grid};
use ksradial::specfun::{j0, j0_root, j1, j1_root, y0, y1};
use ksradial::supports::{f_inner, f_outer, solve_r1, solve_r2, solve_volcano_center};
use ksradial::thresholds::{chi2_star, chi_ab, chi_k, omega_of};
use ksradial::verify::verify;
use rand::{Rng, SeedableRng};

const R: f64 = 5.0;
const M: f64 = 25.0 * PI;

struct Outcome {
    pass: bool,
    /// Whether the parts that the model can reproduce hold.
    required: bool,
    summary: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome {
            pass,
            required: pass,
            summary: summary.into(),
            notes: Vec::new(),
        }
    }
}

fn disk(chi: f64) -> ModelParams {
    ModelParams::new(chi, R, M).unwrap()
}

fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn mid((lo, hi): (f64, f64)) -> f64 {
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// 1

fn suite() -> Vec<(String, ksradial::Result<PiecewiseRadialSolution>)> {
    let mut out: Vec<(String, ksradial::Result<PiecewiseRadialSolution>)> = Vec::new();
    let mut add = |name: String, s| out.push((name, s));
    for chi in [0.5, 1.5, 3.0, 10.0, 100.0] {
        add(format!("constant χ={chi}"), constant(disk(chi)));
    }
    for big in [1.0, 2.0, 5.0, 10.0, 20.0] {
        for k in 1..=3 {
            let p = ModelParams::new(chi_k(big, k), big, PI * big * big).unwrap();
            let (lo, hi) = bifurcation_epsilon_range(&p, k);
            for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let e = lo + t * (hi - lo);
                add(format!("bifurcation k={k} R={big} ε={e:.4}"), bifurcation_family(p, k, e));
            }
        }
    }
    for chi in [2.0, 5.0, 26.0, 100.0, 1000.0] {
        add(format!("inner χ={chi}"), inner_ring(disk(chi)));
        add(format!("outer χ={chi}"), outer_ring(disk(chi)));
    }
    for a in [0.5, 1.0, 2.5] {
        let cab = chi_ab(a, R);
        for f in [1.1, 2.0, 5.0, 20.0, 100.0] {
            let p = disk(f * cab);
            add(format!("annulus decreasing a={a} χ={:.3}", p.chi), annulus_mode(p, a, Direction::Decreasing));
            add(format!("annulus increasing a={a} χ={:.3}", p.chi), annulus_mode(p, a, Direction::Increasing));
        }
        let p = disk(cab);
        let (lo, hi) = annulus_epsilon_range(&p, a);
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let e = lo + t * (hi - lo);
            add(format!("annulus bifurcation a={a} ε={e:.4}"), annulus_bifurcation(p, a, e));
        }
    }
    for chi in [5.0, 10.0, 26.0, 100.0, 1000.0] {
        let p = disk(chi);
        let (lo, hi) = hat_window(&p, 2).unwrap();
        for r0 in [lo, mid((lo, hi)), hi] {
            add(format!("mexican hat χ={chi} R0={r0:.4}"), mexican_hat(p, r0));
        }
    }
    let (c2, star) = (chi_k(R, 2), chi2_star(R).unwrap());
    for t in [0.1, 0.3, 0.5, 0.7, 1.0] {
        let chi = c2 + t * (star - c2);
        add(format!("volcano attached χ={chi:.4}"), volcano(disk(chi)));
    }
    for chi in [5.0, 10.0, 26.0, 100.0, 1000.0] {
        add(format!("volcano detached χ={chi}"), volcano(disk(chi)));
    }
    for k0 in 3..=6 {
        for chi in [26.0, 40.0, 60.0, 100.0, 200.0] {
            let p = disk(chi);
            let r0 = hat_window(&p, k0).map(mid);
            add(
                format!("airy hat k0={k0} χ={chi}"),
                r0.and_then(|r0| airy(p, k0, Variant::Hat, Some(r0))),
            );
            add(format!("airy volcano k0={k0} χ={chi}"), airy(p, k0, Variant::Volcano, None));
        }
    }
    for chi in [1.5, 2.0, 10.0, 100.0, 1e4] {
        add(format!("whole space χ={chi}"), whole_space(ModelParams::plane(chi, M).unwrap()));
    }
    for chi in [0.5, 1.0, 4.0, 100.0, 1e4] {
        add(format!("log potential χ={chi}"), log_potential(ModelParams::plane(chi, 1.0).unwrap()));
    }
    out
}

fn closed_form_suite() -> Outcome {
    let t = Instant::now();
    let cases = suite();
    let mut failures = Vec::new();
    let (mut res, mut flux, mut mass, mut jump) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (name, sol) in &cases {
        match sol.clone().and_then(|s| verify(&s, 2000)) {
            Ok(rep) => {
                let scale = rep.u_sup.max(1.0);
                res = res.max(rep.v_residual_max / scale);
                flux = flux.max(rep.flux_constancy / rep.u_sup);
                mass = mass.max(rep.mass_error);
                jump = jump.max(rep.max_jump);
                if !rep.passed() {
                    failures.push(format!("{name}: {}", rep.failures().join("; ")));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let mut o = Outcome::new(
        failures.is_empty() && secs < 60.0,
        format!(
            "{} solutions, worst residual {res:.1e}, flux {flux:.1e}, mass {mass:.1e}, jump {jump:.1e}, {secs:.1} s",
            cases.len()
        ),
    );
    o.notes = failures;
    o
}

// ---------------------------------------------------------------------------
// 2

fn volcano_center(chi: f64) -> f64 {
    solve_volcano_center(omega_of(chi), R).unwrap().center
}

fn figure_values() -> Outcome {
    let big = 1e5;
    let p = disk(big);
    let mut lines = Vec::new();
    let mut attainable = true;

    let inner = inner_ring(p).unwrap();
    let ext = match inner.segments.last().unwrap().form {
        Form::Shell { amp, .. } => amp,
        _ => f64::NAN,
    };
    let ok = (ext - 0.5136).abs() <= 0.001;
    attainable &= ok;
    lines.push(format!("inner exterior T0 coefficient {ext:.5} (quoted 0.5136): {}", verdict(ok)));

    let outer = outer_ring(p).unwrap();
    let int = match outer.segments[0].form {
        Form::IShell { amp } => amp,
        _ => f64::NAN,
    };
    let ok = (int - 0.1027).abs() <= 0.001;
    attainable &= ok;
    lines.push(format!("outer interior I0 coefficient {int:.5} (quoted 0.1027): {}", verdict(ok)));

    let weights = |chi: f64| {
        let c = mexican_hat(disk(chi), 2.5).unwrap().components();
        (c[0].mass, c[1].mass)
    };
    let (m1, m4) = weights(big);
    let hat_ok = (m1 - 17.2263).abs() <= 0.01 && (m4 - 61.3135).abs() <= 0.01;
    let (q1, q4) = weights(100.0);
    lines.push(format!(
        "hat weights at R0 = 2.5: ({m1:.4}, {m4:.4}) vs quoted (17.2263, 61.3135): {}; the quoted pair matches χ = 100, which gives ({q1:.4}, {q4:.4})",
        verdict(hat_ok)
    ));

    let c_big = volcano_center(big);
    let c_100 = volcano_center(100.0);
    let limit_ok = (c_big - 3.8696).abs() <= 0.001;
    lines.push(format!(
        "volcano centre at χ = 1e5: {c_big:.5} vs quoted limit 3.8696: {}; the limit equation gives {:.5} and χ = 100 gives {c_100:.5}",
        verdict(limit_ok),
        ksradial::thresholds::r_hat0(R)
    ));

    // The companion R0 = 2.7309 equals j11 R / j12 for every χ, so only the
    // centre can pin the figure's χ.
    let target = 3.3831;
    let (mut lo, mut hi) = (chi2_star(R).unwrap() * (1.0 + 1e-6), 100.0);
    for _ in 0..100 {
        let m = 0.5 * (lo + hi);
        if volcano_center(m) < target {
            lo = m;
        } else {
            hi = m;
        }
    }
    let chi_fig = 0.5 * (lo + hi);
    let window = hat_window(&disk(chi_fig), 2).unwrap();
    let companion = j1_root(1) * R / j1_root(2);
    let fig_ok = (volcano_center(chi_fig) - target).abs() <= 0.005
        && window.0 <= 2.7309
        && 2.7309 <= window.1
        && (companion - 2.7309).abs() < 5e-5;
    attainable &= fig_ok;
    lines.push(format!(
        "figure χ recovered from centre 3.3831: χ = {chi_fig:.4}; R0 = 2.7309 lies in the hat window [{:.4}, {:.4}] and equals j11 R / j12 = {companion:.5} for any χ: {}",
        window.0,
        window.1,
        verdict(fig_ok)
    ));

    let mut o = Outcome::new(
        attainable && hat_ok && limit_ok,
        "figure-caption values at χ = 1e5, R = 5, M = 25π",
    );
    o.required = attainable;
    o.notes = lines;
    o
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

// ---------------------------------------------------------------------------
// 3

fn asymptotic_rates() -> Outcome {
    let j01 = j0_root(1);
    let inner_limit = M / (2.0 * PI * j01 * j1(j01));
    let outer_limit = M / (2.0 * PI);
    let mut notes = Vec::new();
    let mut pass = true;
    let mut quoted = true;
    for chi in [1e4, 1e5] {
        let p = disk(chi);
        let a = inner_ring(p).unwrap().sup_u(20000) / chi / inner_limit - 1.0;
        let outer = outer_ring(p).unwrap().sup_u(20000) / chi.sqrt();
        let b = outer / outer_limit - 1.0;
        let b_r = outer / (outer_limit / R) - 1.0;
        pass &= a.abs() < 0.02 && b_r.abs() < 0.02;
        quoted &= b.abs() < 0.02;
        notes.push(format!(
            "χ = {chi:.0e}: ‖u⁻‖/χ off by {:.3}%; ‖u⁺‖/√χ off by {:.3}% from M/2π, {:.3}% from M/(2πR)",
            100.0 * a,
            100.0 * b,
            100.0 * b_r
        ));
    }
    // A boundary layer of width π/(2ω) and height U holds mass 2πRU/ω, so the
    // quoted rate holds only for R = 1.
    let unit = ModelParams::new(1e5, 1.0, M).unwrap();
    let b1 = outer_ring(unit).unwrap().sup_u(20000) / 1e5f64.sqrt() / outer_limit - 1.0;
    notes.push(format!(
        "quoted rate M/2π for ‖u⁺‖/√χ: {}; it holds at R = 1 (off by {:.3}% at χ = 1e5)",
        verdict(quoted),
        100.0 * b1
    ));
    pass &= b1.abs() < 0.02;
    let w = omega_of(1e5);
    let a = w * solve_r1(w, R).unwrap() / j01 - 1.0;
    let b = w * solve_r2(w, R).unwrap() / (PI / 2.0) - 1.0;
    pass &= a.abs() < 0.01 && b.abs() < 0.01;
    notes.push(format!(
        "χ = 1e5: ωr₁/j01 - 1 = {:.3}%, ωr₂/(π/2) - 1 = {:.3}%",
        100.0 * a,
        100.0 * b
    ));
    let xs: Vec<f64> = geometric(1e3, 1e5, 9);
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .map(|&c| (c.ln(), energy(&inner_ring(disk(c)).unwrap()).unwrap().total))
        .collect();
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / n, sy / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let want = -M * M / (4.0 * PI);
    let rel = slope / want - 1.0;
    pass &= rel.abs() < 0.05;
    notes.push(format!(
        "dE(u⁻)/d ln χ over [1e3, 1e5]: {slope:.3} vs -M²/4π = {want:.3} ({:.2}%)",
        100.0 * rel
    ));
    let mut o = Outcome::new(pass && quoted, "large-χ rates of inner and outer rings");
    o.required = pass;
    o.notes = notes;
    o
}

// ---------------------------------------------------------------------------
// 4

fn energy_hierarchy() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut count = 0;
    for big in [1.0, 5.0, 20.0] {
        let c1 = chi_k(big, 1);
        let mass = PI * big * big;
        for chi in geometric(c1, 1e3, 51).into_iter().skip(1) {
            let p = ModelParams::new(chi, big, mass).unwrap();
            let sols = [constant(p), inner_ring(p), outer_ring(p)];
            let sols: Vec<_> = sols.into_iter().map(|s| s.unwrap()).collect();
            let h = hierarchy(&sols).unwrap();
            count += 1;
            if !h.holds() {
                pass = false;
                notes.push(format!("R = {big}, χ = {chi}: {:?}", h.checks));
            }
        }
    }
    let c2 = chi_k(R, 2);
    let mut above = 0;
    for chi in geometric(c2, 1e3, 21).into_iter().skip(1) {
        let p = disk(chi);
        let hat = mexican_hat(p, mid(hat_window(&p, 2).unwrap())).unwrap();
        let sols = vec![constant(p).unwrap(), hat, volcano(p).unwrap()];
        let h = hierarchy(&sols).unwrap();
        above += 1;
        if !h.holds() {
            pass = false;
            notes.push(format!("χ = {chi}: {:?}", h.checks));
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut partitions_ok = 0;
    for _ in 0..100 {
        let k = rng.gen_range(1..=8);
        let big = rng.gen_range(0.5..20.0);
        let masses: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..10.0)).collect();
        let mut cuts: Vec<f64> = (0..k - 1).map(|_| rng.gen_range(0.01..0.99)).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        if cuts.len() != k - 1 {
            continue;
        }
        let mut radii: Vec<f64> = cuts.iter().map(|c| big * c).collect();
        radii.push(big);
        let total: f64 = masses.iter().sum();
        let f = partition_bound(&masses, &radii).unwrap();
        // Equality holds exactly for a mass-proportional partition.
        if f >= total * total / (big * big) * (1.0 - 1e-12) {
            partitions_ok += 1;
        }
    }
    pass &= partitions_ok == 100;
    notes.push(format!(
        "{count} disk points with E(u⁻) < E(u⁺) < E(ū), {above} points with hat and volcano below E(ū), {partitions_ok}/100 partitions with F(k) ≥ M²/R²"
    ));
    match hat_outer_crossing() {
        Some(c) => notes.push(format!(
            "E(outer ring) and E(hat at R0 = R̄0) cross at χ = {c:.4} for R = 5, M = 25π (caption value 3.98; its R, M are not stated)"
        )),
        None => notes.push("no crossing of E(outer ring) and E(hat at R0 = R̄0) found in (χ₂, 50]".into()),
    }
    let mut o = Outcome::new(pass, "energy ordering and partition inequality");
    o.notes = notes;
    o
}

fn hat_outer_crossing() -> Option<f64> {
    let gap = |chi: f64| -> Option<f64> {
        let p = disk(chi);
        let (_, hi) = hat_window(&p, 2).ok()?;
        let hat = energy(&mexican_hat(p, hi).ok()?).ok()?.total;
        let outer = energy(&outer_ring(p).ok()?).ok()?.total;
        Some(outer - hat)
    };
    let grid = geometric(chi_k(R, 2) * 1.001, 50.0, 200);
    for w in grid.windows(2) {
        let (a, b) = (gap(w[0])?, gap(w[1])?);
        if a.signum() != b.signum() {
            let (mut lo, mut hi, mut glo) = (w[0], w[1], a);
            for _ in 0..60 {
                let m = 0.5 * (lo + hi);
                let g = gap(m)?;
                if g.signum() == glo.signum() {
                    lo = m;
                    glo = g;
                } else {
                    hi = m;
                }
            }
            return Some(0.5 * (lo + hi));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// 5

fn identities() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    let (mut lommel, mut cross) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let s = rng.gen_range(0.01..200.0);
        let rhs = -2.0 / (PI * s);
        lommel = lommel.max(((y1(s) * j0(s) - j1(s) * y0(s) - rhs) / rhs).abs());
        let w = rng.gen_range(0.2..20.0);
        let big = rng.gen_range(0.5..20.0);
        let r = rng.gen_range(0.0..0.99) * big;
        let lhs = s0(r, w, big) * vfun(1, r, w, big) - vfun(0, r, w, big) * s1(r, w, big);
        let rhs = -4.0 / (PI * PI * w * w * big * (big - r));
        cross = cross.max(((lhs - rhs) / rhs).abs());
    }
    let d = |f: &dyn Fn(f64) -> f64, x: f64| {
        let h = 1e-4 * x.max(1e-2);
        (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
    };
    let mut slope = 0.0f64;
    for big in [1.0, 5.0, 20.0] {
        for t in [1.0, 2.0, 5.0, 20.0] {
            let w = t * j1_root(1) / big + 0.05;
            let want = w * w + 1.0;
            let r1 = solve_r1(w, big).unwrap();
            slope = slope.max((d(&|r| f_inner(r, w, big), r1) / -want - 1.0).abs());
            let r2 = solve_r2(w, big).unwrap();
            slope = slope.max((d(&|r| f_outer(r, w, big), r2) / want - 1.0).abs());
        }
    }
    Outcome::new(
        lommel < 1e-11 && cross < 1e-11 && slope < 1e-6,
        format!(
            "Lommel {lommel:.1e}, cross {cross:.1e} (200 points each), support slopes {slope:.1e}"
        ),
    )
}

// ---------------------------------------------------------------------------
// 6

fn evolver() -> Outcome {
    let mut notes = Vec::new();
    let c1 = chi_k(R, 1);

    let t = Instant::now();
    let mut cfg = EvolveConfig::new(disk(0.5 * c1), 400, 60.0);
    cfg.snapshot_every = 1000;
    let u0 = Grid::new(R, 400).initial(|r| 1.0 + 0.01 * (PI * r / R).cos(), M);
    let sub = run(&cfg, &u0).unwrap();
    let d_const = sub.last().u.iter().fold(0.0f64, |m, x| m.max((x - 1.0).abs()));
    let state = classify(&cfg.params, &sub.last().u, 1e-6);
    let sub_secs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let mut cfg = EvolveConfig::new(disk(2.0 * c1), 400, 400.0);
    cfg.snapshot_every = 1000;
    cfg.steady_tol = Some(1e-10);
    let u0 = Grid::new(R, 400).initial(|r| 1.0 + 0.3 * (PI * r / R).cos(), M);
    let sup = run(&cfg, &u0).unwrap();
    let ring = inner_ring(cfg.params).unwrap();
    let last = sup.last();
    let d_ring = last
        .r
        .iter()
        .zip(&last.u)
        .fold(0.0f64, |m, (&r, &u)| m.max((ring.eval(r).u - u).abs()))
        / ring.sup_u(4000);
    let sup_secs = t.elapsed().as_secs_f64();

    let rise = sub.max_energy_rise.max(sup.max_energy_rise);
    let drift = sub
        .mass_drift
        .iter()
        .chain(&sup.mass_drift)
        .fold(0.0f64, |m, d| m.max(d.abs()));
    notes.push(format!(
        "χ = 0.5χ₁: sup |u - ū| = {d_const:.1e} ({state}), {} steps, {sub_secs:.1} s",
        sub.steps
    ));
    notes.push(format!(
        "χ = 2χ₁: distance to inner ring {d_ring:.1e}·‖u‖∞ at t = {:.1}, {} steps, {sup_secs:.1} s",
        sup.times.last().unwrap(),
        sup.steps
    ));
    notes.push(format!("largest energy rise per step {rise:.1e}·|E|, mass drift {drift:.1e}"));
    let pass = d_const < 1e-6
        && d_ring < 1e-3
        && rise <= 1e-6
        && drift <= 1e-10
        && sub_secs < 300.0
        && sup_secs < 300.0;
    let mut o = Outcome::new(pass, "radial evolution to the constant and to the inner ring");
    o.notes = notes;
    o
}

// ---------------------------------------------------------------------------
// 7

fn negative_controls(dir: &Path) -> Outcome {
    let mut notes = Vec::new();
    let mut families = Vec::new();
    let (mut corrupted, mut caught) = (0, 0);
    for (name, sol) in suite() {
        let sol = match sol {
            Ok(s) => s,
            Err(_) => continue,
        };
        let tag = std::mem::discriminant(&sol.family);
        if families.contains(&tag) {
            continue;
        }
        families.push(tag);
        for si in 0..sol.segments.len() {
            let count = sol.segments[si].form.clone().coefficients_mut().len();
            for ci in 0..count {
                let mut bad = sol.clone();
                let mut c = bad.segments[si].form.coefficients_mut();
                if *c[ci] == 0.0 {
                    continue;
                }
                *c[ci] *= 1.01;
                corrupted += 1;
                if !verify(&bad, 2000).unwrap().passed() {
                    caught += 1;
                } else {
                    notes.push(format!("{name}: segment {si} coefficient {ci} not detected"));
                }
            }
        }
    }
    let bin = env!("CARGO_BIN_EXE_ksradial");
    let code = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .current_dir(dir)
            .output()
            .map(|o| (o.status.code().unwrap_or(-1), String::from_utf8_lossy(&o.stdout).into_owned(), String::from_utf8_lossy(&o.stderr).into_owned()))
            .unwrap()
    };
    let solve = code(&["solve", "--kind", "inner", "--chi", "10", "--R", "5", "--M", "78.5398", "--out", "inner"]);
    let clean = code(&["verify", "inner.json", "--out", "clean.json"]);
    let text = std::fs::read_to_string(dir.join("inner.json")).unwrap();
    let key = "\"amp\": ";
    let at = text.find(key).unwrap() + key.len();
    let end = at + text[at..].find([',', '\n']).unwrap();
    let amp: f64 = text[at..end].trim().parse().unwrap();
    let bad = format!("{}{}{}", &text[..at], amp * 1.01, &text[end..]);
    std::fs::write(dir.join("bad.json"), bad).unwrap();
    let corrupt = code(&["verify", "bad.json", "--out", "bad_report.json"]);
    let inadmissible = code(&["solve", "--kind", "volcano", "--chi", "2.0", "--R", "5"]);
    let malformed = code(&["solve", "--kind", "inner", "--chi", "ten"]);
    let evolve = code(&["evolve", "--chi", "0.79", "--t-end", "60", "--out", "evo"]);
    let cli_ok = solve.0 == 0
        && clean.0 == 0
        && corrupt.0 == 1
        && inadmissible.0 == 2
        && malformed.0 == 3
        && evolve.0 == 0
        && evolve.1.contains("converged: constant");
    notes.push(format!(
        "cli exit codes: solve {}, verify {}, corrupted verify {} ({}), volcano at χ = 2 {}, malformed {}, evolve {} ({})",
        solve.0,
        clean.0,
        corrupt.0,
        corrupt.2.trim(),
        inadmissible.0,
        malformed.0,
        evolve.0,
        evolve.1.trim()
    ));
    let mut o = Outcome::new(
        corrupted == caught && cli_ok,
        format!("{caught}/{corrupted} single-coefficient corruptions over {} families detected", families.len()),
    );
    o.notes = notes;
    o
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let results = [
        closed_form_suite(),
        figure_values(),
        asymptotic_rates(),
        energy_hierarchy(),
        identities(),
        evolver(),
        negative_controls(dir.path()),
    ];
    let mut unexpected = false;
    for (i, o) in results.iter().enumerate() {
        let n = i + 1;
        println!("criterion {n}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        for line in &o.notes {
            println!("    {line}");
        }
        unexpected |= !o.required;
    }
    if unexpected {
        std::process::exit(1);
    }
}
