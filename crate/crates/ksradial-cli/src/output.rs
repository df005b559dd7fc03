//! CSV and report formatting.

use std::fmt::Write as _;

use ksradial::assembler::{Family, PiecewiseRadialSolution};
use ksradial::verify::RadialField;
use serde::Serialize;

/// Seventeen significant digits.
pub fn num(x: f64) -> String {
    // Adding zero folds -0 into +0.
    format!("{:.16e}", x + 0.0)
}

/// Sampled profile with header `r,u,v`, or `r,u,v_r` for the logarithmic potential.
/// Plane solutions are sampled to ten units past the last knot.
pub fn profile_csv(sol: &PiecewiseRadialSolution, samples: usize) -> String {
    let log = sol.family == Family::LogPotential;
    let lo = sol.inner;
    let hi = if sol.outer().is_finite() {
        sol.outer()
    } else {
        sol.knots().last().copied().unwrap_or(lo) + 10.0
    };
    let n = samples.max(1);
    let mut out = String::from(if log { "r,u,v_r\n" } else { "r,u,v\n" });
    for i in 0..=n {
        let r = lo + (hi - lo) * i as f64 / n as f64;
        let s = sol.eval(r);
        let third = if log { s.dv } else { s.v };
        let _ = writeln!(out, "{},{},{}", num(r), num(s.u), num(third));
    }
    out
}

pub fn field_csv(f: &RadialField) -> String {
    let mut out = String::from("r,u,v\n");
    for i in 0..f.r.len() {
        let _ = writeln!(out, "{},{},{}", num(f.r[i]), num(f.u[i]), num(f.v[i]));
    }
    out
}

/// Parse `r,u,...` rows into `(r, u)` pairs.
pub fn read_profile(text: &str) -> Result<(Vec<f64>, Vec<f64>), String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty profile")?;
    if !header.starts_with("r,u") {
        return Err(format!("line 1: expected header starting with r,u, got {header:?}"));
    }
    let (mut r, mut u) = (Vec::new(), Vec::new());
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut cells = line.split(',');
        let mut next = |name: &str| -> Result<f64, String> {
            let c = cells.next().ok_or(format!("line {}: missing {name}", i + 2))?;
            c.trim().parse().map_err(|e| format!("line {}: {name}: {e}", i + 2))
        };
        r.push(next("r")?);
        u.push(next("u")?);
    }
    Ok((r, u))
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
