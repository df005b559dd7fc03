//! Argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ksradial", version, about = "Radial Keller-Segel steady states with quadratic diffusion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct one solution; write its descriptor and a sampled profile.
    Solve(SolveArgs),
    /// Tabulate an observable over a range of χ.
    Sweep(SweepArgs),
    /// Check a descriptor against the steady-state equations.
    Verify(VerifyArgs),
    /// Integrate the radial time-dependent system.
    Evolve(EvolveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Constant,
    Bifurcation,
    Inner,
    Outer,
    AnnulusDecreasing,
    AnnulusIncreasing,
    AnnulusBifurcation,
    Hat,
    Volcano,
    AiryHat,
    AiryVolcano,
    Wholespace,
    Logpotential,
}

impl Kind {
    pub fn on_plane(self) -> bool {
        matches!(self, Kind::Wholespace | Kind::Logpotential)
    }
}

/// Family and model parameters shared by `solve` and `sweep`.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Disk radius (defaults to `--b`, then 5); not accepted on the plane.
    #[arg(long = "R")]
    pub radius: Option<f64>,
    /// Total mass (defaults to πR² on a disk, 1 on the plane).
    #[arg(long = "M")]
    pub mass: Option<f64>,
    /// First valley radius of hat solutions.
    #[arg(long = "R0")]
    pub r0: Option<f64>,
    /// Member of a bifurcation family.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Number of critical points of `v` (Airy kinds) or mode index (bifurcation).
    #[arg(long)]
    pub k0: Option<u32>,
    /// Inner radius of an annulus.
    #[arg(long)]
    pub a: Option<f64>,
    /// Outer radius of an annulus; must equal `R`.
    #[arg(long)]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Chemotaxis rate; set automatically for bifurcation kinds.
    #[arg(long)]
    pub chi: Option<f64>,
    /// Profile intervals.
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    /// Output stem: writes `<out>.json` and `<out>.csv`.
    #[arg(long, default_value = "solution")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Observable {
    Supnorm,
    Support,
    Energy,
    Knots,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub chi_min: f64,
    #[arg(long)]
    pub chi_max: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "supnorm")]
    pub observable: Observable,
    /// Space the points geometrically in χ.
    #[arg(long)]
    pub log: bool,
    /// Worker threads (0 for all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub descriptor: PathBuf,
    /// Verification grid intervals (at least 1000).
    #[arg(long, default_value_t = 4000)]
    pub samples: usize,
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[arg(long)]
    pub chi: f64,
    #[arg(long = "R", default_value_t = 5.0)]
    pub radius: f64,
    /// Total mass (defaults to πR²).
    #[arg(long = "M")]
    pub mass: Option<f64>,
    #[arg(long, default_value_t = 400)]
    pub cells: usize,
    #[arg(long, default_value_t = 50.0)]
    pub t_end: f64,
    /// Largest time step.
    #[arg(long, default_value_t = 1e-2)]
    pub dt: f64,
    #[arg(long, default_value_t = 0.5)]
    pub cfl: f64,
    #[arg(long, default_value_t = 1000)]
    pub snapshot_every: usize,
    /// Initial density `ū (1 + amplitude cos(πr/R))`.
    #[arg(long, default_value_t = 0.01)]
    pub amplitude: f64,
    /// Initial density from a profile CSV (`r,u,...`) instead.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Advance `v` by its parabolic equation.
    #[arg(long)]
    pub parabolic: bool,
    /// Stop once `max |u_t| <= tol · max u`.
    #[arg(long)]
    pub steady_tol: Option<f64>,
    /// Output directory for snapshots and the report.
    #[arg(long, default_value = "evolve_out")]
    pub out: PathBuf,
}
