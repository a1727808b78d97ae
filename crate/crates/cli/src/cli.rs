use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "opineq", version, about = "Operator inequality checks for the Heisenberg group and elementary matrix groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write the machine-readable report here (`-` for stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads (default: available cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Margins down to `-tol` count as non-negative.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Include wall time in the report; off by default so reports are byte-stable.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Numerical sweeps over rational rotation angles.
    #[command(subcommand)]
    Verify(Verify),
    /// Exact identities between formal sums of elementary-matrix Laplacians.
    #[command(subcommand)]
    Symmetry(Symmetry),
    /// Graded quotients of the Heisenberg group algebra.
    #[command(subcommand)]
    Graded(Graded),
    /// Cayley graphs of SL_n(Z/q).
    #[command(subcommand)]
    Expander(Expander),
    /// Every check with default parameters; exits 0 only if all pass.
    All {
        /// Smaller grids and groups, for smoke testing.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Norm bound for the almost Mathieu operator.
    Bz {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 60)]
        qmax: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 4.0])]
        lambda: Vec<f64>,
    },
    /// X + Y ≥ sin(πθ).
    Xyz1 {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 60)]
        qmax: u32,
    },
    /// R·X + Y ≥ √((1-κ)R)·sin(πθ) for θ ≤ θ₀(R, κ).
    Zzz {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 60)]
        qmax: u32,
        #[arg(long, default_value_t = 4.0)]
        r: f64,
        #[arg(long, default_value_t = 0.5)]
        kappa: f64,
    },
    /// 2 sin(πθ)(X + Y) + ½(XY + YX) ≥ 0, by eigenvalues and by 2×2 blocks.
    Xyz2 {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 60)]
        qmax: u32,
    },
    /// ‖(1 - π(x))(1 - π(y))‖ ≤ 4 cos(πθ/2).
    Prodnorm {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 60)]
        qmax: u32,
    },
    /// Norm of a product of low spectral projections of X and Y.
    Xsmall {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 40)]
        qmax: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.3, 0.5])]
        delta: Vec<f64>,
    },
    /// Two-site inequality; unpinned constants are searched.
    Smalltheta {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 24)]
        qmax: u32,
        /// Angle bound, as `p/q` or a decimal.
        #[arg(long, value_parser = parse_number)]
        theta0: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, value_parser = parse_number)]
        epsilon: Option<f64>,
    },
    /// Three-site inequality over θ ∈ [0, 1/2]; unpinned constants are searched.
    Formula {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 12)]
        qmax: u32,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, value_parser = parse_number)]
        epsilon: Option<f64>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    Delta2,
    Adj,
    Op,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Symmetry {
    /// Orbit sums of Δ⁽²⁾, Adj and Op over Sym(n).
    Orbit {
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, value_enum, default_value_t = IdentityKind::All)]
        identity: IdentityKind,
    },
    /// Edge and edge-pair counts of the complete graph.
    Census {
        #[arg(long, default_value_t = 4)]
        m: usize,
    },
    /// Multiplicities from summing the local four-index inequality.
    Spade {
        #[arg(long, default_value_t = 5)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    /// For which n a certificate at size m yields the inequality at size n.
    Threshold {
        #[arg(long, default_value_t = 5)]
        m: usize,
        /// Rational, e.g. `6` or `13/2`.
        #[arg(long, default_value = "6")]
        r: String,
        #[arg(long, default_value = "1")]
        epsilon: String,
        /// Single size to evaluate; otherwise every n from m to --max.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 30)]
        max: usize,
    },
    /// Rank-three Heisenberg relations inside SL_5(Z/q).
    El5 {
        #[arg(long, default_value_t = 5)]
        q: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Graded {
    /// Dimensions of I^n/I^(n+1).
    Dims {
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Values of the degree-four functional.
    Phi,
    /// Gram matrix of the functional on degree-two words.
    Gram,
    /// Sum-of-squares identity for Z + ½(XY + YX), exactly and under π_θ.
    SosIdentity {
        /// Largest denominator of the angle grid.
        #[arg(long, default_value_t = 10)]
        qmax: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PChoice {
    One,
    Coprime,
}

#[derive(Subcommand, Debug)]
pub enum Expander {
    /// Orders and spectral gaps for a family of moduli.
    Run {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4])]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value_t = PChoice::One)]
        p: PChoice,
        #[arg(long, default_value_t = 200_000)]
        cap: usize,
    },
}

/// Accepts `p/q` or a decimal.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let b: f64 = b.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
            if b == 0.0 {
                return Err("zero denominator".into());
            }
            a / b
        }
        None => s.trim().parse().map_err(|e| format!("{e}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err("value must be finite".into())
    }
}
