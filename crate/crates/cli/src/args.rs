//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "drinfeld", version, about = "Exact computations with Drinfeld F_q[t]-modules")]
pub struct Cli {
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Flags shared by every subcommand; each command reads the ones it needs.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Monic irreducible polynomial in `t`, e.g. "t^2+t+1".
    #[arg(long)]
    pub place: Option<String>,
    #[arg(long)]
    pub level: Option<String>,
    #[arg(long)]
    pub weight: Option<usize>,
    /// Weight list or range, e.g. "1,2,5" or "1-6".
    #[arg(long)]
    pub weights: Option<String>,
    /// Comma-separated primes, e.g. "t^2+t+1,t^3+t+1".
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long = "prime-degree-max")]
    pub prime_degree_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads for enumerations (1 = sequential).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Upper bound on exhaustive search sizes.
    #[arg(long, default_value_t = 1 << 24)]
    pub cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cache directory for enumeration results (default: $DRINFELD_CACHE_DIR).
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Group {
    /// Supersingular modules.
    #[command(subcommand)]
    Ss(SsCmd),
    /// Brandt matrices and their eigensystems.
    #[command(subcommand)]
    Brandt(BrandtCmd),
    /// Comparison with forms on the moduli space.
    #[command(subcommand)]
    Jl(JlCmd),
    /// The level-t moduli space and its forms.
    #[command(subcommand)]
    Moduli(ModuliCmd),
    /// The local spherical Hecke algebra.
    #[command(subcommand, name = "hecke-local")]
    HeckeLocal(LocalCmd),
    /// Single Drinfeld modules.
    #[command(subcommand)]
    Drinfeld(DrinfeldCmd),
}

#[derive(Subcommand, Debug)]
pub enum SsCmd {
    Enumerate(#[command(flatten)] RunConfig),
    Mass {
        #[command(flatten)]
        cfg: RunConfig,
        /// Also enumerate and compare with the closed form.
        #[arg(long)]
        verify: bool,
    },
    Leveled(#[command(flatten)] RunConfig),
    Dim(#[command(flatten)] RunConfig),
}

#[derive(Args, Debug, Clone)]
pub struct BrandtArgs {
    #[command(flatten)]
    pub cfg: RunConfig,
    /// `j` of `T_{w,j}`; all `1..=r` when omitted.
    #[arg(long)]
    pub j: Option<usize>,
    /// Randomize per-point normalizations with this seed.
    #[arg(long = "normalization-seed")]
    pub normalization_seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum BrandtCmd {
    Matrix(BrandtArgs),
    Eigensystems(BrandtArgs),
    Periodicity(BrandtArgs),
}

#[derive(Subcommand, Debug)]
pub enum JlCmd {
    Verify {
        #[command(flatten)]
        cfg: RunConfig,
        /// Weight window on the moduli side.
        #[arg(long = "moduli-weights", default_value = "1-6")]
        moduli_weights: String,
        #[arg(long = "field-degree")]
        field_degree: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ModuliArgs {
    #[command(flatten)]
    pub cfg: RunConfig,
    /// Degree of the coordinate field `F_{q^n}` over `F_q`.
    #[arg(long = "field-degree", default_value_t = 6)]
    pub field_degree: usize,
    /// `lambda(e_1), ..., lambda(e_r)` as element codes; random when omitted.
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub j: Option<usize>,
    /// Number of random points.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Degeneration path as JSON `[[num, den], ...]` of coefficient lists in `B`.
    #[arg(long)]
    pub path: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ModuliCmd {
    Point(ModuliArgs),
    FormBasis(ModuliArgs),
    Hecke(ModuliArgs),
    Strata(ModuliArgs),
    Components(#[command(flatten)] RunConfig),
    Limit(ModuliArgs),
}

#[derive(Args, Debug, Clone)]
pub struct LocalArgs {
    #[command(flatten)]
    pub cfg: RunConfig,
    #[arg(long = "q_w", alias = "q-w")]
    pub q_w: u32,
    /// Cartan type, e.g. "1,0".
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long = "mu2", allow_hyphen_values = true)]
    pub mu2: Option<String>,
    /// Bound on |mu| for the commutativity sweep.
    #[arg(long, default_value_t = 2)]
    pub bound: i64,
}

#[derive(Subcommand, Debug)]
pub enum LocalCmd {
    Reps(LocalArgs),
    Convolve(LocalArgs),
    Commute(LocalArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub cfg: RunConfig,
    #[arg(long = "field-degree", default_value_t = 1)]
    pub field_degree: usize,
    /// Image of `t` as an element code; the root of `--place` when omitted.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Coefficients `g_1..g_r` (element codes), or for `stable-model` Laurent sums
    /// like "3*pi^-2+1" separated by commas.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Element of `A` for `phi`.
    #[arg(long)]
    pub a: Option<String>,
    /// Candidate polynomial for `weil-check`: coefficients `a_0..a_n` in `A`, low degree first,
    /// separated by ';'.
    #[arg(long)]
    pub poly: Option<String>,
    /// `F_v^m` for `weil-check`.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum DrinfeldCmd {
    Phi(ModuleArgs),
    Height(ModuleArgs),
    Charpoly(ModuleArgs),
    StableModel(ModuleArgs),
    WeilCheck(ModuleArgs),
}

impl Group {
    pub fn config(&self) -> &RunConfig {
        match self {
            Group::Ss(SsCmd::Enumerate(c) | SsCmd::Leveled(c) | SsCmd::Dim(c)) => c,
            Group::Ss(SsCmd::Mass { cfg, .. }) => cfg,
            Group::Brandt(BrandtCmd::Matrix(a) | BrandtCmd::Eigensystems(a) | BrandtCmd::Periodicity(a)) => &a.cfg,
            Group::Jl(JlCmd::Verify { cfg, .. }) => cfg,
            Group::Moduli(ModuliCmd::Components(c)) => c,
            Group::Moduli(
                ModuliCmd::Point(a)
                | ModuliCmd::FormBasis(a)
                | ModuliCmd::Hecke(a)
                | ModuliCmd::Strata(a)
                | ModuliCmd::Limit(a),
            ) => &a.cfg,
            Group::HeckeLocal(LocalCmd::Reps(a) | LocalCmd::Convolve(a) | LocalCmd::Commute(a)) => &a.cfg,
            Group::Drinfeld(
                DrinfeldCmd::Phi(a)
                | DrinfeldCmd::Height(a)
                | DrinfeldCmd::Charpoly(a)
                | DrinfeldCmd::StableModel(a)
                | DrinfeldCmd::WeilCheck(a),
            ) => &a.cfg,
        }
    }
}
