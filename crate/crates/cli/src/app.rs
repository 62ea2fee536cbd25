use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use cyclehom::spectral::Orientation;

/// Exact homology of finite-group bar and orbit complexes, double-complex
/// pages and RO(Z/2)-graded tables.
#[derive(Debug, Parser)]
#[command(name = "cyclehom", version)]
pub struct Cli {
    /// TOML file with defaults for `truncation` and `threads`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads, overriding the config file.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homology of a group from its bar complex.
    GroupHomology(GroupHomologyArgs),
    /// Homology of the orbit complex of an action.
    Galois(GaloisArgs),
    /// E_1 and E_2 pages of the constant-row grid of a group.
    Ss(SsArgs),
    /// Dimensions and generators of RO(Z/2)-graded cohomology.
    Bredon(BredonArgs),
    /// Write the bundled group and action files.
    SeedCorpus(SeedArgs),
}

#[derive(Debug, Args)]
pub struct GroupHomologyArgs {
    /// Group file.
    #[arg(long)]
    pub group: PathBuf,
    /// `Z`, `Q` or `Z/n`.
    #[arg(long, default_value = "Z")]
    pub coeff: String,
    /// Highest degree reported.
    #[arg(long)]
    pub max_i: usize,
    /// Truncation degree of the bar complex, at least `max_i + 1`.
    #[arg(long, short = 'N')]
    pub truncation: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GaloisArgs {
    /// Action file.
    #[arg(long)]
    pub action: PathBuf,
    #[arg(long, default_value = "Z")]
    pub coeff: String,
    #[arg(long)]
    pub max_i: usize,
    #[arg(long, short = 'N')]
    pub truncation: Option<usize>,
    /// Also compute invariants of group homology and compare degreewise.
    #[arg(long)]
    pub compare_invariants: bool,
}

#[derive(Debug, Args)]
pub struct SsArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// `Z/ℓ` with `ℓ` prime.
    #[arg(long)]
    pub coeff: String,
    /// Window `s,t`: entries with `s ≤ S` and `t ≤ T` are reported.
    #[arg(long, default_value = "4,4")]
    pub bounds: String,
    #[arg(long, value_enum, default_value_t = OrientationArg::VerticalFirst)]
    pub orientation: OrientationArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    VerticalFirst,
    HorizontalFirst,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::VerticalFirst => Orientation::VerticalFirst,
            OrientationArg::HorizontalFirst => Orientation::HorizontalFirst,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("table").required(true).args(["point", "cpinf", "gm_table"])))]
pub struct BredonArgs {
    /// `H^{p,q}(pt; Z/2)` on a bidegree such as `(0,0)` or `-4..4,-4..4`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// `H^{p,q}(CP^∞; Z/2)` on a bidegree or rectangle.
    #[arg(long, allow_hyphen_values = true)]
    pub cpinf: Option<String>,
    /// List generators with `--cpinf`.
    #[arg(long, requires = "cpinf")]
    pub generators: bool,
    /// The row `H^{s,0}(CP^∞; Z/2)` over an inclusive range `a..b`.
    #[arg(long)]
    pub gm_table: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}
