use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::group::{GroupKind, Restriction};

#[derive(Debug, Parser)]
#[command(
    name = "zclass",
    version,
    about = "Count and verify z-classes in GL_n(q) and U_n(q)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,

    /// Seed for the randomized seed search used when building large unitary groups.
    #[arg(long, default_value_t = 0x5eed, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generating-function coefficients z(n) over C, R and F_q.
    Table(TableArgs),
    /// Type counts, optionally refined to what a given q realizes.
    Count(CountArgs),
    /// Brute-force z-classes of an enumerated group against the type count.
    Verify(VerifyArgs),
    /// Polynomial utilities over F_{q^2}.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Hermitian form utilities.
    #[command(subcommand)]
    Forms(FormsCommand),
    /// z-class counts for U(n,1) and the compact U(n+1).
    Hyperbolic(HyperbolicArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    C,
    R,
    Fq,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Field rows to print; all three when omitted.
    #[arg(long, value_enum)]
    pub field: Option<FieldArg>,
    #[arg(long, default_value_t = 10)]
    pub max_n: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Gl,
    U,
}

impl From<GroupArg> for GroupKind {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Gl => GroupKind::GeneralLinear,
            GroupArg::U => GroupKind::Unitary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    All,
    Semisimple,
    Unipotent,
}

impl From<KindArg> for Restriction {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::All => Restriction::All,
            KindArg::Semisimple => Restriction::Semisimple,
            KindArg::Unipotent => Restriction::Unipotent,
        }
    }
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub group: GroupArg,
    #[arg(long)]
    pub n: u32,
    /// Field size, required by --realizable.
    #[arg(long)]
    pub q: Option<u64>,
    /// Also count the types realizable over F_q.
    #[arg(long, requires = "q")]
    pub realizable: bool,
    #[arg(long, value_enum, default_value_t = KindArg::All)]
    pub kind: KindArg,
    /// List the type descriptors.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub group: GroupArg,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, value_enum, default_value_t = KindArg::All)]
    pub kind: KindArg,
    /// Largest group order to enumerate (default 200000, or ZCLASS_MAX_GROUP).
    #[arg(long)]
    pub bound: Option<u64>,
    /// Check a single element given as a matrix file instead of the whole group.
    #[arg(long)]
    pub element_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// Self-U-reciprocal monic irreducibles of a given degree.
    Selfurec {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        list: bool,
    },
    /// The U-reciprocal of a monic polynomial.
    Tilde {
        #[arg(long)]
        q: u64,
        /// Coefficient indices, constant term first, comma separated.
        #[arg(long)]
        input: String,
    },
    /// Factorization over F_{q^2}.
    Factor {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        input: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FormsCommand {
    /// Reduce a Gram matrix to the identity and print the witness.
    Canonicalize {
        #[arg(long)]
        gram: PathBuf,
    },
    /// Whether two Gram matrices define equivalent forms.
    Equivalent {
        #[arg(long, num_args = 2, required = true)]
        gram: Vec<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct HyperbolicArgs {
    #[arg(long)]
    pub n: u32,
}
