use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fcy_core::frobenius::CharSpec;
use fcy_core::linalg::Field;

#[derive(Parser, Debug)]
#[command(
    name = "fcy",
    version,
    about = "Nakayama automorphisms and fractional Calabi-Yau dimensions of graded quiver algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyze a presentation file or a builtin family.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Classical preprojective algebra of an acyclic quiver.
    Preprojective {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: RunOptions,
        /// Print the presentation instead of analyzing it.
        #[arg(long)]
        emit: bool,
    },
    /// Jacobi algebra of a quiver with potential and a cut.
    Jacobi {
        #[arg(long, value_name = "PATH")]
        quiver: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        potential: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        cut: Option<PathBuf>,
        /// Builtin quiver with potential and cut.
        #[arg(long, conflicts_with_all = ["quiver", "potential", "cut"])]
        family: Option<String>,
        #[command(flatten)]
        run: RunOptions,
        /// Print the presentation instead of analyzing it.
        #[arg(long)]
        emit: bool,
        /// Use the degree-0 subalgebra of the cut instead.
        #[arg(long)]
        cut_subalgebra: bool,
    },
    /// Higher preprojective algebra of type A.
    #[command(name = "typeA")]
    TypeA {
        #[arg(long = "d-param", value_name = "D")]
        d_param: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        run: RunOptions,
        /// Print the presentation instead of analyzing it.
        #[arg(long)]
        emit: bool,
    },
    /// Computed and expected dimensions for classical Dynkin preprojective algebras.
    DynkinTable {
        /// Comma-separated list such as A2,A3,D4,E6.
        #[arg(long, value_delimiter = ',', default_value = "A1,A2,A3,A4,A5,D4,D5,E6")]
        types: Vec<String>,
        #[command(flatten)]
        run: RunOptions,
        /// Worker threads; rows are printed in input order.
        #[arg(long, default_value_t = 4)]
        threads: usize,
    },
    /// Smash-window and orbit round trip plus Serre verification.
    Roundtrip {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: RunOptions,
        #[arg(long, default_value = "-3:3", allow_hyphen_values = true, value_parser = parse_window)]
        window: (i64, i64),
    },
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Builtin family: dynkin:A:4, typeA:d=2:s=3, typeA (with --d-param and --s), cobweb.
    #[arg(long, conflicts_with = "quiver")]
    pub family: Option<String>,
    /// Presentation file.
    #[arg(long, value_name = "PATH")]
    pub quiver: Option<PathBuf>,
    #[arg(long = "d-param", value_name = "D")]
    pub d_param: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
pub struct RunOptions {
    /// The integer d of the dimension dN/m; defaults to the family's natural value.
    #[arg(long = "d")]
    pub d: Option<usize>,
    /// Character: tr, sgn, sgn^d or a nonzero rational.
    #[arg(long = "char", default_value = "sgn^d", value_parser = parse_char)]
    pub chi: CharSpec,
    #[arg(long = "kmax", default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: u64,
    #[arg(long = "maxlen", default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_len: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Randomize the Frobenius form coefficients with this seed.
    #[arg(long)]
    pub form_seed: Option<u64>,
    /// q or fp:<prime>.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    /// Only accept strict equality alpha^k = id, not equality up to inner automorphisms.
    #[arg(long)]
    pub strict_order: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn parse_char(s: &str) -> Result<CharSpec, String> {
    s.parse().map_err(|e: fcy_core::FcyError| e.to_string())
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse()
        .map_err(|e: fcy_core::linalg::LinalgError| e.to_string())
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {s}"));
    }
    Ok((lo, hi))
}
