//! Command-line front end for `nilforge`.
//!
//! Every subcommand returns an [`Output`] that can be rendered as JSON, CSV
//! or plain text. Exit status is 0 on success, 1 on a domain error and 2 on
//! a usage error.

mod commands;
mod output;
mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use output::{Format, Output};

#[derive(Debug, Parser)]
#[command(name = "nilforge", version, about = "Free nilpotent Lie algebras, word maps and Diophantine experiments")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result to this file instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct KsArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of the free s-step nilpotent Lie algebra on k generators.
    WittDim(KsArgs),
    /// Lyndon basis with bracketings and multidegrees.
    Basis {
        #[command(flatten)]
        ks: KsArgs,
        /// Only list brackets of this degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Group law on log-coordinates: product, inverse or Lie bracket.
    Bch(BchArgs),
    /// Evaluate a word on Lie elements, or list a word ball.
    WordEval(WordEvalArgs),
    /// Logarithm of a word, or a word realising an integral element.
    WordLog(WordLogArgs),
    /// Irreducible decomposition of the top layer, or a Weyl dimension.
    Decompose(DecomposeArgs),
    /// Weight-space dimensions of irreducibles, as a table or single values.
    KostkaTable(KostkaArgs),
    /// Multiplicity by major-index counting, or the major index of a tableau.
    Kw(KwArgs),
    /// Whether an irreducible occurs in the top layer, by Klyachko's criterion.
    Klyachko {
        #[arg(long)]
        shape: String,
        /// Number of generators (defaults to the size of the shape).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Whether the top layer is multiplicity-free.
    MultFree(KsArgs),
    /// Highest-weight vectors, or the action of a matrix unit.
    Hwv(HwvArgs),
    /// Dimensions of the hook quotient and the metabelian part of the top layer.
    MetabelianDims(KsArgs),
    /// Structure constants of a quotient by top-degree relations.
    Quotient(QuotientArgs),
    /// Liouville-twisted submodule and its decay witnesses.
    LiouvilleDemo(LiouvilleArgs),
    /// Least nontrivial distance to the identity over word balls.
    Delta(DeltaArgs),
    /// Polynomial growth exponent from layer ranks.
    Tau(TauArgs),
    /// Randomized check of the sublevel-set estimate, or a Chebyshev value.
    RemezCheck(RemezArgs),
    /// Least-squares exponent fit of a delta series.
    FitBeta(FitArgs),
}

#[derive(Debug, Args)]
pub struct BchArgs {
    #[command(flatten)]
    pub ks: KsArgs,
    /// First element in compact form, e.g. `1:1,12:-1/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Return the group inverse of x.
    #[arg(long, conflicts_with_all = ["y", "bracket"])]
    pub inverse: bool,
    /// Return the Lie bracket [x, y] instead of the product.
    #[arg(long)]
    pub bracket: bool,
}

#[derive(Debug, Args)]
pub struct WordEvalArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: Option<usize>,
    /// Word such as `x1 x2^-1 x1^2`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "ball")]
    pub word: Option<String>,
    /// Arguments separated by `;` (defaults to the generators).
    #[arg(long = "args", allow_hyphen_values = true)]
    pub values: Option<String>,
    /// List the reduced words of length at most this.
    #[arg(long)]
    pub ball: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WordLogArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "element")]
    pub word: Option<String>,
    /// Keep only this multidegree of the logarithm, e.g. `(2,1)`.
    #[arg(long)]
    pub weight: Option<String>,
    /// Integral element to realise as a word.
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: Option<usize>,
    /// Print the Weyl dimension of this shape instead.
    #[arg(long)]
    pub shape: Option<String>,
}

#[derive(Debug, Args)]
pub struct KostkaArgs {
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub shape: Option<String>,
    /// Weight such as `(2,1,1)`; alone, gives the free Lie weight multiplicity.
    #[arg(long)]
    pub weight: Option<String>,
}

#[derive(Debug, Args)]
pub struct KwArgs {
    #[arg(long, conflicts_with = "tableau")]
    pub shape: Option<String>,
    /// Residue class of the major index; must be coprime to the size.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub i: i64,
    /// Standard tableau with rows separated by `;`, e.g. `1,3;2`.
    #[arg(long)]
    pub tableau: Option<String>,
}

#[derive(Debug, Args)]
pub struct HwvArgs {
    #[command(flatten)]
    pub ks: KsArgs,
    #[arg(long, conflicts_with = "action")]
    pub shape: Option<String>,
    /// Matrix unit `i,j` to apply to `--element`.
    #[arg(long, requires = "element")]
    pub action: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    #[command(flatten)]
    pub ks: KsArgs,
    /// Top-degree relations separated by `;`.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub relations: String,
}

#[derive(Debug, Args)]
pub struct LiouvilleArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 6)]
    pub s: usize,
    #[arg(long, default_value = "[4,1,1]")]
    pub shape: String,
    /// Number of terms of the Liouville series.
    #[arg(long = "M", default_value_t = 5)]
    pub truncation: usize,
    /// Witness indices, e.g. `2,3,4` (defaults to 1..M-1).
    #[arg(long)]
    pub m: Option<String>,
    /// Also evaluate each witness word in the quotient group.
    #[arg(long)]
    pub evaluate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Standard generators of the free nilpotent group.
    Free,
    /// Real numbers under addition.
    Abelian,
    /// An algebra read from a JSON file.
    AlgebraFile,
    /// Standard generators of the Liouville quotient.
    Liouville,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,
    /// Largest word length; one record per length.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    /// Abelian tuple, e.g. `1,phi`.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Tuple coordinates, elements separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    #[arg(long, default_value = "[4,1,1]")]
    pub shape: String,
    #[arg(long = "M", default_value_t = 5)]
    pub truncation: usize,
    /// Fractional digits for irrational tuples.
    #[arg(long, default_value_t = 60)]
    pub digits: u32,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    /// Layer ranks, e.g. `2,1`.
    #[arg(long, conflicts_with_all = ["k", "s"])]
    pub ranks: Option<String>,
    #[arg(long, requires = "s")]
    pub k: Option<usize>,
    #[arg(long, requires = "k")]
    pub s: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RemezArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub d_max: usize,
    #[arg(long, default_value_t = 3)]
    pub n1_max: usize,
    #[arg(long, default_value_t = nilforge::lab::DEFAULT_GRID_POINTS)]
    pub grid: usize,
    /// Evaluate the Chebyshev polynomial of this degree at `--x`.
    #[arg(long, requires = "x")]
    pub chebyshev: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV from `delta --format csv`; `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub tau: u64,
}

/// Which subcommand reaches each core operation.
pub const DISPATCH: &[(&str, &str)] = &[
    ("lyndon_basis", "basis"),
    ("witt_dimension", "witt-dim"),
    ("bracket", "bch"),
    ("weight_component", "word-log"),
    ("quasi_norm", "word-log"),
    ("central_quotient", "quotient"),
    ("bch_product", "bch"),
    ("bch_inverse", "bch"),
    ("eval_word", "word-eval"),
    ("word_to_lie", "word-log"),
    ("lie_to_word", "word-log"),
    ("word_ball", "word-eval"),
    ("weight_multiplicity", "kostka-table"),
    ("kostka", "kostka-table"),
    ("weyl_dim", "decompose"),
    ("decompose", "decompose"),
    ("major_index", "kw"),
    ("kw_multiplicity", "kw"),
    ("klyachko_occurs", "klyachko"),
    ("is_multiplicity_free", "mult-free"),
    ("glk_action", "hwv"),
    ("highest_weight_vectors", "hwv"),
    ("metabelian_layer_dims", "metabelian-dims"),
    ("delta_gamma", "delta"),
    ("bass_guivarch_exponent", "tau"),
    ("liouville_submodule", "liouville-demo"),
    ("liouville_decay", "liouville-demo"),
    ("chebyshev_t", "remez-check"),
    ("remez_check", "remez-check"),
    ("fit_beta", "fit-beta"),
];

pub fn execute(cli: &Cli) -> nilforge::Result<Output> {
    use Command::*;
    match &cli.command {
        WittDim(a) => commands::witt_dim(a),
        Basis { ks, degree } => commands::basis(ks, *degree),
        Bch(a) => commands::bch(a),
        WordEval(a) => commands::word_eval(a),
        WordLog(a) => commands::word_log(a),
        Decompose(a) => commands::decompose(a),
        KostkaTable(a) => commands::kostka_table(a),
        Kw(a) => commands::kw(a),
        Klyachko { shape, k } => commands::klyachko(shape, *k),
        MultFree(a) => commands::mult_free(a),
        Hwv(a) => commands::hwv(a),
        MetabelianDims(a) => commands::metabelian_dims(a),
        Quotient(a) => commands::quotient(a),
        LiouvilleDemo(a) => commands::liouville_demo(a),
        Delta(a) => commands::delta(a),
        Tau(a) => commands::tau(a),
        RemezCheck(a) => commands::remez_check(a),
        FitBeta(a) => commands::fit_beta(a),
    }
}

/// Parses `args`, runs the subcommand and writes the result. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return if e.is_usage() { 2 } else { 1 };
        }
    };
    let text = match out.render(cli.format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    0
}
