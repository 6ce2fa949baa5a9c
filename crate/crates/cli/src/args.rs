use clap::{Args, Parser, Subcommand, ValueEnum};
use rademacher::verify::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "rademacher", version, about = "Rademacher symbols and torus-knot linking numbers for the triangle groups (p, q, infinity)")]
pub struct Cli {
    /// Output format; text is a rendering of the JSON, csv applies to `enumerate`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Coprime pair `P,Q` with 2 <= P < Q.
    #[arg(long)]
    pub pq: Option<String>,
    /// Word such as `-S^2 * U^-1 * S`.
    #[arg(long, conflicts_with = "matrix", allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Integer matrix `a,b;c,d` (only for `--pq 2,3`).
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Population {
    /// Coprime pair `P,Q` with 2 <= P < Q.
    #[arg(long)]
    pub pq: Option<String>,
    /// Bound on the syllables of cyclically reduced words (default 6).
    #[arg(long, conflicts_with = "max_trace")]
    pub max_syllables: Option<usize>,
    /// Bound on the trace; complete enumeration, (2, 3) only.
    #[arg(long)]
    pub max_trace: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// All symbol values of one element.
    Symbol(Target),
    /// Linking number of the modular knot with the torus knot.
    Link {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "psi", value_parser = ["psi", "Psi", "Psi_h", "Psi_e"])]
        variant: String,
        #[arg(long, default_value = "lens", value_parser = ["lens", "s3"])]
        space: String,
    },
    /// Levels of the standard lifts along a product of words.
    Lift {
        #[arg(long)]
        pq: Option<String>,
        /// Factor word; repeat for each factor.
        #[arg(long = "word", required = true, allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// Normal form and matrix of a word.
    NormalForm {
        #[arg(long)]
        pq: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Ghys's epsilon coding of a hyperbolic element of SL(2, Z).
    Code23(Target),
    /// Primitive hyperbolic conjugacy classes.
    Enumerate(Population),
    /// Distribution of Psi / length against the arctan law.
    Stats {
        #[command(flatten)]
        population: Population,
        /// Lower end of the window for Psi / length.
        #[arg(long, default_value_t = f64::NEG_INFINITY, allow_hyphen_values = true)]
        a: f64,
        /// Upper end of the window.
        #[arg(long, default_value_t = f64::INFINITY, allow_hyphen_values = true)]
        b: f64,
        /// Only classes with length at most this.
        #[arg(long)]
        max_length: Option<f64>,
    },
    /// Cycle integral and winding number against psi, (2, 3) only.
    NumericCheck {
        #[command(flatten)]
        target: Target,
        #[arg(long, conflicts_with = "max_trace")]
        max_syllables: Option<usize>,
        #[arg(long)]
        max_trace: Option<u64>,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Initial samples of the winding path.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Randomized and exhaustive invariant suites.
    Verify {
        #[arg(long)]
        pq: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random cases per randomized suite.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Syllable bound for the class-based suites.
        #[arg(long, default_value_t = 6)]
        max_syllables: usize,
    },
}
