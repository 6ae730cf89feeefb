use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "sumfree", version, about = "Sum-free sets in finite abelian groups: exact search, structure checks and LP certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Working precision in bits for interval enclosures.
    #[arg(long, global = true, env = "SUMFREE_BITS", default_value_t = sumfree_lp::DEFAULT_BITS,
          value_parser = clap::value_parser!(u32).range(16..=4096))]
    pub bits: u32,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = 2_000_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_limit: u64,
    /// Add wall time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct GroupArg {
    /// Group as `d1xd2x...`, e.g. `7` or `2x2x4`.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Args)]
pub struct GroupSetArg {
    #[command(flatten)]
    pub group: GroupArg,
    /// Element indices, as a comma list or a file with one index per line.
    #[arg(long)]
    pub set: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoverKind {
    Kneser,
    TypeI,
    Vosper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Certificates,
    Lem34,
    MuCensus,
    KpExhaustive,
    SfCount,
    SigmaTrend,
    E0ClosedForms,
    Granularization,
    StructureCovers,
    Fourier,
    All,
}

impl Target {
    pub fn names(self) -> Vec<&'static str> {
        match self {
            Target::Certificates => vec!["certificates"],
            Target::Lem34 => vec!["lem34"],
            Target::MuCensus => vec!["mu-census"],
            Target::KpExhaustive => vec!["kp-exhaustive"],
            Target::SfCount => vec!["sf-count"],
            Target::SigmaTrend => vec!["sigma-trend"],
            Target::E0ClosedForms => vec!["e0-closed-forms"],
            Target::Granularization => vec!["granularization"],
            Target::StructureCovers => vec!["structure-covers"],
            Target::Fourier => vec!["fourier"],
            Target::All => crate::suite::NAMES.to_vec(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type I/II/III classification and the closed-form density ν(G).
    Classify(GroupArg),
    /// Exact maximum sum-free density μ(G), checked against the theorem μ(G) = ν(G).
    Mu {
        #[command(flatten)]
        group: GroupArg,
        /// Search without the extremal construction as incumbent.
        #[arg(long)]
        no_seed: bool,
    },
    /// Number of sum-free subsets |SF(G)| and the counting exponent σ(G).
    Count(GroupArg),
    /// The extremal sum-free construction of density ν(G).
    Construct(GroupArg),
    /// Coset densities along the special direction and the coset-density inequalities for sets with few Schur triples.
    Profile {
        #[command(flatten)]
        input: GroupSetArg,
        /// Schur-triple density δ; defaults to the measured one.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Pollard–Kneser inequality for truncated representation counts.
    VerifyKp {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        t: usize,
    },
    /// Structural covers of large sum-free sets: Kneser's theorem, the type I homomorphism cover, Vosper's theorem.
    Cover {
        #[command(flatten)]
        input: GroupSetArg,
        #[arg(long, value_enum, default_value = "kneser")]
        kind: CoverKind,
        /// Excess r in |A| ≥ n/3 + r for the Kneser cover.
        #[arg(long, default_value = "1")]
        r: String,
    },
    /// Granularization: approximating a sum-free set by a union of coset or progression grains.
    Granularize {
        #[command(flatten)]
        input: GroupSetArg,
        /// Progression length L.
        #[arg(long = "L")]
        l: usize,
        /// Annihilator threshold L′.
        #[arg(long = "L-prime")]
        l_prime: usize,
        #[arg(long)]
        eps: String,
        /// Override δ = 2^-16 ε⁴.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Linear-programming bound for type III groups: dual certificates, the exact simplex and the closed-form sweep.
    #[command(subcommand)]
    Lp(LpCommand),
    /// Runs acceptance suites end to end.
    Repro {
        #[arg(value_enum)]
        target: Target,
    },
}

#[derive(Debug, Subcommand)]
pub enum LpCommand {
    /// Weak-duality replay of a dual certificate: verbatim, τ-repaired or regenerated.
    Verify {
        /// Certificate JSON file.
        #[arg(long)]
        cert: PathBuf,
    },
    /// Solves the primal exactly and certifies a lower bound on M by weak duality.
    Solve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        l: u64,
        /// Extra constraint `i:a,j:b<=rhs`; repeatable.
        #[arg(long)]
        extra: Vec<String>,
        #[arg(long)]
        target: String,
    },
    /// Closed-form sweep of the shift-only bound over q < qmax, listing the exceptional q.
    Sweep {
        #[arg(long, default_value_t = 1000)]
        qmax: u64,
        /// Also sweep q with a prime factor ≡ 2 (mod 3).
        #[arg(long)]
        unrestricted: bool,
    },
}
