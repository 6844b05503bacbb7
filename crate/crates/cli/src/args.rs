use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gapsieve::census::Constellation;
use gapsieve::dynsys::DEFAULT_PRIME_BUDGET;
use gapsieve::survival::DEFAULT_SIEVE_BUDGET;

#[derive(Debug, Parser)]
#[command(name = "gapsieve", version, about = "Cycles of gaps in the sieve of Eratosthenes")]
pub struct Cli {
    /// Worker threads for parallel stages (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build G(P#) and print it, or write it to a cache file.
    Build(BuildArgs),
    /// Run structural checks on a cycle.
    Verify(VerifyArgs),
    /// Count gaps or constellations and their driving terms.
    Census(CensusArgs),
    /// Iterate the population model from a census to a later prime.
    Model(ModelArgs),
    /// Asymptotic population of a gap or constellation relative to 2.
    Asymptotic(AsymptoticArgs),
    /// Feasibility and weight of the repetition g, g, ..., g.
    Repetition(RepetitionArgs),
    /// Eigenvalue products a_j from P0 to PK.
    Ajk(AjkArgs),
    /// Value of a_2 at which two populations change order.
    Crossover(CrossoverArgs),
    /// Keep sieving a fixed primorial cycle until only primes remain.
    Attrition(AttritionArgs),
    /// Compare naive interval estimates with real prime gaps.
    NaiveError(NaiveErrorArgs),
    /// Recompute a published table and compare cell by cell.
    Reproduce(ReproduceArgs),
}

/// Where a cycle comes from: a cache file, or a primorial built on demand
/// (read from and saved to GAPSIEVE_CACHE_DIR when that is set).
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct CycleSource {
    /// Cycle cache file.
    #[arg(long, value_name = "FILE")]
    pub cycle: Option<PathBuf>,
    /// Use G(P#) instead of a file.
    #[arg(long = "prime", value_name = "P")]
    pub prime: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Largest prime of the primorial.
    #[arg(long, value_name = "P")]
    pub prime: u64,
    /// Write the cycle to this cache file instead of printing it.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Stream gaps to the file without holding the cycle in memory.
    #[arg(long, requires = "out")]
    pub stream: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: CycleSource,
    /// Also compare against a brute-force gcd scan (N up to 10^8).
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).multiple(false))]
pub struct CensusArgs {
    #[command(flatten)]
    pub source: CycleSource,
    /// Gaps to count, comma separated or repeated.
    #[arg(long, group = "target", num_args = 1.., value_delimiter = ',', value_name = "G")]
    pub gap: Vec<u64>,
    /// A constellation as a comma list, e.g. 2,10,2.
    #[arg(long, group = "target", value_name = "LIST")]
    pub constellation: Option<Constellation>,
    /// Report lengths 1..=J (default: up to the longest driving term).
    #[arg(long, value_name = "J")]
    pub max_len: Option<usize>,
    /// Write long-format CSV here.
    #[arg(long, value_name = "OUT")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).multiple(false))]
pub struct ModelArgs {
    #[command(flatten)]
    pub source: CycleSource,
    #[arg(long, group = "target", value_name = "G")]
    pub gap: Option<u64>,
    #[arg(long, group = "target", value_name = "LIST")]
    pub constellation: Option<Constellation>,
    /// Last prime to step through.
    #[arg(long, value_name = "PK")]
    pub to_prime: u64,
    /// Write CSV here instead of standard output.
    #[arg(long, value_name = "OUT")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).multiple(false))]
pub struct AsymptoticArgs {
    #[arg(long, group = "target", value_name = "G")]
    pub gap: Option<u64>,
    /// Constellation weight from a census of the given cycle.
    #[arg(long, group = "target", value_name = "LIST", requires = "cycle")]
    pub constellation: Option<Constellation>,
    #[arg(long, value_name = "FILE")]
    pub cycle: Option<PathBuf>,
    /// Partial ratio over the prime factors of G up to P.
    #[arg(long, value_name = "P", requires = "gap")]
    pub at_prime: Option<u64>,
    /// Also print a 4-place decimal.
    #[arg(long)]
    pub decimal: bool,
    /// Write g,qbar,w_partial,w_infinity,feasible here.
    #[arg(long, value_name = "OUT", requires = "gap")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RepetitionArgs {
    #[arg(long, value_name = "G")]
    pub gap: u64,
    /// Number of repeated gaps.
    #[arg(long, value_name = "J1")]
    pub length: usize,
}

#[derive(Debug, Args)]
pub struct AjkArgs {
    #[arg(long, value_name = "P0")]
    pub p0: u64,
    #[arg(long, value_name = "PK")]
    pub pk: u64,
    #[arg(long, value_name = "J", default_value_t = 9)]
    pub jmax: usize,
    /// Refuse to sieve past this bound.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_PRIME_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct CrossoverArgs {
    #[command(flatten)]
    pub source: CycleSource,
    #[arg(long, value_name = "A")]
    pub gap_a: u64,
    #[arg(long, value_name = "B")]
    pub gap_b: u64,
}

#[derive(Debug, Args)]
pub struct AttritionArgs {
    #[command(flatten)]
    pub source: CycleSource,
    /// Write per-prime gap histograms here.
    #[arg(long, value_name = "OUT")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NaiveErrorArgs {
    #[arg(long, value_name = "A")]
    pub pmin: u64,
    #[arg(long, value_name = "B")]
    pub pmax: u64,
    /// Single gaps, comma separated.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub gaps: Vec<u64>,
    /// Extra constellation targets; may be repeated.
    #[arg(long, value_name = "LIST")]
    pub constellation: Vec<Constellation>,
    /// Refuse intervals reaching past this bound.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_SIEVE_BUDGET)]
    pub budget: u64,
    #[arg(long, value_name = "OUT")]
    pub csv: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Table2,
    Table3,
    Table5,
    Fig5,
    G7Attrition,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    pub table: Table,
    /// Allow targets that run for hours.
    #[arg(long)]
    pub long: bool,
}
