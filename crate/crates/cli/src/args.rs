use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "dnacodes", version, about = "Coding experiments for DNA-based storage channels")]
pub struct Cli {
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Profile codes for the shotgun-sequencing channel.
    #[command(subcommand)]
    Profile(ProfileCmd),
    /// Coded trace reconstruction over the deletion channel.
    #[command(subcommand)]
    Trace(TraceCmd),
    /// Balanced bounded-intersection set families.
    #[command(subcommand)]
    Discrepancy(DiscrepancyCmd),
    /// Reconstruction from L-substring sets.
    #[command(subcommand)]
    Unique(UniqueCmd),
}

#[derive(Debug, Subcommand)]
pub enum ProfileCmd {
    /// Build a Varshamov profile codebook and write it as JSON.
    Build(ProfileBuild),
    /// Pass one codeword through the storage channel and dump the reads.
    Encode(ProfileEncode),
    /// Decode a readout dump against a codebook.
    Decode(ProfileDecode),
    /// Count distinct ℓ-mer profiles of length-n strings.
    Count(ProfileCount),
    /// Monte-Carlo decoding over all error patterns within a budget.
    Trials(ProfileTrials),
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ProfileBuild {
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub n: usize,
    /// Number of congruence rows; defaults to the length of --beta.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',')]
    pub beta: Option<Vec<u64>>,
    /// Allowed ℓ-mers (comma separated); all ℓ-mers when omitted.
    #[arg(long, value_delimiter = ',')]
    pub allowed: Option<Vec<String>>,
    /// Choose β maximising the codebook size instead of --beta.
    #[arg(long)]
    pub best_beta: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ProfileEncode {
    #[arg(long)]
    pub codebook: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    #[arg(long, default_value_t = 0)]
    pub s: usize,
    #[arg(long, default_value_t = 0)]
    pub c: usize,
    #[arg(long, default_value_t = 0)]
    pub o: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ProfileDecode {
    #[arg(long)]
    pub codebook: PathBuf,
    #[arg(long)]
    pub readout: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ProfileCount {
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ProfileTrials {
    #[arg(long)]
    pub codebook: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Error budget 2s+c+o; defaults to d_min − 1.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Only draw patterns with no synthesis substitutions.
    #[arg(long)]
    pub no_synthesis: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write every failed trial as a JSON line.
    #[arg(long)]
    pub failures: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TraceCmd {
    /// Encode random messages and dump their traces.
    Simulate(TraceSimulate),
    /// Encode a binary message with the marker code.
    Encode(TraceEncode),
    /// Decode a trace dump.
    Decode(TraceDecode),
    /// Success rates over a grid of (n, level, q_del, t).
    Sweep(TraceSweep),
    /// Uncoded BMA consensus of a strings file.
    Consensus(TraceConsensus),
}

#[derive(Debug, Args, Clone)]
pub struct CodeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub level: u8,
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct TraceSimulate {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub qdel: f64,
    #[arg(long)]
    pub traces: usize,
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the messages as `trial<TAB>bits` lines.
    #[arg(long)]
    pub messages: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct TraceEncode {
    #[arg(long, default_value_t = 1)]
    pub level: u8,
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    /// Message bits, e.g. 0110.
    #[arg(long)]
    pub message: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct TraceDecode {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long)]
    pub qdel: f64,
    /// Trace dump with `trial<TAB>trace` lines.
    #[arg(long)]
    pub traces: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct TraceSweep {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub level: Vec<u8>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub qdel: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub traces: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct TraceConsensus {
    /// Strings file with one trace per line.
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub length: usize,
    /// Compare against this string and write a position diff.
    #[arg(long)]
    pub reference: Option<String>,
    #[arg(long)]
    pub diff: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DiscrepancyCmd {
    /// Babai-Frankl family with its balanced labeling, as JSON.
    Build(DiscBuild),
    /// Check a family file; exit 1 on any violated invariant.
    Verify(DiscVerify),
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct DiscBuild {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct DiscVerify {
    #[arg(long)]
    pub file: PathBuf,
    /// Also check the transversal-design property with column groups.
    #[arg(long)]
    pub design: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum UniqueCmd {
    /// One JSON line per string of the file.
    Check(UniqueCheck),
    /// All strings of length n with the given L-substring set.
    Assemble(UniqueAssemble),
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct UniqueCheck {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long = "L", alias = "l")]
    pub window: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct UniqueAssemble {
    /// Strings file listing the spectrum members.
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
