use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "pertinency",
    version,
    about = "Admissibility and pertinency of cyclic actions on the (-1)-skew polynomial ring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Print the result record as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print CSV where the command has a tabular form.
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Directory holding `records.jsonl`.
    #[arg(long, global = true, env = "PERTINENCY_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Recompute even on a cache hit and fail if the results differ.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    /// Worker threads for the engine (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Include wall-clock timings in JSON output.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residue sets attached to `n`.
    Sets { n: u64 },
    /// Admissibility verdicts with certificates.
    Admissible {
        /// A single `n` or an inclusive range `a..b`.
        target: Option<NRange>,
        #[arg(long, conflicts_with = "target")]
        range: Option<NRange>,
    },
    /// Pertinency estimate from truncated Hilbert functions, with bounds.
    Pertinency {
        n: usize,
        #[arg(long)]
        max_degree: Option<u32>,
        /// `auto`, `none` or a comma-separated special set.
        #[arg(long, default_value = "auto")]
        phi: PhiArg,
        /// Largest `n` for the symbolic pipeline under any quotient policy.
        #[arg(long, default_value_t = 10)]
        symbolic_limit: usize,
        /// Largest `n` for the symbolic pipeline with an explicit `--phi`.
        #[arg(long, default_value_t = 12)]
        quotient_limit: usize,
        /// Profile every `j`, not only the divisors of `n`.
        #[arg(long)]
        all_j: bool,
    },
    /// Pertinency for `n = 2..14` against the reference values.
    Table08 {
        #[arg(long, default_value_t = 30)]
        max_degree: u32,
    },
    /// Hilbert function of `Ā / B_j Ā`.
    Hilbert {
        n: usize,
        j: usize,
        #[arg(long, default_value = "none")]
        phi: PhiArg,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Least `N` with `c_i^N` in `B_j Ā`.
    Nilpotency {
        n: usize,
        i: usize,
        j: usize,
        #[arg(long, default_value = "none")]
        phi: PhiArg,
        #[arg(long, default_value_t = 20)]
        max_degree: u32,
    },
    /// Replay the derivation scripts and run the invariant suites.
    VerifyPaper {
        /// Run only cases whose name starts with this prefix.
        #[arg(long)]
        case: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiArg {
    Auto,
    None,
    List(Vec<usize>),
}

impl FromStr for PhiArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "auto" => Ok(PhiArg::Auto),
            "none" | "" => Ok(PhiArg::None),
            list => list
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| format!("bad residue `{x}`: {e}")))
                .collect::<Result<Vec<_>, _>>()
                .map(PhiArg::List),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NRange(pub RangeInclusive<u64>);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("bad integer `{x}`: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo < 2 || lo > hi {
            return Err(format!("range `{s}` must be nonempty with n >= 2"));
        }
        Ok(NRange(lo..=hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ranges_and_phi() {
        assert_eq!("2..76".parse::<NRange>().unwrap().0, 2..=76);
        assert_eq!("5..=7".parse::<NRange>().unwrap().0, 5..=7);
        assert_eq!("77".parse::<NRange>().unwrap().0, 77..=77);
        assert!("9..3".parse::<NRange>().is_err());
        assert!("1".parse::<NRange>().is_err());
        assert_eq!("1,2, 4".parse::<PhiArg>().unwrap(), PhiArg::List(vec![1, 2, 4]));
        assert_eq!("auto".parse::<PhiArg>().unwrap(), PhiArg::Auto);
    }
}
