use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qqpart::Complex64;

#[derive(Debug, Parser)]
#[command(name = "qqpart", version, about = "Concurrence and EOF lower bounds for qubit-qudit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound the concurrence and EOF of a density matrix read from JSON.
    Bound(BoundArgs),
    /// Tavis-Cummings atom-cavity entanglement curve as CSV.
    Tc(TcArgs),
    /// Print spin-flip matrices S^ij as integer grids.
    Sflip(SflipArgs),
    /// Run the seeded verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// JSON document {"d": int, "matrix": [[[re, im], ...], ...]}
    #[arg(long)]
    pub input: PathBuf,
    /// Report destination (standard output when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TcArgs {
    /// Initial cavity photon number.
    #[arg(long)]
    pub n: u32,
    /// Amplitude of |0_A 0_B⟩ as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: Option<Complex64>,
    /// Amplitude of |1_A 1_B⟩ as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub beta: Option<Complex64>,
    /// Largest dimensionless time (n = 0 or 2 only).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "gt_max")]
    pub tau_max: Option<f64>,
    /// Number of grid points, including both ends.
    #[arg(long, default_value_t = 201)]
    pub steps: usize,
    /// Largest g·t; required when n is neither 0 nor 2.
    #[arg(long, allow_hyphen_values = true)]
    pub gt_max: Option<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SflipArgs {
    /// Number of qudit levels.
    #[arg(long)]
    pub d: usize,
    /// Single level pair `i,j`; all pairs when omitted.
    #[arg(long, value_parser = parse_pair)]
    pub pair: Option<(usize, usize)>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Random draws per qudit dimension.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Comma-separated qudit dimensions.
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    pub d_list: Vec<usize>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("invalid number {p:?}: {e}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected `re` or `re,im`, got {s:?}")),
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(format!("amplitude {s:?} is not finite"));
    }
    Ok(z)
}

pub fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `i,j`, got {s:?}"))?;
    let num = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("invalid level {p:?}: {e}"));
    Ok((num(i)?, num(j)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-0.5, 0.25").unwrap(), Complex64::new(-0.5, 0.25));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("inf").is_err());
    }

    #[test]
    fn pair_parsing() {
        assert_eq!(parse_pair("0,2").unwrap(), (0, 2));
        assert!(parse_pair("02").is_err());
        assert!(parse_pair("-1,2").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
