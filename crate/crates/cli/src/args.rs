//! Command-line arguments.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xlaguerre::exactnum::{parse_rat, Rat, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "xlaguerre", version, about = "Two-step exceptional Laguerre polynomials: tables, checks and spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate hat L_n over a degree range.
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        /// Degrees, `a..b` (inclusive) or a single `n`. Defaults to ell..ell+8.
        #[arg(long, value_parser = parse_range)]
        n: Option<RangeInclusive<usize>>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the exact verification suite and emit certificates.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = parse_range)]
        n: Option<RangeInclusive<usize>>,
        /// Seed for randomized choices.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Relative tolerance for the root constraints.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Perturb one coefficient by 1/1000 (negative control).
        #[arg(long)]
        inject_fault: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gram matrix of hat L_ell..hat L_nmax under the exceptional weight.
    Gram {
        #[command(flatten)]
        params: ParamArgs,
        /// Largest degree. Defaults to ell+5.
        #[arg(long)]
        nmax: Option<usize>,
        /// Truncation radius. Defaults to max(50, 4 nmax).
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 64)]
        panels: usize,
        #[arg(long, default_value_t = 16)]
        nodes: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Fail instead of enlarging the radius when the tail bound is too big.
        #[arg(long)]
        fixed_radius: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample the potentials U0 and U2.
    Potential {
        #[command(flatten)]
        params: ParamArgs,
        /// `start:end:count`, equally spaced and inclusive.
        #[arg(long, value_parser = parse_grid, default_value = "0.05:20:400")]
        grid: SampleGrid,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Finite-difference spectra of U0 and U2 on grids h and h/2.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0.04)]
        h: f64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Complex roots of eta12, or of hat L_n with --n.
    Roots {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Rational parameter, `p/q` or an integer.
    #[arg(long, value_parser = parse_k, allow_hyphen_values = true)]
    pub k: Rat,
    #[arg(long)]
    pub m1: usize,
    #[arg(long)]
    pub m2: usize,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleGrid {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl SampleGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + i as f64 * step).collect()
    }
}

fn parse_k(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a non-negative integer: {t:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => parse(s).map(|n| n..=n),
    }
}

pub fn parse_grid(s: &str) -> Result<SampleGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("grid must be start:end:count, got {s:?}"));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    let (start, end) = (num(a)?, num(b)?);
    let count = c.parse::<usize>().map_err(|_| format!("not a count: {c:?}"))?;
    if count == 0 || !(start.is_finite() && end.is_finite()) || end < start {
        return Err(format!("bad grid {s:?}"));
    }
    Ok(SampleGrid { start, end, count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6").unwrap(), 2..=6);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("6..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("0.05:20:400").unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 400);
        assert_eq!(pts[0], 0.05);
        assert!((pts[399] - 20.0).abs() < 1e-12);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("2:1:10").is_err());
    }

    #[test]
    fn k_must_be_rational() {
        assert!(parse_k("5/2").is_ok());
        assert!(parse_k("-3").is_ok());
        assert!(parse_k("2.5").is_err());
    }
}
