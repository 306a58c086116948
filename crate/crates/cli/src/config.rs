//! Command-line arguments and their validation.

use std::path::PathBuf;

use anyhow::bail;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::report::{float, Format};

#[derive(Debug, Clone, Parser)]
#[command(name = "hankel3", version, about = "Verification suite for the bound |H3(1)(f^-1)| <= 1/9 on starlike functions of order 1/2")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Use exact rational arithmetic where the command supports it.
    #[arg(long, global = true)]
    pub exact: bool,

    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,

    /// Worker threads (defaults to the number of cores). Does not affect output.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the full bound verification and report SHARP or BOUND-ONLY.
    VerifyBound {
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
        /// Skip adaptive refinement of cells above the observed maximum.
        #[arg(long)]
        no_refine: bool,
    },
    /// Certified maximization of the majorant over the cuboid.
    Scan {
        #[arg(long)]
        grid_step: f64,
        #[arg(long)]
        refine: bool,
    },
    /// Coefficients and Hankel determinants of the extremal function and its inverse.
    Extremal,
    /// Random Herglotz measures with a fixed number of atoms.
    Sample {
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Invert f(z) = z + a2 z^2 + ... + a5 z^5.
    Revert {
        /// Comma-separated a2,a3,a4,a5 (decimals or p/q).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<String>,
    },
    /// Closed-form case table and critical-point exclusion.
    Cases,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::VerifyBound { .. } => "verify-bound",
            Self::Scan { .. } => "scan",
            Self::Extremal => "extremal",
            Self::Sample { .. } => "sample",
            Self::Revert { .. } => "revert",
            Self::Cases => "cases",
        }
    }
}

impl RunConfig {
    /// Checks the documented invariants before any work is done.
    pub fn validate(&self) -> anyhow::Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            bail!("--tolerance must be a finite non-negative number, got {}", self.tolerance);
        }
        if self.workers == Some(0) {
            bail!("--workers must be at least 1");
        }
        match &self.command {
            Command::VerifyBound { grid_step, .. } | Command::Scan { grid_step, .. } => {
                if !(*grid_step > 0.0 && *grid_step <= 0.05) {
                    bail!("--grid-step must lie in (0, 0.05], got {grid_step}");
                }
            }
            Command::Sample { samples, atoms, .. } => {
                if *samples < 1 {
                    bail!("--samples must be at least 1");
                }
                if !(1..=64).contains(atoms) {
                    bail!("--atoms must lie in [1, 64], got {atoms}");
                }
                if self.exact {
                    bail!("sample runs in floating point only; drop --exact");
                }
            }
            Command::Revert { coeffs } => {
                if coeffs.len() != 4 {
                    bail!("--coeffs expects exactly four values a2,a3,a4,a5, got {}", coeffs.len());
                }
            }
            Command::Extremal | Command::Cases => {}
        }
        Ok(())
    }

    /// The settings that determine the report. Worker count and output path
    /// are left out so reports compare byte for byte across runs.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "format": self.format,
            "exact": self.exact,
            "tolerance": float(self.tolerance),
        });
        let map = v.as_object_mut().expect("object literal");
        match &self.command {
            Command::VerifyBound { grid_step, no_refine } => {
                map.insert("grid_step".into(), float(*grid_step));
                map.insert("refine".into(), json!(!no_refine));
            }
            Command::Scan { grid_step, refine } => {
                map.insert("grid_step".into(), float(*grid_step));
                map.insert("refine".into(), json!(refine));
            }
            Command::Sample { samples, atoms, seed } => {
                map.insert("samples".into(), json!(samples));
                map.insert("atoms".into(), json!(atoms));
                map.insert("seed".into(), json!(seed));
            }
            Command::Revert { coeffs } => {
                map.insert("coeffs".into(), json!(coeffs));
            }
            Command::Extremal | Command::Cases => {}
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("hankel3").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn invariants() {
        assert!(parse(&["scan", "--grid-step", "0.05"]).validate().is_ok());
        assert!(parse(&["scan", "--grid-step", "0.06"]).validate().is_err());
        assert!(parse(&["scan", "--grid-step", "0"]).validate().is_err());
        assert!(parse(&["sample", "--samples", "0", "--atoms", "3", "--seed", "1"]).validate().is_err());
        assert!(parse(&["sample", "--samples", "5", "--atoms", "65", "--seed", "1"]).validate().is_err());
        assert!(parse(&["sample", "--samples", "5", "--atoms", "64", "--seed", "1"]).validate().is_ok());
        assert!(parse(&["revert", "--coeffs", "1,2,3"]).validate().is_err());
        assert!(parse(&["revert", "--coeffs", "-1,1/2,0,3"]).validate().is_ok());
        assert!(parse(&["cases", "--workers", "0"]).validate().is_err());
    }

    #[test]
    fn seed_is_mandatory() {
        let args = ["hankel3", "sample", "--samples", "5", "--atoms", "3"];
        assert!(RunConfig::try_parse_from(args).is_err());
    }

    #[test]
    fn config_json_omits_workers() {
        let c = parse(&["--workers", "3", "extremal"]);
        let v = c.to_json();
        assert!(v.get("workers").is_none());
        assert_eq!(v["exact"], json!(false));
    }
}
