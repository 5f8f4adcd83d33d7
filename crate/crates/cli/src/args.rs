use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thetagraph_core::dot::LabelStyle;
use thetagraph_core::{EpsilonRule, Side};

use crate::config::{parse_coefficients, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "thetagraph", version, about = "Dynamics of x -> x + 1/x on the projective line over F_{p^n}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Predict cycles, trees and components from Gaussian-integer data (p = 5)
    Predict(Common),
    /// Build the whole graph and report its components
    Enumerate(Common),
    /// Compare prediction and enumeration; exit 4 on any difference
    Verify(Common),
    /// Write the graph in DOT format
    ExportDot(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

/// Comma-separated coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients(pub Vec<u32>);

fn coefficients(raw: &str) -> Result<Coefficients, String> {
    parse_coefficients(raw).map(Coefficients)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LabelArg {
    Exponent,
    Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    AtLcm,
    PerFactor,
    Inverted,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Extension degree
    #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Characteristic (odd prime)
    #[arg(short = 'p', default_value_t = 5)]
    pub p: u32,
    /// Monic modulus coefficients, constant term first (e.g. 3,3,0,1)
    #[arg(long, value_parser = coefficients)]
    pub modulus: Option<Coefficients>,
    /// Generator coefficients, constant term first
    #[arg(long, value_parser = coefficients)]
    pub generator: Option<Coefficients>,
    /// Restrict the prediction to one side
    #[arg(long, value_enum, ignore_case = true)]
    pub side: Option<SideArg>,
    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
    /// One DOT file per connected component
    #[arg(long)]
    pub split: bool,
    /// Output file (with --split: base name for the numbered files)
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    /// Node labels in DOT output
    #[arg(long, value_enum, default_value_t = LabelArg::Exponent)]
    pub labels: LabelArg,
    #[arg(long, value_enum, default_value_t = RuleArg::AtLcm, hide = true)]
    pub epsilon_rule: RuleArg,
}

impl Common {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::new(self.n).with_env()?;
        cfg.p = self.p;
        cfg.modulus = self.modulus.clone().map(|c| c.0);
        cfg.generator = self.generator.clone().map(|c| c.0);
        cfg.side = self.side.map(|s| match s {
            SideArg::A => Side::A,
            SideArg::B => Side::B,
        });
        cfg.json = self.json;
        cfg.split = self.split;
        cfg.output = self.output.clone();
        cfg.labels = match self.labels {
            LabelArg::Exponent => LabelStyle::Exponent,
            LabelArg::Poly => LabelStyle::Poly,
        };
        cfg.epsilon_rule = match self.epsilon_rule {
            RuleArg::AtLcm => EpsilonRule::AtLcm,
            RuleArg::PerFactor => EpsilonRule::PerFactor,
            RuleArg::Inverted => EpsilonRule::Inverted,
        };
        Ok(cfg)
    }
}
