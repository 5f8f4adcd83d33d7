use std::path::PathBuf;

use thetagraph_core::dot::LabelStyle;
use thetagraph_core::predictor::Predictor;
use thetagraph_core::{EpsilonRule, FieldSpec, Side};

use crate::error::CliError;

/// Environment variable overriding the trial-division bound.
pub const TRIAL_BOUND_ENV: &str = "THETA_TRIAL_DIVISION_BOUND";

/// Everything a command needs; built from the command line and environment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub p: u32,
    pub n: u32,
    /// Monic modulus, constant term first.
    pub modulus: Option<Vec<u32>>,
    /// Generator as coefficients, constant term first.
    pub generator: Option<Vec<u32>>,
    pub trial_bound: u64,
    pub side: Option<Side>,
    pub output: Option<PathBuf>,
    pub json: bool,
    pub split: bool,
    pub labels: LabelStyle,
    pub epsilon_rule: EpsilonRule,
}

impl RunConfig {
    pub fn new(n: u32) -> Self {
        RunConfig {
            p: 5,
            n,
            modulus: None,
            generator: None,
            trial_bound: thetagraph_core::intfactor::DEFAULT_TRIAL_BOUND,
            side: None,
            output: None,
            json: false,
            split: false,
            labels: LabelStyle::Exponent,
            epsilon_rule: EpsilonRule::AtLcm,
        }
    }

    /// Applies the trial-bound override from the environment, if set.
    pub fn with_env(mut self) -> Result<Self, CliError> {
        if let Ok(raw) = std::env::var(TRIAL_BOUND_ENV) {
            self.trial_bound = parse_bound(&raw)?;
        }
        Ok(self)
    }

    /// The field, with overrides checked for irreducibility and primitivity.
    pub fn field(&self) -> Result<FieldSpec, CliError> {
        if self.n == 0 {
            return Err(CliError::Usage("-n must be at least 1".into()));
        }
        let field = match &self.modulus {
            Some(m) => {
                if m.len() != self.n as usize + 1 {
                    return Err(CliError::Usage(format!(
                        "modulus has degree {}, but -n is {}",
                        m.len().saturating_sub(1),
                        self.n
                    )));
                }
                FieldSpec::with_modulus(self.p, m.clone(), self.generator.clone())?
            }
            None if self.generator.is_some() => {
                let modulus = FieldSpec::new(self.p, self.n as usize)?.modulus().to_vec();
                FieldSpec::with_modulus(self.p, modulus, self.generator.clone())?
            }
            None => FieldSpec::new(self.p, self.n as usize)?,
        };
        Ok(field)
    }

    pub fn predictor(&self) -> Predictor {
        Predictor::with_bound(self.trial_bound).with_rule(self.epsilon_rule)
    }

    pub(crate) fn require_p5(&self, what: &str) -> Result<(), CliError> {
        if self.p != 5 {
            return Err(CliError::Usage(format!("{what} needs p = 5 (got p = {})", self.p)));
        }
        Ok(())
    }
}

fn parse_bound(raw: &str) -> Result<u64, CliError> {
    match raw.trim().parse::<u64>() {
        Ok(b) if b >= 2 => Ok(b),
        _ => Err(CliError::Usage(format!(
            "{TRIAL_BOUND_ENV} must be an integer >= 2, got {raw:?}"
        ))),
    }
}

/// Parses a comma-separated coefficient list such as `3,3,0,1`.
pub fn parse_coefficients(raw: &str) -> Result<Vec<u32>, String> {
    raw.split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad coefficient {c:?} in {raw:?}"))
        })
        .collect()
}
