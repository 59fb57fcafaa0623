use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which arithmetic evaluates margins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// binary64
    Working,
    /// double-double, about 32 significant digits
    Oracle,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Working => "working",
            Mode::Oracle => "oracle",
        }
    }
}

/// Largest digit count the double-double oracle can honestly deliver.
pub const MAX_ORACLE_DIGITS: u32 = 31;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub mode: Mode,
    pub oracle_digits: u32,
    /// Below this |x| the removable singularities switch to their series.
    pub small_x_threshold: f64,
    /// Relative floor a normalized margin must clear to count as verified.
    pub margin_floor: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self { mode: Mode::Working, oracle_digits: 30, small_x_threshold: 2f64.powi(-10), margin_floor: 2f64.powi(-40) }
    }
}

impl PrecisionConfig {
    pub fn oracle() -> Self {
        Self { mode: Mode::Oracle, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.oracle_digits < 30 || self.oracle_digits > MAX_ORACLE_DIGITS {
            return Err(Error::Config(format!(
                "oracle_digits must be in [30, {MAX_ORACLE_DIGITS}], got {}",
                self.oracle_digits
            )));
        }
        if !(self.small_x_threshold > 0.0 && self.small_x_threshold <= 0.1) {
            return Err(Error::Config(format!(
                "small_x_threshold must be in (0, 0.1], got {}",
                self.small_x_threshold
            )));
        }
        if !(self.margin_floor > 0.0 && self.margin_floor < 1.0) {
            return Err(Error::Config(format!("margin_floor must be in (0, 1), got {}", self.margin_floor)));
        }
        Ok(())
    }

    /// Default root-solver tolerance for this mode.
    pub fn root_tol(&self) -> f64 {
        match self.mode {
            Mode::Working => 1e-13,
            Mode::Oracle => 1e-28,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        PrecisionConfig::default().validate().unwrap();
        PrecisionConfig::oracle().validate().unwrap();
    }

    #[test]
    fn rejects_bad_threshold_and_digits() {
        let c = PrecisionConfig { small_x_threshold: 0.2, ..PrecisionConfig::default() };
        assert!(c.validate().is_err());
        let mut c = PrecisionConfig { oracle_digits: 12, ..PrecisionConfig::default() };
        assert!(c.validate().is_err());
        c.oracle_digits = 50;
        assert!(c.validate().is_err());
    }
}
