use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Market state shared by both models.
///
/// `underlying` is the spot price under Black–Scholes and the forward or
/// futures price under Black-76.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketParams {
    pub underlying: f64,
    /// Continuously compounded, per year. Negative rates are allowed.
    pub rate: f64,
    /// Per square-root year.
    pub volatility: f64,
    /// Years.
    pub maturity: f64,
}

impl MarketParams {
    pub fn new(underlying: f64, rate: f64, volatility: f64, maturity: f64) -> Result<Self> {
        let params = Self {
            underlying,
            rate,
            volatility,
            maturity,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.underlying.is_finite() && self.underlying > 0.0) {
            return Err(Error::invalid(
                "underlying",
                format!("must be finite and > 0, got {}", self.underlying),
            ));
        }
        if !self.rate.is_finite() {
            return Err(Error::invalid(
                "rate",
                format!("must be finite, got {}", self.rate),
            ));
        }
        if !(self.volatility.is_finite() && self.volatility >= 0.0) {
            return Err(Error::invalid(
                "volatility",
                format!("must be finite and >= 0, got {}", self.volatility),
            ));
        }
        if !(self.maturity.is_finite() && self.maturity > 0.0) {
            return Err(Error::invalid(
                "maturity",
                format!("must be finite and > 0, got {}", self.maturity),
            ));
        }
        Ok(())
    }

    /// `e^{-rT}`.
    pub fn discount(&self) -> f64 {
        (-self.rate * self.maturity).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptionKind {
    Call,
    Put,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExerciseStyle {
    European,
    American,
}

impl fmt::Display for ExerciseStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExerciseStyle::European => "european",
            ExerciseStyle::American => "american",
        })
    }
}

impl fmt::Display for OptionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptionKind::Call => "call",
            OptionKind::Put => "put",
        })
    }
}

/// Underlying dynamics: geometric Brownian motion on a spot price, or the
/// driftless lognormal forward of Black-76.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    BlackScholes,
    Black,
}

impl ModelKind {
    /// Drift of the log-price under the pricing measure: `r - σ²/2` for a
    /// spot, `-σ²/2` for a forward.
    pub fn log_drift(&self, params: &MarketParams) -> f64 {
        let convexity = 0.5 * params.volatility * params.volatility;
        match self {
            ModelKind::BlackScholes => params.rate - convexity,
            ModelKind::Black => -convexity,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::BlackScholes => "black_scholes",
            ModelKind::Black => "black",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptionSpec {
    pub kind: OptionKind,
    pub style: ExerciseStyle,
    pub strike: f64,
}

impl OptionSpec {
    pub fn new(kind: OptionKind, style: ExerciseStyle, strike: f64) -> Result<Self> {
        let spec = Self {
            kind,
            style,
            strike,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn european(kind: OptionKind, strike: f64) -> Self {
        Self {
            kind,
            style: ExerciseStyle::European,
            strike,
        }
    }

    pub fn american(kind: OptionKind, strike: f64) -> Self {
        Self {
            kind,
            style: ExerciseStyle::American,
            strike,
        }
    }

    /// Same contract with the other exercise style.
    pub fn with_style(self, style: ExerciseStyle) -> Self {
        Self { style, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.strike.is_finite() && self.strike > 0.0) {
            return Err(Error::invalid(
                "strike",
                format!("must be finite and > 0, got {}", self.strike),
            ));
        }
        Ok(())
    }

    /// Immediate-exercise value `max(±(level - K), 0)`.
    #[inline]
    pub fn payoff(&self, level: f64) -> f64 {
        match self.kind {
            OptionKind::Call => (level - self.strike).max(0.0),
            OptionKind::Put => (self.strike - level).max(0.0),
        }
    }

    pub(crate) fn require_style(
        &self,
        operation: &'static str,
        style: ExerciseStyle,
    ) -> Result<()> {
        if self.style != style {
            return Err(Error::UnsupportedStyle {
                operation,
                style: self.style,
            });
        }
        Ok(())
    }
}
