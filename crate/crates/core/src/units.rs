//! Unit strings in configuration files.
//!
//! Internal units: frequencies in rad/µs, times in µs, masses in kg, wave
//! vectors in rad/m. Frequencies written with Hz prefixes are read as angular
//! frequencies without a factor 2π, so `"3 MHz"` is `3.0` rad/µs. Bare numbers
//! are taken to be in internal units already.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ATOMIC_MASS_UNIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Frequency,
    Time,
    Mass,
    Wavevector,
}

fn factor(dimension: Dimension, unit: &str) -> Option<f64> {
    use Dimension::*;
    let f = match (dimension, unit) {
        (Frequency, "Hz" | "rad/s") => 1e-6,
        (Frequency, "kHz") => 1e-3,
        (Frequency, "MHz" | "rad/us" | "rad/µs" | "rad/μs") => 1.0,
        (Frequency, "GHz") => 1e3,
        (Frequency, "THz") => 1e6,
        (Time, "s") => 1e6,
        (Time, "ms") => 1e3,
        (Time, "us" | "µs" | "μs") => 1.0,
        (Time, "ns") => 1e-3,
        (Mass, "kg") => 1.0,
        (Mass, "u" | "amu" | "Da") => ATOMIC_MASS_UNIT,
        (Wavevector, "rad/m" | "1/m") => 1.0,
        (Wavevector, "rad/um" | "rad/µm" | "1/um") => 1e6,
        (Wavevector, "rad/nm" | "1/nm") => 1e9,
        _ => return None,
    };
    Some(f)
}

/// Parses `"<number> <unit>"` (space optional) into internal units.
pub fn parse_quantity(text: &str, dimension: Dimension) -> Result<f64> {
    let text = text.trim();
    let split = text
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')))
        .map_or(text.len(), |(i, _)| i);
    let (num, unit) = text.split_at(split);
    let (num, unit) = (num.trim(), unit.trim());
    let value: f64 = num
        .parse()
        .map_err(|_| Error::Unit(format!("cannot read a number from {text:?}")))?;
    if !value.is_finite() {
        return Err(Error::Unit(format!("non-finite value in {text:?}")));
    }
    if unit.is_empty() {
        return Ok(value);
    }
    factor(dimension, unit)
        .map(|f| value * f)
        .ok_or_else(|| Error::Unit(format!("unknown {dimension:?} unit {unit:?} in {text:?}")))
}

/// A number in internal units or a string with a unit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Text(String),
}

impl Quantity {
    pub fn value(&self, dimension: Dimension) -> Result<f64> {
        match self {
            Quantity::Number(x) if x.is_finite() => Ok(*x),
            Quantity::Number(x) => Err(Error::Unit(format!("non-finite value {x}"))),
            Quantity::Text(s) => parse_quantity(s, dimension),
        }
    }

    pub fn frequency(&self) -> Result<f64> {
        self.value(Dimension::Frequency)
    }

    pub fn time(&self) -> Result<f64> {
        self.value(Dimension::Time)
    }

    pub fn mass(&self) -> Result<f64> {
        self.value(Dimension::Mass)
    }

    pub fn wavevector(&self) -> Result<f64> {
        self.value(Dimension::Wavevector)
    }
}

impl From<f64> for Quantity {
    fn from(x: f64) -> Self {
        Quantity::Number(x)
    }
}
