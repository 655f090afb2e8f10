//! JSON-facing configuration records (f64 only).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{Axis, Direction};
use crate::model::params::{RamanParams, BERYLLIUM_ION_MASS};
use crate::model::vibronic::{BeamSpec, DEFAULT_SERIES_ORDER};
use crate::units::Quantity;
use crate::Complex;

fn zero() -> Quantity {
    Quantity::Number(0.0)
}

/// Three-level parameters as written in a config file.
///
/// The laser frequencies are given either directly (`omega_a`, `omega_b`) or
/// through the single-photon detunings (`delta_minus`, `delta_plus`).
/// Coupling phases are in radians. Wave vectors are in rad/m.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamanConfig {
    pub omega0: Quantity,
    #[serde(default = "zero")]
    pub omega1: Quantity,
    pub omega2: Quantity,
    pub omegav: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_a: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_b: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_minus: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_plus: Option<Quantity>,
    pub g_a: Quantity,
    #[serde(default)]
    pub g_a_phase: f64,
    pub g_b: Quantity,
    #[serde(default)]
    pub g_b_phase: f64,
    #[serde(default)]
    pub k_a: [f64; 3],
    #[serde(default)]
    pub k_b: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ion_mass: Option<Quantity>,
}

fn laser(direct: &Option<Quantity>, detuning: &Option<Quantity>, gap: f64, name: &str) -> Result<f64> {
    match (direct, detuning) {
        (Some(w), None) => w.frequency(),
        (None, Some(d)) => Ok(gap + d.frequency()?),
        (Some(_), Some(_)) => Err(Error::InvalidParameter(format!("give either omega_{name} or its detuning, not both"))),
        (None, None) => Err(Error::InvalidParameter(format!("missing omega_{name} or its detuning"))),
    }
}

impl RamanConfig {
    pub fn to_params(&self) -> Result<RamanParams<f64>> {
        let omega1 = self.omega1.frequency()?;
        let omega2 = self.omega2.frequency()?;
        let omegav = self.omegav.frequency()?;
        let omega0 = self.omega0.frequency()?;
        if !(omega0 > 0.0) {
            return Err(Error::InvalidParameter(format!("trap frequency must be positive, got {omega0}")));
        }
        let ion_mass = match &self.ion_mass {
            Some(m) => m.mass()?,
            None => BERYLLIUM_ION_MASS,
        };
        if !(ion_mass > 0.0) {
            return Err(Error::InvalidParameter(format!("ion mass must be positive, got {ion_mass}")));
        }
        if self.k_a.iter().chain(&self.k_b).any(|k| !k.is_finite()) {
            return Err(Error::InvalidParameter("wave vectors must be finite".into()));
        }
        Ok(RamanParams {
            omega0,
            omega1,
            omega2,
            omegav,
            omega_a: laser(&self.omega_a, &self.delta_minus, omegav - omega1, "a")?,
            omega_b: laser(&self.omega_b, &self.delta_plus, omegav - omega2, "b")?,
            g_a: Complex::from_polar(self.g_a.frequency()?, self.g_a_phase),
            g_b: Complex::from_polar(self.g_b.frequency()?, self.g_b_phase),
            k_a: self.k_a,
            k_b: self.k_b,
            ion_mass,
            time_unit: 1e-6,
        })
    }

    pub fn from_params(p: &RamanParams<f64>) -> Self {
        RamanConfig {
            omega0: p.omega0.into(),
            omega1: p.omega1.into(),
            omega2: p.omega2.into(),
            omegav: p.omegav.into(),
            omega_a: Some(p.omega_a.into()),
            omega_b: Some(p.omega_b.into()),
            delta_minus: None,
            delta_plus: None,
            g_a: p.g_a.norm().into(),
            g_a_phase: p.g_a.arg(),
            g_b: p.g_b.norm().into(),
            g_b_phase: p.g_b.arg(),
            k_a: p.k_a,
            k_b: p.k_b,
            ion_mass: Some(p.ion_mass.into()),
        }
    }
}

/// One effective beam. Give `axis`, or `theta` and `phi` in radians.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamConfig {
    pub strength: Quantity,
    pub eta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_order: Option<usize>,
}

impl BeamConfig {
    pub fn to_beam(&self) -> Result<BeamSpec<f64>> {
        let direction = match (self.axis, self.theta, self.phi) {
            (Some(axis), None, None) => Direction::Axis(axis),
            (None, Some(theta), phi) => Direction::Angles { theta, phi: phi.unwrap_or(0.0) },
            (None, None, None) => Direction::Axis(Axis::Z),
            _ => return Err(Error::InvalidParameter("give either axis or theta/phi for a beam".into())),
        };
        let beam = BeamSpec {
            strength: self.strength.frequency()?,
            eta: self.eta,
            direction,
            series_order: self.series_order.unwrap_or(DEFAULT_SERIES_ORDER),
        };
        beam.validate()?;
        Ok(beam)
    }

    pub fn from_beam(b: &BeamSpec<f64>) -> Self {
        let (axis, theta, phi) = match b.direction {
            Direction::Axis(a) => (Some(a), None, None),
            Direction::Angles { theta, phi } => (None, Some(theta), Some(phi)),
        };
        BeamConfig {
            strength: b.strength.into(),
            eta: b.eta,
            axis,
            theta,
            phi,
            series_order: Some(b.series_order),
        }
    }
}
