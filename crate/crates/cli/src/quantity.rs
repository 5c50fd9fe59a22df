//! Parameter points and the scalar quantities that can be evaluated on them.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use qtele_core::measures::{
    average_fidelity_closed, average_fidelity_inertial, average_fidelity_quadrature,
    teleport_fidelity,
};
use qtele_core::rindler::{check_r, input_concurrence};
use qtele_core::teleport::output_concurrence;
use qtele_core::{InputParams, ModelParams, QuadratureSpec};

use crate::error::{CliError, Result};

/// One of the six scalar inputs of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    J,
    D,
    T,
    Theta,
    Phi,
    R,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::J,
        Param::D,
        Param::T,
        Param::Theta,
        Param::Phi,
        Param::R,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::J => "J",
            Param::D => "D",
            Param::T => "T",
            Param::Theta => "theta",
            Param::Phi => "phi",
            Param::R => "r",
        }
    }

    /// Angles are the parameters `--deg` converts.
    pub fn is_angle(self) -> bool {
        matches!(self, Param::Theta | Param::Phi | Param::R)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown parameter `{s}` (expected one of J, D, T, theta, phi, r)"
                ))
            })
    }
}

/// A full assignment of the six parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub j: f64,
    pub d: f64,
    pub t: f64,
    pub theta: f64,
    pub phi: f64,
    pub r: f64,
}

impl Default for Point {
    /// `J = 1, D = 0, T = 0.1, θ = π/4, φ = 0, r = 0`.
    fn default() -> Self {
        Point {
            j: 1.0,
            d: 0.0,
            t: 0.1,
            theta: FRAC_PI_4,
            phi: 0.0,
            r: 0.0,
        }
    }
}

impl Point {
    pub fn get(&self, p: Param) -> f64 {
        match p {
            Param::J => self.j,
            Param::D => self.d,
            Param::T => self.t,
            Param::Theta => self.theta,
            Param::Phi => self.phi,
            Param::R => self.r,
        }
    }

    pub fn set(&mut self, p: Param, value: f64) {
        match p {
            Param::J => self.j = value,
            Param::D => self.d = value,
            Param::T => self.t = value,
            Param::Theta => self.theta = value,
            Param::Phi => self.phi = value,
            Param::R => self.r = value,
        }
    }

    pub fn with(mut self, p: Param, value: f64) -> Self {
        self.set(p, value);
        self
    }

    pub fn model(&self) -> Result<ModelParams> {
        Ok(ModelParams::new(self.j, self.d, self.t)?)
    }

    pub fn input(&self) -> Result<InputParams> {
        Ok(InputParams::new(self.theta, self.phi, self.r)?)
    }

    /// Checks every parameter against its domain, naming the first offender.
    pub fn validate(&self) -> Result<()> {
        self.model()?;
        self.input()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Quantity {
    /// Concurrence of the accelerated input state.
    Cin,
    /// Concurrence of the teleported state.
    Cout,
    /// Uhlmann fidelity between input and teleported state.
    Fidelity,
    /// Average fidelity in the accelerated frame, closed form.
    Fa,
    /// Average fidelity in the accelerated frame, by quadrature.
    FaQuad,
    /// Average fidelity without acceleration.
    Fa1,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Cin => "cin",
            Quantity::Cout => "cout",
            Quantity::Fidelity => "fidelity",
            Quantity::Fa => "fa",
            Quantity::FaQuad => "fa-quad",
            Quantity::Fa1 => "fa1",
        }
    }

    /// Parameters the value depends on, in canonical order.
    pub fn inputs(self) -> &'static [Param] {
        use Param::*;
        match self {
            Quantity::Cin => &[Theta, R],
            Quantity::Cout | Quantity::Fidelity => &[J, D, T, Theta, Phi, R],
            Quantity::Fa | Quantity::FaQuad => &[J, D, T, R],
            Quantity::Fa1 => &[J, D, T],
        }
    }

    pub fn uses_quadrature(self) -> bool {
        self == Quantity::FaQuad
    }

    pub fn evaluate(self, p: &Point, quad: &QuadratureSpec) -> Result<f64> {
        let value = match self {
            Quantity::Cin => input_concurrence(&p.input()?),
            Quantity::Cout => output_concurrence(&p.model()?, &p.input()?),
            Quantity::Fidelity => teleport_fidelity(&p.model()?, &p.input()?)?,
            Quantity::Fa => average_fidelity_closed(&p.model()?, p.r)?,
            Quantity::FaQuad => average_fidelity_quadrature(&p.model()?, check_r(p.r)?, quad)?,
            Quantity::Fa1 => average_fidelity_inertial(&p.model()?),
        };
        Ok(value)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
