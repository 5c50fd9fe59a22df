//! Entanglement teleportation of an accelerated two-qubit state through the
//! thermal state of a Heisenberg XXX pair with Dzyaloshinski–Moriya coupling.
//!
//! The chain runs [`spin_model`] → [`rindler`] → [`teleport`] → [`measures`],
//! on top of the small dense linear algebra in [`complexlin`]. Every closed
//! form has a brute-force counterpart in the same module (matrix-exponential
//! Gibbs state, region-II partial trace, sixteen-term Pauli channel, general
//! Wootters concurrence, fidelity quadrature) so the two can be compared.
//!
//! All two-qubit matrices are written in the basis `{|11⟩, |10⟩, |01⟩, |00⟩}`.

pub mod complexlin;
pub mod error;
pub mod measures;
pub mod rindler;
pub mod spin_model;
pub mod teleport;

pub use complexlin::{Complex64, ComplexMatrix, DensityMatrix, HermitianEig};
pub use error::{Error, Result};
pub use measures::{QuadratureSpec, CLASSICAL_FIDELITY_BOUND};
pub use rindler::{InputParams, PureState3};
pub use spin_model::{ModelParams, Spectrum, ThermalWeights};
pub use teleport::{BellBasis, ChannelProbs, OutputEntries};
