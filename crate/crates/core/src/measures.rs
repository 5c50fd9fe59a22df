//! Entanglement and fidelity measures.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::complexlin::{
    kron, pauli, psd_sqrt, psd_sqrt_with_floor, singular_values, ComplexMatrix, DensityMatrix,
};
use crate::error::{Error, Result};
use crate::rindler::{check_r, input_density, InputParams};
use crate::spin_model::ModelParams;
use crate::teleport::output_density_closed;

/// Best average fidelity reachable by measure-and-prepare (classical)
/// strategies.
pub const CLASSICAL_FIDELITY_BOUND: f64 = 2.0 / 3.0;

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
///
/// The `λᵢ` are the square roots of the eigenvalues of `ρ ρ̃` with
/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: m.dim(),
        });
    }
    let yy = kron(&pauli(2), &pauli(2))?;
    // λᵢ are the singular values of √ρ·√ρ̃, with √ρ̃ = (σy⊗σy) √ρ* (σy⊗σy).
    let root = psd_sqrt_with_floor(m, 0.0)?;
    let root_flipped = (yy * root.conj()) * yy;
    let mut lambdas = singular_values(&(root * root_flipped))?;
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Concurrence of an X-form state, `2·max(0, |ρ₂₃| − √(ρ₁₁ρ₄₄), |ρ₁₄| − √(ρ₂₂ρ₃₃))`.
pub fn x_state_concurrence(m: &ComplexMatrix) -> f64 {
    let d = |k: usize| m[(k, k)].re.max(0.0);
    let inner = m[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    let outer = m[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    2.0 * inner.max(outer).max(0.0)
}

/// Uhlmann fidelity `(Tr √(√a b √a))²`.
pub fn uhlmann_fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    let root_a = psd_sqrt(a.matrix())?;
    let sandwich = ((&root_a * b.matrix()) * root_a).hermitian_part();
    let tr = psd_sqrt(&sandwich)?.trace().re;
    Ok(tr * tr)
}

/// Fidelity between the accelerated input and the teleported output.
pub fn teleport_fidelity(m: &ModelParams, p: &InputParams) -> Result<f64> {
    uhlmann_fidelity(&input_density(p), &output_density_closed(m, p))
}

/// Node counts for the `(θ, φ)` average.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    n_theta: usize,
    n_phi: usize,
}

impl QuadratureSpec {
    pub const MIN_NODES: usize = 16;

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        for (name, n) in [("quad-theta", n_theta), ("quad-phi", n_phi)] {
            if n < Self::MIN_NODES {
                return Err(Error::Param {
                    name,
                    value: n as f64,
                    reason: "needs at least 16 nodes",
                });
            }
        }
        Ok(Self { n_theta, n_phi })
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            n_theta: 64,
            n_phi: 64,
        }
    }
}

/// Neumaier-compensated running sum; the result depends only on the order
/// of the terms.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `F_A = (1/4π) ∫₀^{2π} dφ ∫₀^π F(θ, φ) sinθ dθ` by Gauss–Legendre in θ
/// and the periodic trapezoid rule in φ.
pub fn average_fidelity_quadrature(m: &ModelParams, r: f64, q: &QuadratureSpec) -> Result<f64> {
    let r = check_r(r)?;
    let rule = GaussLegendre::new(NonZeroUsize::new(q.n_theta).expect("validated node count"));
    let phi_weight = 2.0 * PI / q.n_phi as f64;
    let mut total = CompensatedSum::default();
    for &(node, weight) in rule.as_node_weight_pairs() {
        let theta = 0.5 * PI * (node + 1.0);
        let theta_weight = 0.5 * PI * weight * theta.sin();
        for k in 0..q.n_phi {
            let phi = phi_weight * k as f64;
            let f = teleport_fidelity(m, &InputParams::new(theta, phi, r)?)?;
            total.add(theta_weight * phi_weight * f);
        }
    }
    Ok(total.value() / (4.0 * PI))
}

/// Closed-form average fidelity in the accelerated frame:
///
/// ```text
/// F_A = {e^{2βJ}[15 + 11D² + 4(2+D²)cos 2r] cosh βδ + 7e^{2βJ} + 11D²e^{2βJ}
///        + 4D²e^{2βJ} cos 2r + 2(1+D²)e^{2βJ} cos 4r cosh²(βδ/2)
///        + 8e^{βJ}(1+D²)(2 + cos 2r) cosh(βδ/2) sin²r + 16(1+D²)cos²r}
///       / (48(1+D²)[1 + e^{βJ}cosh(βδ/2)]²)
/// ```
///
/// evaluated after dividing numerator and denominator by `N²`, using
/// `e^{2βJ}cosh βδ / N² = 2b² − g²` with the thermal weights `b`
/// (`antialigned`) and `g` (`exchange`).
pub fn average_fidelity_closed(m: &ModelParams, r: f64) -> Result<f64> {
    let r = check_r(r)?;
    let w = m.weights();
    let (a, b, g) = (w.aligned, w.antialigned, w.exchange);
    let d2 = m.d() * m.d();
    let cos2r = (2.0 * r).cos();
    let cosh_bd = 2.0 * b * b - g * g;
    let numerator = (15.0 + 11.0 * d2 + 4.0 * (2.0 + d2) * cos2r) * cosh_bd
        + (7.0 + 11.0 * d2 + 4.0 * d2 * cos2r) * g * g
        + 2.0 * (1.0 + d2) * (4.0 * r).cos() * b * b
        + 8.0 * (1.0 + d2) * (2.0 + cos2r) * a * b * r.sin().powi(2)
        + 16.0 * (1.0 + d2) * r.cos().powi(2) * a * a;
    Ok(numerator / (48.0 * (1.0 + d2)))
}

/// Closed-form inertial average fidelity,
/// `[2(1+D²) + e^{2βJ}(1 + 2D² + (3+2D²)cosh βδ)] / (6(1+D²)N²)`.
pub fn average_fidelity_inertial(m: &ModelParams) -> f64 {
    let w = m.weights();
    let (a, b, g) = (w.aligned, w.antialigned, w.exchange);
    let d2 = m.d() * m.d();
    let cosh_bd = 2.0 * b * b - g * g;
    (2.0 * (1.0 + d2) * a * a + (1.0 + 2.0 * d2) * g * g + (3.0 + 2.0 * d2) * cosh_bd)
        / (6.0 * (1.0 + d2))
}
