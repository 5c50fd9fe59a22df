//! Teleportation of the two-qubit input through two copies of the thermal
//! resource: Bell-outcome probabilities, the induced Pauli channel, and its
//! closed-form output.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::complexlin::{kron, pauli, Complex64, ComplexMatrix, DensityMatrix};
use crate::error::{Error, Result};
use crate::rindler::InputParams;
use crate::spin_model::{thermal_state, ModelParams};

/// Pauli correction (0 = identity, then x, y, z) paired with each Bell
/// outcome index of [`BellBasis`]. Index-aligned; pinned by the closed-form
/// cross-check in the tests.
pub const BELL_PAULI_PAIRING: [usize; 4] = [0, 1, 2, 3];

/// Tolerance for a channel probability to leave `[0, 1]` through roundoff.
pub const PROBABILITY_TOL: f64 = 1e-12;

/// `|ψ⁻⟩, |Φ⁻⟩, |Φ⁺⟩, |ψ⁺⟩` in the `{|11⟩, |10⟩, |01⟩, |00⟩}` basis, with
/// `|ψ^±⟩ = (|01⟩ ± |10⟩)/√2` and `|Φ^±⟩ = (|00⟩ ± |11⟩)/√2`.
pub fn bell_states() -> [[Complex64; 4]; 4] {
    let h = FRAC_1_SQRT_2;
    let v = |a: f64, b: f64, c: f64, d: f64| [a, b, c, d].map(|x| Complex64::new(x, 0.0));
    [
        v(0.0, -h, h, 0.0),
        v(-h, 0.0, 0.0, h),
        v(h, 0.0, 0.0, h),
        v(0.0, h, h, 0.0),
    ]
}

/// Rank-one projectors `E⁰..E³` onto [`bell_states`].
#[derive(Debug, Clone, PartialEq)]
pub struct BellBasis {
    pub projectors: [ComplexMatrix; 4],
}

impl BellBasis {
    pub fn new() -> Self {
        Self {
            projectors: bell_states().map(|v| ComplexMatrix::outer(&v)),
        }
    }
}

impl Default for BellBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// Joint outcome probabilities `p[i][j] = Tr[Eⁱρ]·Tr[Eʲρ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelProbs {
    pub p: [[f64; 4]; 4],
}

impl ChannelProbs {
    /// Product distribution from per-copy outcome probabilities, rejecting
    /// entries outside `[0, 1]` by more than [`PROBABILITY_TOL`].
    pub fn from_marginals(marginals: [f64; 4]) -> Result<Self> {
        let mut p = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let value = marginals[i] * marginals[j];
                if !(-PROBABILITY_TOL..=1.0 + PROBABILITY_TOL).contains(&value)
                    || !value.is_finite()
                {
                    return Err(Error::Probability { i, j, value });
                }
                p[i][j] = value;
            }
        }
        Ok(Self { p })
    }

    /// All sixteen outcomes equally likely (the infinite-temperature limit).
    pub fn uniform() -> Self {
        Self {
            p: [[1.0 / 16.0; 4]; 4],
        }
    }

    pub fn total(&self) -> f64 {
        self.p.iter().flatten().sum()
    }

    /// `Σ p_ij (σ_i ⊗ σ_j) ρ (σ_i ⊗ σ_j)` over all sixteen terms.
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let mut out = ComplexMatrix::zeros(4);
        for (row, &a) in self.p.iter().zip(&BELL_PAULI_PAIRING) {
            for (&weight, &b) in row.iter().zip(&BELL_PAULI_PAIRING) {
                if weight == 0.0 {
                    continue;
                }
                let u = kron(&pauli(a), &pauli(b)).expect("2×2 Pauli factors");
                let term = (&u * rho.matrix()) * u;
                out = &out + &term.scale_real(weight);
            }
        }
        DensityMatrix::new_unchecked(out.hermitian_part())
    }
}

/// Bell-outcome probabilities of the thermal resource `ρ(T)`.
pub fn bell_marginals(m: &ModelParams) -> [f64; 4] {
    let rho = thermal_state(m);
    bell_states().map(|v| rho.matrix().expectation(&v).re)
}

pub fn channel_probs(m: &ModelParams) -> Result<ChannelProbs> {
    ChannelProbs::from_marginals(bell_marginals(m))
}

/// Numerical teleportation channel: the sixteen-term Pauli sum.
pub fn apply_channel(m: &ModelParams, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
    Ok(channel_probs(m)?.apply(rho_in))
}

/// The five independent entries of the X-form output state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputEntries {
    pub rho11: f64,
    pub rho22: f64,
    pub rho23: Complex64,
    pub rho33: f64,
    pub rho44: f64,
}

impl OutputEntries {
    /// Closed-form output entries.
    ///
    /// With `N = 1 + e^{βJ}cosh(βδ/2)`, the literal expressions are
    /// divided through by the largest exponential and written in the
    /// [`ThermalWeights`](crate::spin_model::ThermalWeights) `a = 1/N`,
    /// `b = e^{βJ}cosh(βδ/2)/N`, `c = e^{βJ}sinh(βδ/2)/N`:
    ///
    /// ```text
    /// ρ₁₁ = b² cos²(θ/2) sin²r + ¼ab (3 + cos 2r − 2 cosθ sin²r)
    /// ρ₂₂ = b² cos²(θ/2) cos²r + ab cos²(θ/2) sin²r + a² sin²(θ/2)
    /// ρ₂₃ = ½ c² cos²α sinθ cos r e^{−iφ}
    /// ρ₃₃ = a² cos²(θ/2) cos²r + ab cos²(θ/2) sin²r + b² sin²(θ/2)
    /// ρ₄₄ = a² cos²(θ/2) sin²r + ab (cos²(θ/2) cos²r + sin²(θ/2))
    /// ```
    ///
    /// `ρ₄₄` carries an overall denominator `2N²`; the typeset version with
    /// `8N²` (see [`OutputEntries::rho44_as_printed`]) is a factor four short
    /// and breaks the unit trace.
    pub fn closed_form(m: &ModelParams, p: &InputParams) -> Self {
        let w = m.weights();
        let (a, b, c) = (w.aligned, w.antialigned, w.coherence);
        let c2 = (p.theta() / 2.0).cos().powi(2);
        let s2 = (p.theta() / 2.0).sin().powi(2);
        let (sr, cr) = p.r().sin_cos();
        let (sr2, cr2) = (sr * sr, cr * cr);

        Self {
            rho11: b * b * c2 * sr2
                + 0.25 * a * b * (3.0 + (2.0 * p.r()).cos() - 2.0 * p.theta().cos() * sr2),
            rho22: b * b * c2 * cr2 + a * b * c2 * sr2 + a * a * s2,
            rho23: Complex64::from_polar(
                0.5 * c * c * m.cos2_alpha() * p.theta().sin() * cr,
                -p.phi(),
            ),
            rho33: a * a * c2 * cr2 + a * b * c2 * sr2 + b * b * s2,
            rho44: a * a * c2 * sr2 + a * b * (c2 * cr2 + s2),
        }
    }

    /// `ρ₄₄` exactly as typeset, with the `8[1 + e^{βJ}cosh(βδ/2)]²`
    /// denominator. Kept for the discrepancy report only.
    pub fn rho44_as_printed(m: &ModelParams, p: &InputParams) -> f64 {
        Self::closed_form(m, p).rho44 / 4.0
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22 + self.rho33 + self.rho44
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut out =
            ComplexMatrix::from_real_diag(&[self.rho11, self.rho22, self.rho33, self.rho44]);
        out[(1, 2)] = self.rho23;
        out[(2, 1)] = self.rho23.conj();
        out
    }
}

/// Closed-form output state of the teleportation channel.
pub fn output_density_closed(m: &ModelParams, p: &InputParams) -> DensityMatrix {
    DensityMatrix::new_unchecked(OutputEntries::closed_form(m, p).to_matrix())
}

/// `C_out = max[e^{2βJ} cos r sinθ cos²α sinh²(βδ/2)/N² − 2√(ρ₁₁ρ₄₄), 0]`.
pub fn output_concurrence(m: &ModelParams, p: &InputParams) -> f64 {
    let w = m.weights();
    let e = OutputEntries::closed_form(m, p);
    let coherent = w.coherence * w.coherence * p.r().cos() * p.theta().sin() * m.cos2_alpha();
    (coherent - 2.0 * (e.rho11 * e.rho44).sqrt()).max(0.0)
}
