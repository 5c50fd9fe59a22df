//! Two-qubit Heisenberg XXX Hamiltonian with a z-axis Dzyaloshinski–Moriya
//! term, its analytic spectrum, and its thermal state (k = 1).

use std::f64::consts::FRAC_1_SQRT_2;

use crate::complexlin::{
    hermitian_eig, kron, matrix_exp_hermitian, pauli, Complex64, ComplexMatrix, DensityMatrix,
};
use crate::error::{Error, Result};

/// Coupling `J`, DM strength `D` and temperature `T > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    j: f64,
    d: f64,
    t: f64,
}

impl ModelParams {
    pub fn new(j: f64, d: f64, t: f64) -> Result<Self> {
        if !j.is_finite() {
            return Err(Error::Param {
                name: "J",
                value: j,
                reason: "must be finite",
            });
        }
        if !d.is_finite() {
            return Err(Error::Param {
                name: "D",
                value: d,
                reason: "must be finite",
            });
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Param {
                name: "T",
                value: t,
                reason: "must be finite and > 0",
            });
        }
        Ok(Self { j, d, t })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.t
    }

    /// `δ = 2J√(1+D²)`, the splitting of the `|±⟩` doublet.
    pub fn delta(&self) -> f64 {
        2.0 * self.j * self.d.hypot(1.0)
    }

    /// `α = arctan D` on the principal branch.
    pub fn alpha(&self) -> f64 {
        self.d.atan()
    }

    /// `cos²α = 1/(1+D²)`.
    pub fn cos2_alpha(&self) -> f64 {
        1.0 / (1.0 + self.d * self.d)
    }

    /// `Z = 2e^{−βJ/2}[1 + e^{βJ}cosh(βδ/2)]`. Overflows to infinity at very
    /// low temperature; see [`ModelParams::ln_partition_function`].
    pub fn partition_function(&self) -> f64 {
        let b = self.beta();
        2.0 * (-b * self.j / 2.0).exp()
            * (1.0 + (b * self.j).exp() * (b * self.delta() / 2.0).cosh())
    }

    pub fn ln_partition_function(&self) -> f64 {
        let b = self.beta();
        let (x1, x2) = self.doublet_exponents();
        let m = 0f64.max(x1).max(x2);
        std::f64::consts::LN_2 - b * self.j / 2.0
            + m
            + ((-m).exp() + 0.5 * (x1 - m).exp() + 0.5 * (x2 - m).exp()).ln()
    }

    /// `β(J ± δ/2)`: the exponents of `e^{βJ}cosh(βδ/2) = ½(e^{x₁} + e^{x₂})`.
    fn doublet_exponents(&self) -> (f64, f64) {
        let b = self.beta();
        let half = self.delta() / 2.0;
        (b * (self.j + half), b * (self.j - half))
    }

    /// Overflow-free normalized weights. See [`ThermalWeights`].
    pub fn weights(&self) -> ThermalWeights {
        let b = self.beta();
        let (x1, x2) = self.doublet_exponents();
        let m = 0f64.max(x1).max(x2);
        let e0 = (-m).exp();
        let e1 = (x1 - m).exp();
        let e2 = (x2 - m).exp();
        let norm = e0 + 0.5 * e1 + 0.5 * e2;
        ThermalWeights {
            aligned: e0 / norm,
            antialigned: 0.5 * (e1 + e2) / norm,
            coherence: half_difference(x1, x2, m) / norm,
            exchange: (b * self.j - m).exp() / norm,
        }
    }
}

/// `½(e^{x₁−m} − e^{x₂−m})` without cancellation when `x₁ ≈ x₂` and without
/// overflow when they are far apart (`m ≥ max(x₁, x₂)`).
fn half_difference(x1: f64, x2: f64, m: f64) -> f64 {
    let (hi, lo, sign) = if x1 >= x2 {
        (x1, x2, 1.0)
    } else {
        (x2, x1, -1.0)
    };
    -0.5 * sign * (hi - m).exp() * (lo - hi).exp_m1()
}

/// With `N = 1 + e^{βJ}cosh(βδ/2)`:
///
/// | field         | value                      |
/// |---------------|----------------------------|
/// | `aligned`     | `1/N`                      |
/// | `antialigned` | `e^{βJ}cosh(βδ/2)/N`       |
/// | `coherence`   | `e^{βJ}sinh(βδ/2)/N`       |
/// | `exchange`    | `e^{βJ}/N`                 |
///
/// `aligned` is the total thermal population of `{|00⟩, |11⟩}` and
/// `antialigned` that of `{|01⟩, |10⟩}`, so the two sum to one. Every closed
/// form in this crate is evaluated through these bounded quantities rather
/// than the raw exponentials, which overflow for `β|δ| ≳ 700`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalWeights {
    pub aligned: f64,
    pub antialigned: f64,
    pub coherence: f64,
    pub exchange: f64,
}

/// `H = J/2 [σxσx + σyσy + σzσz + D(σxσy − σyσx)]`, assembled from Pauli
/// Kronecker products.
pub fn hamiltonian(p: &ModelParams) -> ComplexMatrix {
    let pp = |a: usize, b: usize| kron(&pauli(a), &pauli(b)).expect("2×2 Pauli factors");
    let heisenberg = &(&pp(1, 1) + &pp(2, 2)) + &pp(3, 3);
    let dm = &pp(1, 2) - &pp(2, 1);
    (&heisenberg + &dm.scale_real(p.d())).scale_real(p.j() / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub energy: f64,
    pub state: [Complex64; 4],
}

/// Analytic eigenpairs, in the order `|00⟩, |11⟩, |+⟩, |−⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub levels: [EnergyLevel; 4],
}

impl Spectrum {
    pub fn ground_energy(&self) -> f64 {
        self.levels
            .iter()
            .map(|l| l.energy)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `H|00⟩ = H|11⟩ = J/2`, `H|±⟩ = (±J√(1+D²) − J/2)|±⟩` with
/// `|±⟩ = (|01⟩ ± e^{iα}|10⟩)/√2`.
pub fn spectrum(p: &ModelParams) -> Spectrum {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let phase = Complex64::from_polar(FRAC_1_SQRT_2, p.alpha());
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let split = p.j() * p.d().hypot(1.0);
    let half_j = p.j() / 2.0;
    Spectrum {
        levels: [
            EnergyLevel {
                energy: half_j,
                state: [zero, zero, zero, one],
            },
            EnergyLevel {
                energy: half_j,
                state: [one, zero, zero, zero],
            },
            EnergyLevel {
                energy: split - half_j,
                state: [zero, phase, s, zero],
            },
            EnergyLevel {
                energy: -split - half_j,
                state: [zero, -phase, s, zero],
            },
        ],
    }
}

/// Closed-form Gibbs state in the `{|11⟩, |10⟩, |01⟩, |00⟩}` basis: corners
/// `e^{−βJ/2}/Z`, central block `½e^{β(J−δ)/2}(1 ± e^{βδ})/Z` with phase
/// `e^{±iα}` on the coherences.
pub fn thermal_state(p: &ModelParams) -> DensityMatrix {
    let w = p.weights();
    let corner = Complex64::new(w.aligned / 2.0, 0.0);
    let block = Complex64::new(w.antialigned / 2.0, 0.0);
    let coherence = Complex64::from_polar(-w.coherence / 2.0, p.alpha());
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = corner;
    m[(3, 3)] = corner;
    m[(1, 1)] = block;
    m[(2, 2)] = block;
    m[(1, 2)] = coherence;
    m[(2, 1)] = coherence.conj();
    DensityMatrix::new_unchecked(m)
}

/// Brute-force Gibbs state `e^{−β(H−E₀)} / Tr`, with `E₀` the numerically
/// computed ground energy. Independent of the closed form above.
pub fn thermal_state_numeric(p: &ModelParams) -> Result<DensityMatrix> {
    let h = hamiltonian(p);
    let e0 = hermitian_eig(&h)?.eigenvalues[0];
    let shifted = &h - &ComplexMatrix::identity(4).scale_real(e0);
    let boltzmann = matrix_exp_hermitian(&shifted.scale_real(-p.beta()))?;
    let z = boltzmann.trace().re;
    DensityMatrix::new(boltzmann.scale_real(1.0 / z))
}

/// `Tr e^{−βH}` by matrix exponential (no shift; moderate β only).
pub fn partition_function_numeric(p: &ModelParams) -> Result<f64> {
    Ok(matrix_exp_hermitian(&hamiltonian(p).scale_real(-p.beta()))?
        .trace()
        .re)
}
