//! Input state of the teleportation: a two-qubit pure state whose second
//! qubit is seen by a uniformly accelerated observer.
//!
//! The accelerated qubit's Minkowski modes split into Rindler region-I and
//! region-II modes under the single-mode transformation
//! `|0⟩_M = cos r |0⟩_I|0⟩_II + sin r |1⟩_I|1⟩_II`, `|1⟩_M = |1⟩_I|0⟩_II`.
//! Region II is causally disconnected and traced out.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::complexlin::{Complex64, ComplexMatrix, DensityMatrix};
use crate::error::{Error, Result};

/// Slack accepted at the closed ends of the angle domains, so that values such
/// as `180f64.to_radians()` are admitted (and clamped onto the boundary).
pub const DOMAIN_SLACK: f64 = 1e-12;

pub const R_MAX: f64 = FRAC_PI_4;

/// Checks `value ∈ [lo, hi]` up to [`DOMAIN_SLACK`] and clamps it.
pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::Param {
            name,
            value,
            reason: "must be finite",
        });
    }
    if value < lo - DOMAIN_SLACK || value > hi + DOMAIN_SLACK {
        let reason = match name {
            "theta" => "must lie in [0, pi]",
            "phi" => "must lie in [0, 2pi]",
            "r" => "must lie in [0, pi/4]",
            _ => "out of range",
        };
        return Err(Error::Param {
            name,
            value,
            reason,
        });
    }
    Ok(value.clamp(lo, hi))
}

/// Validates an acceleration parameter `r ∈ [0, π/4]`.
pub fn check_r(r: f64) -> Result<f64> {
    check_range("r", r, 0.0, R_MAX)
}

/// Amplitude `θ ∈ [0, π]`, phase `φ ∈ [0, 2π]`, acceleration parameter
/// `r ∈ [0, π/4]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputParams {
    theta: f64,
    phi: f64,
    r: f64,
}

impl InputParams {
    pub fn new(theta: f64, phi: f64, r: f64) -> Result<Self> {
        Ok(Self {
            theta: check_range("theta", theta, 0.0, PI)?,
            phi: check_range("phi", phi, 0.0, 2.0 * PI)?,
            r: check_r(r)?,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// `r` from `cos r = (e^{−2πωc/a} + 1)^{−1/2}`, evaluated as
/// `tan r = e^{−πωc/a}` which keeps full precision near `r = 0`.
pub fn r_from_acceleration(omega: f64, a: f64, c: f64) -> Result<f64> {
    for (name, value) in [("omega", omega), ("a", a), ("c", c)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Param {
                name,
                value,
                reason: "must be finite and > 0",
            });
        }
    }
    Ok((-PI * omega * c / a).exp().atan())
}

/// Pure state over (partner qubit, region-I mode, region-II mode).
///
/// Each factor is ordered `(|1⟩, |0⟩)`, so amplitude `k` belongs to the
/// basis ket whose bits, most significant first, are the complements of the
/// binary digits of `k`: index 0 is `|111⟩` and index 7 is `|000⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState3 {
    pub amplitudes: [Complex64; 8],
}

impl PureState3 {
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Index of the basis ket `|a b c⟩` with `a, b, c ∈ {0, 1}`.
    pub fn index(a: u8, b: u8, c: u8) -> usize {
        let slot = |bit: u8| 1 - bit as usize;
        slot(a) * 4 + slot(b) * 2 + slot(c)
    }

    /// Traces out the region-II mode, leaving the (partner, region-I) state.
    pub fn trace_region_ii(&self) -> DensityMatrix {
        let psi = &self.amplitudes;
        let m = ComplexMatrix::from_fn(4, |i, j| {
            (0..2).map(|c| psi[2 * i + c] * psi[2 * j + c].conj()).sum()
        });
        DensityMatrix::new_unchecked(m.hermitian_part())
    }
}

/// `cos(θ/2)|1⟩(cos r|0⟩|0⟩ + sin r|1⟩|1⟩) + e^{iφ}sin(θ/2)|0⟩|1⟩|0⟩`.
pub fn input_state(p: &InputParams) -> PureState3 {
    let (half_sin, half_cos) = (p.theta / 2.0).sin_cos();
    let (sr, cr) = p.r.sin_cos();
    let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
    amplitudes[PureState3::index(1, 0, 0)] = Complex64::new(half_cos * cr, 0.0);
    amplitudes[PureState3::index(1, 1, 1)] = Complex64::new(half_cos * sr, 0.0);
    amplitudes[PureState3::index(0, 1, 0)] = Complex64::from_polar(half_sin, p.phi);
    PureState3 { amplitudes }
}

/// The reduced two-qubit input state, an X-form matrix with diagonal
/// `(cos²(θ/2)sin²r, cos²(θ/2)cos²r, sin²(θ/2), 0)` and coherence
/// `ρ₂₃ = ½ sinθ cos r e^{−iφ}`.
pub fn input_density(p: &InputParams) -> DensityMatrix {
    let c2 = (p.theta / 2.0).cos().powi(2);
    let s2 = (p.theta / 2.0).sin().powi(2);
    let (sr, cr) = p.r.sin_cos();
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = Complex64::new(c2 * sr * sr, 0.0);
    m[(1, 1)] = Complex64::new(c2 * cr * cr, 0.0);
    m[(2, 2)] = Complex64::new(s2, 0.0);
    m[(1, 2)] = Complex64::from_polar(0.5 * p.theta.sin() * cr, -p.phi);
    m[(2, 1)] = m[(1, 2)].conj();
    DensityMatrix::new_unchecked(m)
}

/// `C_in = sinθ cos r`.
pub fn input_concurrence(p: &InputParams) -> f64 {
    p.theta.sin() * p.r.cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexlin::hermitian_eig;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

    fn input(theta: f64, phi: f64, r: f64) -> InputParams {
        InputParams::new(theta, phi, r).unwrap()
    }

    fn grid() -> Vec<InputParams> {
        let mut out = vec![];
        for theta in [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI] {
            for phi in [0.0, FRAC_PI_3, PI, 2.0 * PI] {
                for r in [0.0, 0.2, 0.5, R_MAX] {
                    out.push(input(theta, phi, r));
                }
            }
        }
        out
    }

    #[test]
    fn domain_checks() {
        assert!(InputParams::new(-0.1, 0.0, 0.0).is_err());
        assert!(InputParams::new(0.0, 7.0, 0.0).is_err());
        assert!(InputParams::new(0.0, 0.0, 0.8).is_err());
        let edge = InputParams::new(180f64.to_radians(), 0.0, 45f64.to_radians()).unwrap();
        assert!(edge.theta() <= PI && edge.r() <= R_MAX);
        match InputParams::new(0.0, 0.0, 1.0) {
            Err(Error::Param { name, .. }) => assert_eq!(name, "r"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn acceleration_limits() {
        assert!(r_from_acceleration(1.0, 1e-6, 1.0).unwrap() < 1e-6);
        assert!((r_from_acceleration(1.0, 1e9, 1.0).unwrap() - R_MAX).abs() < 1e-6);
        // e^{-2π/a} = 1/3 gives cos r = √3/2.
        let a = 2.0 * PI / 3f64.ln();
        let r = r_from_acceleration(1.0, a, 1.0).unwrap();
        assert!((r - FRAC_PI_6).abs() < 1e-14);
        // Same value through the arccos form.
        let literal = (((-2.0 * PI / a).exp() + 1.0).powf(-0.5)).acos();
        assert!((r - literal).abs() < 1e-7);
        assert!(r_from_acceleration(0.0, 1.0, 1.0).is_err());
        assert!(r_from_acceleration(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn state_is_normalized() {
        for p in grid() {
            assert!((input_state(&p).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_amplitude_has_single_branch() {
        let r = 0.4;
        let s = input_state(&input(0.0, 1.0, r));
        let mut expected = [Complex64::new(0.0, 0.0); 8];
        expected[PureState3::index(1, 0, 0)] = Complex64::new(r.cos(), 0.0);
        expected[PureState3::index(1, 1, 1)] = Complex64::new(r.sin(), 0.0);
        assert_eq!(s.amplitudes, expected);
    }

    #[test]
    fn inertial_state_is_separable_from_region_ii() {
        let s = input_state(&input(1.1, 0.7, 0.0));
        for (k, a) in s.amplitudes.iter().enumerate() {
            // Region-II factor in |0⟩ means odd index.
            if k % 2 == 0 {
                assert_eq!(*a, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn partial_trace_reproduces_closed_form() {
        for p in grid() {
            let traced = input_state(&p).trace_region_ii();
            assert!(
                traced.matrix().max_abs_diff(input_density(&p).matrix()) < 1e-12,
                "{p:?}"
            );
        }
    }

    #[test]
    fn maximal_amplitude_gives_bell_projector() {
        let rho = input_density(&input(FRAC_PI_2, 0.0, 0.0));
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let psi_plus = ComplexMatrix::outer(&[zero, h, h, zero]);
        assert!(rho.matrix().max_abs_diff(&psi_plus) < 1e-15);
    }

    #[test]
    fn infinite_acceleration_at_zero_amplitude() {
        let rho = input_density(&input(0.0, 0.0, R_MAX));
        assert!(
            rho.matrix()
                .max_abs_diff(&ComplexMatrix::from_real_diag(&[0.5, 0.5, 0.0, 0.0]))
                < 1e-15
        );
    }

    #[test]
    fn rank_at_most_two_and_phase_independent_spectrum() {
        for p in grid() {
            let eig = hermitian_eig(input_density(&p).matrix()).unwrap();
            assert!(eig.eigenvalues[0].abs() < 1e-12 && eig.eigenvalues[1].abs() < 1e-12);
            assert!(eig.eigenvalues[0] > -1e-12);
            let rotated = input(p.theta(), 0.0, p.r());
            let eig0 = hermitian_eig(input_density(&rotated).matrix()).unwrap();
            for (a, b) in eig.eigenvalues.iter().zip(&eig0.eigenvalues) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn input_concurrence_examples_and_shape() {
        assert_eq!(input_concurrence(&input(FRAC_PI_2, 0.0, 0.0)), 1.0);
        assert_eq!(input_concurrence(&input(0.0, 0.0, 0.3)), 0.0);
        for r in [0.0, 0.1, 0.5, R_MAX] {
            for theta in [0.1, 0.6, 1.2, FRAC_PI_2] {
                let a = input_concurrence(&input(theta, 0.0, r));
                let b = input_concurrence(&input(PI - theta, 0.0, r));
                assert!((a - b).abs() < 1e-15);
            }
        }
        let mut last = f64::INFINITY;
        for k in 0..=50 {
            let c = input_concurrence(&input(1.0, 0.0, R_MAX * k as f64 / 50.0));
            assert!(c < last);
            last = c;
        }
    }
}
