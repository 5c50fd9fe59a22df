//! Oracle cross-check battery run by `qtele validate`.
//!
//! Each check compares a closed form against an independent numerical route
//! over a fixed parameter grid and records the worst absolute deviation and
//! where it occurred.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::fmt;

use clap::ValueEnum;
use qtele_core::measures::{
    average_fidelity_closed, average_fidelity_inertial, average_fidelity_quadrature,
    teleport_fidelity, wootters_concurrence, x_state_concurrence, CLASSICAL_FIDELITY_BOUND,
};
use qtele_core::rindler::{input_concurrence, input_density, input_state, R_MAX};
use qtele_core::spin_model::{hamiltonian, spectrum, thermal_state, thermal_state_numeric};
use qtele_core::teleport::{apply_channel, output_concurrence, OutputEntries};
use qtele_core::{Complex64, ComplexMatrix, InputParams, ModelParams, QuadratureSpec};

pub const GIBBS_TOL: f64 = 1e-10;
pub const SPECTRUM_TOL: f64 = 1e-12;
pub const PARTIAL_TRACE_TOL: f64 = 1e-12;
pub const INPUT_CONCURRENCE_TOL: f64 = 1e-10;
pub const CHANNEL_TOL: f64 = 1e-10;
pub const CONCURRENCE_TOL: f64 = 1e-10;
pub const INERTIAL_REDUCTION_TOL: f64 = 1e-12;
pub const QUADRATURE_TOL: f64 = 1e-6;
pub const HOT_LIMIT_TOL: f64 = 1e-5;
pub const COLD_LIMIT_TOL: f64 = 1e-6;
pub const PHASE_INVARIANCE_TOL: f64 = 1e-10;
pub const CROSSING_TOL: f64 = 1e-6;

pub const COUPLINGS: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
pub const DM_STRENGTHS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 4.0];
pub const TEMPERATURES: [f64; 6] = [0.05, 0.1, 0.5, 1.0, 5.0, 100.0];
pub const AMPLITUDES: [f64; 6] = [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI];
pub const PHASES: [f64; 3] = [0.0, FRAC_PI_3, PI];
pub const ACCELERATIONS: [f64; 4] = [0.0, 0.2, 0.5, R_MAX];

/// Temperature interval searched for the classical-bound crossing.
pub const CROSSING_T_RANGE: (f64, f64) = (0.01, 2.0);

pub fn model_grid() -> Vec<ModelParams> {
    let mut out = Vec::with_capacity(COUPLINGS.len() * DM_STRENGTHS.len() * TEMPERATURES.len());
    for j in COUPLINGS {
        for d in DM_STRENGTHS {
            for t in TEMPERATURES {
                out.push(ModelParams::new(j, d, t).expect("grid inside domain"));
            }
        }
    }
    out
}

pub fn input_grid() -> Vec<InputParams> {
    let mut out = Vec::with_capacity(AMPLITUDES.len() * PHASES.len() * ACCELERATIONS.len());
    for theta in AMPLITUDES {
        for phi in PHASES {
            for r in ACCELERATIONS {
                out.push(InputParams::new(theta, phi, r).expect("grid inside domain"));
            }
        }
    }
    out
}

pub fn describe_model(m: &ModelParams) -> String {
    format!("J={} D={} T={}", m.j(), m.d(), m.t())
}

pub fn describe_input(p: &InputParams) -> String {
    format!("theta={} phi={} r={}", p.theta(), p.phi(), p.r())
}

/// Deliberate corruption of one closed form, for negative-control runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Scales the thermal coherence by `1 + 1e-6`.
    ThermalCoherence,
    /// Scales the output coherence `ρ₂₃` by `1 + 1e-6`.
    OutputCoherence,
    /// Offsets the inertial average fidelity by `1e-9`.
    InertialFidelity,
}

const FAULT_SCALE: f64 = 1.0 + 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Deviation recorded but not gating (an authoritative route exists).
    Report,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Report => "report",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub max_dev: f64,
    pub tol: Option<f64>,
    pub status: Status,
    pub location: String,
    pub note: Option<String>,
}

impl Check {
    fn gated(name: &'static str, worst: Worst, tol: f64) -> Self {
        let status = if worst.dev <= tol {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name,
            max_dev: worst.dev,
            tol: Some(tol),
            status,
            location: worst.at,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Running maximum of a deviation; NaN and evaluation errors dominate.
#[derive(Debug, Clone)]
struct Worst {
    dev: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Worst {
            dev: 0.0,
            at: String::from("-"),
        }
    }

    fn see(&mut self, dev: f64, at: impl FnOnce() -> String) {
        if self.dev.is_nan() {
            return;
        }
        if dev.is_nan() || dev > self.dev {
            self.dev = dev;
            self.at = at();
        }
    }

    fn see_result(&mut self, dev: qtele_core::Result<f64>, at: impl FnOnce() -> String) {
        match dev {
            Ok(d) => self.see(d, at),
            Err(e) => {
                let loc = at();
                self.see(f64::NAN, || format!("{loc}: {e}"));
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub quad: QuadratureSpec,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "qtele validate (quadrature {}x{})",
            self.quad.n_theta(),
            self.quad.n_phi()
        )?;
        writeln!(
            f,
            "{:<30} {:>10} {:>7}  {:<6}  worst case",
            "check", "max-dev", "tol", "status"
        )?;
        for c in &self.checks {
            let tol = c
                .tol
                .map_or_else(|| "-".to_string(), |t| format!("{t:.0e}"));
            writeln!(
                f,
                "{:<30} {:>10.3e} {:>7}  {:<6}  {}",
                c.name, c.max_dev, tol, c.status, c.location
            )?;
            if let Some(note) = &c.note {
                writeln!(f, "{:<30} note: {note}", "")?;
            }
        }
        let failed: Vec<&str> = self.failures().map(|c| c.name).collect();
        if failed.is_empty() {
            write!(f, "result: pass ({} checks)", self.checks.len())
        } else {
            write!(f, "result: FAIL ({})", failed.join(", "))
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Battery {
    pub quad: QuadratureSpec,
    pub fault: Option<Fault>,
}

impl Battery {
    pub fn new(quad: QuadratureSpec, fault: Option<Fault>) -> Self {
        Battery { quad, fault }
    }

    pub fn run(&self) -> Report {
        let checks = vec![
            self.thermal_state(),
            self.spectrum(),
            self.input_partial_trace(),
            self.input_concurrence(),
            self.channel(),
            self.concurrence(),
            self.phase_invariance(),
            self.inertial_reduction(),
            self.fidelity_quadrature(),
            self.hot_limit(),
            self.cold_limit(),
            self.printed_rho44(),
            self.classical_crossing(),
        ];
        Report {
            quad: self.quad,
            checks,
        }
    }

    fn closed_thermal(&self, m: &ModelParams) -> ComplexMatrix {
        let mut rho = *thermal_state(m).matrix();
        if self.fault == Some(Fault::ThermalCoherence) {
            rho[(1, 2)] *= FAULT_SCALE;
            rho[(2, 1)] *= FAULT_SCALE;
        }
        rho
    }

    fn closed_output(&self, m: &ModelParams, p: &InputParams) -> OutputEntries {
        let mut e = OutputEntries::closed_form(m, p);
        if self.fault == Some(Fault::OutputCoherence) {
            e.rho23 *= FAULT_SCALE;
        }
        e
    }

    fn closed_output_concurrence(&self, m: &ModelParams, p: &InputParams) -> f64 {
        let c = output_concurrence(m, p);
        if self.fault == Some(Fault::OutputCoherence) && c > 0.0 {
            let coherent = 2.0 * OutputEntries::closed_form(m, p).rho23.norm();
            c + coherent * (FAULT_SCALE - 1.0)
        } else {
            c
        }
    }

    fn inertial(&self, m: &ModelParams) -> f64 {
        let f = average_fidelity_inertial(m);
        if self.fault == Some(Fault::InertialFidelity) {
            f + 1e-9
        } else {
            f
        }
    }

    /// Closed Gibbs state against the matrix exponential of `−βH`.
    pub fn thermal_state(&self) -> Check {
        let mut w = Worst::new();
        for m in model_grid() {
            let dev = thermal_state_numeric(&m)
                .map(|n| n.matrix().max_abs_diff(&self.closed_thermal(&m)));
            w.see_result(dev, || describe_model(&m));
        }
        Check::gated("thermal-state/expm", w, GIBBS_TOL)
    }

    /// Residual `‖H v − E v‖∞` of the analytic eigenpairs.
    pub fn spectrum(&self) -> Check {
        let mut w = Worst::new();
        for m in model_grid() {
            let h = hamiltonian(&m);
            for level in spectrum(&m).levels {
                let dev = (0..4)
                    .map(|i| {
                        let hv: Complex64 = (0..4).map(|k| h[(i, k)] * level.state[k]).sum();
                        (hv - level.state[i] * level.energy).norm()
                    })
                    .fold(0.0, f64::max);
                w.see(dev, || format!("{} E={}", describe_model(&m), level.energy));
            }
        }
        Check::gated("spectrum/eigenpairs", w, SPECTRUM_TOL)
    }

    /// Region-II partial trace of the three-mode state against the reduced
    /// closed form.
    pub fn input_partial_trace(&self) -> Check {
        let mut w = Worst::new();
        for p in input_grid() {
            let traced = input_state(&p).trace_region_ii();
            let dev = traced.matrix().max_abs_diff(input_density(&p).matrix());
            w.see(dev, || describe_input(&p));
        }
        Check::gated("input/partial-trace", w, PARTIAL_TRACE_TOL)
    }

    pub fn input_concurrence(&self) -> Check {
        let mut w = Worst::new();
        for p in input_grid() {
            let dev =
                wootters_concurrence(&input_density(&p)).map(|c| (c - input_concurrence(&p)).abs());
            w.see_result(dev, || describe_input(&p));
        }
        Check::gated("input/concurrence", w, INPUT_CONCURRENCE_TOL)
    }

    /// Closed output entries against the sixteen-term Pauli channel.
    pub fn channel(&self) -> Check {
        let inputs = input_grid();
        let mut w = Worst::new();
        for m in model_grid() {
            for p in &inputs {
                let closed = self.closed_output(&m, p).to_matrix();
                let dev =
                    apply_channel(&m, &input_density(p)).map(|o| o.matrix().max_abs_diff(&closed));
                w.see_result(dev, || {
                    format!("{} {}", describe_model(&m), describe_input(p))
                });
            }
        }
        Check::gated("channel/closed-vs-twirl", w, CHANNEL_TOL)
    }

    /// Closed output concurrence against the X-state formula and the general
    /// Wootters construction, both applied to the numerically propagated
    /// state.
    pub fn concurrence(&self) -> Check {
        let inputs = input_grid();
        let mut w = Worst::new();
        for m in model_grid() {
            for p in &inputs {
                let closed = self.closed_output_concurrence(&m, p);
                let dev = apply_channel(&m, &input_density(p)).and_then(|out| {
                    let x = x_state_concurrence(out.matrix());
                    let general = wootters_concurrence(&out)?;
                    Ok((closed - x)
                        .abs()
                        .max((closed - general).abs())
                        .max((x - general).abs()))
                });
                w.see_result(dev, || {
                    format!("{} {}", describe_model(&m), describe_input(p))
                });
            }
        }
        Check::gated("concurrence/three-way", w, CONCURRENCE_TOL)
    }

    /// The pointwise fidelity must not depend on the input phase.
    pub fn phase_invariance(&self) -> Check {
        let mut w = Worst::new();
        for m in model_grid() {
            for theta in AMPLITUDES {
                for r in ACCELERATIONS {
                    let base =
                        InputParams::new(theta, 0.0, r).and_then(|p| teleport_fidelity(&m, &p));
                    for phi in PHASES.into_iter().chain([1.0, 2.0 * PI]) {
                        let dev = InputParams::new(theta, phi, r)
                            .and_then(|p| teleport_fidelity(&m, &p))
                            .and_then(|f| Ok((f - base.clone()?).abs()));
                        w.see_result(dev, || {
                            format!("{} theta={theta} phi={phi} r={r}", describe_model(&m))
                        });
                    }
                }
            }
        }
        Check::gated("fidelity/phase-invariance", w, PHASE_INVARIANCE_TOL)
    }

    /// The accelerated average fidelity at `r = 0` against the inertial one.
    pub fn inertial_reduction(&self) -> Check {
        let mut w = Worst::new();
        for m in model_grid() {
            let dev = average_fidelity_closed(&m, 0.0).map(|f| (f - self.inertial(&m)).abs());
            w.see_result(dev, || describe_model(&m));
        }
        Check::gated("fa/inertial-reduction", w, INERTIAL_REDUCTION_TOL)
    }

    /// Closed average fidelity against quadrature of the pointwise Uhlmann
    /// fidelity. The quadrature is authoritative, so an excess is reported
    /// rather than failed.
    pub fn fidelity_quadrature(&self) -> Check {
        let mut w = Worst::new();
        for m in model_grid() {
            for r in ACCELERATIONS {
                let dev = average_fidelity_quadrature(&m, r, &self.quad)
                    .and_then(|q| Ok((q - average_fidelity_closed(&m, r)?).abs()));
                w.see_result(dev, || format!("{} r={r}", describe_model(&m)));
            }
        }
        let mut check = Check::gated("fa/closed-vs-quadrature", w, QUADRATURE_TOL);
        if check.status == Status::Fail && !check.max_dev.is_nan() {
            check.status = Status::Report;
            check = check.with_note("closed form deviates; the quadrature value is authoritative");
        }
        check
    }

    /// `F_A → 1/4` as `T → ∞`, by both routes.
    pub fn hot_limit(&self) -> Check {
        let m = ModelParams::new(1.0, 0.0, 1e6).expect("valid");
        let mut w = Worst::new();
        w.see_result(
            average_fidelity_closed(&m, 0.0).map(|f| (f - 0.25).abs()),
            || format!("{} r=0 closed", describe_model(&m)),
        );
        w.see_result(
            average_fidelity_quadrature(&m, 0.0, &self.quad).map(|f| (f - 0.25).abs()),
            || format!("{} r=0 quadrature", describe_model(&m)),
        );
        Check::gated("fa/hot-limit", w, HOT_LIMIT_TOL)
    }

    /// `F_A → 1` for a cold antiferromagnet without acceleration.
    pub fn cold_limit(&self) -> Check {
        let m = ModelParams::new(1.0, 0.0, 0.01).expect("valid");
        let mut w = Worst::new();
        w.see_result(
            average_fidelity_closed(&m, 0.0).map(|f| (f - 1.0).abs()),
            || format!("{} r=0 closed", describe_model(&m)),
        );
        w.see_result(
            average_fidelity_quadrature(&m, 0.0, &self.quad).map(|f| (f - 1.0).abs()),
            || format!("{} r=0 quadrature", describe_model(&m)),
        );
        Check::gated("fa/cold-limit", w, COLD_LIMIT_TOL)
    }

    /// Gap between the `ρ₄₄` entry as typeset and the channel value.
    pub fn printed_rho44(&self) -> Check {
        let inputs = input_grid();
        let mut w = Worst::new();
        let mut ratio = Worst::new();
        for m in model_grid() {
            for p in &inputs {
                let Ok(out) = apply_channel(&m, &input_density(p)) else {
                    continue;
                };
                let channel = out.get(3, 3).re;
                let printed = OutputEntries::rho44_as_printed(&m, p);
                let at = || format!("{} {}", describe_model(&m), describe_input(p));
                w.see((printed - channel).abs(), at);
                if channel > 1e-3 {
                    ratio.see((channel / printed - 4.0).abs(), at);
                }
            }
        }
        Check {
            name: "rho44/typeset-vs-channel",
            max_dev: w.dev,
            tol: None,
            status: Status::Report,
            location: w.at,
            note: Some(format!(
                "channel value is 4x the typeset entry (ratio off by at most {:.1e}); the channel value is used",
                ratio.dev
            )),
        }
    }

    /// Brackets the temperature where the inertial average fidelity of the
    /// `J = 1, D = 0` channel crosses the classical bound.
    pub fn classical_crossing(&self) -> Check {
        let (lo, hi) = CROSSING_T_RANGE;
        match classical_crossing(1.0, 0.0, lo, hi, CROSSING_TOL, |m| self.inertial(m)) {
            Some((a, b)) => Check {
                name: "fa1/classical-crossing",
                max_dev: b - a,
                tol: Some(CROSSING_TOL),
                status: if b - a <= CROSSING_TOL {
                    Status::Pass
                } else {
                    Status::Fail
                },
                location: format!("J=1 D=0 T in [{a:.9}, {b:.9}]"),
                note: None,
            },
            None => Check {
                name: "fa1/classical-crossing",
                max_dev: f64::NAN,
                tol: Some(CROSSING_TOL),
                status: Status::Fail,
                location: format!("no sign change of F_A1 - 2/3 on T in [{lo}, {hi}]"),
                note: None,
            },
        }
    }
}

/// Bisection for `f(T) = 2/3` on `[lo, hi]`, returning a bracket no wider
/// than `tol`, or `None` if the endpoints do not straddle the bound.
pub fn classical_crossing(
    j: f64,
    d: f64,
    lo: f64,
    hi: f64,
    tol: f64,
    f: impl Fn(&ModelParams) -> f64,
) -> Option<(f64, f64)> {
    let excess = |t: f64| {
        ModelParams::new(j, d, t)
            .ok()
            .map(|m| f(&m) - CLASSICAL_FIDELITY_BOUND)
    };
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (excess(a)?, excess(b)?);
    if fa.signum() == fb.signum() || fa == 0.0 || fb == 0.0 {
        return None;
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = excess(mid)?;
        if fm.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Some((a, b))
}
