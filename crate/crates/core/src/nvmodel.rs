//! NV-center electron spin dephased by its nitrogen nuclear spin.
//!
//! The hyperfine term `S_z A∥ I_z` shifts the electron precession by `±A/2`
//! depending on the nuclear state. A nucleus prepared by a rotation `φ` from
//! its polarized state occupies the two branches with weights `cos²(φ/2)` and
//! `sin²(φ/2)`, so the electron coherence is the two-phasor sum
//!
//! ```text
//! κ(t) = env(t) · [cos²(φ/2) e^{iAt/2} + sin²(φ/2) e^{−iAt/2}]
//! ```
//!
//! The rest of the bath (¹³C spins and other slow noise) is folded into the
//! deterministic envelope `env(t)`.
//!
//! The second half of the module simulates the single-qubit refined
//! Deutsch–Jozsa protocol with a dynamical-decoupling π pulse and delayed
//! readout under the same dephasing.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};

use crate::error::{invalid, Result};
use crate::grid::{linspace, uniform_spacing};
use crate::qcore::{pauli, DensityMatrix, C64};
use crate::spectra::{blp_measure, DecoherenceTrajectory};
use crate::sweep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnvelopeShape {
    /// `e^{−(t/T)²}`
    #[default]
    Gaussian,
    /// `e^{−t/T}`
    Exponential,
}

/// Hyperfine coupling and residual-bath envelope.
///
/// `envelope_t = ∞` switches the envelope off (`env ≡ 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NVParams {
    pub coupling: f64,
    pub envelope_t: f64,
    pub envelope_shape: EnvelopeShape,
}

impl NVParams {
    pub fn new(coupling: f64, envelope_t: f64, envelope_shape: EnvelopeShape) -> Result<Self> {
        if !(coupling > 0.0) || !coupling.is_finite() {
            return Err(invalid(format!(
                "hyperfine coupling must be > 0, got {coupling}"
            )));
        }
        if !(envelope_t > 0.0) {
            return Err(invalid(format!(
                "envelope time must be > 0, got {envelope_t}"
            )));
        }
        Ok(Self {
            coupling,
            envelope_t,
            envelope_shape,
        })
    }

    /// Illustrative defaults: `A = 2π·2.16`, `T = 10·(2π/A)`, Gaussian.
    pub fn illustrative() -> Self {
        let a = 2.0 * PI * 2.16;
        Self {
            coupling: a,
            envelope_t: 10.0 * 2.0 * PI / a,
            envelope_shape: EnvelopeShape::Gaussian,
        }
    }

    /// Period of the hyperfine beating in `|κ|`, `2π/A`.
    pub fn beat_period(&self) -> f64 {
        2.0 * PI / self.coupling
    }

    pub fn envelope(&self, t: f64) -> f64 {
        let u = t / self.envelope_t;
        match self.envelope_shape {
            EnvelopeShape::Gaussian => (-u * u).exp(),
            EnvelopeShape::Exponential => (-u).exp(),
        }
    }
}

/// Nuclear-spin preparation angle `φ ∈ [0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuclearPrep {
    phi: f64,
}

impl NuclearPrep {
    pub fn new(phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&phi) {
            return Err(invalid(format!("phi must be in [0, pi], got {phi}")));
        }
        Ok(Self { phi })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Branch weights `(cos²(φ/2), sin²(φ/2))`.
    pub fn weights(&self) -> (f64, f64) {
        let c = (0.5 * self.phi).cos();
        let s = (0.5 * self.phi).sin();
        (c * c, s * s)
    }
}

/// Nuclear-spin branch phasor sum `Σ_b w_b e^{i δ_b s}` with `δ = ±A/2`.
fn branch_phasor(params: &NVParams, prep: &NuclearPrep, s: f64) -> C64 {
    let (up, down) = prep.weights();
    let half = 0.5 * params.coupling * s;
    C64::from_polar(up, half) + C64::from_polar(down, -half)
}

pub fn nv_kappa(params: &NVParams, prep: &NuclearPrep, t: f64) -> C64 {
    branch_phasor(params, prep, t) * params.envelope(t)
}

/// `r(t) = |κ(t)|` for an equatorial initial electron state.
pub fn bloch_magnitude(params: &NVParams, prep: &NuclearPrep, t: f64) -> f64 {
    nv_kappa(params, prep, t).norm()
}

/// Trace-distance non-Markovianity of `r(t)` on `t_grid` for each `φ`.
pub fn nm_measure_phi(
    params: &NVParams,
    phi_grid: &[f64],
    t_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if phi_grid.is_empty() || t_grid.is_empty() {
        return Err(invalid("phi and t grids must be non-empty"));
    }
    let preps = phi_grid
        .iter()
        .map(|phi| NuclearPrep::new(*phi))
        .collect::<Result<Vec<_>>>()?;
    uniform_spacing(t_grid, 1e-6)?;
    let values = sweep::map(&preps, |prep| {
        let kappa = t_grid.iter().map(|t| nv_kappa(params, prep, *t)).collect();
        let traj = DecoherenceTrajectory::new(t_grid.to_vec(), kappa)
            .expect("nv kappa satisfies trajectory invariants");
        (prep.phi(), blp_measure(&traj))
    });
    Ok(values)
}

/// `R_a(θ) = exp(−iθσ_a/2)` for axis `a ∈ {x, y, z}`.
pub fn rotation(axis: char, theta: f64) -> Matrix2<C64> {
    let k = match axis {
        'x' => 1,
        'y' => 2,
        'z' => 3,
        _ => panic!("rotation axis must be x, y or z"),
    };
    let c = C64::new((0.5 * theta).cos(), 0.0);
    let s = C64::new(0.0, -(0.5 * theta).sin());
    pauli(0) * c + pauli(k) * s
}

/// Oracle gates of the single-qubit Deutsch–Jozsa protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdjaGate {
    U1,
    U2,
    U3,
    U4,
}

impl RdjaGate {
    pub const ALL: [RdjaGate; 4] = [RdjaGate::U1, RdjaGate::U2, RdjaGate::U3, RdjaGate::U4];

    /// Middle y-rotation angle: 0, 2π (constant) and 3π, π (balanced).
    pub fn y_angle(self) -> f64 {
        match self {
            RdjaGate::U1 => 0.0,
            RdjaGate::U2 => 2.0 * PI,
            RdjaGate::U3 => 3.0 * PI,
            RdjaGate::U4 => PI,
        }
    }

    pub fn is_constant(self) -> bool {
        matches!(self, RdjaGate::U1 | RdjaGate::U2)
    }

    pub fn label(self) -> &'static str {
        match self {
            RdjaGate::U1 => "U1",
            RdjaGate::U2 => "U2",
            RdjaGate::U3 => "U3",
            RdjaGate::U4 => "U4",
        }
    }
}

/// `(−π/2)_x (θ)_y (−π/2)_x`, multiplied right to left.
pub fn rdja_gate(gate: RdjaGate) -> Matrix2<C64> {
    rotation('x', -PI / 2.0) * rotation('y', gate.y_angle()) * rotation('x', -PI / 2.0)
}

/// Waits of the echo protocol: `t` before the π pulse, `τ` after it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdjaConfig {
    pub t: f64,
    pub tau: f64,
    pub gate: RdjaGate,
}

impl RdjaConfig {
    pub fn new(t: f64, tau: f64, gate: RdjaGate) -> Result<Self> {
        if !(t >= 0.0) || !(tau >= 0.0) {
            return Err(invalid(format!(
                "waits must be ≥ 0, got t = {t}, tau = {tau}"
            )));
        }
        Ok(Self { t, tau, gate })
    }
}

fn to_dyn(m: &Matrix2<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |i, j| m[(i, j)])
}

/// Free precession in one nuclear branch: `ρ01 ↦ e^{−iδs} ρ01`.
fn precession(detuning: f64, s: f64) -> Matrix2<C64> {
    rotation('z', detuning * s)
}

fn prepared_state(gate: RdjaGate) -> DensityMatrix {
    let ground = DensityMatrix::from_matrix_unchecked(DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ],
    ));
    let u = rdja_gate(gate) * rotation('x', PI / 2.0);
    ground.conjugate(&to_dyn(&u))
}

/// Readout `(π/2)_x` followed by the probability of `|0⟩`.
fn readout_p0(rho: &DensityMatrix) -> f64 {
    let r = rho.conjugate(&to_dyn(&rotation('x', PI / 2.0)));
    r.matrix()[(0, 0)].re
}

/// Multiplies the coherences by a real damping factor.
fn damp(rho: &DensityMatrix, factor: f64) -> DensityMatrix {
    let mut m = rho.matrix().clone();
    m[(0, 1)] *= factor;
    m[(1, 0)] *= factor;
    DensityMatrix::from_matrix_unchecked(m)
}

/// Branch-averaged state after `wait_before`, an optional ideal `π_y` pulse
/// and `wait_after`, with the residual bath applied over the total time.
fn evolve(
    params: &NVParams,
    prep: &NuclearPrep,
    rho0: &DensityMatrix,
    wait_before: f64,
    pulse: bool,
    wait_after: f64,
) -> DensityMatrix {
    let (up, down) = prep.weights();
    let half = 0.5 * params.coupling;
    let mut acc = DMatrix::zeros(2, 2);
    for (w, delta) in [(up, half), (down, -half)] {
        if w == 0.0 {
            continue;
        }
        let mut u = precession(delta, wait_before);
        if pulse {
            u = precession(delta, wait_after) * rotation('y', PI) * u;
        }
        acc += rho0.conjugate(&to_dyn(&u)).into_matrix().scale(w);
    }
    let total = wait_before + if pulse { wait_after } else { 0.0 };
    damp(
        &DensityMatrix::from_matrix_unchecked(acc),
        params.envelope(total),
    )
}

/// `P0` of the echo protocol: gate, wait `t`, `π_y` pulse, wait `τ`, readout.
///
/// Equivalent to `½(1 ± Re κ_eff)` with
/// `κ_eff = env(t+τ)·[cos²(φ/2) e^{iA(t−τ)/2} + sin²(φ/2) e^{−iA(t−τ)/2}]`,
/// `+` for constant and `−` for balanced gates.
pub fn rdja_p0(params: &NVParams, prep: &NuclearPrep, cfg: &RdjaConfig) -> f64 {
    let rho = evolve(
        params,
        prep,
        &prepared_state(cfg.gate),
        cfg.t,
        true,
        cfg.tau,
    );
    readout_p0(&rho).clamp(0.0, 1.0)
}

/// `P0` when the readout follows the gate after `t` with no decoupling pulse.
pub fn rdja_p0_immediate(params: &NVParams, prep: &NuclearPrep, t: f64, gate: RdjaGate) -> f64 {
    let rho = evolve(params, prep, &prepared_state(gate), t, false, 0.0);
    readout_p0(&rho).clamp(0.0, 1.0)
}

/// Success contrast `P0(U1) − P0(U3)` of the echo protocol.
pub fn rdja_contrast(params: &NVParams, prep: &NuclearPrep, t: f64, tau: f64) -> f64 {
    let p = |gate| rdja_p0(params, prep, &RdjaConfig { t, tau, gate });
    p(RdjaGate::U1) - p(RdjaGate::U3)
}

/// Contrast magnitude `|P0(U1) − P0(U3)|` with readout right after waiting `t`.
pub fn rdja_contrast_immediate(params: &NVParams, prep: &NuclearPrep, t: f64) -> f64 {
    (rdja_p0_immediate(params, prep, t, RdjaGate::U1)
        - rdja_p0_immediate(params, prep, t, RdjaGate::U3))
    .abs()
}

/// Contrast of the echo protocol over a sweep of post-pulse waits.
pub fn rdja_success(
    params: &NVParams,
    prep: &NuclearPrep,
    t: f64,
    tau_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if tau_grid.is_empty() {
        return Err(invalid("tau grid must be non-empty"));
    }
    if !(t >= 0.0) || tau_grid.iter().any(|tau| !(*tau >= 0.0)) {
        return Err(invalid("waits must be ≥ 0"));
    }
    Ok(sweep::map(tau_grid, |tau| {
        (*tau, rdja_contrast(params, prep, t, *tau))
    }))
}

/// `n` points on `[0, t_max]`, a convenience for sweeps.
pub fn time_grid(t_max: f64, n: usize) -> Vec<f64> {
    linspace(0.0, t_max, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{trace_distance, BlochVector};
    use crate::spectra::dephasing_channel;

    fn no_env(a: f64) -> NVParams {
        NVParams::new(a, f64::INFINITY, EnvelopeShape::Gaussian).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    /// `κ_eff` of the echo, written out directly.
    fn kappa_eff(params: &NVParams, prep: &NuclearPrep, t: f64, tau: f64) -> C64 {
        let (up, down) = prep.weights();
        let x = 0.5 * params.coupling * (t - tau);
        (C64::from_polar(up, x) + C64::from_polar(down, -x)) * params.envelope(t + tau)
    }

    #[test]
    fn kappa_examples() {
        let p = NVParams::illustrative();
        let zero = NuclearPrep::new(0.0).unwrap();
        let mut last = f64::INFINITY;
        for t in time_grid(3.0, 301) {
            let r = nv_kappa(&p, &zero, t).norm();
            assert!(close(r, p.envelope(t), 1e-15));
            assert!(r <= last);
            last = r;
        }
        assert_eq!(
            nv_kappa(&p, &NuclearPrep::new(1.1).unwrap(), 0.0),
            C64::new(1.0, 0.0)
        );

        let flat = no_env(3.0);
        let half = NuclearPrep::new(PI / 2.0).unwrap();
        for t in time_grid(5.0, 101) {
            assert!(close(
                nv_kappa(&flat, &half, t).norm(),
                (1.5 * t).cos().abs(),
                1e-12
            ));
        }
    }

    #[test]
    fn bloch_magnitude_examples() {
        let p = NVParams::illustrative();
        let t = 0.37;
        assert!(close(
            bloch_magnitude(&p, &NuclearPrep::new(0.0).unwrap(), t),
            p.envelope(t),
            1e-15
        ));
        assert!(close(
            bloch_magnitude(&p, &NuclearPrep::new(PI).unwrap(), t),
            p.envelope(t),
            1e-12
        ));
        let flat = no_env(2.0);
        assert!(bloch_magnitude(&flat, &NuclearPrep::new(PI / 2.0).unwrap(), PI / 2.0) < 1e-15);
        let phi = 1.0f64;
        for t in time_grid(2.0, 41) {
            let want = p.envelope(t)
                * (1.0 - phi.sin().powi(2) * (0.5 * p.coupling * t).sin().powi(2)).sqrt();
            assert!(close(
                bloch_magnitude(&p, &NuclearPrep::new(phi).unwrap(), t),
                want,
                1e-12
            ));
        }
    }

    #[test]
    fn bloch_magnitude_is_trace_distance_of_dephased_pair() {
        let p = NVParams::illustrative();
        let plus = DensityMatrix::from_bloch(BlochVector::new(1.0, 0.0, 0.0));
        let minus = DensityMatrix::from_bloch(BlochVector::new(-1.0, 0.0, 0.0));
        for phi in [0.0, 0.4, PI / 2.0, 2.5] {
            let prep = NuclearPrep::new(phi).unwrap();
            for t in time_grid(2.0, 23) {
                let ch = dephasing_channel(nv_kappa(&p, &prep, t)).unwrap();
                let d =
                    trace_distance(&ch.apply(&plus).unwrap(), &ch.apply(&minus).unwrap()).unwrap();
                assert!(close(d, bloch_magnitude(&p, &prep, t), 1e-12));
            }
        }
    }

    #[test]
    fn nm_measure_examples() {
        let p = NVParams::illustrative();
        let ts = time_grid(3.0 * p.envelope_t, 3000);
        let phis = linspace(0.0, PI / 2.0, 9);
        let nm = nm_measure_phi(&p, &phis, &ts).unwrap();
        assert_eq!(nm[0].1, 0.0);
        let max = nm.iter().map(|x| x.1).fold(0.0, f64::max);
        assert_eq!(nm.last().unwrap().1, max);
        let quarter = nm_measure_phi(&p, &[PI / 4.0], &ts).unwrap()[0].1;
        assert!(quarter < max);
        assert!(nm_measure_phi(&p, &[4.0], &ts).is_err());
        assert!(nm_measure_phi(&p, &[], &ts).is_err());
    }

    #[test]
    fn gate_algebra() {
        let u1 = rdja_gate(RdjaGate::U1);
        let rx_pi = rotation('x', -PI);
        assert!((u1 - rx_pi).norm() < 1e-15);
        let u2 = rdja_gate(RdjaGate::U2);
        assert!((u2 + u1).norm() < 1e-15);
        for g in RdjaGate::ALL {
            let u = rdja_gate(g);
            assert!((u * u.adjoint() - pauli(0)).norm() < 1e-14);
        }
    }

    #[test]
    fn noiseless_protocol_contrast() {
        let flat = no_env(1.0);
        let prep = NuclearPrep::new(0.0).unwrap();
        let p = |g| rdja_p0_immediate(&flat, &prep, 0.0, g);
        assert!(close(p(RdjaGate::U1), 1.0, 1e-15));
        assert!(close(p(RdjaGate::U2), 1.0, 1e-15));
        assert!(close(p(RdjaGate::U3), 0.0, 1e-15));
        assert!(close(p(RdjaGate::U4), 0.0, 1e-15));
        assert!(close((p(RdjaGate::U3) - p(RdjaGate::U1)).abs(), 1.0, 1e-15));
    }

    #[test]
    fn echo_matches_closed_form() {
        let p = NVParams::illustrative();
        for phi in [0.0, 0.7, PI / 2.0, 2.9] {
            let prep = NuclearPrep::new(phi).unwrap();
            for (t, tau) in [(0.1, 0.1), (0.3, 0.12), (0.05, 0.4), (0.0, 0.2)] {
                let k = kappa_eff(&p, &prep, t, tau);
                for g in RdjaGate::ALL {
                    let s = if g.is_constant() { 1.0 } else { -1.0 };
                    let got = rdja_p0(&p, &prep, &RdjaConfig::new(t, tau, g).unwrap());
                    assert!(
                        close(got, 0.5 * (1.0 + s * k.re), 1e-12),
                        "{g:?} phi {phi} t {t} tau {tau}"
                    );
                }
                let imm = rdja_contrast_immediate(&p, &prep, t);
                assert!(close(imm, nv_kappa(&p, &prep, t).re.abs(), 1e-12));
            }
        }
    }

    #[test]
    fn echo_refocuses_at_equal_waits() {
        let flat = no_env(2.0 * PI * 2.16);
        let half = NuclearPrep::new(PI / 2.0).unwrap();
        let t = 0.17;
        assert!(close(rdja_contrast(&flat, &half, t, t), 1.0, 1e-12));
        // two phasors cancel when A(t − τ) = π
        let tau = t - PI / flat.coupling;
        assert!(rdja_contrast(&flat, &half, t, tau).abs() < 1e-12);

        let taus = linspace(0.0, 2.0 * t, 41);
        let sweep = rdja_success(&flat, &half, t, &taus).unwrap();
        let (best, _) =
            sweep.iter().fold(
                (0.0, f64::MIN),
                |acc, (tau, c)| if *c > acc.1 { (*tau, *c) } else { acc },
            );
        assert_eq!(best, t);
    }

    #[test]
    fn contrast_period_in_tau() {
        let flat = no_env(3.0);
        let prep = NuclearPrep::new(0.0).unwrap();
        let period = 4.0 * PI / flat.coupling;
        for tau in [0.1, 0.5, 1.3] {
            let a = rdja_contrast(&flat, &prep, 0.4, tau);
            let b = rdja_contrast(&flat, &prep, 0.4, tau + period);
            assert!(close(a, b, 1e-12));
        }
    }

    #[test]
    fn decaying_envelope_prefers_earlier_revival() {
        let p = NVParams::illustrative();
        let prep = NuclearPrep::new(0.0).unwrap();
        let period = 4.0 * PI / p.coupling;
        let t = 1.5 * period;
        let taus = linspace(0.0, 2.0 * t, 2001);
        let sweep = rdja_success(&p, &prep, t, &taus).unwrap();
        let (best, _) =
            sweep.iter().fold(
                (0.0, f64::MIN),
                |acc, (tau, c)| if *c > acc.1 { (*tau, *c) } else { acc },
            );
        assert!((best - (t - period)).abs() < 0.05 * period, "best {best}");
    }

    #[test]
    fn invalid_inputs() {
        assert!(NVParams::new(0.0, 1.0, EnvelopeShape::Gaussian).is_err());
        assert!(NVParams::new(1.0, -1.0, EnvelopeShape::Exponential).is_err());
        assert!(NuclearPrep::new(-0.1).is_err());
        assert!(RdjaConfig::new(-1.0, 0.0, RdjaGate::U1).is_err());
        let p = NVParams::illustrative();
        let prep = NuclearPrep::new(0.0).unwrap();
        assert!(rdja_success(&p, &prep, 0.1, &[]).is_err());
    }
}
