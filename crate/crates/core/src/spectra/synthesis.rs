//! Inverse problem: from a target decoherence function to a spectral profile.
//!
//! The target is sampled on `t_k = k·dt`, `k = 0..N`. Negative times are
//! filled with the Hermitian extension `κ(−t) = κ(t)*`, which holds for any
//! real (signed) spectral amplitude. The `M = 2N − 1` samples are inverted
//! with a DFT onto the conjugate grid `ω_m = m·dω`, `dω = 2π / (|r| M dt)`,
//! `|m| < N`. On that pair of grids forward trapezoidal quadrature inverts the
//! DFT exactly up to the half-weights at the two band edges, so band-limited
//! targets come back to round-off.

use std::f64::consts::PI;

use rustfft::FftPlanner;

use super::{kappa_samples, trapezoid, Birefringence, DecoherenceTrajectory, SpectralProfile};
use crate::error::{invalid, Result};
use crate::qcore::C64;

/// Maximum `|κ_in − κ_out|` for a synthesis to count as realizable.
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-6;
/// Targets must have decayed below this at the last sample.
const TAIL_TOLERANCE: f64 = 1e-6;
/// Phases of spectral amplitudes below this fraction of the peak are set to 0.
const PHASE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum SynthesisWarning {
    /// `|κ|` at the final time is not negligible; the time window is too short.
    TruncatedWindow { final_magnitude: f64 },
    /// Forward simulation of the recovered profile misses the target.
    RoundTripMismatch { max_error: f64 },
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    pub profile: SpectralProfile,
    /// `max_k |κ_in(t_k) − κ_out(t_k)|` over the input grid.
    pub round_trip_error: f64,
    /// Trapezoidal integral of `|G(ω)|` before renormalisation. Equals 1 for a
    /// target realizable with a non-negative density and constant phase.
    pub amplitude_norm: f64,
    pub warnings: Vec<SynthesisWarning>,
}

impl Synthesis {
    pub fn is_realizable(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// Recovers `|g(ω)|²` and `θ(ω)` from a decoherence trajectory starting at `t = 0`.
pub fn synthesize_spectrum(
    traj: &DecoherenceTrajectory,
    biref: Birefringence,
) -> Result<Synthesis> {
    let ts = traj.times();
    let dt = traj.step();
    if ts[0].abs() > 1e-12 * dt {
        return Err(invalid("synthesis needs a trajectory starting at t = 0"));
    }
    let rate = biref.rate();
    if rate == 0.0 || !rate.is_finite() {
        return Err(invalid("delta_n must be finite and non-zero"));
    }

    let kappa = traj.kappa();
    let n = kappa.len();
    let m = 2 * n - 1;
    let mut buf: Vec<C64> = (0..m)
        .map(|k| if k < n { kappa[k] } else { kappa[m - k].conj() })
        .collect();

    // G(ω_m) = |r| dt / 2π · Σ_k κ(t_k) e^{−i ω_m r t_k}, and ω_m r t_k = ±2π m k / M.
    let mut planner = FftPlanner::<f64>::new();
    let fft = if rate > 0.0 {
        planner.plan_fft_forward(m)
    } else {
        planner.plan_fft_inverse(m)
    };
    fft.process(&mut buf);

    let d_omega = 2.0 * PI / (rate.abs() * m as f64 * dt);
    let scale = rate.abs() * dt / (2.0 * PI);
    let half = n as isize - 1;
    let mut omega = Vec::with_capacity(m);
    let mut amps = Vec::with_capacity(m);
    for j in -half..=half {
        omega.push(j as f64 * d_omega);
        amps.push(buf[j.rem_euclid(m as isize) as usize] * scale);
    }

    let magnitude: Vec<f64> = amps.iter().map(|a| a.norm()).collect();
    let peak = magnitude.iter().copied().fold(0.0, f64::max);
    let amplitude_norm = trapezoid(&magnitude, d_omega);
    let phase = amps
        .iter()
        .zip(&magnitude)
        .map(|(a, mag)| {
            if *mag > PHASE_FLOOR * peak {
                a.arg()
            } else {
                0.0
            }
        })
        .collect();
    let profile = SpectralProfile::normalized(omega, magnitude, phase)?;

    let forward = kappa_samples(&profile, biref, ts);
    let round_trip_error = forward
        .iter()
        .zip(kappa)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let mut warnings = Vec::new();
    let final_magnitude = kappa[n - 1].norm();
    if final_magnitude >= TAIL_TOLERANCE {
        warnings.push(SynthesisWarning::TruncatedWindow { final_magnitude });
    }
    if !(round_trip_error < ROUND_TRIP_TOLERANCE) {
        warnings.push(SynthesisWarning::RoundTripMismatch {
            max_error: round_trip_error,
        });
    }

    Ok(Synthesis {
        profile,
        round_trip_error,
        amplitude_norm,
        warnings,
    })
}
