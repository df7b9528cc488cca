//! Frequency-engineered pure dephasing.
//!
//! A photon whose polarization couples to its own frequency through a
//! birefringent medium dephases with
//!
//! ```text
//! κ(t) = ∫ |g(ω)|² e^{iθ(ω)} e^{i ω r t} dω
//! ```
//!
//! where `r = Δn` (angular convention) or `r = 2πΔn` (cyclic convention),
//! `|g(ω)|²` is the frequency distribution and `θ(ω)` an optional
//! frequency-dependent phase. Populations are untouched; the coherence
//! `ρ_HV` is multiplied by `κ*` and `ρ_VH` by `κ`.

mod synthesis;

pub use synthesis::{synthesize_spectrum, Synthesis, SynthesisWarning, ROUND_TRIP_TOLERANCE};

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{invalid, Result};
use crate::grid::{linspace, uniform_spacing};
use crate::qcore::{DensityMatrix, PauliChannel, C64};
use crate::sweep;

/// Default number of quadrature nodes for built-in spectral profiles.
pub const DEFAULT_QUADRATURE_POINTS: usize = 4096;
/// Built-in Gaussian profiles extend this many widths beyond each peak.
pub const SUPPORT_HALF_WIDTH_SIGMAS: f64 = 6.0;

const GRID_REL_TOL: f64 = 1e-6;
const NORMALIZATION_TOL: f64 = 1e-8;
const KAPPA_BOUND_TOL: f64 = 1e-9;

/// How the frequency–time product enters the phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `e^{i ω Δn t}`
    #[default]
    Angular,
    /// `e^{i 2π Δn ω t}`
    TwoPi,
}

/// Birefringence contrast `Δn` together with the phase convention.
///
/// Time is dimensionless; only the product `Δn·t` is physically meaningful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Birefringence {
    pub delta_n: f64,
    pub convention: Convention,
}

impl Birefringence {
    pub fn angular(delta_n: f64) -> Self {
        Self {
            delta_n,
            convention: Convention::Angular,
        }
    }

    pub fn two_pi(delta_n: f64) -> Self {
        Self {
            delta_n,
            convention: Convention::TwoPi,
        }
    }

    /// Phase accumulated per unit frequency per unit time.
    pub fn rate(&self) -> f64 {
        match self.convention {
            Convention::Angular => self.delta_n,
            Convention::TwoPi => 2.0 * PI * self.delta_n,
        }
    }
}

/// Sampled frequency distribution `|g(ω)|²` with phase `θ(ω)` on a uniform,
/// strictly increasing grid. The density is non-negative and integrates to
/// one under the trapezoidal rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProfile {
    omega: Vec<f64>,
    density: Vec<f64>,
    phase: Vec<f64>,
    step: f64,
}

impl SpectralProfile {
    pub fn new(omega: Vec<f64>, density: Vec<f64>, phase: Vec<f64>) -> Result<Self> {
        if density.len() != omega.len() || phase.len() != omega.len() {
            return Err(invalid(format!(
                "profile columns differ in length: omega {}, density {}, phase {}",
                omega.len(),
                density.len(),
                phase.len()
            )));
        }
        let step = uniform_spacing(&omega, GRID_REL_TOL)?;
        if let Some(i) = density.iter().position(|d| !(*d >= 0.0) || !d.is_finite()) {
            return Err(invalid(format!(
                "density must be finite and non-negative (index {i})"
            )));
        }
        if phase.iter().any(|p| !p.is_finite()) {
            return Err(invalid("phase must be finite"));
        }
        let p = Self {
            omega,
            density,
            phase,
            step,
        };
        let total = p.integral();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(invalid(format!(
                "density integrates to {total}, expected 1"
            )));
        }
        Ok(p)
    }

    /// Rescales `density` to unit trapezoidal integral before validating.
    pub fn normalized(omega: Vec<f64>, density: Vec<f64>, phase: Vec<f64>) -> Result<Self> {
        if omega.len() < 2 || omega.len() != density.len() {
            return Err(invalid(
                "profile needs matching omega/density columns of length ≥ 2",
            ));
        }
        let h = uniform_spacing(&omega, GRID_REL_TOL)?;
        let total = trapezoid(&density, h);
        if !(total > 0.0) || !total.is_finite() {
            return Err(invalid(format!(
                "density integral {total} cannot be normalized"
            )));
        }
        let density = density.into_iter().map(|d| d / total).collect();
        Self::new(omega, density, phase)
    }

    /// Single Gaussian of width `sigma` centred at `center`, zero phase.
    pub fn gaussian(center: f64, sigma: f64, n: usize) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(invalid("sigma must be positive"));
        }
        let half = SUPPORT_HALF_WIDTH_SIGMAS * sigma;
        let omega = linspace(center - half, center + half, n);
        let density = omega
            .iter()
            .map(|w| gaussian_pdf(*w, center, sigma))
            .collect();
        Self::normalized(omega, density, vec![0.0; n])
    }

    /// Two Gaussians of width σ at `center` and `center + Δω` with weights
    /// `1/(1+A_θ)` and `A_θ/(1+A_θ)`, zero phase.
    pub fn double_gaussian(spec: &DoubleGaussianSpec, center: f64, n: usize) -> Result<Self> {
        let (a1, a2) = spec.peak_weights();
        let half = SUPPORT_HALF_WIDTH_SIGMAS * spec.sigma;
        let omega = linspace(center - half, center + spec.delta_omega + half, n);
        let density = omega
            .iter()
            .map(|w| {
                a1 * gaussian_pdf(*w, center, spec.sigma)
                    + a2 * gaussian_pdf(*w, center + spec.delta_omega, spec.sigma)
            })
            .collect();
        Self::normalized(omega, density, vec![0.0; n])
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn phase(&self) -> &[f64] {
        &self.phase
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn integral(&self) -> f64 {
        trapezoid(&self.density, self.step)
    }

    /// Trapezoid-weighted complex amplitudes `w_m |g_m|² e^{iθ_m}`.
    fn weighted_amplitudes(&self) -> Vec<C64> {
        let n = self.len();
        self.density
            .iter()
            .zip(&self.phase)
            .enumerate()
            .map(|(i, (d, p))| {
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                C64::from_polar(w * d * self.step, *p)
            })
            .collect()
    }
}

pub(crate) fn trapezoid(ys: &[f64], h: f64) -> f64 {
    match ys.len() {
        0 | 1 => 0.0,
        n => h * (ys[1..n - 1].iter().sum::<f64>() + 0.5 * (ys[0] + ys[n - 1])),
    }
}

fn gaussian_pdf(x: f64, mu: f64, sigma: f64) -> f64 {
    let u = (x - mu) / sigma;
    (-0.5 * u * u).exp() / (sigma * (2.0 * PI).sqrt())
}

/// Parameters of the two-peak Gaussian frequency distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleGaussianSpec {
    /// Peak-height ratio parameter `A_θ ≥ 0`.
    pub a_theta: f64,
    /// Width of each peak.
    pub sigma: f64,
    /// Separation of the peaks.
    pub delta_omega: f64,
    pub birefringence: Birefringence,
}

impl DoubleGaussianSpec {
    pub fn new(a_theta: f64, sigma: f64, delta_omega: f64, delta_n: f64) -> Result<Self> {
        if !(a_theta >= 0.0) || !a_theta.is_finite() {
            return Err(invalid(format!("A_theta must be ≥ 0, got {a_theta}")));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(invalid(format!("sigma must be > 0, got {sigma}")));
        }
        if !(delta_omega >= 0.0) || !delta_omega.is_finite() {
            return Err(invalid(format!(
                "delta_omega must be ≥ 0, got {delta_omega}"
            )));
        }
        if delta_n == 0.0 || !delta_n.is_finite() {
            return Err(invalid("delta_n must be finite and non-zero"));
        }
        Ok(Self {
            a_theta,
            sigma,
            delta_omega,
            birefringence: Birefringence::angular(delta_n),
        })
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.birefringence.convention = convention;
        self
    }

    /// `(A1, A2) = (1/(1+A_θ), A_θ/(1+A_θ))`.
    pub fn peak_weights(&self) -> (f64, f64) {
        (
            1.0 / (1.0 + self.a_theta),
            self.a_theta / (1.0 + self.a_theta),
        )
    }

    pub fn kappa_mag(&self, t: f64) -> f64 {
        kappa_double_gaussian_mag(self, t)
    }
}

/// Closed-form `|κ(t)|` of the two-peak Gaussian distribution:
/// `e^{−σ²s²/2}/(1+A_θ) · √(1 + A_θ² + 2A_θ cos(Δω s))` with `s = r t`.
pub fn kappa_double_gaussian_mag(spec: &DoubleGaussianSpec, t: f64) -> f64 {
    let s = spec.birefringence.rate() * t;
    let a = spec.a_theta;
    let envelope = (-0.5 * (spec.sigma * s).powi(2)).exp();
    let radicand = (1.0 + a * a + 2.0 * a * (spec.delta_omega * s).cos()).max(0.0);
    (envelope / (1.0 + a) * radicand.sqrt()).min(1.0)
}

/// Trapezoidal quadrature of the decoherence integral at time `t`.
pub fn kappa_numeric(profile: &SpectralProfile, biref: Birefringence, t: f64) -> C64 {
    let amps = profile.weighted_amplitudes();
    characteristic(&amps, profile.omega(), biref.rate() * t)
}

fn characteristic(amps: &[C64], omega: &[f64], s: f64) -> C64 {
    amps.iter()
        .zip(omega)
        .map(|(a, w)| a * C64::from_polar(1.0, w * s))
        .sum()
}

/// `κ(t)` at each time in `ts`, evaluated in parallel over the time grid.
pub fn kappa_samples(profile: &SpectralProfile, biref: Birefringence, ts: &[f64]) -> Vec<C64> {
    let amps = profile.weighted_amplitudes();
    let rate = biref.rate();
    sweep::map(ts, |t| characteristic(&amps, profile.omega(), rate * t))
}

/// Sampled decoherence function on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceTrajectory {
    t: Vec<f64>,
    kappa: Vec<C64>,
    step: f64,
}

impl DecoherenceTrajectory {
    /// Requires ≥ 2 samples on a uniform increasing grid, `|κ| ≤ 1 + 1e-9`,
    /// and `κ(0) = 1` (within 1e-9) if the grid starts at zero.
    pub fn new(t: Vec<f64>, kappa: Vec<C64>) -> Result<Self> {
        if t.len() != kappa.len() {
            return Err(invalid(format!(
                "trajectory has {} times but {} kappa values",
                t.len(),
                kappa.len()
            )));
        }
        let step = uniform_spacing(&t, GRID_REL_TOL)?;
        if let Some(i) = kappa
            .iter()
            .position(|k| !(k.norm() <= 1.0 + KAPPA_BOUND_TOL))
        {
            return Err(invalid(format!(
                "|kappa| = {} exceeds 1 at index {i}",
                kappa[i].norm()
            )));
        }
        if t[0] == 0.0 && (kappa[0] - C64::new(1.0, 0.0)).norm() > KAPPA_BOUND_TOL {
            return Err(invalid(format!("kappa(0) = {} but must be 1", kappa[0])));
        }
        Ok(Self { t, kappa, step })
    }

    /// Samples `f` on `t_grid`.
    pub fn from_fn(t_grid: Vec<f64>, f: impl Fn(f64) -> C64 + Sync + Send) -> Result<Self> {
        let kappa = sweep::map(&t_grid, |t| f(*t));
        Self::new(t_grid, kappa)
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn kappa(&self) -> &[C64] {
        &self.kappa
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.kappa.iter().map(|k| k.norm()).collect()
    }
}

/// `κ(t)` of a profile sampled on `t_grid`.
///
/// Fails when the result violates the trajectory invariants, e.g. a
/// non-constant phase `θ(ω)` makes `κ(0) ≠ 1`; use [`kappa_samples`] for raw
/// values in that case.
pub fn kappa_trajectory(
    profile: &SpectralProfile,
    biref: Birefringence,
    t_grid: Vec<f64>,
) -> Result<DecoherenceTrajectory> {
    let kappa = kappa_samples(profile, biref, &t_grid);
    DecoherenceTrajectory::new(t_grid, kappa)
}

/// Total upward variation of a sampled sequence: `Σ max(0, x_{i+1} − x_i)`.
pub fn positive_variation(xs: &[f64]) -> f64 {
    xs.windows(2).map(|w| (w[1] - w[0]).max(0.0)).sum()
}

/// Discrete trace-distance non-Markovianity of a dephasing trajectory.
///
/// For pure dephasing the antipodal equatorial pair is optimal and its trace
/// distance is `|κ(t)|`, so the functional is the upward variation of `|κ|`.
pub fn blp_measure(traj: &DecoherenceTrajectory) -> f64 {
    positive_variation(&traj.magnitudes())
}

/// Qubit dephasing map with complex decoherence factor `κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingChannel {
    kappa: C64,
}

/// Builds the dephasing map for `κ`; `|κ| > 1 + 1e-9` is unphysical.
pub fn dephasing_channel(kappa: C64) -> Result<DephasingChannel> {
    if !(kappa.norm() <= 1.0 + KAPPA_BOUND_TOL) {
        return Err(invalid(format!("|kappa| = {} exceeds 1", kappa.norm())));
    }
    Ok(DephasingChannel { kappa })
}

impl DephasingChannel {
    pub fn kappa(&self) -> C64 {
        self.kappa
    }

    /// The equivalent Pauli channel `(κ, κ, 1)` when `κ` is real.
    pub fn as_pauli(&self) -> Option<PauliChannel> {
        (self.kappa.im == 0.0).then(|| PauliChannel::new(self.kappa.re, self.kappa.re, 1.0))
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != 2 {
            return Err(invalid("dephasing_channel.apply needs a qubit state"));
        }
        let mut m = rho.matrix().clone();
        m[(0, 1)] *= self.kappa.conj();
        m[(1, 0)] *= self.kappa;
        Ok(DensityMatrix::from_matrix_unchecked(m))
    }

    /// Dephases the first qubit of a two-qubit state.
    pub fn apply_one_sided(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != 4 {
            return Err(invalid(
                "dephasing_channel.apply_one_sided needs a two-qubit state",
            ));
        }
        let src = rho.matrix();
        let k = self.kappa;
        let m = DMatrix::from_fn(4, 4, |i, j| match (i / 2, j / 2) {
            (0, 1) => src[(i, j)] * k.conj(),
            (1, 0) => src[(i, j)] * k,
            _ => src[(i, j)],
        });
        Ok(DensityMatrix::from_matrix_unchecked(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{apply_channel, trace_distance, BlochVector};
    use proptest::prelude::*;

    fn spec(a: f64) -> DoubleGaussianSpec {
        DoubleGaussianSpec::new(a, 1.0, 4.0, 1.0).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        for a in [0.0, 0.33, 1.0, 3.0] {
            assert_eq!(kappa_double_gaussian_mag(&spec(a), 0.0), 1.0);
        }
        // single peak: pure Gaussian decay
        let s0 = DoubleGaussianSpec::new(0.0, 0.7, 5.0, 1.3).unwrap();
        for t in [0.1f64, 0.5, 1.0, 2.5] {
            let want = (-0.5 * (0.7 * 1.3 * t).powi(2)).exp();
            assert!((s0.kappa_mag(t) - want).abs() < 1e-15);
        }
        // cos(Δω Δn t) = −1 with equal peaks
        let s1 = spec(1.0);
        let t = PI / (4.0 * 1.0);
        assert!(s1.kappa_mag(t) < 1e-7);
    }

    #[test]
    fn profile_validation() {
        let omega = linspace(-1.0, 1.0, 5);
        assert!(SpectralProfile::new(omega.clone(), vec![0.5; 5], vec![0.0; 5]).is_ok());
        assert!(SpectralProfile::new(omega.clone(), vec![1.0; 5], vec![0.0; 5]).is_err());
        assert!(
            SpectralProfile::new(omega.clone(), vec![-0.5, 1.0, 0.5, 0.5, 0.5], vec![0.0; 5])
                .is_err()
        );
        assert!(SpectralProfile::new(vec![0.0, 1.0, 3.0], vec![0.5; 3], vec![0.0; 3]).is_err());
        assert!(SpectralProfile::new(omega, vec![0.5; 5], vec![0.0; 4]).is_err());
    }

    #[test]
    fn numeric_single_gaussian_matches_analytic() {
        // |∫ N(ω; ω0, σ) e^{iω s} dω| = e^{−σ²s²/2}
        let sigma = 0.8;
        let p = SpectralProfile::gaussian(3.0, sigma, DEFAULT_QUADRATURE_POINTS).unwrap();
        let b = Birefringence::two_pi(0.5);
        for t in linspace(0.0, 3.0, 31) {
            let k = kappa_numeric(&p, b, t);
            let want = (-0.5 * (2.0 * PI * 0.5 * sigma * t).powi(2)).exp();
            assert!((k.norm() - want).abs() < 1e-6, "t = {t}");
        }
    }

    #[test]
    fn near_delta_profile_is_a_pure_phase() {
        let p = SpectralProfile::gaussian(2.0, 1e-6, 257).unwrap();
        let b = Birefringence::angular(1.0);
        for t in [0.0, 1.0, 10.0, 30.0] {
            let k = kappa_numeric(&p, b, t);
            assert!((k.norm() - 1.0).abs() < 1e-9);
            assert!((k.arg() - (2.0 * t).sin().atan2((2.0 * t).cos())).abs() < 1e-6);
        }
    }

    #[test]
    fn double_gaussian_quadrature_matches_closed_form() {
        for conv in [Convention::Angular, Convention::TwoPi] {
            let s = DoubleGaussianSpec::new(1.0, 1.0, 4.0, 0.8)
                .unwrap()
                .with_convention(conv);
            let p = SpectralProfile::double_gaussian(&s, -1.0, DEFAULT_QUADRATURE_POINTS).unwrap();
            let ts = linspace(0.0, 6.0 / s.birefringence.rate(), 64);
            let ks = kappa_samples(&p, s.birefringence, &ts);
            for (t, k) in ts.iter().zip(ks) {
                assert!(
                    (k.norm() - s.kappa_mag(*t)).abs() < 1e-6,
                    "{conv:?} t = {t}"
                );
            }
        }
    }

    #[test]
    fn blp_examples() {
        assert!((positive_variation(&[1.0, 0.2, 0.3, 0.1]) - 0.1).abs() < 1e-15);
        let ts = linspace(0.0, 5.0, 200);
        let mono =
            DecoherenceTrajectory::from_fn(ts.clone(), |t| C64::new((-t).exp(), 0.0)).unwrap();
        assert_eq!(blp_measure(&mono), 0.0);
        let s = spec(1.0);
        let osc = DecoherenceTrajectory::from_fn(ts, |t| C64::new(s.kappa_mag(t), 0.0)).unwrap();
        assert!(blp_measure(&osc) > 0.0);
    }

    #[test]
    fn trajectory_validation() {
        assert!(DecoherenceTrajectory::new(vec![0.0], vec![C64::new(1.0, 0.0)]).is_err());
        assert!(DecoherenceTrajectory::new(
            vec![0.0, 1.0],
            vec![C64::new(0.9, 0.0), C64::new(0.5, 0.0)]
        )
        .is_err());
        assert!(DecoherenceTrajectory::new(
            vec![0.0, 1.0],
            vec![C64::new(1.0, 0.0), C64::new(1.5, 0.0)]
        )
        .is_err());
        assert!(DecoherenceTrajectory::new(
            vec![1.0, 2.0],
            vec![C64::new(0.9, 0.0), C64::new(0.5, 0.0)]
        )
        .is_ok());
    }

    #[test]
    fn dephasing_examples() {
        let plus = DensityMatrix::from_bloch(BlochVector::new(1.0, 0.0, 0.0));
        let id = dephasing_channel(C64::new(1.0, 0.0)).unwrap();
        assert_eq!(id.apply(&plus).unwrap(), plus);
        let full = dephasing_channel(C64::new(0.0, 0.0))
            .unwrap()
            .apply(&plus)
            .unwrap();
        assert!((full.matrix() - DensityMatrix::maximally_mixed(2).matrix()).norm() < 1e-15);
        let half = dephasing_channel(C64::new(0.5, 0.0))
            .unwrap()
            .apply(&plus)
            .unwrap();
        let b = half.bloch().unwrap();
        assert!((b.x - 0.5).abs() < 1e-15 && b.y.abs() < 1e-15 && b.z.abs() < 1e-15);
        assert!(dephasing_channel(C64::new(1.1, 0.0)).is_err());
        assert!(dephasing_channel(C64::new(0.5, 0.0))
            .unwrap()
            .as_pauli()
            .is_some());
        assert!(dephasing_channel(C64::new(0.5, 0.1))
            .unwrap()
            .as_pauli()
            .is_none());
    }

    #[test]
    fn dephased_pair_distance_is_kappa_magnitude() {
        let plus = DensityMatrix::from_bloch(BlochVector::new(1.0, 0.0, 0.0));
        let minus = DensityMatrix::from_bloch(BlochVector::new(-1.0, 0.0, 0.0));
        let ch = dephasing_channel(C64::from_polar(0.42, 1.1)).unwrap();
        let d = trace_distance(&ch.apply(&plus).unwrap(), &ch.apply(&minus).unwrap()).unwrap();
        assert!((d - 0.42).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn closed_form_is_bounded(
            a in 0.0..10.0f64, sigma in 0.01..5.0f64, dw in 0.0..20.0f64,
            dn in 0.1..3.0f64, t in 0.0..50.0f64,
        ) {
            let s = DoubleGaussianSpec::new(a, sigma, dw, dn).unwrap();
            let k = s.kappa_mag(t);
            prop_assert!((0.0..=1.0).contains(&k));
        }

        #[test]
        fn real_dephasing_equals_pauli_form(k in -1.0..1.0f64, x in -1.0..1.0f64, y in -1.0..1.0f64, z in -1.0..1.0f64) {
            let n = (x * x + y * y + z * z).sqrt().max(1.0);
            let rho = DensityMatrix::from_bloch(BlochVector::new(x / n, y / n, z / n));
            let ch = dephasing_channel(C64::new(k, 0.0)).unwrap();
            let a = ch.apply(&rho).unwrap();
            let b = apply_channel(&ch.as_pauli().unwrap(), &rho).unwrap();
            prop_assert!((a.matrix() - b.matrix()).norm() < 1e-15);
        }

        #[test]
        fn symmetric_density_gives_phase_times_real_envelope(
            center in -5.0..5.0f64, sigma in 0.2..2.0f64, t in 0.0..3.0f64,
        ) {
            let p = SpectralProfile::gaussian(center, sigma, 2049).unwrap();
            let b = Birefringence::angular(1.0);
            let k = kappa_numeric(&p, b, t);
            let envelope = k * C64::from_polar(1.0, -center * t);
            prop_assert!(envelope.im.abs() < 1e-8);
        }
    }
}
