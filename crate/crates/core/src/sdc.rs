//! Superdense coding over polarization qubits with correlated frequency noise.
//!
//! Two photons share `|Φ+⟩ = (|HH⟩ + |VV⟩)/√2` in polarization. Their
//! frequencies `(ω_A, ω_B)` are drawn from a zero-mean bivariate Gaussian with
//! common width `σ` and correlation `K`. A photon that spends time `t` in a
//! birefringent element acquires the phase `Δn·ω·t` on `|V⟩`. Alice's photon
//! is exposed for `t_A` before she encodes, Bob's for `t_B` afterwards.
//!
//! For fixed frequencies every basis term carries an exposure vector
//! `e = (e_A, e_B)` and the averaged state is
//! `ρ_jk = a_j a_k* χ(Δn(e_j − e_k))`, where `χ` is the Gaussian
//! characteristic function of the frequency pair. The simulation works
//! directly on that representation.

use crate::error::{invalid, Result};
use crate::qcore::{BellState, C64};
use crate::sweep;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatedSpectrum {
    pub sigma: f64,
    pub k: f64,
    pub delta_n: f64,
}

impl CorrelatedSpectrum {
    pub fn new(sigma: f64, k: f64, delta_n: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(invalid(format!("sigma must be > 0, got {sigma}")));
        }
        if !(-1.0..=1.0).contains(&k) {
            return Err(invalid(format!("K must be in [-1, 1], got {k}")));
        }
        if !delta_n.is_finite() {
            return Err(invalid("delta_n must be finite"));
        }
        Ok(Self { sigma, k, delta_n })
    }

    /// `E[e^{i(u_A ω_A + u_B ω_B)}]` for the zero-mean pair.
    fn characteristic(&self, u_a: f64, u_b: f64) -> f64 {
        let quad = u_a * u_a + u_b * u_b + 2.0 * self.k * u_a * u_b;
        (-0.5 * self.sigma * self.sigma * quad.max(0.0)).exp()
    }
}

/// Which of Alice's Pauli encodings are in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EncodingScheme {
    /// `𝕀, σx, σy, σz`
    #[default]
    FourState,
    /// `𝕀, σx, σz`
    ThreeState,
}

impl EncodingScheme {
    pub fn from_n_states(n: usize) -> Result<Self> {
        match n {
            4 => Ok(EncodingScheme::FourState),
            3 => Ok(EncodingScheme::ThreeState),
            _ => Err(invalid(format!("n_states must be 3 or 4, got {n}"))),
        }
    }

    pub fn n_states(self) -> usize {
        self.operators().len()
    }

    /// Pauli indices (0 = 𝕀, 1 = x, 2 = y, 3 = z).
    pub fn operators(self) -> &'static [usize] {
        match self {
            EncodingScheme::FourState => &[0, 1, 2, 3],
            EncodingScheme::ThreeState => &[0, 1, 3],
        }
    }
}

/// Magnitude of the two-photon decoherence factor after exposures `t_A`, `t_B`.
pub fn joint_kappa(spec: &CorrelatedSpectrum, t_a: f64, t_b: f64) -> f64 {
    spec.characteristic(spec.delta_n * t_a, spec.delta_n * t_b)
}

/// Single-photon decoherence magnitude `exp(−½Δn²σ²t²)`.
pub fn marginal_kappa(spec: &CorrelatedSpectrum, t: f64) -> f64 {
    joint_kappa(spec, t, 0.0)
}

/// `H(x)` in bits, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let h = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    h(x) + h(1.0 - x)
}

fn shannon_entropy(ps: &[f64]) -> f64 {
    ps.iter().filter(|p| **p > 0.0).map(|p| -p * p.log2()).sum()
}

/// Dense-coding capacity `2 − H((1 + c_A^{2(1+K)})/2)`, with `0⁰ = 1`.
pub fn capacity(c_a: f64, k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c_a) {
        return Err(invalid(format!("c_A must be in [0, 1], got {c_a}")));
    }
    if !(-1.0..=1.0).contains(&k) {
        return Err(invalid(format!("K must be in [-1, 1], got {k}")));
    }
    let exponent = 2.0 * (1.0 + k);
    let c = if exponent == 0.0 {
        1.0
    } else {
        c_a.powf(exponent)
    };
    Ok(2.0 - binary_entropy(0.5 * (1.0 + c)))
}

/// Shared concurrence when Alice encodes, `exp(−½Δn²σ²t_A²)`.
pub fn concurrence_at_encoding(spec: &CorrelatedSpectrum, t_a: f64) -> f64 {
    marginal_kappa(spec, t_a)
}

/// A basis term `amp·|ab⟩` with index `2a + b` and exposure `(e_A, e_B)`.
#[derive(Debug, Clone, Copy)]
struct Term {
    index: usize,
    amp: C64,
    exposure: (f64, f64),
}

/// Action of the Pauli `k` on a single basis state: `σ_k|a⟩ = phase·|a'⟩`.
fn pauli_on_basis(k: usize, a: usize) -> (usize, C64) {
    let one = C64::new(1.0, 0.0);
    match (k, a) {
        (0, _) => (a, one),
        (1, _) => (1 - a, one),
        (2, 0) => (1, C64::new(0.0, 1.0)),
        (2, _) => (0, C64::new(0.0, -1.0)),
        (3, 0) => (0, one),
        (3, _) => (1, -one),
        _ => unreachable!("Pauli index out of range"),
    }
}

/// Two-qubit state delivered to Bob's Bell analyser for encoding `k`.
fn delivered_state(spec: &CorrelatedSpectrum, t_a: f64, t_b: f64, k: usize) -> [[C64; 4]; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut terms = [(0usize, 0usize), (1, 1)].map(|(a, b)| Term {
        index: 2 * a + b,
        amp: C64::new(s, 0.0),
        exposure: (0.0, 0.0),
    });
    for term in &mut terms {
        let (a, b) = (term.index / 2, term.index % 2);
        if a == 1 {
            term.exposure.0 = t_a;
        }
        let (a2, phase) = pauli_on_basis(k, a);
        term.index = 2 * a2 + b;
        term.amp *= phase;
        if b == 1 {
            term.exposure.1 = t_b;
        }
    }
    let mut rho = [[C64::new(0.0, 0.0); 4]; 4];
    for p in &terms {
        for q in &terms {
            let u_a = spec.delta_n * (p.exposure.0 - q.exposure.0);
            let u_b = spec.delta_n * (p.exposure.1 - q.exposure.1);
            rho[p.index][q.index] += p.amp * q.amp.conj() * spec.characteristic(u_a, u_b);
        }
    }
    rho
}

/// Bell-measurement outcome probabilities, one row per encoding in
/// [`EncodingScheme::operators`] order, columns in [`BellState::ALL`] order.
pub fn bell_probabilities(
    spec: &CorrelatedSpectrum,
    t_a: f64,
    t_b: f64,
    scheme: EncodingScheme,
) -> Result<Vec<[f64; 4]>> {
    if !(t_a >= 0.0) || !(t_b >= 0.0) {
        return Err(invalid(format!(
            "exposure times must be ≥ 0, got {t_a}, {t_b}"
        )));
    }
    let bells = BellState::ALL.map(|b| b.ket());
    Ok(scheme
        .operators()
        .iter()
        .map(|k| {
            let rho = delivered_state(spec, t_a, t_b, *k);
            bells.map(|ket| {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..4 {
                    for j in 0..4 {
                        acc += ket[i].conj() * rho[i][j] * ket[j];
                    }
                }
                acc.re.max(0.0)
            })
        })
        .collect())
}

/// `I(X:Y)` in bits for uniform inputs over the rows of a channel matrix.
pub fn mutual_information(table: &[[f64; 4]]) -> f64 {
    let n = table.len() as f64;
    let mut output = [0.0; 4];
    for row in table {
        for (o, p) in output.iter_mut().zip(row) {
            *o += p / n;
        }
    }
    let conditional: f64 = table.iter().map(|row| shannon_entropy(row)).sum::<f64>() / n;
    (shannon_entropy(&output) - conditional).max(0.0)
}

/// Mutual information of the protocol with exposures `t_A`, `t_B`.
pub fn simulate_protocol(
    spec: &CorrelatedSpectrum,
    t_a: f64,
    t_b: f64,
    scheme: EncodingScheme,
) -> Result<f64> {
    Ok(mutual_information(&bell_probabilities(
        spec, t_a, t_b, scheme,
    )?))
}

/// `(c_A, I)` with Bob exposed as long as Alice (`t_B = t_A`).
pub fn fig4_curve(
    spec: &CorrelatedSpectrum,
    scheme: EncodingScheme,
    t_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    curve(spec, scheme, t_grid, |t| t)
}

/// `(c_A, I)` with noise on Alice's side only (`t_B = 0`).
pub fn alice_only_curve(
    spec: &CorrelatedSpectrum,
    scheme: EncodingScheme,
    t_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    curve(spec, scheme, t_grid, |_| 0.0)
}

fn curve(
    spec: &CorrelatedSpectrum,
    scheme: EncodingScheme,
    t_grid: &[f64],
    bob: impl Fn(f64) -> f64 + Sync + Send,
) -> Result<Vec<(f64, f64)>> {
    if t_grid.is_empty() {
        return Err(invalid("t grid must be non-empty"));
    }
    if t_grid.iter().any(|t| !(*t >= 0.0)) {
        return Err(invalid("exposure times must be ≥ 0"));
    }
    Ok(sweep::map(t_grid, |t| {
        let mi = simulate_protocol(spec, *t, bob(*t), scheme).expect("validated exposures");
        (concurrence_at_encoding(spec, *t), mi)
    }))
}
