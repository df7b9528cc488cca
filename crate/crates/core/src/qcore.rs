//! Exact small-dimension quantum primitives.
//!
//! States are one- or two-qubit density matrices. Channels are restricted to
//! the Pauli-diagonal (unital) family, parameterised by their eigenvalues
//! `(λx, λy, λz)` in the Pauli basis. Non-completely-positive members of the
//! family are representable on purpose: intermediate maps of non-Markovian
//! dynamics are exactly such objects, and the CP/P predicates below decide
//! what they are.
//!
//! Two-qubit basis ordering is `|ab⟩ ↦ 2a + b`, with the first tensor factor
//! being the qubit a one-sided channel acts on.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

pub type C64 = Complex64;

/// Tolerance used when validating density matrices and as the default for
/// the CP/P predicates.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Eigenvalues with magnitude at or below this are treated as zero when a
/// channel has to be inverted.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const FIBONACCI_POINTS: usize = 200;

const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Pauli matrix by index: 0 → 𝕀, 1 → σx, 2 → σy, 3 → σz.
pub fn pauli(k: usize) -> Matrix2<C64> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match k {
        0 => Matrix2::new(l, o, o, l),
        1 => Matrix2::new(o, l, l, o),
        2 => Matrix2::new(o, -i, i, o),
        3 => Matrix2::new(l, o, o, -l),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// Kronecker product of two 2×2 matrices.
pub fn kron2(a: &Matrix2<C64>, b: &Matrix2<C64>) -> DMatrix<C64> {
    DMatrix::from_fn(4, 4, |r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    // Symmetrise first so that round-off in the input cannot leak an
    // anti-Hermitian part into the solver.
    let h = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Bloch vector `(rx, ry, rz)` of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Evenly spread unit vectors (Fibonacci lattice on the sphere).
    pub fn fibonacci_sphere(n: usize) -> Vec<BlochVector> {
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        (0..n)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                let rho = (1.0 - z * z).max(0.0).sqrt();
                let phi = golden * i as f64;
                BlochVector::new(rho * phi.cos(), rho * phi.sin(), z)
            })
            .collect()
    }
}

/// The four Bell states, listed in Pauli order: `(σ_k ⊗ 𝕀)|Φ+⟩` for
/// `k = 0, x, y, z` is proportional to `PhiPlus, PsiPlus, PsiMinus, PhiMinus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PhiPlus,
    PsiPlus,
    PsiMinus,
    PhiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PsiPlus,
        BellState::PsiMinus,
        BellState::PhiMinus,
    ];

    pub fn ket(self) -> [C64; 4] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let o = c(0.0, 0.0);
        match self {
            BellState::PhiPlus => [c(s, 0.0), o, o, c(s, 0.0)],
            BellState::PhiMinus => [c(s, 0.0), o, o, c(-s, 0.0)],
            BellState::PsiPlus => [o, c(s, 0.0), c(s, 0.0), o],
            BellState::PsiMinus => [o, c(s, 0.0), c(-s, 0.0), o],
        }
    }
}

/// A one- or two-qubit density matrix.
///
/// [`DensityMatrix::new`] enforces Hermiticity, unit trace and positivity.
/// Images of valid states under non-positive maps are still wrapped in this
/// type (see [`DensityMatrix::from_matrix_unchecked`]); use
/// [`DensityMatrix::min_eigenvalue`] to inspect them.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<C64>,
}

impl DensityMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        let dim = m.nrows();
        if m.ncols() != dim || !(dim == 2 || dim == 4) {
            return Err(invalid(format!(
                "density matrix must be 2×2 or 4×4, got {}×{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let herm = (&m - m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > HERMITIAN_TOL {
            return Err(invalid(format!(
                "matrix is not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr - c(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(invalid(format!("trace is {tr}, expected 1")));
        }
        let rho = Self { m };
        let min = rho.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(invalid(format!(
                "matrix is not positive (min eigenvalue {min:e})"
            )));
        }
        Ok(rho)
    }

    /// Wraps a matrix without any validation.
    pub fn from_matrix_unchecked(m: DMatrix<C64>) -> Self {
        Self { m }
    }

    pub fn pure(ket: &[C64]) -> Result<Self> {
        let norm2: f64 = ket.iter().map(|a| a.norm_sqr()).sum();
        if !(norm2 > 0.0) {
            return Err(invalid("zero state vector"));
        }
        let n = ket.len();
        let m = DMatrix::from_fn(n, n, |i, j| ket[i] * ket[j].conj() / norm2);
        Self::new(m)
    }

    pub fn from_bloch(b: BlochVector) -> Self {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                c((1.0 + b.z) / 2.0, 0.0),
                c(b.x / 2.0, -b.y / 2.0),
                c(b.x / 2.0, b.y / 2.0),
                c((1.0 - b.z) / 2.0, 0.0),
            ],
        );
        Self { m }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            m: DMatrix::from_diagonal_element(dim, dim, c(1.0 / dim as f64, 0.0)),
        }
    }

    pub fn bell(state: BellState) -> Self {
        let k = state.ket();
        Self {
            m: DMatrix::from_fn(4, 4, |i, j| k[i] * k[j].conj()),
        }
    }

    /// Mixture of Bell states with weights in [`BellState::ALL`] order.
    pub fn bell_diagonal(weights: [f64; 4]) -> Result<Self> {
        let mut m = DMatrix::zeros(4, 4);
        for (w, b) in weights.iter().zip(BellState::ALL) {
            m += Self::bell(b).m.scale(*w);
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.m)[0]
    }

    /// `⟨ψ|ρ|ψ⟩` for a normalised `ψ`.
    pub fn expectation(&self, ket: &[C64]) -> f64 {
        let n = self.dim();
        let mut acc = c(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += ket[i].conj() * self.m[(i, j)] * ket[j];
            }
        }
        acc.re
    }

    pub fn bloch(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(invalid("Bloch vector needs a qubit state"));
        }
        let off = self.m[(0, 1)];
        Ok(BlochVector::new(
            2.0 * off.re,
            -2.0 * off.im,
            self.m[(0, 0)].re - self.m[(1, 1)].re,
        ))
    }

    /// Conjugates by a unitary of matching dimension: `U ρ U†`.
    pub fn conjugate(&self, u: &DMatrix<C64>) -> Self {
        Self {
            m: u * &self.m * u.adjoint(),
        }
    }
}

/// Trace distance `½‖ρ1 − ρ2‖₁`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(invalid(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let diff = a.matrix() - b.matrix();
    Ok(0.5
        * hermitian_eigenvalues(&diff)
            .iter()
            .map(|x| x.abs())
            .sum::<f64>())
}

/// Wootters concurrence of a two-qubit state.
///
/// The decreasing sequence `μ1..μ4` is obtained as the singular values of
/// `Wᵀ (σy⊗σy) W`, where `ρ = W W†` comes from the eigendecomposition of `ρ`.
/// These equal the square roots of the eigenvalues of `ρ (σy⊗σy) ρ* (σy⊗σy)`
/// but avoid taking square roots of round-off sized eigenvalues.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(invalid(format!(
            "concurrence needs a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let h = (m + m.adjoint()).scale(0.5);
    let eig = h.symmetric_eigen();
    let mut w = eig.eigenvectors.clone();
    for (j, &lam) in eig.eigenvalues.iter().enumerate() {
        let s = lam.max(0.0).sqrt();
        w.column_mut(j).scale_mut(s);
    }
    let yy = kron2(&pauli(2), &pauli(2));
    let t = w.transpose() * yy * &w;
    let mut mu: Vec<f64> = t.singular_values().iter().copied().collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Concurrence of a Bell-diagonal state from its weights: `max(0, 2·q_max − 1)`.
pub fn bell_diagonal_concurrence(weights: [f64; 4]) -> f64 {
    let qmax = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (2.0 * qmax - 1.0).max(0.0)
}

/// Weights of the Pauli operators in the operator-sum form of a
/// Pauli-diagonal map, `ρ ↦ Σ_k q_k σ_k ρ σ_k`. They are the eigenvalues of
/// the normalised Choi matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrausWeights {
    pub i: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl KrausWeights {
    pub fn as_array(&self) -> [f64; 4] {
        [self.i, self.x, self.y, self.z]
    }

    pub fn min(&self) -> f64 {
        self.as_array().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Pauli-diagonal unital qubit map with eigenvalues `(λx, λy, λz)` (λ_𝕀 = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliChannel {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PauliChannel {
    pub const IDENTITY: PauliChannel = PauliChannel::new(1.0, 1.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_kraus_weights(q: KrausWeights) -> Self {
        Self::new(
            q.i + q.x - q.y - q.z,
            q.i - q.x + q.y - q.z,
            q.i - q.x - q.y + q.z,
        )
    }

    /// The map "`earlier`, then `self`". Pauli-diagonal maps commute, so this
    /// is the componentwise product of eigenvalues.
    pub fn compose(&self, earlier: &PauliChannel) -> PauliChannel {
        PauliChannel::new(self.x * earlier.x, self.y * earlier.y, self.z * earlier.z)
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

pub fn kraus_weights(ch: &PauliChannel) -> KrausWeights {
    let (x, y, z) = (ch.x, ch.y, ch.z);
    KrausWeights {
        i: (1.0 + x + y + z) / 4.0,
        x: (1.0 + x - y - z) / 4.0,
        y: (1.0 - x + y - z) / 4.0,
        z: (1.0 - x - y + z) / 4.0,
    }
}

/// Complete positivity: all Choi eigenvalues `≥ −tol`.
pub fn is_cp(ch: &PauliChannel, tol: f64) -> bool {
    kraus_weights(ch).min() >= -tol
}

/// Positivity. For unital Pauli-diagonal maps this is `max|λ_i| ≤ 1`; the
/// image of a Fibonacci grid of pure states is checked as well.
pub fn is_positive(ch: &PauliChannel, tol: f64) -> bool {
    let analytic = ch.max_abs_eigenvalue() <= 1.0 + tol;
    analytic && grid_images_positive(ch, tol)
}

fn grid_images_positive(ch: &PauliChannel, tol: f64) -> bool {
    BlochVector::fibonacci_sphere(FIBONACCI_POINTS)
        .into_iter()
        .all(|r| {
            let out = BlochVector::new(ch.x * r.x, ch.y * r.y, ch.z * r.z);
            // eigenvalues of (𝕀 + r·σ)/2 are (1 ± |r|)/2
            0.5 * (1.0 - out.norm()) >= -tol
        })
}

/// Applies a Pauli-diagonal map to a qubit state.
pub fn apply_channel(ch: &PauliChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 2 {
        return Err(invalid("apply_channel needs a qubit state"));
    }
    let m = rho.matrix();
    let tr = m[(0, 0)].re + m[(1, 1)].re;
    let d00 = 0.5 * (tr + ch.z * (m[(0, 0)].re - m[(1, 1)].re));
    let off = m[(0, 1)];
    let off = c(ch.x * off.re, ch.y * off.im);
    let out = DMatrix::from_row_slice(2, 2, &[c(d00, 0.0), off, off.conj(), c(tr - d00, 0.0)]);
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Applies `ch ⊗ id` to a two-qubit state (channel on the first qubit).
pub fn apply_channel_one_sided(ch: &PauliChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(invalid("apply_channel_one_sided needs a two-qubit state"));
    }
    let q = kraus_weights(ch).as_array();
    let id = pauli(0);
    let mut out = DMatrix::zeros(4, 4);
    for (k, &w) in q.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let op = kron2(&pauli(k), &id);
        out += (&op * rho.matrix() * &op).scale(w);
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// The intermediate map `μ` with `later = μ ∘ earlier`, using the default
/// singular threshold.
pub fn divide_channels(later: &PauliChannel, earlier: &PauliChannel) -> Result<PauliChannel> {
    divide_channels_with_threshold(later, earlier, SINGULAR_THRESHOLD)
}

pub fn divide_channels_with_threshold(
    later: &PauliChannel,
    earlier: &PauliChannel,
    threshold: f64,
) -> Result<PauliChannel> {
    for (axis, value) in [('x', earlier.x), ('y', earlier.y), ('z', earlier.z)] {
        if value.abs() <= threshold {
            return Err(Error::SingularChannel {
                axis,
                value,
                threshold,
            });
        }
    }
    Ok(PauliChannel::new(
        later.x / earlier.x,
        later.y / earlier.y,
        later.z / earlier.z,
    ))
}
