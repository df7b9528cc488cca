//! Two-step correlated Pauli collision model.
//!
//! The qubit meets two environment "collisions". Each applies `𝕀`, `σx` or
//! `σz`, and the pair `(O_i, O_j)` is drawn from a joint distribution `p_ij`
//! controlled by a single parameter `ε ∈ [0, ½]`:
//!
//! ```text
//! p_00 = (1−2ε)²,  p_0x = p_0z = p_x0 = p_z0 = (1−2ε)ε,
//! p_xz = p_zx = 0, p_xx = p_zz = 2ε²
//! ```
//!
//! After one collision the qubit has seen the marginal `(1−2ε, ε, ε)`; after
//! two it has seen `Σ p_ij O_j O_i ρ O_i O_j`. Because `σxσx = σzσz = 𝕀`, the
//! correlated second step partially undoes the first, and the intermediate
//! map between the two steps is never CP for `ε > 0`. It stops being P at
//! `ε = ¼`.

use crate::error::{invalid, Error, Result};
use crate::qcore::{
    apply_channel_one_sided, concurrence, divide_channels, is_cp, is_positive, kraus_weights,
    BellState, DensityMatrix, KrausWeights, PauliChannel, DEFAULT_TOL, SINGULAR_THRESHOLD,
};

/// `|ε − ¼|` below which the intermediate map is reported singular.
pub const SINGULAR_EPSILON_TOL: f64 = 1e-9;
pub const EPSILON_MAX: f64 = 0.5;

/// Collision operators: 0 → 𝕀, 1 → σx, 2 → σz.
pub const OPERATORS: [char; 3] = ['0', 'x', 'z'];

fn check_epsilon(eps: f64) -> Result<()> {
    if !(0.0..=EPSILON_MAX).contains(&eps) {
        return Err(invalid(format!("epsilon must be in [0, 0.5], got {eps}")));
    }
    Ok(())
}

/// Joint probabilities `p[i][j]` of first operator `i`, second operator `j`,
/// indexed as in [`OPERATORS`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointProbabilities {
    pub p: [[f64; 3]; 3],
}

impl JointProbabilities {
    pub fn total(&self) -> f64 {
        self.p.iter().flatten().sum()
    }

    /// First-collision marginals `(p_0, p_x, p_z)`.
    pub fn first_marginals(&self) -> [f64; 3] {
        self.p.map(|row| row.iter().sum())
    }

    /// Weights of the net Pauli operator `O_j O_i` after both collisions.
    /// `σxσz` and `σzσx` are both proportional to `σy`.
    pub fn effective_weights(&self) -> KrausWeights {
        let p = &self.p;
        KrausWeights {
            i: p[0][0] + p[1][1] + p[2][2],
            x: p[0][1] + p[1][0],
            y: p[1][2] + p[2][1],
            z: p[0][2] + p[2][0],
        }
    }
}

pub fn joint_probabilities(eps: f64) -> Result<JointProbabilities> {
    check_epsilon(eps)?;
    let a = 1.0 - 2.0 * eps;
    let cross = a * eps;
    let same = 2.0 * eps * eps;
    Ok(JointProbabilities {
        p: [
            [a * a, cross, cross],
            [cross, same, 0.0],
            [cross, 0.0, same],
        ],
    })
}

/// `Φ_{t1,0}`: marginals `(1−2ε, ε, ε)` on `(𝕀, σx, σz)`, i.e. `λ = (1−2ε, 1−4ε, 1−2ε)`.
pub fn first_collision_channel(eps: f64) -> Result<PauliChannel> {
    let [p0, px, pz] = joint_probabilities(eps)?.first_marginals();
    Ok(PauliChannel::from_kraus_weights(KrausWeights {
        i: p0,
        x: px,
        y: 0.0,
        z: pz,
    }))
}

/// `Φ_{t2,0} = Σ_ij p_ij O_j O_i · O_i O_j`.
pub fn two_collision_channel(eps: f64) -> Result<PauliChannel> {
    let q = joint_probabilities(eps)?.effective_weights();
    Ok(PauliChannel::from_kraus_weights(q))
}

/// `Φ_{t2,t1} = Φ_{t2,0} ∘ Φ_{t1,0}⁻¹`. Undefined at `ε = ¼` (and at `ε = ½`,
/// where the first map annihilates the x and z components).
pub fn intermediate_channel(eps: f64) -> Result<PauliChannel> {
    check_epsilon(eps)?;
    if (eps - 0.25).abs() <= SINGULAR_EPSILON_TOL {
        return Err(Error::SingularChannel {
            axis: 'y',
            value: 1.0 - 4.0 * eps,
            threshold: 4.0 * SINGULAR_EPSILON_TOL,
        });
    }
    divide_channels(&two_collision_channel(eps)?, &first_collision_channel(eps)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Markovian,
    WeakNM,
    StrongNM,
    Singular,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Markovian => "markovian",
            Classification::WeakNM => "weak",
            Classification::StrongNM => "strong",
            Classification::Singular => "singular",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Divisibility classification of the intermediate map.
///
/// When the intermediate map does not exist because the first map
/// annihilates a Bloch component that the second map restores, the verdict is
/// `StrongNM` with `max_abs_bloch_eigenvalue = ∞` and
/// `min_choi_eigenvalue = −∞`: trace distance grows between the two steps,
/// which no positive map can produce. When both maps annihilate the same
/// component the factorisation is ambiguous and the verdict is `Singular`
/// with NaN diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisibilityVerdict {
    pub classification: Classification,
    pub min_choi_eigenvalue: f64,
    pub max_abs_bloch_eigenvalue: f64,
}

pub fn classify(eps: f64) -> Result<DivisibilityVerdict> {
    classify_with_tol(eps, DEFAULT_TOL)
}

pub fn classify_with_tol(eps: f64, tol: f64) -> Result<DivisibilityVerdict> {
    check_epsilon(eps)?;
    if eps == 0.0 {
        return Ok(verdict_for(&PauliChannel::IDENTITY, tol));
    }
    if (eps - 0.25).abs() <= SINGULAR_EPSILON_TOL {
        return Ok(DivisibilityVerdict {
            classification: Classification::Singular,
            min_choi_eigenvalue: f64::NAN,
            max_abs_bloch_eigenvalue: f64::NAN,
        });
    }
    let earlier = first_collision_channel(eps)?;
    let later = two_collision_channel(eps)?;
    match divide_channels(&later, &earlier) {
        Ok(mu) => Ok(verdict_for(&mu, tol)),
        Err(Error::SingularChannel { .. }) => {
            let restored = earlier
                .eigenvalues()
                .iter()
                .zip(later.eigenvalues())
                .any(|(e, l)| e.abs() <= SINGULAR_THRESHOLD && l.abs() > SINGULAR_THRESHOLD);
            Ok(if restored {
                DivisibilityVerdict {
                    classification: Classification::StrongNM,
                    min_choi_eigenvalue: f64::NEG_INFINITY,
                    max_abs_bloch_eigenvalue: f64::INFINITY,
                }
            } else {
                DivisibilityVerdict {
                    classification: Classification::Singular,
                    min_choi_eigenvalue: f64::NAN,
                    max_abs_bloch_eigenvalue: f64::NAN,
                }
            })
        }
        Err(e) => Err(e),
    }
}

fn verdict_for(mu: &PauliChannel, tol: f64) -> DivisibilityVerdict {
    let classification = if !is_positive(mu, tol) {
        Classification::StrongNM
    } else if !is_cp(mu, tol) {
        Classification::WeakNM
    } else {
        Classification::Markovian
    };
    DivisibilityVerdict {
        classification,
        min_choi_eigenvalue: kraus_weights(mu).min(),
        max_abs_bloch_eigenvalue: mu.max_abs_eigenvalue(),
    }
}

/// Locates the weak→strong boundary by bisection on `(0, ½)`.
///
/// The strong predicate is evaluated on the intermediate map's x eigenvalue,
/// `λx(Φ_{t2,0}) / λx(Φ_{t1,0}) > 1`. Only the y component is singular at
/// `ε = ¼`, so this predicate is continuous there.
pub fn find_transition() -> f64 {
    let strong = |eps: f64| {
        let later = two_collision_channel(eps).expect("eps in range");
        let earlier = first_collision_channel(eps).expect("eps in range");
        later.x / earlier.x > 1.0
    };
    let (mut lo, mut hi) = (1e-6, EPSILON_MAX - 1e-6);
    debug_assert!(!strong(lo) && strong(hi));
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if strong(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Concurrences `(C1, C2)` of `Φ+` after one and two collisions on one half.
pub fn entanglement_dynamics(eps: f64) -> Result<(f64, f64)> {
    let phi = DensityMatrix::bell(BellState::PhiPlus);
    let c1 = concurrence(&apply_channel_one_sided(
        &first_collision_channel(eps)?,
        &phi,
    )?)?;
    let c2 = concurrence(&apply_channel_one_sided(
        &two_collision_channel(eps)?,
        &phi,
    )?)?;
    Ok((c1, c2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close3(ch: PauliChannel, want: [f64; 3], tol: f64) -> bool {
        ch.eigenvalues()
            .iter()
            .zip(want)
            .all(|(a, b)| (a - b).abs() <= tol)
    }

    #[test]
    fn probabilities() {
        let p = joint_probabilities(0.0).unwrap();
        assert_eq!(p.p[0][0], 1.0);
        assert_eq!(p.total(), 1.0);

        let p = joint_probabilities(0.1).unwrap();
        assert!((p.p[0][0] - 0.64).abs() < 1e-15);
        for v in [p.p[0][1], p.p[0][2], p.p[1][0], p.p[2][0]] {
            assert!((v - 0.08).abs() < 1e-15);
        }
        assert!((p.p[1][1] - 0.02).abs() < 1e-15 && (p.p[2][2] - 0.02).abs() < 1e-15);
        assert_eq!(p.p[1][2], 0.0);
        assert!((p.total() - 1.0).abs() < 1e-15);

        let p = joint_probabilities(0.5).unwrap();
        assert_eq!(p.p[1][1], 0.5);
        assert_eq!(p.p[2][2], 0.5);
        assert_eq!(p.p[0][0] + p.p[0][1] + p.p[1][0], 0.0);

        assert!(joint_probabilities(-0.01).is_err());
        assert!(joint_probabilities(0.51).is_err());
    }

    #[test]
    fn channels() {
        assert!(close3(
            first_collision_channel(0.0).unwrap(),
            [1.0, 1.0, 1.0],
            0.0
        ));
        assert!(close3(
            first_collision_channel(0.1).unwrap(),
            [0.8, 0.6, 0.8],
            1e-15
        ));
        assert!(close3(
            first_collision_channel(0.25).unwrap(),
            [0.5, 0.0, 0.5],
            1e-15
        ));

        assert!(close3(
            two_collision_channel(0.0).unwrap(),
            [1.0, 1.0, 1.0],
            0.0
        ));
        assert!(close3(
            two_collision_channel(0.5).unwrap(),
            [1.0, 1.0, 1.0],
            1e-15
        ));
        assert!(close3(
            two_collision_channel(0.1).unwrap(),
            [0.68, 0.36, 0.68],
            1e-15
        ));
        assert!(first_collision_channel(0.7).is_err());
    }

    #[test]
    fn intermediate() {
        assert!(close3(
            intermediate_channel(0.1).unwrap(),
            [0.85, 0.6, 0.85],
            1e-14
        ));
        let mu = intermediate_channel(0.26).unwrap();
        let want = (0.48f64.powi(2) + 4.0 * 0.26f64.powi(2)) / 0.48;
        assert!((mu.x - want).abs() < 1e-14 && (mu.z - want).abs() < 1e-14);
        assert!((mu.x - 1.0433).abs() < 1e-4);
        assert!(matches!(
            intermediate_channel(0.25),
            Err(Error::SingularChannel { .. })
        ));
        assert!(matches!(
            intermediate_channel(0.5),
            Err(Error::SingularChannel { .. })
        ));
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify(0.0).unwrap().classification,
            Classification::Markovian
        );
        let v = classify(0.1).unwrap();
        assert_eq!(v.classification, Classification::WeakNM);
        assert!((v.min_choi_eigenvalue + 0.025).abs() < 1e-14);
        assert!(v.max_abs_bloch_eigenvalue <= 1.0);
        let v = classify(0.3).unwrap();
        assert_eq!(v.classification, Classification::StrongNM);
        assert!(v.max_abs_bloch_eigenvalue > 1.0);
        assert_eq!(
            classify(0.25).unwrap().classification,
            Classification::Singular
        );
        let v = classify(0.5).unwrap();
        assert_eq!(v.classification, Classification::StrongNM);
        assert!(v.max_abs_bloch_eigenvalue > 1.0 && v.min_choi_eigenvalue < 0.0);
        assert_eq!(
            classify(0.25 - 1e-3).unwrap().classification,
            Classification::WeakNM
        );
        assert_eq!(
            classify(0.25 + 1e-3).unwrap().classification,
            Classification::StrongNM
        );
        assert!(classify(0.6).is_err());
    }

    #[test]
    fn transition_at_quarter() {
        assert!((find_transition() - 0.25).abs() < 1e-9);
    }

    #[test]
    fn entanglement_closed_forms() {
        assert_eq!(entanglement_dynamics(0.0).unwrap(), (1.0, 1.0));
        let (c1, c2) = entanglement_dynamics(0.5).unwrap();
        assert!(c1.abs() < 1e-12 && (c2 - 1.0).abs() < 1e-12);
        let (c1, c2) = entanglement_dynamics(0.25).unwrap();
        assert!(c1.abs() < 1e-12 && c2.abs() < 1e-12);
        for i in 0..=100 {
            let eps = 0.5 * i as f64 / 100.0;
            let (c1, c2) = entanglement_dynamics(eps).unwrap();
            let q_i = (1.0 - 2.0 * eps).powi(2) + 4.0 * eps * eps;
            assert!((c1 - (1.0 - 4.0 * eps).max(0.0)).abs() < 1e-12);
            assert!((c2 - (2.0 * q_i - 1.0).max(0.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn no_sigma_y_and_marginals() {
        for i in 0..=50 {
            let eps = 0.01 * i as f64;
            let jp = joint_probabilities(eps).unwrap();
            assert_eq!(jp.effective_weights().y, 0.0);
            let m = jp.first_marginals();
            assert!((m[0] - (1.0 - 2.0 * eps)).abs() < 1e-15);
            assert!((m[1] - eps).abs() < 1e-15 && (m[2] - eps).abs() < 1e-15);
        }
    }
}
