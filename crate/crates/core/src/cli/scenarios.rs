//! Parameter parsing and execution for each scenario.

use std::f64::consts::PI;
use std::fs::File;

use serde_json::{json, Value};

use super::io::{profile_table, read_trajectory, Table};
use super::params::Params;
use super::{RunConfig, RunError, Scenario};
use crate::collision::{self, Classification, EPSILON_MAX};
use crate::error::Error;
use crate::grid::{arange_inclusive, linspace};
use crate::nvmodel::{self, EnvelopeShape, NVParams, NuclearPrep, RdjaConfig, RdjaGate};
use crate::sdc::{self, CorrelatedSpectrum, EncodingScheme};
use crate::spectra::{
    kappa_samples, positive_variation, synthesize_spectrum, Birefringence, Convention,
    DecoherenceTrajectory, DoubleGaussianSpec, SynthesisWarning,
};
use crate::sweep;

pub(crate) enum Plan {
    Fig1 {
        specs: Vec<DoubleGaussianSpec>,
        t: Vec<f64>,
    },
    Fig2 {
        eps: Vec<f64>,
    },
    Fig3 {
        nv: NVParams,
        phis: Vec<f64>,
        nm_phis: Vec<f64>,
        t: Vec<f64>,
    },
    Fig4 {
        spec: CorrelatedSpectrum,
        t: Vec<f64>,
    },
    Fig5 {
        nv: NVParams,
        prep: NuclearPrep,
        t: f64,
        taus: Vec<f64>,
    },
    Fig6 {
        traj: DecoherenceTrajectory,
        biref: Birefringence,
    },
    Classify {
        eps: f64,
    },
    Synth {
        traj: DecoherenceTrajectory,
        biref: Birefringence,
    },
}

pub(crate) struct Outcome {
    pub tables: Vec<(String, Table)>,
    pub summary: Value,
}

fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

fn non_negative(x: f64) -> bool {
    x >= 0.0 && x.is_finite()
}

fn convention(p: &mut Params) -> Option<Convention> {
    p.choice("convention", &["angular", "two_pi"])
        .map(|c| match c {
            "two_pi" => Convention::TwoPi,
            _ => Convention::Angular,
        })
}

/// `t_points` samples on `[0, t_max]`.
fn time_grid(p: &mut Params, max_key: &'static str, points_key: &'static str) -> Option<Vec<f64>> {
    let t_max = p.f64_where(max_key, &format!("{max_key} must be > 0"), positive);
    let n = p.count(points_key, 2);
    Some(linspace(0.0, t_max?, n?))
}

fn nv_params(p: &mut Params) -> Option<NVParams> {
    let a = p.f64_where("A", "A must be > 0", positive);
    let envelope_t = p.f64_or_inf("envelope_T");
    if envelope_t.is_some_and(|x| !(x > 0.0)) {
        p.violate("envelope_T", "envelope_T must be > 0");
    }
    let shape = p
        .choice("envelope_shape", &["gaussian", "exponential"])
        .map(|s| match s {
            "exponential" => EnvelopeShape::Exponential,
            _ => EnvelopeShape::Gaussian,
        });
    NVParams::new(a?, envelope_t?, shape?).ok()
}

fn load_trajectory(
    p: &mut Params,
    config: &RunConfig,
) -> Result<Option<DecoherenceTrajectory>, RunError> {
    let Some(input) = p.string("input") else {
        return Ok(None);
    };
    let path = config.resolve(input);
    let file = File::open(&path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    match read_trajectory(file) {
        Ok(traj) => {
            if traj.times()[0] != 0.0 {
                p.violate("input", "trajectory must start at t = 0");
                return Ok(None);
            }
            Ok(Some(traj))
        }
        Err(Error::Io(e)) => Err(RunError::Io(format!("{}: {e}", path.display()))),
        Err(e) => {
            p.violate("input", e.to_string());
            Ok(None)
        }
    }
}

fn birefringence(p: &mut Params) -> Option<Birefringence> {
    let dn = p.f64_where("delta_n", "delta_n must be finite and non-zero", |x| {
        x != 0.0 && x.is_finite()
    });
    let conv = convention(p);
    Some(Birefringence {
        delta_n: dn?,
        convention: conv?,
    })
}

impl Plan {
    pub fn build(config: &RunConfig) -> Result<Plan, RunError> {
        let mut p = Params::new(&config.parameters);
        let plan = match config.scenario {
            Scenario::Fig1 => {
                let a = p.f64_list("A_theta", "A_theta values must be ≥ 0", non_negative);
                let sigma = p.f64_where("sigma", "sigma must be > 0", positive);
                let dw = p.f64_where("delta_omega", "delta_omega must be ≥ 0", non_negative);
                let biref = birefringence(&mut p);
                let t = time_grid(&mut p, "t_max", "t_points");
                (|| {
                    let (sigma, dw, biref) = (sigma?, dw?, biref?);
                    let specs = a?
                        .iter()
                        .map(|a| {
                            DoubleGaussianSpec::new(*a, sigma, dw, biref.delta_n)
                                .map(|s| s.with_convention(biref.convention))
                                .ok()
                        })
                        .collect::<Option<Vec<_>>>()?;
                    Some(Plan::Fig1 { specs, t: t? })
                })()
            }
            Scenario::Fig2 => {
                let lo = p.f64_where("epsilon_min", "epsilon must be ≥ 0", |x| x >= 0.0);
                let hi = p.f64_where("epsilon_max", "epsilon must be ≤ 0.5", |x| {
                    x <= EPSILON_MAX
                });
                let step = p.f64_where("epsilon_step", "epsilon_step must be > 0", positive);
                match (lo, hi, step) {
                    (Some(lo), Some(hi), Some(_)) if lo > hi => {
                        p.violate("epsilon_max", "epsilon_max must be ≥ epsilon_min");
                        None
                    }
                    (Some(lo), Some(hi), Some(step)) => arange_inclusive(lo, hi, step)
                        .ok()
                        .map(|eps| Plan::Fig2 { eps }),
                    _ => None,
                }
            }
            Scenario::Fig3 => {
                let nv = nv_params(&mut p);
                let in_range = |x: f64| (0.0..=PI).contains(&x);
                let phis = p.f64_list("phi", "phi must be in [0, pi]", in_range);
                let nm_lo = p.f64_where("phi_nm_min", "phi must be in [0, pi]", in_range);
                let nm_hi = p.f64_where("phi_nm_max", "phi must be in [0, pi]", in_range);
                let nm_n = p.count("phi_nm_points", 1);
                let t = time_grid(&mut p, "t_max", "t_points");
                if let (Some(lo), Some(hi)) = (nm_lo, nm_hi) {
                    if lo > hi {
                        p.violate("phi_nm_max", "phi_nm_max must be ≥ phi_nm_min");
                    }
                }
                (|| {
                    Some(Plan::Fig3 {
                        nv: nv?,
                        phis: phis?,
                        nm_phis: linspace(nm_lo?, nm_hi?, nm_n?),
                        t: t?,
                    })
                })()
            }
            Scenario::Fig4 => {
                let sigma = p.f64_where("sigma", "sigma must be > 0", positive);
                let k = p.f64_where("K", "K in [-1, 1]", |x| (-1.0..=1.0).contains(&x));
                let dn = p.f64_where("delta_n", "delta_n must be finite", f64::is_finite);
                let t = time_grid(&mut p, "t_max", "t_points");
                (|| {
                    Some(Plan::Fig4 {
                        spec: CorrelatedSpectrum::new(sigma?, k?, dn?).ok()?,
                        t: t?,
                    })
                })()
            }
            Scenario::Fig5 => {
                let nv = nv_params(&mut p);
                let phi = p.f64_where("phi", "phi must be in [0, pi]", |x| (0.0..=PI).contains(&x));
                let t = p.f64_where("t", "t must be ≥ 0", non_negative);
                let taus = time_grid(&mut p, "tau_max", "tau_points");
                (|| {
                    Some(Plan::Fig5 {
                        nv: nv?,
                        prep: NuclearPrep::new(phi?).ok()?,
                        t: t?,
                        taus: taus?,
                    })
                })()
            }
            Scenario::Fig6 | Scenario::Synth => {
                let traj = load_trajectory(&mut p, config)?;
                let biref = birefringence(&mut p);
                match (traj, biref) {
                    (Some(traj), Some(biref)) if config.scenario == Scenario::Fig6 => {
                        Some(Plan::Fig6 { traj, biref })
                    }
                    (Some(traj), Some(biref)) => Some(Plan::Synth { traj, biref }),
                    _ => None,
                }
            }
            Scenario::Classify => p
                .f64_where("epsilon", "epsilon must be in [0, 0.5]", |x| {
                    (0.0..=EPSILON_MAX).contains(&x)
                })
                .map(|eps| Plan::Classify { eps }),
        };
        let violations = p.finish();
        match plan {
            Some(plan) if violations.is_empty() => Ok(plan),
            _ if violations.is_empty() => Err(RunError::Config(vec![super::Violation::new(
                "parameters",
                "inconsistent parameter set",
            )])),
            _ => Err(RunError::Config(violations)),
        }
    }

    pub fn execute(self) -> Result<Outcome, RunError> {
        match self {
            Plan::Fig1 { specs, t } => Ok(fig1(&specs, &t)),
            Plan::Fig2 { eps } => fig2(&eps),
            Plan::Fig3 {
                nv,
                phis,
                nm_phis,
                t,
            } => fig3(&nv, &phis, &nm_phis, &t),
            Plan::Fig4 { spec, t } => fig4(&spec, &t),
            Plan::Fig5 { nv, prep, t, taus } => fig5(&nv, &prep, t, &taus),
            Plan::Fig6 { traj, biref } => synth(&traj, biref, true),
            Plan::Classify { eps } => classify(eps),
            Plan::Synth { traj, biref } => synth(&traj, biref, false),
        }
    }
}

fn domain(e: Error) -> RunError {
    RunError::Config(vec![super::Violation::new("parameters", e.to_string())])
}

fn fig1(specs: &[DoubleGaussianSpec], t: &[f64]) -> Outcome {
    let mut table = Table::new(&["t", "A_theta", "kappa_mag"]);
    let mut blp = Vec::with_capacity(specs.len());
    for spec in specs {
        let mags = sweep::map(t, |t| spec.kappa_mag(*t));
        for (t, m) in t.iter().zip(&mags) {
            table.push_f64(&[*t, spec.a_theta, *m]);
        }
        blp.push(json!({
            "A_theta": spec.a_theta,
            "blp": positive_variation(&mags),
        }));
    }
    Outcome {
        tables: vec![("fig1.csv".into(), table)],
        summary: json!({ "blp": blp }),
    }
}

fn fig2(eps: &[f64]) -> Result<Outcome, RunError> {
    let rows = sweep::map(eps, |e| -> crate::Result<_> {
        let verdict = collision::classify(*e)?;
        let (c1, c2) = collision::entanglement_dynamics(*e)?;
        Ok((*e, c1, c2, verdict.classification))
    });
    let mut table = Table::new(&["epsilon", "C1", "C2", "C2_minus_C1", "classification"]);
    let mut counts = [0usize; 4];
    for row in rows {
        let (e, c1, c2, class) = row.map_err(domain)?;
        counts[class as usize] += 1;
        let mut fields: Vec<String> = [e, c1, c2, c2 - c1]
            .iter()
            .map(|x| super::io::format_f64(*x))
            .collect();
        fields.push(class.label().to_string());
        table.push(fields);
    }
    let summary = json!({
        "transition_epsilon": collision::find_transition(),
        "counts": {
            Classification::Markovian.label(): counts[0],
            Classification::WeakNM.label(): counts[1],
            Classification::StrongNM.label(): counts[2],
            Classification::Singular.label(): counts[3],
        },
    });
    Ok(Outcome {
        tables: vec![("fig2.csv".into(), table)],
        summary,
    })
}

fn fig3(nv: &NVParams, phis: &[f64], nm_phis: &[f64], t: &[f64]) -> Result<Outcome, RunError> {
    let mut bloch = Table::new(&["t", "phi", "r"]);
    for phi in phis {
        let prep = NuclearPrep::new(*phi).map_err(domain)?;
        let r = sweep::map(t, |t| nvmodel::bloch_magnitude(nv, &prep, *t));
        for (t, r) in t.iter().zip(r) {
            bloch.push_f64(&[*t, *phi, r]);
        }
    }
    let nm = nvmodel::nm_measure_phi(nv, nm_phis, t).map_err(domain)?;
    let mut nm_table = Table::new(&["phi", "N_prime"]);
    for (phi, n) in &nm {
        nm_table.push_f64(&[*phi, *n]);
    }
    let max = nm.iter().map(|x| x.1).fold(0.0, f64::max);
    Ok(Outcome {
        tables: vec![
            ("fig3_bloch.csv".into(), bloch),
            ("fig3_nm.csv".into(), nm_table),
        ],
        summary: json!({ "max_N_prime": max }),
    })
}

fn fig4(spec: &CorrelatedSpectrum, t: &[f64]) -> Result<Outcome, RunError> {
    use EncodingScheme::{FourState, ThreeState};
    let four = sdc::fig4_curve(spec, FourState, t).map_err(domain)?;
    let three = sdc::fig4_curve(spec, ThreeState, t).map_err(domain)?;
    let alice4 = sdc::alice_only_curve(spec, FourState, t).map_err(domain)?;
    let alice3 = sdc::alice_only_curve(spec, ThreeState, t).map_err(domain)?;
    let mut table = Table::new(&[
        "t_A",
        "c_A",
        "MI_4state",
        "MI_3state",
        "MI_4state_alice_only",
        "MI_3state_alice_only",
        "capacity",
    ]);
    let mut max_gap = f64::NEG_INFINITY;
    for (i, t) in t.iter().enumerate() {
        let c_a = four[i].0;
        let cap = sdc::capacity(c_a, spec.k).map_err(domain)?;
        max_gap = max_gap.max(four[i].1 - cap);
        table.push_f64(&[
            *t,
            c_a,
            four[i].1,
            three[i].1,
            alice4[i].1,
            alice3[i].1,
            cap,
        ]);
    }
    Ok(Outcome {
        tables: vec![("fig4.csv".into(), table)],
        summary: json!({ "max_MI_minus_capacity": max_gap }),
    })
}

fn fig5(nv: &NVParams, prep: &NuclearPrep, t: f64, taus: &[f64]) -> Result<Outcome, RunError> {
    let rows = sweep::map(taus, |tau| {
        let p0 = RdjaGate::ALL
            .map(|gate| nvmodel::rdja_p0(nv, prep, &RdjaConfig { t, tau: *tau, gate }));
        (*tau, p0)
    });
    let mut table = Table::new(&["tau", "P0_U1", "P0_U2", "P0_U3", "P0_U4", "contrast"]);
    let (mut best_tau, mut best) = (f64::NAN, f64::NEG_INFINITY);
    for (tau, p0) in &rows {
        let contrast = p0[0] - p0[2];
        if contrast > best {
            (best_tau, best) = (*tau, contrast);
        }
        table.push_f64(&[*tau, p0[0], p0[1], p0[2], p0[3], contrast]);
    }
    Ok(Outcome {
        tables: vec![("fig5.csv".into(), table)],
        summary: json!({
            "immediate_contrast": nvmodel::rdja_contrast_immediate(nv, prep, t),
            "best_tau": best_tau,
            "best_contrast": best,
        }),
    })
}

fn classify(eps: f64) -> Result<Outcome, RunError> {
    let verdict = collision::classify(eps).map_err(domain)?;
    if verdict.classification == Classification::Singular {
        return Err(RunError::Singular(format!(
            "intermediate map is singular at epsilon = {eps}: the first collision map annihilates the y Bloch component"
        )));
    }
    let (c1, c2) = collision::entanglement_dynamics(eps).map_err(domain)?;
    let mut table = Table::new(&[
        "epsilon",
        "classification",
        "min_choi_eigenvalue",
        "max_abs_bloch_eigenvalue",
        "C1",
        "C2",
    ]);
    let f = super::io::format_f64;
    table.push(vec![
        f(eps),
        verdict.classification.label().into(),
        f(verdict.min_choi_eigenvalue),
        f(verdict.max_abs_bloch_eigenvalue),
        f(c1),
        f(c2),
    ]);
    Ok(Outcome {
        tables: vec![("classify.csv".into(), table)],
        summary: json!({ "classification": verdict.classification.label() }),
    })
}

fn synth(
    traj: &DecoherenceTrajectory,
    biref: Birefringence,
    simulate: bool,
) -> Result<Outcome, RunError> {
    let syn = synthesize_spectrum(traj, biref).map_err(domain)?;
    let warnings: Vec<Value> = syn
        .warnings
        .iter()
        .map(|w| match w {
            SynthesisWarning::TruncatedWindow { final_magnitude } => {
                json!({ "kind": "truncated_window", "final_magnitude": final_magnitude })
            }
            SynthesisWarning::RoundTripMismatch { max_error } => {
                json!({ "kind": "round_trip_mismatch", "max_error": max_error })
            }
        })
        .collect();
    let summary = json!({
        "round_trip_error": syn.round_trip_error,
        "amplitude_norm": syn.amplitude_norm,
        "realizable": syn.is_realizable(),
        "warnings": warnings,
    });
    let prefix = if simulate { "fig6" } else { "synth" };
    let mut tables = vec![(
        format!("{prefix}_spectrum.csv"),
        profile_table(&syn.profile),
    )];
    if simulate {
        let out = kappa_samples(&syn.profile, biref, traj.times());
        let mut table = Table::new(&[
            "t",
            "re_kappa_target",
            "im_kappa_target",
            "re_kappa_sim",
            "im_kappa_sim",
            "abs_kappa_sim",
        ]);
        for ((t, k_in), k_out) in traj.times().iter().zip(traj.kappa()).zip(&out) {
            table.push_f64(&[*t, k_in.re, k_in.im, k_out.re, k_out.im, k_out.norm()]);
        }
        tables.push(("fig6_kappa.csv".into(), table));
    }
    Ok(Outcome { tables, summary })
}
