//! Engineered qubit decoherence toolkit.
//!
//! The crate models pure-dephasing qubit dynamics driven by an engineered
//! environment and the diagnostics used to tell memoryless evolution from
//! dynamics with information backflow:
//!
//! - [`qcore`]: small exact quantum primitives (qubit and two-qubit density
//!   matrices, Pauli-diagonal channels, Choi-based CP/P predicates, trace
//!   distance, Wootters concurrence).
//! - [`spectra`]: decoherence functions obtained from engineered frequency
//!   distributions, the dephasing map they induce, the trace-distance
//!   non-Markovianity functional and inverse spectral synthesis.
//! - [`collision`]: a two-step correlated Pauli collision model with a
//!   weak/strong non-Markovianity transition.
//! - [`nvmodel`]: NV-center dephasing controlled by the nuclear-spin
//!   preparation angle, and the single-qubit Deutsch–Jozsa echo protocol.
//! - [`sdc`]: superdense coding through correlated two-photon dephasing.
//! - [`cli`]: the `nmlab` data-generation front end.
//!
//! Parameter sweeps run on rayon when the `parallel` feature is enabled
//! (the default) and sequentially otherwise; results are identical either way.

#![forbid(unsafe_code)]
// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod collision;
pub mod error;
pub mod grid;
pub mod nvmodel;
pub mod qcore;
pub mod sdc;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
