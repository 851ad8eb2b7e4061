//! Composite statistics of an `N`-qubit readout and the figures of merit
//! derived from them.
//!
//! The input qubit is copied onto `N − 1` ancillas with CNOTs and every
//! qubit is read out for the same duration `t`. The total photon count over
//! all qubits is then thresholded.

mod merit;
mod model;
mod solve;

pub use merit::{
    gaussian_scheme_snr, mi_at, mi_optimal, poisson_error_bounds, snr_direct, snr_general, threshold_analytic,
    ErrorBounds, MeritPoint, ThresholdAnalysis,
};
pub use model::{
    CompositeStats, InjectedModel, ReadoutModel, SchemeConfig, SingleQubitLaws, TabulatedLaws, MAX_QUBITS,
    MIXTURE_CUTOFF,
};
pub use solve::{estimate_time_exponent, peak_snr, peak_snr_with, time_to_snr, PeakOptions, PeakSnr, TimeToSnr};
