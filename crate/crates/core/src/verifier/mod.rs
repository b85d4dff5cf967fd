//! Independent numerical checks of frame bounds and certificates: exact inner
//! products of B-spline atoms, Gram spectra, perturbation norms, finite-section
//! verification, the frame algorithm, and the Fourier-side duality.

mod atoms;
mod duality;
mod perturbation;
mod protocol;
mod reconstruct;
mod spectrum;

pub use atoms::{cross_gram, gram_entry, gram_matrix, Atom, AtomSpec, GramMatrix, TensorAtom};
pub use duality::{check_plancherel, sinc_side_entry, sinc_tail_bound, DualityReport, DEFAULT_HALF_WIDTH};
pub use perturbation::{
    exact_perturbation_norm, perturbation_operator_norm_bspline, perturbation_trials, PerturbationReport,
    PerturbationTrial, DEFAULT_OPERATOR_SHIFTS,
};
pub use protocol::{
    sample_dim, verify_certificate, DimSample, DimSpec, SubfamilyCheck, TestSignalCheck, VerificationReport,
    VerifyOptions,
};
pub use reconstruct::{
    frame_reconstruct, DiscreteFamily, Grid, ReconstructionReport, DEFAULT_SAMPLES_PER_UNIT,
};
pub use spectrum::{gram_spectrum_extrema, SpectrumExtrema, DEFAULT_SPECTRUM_TOL, DENSE_LIMIT};
