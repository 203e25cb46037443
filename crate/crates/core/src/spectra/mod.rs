//! Spectrum functionals `λ_z` of billiards and the low parts of the spectra
//! `𝓜∞`, `𝓜ᵢ`, `𝓜ρ` and `𝓜₂ᵢ`.

mod families;
mod lambda;
mod lemmas;
mod low;
mod mu;
mod point;

pub use families::{
    a_ell, a_ell_lambda_rho, b_ell, c0, c_exceptional, c_half, d_ell, d_ell_lambda, k1, k2, k3, k_ell,
    k_ell_closed_form_mu, k_ell_r1, mu_threshold, unit_21,
};
pub use lambda::{
    form_billiard, improper_alpha, lambda_i, lambda_i_profile, lambda_inf, lambda_point, nu_infimum,
    nu_infimum_one_orientation, sequence_billiard, trajectory_translates, vertical_billiard, Certificate, SpectrumId,
    SpectrumPoint,
};
pub use lemmas::{
    classify_exceptional, lemma_catalogue, pattern_bound, Classification, Entry, LemmaBound, Pattern, PatternCertificate,
};
pub use low::{
    approximants, lambda_inf_table, markov_numbers, markov_triples, markov_value, markov_witness, spectrum_low,
    MarkovTriple,
};
pub use mu::{functional_value, mu_profile, sup_sum, Functional, FunctionalInfimum, Infimum, MuProfile};
pub use point::{
    improper_bound, quaternary_eval, quaternary_min_brute, sinh_delta, sinh_denominator, sinh_numerator, PointForm,
};

use thiserror::Error;

use crate::billiard::BilliardError;
use crate::cfrac::CfError;
use crate::exact::ExactError;
use crate::forms::FormError;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("left and right tails lie in different quadratic fields")]
    MixedFields,
    #[error("tail domination could not be certified")]
    Unresolved,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("not proven: {0}")]
    NotProven(String),
    #[error(transparent)]
    Exact(ExactError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Billiard(#[from] BilliardError),
    #[error(transparent)]
    Cf(#[from] CfError),
}

impl SpectraError {
    pub(crate) fn from_exact(e: ExactError) -> Self {
        match e {
            ExactError::IncompatibleRadicands(..) => SpectraError::MixedFields,
            e => SpectraError::Exact(e),
        }
    }
}

impl From<ExactError> for SpectraError {
    fn from(e: ExactError) -> Self {
        SpectraError::from_exact(e)
    }
}
