//! Special functions: log-gamma, zeta values and exponential sections.

mod gamma;
mod sections;
mod zeta;

pub use gamma::{log_gamma, stirling_remainder, STIRLING_MIN};
pub(crate) use gamma::log_gamma_unchecked;
pub use sections::{
    cosh_section, empirical_threshold, exp_section, f_section, lemma4_check,
    lemma4_check_on_grid, ln_exp_minus_section, ln_scaled_cosh_section, Lemma4Report,
    SectionBoundParams, DEFAULT_GRID_POINTS,
};
pub use zeta::{zeta, zeta_three_halves, Constants};
