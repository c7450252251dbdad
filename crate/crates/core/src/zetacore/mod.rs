//! Hurwitz and Riemann zeta, digamma and polygamma, and the Hasse series.

mod constants;
mod hasse;
mod hurwitz;
mod polygamma;

pub use constants::{hasse_constant, ConstantValue, HasseConstant};
pub use hasse::{
    hasse1_zeta, hasse1_zeta_prime, hasse2_zeta, hasse2_zeta_detail, hasse_log_sum, hasse_log_sum_detail, Hasse2Config,
    Hasse2Sum, HasseSum, DEFAULT_TERMS, MIN_S,
};
pub use hurwitz::{
    choose_config, hurwitz_em, hurwitz_zeta, hurwitz_zeta_real, riemann_zeta, riemann_zeta_real, EulerMaclaurinConfig,
};
pub use polygamma::{digamma, polygamma, polygamma_tol};
