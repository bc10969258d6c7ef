//! Number-theoretic and special-function primitives.

mod gamma;
mod moebius;
mod zeros;
mod zeta;

pub use gamma::{gamma, gamma_complex, ln_gamma, ln_gamma_ratio, log_gamma_complex, reflection_product};
pub use moebius::{for_each_segment, MoebiusTable, CACHE_MAGIC};
pub use zeros::{NontrivialZero, ZeroSet, KNOWN_ZERO_ORDINATES};
pub use zeta::{
    eta_borwein, hurwitz_tail, power_sum, zeta_complex, zeta_derivative, zeta_euler_maclaurin,
    zeta_prime_at_zero, zeta_prime_trivial, zeta_real, DERIVATIVE_AGREEMENT, DERIVATIVE_STEPS,
    MAX_TRIVIAL_INDEX,
};
