//! Verification engine for prime-power congruences on sums of central
//! binomial coefficients.

pub mod checks;
pub mod exactq;
pub mod modring;
pub mod padic_gamma;
pub mod primes;
pub mod sequences;
pub mod sweep;
