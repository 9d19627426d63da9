//! Exact arithmetic in `Z/p^k`.
//!
//! [`Modulus`] fixes an odd prime `p` and an exponent `k`; [`Residue`] is a
//! canonical element of the ring it defines. [`ValuedResidue`] carries
//! quantities of the form `p^e * u` whose unit part is only known to finite
//! precision, which is what terminating series with `p` in a denominator need.
//!
//! The hot loops of the sweep use the [`RingOps`] trait instead of
//! [`Residue`], so that the Montgomery backend can be swapped in for moduli
//! below `2^63`.

mod fast;
mod residue;
mod valued;

pub use fast::{AnyRing, Montgomery, RingOps, WideRing};
pub use residue::{least_nonneg_residue, legendre, rational_to_residue, Modulus, Residue};
pub use valued::{ValuedResidue, VrOp};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: String, right: String },
    #[error("{value} is not invertible modulo a power of {p}")]
    NotInvertible { value: String, p: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("{p}^{k} does not fit below 2^127")]
    ModulusTooLarge { p: u64, k: u32 },
    #[error("p-adic precision exhausted")]
    PrecisionExhausted,
    #[error("negative valuation {0} cannot be reduced to a residue")]
    NegativeValuation(i64),
    #[error("division by an exact zero")]
    DivisionByZero,
}

/// `p^k` if it fits below `2^127`.
pub fn checked_prime_power(p: u64, k: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p as u128)?;
        if acc >= 1u128 << 127 {
            return None;
        }
    }
    Some(acc)
}

/// `a * b mod m` for `a, b < m < 2^127`.
#[inline]
pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a * b) % m;
    }
    // shift-add; 2r < 2^128 because m < 2^127
    let mut r: u128 = 0;
    for i in (0..128 - b.leading_zeros()).rev() {
        r <<= 1;
        if r >= m {
            r -= m;
        }
        if (b >> i) & 1 == 1 {
            r += a;
            if r >= m {
                r -= m;
            }
        }
    }
    r
}

#[inline]
pub(crate) fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub(crate) fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by extended Euclid; `None` when `gcd(a, m) != 1`.
pub(crate) fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a % m, m);
    let (mut old_s, mut s): (i128, i128) = (1, 0);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - (q as i128) * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(if old_s < 0 { m - (old_s.unsigned_abs() % m) } else { old_s as u128 % m })
}
