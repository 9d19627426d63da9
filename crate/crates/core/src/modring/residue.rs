use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{add_mod, checked_prime_power, inv_mod, mul_mod, pow_mod, sub_mod, ModError};
use crate::primes::is_prime;

/// The ring `Z/p^k` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    k: u32,
    m: u128,
}

impl Modulus {
    /// Builds `Z/p^k`, verifying that `p` is an odd prime and `p^k < 2^127`.
    pub fn new(p: u64, k: u32) -> Result<Self, ModError> {
        if p < 3 || !is_prime(p) {
            return Err(ModError::NotOddPrime(p));
        }
        Self::same_prime(p, k)
    }

    /// Same prime, different exponent. `p` is trusted.
    pub(crate) fn same_prime(p: u64, k: u32) -> Result<Self, ModError> {
        if k == 0 {
            return Err(ModError::ZeroExponent);
        }
        let m = checked_prime_power(p, k).ok_or(ModError::ModulusTooLarge { p, k })?;
        Ok(Modulus { p, k, m })
    }

    pub fn with_exponent(&self, k: u32) -> Result<Self, ModError> {
        Self::same_prime(self.p, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn m(&self) -> u128 {
        self.m
    }

    pub fn zero(&self) -> Residue {
        Residue { value: 0, modulus: *self }
    }

    pub fn one(&self) -> Residue {
        Residue { value: 1, modulus: *self }
    }

    pub fn from_u128(&self, v: u128) -> Residue {
        Residue { value: v % self.m, modulus: *self }
    }

    pub fn from_u64(&self, v: u64) -> Residue {
        self.from_u128(v as u128)
    }

    pub fn from_i128(&self, v: i128) -> Residue {
        let r = v.rem_euclid(self.m as i128) as u128;
        Residue { value: r, modulus: *self }
    }

    pub fn from_i64(&self, v: i64) -> Residue {
        self.from_i128(v as i128)
    }

    /// `num / den` in this ring.
    pub fn ratio(&self, num: i128, den: i128) -> Result<Residue, ModError> {
        rational_to_residue(num, den, self)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

/// A canonical element of `Z/p^k`: `0 <= value < p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u128,
    modulus: Modulus,
}

impl Residue {
    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same(&self, other: &Residue) -> Result<(), ModError> {
        if self.modulus != other.modulus {
            return Err(ModError::ModulusMismatch { left: self.modulus.to_string(), right: other.modulus.to_string() });
        }
        Ok(())
    }

    pub fn try_add(self, rhs: Residue) -> Result<Residue, ModError> {
        self.same(&rhs)?;
        Ok(Residue { value: add_mod(self.value, rhs.value, self.modulus.m), ..self })
    }

    pub fn try_sub(self, rhs: Residue) -> Result<Residue, ModError> {
        self.same(&rhs)?;
        Ok(Residue { value: sub_mod(self.value, rhs.value, self.modulus.m), ..self })
    }

    pub fn try_mul(self, rhs: Residue) -> Result<Residue, ModError> {
        self.same(&rhs)?;
        Ok(Residue { value: mul_mod(self.value, rhs.value, self.modulus.m), ..self })
    }

    pub fn inv(self) -> Result<Residue, ModError> {
        match inv_mod(self.value, self.modulus.m) {
            Some(value) => Ok(Residue { value, ..self }),
            None => Err(ModError::NotInvertible { value: self.value.to_string(), p: self.modulus.p }),
        }
    }

    pub fn try_div(self, rhs: Residue) -> Result<Residue, ModError> {
        self.try_mul(rhs.inv()?)
    }

    pub fn pow(self, n: u128) -> Residue {
        Residue { value: pow_mod(self.value, n, self.modulus.m), ..self }
    }

    /// Multiplies by a small signed integer.
    pub fn scale(self, c: i64) -> Residue {
        self * self.modulus.from_i64(c)
    }

    /// Image under `Z/p^k -> Z/p^j` for `j <= k`.
    pub fn reduce_to(self, j: u32) -> Result<Residue, ModError> {
        if j > self.modulus.k {
            return Err(ModError::PrecisionExhausted);
        }
        let modulus = self.modulus.with_exponent(j)?;
        Ok(Residue { value: self.value % modulus.m, modulus })
    }

    /// Representative in `(-m/2, m/2]`.
    pub fn signed(&self) -> i128 {
        let half = self.modulus.m / 2;
        if self.value > half {
            -((self.modulus.m - self.value) as i128)
        } else {
            self.value as i128
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.try_add(rhs).expect("residue addition across moduli")
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.try_sub(rhs).expect("residue subtraction across moduli")
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.try_mul(rhs).expect("residue multiplication across moduli")
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue { value: sub_mod(0, self.value, self.modulus.m), ..self }
    }
}

/// `num * den^-1 mod p^k`.
pub fn rational_to_residue(num: i128, den: i128, modulus: &Modulus) -> Result<Residue, ModError> {
    let d = modulus.from_i128(den);
    let d_inv = d.inv().map_err(|_| ModError::NotInvertible { value: den.to_string(), p: modulus.p })?;
    Ok(modulus.from_i128(num) * d_inv)
}

/// Legendre symbol `(a/p)` by the binary Jacobi algorithm.
///
/// Debug builds cross-check the result against Euler's criterion.
pub fn legendre(a: i128, p: u64) -> i8 {
    debug_assert!(p % 2 == 1);
    let a0 = a.rem_euclid(p as i128) as u128;
    let mut n = p as u128;
    let mut a = a0;
    let mut sign: i8 = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    let out = if n == 1 { sign } else { 0 };
    debug_assert_eq!(
        out,
        match pow_mod(a0, (p as u128 - 1) / 2, p as u128) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    );
    out
}

/// The integer in `[0, p)` congruent to `num / den` modulo `p`.
pub fn least_nonneg_residue(num: i128, den: i128, p: u64) -> Result<u64, ModError> {
    let modulus = Modulus::same_prime(p, 1)?;
    Ok(rational_to_residue(num, den, &modulus)?.value() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i128, p: u64, k: u32) -> Residue {
        Modulus::new(p, k).unwrap().from_i128(v)
    }

    #[test]
    fn ring_arith_examples() {
        assert_eq!((r(3, 5, 2) + r(24, 5, 2)).value(), 2);
        assert_eq!((r(0, 7, 2) * r(17, 7, 2)).value(), 0);
        assert_eq!((r(10, 11, 2) - r(21, 11, 2)).value(), 110);
        assert_eq!((-r(1, 5, 2)).value(), 24);
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = r(1, 5, 2).try_add(r(1, 5, 3)).unwrap_err();
        assert!(matches!(err, ModError::ModulusMismatch { .. }));
        assert!(r(1, 5, 2).try_mul(r(1, 7, 2)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(r(3, 5, 2).inv().unwrap().value(), 17);
        assert_eq!(r(1, 13, 3).inv().unwrap().value(), 1);
        assert!(matches!(r(5, 5, 2).inv(), Err(ModError::NotInvertible { .. })));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(r(2, 5, 2).pow(4).value(), 16);
        assert_eq!(r(2, 7, 1).pow(6).value(), 1);
        assert_eq!(r(3, 7, 1).pow(3).value(), 6);
        assert_eq!(r(9, 7, 1).pow(0).value(), 1);
    }

    #[test]
    fn rational_examples() {
        let m5 = Modulus::new(5, 1).unwrap();
        assert_eq!(rational_to_residue(3, 2, &m5).unwrap().value(), 4);
        assert_eq!(rational_to_residue(0, 7, &Modulus::new(5, 2).unwrap()).unwrap().value(), 0);
        assert_eq!(rational_to_residue(483, 512, &Modulus::new(5, 3).unwrap()).unwrap().value(), 9);
        assert!(rational_to_residue(1, 10, &m5).is_err());
        assert_eq!(rational_to_residue(-7, -2, &m5).unwrap().value(), 1);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(2, 5), -1);
        assert_eq!(legendre(11, 5), 1);
        assert_eq!(legendre(0, 7), 0);
        assert_eq!(legendre(-1, 13), 1);
        assert_eq!(legendre(-1, 7), -1);
        assert_eq!(legendre(14, 7), 0);
    }

    #[test]
    fn least_residue_examples() {
        assert_eq!(least_nonneg_residue(-1, 3, 7).unwrap(), 2);
        assert_eq!(least_nonneg_residue(0, 1, 11).unwrap(), 0);
        assert_eq!(least_nonneg_residue(1, 2, 11).unwrap(), 6);
        assert!(least_nonneg_residue(1, 22, 11).is_err());
    }

    #[test]
    fn modulus_validation() {
        assert!(matches!(Modulus::new(9, 2), Err(ModError::NotOddPrime(9))));
        assert!(matches!(Modulus::new(2, 2), Err(ModError::NotOddPrime(2))));
        assert!(matches!(Modulus::new(7, 0), Err(ModError::ZeroExponent)));
        assert!(matches!(Modulus::new(3, 90), Err(ModError::ModulusTooLarge { .. })));
        assert_eq!(Modulus::new(7, 3).unwrap().m(), 343);
    }

    #[test]
    fn reduce_and_signed() {
        let x = r(924, 7, 3);
        assert_eq!(x.reduce_to(2).unwrap().value(), 42);
        assert!(x.reduce_to(4).is_err());
        assert_eq!(r(-3, 7, 1).signed(), -3);
    }
}
