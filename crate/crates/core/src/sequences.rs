//! Fermat and Fibonacci quotients, harmonic numbers and binomial streams,
//! all as residues modulo a prime power.

use thiserror::Error;

use crate::exactq::{reduce_rational_mod, Rational};
use crate::modring::{legendre, ModError, Modulus, Residue, ValuedResidue};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("{a} is divisible by {p}")]
    NotCoprime { a: i64, p: u64 },
    #[error("{p} does not divide the Fibonacci number it should")]
    DivisibilityViolation { p: u64 },
    #[error("index {n} must stay below p = {p}")]
    IndexTooLarge { n: u64, p: u64 },
    #[error("the Fibonacci quotient is undefined at p = 5")]
    FibonacciAtFive,
    #[error(transparent)]
    Mod(#[from] ModError),
}

/// Exact division of `r` (a multiple of `p`) by `p`, landing in `Z/p^k`.
fn divide_by_p(r: Residue, k: u32) -> Option<Residue> {
    let p = r.modulus().p() as u128;
    if !r.value().is_multiple_of(p) {
        return None;
    }
    let target = r.modulus().with_exponent(k).ok()?;
    Some(target.from_u128(r.value() / p))
}

/// `q_p(a) = (a^(p-1) - 1) / p` modulo `p^k`.
pub fn fermat_quotient(a: i64, p: u64, k: u32) -> Result<Residue, SeqError> {
    if a.rem_euclid(p as i64) == 0 {
        return Err(SeqError::NotCoprime { a, p });
    }
    let wide = Modulus::new(p, k + 1)?;
    let t = wide.from_i64(a).pow((p - 1) as u128) - wide.one();
    Ok(divide_by_p(t, k).expect("Fermat's little theorem"))
}

/// `F_n` modulo `p^k` by fast doubling.
pub fn fibonacci_mod(n: u64, modulus: &Modulus) -> Residue {
    // (F_j, F_{j+1}) while scanning the bits of n
    let (mut a, mut b) = (modulus.zero(), modulus.one());
    for i in (0..64 - n.leading_zeros()).rev() {
        let c = a * (b.scale(2) - a);
        let d = a * a + b * b;
        (a, b) = if (n >> i) & 1 == 1 { (d, c + d) } else { (c, d) };
    }
    a
}

/// `f_p = F_{p - (p/5)} / p` modulo `p^k`.
pub fn fibonacci_quotient(p: u64, k: u32) -> Result<Residue, SeqError> {
    if p == 5 {
        return Err(SeqError::FibonacciAtFive);
    }
    let wide = Modulus::new(p, k + 1)?;
    let idx = (p as i64 - legendre(p as i128, 5) as i64) as u64;
    divide_by_p(fibonacci_mod(idx, &wide), k).ok_or(SeqError::DivisibilityViolation { p })
}

fn check_index(n: u64, modulus: &Modulus) -> Result<(), SeqError> {
    if n >= modulus.p() {
        return Err(SeqError::IndexTooLarge { n, p: modulus.p() });
    }
    Ok(())
}

fn inv_small(j: u64, modulus: &Modulus) -> Residue {
    modulus.from_u128(j as u128).inv().expect("index below p")
}

/// `H_0, H_1, ..., H_{n_max}` modulo `p^k`.
pub fn harmonic_prefix(n_max: u64, modulus: &Modulus) -> Result<HarmonicStream, SeqError> {
    check_index(n_max, modulus)?;
    Ok(HarmonicStream { modulus: *modulus, next: 0, last: n_max, acc: modulus.zero() })
}

pub struct HarmonicStream {
    modulus: Modulus,
    next: u64,
    last: u64,
    acc: Residue,
}

impl Iterator for HarmonicStream {
    type Item = Residue;

    fn next(&mut self) -> Option<Residue> {
        if self.next > self.last {
            return None;
        }
        if self.next > 0 {
            self.acc = self.acc + inv_small(self.next, &self.modulus);
        }
        self.next += 1;
        Some(self.acc)
    }
}

/// `H_n` modulo `p^k` for a single `n < p`.
pub fn harmonic_mod(n: u64, modulus: &Modulus) -> Result<Residue, SeqError> {
    Ok(harmonic_prefix(n, modulus)?.last().expect("stream is never empty"))
}

/// `sum_{k=1}^{bound} (-1)^k / k` modulo `p`.
pub fn alt_harmonic(p: u64, bound: u64) -> Result<Residue, SeqError> {
    let modulus = Modulus::new(p, 1)?;
    check_index(bound, &modulus)?;
    Ok((1..=bound).fold(modulus.zero(), |acc, j| {
        let t = inv_small(j, &modulus);
        if j % 2 == 1 {
            acc - t
        } else {
            acc + t
        }
    }))
}

/// `C(2j, j)` modulo `p^k` for `j = 0..=n_max`.
pub fn central_binomial_stream(n_max: u64, modulus: &Modulus) -> Result<CentralBinomialStream, SeqError> {
    check_index(n_max, modulus)?;
    Ok(CentralBinomialStream { modulus: *modulus, next: 0, last: n_max, acc: modulus.one() })
}

pub struct CentralBinomialStream {
    modulus: Modulus,
    next: u64,
    last: u64,
    acc: Residue,
}

impl Iterator for CentralBinomialStream {
    type Item = Residue;

    fn next(&mut self) -> Option<Residue> {
        if self.next > self.last {
            return None;
        }
        let j = self.next;
        if j > 0 {
            let step = self.modulus.from_u128(2 * (2 * j as u128 - 1));
            self.acc = self.acc * step * inv_small(j, &self.modulus);
        }
        self.next += 1;
        Some(self.acc)
    }
}

/// `C(n, 0), ..., C(n, n)` modulo `p^k`.
pub fn binomial_row(n: u64, modulus: &Modulus) -> Result<BinomialRow, SeqError> {
    check_index(n, modulus)?;
    Ok(BinomialRow { modulus: *modulus, n, next: 0, acc: modulus.one() })
}

pub struct BinomialRow {
    modulus: Modulus,
    n: u64,
    next: u64,
    acc: Residue,
}

impl Iterator for BinomialRow {
    type Item = Residue;

    fn next(&mut self) -> Option<Residue> {
        if self.next > self.n {
            return None;
        }
        let j = self.next;
        if j > 0 {
            self.acc = self.acc * self.modulus.from_u128((self.n - j + 1) as u128) * inv_small(j, &self.modulus);
        }
        self.next += 1;
        Some(self.acc)
    }
}

/// `(a)_j` as a p-adic number; factors divisible by `p` move into the
/// valuation. The unit is known modulo `p^k`.
pub fn pochhammer_mod(a: &Rational, j: u64, modulus: &Modulus) -> Result<ValuedResidue, ModError> {
    let mut acc = ValuedResidue::one(modulus.p(), modulus.k());
    let mut f = a.clone();
    for _ in 0..j {
        if f.is_zero() {
            return Ok(ValuedResidue::exact_zero(modulus.p()));
        }
        acc = acc.mul(&reduce_rational_mod(&f, modulus))?;
        f += Rational::one();
    }
    Ok(acc)
}
