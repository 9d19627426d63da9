//! Morita's p-adic gamma function modulo `p^k` by direct products.
//!
//! `Gamma_p` is 1-Lipschitz, so its value modulo `p^k` depends only on the
//! argument modulo `p^k`; the argument is mapped to its least nonnegative
//! residue `r` and `(-1)^r prod_{1 <= j < r, p !| j} j` is returned.

use num_traits::One;
use thiserror::Error;

use crate::exactq::{reduce_rational_mod, Rational};
use crate::modring::{least_nonneg_residue, ModError, Modulus, Residue};
use crate::sequences::{harmonic_mod, SeqError};

/// Largest `p^k` evaluated by direct product.
pub const MAX_COST: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("argument {0} is not a p-adic integer")]
    NotIntegral(String),
    #[error("{p}^{k} exceeds the direct-product cost bound")]
    TooExpensive { p: u64, k: u32 },
    #[error(transparent)]
    Mod(#[from] ModError),
}

impl From<SeqError> for GammaError {
    fn from(e: SeqError) -> Self {
        match e {
            SeqError::Mod(m) => GammaError::Mod(m),
            other => GammaError::NotIntegral(other.to_string()),
        }
    }
}

/// An argument in `Z_p` together with the ring the value lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaQuery {
    arg: Rational,
    modulus: Modulus,
}

impl GammaQuery {
    pub fn new(arg: Rational, modulus: Modulus) -> Result<Self, GammaError> {
        if modulus.m() > MAX_COST {
            return Err(GammaError::TooExpensive { p: modulus.p(), k: modulus.k() });
        }
        residue_index(&arg, &modulus)?;
        Ok(GammaQuery { arg, modulus })
    }

    pub fn arg(&self) -> &Rational {
        &self.arg
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }
}

// least nonnegative residue of a p-adic integer modulo p^k
fn residue_index(x: &Rational, modulus: &Modulus) -> Result<u64, GammaError> {
    let v = reduce_rational_mod(x, modulus);
    if v.valuation().is_some_and(|e| e < 0) {
        return Err(GammaError::NotIntegral(x.to_string()));
    }
    Ok(v.reduce(modulus)?.value() as u64)
}

fn signed(prod: Residue, r: u64) -> Residue {
    if r % 2 == 1 {
        -prod
    } else {
        prod
    }
}

/// `Gamma_p(x) mod p^k`, one product per call.
pub fn gamma_p(q: &GammaQuery) -> Residue {
    let m = q.modulus;
    let r = residue_index(&q.arg, &m).expect("validated at construction");
    let p = m.p();
    let mut acc: u64 = 1;
    let mm = m.m() as u64;
    for j in 1..r {
        if j % p != 0 {
            acc = ((acc as u128 * j as u128) % mm as u128) as u64;
        }
    }
    signed(m.from_u128(acc as u128), r)
}

/// Prefix products for every residue modulo `p^k`: `O(1)` lookups after an
/// `O(p^k)` build. Read-only once built.
#[derive(Debug, Clone)]
pub struct GammaTable {
    modulus: Modulus,
    // prefix[r] = prod_{1 <= j < r, p !| j} j
    prefix: Vec<u64>,
}

impl GammaTable {
    pub fn new(modulus: Modulus) -> Result<Self, GammaError> {
        if modulus.m() > MAX_COST {
            return Err(GammaError::TooExpensive { p: modulus.p(), k: modulus.k() });
        }
        let mm = modulus.m() as u64;
        let p = modulus.p();
        let mut prefix = Vec::with_capacity(mm as usize);
        let mut acc: u64 = 1 % mm;
        prefix.push(acc);
        for j in 1..mm {
            prefix.push(acc);
            if j % p != 0 {
                acc = ((acc as u128 * j as u128) % mm as u128) as u64;
            }
        }
        Ok(GammaTable { modulus, prefix })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn get(&self, x: &Rational) -> Result<Residue, GammaError> {
        Ok(self.at(residue_index(x, &self.modulus)?))
    }

    /// `Gamma_p(r)` for an integer `0 <= r < p^k`.
    pub fn at(&self, r: u64) -> Residue {
        signed(self.modulus.from_u128(self.prefix[r as usize] as u128), r)
    }
}

/// `Gamma_p(x+1) / Gamma_p(x)` against `-x` (unit `x`) or `-1` (`p | x`).
pub fn functional_eq_check(x: &Rational, modulus: &Modulus) -> Result<bool, GammaError> {
    let (lhs, rhs) = functional_eq_sides(x, modulus)?;
    Ok(lhs == rhs)
}

pub fn functional_eq_sides(x: &Rational, modulus: &Modulus) -> Result<(Residue, Residue), GammaError> {
    let g0 = gamma_p(&GammaQuery::new(x.clone(), *modulus)?);
    let g1 = gamma_p(&GammaQuery::new(x + Rational::one(), *modulus)?);
    let ratio = g1.try_div(g0)?;
    let xr = reduce_rational_mod(x, modulus);
    let rhs = if xr.valuation().is_none_or(|e| e > 0) { -modulus.one() } else { -xr.reduce(modulus)? };
    Ok((ratio, rhs))
}

/// `(Gamma_p(a + p) - Gamma_p(a)) / (p Gamma_p(a))` modulo `p`: the
/// logarithmic derivative at `a` by a finite difference computed mod `p^2`.
pub fn logderiv_fd(alpha: &Rational, p: u64) -> Result<Residue, GammaError> {
    let m2 = Modulus::new(p, 2)?;
    let g0 = gamma_p(&GammaQuery::new(alpha.clone(), m2)?);
    let g1 = gamma_p(&GammaQuery::new(alpha + Rational::from_integer(p.into()), m2)?);
    difference_quotient(g0, g1)
}

fn difference_quotient(g0: Residue, g1: Residue) -> Result<Residue, GammaError> {
    let p = g0.modulus().p();
    let d = g1 - g0;
    debug_assert_eq!(d.value() % p as u128, 0);
    let m1 = g0.modulus().with_exponent(1)?;
    let quotient = m1.from_u128(d.value() / p as u128);
    Ok(quotient.try_mul(g0.reduce_to(1)?.inv()?)?)
}

/// `H_{p - <-a>_p - 1} - H_{p - <-b>_p - 1}` modulo `p`.
fn harmonic_side(alpha: &Rational, beta: &Rational, p: u64) -> Result<Residue, GammaError> {
    let m1 = Modulus::new(p, 1)?;
    let h = |x: &Rational| -> Result<Residue, GammaError> {
        let (num, den) = small_parts(&(-x.clone()))?;
        let r = least_nonneg_residue(num, den, p)?;
        Ok(harmonic_mod(p - r - 1, &m1)?)
    };
    Ok(h(alpha)? - h(beta)?)
}

/// Both sides of the log-derivative congruence in difference form:
/// `L(a) - L(b)` against `H_{p - <-a> - 1} - H_{p - <-b> - 1}` modulo `p`.
pub fn logderiv_difference(alpha: &Rational, beta: &Rational, p: u64) -> Result<(Residue, Residue), GammaError> {
    let lhs = logderiv_fd(alpha, p)? - logderiv_fd(beta, p)?;
    Ok((lhs, harmonic_side(alpha, beta, p)?))
}

impl GammaTable {
    /// [`logderiv_fd`] through the table; needs a table modulo `p^2`.
    pub fn logderiv(&self, alpha: &Rational) -> Result<Residue, GammaError> {
        let p = self.modulus.p();
        let shifted = alpha + Rational::from_integer(p.into());
        difference_quotient(self.get(alpha)?, self.get(&shifted)?)
    }

    /// [`logderiv_difference`] through the table.
    pub fn logderiv_difference(&self, alpha: &Rational, beta: &Rational) -> Result<(Residue, Residue), GammaError> {
        let lhs = self.logderiv(alpha)? - self.logderiv(beta)?;
        Ok((lhs, harmonic_side(alpha, beta, self.modulus.p())?))
    }
}

fn small_parts(x: &Rational) -> Result<(i128, i128), GammaError> {
    use num_traits::ToPrimitive;
    match (x.numer().to_i128(), x.denom().to_i128()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(GammaError::NotIntegral(x.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn g(x: Rational, p: u64, k: u32) -> u128 {
        gamma_p(&GammaQuery::new(x, Modulus::new(p, k).unwrap()).unwrap()).value()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(g(rat(0, 1), 7, 2), 1);
        assert_eq!(g(rat(1, 1), 7, 2), 48);
        assert_eq!(g(rat(4, 1), 7, 1), 6);
        assert_eq!(g(rat(1, 1), 11, 3), 1330);
    }

    #[test]
    fn query_validation() {
        let m = Modulus::new(5, 2).unwrap();
        assert!(matches!(GammaQuery::new(rat(1, 5), m), Err(GammaError::NotIntegral(_))));
        let big = Modulus::new(1009, 3).unwrap();
        assert!(matches!(GammaQuery::new(rat(1, 2), big), Err(GammaError::TooExpensive { .. })));
    }

    #[test]
    fn functional_equation_examples() {
        let m = Modulus::new(5, 2).unwrap();
        let (l, r) = functional_eq_sides(&rat(3, 1), &m).unwrap();
        assert_eq!((l, r), (m.from_i64(-3), m.from_i64(-3)));
        let (l, r) = functional_eq_sides(&rat(5, 1), &m).unwrap();
        assert_eq!((l, r), (m.from_i64(-1), m.from_i64(-1)));
        assert!(functional_eq_check(&rat(1, 1), &m).unwrap());
    }

    #[test]
    fn table_agrees_with_direct_product() {
        let m = Modulus::new(7, 2).unwrap();
        let t = GammaTable::new(m).unwrap();
        for x in [rat(1, 2), rat(1, 3), rat(-5, 6), rat(48, 1), rat(0, 1)] {
            assert_eq!(t.get(&x).unwrap(), gamma_p(&GammaQuery::new(x, m).unwrap()));
        }
    }

    #[test]
    fn logderiv_examples() {
        let (l, r) = logderiv_difference(&rat(1, 3), &rat(1, 2), 13).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.value(), 7);
        let (l, r) = logderiv_difference(&rat(1, 1), &rat(0, 1), 7).unwrap();
        assert_eq!((l.value(), r.value()), (0, 0));
        let (l, _) = logderiv_difference(&rat(2, 5), &rat(2, 5), 11).unwrap();
        assert!(l.is_zero());
        let t = GammaTable::new(Modulus::new(13, 2).unwrap()).unwrap();
        assert_eq!(t.logderiv_difference(&rat(1, 3), &rat(1, 2)).unwrap().0.value(), 7);
    }

    #[test]
    fn functional_equation_exhaustive() {
        for p in [5u64, 7, 11, 13] {
            let m = Modulus::new(p, 2).unwrap();
            for x in 0..(p * p) as i64 {
                assert!(functional_eq_check(&rat(x, 1), &m).unwrap(), "p={p} x={x}");
            }
        }
    }
}
