//! The named terminating series attached to a prime `p`.
//!
//! The `order3_*` family needs `p = 1 (mod 6)` and the `order5_*` family
//! `p = 1 (mod 10)`; the `f`/`g` members are the single terms of `a`/`d`
//! at which a Pochhammer factor picks up its `p` in the denominator.

use super::{rat, ExactError, HypSpec, Rational};

fn require(p: u64, modulus: u64, what: &'static str) -> Result<(), ExactError> {
    if p % modulus == 1 && p > 3 {
        Ok(())
    } else {
        Err(ExactError::InapplicablePrime(what, p))
    }
}

fn prat(p: u64, num: i64, den: i64) -> Rational {
    rat(p as i64 * num, den)
}

/// `2F1((1-p)/2, 1/3-p/6; 4/3-2p/3; -8)`.
pub fn order3_a(p: u64) -> Result<HypSpec, ExactError> {
    require(p, 6, "order3_a")?;
    HypSpec::gauss(rat(1 - p as i64, 2), rat(1, 3) - prat(p, 1, 6), rat(4, 3) - prat(p, 2, 3), rat(-8, 1))
}

/// Term `(p-1)/3` of [`order3_a`].
pub fn order3_f(p: u64) -> Result<Rational, ExactError> {
    Ok(order3_a(p)?.term((p - 1) / 3))
}

/// `2F1((1-p)/6, (1+p)/2; 7/6+p/3; -1/8)`.
pub fn order3_d(p: u64) -> Result<HypSpec, ExactError> {
    require(p, 6, "order3_d")?;
    HypSpec::gauss(rat(1 - p as i64, 6), rat(1 + p as i64, 2), rat(7, 6) + prat(p, 1, 3), rat(-1, 8))
}

/// Term `(p-1)/6` of [`order3_d`].
pub fn order3_g(p: u64) -> Result<Rational, ExactError> {
    Ok(order3_d(p)?.term((p - 1) / 6))
}

/// `2F1((1-p)/5, 1/2-p; 6/5-6p/5; -4)`.
pub fn order5_a(p: u64) -> Result<HypSpec, ExactError> {
    require(p, 10, "order5_a")?;
    HypSpec::gauss(rat(1 - p as i64, 5), rat(1, 2) - prat(p, 1, 1), rat(6, 5) - prat(p, 6, 5), rat(-4, 1))
}

/// Term `(p-1)/5` of [`order5_a`].
pub fn order5_f(p: u64) -> Result<Rational, ExactError> {
    Ok(order5_a(p)?.term((p - 1) / 5))
}

/// `2F1(3(1-p)/10, 1/2+3p/2; 13/10+6p/5; -1/4)`.
pub fn order5_d(p: u64) -> Result<HypSpec, ExactError> {
    require(p, 10, "order5_d")?;
    HypSpec::gauss(rat(3 * (1 - p as i64), 10), rat(1, 2) + prat(p, 3, 2), rat(13, 10) + prat(p, 6, 5), rat(-1, 4))
}

/// Term `3(p-1)/10` of [`order5_d`].
pub fn order5_g(p: u64) -> Result<Rational, ExactError> {
    Ok(order5_d(p)?.term(3 * (p - 1) / 10))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{gauss_2f1, p_valuation};

    #[test]
    fn valuations_are_minus_one() {
        for p in [7, 13, 19, 31] {
            assert_eq!(p_valuation(&gauss_2f1(&order3_a(p).unwrap()), p), Some(-1));
            assert_eq!(p_valuation(&order3_f(p).unwrap(), p), Some(-1));
            assert_eq!(p_valuation(&gauss_2f1(&order3_d(p).unwrap()), p), Some(-1));
            assert_eq!(p_valuation(&order3_g(p).unwrap(), p), Some(-1));
            let diff = gauss_2f1(&order3_a(p).unwrap()) - order3_f(p).unwrap();
            assert!(p_valuation(&diff, p).unwrap() >= 0);
        }
        for p in [11, 31, 41] {
            let a = gauss_2f1(&order5_a(p).unwrap()) - order5_f(p).unwrap();
            let d = gauss_2f1(&order5_d(p).unwrap()) - order5_g(p).unwrap();
            assert!(p_valuation(&a, p).is_none_or(|v| v >= 0));
            assert!(p_valuation(&d, p).is_none_or(|v| v >= 0));
        }
    }

    #[test]
    fn wrong_class_rejected() {
        assert!(order3_a(11).is_err());
        assert!(order5_d(13).is_err());
    }
}
