use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::modring::{Modulus, ValuedResidue};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn strip(n: &BigInt, p: &BigInt) -> (i64, BigInt) {
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

/// `nu_p(r)`; `None` for zero.
pub fn p_valuation(r: &Rational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    Some(strip(r.numer(), &pb).0 - strip(r.denom(), &pb).0)
}

fn to_mod(n: &BigInt, m: u128) -> u128 {
    n.mod_floor(&BigInt::from(m)).to_u128().expect("reduced value fits u128")
}

/// Splits `r = p^e * u` and reduces the unit modulo `p^k`.
pub fn reduce_rational_mod(r: &Rational, modulus: &Modulus) -> ValuedResidue {
    let p = modulus.p();
    if r.is_zero() {
        return ValuedResidue::exact_zero(p);
    }
    let pb = BigInt::from(p);
    let (en, un) = strip(r.numer(), &pb);
    let (ed, ud) = strip(r.denom(), &pb);
    let m = modulus.m();
    let num = modulus.from_u128(to_mod(&un, m));
    let den = modulus.from_u128(to_mod(&ud.abs(), m));
    let den = if ud.is_negative() { -den } else { den };
    let unit = num * den.inv().expect("p-free denominator is a unit");
    ValuedResidue::new(p, en - ed, unit.value(), modulus.k()).expect("k >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        let x = reduce_rational_mod(&rat(483, 512), &Modulus::new(5, 3).unwrap());
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.unit().unwrap().value(), 9);

        let x = reduce_rational_mod(&rat(704, 3), &Modulus::new(5, 2).unwrap());
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.unit().unwrap().value(), 18);

        let x = reduce_rational_mod(&rat(20, 7), &Modulus::new(7, 2).unwrap());
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.unit().unwrap().value(), 20);

        let x = reduce_rational_mod(&rat(-50, 3), &Modulus::new(5, 2).unwrap());
        assert_eq!(x.valuation(), Some(2));
        // -2/3 mod 25 = 23 * 17 mod 25 = 16
        assert_eq!(x.unit().unwrap().value(), 16);

        assert!(reduce_rational_mod(&rat(0, 9), &Modulus::new(3, 2).unwrap()).is_zero());
    }

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&rat(20, 7), 7), Some(-1));
        assert_eq!(p_valuation(&rat(98, 3), 7), Some(2));
        assert_eq!(p_valuation(&rat(0, 1), 7), None);
    }
}
