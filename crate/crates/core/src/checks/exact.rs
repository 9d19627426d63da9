//! Exact-rational evaluation of the single-sum linear checks.
//!
//! Every sum and closed form is built from big rationals without touching
//! modular arithmetic, so reducing both sides gives an oracle for the fast
//! per-prime path. Cost grows quickly with `p`; intended for `p` up to a
//! few hundred.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{lookup, CheckError};
use crate::exactq::{binomial, harmonic, pow_rat, rat, reduce_rational_mod, Rational};
use crate::modring::{legendre, Modulus, Residue};

fn int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// `q_p(a)` as an exact integer.
pub fn fermat_quotient_exact(a: i64, p: u64) -> Rational {
    let v = BigInt::from(a).pow((p - 1) as u32) - BigInt::one();
    int(v / BigInt::from(p))
}

/// `F_n` as an exact integer.
pub fn fibonacci_exact(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// `f_p` as an exact integer.
pub fn fibonacci_quotient_exact(p: u64) -> Rational {
    let idx = (p as i64 - legendre(p as i128, 5) as i64) as u64;
    int(fibonacci_exact(idx) / BigInt::from(p))
}

fn cb(k: u64) -> Rational {
    int(binomial(2 * k as i64, k as i64))
}

/// `sum_{k=lo}^{hi} C(2k,k) x^k`, divided by `k` when `over_k`.
pub fn cb_sum_exact(x: &Rational, lo: u64, hi: u64, over_k: bool) -> Rational {
    let mut acc = Rational::zero();
    let mut xp = pow_rat(x, lo);
    for k in lo..=hi {
        let mut t = cb(k) * &xp;
        if over_k {
            t /= rat(k as i64, 1);
        }
        acc += t;
        xp *= x;
    }
    acc
}

fn sym(a: i128, p: u64) -> Rational {
    rat(legendre(a, p) as i64, 1)
}

/// Exact left and right sides of a single-sum check at `p`, or `None` for
/// checks that are not of that shape.
pub fn exact_sides(id: &str, p: u64) -> Result<Option<(Rational, Rational)>, CheckError> {
    lookup(id).ok_or_else(|| CheckError::UnknownCheck(id.to_string()))?;
    let n = (p - 1) / 2;
    let pr = rat(p as i64, 1);
    let one = Rational::one();
    let q = |a| fermat_quotient_exact(a, p);
    let f = || fibonacci_quotient_exact(p);
    let sides = match id {
        "ncong1" => (cb_sum_exact(&rat(-2, 1), 0, p - 1, false), &one - rat(4, 3) * &pr * q(2)),
        "ncong2c" | "ncong2_literal" => {
            let q2 = q(2);
            let last = if id == "ncong2c" { &q2 * &q2 } else { q2.clone() };
            let rhs = sym(2, p) * (&one + &pr * &q2 / rat(6, 1) - &pr * &pr * last / rat(8, 1));
            (cb_sum_exact(&rat(-1, 32), 0, n, false), rhs)
        }
        "pansun34" => (cb_sum_exact(&rat(-1, 4), 0, 3 * p / 4, false), sym(2, p)),
        "mao_2p3" => (cb_sum_exact(&one, 1, 2 * p / 3, false), Rational::zero()),
        "mao_5p6" => (cb_sum_exact(&rat(1, 16), 0, 5 * p / 6, false), sym(3, p)),
        "mcong1" => (cb_sum_exact(&rat(-2, 1), 1, 2 * p / 3, false), Rational::zero()),
        "mcong2" => (cb_sum_exact(&rat(-1, 32), 0, 5 * p / 6, false), sym(2, p)),
        "mcong3" => (cb_sum_exact(&rat(-1, 1), 1, 4 * p / 5, false), Rational::zero()),
        "mcong4" => (cb_sum_exact(&rat(-1, 16), 1, 7 * p / 10, false), Rational::zero()),
        "macong3" | "macong5" => {
            let (d, base) = if id == "macong3" { (3, 8) } else { (5, 4) };
            let cut = (p - 1) / d;
            let lhs = (0..=n)
                .filter(|&k| k != cut)
                .map(|k| {
                    int(binomial(n as i64, k as i64)) * pow_rat(&rat(base, 1), k) / rat(d as i64 * k as i64 + 1, 1)
                })
                .sum();
            let b = int(binomial(n as i64, cut as i64));
            let rhs = if id == "macong3" { -(b * q(2)) / rat(3, 1) } else { -(pow_rat(&rat(4, 1), cut) * b * f()) };
            (lhs, rhs)
        }
        "lemmaL_half" => (harmonic((p / 2) as i64), rat(-2, 1) * q(2)),
        "lemmaL_third" => (harmonic((p / 3) as i64), rat(-3, 2) * q(3)),
        "lemmaL_sixth" => (harmonic((p / 6) as i64), rat(-2, 1) * q(2) - rat(3, 2) * q(3)),
        "lemmaMTc" | "lemmaMT_literal" => {
            let q2 = q(2);
            let last = if id == "lemmaMTc" { &q2 * &q2 } else { q2.clone() };
            (cb_sum_exact(&rat(-2, 1), 1, p - 1, true), rat(-4, 1) * &q2 + rat(4, 1) * &pr * last)
        }
        "w5" => {
            let lhs = (1..=4 * p / 5).map(|k| rat(if k % 2 == 0 { 1 } else { -1 }, k as i64)).sum();
            (lhs, rat(5, 2) * f())
        }
        "myw" => {
            let (m, r) = ((p - 1) / 5, 3 * (p - 1) / 10);
            (harmonic(n as i64) + harmonic(m as i64) - harmonic(r as i64), rat(-5, 1) * f())
        }
        "mt_fib" => {
            let fp = f();
            (cb_sum_exact(&rat(-1, 1), 1, p - 1, true), rat(-5, 1) * &fp + rat(5, 1) * &pr * &fp * &fp)
        }
        "suntj_full" => {
            (cb_sum_exact(&rat(-1, 1), 0, p - 1, false), sym(p as i128, 5) * (&one - rat(2, 1) * &pr * f()))
        }
        "suntj_half" => (cb_sum_exact(&rat(-1, 16), 0, n, false), sym(p as i128, 5) * (&one + &pr * f() / rat(2, 1))),
        _ => return Ok(None),
    };
    Ok(Some(sides))
}

/// Reduces an exact value to `Z/p^k`; `None` if it is not p-integral.
pub fn reduce_exact(v: &Rational, modulus: &Modulus) -> Option<Residue> {
    reduce_rational_mod(v, modulus).reduce(modulus).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        let (l, _) = exact_sides("mcong1", 7).unwrap().unwrap();
        assert_eq!(l, rat(980, 1));
        let (l, r) = exact_sides("macong3", 7).unwrap().unwrap();
        assert_eq!(l, rat(291, 5));
        assert_eq!(r, rat(-9, 1));
        let (l, r) = exact_sides("ncong1", 5).unwrap().unwrap();
        assert_eq!((l, r), (rat(981, 1), rat(-19, 1)));
        let (l, r) = exact_sides("myw", 11).unwrap().unwrap();
        assert_eq!((l, r), (rat(39, 20), rat(-25, 1)));
        assert_eq!(fermat_quotient_exact(2, 7), rat(9, 1));
        assert_eq!(fibonacci_quotient_exact(11), rat(5, 1));
        assert!(exact_sides("gp21", 7).unwrap().is_none());
    }
}
