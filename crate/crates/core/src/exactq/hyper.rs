use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{instances, rat, reduce_rational_mod, ExactError, Rational};
use crate::modring::{checked_prime_power, ModError, Modulus, ValuedResidue};

/// Extra p-adic digits carried on top of the requested precision.
const GUARD_DIGITS: u32 = 2;

/// `(a)_j = a (a+1) ... (a+j-1)`, `(a)_0 = 1`.
pub fn pochhammer_exact(a: &Rational, j: u64) -> Rational {
    let mut acc = Rational::one();
    let mut f = a.clone();
    for _ in 0..j {
        if f.is_zero() {
            return Rational::zero();
        }
        acc *= &f;
        f += Rational::one();
    }
    acc
}

fn nonpositive_integer(r: &Rational) -> Option<u64> {
    if r.is_integer() && !r.is_positive() {
        (-r.to_integer()).to_u64()
    } else {
        None
    }
}

/// A terminating generalized hypergeometric series
/// `sum_k prod (a_i)_k / prod (b_i)_k * z^k / k!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypSpec {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    z: Rational,
    last: u64,
}

impl HypSpec {
    /// Validates termination and that no lower Pochhammer symbol vanishes
    /// before the series stops.
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, z: Rational) -> Result<Self, ExactError> {
        let last = upper.iter().filter_map(nonpositive_integer).min().ok_or(ExactError::NonTerminating)?;
        for b in &lower {
            if let Some(t) = nonpositive_integer(b) {
                if t < last {
                    return Err(ExactError::ZeroLowerPochhammer { param: b.to_string() });
                }
            }
        }
        Ok(HypSpec { upper, lower, z, last })
    }

    /// `2F1(a, b; c; z)`.
    pub fn gauss(a: Rational, b: Rational, c: Rational, z: Rational) -> Result<Self, ExactError> {
        Self::new(vec![a, b], vec![c], z)
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn z(&self) -> &Rational {
        &self.z
    }

    /// Index of the last (possibly) nonzero term.
    pub fn last_index(&self) -> u64 {
        self.last
    }

    /// The `k`-th term, computed from Pochhammer products directly.
    pub fn term(&self, k: u64) -> Rational {
        let num: Rational = self.upper.iter().map(|a| pochhammer_exact(a, k)).product();
        let den: Rational = self.lower.iter().map(|b| pochhammer_exact(b, k)).product();
        let fact = pochhammer_exact(&Rational::one(), k);
        num / den / fact * pow_rat(&self.z, k)
    }

    fn step_factors(&self, j: u64) -> (Vec<Rational>, Vec<Rational>) {
        let jr = Rational::from_integer(BigInt::from(j));
        let mut num: Vec<Rational> = self.upper.iter().map(|a| a + &jr).collect();
        num.push(self.z.clone());
        let mut den: Vec<Rational> = self.lower.iter().map(|b| b + &jr).collect();
        den.push(jr + Rational::one());
        (num, den)
    }

    /// The Pfaff transform of a terminating `2F1(-m, b; c; z)`:
    /// `(b)_m / (c)_m (1-z)^m 2F1(-m, c-b; 1-b-m; 1/(1-z))`.
    pub fn pfaff(&self) -> Result<(Rational, HypSpec), ExactError> {
        let (b, c) = self.gauss_params()?;
        let m = self.last;
        let mr = Rational::from_integer(BigInt::from(m));
        let one_minus_z = Rational::one() - &self.z;
        if one_minus_z.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let prefactor = pochhammer_exact(&b, m) / pochhammer_exact(&c, m) * pow_rat(&one_minus_z, m);
        let spec = HypSpec::gauss(-mr.clone(), &c - &b, Rational::one() - &b - &mr, one_minus_z.recip())?;
        Ok((prefactor, spec))
    }

    // (b, c) of 2F1(-m, b; c; z) with the terminating parameter first
    fn gauss_params(&self) -> Result<(Rational, Rational), ExactError> {
        if self.upper.len() != 2 || self.lower.len() != 1 {
            return Err(ExactError::NonTerminating);
        }
        let m = Rational::from_integer(BigInt::from(self.last));
        let b = if self.upper[0] == -m.clone() { self.upper[1].clone() } else { self.upper[0].clone() };
        Ok((b, self.lower[0].clone()))
    }
}

impl fmt::Display for HypSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let up: Vec<String> = self.upper.iter().map(|r| r.to_string()).collect();
        let lo: Vec<String> = self.lower.iter().map(|r| r.to_string()).collect();
        write!(f, "{}F{}({}; {}; {})", up.len(), lo.len(), up.join(", "), lo.join(", "), self.z)
    }
}

pub fn pow_rat(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Signed integer power, `x^n` for `n < 0` meaning `(1/x)^|n|`.
pub(crate) fn pow_rat_signed(x: &Rational, n: i64) -> Rational {
    if n >= 0 {
        pow_rat(x, n as u64)
    } else {
        pow_rat(&x.recip(), n.unsigned_abs())
    }
}

/// Exact value of the terminating series.
pub fn gauss_2f1(spec: &HypSpec) -> Rational {
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for j in 0..spec.last {
        let (num, den) = spec.step_factors(j);
        if num.iter().any(Zero::is_zero) {
            break;
        }
        for f in &num {
            term *= f;
        }
        for f in &den {
            term /= f;
        }
        sum += &term;
    }
    sum
}

fn padic_sum(spec: &HypSpec, work: &Modulus) -> Result<ValuedResidue, ModError> {
    let p = work.p();
    let mut term = ValuedResidue::one(p, work.k());
    let mut sum = term;
    for j in 0..spec.last {
        let (num, den) = spec.step_factors(j);
        if num.iter().any(Zero::is_zero) {
            break;
        }
        for f in &num {
            term = term.mul(&reduce_rational_mod(f, work))?;
        }
        for f in &den {
            term = term.div(&reduce_rational_mod(f, work))?;
        }
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// The series as a p-adic number whose unit is known modulo `p^k`
/// (`k = modulus.k()`), evaluated term by term with valuation tracking.
/// Working precision starts at `k + 2` and grows by two digits whenever
/// cancellation eats the guard.
pub fn gauss_2f1_padic(spec: &HypSpec, modulus: &Modulus) -> Result<ValuedResidue, ExactError> {
    let (p, k) = (modulus.p(), modulus.k());
    let mut work = k + GUARD_DIGITS;
    while checked_prime_power(p, work).is_some() {
        let wm = modulus.with_exponent(work)?;
        match padic_sum(spec, &wm) {
            Ok(v) if v.is_zero() && v.abs_precision().is_none() => return Ok(v),
            Ok(v) if !v.is_zero() && v.kappa() >= k => return Ok(v.truncate(k)?),
            Ok(_) | Err(ModError::PrecisionExhausted) => work += GUARD_DIGITS,
            Err(e) => return Err(e.into()),
        }
    }
    Err(ModError::PrecisionExhausted.into())
}

/// The three classical transformations applied to the order-3 instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// Pfaff reflection of the `z = -8` series into `z = 1/9`.
    Pfaff1586,
    /// Euler-type map of the `z = -1/8` series onto `z = 1/2`.
    Euler1581,
    /// Quadratic map of the `z = -1/8` series onto `z = -1`.
    Quad15814,
}

impl Transform {
    pub const ALL: [Transform; 3] = [Transform::Pfaff1586, Transform::Euler1581, Transform::Quad15814];

    pub fn id(&self) -> &'static str {
        match self {
            Transform::Pfaff1586 => "pfaff_1586",
            Transform::Euler1581 => "euler_1581",
            Transform::Quad15814 => "quad_15814",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.id() == id)
    }
}

fn two_pow(e: i64) -> Rational {
    pow_rat_signed(&rat(2, 1), e)
}

/// Both sides of a transformation at prime `p`, as exact rationals.
pub fn transform_sides(t: Transform, p: u64) -> Result<(Rational, Rational), ExactError> {
    if p % 6 != 1 {
        return Err(ExactError::InapplicablePrime(t.id(), p));
    }
    let pi = p as i64;
    let pr = rat(pi, 1);
    let third = rat(1, 3);
    match t {
        Transform::Pfaff1586 => {
            let lhs = gauss_2f1(&instances::order3_a(p)?);
            let n = ((pi - 1) / 2) as u64;
            let b = &third - &pr / rat(6, 1);
            let c = rat(4, 3) - &pr * rat(2, 3);
            let prefactor = pochhammer_exact(&b, n) / pochhammer_exact(&c, n) * pow_rat(&rat(9, 1), n);
            let spec =
                HypSpec::gauss(rat(1 - pi, 2), rat(1, 1) - &pr / rat(2, 1), rat(7, 6) - &pr * &third, rat(1, 9))?;
            Ok((lhs, prefactor * gauss_2f1(&spec)))
        }
        Transform::Quad15814 | Transform::Euler1581 => {
            let lhs = gauss_2f1(&instances::order3_d(p)?);
            let (e, z) = match t {
                Transform::Quad15814 => ((1 - pi) / 6, rat(-1, 1)),
                _ => ((pi - 1) / 6, rat(1, 2)),
            };
            let spec = HypSpec::gauss(rat(1 - pi, 3), rat(2, 3) + &pr * &third, rat(4, 3) + &pr * rat(2, 3), z)?;
            Ok((lhs, two_pow(e) * gauss_2f1(&spec)))
        }
    }
}

pub fn transform_check(t: Transform, p: u64) -> Result<bool, ExactError> {
    let (lhs, rhs) = transform_sides(t, p)?;
    Ok(lhs == rhs)
}

/// Both sides of the closed-form evaluation of
/// `2F1(-n, 1/2-n; 4n+3/2; 1/5)` (or, `shifted`, with lower `4n+5/2`),
/// every Gamma ratio written as a Pochhammer symbol.
pub fn ek2004_sides(n: u64, shifted: bool) -> (Rational, Rational) {
    let nr = rat(n as i64, 1);
    let (lower, top, left, right) = if shifted {
        (rat(5, 2), rat(5, 2), rat(7, 5), rat(8, 5))
    } else {
        (rat(3, 2), rat(3, 2), rat(4, 5), rat(6, 5))
    };
    let spec = HypSpec::gauss(-nr.clone(), rat(1, 2) - &nr, &nr * rat(4, 1) + lower, rat(1, 5))
        .expect("upper parameter -n terminates");
    let lhs = gauss_2f1(&spec);
    let rhs = pow_rat(&rat(2, 1), 10 * n) * pochhammer_exact(&top, 4 * n)
        / (pow_rat(&rat(5, 1), 6 * n) * pochhammer_exact(&left, 2 * n) * pochhammer_exact(&right, 2 * n));
    (lhs, rhs)
}

/// Checks the closed form and its shifted variant at `n`.
pub fn ek2004_t20_check(n: u64) -> bool {
    [false, true].into_iter().all(|s| {
        let (l, r) = ek2004_sides(n, s);
        l == r
    })
}
