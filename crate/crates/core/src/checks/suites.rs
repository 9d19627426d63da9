use num_traits::{Signed, Zero};

use super::{CheckError, Outcome};
use crate::exactq::{
    binomial, ek2004_sides, gauss_2f1, gauss_2f1_padic, instances, p_valuation, pochhammer_exact, rat,
    reduce_rational_mod, transform_sides, HypSpec, Rational, Transform,
};
use crate::modring::{checked_prime_power, legendre, Modulus, Residue, ValuedResidue};
use crate::padic_gamma::{gamma_p, GammaQuery, GammaTable};
use crate::sequences::{fermat_quotient, harmonic_mod, pochhammer_mod};

pub(super) fn eval(id: &str, p: u64) -> Result<Outcome, CheckError> {
    match id {
        "s2_suite" => order3_suite(p),
        "s3_suite" => order5_suite(p),
        "gamma_feq" => gamma_functional_equation(p),
        "logderiv_de" => logderiv_suite(p),
        other => match Transform::from_id(other) {
            Some(t) => {
                let (l, r) = transform_sides(t, p)?;
                Ok(exact_outcome(&l, &r, p))
            }
            None => Err(CheckError::UnknownCheck(other.to_string())),
        },
    }
}

/// Reports an exact equality of rationals as residues: both sides are
/// scaled by the same power of `p` to become integral and reduced modulo a
/// power of `p` high enough to separate them when they differ.
pub(crate) fn exact_outcome(lhs: &Rational, rhs: &Rational, p: u64) -> Outcome {
    let low = [lhs, rhs].iter().filter_map(|v| p_valuation(v, p)).min().unwrap_or(0);
    let scale = Rational::from_integer(num_bigint::BigInt::from(p).pow((-low).max(0) as u32));
    let (a, b) = (lhs * &scale, rhs * &scale);
    let mut k = 3;
    if a != b {
        let v = p_valuation(&(&a - &b), p).expect("nonzero difference");
        k = k.max(v as u32 + 1);
        while checked_prime_power(p, k).is_none() {
            k -= 1;
        }
    }
    let m = Modulus::new(p, k).expect("p is an odd prime");
    let reduce = |x: &Rational| reduce_rational_mod(x, &m).reduce(&m).expect("scaled to an integer");
    Outcome::new(reduce(&a), reduce(&b)).note("exact rational equality")
}

/// The `j`-th term of a series, from p-adic Pochhammer products.
fn term_padic(spec: &HypSpec, j: u64, m: &Modulus) -> Result<ValuedResidue, CheckError> {
    let mut acc = ValuedResidue::one(m.p(), m.k());
    for a in spec.upper() {
        acc = acc.mul(&pochhammer_mod(a, j, m)?)?;
    }
    for b in spec.lower() {
        acc = acc.div(&pochhammer_mod(b, j, m)?)?;
    }
    acc = acc.div(&pochhammer_mod(&rat(1, 1), j, m)?)?;
    let z = reduce_rational_mod(spec.z(), m);
    for _ in 0..j {
        acc = acc.mul(&z)?;
    }
    Ok(acc)
}

fn gamma_product(p: u64, m: &Modulus) -> Result<Residue, CheckError> {
    let mut g = m.one();
    for x in [rat(1, 2), rat(1, 3), rat(1, 6)] {
        g = g * gamma_p(&GammaQuery::new(x, *m)?);
    }
    debug_assert_eq!(g.modulus().p(), p);
    Ok(g)
}

fn order3_suite(p: u64) -> Result<Outcome, CheckError> {
    let (n, t, s) = ((p - 1) / 2, (p - 1) / 3, (p - 1) / 6);
    let m3 = Modulus::new(p, 3)?;
    let m2 = m3.with_exponent(2)?;
    let m1 = m3.with_exponent(1)?;
    let a_spec = instances::order3_a(p)?;
    let d_spec = instances::order3_d(p)?;
    let a = gauss_2f1_padic(&a_spec, &m3)?;
    let f = term_padic(&a_spec, t, &m3)?;
    let d = gauss_2f1_padic(&d_spec, &m3)?;
    let g = term_padic(&d_spec, s, &m3)?;

    let gam = gamma_product(p, &m2)?;
    let q2 = m2.from_u128(fermat_quotient(2, p, 1)?.value());
    let q3 = m2.from_u128(fermat_quotient(3, p, 1)?.value());
    let pp = m2.from_u128(p as u128);
    let one = m2.one();
    let sg = if n % 2 == 0 { one } else { -one };
    let fr = |a: i128, b: i128| m2.ratio(a, b).expect("small denominators");
    let two_pm1 = m2.from_u64(2).pow((p - 1) as u128);
    let inv_2n = m2.from_u64(2).pow(n as u128).inv()?;

    let times_p = |v: &ValuedResidue| v.shift(1).reduce(&m2);
    let mut parts = vec![
        Outcome::new(
            times_p(&a)?,
            two_pm1
                * m2.from_u64(3).pow(n as u128)
                * gam
                * (one - pp * q2 * fr(1, 3) + pp * q3 * fr(1, 4) - pp.scale(2)),
        )
        .note("p A"),
        Outcome::new(times_p(&f)?, two_pm1 * sg * gam * (one - pp * q2 * fr(2, 3) + pp * q3 * fr(3, 2) - pp.scale(2)))
            .note("p F"),
        Outcome::new(
            times_p(&d)?,
            -(sg * fr(1, 3) * inv_2n) * gam * (one + pp * q2 * fr(1, 3) - pp * q3 * fr(3, 4) + pp.scale(2)),
        )
        .note("p D"),
        Outcome::new(
            times_p(&g)?,
            -(sg * fr(1, 3) * inv_2n) * gam * (one + pp * q2 * fr(1, 3) - pp * q3 * fr(3, 2) + pp.scale(2)),
        )
        .note("p G"),
    ];
    let to1 = |r: Residue| r.reduce_to(1).expect("mod p^2 down to p");
    let (gam1, sg1, q21, q31) = (to1(gam), to1(sg), to1(q2), to1(q3));
    let fr1 = |a: i128, b: i128| m1.ratio(a, b).expect("small denominators");
    let af = a.sub(&f)?.reduce(&m1)?;
    let dg = d.sub(&g)?.reduce(&m1)?;
    let bnt = reduce_rational_mod(&Rational::from_integer(binomial(n as i64, t as i64)), &m1).reduce(&m1)?;
    let inv_2n1 = to1(inv_2n);
    parts.push(Outcome::new(af, sg1 * gam1 * (q21 * fr1(1, 3) - q31 * fr1(3, 4))).note("A - F"));
    parts.push(Outcome::new(dg, -(sg1 * fr1(1, 4) * inv_2n1) * gam1 * q31).note("D - G"));
    parts.push(Outcome::new(bnt, -(sg1 * gam1)).note("C(n, t)"));
    let two_p = m1.from_i64(legendre(2, p) as i64);
    parts.push(Outcome::new(af, m1.from_u64(3) * two_p * dg - bnt * q21 * fr1(1, 3)).note("A - F against D - G"));
    Ok(Outcome::first_failure(parts))
}

fn order5_suite(p: u64) -> Result<Outcome, CheckError> {
    let (n, m, r) = ((p - 1) / 2, (p - 1) / 5, 3 * (p - 1) / 10);
    let m3 = Modulus::new(p, 3)?;
    let m1 = m3.with_exponent(1)?;
    let a_spec = instances::order5_a(p)?;
    let d_spec = instances::order5_d(p)?;

    let mut parts = Vec::new();
    // exact closed forms first
    let pr = rat(p as i64, 1);
    let a_exact = gauss_2f1(&a_spec);
    let (ek, _) = ek2004_sides(m, false);
    let a_closed = crate::exactq::pow_rat(&rat(5, 1), m) * pochhammer_exact(&(rat(1, 2) - &pr), m)
        / pochhammer_exact(&(rat(6, 5) - rat(6, 5) * &pr), m)
        * ek;
    parts.push(exact_outcome(&a_exact, &a_closed, p).note("A closed form"));
    let (_, ek_shift) = ek2004_sides(r, true);
    let d_closed = crate::exactq::pow_rat(&rat(5, 4), r) * ek_shift;
    parts.push(exact_outcome(&gauss_2f1(&d_spec), &d_closed, p).note("D closed form"));

    let a = gauss_2f1_padic(&a_spec, &m3)?;
    let f = term_padic(&a_spec, m, &m3)?;
    let d = gauss_2f1_padic(&d_spec, &m3)?;
    let g = term_padic(&d_spec, r, &m3)?;
    let af = a.sub(&f)?.reduce(&m1)?;
    let dg = d.sub(&g)?.reduce(&m1)?;
    let two_thirds = m1.ratio(2, 3)?;

    let mut head = m1.zero();
    let mut pow4 = m1.one();
    for k in 0..=n {
        if k != m {
            let b = reduce_rational_mod(&Rational::from_integer(binomial(n as i64, k as i64)), &m1).reduce(&m1)?;
            head = head + b * pow4 * m1.from_u64(5 * k + 1).inv()?;
        }
        pow4 = pow4.scale(4);
    }
    parts.push(Outcome::new(head, af - two_thirds * dg).note("5k+1 sum split"));

    let h = |j| harmonic_mod(j, &m1);
    let bnm = reduce_rational_mod(&Rational::from_integer(binomial(n as i64, m as i64)), &m1).reduce(&m1)?;
    let c = m1.from_u64(4).pow(m as u128) * m1.ratio(1, 25)? * bnm;
    parts.push(Outcome::new(af, c * (h(n)?.scale(4) - h(r)?.scale(4))).note("A - F"));
    parts.push(Outcome::new(two_thirds * dg, -(c * (h(n)? + h(m)?.scale(5) - h(r)?))).note("D - G"));
    Ok(Outcome::first_failure(parts))
}

fn gamma_functional_equation(p: u64) -> Result<Outcome, CheckError> {
    let m2 = Modulus::new(p, 2)?;
    let table = GammaTable::new(m2)?;
    let size = m2.m() as u64;
    let mut g0 = table.at(0);
    let mut parts = Vec::with_capacity(size as usize);
    for x in 0..size {
        let g1 = if x + 1 == size { table.at(0) } else { table.at(x + 1) };
        let rhs = if x % p == 0 { -m2.one() } else { -m2.from_u128(x as u128) };
        parts.push(Outcome::new(g1 * g0.inv()?, rhs).note(format!("x = {x}")));
        g0 = g1;
    }
    Ok(Outcome::first_failure(parts))
}

/// Arguments with denominators `1, 2, 3, 5, 6, 10` against a few bases.
fn logderiv_suite(p: u64) -> Result<Outcome, CheckError> {
    let table = GammaTable::new(Modulus::new(p, 2)?)?;
    let mut parts = Vec::new();
    for den in [1i64, 2, 3, 5, 6, 10] {
        for num in -12i64..=12 {
            let alpha = rat(num, den);
            if !alpha.denom().is_positive() || (alpha.denom() % p).is_zero() {
                continue;
            }
            for beta in [rat(0, 1), rat(1, 2), rat(1, 3)] {
                let (l, r) = table.logderiv_difference(&alpha, &beta)?;
                parts.push(Outcome::new(l, r).note(format!("alpha = {alpha}, beta = {beta}")));
            }
        }
    }
    Ok(Outcome::first_failure(parts))
}
