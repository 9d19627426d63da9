use num_bigint::BigInt;
use num_traits::Zero;
use pcv_core::exactq::{gauss_2f1, pochhammer_exact, rat, reduce_rational_mod, HypSpec, Rational};
use pcv_core::modring::{legendre, Modulus, ValuedResidue};
use pcv_core::padic_gamma::{gamma_p, GammaQuery};
use pcv_core::sequences::pochhammer_mod;
use proptest::prelude::*;

const SMALL: [u64; 4] = [5, 7, 11, 13];

/// Same valuation and units equal to the common precision; a zero known
/// modulo `p^e` agrees with anything of valuation at least `e`.
fn agree(a: &ValuedResidue, b: &ValuedResidue) -> bool {
    match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => {
            let k = a.kappa().min(b.kappa());
            a.valuation() == b.valuation() && ua.reduce_to(k).unwrap() == ub.reduce_to(k).unwrap()
        }
        (None, None) => true,
        (None, Some(_)) => a.abs_precision().is_some_and(|e| b.valuation().unwrap() >= e),
        (Some(_), None) => agree(b, a),
    }
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(SMALL.to_vec())
}

fn p_integral(p: u64) -> impl Strategy<Value = Rational> {
    (-100_000i64..100_000, 1i64..5_000)
        .prop_filter("denominator prime to p", move |&(_, d)| d % p as i64 != 0)
        .prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn valued_arithmetic_matches_rationals(
        (p, a, b) in small_prime().prop_flat_map(|p| (Just(p), p_integral(p), p_integral(p))),
        k in 1u32..5,
    ) {
        let m = Modulus::new(p, k).unwrap();
        let (va, vb) = (reduce_rational_mod(&a, &m), reduce_rational_mod(&b, &m));
        let want = |x: Rational| reduce_rational_mod(&x, &m).reduce(&m).unwrap();
        prop_assert_eq!(va.add(&vb).unwrap().reduce(&m).unwrap(), want(&a + &b));
        prop_assert_eq!(va.sub(&vb).unwrap().reduce(&m).unwrap(), want(&a - &b));
        prop_assert_eq!(va.mul(&vb).unwrap().reduce(&m).unwrap(), want(&a * &b));
        if !b.is_zero() && vb.valuation() == Some(0) {
            prop_assert_eq!(va.div(&vb).unwrap().reduce(&m).unwrap(), want(&a / &b));
        }
    }

    #[test]
    fn legendre_is_multiplicative(a in -10_000i128..10_000, b in -10_000i128..10_000,
                                  p in prop::sample::select(vec![101u64, 1009, 10_007, 1_000_003])) {
        prop_assert_eq!(legendre(a * b, p), legendre(a, p) * legendre(b, p));
    }

    #[test]
    fn pochhammer_mod_matches_exact(p in small_prime(), num in -60i64..60, den in 1i64..13, j in 0u64..25, k in 1u32..4) {
        let a = rat(num, den);
        let m = Modulus::new(p, k).unwrap();
        let exact = pochhammer_exact(&a, j);
        match pochhammer_mod(&a, j, &m) {
            Ok(got) => {
                let want = reduce_rational_mod(&exact, &m);
                prop_assert!(agree(&got, &want), "({a})_{j} at p={p}: {got:?} vs {want:?}");
            }
            // only a denominator divisible by p may be refused
            Err(_) => prop_assert!(den % p as i64 == 0),
        }
    }

    #[test]
    fn pfaff_transform_preserves_value(m in 0i64..=6, bn in -30i64..30, bd in 1i64..7,
                                       cn in -30i64..30, cd in 1i64..7, zn in -9i64..9, zd in 1i64..9) {
        let z = rat(zn, zd);
        prop_assume!(z != rat(1, 1));
        let Ok(spec) = HypSpec::gauss(rat(-m, 1), rat(bn, bd), rat(cn, cd), z) else { return Ok(()) };
        let Ok((pre, other)) = spec.pfaff() else { return Ok(()) };
        prop_assert_eq!(gauss_2f1(&spec), pre * gauss_2f1(&other));
    }

    #[test]
    fn gamma_is_lipschitz(p in small_prime(), num in 0i64..5_000, den in 1i64..20, t in -50i64..50, j in 1u32..3) {
        prop_assume!(den % p as i64 != 0);
        let m = Modulus::new(p, 3).unwrap();
        let x = rat(num, den);
        let y = &x + Rational::from_integer(BigInt::from(p).pow(j) * t);
        let gx = gamma_p(&GammaQuery::new(x, m).unwrap());
        let gy = gamma_p(&GammaQuery::new(y, m).unwrap());
        prop_assert_eq!(gx.reduce_to(j).unwrap(), gy.reduce_to(j).unwrap());
    }

    #[test]
    fn gamma_reflection_is_a_sign(p in small_prime(), num in -5_000i64..5_000, den in 1i64..20) {
        prop_assume!(den % p as i64 != 0);
        let m = Modulus::new(p, 2).unwrap();
        let x = rat(num, den);
        let y = rat(1, 1) - &x;
        let prod = gamma_p(&GammaQuery::new(x, m).unwrap()) * gamma_p(&GammaQuery::new(y, m).unwrap());
        prop_assert!(prod == m.one() || prod == -m.one(), "{prod}");
    }
}

#[test]
fn legendre_matches_euler_criterion() {
    for p in (3u64..100).filter(|&n| (2..n).all(|d| n % d != 0)) {
        let m = Modulus::new(p, 1).unwrap();
        for a in 0..p {
            let euler = m.from_u64(a).pow(((p - 1) / 2) as u128);
            let want = if a == 0 {
                0
            } else if euler == m.one() {
                1
            } else {
                -1
            };
            assert_eq!(legendre(a as i128, p), want, "({a}/{p})");
        }
    }
}
