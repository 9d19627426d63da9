use pcv_core::checks::exact::{exact_sides, reduce_exact};
use pcv_core::checks::{lookup, run_check, CostClass, Status, REGISTRY};
use pcv_core::exactq::{gauss_2f1, instances, rat, reduce_rational_mod};
use pcv_core::modring::Modulus;
use pcv_core::primes::{primes_in, PrimeClass};

fn sides(id: &str, p: u64) -> (u128, u128, bool) {
    let r = run_check(id, p).unwrap();
    (r.lhs.value(), r.rhs.value(), r.holds)
}

#[test]
fn worked_examples() {
    assert_eq!(sides("mcong1", 7), (0, 0, true));
    assert_eq!(sides("macong3", 7), (5, 5, true));
    assert_eq!(sides("macong5", 11), (3, 3, true));
    assert_eq!(sides("ncong1", 5), (106, 106, true));
    assert_eq!(sides("myw", 11), (8, 8, true));
    assert_eq!(sides("lemmaMTc", 5), (18, 18, true));
    assert!(run_check("sunlemma", 7).unwrap().holds);
}

#[test]
fn literal_forms_fail_where_documented() {
    assert_eq!(sides("ncong2_literal", 5), (9, 84, false));
    assert_eq!(sides("lemmaMT_literal", 5), (18, 23, false));
    let r = run_check("sunlemma_literal", 5).unwrap();
    assert_eq!((r.lhs.value(), r.rhs.value(), r.holds), (10, 15, false));
    assert!(r.note.unwrap().contains("k = 3"));
}

#[test]
fn fast_path_matches_exact_oracle() {
    for spec in REGISTRY.iter().filter(|s| s.cost == CostClass::Linear) {
        for p in primes_in(PrimeClass::new(spec.class.modulus, spec.class.residue, spec.floor(), 160)) {
            let Some((l, r)) = exact_sides(spec.id, p).unwrap() else { continue };
            let m = Modulus::new(p, spec.k).unwrap();
            let report = run_check(spec.id, p).unwrap();
            assert_eq!(Some(report.lhs), reduce_exact(&l, &m), "{} lhs at p={p}", spec.id);
            assert_eq!(Some(report.rhs), reduce_exact(&r, &m), "{} rhs at p={p}", spec.id);
        }
    }
}

#[test]
fn every_holding_check_holds_at_small_primes() {
    for spec in REGISTRY.iter().filter(|s| s.is_default()) {
        for p in primes_in(PrimeClass::new(spec.class.modulus, spec.class.residue, spec.floor(), 120)) {
            let r = run_check(spec.id, p).unwrap();
            assert!(r.holds, "{} fails at p={p}: {} vs {} ({:?})", spec.id, r.lhs, r.rhs, r.note);
        }
    }
}

#[test]
fn literal_forms_fail_only_as_expected() {
    for spec in REGISTRY.iter().filter(|s| s.status == Status::ExpectedFail) {
        assert!(!run_check(spec.id, 5).unwrap().holds, "{}", spec.id);
    }
}

#[test]
fn gp_partial_sums_against_exact_oracle() {
    // direct rational evaluation of the lower relation at p = 13, x = -1/32, m = (p-1)/6
    use pcv_core::exactq::{binomial, harmonic, Rational};
    let (p, m) = (13i64, 2i64);
    let n = (p - 1) / 2;
    let x = rat(-1, 32);
    let z = -Rational::from_integer(1.into()) / (rat(4, 1) * &x);
    let pw = |b: &Rational, e: i64| pcv_core::exactq::pow_rat(b, e as u64);
    let c = |a: i64, b: i64| Rational::from_integer(binomial(a, b));
    let lhs: Rational = (1..p - m).map(|k| c(2 * k, k) * pw(&x, k)).sum();
    let full: Rational = (1..p).map(|k| c(2 * k, k) * pw(&x, k)).sum();
    let head: Rational = (1..=n).map(|k| c(2 * k, k) * pw(&x, k) / rat(k, 1)).sum();
    let tail: Rational = (0..=n).filter(|&k| k != m).map(|k| c(n, k) / pw(&z, k) / rat(k - m, 1)).sum();
    let bracket = head + harmonic(n) + harmonic(m) - harmonic(n - m) - pw(&z, m) / c(n, m) * tail;
    let one = Rational::from_integer(1.into());
    let rhs = full + rat(n * p, 1) * pw(&z, n) / pw(&(z + one), n + 1) * bracket;
    let md = Modulus::new(13, 2).unwrap();
    assert_eq!(reduce_exact(&lhs, &md), reduce_exact(&rhs, &md));
    assert!(run_check("gp21", 13).unwrap().holds);
}

#[test]
fn padic_series_match_exact_for_small_primes() {
    for p in primes_in(PrimeClass::all(7, 100)) {
        let m = Modulus::new(p, 3).unwrap();
        let mut specs = Vec::new();
        if p % 6 == 1 {
            specs.extend([instances::order3_a(p).unwrap(), instances::order3_d(p).unwrap()]);
        }
        if p % 10 == 1 {
            specs.extend([instances::order5_a(p).unwrap(), instances::order5_d(p).unwrap()]);
        }
        for s in specs {
            let got = pcv_core::exactq::gauss_2f1_padic(&s, &m).unwrap();
            assert_eq!(got, reduce_rational_mod(&gauss_2f1(&s), &m), "p={p} {s}");
        }
    }
}

#[test]
fn suites_and_transforms_small() {
    for id in ["s2_suite", "pfaff_1586", "euler_1581", "quad_15814"] {
        for p in [7, 13, 19, 31] {
            let r = run_check(id, p).unwrap();
            assert!(r.holds, "{id} at {p}: {:?}", r.note);
        }
    }
    for p in [11, 31, 41] {
        let r = run_check("s3_suite", p).unwrap();
        assert!(r.holds, "s3 at {p}: {:?}", r.note);
    }
    assert!(run_check("gamma_feq", 13).unwrap().holds);
    assert!(run_check("logderiv_de", 13).unwrap().holds);
    assert_eq!(lookup("suntj_half").unwrap().k, 3);
}
