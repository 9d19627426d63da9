use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Poly, Rational};

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: i64) -> Rational {
    (1..=n).map(|k| Rational::new(BigInt::one(), BigInt::from(k))).sum()
}

fn brat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn frac(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// The two partial-sum identities for `sum z^k / C(n-1, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyIdentity {
    /// Lower segment `k = 0..m-1`.
    Lower,
    /// Upper segment `k = m..n-1`.
    Upper,
}

/// Both sides of the identity as polynomials in `z`.
pub fn polid_sides(which: PolyIdentity, n: i64, m: i64) -> (Poly, Poly) {
    assert!(1 <= m && m <= n, "polynomial identity needs 1 <= m <= n");
    let z_plus_1 = Poly::new(vec![Rational::one(), Rational::one()]);
    let prefactor = z_plus_1.pow((n + 1) as u32).scale(&Rational::new(BigInt::one(), BigInt::from(n)));
    let range = match which {
        PolyIdentity::Lower => 0..m,
        PolyIdentity::Upper => m..n,
    };
    let mut inner = Poly::zero();
    for k in range {
        inner = &inner + &Poly::monomial(frac(BigInt::one(), binomial(n - 1, k)), k as usize);
    }
    let lhs = &prefactor * &inner;

    let mut head = Poly::zero();
    for k in 1..=n {
        let deg = match which {
            PolyIdentity::Lower => n - k,
            PolyIdentity::Upper => n + k,
        };
        head = &head + &Poly::monomial(frac(binomial(n, k), BigInt::from(k)), deg as usize);
    }
    let (hn, hm, hnm) = (harmonic(n), harmonic(m), harmonic(n - m));
    let middle_coeff = match which {
        PolyIdentity::Lower => hn + hm - hnm,
        PolyIdentity::Upper => hn - hm + hnm,
    };
    let middle = Poly::monomial(middle_coeff, n as usize);
    let mut tail = Poly::zero();
    for k in (0..=n).filter(|&k| k != m) {
        tail = &tail + &Poly::monomial(frac(binomial(n, k), BigInt::from(k - m)), (n - k + m) as usize);
    }
    let tail = tail.scale(&frac(BigInt::one(), binomial(n, m)));
    let rhs = match which {
        PolyIdentity::Lower => &(&head + &middle) - &tail,
        PolyIdentity::Upper => &(&head + &middle) + &tail,
    };
    (lhs, rhs)
}

/// Coefficient-exact comparison of the two sides.
pub fn polid_check(which: PolyIdentity, n: i64, m: i64) -> bool {
    let (lhs, rhs) = polid_sides(which, n, m);
    lhs == rhs
}

/// The coefficient of `z^d` in the lower identity, evaluated both ways:
/// `(1/n) sum_{k<m} C(n+1, d-k) / C(n-1, k)` against its two-case closed form.
pub fn coeffid_sides(n: i64, m: i64, d: i64) -> (Rational, Rational) {
    assert!(1 <= m && m <= n && 0 <= d && d <= n + m, "coefficient identity out of range");
    let lhs: Rational =
        (0..m).map(|k| frac(binomial(n + 1, d - k), binomial(n - 1, k))).sum::<Rational>() / brat(BigInt::from(n));
    let rhs = if d == n {
        harmonic(n) + harmonic(m) - harmonic(n - m)
    } else {
        let inner = brat(binomial(n, n - d)) - frac(binomial(n, n + m - d), binomial(n, m));
        inner / brat(BigInt::from(n - d))
    };
    (lhs, rhs)
}

pub fn coeffid_check(n: i64, m: i64, d: i64) -> bool {
    let (lhs, rhs) = coeffid_sides(n, m, d);
    lhs == rhs
}
