use std::fmt::Debug;

use super::{add_mod, inv_mod, mul_mod, sub_mod, Modulus, Residue};

/// Ring operations over a fixed `Z/p^k`, with an element type chosen by the
/// backend. Everything the sweep does per term goes through this trait.
pub trait RingOps: Send + Sync {
    type Elem: Copy + Eq + Debug + Send + Sync;

    fn modulus(&self) -> Modulus;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn from_residue(&self, r: &Residue) -> Self::Elem;
    fn to_residue(&self, a: Self::Elem) -> Residue;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;

    fn neg(&self, a: Self::Elem) -> Self::Elem {
        self.sub(self.zero(), a)
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        let a = self.from_u64(v.unsigned_abs());
        if v < 0 {
            self.neg(a)
        } else {
            a
        }
    }

    fn pow(&self, mut base: Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `num / den` for small integers, `den` coprime to `p`.
    fn ratio(&self, num: i64, den: i64) -> Option<Self::Elem> {
        Some(self.mul(self.from_i64(num), self.inv(self.from_i64(den))?))
    }

    /// Inverses of `1..=n` (index 0 holds zero), by prefix products and a
    /// single extended-Euclid inversion. Requires `n < p`.
    fn inverse_table(&self, n: usize) -> Vec<Self::Elem> {
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(self.one());
        let one = self.one();
        let mut j = self.zero();
        for i in 1..=n {
            j = self.add(j, one);
            let next = self.mul(prefix[i - 1], j);
            prefix.push(next);
        }
        let mut out = vec![self.zero(); n + 1];
        let mut acc = self.inv(prefix[n]).expect("inverse_table needs n < p");
        for i in (1..=n).rev() {
            out[i] = self.mul(acc, prefix[i - 1]);
            acc = self.mul(acc, j);
            j = self.sub(j, one);
        }
        out
    }
}

/// Montgomery arithmetic with `R = 2^64`, for odd moduli below `2^63`.
#[derive(Debug, Clone)]
pub struct Montgomery {
    modulus: Modulus,
    m: u64,
    // -m^{-1} mod 2^64
    m_neg_inv: u64,
    // R^2 mod m
    r2: u64,
}

impl Montgomery {
    pub const LIMIT: u128 = 1 << 63;

    pub fn new(modulus: Modulus) -> Option<Self> {
        if modulus.m() >= Self::LIMIT {
            return None;
        }
        let m = modulus.m() as u64;
        // Newton iteration for m^{-1} mod 2^64
        let mut inv: u64 = m;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        debug_assert_eq!(m.wrapping_mul(inv), 1);
        let r2 = ((u128::MAX % m as u128 + 1) % m as u128) as u64;
        Some(Montgomery { modulus, m, m_neg_inv: inv.wrapping_neg(), r2 })
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let q = (t as u64).wrapping_mul(self.m_neg_inv);
        let s = ((t + q as u128 * self.m as u128) >> 64) as u64;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline(always)]
    fn enter(&self, v: u64) -> u64 {
        self.redc(v as u128 * self.r2 as u128)
    }

    #[inline(always)]
    fn leave(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }
}

impl RingOps for Montgomery {
    type Elem = u64;

    fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        self.enter(1)
    }

    fn from_u64(&self, v: u64) -> u64 {
        self.enter(v % self.m)
    }

    fn from_residue(&self, r: &Residue) -> u64 {
        debug_assert_eq!(r.modulus(), self.modulus);
        self.enter(r.value() as u64)
    }

    fn to_residue(&self, a: u64) -> Residue {
        self.modulus.from_u128(self.leave(a) as u128)
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.m - b)
        }
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    fn inv(&self, a: u64) -> Option<u64> {
        let plain = self.leave(a);
        inv_mod(plain as u128, self.m as u128).map(|v| self.enter(v as u64))
    }
}

/// Plain `u128` residues; covers every modulus below `2^127`.
#[derive(Debug, Clone)]
pub struct WideRing {
    modulus: Modulus,
}

impl WideRing {
    pub fn new(modulus: Modulus) -> Self {
        WideRing { modulus }
    }
}

impl RingOps for WideRing {
    type Elem = u128;

    fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn zero(&self) -> u128 {
        0
    }

    fn one(&self) -> u128 {
        1
    }

    fn from_u64(&self, v: u64) -> u128 {
        v as u128 % self.modulus.m()
    }

    fn from_residue(&self, r: &Residue) -> u128 {
        debug_assert_eq!(r.modulus(), self.modulus);
        r.value()
    }

    fn to_residue(&self, a: u128) -> Residue {
        self.modulus.from_u128(a)
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        add_mod(a, b, self.modulus.m())
    }

    fn sub(&self, a: u128, b: u128) -> u128 {
        sub_mod(a, b, self.modulus.m())
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        mul_mod(a, b, self.modulus.m())
    }

    fn inv(&self, a: u128) -> Option<u128> {
        inv_mod(a, self.modulus.m())
    }
}

/// Backend selection for a modulus: Montgomery when it fits, else wide.
#[derive(Debug, Clone)]
pub enum AnyRing {
    Mont(Montgomery),
    Wide(WideRing),
}

impl AnyRing {
    pub fn new(modulus: Modulus) -> Self {
        match Montgomery::new(modulus) {
            Some(m) => AnyRing::Mont(m),
            None => AnyRing::Wide(WideRing::new(modulus)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_backend<R: RingOps>(ring: &R) {
        let modulus = ring.modulus();
        let m = modulus.m();
        let samples: Vec<u128> = vec![0, 1, 2, 3, m / 3, m / 2, m - 2, m - 1];
        for &a in &samples {
            for &b in &samples {
                let (ra, rb) = (modulus.from_u128(a), modulus.from_u128(b));
                let (ea, eb) = (ring.from_residue(&ra), ring.from_residue(&rb));
                assert_eq!(ring.to_residue(ring.mul(ea, eb)), ra * rb);
                assert_eq!(ring.to_residue(ring.add(ea, eb)), ra + rb);
                assert_eq!(ring.to_residue(ring.sub(ea, eb)), ra - rb);
            }
        }
        let invs = ring.inverse_table(20.min(modulus.p() as usize - 1));
        for (i, &v) in invs.iter().enumerate().skip(1) {
            assert_eq!(ring.to_residue(ring.mul(v, ring.from_u64(i as u64))), modulus.one());
        }
        assert_eq!(ring.to_residue(ring.from_i64(-1)), -modulus.one());
        assert_eq!(ring.to_residue(ring.ratio(3, 2).unwrap()), modulus.ratio(3, 2).unwrap());
    }

    #[test]
    fn montgomery_agrees_with_residue() {
        for (p, k) in [(3, 1), (5, 3), (101, 3), (99991, 3), (2_097_143, 2)] {
            let modulus = Modulus::new(p, k).unwrap();
            check_backend(&Montgomery::new(modulus).unwrap());
            check_backend(&WideRing::new(modulus));
        }
    }

    #[test]
    fn wide_backend_above_two_to_the_63() {
        let modulus = Modulus::new(1_000_000_007, 4).unwrap();
        assert!(Montgomery::new(modulus).is_none());
        assert!(matches!(AnyRing::new(modulus), AnyRing::Wide(_)));
        check_backend(&WideRing::new(modulus));
    }
}
