use std::cell::OnceCell;

use super::linear::{gp_data, GpData};
use crate::modring::{Residue, RingOps};

/// Streams shared by every linear check at one prime, all modulo `p^3`.
pub(crate) struct PrimeContext<R: RingOps> {
    pub ring: R,
    pub p: u64,
    /// `(p-1)/2`.
    pub n: u64,
    /// `inv[j] = 1/j` for `1 <= j < p`; `inv[0] = 0`.
    pub inv: Vec<R::Elem>,
    /// `cb[j] = C(2j, j)` for `0 <= j < p`.
    pub cb: Vec<R::Elem>,
    row: OnceCell<Vec<R::Elem>>,
    harm: OnceCell<Vec<R::Elem>>,
    cb_over_k: OnceCell<Vec<R::Elem>>,
    gp: OnceCell<Vec<GpData<R::Elem>>>,
}

impl<R: RingOps> PrimeContext<R> {
    pub fn new(ring: R) -> Self {
        let p = ring.modulus().p();
        let len = p as usize;
        let inv = ring.inverse_table(len - 1);
        let mut cb = Vec::with_capacity(len);
        let mut c = ring.one();
        cb.push(c);
        for j in 1..len {
            // C(2j, j) = C(2j-2, j-1) * 2(2j-1) / j
            c = ring.mul(ring.mul(c, ring.from_u64(4 * j as u64 - 2)), inv[j]);
            cb.push(c);
        }
        PrimeContext {
            ring,
            p,
            n: (p - 1) / 2,
            inv,
            cb,
            row: OnceCell::new(),
            harm: OnceCell::new(),
            cb_over_k: OnceCell::new(),
            gp: OnceCell::new(),
        }
    }

    /// `C(n, j)` for `0 <= j <= n`.
    pub fn row(&self) -> &[R::Elem] {
        self.row.get_or_init(|| {
            let r = &self.ring;
            let mut out = Vec::with_capacity(self.n as usize + 1);
            let mut c = r.one();
            out.push(c);
            for j in 1..=self.n {
                c = r.mul(r.mul(c, r.from_u64(self.n - j + 1)), self.inv[j as usize]);
                out.push(c);
            }
            out
        })
    }

    /// `H_j` for `0 <= j < p`.
    pub fn harmonic(&self) -> &[R::Elem] {
        self.harm.get_or_init(|| {
            let mut acc = self.ring.zero();
            let mut out = Vec::with_capacity(self.p as usize);
            out.push(acc);
            for &v in &self.inv[1..] {
                acc = self.ring.add(acc, v);
                out.push(acc);
            }
            out
        })
    }

    /// Shared data of the partial-sum relations.
    pub(super) fn gp(&self) -> &[GpData<R::Elem>] {
        self.gp.get_or_init(|| gp_data(self))
    }

    /// `1/v` for any `v` prime to `p`, valid modulo `p` only.
    pub fn inv_mod_p(&self, v: i64) -> R::Elem {
        let r = v.rem_euclid(self.p as i64) as usize;
        debug_assert!(r != 0);
        self.inv[r]
    }

    /// `sum_{k=lo}^{hi} cb[k] x^k`.
    pub fn cb_sum(&self, x: R::Elem, lo: u64, hi: u64) -> R::Elem {
        self.horner(x, lo, hi, |k| self.cb[k])
    }

    /// `sum_{k=lo}^{hi} cb[k] x^k / k`, `lo >= 1`.
    pub fn cb_sum_over_k(&self, x: R::Elem, lo: u64, hi: u64) -> R::Elem {
        let c =
            self.cb_over_k.get_or_init(|| self.cb.iter().zip(&self.inv).map(|(&a, &b)| self.ring.mul(a, b)).collect());
        self.horner(x, lo, hi, |k| c[k])
    }

    fn horner(&self, x: R::Elem, lo: u64, hi: u64, coeff: impl Fn(usize) -> R::Elem) -> R::Elem {
        let r = &self.ring;
        if lo > hi {
            return r.zero();
        }
        let mut acc = r.zero();
        for k in (lo..=hi).rev() {
            acc = r.add(r.mul(acc, x), coeff(k as usize));
        }
        r.mul(acc, r.pow(x, lo))
    }

    /// Residue of `e` modulo `p^k`.
    pub fn residue(&self, e: R::Elem, k: u32) -> Residue {
        self.ring.to_residue(e).reduce_to(k).expect("context works modulo p^3")
    }

    /// `a = b (mod p^k)`.
    pub fn congruent(&self, a: R::Elem, b: R::Elem, k: u32) -> bool {
        let d = self.ring.to_residue(self.ring.sub(a, b)).value();
        d % (self.p as u128).pow(k) == 0
    }

    pub fn ratio(&self, num: i64, den: i64) -> R::Elem {
        self.ring.ratio(num, den).expect("small denominators are prime to p")
    }
}
