//! Prime enumeration for sweeps: a segmented sieve over odd numbers,
//! filtered by residue class, plus deterministic Miller-Rabin.

use serde::Serialize;

/// Odd numbers per sieve segment.
const SEGMENT: u64 = 1 << 16;

/// Primes `p` with `p_min <= p <= p_max` and `p = residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeClass {
    pub modulus: u64,
    pub residue: u64,
    pub p_min: u64,
    pub p_max: u64,
}

impl PrimeClass {
    /// Panics if the class is degenerate (`gcd(residue, modulus) != 1`).
    pub fn new(modulus: u64, residue: u64, p_min: u64, p_max: u64) -> Self {
        assert!(modulus >= 1, "class modulus must be positive");
        if modulus > 1 {
            assert_eq!(gcd(residue % modulus, modulus), 1, "residue class must be coprime");
        }
        PrimeClass { modulus, residue: residue % modulus, p_min: p_min.max(3), p_max }
    }

    /// Every odd prime in `[p_min, p_max]`.
    pub fn all(p_min: u64, p_max: u64) -> Self {
        Self::new(1, 0, p_min, p_max)
    }

    pub fn admits(&self, p: u64) -> bool {
        p % self.modulus == self.residue
    }

    pub fn contains(&self, p: u64) -> bool {
        p >= self.p_min && p <= self.p_max && self.admits(p) && is_prime(p)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Ascending stream of the primes in `class`.
pub fn primes_in(class: PrimeClass) -> PrimeIter {
    PrimeIter::new(class)
}

/// Segmented sieve of Eratosthenes over odd numbers.
pub struct PrimeIter {
    class: PrimeClass,
    base: Vec<u64>,
    // first odd number of the current segment
    seg_start: u64,
    seg: Vec<bool>,
    pos: usize,
    done: bool,
}

impl PrimeIter {
    fn new(class: PrimeClass) -> Self {
        let limit = isqrt(class.p_max);
        let base = small_primes(limit);
        let first = class.p_min.max(3) | 1;
        let mut it =
            PrimeIter { class, base, seg_start: first, seg: Vec::new(), pos: 0, done: class.p_min > class.p_max };
        if !it.done {
            it.fill();
        }
        it
    }

    fn fill(&mut self) {
        let lo = self.seg_start;
        if lo > self.class.p_max {
            self.done = true;
            return;
        }
        let count = SEGMENT.min((self.class.p_max - lo) / 2 + 1) as usize;
        self.seg.clear();
        self.seg.resize(count, true);
        let hi = lo + 2 * (count as u64 - 1);
        for &q in self.base.iter().skip(1) {
            if q * q > hi {
                break;
            }
            // first odd multiple of q that is >= max(lo, q*q)
            let mut start = (q * q).max(lo.div_ceil(q) * q);
            if start % 2 == 0 {
                start += q;
            }
            let mut idx = ((start - lo) / 2) as usize;
            while idx < count {
                self.seg[idx] = false;
                idx += q as usize;
            }
        }
        if lo == 1 {
            self.seg[0] = false;
        }
        self.pos = 0;
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while !self.done {
            while self.pos < self.seg.len() {
                let idx = self.pos;
                self.pos += 1;
                if self.seg[idx] {
                    let n = self.seg_start + 2 * idx as u64;
                    if self.class.admits(n) {
                        return Some(n);
                    }
                }
            }
            self.seg_start += 2 * self.seg.len() as u64;
            self.fill();
        }
        None
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Plain sieve of all primes up to `limit`.
fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut comp = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod64(acc, b, m);
        }
        b = mul_mod64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
