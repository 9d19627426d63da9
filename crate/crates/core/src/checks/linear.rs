use super::{CheckError, Outcome, PrimeContext};
use crate::exactq::{rat, Rational};
use crate::modring::{legendre, Modulus, Residue, RingOps};
use crate::sequences::{fermat_quotient, fibonacci_quotient};

/// Closed-form ingredients at one prime, in `Residue` arithmetic.
struct Closed {
    p: u64,
}

impl Closed {
    fn m(&self, k: u32) -> Modulus {
        Modulus::new(self.p, k).expect("p is an odd prime")
    }

    /// `q_p(a)` lifted into `Z/p^k` (known modulo `p^(k-1)` at least).
    fn q(&self, a: i64, k: u32) -> Result<Residue, CheckError> {
        let q = fermat_quotient(a, self.p, k)?;
        Ok(self.m(k).from_u128(q.value()))
    }

    fn f(&self, k: u32) -> Result<Residue, CheckError> {
        let f = fibonacci_quotient(self.p, k)?;
        Ok(self.m(k).from_u128(f.value()))
    }

    fn sym(&self, a: i128, k: u32) -> Residue {
        self.m(k).from_i64(legendre(a, self.p) as i64)
    }

    /// `(p/5)`.
    fn p_over_5(&self, k: u32) -> Residue {
        self.m(k).from_i64(legendre(self.p as i128, 5) as i64)
    }

    fn p_pow(&self, k: u32) -> Residue {
        self.m(k).from_u128(self.p as u128)
    }

    fn frac(&self, num: i64, den: i64, k: u32) -> Residue {
        self.m(k).ratio(num as i128, den as i128).expect("small denominators are prime to p")
    }

    /// `C(n, j)` by one product of numerators, one of denominators and a
    /// single inversion.
    fn binomial(&self, n: u64, j: u64, k: u32) -> Residue {
        let m = self.m(k);
        let (mut num, mut den) = (m.one(), m.one());
        for i in 0..j {
            num = num * m.from_u128((n - i) as u128);
            den = den * m.from_u128((i + 1) as u128);
        }
        num * den.inv().expect("j < p")
    }
}

pub(super) fn eval<R: RingOps>(id: &str, ctx: &PrimeContext<R>) -> Result<Outcome, CheckError> {
    let p = ctx.p;
    let n = ctx.n;
    let r = &ctx.ring;
    let c = Closed { p };
    let one = |k| c.m(k).one();
    let out = match id {
        "ncong1" => {
            let lhs = ctx.cb_sum(r.from_i64(-2), 0, p - 1);
            let rhs = one(3) - c.frac(4, 3, 3) * c.p_pow(3) * c.q(2, 3)?;
            Outcome::new(ctx.residue(lhs, 3), rhs)
        }
        "ncong2c" | "ncong2_literal" => {
            let lhs = ctx.cb_sum(ctx.ratio(-1, 32), 0, n);
            let q = c.q(2, 3)?;
            let pp = c.p_pow(3);
            let last = if id == "ncong2c" { q * q } else { q };
            let rhs = c.sym(2, 3) * (one(3) + pp * q * c.frac(1, 6, 3) - pp * pp * last * c.frac(1, 8, 3));
            Outcome::new(ctx.residue(lhs, 3), rhs)
        }
        "pansun34" => Outcome::new(ctx.residue(ctx.cb_sum(ctx.ratio(-1, 4), 0, 3 * p / 4), 2), c.sym(2, 2)),
        "mao_2p3" => Outcome::new(ctx.residue(ctx.cb_sum(r.one(), 1, 2 * p / 3), 2), c.m(2).zero()),
        "mao_5p6" => Outcome::new(ctx.residue(ctx.cb_sum(ctx.ratio(1, 16), 0, 5 * p / 6), 2), c.sym(3, 2)),
        "mcong1" => Outcome::new(ctx.residue(ctx.cb_sum(r.from_i64(-2), 1, 2 * p / 3), 2), c.m(2).zero()),
        "mcong2" => Outcome::new(ctx.residue(ctx.cb_sum(ctx.ratio(-1, 32), 0, 5 * p / 6), 2), c.sym(2, 2)),
        "mcong3" => Outcome::new(ctx.residue(ctx.cb_sum(r.from_i64(-1), 1, 4 * p / 5), 2), c.m(2).zero()),
        "mcong4" => Outcome::new(ctx.residue(ctx.cb_sum(ctx.ratio(-1, 16), 1, 7 * p / 10), 2), c.m(2).zero()),
        "macong3" | "macong5" => {
            let (d, base) = if id == "macong3" { (3, 8) } else { (5, 4) };
            let cut = (p - 1) / d;
            let row = ctx.row();
            let x = r.from_u64(base);
            let mut acc = r.zero();
            for j in (0..=n).rev() {
                acc = r.mul(acc, x);
                if j != cut {
                    acc = r.add(acc, r.mul(row[j as usize], ctx.inv_mod_p(d as i64 * j as i64 + 1)));
                }
            }
            let b = c.binomial(n, cut, 1);
            let rhs = if id == "macong3" {
                -(c.frac(1, 3, 1) * b * c.q(2, 1)?)
            } else {
                -(c.m(1).from_u64(4).pow(cut as u128) * b * c.f(1)?)
            };
            Outcome::new(ctx.residue(acc, 1), rhs).cut(cut)
        }
        "lemmaL_half" => Outcome::new(ctx.residue(ctx.harmonic()[(p / 2) as usize], 1), -(c.q(2, 1)?.scale(2))),
        "lemmaL_third" => {
            Outcome::new(ctx.residue(ctx.harmonic()[(p / 3) as usize], 1), -(c.frac(3, 2, 1) * c.q(3, 1)?))
        }
        "lemmaL_sixth" => Outcome::new(
            ctx.residue(ctx.harmonic()[(p / 6) as usize], 1),
            -(c.q(2, 1)?.scale(2)) - c.frac(3, 2, 1) * c.q(3, 1)?,
        ),
        "lemmaMTc" | "lemmaMT_literal" => {
            let lhs = ctx.cb_sum_over_k(r.from_i64(-2), 1, p - 1);
            let q = c.q(2, 2)?;
            let last = if id == "lemmaMTc" { q * q } else { q };
            let rhs = -(q.scale(4)) + c.p_pow(2) * last.scale(4);
            Outcome::new(ctx.residue(lhs, 2), rhs)
        }
        "w5" => {
            let mut acc = r.zero();
            for j in 1..=4 * p / 5 {
                let t = ctx.inv[j as usize];
                acc = if j % 2 == 1 { r.sub(acc, t) } else { r.add(acc, t) };
            }
            Outcome::new(ctx.residue(acc, 1), c.frac(5, 2, 1) * c.f(1)?)
        }
        "myw" => {
            let h = ctx.harmonic();
            let (m, rr) = ((p - 1) / 5, 3 * (p - 1) / 10);
            let lhs = r.sub(r.add(h[n as usize], h[m as usize]), h[rr as usize]);
            Outcome::new(ctx.residue(lhs, 1), -(c.f(1)?.scale(5)))
        }
        "sunlemma" | "sunlemma_literal" => {
            let ks = if id == "sunlemma" { 1..=n } else { n..=p - 1 };
            let target = r.from_i64(-2 * p as i64);
            let term = |k: u64| r.mul(r.mul(r.from_u64(k), ctx.cb[k as usize]), ctx.cb[(p - k) as usize]);
            Outcome::first_failure_by(
                ks,
                |k| ctx.congruent(term(k), target, 2),
                |k| Outcome::new(ctx.residue(term(k), 2), ctx.residue(target, 2)).note(format!("k = {k}")),
            )
        }
        "binom_half" => {
            let row = ctx.row();
            let mut pows = Vec::with_capacity(n as usize + 1);
            let (four, mut pw) = (r.from_i64(-4), r.one());
            for _ in 0..=n {
                pows.push(pw);
                pw = r.mul(pw, four);
            }
            let rhs = |k: u64| r.mul(row[k as usize], pows[k as usize]);
            Outcome::first_failure_by(
                0..=n,
                |k| ctx.congruent(ctx.cb[k as usize], rhs(k), 1),
                |k| Outcome::new(ctx.residue(ctx.cb[k as usize], 1), ctx.residue(rhs(k), 1)).note(format!("k = {k}")),
            )
        }
        "mt_fib" => {
            let lhs = ctx.cb_sum_over_k(r.from_i64(-1), 1, p - 1);
            let f = c.f(2)?;
            Outcome::new(ctx.residue(lhs, 2), -(f.scale(5)) + c.p_pow(2) * f * f.scale(5))
        }
        "suntj_full" => {
            let lhs = ctx.cb_sum(r.from_i64(-1), 0, p - 1);
            let rhs = c.p_over_5(3) * (one(3) - c.p_pow(3) * c.f(3)?.scale(2));
            Outcome::new(ctx.residue(lhs, 3), rhs)
        }
        "suntj_half" => {
            let lhs = ctx.cb_sum(ctx.ratio(-1, 16), 0, n);
            let rhs = c.p_over_5(3) * (one(3) + c.p_pow(3) * c.f(3)? * c.frac(1, 2, 3));
            Outcome::new(ctx.residue(lhs, 3), rhs)
        }
        "gp21" | "gp22" => partial_sum_relation(ctx, id == "gp21"),
        other => return Err(CheckError::UnknownCheck(other.to_string())),
    };
    Ok(out)
}

/// The `x` values the partial-sum relations run at.
pub(crate) fn gp_xs() -> Vec<Rational> {
    [(-2, 1), (-1, 1), (1, 1), (2, 1), (3, 1), (-1, 32), (-1, 16)].iter().map(|&(a, b)| rat(a, b)).collect()
}

/// Cut indices: `1`, `n`, and the class cuts `(p-1)/3, (p-1)/6` or
/// `(p-1)/5, 3(p-1)/10`.
pub(crate) fn gp_cuts(p: u64) -> Vec<u64> {
    let n = (p - 1) / 2;
    let mut cuts = vec![1, n];
    if p % 3 == 1 {
        cuts.extend([(p - 1) / 3, (p - 1) / 6]);
    }
    if p % 5 == 1 {
        cuts.extend([(p - 1) / 5, 3 * (p - 1) / 10]);
    }
    cuts.sort_unstable();
    cuts.dedup();
    cuts
}

/// Everything the two partial-sum relations need at one `x`.
pub(super) struct GpData<E> {
    x: Rational,
    /// `n p z^n / (z+1)^(n+1)`.
    pre: E,
    /// Sums of `C(2k,k) x^k` over `0..p` and `0..=n`.
    full: E,
    half: E,
    /// `sum_{k=1}^n C(2k,k) y^k / k` at `y = x` and `y = 1/(16x)`.
    head_lower: E,
    head_upper: E,
    /// Per cut `m`: the prefix sum up to `p-1-m` and
    /// `z^m / C(n,m) * sum_{j != m} C(n,j) z^-j / (j-m)`.
    cuts: Vec<(u64, E, E)>,
}

pub(super) fn gp_data<R: RingOps>(ctx: &PrimeContext<R>) -> Vec<GpData<R::Elem>> {
    let r = &ctx.ring;
    let (p, n) = (ctx.p, ctx.n);
    let row = ctx.row();
    let cuts = gp_cuts(p);
    let pn = r.mul(r.from_u64(n), r.from_u64(p));
    let mut out = Vec::new();
    for x in gp_xs() {
        let xn: i64 = x.numer().try_into().expect("small x");
        let xd: i64 = x.denom().try_into().expect("small x");
        // z = -1/(4x); skipped when z + 1 = 0 mod p
        if (4 * xn - xd).rem_euclid(p as i64) == 0 {
            continue;
        }
        let xe = ctx.ratio(xn, xd);
        let z = ctx.ratio(-xd, 4 * xn);
        let zinv = r.inv(z).expect("z is a unit");
        let zp1 = r.add(z, r.one());
        let pre = r.mul(r.mul(pn, r.pow(z, n)), r.inv(r.pow(zp1, n + 1)).expect("z + 1 is a unit"));

        // descending Horner: s = sum_{k=j}^{p-1} cb[k] x^(k-j), recorded
        // at j = p-m for each cut and at j = n+1
        let mut suffix = vec![r.zero(); cuts.len()];
        let mut suffix_half = r.zero();
        let mut s = r.zero();
        for j in (0..p).rev() {
            s = r.add(r.mul(s, xe), ctx.cb[j as usize]);
            if j == n + 1 {
                suffix_half = s;
            }
            if let Some(i) = cuts.iter().position(|&m| m == p - j) {
                suffix[i] = s;
            }
        }
        let full = s;
        let prefix_below = |j: u64, sj| r.sub(full, r.mul(r.pow(xe, j), sj));
        let half = prefix_below(n + 1, suffix_half);

        let w: Vec<R::Elem> = {
            let mut zk = r.one();
            row.iter()
                .map(|&c| {
                    let v = r.mul(c, zk);
                    zk = r.mul(zk, zinv);
                    v
                })
                .collect()
        };
        let cut_data = cuts
            .iter()
            .zip(&suffix)
            .map(|(&m, &sm)| {
                let m_ = m as usize;
                let below = dot(r, &w[..m_], ctx.inv[1..=m_].iter().rev());
                let above = dot(r, &w[m_ + 1..], ctx.inv[1..].iter());
                let tail = r.sub(above, below);
                let scale = r.mul(r.pow(z, m), r.inv(row[m as usize]).expect("C(n, m) is a unit"));
                (m, prefix_below(p - m, sm), r.mul(scale, tail))
            })
            .collect();
        out.push(GpData {
            x,
            pre,
            full,
            half,
            head_lower: ctx.cb_sum_over_k(xe, 1, n),
            head_upper: ctx.cb_sum_over_k(r.inv(r.mul(r.from_u64(16), xe)).expect("x is a unit"), 1, n),
            cuts: cut_data,
        });
    }
    out
}

fn dot<'a, R: RingOps>(r: &R, a: &[R::Elem], b: impl Iterator<Item = &'a R::Elem>) -> R::Elem
where
    R::Elem: 'a,
{
    a.iter().zip(b).fold(r.zero(), |acc, (&u, &v)| r.add(acc, r.mul(u, v)))
}

fn partial_sum_relation<R: RingOps>(ctx: &PrimeContext<R>, lower: bool) -> Outcome {
    let r = &ctx.ring;
    let n = ctx.n;
    let h = ctx.harmonic();
    let mut parts = Vec::new();
    for d in ctx.gp() {
        for &(m, prefix_m, lm) in &d.cuts {
            let (lhs, rhs) = if lower {
                let hs = r.sub(r.add(h[n as usize], h[m as usize]), h[(n - m) as usize]);
                let bracket = r.sub(r.add(d.head_lower, hs), lm);
                (r.sub(prefix_m, r.one()), r.add(r.sub(d.full, r.one()), r.mul(d.pre, bracket)))
            } else {
                // the upper tail is -z^n times the lower one, by k -> n-k
                let hs = r.add(r.sub(h[n as usize], h[m as usize]), h[(n - m) as usize]);
                let bracket = r.add(r.add(d.head_upper, hs), lm);
                (prefix_m, r.sub(d.half, r.mul(d.pre, bracket)))
            };
            parts.push(
                Outcome::new(ctx.residue(lhs, 2), ctx.residue(rhs, 2))
                    .cut(m)
                    .x(d.x.clone())
                    .note(format!("x = {}, m = {m}", d.x)),
            );
        }
    }
    Outcome::first_failure(parts)
}
