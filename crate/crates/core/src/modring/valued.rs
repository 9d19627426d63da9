use std::fmt;

use super::{add_mod, checked_prime_power, inv_mod, mul_mod, ModError, Modulus, Residue};

/// The operations `vr_arith` supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VrOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Repr {
    /// `p^e * unit`, unit coprime to `p` and known modulo `p^kappa`.
    Unit { e: i64, unit: u128, kappa: u32 },
    /// Zero modulo `p^prec`; `None` is a genuine zero.
    Zero { prec: Option<i64> },
}

/// A p-adic number `p^e * u` whose unit `u` is known modulo `p^kappa`, so the
/// value itself is known modulo `p^(e + kappa)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuedResidue {
    p: u64,
    repr: Repr,
}

fn pk(p: u64, k: u32) -> u128 {
    checked_prime_power(p, k).expect("valued residue precision overflows 2^127")
}

fn split_p(mut v: u128, p: u64) -> (u32, u128) {
    let p = p as u128;
    let mut n = 0;
    while v != 0 && v.is_multiple_of(p) {
        v /= p;
        n += 1;
    }
    (n, v)
}

impl ValuedResidue {
    /// `p^e * unit` with `unit` read modulo `p^kappa`. A unit divisible by
    /// `p` is renormalized, shrinking `kappa`.
    pub fn new(p: u64, e: i64, unit: u128, kappa: u32) -> Result<Self, ModError> {
        if kappa == 0 {
            return Err(ModError::PrecisionExhausted);
        }
        let m = pk(p, kappa);
        Ok(Self::normalize(p, e, unit % m, kappa))
    }

    fn normalize(p: u64, e: i64, unit: u128, kappa: u32) -> Self {
        if unit == 0 {
            return ValuedResidue { p, repr: Repr::Zero { prec: Some(e + kappa as i64) } };
        }
        let (shift, u) = split_p(unit, p);
        let kappa = kappa - shift;
        ValuedResidue { p, repr: Repr::Unit { e: e + shift as i64, unit: u % pk(p, kappa), kappa } }
    }

    /// An element of `Z/p^k` viewed as a p-adic integer known modulo `p^k`.
    pub fn from_residue(r: &Residue) -> Self {
        let md = r.modulus();
        Self::normalize(md.p(), 0, r.value(), md.k())
    }

    /// Zero known modulo `p^prec`.
    pub fn zero_mod(p: u64, prec: i64) -> Self {
        ValuedResidue { p, repr: Repr::Zero { prec: Some(prec) } }
    }

    /// A genuine zero, exact at every precision.
    pub fn exact_zero(p: u64) -> Self {
        ValuedResidue { p, repr: Repr::Zero { prec: None } }
    }

    pub fn one(p: u64, kappa: u32) -> Self {
        ValuedResidue { p, repr: Repr::Unit { e: 0, unit: 1 % pk(p, kappa), kappa } }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    /// `Some(e)` for a nonzero value.
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Unit { e, .. } => Some(e),
            Repr::Zero { .. } => None,
        }
    }

    /// Relative precision of the unit part; zero for zero values.
    pub fn kappa(&self) -> u32 {
        match self.repr {
            Repr::Unit { kappa, .. } => kappa,
            Repr::Zero { .. } => 0,
        }
    }

    /// The unit part as an element of `Z/p^kappa`.
    pub fn unit(&self) -> Option<Residue> {
        match self.repr {
            Repr::Unit { unit, kappa, .. } => Some(Modulus::same_prime(self.p, kappa).ok()?.from_u128(unit)),
            Repr::Zero { .. } => None,
        }
    }

    /// The exponent `N` such that the value is known modulo `p^N`;
    /// `None` when exact.
    pub fn abs_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::Unit { e, kappa, .. } => Some(e + kappa as i64),
            Repr::Zero { prec } => prec,
        }
    }

    /// Drops unit digits beyond `kappa`.
    pub fn truncate(&self, kappa: u32) -> Result<Self, ModError> {
        match self.repr {
            Repr::Unit { e, unit, kappa: have } => {
                if kappa > have || kappa == 0 {
                    return Err(ModError::PrecisionExhausted);
                }
                Ok(ValuedResidue { p: self.p, repr: Repr::Unit { e, unit: unit % pk(self.p, kappa), kappa } })
            }
            Repr::Zero { .. } => Ok(*self),
        }
    }

    fn check_prime(&self, other: &Self) -> Result<(), ModError> {
        if self.p != other.p {
            return Err(ModError::ModulusMismatch { left: self.p.to_string(), right: other.p.to_string() });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        match self.repr {
            Repr::Unit { e, unit, kappa } => {
                let m = pk(self.p, kappa);
                ValuedResidue { p: self.p, repr: Repr::Unit { e, unit: (m - unit) % m, kappa } }
            }
            Repr::Zero { .. } => *self,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ModError> {
        self.check_prime(other)?;
        let p = self.p;
        match (self.repr, other.repr) {
            (Repr::Zero { prec: a }, Repr::Zero { prec: b }) => {
                let prec = match (a, b) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (x, None) | (None, x) => x,
                };
                Ok(ValuedResidue { p, repr: Repr::Zero { prec } })
            }
            (Repr::Zero { prec }, Repr::Unit { e, unit, kappa })
            | (Repr::Unit { e, unit, kappa }, Repr::Zero { prec }) => match prec {
                None => Ok(ValuedResidue { p, repr: Repr::Unit { e, unit, kappa } }),
                Some(pi) if pi <= e => Ok(ValuedResidue::zero_mod(p, pi)),
                Some(pi) => {
                    let kappa = kappa.min((pi - e) as u32);
                    Ok(ValuedResidue { p, repr: Repr::Unit { e, unit: unit % pk(p, kappa), kappa } })
                }
            },
            (Repr::Unit { e: ea, unit: ua, kappa: ka }, Repr::Unit { e: eb, unit: ub, kappa: kb }) => {
                let ((ea, ua, ka), (eb, ub, kb)) =
                    if ea <= eb { ((ea, ua, ka), (eb, ub, kb)) } else { ((eb, ub, kb), (ea, ua, ka)) };
                let abs = (ea + ka as i64).min(eb + kb as i64);
                let rel = (abs - ea) as u32;
                let m = pk(p, rel);
                let d = (eb - ea) as u64;
                let sum = if d >= rel as u64 {
                    ua % m
                } else {
                    let shifted = mul_mod(ub % m, pk(p, d as u32) % m, m);
                    add_mod(ua % m, shifted, m)
                };
                Ok(Self::normalize(p, ea, sum, rel))
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ModError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ModError> {
        self.check_prime(other)?;
        let p = self.p;
        Ok(match (self.repr, other.repr) {
            (Repr::Zero { prec: None }, _) | (_, Repr::Zero { prec: None }) => Self::exact_zero(p),
            (Repr::Zero { prec: Some(a) }, Repr::Zero { prec: Some(b) }) => Self::zero_mod(p, a + b),
            (Repr::Zero { prec: Some(pi) }, Repr::Unit { e, .. })
            | (Repr::Unit { e, .. }, Repr::Zero { prec: Some(pi) }) => Self::zero_mod(p, pi + e),
            (Repr::Unit { e: ea, unit: ua, kappa: ka }, Repr::Unit { e: eb, unit: ub, kappa: kb }) => {
                let kappa = ka.min(kb);
                let m = pk(p, kappa);
                let unit = mul_mod(ua % m, ub % m, m);
                ValuedResidue { p, repr: Repr::Unit { e: ea + eb, unit, kappa } }
            }
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ModError> {
        self.check_prime(other)?;
        let p = self.p;
        match (self.repr, other.repr) {
            (_, Repr::Zero { prec: None }) => Err(ModError::DivisionByZero),
            (_, Repr::Zero { prec: Some(_) }) => Err(ModError::PrecisionExhausted),
            (Repr::Zero { prec: None }, _) => Ok(Self::exact_zero(p)),
            (Repr::Zero { prec: Some(pi) }, Repr::Unit { e, .. }) => Ok(Self::zero_mod(p, pi - e)),
            (Repr::Unit { e: ea, unit: ua, kappa: ka }, Repr::Unit { e: eb, unit: ub, kappa: kb }) => {
                let kappa = ka.min(kb);
                let m = pk(p, kappa);
                let inv = inv_mod(ub % m, m).expect("unit part is coprime to p");
                let unit = mul_mod(ua % m, inv, m);
                Ok(ValuedResidue { p, repr: Repr::Unit { e: ea - eb, unit, kappa } })
            }
        }
    }

    /// Dispatch form of the four arithmetic operations.
    pub fn apply(&self, op: VrOp, other: &Self) -> Result<Self, ModError> {
        match op {
            VrOp::Add => self.add(other),
            VrOp::Sub => self.sub(other),
            VrOp::Mul => self.mul(other),
            VrOp::Div => self.div(other),
        }
    }

    /// Multiplies by `p^s`.
    pub fn shift(&self, s: i64) -> Self {
        match self.repr {
            Repr::Unit { e, unit, kappa } => ValuedResidue { p: self.p, repr: Repr::Unit { e: e + s, unit, kappa } },
            Repr::Zero { prec } => ValuedResidue { p: self.p, repr: Repr::Zero { prec: prec.map(|x| x + s) } },
        }
    }

    /// The residue modulo `target`; needs a p-adic integer known to at least
    /// `target.k()` digits.
    pub fn reduce(&self, target: &Modulus) -> Result<Residue, ModError> {
        if target.p() != self.p {
            return Err(ModError::ModulusMismatch { left: self.p.to_string(), right: target.to_string() });
        }
        let k = target.k() as i64;
        match self.repr {
            Repr::Zero { prec } => match prec {
                Some(pi) if pi < k => Err(ModError::PrecisionExhausted),
                _ => Ok(target.zero()),
            },
            Repr::Unit { e, unit, kappa } => {
                if e < 0 {
                    return Err(ModError::NegativeValuation(e));
                }
                if e + (kappa as i64) < k {
                    return Err(ModError::PrecisionExhausted);
                }
                if e >= k {
                    return Ok(target.zero());
                }
                Ok(target.from_u128(unit) * target.from_u128(pk(self.p, e as u32)))
            }
        }
    }
}

impl fmt::Display for ValuedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::Unit { e, unit, kappa } => write!(f, "{}^{} * {} (mod {}^{})", self.p, e, unit, self.p, kappa),
            Repr::Zero { prec: Some(pi) } => write!(f, "0 (mod {}^{})", self.p, pi),
            Repr::Zero { prec: None } => write!(f, "0"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vr(p: u64, e: i64, u: u128, k: u32) -> ValuedResidue {
        ValuedResidue::new(p, e, u, k).unwrap()
    }

    #[test]
    fn valuation_cancellation() {
        let x = vr(7, -1, 1, 3).mul(&vr(7, 1, 1, 3)).unwrap();
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.unit().unwrap().value(), 1);
        assert_eq!(x.kappa(), 3);
    }

    #[test]
    fn full_cancellation_gives_zero() {
        let x = vr(5, 0, 1, 2).add(&vr(5, 0, 24, 2)).unwrap();
        assert!(x.is_zero());
        assert_eq!(x.abs_precision(), Some(2));
    }

    #[test]
    fn mixed_valuation_sum() {
        // 2/5 + 3 = 17/5
        let x = vr(5, -1, 2, 3).add(&vr(5, 0, 3, 3)).unwrap();
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.unit().unwrap().value(), 17);
        assert_eq!(x.kappa(), 3);
    }

    #[test]
    fn partial_cancellation_loses_digits() {
        // 1 + 4 = 5 at p = 5, known mod 5^3: becomes 5 * 1 known mod 5^3
        let x = vr(5, 0, 1, 3).add(&vr(5, 0, 4, 3)).unwrap();
        assert_eq!(x.valuation(), Some(1));
        assert_eq!(x.kappa(), 2);
        assert_eq!(x.abs_precision(), Some(3));
    }

    #[test]
    fn reduce_examples() {
        let m25 = Modulus::new(5, 2).unwrap();
        assert_eq!(vr(5, 1, 3, 2).reduce(&m25).unwrap().value(), 15);
        assert!(matches!(vr(5, -1, 3, 4).reduce(&m25), Err(ModError::NegativeValuation(-1))));
        let z = ValuedResidue::zero_mod(5, 4);
        assert_eq!(z.reduce(&Modulus::new(5, 3).unwrap()).unwrap().value(), 0);
        assert!(matches!(vr(5, 0, 3, 1).reduce(&m25), Err(ModError::PrecisionExhausted)));
    }

    #[test]
    fn division_rules() {
        let x = vr(7, 0, 3, 2).div(&vr(7, 1, 2, 2)).unwrap();
        assert_eq!(x.valuation(), Some(-1));
        let inv2 = Modulus::new(7, 2).unwrap().ratio(3, 2).unwrap();
        assert_eq!(x.unit().unwrap(), inv2);
        assert!(matches!(x.div(&ValuedResidue::zero_mod(7, 2)), Err(ModError::PrecisionExhausted)));
        assert!(matches!(x.div(&ValuedResidue::exact_zero(7)), Err(ModError::DivisionByZero)));
    }

    #[test]
    fn zero_is_additive_identity_up_to_precision() {
        let x = vr(11, 0, 5, 4);
        assert_eq!(x.add(&ValuedResidue::exact_zero(11)).unwrap(), x);
        let y = x.add(&ValuedResidue::zero_mod(11, 2)).unwrap();
        assert_eq!(y.kappa(), 2);
        assert_eq!(y.unit().unwrap().value(), 5);
        assert!(x.shift(3).add(&ValuedResidue::zero_mod(11, 2)).unwrap().is_zero());
    }

    #[test]
    fn kappa_zero_rejected() {
        assert!(matches!(ValuedResidue::new(5, 0, 1, 0), Err(ModError::PrecisionExhausted)));
    }
}
