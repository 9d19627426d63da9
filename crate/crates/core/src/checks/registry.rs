use serde::Serialize;

use crate::primes::PrimeClass;

/// How expensive a check is per prime, and so where it may run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CostClass {
    /// A constant number of passes over `O(p)` terms; sweepable.
    Linear,
    /// Exact rationals or `O(p^2)` gamma tables; capped at [`SMALL_PRIME_CAP`].
    SmallPrime,
    /// Prime-free identities run over an `(n, m)` grid.
    Grid,
}

impl CostClass {
    pub fn label(&self) -> &'static str {
        match self {
            CostClass::Linear => "O(p)",
            CostClass::SmallPrime => "O(p^2) small-p",
            CostClass::Grid => "grid",
        }
    }
}

/// Primes above this bound need `--force` for small-prime checks.
pub const SMALL_PRIME_CAP: u64 = 500;

/// Whether the statement is expected to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    /// The literal printed form, kept to document where it breaks.
    ExpectedFail,
}

/// The primes a check applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassReq {
    pub modulus: u64,
    pub residue: u64,
    /// Smallest prime the check runs at.
    pub floor: u64,
    pub label: &'static str,
}

impl ClassReq {
    const fn new(modulus: u64, residue: u64, floor: u64, label: &'static str) -> Self {
        ClassReq { modulus, residue, floor, label }
    }

    pub fn admits(&self, p: u64) -> bool {
        p >= self.floor && p % self.modulus == self.residue % self.modulus
    }

    /// The sieve class for `[p_min, p_max]`.
    pub fn prime_class(&self, p_min: u64, p_max: u64) -> PrimeClass {
        PrimeClass::new(self.modulus, self.residue, p_min.max(self.floor), p_max)
    }

    /// Matches `--class` filters such as `1mod3` or `p>5`.
    pub fn matches_filter(&self, filter: &str) -> bool {
        let f: String = filter.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if let Some((r, m)) = f.split_once("mod") {
            return match (r.parse::<u64>(), m.parse::<u64>()) {
                (Ok(r), Ok(m)) => self.modulus == m && self.residue == r % m,
                _ => false,
            };
        }
        if let Some(b) = f.strip_prefix("p>") {
            return self.modulus == 1 && b.parse::<u64>().is_ok_and(|b| self.floor == next_prime_above(b));
        }
        f == "all" || (f == "odd" && self.modulus == 1 && self.floor == 3)
    }
}

fn next_prime_above(b: u64) -> u64 {
    (b + 1..).find(|&n| crate::primes::is_prime(n)).expect("primes are unbounded")
}

pub const ODD: ClassReq = ClassReq::new(1, 0, 3, "odd p");
pub const GT3: ClassReq = ClassReq::new(1, 0, 5, "p>3");
pub const GT5: ClassReq = ClassReq::new(1, 0, 7, "p>5");
pub const ONE_MOD_3: ClassReq = ClassReq::new(3, 1, 7, "p≡1 (mod 3)");
pub const ONE_MOD_4: ClassReq = ClassReq::new(4, 1, 5, "p≡1 (mod 4)");
pub const ONE_MOD_5: ClassReq = ClassReq::new(5, 1, 11, "p≡1 (mod 5)");
const GRID: ClassReq = ClassReq::new(1, 0, 3, "prime-free");

/// One registry row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub class: ClassReq,
    /// Modulus exponent of the reported congruence.
    pub k: u32,
    pub cost: CostClass,
    pub status: Status,
}

impl CheckSpec {
    pub fn floor(&self) -> u64 {
        self.class.floor
    }

    pub fn is_sweepable(&self) -> bool {
        self.cost != CostClass::Grid
    }

    /// Part of the default sweep.
    pub fn is_default(&self) -> bool {
        self.is_sweepable() && self.status == Status::Holds
    }

    /// Whether `p` lies within the cost cap.
    pub fn within_cap(&self, p: u64) -> bool {
        self.cost != CostClass::SmallPrime || p <= SMALL_PRIME_CAP
    }
}

const fn spec(id: &'static str, statement: &'static str, class: ClassReq, k: u32, cost: CostClass) -> CheckSpec {
    CheckSpec { id, statement, class, k, cost, status: Status::Holds }
}

const fn literal(id: &'static str, statement: &'static str, class: ClassReq, k: u32) -> CheckSpec {
    CheckSpec { id, statement, class, k, cost: CostClass::Linear, status: Status::ExpectedFail }
}

use CostClass::{Grid, Linear, SmallPrime};

/// Every check, in report order.
pub static REGISTRY: &[CheckSpec] = &[
    spec("ncong1", "sum_{k=0}^{p-1} C(2k,k)(-2)^k = 1 - 4p q_p(2)/3", GT3, 3, Linear),
    spec("ncong2c", "sum_{k=0}^{(p-1)/2} C(2k,k)/(-32)^k = (2/p)(1 + p q_p(2)/6 - p^2 q_p(2)^2/8)", GT3, 3, Linear),
    literal("ncong2_literal", "sum_{k=0}^{(p-1)/2} C(2k,k)/(-32)^k = (2/p)(1 + p q_p(2)/6 - p^2 q_p(2)/8), as printed; fails at p=5", GT3, 3),
    spec("pansun34", "sum_{k=0}^{floor(3p/4)} C(2k,k)/(-4)^k = (2/p)", ONE_MOD_4, 2, Linear),
    spec("mao_2p3", "sum_{k=1}^{floor(2p/3)} C(2k,k) = 0", ONE_MOD_3, 2, Linear),
    spec("mao_5p6", "sum_{k=0}^{floor(5p/6)} C(2k,k)/16^k = (3/p)", ONE_MOD_3, 2, Linear),
    spec("mcong1", "sum_{k=1}^{floor(2p/3)} C(2k,k)(-2)^k = 0", ONE_MOD_3, 2, Linear),
    spec("mcong2", "sum_{k=0}^{floor(5p/6)} C(2k,k)/(-32)^k = (2/p)", ONE_MOD_3, 2, Linear),
    spec("mcong3", "sum_{k=1}^{floor(4p/5)} C(2k,k)(-1)^k = 0", ONE_MOD_5, 2, Linear),
    spec("mcong4", "sum_{k=1}^{floor(7p/10)} C(2k,k)/(-16)^k = 0", ONE_MOD_5, 2, Linear),
    spec("macong3", "sum_{k=0, k!=(p-1)/3}^{(p-1)/2} C((p-1)/2,k) 8^k/(3k+1) = -C((p-1)/2,(p-1)/3) q_p(2)/3", ONE_MOD_3, 1, Linear),
    spec("macong5", "sum_{k=0, k!=(p-1)/5}^{(p-1)/2} C((p-1)/2,k) 4^k/(5k+1) = -4^{(p-1)/5} C((p-1)/2,(p-1)/5) f_p", ONE_MOD_5, 1, Linear),
    spec("lemmaL_half", "H_{floor(p/2)} = -2 q_p(2)", GT3, 1, Linear),
    spec("lemmaL_third", "H_{floor(p/3)} = -3 q_p(3)/2", GT3, 1, Linear),
    spec("lemmaL_sixth", "H_{floor(p/6)} = -2 q_p(2) - 3 q_p(3)/2", GT3, 1, Linear),
    spec("lemmaMTc", "sum_{k=1}^{p-1} C(2k,k)(-2)^k/k = -4 q_p(2) + 4p q_p(2)^2", GT3, 2, Linear),
    literal("lemmaMT_literal", "sum_{k=1}^{p-1} C(2k,k)(-2)^k/k = -4 q_p(2) + 4p q_p(2), as printed; fails at p=5", GT3, 2),
    spec("w5", "sum_{k=1}^{floor(4p/5)} (-1)^k/k = 5 f_p/2", GT5, 1, Linear),
    spec("myw", "H_{(p-1)/2} + H_{(p-1)/5} - H_{3(p-1)/10} = -5 f_p", ONE_MOD_5, 1, Linear),
    spec("sunlemma", "k C(2k,k) C(2(p-k),p-k) = -2p for 1 <= k <= (p-1)/2", GT3, 2, Linear),
    literal("sunlemma_literal", "k C(2k,k) C(2(p-k),p-k) = -2p for (p-1)/2 <= k <= p-1, as printed; fails at (p,k)=(5,3)", GT3, 2),
    spec("binom_half", "C(2k,k) = C((p-1)/2,k)(-4)^k for 0 <= k <= (p-1)/2", ODD, 1, Linear),
    spec("mt_fib", "sum_{k=1}^{p-1} C(2k,k)(-1)^k/k = -5 f_p + 5p f_p^2", GT5, 2, Linear),
    spec("suntj_full", "sum_{k=0}^{p-1} C(2k,k)(-1)^k = (p/5)(1 - 2p f_p)", GT5, 3, Linear),
    spec("suntj_half", "sum_{k=0}^{(p-1)/2} C(2k,k)/(-16)^k = (p/5)(1 + p f_p/2); holds mod p^3 for every p <= 500", GT5, 3, Linear),
    spec("gp21", "lower partial sum of C(2k,k) x^k against the full sum plus n p z^n/(z+1)^{n+1} times a harmonic correction, z = -1/(4x)", GT3, 2, Linear),
    spec("gp22", "upper partial sum of C(2k,k) x^k against the half sum minus n p z^n/(z+1)^{n+1} times a harmonic correction, z = -1/(4x)", GT3, 2, Linear),
    spec("s2_suite", "order-3 series: Gamma_p product expansions of p A, p F, p D, p G mod p^2 and the mod p relations linking A-F, D-G, C((p-1)/2,(p-1)/3)", ONE_MOD_3, 2, SmallPrime),
    spec("s3_suite", "order-5 series: decomposition of the 5k+1 sum into A-F and D-G, their harmonic forms mod p, and the exact closed forms of A and D", ONE_MOD_5, 1, SmallPrime),
    spec("pfaff_1586", "Pfaff reflection of the z=-8 order-3 series onto z=1/9, exact", ONE_MOD_3, 3, SmallPrime),
    spec("euler_1581", "order-3 z=-1/8 series equals 2^{(p-1)/6} times a z=1/2 series, exact", ONE_MOD_3, 3, SmallPrime),
    spec("quad_15814", "order-3 z=-1/8 series equals 2^{(1-p)/6} times a z=-1 series, exact", ONE_MOD_3, 3, SmallPrime),
    spec("gamma_feq", "Gamma_p(x+1)/Gamma_p(x) = -x for p !| x, -1 for p | x, all 0 <= x < p^2", GT3, 2, SmallPrime),
    spec("logderiv_de", "Gamma_p'/Gamma_p(a) - Gamma_p'/Gamma_p(b) = H_{p-<-a>_p-1} - H_{p-<-b>_p-1}", GT5, 1, SmallPrime),
    spec("polid1", "(z+1)^{n+1}/n sum_{k<m} z^k/C(n-1,k) as an explicit polynomial of degree n+m", GRID, 0, Grid),
    spec("polid2", "(z+1)^{n+1}/n sum_{m<=k<n} z^k/C(n-1,k) as an explicit polynomial of degree n+m", GRID, 0, Grid),
    spec("coeffid", "(1/n) sum_{k<m} C(n+1,d-k)/C(n-1,k) in closed form for 0 <= d <= n+m", GRID, 0, Grid),
    spec("ek2004_t20", "2F1(-n, 1/2-n; 4n+3/2; 1/5) and its 4n+5/2 variant in Pochhammer closed form", GRID, 0, Grid),
];

pub fn lookup(id: &str) -> Option<&'static CheckSpec> {
    REGISTRY.iter().find(|s| s.id == id)
}

/// The full registry.
pub fn list_checks() -> &'static [CheckSpec] {
    REGISTRY
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_contract() {
        assert!(REGISTRY.len() >= 28);
        let m = lookup("mcong1").unwrap();
        assert_eq!((m.class, m.k, m.cost), (ONE_MOD_3, 2, Linear));
        assert_eq!(lookup("s2_suite").unwrap().cost, SmallPrime);
        let mut ids: Vec<&str> = REGISTRY.iter().map(|s| s.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
    }

    #[test]
    fn literal_variants_are_expected_failures() {
        for s in REGISTRY.iter().filter(|s| s.id.ends_with("_literal")) {
            assert_eq!(s.status, Status::ExpectedFail);
            assert!(!s.is_default());
        }
    }

    #[test]
    fn class_filters() {
        let ids: Vec<&str> = REGISTRY.iter().filter(|s| s.class.matches_filter("1mod5")).map(|s| s.id).collect();
        assert_eq!(ids, vec!["mcong3", "mcong4", "macong5", "myw", "s3_suite"]);
        assert!(GT5.matches_filter("p>5"));
        assert!(!GT3.matches_filter("p>5"));
        assert!(ONE_MOD_3.admits(7) && !ONE_MOD_3.admits(13 + 2));
    }
}
