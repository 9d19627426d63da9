//! Detailed dumps of one check at one prime: both sides, the quantities
//! they are built from, and exact rational forms where affordable.

use super::exact::{exact_sides, fermat_quotient_exact, fibonacci_quotient_exact};
use super::{lookup, run_check, CheckError, CheckReport, SMALL_PRIME_CAP};
use crate::exactq::{gauss_2f1_padic, harmonic, instances, reduce_rational_mod, HypSpec, Rational};
use crate::modring::{legendre, Modulus, ValuedResidue};
use crate::padic_gamma::{gamma_p, GammaQuery};

/// One labelled quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLine {
    pub label: String,
    pub value: String,
}

#[derive(Debug, Clone)]
pub struct OracleDump {
    pub report: CheckReport,
    pub lines: Vec<OracleLine>,
}

fn line(label: impl Into<String>, value: impl ToString) -> OracleLine {
    OracleLine { label: label.into(), value: value.to_string() }
}

fn show_rational(r: &Rational, m: &Modulus) -> String {
    match reduce_rational_mod(r, m).reduce(m) {
        Ok(res) => format!("{r} = {res} (mod {m})"),
        Err(_) => format!("{r} (not {}-integral)", m.p()),
    }
}

fn show_valued(v: &ValuedResidue) -> String {
    match (v.valuation(), v.unit()) {
        (Some(e), Some(u)) => format!("p^{e} * {u} (unit mod {})", u.modulus()),
        _ => "0".to_string(),
    }
}

/// Everything the oracle knows about `id` at `p`.
pub fn oracle_dump(id: &str, p: u64) -> Result<OracleDump, CheckError> {
    let spec = lookup(id).ok_or_else(|| CheckError::UnknownCheck(id.to_string()))?;
    let report = run_check(id, p)?;
    let k = report.k();
    let mk = Modulus::new(p, k.max(1))?;
    let m1 = Modulus::new(p, 1)?;
    let mut lines = vec![
        line("check", spec.id),
        line("statement", spec.statement),
        line("modulus", mk),
        line("lhs", report.lhs),
        line("rhs", report.rhs),
        line("verdict", if report.holds { "holds" } else { "FAILS" }),
    ];
    if let Some(note) = &report.note {
        lines.push(line("detail", note));
    }
    let exact_ok = p <= SMALL_PRIME_CAP;
    if exact_ok {
        lines.push(line("q_p(2)", show_rational(&fermat_quotient_exact(2, p), &m1)));
        lines.push(line("q_p(3)", show_rational(&fermat_quotient_exact(3, p), &m1)));
        if p != 5 {
            lines.push(line("f_p", show_rational(&fibonacci_quotient_exact(p), &m1)));
        }
    }
    lines.push(line("(2/p)", legendre(2, p)));
    lines.push(line("(3/p)", legendre(3, p)));
    lines.push(line("(p/5)", legendre(p as i128, 5)));

    let n = (p - 1) / 2;
    let hs: Vec<u64> = match id {
        "myw" | "s3_suite" => vec![n, (p - 1) / 5, 3 * (p - 1) / 10],
        "lemmaL_half" => vec![p / 2],
        "lemmaL_third" => vec![p / 3],
        "lemmaL_sixth" => vec![p / 6],
        _ => vec![],
    };
    for j in hs {
        let h = harmonic(j as i64);
        let shown = if exact_ok { show_rational(&h, &m1) } else { reduce_rational_mod(&h, &m1).to_string() };
        lines.push(line(format!("H_{j}"), shown));
    }

    if exact_ok {
        if let Some((l, r)) = exact_sides(id, p)? {
            lines.push(line("lhs exact", show_rational(&l, &mk)));
            lines.push(line("rhs exact", show_rational(&r, &mk)));
        }
    }

    let series: Vec<(&str, Result<HypSpec, _>)> = match id {
        "s2_suite" | "pfaff_1586" | "euler_1581" | "quad_15814" => {
            vec![("A", instances::order3_a(p)), ("D", instances::order3_d(p))]
        }
        "s3_suite" => vec![("A", instances::order5_a(p)), ("D", instances::order5_d(p))],
        _ => vec![],
    };
    let m3 = Modulus::new(p, 3)?;
    for (name, s) in series {
        let v = gauss_2f1_padic(&s?, &m3)?;
        lines.push(line(name, show_valued(&v)));
    }
    if id == "s2_suite" {
        let m2 = Modulus::new(p, 2)?;
        for (label, x) in [("Gamma_p(1/2)", (1, 2)), ("Gamma_p(1/3)", (1, 3)), ("Gamma_p(1/6)", (1, 6))] {
            let g = gamma_p(&GammaQuery::new(crate::exactq::rat(x.0, x.1), m2)?);
            lines.push(line(label, format!("{g} (mod {m2})")));
        }
    }
    Ok(OracleDump { report, lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(d: &OracleDump, label: &str) -> String {
        d.lines.iter().find(|l| l.label == label).map(|l| l.value.clone()).unwrap_or_default()
    }

    #[test]
    fn macong3_at_seven() {
        let d = oracle_dump("macong3", 7).unwrap();
        assert_eq!(value(&d, "lhs"), "5");
        assert_eq!(value(&d, "rhs"), "5");
        assert_eq!(value(&d, "lhs exact"), "291/5 = 5 (mod 7)");
        assert!(value(&d, "q_p(2)").starts_with("9 = 2"));
    }

    #[test]
    fn myw_at_eleven() {
        let d = oracle_dump("myw", 11).unwrap();
        assert!(value(&d, "H_5").starts_with("137/60"));
        assert!(value(&d, "H_2").starts_with("3/2"));
        assert!(value(&d, "H_3").starts_with("11/6"));
        assert_eq!((value(&d, "lhs"), value(&d, "rhs")), ("8".into(), "8".into()));
    }

    #[test]
    fn inapplicable_prime_names_the_class() {
        let err = oracle_dump("mcong1", 11).unwrap_err().to_string();
        assert!(err.contains("p≡1 (mod 3)"), "{err}");
    }
}
