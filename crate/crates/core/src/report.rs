//! Batch verification of the character identities and report rendering.
//!
//! `verify_md` compares the normalized Demazure side with the fermionic
//! side; `verify_xm` compares the one-dimensional sum with the fermionic
//! side (type A only). Verdicts are exact: equality of Laurent polynomials
//! per dominant weight with identical supports.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::cartan::{Family, RootSystemData};
use crate::demazure_side::dside_normalized;
use crate::error::{Error, Result};
use crate::fermionic::mside;
use crate::groupring::ClassicalDecomposition;
use crate::kr_crystal::one_dim_sum;
use crate::nu::NuSequence;
use crate::qpoly::QPoly;
use crate::weight::{AffineWeight, FiniteWeight};
use crate::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Demazure side versus fermionic side.
    MD,
    /// One-dimensional sum versus fermionic side.
    XM,
}

impl Comparison {
    pub fn label(self) -> &'static str {
        match self {
            Comparison::MD => "M=D",
            Comparison::XM => "X=M",
        }
    }
    /// (lhs, rhs) column names for rendering.
    pub fn side_names(self) -> (&'static str, &'static str) {
        match self {
            Comparison::MD => ("dside", "mside"),
            Comparison::XM => ("xside", "mside"),
        }
    }
}

/// One dominant weight's worth of comparison data.
#[derive(Debug, Clone)]
pub struct MuEntry {
    pub mu: FiniteWeight,
    pub lhs: QPoly,
    pub rhs: QPoly,
    pub equal: bool,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub family: Family,
    pub rank: usize,
    pub nu: NuSequence,
    pub comparison: Comparison,
    /// The normalization constant C with D-side = e^{l_p Lambda_0} q^C (...);
    /// present for M=D reports.
    pub c_const: Option<Rat>,
    pub entries: Vec<MuEntry>,
    pub verdict: bool,
    pub lhs_ms: u128,
    pub rhs_ms: u128,
}

fn compare(
    lhs: &ClassicalDecomposition,
    rhs: &ClassicalDecomposition,
) -> (Vec<MuEntry>, bool) {
    let support: BTreeSet<&FiniteWeight> = lhs.coeffs.keys().chain(rhs.coeffs.keys()).collect();
    let mut entries = Vec::with_capacity(support.len());
    let mut verdict = true;
    for mu in support {
        let l = lhs.coeffs.get(mu).cloned().unwrap_or_else(QPoly::zero);
        let r = rhs.coeffs.get(mu).cloned().unwrap_or_else(QPoly::zero);
        let equal = l == r;
        verdict &= equal;
        entries.push(MuEntry {
            mu: mu.clone(),
            lhs: l,
            rhs: r,
            equal,
        });
    }
    (entries, verdict)
}

/// Verifies the Demazure/fermionic identity for one nu. The levels are
/// sorted ascending first (the fermionic side is reorder-invariant, so this
/// is sound and matches the Demazure side's precondition).
pub fn verify_md(
    rs: &RootSystemData,
    nu: &NuSequence,
    budget: Option<u64>,
) -> Result<VerificationReport> {
    let sorted = nu.sorted();
    let t0 = Instant::now();
    let (dside, c_const) = dside_normalized(rs, &sorted, budget)?;
    let lhs_ms = t0.elapsed().as_millis();
    let t1 = Instant::now();
    let fermi = mside(rs, &sorted)?;
    let rhs_ms = t1.elapsed().as_millis();
    let (entries, verdict) = compare(&dside, &fermi);
    Ok(VerificationReport {
        family: rs.family,
        rank: rs.rank,
        nu: sorted,
        comparison: Comparison::MD,
        c_const: Some(c_const),
        entries,
        verdict,
        lhs_ms,
        rhs_ms,
    })
}

/// Verifies the one-dimensional-sum/fermionic identity for one nu (type A).
pub fn verify_xm(
    rs: &RootSystemData,
    nu: &NuSequence,
    budget: Option<u64>,
) -> Result<VerificationReport> {
    if rs.family != Family::A {
        return Err(Error::UnsupportedType(format!(
            "the one-dimensional-sum comparison needs type A, got {}_{}",
            rs.family, rs.rank
        )));
    }
    let t0 = Instant::now();
    let xside = one_dim_sum(rs, nu, budget)?;
    let lhs_ms = t0.elapsed().as_millis();
    let t1 = Instant::now();
    let fermi = mside(rs, nu)?;
    let rhs_ms = t1.elapsed().as_millis();
    let (entries, verdict) = compare(&xside, &fermi);
    Ok(VerificationReport {
        family: rs.family,
        rank: rs.rank,
        nu: nu.clone(),
        comparison: Comparison::XM,
        c_const: None,
        entries,
        verdict,
        lhs_ms,
        rhs_ms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("unknown format '{other}'"))),
        }
    }
}

fn poly_json(p: &QPoly) -> serde_json::Value {
    serde_json::Value::Array(
        p.terms()
            .map(|(e, c)| {
                serde_json::json!({
                    "exponent": e.to_string(),
                    "coeff": c,
                })
            })
            .collect(),
    )
}

fn mu_string(mu: &FiniteWeight) -> String {
    AffineWeight::from_classical(mu.clone()).render()
}

/// Deterministic rendering of a batch of reports.
///
/// JSON schema (version 1): {"schema": 1, "all_true": bool, "reports":
/// [{"comparison", "type", "rank", "nu", "C", "verdict", "lhs_ms",
/// "rhs_ms", "entries": [{"mu", "<lhs name>", "<rhs name>", "equal"}]}]}
/// where polynomials are lists of {"exponent", "coeff"}.
///
/// CSV schema: header `comparison,type,rank,nu,mu,lhs,rhs,equal`; the nu,
/// mu, lhs, rhs fields are double-quoted; one row per dominant weight.
/// Timings are reported only in text format so that JSON and CSV output is
/// byte-stable across runs.
pub fn emit_report(reports: &[VerificationReport], format: Format, verbose: bool) -> String {
    match format {
        Format::Json => {
            let arr: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    let (lname, rname) = r.comparison.side_names();
                    serde_json::json!({
                        "comparison": r.comparison.label(),
                        "type": r.family.to_string(),
                        "rank": r.rank,
                        "nu": r.nu.render(),
                        "C": r.c_const.map(|c| c.to_string()),
                        "verdict": r.verdict,
                        "entries": r.entries.iter().map(|e| {
                            serde_json::json!({
                                "mu": mu_string(&e.mu),
                                lname: poly_json(&e.lhs),
                                rname: poly_json(&e.rhs),
                                "equal": e.equal,
                            })
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "schema": 1,
                "all_true": reports.iter().all(|r| r.verdict),
                "reports": arr,
            });
            serde_json::to_string_pretty(&doc).expect("json rendering")
        }
        Format::Csv => {
            let mut out = String::from("comparison,type,rank,nu,mu,lhs,rhs,equal\n");
            for r in reports {
                for e in &r.entries {
                    out.push_str(&format!(
                        "{},{},{},\"{}\",\"{}\",\"{}\",\"{}\",{}\n",
                        r.comparison.label(),
                        r.family,
                        r.rank,
                        r.nu.render(),
                        mu_string(&e.mu),
                        e.lhs.render(),
                        e.rhs.render(),
                        e.equal
                    ));
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let (lname, rname) = r.comparison.side_names();
                out.push_str(&format!(
                    "{} {}_{} nu={} -> {}{}\n",
                    r.comparison.label(),
                    r.family,
                    r.rank,
                    r.nu.render(),
                    if r.verdict { "OK" } else { "MISMATCH" },
                    match r.c_const {
                        Some(c) => format!("  (C = {c})"),
                        None => String::new(),
                    },
                ));
                if verbose {
                    out.push_str(&format!(
                        "  timings: {} {} ms, {} {} ms\n",
                        lname, r.lhs_ms, rname, r.rhs_ms
                    ));
                }
                for e in &r.entries {
                    if verbose || !e.equal {
                        out.push_str(&format!(
                            "  mu = {:<24} {} = {:<24} {} = {:<24} {}\n",
                            mu_string(&e.mu),
                            lname,
                            e.lhs.render(),
                            rname,
                            e.rhs.render(),
                            if e.equal { "ok" } else { "DIFF" }
                        ));
                    }
                }
            }
            if reports.is_empty() {
                out.push_str("no comparisons requested\n");
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::root_system;

    #[test]
    fn verify_md_examples() {
        let a1 = root_system(Family::A, 1).unwrap();
        let r = verify_md(&a1, &NuSequence::new(vec![(1, 1), (1, 1)]), None).unwrap();
        assert!(r.verdict);
        assert_eq!(r.entries.len(), 2);

        let d4 = root_system(Family::D, 4).unwrap();
        let r = verify_md(&d4, &NuSequence::new(vec![(2, 1)]), None).unwrap();
        assert!(r.verdict);
        let zero = vec![0i64; 4];
        let mut w2 = vec![0i64; 4];
        w2[1] = 1;
        let by_mu: std::collections::BTreeMap<_, _> =
            r.entries.iter().map(|e| (e.mu.clone(), e.lhs.clone())).collect();
        assert_eq!(by_mu[&w2], QPoly::one());
        assert_eq!(by_mu[&zero], QPoly::monomial(Rat::from_integer(-1), 1));

        let a2 = root_system(Family::A, 2).unwrap();
        let r = verify_md(&a2, &NuSequence::new(vec![(1, 1), (2, 2)]), None).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn verify_md_sorts_levels() {
        let a1 = root_system(Family::A, 1).unwrap();
        let r = verify_md(&a1, &NuSequence::new(vec![(1, 2), (1, 1)]), None).unwrap();
        assert!(r.verdict);
        assert_eq!(r.nu.pairs, vec![(1, 1), (1, 2)]);
    }

    #[test]
    fn verify_xm_examples() {
        let a1 = root_system(Family::A, 1).unwrap();
        assert!(verify_xm(&a1, &NuSequence::new(vec![(1, 1), (1, 1)]), None)
            .unwrap()
            .verdict);
        assert!(verify_xm(&a1, &NuSequence::new(vec![(1, 2), (1, 1)]), None)
            .unwrap()
            .verdict);
        let a2 = root_system(Family::A, 2).unwrap();
        assert!(
            verify_xm(&a2, &NuSequence::new(vec![(1, 1), (1, 1), (2, 1)]), None)
                .unwrap()
                .verdict
        );
        let d4 = root_system(Family::D, 4).unwrap();
        assert!(verify_xm(&d4, &NuSequence::new(vec![(1, 1)]), None).is_err());
    }

    #[test]
    fn emit_formats_deterministic() {
        let a1 = root_system(Family::A, 1).unwrap();
        let r = verify_md(&a1, &NuSequence::new(vec![(1, 1)]), None).unwrap();
        let reports = vec![r];
        let j1 = emit_report(&reports, Format::Json, false);
        let j2 = emit_report(&reports, Format::Json, false);
        assert_eq!(j1, j2);
        let parsed: serde_json::Value = serde_json::from_str(&j1).unwrap();
        assert_eq!(parsed["all_true"], serde_json::Value::Bool(true));
        let csv = emit_report(&reports, Format::Csv, false);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "comparison,type,rank,nu,mu,lhs,rhs,equal");
        assert!(csv.lines().count() >= 2);
        let text = emit_report(&reports, Format::Text, true);
        assert!(text.contains("OK"));
        assert!(emit_report(&[], Format::Text, false).contains("no comparisons"));
    }
}
