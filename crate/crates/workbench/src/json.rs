//! JSON reports. Field order is declaration order and rationals are
//! `"n/d"` strings, so identical inputs give identical bytes.

use cifsuper_core::theoremsuite::{ControlsReport, TheoremReport};
use cifsuper_core::{CifSet, Degree, Report};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn input_digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub vector: Vec<u8>,
    pub mem: [String; 2],
    pub non: [String; 2],
}

fn pair(d: Degree) -> [String; 2] {
    [d.r.to_string(), d.w.to_string()]
}

/// One row per vector in canonical index order.
pub fn rows(set: &CifSet) -> Vec<Row> {
    let alg = set.algebra();
    set.table()
        .iter()
        .enumerate()
        .map(|(i, d)| Row {
            vector: alg.vector_at(i).coords().to_vec(),
            mem: pair(d.mem()),
            non: pair(d.non()),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct ComputeReport<'a> {
    pub version: &'static str,
    pub input_sha256: String,
    pub operation: &'a str,
    pub space: &'a str,
    pub warnings: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport<'a> {
    pub version: &'static str,
    pub input_sha256: String,
    pub check: &'a str,
    pub name: &'a str,
    pub with: Option<&'a str>,
    pub holds: bool,
    pub witness: Option<String>,
}

impl<'a> CheckReport<'a> {
    pub fn from_report(digest: String, check: &'a str, name: &'a str, with: Option<&'a str>, r: Report) -> Self {
        CheckReport {
            version: VERSION,
            input_sha256: digest,
            check,
            name,
            with,
            holds: r.holds(),
            witness: r.witness.map(|w| w.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FailureRow {
    pub seed: u64,
    pub digest: String,
    pub witness: String,
}

#[derive(Debug, Serialize)]
pub struct ControlRow {
    pub control: &'static str,
    pub trials_run: usize,
    pub first_failure: Option<FailureRow>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport<'a> {
    pub version: &'static str,
    pub input_sha256: String,
    pub theorem: &'static str,
    pub claim: &'static str,
    pub space: &'a str,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub failures: Vec<FailureRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub controls: Vec<ControlRow>,
    pub note: Option<&'static str>,
}

fn failure_row(f: &cifsuper_core::theoremsuite::Failure) -> FailureRow {
    FailureRow {
        seed: f.seed,
        digest: format!("{:016x}", f.digest),
        witness: f.witness.clone(),
    }
}

impl<'a> VerifyReport<'a> {
    pub fn new(
        digest: String,
        space: &'a str,
        seed: u64,
        report: &TheoremReport,
        controls: Option<&ControlsReport>,
    ) -> Self {
        VerifyReport {
            version: VERSION,
            input_sha256: digest,
            theorem: report.theorem.as_str(),
            claim: report.theorem.claim(),
            space,
            seed,
            trials: report.trials,
            passed: report.passed(),
            failures: report.failures.iter().map(failure_row).collect(),
            controls: controls
                .map(|c| {
                    c.outcomes
                        .iter()
                        .map(|o| ControlRow {
                            control: o.control.as_str(),
                            trials_run: o.trials_run,
                            first_failure: o.first_failure.as_ref().map(failure_row),
                        })
                        .collect()
                })
                .unwrap_or_default(),
            note: report.note,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use cifsuper_core::{CifDegree, Parity, PrimeField, Superalgebra};
    use std::sync::Arc;

    #[test]
    fn trivial_set_on_line() {
        let f3 = PrimeField::new(3).unwrap();
        let line = Arc::new(Superalgebra::abelian(f3, vec![Parity::Even]).unwrap());
        let r = rows(&CifSet::trivial(line));
        assert_eq!(r.len(), 3);
        assert_eq!(r[0].mem, ["1/1".to_string(), "1/1".to_string()]);
        assert_eq!(r[1].non, ["1/1".to_string(), "1/1".to_string()]);
        let text = serde_json::to_string(&r[0]).unwrap();
        assert_eq!(text, r#"{"vector":[0],"mem":["1/1","1/1"],"non":["0/1","0/1"]}"#);
    }

    #[test]
    fn degree_strings() {
        let f3 = PrimeField::new(3).unwrap();
        let line = Arc::new(Superalgebra::abelian(f3, vec![Parity::Even]).unwrap());
        let d = CifDegree::new(
            Degree::from_ratios(2, 3, 1, 2).unwrap(),
            Degree::from_ratios(1, 4, 1, 3).unwrap(),
        )
        .unwrap();
        let set = CifSet::new(line.clone(), [(line.basis(0), d)], CifDegree::ABSENT).unwrap();
        let r = &rows(&set)[1];
        assert_eq!(r.mem, ["2/3".to_string(), "1/2".to_string()]);
        assert_eq!(r.non, ["1/4".to_string(), "1/3".to_string()]);
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            input_digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
