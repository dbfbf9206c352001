//! Check records shared by the identity suite and the Gerstenhaber suite.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::endo::Cochain;
use crate::error::{Error, Result};
use crate::opcalc::{Defect, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every tuple of standard basis cochains.
    Exhaustive,
    /// Seeded random cochains.
    Random,
    /// Every tuple of basis cohomology classes.
    Classes,
}

/// Aggregated verdict for one check over all tuples of a given degree profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub mode: Mode,
    pub status: Status,
    pub degrees: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// What a single evaluation of a check produced.
#[derive(Debug, Clone)]
pub enum Outcome {
    Pass,
    Fail(Witness),
    NotApplicable(String),
}

impl Outcome {
    pub fn from_defects(defects: &[Defect<Cochain>]) -> Outcome {
        defects
            .iter()
            .find_map(Defect::witness)
            .map_or(Outcome::Pass, Outcome::Fail)
    }

    /// Maps a negative-degree result to "not applicable" and propagates
    /// every other error.
    pub fn from_result(r: Result<Vec<Defect<Cochain>>>) -> Result<Outcome> {
        match r {
            Ok(d) => Ok(Outcome::from_defects(&d)),
            Err(Error::NegativeDegree(n)) => {
                Ok(Outcome::NotApplicable(format!("a term lies in C^{n}, which is zero")))
            }
            Err(e) => Err(e),
        }
    }
}

/// Collects outcomes into one record per (check, degree profile), in a
/// fixed order.
#[derive(Debug)]
pub struct Tally {
    records: BTreeMap<(usize, Vec<usize>), CheckRecord>,
    order: Vec<String>,
    mode: Mode,
}

impl Tally {
    pub fn new(mode: Mode) -> Self {
        Tally { records: BTreeMap::new(), order: Vec::new(), mode }
    }

    fn check_index(&mut self, check: &str) -> usize {
        match self.order.iter().position(|c| c == check) {
            Some(i) => i,
            None => {
                self.order.push(check.to_string());
                self.order.len() - 1
            }
        }
    }

    pub fn add(&mut self, check: &str, degrees: &[usize], seed: Option<u64>, outcome: Outcome) {
        let idx = self.check_index(check);
        let mode = self.mode;
        let rec = self.records.entry((idx, degrees.to_vec())).or_insert_with(|| CheckRecord {
            check: check.to_string(),
            mode,
            status: Status::NotApplicable,
            degrees: degrees.to_vec(),
            seed,
            cases: 0,
            note: None,
            witness: None,
        });
        rec.cases += 1;
        match outcome {
            Outcome::Pass => {
                if rec.status == Status::NotApplicable {
                    rec.status = Status::Pass;
                    rec.note = None;
                }
            }
            Outcome::Fail(w) => {
                if rec.status != Status::Fail {
                    rec.status = Status::Fail;
                    rec.seed = seed;
                    rec.note = None;
                    rec.witness = Some(w);
                }
            }
            Outcome::NotApplicable(why) => {
                if rec.status == Status::NotApplicable && rec.note.is_none() {
                    rec.note = Some(why);
                }
            }
        }
    }

    pub fn into_records(self) -> Vec<CheckRecord> {
        self.records.into_values().collect()
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness() -> Witness {
        Witness { identity: "x".into(), degree: 1, output: 0, inputs: vec![1], lhs: "1".into(), rhs: "0".into() }
    }

    #[test]
    fn tally_merges_by_check_and_degrees() {
        let mut t = Tally::new(Mode::Random);
        t.add("b", &[0, 1], Some(7), Outcome::NotApplicable("why".into()));
        t.add("b", &[0, 1], Some(8), Outcome::Pass);
        t.add("a", &[1], Some(9), Outcome::Pass);
        t.add("a", &[1], Some(10), Outcome::Fail(witness()));
        t.add("a", &[1], Some(11), Outcome::Fail(witness()));
        let r = t.into_records();
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].check.as_str(), r[0].status, r[0].cases, r[0].note.is_none()), ("b", Status::Pass, 2, true));
        assert_eq!((r[1].status, r[1].seed, r[1].cases), (Status::Fail, Some(10), 3));
        assert!(!all_pass(&r));
    }

    #[test]
    fn all_not_applicable_keeps_reason() {
        let mut t = Tally::new(Mode::Exhaustive);
        t.add("c", &[0, 0], None, Outcome::NotApplicable("C^-1".into()));
        let r = t.into_records();
        assert_eq!((r[0].status, r[0].note.as_deref()), (Status::NotApplicable, Some("C^-1")));
        assert!(all_pass(&r));
    }
}
