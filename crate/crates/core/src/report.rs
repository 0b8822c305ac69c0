//! Serializable report shapes for classification results and sweeps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::completeness::{Certificate, Verdict};
use crate::equivalence::EquivalenceClass;
use crate::isa::MethodSet;

/// A verdict with sequences rendered in the sequence grammar and
/// targets named by their class representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerdictReport {
    Bound { k: usize, witnesses: BTreeMap<String, String> },
    Incomplete { target: String, certificate: Certificate },
    Unknown { kmax: usize, resolved: BTreeMap<String, String> },
}

impl From<&Verdict> for VerdictReport {
    fn from(v: &Verdict) -> VerdictReport {
        let render = |pairs: &[(crate::completeness::Target, crate::isa::InstructionSeq)]| {
            pairs
                .iter()
                .map(|(t, w)| (t.code(), w.to_string()))
                .collect::<BTreeMap<String, String>>()
        };
        match v {
            Verdict::Bound { k, witnesses } => {
                VerdictReport::Bound { k: *k, witnesses: render(witnesses) }
            }
            Verdict::CertifiedIncomplete { target, certificate } => VerdictReport::Incomplete {
                target: target.code(),
                certificate: *certificate,
            },
            Verdict::UnknownBeyond { kmax, resolved } => {
                VerdictReport::Unknown { kmax: *kmax, resolved: render(resolved) }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub methods: Vec<String>,
    pub verdict: VerdictReport,
}

/// Full sweep output: every subset in bitmask order, with any subsets
/// left unresolved called out separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub base: Vec<String>,
    pub kmax: usize,
    pub subsets: Vec<SubsetReport>,
    /// Method lists of subsets whose verdict is neither a bound nor a
    /// certificate.
    pub unresolved: Vec<Vec<String>>,
}

impl SweepReport {
    pub fn new(base: MethodSet, kmax: usize, entries: &[(MethodSet, Verdict)]) -> SweepReport {
        let subsets: Vec<SubsetReport> = entries
            .iter()
            .map(|(m, v)| SubsetReport { methods: m.codes(), verdict: v.into() })
            .collect();
        let unresolved = entries
            .iter()
            .filter(|(_, v)| matches!(v, Verdict::UnknownBeyond { .. }))
            .map(|(m, _)| m.codes())
            .collect();
        SweepReport { base: base.codes(), kmax, subsets, unresolved }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// One row per subset; witnesses are elided, only the bound or the
    /// certificate kind is kept.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("methods,kind,k,target,certificate\n");
        for s in &self.subsets {
            let methods = s.methods.join(" ");
            match &s.verdict {
                VerdictReport::Bound { k, .. } => {
                    out.push_str(&format!("{methods},bound,{k},,\n"));
                }
                VerdictReport::Incomplete { target, certificate } => {
                    let cert = match certificate {
                        Certificate::Unwritable { input, required } => {
                            format!("unwritable {}->{}", *input as u8, *required as u8)
                        }
                        Certificate::InputBlindBranching => "input-blind-branching".into(),
                    };
                    out.push_str(&format!("{methods},incomplete,,{target},{cert}\n"));
                }
                VerdictReport::Unknown { kmax, .. } => {
                    out.push_str(&format!("{methods},unknown,{kmax},,\n"));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub representative: String,
    pub members: Vec<String>,
    pub size: usize,
}

impl From<&EquivalenceClass> for ClassReport {
    fn from(c: &EquivalenceClass) -> ClassReport {
        ClassReport {
            representative: c.representative.to_string(),
            members: c.members.iter().map(|m| m.to_string()).collect(),
            size: c.members.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::{strict_bound, sweep_subsets};

    #[test]
    fn subset_report_shape() {
        let m = MethodSet::parse_codes("cc").unwrap();
        let report = SubsetReport {
            methods: m.codes(),
            verdict: (&strict_bound(m, 6)).into(),
        };
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["methods"][0], "cc");
        assert_eq!(json["verdict"]["kind"], "bound");
        assert_eq!(json["verdict"]["k"], 3);
        assert_eq!(json["verdict"]["witnesses"]["f.ff"], "+f.cc ; f.cc");
    }

    #[test]
    fn incomplete_report_shape() {
        let m = MethodSet::parse_codes("ff").unwrap();
        let report: VerdictReport = (&strict_bound(m, 6)).into();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["kind"], "incomplete");
        assert_eq!(json["certificate"]["kind"], "unwritable");
    }

    #[test]
    fn sweep_report_round_trips_and_is_stable() {
        let base = MethodSet::parse_codes("ff,cc").unwrap();
        let entries = sweep_subsets(base, 4);
        let report = SweepReport::new(base, 4, &entries);
        let json = report.to_json();
        assert_eq!(json, SweepReport::new(base, 4, &sweep_subsets(base, 4)).to_json());
        let back: SweepReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
        assert_eq!(report.to_csv().lines().count(), 4);
    }
}
