//! Text and JSON rendering of command results.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Series,
    Invariants,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u64>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsSection {
    pub d: usize,
    pub dimension: u64,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub group_order: usize,
    pub degrees: Vec<DegreeRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsSection>,
}

impl Report {
    pub fn all_agree(&self) -> bool {
        self.degrees.iter().all(|r| r.agree)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, view: View) -> String {
        let mut out = String::new();
        writeln!(out, "group_order = {}", self.group_order).unwrap();
        match view {
            View::Series => {
                let a: Vec<String> = self
                    .degrees
                    .iter()
                    .filter_map(|r| r.series)
                    .map(|x| x.to_string())
                    .collect();
                writeln!(out, "a = [{}]", a.join(", ")).unwrap();
            }
            View::Invariants => {
                if let Some(inv) = &self.invariants {
                    writeln!(out, "a_{} = {}", inv.d, inv.dimension).unwrap();
                    for f in &inv.basis {
                        writeln!(out, "{f}").unwrap();
                    }
                }
            }
            View::Verify => {
                let cell = |x: Option<u64>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
                writeln!(
                    out,
                    "{:>3} {:>8} {:>8} {:>8}  agree",
                    "d", "series", "trace", "rank"
                )
                .unwrap();
                for r in &self.degrees {
                    writeln!(
                        out,
                        "{:>3} {:>8} {:>8} {:>8}  {}",
                        r.d,
                        cell(r.series),
                        cell(r.trace),
                        cell(r.rank),
                        if r.agree { "yes" } else { "NO" }
                    )
                    .unwrap();
                }
                writeln!(out, "{}", if self.all_agree() { "OK" } else { "MISMATCH" }).unwrap();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            group_order: 4,
            degrees: (0..3)
                .map(|d| DegreeRow {
                    d,
                    series: Some(1),
                    trace: Some(1),
                    rank: Some(1),
                    agree: d != 2,
                })
                .collect(),
            invariants: None,
        }
    }

    #[test]
    fn json_round_trips() {
        let r = sample();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn verify_table_ends_with_verdict() {
        let text = sample().to_text(View::Verify);
        assert!(text.ends_with("MISMATCH\n"));
        assert!(text.lines().nth(4).unwrap().ends_with("NO"));
    }
}
