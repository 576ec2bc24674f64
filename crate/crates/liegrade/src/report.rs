//! Machine-readable reports and the text input formats the CLI accepts.
//!
//! Reports serialize deterministically: serde_json maps are backed by
//! BTreeMap (sorted keys) and rationals render canonically as `p` or `p/q`.
//! `parse(print(report)) == report` is a hard invariant.

use crate::classify::ClassificationRecord;
use crate::rootsys::{LieType, MarkedSet, RootError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A parsed gradation request: Lie type, rank, and marked indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradationSpec {
    pub lie_type: LieType,
    pub rank: usize,
    pub delta1: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax(String),
    Root(RootError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax(s) => write!(f, "{s}"),
            ParseError::Root(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<RootError> for ParseError {
    fn from(e: RootError) -> Self {
        ParseError::Root(e)
    }
}

/// Hard ceiling on parsed ranks; realizations above this are desk-scale
/// hostile and the CLI caps far lower anyway.
pub const MAX_PARSE_RANK: usize = 64;

/// Parse a comma-separated list of marked indices, e.g. `1,3`.
pub fn parse_delta1(s: &str) -> Result<Vec<usize>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::Syntax("empty Δ₁".into()));
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(ParseError::Syntax("empty index in Δ₁".into()));
        }
        let v: usize = part
            .parse()
            .map_err(|_| ParseError::Syntax(format!("bad index `{part}` in Δ₁")))?;
        if v == 0 || v > MAX_PARSE_RANK {
            return Err(ParseError::Syntax(format!("index {v} out of range")));
        }
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl FromStr for GradationSpec {
    type Err = ParseError;

    /// Format: `<type> <rank> <delta1>`, e.g. `A 3 1,3`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut it = s.split_whitespace();
        let t = it
            .next()
            .ok_or_else(|| ParseError::Syntax("missing Lie type".into()))?;
        let lie_type: LieType = t.parse()?;
        let r = it
            .next()
            .ok_or_else(|| ParseError::Syntax("missing rank".into()))?;
        let rank: usize = r
            .parse()
            .map_err(|_| ParseError::Syntax(format!("bad rank `{r}`")))?;
        if rank == 0 || rank > MAX_PARSE_RANK {
            return Err(ParseError::Syntax(format!("rank {rank} out of range")));
        }
        let d = it
            .next()
            .ok_or_else(|| ParseError::Syntax("missing Δ₁".into()))?;
        if it.next().is_some() {
            return Err(ParseError::Syntax("trailing input".into()));
        }
        let delta1 = parse_delta1(d)?;
        Ok(GradationSpec {
            lie_type,
            rank,
            delta1,
        })
    }
}

impl fmt::Display for GradationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.delta1.iter().map(|i| i.to_string()).collect();
        write!(f, "{} {} {}", self.lie_type, self.rank, d.join(","))
    }
}

impl GradationSpec {
    pub fn marked_set(&self) -> Result<MarkedSet, RootError> {
        MarkedSet::new(self.rank, self.delta1.iter().copied())
    }
}

/// A deterministic machine-readable report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: serde_json::Value,
    pub timing_ms: u64,
    pub version: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: serde_json::Value::Null,
            timing_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// CSV header for classification sweeps.
pub const CSV_HEADER: &str = "type,rank,delta1,depth,dims,verdict,contact,exceptional_aut,vmrt_dim";

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One CSV row per classification record.
pub fn csv_row(r: &ClassificationRecord) -> String {
    let delta: Vec<String> = r.delta1.iter().map(|i| i.to_string()).collect();
    let dims: Vec<String> = r.dims.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    let aut = r
        .exceptional_aut
        .as_ref()
        .map(|a| {
            let d: Vec<String> = a.delta1.iter().map(|i| i.to_string()).collect();
            format!("{}{} {{{}}}", a.lie_type, a.rank, d.join(","))
        })
        .unwrap_or_default();
    let vmrt = r
        .vmrt
        .as_ref()
        .map(|v| v.dim.to_string())
        .unwrap_or_default();
    [
        r.lie_type.to_string(),
        r.rank.to_string(),
        csv_quote(&delta.join(",")),
        r.depth.to_string(),
        csv_quote(&dims.join(" ")),
        r.verdict.to_string(),
        r.contact.to_string(),
        csv_quote(&aut),
        vmrt,
    ]
    .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parse_gradation_spec() {
        let s: GradationSpec = "A 3 1,3".parse().unwrap();
        assert_eq!(s.lie_type, LieType::A);
        assert_eq!(s.rank, 3);
        assert_eq!(s.delta1, vec![1, 3]);
        assert_eq!(s.to_string(), "A 3 1,3");
        assert!("A 3".parse::<GradationSpec>().is_err());
        assert!("E 3 1".parse::<GradationSpec>().is_err());
        assert!("A 0 1".parse::<GradationSpec>().is_err());
        assert!("A 3 0".parse::<GradationSpec>().is_err());
        assert!("A 3 1,x".parse::<GradationSpec>().is_err());
        assert!("A 3 1 extra".parse::<GradationSpec>().is_err());
    }

    #[test]
    fn parse_delta_dedups_and_sorts() {
        assert_eq!(parse_delta1("3,1,3").unwrap(), vec![1, 3]);
        assert!(parse_delta1("").is_err());
        assert!(parse_delta1("1,,2").is_err());
        assert!(parse_delta1("999999").is_err());
    }

    #[test]
    fn report_round_trip() {
        let mut r = Report::new("grade").input("type", "A").input("rank", 3);
        r.results = json!({"dims": {"-1": 2, "0": 4, "1": 2}, "depth": 1});
        r.timing_ms = 12;
        let s = r.to_json();
        let back = Report::from_json(&s).unwrap();
        assert_eq!(back, r);
        // Deterministic: keys sorted.
        let again = back.to_json();
        assert_eq!(s, again);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_quote("1,3"), "\"1,3\"");
        assert_eq!(csv_quote("plain"), "plain");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_value() -> impl Strategy<Value = serde_json::Value> {
            let leaf = prop_oneof![
                Just(serde_json::Value::Null),
                any::<bool>().prop_map(serde_json::Value::from),
                any::<i32>().prop_map(serde_json::Value::from),
                "[a-z0-9 ]{0,12}".prop_map(serde_json::Value::from),
            ];
            leaf.prop_recursive(3, 16, 4, |inner| {
                prop_oneof![
                    proptest::collection::vec(inner.clone(), 0..4)
                        .prop_map(serde_json::Value::Array),
                    proptest::collection::btree_map("[a-z]{1,6}", inner, 0..4)
                        .prop_map(|m| serde_json::Value::Object(m.into_iter().collect())),
                ]
            })
        }

        proptest! {
            #[test]
            fn report_json_round_trips(
                command in "[a-z-]{1,12}",
                inputs in proptest::collection::btree_map("[a-z]{1,8}", "[A-Za-z0-9,]{0,8}", 0..4),
                results in arb_value(),
                timing in any::<u32>(),
            ) {
                let report = Report {
                    command,
                    inputs,
                    results,
                    timing_ms: timing as u64,
                    version: env!("CARGO_PKG_VERSION").into(),
                };
                let s = report.to_json();
                let back = Report::from_json(&s).unwrap();
                prop_assert_eq!(&back, &report);
                prop_assert_eq!(back.to_json(), s);
            }

            #[test]
            fn gradation_specs_round_trip(
                t in prop_oneof![Just("A"), Just("B"), Just("C"), Just("D")],
                rank in 1usize..10,
                picks in proptest::collection::btree_set(1usize..10, 1..4),
            ) {
                let d: Vec<String> = picks.iter().map(|i| i.to_string()).collect();
                let text = format!("{t} {rank} {}", d.join(","));
                if let Ok(spec) = text.parse::<GradationSpec>() {
                    let again: GradationSpec = spec.to_string().parse().unwrap();
                    prop_assert_eq!(again, spec);
                }
            }
        }
    }
}
