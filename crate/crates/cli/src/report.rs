//! Structured reports: one schema for both the text and JSON renderings.
//!
//! Every exact value is serialized as its canonical string form (rationals
//! as "p/q", rational functions and operators as re-parseable expressions),
//! so a JSON report carries the full result without loss.  `verify` relies
//! on this: it re-runs the pipeline from the input echo and compares the
//! regenerated report field by field.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralizer: Option<CentralizerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planar: Option<PlanarReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    /// Coefficients of L = D^3 + u1 D + u0.
    pub u0: String,
    pub u1: String,
    /// The same operator written as L = D^3 + q1 D + q1'/2 + q0.
    pub q0: String,
    pub q1: String,
    pub constants: BTreeMap<String, String>,
    pub max_level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1_level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetEcho>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetEcho {
    /// Rational point search over a fixed lambda0.
    Lambda0 { lambda0: String },
    /// Parametrized point: components are polynomials in t.
    Tau { param: Vec<String>, tau0: String },
    /// Direct planar point (lambda0, mu0).
    Point { lambda0: String, mu0: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub a1: OperatorReport,
    pub a2: OperatorReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub order: usize,
    /// Hierarchy level n the search succeeded at (order = 3n + branch).
    pub level: usize,
    /// Solved integration constants, indexed by the orders below.
    pub constants: Vec<String>,
    pub operator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub f1: String,
    pub f2: String,
    pub f3: String,
    pub orders: [usize; 3],
    pub verdict: VerdictReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictReport {
    NotPrime { certificate: String },
    HeuristicallyPrime,
    Undetermined,
}

/// The planar path works with A1 and the single generator f1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarReport {
    pub a1: OperatorReport,
    pub f1: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub lambda0: String,
    pub mu0: String,
    /// Absent on the planar path, which never sees the third coordinate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub phi0: String,
    /// The monic right factor D + phi0.
    pub right_factor: String,
    /// The quotient N with L - lambda0 = N * (D + phi0).
    pub quotient: String,
    pub verification: VerificationEcho,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationEcho {
    pub cofactor_identity: bool,
    pub a1_divides: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2_divides: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios_agree: Option<bool>,
}

fn check(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        let _ = writeln!(w, "command: {}", self.command);
        let _ = writeln!(w, "input");
        let _ = writeln!(w, "  u0 = {}", self.input.u0);
        let _ = writeln!(w, "  u1 = {}", self.input.u1);
        let _ = writeln!(w, "  q0 = {}", self.input.q0);
        let _ = writeln!(w, "  q1 = {}", self.input.q1);
        if !self.input.constants.is_empty() {
            let pairs: Vec<String> = self
                .input
                .constants
                .iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect();
            let _ = writeln!(w, "  constants: {}", pairs.join(", "));
        }
        let _ = writeln!(w, "  max level: {}", self.input.max_level);
        if let Some(n) = self.input.a1_level {
            let _ = writeln!(w, "  a1 level: {n}");
        }
        match &self.input.target {
            Some(TargetEcho::Lambda0 { lambda0 }) => {
                let _ = writeln!(w, "  target: lambda0 = {lambda0}");
            }
            Some(TargetEcho::Tau { param, tau0 }) => {
                let _ = writeln!(
                    w,
                    "  target: tau0 = {tau0} on t -> ({})",
                    param.join(", ")
                );
            }
            Some(TargetEcho::Point { lambda0, mu0 }) => {
                let _ = writeln!(w, "  target: (lambda0, mu0) = ({lambda0}, {mu0})");
            }
            None => {}
        }
        if let Some(c) = &self.centralizer {
            let _ = writeln!(w, "centralizer");
            for (name, op) in [("A1", &c.a1), ("A2", &c.a2)] {
                let _ = writeln!(
                    w,
                    "  {name}: order {}, level {}, constants [{}]",
                    op.order,
                    op.level,
                    op.constants.join(", ")
                );
                let _ = writeln!(w, "      {}", op.operator);
            }
        }
        if let Some(c) = &self.curve {
            let _ = writeln!(w, "spectral curve");
            let _ = writeln!(w, "  f1 = {}", c.f1);
            let _ = writeln!(w, "  f2 = {}", c.f2);
            let _ = writeln!(w, "  f3 = {}", c.f3);
            let _ = writeln!(
                w,
                "  orders: ({}, {}, {})",
                c.orders[0], c.orders[1], c.orders[2]
            );
            match &c.verdict {
                VerdictReport::NotPrime { certificate } => {
                    let _ = writeln!(w, "  verdict: not prime (repeated factor {certificate})");
                }
                VerdictReport::HeuristicallyPrime => {
                    let _ = writeln!(w, "  verdict: heuristically prime");
                }
                VerdictReport::Undetermined => {
                    let _ = writeln!(w, "  verdict: undetermined");
                }
            }
        }
        if let Some(p) = &self.planar {
            let _ = writeln!(w, "planar curve");
            let _ = writeln!(
                w,
                "  A1: order {}, level {}, constants [{}]",
                p.a1.order,
                p.a1.level,
                p.a1.constants.join(", ")
            );
            let _ = writeln!(w, "      {}", p.a1.operator);
            let _ = writeln!(w, "  f1 = {}", p.f1);
        }
        if let Some(p) = &self.point {
            let _ = writeln!(w, "point");
            let _ = writeln!(w, "  lambda0 = {}", p.lambda0);
            let _ = writeln!(w, "  mu0 = {}", p.mu0);
            if let Some(g) = &p.gamma0 {
                let _ = writeln!(w, "  gamma0 = {g}");
            }
        }
        if let Some(f) = &self.factorization {
            let _ = writeln!(w, "factorization");
            let _ = writeln!(w, "  phi0 = {}", f.phi0);
            let _ = writeln!(w, "  right factor = {}", f.right_factor);
            let _ = writeln!(w, "  quotient = {}", f.quotient);
            let _ = writeln!(w, "  checks");
            let v = &f.verification;
            let _ = writeln!(w, "    cofactor identity: {}", check(v.cofactor_identity));
            let _ = writeln!(w, "    right factor divides A1 - mu0: {}", check(v.a1_divides));
            if let Some(b) = v.a2_divides {
                let _ = writeln!(w, "    right factor divides A2 - gamma0: {}", check(b));
            }
            if let Some(b) = v.ratios_agree {
                let _ = writeln!(w, "    subresultant ratios agree: {}", check(b));
            }
            let _ = writeln!(w, "  verified: {}", if f.verified { "yes" } else { "NO" });
        }
        if let Some(d) = &self.diagnostic {
            let _ = writeln!(w, "diagnostic: {d}");
        }
        s
    }
}

/// Outcome document of the `verify` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: String,
    /// Command of the report that was re-run.
    pub checked_command: String,
    pub matches: bool,
    /// JSON paths whose regenerated values differ from the report.
    pub mismatches: Vec<String>,
    pub exit_code: i32,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        let _ = writeln!(w, "command: verify");
        let _ = writeln!(w, "checked command: {}", self.checked_command);
        if self.matches {
            let _ = writeln!(w, "report reproduced exactly");
        } else {
            let _ = writeln!(w, "report MISMATCH at:");
            for m in &self.mismatches {
                let _ = writeln!(w, "  {m}");
            }
        }
        s
    }
}

/// Collects the JSON paths where two values differ.
pub fn diff_paths(a: &serde_json::Value, b: &serde_json::Value, at: &str, out: &mut Vec<String>) {
    use serde_json::Value;
    match (a, b) {
        (Value::Object(ma), Value::Object(mb)) => {
            let keys: std::collections::BTreeSet<&String> =
                ma.keys().chain(mb.keys()).collect();
            for k in keys {
                let path = format!("{at}/{k}");
                match (ma.get(k), mb.get(k)) {
                    (Some(va), Some(vb)) => diff_paths(va, vb, &path, out),
                    _ => out.push(path),
                }
            }
        }
        (Value::Array(va), Value::Array(vb)) => {
            if va.len() != vb.len() {
                out.push(at.to_string());
                return;
            }
            for (i, (x, y)) in va.iter().zip(vb).enumerate() {
                diff_paths(x, y, &format!("{at}/{i}"), out);
            }
        }
        _ => {
            if a != b {
                out.push(at.to_string());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: "factor".into(),
            input: InputEcho {
                u0: "12/x^3".into(),
                u1: "-6/x^2".into(),
                q0: "6/x^3".into(),
                q1: "-6/x^2".into(),
                constants: BTreeMap::from([("h".to_string(), "0".to_string())]),
                max_level: 5,
                a1_level: None,
                target: Some(TargetEcho::Tau {
                    param: vec!["t^3".into(), "t^4".into(), "t^5".into()],
                    tau0: "1".into(),
                }),
            },
            centralizer: None,
            curve: Some(CurveReport {
                f1: "lambda^4 - mu^3".into(),
                f2: "lambda^5 - gamma^3".into(),
                f3: "gamma^4 - mu^5".into(),
                orders: [3, 4, 5],
                verdict: VerdictReport::HeuristicallyPrime,
            }),
            point: Some(PointReport {
                lambda0: "1".into(),
                mu0: "1".into(),
                gamma0: Some("1".into()),
            }),
            planar: None,
            factorization: Some(FactorReport {
                phi0: "(-x^3 + 2*x^2 - 4*x + 4)/(x^3 - 2*x^2 + 2*x)".into(),
                right_factor: "D + 1".into(),
                quotient: "D^2 - 1".into(),
                verification: VerificationEcho {
                    cofactor_identity: true,
                    a1_divides: true,
                    a2_divides: Some(true),
                    ratios_agree: Some(true),
                },
                verified: true,
            }),
            diagnostic: None,
            exit_code: 0,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let parsed: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(parsed, r);
    }

    #[test]
    fn text_mentions_all_sections() {
        let t = sample().to_text();
        for needle in [
            "command: factor",
            "u0 = 12/x^3",
            "target: tau0 = 1",
            "f3 = gamma^4 - mu^5",
            "verdict: heuristically prime",
            "gamma0 = 1",
            "phi0 = (-x^3",
            "verified: yes",
        ] {
            assert!(t.contains(needle), "missing '{needle}' in:\n{t}");
        }
    }

    #[test]
    fn diff_paths_locates_changes() {
        let a = serde_json::to_value(sample()).unwrap();
        let mut edited = sample();
        edited.factorization.as_mut().unwrap().phi0 = "0".into();
        edited.point.as_mut().unwrap().mu0 = "2".into();
        let b = serde_json::to_value(edited).unwrap();
        let mut out = Vec::new();
        diff_paths(&a, &b, "", &mut out);
        assert_eq!(out, vec!["/factorization/phi0", "/point/mu0"]);
    }
}
