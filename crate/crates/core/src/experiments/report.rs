use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The claim was reproduced.
    Confirmed,
    /// A counterexample to the claim was found and re-checked.
    Refuted,
    /// A budget ran out before a conclusion.
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Confirmed => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

/// Uniform envelope for experiment output.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub experiment: String,
    pub claim: String,
    pub parameters: Value,
    pub verdict: Verdict,
    /// Short answer word such as `holds`, `found` or `exhausted`.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub outcome: String,
    /// Every certificate in `details` passed an independent re-check.
    pub rechecked: bool,
    pub details: Value,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(experiment: &str, claim: impl Into<String>, parameters: Value) -> Self {
        Self {
            experiment: experiment.to_string(),
            claim: claim.into(),
            parameters,
            verdict: Verdict::Inconclusive,
            outcome: String::new(),
            rechecked: false,
            details: Value::Null,
            notes: Vec::new(),
            elapsed_ms: 0,
        }
    }

    /// Single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment: {}", self.experiment);
        let _ = writeln!(out, "claim:      {}", self.claim);
        let _ = writeln!(out, "parameters: {}", self.parameters);
        let _ = writeln!(out, "verdict:    {:?}", self.verdict);
        if !self.outcome.is_empty() {
            let _ = writeln!(out, "outcome:    {}", self.outcome);
        }
        let _ = writeln!(out, "rechecked:  {}", self.rechecked);
        let _ = writeln!(out, "elapsed:    {} ms", self.elapsed_ms);
        for n in &self.notes {
            let _ = writeln!(out, "note:       {n}");
        }
        let _ = writeln!(out, "details:\n{}", serde_json::to_string_pretty(&self.details).expect("report serializes"));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_is_one_line() {
        let mut r = Report::new("x", "a claim\nwith a newline", json!({"k": 3}));
        r.details = json!({"nested": {"list": [1, 2]}});
        let s = r.to_json();
        assert!(!s.contains('\n'));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["verdict"], "inconclusive");
        assert_eq!(back["parameters"]["k"], 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Confirmed.exit_code(), 0);
        assert_eq!(Verdict::Refuted.exit_code(), 1);
        assert_eq!(Verdict::Inconclusive.exit_code(), 2);
    }
}
