//! Uniform pass/fail records for the verification suites.

use serde::Serialize;

/// One identity instance and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub params: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed: true,
            checks: Vec::new(),
        }
    }

    pub fn record(
        &mut self,
        identity: impl Into<String>,
        params: impl Into<String>,
        holds: bool,
        detail: Option<String>,
    ) {
        self.passed &= holds;
        self.checks.push(Check {
            identity: identity.into(),
            params: params.into(),
            holds,
            detail,
        });
    }

    /// Records an equality; on failure the detail shows the difference.
    pub fn record_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        identity: &str,
        params: String,
        lhs: &T,
        rhs: &T,
    ) {
        let holds = lhs == rhs;
        let detail = (!holds).then(|| shorten(&format!("lhs = {lhs}; rhs = {rhs}")));
        self.record(identity, params, holds, detail);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.passed &= other.passed;
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Text rendering: one line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            s.push_str(&format!("{mark} {} [{}]\n", c.identity, c.params));
            if let Some(d) = &c.detail {
                s.push_str(&format!("     {d}\n"));
            }
        }
        let failed = self.failures().count();
        s.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            failed
        ));
        s
    }
}

pub(crate) fn shorten(s: &str) -> String {
    const MAX: usize = 400;
    if s.len() <= MAX {
        return s.to_string();
    }
    let mut end = MAX;
    while !s.is_char_boundary(end) {
        end -= 1;
    }
    format!("{}... ({} chars)", &s[..end], s.len())
}
