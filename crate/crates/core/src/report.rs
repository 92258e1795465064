//! Check records and deterministic report rendering.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity being checked, written out.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check { name: name.into(), anchor: anchor.into(), status: Status::Pass, detail: String::new(), witness: None }
    }

    pub fn fail(name: impl Into<String>, anchor: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            detail: String::new(),
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(name: impl Into<String>, anchor: impl Into<String>, reason: impl Into<String>) -> Self {
        Check { name: name.into(), anchor: anchor.into(), status: Status::Skipped, detail: reason.into(), witness: None }
    }

    /// Passes iff `witnesses` is empty; otherwise fails with the first witness.
    pub fn from_witnesses(name: impl Into<String>, anchor: impl Into<String>, witnesses: Vec<String>) -> Self {
        match witnesses.into_iter().next() {
            None => Check::pass(name, anchor),
            Some(w) => Check::fail(name, anchor, w),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub instance: String,
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(instance: impl Into<String>, suite: impl Into<String>, seed: u64, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report { instance: instance.into(), suite: suite.into(), seed, checks }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.failed()).count()
    }

    /// Exit status: number of failed checks, capped at 125.
    pub fn exit_code(&self) -> i32 {
        self.failures().min(125) as i32
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("instance {} | suite {} | seed {}\n", self.instance, self.suite, self.seed);
        for c in &self.checks {
            out.push_str(&format!("{} {} [{}]", c.status.label(), c.name, c.anchor));
            if !c.detail.is_empty() {
                out.push_str(&format!(" {}", c.detail));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!(" witness: {w}"));
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let skipped = self.checks.iter().filter(|c| c.status == Status::Skipped).count();
        out.push_str(&format!("{} passed, {} failed, {} skipped\n", passed, self.failures(), skipped));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_counted() {
        let r = Report::new(
            "x",
            "s",
            1,
            vec![Check::fail("b", "b", "w"), Check::pass("a", "a"), Check::skipped("c", "c", "n/a")],
        );
        assert_eq!(r.checks[0].name, "a");
        assert_eq!(r.exit_code(), 1);
        assert!(r.render_text().contains("FAIL b [b] witness: w"));
    }
}
