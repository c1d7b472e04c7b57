//! Collections of named checks.

use serde::{Deserialize, Serialize};

use crate::dsl::Check;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = Check>) {
        self.checks.extend(other);
    }

    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    /// Aggregate verdict: every check passes.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Name-sorted copy; the deterministic order used in report files.
    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self.failures().map(|c| c.name.as_str()).collect();
        if failed.is_empty() {
            format!("{} checks passed", self.checks.len())
        } else {
            format!("{} of {} checks failed: {}", failed.len(), self.checks.len(), failed.join(", "))
        }
    }
}

impl FromIterator<Check> for Report {
    fn from_iter<T: IntoIterator<Item = Check>>(iter: T) -> Self {
        Report { checks: iter.into_iter().collect() }
    }
}
