//! Line-oriented check reports shared by the verifiers.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub check: String,
    pub subject: String,
    pub passed: bool,
    pub residue: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, check: &str, subject: impl Into<String>) {
        self.entries.push(CheckEntry {
            check: check.to_string(),
            subject: subject.into(),
            passed: true,
            residue: None,
        });
    }

    pub fn fail(&mut self, check: &str, subject: impl Into<String>, residue: impl Into<String>) {
        self.entries.push(CheckEntry {
            check: check.to_string(),
            subject: subject.into(),
            passed: false,
            residue: Some(residue.into()),
        });
    }

    /// Records a pass when `residue` is `None`, a failure otherwise.
    pub fn record(&mut self, check: &str, subject: impl Into<String>, residue: Option<String>) {
        match residue {
            None => self.pass(check, subject),
            Some(r) => self.fail(check, subject, r),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| !e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn count(&self) -> usize {
        self.entries.len()
    }

    /// One line per failing entry plus a summary line per check kind.
    pub fn summary(&self) -> String {
        let mut kinds: Vec<(&str, usize, usize)> = Vec::new();
        for e in &self.entries {
            match kinds.iter_mut().find(|(k, _, _)| *k == e.check) {
                Some(k) => {
                    k.1 += 1;
                    if !e.passed {
                        k.2 += 1;
                    }
                }
                None => kinds.push((&e.check, 1, usize::from(!e.passed))),
            }
        }
        let mut out = String::new();
        for e in self.failures() {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        for (k, total, failed) in kinds {
            let status = if failed == 0 { "PASS" } else { "FAIL" };
            out.push_str(&format!("{k} {status} checked={total} failed={failed}\n"));
        }
        out
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{} {} {}", self.check, self.subject, status)?;
        if let Some(r) = &self.residue {
            write!(f, " [{r}]")?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}
