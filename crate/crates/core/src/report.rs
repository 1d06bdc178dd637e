use serde::Serialize;

/// Outcome of one named property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of instances evaluated.
    pub checked: u64,
    /// Rendered inputs of the first failing instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: true, checked: 0, witness: None, note: None }
    }

    /// Records one instance; keeps the first failure only.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Vec<String>) -> bool {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
        ok
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn fail_with(mut self, witness: Vec<String>) -> Self {
        self.passed = false;
        self.witness = Some(witness);
        self
    }
}

/// A named list of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "  [{tag}] {} ({} checked)", c.name, c.checked)?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {}", w.join(", "))?;
            }
            if let Some(n) = &c.note {
                write!(f, " -- {n}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
