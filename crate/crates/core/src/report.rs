//! Pass/fail records shared by the verifiers.

/// One named check in a verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl PropertyOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: true,
            counterexample: None,
        }
    }

    /// Records the first failure only.
    pub fn fail(&mut self, witness: impl FnOnce() -> String) {
        if self.pass {
            self.pass = false;
            self.counterexample = Some(witness());
        }
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness);
        }
    }
}

/// Named pass/fail entries, one per overlap, triple or chart pair checked.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub checks: Vec<PropertyOutcome>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub(crate) fn push(&mut self, name: String, ok: bool, witness: impl FnOnce() -> String) {
        let mut p = PropertyOutcome::new(name);
        p.check(ok, witness);
        self.checks.push(p);
    }
}

