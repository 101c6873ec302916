use std::fmt;

use serde::Serialize;

/// One checked invariant. `code` names the failure (e.g. `GammaNotMono`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportItem {
    pub code: &'static str,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Itemized outcome of a validation pass. Validation never stops at the
/// first failure so every violation is visible at once.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, code: &'static str) {
        self.items.push(ReportItem { code, ok: true, witness: None });
    }

    pub fn fail(&mut self, code: &'static str, witness: impl Into<String>) {
        self.items.push(ReportItem { code, ok: false, witness: Some(witness.into()) });
    }

    /// Records `code` as passing when `witness` is `None`.
    pub fn check(&mut self, code: &'static str, witness: Option<String>) {
        match witness {
            None => self.pass(code),
            Some(w) => self.fail(code, w),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| !i.ok)
    }

    pub fn has_failure(&self, code: &str) -> bool {
        self.failures().any(|i| i.code == code)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            match (&i.ok, &i.witness) {
                (true, _) => writeln!(f, "  ok    {}", i.code)?,
                (false, Some(w)) => writeln!(f, "  FAIL  {}: {}", i.code, w)?,
                (false, None) => writeln!(f, "  FAIL  {}", i.code)?,
            }
        }
        Ok(())
    }
}
