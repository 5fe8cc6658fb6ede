use serde::Serialize;

/// One measured quantity and the bound it must stay strictly below.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, cases: usize, error: f64, tolerance: f64) -> Self {
        // NaN compares false, so a non-finite measurement never passes
        let pass = error < tolerance;
        Check { name: name.into(), cases, error, tolerance, pass }
    }
}

/// Machine-readable outcome of a command or verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub max_error: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

impl Report {
    pub fn from_checks(suite: &str, checks: Vec<Check>) -> Self {
        let cases = checks.iter().map(|c| c.cases).sum();
        let max_error = checks.iter().map(|c| c.error).fold(0.0, |a: f64, e| if e.is_nan() { f64::NAN } else { a.max(e) });
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        Report { suite: suite.to_string(), cases, max_error, pass, value: None, checks }
    }

    /// Report of a plain computation: passes when every produced number is finite.
    pub fn artifact(suite: &str, cases: usize, max_error: f64, finite: bool) -> Self {
        Report { suite: suite.to_string(), cases, max_error, pass: finite && !max_error.is_nan(), value: None, checks: vec![] }
    }

    pub fn with_value(mut self, v: f64) -> Self {
        self.value = Some(v);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
