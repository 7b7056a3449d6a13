use std::time::Duration;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Exact claims carry a pass flag; asymptotic ones only carry numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Exact { passed: bool },
    ReportOnly,
    /// The instance could not be evaluated (solver failure, bad input).
    Error { message: String },
}

/// Named numbers in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Quantities(Vec<(String, f64)>);

impl Quantities {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.push(name, value);
        self
    }

    pub fn push(&mut self, name: &str, value: f64) {
        self.0.push((name.to_string(), value));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for Quantities {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// One checked (or reported) claim about one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    name: String,
    claim: String,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhs: Option<f64>,
    #[serde(skip_serializing_if = "Quantities::is_empty")]
    values: Quantities,
}

impl Instance {
    /// An exact claim `lhs <op> rhs` whose truth was decided by the caller.
    pub fn exact(name: impl Into<String>, claim: &str, lhs: f64, rhs: f64, passed: bool) -> Self {
        Self {
            name: name.into(),
            claim: claim.to_string(),
            verdict: Verdict::Exact { passed },
            lhs: Some(lhs),
            rhs: Some(rhs),
            values: Quantities::new(),
        }
    }

    pub fn report(name: impl Into<String>, claim: &str, values: Quantities) -> Self {
        Self {
            name: name.into(),
            claim: claim.to_string(),
            verdict: Verdict::ReportOnly,
            lhs: None,
            rhs: None,
            values,
        }
    }

    pub fn error(name: impl Into<String>, claim: &str, message: impl ToString) -> Self {
        Self {
            name: name.into(),
            claim: claim.to_string(),
            verdict: Verdict::Error {
                message: message.to_string(),
            },
            lhs: None,
            rhs: None,
            values: Quantities::new(),
        }
    }

    pub fn with_values(mut self, values: Quantities) -> Self {
        self.values = values;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn claim(&self) -> &str {
        &self.claim
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn lhs(&self) -> Option<f64> {
        self.lhs
    }

    pub fn rhs(&self) -> Option<f64> {
        self.rhs
    }

    pub fn values(&self) -> &Quantities {
        &self.values
    }

    /// `Some(passed)` for exact claims, `None` for reports.
    pub fn passed(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Exact { passed } => Some(passed),
            Verdict::ReportOnly => None,
            Verdict::Error { .. } => Some(false),
        }
    }
}

/// Result of a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    suite: String,
    parameters: Quantities,
    instances: Vec<Instance>,
    #[serde(skip_serializing_if = "Quantities::is_empty")]
    summary: Quantities,
    /// Wall-clock time; kept out of serialized output so reports are reproducible.
    #[serde(skip)]
    runtime: Duration,
}

impl VerifyReport {
    pub fn new(suite: &str, parameters: Quantities) -> Self {
        Self {
            suite: suite.to_string(),
            parameters,
            instances: Vec::new(),
            summary: Quantities::new(),
            runtime: Duration::ZERO,
        }
    }

    pub fn push(&mut self, instance: Instance) {
        self.instances.push(instance);
    }

    pub fn extend(&mut self, instances: impl IntoIterator<Item = Instance>) {
        self.instances.extend(instances);
    }

    pub fn summarize(&mut self, name: &str, value: f64) {
        self.summary.push(name, value);
    }

    pub fn set_runtime(&mut self, runtime: Duration) {
        self.runtime = runtime;
    }

    pub fn suite(&self) -> &str {
        &self.suite
    }

    pub fn parameters(&self) -> &Quantities {
        &self.parameters
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn summary(&self) -> &Quantities {
        &self.summary
    }

    pub fn runtime(&self) -> Duration {
        self.runtime
    }

    pub fn exact_count(&self) -> usize {
        self.instances.iter().filter(|i| i.passed().is_some()).count()
    }

    pub fn failures(&self) -> Vec<&Instance> {
        self.instances
            .iter()
            .filter(|i| i.passed() == Some(false))
            .collect()
    }

    /// True iff no exact claim failed and no instance errored.
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_kinds() {
        let mut r = VerifyReport::new("demo", Quantities::new().with("alpha", 2.0));
        r.push(Instance::exact("a", "x <= y", 1.0, 2.0, true));
        r.push(Instance::report("b", "delta", Quantities::new().with("d", 0.5)));
        assert!(r.passed());
        assert_eq!(r.exact_count(), 1);
        r.push(Instance::error("c", "x <= y", "no convergence"));
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
    }

    #[test]
    fn json_shape() {
        let mut r = VerifyReport::new("demo", Quantities::new().with("alpha", 2.0));
        r.push(Instance::report("b", "delta", Quantities::new().with("d", 0.5)));
        r.set_runtime(Duration::from_secs(3));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"suite":"demo","parameters":{"alpha":2.0},"instances":[{"name":"b","claim":"delta","verdict":{"kind":"report-only"},"values":{"d":0.5}}]}"#
        );
    }
}
