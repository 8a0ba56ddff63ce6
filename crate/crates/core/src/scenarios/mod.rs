//! Executable double coset examples producing structured verification reports.
//!
//! Each scenario runs an ordered list of checks built only from the public
//! algebra operations. Quotient (non)existence statements are never proved
//! here: they are listed as conclusions that follow from a cited criterion
//! once their premises (checks) pass.

mod example2;
mod example3;
mod matrices;
pub mod objects;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioName {
    Background,
    Example1,
    Example2,
    Example3,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 4] = [
        ScenarioName::Background,
        ScenarioName::Example1,
        ScenarioName::Example2,
        ScenarioName::Example3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::Background => "background",
            ScenarioName::Example1 => "example1",
            ScenarioName::Example2 => "example2",
            ScenarioName::Example3 => "example3",
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

/// Faithful data, or the scenario's negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Faithful,
    Mutated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Invariance,
    Image,
    Openness,
    LemmaPremise,
    Section,
    Separation,
    FixedStratum,
    ProjectiveEquality,
    Reduction,
}

/// How a check's status is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Computed by the algebra engine.
    Verified,
    /// A structural fact of how the object is encoded.
    ByRepresentation,
}

impl Basis {
    fn prefix(self) -> &'static str {
        match self {
            Basis::Verified => "verified",
            Basis::ByRepresentation => "by representation",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CheckDescriptor {
    pub id: &'static str,
    pub kind: CheckKind,
    pub basis: Basis,
    pub description: &'static str,
    pub paper_locus: &'static str,
}

/// A statement that follows from a cited criterion once its premises pass.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConclusionDescriptor {
    pub claim: &'static str,
    pub criterion: &'static str,
    pub premises: &'static [&'static str],
    pub paper_locus: &'static str,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct NegativeControl {
    pub mutation: &'static str,
    pub breaks: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioSpec {
    pub scenario: ScenarioName,
    pub title: &'static str,
    pub checks: Vec<CheckDescriptor>,
    pub conclusions: Vec<ConclusionDescriptor>,
    pub negative_control: NegativeControl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub detail: String,
    pub paper_locus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub claim: String,
    pub basis: String,
    pub premises: Vec<String>,
    pub established: bool,
    pub paper_locus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub checks: Vec<CheckResult>,
    pub conclusions: Vec<Conclusion>,
    pub verdict: Status,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.id.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario: {}", self.scenario)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {} ({})", c.status, c.id, c.paper_locus)?;
            writeln!(f, "      {}", c.detail)?;
        }
        for c in &self.conclusions {
            let mark = if c.established { "holds" } else { "not established" };
            writeln!(f, "  conclusion ({}, {}): {}", c.basis, mark, c.claim)?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// The value a check closure returns.
pub(crate) struct Outcome {
    pass: bool,
    detail: String,
}

pub(crate) fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

/// Runs checks in declared order against the scenario's descriptors.
pub(crate) struct Runner {
    spec: ScenarioSpec,
    results: Vec<CheckResult>,
}

impl Runner {
    pub(crate) fn new(spec: ScenarioSpec) -> Self {
        Runner {
            spec,
            results: Vec::new(),
        }
    }

    pub(crate) fn check(&mut self, id: &str, f: impl FnOnce() -> Result<Outcome>) {
        let desc = *self
            .spec
            .checks
            .iter()
            .find(|d| d.id == id)
            .unwrap_or_else(|| panic!("undeclared check {id}"));
        let (status, detail) = match f() {
            Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.detail),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.results.push(CheckResult {
            id: id.to_string(),
            status,
            detail: format!("{}: {}", desc.basis.prefix(), detail),
            paper_locus: desc.paper_locus.to_string(),
        });
    }

    pub(crate) fn finish(self) -> Report {
        let declared: Vec<&str> = self.spec.checks.iter().map(|d| d.id).collect();
        let run: Vec<&str> = self.results.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(declared, run, "checks must run exactly in declared order");
        let passed = |id: &str| self.results.iter().any(|r| r.id == id && r.status == Status::Pass);
        let conclusions = self
            .spec
            .conclusions
            .iter()
            .map(|c| Conclusion {
                claim: c.claim.to_string(),
                basis: format!("by cited criterion: {}", c.criterion),
                premises: c.premises.iter().map(|p| p.to_string()).collect(),
                established: c.premises.iter().all(|p| passed(p)),
                paper_locus: c.paper_locus.to_string(),
            })
            .collect();
        let verdict = if self.results.iter().all(|r| r.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            scenario: self.spec.scenario.to_string(),
            checks: self.results,
            conclusions,
            verdict,
        }
    }
}

pub fn scenario_spec(name: ScenarioName) -> ScenarioSpec {
    match name {
        ScenarioName::Background => matrices::background_spec(),
        ScenarioName::Example1 => matrices::example1_spec(),
        ScenarioName::Example2 => example2::spec(),
        ScenarioName::Example3 => example3::spec(),
    }
}

pub fn scenario_catalog() -> Vec<ScenarioSpec> {
    ScenarioName::ALL.into_iter().map(scenario_spec).collect()
}

pub fn run_scenario(name: ScenarioName) -> Report {
    run_scenario_variant(name, Variant::Faithful)
}

pub fn run_scenario_variant(name: ScenarioName, variant: Variant) -> Report {
    let mut runner = Runner::new(scenario_spec(name));
    match name {
        ScenarioName::Background => matrices::run_background(&mut runner, variant),
        ScenarioName::Example1 => matrices::run_example1(&mut runner, variant),
        ScenarioName::Example2 => example2::run(&mut runner, variant),
        ScenarioName::Example3 => example3::run(&mut runner, variant),
    }
    runner.finish()
}

/// Runs by name; errors on an unknown scenario.
pub fn run_named(name: &str, variant: Variant) -> Result<Report> {
    Ok(run_scenario_variant(name.parse()?, variant))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(r: &Report) -> String {
        r.to_string()
    }

    #[test]
    fn all_scenarios_pass() {
        for name in ScenarioName::ALL {
            let r = run_scenario(name);
            assert!(r.passed(), "{}", show(&r));
            assert!(r.conclusions.iter().all(|c| c.established), "{}", show(&r));
        }
    }

    #[test]
    fn negative_controls_fail_exactly_their_target() {
        for spec in scenario_catalog() {
            let r = run_scenario_variant(spec.scenario, Variant::Mutated);
            assert_eq!(r.failed_checks(), vec![spec.negative_control.breaks], "{}", show(&r));
            assert!(!r.passed());
        }
    }

    #[test]
    fn example3_reports_collapsed_fixed_pair() {
        let r = run_scenario(ScenarioName::Example3);
        let sep = r.check("separation").unwrap();
        assert!(
            sep.detail.contains("(1,0,2,0) vs (3,0,6,0): collapsed"),
            "{}",
            sep.detail
        );
    }

    #[test]
    fn catalog_shape() {
        let cat = scenario_catalog();
        let ex1 = cat.iter().find(|s| s.scenario == ScenarioName::Example1).unwrap();
        assert!(ex1.checks.len() >= 6);
        for spec in &cat {
            assert!(spec.checks.iter().all(|c| !c.paper_locus.is_empty()));
            assert!(spec.checks.iter().any(|c| c.id == spec.negative_control.breaks));
            for c in &spec.conclusions {
                assert!(c.premises.iter().all(|p| spec.checks.iter().any(|d| d.id == *p)));
            }
        }
        let again = serde_json::to_string(&scenario_catalog()).unwrap();
        assert_eq!(serde_json::to_string(&cat).unwrap(), again);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_scenario(ScenarioName::Background).to_json();
        let b = run_scenario(ScenarioName::Background).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_scenario_is_an_error() {
        assert!(matches!(
            run_named("example9", Variant::Faithful),
            Err(Error::UnknownScenario(_))
        ));
    }
}
