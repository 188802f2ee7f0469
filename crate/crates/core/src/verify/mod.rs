//! Verification suites: every identity the engine is expected to satisfy,
//! checked against the brute-force oracles. Each suite returns a
//! [`SuiteReport`] whose cases are sorted by id.

pub mod gen;
mod suites;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Fragment, MultiGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Circles,
    Matchings,
    Charpoly,
    Dglrs,
    Circuitpoly,
    Invariance,
    Signs,
    Gram,
    Rank,
    Specialization,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Circles,
        Suite::Matchings,
        Suite::Charpoly,
        Suite::Dglrs,
        Suite::Circuitpoly,
        Suite::Invariance,
        Suite::Signs,
        Suite::Gram,
        Suite::Rank,
        Suite::Specialization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Circles => "circles",
            Suite::Matchings => "matchings",
            Suite::Charpoly => "charpoly",
            Suite::Dglrs => "dglrs",
            Suite::Circuitpoly => "circuitpoly",
            Suite::Invariance => "invariance",
            Suite::Signs => "signs",
            Suite::Gram => "gram",
            Suite::Rank => "rank",
            Suite::Specialization => "specialization",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Size knobs. `None` selects the suite's default.
#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub max_vertices: Option<usize>,
    pub max_edges: Option<usize>,
    /// Largest half-size of the ground set for `signs`.
    pub max_m: Option<usize>,
    /// The `k` of the `dglrs` construction.
    pub k: Option<usize>,
    /// Number of random cases.
    pub count: Option<usize>,
    /// States per case for `invariance`.
    pub trials: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub input: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    pub notes: Vec<String>,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    fn new(suite: Suite, mut cases: Vec<CaseReport>, notes: Vec<String>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        Self {
            suite,
            passed,
            failed,
            notes,
            cases,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && !self.cases.is_empty()
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let (cases, notes) = match suite {
        Suite::Circles => suites::circles(opts)?,
        Suite::Matchings => suites::matchings(opts)?,
        Suite::Charpoly => suites::charpoly(opts)?,
        Suite::Dglrs => suites::dglrs(opts)?,
        Suite::Circuitpoly => suites::circuitpoly(opts)?,
        Suite::Invariance => suites::invariance(opts)?,
        Suite::Signs => suites::signs(opts)?,
        Suite::Gram => suites::gram(opts)?,
        Suite::Rank => suites::rank(opts)?,
        Suite::Specialization => suites::specialization(opts)?,
    };
    Ok(SuiteReport::new(suite, cases, notes))
}

/// `n=3 e=[0-1 1-2 2-2] o=1`.
pub fn describe_graph(g: &MultiGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    let mut s = format!("n={} e=[{}]", g.n_vertices(), edges.join(" "));
    if g.n_circles() > 0 {
        s.push_str(&format!(" o={}", g.n_circles()));
    }
    s
}

pub fn describe_fragment(f: &Fragment) -> String {
    let labels: Vec<String> = f.labeled().iter().map(ToString::to_string).collect();
    format!(
        "{} labels=[{}]",
        describe_graph(f.graph()),
        labels.join(" ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(
            "nope".parse::<Suite>(),
            Err(Error::UnknownSuite("nope".into()))
        );
    }

    #[test]
    fn small_runs_pass() {
        let opts = SuiteOptions {
            count: Some(3),
            max_vertices: Some(3),
            max_edges: Some(3),
            ..Default::default()
        };
        for s in [
            Suite::Circles,
            Suite::Matchings,
            Suite::Invariance,
            Suite::Gram,
            Suite::Specialization,
        ] {
            let report = run_suite(s, &opts).unwrap();
            assert!(
                report.ok(),
                "{s}: {:?}",
                report.cases.iter().find(|c| !c.pass)
            );
        }
    }
}
