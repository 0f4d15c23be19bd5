//! Executable checks of the structural claims over generated catalogs and
//! built-in fixtures.
//!
//! A suite returns a [`Report`]: one [`Check`] per claim and catalog, each
//! counting how many instances satisfied the hypothesis and how many of
//! those failed. A check with no instances fails, so an empty catalog can
//! never pass silently.

mod correspondences;
mod examples;
pub mod fixtures;
mod structure;

pub use correspondences::verify_prolongation_bijections;
pub use examples::{verify_fixture_pairs, verify_sade};
pub use structure::{
    standard_catalogs, verify_artzy, verify_autotopism_lemmas, verify_lemma_obvious, verify_neccon,
    verify_totally_symmetric, Catalog,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::generate::GenOptions;
use crate::square::LatinSquare;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    /// The catalog or fixture the claim was checked on.
    pub instance: String,
    pub instances: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(claim: impl Into<String>, instance: impl Into<String>) -> Self {
        Check { claim: claim.into(), instance: instance.into(), instances: 0, failures: 0, witness: None }
    }

    /// Records one instance; the witness is rendered for the first failure only.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.instances > 0 && self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suites: Vec<String>,
    pub catalogs: Vec<String>,
    pub checks: Vec<Check>,
    /// Runtime errors raised while building catalogs; each fails the report.
    pub errors: Vec<String>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suites: vec![suite.to_string()], ..Report::default() }
    }

    pub fn uses(&mut self, catalog: impl Into<String>) {
        let c = catalog.into();
        if !self.catalogs.contains(&c) {
            self.catalogs.push(c);
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// A single yes/no claim about one instance.
    pub fn assert(&mut self, claim: &str, instance: &str, ok: bool, witness: impl FnOnce() -> String) {
        let mut c = Check::new(claim, instance);
        c.record(ok, witness);
        self.push(c);
    }

    /// Claims `lhs == rhs` for two counts.
    pub fn equal<T: PartialEq + fmt::Debug>(&mut self, claim: &str, instance: &str, lhs: T, rhs: T) {
        let ok = lhs == rhs;
        self.assert(claim, instance, ok, || format!("{lhs:?} != {rhs:?}"));
    }

    /// Records `r` as an error when it fails, returning the value otherwise.
    pub fn attempt<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(format!("{what}: {e}"));
                None
            }
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.suites.extend(other.suites);
        for c in other.catalogs {
            self.uses(c);
        }
        self.checks.extend(other.checks);
        self.errors.extend(other.errors);
    }

    pub fn instances(&self) -> u64 {
        self.checks.iter().map(|c| c.instances).sum()
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serialises");
        v["passed"] = serde_json::Value::from(self.passed());
        v["instances"] = serde_json::Value::from(self.instances().to_string());
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {} [{}] {}/{}", c.claim, c.instance, c.instances - c.failures, c.instances));
            if let Some(w) = &c.witness {
                out.push_str(&format!("\n     witness: {}", w.replace('\n', "\n              ")));
            }
            out.push('\n');
        }
        for e in &self.errors {
            out.push_str(&format!("ERROR {e}\n"));
        }
        let verdict = if self.passed() { "passed" } else { "failed" };
        out.push_str(&format!(
            "{}: {verdict}, {} checks, {} instances, catalogs: {}\n",
            self.suites.join(", "),
            self.checks.len(),
            self.instances(),
            self.catalogs.join(", ")
        ));
        out
    }
}

/// Witness text for a square.
pub(crate) fn show(l: &LatinSquare) -> String {
    l.to_text().trim_end().to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    LemmaObvious,
    Prolongation,
    Artzy,
    Sade,
    Fixtures,
    Neccon,
    Autotopism,
    TotallySymmetric,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::LemmaObvious,
        Suite::Prolongation,
        Suite::Artzy,
        Suite::Sade,
        Suite::Fixtures,
        Suite::Neccon,
        Suite::Autotopism,
        Suite::TotallySymmetric,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::LemmaObvious => "lemma-obvious",
            Suite::Prolongation => "prolongation",
            Suite::Artzy => "artzy",
            Suite::Sade => "sade",
            Suite::Fixtures => "fixtures",
            Suite::Neccon => "neccon",
            Suite::Autotopism => "autotopism",
            Suite::TotallySymmetric => "totally-symmetric",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Bounds on the catalogs the suites build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub gen: GenOptions,
    /// Symmetric catalogs are built up to this order.
    pub symmetric_max: usize,
    /// Semisymmetric catalogs of every shape.
    pub semisymmetric_max: usize,
    /// Semisymmetric loops.
    pub loops_max: usize,
    /// Totally symmetric catalogs.
    pub totally_symmetric_max: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            gen: GenOptions::default(),
            symmetric_max: 7,
            semisymmetric_max: 7,
            loops_max: 9,
            totally_symmetric_max: 10,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Report {
    match suite {
        Suite::LemmaObvious => match standard_catalogs(opts) {
            Ok(cats) => verify_lemma_obvious(&cats),
            Err(e) => {
                let mut r = Report::new(suite.as_str());
                r.errors.push(format!("catalogs: {e}"));
                r
            }
        },
        Suite::Prolongation => verify_prolongation_bijections(&opts.gen),
        Suite::Artzy => verify_artzy(1..=opts.loops_max, &opts.gen),
        Suite::Sade => verify_sade(),
        Suite::Fixtures => verify_fixture_pairs(),
        Suite::Neccon => verify_neccon(1..=opts.semisymmetric_max.max(opts.loops_max), &opts.gen),
        Suite::Autotopism => verify_autotopism_lemmas(opts.symmetric_max, opts.semisymmetric_max.min(6), &opts.gen),
        Suite::TotallySymmetric => verify_totally_symmetric(opts.totally_symmetric_max, &opts.gen),
    }
}

/// Every suite, merged into one report.
pub fn run_all(opts: &VerifyOptions) -> Report {
    let mut r = Report::default();
    for s in Suite::ALL {
        r.merge(run_suite(s, opts));
    }
    r
}
