//! Named verification suites behind a trait-object registry.
//!
//! A suite runs a family of exhaustive checks on one instance and reports
//! counters plus human-readable lines. Suites that make no sense for an
//! instance kind return [`Error::Unsupported`]; `all` skips those.

mod builtin;
mod lemma;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::QuiverCategory;
use crate::tube::TubeCategory;

pub use builtin::*;
pub use lemma::RightEquivalenceSuite;

/// A category instance a suite can run against.
#[derive(Clone, Debug)]
pub enum Instance {
    Quiver(QuiverCategory),
    Tube(TubeCategory),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Quiver(_) => "quiver",
            Instance::Tube(_) => "tube",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteContext {
    pub instance: Instance,
    /// Overrides the suite's own default bound.
    pub bound: Option<usize>,
    pub seed: u64,
}

impl SuiteContext {
    pub fn new(instance: Instance) -> Self {
        SuiteContext {
            instance,
            bound: None,
            seed: DEFAULT_SEED,
        }
    }

    pub fn with_bound(mut self, bound: Option<usize>) -> Self {
        self.bound = bound;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn bound_or(&self, default: usize) -> usize {
        self.bound.unwrap_or(default)
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub failures: u64,
    /// No check ran; a vacuous pass.
    pub vacuous: bool,
    pub counters: BTreeMap<String, u64>,
    pub lines: Vec<String>,
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome>;
}

/// Suites by name, in registration order.
#[derive(Clone, Default)]
pub struct Registry {
    suites: Vec<Arc<dyn Suite>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry::default()
    }

    /// The built-in suites followed by `all`.
    pub fn builtin() -> Self {
        let mut r = Registry::empty();
        r.register(Arc::new(SerreDimSuite));
        r.register(Arc::new(EpiDichotomySuite));
        r.register(Arc::new(AuslanderTableSuite));
        r.register(Arc::new(DualizingContrastSuite));
        r.register(Arc::new(AlmostSplitSuite));
        r.register(Arc::new(ProjTrivialSuite));
        r.register(Arc::new(RightEquivalenceSuite::default()));
        r.register(Arc::new(ArDualitySuite));
        r.register(Arc::new(InfraSuite));
        let all = AllSuite {
            members: r.suites.clone(),
        };
        r.register(Arc::new(all));
        r
    }

    /// Registers a suite, replacing any suite of the same name.
    pub fn register(&mut self, suite: Arc<dyn Suite>) {
        match self.suites.iter().position(|s| s.name() == suite.name()) {
            Some(i) => self.suites[i] = suite,
            None => self.suites.push(suite),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn Suite>> {
        self.suites.iter().find(|s| s.name() == name)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn run(&self, name: &str, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        match self.get(name) {
            Some(s) => s.run(ctx),
            None => Err(Error::Unsupported(format!(
                "unknown suite {name:?}; known suites: {}",
                self.names().join(", ")
            ))),
        }
    }
}

/// Every member that supports the instance; the others are listed as skipped.
struct AllSuite {
    members: Vec<Arc<dyn Suite>>,
}

impl Suite for AllSuite {
    fn name(&self) -> &'static str {
        "all"
    }

    fn description(&self) -> &'static str {
        "every suite that supports the instance"
    }

    fn run(&self, ctx: &SuiteContext) -> Result<SuiteOutcome> {
        let mut t = Tally::new(self.name());
        for s in &self.members {
            match s.run(ctx) {
                Ok(o) => {
                    t.checks += o.checks;
                    t.failures += o.failures;
                    t.count(&format!("{}.checks", o.suite), o.checks);
                    t.line(format!(
                        "{}: {} ({} checks)",
                        o.suite,
                        if o.passed { "pass" } else { "FAIL" },
                        o.checks
                    ));
                }
                Err(Error::Unsupported(why)) => t.line(format!("{}: skipped ({why})", s.name())),
                Err(e) => return Err(e),
            }
        }
        Ok(t.finish())
    }
}

/// Accumulates checks for one suite run.
pub(crate) struct Tally {
    name: &'static str,
    checks: u64,
    failures: u64,
    counters: BTreeMap<String, u64>,
    lines: Vec<String>,
}

const MAX_FAILURE_LINES: u64 = 20;

impl Tally {
    pub(crate) fn new(name: &'static str) -> Self {
        Tally {
            name,
            checks: 0,
            failures: 0,
            counters: BTreeMap::new(),
            lines: Vec::new(),
        }
    }

    /// Records one check; the message is built only on failure.
    pub(crate) fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.failures <= MAX_FAILURE_LINES {
                self.lines.push(format!("fail: {}", msg()));
            }
        }
        ok
    }

    pub(crate) fn count(&mut self, key: &str, n: u64) {
        *self.counters.entry(key.to_string()).or_default() += n;
    }

    pub(crate) fn line(&mut self, s: String) {
        self.lines.push(s);
    }

    pub(crate) fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            suite: self.name.to_string(),
            passed: self.failures == 0,
            checks: self.checks,
            failures: self.failures,
            vacuous: self.checks == 0,
            counters: self.counters,
            lines: self.lines,
        }
    }
}

/// Runs a generic body against whichever category the instance holds.
macro_rules! dispatch {
    ($inst:expr, $cat:ident => $body:expr) => {
        match $inst {
            $crate::suites::Instance::Quiver($cat) => $body,
            $crate::suites::Instance::Tube($cat) => $body,
        }
    };
}
pub(crate) use dispatch;
