use std::fmt::Write as _;

use crate::aggregation::IndexSet;
use crate::logic::{Proposition, Universe, World};
use crate::orders::{Profile, Tpo};

/// One named component of a counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Tpo(Tpo),
    Profile(Profile),
    Set(Proposition),
    Sets(Vec<Proposition>),
    World(World),
    Worlds(Vec<World>),
    Index(usize),
    Indices(IndexSet),
    Strategy(Vec<IndexSet>),
}

impl Value {
    pub fn render(&self, u: &Universe) -> String {
        match self {
            Value::Tpo(t) => t.render(u),
            Value::Profile(p) => p.render(u),
            Value::Set(s) => u.render_set(*s),
            Value::Sets(ss) => {
                let parts: Vec<String> = ss.iter().map(|s| u.render_set(*s)).collect();
                format!("{{{}}}", parts.join(", "))
            }
            Value::World(w) => u.world_name(*w).to_string(),
            Value::Worlds(ws) => {
                let parts: Vec<&str> = ws.iter().map(|w| u.world_name(*w)).collect();
                format!("({})", parts.join(", "))
            }
            Value::Index(i) => (i + 1).to_string(),
            Value::Indices(set) => set.to_string(),
            Value::Strategy(seq) => seq.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("/"),
        }
    }
}

/// The instantiation at which a property fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    pub entries: Vec<(String, Value)>,
    pub note: Option<String>,
}

impl Witness {
    pub fn new() -> Witness {
        Witness::default()
    }

    pub fn with(mut self, name: &str, value: Value) -> Witness {
        self.entries.push((name.to_string(), value));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Witness {
        self.note = Some(note.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn tpo(&self, name: &str) -> Option<&Tpo> {
        match self.get(name) {
            Some(Value::Tpo(t)) => Some(t),
            _ => None,
        }
    }

    pub fn set(&self, name: &str) -> Option<Proposition> {
        match self.get(name) {
            Some(Value::Set(s)) => Some(*s),
            _ => None,
        }
    }

    pub fn sets(&self, name: &str) -> Option<&[Proposition]> {
        match self.get(name) {
            Some(Value::Sets(s)) => Some(s),
            _ => None,
        }
    }

    pub fn profile(&self, name: &str) -> Option<&Profile> {
        match self.get(name) {
            Some(Value::Profile(p)) => Some(p),
            _ => None,
        }
    }

    pub fn render(&self, u: &Universe) -> String {
        let mut out: Vec<String> = self.entries.iter().map(|(n, v)| format!("{n}={}", v.render(u))).collect();
        if let Some(note) = &self.note {
            out.push(format!("({note})"));
        }
        out.join("; ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub property: String,
    /// The property in its original form.
    pub statement: String,
    /// The form actually evaluated, over model sets and TPOs.
    pub translation: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub cases: u64,
}

impl CheckReport {
    pub fn line(&self, u: &Universe) -> String {
        let mut s = format!(
            "{} {} ({} cases)",
            if self.passed { "PASS" } else { "FAIL" },
            self.property,
            self.cases
        );
        if let Some(w) = &self.witness {
            let _ = write!(s, ": {}", w.render(u));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub bounds: String,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn get(&self, property: &str) -> Option<&CheckReport> {
        self.reports.iter().find(|r| r.property == property)
    }

    pub fn render(&self, u: &Universe, verbose: bool) -> String {
        let mut out = format!("suite {} [{}]\n", self.suite, self.bounds);
        for r in &self.reports {
            out.push_str(&r.line(u));
            out.push('\n');
            if verbose {
                let _ = writeln!(out, "    statement: {}", r.statement);
                let _ = writeln!(out, "    evaluated: {}", r.translation);
            }
        }
        out
    }
}

/// Counts cases for one property and keeps the first failure.
#[derive(Clone, Debug)]
pub struct Tally {
    property: &'static str,
    statement: &'static str,
    translation: &'static str,
    cases: u64,
    witness: Option<Witness>,
}

impl Tally {
    pub fn new(property: &'static str, statement: &'static str, translation: &'static str) -> Tally {
        Tally { property, statement, translation, cases: 0, witness: None }
    }

    pub fn property(&self) -> &'static str {
        self.property
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    /// Records one case; `witness` is only built on the first failure.
    pub fn record(&mut self, holds: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !holds && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn finish(self) -> CheckReport {
        CheckReport {
            property: self.property.to_string(),
            statement: self.statement.to_string(),
            translation: self.translation.to_string(),
            passed: self.witness.is_none(),
            witness: self.witness,
            cases: self.cases,
        }
    }
}
