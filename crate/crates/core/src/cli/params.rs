//! Typed access to a flat JSON parameter map, collecting every violation
//! instead of stopping at the first one.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{Map, Value};

/// A config key that failed validation and the constraint it broke.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub key: String,
    pub constraint: String,
}

impl Violation {
    pub fn new(key: impl Into<String>, constraint: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            constraint: constraint.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.key, self.constraint)
    }
}

pub(crate) struct Params<'a> {
    map: &'a Map<String, Value>,
    seen: BTreeSet<&'static str>,
    pub violations: Vec<Violation>,
}

impl<'a> Params<'a> {
    pub fn new(map: &'a Map<String, Value>) -> Self {
        Self {
            map,
            seen: BTreeSet::new(),
            violations: Vec::new(),
        }
    }

    pub fn violate(&mut self, key: &str, constraint: impl Into<String>) {
        self.violations.push(Violation::new(key, constraint));
    }

    fn get(&mut self, key: &'static str) -> Option<&'a Value> {
        self.seen.insert(key);
        let v = self.map.get(key);
        if v.is_none() {
            self.violate(key, "required");
        }
        v
    }

    pub fn f64(&mut self, key: &'static str) -> Option<f64> {
        match self.get(key)? {
            Value::Number(n) => n.as_f64(),
            _ => {
                self.violate(key, "must be a number");
                None
            }
        }
    }

    /// A number, or the string `"inf"` for `+∞`.
    pub fn f64_or_inf(&mut self, key: &'static str) -> Option<f64> {
        match self.get(key)? {
            Value::Number(n) => n.as_f64(),
            Value::String(s) if s == "inf" => Some(f64::INFINITY),
            _ => {
                self.violate(key, "must be a number or \"inf\"");
                None
            }
        }
    }

    /// A number satisfying `ok`, otherwise a violation naming `constraint`.
    pub fn f64_where(
        &mut self,
        key: &'static str,
        constraint: &str,
        ok: impl Fn(f64) -> bool,
    ) -> Option<f64> {
        let v = self.f64(key)?;
        if ok(v) {
            Some(v)
        } else {
            self.violate(key, constraint);
            None
        }
    }

    pub fn count(&mut self, key: &'static str, min: usize) -> Option<usize> {
        let v = self.get(key)?;
        match v.as_u64() {
            Some(n) if n as usize >= min => Some(n as usize),
            _ => {
                self.violate(key, format!("must be an integer ≥ {min}"));
                None
            }
        }
    }

    pub fn f64_list(
        &mut self,
        key: &'static str,
        constraint: &str,
        ok: impl Fn(f64) -> bool,
    ) -> Option<Vec<f64>> {
        let v = self.get(key)?;
        let list: Option<Vec<f64>> = v
            .as_array()
            .filter(|a| !a.is_empty())
            .and_then(|a| a.iter().map(Value::as_f64).collect());
        match list {
            None => {
                self.violate(key, "must be a non-empty array of numbers");
                None
            }
            Some(xs) if xs.iter().all(|x| ok(*x)) => Some(xs),
            Some(_) => {
                self.violate(key, constraint);
                None
            }
        }
    }

    /// One of `choices`.
    pub fn choice(&mut self, key: &'static str, choices: &[&'static str]) -> Option<&'static str> {
        let v = self.get(key)?;
        let found = v
            .as_str()
            .and_then(|s| choices.iter().find(|c| **c == s).copied());
        if found.is_none() {
            self.violate(key, format!("must be one of {}", choices.join(", ")));
        }
        found
    }

    pub fn string(&mut self, key: &'static str) -> Option<&'a str> {
        let v = self.get(key)?;
        let s = v.as_str();
        if s.is_none() {
            self.violate(key, "must be a string");
        }
        s
    }

    /// Flags keys that no accessor asked for.
    pub fn finish(mut self) -> Vec<Violation> {
        let unknown: Vec<String> = self
            .map
            .keys()
            .filter(|k| !self.seen.contains(k.as_str()))
            .cloned()
            .collect();
        for key in unknown {
            self.violate(&key, "unknown parameter");
        }
        self.violations
    }
}
