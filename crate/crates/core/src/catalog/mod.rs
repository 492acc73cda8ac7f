//! Named reproductions of explicit computations: each entry recomputes its
//! artifacts with the engine, compares them with embedded expected values
//! and records the outcome in a [`Certificate`].

mod compare;
mod cyclo;
mod degree6;
mod galois;
mod ogr;
mod points;
mod triple;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cover::{CoverProblem, CoverRelations};
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::subst::Substitution;

pub use compare::{derive_renaming, entry_mismatches, scalar_match};
pub use cyclo::CycloContext;
pub use degree6::{
    degree6_instance, linear_section_fibers, section_point, DEG6_FIBER, DEG6_Q, DEG6_TRACE_FREE,
};
pub use galois::{quotient_ideals, s3_invariance_check, LinearSection, QuotientIdeals};
pub use ogr::{ogr10_ideal, ogr_ring, spinor_rearrangement, verify_spinor_identification};
pub use points::{
    delta_tc, delta_tc_poly, projected_cubic, three_point_system, three_points_check,
    ThreePointReport,
};
pub use triple::{triple_cover_instance, TRIPLE_TRACE_FREE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported for reference; does not affect the verdict.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub witness: String,
}

/// Machine-readable outcome of one catalog entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub artifacts: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    /// Wall-clock measurements in milliseconds. Kept apart from the checks
    /// so that everything else is reproducible byte for byte.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timings: BTreeMap<String, f64>,
}

impl Certificate {
    pub fn new(name: &str) -> Self {
        Certificate {
            name: name.to_string(),
            artifacts: BTreeMap::new(),
            checks: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn timing(&mut self, key: &str, elapsed: std::time::Duration) {
        self.timings
            .insert(key.to_string(), elapsed.as_secs_f64() * 1e3);
    }

    pub fn without_timings(mut self) -> Self {
        self.timings.clear();
        self
    }

    pub fn artifact(&mut self, key: &str, value: Value) {
        self.artifacts.insert(key.to_string(), value);
    }

    /// Store a recomputed artifact next to its expected form.
    pub fn compare_artifact(&mut self, key: &str, computed: &[String], expected: &[String]) {
        self.artifact(
            key,
            serde_json::json!({ "computed": computed, "expected": expected }),
        );
    }

    pub fn check(&mut self, id: &str, ok: bool, witness: impl Into<String>) -> bool {
        self.checks.push(Check {
            id: id.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: witness.into(),
        });
        ok
    }

    pub fn info(&mut self, id: &str, witness: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            status: Status::Info,
            witness: witness.into(),
        });
    }

    /// Record an engine error as a failed check instead of aborting.
    pub fn attempt<T>(&mut self, id: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(id, false, e.to_string());
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect()
    }

    pub fn status_of(&self, id: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.id == id).map(|c| c.status)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Human-readable report: artifacts (computed beside expected) then checks.
    pub fn report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.name);
        for (key, value) in &self.artifacts {
            let _ = writeln!(out, "-- {key}");
            match (value.get("computed"), value.get("expected")) {
                (Some(Value::Array(c)), Some(Value::Array(e))) => {
                    let width = c.iter().map(|v| text_of(v).len()).max().unwrap_or(0);
                    for k in 0..c.len().max(e.len()) {
                        let a = c.get(k).map(text_of).unwrap_or_default();
                        let b = e.get(k).map(text_of).unwrap_or_default();
                        let _ = writeln!(out, "  {a:<width$}  | {b}");
                    }
                }
                _ => {
                    let _ = writeln!(out, "  {}", text_of(value));
                }
            }
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            let _ = writeln!(out, "[{tag}] {}: {}", c.id, c.witness);
        }
        for (key, ms) in &self.timings {
            let _ = writeln!(out, "[TIME] {key}: {ms:.1} ms");
        }
        out
    }
}

fn text_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(text_of).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

/// A cover problem bundled with the values it is expected to reproduce.
#[derive(Clone, Debug)]
pub struct CatalogInstance {
    pub name: String,
    pub problem: CoverProblem,
    /// Expected artifacts in polynomial text, keyed by artifact name.
    pub expected: BTreeMap<String, Vec<String>>,
    /// Applied to the engine output before comparison.
    pub postprocess: Vec<Substitution>,
}

impl CatalogInstance {
    /// Every expected artifact parses in `ring`.
    pub fn validate(&self, ring: &Ring) -> Result<()> {
        for (key, texts) in &self.expected {
            for t in texts {
                ring.parse(t).map_err(|e| {
                    Error::Regression(format!("expected artifact {key} entry `{t}`: {e}"))
                })?;
            }
        }
        Ok(())
    }
}

/// Result of running one cover instance.
#[derive(Clone, Debug)]
pub struct Verified {
    pub instance: CatalogInstance,
    pub relations: CoverRelations,
    /// Engine names to displayed names.
    pub renaming: Substitution,
    pub certificate: Certificate,
}

/// Entry names in the order `catalog --all` reports them.
pub const ENTRIES: [&str; 6] = [
    "deg6",
    "deg6-fibers",
    "deg6-ogr",
    "s3-galois",
    "three-points",
    "triple-cover",
];

/// Run a catalog entry by name.
pub fn run(name: &str) -> Result<Certificate> {
    match name {
        "triple-cover" => Ok(triple_cover_instance()?.certificate),
        "deg6" => Ok(degree6_instance()?.certificate),
        "deg6-fibers" => linear_section_fibers(10, 0x5eed),
        "deg6-ogr" => verify_spinor_identification(&degree6_instance()?),
        "three-points" => points::certificate(50, 0x5eed),
        "s3-galois" => galois::certificate(),
        other => Err(Error::Precondition(format!(
            "unknown catalog entry `{other}`; known: {}",
            ENTRIES.join(", ")
        ))),
    }
}
