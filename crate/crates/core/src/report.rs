//! Machine-readable verification records.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, Lin, Mono};
use crate::text::RenderMono;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entries: Vec<Entry>,
}

/// Ordered list of `name=value` pairs naming a parameter point.
#[derive(Clone, Debug, Default)]
pub struct Point(BTreeMap<String, String>);

impl Point {
    pub fn new() -> Self {
        Point::default()
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn record(&mut self, identity: &str, point: &Point, witness: Option<String>) {
        self.entries.push(Entry {
            identity: identity.to_string(),
            params: point.0.clone(),
            status: if witness.is_none() { Status::Pass } else { Status::Fail },
            witness,
        });
    }

    /// Record whether `lhs == rhs`, with the smallest differing term as witness.
    pub fn check_eq<C: Coeff, M: Mono + RenderMono>(&mut self, identity: &str, point: &Point, lhs: &Lin<C, M>, rhs: &Lin<C, M>) -> bool {
        let witness = mismatch(lhs, rhs);
        let ok = witness.is_none();
        self.record(identity, point, witness);
        ok
    }

    pub fn check(&mut self, identity: &str, point: &Point, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.record(identity, point, (!ok).then(detail));
        ok
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        format!("{} checks, {} passed, {} failed", self.entries.len(), self.entries.len() - failed, failed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let status = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            write!(f, "{status} {} [{}]", e.identity, params.join(", "))?;
            if let Some(w) = &e.witness {
                write!(f, " : {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", self.summary())
    }
}

pub fn mismatch<C: Coeff, M: Mono + RenderMono>(lhs: &Lin<C, M>, rhs: &Lin<C, M>) -> Option<String> {
    let diff = lhs.sub(rhs);
    let (m, _) = diff.first()?;
    let show = |x: &Lin<C, M>| x.get(m).map_or_else(|| "0".to_string(), |c| c.to_string());
    Some(format!("coefficient of {}: {} vs {}", m.render(), show(lhs), show(rhs)))
}

impl FromIterator<VerificationReport> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = VerificationReport>>(iter: I) -> Self {
        let mut out = VerificationReport::new();
        for r in iter {
            out.extend(r);
        }
        out
    }
}
