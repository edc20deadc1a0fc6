//! The machine-readable report and its text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    True,
    False,
    InconclusiveAtBoundary,
}

impl From<stratum_core::Verdict> for Verdict {
    fn from(v: stratum_core::Verdict) -> Self {
        match v {
            stratum_core::Verdict::True => Verdict::True,
            stratum_core::Verdict::False => Verdict::False,
            stratum_core::Verdict::InconclusiveAtBoundary => Verdict::InconclusiveAtBoundary,
        }
    }
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::InconclusiveAtBoundary => "inconclusive-at-boundary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub stratum: usize,
    pub vertex: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardRow {
    pub stratum: usize,
    pub vertex: String,
    /// Dimension vector in vertex order.
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleResult {
    pub module: String,
    pub verdict: Verdict,
    /// `[M : Δ_v]` by vertex name, present when multiplicities were asked for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub vertices: Vec<String>,
    pub unsafe_vertices: Vec<String>,
    pub unsafe_strata: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub field: String,
    pub side: String,
    pub vertices: Vec<String>,
    pub partition: Vec<Vec<String>>,
    pub algebra_dim: usize,
    pub boundary: Boundary,
    pub standards: Vec<StandardRow>,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleResult>,
    /// Wall-clock microseconds per check, only with `--timing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<BTreeMap<String, u64>>,
}

impl Report {
    /// 0 when every verdict is true, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        let verdicts = self.checks.iter().map(|c| c.verdict).chain(self.modules.iter().map(|m| m.verdict));
        let ok = verdicts.into_iter().all(|v| v == Verdict::True);
        if ok {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra: dim {} over {}, {} side", self.algebra_dim, self.field, self.side);
        let strata: Vec<String> = self.partition.iter().map(|s| format!("{{{}}}", s.join(", "))).collect();
        let _ = writeln!(out, "strata: {}", strata.join(" < "));
        if !self.boundary.vertices.is_empty() {
            let _ = writeln!(
                out,
                "boundary: {} (unsafe vertices {}; unsafe strata {:?})",
                self.boundary.vertices.join(", "),
                self.boundary.unsafe_vertices.join(", "),
                self.boundary.unsafe_strata
            );
        }
        let _ = writeln!(out, "standard modules:");
        for row in &self.standards {
            let _ = writeln!(out, "  Δ_{}({})  dims {:?}", row.vertex, row.stratum, row.dims);
        }
        for c in &self.checks {
            let _ = write!(out, "{:<12} {}", c.check, c.verdict.as_str());
            if let Some(w) = &c.witness {
                let _ = write!(out, "  [{}]", witness_text(w));
            }
            out.push('\n');
        }
        for m in &self.modules {
            let _ = write!(out, "module {:<8} {}", m.module, m.verdict.as_str());
            if let Some(mult) = &m.multiplicities {
                let parts: Vec<String> =
                    mult.iter().filter(|(_, &k)| k > 0).map(|(v, k)| format!("Δ_{v}^{k}")).collect();
                let _ = write!(out, "  {}", if parts.is_empty() { "0".into() } else { parts.join(" + ") });
            }
            if let Some(w) = &m.witness {
                let _ = write!(out, "  [{}]", witness_text(w));
            }
            out.push('\n');
        }
        if let Some(t) = &self.timing_us {
            for (k, us) in t {
                let _ = writeln!(out, "time {k}: {us} us");
            }
        }
        out
    }
}

fn witness_text(w: &Witness) -> String {
    let mut s = format!("{} at stratum {}, vertex {}", w.reason, w.stratum, w.vertex);
    if let Some(t) = w.section {
        let _ = write!(s, ", section {t}");
    }
    if let Some(p) = &w.partner {
        let _ = write!(s, ", partner {p}");
    }
    s
}
