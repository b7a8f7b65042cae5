//! Run reports and their renderings.

use std::fmt::Write;

use chring::catalog::Rejection;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::TaskKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A computation without a built-in check.
    Info,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub index: usize,
    pub kind: TaskKind,
    pub inputs: Value,
    pub result: Value,
    pub verdict: Verdict,
    /// Counts of certified and uncertified entries, for tasks that use
    /// stabilized towers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<Value>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub catalog: String,
    pub rejected: Vec<Rejection>,
    pub settings: Value,
    pub tasks: Vec<TaskReport>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every timing field zeroed, for comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for t in &mut r.tasks {
            t.elapsed_ms = 0;
        }
        r
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "catalog: {}", self.catalog);
        for rej in &self.rejected {
            let _ = writeln!(out, "rejected: {} ({})", rej.pair, rej.reason);
        }
        for t in &self.tasks {
            let _ = writeln!(
                out,
                "[{}] #{} {} ({} ms)",
                t.verdict.label(),
                t.index,
                t.kind,
                t.elapsed_ms
            );
            for line in summary(t) {
                let _ = writeln!(out, "    {line}");
            }
        }
        let passed = self.tasks.iter().filter(|t| t.verdict == Verdict::Pass).count();
        let failed = self.tasks.iter().filter(|t| t.verdict == Verdict::Fail).count();
        let _ = writeln!(
            out,
            "{}: {passed} passed, {failed} failed, {} tasks ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.tasks.len(),
            self.elapsed_ms
        );
        out
    }
}

fn field<'a>(v: &'a Value, path: &[&str]) -> &'a Value {
    path.iter().fold(v, |v, k| &v[*k])
}

fn table_lines(table: &Value, label: &str) -> Vec<String> {
    let lo = table["window"]["lo"].as_i64().unwrap_or(0);
    let Some(rows) = table["rows"].as_array() else {
        return Vec::new();
    };
    rows.iter()
        .enumerate()
        .filter_map(|(i, row)| {
            let cells: Vec<String> = row
                .as_array()?
                .iter()
                .enumerate()
                .filter(|(_, v)| v.as_u64().unwrap_or(0) > 0)
                .map(|(k, v)| format!("{}:{}", lo + k as i64, v))
                .collect();
            (!cells.is_empty()).then(|| format!("{label}{i}  {}", cells.join(" ")))
        })
        .collect()
}

/// A one-row table in the serialized layout, from a `LO:HI` window and a
/// list of dims.
fn json_table(window: Option<&str>, dims: &Value) -> Value {
    let lo = window
        .and_then(|w| w.split_once(':'))
        .and_then(|(lo, _)| lo.parse::<i64>().ok())
        .unwrap_or(0);
    serde_json::json!({"window": {"lo": lo}, "rows": [dims]})
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

/// Human-readable lines for one task.
pub fn summary(t: &TaskReport) -> Vec<String> {
    let r = &t.result;
    if let Some(e) = r.get("error") {
        return vec![format!("error: {}", e.as_str().unwrap_or_default())];
    }
    let mut lines = Vec::new();
    match t.kind {
        TaskKind::Resolve => {
            lines.push(format!(
                "betti {}  length {}  d^2 = 0: {}  euler: {}",
                compact(&r["betti"]),
                r["length"],
                r["d_squared_zero"],
                r["euler_characteristic_matches"]
            ));
            if let Some(mods) = r["generator_degrees"].as_array() {
                for (i, m) in mods.iter().enumerate() {
                    lines.push(format!("F{i}: {}", compact(m)));
                }
            }
        }
        TaskKind::Ext | TaskKind::Tor => {
            let name = if t.kind == TaskKind::Ext { "Ext^" } else { "Tor_" };
            lines.extend(table_lines(&r["table"], name));
            let check = if t.kind == TaskKind::Ext {
                "Ext^0 = Hom"
            } else {
                "symmetric"
            };
            lines.push(format!("{check}: {}", r["check"]));
        }
        TaskKind::Gorenstein => {
            lines.push(format!(
                "{}: shift {} (expected {}), nonzero in degrees {}",
                t.inputs["pair"].as_str().unwrap_or_default(),
                r["detected"],
                r["expected"],
                compact(&r["nonzero_degrees"])
            ));
        }
        TaskKind::ShiftIso => {
            lines.push(format!(
                "shift {}, {} total degrees compared, {} mismatches",
                r["shift"],
                r["compared"],
                r["mismatches"].as_array().map_or(0, |m| m.len())
            ));
        }
        TaskKind::LocalCohomology | TaskKind::Torsion => {
            if t.kind == TaskKind::Torsion {
                let torsion = json_table(t.inputs["window"].as_str(), &r["torsion"]);
                let rows = table_lines(&torsion, "torsion, H^");
                if rows.is_empty() {
                    lines.push("torsion submodule vanishes on the window".into());
                }
                lines.extend(rows);
            } else {
                lines.extend(table_lines(field(r, &["koszul", "table"]), "H^"));
            }
            if let Some(c) = &t.certification {
                lines.push(format!(
                    "certified {} of {}, {} mismatches with the duality route",
                    c["certified"], c["total"], r["mismatches"]
                ));
            }
        }
        TaskKind::BaseChange => {
            lines.push(format!(
                "cohomology: {} compared, flat part {} ({} compared), {} mismatches",
                field(r, &["cohomology", "compared"]),
                field(r, &["cohomology", "flat_checked"]),
                field(r, &["cohomology", "flat_compared"]),
                field(r, &["cohomology", "mismatches"])
                    .as_array()
                    .map_or(0, |m| m.len())
            ));
            lines.push(format!(
                "homology: {}",
                field(r, &["homology", "passed"])
            ));
        }
        TaskKind::Freeness => {
            lines.push(format!(
                "free {}  equal rank {}  basis degrees {}",
                r["free"],
                r["equal_rank"],
                compact(&r["basis_degrees"])
            ));
        }
        TaskKind::MatesVerify => {
            for c in r["corpora"].as_array().into_iter().flatten() {
                lines.push(format!("corpus {} at depth {}", c["corpus"], c["depth"]));
                for d in c["diagrams"].as_array().into_iter().flatten() {
                    lines.push(format!(
                        "  {} {}: {} (rewrite steps {})",
                        if d["passed"].as_bool() == Some(true) { "ok  " } else { "FAIL" },
                        d["name"].as_str().unwrap_or_default(),
                        d["verdict"].as_str().unwrap_or_default(),
                        d["rewrite_steps"]
                    ));
                }
            }
        }
        TaskKind::FullSuite => {
            if let Some(g) = r["gorenstein"].as_object() {
                for (pair, shift) in g {
                    lines.push(format!(
                        "{pair:<14} shift {shift}  free {}  shift-iso {}",
                        r["freeness"][pair], r["shift_iso"][pair]
                    ));
                }
            }
            if let Some(m) = r["mates"].as_object() {
                for (corpus, ok) in m {
                    lines.push(format!("corpus {corpus}: {ok}"));
                }
            }
            lines.push(format!(
                "mate involution: {} cases, {} failures",
                r["involution"]["checked"],
                r["involution"]["failures"]
                    .as_array()
                    .map_or(0, |f| f.len())
            ));
        }
    }
    lines
}
