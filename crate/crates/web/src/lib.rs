//! JSON entry points for the browser demo.
//!
//! Every function takes and returns a JSON string so the same code runs
//! natively and under wasm. Failures come back as `{"error": "..."}`.

use std::sync::OnceLock;

use chring::catalog::{builtin_catalog, Catalog};
use chring::homological::gorenstein_shift;
use chring::local_duality::{
    local_cohomology_duality, local_cohomology_koszul, maximal_ideal, DEFAULT_TOWER_DEPTH,
};
use chring::modules::{hilbert_series, ModuleDescription};
use chring::{DegreeWindow, PresentedModule};
use serde::Deserialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

const DEFAULT_WINDOW: (i64, i64) = (-12, 12);
const MAX_WINDOW: usize = 81;

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(builtin_catalog)
}

/// A module over a catalog ring: the ring itself when `module` is absent.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleRequest {
    #[serde(default)]
    ring: Option<String>,
    #[serde(default)]
    module: Option<ModuleDescription>,
    #[serde(default)]
    window: Option<String>,
}

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn parse_window(text: Option<&str>) -> Result<DegreeWindow, String> {
    let Some(text) = text else {
        return DegreeWindow::new(DEFAULT_WINDOW.0, DEFAULT_WINDOW.1).map_err(|e| e.to_string());
    };
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("window {text:?} is not of the form LO:HI"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in {text:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in {text:?}"))?;
    let w = DegreeWindow::new(lo, hi).map_err(|e| e.to_string())?;
    if w.len() > MAX_WINDOW {
        return Err(format!("window {text} is wider than {MAX_WINDOW} degrees"));
    }
    Ok(w)
}

fn module_of(request: &str) -> Result<(PresentedModule, DegreeWindow), String> {
    let req: ModuleRequest = serde_json::from_str(request).map_err(|e| e.to_string())?;
    let window = parse_window(req.window.as_deref())?;
    let name = match (&req.module, &req.ring) {
        (Some(m), _) => m.ring.clone(),
        (None, Some(r)) => r.clone(),
        (None, None) => return Err("give a ring or a module".into()),
    };
    let group = catalog()
        .group(&name)
        .ok_or_else(|| format!("no group {name:?} in the catalog"))?;
    let m = match &req.module {
        Some(desc) => PresentedModule::from_description(&group.ring, desc).map_err(|e| e.to_string())?,
        None => PresentedModule::ring_module(&group.ring),
    };
    Ok((m, window))
}

/// Groups with their generator degrees and every inclusion with its codimension.
#[wasm_bindgen]
pub fn catalog_json() -> String {
    let c = catalog();
    let groups: Vec<Value> = c
        .groups
        .iter()
        .map(|g| {
            json!({
                "name": g.name,
                "dim": g.dim,
                "ring": g.ring.to_string(),
                "generators": g.ring.names().iter().zip(g.ring.degrees())
                    .map(|(n, d)| json!({"name": n, "degree": d}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let pairs: Vec<Value> = c
        .inclusions
        .iter()
        .map(|e| json!({"pair": e.pair_name(), "codim": e.codim}))
        .collect();
    json!({"groups": groups, "pairs": pairs}).to_string()
}

/// Gorenstein shift of an inclusion `G>H`, compared with its codimension.
#[wasm_bindgen]
pub fn gorenstein(pair: &str) -> String {
    respond((|| {
        let e = catalog()
            .inclusion(pair.trim())
            .ok_or_else(|| format!("no inclusion {pair:?} in the catalog"))?;
        let report = gorenstein_shift(&e.theta, Some(e.codim)).map_err(|e| e.to_string())?;
        let mut v = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        v["pair"] = json!(e.pair_name());
        v["codim"] = json!(e.codim);
        Ok(v)
    })())
}

/// Local cohomology at the maximal ideal from the Koszul tower and from
/// local duality, with the certified entries compared.
#[wasm_bindgen]
pub fn local_cohomology(request: &str) -> String {
    respond((|| {
        let (m, w) = module_of(request)?;
        let ideal = maximal_ideal(m.ring());
        let kz = local_cohomology_koszul(&m, &ideal, w, DEFAULT_TOWER_DEPTH)
            .map_err(|e| e.to_string())?;
        let du = local_cohomology_duality(&m, w).map_err(|e| e.to_string())?;
        let rows = m.ring().nvars() + 1;
        let (mut certified, mut mismatches) = (0, Vec::new());
        let mut koszul = Vec::new();
        let mut duality = Vec::new();
        let mut flags = Vec::new();
        for i in 0..rows {
            koszul.push(w.degrees().map(|d| kz.get(i, d)).collect::<Vec<_>>());
            duality.push(w.degrees().map(|d| du.get(i, d)).collect::<Vec<_>>());
            flags.push(w.degrees().map(|d| kz.is_certified(i, d)).collect::<Vec<_>>());
            for d in w.degrees().filter(|&d| kz.is_certified(i, d)) {
                certified += 1;
                if kz.get(i, d) != du.get(i, d) {
                    mismatches.push(json!({"i": i, "degree": d}));
                }
            }
        }
        Ok(json!({
            "window": {"lo": w.lo, "hi": w.hi},
            "koszul": koszul,
            "certified": flags,
            "duality": duality,
            "certified_entries": certified,
            "total_entries": rows * w.len(),
            "mismatches": mismatches,
            "agree": mismatches.is_empty(),
        }))
    })())
}

/// Hilbert function on a window with the closed form from a minimal
/// resolution.
#[wasm_bindgen]
pub fn hilbert(request: &str) -> String {
    respond((|| {
        let (m, w) = module_of(request)?;
        let h = hilbert_series(&m, w, true).map_err(|e| e.to_string())?;
        let mut v = serde_json::to_value(&h).map_err(|e| e.to_string())?;
        v["consistent"] = json!(h.closed_form_consistent());
        Ok(v)
    })())
}
