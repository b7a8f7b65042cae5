//! Argument resolution and execution of individual tasks.

use std::path::Path;
use std::time::Instant;

use chring::catalog::{Catalog, InclusionEntry};
use chring::homological::{
    ext_table, gorenstein_shift, minimal_free_resolution, shift_iso_check, tor_table,
};
use chring::local_duality::{
    check_cohomology_base_change, check_homology_base_change, local_cohomology_duality,
    local_cohomology_koszul, maximal_ideal,
};
use chring::mates::{builtin_corpus_names, mate_involution_exhaustive, verify_corpus, verify_corpus_text};
use chring::modules::{hom_modules, is_free, restrict_scalars, torsion_submodule};
use chring::{AlgebraError, DegreeWindow, GradedPolyRing, PresentedModule};
use serde_json::{json, Map, Value};

use crate::config::{parse_window, ConfigError, ModuleSpec, Task, TaskKind};
use crate::report::{TaskReport, Verdict};

/// Window and depth parameters in effect for a task.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub window: DegreeWindow,
    pub depth: usize,
    pub tower_depth: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            window: DegreeWindow { lo: -40, hi: 40 },
            depth: chring::mates::DEFAULT_DEPTH,
            tower_depth: 12,
        }
    }
}

impl Settings {
    pub fn layered(
        &self,
        window: Option<&str>,
        depth: Option<usize>,
        tower_depth: Option<usize>,
        loc: &str,
    ) -> Result<Settings, ConfigError> {
        let window = match window {
            Some(w) => parse_window(w).map_err(|e| ConfigError::at(format!("{loc}.window"), e))?,
            None => self.window,
        };
        Ok(Settings {
            window,
            depth: depth.unwrap_or(self.depth),
            tower_depth: tower_depth.unwrap_or(self.tower_depth),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "window": window_text(self.window),
            "depth": self.depth,
            "tower_depth": self.tower_depth,
        })
    }
}

pub fn window_text(w: DegreeWindow) -> String {
    format!("{}:{}", w.lo, w.hi)
}

enum Corpus {
    Builtin(String),
    File(String),
}

enum Job {
    Resolve(PresentedModule),
    Ext(PresentedModule, PresentedModule),
    Tor(PresentedModule, PresentedModule),
    Gorenstein(InclusionEntry),
    ShiftIso(InclusionEntry, PresentedModule),
    LocalCohomology(PresentedModule),
    BaseChange(InclusionEntry, PresentedModule),
    Torsion(PresentedModule),
    Freeness(InclusionEntry),
    MatesVerify(Vec<Corpus>),
    FullSuite,
}

/// A task whose arguments all resolved.
pub struct Prepared {
    index: usize,
    kind: TaskKind,
    inputs: Value,
    settings: Settings,
    job: Job,
}

fn pair<'c>(catalog: &'c Catalog, task: &Task, loc: &str) -> Result<&'c InclusionEntry, ConfigError> {
    let name = task
        .pair
        .as_deref()
        .ok_or_else(|| ConfigError::at(loc, format!("{} needs a `pair`", task.kind)))?;
    catalog
        .inclusion(name)
        .ok_or_else(|| ConfigError::at(format!("{loc}.pair"), format!("unknown inclusion {name:?}")))
}

fn group_ring<'c>(catalog: &'c Catalog, name: &str, loc: &str) -> Result<&'c GradedPolyRing, ConfigError> {
    catalog
        .group(name)
        .map(|g| &g.ring)
        .ok_or_else(|| ConfigError::at(loc, format!("unknown group {name:?}")))
}

/// Resolves a module argument. `ring` is the ring the task prescribes,
/// if any, and `over` is the inclusion whose source it is.
fn module(
    catalog: &Catalog,
    spec: &ModuleSpec,
    ring: Option<(&str, &GradedPolyRing)>,
    over: Option<&InclusionEntry>,
    loc: &str,
) -> Result<(String, PresentedModule), ConfigError> {
    match spec {
        ModuleSpec::Keyword(k) => {
            let (name, r) = ring.ok_or_else(|| {
                ConfigError::at(loc, format!("module keyword {k:?} needs a `ring` or `pair`"))
            })?;
            let m = match k.as_str() {
                "ring" => PresentedModule::ring_module(r),
                "field" => PresentedModule::residue_field(r),
                "target" => {
                    let e = over.ok_or_else(|| {
                        ConfigError::at(loc, "module \"target\" is only meaningful over a pair's source")
                    })?;
                    restrict_scalars(&e.theta, &PresentedModule::ring_module(e.theta.target()))
                        .map_err(|err| ConfigError::at(loc, err.to_string()))?
                }
                other => {
                    return Err(ConfigError::at(
                        loc,
                        format!("unknown module keyword {other:?} (expected ring, field or target)"),
                    ))
                }
            };
            Ok((name.to_string(), m))
        }
        ModuleSpec::Described(desc) => {
            let r = group_ring(catalog, &desc.ring, &format!("{loc}.ring"))?;
            if let Some((name, _)) = ring {
                if name != desc.ring {
                    return Err(ConfigError::at(
                        format!("{loc}.ring"),
                        format!("module is over {:?} but the task needs {name:?}", desc.ring),
                    ));
                }
            }
            for (i, row) in desc.relations.iter().enumerate() {
                for (j, s) in row.iter().enumerate() {
                    if let Err(p) = r.parse(s) {
                        return Err(ConfigError::at(
                            format!("{loc}.relations[{i}][{j}], character {}", p.position),
                            format!("{} in {:?}", p.message, p.input),
                        ));
                    }
                }
            }
            let m = PresentedModule::from_description(r, desc)
                .map_err(|e| ConfigError::at(loc, e.to_string()))?;
            Ok((desc.ring.clone(), m))
        }
    }
}

fn ring_context<'c>(
    catalog: &'c Catalog,
    task: &Task,
    loc: &str,
) -> Result<Option<(&'c str, &'c GradedPolyRing)>, ConfigError> {
    match &task.ring {
        Some(name) => {
            let g = catalog
                .group(name)
                .ok_or_else(|| ConfigError::at(format!("{loc}.ring"), format!("unknown group {name:?}")))?;
            Ok(Some((g.name.as_str(), &g.ring)))
        }
        None => Ok(None),
    }
}

fn keyword(k: &str) -> ModuleSpec {
    ModuleSpec::Keyword(k.into())
}

pub fn prepare(
    index: usize,
    task: &Task,
    catalog: &Catalog,
    base: &Settings,
    base_dir: &Path,
) -> Result<Prepared, ConfigError> {
    let loc = format!("tasks[{index}]");
    let settings = base.layered(task.window.as_deref(), task.depth, task.tower_depth, &loc)?;
    let mloc = format!("{loc}.module");
    let oloc = format!("{loc}.other");
    let ctx = ring_context(catalog, task, &loc)?;
    let on_ring = |spec: Option<&ModuleSpec>, loc: &str, ctx| -> Result<(String, PresentedModule), ConfigError> {
        match spec {
            Some(s) => module(catalog, s, ctx, None, loc),
            None if ctx.is_some() => module(catalog, &keyword("ring"), ctx, None, loc),
            None => Err(ConfigError::at(loc, "missing module (give `module` or `ring`)")),
        }
    };
    let job = match task.kind {
        TaskKind::Resolve => Job::Resolve(on_ring(task.module.as_ref(), &mloc, ctx)?.1),
        TaskKind::LocalCohomology => Job::LocalCohomology(on_ring(task.module.as_ref(), &mloc, ctx)?.1),
        TaskKind::Torsion => Job::Torsion(on_ring(task.module.as_ref(), &mloc, ctx)?.1),
        TaskKind::Ext | TaskKind::Tor => {
            let (name, m) = on_ring(task.module.as_ref(), &mloc, ctx)?;
            let r = group_ring(catalog, &name, &mloc)?;
            let other = task.other.clone().unwrap_or_else(|| keyword("field"));
            let (_, n) = module(catalog, &other, Some((&name, r)), None, &oloc)?;
            if task.kind == TaskKind::Ext {
                Job::Ext(m, n)
            } else {
                Job::Tor(m, n)
            }
        }
        TaskKind::Gorenstein => Job::Gorenstein(pair(catalog, task, &loc)?.clone()),
        TaskKind::Freeness => Job::Freeness(pair(catalog, task, &loc)?.clone()),
        TaskKind::ShiftIso => {
            let e = pair(catalog, task, &loc)?;
            let spec = task.module.clone().unwrap_or_else(|| keyword("ring"));
            let (_, m) = module(catalog, &spec, Some((e.big.as_str(), e.theta.source())), Some(e), &mloc)?;
            Job::ShiftIso(e.clone(), m)
        }
        TaskKind::BaseChange => {
            let e = pair(catalog, task, &loc)?;
            let spec = task.module.clone().unwrap_or_else(|| keyword("ring"));
            let (_, m) = module(catalog, &spec, Some((e.small.as_str(), e.theta.target())), None, &mloc)?;
            Job::BaseChange(e.clone(), m)
        }
        TaskKind::MatesVerify => {
            let names: Vec<String> = match &task.corpus {
                Some(c) => vec![c.clone()],
                None => builtin_corpus_names().iter().map(|s| s.to_string()).collect(),
            };
            let mut corpora = Vec::new();
            for name in names {
                if builtin_corpus_names().contains(&name.as_str()) {
                    corpora.push(Corpus::Builtin(name));
                    continue;
                }
                let path = base_dir.join(&name);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    ConfigError::at(format!("{loc}.corpus"), format!("cannot read {}: {e}", path.display()))
                })?;
                if let Err(e) = serde_json::from_str::<Value>(&text) {
                    return Err(ConfigError::at(
                        format!("{}, line {}, column {}", path.display(), e.line(), e.column()),
                        e.to_string(),
                    ));
                }
                corpora.push(Corpus::File(text));
            }
            Job::MatesVerify(corpora)
        }
        TaskKind::FullSuite => Job::FullSuite,
    };
    Ok(Prepared {
        index,
        kind: task.kind,
        inputs: echo(task, &settings),
        settings,
        job,
    })
}

fn echo(task: &Task, s: &Settings) -> Value {
    let mut v = serde_json::to_value(task).expect("task serializes");
    let obj = v.as_object_mut().expect("task is an object");
    let uses_window = !matches!(
        task.kind,
        TaskKind::Gorenstein | TaskKind::Freeness | TaskKind::MatesVerify
    );
    if uses_window {
        obj.insert("window".into(), json!(window_text(s.window)));
    }
    if matches!(task.kind, TaskKind::MatesVerify | TaskKind::FullSuite) {
        obj.insert("depth".into(), json!(s.depth));
    }
    if matches!(task.kind, TaskKind::LocalCohomology | TaskKind::Torsion) {
        obj.insert("tower_depth".into(), json!(s.tower_depth));
    }
    v
}

struct Outcome {
    result: Value,
    verdict: Verdict,
    certification: Option<Value>,
}

impl Outcome {
    fn checked(result: Value, ok: bool) -> Self {
        Outcome {
            result,
            verdict: Verdict::from_bool(ok),
            certification: None,
        }
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn resolve(m: &PresentedModule, w: DegreeWindow) -> Result<Outcome, AlgebraError> {
    let nvars = m.ring().nvars();
    let res = minimal_free_resolution(m, nvars + 1)?;
    let euler = w
        .degrees()
        .all(|d| res.euler_characteristic(d) == m.dim(d) as i64);
    let d2 = res.d_squared_zero();
    let ok = d2 && euler && res.length() <= nvars;
    Ok(Outcome::checked(
        json!({
            "betti": res.betti(),
            "generator_degrees": res.modules,
            "length": res.length(),
            "minimal": res.is_minimal(),
            "d_squared_zero": d2,
            "euler_characteristic_matches": euler,
            "hilbert": m.hilbert(w).dims,
        }),
        ok,
    ))
}

fn ext(m: &PresentedModule, n: &PresentedModule, w: DegreeWindow) -> Result<Outcome, AlgebraError> {
    let table = ext_table(m, n, w)?;
    let hom = hom_modules(m, n)?.hilbert(w);
    let check = w.degrees().all(|d| table.get(0, d) == hom.dim(d));
    Ok(Outcome::checked(
        json!({"table": to_json(&table), "total": to_json(&table.collapse_to_total()), "check": check}),
        check,
    ))
}

fn tor(m: &PresentedModule, n: &PresentedModule, w: DegreeWindow) -> Result<Outcome, AlgebraError> {
    let mn = tor_table(m, n, w)?;
    let nm = tor_table(n, m, w)?;
    let rows = mn.max_i().max(nm.max_i());
    let check = (0..=rows).all(|i| w.degrees().all(|d| mn.get(i, d) == nm.get(i, d)));
    Ok(Outcome::checked(
        json!({"table": to_json(&mn), "total": to_json(&mn.collapse_to_total()), "check": check}),
        check,
    ))
}

/// Both local cohomology routes, compared on certified entries of rows
/// `0..=top`.
fn two_routes(m: &PresentedModule, s: &Settings, top: usize) -> Result<(Value, Value, usize, Vec<Value>), AlgebraError> {
    let w = s.window;
    let kz = local_cohomology_koszul(m, &maximal_ideal(m.ring()), w, s.tower_depth)?;
    let du = local_cohomology_duality(m, w)?;
    let (mut certified, mut total, mut mismatches) = (0, 0, Vec::new());
    for i in 0..=top {
        for d in w.degrees() {
            total += 1;
            if kz.is_certified(i, d) {
                certified += 1;
                if kz.get(i, d) != du.get(i, d) {
                    mismatches.push(json!({"i": i, "degree": d, "koszul": kz.get(i, d), "duality": du.get(i, d)}));
                }
            }
        }
    }
    let cert = json!({
        "certified": certified,
        "total": total,
        "uncertified": total - certified,
        "step": kz.step,
        "depth_reached": kz.depth_reached,
    });
    let result = json!({"koszul": to_json(&kz), "duality": to_json(&du)});
    Ok((result, cert, certified, mismatches))
}

fn local_cohomology(m: &PresentedModule, s: &Settings) -> Result<Outcome, AlgebraError> {
    let (mut result, cert, certified, mismatches) = two_routes(m, s, m.ring().nvars())?;
    let ok = certified > 0 && mismatches.is_empty();
    result["mismatches"] = json!(mismatches.len());
    result["mismatch_entries"] = Value::Array(mismatches);
    Ok(Outcome {
        result,
        verdict: Verdict::from_bool(ok),
        certification: Some(cert),
    })
}

fn torsion(m: &PresentedModule, s: &Settings) -> Result<Outcome, AlgebraError> {
    let w = s.window;
    let tors = torsion_submodule(m, &maximal_ideal(m.ring()))?.hilbert(w);
    let (mut result, cert, _, mut mismatches) = two_routes(m, s, 0)?;
    for d in w.degrees() {
        let du = result["duality"]["rows"][0][(d - w.lo) as usize].as_u64().unwrap_or(0) as usize;
        if du != tors.dim(d) {
            mismatches.push(json!({"degree": d, "torsion": tors.dim(d), "duality": du}));
        }
    }
    let certified = cert["certified"].as_u64().unwrap_or(0) as usize;
    let kz = &result["koszul"];
    for d in w.degrees() {
        let col = (d - w.lo) as usize;
        if kz["certified"][0][col].as_bool() == Some(true) {
            let k = kz["table"]["rows"][0][col].as_u64().unwrap_or(0) as usize;
            if k != tors.dim(d) {
                mismatches.push(json!({"degree": d, "torsion": tors.dim(d), "koszul": k}));
            }
        }
    }
    let ok = certified > 0 && mismatches.is_empty();
    result["torsion"] = json!(tors.dims);
    result["mismatches"] = json!(mismatches.len());
    result["mismatch_entries"] = Value::Array(mismatches);
    Ok(Outcome {
        result,
        verdict: Verdict::from_bool(ok),
        certification: Some(cert),
    })
}

fn base_change(e: &InclusionEntry, m: &PresentedModule, w: DegreeWindow) -> Result<Outcome, AlgebraError> {
    let coh = check_cohomology_base_change(&e.theta, m, w)?;
    let hom = check_homology_base_change(&e.theta, m, w)?;
    let ok = coh.passed && hom.passed;
    let cert = json!({
        "compared": coh.compared + coh.flat_compared,
        "uncertified": coh.uncertified,
    });
    Ok(Outcome {
        result: json!({"cohomology": to_json(&coh), "homology": to_json(&hom)}),
        verdict: Verdict::from_bool(ok),
        certification: Some(cert),
    })
}

fn freeness(e: &InclusionEntry) -> Result<Outcome, AlgebraError> {
    let rest = restrict_scalars(&e.theta, &PresentedModule::ring_module(e.theta.target()))?;
    let (free, basis) = is_free(&rest);
    let (rs, rt) = (e.theta.source().nvars(), e.theta.target().nvars());
    Ok(Outcome::checked(
        json!({
            "free": free,
            "basis_degrees": basis,
            "equal_rank": rs == rt,
            "rank_source": rs,
            "rank_target": rt,
        }),
        free == (rs == rt),
    ))
}

fn mates(corpora: &[Corpus], depth: usize) -> Result<Outcome, AlgebraError> {
    let mut reports = Vec::new();
    for c in corpora {
        let rep = match c {
            Corpus::Builtin(name) => verify_corpus(name, depth)?,
            Corpus::File(text) => verify_corpus_text(text, depth)?,
        };
        reports.push(rep);
    }
    let ok = reports.iter().all(|r| r.passed);
    Ok(Outcome::checked(json!({"corpora": to_json(&reports)}), ok))
}

fn full_suite(catalog: &Catalog, s: &Settings) -> Result<Outcome, AlgebraError> {
    let mut gorenstein = Map::new();
    let mut free = Map::new();
    let mut shift = Map::new();
    let mut failures = Vec::new();
    for e in &catalog.inclusions {
        let name = e.pair_name();
        let g = gorenstein_shift(&e.theta, Some(e.codim))?;
        if !g.matches {
            failures.push(format!("{name}: Gorenstein shift {:?}, expected {}", g.detected, e.codim));
        }
        gorenstein.insert(name.clone(), json!(g.detected));
        let f = freeness(e)?;
        if f.verdict != Verdict::Pass {
            failures.push(format!("{name}: freeness does not match rank"));
        }
        free.insert(name.clone(), f.result["free"].clone());
        let src = e.theta.source();
        let target = restrict_scalars(&e.theta, &PresentedModule::ring_module(e.theta.target()))?;
        let mods = [
            PresentedModule::ring_module(src),
            PresentedModule::residue_field(src),
            target,
        ];
        let mut ok = true;
        for m in &mods {
            ok &= shift_iso_check(&e.theta, m, s.window)?.passed;
        }
        if !ok {
            failures.push(format!("{name}: shift isomorphism"));
        }
        shift.insert(name, json!(ok));
    }
    let mut corpora = Map::new();
    for name in builtin_corpus_names() {
        let rep = verify_corpus(name, s.depth)?;
        if !rep.passed {
            failures.push(format!("corpus {name}"));
        }
        corpora.insert(name.to_string(), json!(rep.passed));
    }
    let inv = mate_involution_exhaustive(3, s.depth)?;
    if !inv.passed {
        failures.push("mate involution".into());
    }
    let ok = failures.is_empty();
    Ok(Outcome::checked(
        json!({
            "gorenstein": gorenstein,
            "freeness": free,
            "shift_iso": shift,
            "mates": corpora,
            "involution": to_json(&inv),
            "failures": failures,
        }),
        ok,
    ))
}

pub fn execute(p: &Prepared, catalog: &Catalog) -> TaskReport {
    let start = Instant::now();
    let s = &p.settings;
    let outcome = match &p.job {
        Job::Resolve(m) => resolve(m, s.window),
        Job::Ext(m, n) => ext(m, n, s.window),
        Job::Tor(m, n) => tor(m, n, s.window),
        Job::Gorenstein(e) => gorenstein_shift(&e.theta, Some(e.codim))
            .map(|r| Outcome::checked(to_json(&r), r.matches)),
        Job::ShiftIso(e, m) => {
            shift_iso_check(&e.theta, m, s.window).map(|r| Outcome::checked(to_json(&r), r.passed))
        }
        Job::LocalCohomology(m) => local_cohomology(m, s),
        Job::BaseChange(e, m) => base_change(e, m, s.window),
        Job::Torsion(m) => torsion(m, s),
        Job::Freeness(e) => freeness(e),
        Job::MatesVerify(c) => mates(c, s.depth),
        Job::FullSuite => full_suite(catalog, s),
    };
    let outcome = outcome.unwrap_or_else(|e| Outcome {
        result: json!({"error": e.to_string()}),
        verdict: Verdict::Fail,
        certification: None,
    });
    TaskReport {
        index: p.index,
        kind: p.kind,
        inputs: p.inputs.clone(),
        result: outcome.result,
        verdict: outcome.verdict,
        certification: outcome.certification,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
