//! One pass/fail line per acceptance criterion.

use std::io::Write;
use std::time::{Duration, Instant};

use chring::catalog::{builtin_catalog, Catalog};
use chring::homological::{
    ext_table, gorenstein_shift, minimal_free_resolution, shift_iso_with, tor_table,
};
use chring::local_duality::{
    check_cohomology_base_change, check_homology_base_change, local_cohomology_duality,
    local_cohomology_koszul, maximal_ideal,
};
use chring::mates::{
    corpus_signature, decide_equal, mate_involution_exhaustive, verify_corpus, Expect,
};
use chring::modules::{
    extend_scalars, hom_modules, is_free, restrict_scalars, torsion_submodule,
};
use chring::random::Sampler;
use chring::{DegreeWindow, GradedPolyRing, PresentedModule};

fn window(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

fn report(n: u32, name: &str, failures: &[String], detail: String, start: Instant, budget: u64) {
    let took = start.elapsed();
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let timing = if took <= Duration::from_secs(budget) { "within" } else { "over" };
    let mut out = format!(
        "criterion {n} {name}: {verdict} ({detail}; {:.2}s, {timing} {budget}s budget)\n",
        took.as_secs_f64()
    );
    for f in failures.iter().take(10) {
        out.push_str(&format!("    {f}\n"));
    }
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    assert!(failures.is_empty(), "criterion {n} failed");
}

/// Rings of positive rank, the domain of the randomized checks.
fn rings(cat: &Catalog) -> Vec<(String, GradedPolyRing)> {
    cat.groups
        .iter()
        .filter(|g| g.rank > 0)
        .map(|g| (g.name.clone(), g.ring.clone()))
        .collect()
}

#[test]
fn criterion_1_gorenstein_shift() {
    let start = Instant::now();
    let cat = builtin_catalog();
    let mut failures = Vec::new();
    for e in &cat.inclusions {
        let r = gorenstein_shift(&e.theta, Some(e.codim)).unwrap();
        if !r.matches {
            failures.push(format!("{}: detected {:?}, dim G - dim H = {}", e.pair_name(), r.detected, e.codim));
        }
    }
    let so2 = cat.inclusion("SO(2)>1").unwrap();
    let r = gorenstein_shift(&so2.theta, Some(1)).unwrap();
    if r.detected != Some(1) || r.nonzero_degrees != vec![1] {
        failures.push(format!("Q[c] -> Q: {r:?}"));
    }
    let detail = format!("{} inclusions, exact", cat.inclusions.len());
    report(1, "Gorenstein shift = dim G - dim H", &failures, detail, start, 5);
}

#[test]
fn criterion_2_shift_isomorphism() {
    let start = Instant::now();
    let cat = builtin_catalog();
    let w = window(-40, 40);
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut sampler = Sampler::new(2);
    for e in &cat.inclusions {
        let (s, r) = (e.theta.source(), e.theta.target());
        let mut mods = vec![
            ("S".to_string(), PresentedModule::ring_module(s)),
            ("R".to_string(), restrict_scalars(&e.theta, &PresentedModule::ring_module(r)).unwrap()),
            ("Q".to_string(), PresentedModule::residue_field(s)),
        ];
        for (k, m) in sampler.modules(s, 5).into_iter().enumerate() {
            mods.push((format!("random #{k}"), m));
        }
        for (name, m) in mods {
            let rep = shift_iso_with(&e.theta, &m, w, e.codim).unwrap();
            checks += 1;
            if !rep.passed {
                failures.push(format!("{} with M = {name}: {:?}", e.pair_name(), rep.mismatches));
            }
        }
    }
    let detail = format!("{checks} checks, window {w}");
    report(2, "Tor and shifted Ext agree", &failures, detail, start, 30);
}

#[test]
fn criterion_3_rank_and_freeness() {
    let start = Instant::now();
    let cat = builtin_catalog();
    let w = window(-40, 40);
    let mut failures = Vec::new();
    let mut sampler = Sampler::new(3);
    let mut shifted = 0;
    for e in &cat.inclusions {
        let (s, r) = (e.theta.source(), e.theta.target());
        let rest = restrict_scalars(&e.theta, &PresentedModule::ring_module(r)).unwrap();
        let (free, _) = is_free(&rest);
        let equal_rank = s.nvars() == r.nvars();
        if free != equal_rank {
            failures.push(format!("{}: free {free}, equal rank {equal_rank}", e.pair_name()));
        }
        if !equal_rank {
            continue;
        }
        for m in sampler.modules(s, 10) {
            let lower_shriek = extend_scalars(&e.theta, &m).unwrap().hilbert(w);
            let lower_star = hom_modules(&rest, &m).unwrap().hilbert(w);
            shifted += 1;
            for n in w.degrees() {
                if w.contains(n + e.codim) && lower_star.dim(n) != lower_shriek.dim(n + e.codim) {
                    failures.push(format!("{} degree {n}", e.pair_name()));
                    break;
                }
            }
        }
    }
    let detail = format!("{} pairs, {shifted} shifted comparisons", cat.inclusions.len());
    report(3, "free iff equal rank", &failures, detail, start, 20);
}

#[test]
fn criterion_4_local_cohomology_routes() {
    let start = Instant::now();
    let cat = builtin_catalog();
    let w = window(-30, 10);
    let mut failures = Vec::new();
    let (mut certified, mut total) = (0usize, 0usize);
    let mut sampler = Sampler::new(4);
    for (name, ring) in rings(&cat) {
        let mut mods = vec![PresentedModule::ring_module(&ring), PresentedModule::residue_field(&ring)];
        if let Some(e) = cat.inclusions.iter().find(|e| e.big == name) {
            mods.push(restrict_scalars(&e.theta, &PresentedModule::ring_module(e.theta.target())).unwrap());
        }
        mods.extend(sampler.modules(&ring, 25));
        let ideal = maximal_ideal(&ring);
        for (k, m) in mods.iter().enumerate() {
            let kz = local_cohomology_koszul(m, &ideal, w, 12).unwrap();
            let du = local_cohomology_duality(m, w).unwrap();
            for i in 0..=ring.nvars() {
                for d in w.degrees() {
                    total += 1;
                    if kz.is_certified(i, d) {
                        certified += 1;
                        if kz.get(i, d) != du.get(i, d) {
                            failures.push(format!("{name} module {k}: H^{i} degree {d}: {} vs {}", kz.get(i, d), du.get(i, d)));
                        }
                    }
                }
            }
        }
    }
    let fraction = certified as f64 / total as f64;
    if fraction < 0.95 {
        failures.push(format!("certified fraction {fraction:.3} < 0.95"));
    }
    let detail = format!("{certified}/{total} entries certified ({:.1}%)", 100.0 * fraction);
    report(4, "Koszul tower agrees with duality", &failures, detail, start, 60);
}

#[test]
fn criterion_5_base_change() {
    let start = Instant::now();
    let cat = builtin_catalog();
    let w = window(-10, 10);
    let mut failures = Vec::new();
    let (mut compared, mut checks) = (0, 0);
    let mut sampler = Sampler::new(5);
    for e in &cat.inclusions {
        let r = e.theta.target();
        let mut mods = vec![PresentedModule::ring_module(r), PresentedModule::residue_field(r)];
        mods.extend(sampler.modules(r, 5));
        for (k, m) in mods.iter().enumerate() {
            checks += 1;
            match check_cohomology_base_change(&e.theta, m, w) {
                Ok(rep) => {
                    compared += rep.compared + rep.flat_compared;
                    if !rep.passed {
                        failures.push(format!("{} module {k}: cohomology {:?}", e.pair_name(), rep.mismatches));
                    }
                }
                Err(err) => failures.push(format!("{} module {k}: {err}", e.pair_name())),
            }
            let hom = check_homology_base_change(&e.theta, m, w).unwrap();
            if !hom.passed {
                failures.push(format!("{} module {k}: homology", e.pair_name()));
            }
        }
    }
    let detail = format!("{checks} modules, {compared} certified entries compared, window {w}");
    report(5, "local (co)homology base change", &failures, detail, start, 60);
}

#[test]
fn criterion_6_torsion() {
    let start = Instant::now();
    let cat = builtin_catalog();
    let w = window(-10, 30);
    let rings = rings(&cat);
    let mut failures = Vec::new();
    let mut sampler = Sampler::new(6);
    for k in 0..50 {
        let (name, ring) = &rings[k % rings.len()];
        let m = sampler.module(ring);
        let ideal = maximal_ideal(ring);
        let tors = torsion_submodule(&m, &ideal).unwrap().hilbert(w);
        let kz = local_cohomology_koszul(&m, &ideal, w, 12).unwrap();
        let du = local_cohomology_duality(&m, w).unwrap();
        for d in w.degrees() {
            let t = tors.dim(d);
            let dual_ok = du.get(0, d) == t;
            let kz_ok = !kz.is_certified(0, d) || kz.get(0, d) == t;
            if !dual_ok || !kz_ok {
                failures.push(format!("{name} #{k} degree {d}: torsion {t}, Koszul {}, duality {}", kz.get(0, d), du.get(0, d)));
            }
        }
    }
    report(6, "torsion = H^0", &failures, "50 modules, three routes".into(), start, 20);
}

#[test]
fn criterion_7_mates_engine() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut diagrams = 0;
    for name in ["appendix-A", "section-4", "comparestrong"] {
        let r = verify_corpus(name, 8).unwrap();
        diagrams += r.diagrams.len();
        for d in r.diagrams.iter().filter(|d| !d.passed) {
            failures.push(format!("{name}: {} {:?}", d.name, d.unmatched));
        }
    }
    let inv = mate_involution_exhaustive(3, 8).unwrap();
    if !inv.passed {
        failures.push(format!("involution: {:?}", inv.failures));
    }
    let sig = corpus_signature("section-4", "identity-adjunction").unwrap();
    let eta = sig.generator(sig.cell("eta_id").unwrap());
    let id = sig.identity(vec![], Some(sig.category("X").unwrap())).unwrap();
    if decide_equal(&sig, &eta, &id, 8).unwrap().is_equal() {
        failures.push("false pair proved".into());
    }
    let false_in_corpus = verify_corpus("section-4", 8)
        .unwrap()
        .diagrams
        .iter()
        .any(|d| d.expected == Expect::NotProved && d.verdict == Expect::NotProved);
    if !false_in_corpus {
        failures.push("corpus false pair missing".into());
    }
    let detail = format!("{diagrams} diagrams, {} involution cases, depth 8", inv.checked);
    report(7, "mates corpora", &failures, detail, start, 30);
}

#[test]
fn criterion_8_engine_invariants() {
    let start = Instant::now();
    let cat = builtin_catalog();
    let w = window(-12, 24);
    let small: Vec<(String, GradedPolyRing)> = rings(&cat).into_iter().filter(|(_, r)| r.nvars() <= 2).collect();
    let mut failures = Vec::new();
    let mut sampler = Sampler::new(8);
    let instances = 100;
    for k in 0..instances {
        let (name, ring) = &small[k % small.len()];
        let m = sampler.module(ring);
        let n = sampler.module(ring);
        let res = minimal_free_resolution(&m, ring.nvars() + 2).unwrap();
        if !res.d_squared_zero() {
            failures.push(format!("{name} #{k}: d^2 != 0"));
        }
        if res.length() > ring.nvars() {
            failures.push(format!("{name} #{k}: length {} > {}", res.length(), ring.nvars()));
        }
        for d in w.degrees() {
            if res.euler_characteristic(d) != m.dim(d) as i64 {
                failures.push(format!("{name} #{k}: Euler characteristic in degree {d}"));
                break;
            }
        }
        let ext = ext_table(&m, &n, w).unwrap();
        let hom = hom_modules(&m, &n).unwrap().hilbert(w);
        if w.degrees().any(|d| ext.get(0, d) != hom.dim(d)) {
            failures.push(format!("{name} #{k}: Ext^0 != Hom"));
        }
        let (mn, nm) = (tor_table(&m, &n, w).unwrap(), tor_table(&n, &m, w).unwrap());
        let rows = mn.max_i().max(nm.max_i());
        if (0..=rows).any(|i| w.degrees().any(|d| mn.get(i, d) != nm.get(i, d))) {
            failures.push(format!("{name} #{k}: Tor not symmetric"));
        }
    }
    let detail = format!("{instances} instances per invariant, seed 8");
    report(8, "resolution and functor invariants", &failures, detail, start, 60);
}
