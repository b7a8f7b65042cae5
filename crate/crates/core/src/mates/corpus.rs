//! Signature and diagram files, and the built-in corpora.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    enumerate_terms, invalid, mate, Decision, Id, Origin, Prover, Signature, Square, Term,
    TraceLine,
};
use crate::error::AlgebraError;

const APPENDIX_A: &str = include_str!("../../data/corpora/appendix-a.json");
const SECTION_4: &str = include_str!("../../data/corpora/section-4.json");
const COMPARESTRONG: &str = include_str!("../../data/corpora/comparestrong.json");

pub fn builtin_corpus_names() -> &'static [&'static str] {
    &["appendix-A", "section-4", "comparestrong"]
}

fn builtin_text(name: &str) -> Option<&'static str> {
    match name {
        "appendix-A" => Some(APPENDIX_A),
        "section-4" => Some(SECTION_4),
        "comparestrong" => Some(COMPARESTRONG),
        _ => None,
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorDecl {
    name: String,
    source: String,
    target: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdjunctionDecl {
    left: String,
    right: String,
    unit: String,
    counit: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDecl {
    name: String,
    source: Vec<String>,
    target: Vec<String>,
    #[serde(default)]
    category: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedTerm {
    name: String,
    term: TermJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InverseDecl {
    name: String,
    of: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxiomDecl {
    name: String,
    lhs: TermJson,
    rhs: TermJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareDecl {
    g: String,
    h: String,
    #[serde(default)]
    l: Vec<String>,
    #[serde(default)]
    l2: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureJson {
    categories: Vec<String>,
    #[serde(default)]
    functors: Vec<FunctorDecl>,
    #[serde(default)]
    adjunctions: Vec<AdjunctionDecl>,
    #[serde(default)]
    cells: Vec<CellDecl>,
    #[serde(default)]
    definitions: Vec<NamedTerm>,
    #[serde(default)]
    inverses: Vec<InverseDecl>,
    #[serde(default)]
    axioms: Vec<AxiomDecl>,
    #[serde(default)]
    square: Option<SquareDecl>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerJson {
    #[serde(default)]
    left: Vec<String>,
    cell: String,
    #[serde(default)]
    right: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TermJson {
    Mate {
        mate: Box<TermJson>,
    },
    Compose {
        compose: Vec<TermJson>,
    },
    Layers {
        #[serde(default)]
        source: Option<Vec<String>>,
        #[serde(default)]
        category: Option<String>,
        layers: Vec<LayerJson>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    Equal,
    NotProved,
}

fn default_expect() -> Expect {
    Expect::Equal
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramJson {
    name: String,
    signature: String,
    lhs: TermJson,
    rhs: TermJson,
    #[serde(default = "default_expect")]
    expect: Expect,
    #[serde(default)]
    lemma: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusJson {
    name: String,
    signatures: BTreeMap<String, SignatureJson>,
    diagrams: Vec<DiagramJson>,
}

fn names(sig: &Signature, v: &[String]) -> Result<Vec<Id>, AlgebraError> {
    v.iter().map(|n| sig.functor(n)).collect()
}

fn build_term(sig: &Signature, t: &TermJson) -> Result<Term, AlgebraError> {
    match t {
        TermJson::Mate { mate: inner } => mate(sig, &build_term(sig, inner)?),
        TermJson::Compose { compose } => {
            let mut parts = compose.iter().map(|p| build_term(sig, p));
            let first = parts.next().ok_or_else(|| invalid("empty composite"))??;
            parts.try_fold(first, |acc, p| sig.compose(&acc, &p?))
        }
        TermJson::Layers {
            source,
            category,
            layers,
        } => {
            let source = match (source, layers.first()) {
                (Some(s), _) => names(sig, s)?,
                (None, Some(l)) => {
                    let mut s = names(sig, &l.left)?;
                    match sig.definitions.get(&l.cell) {
                        Some(d) => s.extend_from_slice(&d.source),
                        None => s.extend_from_slice(&sig.cells[sig.cell(&l.cell)?].src),
                    }
                    s.extend(names(sig, &l.right)?);
                    s
                }
                (None, None) => return Err(invalid("an identity term needs a source")),
            };
            let cat = match category {
                Some(c) => Some(sig.category(c)?),
                None => layers
                    .first()
                    .and_then(|l| sig.cell(&l.cell).ok())
                    .map(|c| sig.cells[c].dom),
            };
            let mut term = sig.identity(source, cat)?;
            for (k, l) in layers.iter().enumerate() {
                let left = names(sig, &l.left)?;
                let right = names(sig, &l.right)?;
                let piece = match sig.definitions.get(&l.cell) {
                    Some(d) => d.clone(),
                    None => sig.generator(sig.cell(&l.cell)?),
                };
                let w = sig
                    .whisker(&left, &piece, &right)
                    .map_err(|e| invalid(format!("layer {k} ({}): {e}", l.cell)))?;
                term = sig
                    .compose(&term, &w)
                    .map_err(|e| invalid(format!("layer {k} ({}): {e}", l.cell)))?;
            }
            Ok(term)
        }
    }
}

fn build_signature(js: &SignatureJson) -> Result<Signature, AlgebraError> {
    let mut sig = Signature::default();
    for c in &js.categories {
        if sig.category(c).is_ok() {
            return Err(invalid(format!("duplicate category {c:?}")));
        }
        sig.add_category(c);
    }
    for f in &js.functors {
        let (d, c) = (sig.category(&f.source)?, sig.category(&f.target)?);
        sig.add_functor(&f.name, d, c)?;
    }
    for a in &js.adjunctions {
        let (l, r) = (sig.functor(&a.left)?, sig.functor(&a.right)?);
        sig.add_adjunction(l, r, &a.unit, &a.counit)?;
    }
    for c in &js.cells {
        let cat = c.category.as_deref().map(|n| sig.category(n)).transpose()?;
        let (s, t) = (names(&sig, &c.source)?, names(&sig, &c.target)?);
        sig.add_cell(&c.name, s, t, cat)?;
    }
    for d in &js.definitions {
        let t = build_term(&sig, &d.term)?;
        if sig.cell(&d.name).is_ok() || sig.definitions.insert(d.name.clone(), t).is_some() {
            return Err(invalid(format!("duplicate definition {:?}", d.name)));
        }
    }
    for i in &js.inverses {
        sig.add_inverse(&i.name, &i.of)?;
    }
    for a in &js.axioms {
        let (l, r) = (build_term(&sig, &a.lhs)?, build_term(&sig, &a.rhs)?);
        sig.add_axiom(&a.name, l, r, Origin::UserAxiom)
            .map_err(|e| invalid(format!("axiom {:?}: {e}", a.name)))?;
    }
    if let Some(sq) = &js.square {
        let find = |f: &str| {
            sig.adjunctions
                .iter()
                .position(|a| sig.functors[a.left].name == f)
        };
        let adj_g = find(&sq.g)
            .ok_or_else(|| invalid(format!("no adjunction with left adjoint {:?}", sq.g)))?;
        let adj_h = find(&sq.h)
            .ok_or_else(|| invalid(format!("no adjunction with left adjoint {:?}", sq.h)))?;
        let (l, l2) = (names(&sig, &sq.l)?, names(&sig, &sq.l2)?);
        sig.square = Some(Square {
            adj_g,
            adj_h,
            l,
            l2,
        });
    }
    Ok(sig)
}

/// Outcome for one diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub expected: Expect,
    pub verdict: Expect,
    pub rewrite_steps: Option<usize>,
    pub replayed: Option<bool>,
    pub trace: Vec<TraceLine>,
    /// Interchange normal forms of both sides when no proof was found.
    pub unmatched: Option<(String, String)>,
    pub explored: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub corpus: String,
    pub depth: usize,
    pub diagrams: Vec<DiagramReport>,
    pub passed: bool,
}

/// Decides every diagram of a corpus in order. Diagrams marked as lemmas
/// become available to later ones once proved.
pub fn verify_corpus_text(text: &str, depth: usize) -> Result<CorpusReport, AlgebraError> {
    let js: CorpusJson =
        serde_json::from_str(text).map_err(|e| invalid(format!("corpus JSON: {e}")))?;
    let mut sigs = BTreeMap::new();
    for (name, s) in &js.signatures {
        sigs.insert(
            name.clone(),
            build_signature(s).map_err(|e| invalid(format!("signature {name:?}: {e}")))?,
        );
    }
    let mut lemmas: BTreeMap<String, Vec<(String, Term, Term)>> = BTreeMap::new();
    let mut diagrams = Vec::new();
    for d in &js.diagrams {
        let sig = sigs
            .get(&d.signature)
            .ok_or_else(|| invalid(format!("diagram {:?}: unknown signature", d.name)))?;
        let lhs = build_term(sig, &d.lhs)
            .map_err(|e| invalid(format!("diagram {:?} lhs: {e}", d.name)))?;
        let rhs = build_term(sig, &d.rhs)
            .map_err(|e| invalid(format!("diagram {:?} rhs: {e}", d.name)))?;
        let mut prover = Prover::new(sig);
        for (n, l, r) in lemmas.get(&d.signature).into_iter().flatten() {
            prover.add_lemma(n, l.clone(), r.clone());
        }
        let decision = prover
            .decide(&lhs, &rhs, depth)
            .map_err(|e| invalid(format!("diagram {:?}: {e}", d.name)))?;
        let report = match &decision {
            Decision::Equal(proof) => {
                let replayed = prover.replay(proof, &rhs);
                DiagramReport {
                    name: d.name.clone(),
                    lhs: sig.render(&lhs),
                    rhs: sig.render(&rhs),
                    expected: d.expect,
                    verdict: Expect::Equal,
                    rewrite_steps: Some(proof.rewrite_steps()),
                    replayed: Some(replayed),
                    trace: prover.trace(proof),
                    unmatched: None,
                    explored: 0,
                    passed: d.expect == Expect::Equal && replayed,
                }
            }
            Decision::NotProved {
                explored,
                lhs_normal,
                rhs_normal,
            } => DiagramReport {
                name: d.name.clone(),
                lhs: sig.render(&lhs),
                rhs: sig.render(&rhs),
                expected: d.expect,
                verdict: Expect::NotProved,
                rewrite_steps: None,
                replayed: None,
                trace: vec![],
                unmatched: Some((sig.render(lhs_normal), sig.render(rhs_normal))),
                explored: *explored,
                passed: d.expect == Expect::NotProved,
            },
        };
        if d.lemma && report.verdict == Expect::Equal && report.passed {
            lemmas
                .entry(d.signature.clone())
                .or_default()
                .push((d.name.clone(), lhs, rhs));
        }
        diagrams.push(report);
    }
    let passed = diagrams.iter().all(|d| d.passed);
    Ok(CorpusReport {
        corpus: js.name,
        depth,
        diagrams,
        passed,
    })
}

pub fn verify_corpus(name: &str, depth: usize) -> Result<CorpusReport, AlgebraError> {
    let text = builtin_text(name).ok_or_else(|| invalid(format!("unknown corpus {name:?}")))?;
    verify_corpus_text(text, depth)
}

/// Parses one signature of a built-in corpus.
pub fn corpus_signature(corpus: &str, signature: &str) -> Result<Signature, AlgebraError> {
    let text = builtin_text(corpus).ok_or_else(|| invalid(format!("unknown corpus {corpus:?}")))?;
    let js: CorpusJson =
        serde_json::from_str(text).map_err(|e| invalid(format!("corpus JSON: {e}")))?;
    let s = js
        .signatures
        .get(signature)
        .ok_or_else(|| invalid(format!("unknown signature {signature:?}")))?;
    build_signature(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub max_layers: usize,
    pub depth: usize,
    pub checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Checks `mate(mate(t)) = t` for every 2-cell of either handedness with at
/// most `max_layers` layers over the two-adjunction square.
pub fn mate_involution_exhaustive(
    max_layers: usize,
    depth: usize,
) -> Result<InvolutionReport, AlgebraError> {
    let sig = corpus_signature("section-4", "square")?;
    let sq = sig
        .square
        .clone()
        .ok_or_else(|| invalid("square missing"))?;
    let (g, h) = (&sig.adjunctions[sq.adj_g], &sig.adjunctions[sq.adj_h]);
    let cells: Vec<Id> = (0..sig.cells.len()).collect();
    let boundaries = [
        (
            [vec![h.left], sq.l.clone()].concat(),
            [sq.l2.clone(), vec![g.left]].concat(),
        ),
        (
            [sq.l.clone(), vec![g.right]].concat(),
            [vec![h.right], sq.l2.clone()].concat(),
        ),
    ];
    let mut checked = 0;
    let mut failures = Vec::new();
    for (src, tgt) in boundaries {
        let start = sig.identity(src, None)?;
        for t in enumerate_terms(&sig, &start, &tgt, &cells, max_layers) {
            let back = mate(&sig, &mate(&sig, &t)?)?;
            let mut prover = Prover::new(&sig);
            let ok = match prover.decide(&back, &t, depth)? {
                Decision::Equal(p) => prover.replay(&p, &t),
                Decision::NotProved { .. } => false,
            };
            checked += 1;
            if !ok {
                failures.push(sig.render(&t));
            }
        }
    }
    let passed = failures.is_empty() && checked > 0;
    Ok(InvolutionReport {
        max_layers,
        depth,
        checked,
        failures,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(name: &str, depth: usize) -> CorpusReport {
        let r = verify_corpus(name, depth).unwrap();
        for d in &r.diagrams {
            assert!(
                d.passed,
                "{name}: {} -> {:?} unmatched {:?}",
                d.name, d.verdict, d.unmatched
            );
        }
        r
    }

    #[test]
    fn section_4() {
        let r = check("section-4", 6);
        assert_eq!(r.diagrams[3].rewrite_steps, Some(1));
    }

    #[test]
    fn comparestrong() {
        check("comparestrong", 8);
    }

    #[test]
    fn appendix_a() {
        check("appendix-A", 8);
    }
}
