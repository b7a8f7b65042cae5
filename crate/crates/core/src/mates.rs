//! Formal pasting-diagram rewriting for 2-cells built from adjunctions.
//!
//! A 1-cell is a string of functor symbols written in composition order, so
//! `[U, F]` is `U ∘ F`. A term is a source string and a list of layers, each
//! one generator 2-cell applied at an offset into the current string. The
//! first layer is applied first.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

mod corpus;

pub use corpus::{
    builtin_corpus_names, corpus_signature, mate_involution_exhaustive, verify_corpus,
    verify_corpus_text, CorpusReport, DiagramReport, Expect, InvolutionReport,
};

pub type Id = usize;

pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorSym {
    pub name: String,
    pub dom: Id,
    pub cod: Id,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSym {
    pub name: String,
    pub src: Vec<Id>,
    pub tgt: Vec<Id>,
    pub dom: Id,
    pub cod: Id,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    pub offset: usize,
    pub cell: Id,
}

/// Vertical composite of whiskered generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub dom: Id,
    pub cod: Id,
    pub source: Vec<Id>,
    pub layers: Vec<Layer>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    TriangleIdentity,
    Interchange,
    UserAxiom,
    Lemma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub name: String,
    pub origin: Origin,
    pub lhs: Term,
    pub rhs: Term,
    pub reversible: bool,
    /// May an empty side be expanded into the other one.
    pub expanding: bool,
}

impl Rule {
    fn sides(&self, dir: Direction) -> (&Term, &Term) {
        match dir {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }

    fn allowed(&self, dir: Direction) -> bool {
        let (pat, _) = self.sides(dir);
        let oriented = dir == Direction::Forward || self.reversible;
        oriented && (!pat.layers.is_empty() || self.expanding)
    }
}

#[derive(Clone, Debug)]
pub struct Adjunction {
    pub left: Id,
    pub right: Id,
    pub unit: Id,
    pub counit: Id,
}

/// The square of a mate: `F_G ⊣ U_G`, `F_H ⊣ U_H`, and strings `L`, `L'`
/// with `α: F_H L ⇒ L' F_G` and `β: L U_G ⇒ U_H L'`.
#[derive(Clone, Debug)]
pub struct Square {
    pub adj_g: usize,
    pub adj_h: usize,
    pub l: Vec<Id>,
    pub l2: Vec<Id>,
}

#[derive(Clone, Debug, Default)]
pub struct Signature {
    pub categories: Vec<String>,
    pub functors: Vec<FunctorSym>,
    pub cells: Vec<CellSym>,
    pub adjunctions: Vec<Adjunction>,
    pub definitions: BTreeMap<String, Term>,
    pub rules: Vec<Rule>,
    pub square: Option<Square>,
}

fn invalid(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Invalid(msg.into())
}

impl Signature {
    pub fn category(&self, name: &str) -> Result<Id, AlgebraError> {
        self.categories
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| invalid(format!("unknown category {name:?}")))
    }

    pub fn functor(&self, name: &str) -> Result<Id, AlgebraError> {
        self.functors
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| invalid(format!("unknown functor {name:?}")))
    }

    pub fn cell(&self, name: &str) -> Result<Id, AlgebraError> {
        self.cells
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| invalid(format!("unknown 2-cell {name:?}")))
    }

    pub fn add_category(&mut self, name: &str) -> Id {
        if let Ok(i) = self.category(name) {
            return i;
        }
        self.categories.push(name.to_string());
        self.categories.len() - 1
    }

    pub fn add_functor(&mut self, name: &str, dom: Id, cod: Id) -> Result<Id, AlgebraError> {
        if self.functor(name).is_ok() {
            return Err(invalid(format!("duplicate functor {name:?}")));
        }
        self.functors.push(FunctorSym {
            name: name.to_string(),
            dom,
            cod,
        });
        Ok(self.functors.len() - 1)
    }

    /// Categories `(dom, cod)` of a nonempty functor string.
    pub fn string_cats(&self, s: &[Id]) -> Result<(Id, Id), AlgebraError> {
        let (first, last) = match (s.first(), s.last()) {
            (Some(a), Some(b)) => (*a, *b),
            _ => return Err(invalid("empty functor string has no categories")),
        };
        for w in s.windows(2) {
            if self.functors[w[0]].dom != self.functors[w[1]].cod {
                return Err(invalid(format!(
                    "{} does not compose",
                    self.render_string(s)
                )));
            }
        }
        Ok((self.functors[last].dom, self.functors[first].cod))
    }

    /// Adds a generator; `cat` is needed only when both boundaries are empty.
    pub fn add_cell(
        &mut self,
        name: &str,
        src: Vec<Id>,
        tgt: Vec<Id>,
        cat: Option<Id>,
    ) -> Result<Id, AlgebraError> {
        if self.cell(name).is_ok() || self.definitions.contains_key(name) {
            return Err(invalid(format!("duplicate 2-cell {name:?}")));
        }
        let cats = match (src.is_empty(), tgt.is_empty()) {
            (false, _) => self.string_cats(&src)?,
            (true, false) => self.string_cats(&tgt)?,
            (true, true) => {
                let c = cat.ok_or_else(|| invalid(format!("2-cell {name:?} needs a category")))?;
                (c, c)
            }
        };
        if !src.is_empty() && !tgt.is_empty() && self.string_cats(&tgt)? != cats {
            return Err(invalid(format!(
                "2-cell {name:?} has mismatched boundaries"
            )));
        }
        if (src.is_empty() || tgt.is_empty()) && cats.0 != cats.1 {
            return Err(invalid(format!(
                "2-cell {name:?}: an empty boundary needs an endofunctor string"
            )));
        }
        self.cells.push(CellSym {
            name: name.to_string(),
            src,
            tgt,
            dom: cats.0,
            cod: cats.1,
        });
        Ok(self.cells.len() - 1)
    }

    /// Declares `F ⊣ U` with its unit, counit and triangle identities.
    pub fn add_adjunction(
        &mut self,
        left: Id,
        right: Id,
        unit: &str,
        counit: &str,
    ) -> Result<usize, AlgebraError> {
        let (f, u) = (&self.functors[left], &self.functors[right]);
        if f.dom != u.cod || f.cod != u.dom {
            return Err(invalid(format!(
                "{} and {} are not opposite",
                f.name, u.name
            )));
        }
        let (c, d) = (f.dom, f.cod);
        let eta = self.add_cell(unit, vec![], vec![right, left], Some(c))?;
        let eps = self.add_cell(counit, vec![left, right], vec![], Some(d))?;
        let fname = self.functors[left].name.clone();
        let uname = self.functors[right].name.clone();
        let te = |layers: Vec<Layer>, f: Id| Term {
            dom: self.functors[f].dom,
            cod: self.functors[f].cod,
            source: vec![f],
            layers,
        };
        let left_tri = Rule {
            name: format!("triangle ({counit} {fname})({fname} {unit})"),
            origin: Origin::TriangleIdentity,
            lhs: te(
                vec![
                    Layer {
                        offset: 1,
                        cell: eta,
                    },
                    Layer {
                        offset: 0,
                        cell: eps,
                    },
                ],
                left,
            ),
            rhs: te(vec![], left),
            reversible: false,
            expanding: false,
        };
        let right_tri = Rule {
            name: format!("triangle ({uname} {counit})({unit} {uname})"),
            origin: Origin::TriangleIdentity,
            lhs: te(
                vec![
                    Layer {
                        offset: 0,
                        cell: eta,
                    },
                    Layer {
                        offset: 1,
                        cell: eps,
                    },
                ],
                right,
            ),
            rhs: te(vec![], right),
            reversible: false,
            expanding: false,
        };
        self.rules.push(left_tri);
        self.rules.push(right_tri);
        self.adjunctions.push(Adjunction {
            left,
            right,
            unit: eta,
            counit: eps,
        });
        Ok(self.adjunctions.len() - 1)
    }

    /// The term consisting of one generator.
    pub fn generator(&self, cell: Id) -> Term {
        let c = &self.cells[cell];
        Term {
            dom: c.dom,
            cod: c.cod,
            source: c.src.clone(),
            layers: vec![Layer { offset: 0, cell }],
        }
    }

    pub fn identity(&self, source: Vec<Id>, cat: Option<Id>) -> Result<Term, AlgebraError> {
        let (dom, cod) = if source.is_empty() {
            let c = cat.ok_or_else(|| invalid("identity on the empty string needs a category"))?;
            (c, c)
        } else {
            self.string_cats(&source)?
        };
        Ok(Term {
            dom,
            cod,
            source,
            layers: vec![],
        })
    }

    /// Declares `name` inverse to `of` (a generator or a definition) with
    /// both cancellation rules.
    pub fn add_inverse(&mut self, name: &str, of: &str) -> Result<Id, AlgebraError> {
        let fwd = match self.definitions.get(of) {
            Some(t) => t.clone(),
            None => self.generator(self.cell(of)?),
        };
        let tgt = self.target(&fwd)?;
        let inv = self.add_cell(name, tgt.clone(), fwd.source.clone(), Some(fwd.dom))?;
        let inv_t = self.generator(inv);
        let there = self.compose(&fwd, &inv_t)?;
        let back = self.compose(&inv_t, &fwd)?;
        self.rules.push(Rule {
            name: format!("{name} after {of}"),
            origin: Origin::UserAxiom,
            rhs: self.identity(fwd.source.clone(), Some(fwd.dom))?,
            lhs: there,
            reversible: true,
            expanding: true,
        });
        self.rules.push(Rule {
            name: format!("{of} after {name}"),
            origin: Origin::UserAxiom,
            rhs: self.identity(tgt, Some(fwd.dom))?,
            lhs: back,
            reversible: true,
            expanding: true,
        });
        Ok(inv)
    }

    pub fn add_axiom(
        &mut self,
        name: &str,
        lhs: Term,
        rhs: Term,
        origin: Origin,
    ) -> Result<(), AlgebraError> {
        self.same_boundary(&lhs, &rhs)?;
        self.rules.push(Rule {
            name: name.to_string(),
            origin,
            lhs,
            rhs,
            reversible: true,
            expanding: false,
        });
        Ok(())
    }

    fn cat_at(&self, s: &[Id], i: usize, dom: Id) -> Id {
        if i < s.len() {
            self.functors[s[i]].cod
        } else {
            dom
        }
    }

    fn apply_layer(&self, s: &[Id], layer: Layer, dom: Id) -> Option<Vec<Id>> {
        let c = self.cells.get(layer.cell)?;
        if layer.offset + c.src.len() > s.len()
            || s[layer.offset..layer.offset + c.src.len()] != c.src[..]
        {
            return None;
        }
        if c.src.is_empty() && self.cat_at(s, layer.offset, dom) != c.dom {
            return None;
        }
        let mut out = s[..layer.offset].to_vec();
        out.extend_from_slice(&c.tgt);
        out.extend_from_slice(&s[layer.offset + c.src.len()..]);
        Some(out)
    }

    /// Strings before each layer and after the last one.
    pub fn strings(&self, t: &Term) -> Result<Vec<Vec<Id>>, AlgebraError> {
        let mut out = vec![t.source.clone()];
        for (k, l) in t.layers.iter().enumerate() {
            let next = self
                .apply_layer(out.last().unwrap(), *l, t.dom)
                .ok_or_else(|| {
                    invalid(format!(
                        "layer {k} of {} does not type-check",
                        self.render(t)
                    ))
                })?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn target(&self, t: &Term) -> Result<Vec<Id>, AlgebraError> {
        Ok(self.strings(t)?.pop().unwrap())
    }

    pub fn same_boundary(&self, a: &Term, b: &Term) -> Result<(), AlgebraError> {
        if a.source != b.source
            || a.dom != b.dom
            || a.cod != b.cod
            || self.target(a)? != self.target(b)?
        {
            return Err(invalid(format!(
                "boundary mismatch: {} vs {}",
                self.render_boundary(a).unwrap_or_default(),
                self.render_boundary(b).unwrap_or_default()
            )));
        }
        Ok(())
    }

    /// `a` followed by `b`.
    pub fn compose(&self, a: &Term, b: &Term) -> Result<Term, AlgebraError> {
        if self.target(a)? != b.source || a.dom != b.dom || a.cod != b.cod {
            return Err(invalid(format!(
                "cannot compose {} with {}",
                self.render(a),
                self.render(b)
            )));
        }
        let mut t = a.clone();
        t.layers.extend_from_slice(&b.layers);
        Ok(t)
    }

    /// Whiskers `t` by `left` and `right`.
    pub fn whisker(&self, left: &[Id], t: &Term, right: &[Id]) -> Result<Term, AlgebraError> {
        let mut source = left.to_vec();
        source.extend_from_slice(&t.source);
        source.extend_from_slice(right);
        let (dom, cod) = if source.is_empty() {
            (t.dom, t.cod)
        } else {
            self.string_cats(&source)?
        };
        let layers = t
            .layers
            .iter()
            .map(|l| Layer {
                offset: l.offset + left.len(),
                cell: l.cell,
            })
            .collect();
        let out = Term {
            dom,
            cod,
            source,
            layers,
        };
        self.strings(&out)?;
        Ok(out)
    }

    pub fn render_string(&self, s: &[Id]) -> String {
        s.iter()
            .map(|&f| self.functors[f].name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn render_layer(&self, s: &[Id], l: Layer) -> String {
        let c = &self.cells[l.cell];
        let mut parts: Vec<&str> = s[..l.offset]
            .iter()
            .map(|&f| self.functors[f].name.as_str())
            .collect();
        parts.push(&c.name);
        parts.extend(
            s[l.offset + c.src.len()..]
                .iter()
                .map(|&f| self.functors[f].name.as_str()),
        );
        parts.join(" ")
    }

    /// Layers in application order separated by `;`.
    pub fn render(&self, t: &Term) -> String {
        if t.layers.is_empty() {
            return format!("id[{}]", self.render_string(&t.source));
        }
        let mut s = t.source.clone();
        let mut parts = Vec::new();
        for l in &t.layers {
            match self.apply_layer(&s, *l, t.dom) {
                Some(next) => {
                    parts.push(self.render_layer(&s, *l));
                    s = next;
                }
                None => {
                    parts.push(format!(
                        "<ill-typed {}@{}>",
                        self.cells[l.cell].name, l.offset
                    ));
                    break;
                }
            }
        }
        parts.join(" ; ")
    }

    pub fn render_boundary(&self, t: &Term) -> Result<String, AlgebraError> {
        Ok(format!(
            "{} => {}",
            self.render_string(&t.source),
            self.render_string(&self.target(t)?)
        ))
    }

    /// Both orders of layers `k` and `k + 1` when they act on disjoint
    /// parts of the string.
    fn swaps(&self, t: &Term, k: usize) -> Vec<Term> {
        let (a, b) = (t.layers[k], t.layers[k + 1]);
        let (ca, cb) = (&self.cells[a.cell], &self.cells[b.cell]);
        let (a_in, a_out, b_in, b_out) = (ca.src.len(), ca.tgt.len(), cb.src.len(), cb.tgt.len());
        let mut out = Vec::new();
        let mut push = |first: Layer, second: Layer| {
            let mut u = t.clone();
            u.layers[k] = first;
            u.layers[k + 1] = second;
            if u != *t && !out.contains(&u) {
                out.push(u);
            }
        };
        if b.offset + b_in <= a.offset {
            push(
                b,
                Layer {
                    offset: a.offset + b_out - b_in,
                    cell: a.cell,
                },
            );
        }
        if b.offset >= a.offset + a_out {
            push(
                Layer {
                    offset: b.offset + a_in - a_out,
                    cell: b.cell,
                },
                a,
            );
        }
        out
    }

    /// All terms reachable by interchange, sorted, up to `cap` members.
    pub fn interchange_class(&self, t: &Term, cap: usize) -> Vec<Term> {
        let mut seen: HashSet<Term> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(t.clone());
        queue.push_back(t.clone());
        while let Some(u) = queue.pop_front() {
            if seen.len() >= cap {
                break;
            }
            for k in 0..u.layers.len().saturating_sub(1) {
                for v in self.swaps(&u, k) {
                    if self.strings(&v).is_ok() && seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        let mut all: Vec<Term> = seen.into_iter().collect();
        all.sort();
        all
    }
}

/// Replaces the occurrence of `pat` whose first layer is layer `j` of `t`,
/// shifted by `offset`, with `repl`. For an empty pattern, inserts at gap
/// `j`.
pub fn apply_at(
    sig: &Signature,
    t: &Term,
    pat: &Term,
    repl: &Term,
    j: usize,
    offset: usize,
) -> Option<Term> {
    let k = pat.layers.len();
    if j + k > t.layers.len() {
        return None;
    }
    for (i, l) in pat.layers.iter().enumerate() {
        let tl = t.layers[j + i];
        if tl.cell != l.cell || tl.offset != l.offset + offset {
            return None;
        }
    }
    let strings = sig.strings(t).ok()?;
    let s = &strings[j];
    if offset + pat.source.len() > s.len() || s[offset..offset + pat.source.len()] != pat.source[..]
    {
        return None;
    }
    if pat.source.is_empty() && sig.cat_at(s, offset, t.dom) != pat.dom {
        return None;
    }
    let mut layers = t.layers[..j].to_vec();
    layers.extend(repl.layers.iter().map(|l| Layer {
        offset: l.offset + offset,
        cell: l.cell,
    }));
    layers.extend_from_slice(&t.layers[j + k..]);
    let out = Term {
        dom: t.dom,
        cod: t.cod,
        source: t.source.clone(),
        layers,
    };
    sig.strings(&out).ok()?;
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStep {
    Interchange {
        to: Term,
    },
    Rewrite {
        rule: usize,
        dir: Direction,
        layer: usize,
        offset: usize,
        to: Term,
    },
}

/// A rewrite path from the left term to the right term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub from: Term,
    pub steps: Vec<ProofStep>,
}

impl Proof {
    pub fn rewrite_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ProofStep::Rewrite { .. }))
            .count()
    }

    pub fn end(&self) -> &Term {
        match self.steps.last() {
            None => &self.from,
            Some(ProofStep::Interchange { to }) | Some(ProofStep::Rewrite { to, .. }) => to,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub origin: Origin,
    pub rule: Option<String>,
    pub direction: Option<Direction>,
    pub term: String,
}

#[derive(Clone, Debug)]
pub enum Decision {
    Equal(Proof),
    NotProved {
        explored: usize,
        lhs_normal: Term,
        rhs_normal: Term,
    },
}

impl Decision {
    pub fn is_equal(&self) -> bool {
        matches!(self, Decision::Equal(_))
    }
}

struct Class {
    key: Term,
    members: Vec<Term>,
}

struct Node {
    rep: Term,
    parent: Option<(Term, ProofStep, Term)>,
}

/// Search limits; exceeding them yields "not proved".
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub class_cap: usize,
    pub node_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            class_cap: 4000,
            node_cap: 40000,
        }
    }
}

/// Bidirectional breadth-first search over interchange classes.
pub struct Prover<'a> {
    pub sig: &'a Signature,
    pub rules: Vec<Rule>,
    pub limits: Limits,
    classes: HashMap<Term, Arc<Class>>,
}

impl<'a> Prover<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Prover {
            sig,
            rules: sig.rules.clone(),
            limits: Limits::default(),
            classes: HashMap::new(),
        }
    }

    pub fn add_lemma(&mut self, name: &str, lhs: Term, rhs: Term) {
        self.rules.push(Rule {
            name: name.to_string(),
            origin: Origin::Lemma,
            lhs,
            rhs,
            reversible: true,
            expanding: false,
        });
    }

    fn class(&mut self, t: &Term) -> Arc<Class> {
        if let Some(c) = self.classes.get(t) {
            return c.clone();
        }
        let members = self.sig.interchange_class(t, self.limits.class_cap);
        let c = Arc::new(Class {
            key: members[0].clone(),
            members,
        });
        for m in &c.members {
            self.classes.insert(m.clone(), c.clone());
        }
        c
    }

    /// Every single rewrite of some member of the class of `t`.
    fn neighbours(&mut self, t: &Term) -> Vec<(Term, ProofStep)> {
        let class = self.class(t);
        let mut out = Vec::new();
        for x in &class.members {
            let Ok(strings) = self.sig.strings(x) else {
                continue;
            };
            for (ri, rule) in self.rules.iter().enumerate() {
                for dir in [Direction::Forward, Direction::Backward] {
                    if !rule.allowed(dir) {
                        continue;
                    }
                    let (pat, repl) = rule.sides(dir);
                    let mut spots = Vec::new();
                    if let Some(first) = pat.layers.first() {
                        for j in 0..=x.layers.len().saturating_sub(pat.layers.len()) {
                            if j + pat.layers.len() <= x.layers.len()
                                && x.layers[j].cell == first.cell
                                && x.layers[j].offset >= first.offset
                            {
                                spots.push((j, x.layers[j].offset - first.offset));
                            }
                        }
                    } else {
                        for (j, s) in strings.iter().enumerate() {
                            for o in 0..=s.len().saturating_sub(pat.source.len()) {
                                if s.len() >= pat.source.len()
                                    && s[o..o + pat.source.len()] == pat.source[..]
                                {
                                    spots.push((j, o));
                                }
                            }
                        }
                    }
                    for (j, o) in spots {
                        if let Some(to) = apply_at(self.sig, x, pat, repl, j, o) {
                            let step = ProofStep::Rewrite {
                                rule: ri,
                                dir,
                                layer: j,
                                offset: o,
                                to: to.clone(),
                            };
                            out.push((x.clone(), step));
                        }
                    }
                }
            }
        }
        out
    }

    fn path_to(nodes: &HashMap<Term, Node>, key: &Term) -> Vec<(Term, ProofStep, Term)> {
        let mut out = Vec::new();
        let mut k = key.clone();
        while let Some((pk, step, at)) = nodes[&k].parent.clone() {
            out.push((pk.clone(), step, at));
            k = pk;
        }
        out.reverse();
        out
    }

    /// Decides `t1 = t2` using at most `depth` rewrites in total.
    pub fn decide(&mut self, t1: &Term, t2: &Term, depth: usize) -> Result<Decision, AlgebraError> {
        self.sig.same_boundary(t1, t2)?;
        let ka = self.class(t1).key.clone();
        let kb = self.class(t2).key.clone();
        let mut sides: [HashMap<Term, Node>; 2] = [HashMap::new(), HashMap::new()];
        sides[0].insert(
            ka.clone(),
            Node {
                rep: t1.clone(),
                parent: None,
            },
        );
        sides[1].insert(
            kb.clone(),
            Node {
                rep: t2.clone(),
                parent: None,
            },
        );
        let mut frontier: [Vec<Term>; 2] = [vec![ka.clone()], vec![kb.clone()]];
        let mut meet = if ka == kb { Some(ka.clone()) } else { None };
        let mut used = 0;
        while meet.is_none() && used < depth {
            let s = match (frontier[0].is_empty(), frontier[1].is_empty()) {
                (true, true) => break,
                (true, false) => 1,
                (false, true) => 0,
                _ if frontier[0].len() <= frontier[1].len() => 0,
                _ => 1,
            };
            let mut next = Vec::new();
            'outer: for key in std::mem::take(&mut frontier[s]) {
                let rep = sides[s][&key].rep.clone();
                for (at, step) in self.neighbours(&rep) {
                    let ProofStep::Rewrite { to, .. } = &step else {
                        unreachable!()
                    };
                    let child = self.class(to).key.clone();
                    if sides[s].contains_key(&child) {
                        continue;
                    }
                    sides[s].insert(
                        child.clone(),
                        Node {
                            rep: to.clone(),
                            parent: Some((key.clone(), step, at)),
                        },
                    );
                    if sides[1 - s].contains_key(&child) {
                        meet = Some(child);
                        break 'outer;
                    }
                    next.push(child);
                    if sides[0].len() + sides[1].len() > self.limits.node_cap {
                        break 'outer;
                    }
                }
            }
            frontier[s] = next;
            used += 1;
            if sides[0].len() + sides[1].len() > self.limits.node_cap {
                break;
            }
        }
        let explored = sides[0].len() + sides[1].len();
        let Some(m) = meet else {
            return Ok(Decision::NotProved {
                explored,
                lhs_normal: ka,
                rhs_normal: kb,
            });
        };
        let mut steps = Vec::new();
        let mut cur = t1.clone();
        let move_to = |steps: &mut Vec<ProofStep>, cur: &mut Term, target: &Term| {
            if cur != target {
                steps.push(ProofStep::Interchange { to: target.clone() });
                *cur = target.clone();
            }
        };
        for (_, step, at) in Self::path_to(&sides[0], &m) {
            move_to(&mut steps, &mut cur, &at);
            let ProofStep::Rewrite { to, .. } = &step else {
                unreachable!()
            };
            cur = to.clone();
            steps.push(step);
        }
        let back = Self::path_to(&sides[1], &m);
        let meet_rep_b = sides[1][&m].rep.clone();
        move_to(&mut steps, &mut cur, &meet_rep_b);
        for (pk, step, at) in back.into_iter().rev() {
            let ProofStep::Rewrite {
                rule,
                dir,
                layer,
                offset,
                ..
            } = step
            else {
                unreachable!()
            };
            let dir = match dir {
                Direction::Forward => Direction::Backward,
                Direction::Backward => Direction::Forward,
            };
            steps.push(ProofStep::Rewrite {
                rule,
                dir,
                layer,
                offset,
                to: at.clone(),
            });
            cur = at;
            let parent_rep = sides[1][&pk].rep.clone();
            move_to(&mut steps, &mut cur, &parent_rep);
        }
        Ok(Decision::Equal(Proof {
            from: t1.clone(),
            steps,
        }))
    }

    /// Re-checks every step of a proof syntactically.
    pub fn replay(&self, proof: &Proof, target: &Term) -> bool {
        let mut cur = proof.from.clone();
        for step in &proof.steps {
            match step {
                ProofStep::Interchange { to } => {
                    if !self.sig.interchange_class(&cur, usize::MAX).contains(to) {
                        return false;
                    }
                    cur = to.clone();
                }
                ProofStep::Rewrite {
                    rule,
                    dir,
                    layer,
                    offset,
                    to,
                } => {
                    let Some(r) = self.rules.get(*rule) else {
                        return false;
                    };
                    if !r.allowed(*dir) && !r.allowed(opposite(*dir)) {
                        return false;
                    }
                    let (pat, repl) = r.sides(*dir);
                    match apply_at(self.sig, &cur, pat, repl, *layer, *offset) {
                        Some(t) if t == *to => cur = t,
                        _ => return false,
                    }
                }
            }
        }
        cur == *target
    }

    pub fn trace(&self, proof: &Proof) -> Vec<TraceLine> {
        proof
            .steps
            .iter()
            .map(|s| match s {
                ProofStep::Interchange { to } => TraceLine {
                    origin: Origin::Interchange,
                    rule: None,
                    direction: None,
                    term: self.sig.render(to),
                },
                ProofStep::Rewrite { rule, dir, to, .. } => TraceLine {
                    origin: self.rules[*rule].origin,
                    rule: Some(self.rules[*rule].name.clone()),
                    direction: Some(*dir),
                    term: self.sig.render(to),
                },
            })
            .collect()
    }
}

fn opposite(d: Direction) -> Direction {
    match d {
        Direction::Forward => Direction::Backward,
        Direction::Backward => Direction::Forward,
    }
}

/// Decides equality with the signature's own rules.
pub fn decide_equal(
    sig: &Signature,
    t1: &Term,
    t2: &Term,
    depth: usize,
) -> Result<Decision, AlgebraError> {
    Prover::new(sig).decide(t1, t2, depth)
}

/// The mate of a 2-cell of either handedness in the declared square.
pub fn mate(sig: &Signature, t: &Term) -> Result<Term, AlgebraError> {
    let sq = sig
        .square
        .as_ref()
        .ok_or_else(|| invalid("signature declares no square"))?;
    let (g, h) = (&sig.adjunctions[sq.adj_g], &sig.adjunctions[sq.adj_h]);
    let tgt = sig.target(t)?;
    let cat = |v: Vec<Id>| -> Vec<Id> { v };
    let alpha_src = cat([vec![h.left], sq.l.clone()].concat());
    let alpha_tgt = cat([sq.l2.clone(), vec![g.left]].concat());
    let beta_src = cat([sq.l.clone(), vec![g.right]].concat());
    let beta_tgt = cat([vec![h.right], sq.l2.clone()].concat());
    if t.source == alpha_src && tgt == alpha_tgt {
        let body = sig.whisker(&[h.right], t, &[g.right])?;
        let mut layers = vec![Layer {
            offset: 0,
            cell: h.unit,
        }];
        layers.extend(body.layers);
        layers.push(Layer {
            offset: 1 + sq.l2.len(),
            cell: g.counit,
        });
        let (dom, cod) = sig.string_cats(&beta_src)?;
        let out = Term {
            dom,
            cod,
            source: beta_src,
            layers,
        };
        sig.strings(&out)?;
        Ok(out)
    } else if t.source == beta_src && tgt == beta_tgt {
        let body = sig.whisker(&[h.left], t, &[g.left])?;
        let mut layers = vec![Layer {
            offset: 1 + sq.l.len(),
            cell: g.unit,
        }];
        layers.extend(body.layers);
        layers.push(Layer {
            offset: 0,
            cell: h.counit,
        });
        let (dom, cod) = sig.string_cats(&alpha_src)?;
        let out = Term {
            dom,
            cod,
            source: alpha_src,
            layers,
        };
        sig.strings(&out)?;
        Ok(out)
    } else {
        Err(invalid(format!(
            "boundary mismatch: {} is not a 2-cell of the square",
            sig.render_boundary(t)?
        )))
    }
}

/// All terms with at most `max_layers` layers from `source` to `target`
/// using the given cells, one representative per interchange class.
pub fn enumerate_terms(
    sig: &Signature,
    source: &Term,
    target: &[Id],
    cells: &[Id],
    max_layers: usize,
) -> Vec<Term> {
    let mut found: BTreeMap<Term, Term> = BTreeMap::new();
    let mut stack = vec![source.clone()];
    while let Some(t) = stack.pop() {
        let s = sig.target(&t).expect("enumerated terms type-check");
        if s == target {
            let class = sig.interchange_class(&t, 4000);
            found.entry(class[0].clone()).or_insert(t.clone());
        }
        if t.layers.len() == max_layers {
            continue;
        }
        for &c in cells {
            let w = sig.cells[c].src.len();
            for o in 0..=s.len().saturating_sub(w) {
                if s.len() < w {
                    continue;
                }
                let l = Layer { offset: o, cell: c };
                if sig.apply_layer(&s, l, t.dom).is_some() {
                    let mut u = t.clone();
                    u.layers.push(l);
                    stack.push(u);
                }
            }
        }
    }
    found.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `F ⊣ U` between `C` and `D` with a spare endo-cell on `F`.
    fn one_adjunction() -> Signature {
        let mut sig = Signature::default();
        let c = sig.add_category("C");
        let d = sig.add_category("D");
        let f = sig.add_functor("F", c, d).unwrap();
        let u = sig.add_functor("U", d, c).unwrap();
        sig.add_adjunction(f, u, "eta", "eps").unwrap();
        sig.add_cell("x", vec![f], vec![f], None).unwrap();
        sig.add_cell("y", vec![u], vec![u], None).unwrap();
        sig
    }

    fn term(sig: &Signature, source: &[&str], layers: &[(usize, &str)]) -> Term {
        let src: Vec<Id> = source.iter().map(|n| sig.functor(n).unwrap()).collect();
        let (dom, cod) = sig.string_cats(&src).unwrap();
        let layers = layers
            .iter()
            .map(|(o, c)| Layer {
                offset: *o,
                cell: sig.cell(c).unwrap(),
            })
            .collect();
        let t = Term {
            dom,
            cod,
            source: src,
            layers,
        };
        sig.strings(&t).unwrap();
        t
    }

    #[test]
    fn triangle_in_one_step() {
        let sig = one_adjunction();
        let lhs = term(&sig, &["F"], &[(1, "eta"), (0, "eps")]);
        let rhs = term(&sig, &["F"], &[]);
        let mut p = Prover::new(&sig);
        let Decision::Equal(proof) = p.decide(&lhs, &rhs, 8).unwrap() else {
            panic!()
        };
        assert_eq!(proof.rewrite_steps(), 1);
        assert!(p.replay(&proof, &rhs));
        let Decision::Equal(back) = p.decide(&rhs, &lhs, 8).unwrap() else {
            panic!()
        };
        assert!(p.replay(&back, &lhs));
    }

    #[test]
    fn interchange_of_disjoint_cells() {
        let sig = one_adjunction();
        let a = term(&sig, &["F", "U", "F"], &[(0, "x"), (1, "y")]);
        let b = term(&sig, &["F", "U", "F"], &[(1, "y"), (0, "x")]);
        let mut p = Prover::new(&sig);
        let Decision::Equal(proof) = p.decide(&a, &b, 8).unwrap() else {
            panic!()
        };
        assert_eq!(proof.rewrite_steps(), 0);
        assert!(p.replay(&proof, &b));
    }

    #[test]
    fn distinct_whiskered_units_are_not_identified() {
        let sig = one_adjunction();
        let a = term(&sig, &["U", "F"], &[(0, "eta")]);
        let b = term(&sig, &["U", "F"], &[(2, "eta")]);
        let d = decide_equal(&sig, &a, &b, 8).unwrap();
        assert!(!d.is_equal());
    }

    #[test]
    fn boundary_mismatch_is_an_error() {
        let sig = one_adjunction();
        let a = term(&sig, &["F"], &[(0, "x")]);
        let b = term(&sig, &["U"], &[]);
        assert!(decide_equal(&sig, &a, &b, 4).is_err());
    }
}
