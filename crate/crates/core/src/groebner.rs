//! Gröbner bases of homogeneous submodules of graded free modules,
//! syzygies and lifting.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::exact_linear::Rational;
use crate::poly::{revlex, FreeElement, GradedPolyRing, Mono, Poly};

/// A monomial placed in one slot of a free module.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Term {
    pub pos: u32,
    pub mono: Mono,
}

/// Free-module vector: terms sorted descending in the owning order, no zero
/// coefficients.
pub type Vector = Vec<(Term, Rational)>;

/// Module monomial order.
///
/// Terms are compared by position class (higher wins), then by the
/// degrevlex order on the eliminated variables, then by position (lower
/// index wins), then by degrevlex on the remaining variables. With no
/// classes and no eliminated variables this is degrevlex with
/// position-over-term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    weights: Vec<i64>,
    classes: Vec<u8>,
    elim: Vec<bool>,
}

impl TermOrder {
    pub fn pot(ring: &GradedPolyRing) -> Self {
        TermOrder {
            weights: ring.degrees().to_vec(),
            classes: Vec::new(),
            elim: Vec::new(),
        }
    }

    /// Assigns position classes; positions past the end get class 0.
    pub fn with_classes(mut self, classes: Vec<u8>) -> Self {
        self.classes = classes;
        self
    }

    /// Marks variables that are eliminated (ranked above everything except
    /// the position class).
    pub fn with_elimination(mut self, elim: Vec<bool>) -> Self {
        self.elim = elim;
        self
    }

    fn class(&self, pos: u32) -> u8 {
        self.classes.get(pos as usize).copied().unwrap_or(0)
    }

    fn is_elim(&self, v: usize) -> bool {
        self.elim.get(v).copied().unwrap_or(false)
    }

    fn block_deg(&self, m: &Mono, elim: bool) -> i64 {
        self.weights
            .iter()
            .enumerate()
            .filter(|(v, _)| self.is_elim(*v) == elim)
            .map(|(v, w)| w * m.0[v] as i64)
            .sum()
    }

    fn block_revlex(&self, a: &Mono, b: &Mono, elim: bool) -> Ordering {
        for v in (0..self.weights.len()).rev() {
            if self.is_elim(v) != elim {
                continue;
            }
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let c = self.class(a.pos).cmp(&self.class(b.pos));
        if c != Ordering::Equal {
            return c;
        }
        if self.elim.iter().any(|&e| e) {
            let c = self
                .block_deg(&a.mono, true)
                .cmp(&self.block_deg(&b.mono, true))
                .then_with(|| self.block_revlex(&a.mono, &b.mono, true));
            if c != Ordering::Equal {
                return c;
            }
            return b.pos.cmp(&a.pos).then_with(|| {
                self.block_deg(&a.mono, false)
                    .cmp(&self.block_deg(&b.mono, false))
                    .then_with(|| self.block_revlex(&a.mono, &b.mono, false))
            });
        }
        b.pos.cmp(&a.pos).then_with(|| {
            let da: i64 = self
                .weights
                .iter()
                .zip(a.mono.0.iter())
                .map(|(w, e)| w * *e as i64)
                .sum();
            let db: i64 = self
                .weights
                .iter()
                .zip(b.mono.0.iter())
                .map(|(w, e)| w * *e as i64)
                .sum();
            da.cmp(&db)
                .then_with(|| revlex(&a.mono, &b.mono, self.weights.len()))
        })
    }
}

pub fn sort_vector(v: &mut Vector, order: &TermOrder) {
    v.sort_by(|a, b| order.cmp(&b.0, &a.0));
}

/// Converts a user-level element into a sorted vector.
pub fn vector_from_free(e: &FreeElement, order: &TermOrder) -> Vector {
    let mut v: Vector = e
        .comps
        .iter()
        .enumerate()
        .flat_map(|(p, poly)| {
            poly.terms().map(move |(m, c)| {
                (
                    Term {
                        pos: p as u32,
                        mono: *m,
                    },
                    c.clone(),
                )
            })
        })
        .collect();
    sort_vector(&mut v, order);
    v
}

pub fn vector_to_free(v: &Vector, rank: usize) -> FreeElement {
    let mut e = FreeElement::zero(rank);
    for (t, c) in v {
        e.comps[t.pos as usize].add_term(t.mono, c.clone());
    }
    e
}

/// Polynomial `p` placed in slot `pos`.
pub fn vector_from_poly(p: &Poly, pos: usize, order: &TermOrder) -> Vector {
    let mut v: Vector = p
        .terms()
        .map(|(m, c)| {
            (
                Term {
                    pos: pos as u32,
                    mono: *m,
                },
                c.clone(),
            )
        })
        .collect();
    sort_vector(&mut v, order);
    v
}

/// `a + c * m * b`, where `m` multiplies every term of `b`.
pub fn add_scaled(
    a: &[(Term, Rational)],
    c: &Rational,
    m: &Mono,
    b: &[(Term, Rational)],
    order: &TermOrder,
) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let bt = (j < b.len()).then(|| Term {
            pos: b[j].0.pos,
            mono: b[j].0.mono.mul(m),
        });
        let ord = match (i < a.len(), &bt) {
            (true, Some(t)) => order.cmp(&a[i].0, t),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bt.unwrap(), c * &b[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].1 + c * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn add_vectors(a: &Vector, b: &Vector, order: &TermOrder) -> Vector {
    add_scaled(a, &Rational::one(), &Mono::one(), b, order)
}

pub fn scale_vector(v: &Vector, c: &Rational) -> Vector {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(t, x)| (*t, x * c)).collect()
}

/// Multiplies by a polynomial.
pub fn mul_poly_vector(p: &Poly, v: &Vector, order: &TermOrder) -> Vector {
    let mut acc = Vec::new();
    for (m, c) in p.terms() {
        acc = add_scaled(&acc, c, m, v, order);
    }
    acc
}

fn make_monic(v: &mut Vector) {
    if let Some((_, lc)) = v.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in v.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// Ambient data shared by every vector: the ring and the degrees of the
/// free generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub ring: GradedPolyRing,
    pub shifts: Vec<i64>,
}

impl Ambient {
    pub fn term_degree(&self, t: &Term) -> i64 {
        self.ring.mono_degree(&t.mono) + self.shifts[t.pos as usize]
    }

    /// Degree of a homogeneous vector; errors when inhomogeneous.
    pub fn vector_degree(&self, v: &Vector) -> Result<Option<i64>, AlgebraError> {
        let mut it = v.iter().map(|(t, _)| self.term_degree(t));
        let Some(d) = it.next() else { return Ok(None) };
        if it.any(|e| e != d) {
            return Err(AlgebraError::Inhomogeneous(
                "vector has terms of several degrees".into(),
            ));
        }
        Ok(Some(d))
    }
}

/// Reduced Gröbner basis of a homogeneous submodule.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ambient: Ambient,
    order: TermOrder,
    elems: Vec<Vector>,
    by_pos: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

impl GroebnerBasis {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn ring(&self) -> &GradedPolyRing {
        &self.ambient.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<Term> {
        self.elems.iter().map(|e| e[0].0).collect()
    }

    fn index(ambient: &Ambient, elems: &[Vector]) -> Vec<Vec<usize>> {
        let mut by_pos = vec![Vec::new(); ambient.shifts.len()];
        for (k, e) in elems.iter().enumerate() {
            by_pos[e[0].0.pos as usize].push(k);
        }
        by_pos
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        self.by_pos
            .get(t.pos as usize)?
            .iter()
            .copied()
            .find(|&k| self.elems[k][0].0.mono.divides(&t.mono))
    }

    /// Is term `t` outside the leading-term module?
    pub fn is_standard(&self, t: &Term) -> bool {
        self.find_reducer(t).is_none()
    }

    /// Fully reduced remainder.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        self.reduce_from(v.clone(), false)
    }

    fn reduce_from(&self, mut v: Vector, top_only: bool) -> Vector {
        let mut i = 0;
        while i < v.len() {
            let t = v[i].0;
            match self.find_reducer(&t) {
                Some(k) => {
                    let g = &self.elems[k];
                    let q = g[0].0.mono.quotient_of(&t.mono);
                    let c = -v[i].1.clone();
                    let tail = add_scaled(&v[i..], &c, &q, g, &self.order);
                    v.truncate(i);
                    v.extend(tail);
                }
                None if top_only => return v,
                None => i += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_empty()
    }

    pub fn normal_form_free(&self, e: &FreeElement) -> FreeElement {
        vector_to_free(
            &self.normal_form(&vector_from_free(e, &self.order)),
            self.ambient.shifts.len(),
        )
    }

    /// Standard terms of total degree `d`, largest first.
    pub fn standard_terms(&self, d: i64) -> Vec<Term> {
        let mut out = Vec::new();
        for (p, &s) in self.ambient.shifts.iter().enumerate() {
            for m in self.ambient.ring.monomials_of_degree(d - s).iter() {
                let t = Term {
                    pos: p as u32,
                    mono: *m,
                };
                if self.is_standard(&t) {
                    out.push(t);
                }
            }
        }
        out.sort_by(|a, b| self.order.cmp(b, a));
        out
    }

    /// Buchberger's criterion: every S-vector reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let (a, b) = (self.elems[i][0].0, self.elems[j][0].0);
                if a.pos != b.pos {
                    continue;
                }
                let s = s_vector(
                    &self.elems[i],
                    &self.elems[j],
                    &a.mono.lcm(&b.mono),
                    &self.order,
                );
                if !self.normal_form(&s).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn s_vector(a: &Vector, b: &Vector, lcm: &Mono, order: &TermOrder) -> Vector {
    let qa = a[0].0.mono.quotient_of(lcm);
    let qb = b[0].0.mono.quotient_of(lcm);
    let left = add_scaled(&[], &Rational::one(), &qa, a, order);
    add_scaled(&left, &-Rational::one(), &qb, b, order)
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// Generators must be homogeneous; pairs are processed in increasing
/// degree, so the result only depends on the generated submodule.
pub fn buchberger(
    ambient: &Ambient,
    gens: &[Vector],
    order: &TermOrder,
) -> Result<GroebnerBasis, AlgebraError> {
    let mut pending: Vec<(i64, usize)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if let Some(d) = ambient.vector_degree(g)? {
            pending.push((d, k));
        }
    }
    pending.sort();
    let mut gb = GroebnerBasis {
        ambient: ambient.clone(),
        order: order.clone(),
        elems: Vec::new(),
        by_pos: vec![Vec::new(); ambient.shifts.len()],
    };
    let rank_one = ambient.shifts.len() == 1;
    let mut pairs: BTreeMap<(i64, usize, usize), Pair> = BTreeMap::new();
    let mut next_input = 0;
    loop {
        let pair_deg = pairs.keys().next().map(|k| k.0);
        let input_deg = pending.get(next_input).map(|p| p.0);
        let deg = match (pair_deg, input_deg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut cands: Vec<Vector> = Vec::new();
        while let Some(entry) = pairs.first_entry() {
            if entry.key().0 != deg {
                break;
            }
            let p = entry.remove();
            cands.push(s_vector(&gb.elems[p.i], &gb.elems[p.j], &p.lcm, order));
        }
        while next_input < pending.len() && pending[next_input].0 == deg {
            cands.push(gens[pending[next_input].1].clone());
            next_input += 1;
        }
        for c in cands {
            let mut r = gb.reduce_from(c, true);
            if r.is_empty() {
                continue;
            }
            make_monic(&mut r);
            add_element(&mut gb, r, &mut pairs, rank_one);
        }
    }
    interreduce(&mut gb);
    Ok(gb)
}

fn add_element(
    gb: &mut GroebnerBasis,
    h: Vector,
    pairs: &mut BTreeMap<(i64, usize, usize), Pair>,
    rank_one: bool,
) {
    let k = gb.elems.len();
    let lt = h[0].0;
    // Gebauer-Moller: drop old pairs whose lcm is strictly divisible by lt(h).
    pairs.retain(|_, p| {
        if gb.elems[p.i][0].0.pos != lt.pos || !lt.mono.divides(&p.lcm) {
            return true;
        }
        let li = gb.elems[p.i][0].0.mono.lcm(&lt.mono);
        let lj = gb.elems[p.j][0].0.mono.lcm(&lt.mono);
        li == p.lcm || lj == p.lcm
    });
    let mut new: Vec<(usize, Mono, bool)> = gb.by_pos[lt.pos as usize]
        .iter()
        .map(|&i| {
            let m = gb.elems[i][0].0.mono;
            (i, m.lcm(&lt.mono), rank_one && m.coprime(&lt.mono))
        })
        .collect();
    let snapshot = new.clone();
    new.retain(|(_, l, _)| !snapshot.iter().any(|(_, l2, _)| l2 != l && l2.divides(l)));
    let mut kept: Vec<(usize, Mono)> = Vec::new();
    let mut groups: BTreeMap<Mono, Vec<(usize, bool)>> = BTreeMap::new();
    for (i, l, coprime) in new {
        groups.entry(l).or_default().push((i, coprime));
    }
    for (l, g) in groups {
        if g.iter().any(|(_, c)| *c) {
            continue;
        }
        kept.push((g[0].0, l));
    }
    gb.by_pos[lt.pos as usize].push(k);
    gb.elems.push(h);
    for (i, l) in kept {
        let d = gb.ring().mono_degree(&l) + gb.ambient.shifts[lt.pos as usize];
        pairs.insert((d, k, i), Pair { i, j: k, lcm: l });
    }
}

fn interreduce(gb: &mut GroebnerBasis) {
    // Drop elements whose leading term is divisible by another's.
    let lts: Vec<Term> = gb.leading_terms();
    let keep: Vec<bool> = (0..lts.len())
        .map(|i| {
            !(0..lts.len()).any(|j| {
                j != i
                    && lts[j].pos == lts[i].pos
                    && lts[j].mono.divides(&lts[i].mono)
                    && (lts[j] != lts[i] || j < i)
            })
        })
        .collect();
    let mut elems: Vec<Vector> = gb
        .elems
        .drain(..)
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(e, _)| e)
        .collect();
    elems.sort_by(|a, b| gb.order.cmp(&b[0].0, &a[0].0));
    gb.by_pos = GroebnerBasis::index(&gb.ambient, &elems);
    gb.elems = elems;
    for k in 0..gb.elems.len() {
        let e = std::mem::take(&mut gb.elems[k]);
        let head = e[0].clone();
        let tail = gb.normal_form_skipping(&e[1..], k);
        let mut full = vec![head];
        full.extend(tail);
        gb.elems[k] = full;
    }
}

impl GroebnerBasis {
    // Normal form while element `skip` is temporarily empty.
    fn normal_form_skipping(&self, v: &[(Term, Rational)], skip: usize) -> Vector {
        let mut v: Vector = v.to_vec();
        let mut i = 0;
        while i < v.len() {
            let t = v[i].0;
            let r = self.by_pos[t.pos as usize]
                .iter()
                .copied()
                .find(|&k| k != skip && self.elems[k][0].0.mono.divides(&t.mono));
            match r {
                Some(k) => {
                    let g = &self.elems[k];
                    let q = g[0].0.mono.quotient_of(&t.mono);
                    let c = -v[i].1.clone();
                    let tail = add_scaled(&v[i..], &c, &q, g, &self.order);
                    v.truncate(i);
                    v.extend(tail);
                }
                None => i += 1,
            }
        }
        v
    }
}

/// Gröbner data of the module generated by `(g_l, e_l)` inside `F ⊕ T^m`,
/// with the `F` block ranked above the coefficient block. This yields
/// syzygies among the `g_l` and expresses members of the submodule in
/// terms of the generators.
#[derive(Clone, Debug)]
pub struct Lifter {
    rank: usize,
    gen_degrees: Vec<i64>,
    gb: GroebnerBasis,
}

impl Lifter {
    /// `gen_degrees[l]` is the degree of `gens[l]`; it must agree with the
    /// actual degree of every nonzero generator.
    pub fn new(
        ambient: &Ambient,
        gens: &[Vector],
        gen_degrees: &[i64],
    ) -> Result<Self, AlgebraError> {
        Self::with_order(
            ambient,
            gens,
            gen_degrees,
            &[],
            TermOrder::pot(&ambient.ring),
        )
    }

    /// Works modulo the submodule generated by `modulo`: syzygies become
    /// relations `sum c_l g_l in <modulo>` and lifts are taken up to it.
    pub fn modulo(
        ambient: &Ambient,
        gens: &[Vector],
        gen_degrees: &[i64],
        modulo: &[Vector],
    ) -> Result<Self, AlgebraError> {
        Self::with_order(
            ambient,
            gens,
            gen_degrees,
            modulo,
            TermOrder::pot(&ambient.ring),
        )
    }

    /// General constructor with a custom base order (its classes are
    /// replaced; its eliminated variables are kept).
    pub fn with_order(
        ambient: &Ambient,
        gens: &[Vector],
        gen_degrees: &[i64],
        modulo: &[Vector],
        base: TermOrder,
    ) -> Result<Self, AlgebraError> {
        assert_eq!(gens.len(), gen_degrees.len());
        let rank = ambient.shifts.len();
        let m = gens.len();
        for (g, &d) in gens.iter().zip(gen_degrees) {
            if let Some(actual) = ambient.vector_degree(g)? {
                if actual != d {
                    return Err(AlgebraError::DegreeMismatch(format!(
                        "generator has degree {actual}, declared {d}"
                    )));
                }
            }
        }
        let mut shifts = ambient.shifts.clone();
        shifts.extend_from_slice(gen_degrees);
        let aug = Ambient {
            ring: ambient.ring.clone(),
            shifts,
        };
        let mut classes = vec![1u8; rank];
        classes.extend(std::iter::repeat(0u8).take(m));
        let order = base.with_classes(classes);
        let vecs: Vec<Vector> = gens
            .iter()
            .enumerate()
            .map(|(l, g)| {
                let mut v = g.clone();
                v.push((
                    Term {
                        pos: (rank + l) as u32,
                        mono: Mono::one(),
                    },
                    Rational::one(),
                ));
                sort_vector(&mut v, &order);
                v
            })
            .collect();
        let mut vecs = vecs;
        for n in modulo {
            let mut v = n.clone();
            sort_vector(&mut v, &order);
            vecs.push(v);
        }
        let gb = buchberger(&aug, &vecs, &order)?;
        Ok(Lifter {
            rank,
            gen_degrees: gen_degrees.to_vec(),
            gb,
        })
    }

    fn split(&self, v: &Vector) -> (Vector, Vector) {
        let r = self.rank as u32;
        let top = v.iter().filter(|(t, _)| t.pos < r).cloned().collect();
        let bottom = v
            .iter()
            .filter(|(t, _)| t.pos >= r)
            .map(|(t, c)| {
                (
                    Term {
                        pos: t.pos - r,
                        mono: t.mono,
                    },
                    c.clone(),
                )
            })
            .collect();
        (top, bottom)
    }

    /// Generators of the syzygy module, as vectors over the generator
    /// positions (degrees `gen_degrees`). Sorted by the default order.
    pub fn syzygies(&self) -> Vec<Vector> {
        let order = TermOrder::pot(self.gb.ring());
        self.gb
            .elements()
            .iter()
            .filter(|e| (e[0].0.pos as usize) >= self.rank)
            .map(|e| {
                let (_, mut b) = self.split(e);
                sort_vector(&mut b, &order);
                b
            })
            .collect()
    }

    /// Coefficients `c` with `sum c_l g_l = v`, or `None` when `v` is not
    /// in the submodule. Coefficients are sorted by the default order.
    pub fn lift(&self, v: &Vector) -> Option<Vector> {
        let mut x = v.clone();
        sort_vector(&mut x, self.gb.order());
        let nf = self.gb.normal_form(&x);
        let (top, bottom) = self.split(&nf);
        if !top.is_empty() {
            return None;
        }
        let mut c = scale_vector(&bottom, &-Rational::one());
        sort_vector(&mut c, &TermOrder::pot(self.gb.ring()));
        Some(c)
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    /// Gröbner basis of the submodule itself (the `F` block).
    pub fn submodule_basis(&self) -> Vec<Vector> {
        self.gb
            .elements()
            .iter()
            .filter(|e| (e[0].0.pos as usize) < self.rank)
            .map(|e| self.split(e).0)
            .collect()
    }
}

/// Indices of a minimal generating subset of homogeneous vectors, chosen
/// greedily in increasing degree (input order breaks ties).
pub fn minimal_generating_subset(
    ambient: &Ambient,
    vecs: &[Vector],
    order: &TermOrder,
) -> Result<Vec<usize>, AlgebraError> {
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, v) in vecs.iter().enumerate() {
        if let Some(d) = ambient.vector_degree(v)? {
            by_deg.entry(d).or_default().push(k);
        }
    }
    let mut kept: Vec<usize> = Vec::new();
    let mut gb = buchberger(ambient, &[], order)?;
    let groups: Vec<Vec<usize>> = by_deg.into_values().collect();
    let ngroups = groups.len();
    for (gi, group) in groups.into_iter().enumerate() {
        let mut cols: std::collections::HashMap<Term, usize> = std::collections::HashMap::new();
        let mut ech = crate::exact_linear::Echelon::new(usize::MAX);
        let mut added = false;
        for k in group {
            let nf = gb.normal_form(&vecs[k]);
            if nf.is_empty() {
                continue;
            }
            let mut row: Vec<(usize, Rational)> = nf
                .iter()
                .map(|(t, c)| {
                    let n = cols.len();
                    (*cols.entry(*t).or_insert(n), c.clone())
                })
                .collect();
            row.sort_by_key(|(c, _)| *c);
            if ech.insert(row) {
                kept.push(k);
                added = true;
            }
        }
        if added && gi + 1 < ngroups {
            let gens: Vec<Vector> = kept.iter().map(|&k| vecs[k].clone()).collect();
            gb = buchberger(ambient, &gens, order)?;
        }
    }
    Ok(kept)
}

/// Mutual inclusion of two submodules of the same ambient module.
pub fn same_submodule(ambient: &Ambient, a: &[Vector], b: &[Vector]) -> Result<bool, AlgebraError> {
    let order = TermOrder::pot(&ambient.ring);
    let ga = buchberger(ambient, a, &order)?;
    let gb = buchberger(ambient, b, &order)?;
    Ok(b.iter().all(|v| ga.contains(v)) && a.iter().all(|v| gb.contains(v)))
}

/// Dimension of a quotient ring, or `None` when it is infinite.
pub fn quotient_finite_dimension(
    ring: &GradedPolyRing,
    ideal: &[Poly],
) -> Result<Option<usize>, AlgebraError> {
    let ambient = Ambient {
        ring: ring.clone(),
        shifts: vec![0],
    };
    let order = TermOrder::pot(ring);
    let gens: Vec<Vector> = ideal
        .iter()
        .map(|p| vector_from_poly(p, 0, &order))
        .collect();
    let gb = buchberger(&ambient, &gens, &order)?;
    quotient_dimension_from_basis(&gb)
}

/// Staircase count of `F/gb` for a rank-one ambient module.
pub fn quotient_dimension_from_basis(gb: &GroebnerBasis) -> Result<Option<usize>, AlgebraError> {
    let ring = gb.ring();
    let lts = gb.leading_terms();
    if lts.iter().any(|t| t.mono.is_one()) {
        return Ok(Some(0));
    }
    let mut bound = 0i64;
    for v in 0..ring.nvars() {
        let pure = lts
            .iter()
            .filter(|t| (0..ring.nvars()).all(|u| u == v || t.mono.0[u] == 0))
            .map(|t| t.mono.0[v] as i64)
            .min();
        match pure {
            Some(e) => bound += (e - 1) * ring.degrees()[v],
            None => return Ok(None),
        }
    }
    let shift = gb.ambient().shifts.iter().copied().max().unwrap_or(0);
    let low = gb.ambient().shifts.iter().copied().min().unwrap_or(0);
    Ok(Some(
        (low..=bound + shift)
            .map(|d| gb.standard_terms(d).len())
            .sum(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::q;

    fn ring(spec: &[(&str, i64)]) -> GradedPolyRing {
        GradedPolyRing::new(spec.iter().map(|(n, d)| (n.to_string(), *d))).unwrap()
    }

    fn ideal_gb(r: &GradedPolyRing, gens: &[&str]) -> GroebnerBasis {
        let order = TermOrder::pot(r);
        let amb = Ambient {
            ring: r.clone(),
            shifts: vec![0],
        };
        let v: Vec<Vector> = gens
            .iter()
            .map(|s| vector_from_poly(&r.parse(s).unwrap(), 0, &order))
            .collect();
        buchberger(&amb, &v, &order).unwrap()
    }

    #[test]
    fn principal_ideal() {
        let r = ring(&[("x", 2)]);
        let gb = ideal_gb(&r, &["x"]);
        assert_eq!(gb.len(), 1);
        assert_eq!(gb.leading_terms()[0].mono, Mono::from_exps(&[1]));
        let order = TermOrder::pot(&r);
        assert!(gb
            .normal_form(&vector_from_poly(&r.parse("x^2").unwrap(), 0, &order))
            .is_empty());
        assert_eq!(
            gb.normal_form(&vector_from_poly(&Poly::one(), 0, &order))
                .len(),
            1
        );
    }

    #[test]
    fn elementary_symmetric_ideal() {
        let r = ring(&[("t1", 2), ("t2", 2)]);
        let gb = ideal_gb(&r, &["t1+t2", "t1*t2"]);
        let lts: Vec<Mono> = gb.leading_terms().iter().map(|t| t.mono).collect();
        assert_eq!(
            lts,
            vec![Mono::from_exps(&[0, 2]), Mono::from_exps(&[1, 0])]
        );
        assert!(gb.satisfies_criterion());
        let order = TermOrder::pot(&r);
        assert!(gb.contains(&vector_from_poly(&r.parse("t1^2").unwrap(), 0, &order)));
        assert_eq!(
            quotient_finite_dimension(&r, &[r.parse("t1+t2").unwrap(), r.parse("t1*t2").unwrap()])
                .unwrap(),
            Some(2)
        );
    }

    #[test]
    fn module_basis_and_syzygies() {
        let r = ring(&[("x", 2), ("y", 2)]);
        let order = TermOrder::pot(&r);
        let amb = Ambient {
            ring: r.clone(),
            shifts: vec![0, 0],
        };
        let x = r.parse("x").unwrap();
        let y = r.parse("y").unwrap();
        let g1 = vector_from_free(&FreeElement::new(vec![x.clone(), y.clone()]), &order);
        let g2 = vector_from_free(&FreeElement::new(vec![y.clone(), x.clone()]), &order);
        let gb = buchberger(&amb, &[g1.clone(), g2.clone()], &order).unwrap();
        assert!(gb.satisfies_criterion());
        assert!(gb.len() >= 3);
        assert!(gb.contains(&g1) && gb.contains(&g2));
        // (x,y) ideal: Koszul syzygy.
        let amb1 = Ambient {
            ring: r.clone(),
            shifts: vec![0],
        };
        let gens = vec![
            vector_from_poly(&x, 0, &order),
            vector_from_poly(&y, 0, &order),
        ];
        let l = Lifter::new(&amb1, &gens, &[2, 2]).unwrap();
        let syz = l.syzygies();
        assert_eq!(syz.len(), 1);
        let s = vector_to_free(&syz[0], 2);
        assert!(s.comps[0].mul(&x).add(&s.comps[1].mul(&y)).is_zero());
        assert_eq!(s.comps[0].num_terms(), 1);
        let c = l
            .lift(&vector_from_poly(&r.parse("x^2+3*x*y").unwrap(), 0, &order))
            .unwrap();
        let c = vector_to_free(&c, 2);
        assert_eq!(
            c.comps[0].mul(&x).add(&c.comps[1].mul(&y)),
            r.parse("x^2+3*x*y").unwrap()
        );
        assert!(l.lift(&vector_from_poly(&Poly::one(), 0, &order)).is_none());
    }

    #[test]
    fn repeated_and_regular_generators() {
        let r = ring(&[("x", 2)]);
        let order = TermOrder::pot(&r);
        let amb = Ambient {
            ring: r.clone(),
            shifts: vec![0],
        };
        let x = vector_from_poly(&r.var(0), 0, &order);
        assert!(Lifter::new(&amb, &[x.clone()], &[2])
            .unwrap()
            .syzygies()
            .is_empty());
        let syz = Lifter::new(&amb, &[x.clone(), x], &[2, 2])
            .unwrap()
            .syzygies();
        assert_eq!(syz.len(), 1);
        let s = vector_to_free(&syz[0], 2);
        assert_eq!(s.comps[0], s.comps[1].neg());
        assert!(s.comps[0].is_constant());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = ring(&[("x", 2)]);
        let order = TermOrder::pot(&r);
        let amb = Ambient {
            ring: r.clone(),
            shifts: vec![0],
        };
        let v = vector_from_poly(&r.parse("x^2 + x").unwrap(), 0, &order);
        assert!(matches!(
            buchberger(&amb, &[v], &order),
            Err(AlgebraError::Inhomogeneous(_))
        ));
    }

    #[test]
    fn quotient_dimensions() {
        let r = ring(&[("x", 2)]);
        assert_eq!(quotient_finite_dimension(&r, &[r.var(0)]).unwrap(), Some(1));
        let s = ring(&[("c2", 4), ("c3", 6)]);
        assert_eq!(
            quotient_finite_dimension(&s, &[s.var(0), Poly::zero()]).unwrap(),
            None
        );
        let c = ring(&[("c2", 4)]);
        assert_eq!(
            quotient_finite_dimension(&c, &[c.var(0), Poly::zero()]).unwrap(),
            Some(1)
        );
        let xy = ring(&[("x", 2), ("y", 2)]);
        assert_eq!(quotient_finite_dimension(&xy, &[xy.var(0)]).unwrap(), None);
        let t = ring(&[("t", 2)]);
        assert_eq!(
            quotient_finite_dimension(&t, &[t.parse("t^2").unwrap()]).unwrap(),
            Some(2)
        );
        assert_eq!(
            quotient_finite_dimension(&t, &[Poly::constant(q(3))]).unwrap(),
            Some(0)
        );
    }
}
