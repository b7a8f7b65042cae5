//! Finitely presented graded modules and the underived change-of-rings
//! functors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::exact_linear::{RatMatrix, Rational, SparseRow};
use crate::groebner::{
    buchberger, minimal_generating_subset, mul_poly_vector, sort_vector, vector_from_free,
    vector_to_free, Ambient, GroebnerBasis, Lifter, Term, TermOrder, Vector,
};
use crate::poly::{FreeElement, GradedPolyRing, Mono, Poly, RingMap};

/// Closed interval of internal (cohomological) degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self, AlgebraError> {
        if lo > hi {
            return Err(AlgebraError::Invalid(format!("empty window [{lo}, {hi}]")));
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Rational generating function `numerator / prod (1 - t^e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    /// Laurent polynomial as exponent to coefficient.
    pub numerator: BTreeMap<i64, i64>,
    pub denominator: Vec<i64>,
}

impl ClosedForm {
    /// Series coefficients on the window.
    pub fn expand(&self, window: DegreeWindow) -> Vec<i64> {
        let lo = self
            .numerator
            .keys()
            .next()
            .copied()
            .unwrap_or(window.lo)
            .min(window.lo);
        let n = (window.hi - lo + 1).max(0) as usize;
        let mut c = vec![0i64; n];
        for (&e, &v) in &self.numerator {
            if e <= window.hi {
                c[(e - lo) as usize] += v;
            }
        }
        for &e in &self.denominator {
            for i in e as usize..n {
                c[i] += c[i - e as usize];
            }
        }
        window.degrees().map(|d| c[(d - lo) as usize]).collect()
    }
}

/// Per-degree dimensions on a window with an optional closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub window: DegreeWindow,
    pub dims: Vec<usize>,
    pub closed_form: Option<ClosedForm>,
}

impl HilbertData {
    pub fn dim(&self, d: i64) -> usize {
        if self.window.contains(d) {
            self.dims[(d - self.window.lo) as usize]
        } else {
            0
        }
    }

    /// Does the closed form (if any) reproduce the dims?
    pub fn closed_form_consistent(&self) -> bool {
        match &self.closed_form {
            None => true,
            Some(cf) => cf
                .expand(self.window)
                .iter()
                .zip(&self.dims)
                .all(|(a, b)| *a == *b as i64),
        }
    }
}

/// Module as written in configuration files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescription {
    pub ring: String,
    pub generators: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

/// Finitely presented graded module `F / <relations>`, where `F` is free
/// on generators of the given degrees.
#[derive(Clone)]
pub struct PresentedModule {
    ring: GradedPolyRing,
    gen_degrees: Vec<i64>,
    relations: Vec<FreeElement>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.gen_degrees == other.gen_degrees
            && self.relations == other.relations
    }
}

impl Eq for PresentedModule {}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedModule")
            .field("ring", &self.ring)
            .field("generators", &self.gen_degrees)
            .field(
                "relations",
                &self
                    .relations
                    .iter()
                    .map(|r| r.display(&self.ring))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PresentedModule {
    pub fn new(
        ring: GradedPolyRing,
        gen_degrees: Vec<i64>,
        relations: Vec<FreeElement>,
    ) -> Result<Self, AlgebraError> {
        for r in &relations {
            if r.rank() != gen_degrees.len() {
                return Err(AlgebraError::Invalid(format!(
                    "relation has {} components, module has {} generators",
                    r.rank(),
                    gen_degrees.len()
                )));
            }
            for p in &r.comps {
                if p.terms()
                    .any(|(m, _)| m.0[ring.nvars()..].iter().any(|&e| e != 0))
                {
                    return Err(AlgebraError::Invalid(
                        "relation uses variables outside the ring".into(),
                    ));
                }
            }
            r.degree(&ring, &gen_degrees)?;
        }
        Ok(Self::unchecked(ring, gen_degrees, relations))
    }

    fn unchecked(ring: GradedPolyRing, gen_degrees: Vec<i64>, relations: Vec<FreeElement>) -> Self {
        PresentedModule {
            ring,
            gen_degrees,
            relations,
            gb: OnceLock::new(),
        }
    }

    pub fn free(ring: &GradedPolyRing, degrees: Vec<i64>) -> Self {
        Self::unchecked(ring.clone(), degrees, Vec::new())
    }

    pub fn zero(ring: &GradedPolyRing) -> Self {
        Self::free(ring, Vec::new())
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: &GradedPolyRing) -> Self {
        Self::free(ring, vec![0])
    }

    /// The ground field, concentrated in degree 0.
    pub fn residue_field(ring: &GradedPolyRing) -> Self {
        let rels = (0..ring.nvars())
            .map(|i| FreeElement::new(vec![ring.var(i)]))
            .collect();
        Self::unchecked(ring.clone(), vec![0], rels)
    }

    /// `ring / ideal` as a cyclic module.
    pub fn cyclic(ring: &GradedPolyRing, ideal: &[Poly]) -> Result<Self, AlgebraError> {
        Self::new(
            ring.clone(),
            vec![0],
            ideal
                .iter()
                .map(|p| FreeElement::new(vec![p.clone()]))
                .collect(),
        )
    }

    pub fn from_description(
        ring: &GradedPolyRing,
        desc: &ModuleDescription,
    ) -> Result<Self, AlgebraError> {
        let mut rels = Vec::new();
        for r in &desc.relations {
            if r.len() != desc.generators.len() {
                return Err(AlgebraError::Invalid(format!(
                    "relation has {} entries, module has {} generators",
                    r.len(),
                    desc.generators.len()
                )));
            }
            let comps = r
                .iter()
                .map(|s| ring.parse(s))
                .collect::<Result<Vec<_>, _>>()?;
            rels.push(FreeElement::new(comps));
        }
        Self::new(ring.clone(), desc.generators.clone(), rels)
    }

    pub fn to_description(&self, ring_name: &str) -> ModuleDescription {
        ModuleDescription {
            ring: ring_name.to_string(),
            generators: self.gen_degrees.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| r.display(&self.ring))
                .collect(),
        }
    }

    pub fn ring(&self) -> &GradedPolyRing {
        &self.ring
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn ambient(&self) -> Ambient {
        Ambient {
            ring: self.ring.clone(),
            shifts: self.gen_degrees.clone(),
        }
    }

    pub fn order(&self) -> TermOrder {
        TermOrder::pot(&self.ring)
    }

    pub fn relation_vectors(&self) -> Vec<Vector> {
        let order = self.order();
        self.relations
            .iter()
            .map(|r| vector_from_free(r, &order))
            .collect()
    }

    /// Degree of each relation; `None` for zero relations.
    pub fn relation_degrees(&self) -> Vec<Option<i64>> {
        self.relations
            .iter()
            .map(|r| {
                r.degree(&self.ring, &self.gen_degrees)
                    .expect("relations are homogeneous")
            })
            .collect()
    }

    pub fn max_relation_degree(&self) -> Option<i64> {
        self.relation_degrees().into_iter().flatten().max()
    }

    /// Gröbner basis of the relation module (cached).
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            Arc::new(
                buchberger(&self.ambient(), &self.relation_vectors(), &self.order())
                    .expect("relations are homogeneous by construction"),
            )
        })
    }

    pub fn dim(&self, n: i64) -> usize {
        self.gb().standard_terms(n).len()
    }

    pub fn hilbert(&self, window: DegreeWindow) -> HilbertData {
        HilbertData {
            window,
            dims: window.degrees().map(|d| self.dim(d)).collect(),
            closed_form: None,
        }
    }

    /// Is the module zero? (Every generator is itself a relation.)
    pub fn is_zero_module(&self) -> bool {
        let gb = self.gb();
        (0..self.rank()).all(|p| {
            !gb.is_standard(&Term {
                pos: p as u32,
                mono: Mono::one(),
            })
        })
    }

    pub fn min_generator_degree(&self) -> Option<i64> {
        self.gen_degrees.iter().copied().min()
    }

    /// Suspension by `a` in total degree: internal generator degrees
    /// decrease by `a`.
    pub fn shift(&self, a: i64) -> PresentedModule {
        Self::unchecked(
            self.ring.clone(),
            self.gen_degrees.iter().map(|d| d - a).collect(),
            self.relations.clone(),
        )
    }

    /// Minimal presentation: generators killed by unit relation entries are
    /// eliminated, then a minimal set of relations is kept.
    pub fn minimize(&self) -> PresentedModule {
        let (gens, rels) = prune_units(&self.gen_degrees, &self.relations);
        Self::unchecked(self.ring.clone(), gens, rels).minimize_relations()
    }

    /// Keeps the generators and selects a minimal generating set of the
    /// relation module.
    pub fn minimize_relations(&self) -> PresentedModule {
        let vecs = self.relation_vectors();
        let keep =
            minimal_generating_subset(&self.ambient(), &vecs, &self.order()).expect("homogeneous");
        let rels = keep
            .into_iter()
            .map(|k| self.relations[k].clone())
            .collect();
        Self::unchecked(self.ring.clone(), self.gen_degrees.clone(), rels)
    }

    pub fn pieces(&self) -> GradedPieces<'_> {
        GradedPieces {
            module: self,
            bases: HashMap::new(),
            nf: HashMap::new(),
        }
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule, AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::Invalid(
                "direct sum over different rings".into(),
            ));
        }
        let (p, q) = (self.rank(), other.rank());
        let mut gens = self.gen_degrees.clone();
        gens.extend_from_slice(&other.gen_degrees);
        let mut rels: Vec<FreeElement> = self
            .relations
            .iter()
            .map(|r| {
                let mut c = r.comps.clone();
                c.extend(std::iter::repeat(Poly::zero()).take(q));
                FreeElement::new(c)
            })
            .collect();
        rels.extend(other.relations.iter().map(|r| {
            let mut c = vec![Poly::zero(); p];
            c.extend(r.comps.iter().cloned());
            FreeElement::new(c)
        }));
        Ok(Self::unchecked(self.ring.clone(), gens, rels))
    }
}

fn prune_units(gen_degrees: &[i64], relations: &[FreeElement]) -> (Vec<i64>, Vec<FreeElement>) {
    let mut gens = gen_degrees.to_vec();
    let mut rels: Vec<FreeElement> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    loop {
        let found = rels.iter().enumerate().find_map(|(l, r)| {
            r.comps
                .iter()
                .position(|p| !p.constant_term().is_zero())
                .map(|j| (l, j))
        });
        let Some((l, j)) = found else { break };
        let r = rels.remove(l);
        let c = r.comps[j].constant_term();
        for s in rels.iter_mut() {
            if s.comps[j].is_zero() {
                continue;
            }
            let f = s.comps[j].scale(&c.recip());
            *s = s.sub(&r.scale_poly(&f));
        }
        for s in rels.iter_mut() {
            s.comps.remove(j);
        }
        gens.remove(j);
        rels.retain(|s| !s.is_zero());
    }
    (gens, rels)
}

/// Basis of one graded piece: standard terms of the relation basis.
#[derive(Debug)]
pub struct PieceBasis {
    pub terms: Vec<Term>,
    index: HashMap<Term, usize>,
}

impl PieceBasis {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Degreewise linear-algebra view of a module with memoized normal forms.
pub struct GradedPieces<'a> {
    module: &'a PresentedModule,
    bases: HashMap<i64, Arc<PieceBasis>>,
    nf: HashMap<Term, Arc<Vector>>,
}

impl<'a> GradedPieces<'a> {
    pub fn module(&self) -> &PresentedModule {
        self.module
    }

    pub fn basis(&mut self, n: i64) -> Arc<PieceBasis> {
        if let Some(b) = self.bases.get(&n) {
            return b.clone();
        }
        let terms = self.module.gb().standard_terms(n);
        let index = terms.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let b = Arc::new(PieceBasis { terms, index });
        self.bases.insert(n, b.clone());
        b
    }

    pub fn dim(&mut self, n: i64) -> usize {
        self.basis(n).len()
    }

    fn term_nf(&mut self, t: Term) -> Arc<Vector> {
        if let Some(v) = self.nf.get(&t) {
            return v.clone();
        }
        let v = Arc::new(self.module.gb().normal_form(&vec![(t, Rational::one())]));
        self.nf.insert(t, v.clone());
        v
    }

    /// Coordinates of `poly * term` in the basis of degree `n_target`.
    fn product_coords(
        &mut self,
        p: &Poly,
        t: &Term,
        target: &PieceBasis,
        acc: &mut BTreeMap<usize, Rational>,
        scale: &Rational,
    ) {
        for (m, c) in p.terms() {
            let nf = self.term_nf(Term {
                pos: t.pos,
                mono: t.mono.mul(m),
            });
            for (u, x) in nf.iter() {
                let i = target
                    .index_of(u)
                    .expect("normal form lies in the standard basis");
                *acc.entry(i).or_insert_with(Rational::zero) += c * x * scale;
            }
        }
    }

    /// Matrix of multiplication by a homogeneous `p` of degree `deg`
    /// from degree `n` to degree `n + deg`; columns are source basis
    /// elements.
    pub fn mult_matrix(&mut self, p: &Poly, deg: i64, n: i64) -> RatMatrix {
        let src = self.basis(n);
        let tgt = self.basis(n + deg);
        let mut trip = Vec::new();
        for (j, t) in src.terms.iter().enumerate() {
            let mut acc = BTreeMap::new();
            self.product_coords(p, t, &tgt, &mut acc, &Rational::one());
            trip.extend(
                acc.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, j, v)),
            );
        }
        RatMatrix::from_triples(tgt.len(), src.len(), trip)
    }

    /// Image of the source basis element `j` of degree `n` under
    /// multiplication by `p`, as coordinates in degree `n + deg`.
    pub fn mult_column(&mut self, p: &Poly, deg: i64, n: i64, j: usize) -> SparseRow {
        let src = self.basis(n);
        let tgt = self.basis(n + deg);
        let mut acc = BTreeMap::new();
        self.product_coords(p, &src.terms[j], &tgt, &mut acc, &Rational::one());
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// Coordinates of an arbitrary element of degree `n` of the free cover.
    pub fn coords(&mut self, v: &Vector, n: i64) -> SparseRow {
        let tgt = self.basis(n);
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (t, c) in v {
            let nf = self.term_nf(*t);
            for (u, x) in nf.iter() {
                let i = tgt
                    .index_of(u)
                    .expect("normal form lies in the standard basis");
                *acc.entry(i).or_insert_with(Rational::zero) += c * x;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Extension of scalars `R ⊗_S M`, minimized.
pub fn extend_scalars(
    theta: &RingMap,
    m: &PresentedModule,
) -> Result<PresentedModule, AlgebraError> {
    if m.ring() != theta.source() {
        return Err(AlgebraError::Invalid(
            "module is not over the source ring".into(),
        ));
    }
    let rels = m.relations.iter().map(|r| r.map_ring(theta)).collect();
    Ok(PresentedModule::new(theta.target().clone(), m.gen_degrees.clone(), rels)?.minimize())
}

/// Restriction of scalars with the data needed to express elements of the
/// original module over the smaller ring.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// Presentation over the source ring; generator `l` is
    /// `basis[l].0 * g_{basis[l].1}`.
    pub module: PresentedModule,
    pub basis: Vec<(Mono, usize)>,
    lifter: Lifter,
    n_r: usize,
    n_s: usize,
    rank: usize,
    t_ring: GradedPolyRing,
}

impl Restriction {
    // Monomials of R occupy the first variables of T.
    fn r_to_t(&self, e: &FreeElement) -> Vector {
        vector_from_free(e, &TermOrder::pot(&self.t_ring))
    }

    /// Coefficients over the source ring expressing an element of the
    /// original module in the generators of the restricted presentation.
    pub fn express(&self, e: &FreeElement) -> Result<FreeElement, AlgebraError> {
        if e.rank() != self.rank {
            return Err(AlgebraError::Invalid("element has the wrong rank".into()));
        }
        let v = self.r_to_t(e);
        let c = self
            .lifter
            .lift(&v)
            .ok_or_else(|| AlgebraError::Invalid("element not in the module".into()))?;
        let mut out = FreeElement::zero(self.basis.len());
        for (t, x) in c {
            let m = t_to_s(&t.mono, self.n_r, self.n_s).ok_or_else(|| {
                AlgebraError::Invalid("coefficient is not in the source ring".into())
            })?;
            out.comps[t.pos as usize].add_term(m, x);
        }
        Ok(out)
    }
}

fn t_to_s(m: &Mono, n_r: usize, n_s: usize) -> Option<Mono> {
    if m.0[..n_r].iter().any(|&e| e != 0) {
        return None;
    }
    let mut out = Mono::one();
    out.0[..n_s].copy_from_slice(&m.0[n_r..n_r + n_s]);
    Some(out)
}

fn s_to_t(m: &Mono, n_r: usize, n_s: usize) -> Mono {
    let mut out = Mono::one();
    out.0[n_r..n_r + n_s].copy_from_slice(&m.0[..n_s]);
    out
}

/// Standard monomials of `R / IR`; errors when the quotient is infinite.
pub fn basis_over_source(theta: &RingMap) -> Result<Vec<Mono>, AlgebraError> {
    let r = theta.target();
    let order = TermOrder::pot(r);
    let amb = Ambient {
        ring: r.clone(),
        shifts: vec![0],
    };
    let gens: Vec<Vector> = theta
        .nonzero_images()
        .iter()
        .map(|p| crate::groebner::vector_from_poly(p, 0, &order))
        .collect();
    let gb = buchberger(&amb, &gens, &order)?;
    match crate::groebner::quotient_dimension_from_basis(&gb)? {
        None => Err(AlgebraError::NotFinitelyGenerated(format!(
            "{} / (images of {}) is infinite dimensional",
            r,
            theta.source()
        ))),
        Some(_) => {
            let bound: i64 = {
                let lts = gb.leading_terms();
                (0..r.nvars())
                    .map(|v| {
                        let e = lts
                            .iter()
                            .filter(|t| (0..r.nvars()).all(|u| u == v || t.mono.0[u] == 0))
                            .map(|t| t.mono.0[v] as i64)
                            .min()
                            .unwrap_or(1);
                        (e - 1) * r.degrees()[v]
                    })
                    .sum()
            };
            let mut out = Vec::new();
            for d in 0..=bound {
                let mut ms: Vec<Mono> = gb.standard_terms(d).into_iter().map(|t| t.mono).collect();
                ms.sort_by(|a, b| r.cmp_degrevlex(a, b));
                out.extend(ms);
            }
            Ok(out)
        }
    }
}

/// Restriction of scalars along `theta`, keeping the generator
/// bookkeeping.
pub fn restriction(theta: &RingMap, m: &PresentedModule) -> Result<Restriction, AlgebraError> {
    if m.ring() != theta.target() {
        return Err(AlgebraError::Invalid(
            "module is not over the target ring".into(),
        ));
    }
    let r = theta.target();
    let s = theta.source();
    let (n_r, n_s) = (r.nvars(), s.nvars());
    let basis_monos = basis_over_source(theta)?;
    let mut gens_t: Vec<(String, i64)> = r
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, d)| (format!("y{i}"), *d))
        .collect();
    gens_t.extend(
        s.degrees()
            .iter()
            .enumerate()
            .map(|(i, d)| (format!("x{i}"), *d)),
    );
    let t_ring = GradedPolyRing::new_allow_odd(gens_t)?;
    let p = m.rank();
    let amb = Ambient {
        ring: t_ring.clone(),
        shifts: m.gen_degrees.clone(),
    };
    let mut elim = vec![true; n_r];
    elim.extend(vec![false; n_s]);
    let base = TermOrder::pot(&t_ring).with_elimination(elim);
    let sort_order = TermOrder::pot(&t_ring);
    let mut basis = Vec::new();
    let mut gens = Vec::new();
    let mut degs = Vec::new();
    for k in 0..p {
        for b in &basis_monos {
            basis.push((*b, k));
            gens.push(vec![(
                Term {
                    pos: k as u32,
                    mono: *b,
                },
                Rational::one(),
            )]);
            degs.push(r.mono_degree(b) + m.gen_degrees[k]);
        }
    }
    let mut modulo: Vec<Vector> = m.relation_vectors();
    for (i, img) in theta.images().iter().enumerate() {
        let x = Poly::monomial(s_to_t(&Mono::var(i), n_r, n_s), Rational::one());
        let diff = x.sub(img);
        for k in 0..p {
            let mut v = mul_poly_vector(
                &diff,
                &vec![(
                    Term {
                        pos: k as u32,
                        mono: Mono::one(),
                    },
                    Rational::one(),
                )],
                &sort_order,
            );
            sort_vector(&mut v, &sort_order);
            modulo.push(v);
        }
    }
    let lifter = Lifter::with_order(&amb, &gens, &degs, &modulo, base)?;
    let mut rels = Vec::new();
    for syz in lifter.syzygies() {
        let mut e = FreeElement::zero(gens.len());
        let mut ok = true;
        for (t, c) in &syz {
            match t_to_s(&t.mono, n_r, n_s) {
                Some(mm) => e.comps[t.pos as usize].add_term(mm, c.clone()),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && !e.is_zero() {
            rels.push(e);
        }
    }
    let module = PresentedModule::new(s.clone(), degs, rels)?.minimize_relations();
    Ok(Restriction {
        module,
        basis,
        lifter,
        n_r,
        n_s,
        rank: p,
        t_ring,
    })
}

/// Restriction of scalars `θ^* M`, minimized.
pub fn restrict_scalars(
    theta: &RingMap,
    m: &PresentedModule,
) -> Result<PresentedModule, AlgebraError> {
    Ok(restriction(theta, m)?.module.minimize())
}

/// Module generated by `k_gens` (of degrees `k_degrees`) inside the free
/// module `ambient`, modulo the submodule generated by `l_gens`.
pub fn subquotient(
    ambient: &Ambient,
    k_gens: &[Vector],
    k_degrees: &[i64],
    l_gens: &[Vector],
) -> Result<PresentedModule, AlgebraError> {
    let lifter = Lifter::modulo(ambient, k_gens, k_degrees, l_gens)?;
    let rels = lifter
        .syzygies()
        .iter()
        .map(|v| vector_to_free(v, k_gens.len()))
        .collect();
    Ok(PresentedModule::new(ambient.ring.clone(), k_degrees.to_vec(), rels)?.minimize())
}

/// `Hom(M, N)` as a finitely presented module, minimized.
pub fn hom_modules(
    m: &PresentedModule,
    n: &PresentedModule,
) -> Result<PresentedModule, AlgebraError> {
    if m.ring != n.ring {
        return Err(AlgebraError::Invalid("modules over different rings".into()));
    }
    let ring = &m.ring;
    let order = TermOrder::pot(ring);
    let (p, q, k) = (m.rank(), m.relations.len(), n.rank());
    // Cover of Hom(F0, N): slot (i, j) = i * k + j has degree g_j - e_i.
    let cover_degs: Vec<i64> = (0..p)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| n.gen_degrees[j] - m.gen_degrees[i])
        .collect();
    let rel_degs: Vec<i64> = m
        .relation_degrees()
        .into_iter()
        .map(|d| d.unwrap_or(0))
        .collect();
    let target_degs: Vec<i64> = (0..q)
        .flat_map(|l| (0..k).map(move |j| (l, j)))
        .map(|(l, j)| n.gen_degrees[j] - rel_degs[l])
        .collect();
    let target = Ambient {
        ring: ring.clone(),
        shifts: target_degs,
    };
    let mut images = Vec::with_capacity(p * k);
    for i in 0..p {
        for j in 0..k {
            let mut v: Vector = Vec::new();
            for l in 0..q {
                let a = &m.relations[l].comps[i];
                for (mono, c) in a.terms() {
                    v.push((
                        Term {
                            pos: (l * k + j) as u32,
                            mono: *mono,
                        },
                        c.clone(),
                    ));
                }
            }
            sort_vector(&mut v, &order);
            images.push(v);
        }
    }
    let n_rels = n.relation_vectors();
    let mut modulo = Vec::new();
    for l in 0..q {
        for r in &n_rels {
            modulo.push(
                r.iter()
                    .map(|(t, c)| {
                        (
                            Term {
                                pos: t.pos + (l * k) as u32,
                                mono: t.mono,
                            },
                            c.clone(),
                        )
                    })
                    .collect(),
            );
        }
    }
    let kernel = Lifter::modulo(&target, &images, &cover_degs, &modulo)?.syzygies();
    let kernel_degs: Vec<i64> = kernel
        .iter()
        .map(|v| {
            let (t, _) = &v[0];
            ring.mono_degree(&t.mono) + cover_degs[t.pos as usize]
        })
        .collect();
    let cover = Ambient {
        ring: ring.clone(),
        shifts: cover_degs,
    };
    let mut l_gens = Vec::new();
    for i in 0..p {
        for r in &n_rels {
            l_gens.push(
                r.iter()
                    .map(|(t, c)| {
                        (
                            Term {
                                pos: t.pos + (i * k) as u32,
                                mono: t.mono,
                            },
                            c.clone(),
                        )
                    })
                    .collect(),
            );
        }
    }
    subquotient(&cover, &kernel, &kernel_degs, &l_gens)
}

/// `M ⊗ N`, minimized.
pub fn tensor(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule, AlgebraError> {
    if m.ring != n.ring {
        return Err(AlgebraError::Invalid("modules over different rings".into()));
    }
    let (p, k) = (m.rank(), n.rank());
    let gens: Vec<i64> = (0..p)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| m.gen_degrees[i] + n.gen_degrees[j])
        .collect();
    let mut rels = Vec::new();
    for r in &m.relations {
        for j in 0..k {
            let mut e = FreeElement::zero(p * k);
            for i in 0..p {
                e.comps[i * k + j] = r.comps[i].clone();
            }
            rels.push(e);
        }
    }
    for r in &n.relations {
        for i in 0..p {
            let mut e = FreeElement::zero(p * k);
            for j in 0..k {
                e.comps[i * k + j] = r.comps[j].clone();
            }
            rels.push(e);
        }
    }
    Ok(PresentedModule::new(m.ring.clone(), gens, rels)?.minimize())
}

/// `T_I M = {m : I^n m = 0 for some n}` as a minimized presentation.
pub fn torsion_submodule(
    m: &PresentedModule,
    ideal: &[Poly],
) -> Result<PresentedModule, AlgebraError> {
    let ring = &m.ring;
    let ideal: Vec<Poly> = ideal.iter().filter(|p| !p.is_zero()).cloned().collect();
    for f in &ideal {
        if f.homogeneous_degree(ring).is_none() {
            return Err(AlgebraError::Inhomogeneous(f.display(ring)));
        }
    }
    let amb = m.ambient();
    let order = m.order();
    let rels = m.relation_vectors();
    let p = m.rank();
    let unit = |i: usize| {
        vec![(
            Term {
                pos: i as u32,
                mono: Mono::one(),
            },
            Rational::one(),
        )]
    };
    if ideal.is_empty() {
        let all: Vec<Vector> = (0..p).map(unit).collect();
        return subquotient(&amb, &all, &m.gen_degrees, &rels);
    }
    let mut shifts = Vec::new();
    for f in &ideal {
        let d = f.homogeneous_degree(ring).unwrap();
        shifts.extend(m.gen_degrees.iter().map(|e| e - d));
    }
    let big = Ambient {
        ring: ring.clone(),
        shifts,
    };
    let images: Vec<Vector> = (0..p)
        .map(|i| {
            let mut v = Vec::new();
            for (j, f) in ideal.iter().enumerate() {
                for (mono, c) in f.terms() {
                    v.push((
                        Term {
                            pos: (j * p + i) as u32,
                            mono: *mono,
                        },
                        c.clone(),
                    ));
                }
            }
            sort_vector(&mut v, &order);
            v
        })
        .collect();
    let mut current: Vec<Vector> = rels.clone();
    let mut current_gb = buchberger(&amb, &current, &order)?;
    loop {
        let mut modulo = Vec::new();
        for j in 0..ideal.len() {
            for v in &current {
                modulo.push(
                    v.iter()
                        .map(|(t, c)| {
                            (
                                Term {
                                    pos: t.pos + (j * p) as u32,
                                    mono: t.mono,
                                },
                                c.clone(),
                            )
                        })
                        .collect(),
                );
            }
        }
        let next = Lifter::modulo(&big, &images, &m.gen_degrees, &modulo)?.syzygies();
        if next.iter().all(|v| current_gb.contains(v)) {
            break;
        }
        current = next;
        current_gb = buchberger(&amb, &current, &order)?;
    }
    let degs: Vec<i64> = current
        .iter()
        .map(|v| amb.vector_degree(v).expect("homogeneous").expect("nonzero"))
        .collect();
    subquotient(&amb, &current, &degs, &rels)
}

/// Freeness test on the minimal presentation; returns the basis degrees
/// when free.
pub fn is_free(m: &PresentedModule) -> (bool, Option<Vec<i64>>) {
    let min = m.minimize();
    if min.relations.is_empty() {
        let mut d = min.gen_degrees.clone();
        d.sort();
        (true, Some(d))
    } else {
        (false, None)
    }
}

/// Hilbert data on a window; with `closed_form` the numerator comes from
/// the alternating sum over a minimal free resolution.
pub fn hilbert_series(
    m: &PresentedModule,
    window: DegreeWindow,
    closed_form: bool,
) -> Result<HilbertData, AlgebraError> {
    let mut h = m.hilbert(window);
    if closed_form {
        let res = crate::homological::minimal_free_resolution(m, m.ring().nvars() + 1)?;
        let mut num: BTreeMap<i64, i64> = BTreeMap::new();
        for (i, f) in res.modules.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in f {
                *num.entry(d).or_insert(0) += sign;
            }
        }
        num.retain(|_, v| *v != 0);
        h.closed_form = Some(ClosedForm {
            numerator: num,
            denominator: m.ring().degrees().to_vec(),
        });
    }
    Ok(h)
}

/// Is `a` contained in `b` as submodules of a common free module?
pub fn submodule_contained(
    ambient: &Ambient,
    a: &[Vector],
    b: &[Vector],
) -> Result<bool, AlgebraError> {
    let gb = buchberger(ambient, b, &TermOrder::pot(&ambient.ring))?;
    Ok(a.iter().all(|v| gb.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: &[(&str, i64)]) -> GradedPolyRing {
        GradedPolyRing::new(spec.iter().map(|(n, d)| (n.to_string(), *d))).unwrap()
    }

    fn w(lo: i64, hi: i64) -> DegreeWindow {
        DegreeWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        let c = ring(&[("c", 2)]);
        assert_eq!(
            PresentedModule::ring_module(&c).hilbert(w(0, 6)).dims,
            vec![1, 0, 1, 0, 1, 0, 1]
        );
        let t = ring(&[("t1", 2), ("t2", 2)]);
        assert_eq!(
            PresentedModule::ring_module(&t).hilbert(w(0, 4)).dims,
            vec![1, 0, 2, 0, 3]
        );
        let s = ring(&[("c2", 4), ("c3", 6)]);
        let m = PresentedModule::cyclic(&s, &[s.var(1)]).unwrap();
        let h = hilbert_series(&m, w(0, 8), true).unwrap();
        assert_eq!(h.dims, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert!(h.closed_form_consistent());
    }

    #[test]
    fn shift_conventions() {
        let c = ring(&[("c", 2)]);
        let f = PresentedModule::ring_module(&c);
        assert_eq!(f.shift(2).gen_degrees(), &[-2]);
        assert_eq!(f.shift(0), f);
        assert_eq!(f.shift(3).shift(-3), f);
    }

    #[test]
    fn extension_examples() {
        let c = ring(&[("c", 2)]);
        let q = GradedPolyRing::rationals();
        let th = RingMap::new(c.clone(), q.clone(), vec![Poly::zero()]).unwrap();
        let e = extend_scalars(&th, &PresentedModule::ring_module(&c)).unwrap();
        assert_eq!(e.hilbert(w(-2, 2)).dims, vec![0, 0, 1, 0, 0]);
        let big = ring(&[("c2", 4), ("c3", 6)]);
        let small = ring(&[("c2", 4)]);
        let th =
            RingMap::new(big.clone(), small.clone(), vec![small.var(0), Poly::zero()]).unwrap();
        let m = PresentedModule::cyclic(&big, &[big.var(1)]).unwrap();
        let e = extend_scalars(&th, &m).unwrap();
        assert_eq!(e, PresentedModule::ring_module(&small));
        assert!(extend_scalars(&th, &PresentedModule::zero(&big))
            .unwrap()
            .is_zero_module());
    }

    #[test]
    fn restriction_examples() {
        let c2 = ring(&[("c2", 4)]);
        let t = ring(&[("t", 2)]);
        let th = RingMap::new(c2.clone(), t.clone(), vec![t.parse("t^2").unwrap()]).unwrap();
        let p = restrict_scalars(&th, &PresentedModule::ring_module(&t)).unwrap();
        assert_eq!(is_free(&p), (true, Some(vec![0, 2])));
        let c = ring(&[("c", 2)]);
        let th = RingMap::new(c.clone(), GradedPolyRing::rationals(), vec![Poly::zero()]).unwrap();
        let k = restrict_scalars(
            &th,
            &PresentedModule::ring_module(&GradedPolyRing::rationals()),
        )
        .unwrap();
        assert_eq!(k.rank(), 1);
        assert_eq!(k.relations(), &[FreeElement::new(vec![c.var(0)])]);
        let u2 = ring(&[("c1", 2), ("c2", 4)]);
        let t2 = ring(&[("t1", 2), ("t2", 2)]);
        let th = RingMap::new(
            u2,
            t2.clone(),
            vec![t2.parse("t1+t2").unwrap(), t2.parse("t1*t2").unwrap()],
        )
        .unwrap();
        let p = restrict_scalars(&th, &PresentedModule::ring_module(&t2)).unwrap();
        assert_eq!(is_free(&p), (true, Some(vec![0, 2])));
        let m = PresentedModule::cyclic(&t2, &[t2.parse("t1^2 - t2^2").unwrap()]).unwrap();
        let r = restrict_scalars(&th, &m).unwrap();
        assert_eq!(r.hilbert(w(0, 20)), m.hilbert(w(0, 20)));
        let big = ring(&[("c2", 4), ("c3", 6)]);
        let th = RingMap::new(big, c2.clone(), vec![c2.var(0), Poly::zero()]).unwrap();
        assert!(matches!(
            restrict_scalars(&th, &PresentedModule::ring_module(&c2)),
            Ok(_)
        ));
        let xy = ring(&[("x", 2), ("y", 2)]);
        let th = RingMap::new(c.clone(), xy.clone(), vec![xy.var(0)]).unwrap();
        assert!(matches!(
            restrict_scalars(&th, &PresentedModule::ring_module(&xy)),
            Err(AlgebraError::NotFinitelyGenerated(_))
        ));
    }

    #[test]
    fn hom_examples() {
        let c = ring(&[("c", 2)]);
        let s = PresentedModule::ring_module(&c);
        let k = PresentedModule::residue_field(&c);
        assert!(hom_modules(&k, &s).unwrap().is_zero_module());
        let n = PresentedModule::cyclic(&c, &[c.parse("c^3").unwrap()]).unwrap();
        let h = hom_modules(&s, &n).unwrap();
        assert_eq!(h.hilbert(w(-4, 10)), n.hilbert(w(-4, 10)));
        let a = PresentedModule::cyclic(&c, &[c.parse("c^2").unwrap()]).unwrap();
        let b = PresentedModule::cyclic(&c, &[c.parse("c^4").unwrap()]).unwrap();
        let h = hom_modules(&a, &b).unwrap();
        let total: usize = h.hilbert(w(-20, 20)).dims.iter().sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn torsion_examples() {
        let c = ring(&[("c", 2)]);
        let ideal = [c.var(0)];
        let m = PresentedModule::cyclic(&c, &[c.parse("c^2").unwrap()])
            .unwrap()
            .direct_sum(&PresentedModule::ring_module(&c))
            .unwrap();
        let t = torsion_submodule(&m, &ideal).unwrap();
        assert_eq!(
            t.hilbert(w(-2, 10)).dims,
            vec![0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]
        );
        let f = PresentedModule::free(&c, vec![0, 2]);
        assert!(torsion_submodule(&f, &ideal).unwrap().is_zero_module());
        let fl = PresentedModule::cyclic(&c, &[c.parse("c^3").unwrap()]).unwrap();
        assert_eq!(
            torsion_submodule(&fl, &ideal).unwrap().hilbert(w(0, 8)),
            fl.hilbert(w(0, 8))
        );
    }

    #[test]
    fn freeness() {
        let c = ring(&[("c", 2)]);
        assert_eq!(is_free(&PresentedModule::residue_field(&c)), (false, None));
        assert_eq!(
            is_free(&PresentedModule::free(&c, vec![4, 0])),
            (true, Some(vec![0, 4]))
        );
    }

    #[test]
    fn tensor_matches_extension_of_free() {
        let t = ring(&[("t1", 2), ("t2", 2)]);
        let m = PresentedModule::cyclic(&t, &[t.var(0)]).unwrap();
        let n = PresentedModule::cyclic(&t, &[t.var(1)]).unwrap();
        let x = tensor(&m, &n).unwrap();
        assert_eq!(x.hilbert(w(0, 6)).dims, vec![1, 0, 0, 0, 0, 0, 0]);
    }
}
