//! Minimal free resolutions, Ext and Tor, the relative dualizing module and
//! Gorenstein shifts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::exact_linear::RatMatrix;
use crate::groebner::{
    minimal_generating_subset, sort_vector, vector_from_free, vector_to_free, Ambient, Lifter,
    Term, TermOrder, Vector,
};
use crate::modules::{restriction, DegreeWindow, GradedPieces, PresentedModule};
use crate::poly::{FreeElement, GradedPolyRing, Mono, Poly, RingMap};

/// Free resolution `... -> F_1 -> F_0 -> M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    pub ring: GradedPolyRing,
    /// Generator degrees of `F_0, F_1, ...`.
    pub modules: Vec<Vec<i64>>,
    /// `differentials[i - 1]` lists the images of the generators of `F_i`
    /// in `F_{i-1}`.
    pub differentials: Vec<Vec<FreeElement>>,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.modules
            .iter()
            .rposition(|f| !f.is_empty())
            .unwrap_or(0)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.modules.iter().map(|f| f.len()).collect()
    }

    /// Entry of `d_i` from generator `g` of `F_i` to generator `h` of
    /// `F_{i-1}`.
    pub fn entry(&self, i: usize, h: usize, g: usize) -> &Poly {
        &self.differentials[i - 1][g].comps[h]
    }

    /// `d_{i-1} ∘ d_i = 0` for every `i`.
    pub fn d_squared_zero(&self) -> bool {
        for i in 2..=self.differentials.len() {
            for col in &self.differentials[i - 1] {
                let mut acc = FreeElement::zero(self.modules[i - 2].len());
                for (h, a) in col.comps.iter().enumerate() {
                    if !a.is_zero() {
                        acc = acc.add(&self.differentials[i - 2][h].scale_poly(a));
                    }
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No differential entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().flatten().all(|c| {
            c.comps
                .iter()
                .all(|p| p.constant_term() == num_traits::Zero::zero())
        })
    }

    /// `sum_i (-1)^i dim (F_i)_n`.
    pub fn euler_characteristic(&self, n: i64) -> i64 {
        self.modules
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let d: i64 = f
                    .iter()
                    .map(|e| self.ring.dim_in_degree(n - e) as i64)
                    .sum();
                if i % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }
}

/// Minimal free resolution of the minimized presentation of `m`.
pub fn minimal_free_resolution(
    m: &PresentedModule,
    max_len: usize,
) -> Result<FreeResolution, AlgebraError> {
    resolve_presentation(&m.minimize(), max_len)
}

/// Resolution starting from the given generators of `m` (which should
/// carry no unit relation entries for the result to be minimal).
pub fn resolve_presentation(
    m: &PresentedModule,
    max_len: usize,
) -> Result<FreeResolution, AlgebraError> {
    let ring = m.ring().clone();
    let order = TermOrder::pot(&ring);
    let m = m.minimize_relations();
    let mut modules = vec![m.gen_degrees().to_vec()];
    let mut differentials: Vec<Vec<FreeElement>> = Vec::new();
    let mut cols: Vec<FreeElement> = m.relations().to_vec();
    let mut col_degs: Vec<i64> = m
        .relation_degrees()
        .into_iter()
        .map(|d| d.expect("minimized relations are nonzero"))
        .collect();
    while !cols.is_empty() {
        if differentials.len() >= max_len {
            return Err(AlgebraError::ResolutionTooLong(max_len));
        }
        let prev = modules.last().unwrap().clone();
        let amb = Ambient {
            ring: ring.clone(),
            shifts: prev,
        };
        let vecs: Vec<Vector> = cols.iter().map(|c| vector_from_free(c, &order)).collect();
        let syz = Lifter::new(&amb, &vecs, &col_degs)?.syzygies();
        let next_amb = Ambient {
            ring: ring.clone(),
            shifts: col_degs.clone(),
        };
        let keep = minimal_generating_subset(&next_amb, &syz, &order)?;
        let next_cols: Vec<FreeElement> = keep
            .iter()
            .map(|&k| vector_to_free(&syz[k], cols.len()))
            .collect();
        let next_degs: Vec<i64> = keep
            .iter()
            .map(|&k| {
                next_amb
                    .vector_degree(&syz[k])
                    .unwrap()
                    .expect("nonzero syzygy")
            })
            .collect();
        modules.push(col_degs);
        differentials.push(cols);
        cols = next_cols;
        col_degs = next_degs;
    }
    Ok(FreeResolution {
        ring,
        modules,
        differentials,
    })
}

/// Dimensions indexed by homological degree and internal degree, with the
/// total-degree convention `s = offset + hom_sign * i - d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedTable {
    pub window: DegreeWindow,
    /// `rows[i][d - window.lo]`.
    pub rows: Vec<Vec<usize>>,
    pub hom_sign: i64,
    pub offset: i64,
}

impl BigradedTable {
    pub fn new(window: DegreeWindow, max_i: usize, hom_sign: i64, offset: i64) -> Self {
        BigradedTable {
            window,
            rows: vec![vec![0; window.len()]; max_i + 1],
            hom_sign,
            offset,
        }
    }

    pub fn get(&self, i: usize, d: i64) -> usize {
        if !self.window.contains(d) {
            return 0;
        }
        self.rows
            .get(i)
            .map_or(0, |r| r[(d - self.window.lo) as usize])
    }

    pub fn set(&mut self, i: usize, d: i64, v: usize) {
        let lo = self.window.lo;
        self.rows[i][(d - lo) as usize] = v;
    }

    pub fn max_i(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn total_degree(&self, i: usize, d: i64) -> i64 {
        self.offset + self.hom_sign * i as i64 - d
    }

    /// Homological degrees carrying a nonzero entry.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&i| self.rows[i].iter().any(|&v| v > 0))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_rows().is_empty()
    }

    /// Total-degree dimensions, only for totals whose every contributing
    /// internal degree lies in the window.
    pub fn collapse_to_total(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let n = self.rows.len() as i64;
        let spread = |i: i64| self.offset + self.hom_sign * i;
        let s_lo = (0..n)
            .map(|i| spread(i) - self.window.lo)
            .min()
            .unwrap_or(0);
        let s_hi = (0..n)
            .map(|i| spread(i) - self.window.hi)
            .max()
            .unwrap_or(0);
        for s in s_hi.min(s_lo)..=s_lo.max(s_hi) {
            let mut total = 0;
            let mut covered = true;
            for i in 0..n {
                let d = spread(i) - s;
                if !self.window.contains(d) {
                    covered = false;
                    break;
                }
                total += self.rows[i as usize][(d - self.window.lo) as usize];
            }
            if covered {
                out.insert(s, total);
            }
        }
        out
    }
}

pub(crate) fn block_matrix(
    pieces: &mut GradedPieces<'_>,
    src: &[i64],
    tgt: &[i64],
    entries: &[(usize, usize, Poly, i64)],
) -> RatMatrix {
    let src_dims: Vec<usize> = src.iter().map(|&n| pieces.dim(n)).collect();
    let tgt_dims: Vec<usize> = tgt.iter().map(|&n| pieces.dim(n)).collect();
    let offsets = |dims: &[usize]| -> Vec<usize> {
        let mut o = vec![0; dims.len() + 1];
        for (i, d) in dims.iter().enumerate() {
            o[i + 1] = o[i] + d;
        }
        o
    };
    let so = offsets(&src_dims);
    let to = offsets(&tgt_dims);
    let mut trip = Vec::new();
    for (s, t, p, deg) in entries {
        if p.is_zero() || src_dims[*s] == 0 || tgt_dims[*t] == 0 {
            continue;
        }
        let m = pieces.mult_matrix(p, *deg, src[*s]);
        for r in 0..m.rows() {
            for (c, v) in m.row(r) {
                trip.push((to[*t] + r, so[*s] + c, v.clone()));
            }
        }
    }
    RatMatrix::from_triples(*to.last().unwrap(), *so.last().unwrap(), trip)
}

/// Entries of `d_i` as `(generator of F_i, generator of F_{i-1}, poly,
/// degree)`.
fn diff_entries(res: &FreeResolution, i: usize) -> Vec<(usize, usize, Poly, i64)> {
    let mut out = Vec::new();
    for (g, col) in res.differentials[i - 1].iter().enumerate() {
        for (h, a) in col.comps.iter().enumerate() {
            if !a.is_zero() {
                out.push((g, h, a.clone(), res.modules[i][g] - res.modules[i - 1][h]));
            }
        }
    }
    out
}

/// `Ext^i(M, N)_d` from a given resolution of `M`.
pub fn ext_from_resolution(
    res: &FreeResolution,
    n: &PresentedModule,
    window: DegreeWindow,
) -> BigradedTable {
    let len = res.modules.len();
    let mut table = BigradedTable::new(window, len.saturating_sub(1), -1, 0);
    let mut pieces = n.pieces();
    let entries: Vec<Vec<(usize, usize, Poly, i64)>> =
        (1..len).map(|i| diff_entries(res, i)).collect();
    for d in window.degrees() {
        let slots: Vec<Vec<i64>> = res
            .modules
            .iter()
            .map(|f| f.iter().map(|e| e + d).collect())
            .collect();
        let dims: Vec<usize> = slots
            .iter()
            .map(|s| s.iter().map(|&x| pieces.dim(x)).sum())
            .collect();
        // delta^i : Hom(F_{i-1}, N) -> Hom(F_i, N).
        let mut ranks = vec![0usize; len + 1];
        for i in 1..len {
            let e: Vec<(usize, usize, Poly, i64)> = entries[i - 1]
                .iter()
                .map(|(g, h, p, deg)| (*h, *g, p.clone(), *deg))
                .collect();
            ranks[i] = block_matrix(&mut pieces, &slots[i - 1], &slots[i], &e).rank();
        }
        for i in 0..len {
            table.set(i, d, dims[i] - ranks[i + 1] - ranks[i]);
        }
    }
    table
}

/// `Tor_i(M, N)_d` from a given resolution of `M`.
pub fn tor_from_resolution(
    res: &FreeResolution,
    n: &PresentedModule,
    window: DegreeWindow,
) -> BigradedTable {
    let len = res.modules.len();
    let mut table = BigradedTable::new(window, len.saturating_sub(1), 1, 0);
    let mut pieces = n.pieces();
    let entries: Vec<Vec<(usize, usize, Poly, i64)>> =
        (1..len).map(|i| diff_entries(res, i)).collect();
    for d in window.degrees() {
        let slots: Vec<Vec<i64>> = res
            .modules
            .iter()
            .map(|f| f.iter().map(|e| d - e).collect())
            .collect();
        let dims: Vec<usize> = slots
            .iter()
            .map(|s| s.iter().map(|&x| pieces.dim(x)).sum())
            .collect();
        // partial_i : F_i ⊗ N -> F_{i-1} ⊗ N.
        let mut ranks = vec![0usize; len + 1];
        for i in 1..len {
            ranks[i] = block_matrix(&mut pieces, &slots[i], &slots[i - 1], &entries[i - 1]).rank();
        }
        for i in 0..len {
            table.set(i, d, dims[i] - ranks[i] - ranks[i + 1]);
        }
    }
    table
}

fn check_same_ring(m: &PresentedModule, n: &PresentedModule) -> Result<(), AlgebraError> {
    if m.ring() != n.ring() {
        return Err(AlgebraError::Invalid("modules over different rings".into()));
    }
    Ok(())
}

pub fn ext_table(
    m: &PresentedModule,
    n: &PresentedModule,
    window: DegreeWindow,
) -> Result<BigradedTable, AlgebraError> {
    check_same_ring(m, n)?;
    let res = minimal_free_resolution(m, m.ring().nvars() + 1)?;
    Ok(ext_from_resolution(&res, n, window))
}

pub fn tor_table(
    m: &PresentedModule,
    n: &PresentedModule,
    window: DegreeWindow,
) -> Result<BigradedTable, AlgebraError> {
    check_same_ring(m, n)?;
    let res = minimal_free_resolution(m, m.ring().nvars() + 1)?;
    Ok(tor_from_resolution(&res, n, window))
}

/// One nonzero cohomology module of the dualizing complex.
#[derive(Clone, Debug)]
pub struct DualizingComponent {
    pub degree: usize,
    /// The module over the source ring.
    pub over_source: PresentedModule,
    /// The same module with its action of the target ring, minimized.
    pub over_target: PresentedModule,
}

/// `Ext_S^*(R, S)` with its `R`-module structure.
#[derive(Clone, Debug)]
pub struct DualizingModule {
    pub theta: RingMap,
    pub resolution: FreeResolution,
    pub components: Vec<DualizingComponent>,
}

impl DualizingModule {
    pub fn nonzero_degrees(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.degree).collect()
    }

    /// Dimension table, total degree `s = -d - i`.
    pub fn table(&self, window: DegreeWindow) -> BigradedTable {
        let max_i = self.resolution.modules.len().saturating_sub(1);
        let mut t = BigradedTable::new(window, max_i, -1, 0);
        for c in &self.components {
            for d in window.degrees() {
                t.set(c.degree, d, c.over_source.dim(d));
            }
        }
        t
    }

    /// The unique nonzero component, or the list of degrees found.
    pub fn concentrated(&self) -> Result<&DualizingComponent, AlgebraError> {
        match self.components.as_slice() {
            [c] => Ok(c),
            _ => Err(AlgebraError::NotConcentrated(self.nonzero_degrees())),
        }
    }
}

fn dual_vector(entries: &[(usize, Poly)], order: &TermOrder) -> Vector {
    let mut v: Vector = entries
        .iter()
        .flat_map(|(g, p)| {
            p.terms().map(move |(m, c)| {
                (
                    Term {
                        pos: *g as u32,
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

/// Relative dualizing module of `theta: S -> R`.
pub fn dualizing_module(theta: &RingMap) -> Result<DualizingModule, AlgebraError> {
    let s = theta.source().clone();
    let r = theta.target().clone();
    let order = TermOrder::pot(&s);
    let rmod = PresentedModule::ring_module(&r);
    let rest = restriction(theta, &rmod)?;
    let res = resolve_presentation(&rest.module, s.nvars() + 1)?;
    let len = res.modules.len();
    // Chain lifts of multiplication by each generator of R.
    let mut lifts: Vec<Vec<Vec<FreeElement>>> = Vec::new();
    let lifters: Vec<Lifter> = (1..len)
        .map(|i| {
            let amb = Ambient {
                ring: s.clone(),
                shifts: res.modules[i - 1].clone(),
            };
            let vecs: Vec<Vector> = res.differentials[i - 1]
                .iter()
                .map(|c| vector_from_free(c, &order))
                .collect();
            Lifter::new(&amb, &vecs, &res.modules[i])
        })
        .collect::<Result<_, _>>()?;
    for j in 0..r.nvars() {
        let y = r.var(j);
        let mut mu: Vec<Vec<FreeElement>> = Vec::new();
        let mut mu0 = Vec::new();
        for (b, _) in &rest.basis {
            let e = FreeElement::new(vec![y.mul(&Poly::monomial(*b, num_traits::One::one()))]);
            mu0.push(rest.express(&e)?);
        }
        mu.push(mu0);
        for i in 1..len {
            let mut mui = Vec::new();
            for col in &res.differentials[i - 1] {
                let prev = &mu[i - 1];
                let mut w = FreeElement::zero(res.modules[i - 1].len());
                for (h, a) in col.comps.iter().enumerate() {
                    if !a.is_zero() {
                        w = w.add(&prev[h].scale_poly(a));
                    }
                }
                let c = lifters[i - 1]
                    .lift(&vector_from_free(&w, &order))
                    .ok_or_else(|| AlgebraError::Invalid("chain lift failed".into()))?;
                mui.push(vector_to_free(&c, res.modules[i].len()));
            }
            mu.push(mui);
        }
        lifts.push(mu);
    }
    let mut components = Vec::new();
    for i in 0..len {
        let dual_degs: Vec<i64> = res.modules[i].iter().map(|e| -e).collect();
        let amb_i = Ambient {
            ring: s.clone(),
            shifts: dual_degs.clone(),
        };
        // Cocycles: kernel of d_{i+1}^T.
        let (kernel, kernel_degs): (Vec<Vector>, Vec<i64>) = if i + 1 < len {
            let next_degs: Vec<i64> = res.modules[i + 1].iter().map(|e| -e).collect();
            let amb_next = Ambient {
                ring: s.clone(),
                shifts: next_degs,
            };
            let images: Vec<Vector> = (0..res.modules[i].len())
                .map(|h| {
                    let entries: Vec<(usize, Poly)> = res.differentials[i]
                        .iter()
                        .enumerate()
                        .map(|(g, col)| (g, col.comps[h].clone()))
                        .collect();
                    dual_vector(&entries, &order)
                })
                .collect();
            let syz = Lifter::new(&amb_next, &images, &dual_degs)?.syzygies();
            let degs = syz
                .iter()
                .map(|v| amb_i.vector_degree(v).unwrap().unwrap())
                .collect();
            (syz, degs)
        } else {
            (
                (0..dual_degs.len())
                    .map(|g| {
                        vec![(
                            Term {
                                pos: g as u32,
                                mono: Mono::one(),
                            },
                            num_traits::One::one(),
                        )]
                    })
                    .collect(),
                dual_degs.clone(),
            )
        };
        // Coboundaries: image of d_i^T.
        let image: Vec<Vector> = if i >= 1 {
            (0..res.modules[i - 1].len())
                .map(|h| {
                    let entries: Vec<(usize, Poly)> = res.differentials[i - 1]
                        .iter()
                        .enumerate()
                        .map(|(g, col)| (g, col.comps[h].clone()))
                        .collect();
                    dual_vector(&entries, &order)
                })
                .collect()
        } else {
            Vec::new()
        };
        let lifter = Lifter::modulo(&amb_i, &kernel, &kernel_degs, &image)?;
        let s_rels: Vec<FreeElement> = lifter
            .syzygies()
            .iter()
            .map(|v| vector_to_free(v, kernel.len()))
            .collect();
        let over_source = PresentedModule::new(s.clone(), kernel_degs.clone(), s_rels.clone())?;
        if over_source.is_zero_module() {
            continue;
        }
        let mut r_rels: Vec<FreeElement> = s_rels.iter().map(|e| e.map_ring(theta)).collect();
        for (j, mu) in lifts.iter().enumerate() {
            for (mi, k) in kernel.iter().enumerate() {
                // Transpose of mu_i applied to the cocycle k.
                let mut entries: BTreeMap<usize, Poly> = BTreeMap::new();
                for (t, c) in k {
                    let gp = t.pos as usize;
                    let coeff = Poly::monomial(t.mono, c.clone());
                    for (g, img) in mu[i].iter().enumerate() {
                        let a = &img.comps[gp];
                        if !a.is_zero() {
                            let e = entries.entry(g).or_default();
                            *e = e.add(&a.mul(&coeff));
                        }
                    }
                }
                let entries: Vec<(usize, Poly)> = entries.into_iter().collect();
                let v = dual_vector(&entries, &order);
                let q = lifter.lift(&v).ok_or_else(|| {
                    AlgebraError::Invalid("action does not preserve cocycles".into())
                })?;
                let q = vector_to_free(&q, kernel.len()).map_ring(theta);
                let mut rel = q.scale_poly(&Poly::constant(-crate::exact_linear::q(1)));
                rel.comps[mi] = rel.comps[mi].add(&r.var(j));
                r_rels.push(rel);
            }
        }
        let over_target = PresentedModule::new(r.clone(), kernel_degs, r_rels)?.minimize();
        components.push(DualizingComponent {
            degree: i,
            over_source: over_source.minimize(),
            over_target,
        });
    }
    Ok(DualizingModule {
        theta: theta.clone(),
        resolution: res,
        components,
    })
}

/// Result of the Gorenstein test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub source: String,
    pub target: String,
    /// Homological degrees where the dualizing module is nonzero.
    pub nonzero_degrees: Vec<usize>,
    pub cyclic: bool,
    /// Internal degree of the cyclic generator, when cyclic.
    pub generator_degree: Option<i64>,
    pub detected: Option<i64>,
    pub expected: Option<i64>,
    pub matches: bool,
}

pub fn gorenstein_from_dualizing(d: &DualizingModule, expected: Option<i64>) -> GorensteinReport {
    let nonzero = d.nonzero_degrees();
    let (mut cyclic, mut gen_deg, mut detected) = (false, None, None);
    if let [c] = d.components.as_slice() {
        let m = &c.over_target;
        cyclic = m.rank() == 1;
        if cyclic {
            gen_deg = Some(m.gen_degrees()[0]);
            if m.relations().is_empty() {
                detected = Some(-m.gen_degrees()[0] - c.degree as i64);
            }
        }
    }
    let matches = match (detected, expected) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    };
    GorensteinReport {
        source: d.theta.source().to_string(),
        target: d.theta.target().to_string(),
        nonzero_degrees: nonzero,
        cyclic,
        generator_degree: gen_deg,
        detected,
        expected,
        matches,
    }
}

pub fn gorenstein_shift(
    theta: &RingMap,
    expected: Option<i64>,
) -> Result<GorensteinReport, AlgebraError> {
    Ok(gorenstein_from_dualizing(
        &dualizing_module(theta)?,
        expected,
    ))
}

/// The four functors twisted by the dualizing module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Twisted {
    /// `D ⊗_R M` for an `R`-module `M`.
    Dagger,
    /// `Hom_S(D, N)` for an `S`-module `N`.
    LowerStar,
    /// `D ⊗_S N` for an `S`-module `N`.
    LowerShriek,
    /// `Hom_R(D, M)` for an `R`-module `M`.
    UpperShriek,
}

pub fn twisted_functors(
    theta: &RingMap,
    m: &PresentedModule,
    which: Twisted,
    window: DegreeWindow,
) -> Result<BigradedTable, AlgebraError> {
    twisted_from_dualizing(&dualizing_module(theta)?, m, which, window)
}

pub fn twisted_from_dualizing(
    d: &DualizingModule,
    m: &PresentedModule,
    which: Twisted,
    window: DegreeWindow,
) -> Result<BigradedTable, AlgebraError> {
    let c = d.concentrated()?;
    let i0 = c.degree as i64;
    let mut t = match which {
        Twisted::Dagger => tor_table(&c.over_target, m, window)?,
        Twisted::LowerStar => ext_table(&c.over_source, m, window)?,
        Twisted::LowerShriek => tor_table(&c.over_source, m, window)?,
        Twisted::UpperShriek => ext_table(&c.over_target, m, window)?,
    };
    t.offset = if t.hom_sign > 0 { -i0 } else { i0 };
    Ok(t)
}

/// Outcome of comparing `Tor(R, M)` with `Ext(R, M)` shifted by `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftIsoReport {
    pub shift: i64,
    pub compared: usize,
    pub mismatches: Vec<(i64, usize, usize)>,
    pub passed: bool,
}

/// Compares total-degree dimensions of `R ⊗^L_S M` and `RHom_S(R, M)`.
pub fn shift_iso_check(
    theta: &RingMap,
    m: &PresentedModule,
    window: DegreeWindow,
) -> Result<ShiftIsoReport, AlgebraError> {
    let report = gorenstein_shift(theta, None)?;
    let a = report.detected.ok_or_else(|| {
        AlgebraError::NotGorenstein(format!(
            "dualizing module in degrees {:?}",
            report.nonzero_degrees
        ))
    })?;
    shift_iso_with(theta, m, window, a)
}

pub fn shift_iso_with(
    theta: &RingMap,
    m: &PresentedModule,
    window: DegreeWindow,
    a: i64,
) -> Result<ShiftIsoReport, AlgebraError> {
    let p = restriction(theta, &PresentedModule::ring_module(theta.target()))?.module;
    let res = resolve_presentation(&p, theta.source().nvars() + 1)?;
    let tor = tor_from_resolution(&res, m, window).collapse_to_total();
    let ext = ext_from_resolution(&res, m, window).collapse_to_total();
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for (s, &x) in &tor {
        if let Some(&y) = ext.get(&(s + a)) {
            compared += 1;
            if x != y {
                mismatches.push((*s, x, y));
            }
        }
    }
    let passed = mismatches.is_empty() && compared > 0;
    Ok(ShiftIsoReport {
        shift: a,
        compared,
        mismatches,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: &[(&str, i64)]) -> GradedPolyRing {
        GradedPolyRing::new(spec.iter().map(|(n, d)| (n.to_string(), *d))).unwrap()
    }

    #[test]
    fn residue_field_resolutions() {
        let s = ring(&[("c", 2)]);
        let res = minimal_free_resolution(&PresentedModule::residue_field(&s), 4).unwrap();
        assert_eq!(res.modules, vec![vec![0], vec![2]]);
        let t = ring(&[("t1", 2), ("t2", 2)]);
        let res = minimal_free_resolution(&PresentedModule::residue_field(&t), 4).unwrap();
        assert_eq!(res.betti(), vec![1, 2, 1]);
        assert!(res.d_squared_zero() && res.is_minimal());
        let c = ring(&[("c2", 4), ("c3", 6)]);
        let m = PresentedModule::cyclic(&c, &[c.var(1)]).unwrap();
        let res = minimal_free_resolution(&m, 4).unwrap();
        assert_eq!(res.modules, vec![vec![0], vec![6]]);
    }

    #[test]
    fn ext_into_polynomial_ring_is_suspended_field() {
        let s = ring(&[("c", 2)]);
        let w = DegreeWindow::new(-10, 10).unwrap();
        let t = ext_table(
            &PresentedModule::residue_field(&s),
            &PresentedModule::ring_module(&s),
            w,
        )
        .unwrap();
        assert!(t.rows[0].iter().all(|&x| x == 0));
        assert_eq!(t.get(1, -2), 1);
        assert_eq!(t.rows[1].iter().sum::<usize>(), 1);
        assert_eq!(t.total_degree(1, -2), 1);
        let c = ring(&[("c2", 4), ("c3", 6)]);
        let m = PresentedModule::cyclic(&c, &[c.var(1)]).unwrap();
        let t = ext_table(
            &m,
            &PresentedModule::ring_module(&c),
            DegreeWindow::new(-6, -6).unwrap(),
        )
        .unwrap();
        assert_eq!(t.get(1, -6), 1);
        assert_eq!(t.total_degree(1, -6), 5);
    }

    #[test]
    fn tor_of_field() {
        let s = ring(&[("c", 2)]);
        let k = PresentedModule::residue_field(&s);
        let t = tor_table(&k, &k, DegreeWindow::new(-4, 6).unwrap()).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(1, 2), 1);
        let total: usize = t.rows.iter().flatten().sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn gorenstein_examples() {
        let s = ring(&[("c", 2)]);
        let q = GradedPolyRing::rationals();
        let th = RingMap::new(s.clone(), q, vec![Poly::zero()]).unwrap();
        assert_eq!(gorenstein_shift(&th, Some(1)).unwrap().detected, Some(1));
        let big = ring(&[("c2", 4), ("c3", 6)]);
        let small = ring(&[("c2", 4)]);
        let th = RingMap::new(big, small.clone(), vec![small.var(0), Poly::zero()]).unwrap();
        let rep = gorenstein_shift(&th, Some(5)).unwrap();
        assert_eq!(rep.nonzero_degrees, vec![1]);
        assert_eq!(rep.generator_degree, Some(-6));
        assert_eq!(rep.detected, Some(5));
        let u2 = ring(&[("c1", 2), ("c2", 4)]);
        let t2 = ring(&[("t1", 2), ("t2", 2)]);
        let th = RingMap::new(
            u2,
            t2.clone(),
            vec![t2.parse("t1+t2").unwrap(), t2.parse("t1*t2").unwrap()],
        )
        .unwrap();
        let rep = gorenstein_shift(&th, Some(2)).unwrap();
        assert_eq!(rep.nonzero_degrees, vec![0]);
        assert_eq!(rep.generator_degree, Some(-2));
        assert!(rep.matches);
        let id = RingMap::identity(&t2);
        assert_eq!(gorenstein_shift(&id, None).unwrap().detected, Some(0));
    }
}
