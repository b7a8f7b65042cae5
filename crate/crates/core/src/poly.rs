//! Graded polynomial rings over the rationals, ring maps, and the
//! polynomial text grammar.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, ParseError};
use crate::exact_linear::{fmt_rational, Rational};

/// Maximum number of ring generators supported by the monomial encoding.
pub const MAX_VARS: usize = 12;

/// Exponent vector. Slots past the ring's generator count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [u16; MAX_VARS]);

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

impl Mono {
    pub fn one() -> Self {
        Mono([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut m = Mono::one();
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Mono::one();
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        m
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let mut m = *other;
        for (a, b) in m.0.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        m
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut m = *self;
        for (a, b) in m.0.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        m
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u16) -> Mono {
        let mut m = *self;
        for a in m.0.iter_mut() {
            *a *= k;
        }
        m
    }
}

/// Polynomial ring over the rationals with positively graded generators.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedPolyRing {
    names: Vec<String>,
    degrees: Vec<i64>,
}

impl fmt::Debug for GradedPolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedPolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .names
            .iter()
            .zip(&self.degrees)
            .map(|(n, d)| format!("{n}:{d}"))
            .collect();
        write!(f, "Q[{}]", gens.join(", "))
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GradedPolyRing {
    /// Builds a ring whose generator degrees must all be even.
    pub fn new<S: Into<String>>(
        gens: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<Self, AlgebraError> {
        Self::build(gens, false)
    }

    /// Builds a ring, accepting odd-degree generators.
    pub fn new_allow_odd<S: Into<String>>(
        gens: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<Self, AlgebraError> {
        Self::build(gens, true)
    }

    fn build<S: Into<String>>(
        gens: impl IntoIterator<Item = (S, i64)>,
        allow_odd: bool,
    ) -> Result<Self, AlgebraError> {
        let (names, degrees): (Vec<String>, Vec<i64>) =
            gens.into_iter().map(|(n, d)| (n.into(), d)).unzip();
        if names.len() > MAX_VARS {
            return Err(AlgebraError::InvalidRing(format!(
                "at most {MAX_VARS} generators are supported"
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(AlgebraError::InvalidRing(format!(
                    "invalid generator name {n:?}"
                )));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::InvalidRing(format!(
                    "duplicate generator name {n:?}"
                )));
            }
        }
        for (n, &d) in names.iter().zip(&degrees) {
            if d < 1 {
                return Err(AlgebraError::InvalidRing(format!(
                    "generator {n} has nonpositive degree {d}"
                )));
            }
            if !allow_odd && d % 2 != 0 {
                return Err(AlgebraError::InvalidRing(format!(
                    "generator {n} has odd degree {d}"
                )));
            }
        }
        Ok(GradedPolyRing { names, degrees })
    }

    /// The ground field as a ring with no generators.
    pub fn rationals() -> Self {
        GradedPolyRing {
            names: Vec::new(),
            degrees: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mono_degree(&self, m: &Mono) -> i64 {
        self.degrees
            .iter()
            .zip(m.0.iter())
            .map(|(d, e)| d * *e as i64)
            .sum()
    }

    /// Sum of the generator degrees.
    pub fn degree_sum(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().min()
    }

    /// Weighted degree first, then reverse lexicographic: at the last
    /// differing exponent the smaller exponent is the larger monomial.
    pub fn cmp_degrevlex(&self, a: &Mono, b: &Mono) -> Ordering {
        self.mono_degree(a)
            .cmp(&self.mono_degree(b))
            .then_with(|| revlex(a, b, self.nvars()))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::monomial(Mono::var(i), Rational::one())
    }

    pub fn var_by_name(&self, name: &str) -> Option<Poly> {
        self.index_of(name).map(|i| self.var(i))
    }

    /// Monomials of weighted degree `n`, largest first in degrevlex.
    pub fn monomials_of_degree(&self, n: i64) -> Arc<Vec<Mono>> {
        static CACHE: OnceLock<Mutex<HashMap<(Vec<i64>, i64), Arc<Vec<Mono>>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (self.degrees.clone(), n);
        if let Some(v) = cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut out = Vec::new();
        if n >= 0 {
            let mut cur = Mono::one();
            enumerate(&self.degrees, 0, n, &mut cur, &mut out);
        }
        out.sort_by(|a, b| self.cmp_degrevlex(b, a));
        let out = Arc::new(out);
        cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Number of monomials of weighted degree `n`.
    pub fn dim_in_degree(&self, n: i64) -> usize {
        self.monomials_of_degree(n).len()
    }

    pub fn parse(&self, s: &str) -> Result<Poly, ParseError> {
        Parser::new(s, self).parse_expr()
    }
}

fn enumerate(degs: &[i64], i: usize, rem: i64, cur: &mut Mono, out: &mut Vec<Mono>) {
    if i == degs.len() {
        if rem == 0 {
            out.push(*cur);
        }
        return;
    }
    let d = degs[i];
    let mut e = 0;
    while e * d <= rem {
        cur.0[i] = e as u16;
        enumerate(degs, i + 1, rem - e * d, cur, out);
        e += 1;
    }
    cur.0[i] = 0;
}

/// Reverse lexicographic comparison of exponent vectors of equal degree.
pub fn revlex(a: &Mono, b: &Mono, nvars: usize) -> Ordering {
    for i in (0..nvars).rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

/// Polynomial with rational coefficients; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m, fmt_rational(c))))
            .finish()
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(Mono::one(), c)
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Mono::one())
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.mul(b), x * y);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `Some(d)` when every term has weighted degree `d`; `None` for the
    /// zero polynomial or an inhomogeneous one.
    pub fn homogeneous_degree(&self, ring: &GradedPolyRing) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| ring.mono_degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self, ring: &GradedPolyRing) -> bool {
        self.is_zero() || self.homogeneous_degree(ring).is_some()
    }

    /// Largest term in degrevlex order.
    pub fn leading(&self, ring: &GradedPolyRing) -> Option<(Mono, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ring.cmp_degrevlex(a.0, b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Renders with the ring's generator names, largest term first.
    pub fn display(&self, ring: &GradedPolyRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Mono, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| ring.cmp_degrevlex(b.0, a.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = (0..ring.nvars())
                .filter(|&v| m.0[v] > 0)
                .map(|v| {
                    if m.0[v] == 1 {
                        ring.names[v].clone()
                    } else {
                        format!("{}^{}", ring.names[v], m.0[v])
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&abs), factors.join("*")));
            }
        }
        out
    }

    /// Ring substitution: variable `i` is replaced by `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut powers: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((v, e))
                    .or_insert_with(|| images[v].pow(e as u32))
                    .clone();
                t = t.mul(&p);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        out
    }
}

/// Degree-preserving ring homomorphism `source -> target`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingMap {
    source: GradedPolyRing,
    target: GradedPolyRing,
    images: Vec<Poly>,
}

impl RingMap {
    pub fn new(
        source: GradedPolyRing,
        target: GradedPolyRing,
        images: Vec<Poly>,
    ) -> Result<Self, AlgebraError> {
        if images.len() != source.nvars() {
            return Err(AlgebraError::DegreeMismatch(format!(
                "ring map needs {} images, got {}",
                source.nvars(),
                images.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img
                .terms
                .keys()
                .any(|m| m.0[target.nvars()..].iter().any(|&e| e != 0))
            {
                return Err(AlgebraError::Invalid(format!(
                    "image of {} uses unknown variables",
                    source.names[i]
                )));
            }
            if img.is_zero() {
                continue;
            }
            match img.homogeneous_degree(&target) {
                Some(d) if d == source.degrees[i] => {}
                Some(d) => {
                    return Err(AlgebraError::DegreeMismatch(format!(
                        "image of {} has degree {d}, expected {}",
                        source.names[i], source.degrees[i]
                    )))
                }
                None => {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "image of {} is {}",
                        source.names[i],
                        img.display(&target)
                    )))
                }
            }
        }
        Ok(RingMap {
            source,
            target,
            images,
        })
    }

    /// Parses images given by source generator name.
    pub fn from_strings(
        source: GradedPolyRing,
        target: GradedPolyRing,
        images: &BTreeMap<String, String>,
    ) -> Result<Self, AlgebraError> {
        for k in images.keys() {
            if source.index_of(k).is_none() {
                return Err(AlgebraError::Invalid(format!(
                    "unknown source generator {k:?}"
                )));
            }
        }
        let mut polys = Vec::with_capacity(source.nvars());
        for name in source.names() {
            let img = match images.get(name) {
                Some(s) => target.parse(s)?,
                None => {
                    return Err(AlgebraError::Invalid(format!(
                        "missing image for generator {name:?}"
                    )))
                }
            };
            polys.push(img);
        }
        RingMap::new(source, target, polys)
    }

    pub fn identity(ring: &GradedPolyRing) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &GradedPolyRing {
        &self.source
    }

    pub fn target(&self) -> &GradedPolyRing {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        p.substitute(&self.images)
    }

    /// `self` followed by `next`: the composite `source -> next.target`.
    pub fn then(&self, next: &RingMap) -> Result<RingMap, AlgebraError> {
        if self.target != next.source {
            return Err(AlgebraError::Invalid("ring maps are not composable".into()));
        }
        let images = self.images.iter().map(|p| next.apply(p)).collect();
        RingMap::new(self.source.clone(), next.target.clone(), images)
    }

    /// Nonzero images, the generators of the extended ideal.
    pub fn nonzero_images(&self) -> Vec<Poly> {
        self.images
            .iter()
            .filter(|p| !p.is_zero())
            .cloned()
            .collect()
    }
}

/// Element of a graded free module, one polynomial per generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FreeElement {
    pub comps: Vec<Poly>,
}

impl FreeElement {
    pub fn zero(rank: usize) -> Self {
        FreeElement {
            comps: vec![Poly::zero(); rank],
        }
    }

    pub fn new(comps: Vec<Poly>) -> Self {
        FreeElement { comps }
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut e = FreeElement::zero(rank);
        e.comps[i] = Poly::one();
        e
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        FreeElement {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        FreeElement {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> FreeElement {
        FreeElement {
            comps: self.comps.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Degree of a homogeneous element in the free module whose generators
    /// have degrees `gen_degrees`. `Ok(None)` for the zero element.
    pub fn degree(
        &self,
        ring: &GradedPolyRing,
        gen_degrees: &[i64],
    ) -> Result<Option<i64>, AlgebraError> {
        let mut deg = None;
        for (p, e) in self.comps.iter().zip(gen_degrees) {
            if p.is_zero() {
                continue;
            }
            let d = p
                .homogeneous_degree(ring)
                .ok_or_else(|| AlgebraError::Inhomogeneous(p.display(ring)))?
                + e;
            match deg {
                None => deg = Some(d),
                Some(x) if x == d => {}
                Some(_) => {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "{:?}",
                        self.display(ring)
                    )))
                }
            }
        }
        Ok(deg)
    }

    pub fn display(&self, ring: &GradedPolyRing) -> Vec<String> {
        self.comps.iter().map(|p| p.display(ring)).collect()
    }

    pub fn map_ring(&self, theta: &RingMap) -> FreeElement {
        FreeElement {
            comps: self.comps.iter().map(|p| theta.apply(p)).collect(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a GradedPolyRing,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: &'a GradedPolyRing) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            ring,
        }
    }

    fn err(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.src.to_string(),
            position,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_expr(mut self) -> Result<Poly, ParseError> {
        let mut acc = Poly::zero();
        let mut sign = Rational::one();
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            if c == b'-' {
                sign = -sign;
            }
            self.pos += 1;
        }
        loop {
            let t = self.parse_term()?;
            acc = acc.add(&t.scale(&sign));
            match self.peek() {
                None => break,
                Some(b'+') => sign = Rational::one(),
                Some(b'-') => sign = -Rational::one(),
                Some(c) => {
                    return Err(self.err(self.pos, format!("unexpected character {:?}", c as char)))
                }
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => Poly::constant(self.parse_coeff()?),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.parse_factor()?,
            Some(c) => {
                return Err(self.err(self.pos, format!("expected a term, found {:?}", c as char)))
            }
            None => return Err(self.err(self.pos, "expected a term, found end of input")),
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    acc = acc.mul(&self.parse_factor()?)
                }
                Some(_) | None => {
                    return Err(self.err(self.pos, "expected a generator name after '*'"))
                }
            }
        }
        Ok(acc)
    }

    fn parse_uint(&mut self) -> Result<num_bigint::BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(start, "expected an integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn parse_coeff(&mut self) -> Result<Rational, ParseError> {
        let n = self.parse_uint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = {
                self.skip_ws();
                self.pos
            };
            let d = self.parse_uint()?;
            if d.is_zero() {
                return Err(self.err(at, "zero denominator"));
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    fn parse_factor(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        let var = self
            .ring
            .index_of(name)
            .ok_or_else(|| self.err(start, format!("unknown generator {name:?}")))?;
        let mut exp: u32 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = {
                self.skip_ws();
                self.pos
            };
            let e = self.parse_uint()?;
            exp = u32::try_from(&e)
                .ok()
                .filter(|&e| e >= 1 && e <= u16::MAX as u32)
                .ok_or_else(|| self.err(at, "exponent must be a positive integer"))?;
        }
        let mut m = Mono::one();
        m.0[var] = exp as u16;
        Ok(Poly::monomial(m, Rational::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::{q, q_frac};

    fn ring2() -> GradedPolyRing {
        GradedPolyRing::new([("t1", 2), ("t2", 2)]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let r = GradedPolyRing::new([("c1", 2), ("c2", 4)]).unwrap();
        let p = r.parse("c1^2 - 4*c2").unwrap();
        assert_eq!(p.coeff(&Mono::from_exps(&[2, 0])), q(1));
        assert_eq!(p.coeff(&Mono::from_exps(&[0, 1])), q(-4));
        assert_eq!(p.homogeneous_degree(&r), Some(4));
        let t = ring2();
        let p = t.parse("1/2*t1*t2").unwrap();
        assert_eq!(p.coeff(&Mono::from_exps(&[1, 1])), q_frac(1, 2));
        assert_eq!(t.parse(" - t1 + t2 ").unwrap(), t.var(1).sub(&t.var(0)));
        assert_eq!(t.parse("3").unwrap(), Poly::constant(q(3)));
    }

    #[test]
    fn parse_errors_carry_position() {
        let t = ring2();
        let e = t.parse("t1 + x").unwrap_err();
        assert_eq!(e.position, 5);
        let e = t.parse("t1 +").unwrap_err();
        assert_eq!(e.position, 4);
        let e = t.parse("t1^0").unwrap_err();
        assert_eq!(e.position, 3);
        assert!(t.parse("2*3").is_err());
        assert!(t.parse("1/0*t1").is_err());
    }

    #[test]
    fn display_round_trips() {
        let t = ring2();
        for s in ["t1^2 - 4*t2", "1/2*t1*t2 + 3", "-t2", "0"] {
            let p = t.parse(s).unwrap();
            assert_eq!(t.parse(&p.display(&t)).unwrap(), p);
        }
    }

    #[test]
    fn ring_validation() {
        assert!(GradedPolyRing::new([("x", 3)]).is_err());
        assert!(GradedPolyRing::new_allow_odd([("x", 3)]).is_ok());
        assert!(GradedPolyRing::new([("x", 2), ("x", 4)]).is_err());
        assert!(GradedPolyRing::new([("x", 0)]).is_err());
    }

    #[test]
    fn monomial_counts() {
        let t = ring2();
        assert_eq!(t.dim_in_degree(4), 3);
        assert_eq!(t.dim_in_degree(3), 0);
        let s = GradedPolyRing::new([("c2", 4), ("c3", 6)]).unwrap();
        assert_eq!(s.dim_in_degree(12), 2);
        let ms = t.monomials_of_degree(4);
        assert_eq!(ms[0], Mono::from_exps(&[2, 0]));
        assert_eq!(ms[2], Mono::from_exps(&[0, 2]));
    }

    #[test]
    fn ring_map_checks_degrees_and_composes() {
        let s = GradedPolyRing::new([("c1", 2), ("c2", 4)]).unwrap();
        let t = ring2();
        let th = RingMap::new(
            s.clone(),
            t.clone(),
            vec![t.parse("t1+t2").unwrap(), t.parse("t1*t2").unwrap()],
        )
        .unwrap();
        assert_eq!(
            th.apply(&s.parse("c1^2 - 4*c2").unwrap()),
            t.parse("t1^2 - 2*t1*t2 + t2^2").unwrap()
        );
        assert!(RingMap::new(
            s.clone(),
            t.clone(),
            vec![t.parse("t1*t2").unwrap(), Poly::zero()]
        )
        .is_err());
        let id = RingMap::identity(&t);
        assert_eq!(th.then(&id).unwrap(), th);
    }
}
