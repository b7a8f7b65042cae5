//! Exact rational linear algebra.
//!
//! Matrices are stored sparsely by rows. Small matrices (both dimensions at
//! most [`DENSE_THRESHOLD`]) are reduced with a dense kernel, larger ones with
//! an incremental sparse echelon form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator by `num_rational`.
pub type Rational = BigRational;

/// Matrices with both dimensions at most this size are row reduced densely.
pub const DENSE_THRESHOLD: usize = 64;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A sparse row vector: strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(usize, Rational)>;

/// Sparse rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Rational::one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples. Later triples on
    /// the same cell are added to earlier ones; zeros are dropped.
    pub fn from_triples(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(
                r < rows && c < cols,
                "matrix index ({r},{c}) out of range {rows}x{cols}"
            );
            let e = acc[r].entry(c).or_insert_with(Rational::zero);
            *e += v;
        }
        let data = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        RatMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_sparse_rows(cols: usize, data: Vec<SparseRow>) -> Self {
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(data
            .iter()
            .all(|r| r.iter().all(|(c, v)| *c < cols && !v.is_zero())));
        RatMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseRow {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                }
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        RatMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (c, v)| acc + v * &x[*c])
            })
            .collect()
    }

    /// Stacks the rows of `self` above the rows of `other`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other`'s columns to the right of `self`'s.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                row
            })
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                d[r][*c] = v.clone();
            }
        }
        d
    }

    fn is_small(&self) -> bool {
        self.rows <= DENSE_THRESHOLD && self.cols <= DENSE_THRESHOLD
    }

    pub fn rank(&self) -> usize {
        if self.is_small() {
            dense_rref(self.to_dense()).1.len()
        } else {
            self.components()
                .iter()
                .map(|rows| integer_rank(rows.iter().map(|&r| &self.data[r])))
                .sum()
        }
    }

    /// Rows grouped by connected component of the row/column incidence
    /// graph, so that the matrix is block diagonal up to permutation.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.cols).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for row in &self.data {
            if let Some((first, _)) = row.first() {
                let a = find(&mut parent, *first);
                for (c, _) in &row[1..] {
                    let b = find(&mut parent, *c);
                    parent[b] = a;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (r, row) in self.data.iter().enumerate() {
            if let Some((c, _)) = row.first() {
                let root = find(&mut parent, *c);
                groups.entry(root).or_default().push(r);
            }
        }
        groups.into_values().collect()
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn integer_row(row: &SparseRow) -> IntRow {
    let l = row
        .iter()
        .fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&l / v.denom())))
        .collect()
}

fn make_primitive(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `b·row - a·pivot` scaled so the leading entries cancel.
fn cancel_lead(row: &IntRow, pivot: &IntRow) -> IntRow {
    let (a, b) = (&row[0].1, &pivot[0].1);
    let g = a.gcd(b);
    let (ca, cb) = (b / &g, a / &g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            out.push((row[i].0, &ca * &row[i].1));
            i += 1;
        } else if i == row.len() || pivot[j].0 < row[i].0 {
            out.push((pivot[j].0, -(&cb * &pivot[j].1)));
            j += 1;
        } else {
            let v = &ca * &row[i].1 - &cb * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank by fraction-free elimination over the integers after clearing
/// denominators row by row.
fn integer_rank<'a>(rows: impl Iterator<Item = &'a SparseRow>) -> usize {
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    let mut order: Vec<&SparseRow> = rows.collect();
    order.sort_by_key(|r| r.len());
    for r in order {
        let mut row = integer_row(r);
        make_primitive(&mut row);
        while let Some(p) = row.first().and_then(|(c, _)| pivots.get(c)) {
            row = cancel_lead(&row, p);
            make_primitive(&mut row);
        }
        if let Some((c, _)) = row.first() {
            pivots.insert(*c, row);
        }
    }
    pivots.len()
}

/// Reduced row echelon form together with the (strictly increasing) pivot
/// columns. Zero rows are kept at the bottom so the shape is unchanged.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let (rows, pivots) = if m.is_small() {
        let (d, p) = dense_rref(m.to_dense());
        let rows: Vec<SparseRow> = d
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        (rows, p)
    } else {
        sparse_rref(m)
    };
    (
        RatMatrix {
            rows: m.rows,
            cols: m.cols,
            data: rows,
        },
        pivots,
    )
}

fn dense_rref(mut a: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    if !a[r][j].is_zero() {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn sparse_rref(m: &RatMatrix) -> (Vec<SparseRow>, Vec<usize>) {
    let mut ech = Echelon::new(m.cols);
    for row in &m.data {
        ech.insert(row.clone());
    }
    let reduced = ech.into_reduced();
    let pivots: Vec<usize> = reduced.iter().map(|r| r[0].0).collect();
    let mut rows = reduced;
    rows.resize(m.rows, Vec::new());
    (rows, pivots)
}

/// `a + f * b` for sparse rows.
pub fn axpy(a: &SparseRow, f: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row echelon form. Each stored row is monic at its
/// leading column and no two stored rows share a leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots (leading entries only).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((lead, coeff)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&lead) else {
                break;
            };
            row = axpy(&row, &(-coeff), p);
        }
        // Continue past a non-pivot leading entry.
        let mut out: SparseRow = Vec::new();
        loop {
            let Some(pos) = row.iter().position(|(c, _)| self.pivots.contains_key(c)) else {
                out.extend(row);
                break;
            };
            out.extend(row.drain(..pos));
            let (c, v) = row[0].clone();
            row = axpy(&row, &(-v), &self.pivots[&c]);
        }
        out
    }

    /// Inserts a row; returns `true` when it was linearly independent of the
    /// rows already present.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = row;
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &(-coeff), p),
                None => {
                    if !coeff.is_one() {
                        let inv = coeff.recip();
                        for (_, v) in row.iter_mut() {
                            *v *= &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Fully reduced rows in increasing pivot order.
    pub fn into_reduced(self) -> Vec<SparseRow> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        // Back substitution from the last pivot upward.
        for &c in cols.iter().rev() {
            let mut row = self.pivots[&c].clone();
            let mut k = 1;
            while k < row.len() {
                let col = row[k].0;
                if let Some(p) = done.get(&col) {
                    let f = -row[k].1.clone();
                    row = axpy(&row, &f, p);
                } else {
                    k += 1;
                }
            }
            done.insert(c, row);
        }
        done.into_values().collect()
    }
}

/// Basis of the right kernel `{x : m x = 0}` as dense column vectors. The
/// basis vector for free column `f` has a 1 in position `f`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            let val = r.get(i, free);
            if !val.is_zero() {
                v[p] = -val;
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `m x = b`, returning one solution when the system is consistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows);
    let bcol = RatMatrix::from_triples(
        m.rows,
        1,
        b.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, 0, v.clone())),
    );
    let aug = m.hstack(&bcol);
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, m.cols);
    }
    Some(x)
}

/// Rank of a list of sparse rows over `cols` columns.
pub fn rank_of_rows(cols: usize, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new(cols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_negative(x: &Rational) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_proportional_rows() {
        let m = RatMatrix::from_i64(&[&[2, 4], &[1, 2]]);
        let (r, p) = rref(&m);
        assert_eq!(r, RatMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_identity_and_hand_elimination() {
        let id = RatMatrix::identity(3);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1, 2]));
        let m = RatMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(rref(&m), (RatMatrix::identity(2), vec![0, 1]));
    }

    #[test]
    fn kernels() {
        let z = RatMatrix::zeros(2, 3);
        let k = kernel_basis(&z);
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            assert!(v.iter().enumerate().all(|(j, x)| if i == j {
                x.is_one()
            } else {
                x.is_zero()
            }));
        }
        let k = kernel_basis(&RatMatrix::from_i64(&[&[1, 2]]));
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
        assert!(kernel_basis(&RatMatrix::from_i64(&[&[1, 2], &[3, 4]])).is_empty());
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // 70 x 70 banded matrix goes through the sparse path.
        let n = 70;
        let trip = (0..n).flat_map(|i| {
            let mut v = vec![(i, i, q(2))];
            if i + 1 < n {
                v.push((i, i + 1, q(-1)));
            }
            if i % 7 == 0 && i >= 7 {
                v.push((i, i - 7, q_frac(1, 3)));
            }
            v
        });
        let m = RatMatrix::from_triples(n, n, trip);
        assert_eq!(m.rank(), n);
        let mut ech = Echelon::new(m.cols());
        for r in 0..m.rows() {
            ech.insert(m.row(r).clone());
        }
        assert_eq!(ech.rank(), n);
        let (r, p) = rref(&m);
        assert_eq!(p.len(), n);
        assert_eq!(r, RatMatrix::identity(n));
        let small = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(small.rank(), 2);
        let mut e = Echelon::new(3);
        for row in 0..3 {
            e.insert(small.row(row).clone());
        }
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn solve_round_trip_exact() {
        let m = RatMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[1, 3, 1]]);
        let b = vec![q(3), q(2), q(5)];
        let x = solve(&m, &b).expect("consistent");
        assert_eq!(m.mul_vec(&x), b);
        assert!(solve(&m, &[q(1), q(0), q(0)]).is_none());
    }
}
