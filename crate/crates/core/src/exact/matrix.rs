//! Sparse matrices over ℚ and ℚ[ν]; exact rank, kernels and incremental
//! row echelon forms.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::poly::NuPoly;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

pub trait Entry: Clone {
    fn is_zero_entry(&self) -> bool;
}

impl Entry for Scalar {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

impl Entry for NuPoly {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

/// A `rows × cols` matrix that never stores a zero entry.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Entry> SparseMatrix<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::new(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        if x.is_zero_entry() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&T> {
        self.entries.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Appends a column given as `(row, value)` pairs; returns its index.
    pub fn push_col(&mut self, col: impl IntoIterator<Item = (usize, T)>) -> usize {
        let j = self.cols;
        self.cols += 1;
        for (i, x) in col {
            self.set(i, j, x);
        }
        j
    }

    fn row_vectors(&self) -> Vec<BTreeMap<usize, T>> {
        let mut out = vec![BTreeMap::new(); self.rows];
        for (&(i, j), x) in &self.entries {
            out[i].insert(j, x.clone());
        }
        out
    }
}

impl SparseMatrix<NuPoly> {
    /// Substitutes ν = `x` in every entry.
    pub fn eval(&self, x: &Scalar) -> SparseMatrix<Scalar> {
        let mut m = SparseMatrix::new(self.rows, self.cols);
        for (&(i, j), p) in &self.entries {
            m.set(i, j, p.eval(x));
        }
        m
    }
}

pub type SparseVec = BTreeMap<usize, Scalar>;

/// Reduced row echelon form built one row at a time.
///
/// Every stored row has a pivot entry equal to 1, zero in every other pivot
/// column, and no nonzero entry in a column smaller than its pivot when the
/// default pivot rule (leftmost nonzero) is used.
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows (in place).
    pub fn reduce(&self, v: &mut SparseVec) {
        let hits: Vec<(usize, Scalar)> =
            v.iter().filter(|(c, _)| self.pivot_row.contains_key(c)).map(|(c, x)| (*c, x.clone())).collect();
        for (c, coef) in hits {
            let row = &self.rows[self.pivot_row[&c]];
            axpy(v, &-coef, row);
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_empty()
    }

    /// Inserts `v`; returns `true` if the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_with(v, |w| *w.keys().next().unwrap())
    }

    /// Inserts with a caller-chosen pivot column among the nonzero entries.
    pub fn insert_with(&mut self, mut v: SparseVec, choose: impl Fn(&SparseVec) -> usize) -> bool {
        self.reduce(&mut v);
        if v.is_empty() {
            return false;
        }
        let p = choose(&v);
        let inv = scalar::one() / &v[&p];
        for x in v.values_mut() {
            *x *= &inv;
        }
        for row in &mut self.rows {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &v);
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(v);
        true
    }

    /// Kernel basis of the stored rows viewed as a matrix with `cols` columns.
    pub fn kernel(&self, cols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..cols {
            if self.pivot_row.contains_key(&f) {
                continue;
            }
            let mut k = SparseVec::new();
            k.insert(f, scalar::one());
            for (r, row) in self.rows.iter().enumerate() {
                if let Some(x) = row.get(&f) {
                    k.insert(self.pivots[r], -x);
                }
            }
            out.push(k);
        }
        out
    }
}

/// `y += a·x`, dropping entries that cancel.
pub fn axpy(y: &mut SparseVec, a: &Scalar, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (c, xv) in x {
        let e = y.entry(*c).or_insert_with(scalar::zero);
        *e += a * xv;
        if e.is_zero() {
            y.remove(c);
        }
    }
}

/// Rank and a kernel basis of `m` by exact Gauss–Jordan elimination.
///
/// Rows are eliminated sparsest first and each pivot is taken in the column
/// with the fewest nonzero entries (a Markowitz-style choice).
pub fn rank_and_kernel(m: &SparseMatrix<Scalar>) -> (usize, Vec<Vec<Scalar>>) {
    let mut col_count = vec![0usize; m.cols];
    for &(_, j) in m.entries.keys() {
        col_count[j] += 1;
    }
    let mut rows = m.row_vectors();
    rows.sort_by_key(|r| r.len());
    let mut ech = RowEchelon::new();
    for r in rows {
        ech.insert_with(r, |w| *w.keys().min_by_key(|&&c| (col_count[c], c)).unwrap());
    }
    let kernel = ech
        .kernel(m.cols)
        .into_iter()
        .map(|k| (0..m.cols).map(|c| k.get(&c).cloned().unwrap_or_else(scalar::zero)).collect())
        .collect();
    (ech.rank(), kernel)
}

pub fn rank(m: &SparseMatrix<Scalar>) -> usize {
    let mut ech = RowEchelon::new();
    for r in m.row_vectors() {
        ech.insert(r);
    }
    ech.rank()
}

/// Result of a rank computation over the rational function field ℚ(ν).
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionFieldRank {
    pub generic_rank: usize,
    /// Monic gcd of all maximal nonzero minors (1 when the rank is 0).
    pub minor_gcd: NuPoly,
    /// Rational ν where the rank drops below the generic rank, ascending.
    pub exceptional: Vec<Scalar>,
    /// The minor gcd has an irreducible factor of degree > 1 over ℚ.
    pub nonrational_factor: bool,
}

/// Generic rank over ℚ(ν) and the rational specializations where it drops.
///
/// The matrix is diagonalized by unimodular row and column operations over
/// the Euclidean domain ℚ[ν]; the product of the diagonal is then the gcd of
/// the maximal minors. Each rational root is confirmed by substitution.
pub fn rank_over_function_field(m: &SparseMatrix<NuPoly>) -> Result<FunctionFieldRank> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut a: Vec<Vec<NuPoly>> = vec![vec![NuPoly::zero(); m.cols]; m.rows];
    for (&(i, j), p) in &m.entries {
        a[i][j] = p.clone();
    }
    let (nr, nc) = (m.rows, m.cols);
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        let Some((pi, pj)) = min_degree_entry(&a, t, t) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_rem(&a[t][t]).0;
                for j in t..nc {
                    if !a[t][j].is_zero() {
                        let d = &q * &a[t][j];
                        a[i][j] = &a[i][j] - &d;
                    }
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_rem(&a[t][t]).0;
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        let d = &q * &row[t];
                        row[j] = &row[j] - &d;
                    }
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // A nonzero remainder has smaller degree than the pivot: move it in.
            let best = (t..nr)
                .map(|i| (i, t))
                .chain((t..nc).map(|j| (t, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].degree())
                .unwrap();
            a.swap(t, best.0);
            swap_cols(&mut a, t, best.1);
        }
        diag.push(a[t][t].clone());
    }
    let generic_rank = diag.len();
    let minor_gcd = diag.iter().fold(NuPoly::one(), |acc, d| &acc * d).monic();
    let mut exceptional = Vec::new();
    for r in minor_gcd.rational_roots() {
        let drop = rank(&m.eval(&r)) < generic_rank;
        assert!(drop, "root {} of the minor gcd does not lower the rank", scalar::fmt(&r));
        exceptional.push(r);
    }
    Ok(FunctionFieldRank {
        generic_rank,
        nonrational_factor: minor_gcd.has_nonrational_factor(),
        minor_gcd,
        exceptional,
    })
}

fn min_degree_entry(a: &[Vec<NuPoly>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, x) in row.iter().enumerate().skip(c0) {
            if let Some(d) = x.degree() {
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some(((i, j), d));
                }
            }
        }
    }
    best.map(|b| b.0)
}

fn swap_cols(a: &mut [Vec<NuPoly>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// Dense helper used by callers that assemble small matrices row-wise.
pub fn dense_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut ech = RowEchelon::new();
    for r in rows {
        let v: SparseVec = r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        ech.insert(v);
    }
    ech.rank()
}

/// `true` if `v` is the zero vector.
pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn unit_vec(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Scalar::one());
    v
}

/// Inverse of a dense square matrix, or `None` if it is singular.
pub fn dense_inverse(a: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { scalar::one() } else { scalar::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = scalar::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..2 * n {
                    let d = &f * &m[c][k];
                    m[r][k] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(a: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn q(rows: &[&[i64]]) -> SparseMatrix<Scalar> {
        SparseMatrix::from_dense(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn identity_and_zero() {
        let (r, k) = rank_and_kernel(&q(&[&[1, 0], &[0, 1]]));
        assert_eq!((r, k.len()), (2, 0));
        let (r, k) = rank_and_kernel(&SparseMatrix::new(3, 4));
        assert_eq!((r, k.len()), (0, 4));
    }

    #[test]
    fn rank_one_kernel() {
        let (r, k) = rank_and_kernel(&q(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, 1);
        assert_eq!(k.len(), 1);
        // proportional to (-2, 1)
        assert_eq!(&k[0][0] / &k[0][1], int(-2));
    }

    fn np(c: &[i64]) -> NuPoly {
        NuPoly::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn function_field_examples() {
        let m = SparseMatrix::from_dense(vec![vec![NuPoly::nu()]]);
        let r = rank_over_function_field(&m).unwrap();
        assert_eq!((r.generic_rank, r.exceptional.clone()), (1, vec![int(0)]));

        let m = SparseMatrix::from_dense(vec![vec![np(&[-1, 1]), np(&[])], vec![np(&[]), np(&[1])]]);
        let r = rank_over_function_field(&m).unwrap();
        assert_eq!((r.generic_rank, r.exceptional.clone()), (2, vec![int(1)]));

        let m = SparseMatrix::from_dense(vec![vec![NuPoly::nu(), NuPoly::nu()], vec![np(&[1]), np(&[1])]]);
        let r = rank_over_function_field(&m).unwrap();
        assert_eq!(r.generic_rank, 1);
        assert!(r.exceptional.is_empty());

        assert_eq!(rank_over_function_field(&SparseMatrix::<NuPoly>::new(0, 3)), Err(Error::EmptyMatrix));
    }

    #[test]
    fn nonrational_factor_is_flagged() {
        let m = SparseMatrix::from_dense(vec![vec![np(&[-2, 0, 1])]]);
        let r = rank_over_function_field(&m).unwrap();
        assert!(r.exceptional.is_empty());
        assert!(r.nonrational_factor);
    }
}
