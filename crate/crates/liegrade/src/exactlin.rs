//! Exact rational linear algebra: dense matrices over `BigRational`,
//! reduced row echelon form, kernels, and canonical subspaces.
//!
//! All elimination uses partial pivoting by lowest row index among nonzero
//! entries, which makes the reduced forms (and hence subspace
//! representations) canonical: equal spans produce identical bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator (maintained by `num-rational`).
pub type Q = BigRational;

/// Integer constant as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational constant `n/d`.
pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Render a rational canonically: `p` when integral, `p/q` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_q(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Build from rows of integer entries.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = QMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, qi(*v));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Q> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Q) -> QMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        s += a * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    /// Flatten row-major into a single vector.
    pub fn flatten(&self) -> Vec<Q> {
        self.data.clone()
    }
}

/// Result of reduced row echelon elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub reduced: QMatrix,
}

/// Reduced row echelon form with deterministic pivoting: for each column the
/// pivot is the lowest-index row with a nonzero entry among the remaining
/// rows. The output is the unique RREF of the row space.
pub fn rref(m: &QMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let piv = (r..rows).find(|&i| !a.at(i, c).is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        if piv != r {
            for j in 0..cols {
                let tmp = a.at(piv, j).clone();
                a.set(piv, j, a.at(r, j).clone());
                a.set(r, j, tmp);
            }
        }
        let inv = a.at(r, c).recip();
        for j in c..cols {
            let v = a.at(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.at(i, c).is_zero() {
                continue;
            }
            let f = a.at(i, c).clone();
            for j in c..cols {
                let v = a.at(i, j) - &f * a.at(r, j);
                a.set(i, j, v);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    Rref {
        rank: r,
        pivot_cols,
        reduced: a,
    }
}

/// Incremental row-space reducer. Rows are fed one at a time and reduced
/// against the pivots collected so far; useful when a constraint system has
/// many more rows than its rank.
pub struct RowReducer {
    cols: usize,
    /// Echelon rows, each normalized to pivot 1, sorted by pivot column.
    rows: Vec<(usize, Vec<Q>)>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the current echelon rows; if a nonzero remainder
    /// survives, absorb it. Returns true when the row enlarged the space.
    pub fn add_row(&mut self, mut row: Vec<Q>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (p, r) in &self.rows {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for j in *p..self.cols {
                    if !r[j].is_zero() {
                        row[j] -= &f * &r[j];
                    }
                }
            }
        }
        let pivot = match row.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = row[pivot].recip();
        for x in row.iter_mut().skip(pivot) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pos = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(pos, (pivot, row));
        true
    }

    /// Finish into the unique RREF by back-substituting above each pivot.
    pub fn into_rref_matrix(mut self) -> QMatrix {
        if self.rows.is_empty() {
            return QMatrix::zero(0, self.cols);
        }
        let n = self.rows.len();
        for k in (0..n).rev() {
            let (p, ref rk) = self.rows[k];
            let rk = rk.clone();
            for i in 0..k {
                let f = self.rows[i].1[p].clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..self.cols {
                    if !rk[j].is_zero() {
                        let v = &self.rows[i].1[j] - &f * &rk[j];
                        self.rows[i].1[j] = v;
                    }
                }
            }
        }
        QMatrix::from_rows(self.rows.into_iter().map(|(_, r)| r).collect())
    }
}

/// Canonical basis of the right kernel `{ v : m v = 0 }`.
///
/// `dim kernel = cols - rank` always holds.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    let Rref {
        pivot_cols,
        reduced,
        ..
    } = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -reduced.at(r, free).clone();
        }
        basis.push(v);
    }
    Subspace::new(cols, basis)
}

/// Solve `m x = b`; `None` when inconsistent. When the system is
/// underdetermined the free variables are set to zero, which is canonical
/// for the pivoting order used here.
pub fn solve(m: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(m.rows(), b.len(), "shape mismatch");
    let mut aug = QMatrix::zero(m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            aug.set(i, j, m.at(i, j).clone());
        }
        aug.set(i, m.cols(), b[i].clone());
    }
    let Rref {
        pivot_cols,
        reduced,
        ..
    } = rref(&aug);
    if pivot_cols.contains(&m.cols()) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Q::zero(); m.cols()];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = reduced.at(r, m.cols()).clone();
    }
    Some(x)
}

/// A linear subspace of `Q^ambient`, stored as the unique RREF basis of its
/// span so that equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of Q^{})", self.dim(), self.ambient)
    }
}

impl Subspace {
    /// Canonicalize a spanning set into the subspace it spans.
    pub fn new(ambient: usize, spanning: Vec<Vec<Q>>) -> Self {
        let mut red = RowReducer::new(ambient);
        for v in spanning {
            assert_eq!(v.len(), ambient, "ambient mismatch");
            red.add_row(v);
        }
        Subspace {
            ambient,
            basis: red.into_rref_matrix(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMatrix::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMatrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_rows(&self) -> Vec<Vec<Q>> {
        (0..self.basis.rows())
            .map(|i| self.basis.row_vec(i))
            .collect()
    }

    pub fn basis_matrix(&self) -> &QMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut w = v.to_vec();
        for i in 0..self.basis.rows() {
            let p = (0..self.ambient)
                .find(|&j| !self.basis.at(i, j).is_zero())
                .expect("no zero rows in canonical basis");
            if !w[p].is_zero() {
                let f = w[p].clone();
                for j in p..self.ambient {
                    let bij = self.basis.at(i, j);
                    if !bij.is_zero() {
                        w[j] -= &f * bij;
                    }
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.basis.rows()).all(|i| other.contains(self.basis.row(i)))
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::new(self.ambient, rows)
    }

    /// Rows spanning the annihilator `{ f : f·v = 0 for all v in self }`,
    /// i.e. linear equations cutting out this subspace.
    pub fn annihilator_rows(&self) -> QMatrix {
        let ker = kernel_basis(&self.basis);
        ker.basis.clone()
    }

    /// Intersection, computed from the stacked annihilators.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let a = self.annihilator_rows();
        let b = other.annihilator_rows();
        let mut rows = Vec::with_capacity(a.rows() + b.rows());
        for i in 0..a.rows() {
            rows.push(a.row_vec(i));
        }
        for i in 0..b.rows() {
            rows.push(b.row_vec(i));
        }
        if rows.is_empty() {
            return Subspace::full(self.ambient);
        }
        kernel_basis(&QMatrix::from_rows(rows))
    }
}
