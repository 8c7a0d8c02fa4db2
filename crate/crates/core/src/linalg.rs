//! Exact dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational, Vector};

/// Dense row-major rational matrix with explicit shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vector>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct MatrixWire(#[serde(with = "rational::serde_str::mat")] Vec<Vector>);

impl TryFrom<MatrixWire> for Matrix {
    type Error = Error;
    fn try_from(w: MatrixWire) -> Result<Self> {
        Matrix::from_rows(w.0)
    }
}

impl From<Matrix> for MatrixWire {
    fn from(m: Matrix) -> Self {
        MatrixWire(m.rows)
    }
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix { nrows, ncols, rows })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            rows: vec![rational::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    /// `u v^T`
    pub fn outer(u: &[Rational], v: &[Rational]) -> Self {
        Matrix {
            nrows: u.len(),
            ncols: v.len(),
            rows: u.iter().map(|a| rational::scale(v, a)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    pub fn column(&self, j: usize) -> Vector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows: (0..self.ncols).map(|j| self.column(j)).collect(),
        }
    }

    /// `M x`
    pub fn apply(&self, x: &[Rational]) -> Vector {
        assert_eq!(
            x.len(),
            self.ncols,
            "dimension mismatch in matrix-vector product"
        );
        self.rows.iter().map(|r| rational::dot(r, x)).collect()
    }

    /// `y^T M`
    pub fn apply_left(&self, y: &[Rational]) -> Vector {
        assert_eq!(
            y.len(),
            self.nrows,
            "dimension mismatch in vector-matrix product"
        );
        let mut out = rational::zeros(self.ncols);
        for (yi, row) in y.iter().zip(&self.rows) {
            rational::axpy(&mut out, yi, row);
        }
        out
    }

    /// `u^T M v`
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        rational::dot(&self.apply_left(u), v)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::Dimension("matrix sum shape mismatch".into()));
        }
        Ok(Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| rational::add(a, b))
                .collect(),
        })
    }

    pub fn scaled(&self, s: &Rational) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| rational::scale(r, s)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols != other.nrows {
            return Err(Error::Dimension("matrix product shape mismatch".into()));
        }
        let rows = self.rows.iter().map(|r| other.apply_left(r)).collect();
        Ok(Matrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        })
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vector {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn from_flat(nrows: usize, ncols: usize, flat: &[Rational]) -> Result<Matrix> {
        if flat.len() != nrows * ncols {
            return Err(Error::Dimension("flat length does not match shape".into()));
        }
        Ok(Matrix {
            nrows,
            ncols,
            rows: flat
                .chunks(ncols.max(1))
                .take(nrows)
                .map(<[_]>::to_vec)
                .collect(),
        })
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }
}

/// Exact rank by fraction-free (Bareiss) elimination on the integer-scaled rows.
pub fn rank(rows: &[Vector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| rational::primitive_integer(r))
        .collect();
    let ncols = m[0].len();
    let nrows = m.len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = rational::scale(&m[r], &inv);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                rational::axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{x : rows x = 0}` for `ncols`-dimensional `x`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = rational::zeros(ncols);
            x[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// One solution of `A x = b`, if any.
pub fn solve(a: &[Vector], b: &[Rational]) -> Option<Vector> {
    assert_eq!(a.len(), b.len(), "dimension mismatch in solve");
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = rational::zeros(ncols);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Greedy selection of a maximal linearly independent subfamily, in order.
pub fn independent_subset(vectors: &[Vector]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vector> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Some(reduced) = reduce_against(&basis, v) {
            basis.push(reduced);
            chosen.push(i);
        }
    }
    chosen
}

// Echelon-style incremental independence test: keeps `basis` in a form where
// each vector has a distinct leading index.
fn reduce_against(basis: &[Vector], v: &[Rational]) -> Option<Vector> {
    let mut w = v.to_vec();
    for b in basis {
        let lead = b
            .iter()
            .position(|x| !x.is_zero())
            .expect("basis vectors are nonzero");
        if !w[lead].is_zero() {
            let f = -(&w[lead] / &b[lead]);
            rational::axpy(&mut w, &f, b);
        }
    }
    if rational::is_zero_vec(&w) {
        None
    } else {
        Some(w)
    }
}

pub fn inverse(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend(rational::unit_vector(n, i));
            row
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if r.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn is_affinely_independent(points: &[Vector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let diffs: Vec<Vector> = points[1..]
        .iter()
        .map(|p| rational::sub(p, &points[0]))
        .collect();
    rank(&diffs) == points.len() - 1
}
