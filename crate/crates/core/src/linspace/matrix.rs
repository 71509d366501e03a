use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};

/// Dense matrix over an exact field, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { field, cols, rows }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix::from_rows(self.field, self.nrows(), rows)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.nrows(), "matrix shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| vec_mul(self.field, r, rhs))
            .collect();
        Matrix::from_rows(self.field, rhs.cols, rows)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.nrows(), "vector length mismatch");
        vec_mul(self.field, v, self)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Matrix::from_rows(self.field, self.cols, rows)
    }

    /// `self - c * I`
    pub fn sub_scalar(&self, c: &Scalar) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.nrows().min(self.cols) {
            m.rows[i][i] = &m.rows[i][i] - c;
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.rows.iter().enumerate().all(|(i, r)| {
                r.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.nrows());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn rank(&self) -> usize {
        rref(self.rows.clone(), self.cols).1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                found: self.cols,
            });
        }
        let n = self.cols;
        let augmented: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| {
                    if i == j {
                        self.field.one()
                    } else {
                        self.field.zero()
                    }
                }));
                row
            })
            .collect();
        let (reduced, pivots) = rref(augmented, 2 * n);
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Err(Error::DivisionByZero);
        }
        let rows = reduced.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(Matrix::from_rows(self.field, n, rows))
    }

    /// Basis of `{ v : v * self = 0 }` in reduced echelon form.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        let t = self.transpose();
        let n = self.nrows();
        let (reduced, pivots) = rref(t.rows, n);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); n];
                v[f] = self.field.one();
                for (row, &p) in reduced.iter().zip(&pivots) {
                    v[p] = -&row[f];
                }
                v
            })
            .collect()
    }
}

fn vec_mul(field: Field, v: &[Scalar], m: &Matrix) -> Vec<Scalar> {
    let mut out = vec![field.zero(); m.cols];
    for (vi, row) in v.iter().zip(&m.rows) {
        if vi.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                o.add_mul(vi, x);
            }
        }
    }
    out
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = -&row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    x.add_mul(&factor, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}
