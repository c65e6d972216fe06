//! Dense real matrices and determinant kernels.

use super::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RealMatrix {
    pub fn zeros(prec: u32, rows: usize, cols: usize) -> Self {
        RealMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(prec); rows * cols],
        }
    }

    pub fn identity(prec: u32, n: usize) -> Self {
        RealMatrix::from_fn(n, n, |i, j| Scalar::from_int(prec, (i == j) as i64))
    }

    /// Builds a matrix from `f(row, col)` with 0-based indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RealMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RealMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    /// Copy with column `col` replaced by `values`.
    pub fn with_column(&self, col: usize, values: &[Scalar]) -> Result<Self> {
        if values.len() != self.rows || col >= self.cols {
            return Err(Error::DimensionMismatch(format!(
                "column {col} of length {} for a {}x{} matrix",
                values.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = self.clone();
        for (i, v) in values.iter().enumerate() {
            out.set(i, col, v.clone());
        }
        Ok(out)
    }

    /// Submatrix keeping the listed rows and columns (0-based, in order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        RealMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn mul(&self, other: &RealMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let prec = self.prec().min(other.prec());
        Ok(RealMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero(prec);
            for k in 0..self.cols {
                acc += &(self.get(i, k) * other.get(k, j));
            }
            acc
        }))
    }

    pub fn prec(&self) -> u32 {
        self.data
            .first()
            .map_or(super::DEFAULT_PRECISION, Scalar::prec)
    }

    /// Determinant by LU factorisation with partial pivoting. The empty
    /// matrix has determinant one.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(lu_det(self.rows, self.data.clone(), self.prec()))
    }

    /// Determinant of the matrix with rows `a` and `b` removed (0-based).
    fn det_without_rows(&self, a: usize, b: usize) -> Scalar {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != a && i != b).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        lu_det(keep.len(), self.select(&keep, &cols).data, self.prec())
    }

    /// All maximal minors of an `N x (N-2)` matrix obtained by deleting two
    /// rows. For `N = 2` every minor is the empty determinant, 1.
    pub fn two_column_minors(&self) -> Result<MinorTable> {
        let n = self.rows;
        if n < 2 || self.cols + 2 != n {
            return Err(Error::DimensionMismatch(format!(
                "two-row minors need an N x (N-2) matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let mut values = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n {
            for b in (a + 1)..n {
                values.push(self.det_without_rows(a, b));
            }
        }
        Ok(MinorTable { n, values })
    }
}

fn lu_det(n: usize, mut a: Vec<Scalar>, prec: u32) -> Scalar {
    let mut det = Scalar::one(prec);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
            .expect("non-empty pivot range");
        if a[pivot * n + k].is_zero() {
            return Scalar::zero(prec);
        }
        if pivot != k {
            for j in 0..n {
                a.swap(k * n + j, pivot * n + j);
            }
            det = -det;
        }
        let p = a[k * n + k].clone();
        det *= &p;
        let inv = p.recip();
        for i in (k + 1)..n {
            let factor = &a[i * n + k] * &inv;
            if factor.is_zero() {
                continue;
            }
            for j in (k + 1)..n {
                let update = &factor * &a[k * n + j];
                a[i * n + j] -= &update;
            }
        }
    }
    det
}

/// Minors `M_ab` (1-based `a < b`) of an `N x (N-2)` matrix with rows `a`
/// and `b` deleted.
#[derive(Clone, Debug)]
pub struct MinorTable {
    n: usize,
    values: Vec<Scalar>,
}

impl MinorTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// # Panics
    /// Unless `1 <= a < b <= n`.
    pub fn get(&self, a: usize, b: usize) -> &Scalar {
        assert!(1 <= a && a < b && b <= self.n, "minor index ({a}, {b})");
        let (a0, b0) = (a - 1, b - 1);
        // rows before a0 contribute (n-1) + (n-2) + ... entries
        let offset = a0 * (2 * self.n - a0 - 1) / 2;
        &self.values[offset + (b0 - a0 - 1)]
    }

    /// Generalised Laplace expansion of the bordered `N x N` determinant whose
    /// last two columns are `left` and `right`.
    pub fn bordered_det(&self, left: &[Scalar], right: &[Scalar]) -> Scalar {
        self.bordered_det_with(|a, b| &left[a - 1] * &right[b - 1] - &left[b - 1] * &right[a - 1])
    }

    /// Same expansion with the `2 x 2` block for rows `a < b` of the last two
    /// columns supplied by `block`; used when the border entries are
    /// operators rather than numbers.
    pub fn bordered_det_with(&self, mut block: impl FnMut(usize, usize) -> Scalar) -> Scalar {
        let n = self.n;
        let prec = self.values[0].prec();
        let mut acc = Scalar::zero(prec);
        for a in 1..=n {
            for b in (a + 1)..=n {
                acc += &(self.signed(a, b) * block(a, b));
            }
        }
        acc
    }

    /// `M_ab` times its Laplace sign `(-1)^((a + b) + (N-1) + N)` in the
    /// bordered determinant.
    pub fn signed(&self, a: usize, b: usize) -> Scalar {
        let m = self.get(a, b).clone();
        if (a + b + 1).is_multiple_of(2) {
            m
        } else {
            -m
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn m(rows: &[&[f64]]) -> RealMatrix {
        RealMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_f64(P, v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_det() {
        assert_eq!(RealMatrix::identity(P, 4).det().unwrap().to_f64(), 1.0);
    }

    #[test]
    fn two_by_two() {
        let d = m(&[&[3.0, 5.0], &[7.0, 11.0]]).det().unwrap();
        assert_eq!(d.to_f64(), 3.0 * 11.0 - 5.0 * 7.0);
    }

    #[test]
    fn empty_det_is_one() {
        assert_eq!(RealMatrix::zeros(P, 0, 0).det().unwrap().to_f64(), 1.0);
    }

    #[test]
    fn non_square_rejected() {
        assert!(RealMatrix::zeros(P, 2, 3).det().is_err());
    }

    #[test]
    fn singular_matrix_has_zero_det() {
        let d = m(&[&[1.0, 2.0], &[2.0, 4.0]]).det().unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn minors_of_empty_columns() {
        let t = RealMatrix::zeros(P, 2, 0).two_column_minors().unwrap();
        assert_eq!(t.get(1, 2).to_f64(), 1.0);
    }

    #[test]
    fn minors_of_single_column() {
        let t = m(&[&[1.0], &[2.0], &[3.0]]).two_column_minors().unwrap();
        assert_eq!(t.get(1, 2).to_f64(), 3.0);
        assert_eq!(t.get(1, 3).to_f64(), 2.0);
        assert_eq!(t.get(2, 3).to_f64(), 1.0);
    }

    #[test]
    fn minors_need_two_fewer_columns() {
        assert!(RealMatrix::zeros(P, 3, 2).two_column_minors().is_err());
    }
}
