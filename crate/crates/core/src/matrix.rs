//! Dense matrices over a finite field, with exact elimination.
//!
//! Everything here is deterministic: elimination always picks the first
//! nonzero pivot in row order, and the superregularity sweep enumerates
//! minors in a fixed lexicographic order, so the reported witness for a
//! non-superregular matrix is stable. Indices are 0-based.

use std::fmt;

use crate::combin::combinations;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Row-major dense matrix over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    /// Build from row-major entries; all must belong to `field`.
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| *e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    /// Build from a function of (row, col).
    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        let z = field.zero();
        Matrix::from_fn(field, rows, cols, |_, _| z.clone())
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let (zero, one) = (field.zero(), field.one());
        Matrix::from_fn(field, n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    /// Square matrix with `diag` on the diagonal and zeros elsewhere.
    pub fn diag(field: Field, diag: &[FieldElement]) -> Matrix {
        let zero = field.zero();
        Matrix::from_fn(field, diag.len(), diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix given by 0-based row and column index lists (order kept).
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field.clone(), row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hconcat of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.field.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vconcat of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.field.clone(), self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        }))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = self.field.zero();
        Ok(Matrix::from_fn(self.field.clone(), self.rows, other.cols, |i, j| {
            let mut acc = zero.clone();
            for t in 0..self.cols {
                let prod = self.get(i, t).mul(other.get(t, j));
                if !prod.is_zero() {
                    acc = acc.add(&prod);
                }
            }
            acc
        }))
    }

    /// Determinant by Gaussian elimination with first-nonzero pivoting.
    /// The determinant of the empty 0x0 matrix is 1.
    pub fn det(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut acc = self.field.one();
        let at = |v: &[FieldElement], i: usize, j: usize| v[i * n + j].clone();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(self.field.zero());
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                acc = acc.neg();
            }
            let p = at(&a, col, col);
            acc = acc.mul(&p);
            let pinv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].mul(&pinv);
                for j in col..n {
                    let sub = factor.mul(&a[col * n + j]);
                    a[r * n + j] = a[r * n + j].sub(&sub);
                }
            }
        }
        Ok(acc)
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..c {
            let Some(pivot) = (rank..r).find(|&i| !a[i * c + col].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..c {
                    a.swap(pivot * c + j, rank * c + j);
                }
            }
            let pinv = a[rank * c + col].inv().expect("pivot is nonzero");
            for i in rank + 1..r {
                if a[i * c + col].is_zero() {
                    continue;
                }
                let factor = a[i * c + col].mul(&pinv);
                for j in col..c {
                    let sub = factor.mul(&a[rank * c + j]);
                    a[i * c + j] = a[i * c + j].sub(&sub);
                }
            }
            rank += 1;
            if rank == r {
                break;
            }
        }
        rank
    }

    /// Solve A X = B for square nonsingular A by Gauss-Jordan elimination.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with {}x{} lhs and {}x{} rhs",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let n = self.rows;
        let w = rhs.cols;
        let mut a = self.entries.clone();
        let mut b = rhs.entries.clone();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                for j in 0..w {
                    b.swap(pivot * w + j, col * w + j);
                }
            }
            let pinv = a[col * n + col].inv().expect("pivot is nonzero");
            for j in col..n {
                a[col * n + j] = a[col * n + j].mul(&pinv);
            }
            for j in 0..w {
                b[col * w + j] = b[col * w + j].mul(&pinv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in col..n {
                    let sub = factor.mul(&a[col * n + j]);
                    a[r * n + j] = a[r * n + j].sub(&sub);
                }
                for j in 0..w {
                    let sub = factor.mul(&b[col * w + j]);
                    b[r * w + j] = b[r * w + j].sub(&sub);
                }
            }
        }
        Matrix::new(self.field.clone(), n, w, b)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.solve(&Matrix::identity(self.field.clone(), self.rows))
    }

    /// First singular square minor in the canonical order (ascending size,
    /// then lexicographic row set, then lexicographic column set), or None
    /// when the matrix is superregular. Index sets are 0-based.
    pub fn first_singular_minor(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        for t in 1..=self.rows.min(self.cols) {
            for rows in combinations(self.rows, t) {
                for cols in combinations(self.cols, t) {
                    let minor = self.submatrix(&rows, &cols);
                    if minor.det().expect("minor is square").is_zero() {
                        return Some((rows, cols));
                    }
                }
            }
        }
        None
    }

    /// Every square submatrix nonsingular?
    pub fn is_superregular(&self) -> bool {
        self.first_singular_minor().is_none()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn mat(field: &Field, rows: usize, cols: usize, vals: &[u128]) -> Matrix {
        assert_eq!(vals.len(), rows * cols);
        Matrix::from_fn(field.clone(), rows, cols, |i, j| field.from_int(vals[i * cols + j]))
    }

    /// Independent determinant oracle: cofactor expansion along the first row.
    fn det_by_cofactors(m: &Matrix) -> FieldElement {
        let n = m.rows();
        if n == 0 {
            return m.field().one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = m.field().zero();
        let all_rows: Vec<usize> = (1..n).collect();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let sub = det_by_cofactors(&m.submatrix(&all_rows, &keep));
            let term = m.get(0, j).mul(&sub);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn determinant_examples() {
        let f = gf(11);
        assert_eq!(mat(&f, 1, 1, &[5]).det().unwrap(), f.from_int(5));
        assert_eq!(mat(&f, 2, 2, &[1, 1, 1, 2]).det().unwrap(), f.from_int(1));
        assert_eq!(mat(&f, 2, 2, &[1, 2, 2, 4]).det().unwrap(), f.zero());
        // 0x0 determinant is the empty product
        assert_eq!(Matrix::zero(f.clone(), 0, 0).det().unwrap(), f.one());
        assert!(mat(&f, 2, 3, &[1, 2, 3, 4, 5, 6]).det().is_err());
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        // fixed pseudo-random entries over GF(13) and GF(2^4)
        for field in [gf(13), Field::new(2, 4, None).unwrap()] {
            let q = field.order_u128().unwrap();
            let mut state = 7u128;
            for n in 1..=5 {
                for _ in 0..6 {
                    let m = Matrix::from_fn(field.clone(), n, n, |_, _| {
                        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 63);
                        field.from_int(state % q)
                    });
                    assert_eq!(m.det().unwrap(), det_by_cofactors(&m));
                }
            }
        }
    }

    #[test]
    fn det_of_diag_is_product() {
        let field = Field::new(2, 4, None).unwrap();
        let theta = field.primitive_element().unwrap();
        let d = Matrix::diag(field.clone(), &[field.one(), theta.clone(), theta.pow(2)]);
        assert_eq!(d.det().unwrap(), theta.pow(3));
    }

    #[test]
    fn rank_examples() {
        let f = gf(11);
        assert_eq!(Matrix::identity(f.clone(), 5).rank(), 5);
        assert_eq!(mat(&f, 2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(Matrix::zero(f.clone(), 3, 4).rank(), 0);
        assert_eq!(mat(&f, 2, 3, &[1, 0, 1, 0, 1, 1]).rank(), 2);
        // wide and tall
        assert_eq!(mat(&f, 3, 2, &[1, 0, 0, 1, 1, 1]).rank(), 2);
    }

    #[test]
    fn solve_recovers_planted_solution() {
        let f = gf(13);
        let a = mat(&f, 3, 3, &[2, 1, 0, 1, 1, 1, 0, 3, 5]);
        assert!(!a.det().unwrap().is_zero());
        let x = mat(&f, 3, 2, &[1, 7, 4, 0, 9, 2]);
        let b = a.mul(&x).unwrap();
        assert_eq!(a.solve(&b).unwrap(), x);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(f.clone(), 3));

        let singular = mat(&f, 2, 2, &[1, 2, 2, 4]);
        assert!(matches!(singular.solve(&Matrix::identity(f, 2)), Err(Error::SingularMatrix)));
    }

    #[test]
    fn mul_shapes_and_concat() {
        let f = gf(7);
        let a = mat(&f, 2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = mat(&f, 3, 1, &[1, 1, 1]);
        assert_eq!(a.mul(&b).unwrap(), mat(&f, 2, 1, &[6, 1]));
        assert!(b.mul(&mat(&f, 1, 2, &[1, 0])).is_ok());
        assert!(a.mul(&a).is_err());

        let c = a.hconcat(&mat(&f, 2, 1, &[0, 1])).unwrap();
        assert_eq!(c.cols(), 4);
        assert_eq!(*c.get(1, 3), f.from_int(1));
        let d = a.vconcat(&mat(&f, 1, 3, &[0, 0, 1])).unwrap();
        assert_eq!(d.rows(), 3);
        assert!(a.vconcat(&b).is_err());

        // empty products: (2x0) * (0x3) = 2x3 zeros
        let e = Matrix::zero(f.clone(), 2, 0).mul(&Matrix::zero(f.clone(), 0, 3)).unwrap();
        assert_eq!(e, Matrix::zero(f.clone(), 2, 3));
    }

    #[test]
    fn superregular_witnesses() {
        let f = gf(11);
        // a zero entry is the earliest witness
        let with_zero = mat(&f, 2, 2, &[1, 1, 0, 1]);
        assert_eq!(with_zero.first_singular_minor(), Some((vec![1], vec![0])));
        // all-ones: every entry fine, first 2x2 minor singular
        let ones = mat(&f, 2, 2, &[1, 1, 1, 1]);
        assert_eq!(ones.first_singular_minor(), Some((vec![0, 1], vec![0, 1])));
        // Cauchy matrices are superregular: 1/(x_i - y_j), distinct values
        let f7 = gf(7);
        let cauchy = Matrix::from_fn(f7.clone(), 3, 3, |i, j| {
            f7.from_int(i as u128).sub(&f7.from_int(3 + j as u128)).inv().unwrap()
        });
        assert!(cauchy.is_superregular());
        // empty matrix has no square minors at all
        assert!(Matrix::zero(f, 4, 0).is_superregular());
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(av in proptest::collection::vec(0u128..11, 9),
                                 bv in proptest::collection::vec(0u128..11, 9)) {
            let f = gf(11);
            let a = mat(&f, 3, 3, &av);
            let b = mat(&f, 3, 3, &bv);
            let lhs = a.mul(&b).unwrap().det().unwrap();
            let rhs = a.det().unwrap().mul(&b.det().unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn transpose_preserves_det(av in proptest::collection::vec(0u128..13, 16)) {
            let f = gf(13);
            let a = mat(&f, 4, 4, &av);
            prop_assert_eq!(a.det().unwrap(), a.transpose().det().unwrap());
        }
    }
}
