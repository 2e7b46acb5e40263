//! Dense exact matrices over [`Scalar`].
//!
//! Dimensions in this toolkit stay small (ambient spaces up to a few hundred
//! coordinates), so a dense row-major layout is used throughout. Elimination
//! routines skip zero multipliers, which is what makes the very sparse
//! cocycle-condition systems cheap in practice.

use super::scalar::Scalar;
use super::subspace::Subspace;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Errors for the exact linear algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactLinError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
}

/// Dense matrix with row-major entries, `entries.len() == rows * cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    /// Build from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + &(a * b);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length differs from cols");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += &(a * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|m| m.cols == cols));
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for m in parts {
            entries.extend(m.entries.iter().cloned());
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn pow(&self, mut exp: usize) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduced row-echelon form together with the rank.
    ///
    /// The result keeps the shape of `self` (zero rows included); pivots are 1
    /// and pivot columns are cleared, so the form is the canonical one.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = rref_in_place(&mut m);
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Null space `{v : self · v = 0}` as a canonical subspace of `k^cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, _) = self.rref();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        let mut pivot_cols = Vec::new();
        for row in 0..r.rows {
            if let Some(c) = (0..r.cols).find(|&c| !r.get(row, c).is_zero()) {
                pivot_of_col[c] = Some(row);
                pivot_cols.push(c);
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for &pc in &pivot_cols {
                let prow = pivot_of_col[pc].unwrap();
                v[pc] = -r.get(prow, free);
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Rows are first scaled to integers; the Bareiss recurrence then keeps
    /// all intermediates integral, which bounds coefficient growth far better
    /// than naive rational elimination.
    pub fn det(&self) -> Result<Scalar, ExactLinError> {
        if !self.is_square() {
            return Err(ExactLinError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }

        // Integerize row by row, remembering the total row multiplier.
        let mut denom = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut l = BigInt::one();
            for c in 0..n {
                l = l.lcm(self.get(r, c).denominator());
            }
            let row = (0..n)
                .map(|c| {
                    let e = self.get(r, c);
                    e.numerator() * (&l / e.denominator())
                })
                .collect();
            denom *= &l;
            m.push(row);
        }

        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Scalar::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = &m[n - 1][n - 1] * BigInt::from(sign);
        Ok(Scalar::new(det_int, denom).expect("nonzero denominator"))
    }

    /// A particular solution of `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length differs from rows");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (r, _) = aug.rref();
        let mut x = vec![Scalar::zero(); self.cols];
        for row in 0..r.rows {
            let pivot = (0..=self.cols).find(|&c| !r.get(row, c).is_zero());
            match pivot {
                Some(c) if c == self.cols => return None,
                Some(c) => x[c] = r.get(row, self.cols).clone(),
                None => {}
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let (r, _) = aug.rref();
        // Invertible iff the left block reduces to the identity; pivots that
        // fall into the right block witness a rank defect.
        for i in 0..n {
            for j in 0..n {
                let expect_one = i == j;
                if r.get(i, j).is_one() != expect_one || (!expect_one && !r.get(i, j).is_zero()) {
                    return None;
                }
            }
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// True iff `self^n = 0` where `n` is the matrix size.
    pub fn is_nilpotent(&self) -> Result<bool, ExactLinError> {
        if !self.is_square() {
            return Err(ExactLinError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(true);
        }
        Ok(self.pow(self.rows).is_zero())
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination to canonical RREF; returns the rank.
pub(crate) fn rref_in_place(m: &mut Matrix) -> usize {
    let rows = m.rows;
    let cols = m.cols;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(sel) = (pivot_row..rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if sel != pivot_row {
            for c in 0..cols {
                let a = m.get(sel, c).clone();
                let b = m.get(pivot_row, c).clone();
                m.set(sel, c, b);
                m.set(pivot_row, c, a);
            }
        }
        let inv = m.get(pivot_row, col).recip().expect("nonzero pivot");
        if !inv.is_one() {
            for c in col..cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
        }
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                let p = m.get(pivot_row, c);
                if p.is_zero() {
                    continue;
                }
                let v = m.get(r, c) - &(&factor * p);
                m.set(r, c, v);
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    /// Independent determinant oracle: Laplace expansion along the first row.
    fn det_laplace(m: &Matrix) -> Scalar {
        assert!(m.is_square());
        let n = m.rows();
        if n == 0 {
            return Scalar::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Scalar::zero();
        for c in 0..n {
            let a = m.get(0, c);
            if a.is_zero() {
                continue;
            }
            let minor = Matrix::from_fn(n - 1, n - 1, |i, j| {
                m.get(i + 1, if j < c { j } else { j + 1 }).clone()
            });
            let term = a * &det_laplace(&minor);
            if c % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    #[test]
    fn rref_identity_and_dependent_rows() {
        let (r, rank) = Matrix::identity(2).rref();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(rank, 2);

        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, Matrix::from_int_rows(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_of_skew_pairing_matrix_has_full_rank() {
        // Nondegenerate skew 4x4 with antidiagonal +-1 entries.
        let m = Matrix::from_int_rows(&[
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
            &[0, -1, 0, 0],
            &[-1, 0, 0, 0],
        ]);
        assert_eq!(m.rref().1, 4);
        assert_eq!(m.det().unwrap(), Scalar::one());
        assert_eq!(det_laplace(&m), Scalar::one());
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(Matrix::zeros(3, 3).kernel().dim(), 3);
        assert_eq!(Matrix::identity(3).kernel().dim(), 0);
    }

    #[test]
    fn det_identity_and_errors() {
        assert_eq!(Matrix::identity(5).det().unwrap(), Scalar::one());
        assert!(matches!(
            Matrix::zeros(2, 3).det(),
            Err(ExactLinError::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn det_generic_two_cocycle_family() {
        // Skew family with rows (0 a b c / -a 0 d 0 / -b -d 0 0 / -c 0 0 0):
        // determinant is (c*d)^2 for all parameter values.
        let cases = [
            (q(1, 1), q(2, 1), q(3, 1), q(5, 2)),
            (q(-1, 3), q(0, 1), q(7, 1), q(1, 4)),
        ];
        for (a, b, c, d) in cases {
            let z = Scalar::zero();
            let m = Matrix::from_rows(vec![
                vec![z.clone(), a.clone(), b.clone(), c.clone()],
                vec![-&a, z.clone(), d.clone(), z.clone()],
                vec![-&b, -&d, z.clone(), z.clone()],
                vec![-&c, z.clone(), z.clone(), z.clone()],
            ]);
            let expected = (&c * &d).pow(2);
            assert_eq!(m.det().unwrap(), expected);
            assert_eq!(det_laplace(&m), expected);
        }
    }

    #[test]
    fn solve_basic() {
        let id = Matrix::identity(3);
        let b = vec![q(1, 2), q(-2, 1), q(0, 1)];
        assert_eq!(id.solve(&b).unwrap(), b);

        let zero = Matrix::zeros(2, 2);
        assert_eq!(zero.solve(&[q(1, 1), q(0, 1)]), None);

        // Underdetermined but consistent.
        let m = Matrix::from_int_rows(&[&[1, 1]]);
        let x = m.solve(&[q(3, 1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(3, 1)]);
    }

    #[test]
    fn nilpotency() {
        let strict_upper = Matrix::from_int_rows(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        assert!(strict_upper.is_nilpotent().unwrap());
        assert!(!Matrix::identity(3).is_nilpotent().unwrap());
        // Nonsingular diagonal: never nilpotent.
        let d = Matrix::from_int_rows(&[
            &[1, 0, 0, 0, 0, 0],
            &[0, 2, 0, 0, 0, 0],
            &[0, 0, 3, 0, 0, 0],
            &[0, 0, 0, 4, 0, 0],
            &[0, 0, 0, 0, 5, 0],
            &[0, 0, 0, 0, 0, 7],
        ]);
        assert!(!d.is_nilpotent().unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-6i64..7, 1i64..4).prop_map(|(p, q)| Scalar::ratio(p, q))
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(small_scalar(), n * n)
            .prop_map(move |v| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rank_of_rref_is_stable(n in 1usize..5, seed in small_matrix(4)) {
            let m = Matrix::from_fn(n, n, |r, c| seed.get(r % 4, c % 4).clone());
            let (r, rank) = m.rref();
            prop_assert_eq!(r.rank(), rank);
            prop_assert_eq!(m.kernel().dim() + rank, m.cols());
        }

        // Exact multiplicativity of det on sizes up to 6.
        #[test]
        fn det_is_multiplicative(n in 1usize..7, a in small_matrix(6), b in small_matrix(6)) {
            let a = Matrix::from_fn(n, n, |r, c| a.get(r, c).clone());
            let b = Matrix::from_fn(n, n, |r, c| b.get(r, c).clone());
            let lhs = a.mul(&b).det().unwrap();
            let rhs = a.det().unwrap() * b.det().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn det_matches_laplace_oracle(n in 1usize..5, a in small_matrix(4)) {
            let a = Matrix::from_fn(n, n, |r, c| a.get(r, c).clone());
            prop_assert_eq!(a.det().unwrap(), det_laplace(&a));
        }
    }
}
