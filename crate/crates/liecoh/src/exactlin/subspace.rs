//! Canonical subspaces of a coordinatized ambient space.
//!
//! A subspace is stored as the reduced row-echelon basis of its span. RREF is
//! unique for a given row space, so two subspaces are equal exactly when their
//! basis matrices are equal entry-by-entry, and `PartialEq` can be derived.

use super::matrix::{rref_in_place, ExactLinError, Matrix};
use super::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Span of the given vectors, canonicalized.
    pub fn from_spanning(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient_dim),
            "spanning vector of wrong length"
        );
        let mut m = Matrix::from_rows(vectors);
        if m.rows() == 0 {
            return Subspace::zero(ambient_dim);
        }
        let rank = rref_in_place(&mut m);
        let basis = Matrix::from_fn(rank, ambient_dim, |r, c| m.get(r, c).clone());
        Subspace {
            ambient_dim,
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical RREF basis; rows are the basis vectors.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|r| self.basis.row_vec(r)).collect()
    }

    /// Reduce `v` against the basis; membership iff the residue vanishes.
    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut v = v.to_vec();
        for r in 0..self.dim() {
            let pivot = (0..self.ambient_dim)
                .find(|&c| !self.basis.get(r, c).is_zero())
                .expect("basis rows are nonzero");
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            for c in pivot..self.ambient_dim {
                let b = self.basis.get(r, c);
                if !b.is_zero() {
                    let nv = &v[c] - &(&factor * b);
                    v[c] = nv;
                }
            }
        }
        v.iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other
            .basis_vectors()
            .iter()
            .all(|v| self.contains_vec(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactLinError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ExactLinError::AmbientMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Ok(Subspace::from_spanning(self.ambient_dim, rows))
    }

    /// Linear conditions cutting out the subspace: rows `a` with
    /// `self = {x : a · x = 0 for all rows a}`.
    pub fn membership_conditions(&self) -> Matrix {
        if self.dim() == 0 {
            return Matrix::identity(self.ambient_dim);
        }
        let ann = self.basis.kernel();
        ann.basis().clone()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactLinError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ExactLinError::AmbientMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        let ca = self.membership_conditions();
        let cb = other.membership_conditions();
        Ok(Matrix::vstack(&[&ca, &cb]).kernel())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::from_spanning(
            3,
            vec![
                vec![q(2, 1), q(0, 1), q(2, 1)],
                vec![q(0, 1), q(3, 1), q(0, 1)],
            ],
        );
        let b = Subspace::from_spanning(
            3,
            vec![
                vec![q(1, 1), q(3, 1), q(1, 1)],
                vec![q(0, 1), q(1, 1), q(0, 1)],
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersect_with_full_space_is_identity() {
        let a = Subspace::from_spanning(4, vec![vec![q(1, 1), q(2, 1), q(0, 1), q(1, 1)]]);
        assert_eq!(a.intersect(&Subspace::full(4)).unwrap(), a);
    }

    #[test]
    fn distinct_lines_meet_in_zero() {
        let x = Subspace::from_spanning(2, vec![vec![q(1, 1), q(0, 1)]]);
        let y = Subspace::from_spanning(2, vec![vec![q(1, 1), q(1, 1)]]);
        assert!(x.intersect(&y).unwrap().is_zero());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert_eq!(
            a.intersect(&b),
            Err(ExactLinError::AmbientMismatch(2, 3))
        );
    }

    fn small_subspace(n: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(
            proptest::collection::vec((-3i64..4).prop_map(Scalar::from_int), n),
            0..4,
        )
        .prop_map(move |rows| Subspace::from_spanning(n, rows))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn intersection_laws(a in small_subspace(4), b in small_subspace(4)) {
            let cap = a.intersect(&b).unwrap();
            prop_assert!(a.contains(&cap));
            prop_assert!(b.contains(&cap));
            let sum = a.sum(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), cap.dim() + sum.dim());
        }
    }
}
