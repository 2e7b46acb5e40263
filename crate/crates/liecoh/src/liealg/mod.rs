//! Lie algebras over the rationals given by structure constants.
//!
//! A [`LieAlgebra`] stores the coefficients of `[e_i, e_j]` for `i < j` only;
//! the other brackets follow from antisymmetry. Basis indices are 0-based
//! inside the crate and 1-based in every serialized form and report, matching
//! the usual mathematical notation.

mod catalog;
mod json;

pub use catalog::{catalog, catalog_entries, CatalogEntry, CatalogError};

use std::collections::BTreeMap;

use crate::exactlin::{Matrix, Scalar, Subspace};

/// Errors for Lie algebra construction and structural computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieAlgError {
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bracket key ({i},{j}) is invalid for dimension {dim} (need i < j, both < dim)")]
    BadBracketIndex { i: usize, j: usize, dim: usize },
    #[error("structure constants violate the Jacobi identity")]
    NotALieAlgebra,
}

/// One failed instance of the Jacobi identity: the coefficient of `e_l` in
/// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub residual: Scalar,
}

/// Structural summary of a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    /// Dimensions of the lower central series until stabilization.
    pub lower_central_dims: Vec<usize>,
    /// Dimensions of the derived series until stabilization.
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
    /// Smallest `p` with vanishing `p`-th lower central term, when nilpotent.
    pub nilindex: Option<usize>,
    pub is_nilpotent: bool,
    /// Nilpotent of maximal nilindex `dim - 1`.
    pub is_filiform: bool,
}

/// Bilinear form on the algebra, no symmetry assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Self {
        assert!(matrix.is_square(), "bilinear form matrix must be square");
        BilinearForm { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for r in 0..self.dim() {
            if x[r].is_zero() {
                continue;
            }
            for c in 0..self.dim() {
                let m = self.matrix.get(r, c);
                if m.is_zero() || y[c].is_zero() {
                    continue;
                }
                acc += &(&(&x[r] * m) * &y[c]);
            }
        }
        acc
    }

    /// Invariance `B([x,y],z) = B(x,[y,z])` checked on all basis triples.
    pub fn is_invariant(&self, g: &LieAlgebra) -> bool {
        let n = g.dim();
        assert_eq!(n, self.dim());
        let basis: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vector(n, i)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.eval(&g.basis_bracket(i, j), &basis[k]);
                    let rhs = self.eval(&basis[i], &g.basis_bracket(j, k));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Finite-dimensional Lie algebra presented by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `(i, j) -> coefficients of [e_i, e_j]`, 0-based, `i < j`, zero brackets
    /// omitted.
    constants: BTreeMap<(usize, usize), Vec<Scalar>>,
    label: Option<String>,
}

impl LieAlgebra {
    /// Build from bracket data. Keys are 0-based with `i < j`; coefficient
    /// vectors must have length `dim`. The Jacobi identity is NOT enforced
    /// here; call [`jacobi_check`](Self::jacobi_check).
    pub fn new(
        dim: usize,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<Scalar>)>,
        label: Option<String>,
    ) -> Result<Self, LieAlgError> {
        let mut constants = BTreeMap::new();
        for ((i, j), coeffs) in brackets {
            if i >= j || j >= dim {
                return Err(LieAlgError::BadBracketIndex { i, j, dim });
            }
            if coeffs.len() != dim {
                return Err(LieAlgError::DimensionMismatch {
                    expected: dim,
                    got: coeffs.len(),
                });
            }
            if coeffs.iter().all(Scalar::is_zero) {
                continue;
            }
            constants.insert((i, j), coeffs);
        }
        Ok(LieAlgebra {
            dim,
            constants,
            label,
        })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            constants: BTreeMap::new(),
            label: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Stored nonzero brackets, 0-based keys with `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Scalar>)> {
        self.constants.iter()
    }

    /// `[e_i, e_j]` for any pair of 0-based indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => vec![Scalar::zero(); self.dim],
            Ordering::Less => self
                .constants
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![Scalar::zero(); self.dim]),
            Ordering::Greater => match self.constants.get(&(j, i)) {
                Some(v) => v.iter().map(|c| -c).collect(),
                None => vec![Scalar::zero(); self.dim],
            },
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, LieAlgError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LieAlgError::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        let mut acc = vec![Scalar::zero(); self.dim];
        for (&(i, j), coeffs) in &self.constants {
            // [x, y] picks up (x_i y_j - x_j y_i) [e_i, e_j].
            let factor = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if factor.is_zero() {
                continue;
            }
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc[k] += &(&factor * c);
                }
            }
        }
        Ok(acc)
    }

    /// Matrix of `ad(e_i) : x -> [e_i, x]` in the given basis.
    pub fn ad(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.basis_bracket(i, j);
            for (r, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(r, j, c);
                }
            }
        }
        m
    }

    /// Matrix of `ad(x)` for an arbitrary element.
    pub fn ad_vec(&self, x: &[Scalar]) -> Result<Matrix, LieAlgError> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(x, &unit_vector(self.dim, j))?;
            for (r, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(r, j, c);
                }
            }
        }
        Ok(m)
    }

    /// All failures of the Jacobi identity over basis triples `i < j < k`,
    /// reported with 1-based indices. Empty iff the constants define a Lie
    /// algebra.
    pub fn jacobi_check(&self) -> Vec<JacobiViolation> {
        let n = self.dim;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let bij = self.basis_bracket(i, j);
                for k in j + 1..n {
                    let bjk = self.basis_bracket(j, k);
                    let bki = self.basis_bracket(k, i);
                    let mut acc = self.bracket_with_basis(&bij, k);
                    add_assign(&mut acc, &self.bracket_with_basis(&bjk, i));
                    add_assign(&mut acc, &self.bracket_with_basis(&bki, j));
                    for (l, r) in acc.into_iter().enumerate() {
                        if !r.is_zero() {
                            violations.push(JacobiViolation {
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                                l: l + 1,
                                residual: r,
                            });
                        }
                    }
                }
            }
        }
        violations
    }

    pub fn is_lie_algebra(&self) -> bool {
        self.jacobi_check().is_empty()
    }

    fn require_lie_algebra(&self) -> Result<(), LieAlgError> {
        if self.is_lie_algebra() {
            Ok(())
        } else {
            Err(LieAlgError::NotALieAlgebra)
        }
    }

    /// `[v, e_k]` for a coefficient vector `v`.
    fn bracket_with_basis(&self, v: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.dim];
        for (m, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let bmk = self.basis_bracket(m, k);
            for (l, b) in bmk.into_iter().enumerate() {
                if !b.is_zero() {
                    acc[l] += &(c * &b);
                }
            }
        }
        acc
    }

    /// Span of `[A, B]` for two subspaces.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut spanning = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                spanning.push(self.bracket(&x, &y).expect("dimensions agree"));
            }
        }
        Subspace::from_spanning(self.dim, spanning)
    }

    /// Derived subalgebra `[g, g]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        let full = Subspace::full(self.dim);
        self.bracket_subspaces(&full, &full)
    }

    /// Lower central series `g ⊇ [g,g] ⊇ [[g,g],g] ⊇ …` until it stabilizes.
    /// A stabilized nonzero tail is witnessed by one repeated entry; the zero
    /// subspace terminates the list on first appearance.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>, LieAlgError> {
        self.require_lie_algebra()?;
        let full = Subspace::full(self.dim);
        let mut series = vec![full.clone()];
        loop {
            let prev = series.last().unwrap();
            let next = self.bracket_subspaces(prev, &full);
            if next.is_zero() {
                if !prev.is_zero() {
                    series.push(next);
                }
                break;
            }
            let stabilized = &next == prev;
            series.push(next);
            if stabilized {
                break;
            }
        }
        Ok(series)
    }

    /// Derived series with the same stabilization convention.
    pub fn derived_series(&self) -> Result<Vec<Subspace>, LieAlgError> {
        self.require_lie_algebra()?;
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let prev = series.last().unwrap();
            let next = self.bracket_subspaces(prev, prev);
            if next.is_zero() {
                if !prev.is_zero() {
                    series.push(next);
                }
                break;
            }
            let stabilized = &next == prev;
            series.push(next);
            if stabilized {
                break;
            }
        }
        Ok(series)
    }

    /// Center `{z : [z, x] = 0 for all x}`.
    pub fn center(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        let stacked: Vec<Matrix> = (0..self.dim).map(|j| self.ad(j)).collect();
        let refs: Vec<&Matrix> = stacked.iter().collect();
        // z central iff ad(e_j) z = -[z, e_j] = 0 for all j.
        Matrix::vstack(&refs).kernel()
    }

    /// Aggregate structural report.
    pub fn series_report(&self) -> Result<SeriesReport, LieAlgError> {
        let lcs = self.lower_central_series()?;
        let ds = self.derived_series()?;
        let lower_central_dims: Vec<usize> = lcs.iter().map(Subspace::dim).collect();
        let derived_dims: Vec<usize> = ds.iter().map(Subspace::dim).collect();
        let is_nilpotent = lcs.last().map(Subspace::is_zero).unwrap_or(true);
        let nilindex = if is_nilpotent {
            Some(lcs.len() - 1)
        } else {
            None
        };
        let is_filiform = match nilindex {
            Some(p) => self.dim >= 1 && p + 1 == self.dim,
            None => false,
        };
        Ok(SeriesReport {
            lower_central_dims,
            derived_dims,
            center_dim: self.center().dim(),
            nilindex,
            is_nilpotent,
            is_filiform,
        })
    }

    /// All invariant bilinear forms `B([x,y],z) = B(x,[y,z])`, as a subspace
    /// of the `n^2` matrix coordinates in row-major order.
    pub fn invariant_forms(&self) -> Subspace {
        let n = self.dim;
        if n == 0 {
            return Subspace::zero(0);
        }
        let idx = |r: usize, c: usize| r * n + c;
        let mut conditions = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let bij = self.basis_bracket(i, j);
                for k in 0..n {
                    let bjk = self.basis_bracket(j, k);
                    let mut row = vec![Scalar::zero(); n * n];
                    let mut nonzero = false;
                    for (m, c) in bij.iter().enumerate() {
                        if !c.is_zero() {
                            row[idx(m, k)] += c;
                            nonzero = true;
                        }
                    }
                    for (m, c) in bjk.iter().enumerate() {
                        if !c.is_zero() {
                            row[idx(i, m)] -= c;
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        conditions.push(row);
                    }
                }
            }
        }
        if conditions.is_empty() {
            return Subspace::full(n * n);
        }
        Matrix::from_rows(conditions).kernel()
    }

    /// Direct sum with a trivial (abelian) factor of dimension `extra`.
    pub fn extend_by_abelian(&self, extra: usize) -> LieAlgebra {
        let dim = self.dim + extra;
        let constants = self
            .constants
            .iter()
            .map(|(&(i, j), coeffs)| {
                let mut v = coeffs.clone();
                v.resize(dim, Scalar::zero());
                ((i, j), v)
            })
            .collect();
        LieAlgebra {
            dim,
            constants,
            label: None,
        }
    }

    /// Direct sum of two algebras on disjoint basis blocks.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let dim = self.dim + other.dim;
        let mut constants: BTreeMap<(usize, usize), Vec<Scalar>> = BTreeMap::new();
        for (&(i, j), coeffs) in &self.constants {
            let mut v = coeffs.clone();
            v.resize(dim, Scalar::zero());
            constants.insert((i, j), v);
        }
        for (&(i, j), coeffs) in &other.constants {
            let mut v = vec![Scalar::zero(); self.dim];
            v.extend(coeffs.iter().cloned());
            constants.insert((i + self.dim, j + self.dim), v);
        }
        LieAlgebra {
            dim,
            constants,
            label: None,
        }
    }

    /// Conjugate the structure constants by an invertible change of basis:
    /// the new basis vectors are the columns of `t`.
    pub fn change_basis(&self, t: &Matrix) -> Result<LieAlgebra, LieAlgError> {
        assert!(t.is_square() && t.rows() == self.dim);
        let t_inv = t
            .inverse()
            .ok_or(LieAlgError::DimensionMismatch {
                expected: self.dim,
                got: 0,
            })?;
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            let fi = t.col_vec(i);
            for j in i + 1..self.dim {
                let fj = t.col_vec(j);
                let b = self.bracket(&fi, &fj)?;
                brackets.push(((i, j), t_inv.mul_vec(&b)));
            }
        }
        LieAlgebra::new(self.dim, brackets, self.label.clone())
    }

    /// Stable structural hash (FNV-1a over a canonical encoding); used to key
    /// reproducible random streams.
    pub fn stable_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(&(self.dim as u64).to_le_bytes());
        for (&(i, j), coeffs) in &self.constants {
            eat(&(i as u64).to_le_bytes());
            eat(&(j as u64).to_le_bytes());
            for c in coeffs {
                eat(c.to_string().as_bytes());
                eat(b";");
            }
        }
        h
    }
}

fn add_assign(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    fn n4() -> LieAlgebra {
        catalog("n4", &BTreeMap::new()).unwrap()
    }

    #[test]
    fn bracket_bilinearity_on_n4() {
        let g = n4();
        let e1 = unit_vector(4, 0);
        let e2 = unit_vector(4, 1);
        assert_eq!(g.bracket(&e1, &e2).unwrap(), unit_vector(4, 2));
        // [x, x] = 0 for a random-ish x.
        let x = vec![q(3, 2), q(-1, 1), q(5, 7), q(2, 1)];
        assert!(g.bracket(&x, &x).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn bracket_on_r2_reproduces_e1() {
        let g = catalog("r2", &BTreeMap::new()).unwrap();
        let e1 = unit_vector(2, 0);
        let e2 = unit_vector(2, 1);
        assert_eq!(g.bracket(&e1, &e2).unwrap(), e1);
    }

    #[test]
    fn jacobi_holds_on_catalog_examples() {
        assert!(LieAlgebra::abelian(5).jacobi_check().is_empty());
        assert!(n4().jacobi_check().is_empty());
    }

    #[test]
    fn jacobi_violation_is_reported_with_residual() {
        // Filiform-shaped constants that break the Jacobi identity: the
        // triple (2,3,4) fails in the e9 coordinate with residual -3/100.
        let p = crate::filiform::FiliformParams::new(
            12,
            [((2, 5), q(1, 1)), ((3, 7), q(1, 10))].into_iter().collect(),
        )
        .unwrap();
        let g = crate::filiform::build(&p);
        let violations = g.jacobi_check();
        assert!(!violations.is_empty());
        let v = violations
            .iter()
            .find(|v| (v.i, v.j, v.k, v.l) == (2, 3, 4, 9))
            .expect("violation at (2,3,4,9)");
        assert_eq!(v.residual.abs(), q(3, 100));
    }

    #[test]
    fn lower_central_series_dims() {
        let abelian = LieAlgebra::abelian(3);
        let dims: Vec<usize> = abelian
            .lower_central_series()
            .unwrap()
            .iter()
            .map(Subspace::dim)
            .collect();
        assert_eq!(dims, vec![3, 0]);

        let dims: Vec<usize> = n4()
            .lower_central_series()
            .unwrap()
            .iter()
            .map(Subspace::dim)
            .collect();
        assert_eq!(dims, vec![4, 2, 1, 0]);

        // Non-nilpotent: the stable term repeats once.
        let r2 = catalog("r2", &BTreeMap::new()).unwrap();
        let dims: Vec<usize> = r2
            .lower_central_series()
            .unwrap()
            .iter()
            .map(Subspace::dim)
            .collect();
        assert_eq!(dims, vec![2, 1, 1]);
    }

    #[test]
    fn centers() {
        assert_eq!(LieAlgebra::abelian(4).center().dim(), 4);
        let contre = catalog("contre6", &BTreeMap::new()).unwrap();
        let z = contre.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains_vec(&unit_vector(6, 5)));
        assert_eq!(catalog("r2", &BTreeMap::new()).unwrap().center().dim(), 0);
    }

    #[test]
    fn series_reports() {
        let rep = n4().series_report().unwrap();
        assert!(rep.is_filiform);
        assert_eq!(rep.nilindex, Some(3));

        let heis = catalog("n3", &BTreeMap::new()).unwrap();
        let rep = heis.series_report().unwrap();
        assert_eq!(rep.nilindex, Some(2));
        assert!(rep.is_filiform);

        let rep = catalog("r2", &BTreeMap::new()).unwrap().series_report().unwrap();
        assert!(!rep.is_nilpotent);
        assert_eq!(rep.nilindex, None);
    }

    #[test]
    fn invariant_forms_dimensions() {
        // Abelian: every bilinear form is invariant.
        assert_eq!(LieAlgebra::abelian(3).invariant_forms().dim(), 9);
        // Heisenberg has nonzero invariant forms.
        let heis = catalog("n3", &BTreeMap::new()).unwrap();
        assert!(heis.invariant_forms().dim() > 0);
        // Pullbacks of forms on the 2-dimensional abelianization: dim 4.
        assert_eq!(n4().invariant_forms().dim(), 4);
    }

    #[test]
    fn invariant_forms_members_check_out() {
        let g = n4();
        let forms = g.invariant_forms();
        for v in forms.basis_vectors() {
            let m = Matrix::from_fn(4, 4, |r, c| v[r * 4 + c].clone());
            assert!(BilinearForm::new(m).is_invariant(&g));
        }
    }

    #[test]
    fn kernel_of_ad_e1_on_n4() {
        // ad(e1) sends e2 -> e3 -> e4; kernel is spanned by e1 and e4.
        let g = n4();
        let ker = g.ad(0).kernel();
        assert_eq!(ker.dim(), 2);
        assert!(ker.contains_vec(&unit_vector(4, 0)));
        assert!(ker.contains_vec(&unit_vector(4, 3)));
    }

    #[test]
    fn ad_kernels_intersect_in_center_direction() {
        let g = catalog("contre6", &BTreeMap::new()).unwrap();
        let k1 = g.ad(0).kernel();
        let k2 = g.ad(1).kernel();
        let both = k1.intersect(&k2).unwrap();
        assert!(both.contains_vec(&unit_vector(6, 5)));
    }

    #[test]
    fn bracket_antisymmetry_on_random_vectors() {
        let g = catalog("g6", &BTreeMap::new()).unwrap();
        let xs = [
            vec![q(1, 1), q(2, 1), q(-1, 2), q(3, 1)],
            vec![q(0, 1), q(-5, 3), q(1, 1), q(7, 2)],
        ];
        for x in &xs {
            for y in &xs {
                let mut sum = g.bracket(x, y).unwrap();
                add_assign(&mut sum, &g.bracket(y, x).unwrap());
                assert!(sum.iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn stable_hash_distinguishes_and_reproduces() {
        let a = n4();
        assert_eq!(a.stable_hash(), n4().stable_hash());
        assert_ne!(
            a.stable_hash(),
            catalog("contre6", &BTreeMap::new()).unwrap().stable_hash()
        );
    }

    #[test]
    fn change_basis_round_trip() {
        let g = n4();
        let t = Matrix::from_int_rows(&[
            &[1, 0, 0, 0],
            &[1, 2, 0, 0],
            &[0, 0, 1, 3],
            &[0, 0, 0, 1],
        ]);
        let h = g.change_basis(&t).unwrap();
        assert!(h.is_lie_algebra());
        let back = h.change_basis(&t.inverse().unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
