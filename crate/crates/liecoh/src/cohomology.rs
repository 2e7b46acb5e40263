//! Chevalley–Eilenberg cochains in degrees 0–2.
//!
//! Degree-2 cohomology with trivial coefficients drives the symplecticity
//! analysis; degree-1 cohomology with the adjoint module gives derivations
//! and with the coadjoint module the space that scalar two-cocycles embed
//! into. Coordinates on skew forms are the pairs `(i, j)`, `i < j`, in
//! lexicographic order, so all reported bases are reproducible.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exactlin::{Matrix, Scalar, Subspace};
use crate::liealg::LieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("structure constants violate the Jacobi identity")]
    NotALieAlgebra,
    #[error("matrices do not define a module action: {0}")]
    NotARepresentation(String),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
}

/// Lexicographic list of index pairs `(i, j)` with `i < j`, 0-based.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Position of the pair `(i, j)`, `i < j`, in [`pair_list`].
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Skew-symmetric bilinear form on an `n`-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForm {
    matrix: Matrix,
}

impl TwoForm {
    pub fn new(matrix: Matrix) -> Result<Self, CohomologyError> {
        if !matrix.is_square() {
            return Err(CohomologyError::NotSkewSymmetric);
        }
        let n = matrix.rows();
        for i in 0..n {
            for j in i..n {
                if *matrix.get(i, j) != -matrix.get(j, i) {
                    return Err(CohomologyError::NotSkewSymmetric);
                }
            }
        }
        Ok(TwoForm { matrix })
    }

    pub fn zero(n: usize) -> Self {
        TwoForm {
            matrix: Matrix::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let n = self.dim();
        let mut acc = Scalar::zero();
        for r in 0..n {
            if x[r].is_zero() {
                continue;
            }
            for c in 0..n {
                let m = self.matrix.get(r, c);
                if !m.is_zero() && !y[c].is_zero() {
                    acc += &(&(&x[r] * m) * &y[c]);
                }
            }
        }
        acc
    }

    /// Coordinates in the fixed pair order.
    pub fn to_coords(&self) -> Vec<Scalar> {
        pair_list(self.dim())
            .into_iter()
            .map(|(i, j)| self.matrix.get(i, j).clone())
            .collect()
    }

    pub fn from_coords(n: usize, coords: &[Scalar]) -> Self {
        let pairs = pair_list(n);
        assert_eq!(coords.len(), pairs.len(), "coordinate count mismatch");
        let mut m = Matrix::zeros(n, n);
        for ((i, j), c) in pairs.into_iter().zip(coords) {
            if !c.is_zero() {
                m.set(i, j, c.clone());
                m.set(j, i, -c);
            }
        }
        TwoForm { matrix: m }
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        TwoForm {
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn scale(&self, k: &Scalar) -> TwoForm {
        TwoForm {
            matrix: self.matrix.scale(k),
        }
    }
}

/// Representation of the algebra on a module, given by the action matrices
/// of the basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleAction {
    dim_g: usize,
    dim_m: usize,
    rho: Vec<Matrix>,
}

impl ModuleAction {
    /// Checks the representation property
    /// `rho_i rho_j - rho_j rho_i = rho([e_i, e_j])` on all basis pairs.
    pub fn new(g: &LieAlgebra, rho: Vec<Matrix>) -> Result<Self, CohomologyError> {
        let n = g.dim();
        if rho.len() != n {
            return Err(CohomologyError::NotARepresentation(format!(
                "expected {n} action matrices, got {}",
                rho.len()
            )));
        }
        let dim_m = rho.first().map_or(0, Matrix::rows);
        for m in &rho {
            if m.rows() != dim_m || m.cols() != dim_m {
                return Err(CohomologyError::NotARepresentation(
                    "action matrices must be square of equal size".to_string(),
                ));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = rho[i].mul(&rho[j]).sub(&rho[j].mul(&rho[i]));
                let mut rhs = Matrix::zeros(dim_m, dim_m);
                for (k, c) in g.basis_bracket(i, j).into_iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&rho[k].scale(&c));
                    }
                }
                if lhs != rhs {
                    return Err(CohomologyError::NotARepresentation(format!(
                        "representation property fails on the pair ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(ModuleAction { dim_g: n, dim_m, rho })
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn rho(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    /// Action of basis vector `e_i` on a module element.
    pub fn act(&self, i: usize, m: &[Scalar]) -> Vec<Scalar> {
        self.rho[i].mul_vec(m)
    }

    /// Invariants `{m : e_i · m = 0 for all i}`.
    pub fn invariants(&self) -> Subspace {
        if self.dim_g == 0 || self.dim_m == 0 {
            return Subspace::full(self.dim_m);
        }
        let refs: Vec<&Matrix> = self.rho.iter().collect();
        Matrix::vstack(&refs).kernel()
    }
}

fn require_lie(g: &LieAlgebra) -> Result<(), CohomologyError> {
    if g.is_lie_algebra() {
        Ok(())
    } else {
        Err(CohomologyError::NotALieAlgebra)
    }
}

/// One-dimensional trivial module.
pub fn trivial_module(g: &LieAlgebra) -> Result<ModuleAction, CohomologyError> {
    require_lie(g)?;
    ModuleAction::new(g, vec![Matrix::zeros(1, 1); g.dim()])
}

/// The algebra acting on itself by `ad`.
pub fn adjoint_module(g: &LieAlgebra) -> Result<ModuleAction, CohomologyError> {
    require_lie(g)?;
    let rho = (0..g.dim()).map(|i| g.ad(i)).collect();
    ModuleAction::new(g, rho)
}

/// Dual module: `(x · f)(y) = -f([x, y])`, i.e. minus the transpose of `ad`.
pub fn coadjoint_module(g: &LieAlgebra) -> Result<ModuleAction, CohomologyError> {
    require_lie(g)?;
    let rho = (0..g.dim()).map(|i| g.ad(i).transpose().neg()).collect();
    ModuleAction::new(g, rho)
}

/// The differential of a linear functional: `(df)(x ∧ y) = f([x, y])`.
pub fn d1_trivial(g: &LieAlgebra, f: &[Scalar]) -> TwoForm {
    let n = g.dim();
    assert_eq!(f.len(), n);
    let mut m = Matrix::zeros(n, n);
    for (i, j) in pair_list(n) {
        let mut v = Scalar::zero();
        for (k, c) in g.basis_bracket(i, j).into_iter().enumerate() {
            if !c.is_zero() && !f[k].is_zero() {
                v += &(&c * &f[k]);
            }
        }
        if !v.is_zero() {
            m.set(i, j, v.clone());
            m.set(j, i, -v);
        }
    }
    TwoForm { matrix: m }
}

/// Closedness of a skew form on all basis triples.
pub fn is_cocycle(g: &LieAlgebra, form: &TwoForm) -> bool {
    let n = g.dim();
    assert_eq!(form.dim(), n);
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| crate::liealg::unit_vector(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let bij = g.basis_bracket(i, j);
            for k in j + 1..n {
                let bik = g.basis_bracket(i, k);
                let bjk = g.basis_bracket(j, k);
                let val = &(&form.eval(&bij, &basis[k]) - &form.eval(&bik, &basis[j]))
                    + &form.eval(&bjk, &basis[i]);
                if !val.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// The space of closed skew forms, in pair coordinates.
pub fn two_cocycles(g: &LieAlgebra) -> Result<Subspace, CohomologyError> {
    require_lie(g)?;
    let n = g.dim();
    let pairs = pair_list(n);
    let ncols = pairs.len();
    if n < 3 {
        return Ok(Subspace::full(ncols));
    }
    // omega(v, e_c) as a linear functional in the pair coordinates.
    let add_eval = |row: &mut [Scalar], v: &[Scalar], c: usize, sign: i64| {
        let sign = Scalar::from_int(sign);
        for (m, coeff) in v.iter().enumerate() {
            if coeff.is_zero() || m == c {
                continue;
            }
            let (idx, flip) = if m < c {
                (pair_index(n, m, c), false)
            } else {
                (pair_index(n, c, m), true)
            };
            let mut term = coeff * &sign;
            if flip {
                term = -term;
            }
            row[idx] += &term;
        }
    };
    let mut conditions = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let bij = g.basis_bracket(i, j);
            for k in j + 1..n {
                let bik = g.basis_bracket(i, k);
                let bjk = g.basis_bracket(j, k);
                let mut row = vec![Scalar::zero(); ncols];
                add_eval(&mut row, &bij, k, 1);
                add_eval(&mut row, &bik, j, -1);
                add_eval(&mut row, &bjk, i, 1);
                if row.iter().any(|c| !c.is_zero()) {
                    conditions.push(row);
                }
            }
        }
    }
    if conditions.is_empty() {
        return Ok(Subspace::full(ncols));
    }
    Ok(Matrix::from_rows(conditions).kernel())
}

/// The space of exact skew forms `f([x, y])`, dimension `dim [g, g]`.
pub fn two_coboundaries(g: &LieAlgebra) -> Result<Subspace, CohomologyError> {
    require_lie(g)?;
    let n = g.dim();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|m| {
            let f = crate::liealg::unit_vector(n, m);
            d1_trivial(g, &f).to_coords()
        })
        .collect();
    Ok(Subspace::from_spanning(n * n.saturating_sub(1) / 2, rows))
}

/// Second scalar cohomology data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyResult {
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub z_basis: Subspace,
    pub b_basis: Subspace,
    /// Cocycles whose classes form a basis of the quotient: the canonical
    /// complement picked greedily from the RREF basis of the cocycle space.
    pub h_reps: Vec<Vec<Scalar>>,
}

impl CohomologyResult {
    pub fn h_rep_forms(&self, n: usize) -> Vec<TwoForm> {
        self.h_reps
            .iter()
            .map(|coords| TwoForm::from_coords(n, coords))
            .collect()
    }
}

pub fn h2(g: &LieAlgebra) -> Result<CohomologyResult, CohomologyError> {
    let z_basis = two_cocycles(g)?;
    let b_basis = two_coboundaries(g)?;
    debug_assert!(z_basis.contains(&b_basis));
    let mut h_reps = Vec::new();
    let mut spanned = b_basis.clone();
    for row in z_basis.basis_vectors() {
        if spanned.contains_vec(&row) {
            continue;
        }
        let mut rows = spanned.basis_vectors();
        rows.push(row.clone());
        spanned = Subspace::from_spanning(spanned.ambient_dim(), rows);
        h_reps.push(row);
    }
    Ok(CohomologyResult {
        dim_z: z_basis.dim(),
        dim_b: b_basis.dim(),
        dim_h: z_basis.dim() - b_basis.dim(),
        z_basis,
        b_basis,
        h_reps,
    })
}

/// One-cocycles `{phi : phi([x,y]) = x·phi(y) - y·phi(x)}` as a subspace of
/// the `dim_m × dim_g` matrix coordinates in row-major order.
pub fn z1(g: &LieAlgebra, module: &ModuleAction) -> Subspace {
    let n = g.dim();
    assert_eq!(module.dim_g(), n);
    let m = module.dim_m();
    let ncols = m * n;
    let idx = |r: usize, c: usize| r * n + c;
    let mut conditions = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let bij = g.basis_bracket(i, j);
            for t in 0..m {
                let mut row = vec![Scalar::zero(); ncols];
                let mut nonzero = false;
                for (w, c) in bij.iter().enumerate() {
                    if !c.is_zero() {
                        row[idx(t, w)] += c;
                        nonzero = true;
                    }
                }
                for u in 0..m {
                    let a = module.rho(i).get(t, u);
                    if !a.is_zero() {
                        row[idx(u, j)] -= a;
                        nonzero = true;
                    }
                    let b = module.rho(j).get(t, u);
                    if !b.is_zero() {
                        row[idx(u, i)] += b;
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
        return Subspace::full(ncols);
    }
    Matrix::from_rows(conditions).kernel()
}

/// Reshape a `z1` coordinate vector into the matrix of the map.
pub fn cocycle_matrix(dim_m: usize, dim_g: usize, coords: &[Scalar]) -> Matrix {
    assert_eq!(coords.len(), dim_m * dim_g);
    Matrix::from_fn(dim_m, dim_g, |r, c| coords[r * dim_g + c].clone())
}

/// `(dim Z^1, dim B^1, dim H^1)` for a module.
pub fn h1_dim(g: &LieAlgebra, module: &ModuleAction) -> (usize, usize, usize) {
    let dim_z = z1(g, module).dim();
    let dim_b = module.dim_m() - module.invariants().dim();
    (dim_z, dim_b, dim_z - dim_b)
}

/// Comparison of `H^2(g, k)` with `H^1(g, g*)` and the invariant-form
/// obstruction to their equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub dim_h2: usize,
    pub dim_h1_coadjoint: usize,
    pub dim_invariant_forms: usize,
}

/// Computes the three dimensions and asserts the containment
/// `dim H^2 <= dim H^1(g, g*)`, with equality whenever the algebra has no
/// nonzero invariant bilinear form. Both facts are theorems; a violation
/// would be an engine bug, so they are hard assertions.
pub fn embedding_check(g: &LieAlgebra) -> Result<EmbeddingReport, CohomologyError> {
    let h2 = h2(g)?;
    let coad = coadjoint_module(g)?;
    let (_, _, dim_h1) = h1_dim(g, &coad);
    let inv = g.invariant_forms().dim();
    assert!(
        h2.dim_h <= dim_h1,
        "H^2 must embed into H^1 with coadjoint coefficients"
    );
    if inv == 0 {
        assert_eq!(
            h2.dim_h, dim_h1,
            "without invariant forms the embedding is onto"
        );
    }
    Ok(EmbeddingReport {
        dim_h2: h2.dim_h,
        dim_h1_coadjoint: dim_h1,
        dim_invariant_forms: inv,
    })
}

/// Wire format: `{"dim_Z2": .., "dim_B2": .., "dim_H2": .., "h_reps": [...]}`
/// where each representative lists its nonzero pair coordinates as
/// `["i,j", "p/q"]` with 1-based indices in the fixed pair order.
impl Serialize for CohomologyResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;

        struct Rep<'a> {
            n: usize,
            coords: &'a [Scalar],
        }
        impl Serialize for Rep<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let pairs = pair_list(self.n);
                let mut seq = serializer.serialize_seq(None)?;
                for ((i, j), c) in pairs.into_iter().zip(self.coords) {
                    if !c.is_zero() {
                        seq.serialize_element(&(format!("{},{}", i + 1, j + 1), c.to_string()))?;
                    }
                }
                seq.end()
            }
        }

        // Recover n from the coordinate count: |pairs| = n(n-1)/2.
        let ncoords = self.z_basis.ambient_dim();
        let mut n = 0usize;
        while n * (n.saturating_sub(1)) / 2 < ncoords {
            n += 1;
        }
        let mut st = serializer.serialize_struct("CohomologyResult", 4)?;
        st.serialize_field("dim_Z2", &self.dim_z)?;
        st.serialize_field("dim_B2", &self.dim_b)?;
        st.serialize_field("dim_H2", &self.dim_h)?;
        let reps: Vec<Rep> = self
            .h_reps
            .iter()
            .map(|coords| Rep { n, coords })
            .collect();
        st.serialize_field("h_reps", &reps)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{catalog, unit_vector};
    use std::collections::BTreeMap;

    fn get(name: &str) -> LieAlgebra {
        catalog(name, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn pair_indexing_is_consistent() {
        for n in [2usize, 3, 5, 8] {
            for (pos, (i, j)) in pair_list(n).into_iter().enumerate() {
                assert_eq!(pair_index(n, i, j), pos);
            }
        }
    }

    #[test]
    fn module_constructors_on_n4() {
        let g = get("n4");
        let ad = adjoint_module(&g).unwrap();
        // ad(e1): e2 -> e3, e3 -> e4.
        assert_eq!(ad.act(0, &unit_vector(4, 1)), unit_vector(4, 2));
        assert_eq!(ad.act(0, &unit_vector(4, 2)), unit_vector(4, 3));

        let coad = coadjoint_module(&g).unwrap();
        // Dual action of e1: e3* -> -e2*, e4* -> -e3*.
        let mut minus_e2 = vec![Scalar::zero(); 4];
        minus_e2[1] = Scalar::from_int(-1);
        assert_eq!(coad.act(0, &unit_vector(4, 2)), minus_e2);
        for i in 0..4 {
            assert_eq!(*coad.rho(i), g.ad(i).transpose().neg());
        }

        let triv = trivial_module(&g).unwrap();
        assert_eq!(triv.dim_m(), 1);
    }

    #[test]
    fn representation_property_is_enforced() {
        let g = get("n4");
        let mut rho: Vec<Matrix> = (0..4).map(|i| g.ad(i)).collect();
        rho[2] = Matrix::identity(4); // break it
        assert!(matches!(
            ModuleAction::new(&g, rho),
            Err(CohomologyError::NotARepresentation(_))
        ));
    }

    #[test]
    fn cocycle_spaces_on_small_algebras() {
        // No conditions on an abelian algebra.
        let ab = LieAlgebra::abelian(4);
        assert_eq!(two_cocycles(&ab).unwrap().dim(), 6);
        assert_eq!(two_coboundaries(&ab).unwrap().dim(), 0);

        let g = get("n4");
        assert_eq!(two_cocycles(&g).unwrap().dim(), 4);
        assert_eq!(two_coboundaries(&g).unwrap().dim(), 2);
        let res = h2(&g).unwrap();
        assert_eq!(res.dim_h, 2);
        assert!(res.z_basis.contains(&res.b_basis));
    }

    #[test]
    fn h2_of_contre6_is_two_dimensional() {
        let res = h2(&get("contre6")).unwrap();
        assert_eq!(res.dim_h, 2);
        assert_eq!(res.dim_b, 4);
    }

    #[test]
    fn coboundary_dimension_is_derived_subalgebra_dimension() {
        for name in ["n3", "n4", "r2", "g6", "sl2", "contre6"] {
            let g = get(name);
            assert_eq!(
                two_coboundaries(&g).unwrap().dim(),
                g.derived_subalgebra().dim(),
                "{name}"
            );
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for name in ["n4", "contre6", "g6", "sl2"] {
            let g = get(name);
            let n = g.dim();
            let f: Vec<Scalar> = (0..n).map(|i| Scalar::ratio(i as i64 + 1, 2)).collect();
            let df = d1_trivial(&g, &f);
            assert!(is_cocycle(&g, &df), "{name}");
        }
    }

    #[test]
    fn z1_with_trivial_coefficients_is_the_annihilator_of_the_derived_algebra() {
        for name in ["n4", "r2", "g6"] {
            let g = get(name);
            let triv = trivial_module(&g).unwrap();
            let expected = g.dim() - g.derived_subalgebra().dim();
            assert_eq!(z1(&g, &triv).dim(), expected, "{name}");
        }
    }

    #[test]
    fn derivation_space_contains_the_known_diagonal_derivation() {
        let g = get("contre6");
        let der = z1(&g, &adjoint_module(&g).unwrap());
        let mut coords = vec![Scalar::zero(); 36];
        for (i, w) in [1i64, 2, 3, 4, 5, 7].into_iter().enumerate() {
            coords[i * 6 + i] = Scalar::from_int(w);
        }
        assert!(der.contains_vec(&coords));
    }

    #[test]
    fn h1_dims_on_n4() {
        let g = get("n4");
        let triv = trivial_module(&g).unwrap();
        let (_, _, h1_trivial) = h1_dim(&g, &triv);
        assert_eq!(h1_trivial, 2);

        let coad = coadjoint_module(&g).unwrap();
        let (_, _, h1_coad) = h1_dim(&g, &coad);
        assert!(h1_coad >= 2);
    }

    #[test]
    fn embedding_report_cases() {
        // Strict inequality with plenty of invariant forms.
        let ab2 = LieAlgebra::abelian(2);
        let rep = embedding_check(&ab2).unwrap();
        assert_eq!(rep.dim_h2, 1);
        assert_eq!(rep.dim_h1_coadjoint, 4);
        assert_eq!(rep.dim_invariant_forms, 4);

        // r2 and g6 have no invariant forms; equality is asserted inside.
        for name in ["r2", "g6"] {
            let rep = embedding_check(&get(name)).unwrap();
            if rep.dim_invariant_forms == 0 {
                assert_eq!(rep.dim_h2, rep.dim_h1_coadjoint, "{name}");
            }
        }

        let heis = get("n3");
        let rep = embedding_check(&heis).unwrap();
        assert!(rep.dim_invariant_forms > 0);
    }

    #[test]
    fn cohomology_result_serializes_with_pair_keys() {
        let res = h2(&get("n4")).unwrap();
        let v = serde_json::to_value(&res).unwrap();
        assert_eq!(v["dim_H2"], 2);
        assert_eq!(v["dim_B2"], 2);
        assert!(v["h_reps"].as_array().unwrap().len() == 2);
        let first = &v["h_reps"][0][0];
        assert!(first[0].as_str().unwrap().contains(','));
    }

    #[test]
    fn two_form_coordinates_round_trip() {
        let g = get("contre6");
        let res = h2(&g).unwrap();
        for coords in &res.h_reps {
            let form = TwoForm::from_coords(6, coords);
            assert_eq!(form.to_coords(), *coords);
            assert!(is_cocycle(&g, &form));
        }
    }

    #[test]
    fn rejects_non_skew_matrices() {
        assert!(TwoForm::new(Matrix::identity(3)).is_err());
        assert!(TwoForm::new(Matrix::zeros(2, 3)).is_err());
    }
}
