//! Filiform Lie algebras in an adapted basis.
//!
//! A filiform algebra of dimension `n` has an adapted basis `(e_1, ..., e_n)`
//! with `[e_1, e_i] = e_{i+1}` in which all remaining brackets are determined
//! by a family of constants `alpha_{k,s}` supported on a fixed index set.
//! This module builds algebras from such parameters, recovers parameters from
//! adapted presentations, produces the standard `omega_l` two-forms, assigns
//! classification labels, and solves the Jacobi constraints that tie the
//! dependent constants to the free ones in dimensions `>= 12`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::TwoForm;
use crate::exactlin::{Matrix, Scalar};
use crate::liealg::LieAlgebra;
use crate::poly::{rational_roots, resultant_with_linear, MPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiliformError {
    #[error("alpha key ({k},{s}) is outside the index set for n={n}")]
    BadIndex { k: usize, s: usize, n: usize },
    #[error("dimension {0} admits no filiform parameters (need n >= 4)")]
    BadDimension(usize),
    #[error("basis is not adapted: {0}")]
    NotAdapted(String),
    #[error("brackets are not of the closed filiform form: {0}")]
    NotFiliformForm(String),
    #[error("omega index {ell} out of range 1..={max} for n={n}")]
    RangeError { ell: usize, max: usize, n: usize },
    #[error("classification is not defined for dimension {0}")]
    UnsupportedDim(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no Jacobi-consistent completion: {0}")]
    NoSolution(String),
}

/// Index set of admissible `(k, s)` parameter positions for dimension `n`:
/// `2 <= k <= n/2`, `2k+1 <= s <= n`, plus `(n/2, n)` when `n` is even.
pub fn index_set(n: usize) -> BTreeSet<(usize, usize)> {
    assert!(n >= 4, "index set defined for n >= 4");
    let mut set = BTreeSet::new();
    for k in 2..=n / 2 {
        for s in 2 * k + 1..=n {
            set.insert((k, s));
        }
    }
    if n % 2 == 0 {
        set.insert((n / 2, n));
    }
    set
}

/// Parameters of a filiform law: dimension plus the map `(k, s) -> alpha`.
///
/// Keys are 1-based as in the bracket formula; entries with zero value are
/// dropped so that equal parameter sets compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiliformParams {
    n: usize,
    alpha: BTreeMap<(usize, usize), Scalar>,
}

impl FiliformParams {
    pub fn new(
        n: usize,
        alpha: BTreeMap<(usize, usize), Scalar>,
    ) -> Result<Self, FiliformError> {
        if n < 4 {
            return Err(FiliformError::BadDimension(n));
        }
        let valid = index_set(n);
        let mut cleaned = BTreeMap::new();
        for ((k, s), v) in alpha {
            if !valid.contains(&(k, s)) {
                return Err(FiliformError::BadIndex { k, s, n });
            }
            if !v.is_zero() {
                cleaned.insert((k, s), v);
            }
        }
        Ok(FiliformParams { n, alpha: cleaned })
    }

    pub fn zero(n: usize) -> Result<Self, FiliformError> {
        FiliformParams::new(n, BTreeMap::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `alpha_{k,s}`, zero when absent.
    pub fn get(&self, k: usize, s: usize) -> Scalar {
        self.alpha
            .get(&(k, s))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.alpha.iter()
    }

    pub fn with_entry(&self, k: usize, s: usize, v: Scalar) -> Result<Self, FiliformError> {
        let mut alpha = self.alpha.clone();
        alpha.insert((k, s), v);
        FiliformParams::new(self.n, alpha)
    }
}

impl Serialize for FiliformParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            alpha: BTreeMap<String, &'a Scalar>,
        }
        let alpha = self
            .alpha
            .iter()
            .map(|(&(k, s), v)| (format!("{k},{s}"), v))
            .collect();
        Repr { n: self.n, alpha }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiliformParams {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            #[serde(default)]
            alpha: BTreeMap<String, Scalar>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut alpha = BTreeMap::new();
        for (key, v) in repr.alpha {
            let (k, s) = key
                .split_once(',')
                .and_then(|(a, b)| {
                    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
                })
                .ok_or_else(|| D::Error::custom(format!("bad alpha key {key:?}, want \"k,s\"")))?;
            alpha.insert((k, s), v);
        }
        FiliformParams::new(repr.n, alpha).map_err(D::Error::custom)
    }
}

/// Binomial coefficient, zero outside the Pascal triangle.
fn binomial(top: i64, bottom: i64) -> i64 {
    if bottom < 0 || top < 0 || bottom > top {
        return 0;
    }
    let mut acc: i128 = 1;
    for t in 0..bottom {
        acc = acc * (top - t) as i128 / (t + 1) as i128;
    }
    acc as i64
}

/// The closed bracket formula as a linear form in the parameters: coefficient
/// of `e_r` in `[e_i, e_j]` (all indices 1-based, `2 <= i < j <= n`) equals
/// `sum of coeff * alpha_{k,s}` over the returned terms.
fn formula_terms(n: usize, i: usize, j: usize, r: usize) -> Vec<((usize, usize), Scalar)> {
    let valid = index_set(n);
    let mut out = Vec::new();
    let bound = (j - i - 1) / 2;
    for ell in 0..=bound {
        let top = (j - i) as i64 - ell as i64 - 1;
        let binom = binomial(top, ell as i64);
        if binom == 0 {
            continue;
        }
        let k = i + ell;
        let s_signed = r as i64 - j as i64 + i as i64 + 2 * ell as i64 + 1;
        if s_signed < 1 {
            continue;
        }
        let s = s_signed as usize;
        if !valid.contains(&(k, s)) {
            continue;
        }
        let sign = if ell % 2 == 0 { 1 } else { -1 };
        out.push(((k, s), Scalar::from_int(sign * binom)));
    }
    out
}

/// Build the Lie algebra of a parameter set. The Jacobi identity is not
/// enforced; run `jacobi_check` on the result.
pub fn build(p: &FiliformParams) -> LieAlgebra {
    let n = p.n;
    let mut brackets = Vec::new();
    for i in 2..=n - 1 {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one(); // e_{i+1}, zero-based index i
        brackets.push(((0, i - 1), v));
    }
    for i in 2..=n {
        for j in i + 1..=n {
            let mut v = vec![Scalar::zero(); n];
            let mut nonzero = false;
            for r in 1..=n {
                let mut acc = Scalar::zero();
                for ((k, s), coeff) in formula_terms(n, i, j, r) {
                    let a = p.get(k, s);
                    if !a.is_zero() {
                        acc += &(&coeff * &a);
                    }
                }
                if !acc.is_zero() {
                    nonzero = true;
                    v[r - 1] = acc;
                }
            }
            if nonzero {
                brackets.push(((i - 1, j - 1), v));
            }
        }
    }
    LieAlgebra::new(n, brackets, None).expect("formula produces valid bracket data")
}

/// Recover the parameters of an algebra presented in an adapted basis;
/// inverse of [`build`] on its image.
pub fn extract_params(g: &LieAlgebra) -> Result<FiliformParams, FiliformError> {
    let n = g.dim();
    if n < 4 {
        return Err(FiliformError::NotAdapted(format!(
            "dimension {n} is below the filiform range"
        )));
    }
    // [e_1, e_i] = e_{i+1} for 2 <= i <= n-1 and [e_1, e_n] = 0.
    for i in 2..=n {
        let got = g.basis_bracket(0, i - 1);
        let expected: Vec<Scalar> = (0..n)
            .map(|r| {
                if i <= n - 1 && r == i {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        if got != expected {
            return Err(FiliformError::NotAdapted(format!(
                "[e1, e{i}] is not e{}",
                i + 1
            )));
        }
    }
    // The adjacent brackets read out the parameter rows directly:
    // [e_k, e_{k+1}] = sum_s alpha_{k,s} e_s.
    let valid = index_set(n);
    let mut alpha = BTreeMap::new();
    for k in 2..=n - 1 {
        let row = g.basis_bracket(k - 1, k);
        for (idx, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = idx + 1;
            if valid.contains(&(k, s)) {
                alpha.insert((k, s), c.clone());
            } else {
                return Err(FiliformError::NotFiliformForm(format!(
                    "[e{k}, e{}] has a component at e{s} outside the index set",
                    k + 1
                )));
            }
        }
    }
    let params = FiliformParams::new(n, alpha)?;
    let rebuilt = build(&params);
    let same = g.dim() == rebuilt.dim()
        && (0..n).all(|i| {
            (i + 1..n).all(|j| g.basis_bracket(i, j) == rebuilt.basis_bracket(i, j))
        });
    if !same {
        return Err(FiliformError::NotFiliformForm(
            "brackets are inconsistent with the closed formula for every alpha".to_string(),
        ));
    }
    Ok(params)
}

/// The standard two-form `omega_l` on an `n`-dimensional adapted basis:
/// `omega_l(e_k ∧ e_{2l+3-k}) = (-1)^k` for `2 <= k <= (2l+3)/2`.
pub fn omega_ell(n: usize, ell: usize) -> Result<TwoForm, FiliformError> {
    let max = (n.saturating_sub(1)) / 2;
    if ell < 1 || ell > max {
        return Err(FiliformError::RangeError { ell, max, n });
    }
    let mut m = Matrix::zeros(n, n);
    for k in 2..=(2 * ell + 3) / 2 {
        let partner = 2 * ell + 3 - k;
        debug_assert!(k < partner && partner <= n);
        let v = if k % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        m.set(k - 1, partner - 1, v.clone());
        m.set(partner - 1, k - 1, -v);
    }
    Ok(TwoForm::new(m).expect("constructed skew"))
}

/// Classification label families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    A41,
    A61,
    A62,
    A81,
    A82,
    A83,
    A84,
    A101,
    A102,
    A103,
    A104,
    A105,
    A106,
    A107,
    A108,
    A109,
    /// `alpha_{2,5} != 0`, `alpha_{n/2,n} = 0`, `alpha_{3,7} = 0`.
    An1,
    /// `alpha_{2,5} != 0`, `alpha_{n/2,n} = 0`, `alpha_{3,7} != 0`
    /// (unrefined; for n = 14 the refinement below applies).
    An2,
    /// `alpha_{2,5} != 0`, `alpha_{n/2,n} != 0` (even n only).
    An3,
    /// n = 14 refinement of `An2` on the locus `alpha_{3,10} = P14`.
    An21,
    /// n = 14 refinement of `An2` off that locus.
    An22,
    Unclassified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassLabel {
    pub family: Family,
    pub n: usize,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        match self.family {
            A41 => write!(f, "A_4_1"),
            A61 => write!(f, "A_6_1"),
            A62 => write!(f, "A_6_2"),
            A81 => write!(f, "A_8_1"),
            A82 => write!(f, "A_8_2"),
            A83 => write!(f, "A_8_3"),
            A84 => write!(f, "A_8_4"),
            A101 => write!(f, "A_10_1"),
            A102 => write!(f, "A_10_2"),
            A103 => write!(f, "A_10_3"),
            A104 => write!(f, "A_10_4"),
            A105 => write!(f, "A_10_5"),
            A106 => write!(f, "A_10_6"),
            A107 => write!(f, "A_10_7"),
            A108 => write!(f, "A_10_8"),
            A109 => write!(f, "A_10_9"),
            An1 => write!(f, "A_{}^1", self.n),
            An2 => write!(f, "A_{}^2", self.n),
            An3 => write!(f, "A_{}^3", self.n),
            An21 => write!(f, "A_{}_1^2", self.n),
            An22 => write!(f, "A_{}_2^2", self.n),
            Unclassified => write!(f, "Unclassified"),
        }
    }
}

/// The discriminant used by the dimension-10 table rows 8 and 9 and the
/// symplecticity split of row 7.
pub fn f_discriminant(p: &FiliformParams) -> Scalar {
    let three = Scalar::from_int(3);
    let four = Scalar::from_int(4);
    &(&three * &p.get(4, 10)) * &(&p.get(2, 6) + &p.get(3, 8)) - &(&four * &p.get(3, 8).pow(2))
}

/// The refinement polynomial for dimension 14, evaluated on the parameters
/// as given (no normalization is applied).
pub fn p14(p: &FiliformParams) -> Scalar {
    let a38 = p.get(3, 8);
    let a26 = p.get(2, 6);
    let a27 = p.get(2, 7);
    let a28 = p.get(2, 8);
    let c = |v: i64| Scalar::from_int(v);
    let numer = &(&(&c(482_832_810_500) * &a38.pow(3))
        - &(&(&c(157_196_008_500) * &a38.pow(2)) * &a26))
        + &(&(&(&c(2_223_828_750) * &a38) * &a27)
            + &(&(&(&c(16_180_336_845) * &a38) * &a26.pow(2))
                + &(&(&c(186_801_615) * &a28)
                    - &(&(&(&c(266_859_450) * &a27) * &a26)
                        + &(&c(517_476_276) * &a26.pow(3))))));
    numer / c(1_307_611_305)
}

/// Assign the classification label of a parameter set.
pub fn classify(p: &FiliformParams) -> Result<ClassLabel, FiliformError> {
    let n = p.n;
    let label = |family| ClassLabel { family, n };
    let a25 = p.get(2, 5);
    let a37 = p.get(3, 7);
    match n {
        4 => Ok(label(Family::A41)),
        6 => {
            if !p.get(3, 6).is_zero() {
                Ok(label(Family::A61))
            } else {
                Ok(label(Family::A62))
            }
        }
        8 => {
            let a48 = p.get(4, 8);
            let s = &(&Scalar::from_int(2) * &a25) + &a37;
            let family = if !a48.is_zero() && s.is_zero() {
                Family::A81
            } else if a48.is_zero() && !s.is_zero() {
                Family::A82
            } else if a48.is_zero() && s.is_zero() && !a25.is_zero() {
                Family::A83
            } else if a25.is_zero() && a37.is_zero() && a48.is_zero() {
                Family::A84
            } else {
                // Only reachable off the Jacobi variety.
                Family::Unclassified
            };
            Ok(label(family))
        }
        10 => {
            let a510 = p.get(5, 10);
            let s = &(&Scalar::from_int(2) * &a25) + &a37;
            let a49 = p.get(4, 9);
            let family = if !a510.is_zero() {
                if !s.is_zero() {
                    Family::A101
                } else {
                    Family::A102
                }
            } else if !s.is_zero() {
                if a37.pow(2) != a25.pow(2) {
                    Family::A103
                } else {
                    Family::A104
                }
            } else if !a49.is_zero() {
                let disc = &p.get(2, 6).pow(2)
                    + &(&(&Scalar::from_int(2) * &p.get(2, 7)) * &a49);
                if !disc.is_zero() {
                    Family::A105
                } else {
                    Family::A106
                }
            } else {
                let t = &(&Scalar::from_int(2) * &p.get(2, 7)) + &p.get(3, 9);
                if !t.is_zero() {
                    Family::A107
                } else if !f_discriminant(p).is_zero() {
                    Family::A108
                } else {
                    Family::A109
                }
            };
            Ok(label(family))
        }
        n if n >= 12 => {
            if a25.is_zero() {
                return Ok(label(Family::Unclassified));
            }
            let breaks_b = n % 2 == 0 && !p.get(n / 2, n).is_zero();
            if breaks_b {
                return Ok(label(Family::An3));
            }
            if a37.is_zero() {
                Ok(label(Family::An1))
            } else if n == 14 {
                if p.get(3, 10) == p14(p) {
                    Ok(label(Family::An21))
                } else {
                    Ok(label(Family::An22))
                }
            } else {
                Ok(label(Family::An2))
            }
        }
        other => Err(FiliformError::UnsupportedDim(other)),
    }
}

/// The three low Jacobi constraints tying `(alpha_{3,7}, alpha_{4,9},
/// alpha_{5,11})` together for `n >= 12` under `alpha_{2,5} = 1` and, for
/// even `n`, `alpha_{n/2,n} = 0`. Variables: 0 = a37, 1 = a49, 2 = a511.
fn low_jacobi_equations() -> [MPoly; 3] {
    let x = MPoly::var(3, 0);
    let y = MPoly::var(3, 1);
    let z = MPoly::var(3, 2);
    let c = |v: i64| MPoly::constant(3, Scalar::from_int(v));
    // y(2 + x) - 3x^2
    let eq1 = y.mul(&c(2).add(&x)).sub(&x.pow(2).scale(&Scalar::from_int(3)));
    // z(2 - x - y) + 2y(3y - 2x)
    let eq2 = z
        .mul(&c(2).sub(&x).sub(&y))
        .add(&y.scale(&Scalar::from_int(2)).mul(&y.scale(&Scalar::from_int(3)).sub(&x.scale(&Scalar::from_int(2)))));
    // 3z(x + y) - 4y^2
    let eq3 = z
        .scale(&Scalar::from_int(3))
        .mul(&x.add(&y))
        .sub(&y.pow(2).scale(&Scalar::from_int(4)));
    [eq1, eq2, eq3]
}

/// Solve the low Jacobi constraints exactly by elimination: both secondary
/// equations are linear in `alpha_{5,11}` and the first is linear in
/// `alpha_{4,9}`, so two resultants reduce the system to a univariate
/// polynomial in `alpha_{3,7}` whose rational roots are then back-substituted.
pub fn jacobi_solve_low(p: &FiliformParams) -> Result<Vec<[Scalar; 3]>, FiliformError> {
    if p.n < 12 {
        return Err(FiliformError::PreconditionViolated(format!(
            "n = {} but the low Jacobi system needs n >= 12",
            p.n
        )));
    }
    if !p.get(2, 5).is_one() {
        return Err(FiliformError::PreconditionViolated(
            "alpha_{2,5} must be normalized to 1".to_string(),
        ));
    }
    if p.n % 2 == 0 && !p.get(p.n / 2, p.n).is_zero() {
        return Err(FiliformError::PreconditionViolated(
            "alpha_{n/2,n} must vanish".to_string(),
        ));
    }

    let [eq1, eq2, eq3] = low_jacobi_equations();

    // The z-coefficients of eq2 and eq3 are 2 - x - y and 3(x + y); they
    // cannot vanish simultaneously, so the z-resultant loses no solutions.
    let a = Matrix::from_int_rows(&[&[-1, -1], &[3, 3]]);
    assert!(a.solve(&[Scalar::from_int(-2), Scalar::zero()]).is_none());

    let res_z = resultant_with_linear(&eq2, &eq3, 2);
    let res_zy = resultant_with_linear(&eq1, &res_z, 1);

    // Solutions with eq1 degenerate in y would need x = -2, where eq1 is the
    // nonzero constant -12; rule that branch out explicitly.
    assert!(!eq1
        .substitute(0, &Scalar::from_int(-2))
        .coefficients_in(1)
        .iter()
        .all(MPoly::is_zero));

    let mut solutions = Vec::new();
    let mut roots = rational_roots(&res_zy, 0);
    roots.sort();
    for x in roots {
        // eq1 is linear in y with leading coefficient 2 + x.
        let e1 = eq1.substitute(0, &x);
        let (ay, by) = e1.as_linear_in(1).expect("eq1 linear in y");
        let ay = ay.constant_term();
        if ay.is_zero() {
            if !by.constant_term().is_zero() {
                continue;
            }
            unreachable!("eq1 cannot be identically zero at a fixed x");
        }
        let y = -&(&by.constant_term() / &ay);
        // Either eq2 or eq3 determines z linearly at (x, y).
        let e2 = eq2.substitute(0, &x).substitute(1, &y);
        let e3 = eq3.substitute(0, &x).substitute(1, &y);
        let (a2, b2) = e2.as_linear_in(2).expect("eq2 linear in z");
        let (a3, b3) = e3.as_linear_in(2).expect("eq3 linear in z");
        let z = if !a2.constant_term().is_zero() {
            -&(&b2.constant_term() / &a2.constant_term())
        } else if !a3.constant_term().is_zero() {
            -&(&b3.constant_term() / &a3.constant_term())
        } else {
            continue;
        };
        let point = [x.clone(), y.clone(), z.clone()];
        let all_hold = [&eq1, &eq2, &eq3]
            .iter()
            .all(|eq| eq.eval(&point).is_zero());
        if all_hold && !solutions.contains(&point) {
            solutions.push(point);
        }
    }
    Ok(solutions)
}

/// Branch selector for the Jacobi closure in dimensions `>= 12`: the two
/// admissible values of the `(alpha_{3,7}, alpha_{4,9}, alpha_{5,11})` spine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureBranch {
    /// Spine `(0, 0, 0)`.
    A1,
    /// Spine `(1/10, 1/70, 1/420)`.
    A2,
}

impl ClosureBranch {
    fn spine(self) -> [Scalar; 3] {
        match self {
            ClosureBranch::A1 => [Scalar::zero(), Scalar::zero(), Scalar::zero()],
            ClosureBranch::A2 => [
                Scalar::ratio(1, 10),
                Scalar::ratio(1, 70),
                Scalar::ratio(1, 420),
            ],
        }
    }
}

/// Complete a partial assignment of filiform parameters to a Jacobi-consistent
/// one by exact triangular elimination over the `unknown` positions.
///
/// Positions neither assigned nor unknown are zero. The structure constants
/// are linear in the parameters, so each Jacobi residual is a quadratic
/// polynomial in the unknowns; the elimination repeatedly solves residuals
/// that have become linear in a single unknown, falling back to the
/// simultaneous linear subsystem, and fails if a nonzero residual survives.
pub fn jacobi_complete(
    n: usize,
    assigned: &BTreeMap<(usize, usize), Scalar>,
    unknowns: &[(usize, usize)],
) -> Result<FiliformParams, FiliformError> {
    let valid = index_set(n);
    for key in assigned.keys().chain(unknowns.iter()) {
        if !valid.contains(key) {
            return Err(FiliformError::BadIndex {
                k: key.0,
                s: key.1,
                n,
            });
        }
    }
    for key in unknowns {
        if assigned.contains_key(key) {
            return Err(FiliformError::PreconditionViolated(format!(
                "position ({}, {}) is both assigned and unknown",
                key.0, key.1
            )));
        }
    }
    let nvars = unknowns.len();
    let var_of: BTreeMap<(usize, usize), usize> = unknowns
        .iter()
        .enumerate()
        .map(|(idx, &key)| (key, idx))
        .collect();

    // Symbolic structure constants: brackets are linear in the parameters.
    let alpha_poly = |k: usize, s: usize| -> MPoly {
        if let Some(&v) = var_of.get(&(k, s)).as_ref() {
            MPoly::var(nvars, *v)
        } else if let Some(c) = assigned.get(&(k, s)) {
            MPoly::constant(nvars, c.clone())
        } else {
            MPoly::zero(nvars)
        }
    };
    let mut table: BTreeMap<(usize, usize), Vec<MPoly>> = BTreeMap::new();
    for i in 2..=n - 1 {
        let mut v = vec![MPoly::zero(nvars); n];
        v[i] = MPoly::constant(nvars, Scalar::one());
        table.insert((1, i), v);
    }
    for i in 2..=n {
        for j in i + 1..=n {
            let mut v = vec![MPoly::zero(nvars); n];
            for (r, item) in v.iter_mut().enumerate() {
                let mut acc = MPoly::zero(nvars);
                for ((k, s), coeff) in formula_terms(n, i, j, r + 1) {
                    acc = acc.add(&alpha_poly(k, s).scale(&coeff));
                }
                *item = acc;
            }
            table.insert((i, j), v);
        }
    }
    let bracket = |a: usize, b: usize| -> Vec<MPoly> {
        use std::cmp::Ordering;
        match a.cmp(&b) {
            Ordering::Equal => vec![MPoly::zero(nvars); n],
            Ordering::Less => table
                .get(&(a, b))
                .cloned()
                .unwrap_or_else(|| vec![MPoly::zero(nvars); n]),
            Ordering::Greater => table
                .get(&(b, a))
                .map(|v| v.iter().map(MPoly::neg).collect())
                .unwrap_or_else(|| vec![MPoly::zero(nvars); n]),
        }
    };

    // Jacobi residuals over all basis triples.
    let mut residuals: Vec<MPoly> = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let bij = bracket(i, j);
            for k in j + 1..=n {
                let bjk = bracket(j, k);
                let bki = bracket(k, i);
                for l in 0..n {
                    let mut acc = MPoly::zero(nvars);
                    for m in 0..n {
                        for (first, second) in
                            [(&bij[m], k), (&bjk[m], i), (&bki[m], j)]
                        {
                            if first.is_zero() {
                                continue;
                            }
                            let inner = bracket(m + 1, second);
                            if !inner[l].is_zero() {
                                acc = acc.add(&first.mul(&inner[l]));
                            }
                        }
                    }
                    if !acc.is_zero() {
                        residuals.push(acc);
                    }
                }
            }
        }
    }

    let mut solution: Vec<Option<Scalar>> = vec![None; nvars];
    let substitute_all = |residuals: &mut Vec<MPoly>, var: usize, value: &Scalar| {
        for r in residuals.iter_mut() {
            *r = r.substitute(var, value);
        }
        residuals.retain(|r| !r.is_zero());
    };

    loop {
        // Residuals linear in a single unknown give that unknown directly.
        let mut progressed = false;
        'scan: loop {
            for idx in 0..residuals.len() {
                let r = &residuals[idx];
                let support = r.support_vars();
                if support.len() == 1 && r.degree_in(support[0]) == 1 {
                    let var = support[0];
                    let (a, b) = r.as_linear_in(var).expect("degree checked");
                    let value = -&(&b.constant_term() / &a.constant_term());
                    solution[var] = Some(value.clone());
                    substitute_all(&mut residuals, var, &value);
                    progressed = true;
                    continue 'scan;
                }
                if support.is_empty() && !r.constant_term().is_zero() {
                    return Err(FiliformError::NoSolution(format!(
                        "constant residual {}",
                        r.constant_term()
                    )));
                }
            }
            break;
        }

        let unsolved: Vec<usize> = (0..nvars).filter(|&v| solution[v].is_none()).collect();
        if unsolved.is_empty() {
            break;
        }

        // Fall back to the simultaneous linear subsystem.
        let linear: Vec<&MPoly> = residuals
            .iter()
            .filter(|r| r.total_degree() <= 1 && !r.support_vars().is_empty())
            .collect();
        if linear.is_empty() {
            if progressed {
                continue;
            }
            if residuals.is_empty() {
                break;
            }
            return Err(FiliformError::NoSolution(
                "nonlinear residuals remain after triangular elimination".to_string(),
            ));
        }
        let col_of: BTreeMap<usize, usize> = unsolved
            .iter()
            .enumerate()
            .map(|(c, &v)| (v, c))
            .collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for r in linear {
            let mut row = vec![Scalar::zero(); unsolved.len()];
            for &v in &r.support_vars() {
                let (a, _) = r.as_linear_in(v).expect("total degree 1");
                row[col_of[&v]] = a.constant_term();
            }
            rows.push(row);
            rhs.push(-r.constant_term());
        }
        let m = Matrix::from_rows(rows);
        let Some(x) = m.solve(&rhs) else {
            return Err(FiliformError::NoSolution(
                "linear subsystem is inconsistent".to_string(),
            ));
        };
        for (&v, c) in col_of.iter() {
            solution[v] = Some(x[*c].clone());
        }
        for (&v, c) in col_of.iter() {
            let value = x[*c].clone();
            substitute_all(&mut residuals, v, &value);
        }
    }

    // Unconstrained unknowns can take any value; use zero.
    let mut alpha = assigned.clone();
    for (idx, key) in unknowns.iter().enumerate() {
        let v = solution[idx].clone().unwrap_or_else(Scalar::zero);
        alpha.insert(*key, v);
    }
    let params = FiliformParams::new(n, alpha)?;
    let check = build(&params).jacobi_check();
    if !check.is_empty() {
        return Err(FiliformError::NoSolution(format!(
            "completion still violates the Jacobi identity at ({}, {}, {}, {})",
            check[0].i, check[0].j, check[0].k, check[0].l
        )));
    }
    Ok(params)
}

/// Fill in the dependent parameters of a dimension `n >= 12` (even) law with
/// `alpha_{2,5} = 1` and `alpha_{n/2,n} = 0` on the chosen spine branch. Rows
/// `k = 2, 3` are the free parameters and are taken from `p` unchanged.
pub fn jacobi_closure(
    p: &FiliformParams,
    branch: ClosureBranch,
) -> Result<FiliformParams, FiliformError> {
    let n = p.n;
    if n < 12 || n % 2 != 0 {
        return Err(FiliformError::PreconditionViolated(format!(
            "closure requires even n >= 12, got {n}"
        )));
    }
    if !p.get(2, 5).is_one() {
        return Err(FiliformError::PreconditionViolated(
            "alpha_{2,5} must be 1".to_string(),
        ));
    }
    if !p.get(n / 2, n).is_zero() {
        return Err(FiliformError::PreconditionViolated(format!(
            "alpha_{{{},{}}} must be 0",
            n / 2,
            n
        )));
    }
    let spine = branch.spine();
    if p.get(3, 7) != spine[0] {
        return Err(FiliformError::PreconditionViolated(format!(
            "branch needs alpha_{{3,7}} = {}, got {}",
            spine[0],
            p.get(3, 7)
        )));
    }
    for (key, want) in [((4usize, 9usize), &spine[1]), ((5, 11), &spine[2])] {
        let have = p.get(key.0, key.1);
        if !have.is_zero() && have != *want {
            return Err(FiliformError::PreconditionViolated(format!(
                "alpha_{{{},{}}} conflicts with the chosen branch",
                key.0, key.1
            )));
        }
    }
    // Any other supplied value in rows k >= 4 would be silently recomputed;
    // reject instead.
    for (&(k, s), _) in p.entries() {
        if k >= 4 && !((k, s) == (4, 9) || (k, s) == (5, 11)) {
            return Err(FiliformError::PreconditionViolated(format!(
                "alpha_{{{k},{s}}} is a dependent position; leave it unset"
            )));
        }
    }

    let mut assigned: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    assigned.insert((2, 5), Scalar::one());
    for s in 6..=n {
        let v = p.get(2, s);
        if !v.is_zero() {
            assigned.insert((2, s), v);
        }
    }
    for s in 8..=n {
        let v = p.get(3, s);
        if !v.is_zero() {
            assigned.insert((3, s), v);
        }
    }
    if !spine[0].is_zero() {
        assigned.insert((3, 7), spine[0].clone());
        assigned.insert((4, 9), spine[1].clone());
        assigned.insert((5, 11), spine[2].clone());
    }
    let spine_keys: BTreeSet<(usize, usize)> = if branch == ClosureBranch::A2 {
        [(4, 9), (5, 11)].into_iter().collect()
    } else {
        BTreeSet::new()
    };
    let unknowns: Vec<(usize, usize)> = index_set(n)
        .into_iter()
        .filter(|&(k, s)| k >= 4 && (k, s) != (n / 2, n) && !spine_keys.contains(&(k, s)))
        .collect();
    jacobi_complete(n, &assigned, &unknowns)
}

/// The dimension-12 closure.
pub fn jacobi_closure_12(
    p: &FiliformParams,
    branch: ClosureBranch,
) -> Result<FiliformParams, FiliformError> {
    if p.n != 12 {
        return Err(FiliformError::PreconditionViolated(format!(
            "expected n = 12, got {}",
            p.n
        )));
    }
    jacobi_closure(p, branch)
}

/// Change of adapted basis `e_1 -> a e_1`, `e_2 -> b e_2`,
/// `e_i -> [f(e_1), f(e_{i-1})]`; stays adapted and rescales the parameters
/// by `alpha'_{k,s} = a^(2k-s-1) b alpha_{k,s}`. Performed as an honest
/// change of basis on the built algebra and re-extracted.
pub fn rescale_adapted(
    p: &FiliformParams,
    a: &Scalar,
    b: &Scalar,
) -> Result<FiliformParams, FiliformError> {
    if a.is_zero() || b.is_zero() {
        return Err(FiliformError::PreconditionViolated(
            "rescaling constants must be nonzero".to_string(),
        ));
    }
    let g = build(p);
    let n = p.n;
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut e1 = vec![Scalar::zero(); n];
    e1[0] = a.clone();
    cols.push(e1.clone());
    let mut e2 = vec![Scalar::zero(); n];
    e2[1] = b.clone();
    cols.push(e2);
    for i in 2..n {
        let prev = cols[i - 1].clone();
        cols.push(g.bracket(&e1, &prev).expect("dimensions agree"));
    }
    let t = Matrix::from_fn(n, n, |r, c| cols[c][r].clone());
    let h = g
        .change_basis(&t)
        .map_err(|_| FiliformError::PreconditionViolated("basis change is singular".to_string()))?;
    extract_params(&h)
}

/// Rescale so that `alpha_{2,5}` becomes 1; `None` when `alpha_{2,5} = 0`.
pub fn normalize_a25(p: &FiliformParams) -> Option<FiliformParams> {
    let a25 = p.get(2, 5);
    if a25.is_zero() {
        return None;
    }
    // alpha'_{2,5} = b/a^2 * alpha_{2,5}; take a = 1, b = 1/alpha_{2,5}.
    rescale_adapted(p, &Scalar::one(), &a25.recip().expect("nonzero")).ok()
}
