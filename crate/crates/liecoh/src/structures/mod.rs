//! Verdict engines: symplectic, Frobenius, characteristically nilpotent, and
//! affine-structure witnesses, plus the constructive left-symmetric product
//! from a nonsingular 1-cocycle.
//!
//! Positive verdicts always carry an exactly re-verifiable witness. Negative
//! verdicts are either certified (odd dimension, a common kernel vector of
//! the whole cocycle space, a nonzero center, or an identically vanishing
//! symbolic Pfaffian) or probabilistic with a recorded Schwartz–Zippel
//! failure bound: the determinant of a candidate combination is a polynomial
//! of degree at most `n` in the sampled coefficients, so one all-zero round
//! over a sample set `S` misses a nondegenerate element with probability at
//! most `n/|S|`.

mod pfaffian;
pub(crate) mod rng;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cohomology::{
    adjoint_module, coadjoint_module, cocycle_matrix, is_cocycle, two_cocycles, z1, ModuleAction,
    TwoForm,
};
use crate::exactlin::{Matrix, Scalar, Subspace};
use crate::liealg::LieAlgebra;
use pfaffian::{nonzero_point, symbolic_pfaffian};
use rng::{
    sample_coordinate, DOMAIN_AFFINE_COADJOINT, DOMAIN_AFFINE_DERIVATION, DOMAIN_CNLA,
    DOMAIN_FROBENIUS, DOMAIN_SYMPLECTIC,
};

/// Escalation ceiling: the symbolic Pfaffian is computed only when the
/// sampled space has at most this many coordinates.
const PFAFFIAN_MAX_VARS: usize = 8;

/// Cap on seeded samples when hunting a non-nilpotent derivation before
/// falling back to the exhaustive small-integer grid.
const CNLA_SAMPLE_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructuresError {
    #[error("structure constants violate the Jacobi identity")]
    NotALieAlgebra,
    #[error("cocycle matrix is singular")]
    SingularCocycle,
    #[error("map is not a 1-cocycle for the given module")]
    NotACocycle,
    #[error("module dimension {got} differs from algebra dimension {expected}")]
    ModuleDimensionMismatch { expected: usize, got: usize },
}

/// Record of one sampling round, sufficient to reproduce it exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingRecord {
    pub seed: u64,
    pub trials: usize,
    /// Size of the integer sample set `[-2n*trials, 2n*trials]`.
    pub sample_set_size: u64,
    /// `(n / sample_set_size)^trials`.
    pub failure_bound: Scalar,
}

/// Exactly checkable reasons for a certified negative verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NegativeCertificate {
    OddDimension,
    /// A nonzero vector annihilated by every cocycle in the space.
    CommonKernelVector(Vec<Scalar>),
    /// A nonzero central vector; every exact form kills the center.
    NonzeroCenter(Vec<Scalar>),
    /// The Pfaffian of the generic combination vanishes identically.
    IdenticallyZeroDeterminant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymplecticStatus {
    Symplectic,
    NotSymplecticCertified,
    ProbablyNotSymplectic,
}

/// A nondegenerate closed form with its exact determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormWitness {
    pub form: TwoForm,
    pub det: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticVerdict {
    pub status: SymplecticStatus,
    pub witness: Option<FormWitness>,
    pub certificate: Option<NegativeCertificate>,
    pub sampling: Option<SamplingRecord>,
}

impl SymplecticVerdict {
    pub fn is_symplectic(&self) -> bool {
        self.status == SymplecticStatus::Symplectic
    }

    pub fn is_negative(&self) -> bool {
        !self.is_symplectic()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobeniusStatus {
    Frobenius,
    NotFrobeniusCertified,
    ProbablyNotFrobenius,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusWitness {
    /// The functional whose differential is the nondegenerate form.
    pub functional: Vec<Scalar>,
    pub form: TwoForm,
    pub det: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusVerdict {
    pub status: FrobeniusStatus,
    pub witness: Option<FrobeniusWitness>,
    pub certificate: Option<NegativeCertificate>,
    pub sampling: Option<SamplingRecord>,
}

impl FrobeniusVerdict {
    pub fn is_frobenius(&self) -> bool {
        self.status == FrobeniusStatus::Frobenius
    }
}

fn require_lie(g: &LieAlgebra) -> Result<(), StructuresError> {
    if g.is_lie_algebra() {
        Ok(())
    } else {
        Err(StructuresError::NotALieAlgebra)
    }
}

fn sampling_record(n: usize, seed: u64, trials: usize) -> SamplingRecord {
    let radius = 2 * (n as u64) * (trials as u64);
    let size = 2 * radius + 1;
    let bound = if trials == 0 {
        Scalar::one()
    } else {
        (Scalar::from_int(n as i64) / Scalar::from_int(size as i64)).pow(trials as i32)
    };
    SamplingRecord {
        seed,
        trials,
        sample_set_size: size,
        failure_bound: bound,
    }
}

/// Sampled integer coefficient vector for one trial.
fn sample_coefficients(
    n: usize,
    dim: usize,
    seed: u64,
    hash: u64,
    domain: u64,
    trial: u64,
    trials: usize,
) -> Vec<Scalar> {
    let radius = 2 * (n as u64) * (trials as u64);
    (0..dim)
        .map(|c| {
            Scalar::from_int(sample_coordinate(
                seed, hash, domain, trial, c as u64, radius,
            ))
        })
        .collect()
}

fn combine_coords(basis: &Subspace, coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut acc = vec![Scalar::zero(); basis.ambient_dim()];
    for (row, c) in basis.basis_vectors().into_iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (a, v) in acc.iter_mut().zip(row) {
            if !v.is_zero() {
                *a += &(c * &v);
            }
        }
    }
    acc
}

/// Exact re-verification of a symplectic witness: skewness is structural,
/// closedness and nondegeneracy are rechecked from scratch.
pub fn verify_symplectic_witness(g: &LieAlgebra, form: &TwoForm) -> Option<Scalar> {
    if form.dim() != g.dim() || !is_cocycle(g, form) {
        return None;
    }
    let det = form.matrix().det().expect("square");
    (!det.is_zero()).then_some(det)
}

/// Common kernel of a space of skew forms given in pair coordinates.
fn common_kernel(n: usize, basis: &Subspace) -> Subspace {
    if basis.dim() == 0 {
        return Subspace::full(n);
    }
    let mats: Vec<Matrix> = basis
        .basis_vectors()
        .into_iter()
        .map(|coords| TwoForm::from_coords(n, &coords).matrix().clone())
        .collect();
    let refs: Vec<&Matrix> = mats.iter().collect();
    Matrix::vstack(&refs).kernel()
}

pub fn symplectic_verdict(
    g: &LieAlgebra,
    seed: u64,
    trials: usize,
) -> Result<SymplecticVerdict, StructuresError> {
    symplectic_verdict_with(g, seed, trials, false)
}

/// Decide symplecticity. Order of attack: odd dimension, common kernel
/// vector, seeded sampling for a nondegenerate cocycle, then (optional, only
/// for small cocycle spaces) the symbolic Pfaffian which either certifies the
/// negative or locates a witness missed by sampling.
pub fn symplectic_verdict_with(
    g: &LieAlgebra,
    seed: u64,
    trials: usize,
    pfaffian: bool,
) -> Result<SymplecticVerdict, StructuresError> {
    require_lie(g)?;
    let n = g.dim();
    if n % 2 != 0 {
        return Ok(SymplecticVerdict {
            status: SymplecticStatus::NotSymplecticCertified,
            witness: None,
            certificate: Some(NegativeCertificate::OddDimension),
            sampling: None,
        });
    }
    if n == 0 {
        // The empty form on the zero space is vacuously nondegenerate.
        return Ok(SymplecticVerdict {
            status: SymplecticStatus::Symplectic,
            witness: Some(FormWitness {
                form: TwoForm::zero(0),
                det: Scalar::one(),
            }),
            certificate: None,
            sampling: None,
        });
    }
    let z2 = two_cocycles(g).expect("jacobi verified");
    let kernel = common_kernel(n, &z2);
    if !kernel.is_zero() {
        let v = kernel.basis_vectors().remove(0);
        return Ok(SymplecticVerdict {
            status: SymplecticStatus::NotSymplecticCertified,
            witness: None,
            certificate: Some(NegativeCertificate::CommonKernelVector(v)),
            sampling: None,
        });
    }

    let hash = g.stable_hash();
    for trial in 0..trials {
        let coeffs = sample_coefficients(
            n,
            z2.dim(),
            seed,
            hash,
            DOMAIN_SYMPLECTIC,
            trial as u64,
            trials,
        );
        let form = TwoForm::from_coords(n, &combine_coords(&z2, &coeffs));
        let det = form.matrix().det().expect("square");
        if !det.is_zero() {
            debug_assert!(verify_symplectic_witness(g, &form).is_some());
            return Ok(SymplecticVerdict {
                status: SymplecticStatus::Symplectic,
                witness: Some(FormWitness { form, det }),
                certificate: None,
                sampling: Some(sampling_record(n, seed, trials)),
            });
        }
    }

    if pfaffian && z2.dim() <= PFAFFIAN_MAX_VARS {
        let mats: Vec<Matrix> = z2
            .basis_vectors()
            .into_iter()
            .map(|coords| TwoForm::from_coords(n, &coords).matrix().clone())
            .collect();
        let pf = symbolic_pfaffian(&mats);
        if pf.is_zero() {
            return Ok(SymplecticVerdict {
                status: SymplecticStatus::NotSymplecticCertified,
                witness: None,
                certificate: Some(NegativeCertificate::IdenticallyZeroDeterminant),
                sampling: Some(sampling_record(n, seed, trials)),
            });
        }
        let point = nonzero_point(&pf);
        let form = TwoForm::from_coords(n, &combine_coords(&z2, &point));
        let det = form.matrix().det().expect("square");
        assert!(!det.is_zero(), "nonzero Pfaffian point must be nondegenerate");
        return Ok(SymplecticVerdict {
            status: SymplecticStatus::Symplectic,
            witness: Some(FormWitness { form, det }),
            certificate: None,
            sampling: Some(sampling_record(n, seed, trials)),
        });
    }

    Ok(SymplecticVerdict {
        status: SymplecticStatus::ProbablyNotSymplectic,
        witness: None,
        certificate: None,
        sampling: Some(sampling_record(n, seed, trials)),
    })
}

pub fn frobenius_verdict(
    g: &LieAlgebra,
    seed: u64,
    trials: usize,
) -> Result<FrobeniusVerdict, StructuresError> {
    frobenius_verdict_with(g, seed, trials, false)
}

/// Decide whether some exact form `f([x, y])` is nondegenerate. The search is
/// over the functional `f` directly; a nonzero center certifies the negative
/// because every exact form annihilates central vectors.
pub fn frobenius_verdict_with(
    g: &LieAlgebra,
    seed: u64,
    trials: usize,
    pfaffian: bool,
) -> Result<FrobeniusVerdict, StructuresError> {
    require_lie(g)?;
    let n = g.dim();
    if n % 2 != 0 {
        return Ok(FrobeniusVerdict {
            status: FrobeniusStatus::NotFrobeniusCertified,
            witness: None,
            certificate: Some(NegativeCertificate::OddDimension),
            sampling: None,
        });
    }
    if n == 0 {
        return Ok(FrobeniusVerdict {
            status: FrobeniusStatus::Frobenius,
            witness: Some(FrobeniusWitness {
                functional: Vec::new(),
                form: TwoForm::zero(0),
                det: Scalar::one(),
            }),
            certificate: None,
            sampling: None,
        });
    }
    let center = g.center();
    if !center.is_zero() {
        let v = center.basis_vectors().remove(0);
        return Ok(FrobeniusVerdict {
            status: FrobeniusStatus::NotFrobeniusCertified,
            witness: None,
            certificate: Some(NegativeCertificate::NonzeroCenter(v)),
            sampling: None,
        });
    }

    let hash = g.stable_hash();
    for trial in 0..trials {
        let f = sample_coefficients(n, n, seed, hash, DOMAIN_FROBENIUS, trial as u64, trials);
        let form = crate::cohomology::d1_trivial(g, &f);
        let det = form.matrix().det().expect("square");
        if !det.is_zero() {
            return Ok(FrobeniusVerdict {
                status: FrobeniusStatus::Frobenius,
                witness: Some(FrobeniusWitness {
                    functional: f,
                    form,
                    det,
                }),
                certificate: None,
                sampling: Some(sampling_record(n, seed, trials)),
            });
        }
    }

    if pfaffian && n <= PFAFFIAN_MAX_VARS {
        // Variables are the coordinates of the functional.
        let mats: Vec<Matrix> = (0..n)
            .map(|m| {
                let f = crate::liealg::unit_vector(n, m);
                crate::cohomology::d1_trivial(g, &f).matrix().clone()
            })
            .collect();
        let pf = symbolic_pfaffian(&mats);
        if pf.is_zero() {
            return Ok(FrobeniusVerdict {
                status: FrobeniusStatus::NotFrobeniusCertified,
                witness: None,
                certificate: Some(NegativeCertificate::IdenticallyZeroDeterminant),
                sampling: Some(sampling_record(n, seed, trials)),
            });
        }
        let f = nonzero_point(&pf);
        let form = crate::cohomology::d1_trivial(g, &f);
        let det = form.matrix().det().expect("square");
        assert!(!det.is_zero());
        return Ok(FrobeniusVerdict {
            status: FrobeniusStatus::Frobenius,
            witness: Some(FrobeniusWitness {
                functional: f,
                form,
                det,
            }),
            certificate: None,
            sampling: Some(sampling_record(n, seed, trials)),
        });
    }

    Ok(FrobeniusVerdict {
        status: FrobeniusStatus::ProbablyNotFrobenius,
        witness: None,
        certificate: None,
        sampling: Some(sampling_record(n, seed, trials)),
    })
}

/// Characteristic nilpotency verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnlaVerdict {
    pub is_cnla: bool,
    /// Strictly increasing chain `0 = V_0 ⊂ ... ⊂ V_r = g` with every
    /// derivation mapping `V_{i+1}` into `V_i`; present iff `is_cnla`.
    pub flag: Option<Vec<Subspace>>,
    /// A non-nilpotent derivation; present iff not `is_cnla`.
    pub counterexample: Option<Matrix>,
}

/// Decide whether all derivations are nilpotent by building the simultaneous
/// invariant flag: each step adjoins the common kernel of the derivation
/// action on the quotient. The chain reaching the whole space proves
/// simultaneous nilpotency; a stall guarantees a non-nilpotent derivation,
/// located by seeded sampling with an exhaustive small-grid fallback.
pub fn is_cnla(g: &LieAlgebra) -> Result<CnlaVerdict, StructuresError> {
    require_lie(g)?;
    let n = g.dim();
    let der = z1(g, &adjoint_module(g).expect("jacobi verified"));
    let der_mats: Vec<Matrix> = der
        .basis_vectors()
        .into_iter()
        .map(|coords| cocycle_matrix(n, n, &coords))
        .collect();

    if der_mats.is_empty() {
        return Ok(CnlaVerdict {
            is_cnla: true,
            flag: Some(vec![Subspace::full(n)]),
            counterexample: None,
        });
    }

    let mut flag = vec![Subspace::zero(n)];
    loop {
        let current = flag.last().unwrap();
        if current.is_full() {
            return Ok(CnlaVerdict {
                is_cnla: true,
                flag: Some(flag),
                counterexample: None,
            });
        }
        // v qualifies iff D v lies in the current step for every D.
        let conditions = current.membership_conditions();
        let stacked: Vec<Matrix> = der_mats.iter().map(|d| conditions.mul(d)).collect();
        let refs: Vec<&Matrix> = stacked.iter().collect();
        let next = Matrix::vstack(&refs).kernel();
        if &next == current {
            break;
        }
        debug_assert!(next.contains(current));
        flag.push(next);
    }

    let counterexample = find_non_nilpotent(g, &der_mats);
    debug_assert!(!counterexample.is_nilpotent().unwrap());
    debug_assert!(is_derivation(g, &counterexample));
    Ok(CnlaVerdict {
        is_cnla: false,
        flag: None,
        counterexample: Some(counterexample),
    })
}

/// Exact derivation check: `D[x,y] = [Dx,y] + [x,Dy]` on basis pairs.
pub fn is_derivation(g: &LieAlgebra, d: &Matrix) -> bool {
    let n = g.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = d.mul_vec(&g.basis_bracket(i, j));
            let mut rhs = g
                .bracket(&d.col_vec(i), &crate::liealg::unit_vector(n, j))
                .expect("dims");
            let second = g
                .bracket(&crate::liealg::unit_vector(n, i), &d.col_vec(j))
                .expect("dims");
            for (a, b) in rhs.iter_mut().zip(second) {
                *a += &b;
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// A non-nilpotent combination of the given derivations. Only called when one
/// exists; the grid fallback makes termination unconditional because the
/// non-nilpotent locus is a nonempty Zariski-open set met by every large
/// enough integer grid.
fn find_non_nilpotent(g: &LieAlgebra, der_mats: &[Matrix]) -> Matrix {
    let k = der_mats.len();
    let combine = |coeffs: &[Scalar]| -> Matrix {
        let mut acc = Matrix::zeros(der_mats[0].rows(), der_mats[0].cols());
        for (c, d) in coeffs.iter().zip(der_mats) {
            if !c.is_zero() {
                acc = acc.add(&d.scale(c));
            }
        }
        acc
    };
    // Single basis elements first: the witness is often already among them.
    for d in der_mats {
        if !d.is_nilpotent().expect("square") {
            return d.clone();
        }
    }
    let hash = g.stable_hash();
    for trial in 0..CNLA_SAMPLE_CAP {
        let coeffs: Vec<Scalar> = (0..k)
            .map(|c| {
                Scalar::from_int(sample_coordinate(
                    0,
                    hash,
                    DOMAIN_CNLA,
                    trial,
                    c as u64,
                    2 * (g.dim() as u64 + 1),
                ))
            })
            .collect();
        let m = combine(&coeffs);
        if !m.is_nilpotent().expect("square") {
            return m;
        }
    }
    // Exhaustive odometer over [-radius, radius]^k for growing radius.
    for radius in 1i64.. {
        let width = (2 * radius + 1) as usize;
        let mut odometer = vec![0usize; k];
        loop {
            let coeffs: Vec<Scalar> = odometer
                .iter()
                .map(|&d| Scalar::from_int(d as i64 - radius))
                .collect();
            let m = combine(&coeffs);
            if !m.is_nilpotent().expect("square") {
                return m;
            }
            let mut pos = 0;
            while pos < k {
                odometer[pos] += 1;
                if odometer[pos] < width {
                    break;
                }
                odometer[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    unreachable!("a non-nilpotent derivation exists when the flag stalls");
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffineWitnessKind {
    NonsingularDerivation,
    SymplecticForm,
    NonsingularCoadjointCocycle,
    NoneFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffinePayload {
    Derivation(Matrix),
    Form(TwoForm),
    CoadjointCocycle(Matrix),
}

/// Witness that the algebra carries a compatible left-symmetric product, or
/// an explicit statement that none was found (which proves nothing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineWitness {
    pub kind: AffineWitnessKind,
    pub payload: Option<AffinePayload>,
    pub note: String,
}

/// Search for an affine-structure witness: a nonsingular derivation, then a
/// symplectic form, then a nonsingular 1-cocycle into the dual module. Each
/// stage uses its own deterministic sample stream.
pub fn affine_witness(
    g: &LieAlgebra,
    seed: u64,
    trials: usize,
) -> Result<AffineWitness, StructuresError> {
    require_lie(g)?;
    let n = g.dim();
    let hash = g.stable_hash();

    let der = z1(g, &adjoint_module(g).expect("jacobi verified"));
    for trial in 0..trials {
        let coeffs = sample_coefficients(
            n.max(1),
            der.dim(),
            seed,
            hash,
            DOMAIN_AFFINE_DERIVATION,
            trial as u64,
            trials,
        );
        let d = cocycle_matrix(n, n, &combine_coords(&der, &coeffs));
        if d.inverse().is_some() {
            debug_assert!(is_derivation(g, &d));
            return Ok(AffineWitness {
                kind: AffineWitnessKind::NonsingularDerivation,
                payload: Some(AffinePayload::Derivation(d)),
                note: format!("nonsingular derivation found at trial {trial}"),
            });
        }
    }

    let symp = symplectic_verdict(g, seed, trials)?;
    if let Some(w) = symp.witness {
        return Ok(AffineWitness {
            kind: AffineWitnessKind::SymplecticForm,
            payload: Some(AffinePayload::Form(w.form)),
            note: "nondegenerate closed 2-form".to_string(),
        });
    }

    let zc = z1(g, &coadjoint_module(g).expect("jacobi verified"));
    for trial in 0..trials {
        let coeffs = sample_coefficients(
            n.max(1),
            zc.dim(),
            seed,
            hash,
            DOMAIN_AFFINE_COADJOINT,
            trial as u64,
            trials,
        );
        let phi = cocycle_matrix(n, n, &combine_coords(&zc, &coeffs));
        if phi.inverse().is_some() {
            return Ok(AffineWitness {
                kind: AffineWitnessKind::NonsingularCoadjointCocycle,
                payload: Some(AffinePayload::CoadjointCocycle(phi)),
                note: format!("nonsingular dual-valued 1-cocycle found at trial {trial}"),
            });
        }
    }

    Ok(AffineWitness {
        kind: AffineWitnessKind::NoneFound,
        payload: None,
        note: format!(
            "no witness found after {trials} trials per stage; this does not prove the algebra is non-affine"
        ),
    })
}

/// Left-symmetric product with structure constants `e_i · e_j = sum_k c e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSAProduct {
    dim: usize,
    constants: Vec<Scalar>,
}

impl LSAProduct {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.constants[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Bilinear extension.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut acc = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let factor = &x[i] * &y[j];
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        acc[k] += &(&factor * c);
                    }
                }
            }
        }
        acc
    }

    /// `x(yz) - (xy)z` is symmetric in `x, y` on all basis triples.
    pub fn is_left_symmetric(&self) -> bool {
        let n = self.dim;
        let e: Vec<Vec<Scalar>> = (0..n).map(|i| crate::liealg::unit_vector(n, i)).collect();
        for x in 0..n {
            for y in x + 1..n {
                for z in 0..n {
                    let a1 = self.product(&e[x], &self.product(&e[y], &e[z]));
                    let a2 = self.product(&self.basis_product(x, y).to_vec(), &e[z]);
                    let b1 = self.product(&e[y], &self.product(&e[x], &e[z]));
                    let b2 = self.product(&self.basis_product(y, x).to_vec(), &e[z]);
                    let lhs: Vec<Scalar> =
                        a1.iter().zip(&a2).map(|(p, q)| p - q).collect();
                    let rhs: Vec<Scalar> =
                        b1.iter().zip(&b2).map(|(p, q)| p - q).collect();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `x·y - y·x = [x,y]` on all basis pairs.
    pub fn is_compatible_with(&self, g: &LieAlgebra) -> bool {
        let n = self.dim;
        if g.dim() != n {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let forward = self.basis_product(i, j);
                let backward = self.basis_product(j, i);
                let commutator: Vec<Scalar> =
                    forward.iter().zip(backward).map(|(a, b)| a - b).collect();
                if commutator != g.basis_bracket(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

/// The product `x · y = phi^{-1}(x · phi(y))` induced by a nonsingular
/// 1-cocycle `phi` into an `n`-dimensional module. Left-symmetry and
/// compatibility with the bracket are re-verified exactly before returning.
pub fn lsa_from_cocycle(
    g: &LieAlgebra,
    module: &ModuleAction,
    phi: &Matrix,
) -> Result<LSAProduct, StructuresError> {
    require_lie(g)?;
    let n = g.dim();
    if module.dim_m() != n {
        return Err(StructuresError::ModuleDimensionMismatch {
            expected: n,
            got: module.dim_m(),
        });
    }
    if phi.rows() != n || phi.cols() != n {
        return Err(StructuresError::ModuleDimensionMismatch {
            expected: n,
            got: phi.rows(),
        });
    }
    // Cocycle condition: phi([e_i, e_j]) = e_i · phi(e_j) - e_j · phi(e_i).
    for i in 0..n {
        for j in i + 1..n {
            let lhs = phi.mul_vec(&g.basis_bracket(i, j));
            let mut rhs = module.act(i, &phi.col_vec(j));
            let sub = module.act(j, &phi.col_vec(i));
            for (a, b) in rhs.iter_mut().zip(sub) {
                *a -= &b;
            }
            if lhs != rhs {
                return Err(StructuresError::NotACocycle);
            }
        }
    }
    let phi_inv = phi.inverse().ok_or(StructuresError::SingularCocycle)?;

    let mut constants = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let product = phi_inv.mul_vec(&module.act(i, &phi.col_vec(j)));
            constants.extend(product);
        }
    }
    let lsa = LSAProduct { dim: n, constants };
    assert!(
        lsa.is_left_symmetric(),
        "cocycle-induced product must be left-symmetric"
    );
    assert!(
        lsa.is_compatible_with(g),
        "cocycle-induced product must recover the bracket"
    );
    Ok(lsa)
}

// ---------------------------------------------------------------------------
// Wire formats.

fn scalar_vec_json(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn matrix_json(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}

fn form_entries_json(form: &TwoForm) -> Vec<(String, String)> {
    let n = form.dim();
    crate::cohomology::pair_list(n)
        .into_iter()
        .filter_map(|(i, j)| {
            let v = form.matrix().get(i, j);
            (!v.is_zero()).then(|| (format!("{},{}", i + 1, j + 1), v.to_string()))
        })
        .collect()
}

impl Serialize for NegativeCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("certificate", 2)?;
        match self {
            NegativeCertificate::OddDimension => {
                st.serialize_field("kind", "OddDimension")?;
            }
            NegativeCertificate::CommonKernelVector(v) => {
                st.serialize_field("kind", "CommonKernelVector")?;
                st.serialize_field("vector", &scalar_vec_json(v))?;
            }
            NegativeCertificate::NonzeroCenter(v) => {
                st.serialize_field("kind", "NonzeroCenter")?;
                st.serialize_field("vector", &scalar_vec_json(v))?;
            }
            NegativeCertificate::IdenticallyZeroDeterminant => {
                st.serialize_field("kind", "IdenticallyZeroDeterminant")?;
            }
        }
        st.end()
    }
}

impl Serialize for SamplingRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("sampling", 4)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("trials", &self.trials)?;
        st.serialize_field("sample_set_size", &self.sample_set_size)?;
        st.serialize_field("failure_bound", &self.failure_bound.to_string())?;
        st.end()
    }
}

impl Serialize for SymplecticVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Witness {
            entries: Vec<(String, String)>,
            det: String,
        }
        let mut st = serializer.serialize_struct("verdict", 4)?;
        st.serialize_field(
            "status",
            match self.status {
                SymplecticStatus::Symplectic => "Symplectic",
                SymplecticStatus::NotSymplecticCertified => "NotSymplecticCertified",
                SymplecticStatus::ProbablyNotSymplectic => "ProbablyNotSymplectic",
            },
        )?;
        st.serialize_field(
            "witness",
            &self.witness.as_ref().map(|w| Witness {
                entries: form_entries_json(&w.form),
                det: w.det.to_string(),
            }),
        )?;
        st.serialize_field("certificate", &self.certificate)?;
        st.serialize_field("sampling", &self.sampling)?;
        st.end()
    }
}

impl Serialize for FrobeniusVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Witness {
            functional: Vec<String>,
            entries: Vec<(String, String)>,
            det: String,
        }
        let mut st = serializer.serialize_struct("verdict", 4)?;
        st.serialize_field(
            "status",
            match self.status {
                FrobeniusStatus::Frobenius => "Frobenius",
                FrobeniusStatus::NotFrobeniusCertified => "NotFrobeniusCertified",
                FrobeniusStatus::ProbablyNotFrobenius => "ProbablyNotFrobenius",
            },
        )?;
        st.serialize_field(
            "witness",
            &self.witness.as_ref().map(|w| Witness {
                functional: scalar_vec_json(&w.functional),
                entries: form_entries_json(&w.form),
                det: w.det.to_string(),
            }),
        )?;
        st.serialize_field("certificate", &self.certificate)?;
        st.serialize_field("sampling", &self.sampling)?;
        st.end()
    }
}

impl Serialize for CnlaVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Step {
            dim: usize,
            basis: Vec<Vec<String>>,
        }
        let mut st = serializer.serialize_struct("verdict", 3)?;
        st.serialize_field("is_cnla", &self.is_cnla)?;
        st.serialize_field(
            "flag",
            &self.flag.as_ref().map(|steps| {
                steps
                    .iter()
                    .map(|s| Step {
                        dim: s.dim(),
                        basis: matrix_json(s.basis()),
                    })
                    .collect::<Vec<_>>()
            }),
        )?;
        st.serialize_field(
            "counterexample",
            &self.counterexample.as_ref().map(matrix_json),
        )?;
        st.end()
    }
}

impl Serialize for AffineWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("witness", 3)?;
        st.serialize_field(
            "kind",
            match self.kind {
                AffineWitnessKind::NonsingularDerivation => "NonsingularDerivation",
                AffineWitnessKind::SymplecticForm => "SymplecticForm",
                AffineWitnessKind::NonsingularCoadjointCocycle => "NonsingularCoadjointCocycle",
                AffineWitnessKind::NoneFound => "NoneFound",
            },
        )?;
        let payload = self.payload.as_ref().map(|p| match p {
            AffinePayload::Derivation(m) => {
                serde_json::json!({"matrix": matrix_json(m)})
            }
            AffinePayload::Form(f) => {
                serde_json::json!({"entries": form_entries_json(f)})
            }
            AffinePayload::CoadjointCocycle(m) => {
                serde_json::json!({"matrix": matrix_json(m)})
            }
        });
        st.serialize_field("payload", &payload)?;
        st.serialize_field("note", &self.note)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog;
    use std::collections::BTreeMap;

    fn get(name: &str) -> LieAlgebra {
        catalog(name, &BTreeMap::new()).unwrap()
    }

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    #[test]
    fn n4_is_symplectic_with_a_reverifiable_witness() {
        let g = get("n4");
        let v = symplectic_verdict(&g, 0, 20).unwrap();
        assert!(v.is_symplectic());
        let w = v.witness.unwrap();
        let det = verify_symplectic_witness(&g, &w.form).expect("witness re-verifies");
        assert_eq!(det, w.det);
    }

    #[test]
    fn contre6_has_a_common_kernel_certificate_in_the_center_direction() {
        let g = get("contre6");
        let v = symplectic_verdict(&g, 0, 20).unwrap();
        assert_eq!(v.status, SymplecticStatus::NotSymplecticCertified);
        match v.certificate.unwrap() {
            NegativeCertificate::CommonKernelVector(vec) => {
                assert!(vec.iter().take(5).all(Scalar::is_zero));
                assert!(!vec[5].is_zero());
                // Re-verify: annihilated by the whole cocycle space.
                let z2 = two_cocycles(&g).unwrap();
                for coords in z2.basis_vectors() {
                    let form = TwoForm::from_coords(6, &coords);
                    let image = form.matrix().mul_vec(&vec);
                    assert!(image.iter().all(Scalar::is_zero));
                }
            }
            other => panic!("expected a kernel-vector certificate, got {other:?}"),
        }
    }

    #[test]
    fn odd_dimension_is_certified() {
        let v = symplectic_verdict(&get("n3"), 0, 5).unwrap();
        assert_eq!(
            v.certificate,
            Some(NegativeCertificate::OddDimension)
        );
    }

    #[test]
    fn pfaffian_escalation_certifies_flat_families() {
        // All closed forms of this algebra are degenerate but share no
        // common kernel vector, so only the escalation certifies it.
        let lam = [("lambda".to_string(), Scalar::one())].into_iter().collect();
        let g = catalog("r3lam", &lam).unwrap();
        let sampled = symplectic_verdict(&g, 0, 20).unwrap();
        assert_eq!(sampled.status, SymplecticStatus::ProbablyNotSymplectic);
        let escalated = symplectic_verdict_with(&g, 0, 20, true).unwrap();
        assert_eq!(escalated.status, SymplecticStatus::NotSymplecticCertified);
        assert_eq!(
            escalated.certificate,
            Some(NegativeCertificate::IdenticallyZeroDeterminant)
        );
    }

    #[test]
    fn frobenius_verdicts() {
        // [e1,e2] = e1 has the nondegenerate exact form from f = e1*.
        let r2 = get("r2");
        let v = frobenius_verdict(&r2, 0, 20).unwrap();
        assert!(v.is_frobenius());
        let w = v.witness.unwrap();
        assert_eq!(w.form.matrix().det().unwrap(), w.det);

        let n4 = get("n4");
        let v = frobenius_verdict(&n4, 0, 20).unwrap();
        assert_eq!(v.status, FrobeniusStatus::NotFrobeniusCertified);
        assert!(matches!(
            v.certificate,
            Some(NegativeCertificate::NonzeroCenter(_))
        ));

        let g6 = get("g6");
        let v = frobenius_verdict(&g6, 0, 20).unwrap();
        assert!(v.is_frobenius(), "brute-force over functionals finds e4*");
    }

    #[test]
    fn abelian_is_never_cnla() {
        let v = is_cnla(&LieAlgebra::abelian(3)).unwrap();
        assert!(!v.is_cnla);
        let c = v.counterexample.unwrap();
        assert!(!c.is_nilpotent().unwrap());
    }

    #[test]
    fn n4_is_not_cnla() {
        let v = is_cnla(&get("n4")).unwrap();
        assert!(!v.is_cnla);
        let c = v.counterexample.unwrap();
        assert!(is_derivation(&get("n4"), &c));
        assert!(!c.is_nilpotent().unwrap());
    }

    #[test]
    fn cnla_flag_steps_are_annihilated() {
        let g = get("mu8_15");
        let v = is_cnla(&g).unwrap();
        assert!(v.is_cnla);
        let flag = v.flag.unwrap();
        assert!(flag.last().unwrap().is_full());
        let der = z1(&g, &adjoint_module(&g).unwrap());
        let mats: Vec<Matrix> = der
            .basis_vectors()
            .into_iter()
            .map(|c| cocycle_matrix(8, 8, &c))
            .collect();
        for win in flag.windows(2) {
            assert!(win[1].dim() > win[0].dim(), "flag strictly increases");
            for d in &mats {
                for v in win[1].basis_vectors() {
                    assert!(win[0].contains_vec(&d.mul_vec(&v)));
                }
            }
        }
    }

    #[test]
    fn affine_witness_stages() {
        let contre = get("contre6");
        let w = affine_witness(&contre, 0, 20).unwrap();
        assert_eq!(w.kind, AffineWitnessKind::NonsingularDerivation);
        match w.payload.unwrap() {
            AffinePayload::Derivation(d) => {
                assert!(is_derivation(&contre, &d));
                assert!(d.inverse().is_some());
            }
            other => panic!("unexpected payload {other:?}"),
        }

        let n4 = get("n4");
        let w = affine_witness(&n4, 0, 20).unwrap();
        assert_ne!(w.kind, AffineWitnessKind::NoneFound);

        // Odd dimension with a nonsingular dual-valued cocycle.
        let heis = get("n3");
        let w = affine_witness(&heis, 0, 20).unwrap();
        assert!(matches!(
            w.kind,
            AffineWitnessKind::NonsingularDerivation
                | AffineWitnessKind::NonsingularCoadjointCocycle
        ));
    }

    #[test]
    fn lsa_from_identity_on_abelian_is_zero() {
        let g = LieAlgebra::abelian(3);
        let module = ModuleAction::new(&g, vec![Matrix::zeros(3, 3); 3]).unwrap();
        let lsa = lsa_from_cocycle(&g, &module, &Matrix::identity(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(lsa.basis_product(i, j).iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn lsa_from_the_diagonal_derivation_of_contre6() {
        let g = get("contre6");
        let module = adjoint_module(&g).unwrap();
        let mut d = Matrix::zeros(6, 6);
        for (i, w) in [1i64, 2, 3, 4, 5, 7].into_iter().enumerate() {
            d.set(i, i, Scalar::from_int(w));
        }
        let lsa = lsa_from_cocycle(&g, &module, &d).unwrap();
        assert!(lsa.is_left_symmetric());
        assert!(lsa.is_compatible_with(&g));
        // x·y = D^{-1}[x, D y] on a spot-checked pair.
        let e1 = crate::liealg::unit_vector(6, 0);
        let e2 = crate::liealg::unit_vector(6, 1);
        let expected = d
            .inverse()
            .unwrap()
            .mul_vec(&g.bracket(&e1, &d.mul_vec(&e2)).unwrap());
        assert_eq!(lsa.product(&e1, &e2), expected);
    }

    #[test]
    fn lsa_rejects_bad_inputs() {
        let g = get("contre6");
        let module = adjoint_module(&g).unwrap();
        assert_eq!(
            lsa_from_cocycle(&g, &module, &Matrix::zeros(6, 6)),
            Err(StructuresError::SingularCocycle)
        );
        assert_eq!(
            lsa_from_cocycle(&g, &module, &Matrix::identity(6)),
            Err(StructuresError::NotACocycle)
        );
    }

    #[test]
    fn lsa_from_a_symplectic_form_on_n4() {
        // The form pairing e1<->e4 and e2<->e3 as a map into the dual module.
        let g = get("n4");
        let module = coadjoint_module(&g).unwrap();
        let phi = Matrix::from_int_rows(&[
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
            &[0, -1, 0, 0],
            &[-1, 0, 0, 0],
        ]);
        let lsa = lsa_from_cocycle(&g, &module, &phi).unwrap();
        assert!(lsa.is_left_symmetric());
        assert!(lsa.is_compatible_with(&g));
    }

    #[test]
    fn verdicts_are_deterministic() {
        let g = get("mu8_16");
        let a = symplectic_verdict(&g, 7, 20).unwrap();
        let b = symplectic_verdict(&g, 7, 20).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        let c = symplectic_verdict(&g, 8, 20).unwrap();
        // Same verdict, possibly different witness; status must agree.
        assert_eq!(a.status, c.status);
    }

    #[test]
    fn verdict_json_shape() {
        let g = get("n4");
        let v = serde_json::to_value(symplectic_verdict(&g, 0, 20).unwrap()).unwrap();
        assert_eq!(v["status"], "Symplectic");
        assert!(v["witness"]["det"].is_string());
        assert!(v["certificate"].is_null());
        assert!(v["sampling"]["failure_bound"].is_string());

        let nf = serde_json::to_value(frobenius_verdict(&g, 0, 20).unwrap()).unwrap();
        assert_eq!(nf["status"], "NotFrobeniusCertified");
        assert_eq!(nf["certificate"]["kind"], "NonzeroCenter");
    }

    #[test]
    fn failure_bound_matches_the_sample_set() {
        let rec = sampling_record(4, 0, 2);
        assert_eq!(rec.sample_set_size, 2 * (2 * 4 * 2) + 1);
        assert_eq!(rec.failure_bound, q(4, 33).pow(2));
    }
}
