//! Exact-arithmetic toolkit for Lie algebra cohomology and symplectic
//! structure decisions over the rationals.
//!
//! The crate represents finite-dimensional Lie algebras by structure
//! constants, computes Chevalley–Eilenberg cohomology in degrees up to two,
//! and decides symplecticity, Frobenius-ness, characteristic nilpotency and
//! affine-structure witnesses, each verdict carrying an exact certificate or
//! an explicit probabilistic confidence. Filiform algebras get a dedicated
//! adapted-basis parameterization with classification labels and exact
//! solving of their Jacobi constraints.
//!
//! Rational computations certify the corresponding statements over any field
//! of characteristic zero: every criterion in the crate is the vanishing or
//! non-vanishing of polynomials with rational coefficients in the structure
//! constants (noted here, not proven).
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is safe to share across threads; randomized
//! searches are keyed deterministic streams, making verdicts reproducible
//! bit for bit regardless of evaluation order.

pub mod cohomology;
pub mod exactlin;
pub mod filiform;
pub mod liealg;
mod poly;
pub mod samples;
pub mod structures;
