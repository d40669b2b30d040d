//! Exact-arithmetic computations with classical and signed Kazhdan-Lusztig
//! polynomials on Weyl groups of rank at most 4.
//!
//! The crate builds root systems and Weyl groups from Cartan data, computes
//! Kazhdan-Lusztig tables by recursion and by an independent Hecke-algebra
//! oracle, forms the character and signature-character multiplicity matrices,
//! runs the coherent-continuation induction step as an algorithm, and checks
//! the resulting inversion identities.  A brute-force Shapovalov-form oracle
//! (PBW straightening over `Q[t]`, symmetric congruence diagonalization over
//! the local ring at `t = 0`) provides ground truth for the Jantzen filtration
//! and for signature characters at rank <= 2.
//!
//! Everything is exact: weights are vectors of rationals over the fundamental
//! weight basis, polynomial coefficients are arbitrary-precision integers, and
//! the "limit as t -> 0+" of the deformation machinery is the sign of the
//! lowest-order coefficient.  No floating point is used anywhere.

pub mod charlat;
pub mod error;
pub mod export;
pub mod inversion;
pub mod klcore;
pub mod rational;
pub mod rootsys;
pub mod shapovalov;
pub mod signedkl;
pub mod weyl;

pub use error::{CoreError, Result};
pub use rational::Q;
pub use rootsys::{CartanType, EpsilonGrading, IntegralSubsystem, Painting, RootSystem, Weight};
pub use weyl::{WeylElement, WeylGroup};
