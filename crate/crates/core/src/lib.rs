//! Exact verification toolkit for the conjugated companion-matrix
//! construction over prime fields.
//!
//! Given a primitive polynomial `f` of degree `n >= 3` over `F_p`, with
//! companion matrix `C` and cyclic shift `G = companion(X^n - 1)`, the
//! conjugates `G_k = G^(k-1) C G^(1-k)` are built, their product is shown to
//! be the companion matrix `K = C (G^-1 C)^n`, and generation of
//! `GL_n(F_p)` by the `G_k` is certified with a Schreier-Sims stabilizer
//! chain on the nonzero vectors of `F_p^n`.
//!
//! Modules, bottom-up:
//! - [`field`], [`factor`]: prime-field arithmetic, element orders,
//!   factorization.
//! - [`poly`]: polynomials, irreducibility, primitivity, table notation.
//! - [`matrix`]: dense matrices and vectors over `F_p`.
//! - [`construction`]: the construction, its closed forms, conditions and
//!   verdicts, and full per-instance reports.
//! - [`perm`]: permutation action and stabilizer chains.

pub mod construction;
pub mod error;
pub mod factor;
pub mod field;
pub mod matrix;
pub mod perm;
pub mod poly;

pub use error::{Error, Result};
pub use factor::{factorize, Factorization};
pub use field::{element_order, fp_pow, is_generator, FieldElement, PrimeField};
pub use matrix::{Matrix, Vector};
pub use poly::{parse_poly, poly_powmod, Polynomial, Primitivity};
