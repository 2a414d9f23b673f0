//! Exact-arithmetic toolkit for the quaternion lattices `Γ_{p,l}` acting on
//! products of two regular trees.
//!
//! Every element of `Γ_{p,l}` is represented by a primitive integer
//! quaternion up to sign ([`GroupElement`]); equality of group elements is
//! always decided on that canonical form. On top of it the crate builds the
//! square-complex presentation ([`complex`]), normal forms and anti-torus
//! classification ([`rewrite`]), factorization into generators
//! ([`membership`]), coset enumeration ([`cosets`]), a finite-precision
//! matrix model of the embedding into `PGL_2` ([`padic`]) and exact rotation
//! matrices in `SO_3(Q)` ([`so3`]).
//!
//! ```
//! use quatlat_core::{build_squares, cosets::todd_coxeter};
//! use quatlat_core::rewrite::{evaluate_word, normalize_ab};
//!
//! let pres = build_squares(3, 5)?;
//! let w = pres.parse_word("b1 a1 b2^-1 a2")?;
//! let nf = normalize_ab(&pres, &w)?;
//! assert_eq!(evaluate_word(&pres, &nf.to_word(&pres))?, evaluate_word(&pres, &w)?);
//!
//! let gens = vec![pres.parse_word("a1")?, pres.parse_word("b1")?];
//! assert_eq!(todd_coxeter(&pres, &gens, 1_000)?.index(), Some(4));
//! # Ok::<(), quatlat_core::Error>(())
//! ```

pub mod arith;
pub mod complex;
pub mod cosets;
pub mod error;
pub mod gensets;
pub mod membership;
pub mod padic;
pub mod perm;
pub mod quat;
pub mod rewrite;
pub mod sample;
pub mod so3;
pub mod suite;
pub mod word;

pub use complex::{build_squares, Presentation};
pub use cosets::{todd_coxeter, CosetTable};
pub use error::{Error, Result};
pub use gensets::GeneratorSet;
pub use perm::Permutation;
pub use quat::{GroupElement, Quaternion};
pub use rewrite::{NormalForm, PairClass};
pub use so3::RotationMatrix;
pub use word::{GammaKey, Letter, Side, Word};
