//! Dessins d'enfants encoded as permutation pairs, and two filtrations on
//! the vector space they span.
//!
//! * [`dessin`], [`canon`]: the permutation-pair model, invariants, edge
//!   deletion and canonical forms.
//! * [`enumerate`], [`cache`]: isomorphism classes by edge count and the
//!   finite basis windows used for linear algebra.
//! * [`linalg`]: exact rational sparse vectors and echelon subspaces.
//! * [`filtration`]: optional-edge expansions, the product of covers, both
//!   filtrations and their comparison.
//!
//! Generator production runs on rayon when the `parallel` feature is on; see [`exec`].

pub mod cache;
pub mod canon;
pub mod dessin;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod filtration;
pub mod linalg;
pub mod perm;

pub use canon::{canonical_form, canonical_key, isomorphic, CanonicalKey};
pub use dessin::{Dessin, Passport};
pub use enumerate::{enumerate_exact, enumerate_window, oracle_enumerate, BasisWindow, Mode, WindowOptions};
pub use error::{Error, Result};
pub use exec::Exec;
pub use filtration::{
    belyi_level_span_inner, compare_levels, dessin_level_span, expansion, product, product_vector,
    quotient_dimension, ComparisonReport, FiltrationKind, QuotientReport,
};
pub use linalg::{subspace_leq, vector_combine, Rational, SparseVector, Subspace};
pub use perm::Permutation;
