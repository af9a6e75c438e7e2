//! Exact-arithmetic toolkit for free nilpotent Lie algebras `F_{k,s}`.
//!
//! The crate is organised in four layers:
//!
//! * [`free_lie`]: the Lyndon basis of `F_{k,s}`, bracket rewriting, weight
//!   grading, quasi-norms, and finite-dimensional quotients given by
//!   structure constants ([`NilpotentAlgebra`]).
//! * [`bch`]: the simply connected group `(g, *)` under the truncated
//!   Campbell–Baker–Hausdorff product, free-group words and their logarithms.
//! * [`rep`]: the `SL_k`-module structure of the degree-`s` layer, with three
//!   independent routes to the irreducible multiplicities (weight peeling,
//!   the Kraskiewicz–Weyman major-index count, and explicit highest-weight
//!   vectors).
//! * [`lab`]: numerical experiments: `δ_Γ(n)` over word balls, growth
//!   exponents, Liouville-twisted submodules with exact decay witnesses, and
//!   sublevel-set (Remez) checks.
//!
//! All algebraic computations use arbitrary-precision rationals.

pub mod bch;
pub mod error;
pub mod free_lie;
pub mod lab;
pub mod linalg;
pub mod ops;
pub mod rep;
pub mod scalar;

pub use bch::{
    bch_inverse, bch_product, bch_product_assoc, eval_word, lie_to_word, word_ball, word_to_lie, BchFormula,
    FreeGroupWord,
};
pub use error::{Error, Result};
pub use free_lie::{
    bracket, central_quotient, lyndon_basis, quasi_norm, weight_component, witt_character,
    witt_dimension, BasisBracket, CentralQuotient, FreeLieAlgebra, LieElement, LyndonWord, NilpotentAlgebra,
    TermRecord, Weight,
};
pub use lab::{
    bass_guivarch_exponent, chebyshev_t, delta_gamma, fit_beta, liouville_decay,
    liouville_quotient, liouville_submodule, remez_check, DecayRecord, LiouvilleSetup, LiouvilleWitness,
    RemezReport, TupleSpec,
};
pub use rep::{
    decompose, decompose_capped, glk_action, highest_weight_vectors, is_multiplicity_free, klyachko_occurs,
    kostka, kw_multiplicity, major_index, metabelian_layer_dims, weight_multiplicity, weyl_dim,
    IrrepDecomposition, Partition, StandardTableau,
};
pub use scalar::{Rational, Real, Scalar};
