//! Exact arithmetic for finite-dimensional commutative nonassociative
//! algebras carrying a weight homomorphism.
//!
//! The crate revolves around a small set of constructions and decision
//! procedures:
//!
//! * structure-constant algebras over Q or a prime field F_p (p >= 5), with
//!   exact scalars throughout — no floating point anywhere;
//! * weight forms and the deformations they induce: gametization, the star
//!   transform and its inverse, unitization, and the Jordan hull;
//! * a closed catalog of polynomial identities decided exactly by full
//!   polarization, cross-validated by exhaustive finite-field evaluation;
//! * structural analysis: idempotents from closed cubic formulas and from
//!   exhaustive scans, Peirce decompositions with their multiplication
//!   rules, derived series, nil elements, bounded power-associativity;
//! * a seeded, reproducible search over small finite-field algebras for
//!   counterexamples to the conjecture that `(x^2)^2 = 0` forces
//!   solvability.
//!
//! All core types are generic over the scalar [`Field`]; the [`QAlgebra`]
//! and [`FpAlgebra`] families of aliases fix the two concrete
//! instantiations. Values are immutable after construction and operations
//! are pure functions, so everything is safe to share across threads.

pub mod algebra;
pub mod baric;
pub mod error;
pub mod field;
pub mod fileio;
pub mod identities;
pub mod linalg;
pub mod search;
pub mod structure;

pub use algebra::{enumerate_elements, Algebra, Element};
pub use baric::{
    is_algebra_homomorphism, star_inverse, validate_weight, BaricAlgebra, HomomorphismReport,
    LinearMap, StarTransform, Weight, WeightVerdict,
};
pub use error::{Error, Result};
pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use fileio::{
    algebra_to_file, build_algebra, load_baric_q, load_file, load_path, AlgebraFile, FieldRepr,
    LoadedAlgebra, ProductEntry, TermEntry,
};
pub use identities::{
    evaluate_identity_at, exhaustive_check, gametization_equivalences, polarized_check,
    verify_linearized_consequences, CheckMethod, GametizationEquivalences, IdentityId,
    IdentityReport, LinearizedSet, Witness,
};
pub use linalg::{eigenspace, Matrix, Subspace};
pub use search::{
    conjecture_scan, exhaustive_table_count, random_baric_algebra, random_commutative_algebra,
    structured_generator, table_from_index, ScanMode, ScanSummary, SearchConfig, SearchRecord,
};
pub use structure::{
    default_eigenvalue_probes, derived_series, idempotent_from_formula, idempotents_exhaustive,
    is_idempotent, nil_element_check, peirce_decompose, peirce_verify_rules,
    power_associative_upto, remark_check, DerivedSeries, NilOutcome, PeirceCase,
    PeirceDecomposition,
};

/// Default evaluation budget for the exhaustive checkers, overridable
/// through the `BARIC_BUDGET` environment variable in the CLI.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

pub type QAlgebra = Algebra<Rationals>;
pub type QBaricAlgebra = BaricAlgebra<Rationals>;
pub type QElement = Element<Rationals>;
pub type QMatrix = Matrix<Rationals>;
pub type QSubspace = Subspace<Rationals>;
pub type QWeight = Weight<Rationals>;

pub type FpAlgebra = Algebra<PrimeField>;
pub type FpBaricAlgebra = BaricAlgebra<PrimeField>;
pub type FpElement = Element<PrimeField>;
pub type FpMatrix = Matrix<PrimeField>;
pub type FpSubspace = Subspace<PrimeField>;
pub type FpWeight = Weight<PrimeField>;
