//! Finite LA-semigroups (left almost semigroups), their crisp ideals, and
//! `(∈_γ, ∈_γ∨q_δ)`-fuzzy ideals over exact rational grades, together with
//! an exhaustive checker for the characterization theorems of that theory.

pub mod crisp;
pub mod enumerate;
pub mod fuzzy;
pub mod grade;
pub mod ideals;
pub mod laws;
pub mod magma;
pub mod harness;
pub mod sample;

pub use crisp::{classify_crisp, subset_product, CrispClassReport, CrispError, CrispSubset};
pub use enumerate::{canonical_key, enumerate, CanonicalKey, EnumError, EnumFilter, EnumSpec, Enumeration};
pub use fuzzy::{
    compose, point_relation, pointwise_lattice, star_ops, FuzzyError, FuzzySubset, LatticeOp, RelationFlags,
    StarKind,
};
pub use grade::{Grade, GradeError, Thresholds};
pub use ideals::{
    check_inequality_form, check_point_form, classify_fuzzy, ClassifyError, FuzzyClassReport, IdealKind,
    KindVerdict,
};
pub use laws::{check_laws, regularity, LawReport, RegularityReport};
pub use magma::{CayleyTable, MagmaError};
pub use sample::{sample_fuzzy, SampleMode, SampleSpec, SplitMix64};
