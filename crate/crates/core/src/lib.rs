//! Exact mutation of skew-symmetrizable matrices and their diagrams, quasi-Cartan
//! companions, and recognition of finite, affine and minimal infinite types.

mod graph;

pub mod classify;
pub mod companion;
pub mod diagram;
pub mod error;
pub mod explore;
pub mod linalg;
pub mod mutation;

pub use companion::{
    companion_positivity, find_admissible, find_admissible_for, is_admissible, sign_change_witness,
    AdmissibilityReport, Companion,
};
pub use classify::{
    affine_recognize, classify, classify_acyclic, generate_family, is_finite_type, is_minimal_infinite,
    recognize_dynkin, recognize_extended_dynkin, scan_family_occurrences, ClassVerdict, FamilyKind, FamilyLabel,
    Shape, VerdictKind,
};
pub use diagram::{canonical_key, diagram_of, induced_subdiagram, realize_matrix, CanonicalKey, Diagram, Edge};
pub use error::{Error, Result};
pub use explore::{enumerate_class, infinitude_certificate, search_to_target, Caps, ClassEnumeration};
pub use linalg::{psd_classify, Definiteness, ExchangeMatrix, PositivityReport, SymmetricForm};
pub use mutation::{apply_sequence, apply_sequence_diagram, mutate_companion, mutate_diagram, mutate_matrix, sign_change};

/// Default exact scalar.
pub type Rational = num_rational::BigRational;
/// Fixed-width rational for small forms.
pub type SmallRational = num_rational::Ratio<i128>;
pub type Form = SymmetricForm<Rational>;
