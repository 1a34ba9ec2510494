//! Exact projective geometry over ℚ and real quadratic fields ℚ(√d), with the
//! machinery needed to certify Zariski pairs of real line arrangements:
//! plumbed point configurations, their dual arrangements, chamber weights,
//! the wiring-set invariant of triangle-supported arrangements, character
//! depth, and an explicit 13-line moduli family.
//!
//! All arithmetic is exact; floating point never enters any predicate.

pub mod acceptance;
pub mod catalog;
pub mod combinatorics;
pub mod configuration;
pub mod depth;
pub mod dual;
pub mod field;
pub mod io;
pub mod linalg;
pub mod moduli;
pub mod projective;

pub use combinatorics::{is_stable, Combinatorics, Permutation, WeakCombinatorics};
pub use configuration::{
    ChamberAssignment, ChamberWeight, ConfigError, ConfigLine, Configuration, SurroundingPoint,
    ValidationReport, Violation,
};
pub use depth::{corank3, depth, line_counts, DepthReport};
pub use dual::{
    build_dpa, classify_c_leq_3, i_invariant, i_invariant_detail, normalize_support,
    triangular_inner_cyclic, verify_relation, wiring_sets, ClassifyReport, CxClass, DualError,
    PlumbedArrangement, TicReport, WiringSets,
};
pub use field::{FieldError, FieldScalar, FieldSpec, ScalarRepr};
pub use moduli::{
    concurrence_characterization, rybnikov_gluing_check, triple_point, zariski_certificate,
    Certificate, Component, ModuliError, ModuliParams, ModuliVerdict, Verdict,
};
pub use projective::{
    collinear, concurrent, conic_through_five, join, meet, transform_to_frame, Conic,
    GeometryError, ProjectiveLine, ProjectivePoint, ProjectiveTransform,
};
