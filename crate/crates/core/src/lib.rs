//! Partition calculus for nilpotent orbits of classical and exceptional
//! groups under covering Barbasch-Vogan duality.
//!
//! * [`partition`]: partitions, collapses and decorated collapses.
//! * [`duality`]: the covering duality maps for types A, B, C and D.
//! * [`qa`]: quasi-admissibility criteria, degree sets and sweeps.
//! * [`roots`]: root systems and gradings from weighted Dynkin diagrams.
//! * [`exceptional`]: bundled E6/E7/E8 orbit tables and their checks.

pub mod duality;
pub mod error;
pub mod exceptional;
pub mod partition;
pub mod qa;
pub mod roots;

pub use duality::{d_bv, d_com_a, degree_cap, dual_group, image_of_bv, s_partition, CoverDegree, DualGroupSpec};
pub use error::{Error, Result};
pub use exceptional::{
    check_table_consistency, n0_qa_exceptional, qa_set_for_record, qa_set_from_pair, ConsistencyReport, Criterion,
    ExceptionalGroup, ExceptionalOrbitRecord, InvariantPair, Raisability, TableData,
};
pub use partition::{
    all_partitions, collapse, enumerate_orbits, is_valid_orbit_partition, make_partition, minus_c, plus_b,
    plus_minus_c, star, ClassicalFamily, ClassicalType, CollapseKind, Partition, SortedSequence,
};
pub use qa::{
    conjecture_scan, count_above, count_below, is_quasi_admissible, is_special, n0_bv_set, n0_qa_set, qa_degree_set,
    verify_theorem, DegreeSet, ScanReport, VerificationReport,
};
pub use roots::{
    center_dim, graded_dims, levi_nodes, positive_roots, CartanKind, CartanSpec, GradedDims, Root,
    WeightedDynkinDiagram,
};
