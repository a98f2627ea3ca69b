//! The semisimplification pipeline and the constructions built on it.

mod clifford;
mod levi;
mod optimal;
mod pipeline;

pub use clifford::{clifford_joint_ss, generated_group, CliffordJoint, NormalityEvidence, MAX_SUBGROUP_ORDER};
pub use levi::{levi_descent, LeviReport};
pub use optimal::{
    block_weight_vectors, invariant_subspace_lattice, optimal_flag, FlagMeasure, OptimalFlagReport, MAX_FLAGS,
    MAX_LATTICE_POINTS, MAX_LEVI_CONJUGATES, MAX_SUBMODULES,
};
pub use pipeline::{conjugacy_certificate, is_gcr_over_k, semisimplify, ConjugacyCertificate, SsResult};
