//! Pointwise algebraic curvature tensors on Euclidean space.
//!
//! Tensors are stored as symmetric matrices on two-forms. On top of that the
//! crate provides the reaction pairing `B(R, S)` and `Q(R) = B(R, R)`, isotropic
//! curvature, Kähler and quaternionic model tensors, constrained curvature
//! subspaces, frame optimizers and an integrator for `dR/dt = Q(R)`.

pub mod bform;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod frame;
pub mod io;
pub mod isotropic;
pub mod kahler;
pub mod models;
pub mod pairs;
pub mod random;
pub mod search;
pub mod spaces;
pub mod tensor;
pub mod tolerance;

pub use bform::{bform, einstein_residual, qform};
pub use complex::{sphere_design_26, ComplexStructure, QuaternionTriple};
pub use error::{CurvError, Result};
pub use flow::{
    cone_preservation_probe, cone_thresholds, integrate_fixed, integrate_q_flow,
    scalar_blowup_oracle, trace_stays_in_cone, ConeReport, FlowConfig, FlowTrace, Termination,
};
pub use frame::FourFrame;
pub use io::{read_tensor, tensor_from_json, tensor_to_json, write_tensor, TensorFile};
pub use isotropic::{isotropic_curvature, isotropic_value_grad};
pub use kahler::{
    four_sectional_sum, holomorphic_sectional, orthogonal_bisectional, polarization_terms,
    PolarizationTerms,
};
pub use models::{fubini_study_for, model_fubini_study, model_r0, model_sj, model_sphere};
pub use search::{
    boundary_q_check, max_holomorphic_sectional, maximizer_first_order_check, min_isotropic,
    min_isotropic_from, min_orthogonal_bisectional, pinched, pinching_constant, qk_q_bound_check,
    shift_into_cone, BoundaryReport, CheckStatus, FirstOrderReport, FrameSearchResult,
    OptimizerConfig, QkBoundReport, SearchPoint,
};
pub use spaces::{
    curvature_space_basis, hyperkahler_subspace, kahler_subspace, qk_decompose, CurvatureSubspace,
    QkDecomposition, SubspaceKind,
};
pub use tensor::{kulkarni_nomizu, project_to_curvature, reproject, CurvatureTensor};
