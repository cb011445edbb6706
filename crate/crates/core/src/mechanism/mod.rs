//! Model builders for the squeezing mechanism: the constraint system,
//! its subsystems, the derived K, L and m systems, the listed component
//! ideals and the singular-variety factors.

mod components;
mod params;
mod systems;

pub use components::{
    component_ideal, is_non_physical, singular_variety_factors, t_branch, t_factor, t_product,
    t_relations, u_branch, u_relations, z_factor, z_product, ComponentLabel, FactorFamily, Family,
    TBranch, UBranch,
};
pub use params::{MechanismParameters, NumericParameters, ParamError, Scalar, PARAMETER_NAMES};
pub use systems::{
    circle, configuration_variables, full_system, l_pair_for_u, reduced_system_m, restrict,
    specialize, subsystem_367, subsystem_4567, symmetric_system, system_k, system_l, variables_of,
    LVariant, PARAMETERS_367, PARAMETERS_4567, VARIABLES_367, VARIABLES_4567, VARIABLES_M,
};

use thiserror::Error;

use crate::exactalg::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MechanismError {
    #[error("invalid component label `{0}`")]
    InvalidLabel(String),
    #[error("invalid L variant {0}")]
    InvalidVariant(u8),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
