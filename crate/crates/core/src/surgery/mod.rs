//! Reduced normal invariants, the `[rho~]` formula, its kernel, and the
//! assembled structure set of a lens space.

mod coords;
mod element;
mod formula;
mod kernel;
mod params;

pub use coords::NormalCoords;
pub use element::StructureElement;
pub use formula::{lift_tbar, rho_bar_formula, rho_class_is_zero, rho_cp_formula, RhoFormula};
pub use kernel::{
    cap_from_env, kernel_closed_form, kernel_rho_bar, l_group_reduced_rank,
    reduced_normal_group, structure_set, KernelMethod, KernelResult, MethodChoice,
    StructureSetDescriptor, DEFAULT_CAP,
};
pub use params::LensParams;

#[cfg(test)]
mod tests;
