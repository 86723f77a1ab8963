//! Suspension `L^{2d-1} -> L^{2d+1}` on invariant tuples, the elements
//! generating its kernel and cokernel, and the torsion basis built by
//! suspending upward.

mod basis;
mod elements;
mod suspend;

pub use basis::{
    browder_livesay_cascade, browder_livesay_composite, expected_orders, torsion_basis, TorsionBasis,
};
pub use elements::{
    elem_mu4m2, elem_nu, elem_omega, elem_p, elem_sigma, elem_tau, find_coords, minimal_exponent,
};
pub use suspend::{
    image_test_even_target, image_test_odd_target, suspend, suspend_canonical, ChoiceLogEntry,
    SuspensionResult,
};

#[cfg(test)]
mod tests;
