//! Finitely generated abelian groups: Smith normal form, invariant-factor
//! presentations and subgroups of finite coordinate groups.

mod group;
mod snf;

pub use group::{
    closure, element_order, iso_eq, solve_integer, subgroup_decomposition,
    subgroup_from_elements, FinAbPresentation, IntMatrixHom, PrimaryDecomposition,
    SubgroupDecomposition,
};
pub use snf::{identity, matmul, smith_normal_form, smith_normal_form_cols, to_big, IntMatrix, Snf};

#[cfg(test)]
mod tests;
