//! Exact arithmetic in truncated cyclic group rings, and the rho-invariant
//! computation of structure sets of fake lens spaces built on it.
//!
//! Start with [`cyclic_ring`] for the ring, [`surgery`] for structure sets
//! and [`suspension`] for suspension and the torsion basis. The guide under
//! `book/` walks through each of these.

pub mod abelian;
pub mod cyclic_ring;
mod error;
pub mod expr;
pub mod json;
pub mod linalg;
pub mod special;
pub mod surgery;
pub mod suspension;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(cyclic_ring, "cyclic_ring.md");
    chapter!(special_elements, "special_elements.md");
    chapter!(structure_sets, "structure_sets.md");
    chapter!(suspension, "suspension.md");
    chapter!(torsion_basis, "torsion_basis.md");
    chapter!(cli, "cli.md");
    chapter!(verification, "verification.md");

    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
