//! Integral simplicial homology of flag complexes.

pub mod chain;
pub mod homology;
pub mod snf;

pub use chain::{order_chain_complex, ChainComplexZ};
pub use homology::{reduced_homology, reduced_homology_with, HomologyReport};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
