//! Matrix groups from generators, invariant-subspace lattices and Loewy series.

pub mod group;
pub mod lattice;

pub use group::{
    closure, enumerate_gl, enumerate_gl_with, gl_generators, is_normal_in, GroupClosure, GroupSpec,
    DEFAULT_AMBIENT_CAP, DEFAULT_CLOSURE_CAP,
};
pub use lattice::{
    has_invariant_complement, invariant_lattice, invariant_lattice_of, is_semisimple, radical_series,
    socle_series, InvLattice,
};
