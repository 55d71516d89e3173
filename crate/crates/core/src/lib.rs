//! Fixed-point subcomplexes of the spherical building of `GL_n(F_q)`.

pub mod algebra;
pub mod building;
pub mod error;
pub mod grouplat;
pub mod harness;
pub mod par;
pub mod theorems;
pub mod topology;

pub use error::{Error, Result};
