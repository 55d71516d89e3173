//! The building of `GL_n(F_q)` as a flag complex: flags, subcomplexes,
//! opposition, apartments and stabilizers.

pub mod ambient;
pub mod apartment;
pub mod complex;
pub mod flag;

pub use ambient::{stabilizer_pointwise, stabilizer_setwise, Ambient};
pub use apartment::{all_frames, apartment_from_frame, Frame};
pub use complex::{chains_of, fixed_point_subcomplex, full_building, is_thick, is_thin, panel_degrees, SubComplex};
pub use flag::{are_opposite, Flag};
