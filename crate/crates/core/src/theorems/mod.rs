//! Executable forms of the structural results about fixed-point subcomplexes.

mod borel_tits;
mod centre;
mod convex;
mod cr;
mod fixedform;
mod loewy;
mod serre;

pub use borel_tits::{borel_tits_demo, BorelTitsReport};
pub use centre::{check_normal_overgroup, find_centre, CentreChecks, CentreReport, CentreSummary, OvergroupVerdict};
pub use convex::{check_convex, check_convex_naive, ConvexVerdict};
pub use cr::{g_cr_verdicts, g_cr_verdicts_from, is_contractible, is_g_cr, x_cr, CrVerdict, GcrVerdicts};
pub use fixedform::{check_fixed_point_form, closure_condition, FixedPointVerdict};
pub use loewy::{loewy_centres, LoewyReport};
pub use serre::{verify_serre_question, SerreVerdict};
