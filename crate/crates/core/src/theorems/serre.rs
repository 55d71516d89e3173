use serde::Serialize;

use crate::error::{Error, Result};
use crate::grouplat::{closure, is_normal_in, GroupSpec, DEFAULT_CLOSURE_CAP};

use super::cr::is_g_cr;

/// Normal-subgroup inheritance of complete reducibility for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SerreVerdict {
    pub h_g_cr: bool,
    pub n_g_cr: bool,
    /// False only when `H` is completely reducible and `N` is not.
    pub consistent: bool,
}

/// For `N` normal in `H`: if `H` is completely reducible then so is `N`.
pub fn verify_serre_question(n: &GroupSpec, h: &GroupSpec) -> Result<SerreVerdict> {
    let nc = closure(n, DEFAULT_CLOSURE_CAP);
    let hc = closure(h, DEFAULT_CLOSURE_CAP);
    if !is_normal_in(&nc, &hc)? {
        return Err(Error::NotNormal);
    }
    let h_g_cr = is_g_cr(h)?;
    let n_g_cr = is_g_cr(n)?;
    Ok(SerreVerdict { h_g_cr, n_g_cr, consistent: !h_g_cr || n_g_cr })
}
