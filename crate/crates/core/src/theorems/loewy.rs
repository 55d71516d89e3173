use serde::Serialize;

use crate::building::Flag;
use crate::error::{Error, Result};
use crate::grouplat::{
    closure, invariant_lattice, is_normal_in, is_semisimple, radical_series, socle_series, GroupSpec,
    DEFAULT_CLOSURE_CAP,
};

/// Socle and radical flags of `V` as an `H`-module, and their `K`-stability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoewyReport {
    pub socle_flag: Flag,
    pub radical_flag: Flag,
    pub loewy_length: usize,
    /// Every generator of `K` maps each member of both flags to itself.
    pub k_stable: bool,
}

/// Upper and lower Loewy series of a non-semisimple `H`, as proper flags,
/// checked for stability under a normalizing overgroup `K`.
pub fn loewy_centres(h: &GroupSpec, k: &GroupSpec) -> Result<LoewyReport> {
    let hc = closure(h, DEFAULT_CLOSURE_CAP);
    let kc = closure(k, DEFAULT_CLOSURE_CAP);
    if !is_normal_in(&hc, &kc)? {
        return Err(Error::NotNormal);
    }
    let lat = invariant_lattice(h)?;
    if is_semisimple(&lat) {
        return Err(Error::LoewyImproper);
    }
    let socle = socle_series(&lat);
    let radical = radical_series(&lat);
    if socle.len() != radical.len() {
        return Err(Error::Verification(format!(
            "socle length {} differs from radical length {}",
            socle.len() - 1,
            radical.len() - 1
        )));
    }
    let strip = |series: &[crate::algebra::Subspace]| -> Result<Flag> {
        let mut inner: Vec<_> = series.iter().filter(|s| !s.is_zero() && !s.is_full()).cloned().collect();
        inner.sort();
        Flag::new(inner)
    };
    let socle_flag = strip(&socle)?;
    let radical_flag = strip(&radical)?;
    let k_stable = k.generators().iter().all(|g| {
        socle_flag.members().iter().chain(radical_flag.members()).all(|s| s.is_invariant_under(g))
    });
    Ok(LoewyReport { socle_flag, radical_flag, loewy_length: socle.len() - 1, k_stable })
}
