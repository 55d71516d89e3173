use serde::Serialize;

use crate::building::{chains_of, fixed_point_subcomplex, Ambient, Flag, SubComplex};
use crate::error::{Error, Result};
use crate::grouplat::{closure, invariant_lattice, is_normal_in, GroupClosure, GroupSpec, DEFAULT_CLOSURE_CAP};

use super::cr::is_contractible;

/// Assertions made along the way to the centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CentreChecks {
    pub h_subset_m: bool,
    pub xm_equals_xh: bool,
    pub m_subset_k: bool,
    pub m_normal_in_k: bool,
    pub xk_nonempty: bool,
    pub xk_subset_xh: bool,
    pub centre_fixed_by_k: bool,
}

impl CentreChecks {
    pub fn all_hold(&self) -> bool {
        self.h_subset_m
            && self.xm_equals_xh
            && self.m_subset_k
            && self.m_normal_in_k
            && self.xk_nonempty
            && self.xk_subset_xh
            && self.centre_fixed_by_k
    }

    fn failures(&self) -> Vec<&'static str> {
        let all = [
            (self.h_subset_m, "H ⊆ M"),
            (self.xm_equals_xh, "X^M = X^H"),
            (self.m_subset_k, "M ⊆ K"),
            (self.m_normal_in_k, "M normal in K"),
            (self.xk_nonempty, "X^K nonempty"),
            (self.xk_subset_xh, "X^K ⊆ X^H"),
            (self.centre_fixed_by_k, "centre fixed by K"),
        ];
        all.iter().filter(|(ok, _)| !ok).map(|(_, name)| *name).collect()
    }
}

/// A simplex of `Y = X^H` fixed by all of `N_G(Y)`, with the intermediate groups.
#[derive(Debug, Clone)]
pub struct CentreReport {
    pub h: GroupSpec,
    pub y: SubComplex,
    /// Intersection of the parabolics of the simplices of `Y`.
    pub m: GroupClosure,
    /// `N_G(Y)`.
    pub k: GroupClosure,
    pub xk: SubComplex,
    pub centre: Flag,
    pub checks: CentreChecks,
}

/// Serializable digest of a [`CentreReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentreSummary {
    pub group: String,
    pub y_simplices: usize,
    pub m_order: usize,
    pub k_order: usize,
    pub xk_simplices: usize,
    pub centre: Flag,
    pub checks: CentreChecks,
}

impl CentreReport {
    pub fn summary(&self) -> CentreSummary {
        CentreSummary {
            group: self.h.name.clone(),
            y_simplices: self.y.len(),
            m_order: self.m.order(),
            k_order: self.k.order(),
            xk_simplices: self.xk.len(),
            centre: self.centre.clone(),
            checks: self.checks,
        }
    }
}

/// Centre of a contractible fixed-point subcomplex.
///
/// `M` fixes every simplex of `Y`, so `X^M = X^H`; `K = N_G(Y)` normalizes
/// `M`; since `M` is not completely reducible neither is `K`, so `X^K` is a
/// nonempty subcomplex of `Y` whose simplices are all `K`-fixed. The centre is
/// the first maximal flag of `X^K` in canonical order.
pub fn find_centre(h: &GroupSpec, ambient: &Ambient) -> Result<CentreReport> {
    let y = fixed_point_subcomplex(&invariant_lattice(h)?);
    if !is_contractible(&y)? {
        return Err(Error::NotContractible);
    }
    let universe = ambient.universe();
    let complex_of = |bits: &fixedbitset::FixedBitSet| -> SubComplex {
        let nodes: Vec<_> = ambient.fixed_set(bits).ones().map(|s| universe.subspace(s).clone()).collect();
        SubComplex::new(ambient.field(), ambient.n(), chains_of(&nodes)).expect("chains are face-closed")
    };

    let hc = closure(h, DEFAULT_CLOSURE_CAP);
    hc.require_complete()?;
    let m_bits = ambient.stabilizer_pointwise_bits(&y);
    let h_subset_m = hc.elements().iter().all(|g| ambient.element_index(g).is_some_and(|i| m_bits.contains(i)));
    let xm = complex_of(&m_bits);
    let xm_equals_xh = xm == y;

    let k_bits = ambient.stabilizer_setwise_bits(&y);
    let m_subset_k = m_bits.is_subset(&k_bits);
    let m = ambient.subgroup(&m_bits);
    let k = ambient.subgroup(&k_bits);
    let m_normal_in_k = m_subset_k && is_normal_in(&m, &k)?;

    let xk = complex_of(&k_bits);
    let xk_nonempty = !xk.is_empty();
    let xk_subset_xh = xk.is_subcomplex_of(&y);
    let centre = xk.maximal_flags().first().map(|f| (*f).clone());
    let centre_fixed_by_k = centre.as_ref().is_some_and(|c| {
        k.elements().iter().all(|g| c.members().iter().all(|s| s.image_unchecked(g) == *s))
    });
    let checks =
        CentreChecks { h_subset_m, xm_equals_xh, m_subset_k, m_normal_in_k, xk_nonempty, xk_subset_xh, centre_fixed_by_k };
    if !checks.all_hold() {
        return Err(Error::Verification(format!("centre construction failed: {}", checks.failures().join(", "))));
    }
    Ok(CentreReport { h: h.clone(), y, m, k, xk, centre: centre.expect("checked"), checks })
}

/// Outcome of the normal-overgroup check for a contractible `X^H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OvergroupVerdict {
    pub k_in_complex_stabilizer: bool,
    pub k_fixes_centre: bool,
    pub centre: Flag,
}

/// For `H` normal in `K` with `X^H` contractible: `K` stabilizes `X^H` and
/// fixes the centre returned by [`find_centre`].
pub fn check_normal_overgroup(h: &GroupSpec, k: &GroupSpec, ambient: &Ambient) -> Result<OvergroupVerdict> {
    let hc = closure(h, DEFAULT_CLOSURE_CAP);
    let kc = closure(k, DEFAULT_CLOSURE_CAP);
    if !is_normal_in(&hc, &kc)? {
        return Err(Error::NotNormal);
    }
    let report = find_centre(h, ambient)?;
    let stab = ambient.stabilizer_setwise_bits(&report.y);
    let k_in_complex_stabilizer =
        kc.elements().iter().all(|g| ambient.element_index(g).is_some_and(|i| stab.contains(i)));
    let k_fixes_centre = kc
        .elements()
        .iter()
        .all(|g| report.centre.members().iter().all(|s| s.image_unchecked(g) == *s));
    Ok(OvergroupVerdict { k_in_complex_stabilizer, k_fixes_centre, centre: report.centre })
}
