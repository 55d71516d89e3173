use std::collections::HashMap;

use serde::Serialize;

use crate::building::{fixed_point_subcomplex, Flag, SubComplex};
use crate::error::{Error, Result};
use crate::grouplat::{invariant_lattice, is_semisimple, GroupSpec, InvLattice};
use crate::topology::{reduced_homology, HomologyReport};

/// X-complete reducibility of a subcomplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrVerdict {
    pub is_x_cr: bool,
    /// Each flag paired with its first opposite in canonical order (when X-cr).
    pub witnesses: Vec<(Flag, Flag)>,
    /// A flag with no opposite in the complex (when not X-cr).
    pub failure: Option<Flag>,
}

/// Every simplex of `y` has an opposite simplex in `y`. The empty complex is
/// X-cr vacuously.
pub fn x_cr(y: &SubComplex) -> CrVerdict {
    let members = y.members();
    let n = y.n();
    let index: HashMap<_, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut complement = vec![vec![false; members.len()]; members.len()];
    for i in 0..members.len() {
        for j in i..members.len() {
            let c = members[i].is_complement(&members[j]);
            complement[i][j] = c;
            complement[j][i] = c;
        }
    }
    let keys: Vec<Vec<usize>> = y.flags().iter().map(|f| f.members().iter().map(|m| index[m]).collect()).collect();
    let mut by_type: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, f) in y.flags().iter().enumerate() {
        by_type.entry(f.flag_type()).or_default().push(i);
    }
    let mut witnesses = Vec::with_capacity(y.len());
    for (i, f) in y.flags().iter().enumerate() {
        let k = f.len();
        let opposite_type: Vec<usize> = f.flag_type().iter().rev().map(|d| n - d).collect();
        let found = by_type.get(&opposite_type).and_then(|cands| {
            cands.iter().copied().find(|&j| (0..k).all(|p| complement[keys[i][p]][keys[j][k - 1 - p]]))
        });
        match found {
            Some(j) => witnesses.push((f.clone(), y.flags()[j].clone())),
            None => return CrVerdict { is_x_cr: false, witnesses: Vec::new(), failure: Some(f.clone()) },
        }
    }
    CrVerdict { is_x_cr: true, witnesses, failure: None }
}

/// Contractibility of a convex subcomplex.
///
/// The decision is "nonempty and not X-cr"; the empty complex is not
/// contractible. Reduced integral homology is computed as an independent
/// oracle and any disagreement is an error.
pub fn is_contractible(y: &SubComplex) -> Result<bool> {
    if y.is_empty() {
        return Ok(false);
    }
    let decision = !x_cr(y).is_x_cr;
    let acyclic = reduced_homology(y)?.is_acyclic();
    if decision != acyclic {
        return Err(Error::OracleDisagreement(format!(
            "X-cr test says contractible = {decision}, homology says acyclic = {acyclic} ({} simplices)",
            y.len()
        )));
    }
    Ok(decision)
}

/// The three independent complete-reducibility tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GcrVerdicts {
    /// `X^H` is empty or X-cr.
    pub building: bool,
    /// `X^H` is not contractible, judged by integral homology (empty counts as
    /// not contractible).
    pub not_contractible: bool,
    /// Every invariant subspace has an invariant complement.
    pub semisimple: bool,
    /// `X^H` is empty (H irreducible).
    pub irreducible: bool,
}

impl GcrVerdicts {
    pub fn agree(&self) -> bool {
        self.building == self.not_contractible && self.building == self.semisimple
    }
}

pub fn g_cr_verdicts(h: &GroupSpec) -> Result<GcrVerdicts> {
    let lat = invariant_lattice(h)?;
    let y = fixed_point_subcomplex(&lat);
    let homology = if y.is_empty() { None } else { Some(reduced_homology(&y)?) };
    Ok(g_cr_verdicts_from(&lat, &y, homology.as_ref()))
}

/// The three tests from precomputed data: `y` must be the fixed-point
/// complex of `lat`, and `homology` its reduced homology (absent iff `y` is
/// empty).
pub fn g_cr_verdicts_from(lat: &InvLattice, y: &SubComplex, homology: Option<&HomologyReport>) -> GcrVerdicts {
    let irreducible = y.is_empty();
    let building = irreducible || x_cr(y).is_x_cr;
    let not_contractible = homology.is_none_or(|r| !r.is_acyclic());
    GcrVerdicts { building, not_contractible, semisimple: is_semisimple(lat), irreducible }
}

/// Complete reducibility of `h`, required to agree across all three tests.
pub fn is_g_cr(h: &GroupSpec) -> Result<bool> {
    let v = g_cr_verdicts(h)?;
    if !v.agree() {
        return Err(Error::Verification(format!(
            "G-cr tests disagree for {}: building = {}, not contractible = {}, semisimple = {}",
            h.name, v.building, v.not_contractible, v.semisimple
        )));
    }
    Ok(v.building)
}
