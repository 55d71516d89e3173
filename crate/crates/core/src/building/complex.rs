use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::algebra::{Field, Subspace, Universe};
use crate::error::{Error, Result};
use crate::grouplat::InvLattice;

use super::flag::Flag;

/// Face-closed set of flags in the building of `GL_n(F_q)`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubComplex {
    field: Field,
    n: usize,
    flags: Vec<Flag>,
}

impl SubComplex {
    pub fn empty(field: Field, n: usize) -> Self {
        SubComplex { field, n, flags: Vec::new() }
    }

    /// Validates face-closure of the given flags.
    pub fn new(field: Field, n: usize, flags: Vec<Flag>) -> Result<Self> {
        let set: BTreeSet<Flag> = flags.into_iter().collect();
        for f in &set {
            if f.members()[0].field() != field || f.n() != n {
                return Err(Error::InvalidFlag(format!("{f} lives in a different space")));
            }
            if let Some(missing) = f.faces().into_iter().find(|x| !set.contains(x)) {
                return Err(Error::InvalidFlag(format!("not face-closed: {missing} missing")));
            }
        }
        Ok(SubComplex { field, n, flags: set.into_iter().collect() })
    }

    /// Smallest subcomplex containing the given flags.
    pub fn generated_by(field: Field, n: usize, flags: &[Flag]) -> Result<Self> {
        let all: BTreeSet<Flag> = flags.iter().flat_map(Flag::faces).collect();
        SubComplex::new(field, n, all.into_iter().collect())
    }

    pub(crate) fn from_sorted(field: Field, n: usize, flags: Vec<Flag>) -> Self {
        SubComplex { field, n, flags }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }
    pub fn len(&self) -> usize {
        self.flags.len()
    }
    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }
    pub fn contains(&self, f: &Flag) -> bool {
        self.flags.binary_search(f).is_ok()
    }

    /// Distinct member subspaces (the vertices), in canonical order.
    pub fn members(&self) -> Vec<Subspace> {
        let set: BTreeSet<&Subspace> = self.flags.iter().flat_map(|f| f.members()).collect();
        set.into_iter().cloned().collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Flag> {
        self.flags.iter().filter(|f| f.len() == 1)
    }

    /// Simplex counts indexed by simplicial dimension.
    pub fn simplex_counts(&self) -> Vec<usize> {
        let top = self.flags.iter().map(Flag::len).max().unwrap_or(0);
        let mut counts = vec![0; top];
        for f in &self.flags {
            counts[f.len() - 1] += 1;
        }
        counts
    }

    /// Simplex counts keyed by type vector.
    pub fn counts_by_type(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut out = BTreeMap::new();
        for f in &self.flags {
            *out.entry(f.flag_type()).or_insert(0) += 1;
        }
        out
    }

    /// Flags not properly contained in another flag of the complex.
    pub fn maximal_flags(&self) -> Vec<&Flag> {
        self.flags
            .iter()
            .filter(|f| !self.flags.iter().any(|g| g.len() > f.len() && g.has_face(f)))
            .collect()
    }

    /// True when every chain of member subspaces is a flag of the complex.
    pub fn is_full_on_members(&self) -> bool {
        chains_of(&self.members()).len() == self.flags.len()
    }

    pub fn is_subcomplex_of(&self, other: &SubComplex) -> bool {
        self.flags.iter().all(|f| other.contains(f))
    }
}

/// All nonempty chains among `nodes` (proper subspaces), sorted.
pub fn chains_of(nodes: &[Subspace]) -> Vec<Flag> {
    let mut nodes: Vec<&Subspace> = nodes.iter().filter(|s| !s.is_zero() && !s.is_full()).collect();
    nodes.sort();
    nodes.dedup();
    // above[i]: indices j > i with nodes[j] strictly containing nodes[i]
    let above: Vec<Vec<usize>> = (0..nodes.len())
        .map(|i| {
            (i + 1..nodes.len())
                .filter(|&j| nodes[j].dim() > nodes[i].dim() && nodes[j].contains(nodes[i]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..nodes.len()).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        for &j in &above[last] {
            let mut next = chain.clone();
            next.push(j);
            stack.push(next);
        }
        out.push(Flag::new_unchecked(chain.iter().map(|&i| nodes[i].clone()).collect()));
    }
    out.sort();
    out
}

/// The whole building: every flag of proper nonzero subspaces.
pub fn full_building(field: Field, n: usize) -> Result<SubComplex> {
    let universe = Universe::get(field, n)?;
    Ok(SubComplex::from_sorted(field, n, chains_of(universe.subspaces())))
}

/// `X^H`: flags all of whose members are nodes of the invariant lattice.
pub fn fixed_point_subcomplex(lat: &InvLattice) -> SubComplex {
    SubComplex::from_sorted(lat.field(), lat.n(), chains_of(lat.nodes()))
}

/// Number of panels per chamber count: `degree -> number of panels`.
///
/// Chambers are flags of length `n - 1`; panels are their faces of length
/// `n - 2`. For `n <= 2` there are no nonempty panels and the map is empty.
pub fn panel_degrees(y: &SubComplex) -> BTreeMap<usize, usize> {
    let mut per_panel: HashMap<Flag, usize> = HashMap::new();
    if y.n() < 3 {
        return BTreeMap::new();
    }
    for chamber in y.flags().iter().filter(|f| f.len() == y.n() - 1) {
        for skip in 0..chamber.len() {
            let panel: Vec<Subspace> =
                chamber.members().iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, m)| m.clone()).collect();
            *per_panel.entry(Flag::new_unchecked(panel)).or_insert(0) += 1;
        }
    }
    let mut out = BTreeMap::new();
    for d in per_panel.into_values() {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

/// Every panel lies in at least three chambers.
pub fn is_thick(y: &SubComplex) -> bool {
    let d = panel_degrees(y);
    !d.is_empty() && d.keys().all(|&k| k >= 3)
}

/// Every panel lies in exactly two chambers.
pub fn is_thin(y: &SubComplex) -> bool {
    let d = panel_degrees(y);
    !d.is_empty() && d.keys().all(|&k| k == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field_make, Mat};
    use crate::grouplat::{invariant_lattice, GroupSpec};

    fn lattice(q: u32, n: usize, g: Vec<u8>) -> InvLattice {
        let f = field_make(q).unwrap();
        invariant_lattice(&GroupSpec::new("t", f, n, vec![Mat::new(f, n, g).unwrap()]).unwrap()).unwrap()
    }

    #[test]
    fn full_building_counts() {
        let x = full_building(field_make(2).unwrap(), 2).unwrap();
        assert_eq!(x.simplex_counts(), vec![3]);
        let x = full_building(field_make(2).unwrap(), 3).unwrap();
        assert_eq!(x.simplex_counts(), vec![14, 21]);
        let x = full_building(field_make(3).unwrap(), 2).unwrap();
        assert_eq!(x.simplex_counts(), vec![4]);
        // chambers of F_2^4: 15 * 7 * 3
        let x = full_building(field_make(2).unwrap(), 4).unwrap();
        assert_eq!(x.simplex_counts(), vec![65, 315, 315]);
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_point_subcomplex(&lattice(2, 3, vec![1, 0, 0, 0, 1, 0, 0, 0, 1])).len(), 35);
        let j2 = fixed_point_subcomplex(&lattice(2, 2, vec![1, 1, 0, 1]));
        assert_eq!(j2.len(), 1);
        assert_eq!(format!("{}", j2.flags()[0]), "⟨e1⟩");
        assert!(fixed_point_subcomplex(&lattice(3, 2, vec![0, 2, 1, 0])).is_empty());
    }

    #[test]
    fn fixed_point_matches_double_loop() {
        // independent route: filter the full building by member invariance
        let f = field_make(3).unwrap();
        let g = Mat::new(f, 3, vec![1, 1, 0, 0, 1, 0, 0, 0, 2]).unwrap();
        let lat = invariant_lattice(&GroupSpec::new("t", f, 3, vec![g.clone()]).unwrap()).unwrap();
        let xh = fixed_point_subcomplex(&lat);
        let brute: Vec<Flag> = full_building(f, 3)
            .unwrap()
            .flags()
            .iter()
            .filter(|fl| fl.members().iter().all(|m| m.image(&g).unwrap() == *m))
            .cloned()
            .collect();
        assert_eq!(xh.flags(), brute.as_slice());
        assert!(SubComplex::new(f, 3, xh.flags().to_vec()).is_ok());
    }

    #[test]
    fn face_closure_enforced() {
        let f = field_make(2).unwrap();
        let x = full_building(f, 3).unwrap();
        let edge = x.flags().iter().find(|fl| fl.len() == 2).unwrap().clone();
        assert!(SubComplex::new(f, 3, vec![edge.clone()]).is_err());
        assert_eq!(SubComplex::generated_by(f, 3, &[edge]).unwrap().len(), 3);
    }

    #[test]
    fn panel_regularity() {
        let x = full_building(field_make(2).unwrap(), 3).unwrap();
        assert_eq!(panel_degrees(&x), BTreeMap::from([(3, 14)]));
        assert!(is_thick(&x));
        let x = full_building(field_make(3).unwrap(), 3).unwrap();
        assert_eq!(panel_degrees(&x).keys().copied().collect::<Vec<_>>(), vec![4]);
        let j2 = fixed_point_subcomplex(&lattice(2, 2, vec![1, 1, 0, 1]));
        assert!(panel_degrees(&j2).is_empty());
        assert!(!is_thick(&j2) && !is_thin(&j2));
    }
}
