use crate::algebra::{Field, Mat, Subspace, Universe};
use crate::error::{Error, Result};

use super::group::{GroupClosure, GroupSpec};

/// Lattice of subspaces invariant under a group, including 0 and V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvLattice {
    field: Field,
    n: usize,
    nodes: Vec<Subspace>,
    group: String,
}

impl InvLattice {
    /// Wraps a sorted node list; callers guarantee it is an invariant lattice.
    pub(crate) fn from_sorted_nodes(field: Field, n: usize, nodes: Vec<Subspace>, group: String) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        InvLattice { field, n, nodes, group }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn nodes(&self) -> &[Subspace] {
        &self.nodes
    }
    pub fn len(&self) -> usize {
        self.nodes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
    pub fn group_name(&self) -> &str {
        &self.group
    }
    pub fn contains(&self, w: &Subspace) -> bool {
        self.nodes.binary_search(w).is_ok()
    }
    /// Nodes other than 0 and V.
    pub fn proper_nodes(&self) -> impl Iterator<Item = &Subspace> {
        self.nodes.iter().filter(|s| !s.is_zero() && !s.is_full())
    }
    /// True when the only invariant subspaces are 0 and V.
    pub fn is_trivial(&self) -> bool {
        self.nodes.len() == 2
    }
}

fn invariant_under_all(s: &Subspace, gens: &[Mat]) -> bool {
    gens.iter().all(|g| s.is_invariant_under(g))
}

/// Subspaces fixed setwise by every generator.
pub fn invariant_lattice(spec: &GroupSpec) -> Result<InvLattice> {
    let universe = Universe::get(spec.field(), spec.n())?;
    let nodes = universe
        .subspaces()
        .iter()
        .filter(|s| invariant_under_all(s, spec.generators()))
        .cloned()
        .collect();
    Ok(InvLattice::from_sorted_nodes(spec.field(), spec.n(), nodes, spec.name.clone()))
}

/// Invariant lattice of an explicit element list.
pub fn invariant_lattice_of(group: &GroupClosure, name: &str) -> Result<InvLattice> {
    let universe = Universe::get(group.field(), group.n())?;
    let gens = group.generators();
    let nodes = universe.subspaces().iter().filter(|s| invariant_under_all(s, &gens)).cloned().collect();
    Ok(InvLattice::from_sorted_nodes(group.field(), group.n(), nodes, name.to_string()))
}

/// First node (canonical order) complementing `w`, if any.
pub fn has_invariant_complement(w: &Subspace, lat: &InvLattice) -> Result<Option<Subspace>> {
    if !lat.contains(w) {
        return Err(Error::NotInLattice);
    }
    Ok(lat.nodes.iter().find(|c| w.is_complement(c)).cloned())
}

/// True when every node has an invariant complement (V semisimple).
pub fn is_semisimple(lat: &InvLattice) -> bool {
    lat.nodes.iter().all(|w| lat.nodes.iter().any(|c| w.is_complement(c)))
}

fn strictly_contains(big: &Subspace, small: &Subspace) -> bool {
    big.dim() > small.dim() && big.contains(small)
}

/// Socle (upper Loewy) series `0 = S_0 ⊂ S_1 ⊂ ... ⊂ S_r = V`.
///
/// `S_{i+1}` is the join of the nodes minimal among those strictly above
/// `S_i`, i.e. the preimage of the socle of `V / S_i`.
pub fn socle_series(lat: &InvLattice) -> Vec<Subspace> {
    let mut series = vec![lat.nodes[0].clone()];
    loop {
        let s = series.last().unwrap();
        if s.is_full() {
            break;
        }
        let above: Vec<&Subspace> = lat.nodes.iter().filter(|x| strictly_contains(x, s)).collect();
        let next = above
            .iter()
            .filter(|x| !above.iter().any(|y| strictly_contains(x, y)))
            .fold(s.clone(), |acc, x| acc.sum_unchecked(x));
        series.push(next);
    }
    series
}

/// Radical (lower Loewy) series `V = R_0 ⊃ R_1 ⊃ ... ⊃ R_s = 0`.
///
/// `R_{i+1}` is the meet of the nodes maximal among those strictly below `R_i`.
pub fn radical_series(lat: &InvLattice) -> Vec<Subspace> {
    let mut series = vec![lat.nodes.last().unwrap().clone()];
    loop {
        let r = series.last().unwrap();
        if r.is_zero() {
            break;
        }
        let below: Vec<&Subspace> = lat.nodes.iter().filter(|x| strictly_contains(r, x)).collect();
        let next = below
            .iter()
            .filter(|x| !below.iter().any(|y| strictly_contains(y, x)))
            .fold(r.clone(), |acc, x| acc.intersect(x).expect("same ambient"));
        series.push(next);
    }
    series
}
