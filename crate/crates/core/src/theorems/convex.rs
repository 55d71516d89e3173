use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::building::{chains_of, Ambient, Flag, SubComplex};
use crate::par;

/// Outcome of the pairwise convexity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexVerdict {
    pub convex: bool,
    /// `(F, F', Q)`: `Q` is fixed by the pointwise stabilizer of `{F, F'}` but not in `Y`.
    pub counterexample: Option<(Flag, Flag, Flag)>,
}

/// Pair condition: for all `F, F'` in `Y`, every flag fixed by the pointwise
/// stabilizer of `{F, F'}` lies in `Y`.
///
/// Pairs with the same union of member subspaces have the same stabilizer, so
/// each distinct union is tested once. The reported counterexample belongs to
/// the first failing pair in canonical flag order.
pub fn check_convex(y: &SubComplex, ambient: &Ambient) -> ConvexVerdict {
    let ok = ConvexVerdict { convex: true, counterexample: None };
    if y.is_empty() {
        return ok;
    }
    let universe = ambient.universe();
    let members = ambient.member_set(y);
    let full_on_members = y.is_full_on_members();
    if full_on_members && members.count_ones(..) + 2 == universe.len() {
        // Y is the whole building
        return ok;
    }
    let flag_bits: Vec<FixedBitSet> = y
        .flags()
        .iter()
        .map(|f| {
            let mut b = FixedBitSet::with_capacity(universe.len());
            for m in f.members() {
                b.insert(universe.get_index(m).unwrap());
            }
            b
        })
        .collect();
    let mut first_pair: HashMap<FixedBitSet, (usize, usize)> = HashMap::new();
    let mut order: Vec<FixedBitSet> = Vec::new();
    for i in 0..flag_bits.len() {
        for j in i..flag_bits.len() {
            let mut t = flag_bits[i].clone();
            t.union_with(&flag_bits[j]);
            if let std::collections::hash_map::Entry::Vacant(e) = first_pair.entry(t.clone()) {
                e.insert((i, j));
                order.push(t);
            }
        }
    }
    let outside = |t: &FixedBitSet| -> Option<Flag> {
        let stab = ambient.pointwise_stabilizer_bits(t);
        let fixed = ambient.fixed_set(&stab);
        let proper: Vec<usize> =
            fixed.ones().filter(|&s| s != universe.zero_index() && s != universe.full_index()).collect();
        if let Some(&s) = proper.iter().find(|&&s| !members.contains(s)) {
            return Some(Flag::vertex(universe.subspace(s).clone()).expect("proper subspace"));
        }
        if full_on_members {
            return None;
        }
        let nodes: Vec<_> = proper.iter().map(|&s| universe.subspace(s).clone()).collect();
        chains_of(&nodes).into_iter().find(|f| !y.contains(f))
    };
    let verdicts = par::map(ambient.exec(), &order, outside);
    match order.iter().zip(verdicts).find_map(|(t, v)| v.map(|q| (t, q))) {
        None => ok,
        Some((t, q)) => {
            let (i, j) = first_pair[t];
            ConvexVerdict {
                convex: false,
                counterexample: Some((y.flags()[i].clone(), y.flags()[j].clone(), q)),
            }
        }
    }
}

/// Direct definition without the union dedup or bitsets; used as a
/// cross-check on small complexes.
pub fn check_convex_naive(y: &SubComplex, ambient: &Ambient) -> bool {
    let flags = y.flags();
    let all_flags = chains_of(ambient.universe().subspaces());
    for a in flags {
        for b in flags {
            let members: HashSet<_> = a.members().iter().chain(b.members()).collect();
            let stab: Vec<_> = ambient
                .group()
                .elements()
                .iter()
                .filter(|g| members.iter().all(|m| m.image(g).unwrap() == **m))
                .collect();
            for q in &all_flags {
                let fixed = q.members().iter().all(|m| stab.iter().all(|g| m.image(g).unwrap() == *m));
                if fixed && !y.contains(q) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field_make, span, Mat, Subspace};
    use crate::building::{fixed_point_subcomplex, full_building};
    use crate::grouplat::{invariant_lattice, GroupSpec, DEFAULT_AMBIENT_CAP};
    use proptest::prelude::*;

    fn gl(q: u32, n: usize) -> std::sync::Arc<Ambient> {
        Ambient::general_linear(field_make(q).unwrap(), n, DEFAULT_AMBIENT_CAP).unwrap()
    }

    #[test]
    fn opposite_vertices_not_convex() {
        let a = gl(2, 2);
        let f = a.field();
        let e1 = Flag::vertex(Subspace::coordinate(f, 2, &[0]).unwrap()).unwrap();
        let e2 = Flag::vertex(Subspace::coordinate(f, 2, &[1]).unwrap()).unwrap();
        let y = SubComplex::generated_by(f, 2, &[e1.clone(), e2.clone()]).unwrap();
        let v = check_convex(&y, &a);
        assert!(!v.convex);
        let q = Flag::vertex(span(f, 2, &[vec![1, 1]]).unwrap()).unwrap();
        let (a1, b1, q1) = v.counterexample.unwrap();
        assert_eq!(q1, q);
        assert!((a1 == e1 && b1 == e2) || (a1 == e2 && b1 == e1));
        assert!(!check_convex_naive(&y, &a));
    }

    #[test]
    fn full_building_and_empty() {
        let a = gl(2, 3);
        assert!(check_convex(&full_building(a.field(), 3).unwrap(), &a).convex);
        assert!(check_convex(&SubComplex::empty(a.field(), 3), &a).convex);
    }

    #[test]
    fn fixed_point_complexes_are_convex() {
        let a = gl(2, 3);
        let f = a.field();
        for gens in [
            vec![Mat::jordan_unipotent(f, 3)],
            vec![Mat::identity(f, 3)],
            vec![Mat::permutation(f, &[1, 0, 2])],
            vec![Mat::elementary(f, 3, 0, 2, 1)],
        ] {
            let h = GroupSpec::new("h", f, 3, gens).unwrap();
            let y = fixed_point_subcomplex(&invariant_lattice(&h).unwrap());
            assert!(check_convex(&y, &a).convex);
            assert!(check_convex_naive(&y, &a));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn agrees_with_naive(mask in 1u32..(1 << 14)) {
            let a = gl(2, 3);
            let u = a.universe();
            let gens: Vec<Flag> = (1..u.len() - 1)
                .filter(|s| mask >> (s - 1) & 1 == 1)
                .map(|s| Flag::vertex(u.subspace(s).clone()).unwrap())
                .collect();
            let y = SubComplex::generated_by(a.field(), 3, &gens).unwrap();
            prop_assert_eq!(check_convex(&y, &a).convex, check_convex_naive(&y, &a));
        }
    }
}
