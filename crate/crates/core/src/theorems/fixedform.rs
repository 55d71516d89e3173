use fixedbitset::FixedBitSet;

use crate::building::{chains_of, Ambient, Flag, SubComplex};
use crate::grouplat::GroupClosure;
use crate::par;

/// Whether `Y` equals `X^H` for `H` its own pointwise stabilizer.
#[derive(Debug, Clone)]
pub struct FixedPointVerdict {
    pub is_fixed_point_form: bool,
    /// Pointwise stabilizer of `Y`.
    pub h: GroupClosure,
    /// First flag of `X^H` missing from `Y`.
    pub counterexample: Option<Flag>,
}

/// The fixed-point complex of an element bitset, as flags in canonical order.
pub(crate) fn fixed_complex(ambient: &Ambient, elements: &FixedBitSet) -> SubComplex {
    let u = ambient.universe();
    let nodes: Vec<_> = ambient.fixed_set(elements).ones().map(|s| u.subspace(s).clone()).collect();
    SubComplex::new(ambient.field(), ambient.n(), chains_of(&nodes)).expect("chains are face-closed")
}

/// Decide whether `y` is of the form `X^H`.
///
/// `X^{H}` always contains `Y` for `H` the pointwise stabilizer, so the test
/// reduces to looking for a flag of `X^H` outside `Y`.
pub fn check_fixed_point_form(y: &SubComplex, ambient: &Ambient) -> FixedPointVerdict {
    let bits = ambient.stabilizer_pointwise_bits(y);
    let xh = fixed_complex(ambient, &bits);
    let counterexample = xh.flags().iter().find(|f| !y.contains(f)).cloned();
    FixedPointVerdict { is_fixed_point_form: counterexample.is_none(), h: ambient.subgroup(&bits), counterexample }
}

/// Closure condition on `arity`-tuples of simplices: for any `F_1..F_k` in
/// `Y`, every flag fixed by the intersection of their stabilizers lies in
/// `Y`. Arity 2 is the convexity condition; arity `>= |Y|` is equivalent to
/// the fixed-point form.
///
/// Tuples are taken as subsets of size at most `arity`, which is the same
/// condition since repeated entries do not change the intersection.
pub fn closure_condition(y: &SubComplex, ambient: &Ambient, arity: usize) -> bool {
    let u = ambient.universe();
    let flags = y.flags();
    let stabs: Vec<FixedBitSet> = flags
        .iter()
        .map(|f| {
            let mut set = FixedBitSet::with_capacity(u.len());
            for m in f.members() {
                set.insert(u.get_index(m).expect("member of the universe"));
            }
            ambient.pointwise_stabilizer_bits(&set)
        })
        .collect();
    let k = arity.min(flags.len());
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    subsets(flags.len(), k, 0, &mut cur, &mut tuples);
    let members = ambient.member_set(y);
    let ok = par::map(ambient.exec(), &tuples, |t| {
        let mut s = FixedBitSet::with_capacity(ambient.order());
        s.insert_range(..);
        for &i in t {
            s.intersect_with(&stabs[i]);
        }
        let fixed = ambient.fixed_set(&s);
        let proper: Vec<_> = fixed
            .ones()
            .filter(|&i| i != u.zero_index() && i != u.full_index())
            .collect();
        if proper.iter().any(|&i| !members.contains(i)) {
            return false;
        }
        let nodes: Vec<_> = proper.iter().map(|&i| u.subspace(i).clone()).collect();
        chains_of(&nodes).iter().all(|f| y.contains(f))
    });
    ok.into_iter().all(|b| b)
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    if cur.len() == k {
        return;
    }
    for i in start..n {
        cur.push(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop();
    }
}
