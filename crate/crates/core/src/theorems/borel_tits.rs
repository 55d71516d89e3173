use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::building::{fixed_point_subcomplex, Ambient, Flag};
use crate::error::{Error, Result};
use crate::grouplat::{closure, invariant_lattice, GroupSpec, DEFAULT_CLOSURE_CAP};
use crate::par;

use super::centre::find_centre;
use super::cr::{is_contractible, is_g_cr};

/// Parabolic containing the normalizer of a unipotent subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorelTitsReport {
    pub u_order: usize,
    pub g_cr: bool,
    pub contractible: bool,
    /// `|N_G(U)|`, the conjugation stabilizer.
    pub normalizer_order: usize,
    /// `|N_G(X^U)|`, the setwise stabilizer of the fixed complex.
    pub complex_stabilizer_order: usize,
    pub normalizer_in_complex_stabilizer: bool,
    /// A flag fixed by every element of `N_G(U)`.
    pub fixed_flag: Flag,
    /// Order of the full stabilizer of `fixed_flag`.
    pub parabolic_order: usize,
}

pub fn borel_tits_demo(u: &GroupSpec, ambient: &Ambient) -> Result<BorelTitsReport> {
    let uc = closure(u, DEFAULT_CLOSURE_CAP);
    uc.require_complete()?;
    if uc.order() <= 1 {
        return Err(Error::TrivialGroup);
    }
    if !uc.elements().iter().all(|g| g.is_unipotent()) {
        return Err(Error::NotUnipotent);
    }
    let g_cr = is_g_cr(u)?;
    let y = fixed_point_subcomplex(&invariant_lattice(u)?);
    let contractible = is_contractible(&y)?;
    if g_cr || !contractible {
        return Err(Error::Verification(format!(
            "unipotent subgroup with g_cr = {g_cr}, contractible = {contractible}"
        )));
    }

    let set = uc.element_set();
    let conj: Vec<usize> = par::filter_indices(ambient.exec(), ambient.order(), |i| {
        let g = ambient.element(i);
        let Ok(ginv) = g.mat_inv() else { return false };
        uc.elements().iter().all(|x| set.contains(&g.mul_unchecked(x).mul_unchecked(&ginv)))
    });
    let mut normalizer = FixedBitSet::with_capacity(ambient.order());
    normalizer.extend(conj);
    let stab = ambient.stabilizer_setwise_bits(&y);
    let normalizer_in_complex_stabilizer = normalizer.is_subset(&stab);

    let centre = find_centre(u, ambient)?.centre;
    let fixes_centre = normalizer
        .ones()
        .all(|i| centre.members().iter().all(|s| s.image_unchecked(ambient.element(i)) == *s));
    if !normalizer_in_complex_stabilizer || !fixes_centre {
        return Err(Error::Verification("normalizer does not fix the centre".into()));
    }
    let mut centre_set = FixedBitSet::with_capacity(ambient.universe().len());
    for m in centre.members() {
        centre_set.insert(ambient.universe().get_index(m).expect("member of the universe"));
    }
    let parabolic_order = ambient.pointwise_stabilizer_bits(&centre_set).count_ones(..);
    Ok(BorelTitsReport {
        u_order: uc.order(),
        g_cr,
        contractible,
        normalizer_order: normalizer.count_ones(..),
        complex_stabilizer_order: stab.count_ones(..),
        normalizer_in_complex_stabilizer,
        fixed_flag: centre,
        parabolic_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field_make, Mat, Subspace};
    use crate::grouplat::DEFAULT_AMBIENT_CAP;

    fn gl(q: u32, n: usize) -> std::sync::Arc<Ambient> {
        Ambient::general_linear(field_make(q).unwrap(), n, DEFAULT_AMBIENT_CAP).unwrap()
    }

    #[test]
    fn jordan_two() {
        let a = gl(2, 2);
        let f = a.field();
        let u = GroupSpec::new("j2", f, 2, vec![Mat::jordan_unipotent(f, 2)]).unwrap();
        let r = borel_tits_demo(&u, &a).unwrap();
        assert_eq!(r.normalizer_order, 2);
        assert_eq!(r.fixed_flag, Flag::vertex(Subspace::coordinate(f, 2, &[0]).unwrap()).unwrap());
        assert!(r.parabolic_order < a.order());
    }

    #[test]
    fn unitriangular_three() {
        let a = gl(2, 3);
        let f = a.field();
        let u = GroupSpec::new(
            "u3",
            f,
            3,
            vec![Mat::elementary(f, 3, 0, 1, 1), Mat::elementary(f, 3, 1, 2, 1)],
        )
        .unwrap();
        let r = borel_tits_demo(&u, &a).unwrap();
        assert_eq!(r.u_order, 8);
        assert_eq!(r.normalizer_order, 8);
        let chamber =
            Flag::new(vec![Subspace::coordinate(f, 3, &[0]).unwrap(), Subspace::coordinate(f, 3, &[0, 1]).unwrap()])
                .unwrap();
        assert_eq!(r.fixed_flag, chamber);
        assert_eq!(r.parabolic_order, 8);
    }

    #[test]
    fn preconditions() {
        let a = gl(3, 2);
        let f = a.field();
        let d = GroupSpec::new("d", f, 2, vec![Mat::diagonal(f, &[2, 1])]).unwrap();
        assert_eq!(borel_tits_demo(&d, &a).unwrap_err(), Error::NotUnipotent);
        let id = GroupSpec::new("id", f, 2, vec![Mat::identity(f, 2)]).unwrap();
        assert_eq!(borel_tits_demo(&id, &a).unwrap_err(), Error::TrivialGroup);
    }
}
