use flagfix::algebra::{field_make, Field, Mat};
use flagfix::building::{fixed_point_subcomplex, Ambient, Flag, SubComplex};
use flagfix::grouplat::{closure, invariant_lattice, GroupSpec, DEFAULT_AMBIENT_CAP};
use flagfix::theorems::{check_convex, find_centre, is_contractible, is_g_cr, x_cr};
use flagfix::topology::reduced_homology;
use proptest::prelude::*;

fn ambient(q: u32, n: usize) -> std::sync::Arc<Ambient> {
    Ambient::general_linear(field_make(q).unwrap(), n, DEFAULT_AMBIENT_CAP).unwrap()
}

fn fixed(field: Field, n: usize, gens: Vec<Mat>) -> SubComplex {
    fixed_point_subcomplex(&invariant_lattice(&GroupSpec::new("h", field, n, gens).unwrap()).unwrap())
}

fn translate(y: &SubComplex, g: &Mat) -> SubComplex {
    let flags: Vec<Flag> = y
        .flags()
        .iter()
        .map(|f| {
            let mut ms: Vec<_> = f.members().iter().map(|m| m.image(g).unwrap()).collect();
            ms.sort();
            Flag::new(ms).unwrap()
        })
        .collect();
    SubComplex::generated_by(y.field(), y.n(), &flags).unwrap()
}

fn shapes() -> impl Strategy<Value = (u32, usize)> {
    prop_oneof![Just((2u32, 2usize)), Just((3, 2)), Just((2, 3)), Just((4, 2))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fixed_complex_is_equivariant((q, n) in shapes(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let amb = ambient(q, n);
        let f = amb.field();
        let h = amb.element(a % amb.order()).clone();
        let g = amb.element(b % amb.order()).clone();
        let k = amb.element(c % amb.order()).clone();
        let ginv = g.mat_inv().unwrap();
        let y = fixed(f, n, vec![h.clone(), k.clone()]);
        let conj = |x: &Mat| g.mat_mul(x).unwrap().mat_mul(&ginv).unwrap();
        let y_conj = fixed(f, n, vec![conj(&h), conj(&k)]);
        prop_assert_eq!(translate(&y, &g), y_conj);
    }

    #[test]
    fn fixed_complex_is_antitone((q, n) in shapes(), a in any::<usize>(), b in any::<usize>()) {
        let amb = ambient(q, n);
        let f = amb.field();
        let h = amb.element(a % amb.order()).clone();
        let k = amb.element(b % amb.order()).clone();
        let small = fixed(f, n, vec![h.clone()]);
        let big = fixed(f, n, vec![h, k]);
        prop_assert!(big.is_subcomplex_of(&small));
    }

    #[test]
    fn fixed_complexes_are_convex_and_obey_the_dichotomy((q, n) in shapes(), a in any::<usize>(), b in any::<usize>()) {
        let amb = ambient(q, n);
        let f = amb.field();
        let gens = vec![amb.element(a % amb.order()).clone(), amb.element(b % amb.order()).clone()];
        let y = fixed(f, n, gens.clone());
        prop_assert!(check_convex(&y, &amb).convex);
        if !y.is_empty() {
            let acyclic = reduced_homology(&y).unwrap().is_acyclic();
            prop_assert_ne!(x_cr(&y).is_x_cr, acyclic);
            prop_assert_eq!(is_contractible(&y).unwrap(), acyclic);
        }
        let h = GroupSpec::new("h", f, n, gens).unwrap();
        let g_cr = is_g_cr(&h).unwrap();
        prop_assert_eq!(g_cr, y.is_empty() || x_cr(&y).is_x_cr);
        if !g_cr {
            let r = find_centre(&h, &amb).unwrap();
            let hc = closure(&h, 10_000);
            prop_assert!(hc.is_subset_of(&r.m));
            prop_assert!(r.m.is_subset_of(&r.k));
            prop_assert!(r.xk.is_subcomplex_of(&r.y));
            prop_assert!(r.xk.contains(&r.centre));
        }
    }
}

#[test]
fn steinberg_ranks_match_closed_form() {
    for (q, n) in [(2u32, 2usize), (3, 2), (7, 2), (8, 2), (9, 2), (2, 3)] {
        let y = flagfix::building::full_building(field_make(q).unwrap(), n).unwrap();
        let h = reduced_homology(&y).unwrap();
        assert_eq!(h.reduced_betti[n - 2], (q as usize).pow((n * (n - 1) / 2) as u32), "q={q} n={n}");
    }
}
