use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::building::SubComplex;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

use super::chain::order_chain_complex;
use super::snf::smith_normal_form;

/// Reduced integral homology of a nonempty complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    /// Reduced Betti numbers, degree 0 to the top simplicial degree.
    pub reduced_betti: Vec<usize>,
    /// Torsion coefficients (invariant factors > 1) per degree.
    #[serde(serialize_with = "ser_torsion", deserialize_with = "de_torsion")]
    pub torsion: Vec<Vec<BigInt>>,
    pub euler_characteristic: i64,
}

fn ser_torsion<S: Serializer>(t: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = t.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
    strings.serialize(s)
}

fn de_torsion<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<BigInt>>, D::Error> {
    let strings: Vec<Vec<String>> = Vec::deserialize(d)?;
    strings
        .into_iter()
        .map(|v| v.into_iter().map(|x| x.parse::<BigInt>().map_err(serde::de::Error::custom)).collect())
        .collect()
}

impl HomologyReport {
    /// All reduced Betti numbers zero and no torsion.
    pub fn is_acyclic(&self) -> bool {
        self.reduced_betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }
}

/// Reduced homology via Smith normal forms of the augmented boundary maps.
pub fn reduced_homology(y: &SubComplex) -> Result<HomologyReport> {
    reduced_homology_with(y, Exec::default())
}

pub fn reduced_homology_with(y: &SubComplex, exec: Exec) -> Result<HomologyReport> {
    let cc = order_chain_complex(y)?;
    let top = cc.top();
    let forms = par::map(exec, &cc.boundaries, smith_normal_form);
    let rank = |d: usize| forms.get(d).map_or(0, |f| f.rank);
    let reduced_betti: Vec<usize> = (0..=top).map(|d| cc.dims[d] - rank(d) - rank(d + 1)).collect();
    let torsion: Vec<Vec<BigInt>> = (0..=top).map(|d| forms.get(d + 1).map_or(Vec::new(), |f| f.torsion())).collect();
    let chi = cc.euler_characteristic();
    let from_betti: i64 =
        reduced_betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    if chi - 1 != from_betti {
        return Err(Error::Verification(format!(
            "Euler characteristic mismatch: simplex counts give {chi}, Betti numbers give {}",
            from_betti + 1
        )));
    }
    Ok(HomologyReport { reduced_betti, torsion, euler_characteristic: chi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field_make, Mat, Subspace};
    use crate::building::{apartment_from_frame, fixed_point_subcomplex, full_building, Flag, Frame};
    use crate::grouplat::{invariant_lattice, GroupSpec};
    use crate::topology::chain::order_chain_complex;

    #[test]
    fn small_examples() {
        let f = field_make(2).unwrap();
        let v = |i| Flag::vertex(Subspace::coordinate(f, 2, &[i]).unwrap()).unwrap();
        let point = SubComplex::new(f, 2, vec![v(0)]).unwrap();
        assert_eq!(reduced_homology(&point).unwrap().reduced_betti, vec![0]);
        let s0 = SubComplex::new(f, 2, vec![v(0), v(1)]).unwrap();
        assert_eq!(reduced_homology(&s0).unwrap().reduced_betti, vec![1]);
        let hex = apartment_from_frame(&Frame::standard(f, 3).unwrap());
        assert_eq!(reduced_homology(&hex).unwrap().reduced_betti, vec![0, 1]);
        assert_eq!(order_chain_complex(&SubComplex::empty(f, 2)).unwrap_err(), Error::EmptyComplex);
    }

    #[test]
    fn full_buildings() {
        let x = full_building(field_make(3).unwrap(), 2).unwrap();
        assert_eq!(reduced_homology(&x).unwrap().reduced_betti, vec![3]);
        let x = full_building(field_make(2).unwrap(), 3).unwrap();
        let h = reduced_homology(&x).unwrap();
        assert_eq!(h.reduced_betti, vec![0, 8]);
        assert_eq!(h.euler_characteristic, -7);
        assert!(h.torsion.iter().all(Vec::is_empty));
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        for (q, n) in [(2u32, 3usize), (3, 3), (2, 4)] {
            let x = full_building(field_make(q).unwrap(), n).unwrap();
            assert!(order_chain_complex(&x).unwrap().boundary_squares_vanish());
        }
    }

    #[test]
    fn jordan_fixed_point_is_acyclic() {
        let f = field_make(2).unwrap();
        let h = GroupSpec::new("j2", f, 2, vec![Mat::jordan_unipotent(f, 2)]).unwrap();
        let y = fixed_point_subcomplex(&invariant_lattice(&h).unwrap());
        assert!(reduced_homology(&y).unwrap().is_acyclic());
    }

    #[test]
    fn homology_is_relabeling_invariant() {
        let f = field_make(3).unwrap();
        let h = GroupSpec::new("u", f, 3, vec![Mat::elementary(f, 3, 0, 2, 1)]).unwrap();
        let y = fixed_point_subcomplex(&invariant_lattice(&h).unwrap());
        let g = Mat::new(f, 3, vec![1, 2, 0, 0, 1, 1, 2, 0, 1]).unwrap();
        assert!(g.is_invertible());
        let moved: Vec<Flag> = y
            .flags()
            .iter()
            .map(|fl| Flag::new(fl.members().iter().map(|m| m.image(&g).unwrap()).collect()).unwrap())
            .collect();
        let gy = SubComplex::new(f, 3, moved).unwrap();
        assert_eq!(reduced_homology(&y).unwrap(), reduced_homology(&gy).unwrap());
    }

    #[test]
    fn strategies_agree() {
        let x = full_building(field_make(2).unwrap(), 4).unwrap();
        assert_eq!(
            reduced_homology_with(&x, Exec::Sequential).unwrap(),
            reduced_homology_with(&x, Exec::Parallel).unwrap()
        );
    }
}
