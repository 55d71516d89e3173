use std::collections::HashMap;

use crate::building::{Flag, SubComplex};
use crate::error::{Error, Result};

use super::snf::IntMatrix;

/// Augmented simplicial chain complex of a flag complex over the integers.
///
/// `boundaries[0]` is the augmentation `C_0 -> Z`; `boundaries[d]` for
/// `d >= 1` is `∂_d : C_d -> C_{d-1}` with rows indexed by `(d-1)`-simplices.
#[derive(Debug, Clone)]
pub struct ChainComplexZ {
    pub dims: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplexZ {
    /// Top simplicial degree.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Checks `∂_{d-1} ∘ ∂_d = 0` for every `d`, including the augmentation.
    pub fn boundary_squares_vanish(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].checked_mul(&w[1]).is_some_and(|p| p.is_zero()))
    }

    /// `sum (-1)^d |C_d|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }
}

/// Chains on the flags of `y`, vertices ordered by the canonical subspace
/// order (which orders every chain by dimension).
pub fn order_chain_complex(y: &SubComplex) -> Result<ChainComplexZ> {
    if y.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let top = y.flags().iter().map(Flag::len).max().unwrap() - 1;
    let mut by_degree: Vec<Vec<&Flag>> = vec![Vec::new(); top + 1];
    for f in y.flags() {
        by_degree[f.len() - 1].push(f);
    }
    let index: Vec<HashMap<&Flag, usize>> =
        by_degree.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect()).collect();
    let dims: Vec<usize> = by_degree.iter().map(Vec::len).collect();
    let mut boundaries = Vec::with_capacity(top + 1);
    let mut aug = IntMatrix::zeros(1, dims[0]);
    aug.data.iter_mut().for_each(|x| *x = 1);
    boundaries.push(aug);
    for d in 1..=top {
        let mut m = IntMatrix::zeros(dims[d - 1], dims[d]);
        for (col, simplex) in by_degree[d].iter().enumerate() {
            for drop in 0..=d {
                let face: Vec<_> = simplex
                    .members()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, s)| s.clone())
                    .collect();
                let face = Flag::new_unchecked(face);
                let row = *index[d - 1].get(&face).ok_or_else(|| {
                    Error::InvalidFlag(format!("not face-closed: {face} missing"))
                })?;
                m.set(row, col, if drop % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplexZ { dims, boundaries })
}
