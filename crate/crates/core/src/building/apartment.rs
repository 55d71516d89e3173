use crate::algebra::{Field, Subspace, Universe};
use crate::error::{Error, Result};

use super::complex::{chains_of, SubComplex};

/// Decomposition of `V` into `n` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    lines: Vec<Subspace>,
}

impl Frame {
    pub fn new(lines: Vec<Subspace>) -> Result<Self> {
        let Some(first) = lines.first() else {
            return Err(Error::InvalidFrame("no lines".into()));
        };
        let (field, n) = (first.field(), first.n());
        if lines.len() != n {
            return Err(Error::InvalidFrame(format!("{} lines for dimension {n}", lines.len())));
        }
        if let Some(bad) = lines.iter().find(|l| l.dim() != 1 || l.n() != n || l.field() != field) {
            return Err(Error::InvalidFrame(format!("{bad} is not a line of the ambient space")));
        }
        let join = lines.iter().skip(1).fold(first.clone(), |acc, l| acc.sum_unchecked(l));
        if !join.is_full() {
            return Err(Error::InvalidFrame("lines do not span V".into()));
        }
        Ok(Frame { lines })
    }

    /// Coordinate lines `⟨e_1⟩, ..., ⟨e_n⟩`.
    pub fn standard(field: Field, n: usize) -> Result<Self> {
        Frame::new((0..n).map(|i| Subspace::coordinate(field, n, &[i])).collect::<Result<_>>()?)
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }
}

/// The apartment of a frame: all flags whose members are sums of frame lines.
pub fn apartment_from_frame(fr: &Frame) -> SubComplex {
    let n = fr.lines.len();
    let field = fr.lines[0].field();
    let members: Vec<Subspace> = (1u32..(1 << n) - 1)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| fr.lines[i].clone())
                .reduce(|a, b| a.sum_unchecked(&b))
                .unwrap()
        })
        .collect();
    SubComplex::from_sorted(field, n, chains_of(&members))
}

/// Every frame of `F_q^n`, lines listed in canonical order.
pub fn all_frames(field: Field, n: usize) -> Result<Vec<Frame>> {
    let universe = Universe::get(field, n)?;
    let lines: Vec<&Subspace> = universe.subspaces().iter().filter(|s| s.dim() == 1).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Subspace)> = vec![(Vec::new(), Subspace::zero(field, n)?)];
    while let Some((chosen, join)) = stack.pop() {
        if chosen.len() == n {
            out.push(Frame { lines: chosen.iter().map(|&i| lines[i].clone()).collect() });
            continue;
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        for i in (start..lines.len()).rev() {
            if !join.contains(lines[i]) {
                let mut next = chosen.clone();
                next.push(i);
                stack.push((next, join.sum_unchecked(lines[i])));
            }
        }
    }
    Ok(out)
}
