use std::cmp::Ordering;
use std::fmt;

use crate::algebra::Subspace;
use crate::error::{Error, Result};

/// Strictly increasing chain of proper nonzero subspaces: a simplex of the
/// building of `GL(V)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    members: Vec<Subspace>,
}

impl Flag {
    pub fn new(members: Vec<Subspace>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidFlag("empty chain".into()));
        }
        let (field, n) = (members[0].field(), members[0].n());
        for m in &members {
            if m.field() != field || m.n() != n {
                return Err(Error::InvalidFlag("members live in different spaces".into()));
            }
            if m.is_zero() || m.is_full() {
                return Err(Error::InvalidFlag(format!("member {m} is not proper")));
            }
        }
        for w in members.windows(2) {
            if !(w[1].dim() > w[0].dim() && w[1].contains(&w[0])) {
                return Err(Error::InvalidFlag(format!("{} is not strictly inside {}", w[0], w[1])));
            }
        }
        Ok(Flag { members })
    }

    pub(crate) fn new_unchecked(members: Vec<Subspace>) -> Self {
        Flag { members }
    }

    pub fn vertex(s: Subspace) -> Result<Self> {
        Flag::new(vec![s])
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    /// Simplicial dimension (`len - 1`).
    pub fn dim(&self) -> usize {
        self.members.len() - 1
    }
    /// Dimension vector of the members.
    pub fn flag_type(&self) -> Vec<usize> {
        self.members.iter().map(Subspace::dim).collect()
    }
    pub fn n(&self) -> usize {
        self.members[0].n()
    }

    /// Every nonempty subchain, including the flag itself (`2^k - 1` faces).
    pub fn faces(&self) -> Vec<Flag> {
        let k = self.members.len();
        let mut out: Vec<Flag> = (1u32..(1 << k))
            .map(|mask| {
                Flag::new_unchecked(
                    (0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.members[i].clone()).collect(),
                )
            })
            .collect();
        out.sort();
        out
    }

    /// True when `other` is a subchain of `self`.
    pub fn has_face(&self, other: &Flag) -> bool {
        other.members.iter().all(|m| self.members.contains(m))
    }
}

/// Deterministic order: length, then type vector, then members.
impl Ord for Flag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.flag_type().cmp(&other.flag_type()))
            .then_with(|| self.members.cmp(&other.members))
    }
}
impl PartialOrd for Flag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊂ ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
impl serde::Serialize for Flag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Opposition: equal length and `V_i ⊕ W_{k+1-i} = V` for every `i`.
pub fn are_opposite(f: &Flag, g: &Flag) -> bool {
    let k = f.len();
    k == g.len() && (0..k).all(|i| f.members[i].is_complement(&g.members[k - 1 - i]))
}
