use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;

use crate::algebra::{Field, Mat, Universe};
use crate::error::{Error, Result};
use crate::grouplat::{enumerate_gl_with, GroupClosure};
use crate::par::{self, Exec};

use super::complex::SubComplex;

/// Largest `|G| * |subspaces|` for which the full action table is stored.
const ACTION_TABLE_CAP: usize = 1 << 25;

/// A complete finite matrix group together with its action on the subspace
/// universe, precomputed as bitsets.
///
/// `fixes[g]` is the set of subspaces fixed by element `g`; `stabs[s]` is
/// the set of elements fixing subspace `s`. Pointwise stabilizers and fixed
/// sets then reduce to bitset intersections.
pub struct Ambient {
    group: GroupClosure,
    universe: Arc<Universe>,
    index: HashMap<Mat, u32>,
    fixes: Vec<FixedBitSet>,
    stabs: Vec<FixedBitSet>,
    action: Option<Vec<u16>>,
    exec: Exec,
}

impl std::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ambient(F_{}, n={}, order={})", self.field().q, self.n(), self.order())
    }
}

type AmbientCache = Mutex<HashMap<(u8, usize), Arc<Ambient>>>;
static GL_CACHE: OnceLock<AmbientCache> = OnceLock::new();

impl Ambient {
    pub fn new(group: GroupClosure) -> Result<Self> {
        Self::new_with(group, Exec::default())
    }

    pub fn new_with(group: GroupClosure, exec: Exec) -> Result<Self> {
        group.require_complete()?;
        let universe = Universe::get(group.field(), group.n())?;
        let u = universe.len();
        let g = group.order();
        let images: Vec<Vec<u16>> = par::map(exec, group.elements(), |m| {
            universe
                .subspaces()
                .iter()
                .map(|s| universe.get_index(&s.image_unchecked(m)).expect("image is a subspace") as u16)
                .collect()
        });
        let mut fixes = Vec::with_capacity(g);
        let mut stabs = vec![FixedBitSet::with_capacity(g); u];
        for (gi, row) in images.iter().enumerate() {
            let mut fx = FixedBitSet::with_capacity(u);
            for (si, &img) in row.iter().enumerate() {
                if img as usize == si {
                    fx.insert(si);
                    stabs[si].insert(gi);
                }
            }
            fixes.push(fx);
        }
        let action = (g.saturating_mul(u) <= ACTION_TABLE_CAP).then(|| images.concat());
        let index = group.elements().iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Ok(Ambient { group, universe, index, fixes, stabs, action, exec })
    }

    /// Shared ambient `GL_n(F_q)` for `(field, n)`, built once per process.
    pub fn general_linear(field: Field, n: usize, scan_cap: u128) -> Result<Arc<Ambient>> {
        let cache = GL_CACHE.get_or_init(Default::default);
        if let Some(a) = cache.lock().unwrap().get(&(field.q, n)) {
            return Ok(Arc::clone(a));
        }
        let gl = enumerate_gl_with(field, n, scan_cap, Exec::default())?;
        let built = Arc::new(Ambient::new(gl)?);
        let mut guard = cache.lock().unwrap();
        Ok(Arc::clone(guard.entry((field.q, n)).or_insert(built)))
    }

    pub fn group(&self) -> &GroupClosure {
        &self.group
    }
    pub fn universe(&self) -> &Universe {
        &self.universe
    }
    pub fn field(&self) -> Field {
        self.group.field()
    }
    pub fn n(&self) -> usize {
        self.group.n()
    }
    pub fn order(&self) -> usize {
        self.group.order()
    }
    pub fn exec(&self) -> Exec {
        self.exec
    }
    pub fn element(&self, i: usize) -> &Mat {
        &self.group.elements()[i]
    }
    pub fn element_index(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    /// Subspaces fixed by element `g`.
    pub fn fixed_by(&self, g: usize) -> &FixedBitSet {
        &self.fixes[g]
    }

    /// Universe index of `g · s`.
    #[inline]
    pub fn image_index(&self, g: usize, s: usize) -> usize {
        match &self.action {
            Some(t) => t[g * self.universe.len() + s] as usize,
            None => self
                .universe
                .get_index(&self.universe.subspace(s).image_unchecked(self.element(g)))
                .expect("image is a subspace"),
        }
    }

    /// Universe indices of a complex's member subspaces.
    pub fn member_set(&self, y: &SubComplex) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.universe.len());
        for m in y.members() {
            set.insert(self.universe.get_index(&m).expect("member of the universe"));
        }
        set
    }

    /// Elements fixing every subspace in `set`, as a bitset over elements.
    pub fn pointwise_stabilizer_bits(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.order());
        out.insert_range(..);
        for s in set.ones() {
            out.intersect_with(&self.stabs[s]);
        }
        out
    }

    /// Subspaces fixed by every element in `elements`.
    pub fn fixed_set(&self, elements: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.universe.len());
        out.insert_range(..);
        for g in elements.ones() {
            out.intersect_with(&self.fixes[g]);
        }
        out
    }

    /// Element-list view of an element bitset.
    pub fn subgroup(&self, elements: &FixedBitSet) -> GroupClosure {
        GroupClosure::from_elements(
            self.field(),
            self.n(),
            elements.ones().map(|i| self.element(i).clone()).collect(),
        )
    }

    /// Bitset of ambient indices for the elements of `group` (all must be present).
    pub fn indices_of(&self, group: &GroupClosure) -> Result<FixedBitSet> {
        let mut out = FixedBitSet::with_capacity(self.order());
        for m in group.elements() {
            out.insert(self.element_index(m).ok_or(Error::NotSubgroup)?);
        }
        Ok(out)
    }

    /// `M = ∩ P`: elements fixing every member subspace of every flag of `y`.
    pub fn stabilizer_pointwise_bits(&self, y: &SubComplex) -> FixedBitSet {
        self.pointwise_stabilizer_bits(&self.member_set(y))
    }

    /// `N_G(Y)`: elements mapping the flag set of `y` onto itself.
    pub fn stabilizer_setwise_bits(&self, y: &SubComplex) -> FixedBitSet {
        let members = self.member_set(y);
        let member_list: Vec<usize> = members.ones().collect();
        let full = y.is_full_on_members();
        let flag_keys: HashSet<Vec<usize>> = if full {
            HashSet::new()
        } else {
            y.flags()
                .iter()
                .map(|f| f.members().iter().map(|m| self.universe.get_index(m).unwrap()).collect())
                .collect()
        };
        let keep = |g: usize| -> bool {
            if !member_list.iter().all(|&s| members.contains(self.image_index(g, s))) {
                return false;
            }
            if full {
                return true;
            }
            flag_keys.iter().all(|key| {
                let mut img: Vec<usize> = key.iter().map(|&s| self.image_index(g, s)).collect();
                img.sort_unstable();
                flag_keys.contains(&img)
            })
        };
        let kept = par::filter_indices(self.exec, self.order(), keep);
        let mut out = FixedBitSet::with_capacity(self.order());
        out.extend(kept);
        out
    }
}

/// Pointwise stabilizer of `y` in `ambient`, i.e. the intersection of the
/// parabolic subgroups of its simplices. Empty `y` gives the whole ambient.
pub fn stabilizer_pointwise(y: &SubComplex, ambient: &Ambient) -> GroupClosure {
    ambient.subgroup(&ambient.stabilizer_pointwise_bits(y))
}

/// Setwise stabilizer `N_G(Y)` of `y` in `ambient`.
pub fn stabilizer_setwise(y: &SubComplex, ambient: &Ambient) -> GroupClosure {
    ambient.subgroup(&ambient.stabilizer_setwise_bits(y))
}
