use std::collections::{HashSet, VecDeque};

use crate::algebra::{gl_order, Field, Mat};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Default cap on the number of elements a closure may reach.
pub const DEFAULT_CLOSURE_CAP: usize = 250_000;
/// Default cap on the `q^(n^2)` matrices scanned when enumerating `GL_n(F_q)`.
pub const DEFAULT_AMBIENT_CAP: u128 = 1 << 24;

/// A subgroup of `GL_n(F_q)` given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    field: Field,
    n: usize,
    generators: Vec<Mat>,
}

impl GroupSpec {
    pub fn new(name: impl Into<String>, field: Field, n: usize, generators: Vec<Mat>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in &generators {
            if g.field() != field {
                return Err(Error::FieldMismatch { left: field.q as u32, right: g.field().q as u32 });
            }
            if g.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: g.n() });
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible);
            }
        }
        Ok(GroupSpec { name: name.into(), field, n, generators })
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }
}

/// Element list of a finite matrix group.
#[derive(Debug, Clone)]
pub struct GroupClosure {
    field: Field,
    n: usize,
    elements: Vec<Mat>,
    complete: bool,
    generators: Option<Vec<Mat>>,
}

impl GroupClosure {
    /// Wraps an element list known to form a group (e.g. a stabilizer filter).
    pub fn from_elements(field: Field, n: usize, elements: Vec<Mat>) -> Self {
        GroupClosure { field, n, elements, complete: true, generators: None }
    }

    /// Records a known generating set.
    pub fn with_generators(mut self, generators: Vec<Mat>) -> Self {
        self.generators = Some(generators);
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteClosure(self.elements.len()))
        }
    }

    pub fn element_set(&self) -> HashSet<&Mat> {
        self.elements.iter().collect()
    }

    pub fn contains(&self, g: &Mat) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subset_of(&self, other: &GroupClosure) -> bool {
        let set = other.element_set();
        self.elements.iter().all(|g| set.contains(g))
    }

    /// A generating set: the recorded one, or a greedy one built by scanning
    /// the elements in order and keeping each element not yet generated.
    pub fn generators(&self) -> Vec<Mat> {
        if let Some(g) = &self.generators {
            return g.clone();
        }
        let mut gens: Vec<Mat> = Vec::new();
        let mut generated: HashSet<Mat> = HashSet::from([Mat::identity(self.field, self.n)]);
        for x in &self.elements {
            if generated.contains(x) {
                continue;
            }
            gens.push(x.clone());
            generated = bfs(self.field, self.n, &gens, usize::MAX).0.into_iter().collect();
        }
        gens
    }

    /// Sorted canonical element encoding; equal groups give equal keys.
    pub fn canonical_key(&self) -> Vec<Vec<u8>> {
        let mut keys: Vec<Vec<u8>> = self.elements.iter().map(Mat::encode).collect();
        keys.sort();
        keys
    }
}

fn bfs(field: Field, n: usize, gens: &[Mat], cap: usize) -> (Vec<Mat>, bool) {
    let id = Mat::identity(field, n);
    let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = elements[i].mul_unchecked(g);
            if seen.contains(&y) {
                continue;
            }
            if elements.len() >= cap {
                return (elements, false);
            }
            seen.insert(y.clone());
            elements.push(y);
            queue.push_back(elements.len() - 1);
        }
    }
    (elements, true)
}

/// Breadth-first product closure of the generators.
///
/// Elements appear in discovery order starting from the identity. When the
/// cap is hit the result is returned with `complete = false`.
pub fn closure(spec: &GroupSpec, cap: usize) -> GroupClosure {
    let (elements, complete) = bfs(spec.field, spec.n, &spec.generators, cap.max(1));
    GroupClosure {
        field: spec.field,
        n: spec.n,
        elements,
        complete,
        generators: Some(spec.generators.clone()),
    }
}

/// Standard generators of `GL_n(F_q)`: elementary transvections and one
/// diagonal matrix carrying a primitive element.
pub fn gl_generators(field: Field, n: usize) -> Vec<Mat> {
    let mut gens = Vec::new();
    let mut diag = vec![1u8; n];
    diag[0] = field.primitive();
    if field.q > 2 {
        gens.push(Mat::diagonal(field, &diag));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(Mat::elementary(field, n, i, j, 1));
            }
        }
    }
    if gens.is_empty() {
        gens.push(Mat::identity(field, n));
    }
    gens
}

/// All invertible `n x n` matrices over `field`, in lexicographic order.
pub fn enumerate_gl(field: Field, n: usize, scan_cap: u128) -> Result<GroupClosure> {
    enumerate_gl_with(field, n, scan_cap, Exec::default())
}

pub fn enumerate_gl_with(field: Field, n: usize, scan_cap: u128, exec: Exec) -> Result<GroupClosure> {
    let q = field.q as u128;
    let size = q.checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if size > scan_cap {
        return Err(Error::AmbientTooLarge { size, cap: scan_cap });
    }
    let decode = |mut code: usize| -> Mat {
        let mut entries = vec![0u8; n * n];
        for e in entries.iter_mut().rev() {
            *e = (code % field.q as usize) as u8;
            code /= field.q as usize;
        }
        Mat::new(field, n, entries).expect("codes in range")
    };
    let elements: Vec<Mat> = par::map_range(exec, size as usize, |c| {
        let m = decode(c);
        m.is_invertible().then_some(m)
    })
    .into_iter()
    .flatten()
    .collect();
    debug_assert_eq!(elements.len() as u128, gl_order(field.q as u32, n));
    Ok(GroupClosure { field, n, elements, complete: true, generators: Some(gl_generators(field, n)) })
}

/// Normality of `sub` in `over`, by conjugating every element of `sub` by
/// each generator of `over`.
pub fn is_normal_in(sub: &GroupClosure, over: &GroupClosure) -> Result<bool> {
    sub.require_complete()?;
    over.require_complete()?;
    if !sub.is_subset_of(over) {
        return Err(Error::NotSubgroup);
    }
    let set = sub.element_set();
    for g in over.generators() {
        let ginv = g.mat_inv()?;
        for x in sub.elements() {
            if !set.contains(&g.mul_unchecked(x).mul_unchecked(&ginv)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
