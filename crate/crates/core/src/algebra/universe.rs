use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::field::Field;
use super::subspace::{enumerate_subspaces, Subspace, DEFAULT_ENUM_CAP};
use crate::error::Result;

/// All subspaces of `F_q^n` in canonical order with an index lookup.
///
/// Index order equals the canonical subspace order, so sorting indices sorts
/// subspaces. Index 0 is the zero space and the last index is `V`.
#[derive(Debug)]
pub struct Universe {
    field: Field,
    n: usize,
    subspaces: Vec<Subspace>,
    index: HashMap<Subspace, u32>,
}

type UniverseCache = Mutex<HashMap<(u8, usize), Arc<Universe>>>;
static CACHE: OnceLock<UniverseCache> = OnceLock::new();

impl Universe {
    /// Shared universe for `(field, n)`, enumerated on first use.
    pub fn get(field: Field, n: usize) -> Result<Arc<Universe>> {
        let cache = CACHE.get_or_init(Default::default);
        if let Some(u) = cache.lock().unwrap().get(&(field.q, n)) {
            return Ok(Arc::clone(u));
        }
        let built = Arc::new(Self::build(field, n, DEFAULT_ENUM_CAP)?);
        let mut guard = cache.lock().unwrap();
        Ok(Arc::clone(guard.entry((field.q, n)).or_insert(built)))
    }

    pub fn build(field: Field, n: usize, cap: u128) -> Result<Universe> {
        let subspaces = enumerate_subspaces(field, n, cap)?;
        let index = subspaces.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        Ok(Universe { field, n, subspaces, index })
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }
    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }
    pub fn get_index(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }
    pub fn subspace(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }
    pub fn zero_index(&self) -> usize {
        0
    }
    pub fn full_index(&self) -> usize {
        self.subspaces.len() - 1
    }
}
