use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::Field;
use super::mat::Mat;
use crate::error::{Error, Result};

/// Default cap on the number of subspaces `enumerate_subspaces` will produce.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 16;

/// Subspace of `F_q^n` stored as its reduced row-echelon basis.
///
/// Rows are packed into `u64` words with coordinate 0 in the most significant
/// position: one bit per coordinate over F_2, one nibble otherwise. Comparing
/// packed words therefore compares coordinate vectors lexicographically, and
/// two subspaces are equal iff their packed bases are identical.
#[derive(Clone)]
pub struct Subspace {
    field: Field,
    n: usize,
    rows: Vec<u64>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.rows == other.rows
    }
}
impl Eq for Subspace {}
impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

/// Canonical order: dimension first, then the basis rows lexicographically.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.q, self.n, self.rows.len(), &self.rows).cmp(&(
            other.field.q,
            other.n,
            other.rows.len(),
            &other.rows,
        ))
    }
}
impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[inline]
fn bits(field: Field) -> usize {
    if field.q == 2 {
        1
    } else {
        4
    }
}

fn check_n(field: Field, n: usize) -> Result<()> {
    if n == 0 || n * bits(field) > 64 {
        return Err(Error::DimensionTooLarge(n));
    }
    Ok(())
}

pub(crate) fn pack(field: Field, n: usize, v: &[u8]) -> u64 {
    let b = bits(field);
    debug_assert_eq!(v.len(), n);
    v.iter().fold(0u64, |acc, &c| (acc << b) | c as u64)
}

pub(crate) fn unpack(field: Field, n: usize, w: u64) -> Vec<u8> {
    let b = bits(field);
    let m = (1u64 << b) - 1;
    (0..n).map(|i| ((w >> ((n - 1 - i) * b)) & m) as u8).collect()
}

/// Reduced row-echelon form of packed F_2 rows; zero rows dropped.
fn rref_f2(n: usize, mut rows: Vec<u64>) -> Vec<u64> {
    let mut rank = 0;
    for col in 0..n {
        let bit = 1u64 << (n - 1 - col);
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Reduced row-echelon form over a general field; zero rows dropped.
fn rref_bytes(field: Field, width: usize, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        let inv = field.inv(rows[rank][col]);
        if inv != 1 {
            for x in rows[rank].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let c = row[col];
            if r != rank && c != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Result<Self> {
        check_n(field, n)?;
        Ok(Subspace { field, n, rows: Vec::new() })
    }

    pub fn full(field: Field, n: usize) -> Result<Self> {
        check_n(field, n)?;
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![0u8; n];
                v[i] = 1;
                pack(field, n, &v)
            })
            .collect();
        Ok(Subspace { field, n, rows })
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(field: Field, n: usize, indices: &[usize]) -> Result<Self> {
        let rows: Vec<Vec<u8>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![0u8; n];
                v[i] = 1;
                v
            })
            .collect();
        span(field, n, &rows)
    }

    pub(crate) fn from_packed(field: Field, n: usize, rows: Vec<u64>) -> Self {
        let rows = if field.q == 2 {
            rref_f2(n, rows)
        } else {
            let unpacked = rows.iter().map(|&w| unpack(field, n, w)).collect();
            rref_bytes(field, n, unpacked).iter().map(|r| pack(field, n, r)).collect()
        };
        Subspace { field, n, rows }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }
    /// Canonical basis rows as element codes.
    pub fn basis(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|&w| unpack(self.field, self.n, w)).collect()
    }
    pub fn packed_rows(&self) -> &[u64] {
        &self.rows
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.q as u32, right: other.field.q as u32 });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        Subspace::from_packed(self.field, self.n, rows)
    }

    /// Intersection via the Zassenhaus sum-intersection algorithm.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let n = self.n;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, n);
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in self.basis() {
            let mut r = u.clone();
            r.extend_from_slice(&u);
            rows.push(r);
        }
        for w in other.basis() {
            let mut r = w;
            r.extend(std::iter::repeat_n(0, n));
            rows.push(r);
        }
        let reduced = rref_bytes(self.field, 2 * n, rows);
        let meet: Vec<Vec<u8>> = reduced
            .into_iter()
            .filter(|r| r[..n].iter().all(|&c| c == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        span(self.field, n, &meet)
    }

    /// Containment `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && self.sum_unchecked(other).dim() == self.dim()
    }

    /// `self ⊕ other = V`.
    pub fn is_complement(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == self.n && self.sum_unchecked(other).dim() == self.n
    }

    /// Image `g W`, rejecting singular `g`.
    pub fn image(&self, g: &Mat) -> Result<Subspace> {
        if g.field() != self.field {
            return Err(Error::FieldMismatch { left: g.field().q as u32, right: self.field.q as u32 });
        }
        if g.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: g.n() });
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(self.image_unchecked(g))
    }

    /// Image under a matrix already known to be invertible.
    pub(crate) fn image_unchecked(&self, g: &Mat) -> Subspace {
        let n = self.n;
        if self.field.q == 2 {
            // column j of g as a packed word; g v = xor of columns selected by v
            let cols: Vec<u64> = (0..n)
                .map(|j| (0..n).fold(0u64, |acc, i| (acc << 1) | g.get(i, j) as u64))
                .collect();
            let rows = self
                .rows
                .iter()
                .map(|&w| {
                    (0..n).fold(0u64, |acc, j| if w >> (n - 1 - j) & 1 == 1 { acc ^ cols[j] } else { acc })
                })
                .collect();
            Subspace { field: self.field, n, rows: rref_f2(n, rows) }
        } else {
            let rows = self.basis().iter().map(|v| g.apply(v)).collect();
            let reduced = rref_bytes(self.field, n, rows);
            Subspace { field: self.field, n, rows: reduced.iter().map(|r| pack(self.field, n, r)).collect() }
        }
    }

    /// True when `g W = W`.
    pub fn is_invariant_under(&self, g: &Mat) -> bool {
        self.image_unchecked(g) == *self
    }
}

impl fmt::Display for Subspace {
    /// `0` for the zero space, otherwise `⟨e1,e2+2e3⟩` over the canonical basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "⟨")?;
        for (r, row) in self.basis().iter().enumerate() {
            if r > 0 {
                write!(f, ",")?;
            }
            let mut first = true;
            for (i, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                if c == 1 {
                    write!(f, "e{}", i + 1)?;
                } else {
                    write!(f, "{}e{}", c, i + 1)?;
                }
            }
        }
        write!(f, "⟩")
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Canonical representative of the row span of `rows`.
pub fn span(field: Field, n: usize, rows: &[Vec<u8>]) -> Result<Subspace> {
    check_n(field, n)?;
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        if let Some(&bad) = r.iter().find(|&&c| c >= field.q) {
            return Err(Error::InvalidElement { code: bad as u32, q: field.q as u32 });
        }
    }
    if field.q == 2 {
        let packed = rows.iter().map(|r| pack(field, n, r)).collect();
        Ok(Subspace { field, n, rows: rref_f2(n, packed) })
    } else {
        let reduced = rref_bytes(field, n, rows.to_vec());
        Ok(Subspace { field, n, rows: reduced.iter().map(|r| pack(field, n, r)).collect() })
    }
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Number of subspaces of `F_q^n`.
pub fn subspace_count(n: usize, q: u32) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

/// Every subspace of `F_q^n` (including 0 and V) in canonical order.
pub fn enumerate_subspaces(field: Field, n: usize, cap: u128) -> Result<Vec<Subspace>> {
    check_n(field, n)?;
    let total = subspace_count(n, field.q as u32);
    if total > cap {
        return Err(Error::EnumerationTooLarge {
            what: format!("subspaces of F_{}^{}", field.q, n),
            size: total,
            cap,
        });
    }
    let q = field.q;
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=n {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free positions: (row, col) with col > pivot[row] and col not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let piv = &pivots;
                    (piv[r] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut vals = vec![0u8; free.len()];
            loop {
                let mut rows = vec![vec![0u8; n]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = 1;
                }
                for (&(r, c), &v) in free.iter().zip(&vals) {
                    rows[r][c] = v;
                }
                out.push(Subspace { field, n, rows: rows.iter().map(|r| pack(field, n, r)).collect() });
                // odometer
                let mut i = 0;
                while i < vals.len() {
                    vals[i] += 1;
                    if vals[i] < q {
                        break;
                    }
                    vals[i] = 0;
                    i += 1;
                }
                if i == vals.len() {
                    break;
                }
            }
            // next pivot combination
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if pivots[i] < n - k + i {
                    pivots[i] += 1;
                    for j in i + 1..k {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    i = usize::MAX;
                    break;
                }
            }
            if i != usize::MAX {
                break;
            }
        }
    }
    out.sort();
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}
