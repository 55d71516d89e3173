use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::Field;
use crate::error::{Error, Result};

/// Square matrix over a small finite field, acting on column vectors.
#[derive(Clone)]
pub struct Mat {
    field: Field,
    n: usize,
    entries: Vec<u8>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.entries == other.entries
    }
}
impl Eq for Mat {}
impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state)
    }
}
impl Ord for Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.q, self.n, &self.entries).cmp(&(other.field.q, other.n, &other.entries))
    }
}
impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Mat {
    /// Inline form accepted by the CLI: rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entries[i * self.n + j])?;
            }
        }
        Ok(())
    }
}

impl Mat {
    /// Builds a matrix from row-major element codes.
    pub fn new(field: Field, n: usize, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        if let Some(&bad) = entries.iter().find(|&&c| c >= field.q) {
            return Err(Error::InvalidElement { code: bad as u32, q: field.q as u32 });
        }
        Ok(Mat { field, n, entries })
    }

    /// Builds a matrix from nested rows of element codes.
    pub fn from_rows(field: Field, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for &c in row {
                if c >= field.q as u32 {
                    return Err(Error::InvalidElement { code: c, q: field.q as u32 });
                }
                entries.push(c as u8);
            }
        }
        Mat::new(field, n, entries)
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: Field, n: usize, c: u8) -> Self {
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + i] = c;
        }
        Mat { field, n, entries }
    }

    pub fn diagonal(field: Field, diag: &[u8]) -> Self {
        let n = diag.len();
        let mut entries = vec![0u8; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Mat { field, n, entries }
    }

    /// Identity plus `c` in position `(i, j)`, `i != j`.
    pub fn elementary(field: Field, n: usize, i: usize, j: usize, c: u8) -> Self {
        let mut m = Self::identity(field, n);
        m.entries[i * n + j] = c;
        m
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(field: Field, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut entries = vec![0u8; n * n];
        for (j, &i) in perm.iter().enumerate() {
            entries[i * n + j] = 1;
        }
        Mat { field, n, entries }
    }

    /// Single Jordan block with eigenvalue 1 (ones on diagonal and superdiagonal).
    pub fn jordan_unipotent(field: Field, n: usize) -> Self {
        let mut m = Self::identity(field, n);
        for i in 0..n.saturating_sub(1) {
            m.entries[i * n + i + 1] = 1;
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(|r| r.iter().map(|&c| c as u32).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field, self.n)
    }

    fn check_compatible(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.q as u32, right: other.field.q as u32 });
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// Product assuming matching field and size.
    pub(crate) fn mul_unchecked(&self, other: &Mat) -> Mat {
        let n = self.n;
        let f = self.field;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    entries[idx] = f.add(entries[idx], f.mul(a, other.entries[k * n + j]));
                }
            }
        }
        Mat { field: f, n, entries }
    }

    pub fn mat_mul(&self, other: &Mat) -> Result<Mat> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_compatible(other)?;
        let f = self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Mat { field: f, n: self.n, entries })
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let f = self.field;
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| a[r * n + col] != 0) else { continue };
            for j in 0..n {
                a.swap(rank * n + j, p * n + j);
            }
            let inv = f.inv(a[rank * n + col]);
            for r in 0..n {
                if r != rank && a[r * n + col] != 0 {
                    let c = f.mul(a[r * n + col], inv);
                    for j in 0..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[rank * n + j]));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn mat_inv(&self) -> Result<Mat> {
        let n = self.n;
        let f = self.field;
        let w = 2 * n;
        let mut a = vec![0u8; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(&self.entries[i * n..(i + 1) * n]);
            a[i * w + n + i] = 1;
        }
        for col in 0..n {
            let p = (col..n).find(|&r| a[r * w + col] != 0).ok_or(Error::NotInvertible)?;
            for j in 0..w {
                a.swap(col * w + j, p * w + j);
            }
            let inv = f.inv(a[col * w + col]);
            for j in 0..w {
                a[col * w + j] = f.mul(inv, a[col * w + j]);
            }
            for r in 0..n {
                let c = a[r * w + col];
                if r != col && c != 0 {
                    for j in 0..w {
                        a[r * w + j] = f.sub(a[r * w + j], f.mul(c, a[col * w + j]));
                    }
                }
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            entries.extend_from_slice(&a[i * w + n..(i + 1) * w]);
        }
        Ok(Mat { field: f, n, entries })
    }

    /// `g x` for a column vector `x` of element codes.
    #[inline]
    pub fn apply(&self, x: &[u8]) -> Vec<u8> {
        let n = self.n;
        let f = self.field;
        (0..n)
            .map(|i| {
                let mut acc = 0u8;
                for j in 0..n {
                    let xj = x[j];
                    if xj != 0 {
                        acc = f.add(acc, f.mul(self.entries[i * n + j], xj));
                    }
                }
                acc
            })
            .collect()
    }

    /// True when `(g - I)^n = 0`.
    pub fn is_unipotent(&self) -> bool {
        let nil = self.sub(&Mat::identity(self.field, self.n)).expect("same shape");
        let mut p = nil.clone();
        for _ in 1..self.n {
            p = p.mul_unchecked(&nil);
        }
        p.entries.iter().all(|&c| c == 0)
    }

    /// Multiplicative order (assumes invertible).
    pub fn order(&self) -> usize {
        let id = Mat::identity(self.field, self.n);
        let mut x = self.clone();
        let mut k = 1;
        while x != id {
            x = x.mul_unchecked(self);
            k += 1;
        }
        k
    }

    /// Compact byte encoding used for hashing and cache keys.
    pub fn encode(&self) -> Vec<u8> {
        self.entries.clone()
    }
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(q: u32, n: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}
