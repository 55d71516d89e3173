use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        IntMatrix { rows: r, cols: c, data: rows.concat() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    /// Product `self * other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].checked_add(a.checked_mul(other.get(k, j))?)?;
                }
            }
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Rank and invariant factors `d_1 | d_2 | ... | d_rank` (all positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors greater than one (the torsion they contribute).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

trait Scalar: Clone + Debug + PartialEq {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn quot(&self, other: &Self) -> Option<Self>;
    /// `self - q * other`
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, other: &Self) -> Option<Self> {
        self.checked_div(*other)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*other)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, other: &Self) -> Option<Self> {
        Some(self / other)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Diagonalizes `a` (m x n) by unimodular row and column operations, always
/// pivoting on the entry of least magnitude. Returns the nonzero diagonal,
/// or `None` if an operation overflowed.
fn diagonalize<T: Scalar>(mut a: Vec<T>, m: usize, n: usize) -> Option<Vec<T>> {
    let at = |i: usize, j: usize| i * n + j;
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let v = &a[at(i, j)];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs_lt(&a[at(bi, bj)])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, n, t, pi);
        swap_cols(&mut a, n, m, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[at(i, t)].is_zero() {
                    continue;
                }
                let q = a[at(i, t)].quot(&a[at(t, t)])?;
                for j in t..n {
                    a[at(i, j)] = a[at(i, j)].sub_mul(&q, &a[at(t, j)])?;
                }
                clean &= a[at(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[at(t, j)].is_zero() {
                    continue;
                }
                let q = a[at(t, j)].quot(&a[at(t, t)])?;
                for i in t..m {
                    a[at(i, j)] = a[at(i, j)].sub_mul(&q, &a[at(i, t)])?;
                }
                clean &= a[at(t, j)].is_zero();
            }
            if clean {
                break;
            }
            // a remainder survived: move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..m {
                let v = &a[at(i, t)];
                if !v.is_zero() && v.abs_lt(&a[at(best.0, best.1)]) {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                let v = &a[at(t, j)];
                if !v.is_zero() && v.abs_lt(&a[at(best.0, best.1)]) {
                    best = (t, j);
                }
            }
            if best.0 != t {
                swap_rows(&mut a, n, t, best.0);
            } else if best.1 != t {
                swap_cols(&mut a, n, m, t, best.1);
            }
        }
        diag.push(a[at(t, t)].clone());
    }
    Some(diag)
}

fn swap_rows<T>(a: &mut [T], n: usize, r1: usize, r2: usize) {
    if r1 != r2 {
        for j in 0..n {
            a.swap(r1 * n + j, r2 * n + j);
        }
    }
}

fn swap_cols<T>(a: &mut [T], n: usize, m: usize, c1: usize, c2: usize) {
    if c1 != c2 {
        for i in 0..m {
            a.swap(i * n + c1, i * n + c2);
        }
    }
}

/// Replaces a diagonal by its invariant factors via `(a, b) -> (gcd, lcm)`.
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for x in d.iter_mut() {
        *x = x.abs();
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if Zero::is_zero(&(&d[j] % &d[i])) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Smith normal form of an integer matrix.
///
/// Elimination runs in `i64` with overflow checks and restarts over
/// arbitrary-precision integers if any step overflows.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let diag: Vec<BigInt> = match diagonalize(m.data.clone(), m.rows, m.cols) {
        Some(d) => d.iter().map(Scalar::to_big).collect(),
        None => {
            let big = m.data.iter().map(|&x| BigInt::from(x)).collect();
            diagonalize(big, m.rows, m.cols).expect("bigint arithmetic does not overflow")
        }
    };
    let divisors = invariant_factors(diag);
    SmithForm { rank: divisors.len(), divisors }
}

/// Smith normal form of an arbitrary-precision matrix (row-major).
pub fn smith_normal_form_big(data: Vec<BigInt>, rows: usize, cols: usize) -> SmithForm {
    let diag = diagonalize(data, rows, cols).expect("bigint arithmetic does not overflow");
    let divisors = invariant_factors(diag);
    SmithForm { rank: divisors.len(), divisors }
}

/// Divisors as machine integers, when they fit.
pub fn divisors_u64(form: &SmithForm) -> Option<Vec<u64>> {
    form.divisors.iter().map(|d| d.to_u64()).collect()
}
