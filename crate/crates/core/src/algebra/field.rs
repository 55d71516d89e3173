use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Orders of the finite fields this crate supports.
pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Operation tables of a small finite field.
///
/// Elements are coded `0..q`. For a prime field the code is the residue. For
/// `F_{p^e}` the code `sum a_i p^i` stands for the polynomial `sum a_i t^i`
/// reduced modulo the fixed irreducible polynomial returned by
/// [`FieldSpec::modulus`]: `t^2+t+1` for F_4, `t^3+t+1` for F_8, `t^2+1` for F_9.
#[derive(Debug)]
pub struct FieldSpec {
    pub q: u8,
    pub p: u8,
    pub e: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    primitive: u8,
}

/// Cheap copyable handle to a static [`FieldSpec`]. Equality is by order.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldSpec);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}
impl Eq for Field {}
impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.q.hash(state)
    }
}
impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl std::ops::Deref for Field {
    type Target = FieldSpec;
    fn deref(&self) -> &FieldSpec {
        self.0
    }
}

static TABLES: [OnceLock<FieldSpec>; 10] = [const { OnceLock::new() }; 10];

/// Builds (once) and returns the field of order `q`.
pub fn field_make(q: u32) -> Result<Field> {
    if !SUPPORTED_ORDERS.contains(&q) {
        return Err(Error::UnsupportedField(q));
    }
    let spec = TABLES[q as usize].get_or_init(|| FieldSpec::build(q as u8));
    Ok(Field(spec))
}

impl FieldSpec {
    /// Coefficients (constant term first) of the defining polynomial of an
    /// extension field, `None` for prime fields.
    pub fn modulus(q: u8) -> Option<&'static [u8]> {
        match q {
            4 => Some(&[1, 1, 1]),
            8 => Some(&[1, 1, 0, 1]),
            9 => Some(&[1, 0, 1]),
            _ => None,
        }
    }

    fn build(q: u8) -> FieldSpec {
        let (p, e) = match q {
            4 => (2, 2),
            8 => (2, 3),
            9 => (3, 2),
            _ => (q, 1),
        };
        let qq = q as usize;
        let digits = |c: u8| -> Vec<u8> {
            let mut v = vec![0u8; e as usize];
            let mut c = c;
            for d in v.iter_mut() {
                *d = c % p;
                c /= p;
            }
            v
        };
        let code = |d: &[u8]| -> u8 { d.iter().rev().fold(0u8, |acc, &x| acc * p + x) };
        let mut add = vec![0u8; qq * qq];
        let mut mul = vec![0u8; qq * qq];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qq + b as usize] = code(&sum);
                // schoolbook product then reduction by the monic modulus
                let mut prod = vec![0u16; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + *x as u16 * *y as u16) % p as u16;
                    }
                }
                if let Some(m) = Self::modulus(q) {
                    for deg in (e as usize..2 * e as usize).rev() {
                        let c = prod[deg];
                        if c == 0 {
                            continue;
                        }
                        // t^e = -(m_0 + m_1 t + ... + m_{e-1} t^{e-1})
                        for k in 0..e as usize {
                            let shift = deg - e as usize + k;
                            let sub = (c * m[k] as u16) % p as u16;
                            prod[shift] = (prod[shift] + p as u16 - sub) % p as u16;
                        }
                        prod[deg] = 0;
                    }
                }
                let low: Vec<u8> = prod[..e as usize].iter().map(|&x| x as u8).collect();
                mul[a as usize * qq + b as usize] = code(&low);
            }
        }
        let mut neg = vec![0u8; qq];
        let mut inv = vec![0u8; qq];
        for a in 0..q {
            neg[a as usize] = (0..q).find(|&b| add[a as usize * qq + b as usize] == 0).unwrap();
            if a != 0 {
                inv[a as usize] = (1..q).find(|&b| mul[a as usize * qq + b as usize] == 1).unwrap();
            }
        }
        let primitive = (1..q)
            .find(|&g| {
                let mut x = 1u8;
                for k in 1..q {
                    x = mul[x as usize * qq + g as usize];
                    if x == 1 {
                        return k == q - 1;
                    }
                }
                false
            })
            .unwrap();
        FieldSpec { q, p, e, add, mul, neg, inv, primitive }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }
    /// Multiplicative inverse; `inv(0)` is 0 by convention and must not be relied on.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
    /// Smallest code generating the multiplicative group.
    pub fn primitive(&self) -> u8 {
        self.primitive
    }
    pub fn order(&self) -> u32 {
        self.q as u32
    }
}
