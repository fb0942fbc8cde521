//! Table-driven arithmetic in GF(q).
//!
//! Elements are encoded as integers `0..q`. For `q = p^e` the code of
//! `c_0 + c_1 t + ... + c_{e-1} t^{e-1}` is `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`,
//! reduced modulo the fixed modulus listed in [`MODULI`].

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};

/// Largest supported field size; keeps every element a single base-32 digit in
/// the text interchange format.
pub const MAX_Q: u32 = 31;

/// A field element in its canonical integer code.
pub type FieldElem = u8;

/// Fixed monic irreducible moduli for the supported proper prime powers,
/// coefficients listed from the constant term upwards.
pub const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),       // GF(4):  t^2 + t + 1
    (2, 3, &[1, 1, 0, 1]),    // GF(8):  t^3 + t + 1
    (3, 2, &[1, 0, 1]),       // GF(9):  t^2 + 1
    (2, 4, &[1, 1, 0, 0, 1]), // GF(16): t^4 + t + 1
    (5, 2, &[2, 1, 1]),       // GF(25): t^2 + t + 2
    (3, 3, &[1, 2, 0, 1]),    // GF(27): t^3 + 2t + 1
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub q: u32,
    pub p: u32,
    pub e: u32,
    /// Empty for prime fields.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return domain(format!("unsupported field size q = {q}"));
        }
        if is_prime(q) {
            return Ok(FieldSpec {
                q,
                p: q,
                e: 1,
                modulus: Vec::new(),
            });
        }
        for &(p, e, m) in MODULI {
            if p.pow(e) == q {
                return Ok(FieldSpec {
                    q,
                    p,
                    e,
                    modulus: m.to_vec(),
                });
            }
        }
        domain(format!(
            "q = {q} is not a prime or a supported prime power"
        ))
    }
}

fn is_prime(m: u32) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

struct Tables {
    spec: FieldSpec,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// GF(q) with precomputed operation tables. Cloning is cheap.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.t.spec.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.t.spec == other.t.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        let spec = FieldSpec::new(q)?;
        let q = spec.q as usize;
        let digits = |mut a: usize| -> Vec<u32> {
            (0..spec.e)
                .map(|_| {
                    let d = (a % spec.p as usize) as u32;
                    a /= spec.p as usize;
                    d
                })
                .collect()
        };
        let encode = |c: &[u32]| -> u8 {
            c.iter()
                .rev()
                .fold(0u32, |acc, &d| acc * spec.p + d) as u8
        };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % spec.p).collect();
                add[a * q + b] = encode(&s);
                mul[a * q + b] = encode(&poly_mulmod(&da, &db, &spec));
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                match (0..q).find(|&b| mul[a * q + b] == 1) {
                    Some(b) => inv[a] = b as u8,
                    None => return domain(format!("modulus for q = {} is reducible", spec.q)),
                }
            }
        }
        Ok(Field {
            t: Arc::new(Tables {
                spec,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.t.spec.q
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.t.spec
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.t.spec.q == 2
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.t.add[a as usize * self.t.spec.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.t.mul[a as usize * self.t.spec.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        self.t.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        0..self.t.spec.q as u8
    }

    /// `dst += c * src`, entrywise.
    #[inline]
    pub fn axpy(&self, dst: &mut [FieldElem], c: FieldElem, src: &[FieldElem]) {
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    pub fn scale(&self, v: &mut [FieldElem], c: FieldElem) {
        for x in v.iter_mut() {
            *x = self.mul(c, *x);
        }
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], spec: &FieldSpec) -> Vec<u32> {
    let p = spec.p;
    let e = spec.e as usize;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    if e > 1 {
        let m = &spec.modulus;
        for deg in (e..2 * e).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            // subtract c * t^(deg-e) * modulus; modulus is monic of degree e
            for (j, &mj) in m.iter().enumerate() {
                let idx = deg - e + j;
                prod[idx] = (prod[idx] + p * p - (c * mj) % p) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: &[u32] = &[2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 31];

    #[test]
    fn field_axioms_hold_for_supported_sizes() {
        for &q in SUPPORTED {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn moduli_are_fixed() {
        assert_eq!(Field::new(4).unwrap().spec().modulus, vec![1, 1, 1]);
        assert_eq!(Field::new(9).unwrap().spec().modulus, vec![1, 0, 1]);
        assert!(Field::new(7).unwrap().spec().modulus.is_empty());
    }

    #[test]
    fn rejects_unsupported_sizes() {
        for q in [0, 1, 6, 10, 12, 32, 37, 256] {
            assert!(Field::new(q).is_err(), "q={q}");
        }
    }

    #[test]
    fn characteristic_two_addition_is_xor() {
        for q in [2u32, 4, 8, 16] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), a ^ b);
                }
            }
        }
    }
}
