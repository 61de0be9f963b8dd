use crate::error::{Error, Result};

/// Conway polynomials for the non-prime fields we support, as the
/// coefficients of `x^0 .. x^(k-1)` of a monic degree-`k` polynomial.
const CONWAY: &[(u32, u32, &[u8])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (5, 2, &[2, 4]),
];

pub const MAX_FIELD_SIZE: u32 = 32;

/// The field `F_q` for a prime power `q <= 32`.
///
/// Elements are the integers `0..q`; the base-`p` digits of an element are the
/// coefficients of its polynomial representative modulo the built-in Conway
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::UnsupportedField(q));
        }
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        let modulus: Vec<u8> = if k == 1 {
            vec![]
        } else {
            CONWAY
                .iter()
                .find(|&&(pp, kk, _)| pp == p && kk == k)
                .map(|&(_, _, c)| c.to_vec())
                .ok_or(Error::UnsupportedField(q))?
        };
        let digits = |mut v: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let undigits = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum) as u8;
                let mut prod = vec![0u32; (2 * k - 1) as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // Reduce with x^k = -(c_0 + c_1 x + ... + c_{k-1} x^{k-1}).
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        let t = deg - k as usize + i;
                        prod[t] = (prod[t] + c * (p - m as u32 % p)) % p;
                    }
                }
                mul[(a * q + b) as usize] = undigits(&prod[..k as usize]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q)
                        .find(|&b| mul[(a * q + b) as usize] == 1)
                        .unwrap_or(0) as u8
                }
            })
            .collect();
        Ok(FiniteField {
            p,
            k,
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
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

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 18] = [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32,
    ];

    #[test]
    fn rejects_unsupported_sizes() {
        for q in [0, 1, 6, 10, 12, 33, 64, 49] {
            assert_eq!(FiniteField::new(q), Err(Error::UnsupportedField(q)));
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in SUPPORTED {
            let f = FiniteField::new(q).unwrap();
            let q = q as u8;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn conway_polynomials_are_primitive() {
        // The residue class of x (encoded as p) generates the multiplicative group.
        for q in [4u32, 8, 9, 16, 25, 27, 32] {
            let f = FiniteField::new(q).unwrap();
            let x = f.characteristic() as u8;
            let mut acc = 1u8;
            let mut order = 0;
            loop {
                acc = f.mul(acc, x);
                order += 1;
                if acc == 1 {
                    break;
                }
            }
            assert_eq!(order, q - 1, "q={q}");
        }
    }
}
