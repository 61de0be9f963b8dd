//! Nimber arithmetic.
//!
//! Nimbers are non-negative integers with nim-addition (bitwise XOR) and
//! nim-multiplication (Conway's product). The fast routines are backed by
//! [`InductiveOracle`], which evaluates the defining mex recursions literally
//! and exists only to cross-check them.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::sync::Mutex;

use crate::error::{Error, Result};

/// A nimber. Sums and products stay within `u64`.
#[derive(
    Debug,
    Default,
    Clone,
    Copy,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    serde::Serialize,
    serde::Deserialize,
)]
#[serde(transparent)]
pub struct Nimber(pub u64);

impl Nimber {
    pub const ZERO: Nimber = Nimber(0);
    pub const ONE: Nimber = Nimber(1);

    pub fn get(self) -> u64 {
        self.0
    }
}

impl From<u64> for Nimber {
    fn from(v: u64) -> Self {
        Nimber(v)
    }
}

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Nimber {
    type Output = Nimber;

    fn add(self, rhs: Nimber) -> Nimber {
        nim_add(self, rhs)
    }
}

impl AddAssign for Nimber {
    fn add_assign(&mut self, rhs: Nimber) {
        *self = nim_add(*self, rhs);
    }
}

impl Mul for Nimber {
    type Output = Nimber;

    fn mul(self, rhs: Nimber) -> Nimber {
        nim_mul(self, rhs)
    }
}

impl MulAssign for Nimber {
    fn mul_assign(&mut self, rhs: Nimber) {
        *self = nim_mul(*self, rhs);
    }
}

impl std::iter::Sum for Nimber {
    fn sum<I: Iterator<Item = Nimber>>(iter: I) -> Nimber {
        nim_sum(iter)
    }
}

/// Least non-negative integer not in `values`.
pub fn mex<I: IntoIterator<Item = Nimber>>(values: I) -> Nimber {
    let values: Vec<u64> = values.into_iter().map(Nimber::get).collect();
    // The answer is at most the number of values.
    let mut seen = vec![false; values.len() + 1];
    for v in values {
        if (v as usize) < seen.len() {
            seen[v as usize] = true;
        }
    }
    Nimber(seen.iter().position(|s| !s).unwrap() as u64)
}

#[inline]
pub fn nim_add(a: Nimber, b: Nimber) -> Nimber {
    Nimber(a.0 ^ b.0)
}

/// Nim-sum of a sequence; the empty sum is 0.
pub fn nim_sum<I: IntoIterator<Item = Nimber>>(xs: I) -> Nimber {
    xs.into_iter().fold(Nimber::ZERO, nim_add)
}

/// Nim-product via the Fermat 2-power split `a = a1*F + a0` with
/// `F = 2^(2^k)` and `F (x) F = F + F/2`.
pub fn nim_mul(a: Nimber, b: Nimber) -> Nimber {
    Nimber(mul_width(a.0, b.0, 64))
}

fn mul_width(a: u64, b: u64, width: u32) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    if a == 1 {
        return b;
    }
    if b == 1 {
        return a;
    }
    if width == 1 {
        return a & b;
    }
    let half = width / 2;
    // Shrink the working width while both operands fit in the lower half.
    if a >> half == 0 && b >> half == 0 {
        return mul_width(a, b, half);
    }
    let mask = (1u64 << half) - 1;
    let (a1, a0) = (a >> half, a & mask);
    let (b1, b0) = (b >> half, b & mask);
    let low = mul_width(a0, b0, half);
    let high = mul_width(a1, b1, half);
    let cross = mul_width(a0 ^ a1, b0 ^ b1, half);
    ((cross ^ low) << half) ^ low ^ mul_width(high, 1u64 << (half - 1), half)
}

/// 2-adic valuation of a positive integer.
pub fn nu2(x: u64) -> Result<u32> {
    if x == 0 {
        return Err(Error::NonPositive);
    }
    Ok(x.trailing_zeros())
}

/// The ruler sequence `2^nu2(x)`.
pub fn ruler_phi(x: u64) -> Result<Nimber> {
    nu2(x).map(|k| Nimber(1 << k))
}

/// Index of the most significant set bit.
pub fn msb(x: u64) -> Result<u32> {
    if x == 0 {
        return Err(Error::NonPositive);
    }
    Ok(63 - x.leading_zeros())
}

pub const DEFAULT_ADD_CAP: u64 = 1024;
pub const DEFAULT_MUL_CAP: u64 = 256;

/// Memoised evaluation of the inductive definitions of nim-addition and
/// nim-multiplication. Inputs at or above the configured caps are refused.
pub struct InductiveOracle {
    add_cap: u64,
    mul_cap: u64,
    add_cache: Mutex<Table>,
    mul_cache: Mutex<Table>,
}

/// Dense square table of side `cap`; `UNSET` marks entries not yet computed.
struct Table {
    side: usize,
    cells: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl Table {
    fn new(side: u64) -> Self {
        Table {
            side: side as usize,
            cells: Vec::new(),
        }
    }

    fn ensure(&mut self) {
        if self.cells.is_empty() {
            self.cells = vec![UNSET; self.side * self.side];
        }
    }

    fn get(&self, i: u64, j: u64) -> u32 {
        self.cells[i as usize * self.side + j as usize]
    }

    fn set(&mut self, i: u64, j: u64, v: u32) {
        self.cells[i as usize * self.side + j as usize] = v;
    }
}

/// mex of a list of small values, using a scratch bitmap.
fn small_mex(values: &[u32], seen: &mut Vec<bool>) -> u32 {
    seen.clear();
    seen.resize(values.len() + 1, false);
    for &v in values {
        if (v as usize) < seen.len() {
            seen[v as usize] = true;
        }
    }
    seen.iter().position(|&b| !b).unwrap_or(values.len()) as u32
}

impl Default for InductiveOracle {
    fn default() -> Self {
        Self::new(DEFAULT_ADD_CAP, DEFAULT_MUL_CAP)
    }
}

impl InductiveOracle {
    pub fn new(add_cap: u64, mul_cap: u64) -> Self {
        InductiveOracle {
            add_cap,
            mul_cap,
            add_cache: Mutex::new(Table::new(add_cap)),
            mul_cache: Mutex::new(Table::new(mul_cap)),
        }
    }

    fn check(value: u64, cap: u64) -> Result<()> {
        if value >= cap {
            Err(Error::CapExceeded { value, cap })
        } else {
            Ok(())
        }
    }

    /// `a + b = mex({a' + b : a' < a} U {a + b' : b' < b})`.
    pub fn nim_add(&self, a: Nimber, b: Nimber) -> Result<Nimber> {
        Self::check(a.0, self.add_cap)?;
        Self::check(b.0, self.add_cap)?;
        let mut t = self.add_cache.lock().unwrap();
        t.ensure();
        if t.get(a.0, b.0) == UNSET {
            // Fill the rectangle [0,a] x [0,b] row by row so every lookup hits.
            let (mut opts, mut seen) = (Vec::new(), Vec::new());
            for i in 0..=a.0 {
                for j in 0..=b.0 {
                    if t.get(i, j) != UNSET {
                        continue;
                    }
                    opts.clear();
                    opts.extend((0..i).map(|i2| t.get(i2, j)));
                    opts.extend((0..j).map(|j2| t.get(i, j2)));
                    let v = small_mex(&opts, &mut seen);
                    t.set(i, j, v);
                }
            }
        }
        Ok(Nimber(t.get(a.0, b.0) as u64))
    }

    /// `a * b = mex{a'*b + a*b' + a'*b' : a' < a, b' < b}`, with `+` the
    /// inductive addition so the product oracle never touches the XOR path.
    pub fn nim_mul(&self, a: Nimber, b: Nimber) -> Result<Nimber> {
        Self::check(a.0, self.mul_cap)?;
        Self::check(b.0, self.mul_cap)?;
        {
            let t = self.mul_cache.lock().unwrap();
            if !t.cells.is_empty() && t.get(a.0, b.0) != UNSET {
                return Ok(Nimber(t.get(a.0, b.0) as u64));
            }
        }
        // Nimbers below a Fermat 2-power are closed under both operations, so
        // every sum in the recursion stays below `bound`.
        let mut bound = 2u64;
        while bound <= a.0.max(b.0) {
            bound *= bound;
        }
        self.nim_add(Nimber(bound - 1), Nimber(bound - 1))?;
        let add: Vec<u32> = {
            let t = self.add_cache.lock().unwrap();
            (0..bound * bound)
                .map(|k| t.get(k / bound, k % bound))
                .collect()
        };
        let sum = |x: u32, y: u32| add[x as usize * bound as usize + y as usize];
        let mut t = self.mul_cache.lock().unwrap();
        t.ensure();
        // Fill the square up to max(a, b) so nearby queries hit the cache.
        let m = a.0.max(b.0);
        let (mut opts, mut seen) = (Vec::new(), Vec::new());
        for i in 0..=m {
            for j in 0..=m {
                if t.get(i, j) != UNSET {
                    continue;
                }
                opts.clear();
                for i2 in 0..i {
                    let (l, lo) = (t.get(i2, j), i2);
                    for j2 in 0..j {
                        opts.push(sum(sum(l, t.get(i, j2)), t.get(lo, j2)));
                    }
                }
                let v = small_mex(&opts, &mut seen);
                t.set(i, j, v);
            }
        }
        Ok(Nimber(t.get(a.0, b.0) as u64))
    }
}
