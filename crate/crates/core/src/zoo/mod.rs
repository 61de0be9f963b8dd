//! Constructors for the concrete poset families.

mod asm;
mod field;
mod setpart;
mod subspace;

pub use asm::{asm_eta, asm_pi, asm_poset, asm_xi, AsmElement, AsmPoset, AsmProjection};
pub use field::FiniteField;
pub use setpart::{
    all_set_partitions, bell_number, set_partition_poset, set_partition_poset_capped, SetPartition,
    SetPartitionPoset, MAX_SET_PARTITION_N,
};
pub use subspace::{
    q_binomial, q_binomial_parity, subspace_lattice, subspace_lattice_capped, Subspace,
    SubspaceLattice,
};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Default element cap for every constructor here.
pub const DEFAULT_MAX_ELEMENTS: usize = 500_000;

pub(crate) fn check_size(size: u128, cap: usize) -> Result<()> {
    if size > cap as u128 {
        Err(Error::TooLarge {
            size,
            cap: cap as u128,
        })
    } else {
        Ok(())
    }
}

/// The chain `1 < 2 < ... < n`; element id `i` carries label `i + 1`.
pub fn chain(n: usize) -> Result<FinitePoset> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    check_size(n as u128, DEFAULT_MAX_ELEMENTS)?;
    let labels = (1..=n).map(|i| i.to_string()).collect();
    FinitePoset::from_relation(n, |a, b| a <= b, labels)
}

/// Divisors of `n` ordered by divisibility.
#[derive(Debug, Clone)]
pub struct DivisorPoset {
    pub n: u64,
    /// Divisors in increasing order; `divisors[id]` is the value of element `id`.
    pub divisors: Vec<u64>,
    pub poset: FinitePoset,
}

impl DivisorPoset {
    pub fn index_of(&self, d: u64) -> Option<usize> {
        self.divisors.binary_search(&d).ok()
    }
}

pub fn divisor_poset(n: u64) -> Result<DivisorPoset> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    let mut divisors = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            divisors.push(d);
            if d * d != n {
                divisors.push(n / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();
    check_size(divisors.len() as u128, DEFAULT_MAX_ELEMENTS)?;
    let labels = divisors.iter().map(|d| d.to_string()).collect();
    let ds = divisors.clone();
    let poset = FinitePoset::from_relation(divisors.len(), move |a, b| ds[b] % ds[a] == 0, labels)?;
    Ok(DivisorPoset { n, divisors, poset })
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
