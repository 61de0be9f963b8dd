use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::field::FiniteField;
use super::{check_size, DEFAULT_MAX_ELEMENTS};
use crate::error::Result;
use crate::poset::FinitePoset;

/// A subspace of `F_q^n` in canonical reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    /// Ambient dimension.
    pub n: usize,
    /// Basis rows; row `i` has a leading 1 at `pivots[i]` and zeros in every
    /// other pivot column.
    pub rows: Vec<Vec<u8>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against this basis in place; `v` lies in the subspace iff
    /// the result is zero.
    fn reduce(&self, field: &FiniteField, v: &mut [u8]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let coef = v[c];
            if coef == 0 {
                continue;
            }
            for (vi, &ri) in v.iter_mut().zip(row) {
                *vi = field.sub(*vi, field.mul(coef, ri));
            }
        }
    }

    pub fn contains_vector(&self, field: &FiniteField, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, field: &FiniteField, other: &Subspace) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains_vector(field, r))
    }

    pub fn label(&self) -> String {
        if self.rows.is_empty() {
            return "0".to_string();
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("[{}]", rows.join("|"))
    }
}

/// The lattice `B_n(q)` of subspaces of `F_q^n` under inclusion.
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    pub n: usize,
    pub field: FiniteField,
    pub subspaces: Vec<Subspace>,
    pub poset: FinitePoset,
}

impl SubspaceLattice {
    pub fn dim(&self, id: usize) -> usize {
        self.subspaces[id].dim()
    }
}

pub fn subspace_lattice(n: usize, q: u32) -> Result<SubspaceLattice> {
    subspace_lattice_capped(n, q, DEFAULT_MAX_ELEMENTS)
}

pub fn subspace_lattice_capped(n: usize, q: u32, cap: usize) -> Result<SubspaceLattice> {
    let field = FiniteField::new(q)?;
    let total: BigUint = (0..=n).map(|r| q_binomial(n, r, q as u64)).sum();
    let size = u128::try_from(total).unwrap_or(u128::MAX);
    check_size(size, cap)?;
    let mut subspaces = Vec::with_capacity(size as usize);
    for r in 0..=n {
        for pivots in combinations(n, r) {
            enumerate_rref(&field, n, &pivots, &mut subspaces);
        }
    }
    let labels = subspaces.iter().map(Subspace::label).collect();
    let (f2, s2) = (field.clone(), subspaces.clone());
    let poset = FinitePoset::from_relation(
        subspaces.len(),
        move |a, b| s2[a].is_subspace_of(&f2, &s2[b]),
        labels,
    )?;
    Ok(SubspaceLattice {
        n,
        field,
        subspaces,
        poset,
    })
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Pushes every RREF matrix with the given pivot columns, one per subspace.
fn enumerate_rref(field: &FiniteField, n: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| {
            ((c + 1)..n)
                .filter(|j| !pivots.contains(j))
                .map(move |j| (i, j))
        })
        .collect();
    let q = field.order() as u8;
    let mut values = vec![0u8; free.len()];
    loop {
        let mut rows = vec![vec![0u8; n]; pivots.len()];
        for (i, &c) in pivots.iter().enumerate() {
            rows[i][c] = 1;
        }
        for (&(i, j), &v) in free.iter().zip(&values) {
            rows[i][j] = v;
        }
        out.push(Subspace {
            n,
            rows,
            pivots: pivots.to_vec(),
        });
        // Odometer increment over the free entries.
        let mut k = 0;
        loop {
            if k == values.len() {
                return;
            }
            values[k] += 1;
            if values[k] < q {
                break;
            }
            values[k] = 0;
            k += 1;
        }
    }
}

/// The Gaussian binomial coefficient via
/// `[n, r] = [n-1, r-1] + q^r [n-1, r]`, `[0, r] = delta(0, r)`.
pub fn q_binomial(n: usize, r: usize, q: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for k in 0..=m {
            let left = if k >= 1 {
                row[k - 1].clone()
            } else {
                BigUint::zero()
            };
            let right = if k < m {
                q.pow(k as u32) * &row[k]
            } else {
                BigUint::zero()
            };
            next[k] = left + right;
        }
        row = next;
    }
    row[r].clone()
}

/// `[n, r]_q mod 2`. For even `q` every coefficient with `r <= n` is odd; for
/// odd `q` the parities follow Pascal's rule modulo 2.
pub fn q_binomial_parity(n: usize, r: usize, q: u64) -> u8 {
    if r > n {
        return 0;
    }
    if q.is_multiple_of(2) {
        return 1;
    }
    thread_local! {
        static PASCAL: std::cell::RefCell<HashMap<(usize, usize), u8>> = Default::default();
    }
    PASCAL.with(|memo| {
        let mut memo = memo.borrow_mut();
        parity_rec(n, r, &mut memo)
    })
}

fn parity_rec(n: usize, r: usize, memo: &mut HashMap<(usize, usize), u8>) -> u8 {
    if r > n {
        return 0;
    }
    if n == 0 {
        return u8::from(r == 0);
    }
    if r == 0 || r == n {
        return 1;
    }
    if let Some(&v) = memo.get(&(n, r)) {
        return v;
    }
    let v = parity_rec(n - 1, r - 1, memo) ^ parity_rec(n - 1, r, memo);
    memo.insert((n, r), v);
    v
}
