//! Integer partitions under refinement and the ruler on set-partition
//! lattices, reduced to types.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::nimber::{mex, nim_mul, Nimber};
use crate::poset::FinitePoset;
use crate::zoo::SetPartition;

/// An integer partition stored by multiplicities: `mult[i]` is the number of
/// parts equal to `i`. `mult[0]` is always 0 and there are no trailing zeros,
/// so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntegerPartition {
    mult: Vec<u32>,
}

impl IntegerPartition {
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let mut mult = Vec::new();
        for &p in parts {
            if p == 0 {
                return Err(Error::InvalidPartition("parts must be positive".into()));
            }
            if mult.len() <= p as usize {
                mult.resize(p as usize + 1, 0);
            }
            mult[p as usize] += 1;
        }
        Ok(IntegerPartition { mult })
    }

    pub fn from_multiplicities(mut mult: Vec<u32>) -> Self {
        if let Some(m0) = mult.first_mut() {
            *m0 = 0;
        }
        while mult.last() == Some(&0) {
            mult.pop();
        }
        IntegerPartition { mult }
    }

    /// The one-part partition `(n)`.
    pub fn single(n: u32) -> Self {
        Self::from_parts(&[n]).expect("n > 0")
    }

    /// `(1^n)`.
    pub fn ones(n: u32) -> Self {
        Self::from_multiplicities(vec![0, n])
    }

    /// `m_i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.mult.get(i as usize).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    pub fn weight(&self) -> u32 {
        self.mult
            .iter()
            .enumerate()
            .map(|(i, &m)| i as u32 * m)
            .sum()
    }

    pub fn length(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn largest_part(&self) -> u32 {
        self.mult.len().saturating_sub(1) as u32
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.length() as usize);
        for (i, &m) in self.mult.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i as u32, m as usize));
        }
        out
    }

    /// `m_i(self u other) = m_i(self) + m_i(other)`.
    pub fn union(&self, other: &IntegerPartition) -> IntegerPartition {
        let len = self.mult.len().max(other.mult.len());
        let mult = (0..len)
            .map(|i| self.multiplicity(i as u32) + other.multiplicity(i as u32))
            .collect();
        IntegerPartition::from_multiplicities(mult)
    }

    /// Whether `self` refines `lambda`: the parts of `self` can be grouped so
    /// that the groups sum to the parts of `lambda`.
    pub fn refines(&self, lambda: &IntegerPartition) -> Result<bool> {
        check_weights(lambda, self)?;
        let mut found = false;
        enumerate_decompositions(lambda, self, &mut |_| {
            found = true;
            false
        });
        Ok(found)
    }

    pub fn type_of(p: &SetPartition) -> IntegerPartition {
        let sizes: Vec<u32> = p.block_sizes().iter().map(|&s| s as u32).collect();
        IntegerPartition::from_parts(&sizes).expect("blocks are non-empty")
    }
}

/// Exponent notation, e.g. `1^2 2` for `(2, 1, 1)`; the empty partition is `0`.
impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| {
                if m == 1 {
                    i.to_string()
                } else {
                    format!("{i}^{m}")
                }
            })
            .collect();
        if items.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&items.join(" "))
        }
    }
}

/// Accepts exponent notation (`1^2 2`) or a comma list of parts (`2,1,1`).
impl FromStr for IntegerPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad partition {s:?}"));
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s == "0" || s.is_empty() {
            return Ok(IntegerPartition::default());
        }
        let mut parts = Vec::new();
        for tok in s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let (part, count) = match tok.split_once('^') {
                Some((p, m)) => (
                    p.parse::<u32>().map_err(|_| bad())?,
                    m.parse::<u32>().map_err(|_| bad())?,
                ),
                None => (tok.parse::<u32>().map_err(|_| bad())?, 1),
            };
            parts.extend(std::iter::repeat_n(part, count as usize));
        }
        IntegerPartition::from_parts(&parts)
    }
}

fn check_weights(lambda: &IntegerPartition, mu: &IntegerPartition) -> Result<()> {
    let (a, b) = (lambda.weight(), mu.weight());
    if a == b {
        Ok(())
    } else {
        Err(Error::WeightMismatch(a, b))
    }
}

/// All partitions of `n` in decreasing lexicographic order of their parts,
/// e.g. `4, 31, 22, 211, 1111`.
pub fn all_partitions(n: u32) -> Vec<IntegerPartition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
        if rest == 0 {
            out.push(IntegerPartition::from_parts(cur).expect("positive parts"));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A multiset of partitions `nu^(1), .., nu^(r)` with `|nu^(j)| = lambda_j`
/// and union `mu`, stored sorted.
pub type Decomposition = Vec<IntegerPartition>;

/// Calls `visit` once per element of `Par_n(lambda, mu)`. Parts of `lambda`
/// are handled in decreasing order; components for equal parts are chosen in
/// non-increasing order so each multiset is produced once. `visit` returns
/// whether to continue.
fn enumerate_decompositions<F>(lambda: &IntegerPartition, mu: &IntegerPartition, visit: &mut F)
where
    F: FnMut(&[IntegerPartition]) -> bool,
{
    if lambda.weight() != mu.weight() {
        return;
    }
    let parts = lambda.parts();
    let mut remaining = mu.mult.clone();
    let mut chosen: Vec<IntegerPartition> = Vec::with_capacity(parts.len());
    place(&parts, &mut remaining, &mut chosen, visit);
}

fn place<F>(
    parts: &[u32],
    remaining: &mut Vec<u32>,
    chosen: &mut Vec<IntegerPartition>,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[IntegerPartition]) -> bool,
{
    let j = chosen.len();
    if j == parts.len() {
        return visit(chosen);
    }
    let target = parts[j];
    let bound = if j > 0 && parts[j - 1] == target {
        Some(chosen[j - 1].clone())
    } else {
        None
    };
    let mut pick = vec![0u32; remaining.len()];
    let top = remaining.len().saturating_sub(1);
    let avail = remaining.clone();
    sub_multisets(top, target, &avail, &mut pick, &mut |pick| {
        let nu = IntegerPartition::from_multiplicities(pick.to_vec());
        if bound.as_ref().is_some_and(|b| nu > *b) {
            return true;
        }
        for (r, &p) in remaining.iter_mut().zip(pick) {
            *r -= p;
        }
        chosen.push(nu);
        let go_on = place(parts, remaining, chosen, visit);
        chosen.pop();
        for (r, &p) in remaining.iter_mut().zip(pick) {
            *r += p;
        }
        go_on
    })
}

/// Sub-multisets of `avail` (part sizes `<= size`) with weight `target`.
fn sub_multisets<F>(
    size: usize,
    target: u32,
    avail: &[u32],
    pick: &mut Vec<u32>,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[u32]) -> bool,
{
    if target == 0 {
        return visit(pick);
    }
    if size == 0 {
        return true;
    }
    let max = avail[size].min(target / size as u32);
    for k in (0..=max).rev() {
        pick[size] = k;
        let go_on = sub_multisets(size - 1, target - k * size as u32, avail, pick, visit);
        pick[size] = 0;
        if !go_on {
            return false;
        }
    }
    true
}

/// `Par_n(lambda, mu)`; empty when `mu` does not refine `lambda`.
pub fn decompositions(lambda: &IntegerPartition, mu: &IntegerPartition) -> BTreeSet<Decomposition> {
    let mut out = BTreeSet::new();
    enumerate_decompositions(lambda, mu, &mut |nu| {
        let mut d = nu.to_vec();
        d.sort();
        out.insert(d);
        true
    });
    out
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Term of one decomposition:
/// `prod m_i(mu)! / (prod_j prod_i m_i(nu^(j))! * prod_k m_{alpha_k}(nu)!)`.
fn decomposition_term(mu: &IntegerPartition, nu: &[IntegerPartition]) -> u128 {
    let num: u128 = mu.mult.iter().map(|&m| factorial(m)).product();
    let mut den: u128 = nu
        .iter()
        .flat_map(|c| c.mult.iter())
        .map(|&m| factorial(m))
        .product();
    let mut sorted: Vec<&IntegerPartition> = nu.iter().collect();
    sorted.sort();
    for run in sorted.chunk_by(|a, b| a == b) {
        den *= factorial(run.len() as u32);
    }
    debug_assert_eq!(num % den, 0);
    num / den
}

/// `M_n(lambda, mu)`: the number of set partitions of type `lambda` above a
/// fixed set partition of type `mu`.
pub fn multiplicity_m(lambda: &IntegerPartition, mu: &IntegerPartition) -> Result<u128> {
    check_weights(lambda, mu)?;
    let mut total = 0u128;
    enumerate_decompositions(lambda, mu, &mut |nu| {
        total += decomposition_term(mu, nu);
        true
    });
    Ok(total)
}

/// `h(1), h(2), ..` together with the `s_n(mu)` values behind each entry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HSequence {
    values: Vec<Nimber>,
    s_tables: Vec<Vec<(IntegerPartition, Nimber)>>,
}

impl HSequence {
    /// Wraps known values `h(1..=len)`; `s` tables are left empty.
    pub fn from_values(values: Vec<Nimber>) -> Self {
        let s_tables = vec![Vec::new(); values.len()];
        HSequence { values, s_tables }
    }

    /// `h(n)` for `1 <= n <= len`.
    pub fn h(&self, n: u32) -> Option<Nimber> {
        n.checked_sub(1)
            .and_then(|i| self.values.get(i as usize))
            .copied()
    }

    pub fn values(&self) -> &[Nimber] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(mu, s_n(mu))` over `Par_n` in [`all_partitions`] order, when computed.
    pub fn s_table(&self, n: u32) -> &[(IntegerPartition, Nimber)] {
        n.checked_sub(1)
            .and_then(|i| self.s_tables.get(i as usize))
            .map_or(&[], |v| v.as_slice())
    }
}

/// `g_n(lambda) = h(lambda_1) (x) h(lambda_2) (x) ...`.
pub fn g_of_type(lambda: &IntegerPartition, h: &HSequence) -> Result<Nimber> {
    lambda.parts().iter().try_fold(Nimber::ONE, |acc, &p| {
        let v = h.h(p).ok_or(Error::CapExceeded {
            value: p as u64,
            cap: h.len() as u64,
        })?;
        Ok(nim_mul(acc, v))
    })
}

/// `s_n(mu) = (+) (M_n(lambda, mu) mod 2) g_n(lambda)` over `lambda >= mu`,
/// `lambda != (n)`.
pub fn s_of_mu(n: u32, mu: &IntegerPartition, h: &HSequence) -> Result<Nimber> {
    if mu.weight() != n {
        return Err(Error::WeightMismatch(n, mu.weight()));
    }
    let top = IntegerPartition::single(n);
    let mut acc = Nimber::ZERO;
    for lambda in all_partitions(n) {
        if lambda == top || multiplicity_m(&lambda, mu)? % 2 == 0 {
            continue;
        }
        acc += g_of_type(&lambda, h)?;
    }
    Ok(acc)
}

/// `h(n) = mex { s_n(mu) : mu in Par_n }` for `n = 1..=n_max`, bottom-up.
/// Stops with `BudgetExceeded` once `deadline` has passed.
pub fn h_sequence(n_max: u32, deadline: Option<Instant>) -> Result<HSequence> {
    h_sequence_from(HSequence::default(), n_max, deadline)
}

/// Extends a known prefix up to `n_max`.
pub fn h_sequence_from(
    mut seq: HSequence,
    n_max: u32,
    deadline: Option<Instant>,
) -> Result<HSequence> {
    let start = Instant::now();
    let over = |deadline: Option<Instant>| deadline.is_some_and(|d| Instant::now() > d);
    for n in seq.len() as u32 + 1..=n_max {
        let pars = all_partitions(n);
        let top = IntegerPartition::single(n);
        // g_n(lambda) for every proper type, then the parity of M per pair.
        let g: Vec<Nimber> = pars
            .iter()
            .map(|l| {
                if *l == top {
                    Ok(Nimber::ZERO)
                } else {
                    g_of_type(l, &seq)
                }
            })
            .collect::<Result<_>>()?;
        let mut table = Vec::with_capacity(pars.len());
        for mu in &pars {
            if over(deadline) {
                return Err(Error::BudgetExceeded(elapsed(start)));
            }
            let mut acc = Nimber::ZERO;
            for (lambda, &gl) in pars.iter().zip(&g) {
                if *lambda != top && gl != Nimber::ZERO && multiplicity_m(lambda, mu)? % 2 == 1 {
                    acc += gl;
                }
            }
            table.push((mu.clone(), acc));
        }
        seq.values.push(mex(table.iter().map(|&(_, s)| s)));
        seq.s_tables.push(table);
    }
    Ok(seq)
}

fn elapsed(start: Instant) -> Duration {
    start.elapsed()
}

/// `Par_n` under refinement, elements in [`all_partitions`] order.
pub fn refinement_poset(n: u32) -> Result<(Vec<IntegerPartition>, FinitePoset)> {
    let pars = all_partitions(n);
    let labels = pars.iter().map(|p| p.to_string()).collect();
    let ps = pars.clone();
    let poset = FinitePoset::from_relation(
        pars.len(),
        move |a, b| ps[a].refines(&ps[b]).unwrap_or(false),
        labels,
    )?;
    Ok((pars, poset))
}
