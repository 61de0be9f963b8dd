//! Closed-form Grundy functions, the recurrences behind them, and the
//! fibre-reduced ruler table on the ASM poset.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::nimber::{mex, nim_mul, ruler_phi, Nimber};
use crate::poset::FinitePoset;
use crate::zoo::{factorize, q_binomial_parity, AsmElement};

/// Ruler on a chain `[n]`: `g(x) = phi(x)`.
pub fn chain_ruler_grundy(x: u64) -> Result<Nimber> {
    ruler_phi(x)
}

/// Ruler on the divisor poset `D_n`: `g(prod p_i^{x_i}) = (x) phi(x_i + 1)`,
/// the product taken in nimbers.
pub fn divisor_ruler_grundy(n: u64, y: u64) -> Result<Nimber> {
    if n == 0 || y == 0 || !n.is_multiple_of(y) {
        return Err(Error::NotADivisor { n, y });
    }
    factorize(y)
        .into_iter()
        .try_fold(Nimber::ONE, |acc, (_, e)| {
            Ok(nim_mul(acc, ruler_phi(e as u64 + 1)?))
        })
}

/// Ruler on `B_n(q)` at a subspace of dimension `d`: `phi(d + 1)` for even
/// `q`, `(d mod 3) + 1` for odd `q`.
pub fn subspace_ruler_grundy(q: u64, d: usize) -> Nimber {
    if q.is_multiple_of(2) {
        ruler_phi(d as u64 + 1).expect("d + 1 > 0")
    } else {
        Nimber(d as u64 % 3 + 1)
    }
}

/// Tables of `s_q(d, m)` and `g_q(d)` for `0 <= m <= d <= d_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceRecurrence {
    pub q: u64,
    pub d_max: usize,
    s: Vec<Vec<Nimber>>,
    g: Vec<Nimber>,
}

impl SubspaceRecurrence {
    pub fn s(&self, d: usize, m: usize) -> Nimber {
        self.s[d][m]
    }

    pub fn g(&self, d: usize) -> Nimber {
        self.g[d]
    }

    pub fn g_values(&self) -> &[Nimber] {
        &self.g
    }
}

/// Runs `g_q(d) = mex_m s_q(d, m)` with `s_q(d, d) = 0` and
///
/// * odd `q`: `s_q(d, m) = s_q(d, m+1) + s_q(d-1, m) + g_q(d-1)`,
/// * even `q`: `s_q(d, m) = s_q(d, m+1) + g_q(m)`,
///
/// filling each row `d` from `m = d` downwards.
pub fn subspace_recurrence(q: u64, d_max: usize) -> SubspaceRecurrence {
    let odd = q % 2 == 1;
    let mut s: Vec<Vec<Nimber>> = Vec::with_capacity(d_max + 1);
    let mut g: Vec<Nimber> = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        let mut row = vec![Nimber::ZERO; d + 1];
        for m in (0..d).rev() {
            row[m] = if odd {
                row[m + 1] + s[d - 1][m] + g[d - 1]
            } else {
                row[m + 1] + g[m]
            };
        }
        g.push(mex(row.iter().copied()));
        s.push(row);
    }
    SubspaceRecurrence { q, d_max, s, g }
}

/// `s_q(d, m) = (+)_{k=m}^{d-1} G_q(d-m, k-m) g_q(k)` straight from the
/// definition, given `g_q(0..d)`.
pub fn subspace_s_direct(q: u64, g: &[Nimber], d: usize, m: usize) -> Nimber {
    (m..d)
        .filter(|&k| q_binomial_parity(d - m, k - m, q) == 1)
        .map(|k| g[k])
        .sum()
}

/// Order-ideal game on a graded poset with a minimum: 1 at the minimum, 0
/// elsewhere.
pub fn graded_order_ideal_grundy(p: &FinitePoset) -> Result<Vec<Nimber>> {
    p.rank_function()?;
    let bottom = p.minimum().ok_or(Error::NoMinimum)?;
    Ok((0..p.len())
        .map(|x| Nimber(u64::from(x == bottom)))
        .collect())
}

/// `g(x)` for the order-ideal game when all values below `x` lie in `{0, 1}`:
/// 0 if an odd number of `t < x` have `g(t) = 1`, else 1.
pub fn order_ideal_parity(p: &FinitePoset, x: usize, lower_values: &[Nimber]) -> Nimber {
    let ones = p
        .down_set(x)
        .iter()
        .filter(|&t| t != x && lower_values[t] == Nimber::ONE)
        .count();
    Nimber(u64::from(ones % 2 == 0))
}

/// Order-ideal game on `A_n`: 1 iff the rank `rho = n - 2 - (x + y)` is 0 or
/// `2z +- 1`.
pub fn asm_ideal_grundy(n: usize, e: AsmElement) -> Result<Nimber> {
    let p = e.project(n)?;
    Ok(asm_ideal_by_projection(p.r, p.s))
}

/// The same indicator in `pi`-coordinates `(rho, z)`.
pub fn asm_ideal_by_projection(rho: usize, z: usize) -> Nimber {
    let hit = rho == 0 || rho == 2 * z + 1 || rho + 1 == 2 * z;
    Nimber(u64::from(hit))
}

/// Ruler Grundy values on `A_n` indexed by `pi = (s, t)`, `0 <= t <= s <= n-2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsmRulerTable {
    pub n: usize,
    rows: Vec<Vec<Nimber>>,
}

impl AsmRulerTable {
    pub fn get(&self, s: usize, t: usize) -> Nimber {
        self.rows[s][t]
    }

    pub fn of(&self, e: &AsmElement) -> Nimber {
        self.get(self.n - 2 - (e.x + e.y), e.z)
    }

    /// `(s, t, g)` with `s` ascending, then `t` ascending.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Nimber)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().enumerate().map(move |(t, &g)| (s, t, g)))
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<Nimber>>) -> Result<Self> {
        let ok =
            n >= 2 && rows.len() == n - 1 && rows.iter().enumerate().all(|(s, r)| r.len() == s + 1);
        if ok {
            Ok(AsmRulerTable { n, rows })
        } else {
            Err(Error::Parse(format!("malformed ASM ruler table for n={n}")))
        }
    }

    pub fn rows(&self) -> &[Vec<Nimber>] {
        &self.rows
    }
}

/// Ruler values on `A_n`, one representative `(0, n-2-s, t)` per fibre of
/// `pi`. Values inside an interval below the representative are read from
/// the already computed fibres of smaller rank.
pub fn asm_ruler_table(n: usize, deadline: Option<Instant>) -> Result<AsmRulerTable> {
    if n < 2 {
        return Err(Error::NonPositive);
    }
    let m = n - 2;
    let mut elements = Vec::new();
    for x in 0..=m {
        for y in 0..=m - x {
            for z in 0..=m - x - y {
                elements.push(AsmElement { x, y, z });
            }
        }
    }
    let mut rows: Vec<Vec<Nimber>> = Vec::with_capacity(m + 1);
    let start = Instant::now();
    for s in 0..=m {
        let mut row = Vec::with_capacity(s + 1);
        for t in 0..=s {
            if let Some(limit) = deadline {
                if Instant::now() > limit {
                    return Err(Error::BudgetExceeded(start.elapsed()));
                }
            }
            let rep = AsmElement {
                x: 0,
                y: m - s,
                z: t,
            };
            let below: Vec<(AsmElement, Nimber)> = elements
                .iter()
                .filter(|u| u.leq(&rep) && **u != rep)
                .map(|u| (*u, rows[m - (u.x + u.y)][u.z]))
                .collect();
            let options = std::iter::once(Nimber::ZERO).chain(below.iter().map(|(a, _)| {
                below
                    .iter()
                    .filter(|(u, _)| a.leq(u))
                    .map(|&(_, g)| g)
                    .sum()
            }));
            row.push(mex(options));
        }
        rows.push(row);
    }
    Ok(AsmRulerTable { n, rows })
}

/// `H(m, n) = (+)_{x=m}^{n-1} phi(x)`.
pub fn suffix_nim_sum(m: u64, n: u64) -> Result<Nimber> {
    if m == 0 || m > n {
        return Err(Error::NonPositive);
    }
    (m..n).map(ruler_phi).sum()
}

/// `S(n) = { H(x, n) : 1 <= x <= n }`.
pub fn suffix_set(n: u64) -> Result<BTreeSet<u64>> {
    Ok(suffix_values(n)?.into_iter().collect())
}

/// `H(x, n)` for `x = 1..=n`, in that order.
fn suffix_values(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    let mut out = vec![0u64; n as usize];
    let mut acc = 0u64;
    for x in (1..n).rev() {
        acc ^= ruler_phi(x)?.get();
        out[x as usize - 1] = acc;
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub n_max: u64,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CharacterizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, for every `n <= n_max`: the suffix sums `H(x, n)` are pairwise
/// distinct (so nonzero for `x < n`), `S(2^k)` is `{0, .., 2^k - 1}`, and
/// with `k = nu(n)`, `S(2^k) <= S(n)`, `2^k` is not in `S(n)` and
/// `mex S(n) = phi(n)`.
pub fn ruler_mex_characterization(n_max: u64) -> Result<CharacterizationReport> {
    let mut report = CharacterizationReport {
        n_max,
        ..Default::default()
    };
    let mut fail = |msg: String| report.failures.push(msg);
    let mut checks = 0;
    for n in 1..=n_max {
        let values = suffix_values(n)?;
        let set: BTreeSet<u64> = values.iter().copied().collect();
        checks += 4;
        if set.len() != values.len() {
            fail(format!("H(x,{n}) not distinct"));
        }
        let phi = ruler_phi(n)?.get();
        if n.is_power_of_two() && set != (0..n).collect() {
            fail(format!("S({n}) is not {{0..{}}}", n - 1));
        }
        if set.contains(&phi) || !(0..phi).all(|v| set.contains(&v)) {
            fail(format!("S({phi}) not below S({n}) or {phi} in S({n})"));
        }
        let m = mex(set.iter().map(|&v| Nimber(v))).get();
        if m != phi {
            fail(format!("mex S({n}) = {m}, phi({n}) = {phi}"));
        }
    }
    report.checks = checks;
    Ok(report)
}
