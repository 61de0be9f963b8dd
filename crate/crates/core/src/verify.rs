//! Self-check suites: each check compares an implemented statement with an
//! independent computation and reports the first counterexample.

use std::fmt;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::closed_forms::{
    asm_ideal_grundy, asm_ruler_table, chain_ruler_grundy, divisor_ruler_grundy,
    ruler_mex_characterization, subspace_recurrence, subspace_ruler_grundy,
};
use crate::error::{Error, Result};
use crate::game::{
    brute_force_all, combined, product_family, solve_elementwise, FamilyKind, GenericGame,
    TurningFamily, DEFAULT_POSITION_CAP,
};
use crate::nimber::{nim_add, nim_mul, InductiveOracle, Nimber};
use crate::partition::{all_partitions, g_of_type, h_sequence, multiplicity_m, IntegerPartition};
use crate::poset::FinitePoset;
use crate::zoo::{
    all_set_partitions, asm_poset, chain, divisor_poset, set_partition_poset, subspace_lattice,
    AsmPoset,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Nimber,
    Ft,
    ClosedForms,
    Partitions,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Nimber => "nimber",
            Suite::Ft => "ft",
            Suite::ClosedForms => "closed-forms",
            Suite::Partitions => "partitions",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nimber" => Ok(Suite::Nimber),
            "ft" => Ok(Suite::Ft),
            "closed-forms" => Ok(Suite::ClosedForms),
            "partitions" => Ok(Suite::Partitions),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub statement: String,
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS [{}] {}", self.suite, self.statement),
            Some(c) => write!(f, "FAIL [{}] {}: {}", self.suite, self.statement, c),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    fn push(
        &mut self,
        suite: &'static str,
        statement: &str,
        outcome: std::result::Result<(), String>,
    ) {
        self.checks.push(CheckResult {
            suite,
            statement: statement.to_string(),
            counterexample: outcome.err(),
        });
    }
}

type Outcome = std::result::Result<(), String>;

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run(suite: Suite) -> VerifyReport {
    let mut report = VerifyReport::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Nimber {
        nimber_suite(&mut report);
    }
    if all || suite == Suite::Ft {
        ft_suite(&mut report);
    }
    if all || suite == Suite::ClosedForms {
        closed_forms_suite(&mut report);
    }
    if all || suite == Suite::Partitions {
        partitions_suite(&mut report);
    }
    report
}

fn nimber_suite(r: &mut VerifyReport) {
    const S: &str = "nimber";
    let oracle = InductiveOracle::default();
    r.push(
        S,
        "nim-addition is XOR (inductive oracle, a, b < 256)",
        (|| -> Outcome {
            for a in 0..256 {
                for b in 0..256 {
                    let slow = lift(oracle.nim_add(Nimber(a), Nimber(b)))?;
                    if slow != Nimber(a ^ b) || nim_add(Nimber(a), Nimber(b)) != slow {
                        return Err(format!("a={a} b={b}: oracle {slow}"));
                    }
                }
            }
            Ok(())
        })(),
    );
    r.push(
        S,
        "fast nim-multiplication equals the inductive definition (a, b < 128)",
        (|| -> Outcome {
            for a in 0..128 {
                for b in 0..128 {
                    let slow = lift(oracle.nim_mul(Nimber(a), Nimber(b)))?;
                    let fast = nim_mul(Nimber(a), Nimber(b));
                    if slow != fast {
                        return Err(format!("a={a} b={b}: fast {fast}, oracle {slow}"));
                    }
                }
            }
            Ok(())
        })(),
    );
    r.push(
        S,
        "nimbers form a field (a, b, c < 32)",
        (|| -> Outcome {
            for a in 0..32u64 {
                let a = Nimber(a);
                if a * Nimber::ONE != a {
                    return Err(format!("identity fails at {a}"));
                }
                for b in 0..32u64 {
                    let b = Nimber(b);
                    if a * b != b * a {
                        return Err(format!("commutativity fails at {a}, {b}"));
                    }
                    for c in 0..32u64 {
                        let c = Nimber(c);
                        if (a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c {
                            return Err(format!(
                                "associativity or distributivity fails at {a}, {b}, {c}"
                            ));
                        }
                    }
                }
            }
            Ok(())
        })(),
    );
}

/// Brute force over all `2^|X|` positions against the nim-sum of the
/// elementwise values.
pub fn check_fundamental_theorem(
    poset: &FinitePoset,
    family: &TurningFamily,
) -> Result<Option<String>> {
    let game = GenericGame::from_coin_game(family, DEFAULT_POSITION_CAP)?;
    let brute = brute_force_all(&game)?;
    let table = solve_elementwise(poset, family);
    let n = poset.len();
    for (mask, &b) in brute.iter().enumerate() {
        let formula = table.position(&BitSet::from_mask(n, mask as u64));
        if formula != b {
            return Ok(Some(format!(
                "position {mask:#b}: brute force {b}, nim-sum {formula}"
            )));
        }
    }
    Ok(None)
}

/// The instances on which the fundamental theorem is checked exhaustively.
pub fn ft_instances() -> Result<Vec<(String, FinitePoset, FamilyKind)>> {
    use FamilyKind::*;
    let c4 = chain(4)?;
    let d12 = divisor_poset(12)?.poset;
    let pi3 = set_partition_poset(3)?.poset;
    let a4 = asm_poset(4)?.poset;
    let b22 = subspace_lattice(2, 2)?.poset;
    Ok(vec![
        ("chain:4".into(), c4.clone(), TurningTurtles),
        ("chain:4".into(), c4.clone(), OrderIdeal),
        ("chain:4".into(), c4, Ruler),
        ("divisors:12".into(), d12.clone(), Ruler),
        ("divisors:12".into(), d12, OrderIdeal),
        ("setpartitions:3".into(), pi3, Ruler),
        ("asm:4".into(), a4.clone(), OrderIdeal),
        ("asm:4".into(), a4, Ruler),
        ("subspaces:2:2".into(), b22, Ruler),
    ])
}

fn ft_suite(r: &mut VerifyReport) {
    const S: &str = "ft";
    match ft_instances() {
        Err(e) => r.push(S, "instances build", Err(e.to_string())),
        Ok(instances) => {
            for (name, poset, kind) in instances {
                let family = kind.build(&poset);
                let outcome = match check_fundamental_theorem(&poset, &family) {
                    Ok(None) => Ok(()),
                    Ok(Some(c)) => Err(c),
                    Err(e) => Err(e.to_string()),
                };
                r.push(
                    S,
                    &format!("game value is the nim-sum of coin values on {name} {kind}"),
                    outcome,
                );
            }
        }
    }
    r.push(
        S,
        "sum of chain rulers [3] + [4] is the nim-sum",
        (|| -> Outcome {
            let (c3, c4) = (lift(chain(3))?, lift(chain(4))?);
            let (f3, f4) = (TurningFamily::ruler(&c3), TurningFamily::ruler(&c4));
            let g3 = lift(GenericGame::from_coin_game(&f3, DEFAULT_POSITION_CAP))?;
            let g4 = lift(GenericGame::from_coin_game(&f4, DEFAULT_POSITION_CAP))?;
            let sum = lift(combined(&g3, &g4, DEFAULT_POSITION_CAP))?;
            let (b3, b4, bs) = (
                lift(brute_force_all(&g3))?,
                lift(brute_force_all(&g4))?,
                lift(brute_force_all(&sum))?,
            );
            for p in 0..g3.len() {
                for q in 0..g4.len() {
                    if bs[p * g4.len() + q] != b3[p] + b4[q] {
                        return Err(format!("positions {p:#b}, {q:#b}"));
                    }
                }
            }
            Ok(())
        })(),
    );
    r.push(
        S,
        "product families multiply Grundy values",
        (|| -> Outcome {
            for (a, b) in [(2, 3), (3, 3), (4, 2), (4, 4)] {
                let (ca, cb) = (lift(chain(a))?, lift(chain(b))?);
                for (ka, kb) in [
                    (FamilyKind::Ruler, FamilyKind::Ruler),
                    (FamilyKind::OrderIdeal, FamilyKind::Ruler),
                ] {
                    let (fa, fb) = (ka.build(&ca), kb.build(&cb));
                    let (prod, fam) = product_family(&ca, &fa, &cb, &fb);
                    let (ta, tb, tp) = (
                        solve_elementwise(&ca, &fa),
                        solve_elementwise(&cb, &fb),
                        solve_elementwise(&prod, &fam),
                    );
                    for x in 0..a {
                        for y in 0..b {
                            if tp.get(x * b + y) != ta.get(x) * tb.get(y) {
                                return Err(format!("[{a}] x [{b}] {ka} x {kb} at ({x},{y})"));
                            }
                        }
                    }
                    if prod.len() <= 16 {
                        if let Some(c) = lift(check_fundamental_theorem(&prod, &fam))? {
                            return Err(format!("[{a}] x [{b}]: {c}"));
                        }
                    }
                }
            }
            Ok(())
        })(),
    );
}

fn check_asm_ideal(n: usize) -> Outcome {
    let a: AsmPoset = lift(asm_poset(n))?;
    let t = solve_elementwise(&a.poset, &TurningFamily::order_ideals(&a.poset));
    for (i, e) in a.elements.iter().enumerate() {
        if t.get(i) != lift(asm_ideal_grundy(n, *e))? {
            return Err(format!("n={n} at {e:?}: solver {}", t.get(i)));
        }
    }
    Ok(())
}

fn closed_forms_suite(r: &mut VerifyReport) {
    const S: &str = "closed-forms";
    r.push(
        S,
        "ruler on a chain is phi",
        (|| -> Outcome {
            let c = lift(chain(64))?;
            let t = solve_elementwise(&c, &TurningFamily::ruler(&c));
            for x in 0..64 {
                if t.get(x) != lift(chain_ruler_grundy(x as u64 + 1))? {
                    return Err(format!("x={}", x + 1));
                }
            }
            Ok(())
        })(),
    );
    r.push(
        S,
        "ruler on D_n is the nim-product of phi(exponent + 1)",
        (|| -> Outcome {
            for n in [12u64, 30, 60, 360] {
                let d = lift(divisor_poset(n))?;
                let t = solve_elementwise(&d.poset, &TurningFamily::ruler(&d.poset));
                for (i, &y) in d.divisors.iter().enumerate() {
                    if t.get(i) != lift(divisor_ruler_grundy(n, y))? {
                        return Err(format!("n={n} y={y}: solver {}", t.get(i)));
                    }
                }
            }
            Ok(())
        })(),
    );
    r.push(
        S,
        "ruler on B_d(q) depends only on dimension via the parity of q",
        (|| -> Outcome {
            for q in [2u32, 3] {
                for d in 0..=3 {
                    let b = lift(subspace_lattice(d, q))?;
                    let t = solve_elementwise(&b.poset, &TurningFamily::ruler(&b.poset));
                    for id in 0..b.subspaces.len() {
                        if t.get(id) != subspace_ruler_grundy(q as u64, b.dim(id)) {
                            return Err(format!(
                                "q={q} d={d} subspace {}",
                                b.subspaces[id].label()
                            ));
                        }
                    }
                }
            }
            for q in [2u64, 3, 4, 5] {
                let rec = subspace_recurrence(q, 60);
                for d in 0..=60 {
                    if rec.g(d) != subspace_ruler_grundy(q, d) {
                        return Err(format!("recurrence q={q} d={d}: {}", rec.g(d)));
                    }
                }
            }
            Ok(())
        })(),
    );
    r.push(
        S,
        "order-ideal game on A_n is the rank/z indicator (n = 3..7)",
        (3..=7).try_for_each(check_asm_ideal),
    );
    r.push(
        S,
        "mex of suffix ruler sums is phi (n <= 1024)",
        (|| -> Outcome {
            let rep = lift(ruler_mex_characterization(1024))?;
            rep.failures.first().map_or(Ok(()), |f| Err(f.clone()))
        })(),
    );
    r.push(
        S,
        "ruler on A_n is constant on pi-fibres and symmetric under eta (n <= 8)",
        (|| -> Outcome {
            for n in 2..=8 {
                let a = lift(asm_poset(n))?;
                let t = solve_elementwise(&a.poset, &TurningFamily::ruler(&a.poset));
                let table = lift(asm_ruler_table(n, None))?;
                for (i, e) in a.elements.iter().enumerate() {
                    if t.get(i) != table.of(e) {
                        return Err(format!("n={n} at {e:?}"));
                    }
                }
                let asymmetric = table.entries().find(|&(s, u, g)| table.get(s, s - u) != g);
                if let Some((s, u, _)) = asymmetric {
                    return Err(format!("n={n} at (s,t)=({s},{u})"));
                }
            }
            Ok(())
        })(),
    );
}

fn partitions_suite(r: &mut VerifyReport) {
    const S: &str = "partitions";
    r.push(
        S,
        "M(lambda, mu) counts set partitions of type lambda above type mu (n <= 5)",
        (|| -> Outcome {
            for n in 1..=5u32 {
                let all = all_set_partitions(n as usize);
                for pi in &all {
                    let mu = IntegerPartition::type_of(pi);
                    for lambda in all_partitions(n) {
                        let count = all
                            .iter()
                            .filter(|t| pi.refines(t) && IntegerPartition::type_of(t) == lambda)
                            .count() as u128;
                        if lift(multiplicity_m(&lambda, &mu))? != count {
                            return Err(format!("lambda={lambda} mu={mu}: brute count {count}"));
                        }
                    }
                }
            }
            Ok(())
        })(),
    );
    r.push(
        S,
        "ruler on Pi_n is the nim-product of h over block sizes (n <= 5)",
        (|| -> Outcome {
            let seq = lift(h_sequence(5, None))?;
            for n in 1..=5 {
                let pi = lift(set_partition_poset(n))?;
                let t = solve_elementwise(&pi.poset, &TurningFamily::ruler(&pi.poset));
                for (i, sp) in pi.partitions.iter().enumerate() {
                    let expected = lift(g_of_type(&IntegerPartition::type_of(sp), &seq))?;
                    if t.get(i) != expected {
                        return Err(format!(
                            "n={n} at {}: solver {}, type formula {expected}",
                            sp.label(),
                            t.get(i)
                        ));
                    }
                }
            }
            Ok(())
        })(),
    );
}
