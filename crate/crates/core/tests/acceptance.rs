//! Acceptance criteria. Run with
//! `cargo test -p grundylab --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use grundylab::closed_forms::{
    asm_ideal_grundy, asm_ruler_table, subspace_recurrence, subspace_ruler_grundy, suffix_set,
};
use grundylab::game::{
    brute_force_all, combined, solve_elementwise, GenericGame, DEFAULT_POSITION_CAP,
};
use grundylab::nimber::{nim_add, nim_mul, ruler_phi, InductiveOracle};
use grundylab::partition::{
    all_partitions, h_sequence, multiplicity_m, s_of_mu, HSequence, IntegerPartition,
};
use grundylab::zoo::{
    asm_poset, chain, divisor_poset, set_partition_poset, subspace_lattice, AsmProjection,
};
use grundylab::{BitSet, FinitePoset, Nimber, TurningFamily};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn ints(v: &[Nimber]) -> Vec<u64> {
    v.iter().map(|x| x.get()).collect()
}

// Turning-set families built from the order relation alone, as bitmasks.

fn tt_sets(p: &FinitePoset) -> Vec<u64> {
    let n = p.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) {
                out.push((1u64 << x) | (1u64 << y));
            }
        }
    }
    out
}

fn ideal_sets(p: &FinitePoset) -> Vec<u64> {
    let n = p.len();
    (0..n)
        .map(|x| (0..n).filter(|&t| p.leq(t, x)).map(|t| 1u64 << t).sum())
        .collect()
}

fn ruler_sets(p: &FinitePoset) -> Vec<u64> {
    let n = p.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) {
                out.push(
                    (0..n)
                        .filter(|&t| p.leq(a, t) && p.leq(t, b))
                        .map(|t| 1u64 << t)
                        .sum(),
                );
            }
        }
    }
    out
}

/// The unique maximum of a turning set.
fn max_of(p: &FinitePoset, set: u64) -> usize {
    let elems: Vec<usize> = (0..p.len()).filter(|&x| set >> x & 1 == 1).collect();
    let tops: Vec<usize> = elems
        .iter()
        .copied()
        .filter(|&m| elems.iter().all(|&t| p.leq(t, m)))
        .collect();
    assert_eq!(tops.len(), 1, "turning set without a unique maximum");
    tops[0]
}

/// Grundy value of every position `P <= X` straight from the game rules:
/// a move picks `T` with `max T in P` and replaces `P` by `P xor T`.
fn brute_force(p: &FinitePoset, sets: &[u64]) -> Vec<u64> {
    let maxima: Vec<usize> = sets.iter().map(|&s| max_of(p, s)).collect();
    let size = 1usize << p.len();
    let mut memo: HashMap<u64, u64> = HashMap::new();
    fn g(pos: u64, sets: &[u64], maxima: &[usize], memo: &mut HashMap<u64, u64>) -> u64 {
        if let Some(&v) = memo.get(&pos) {
            return v;
        }
        let mut seen = BTreeSet::new();
        for (t, &m) in sets.iter().zip(maxima) {
            if pos >> m & 1 == 1 {
                seen.insert(g(pos ^ t, sets, maxima, memo));
            }
        }
        let v = (0..).find(|k| !seen.contains(k)).unwrap();
        memo.insert(pos, v);
        v
    }
    (0..size as u64)
        .map(|pos| g(pos, sets, &maxima, &mut memo))
        .collect()
}

fn family_from_masks(p: &FinitePoset, sets: &[u64]) -> TurningFamily {
    let bits = sets
        .iter()
        .map(|&s| BitSet::from_mask(p.len(), s))
        .collect();
    TurningFamily::new(p, bits).expect("sharp family")
}

/// Brute force against the nim-sum of elementwise values at every position.
fn ft_oracle(name: &str, p: &FinitePoset, sets: Vec<u64>) -> Check {
    let brute = brute_force(p, &sets);
    let table = solve_elementwise(p, &family_from_masks(p, &sets));
    for (pos, &b) in brute.iter().enumerate() {
        let formula = (0..p.len())
            .filter(|&x| pos >> x & 1 == 1)
            .fold(0u64, |acc, x| acc ^ table.get(x).get());
        ensure(formula == b, || {
            format!("{name}: position {pos:#b}, brute force {b}, nim-sum {formula}")
        })?;
    }
    Ok(())
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for a in 0..4096u64 {
        for b in 0..4096u64 {
            ensure(nim_add(Nimber(a), Nimber(b)) == Nimber(a ^ b), || {
                format!("nim_add({a},{b})")
            })?;
        }
    }
    let oracle = InductiveOracle::default();
    for a in 0..256u64 {
        for b in 0..256u64 {
            let v = oracle
                .nim_add(Nimber(a), Nimber(b))
                .map_err(|e| e.to_string())?;
            ensure(v == Nimber(a ^ b), || format!("inductive {a} + {b} = {v}"))?;
        }
    }
    within(start, Duration::from_secs(5), "nim-add checks")
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let oracle = InductiveOracle::default();
    for a in 0..128u64 {
        for b in 0..128u64 {
            let slow = oracle
                .nim_mul(Nimber(a), Nimber(b))
                .map_err(|e| e.to_string())?;
            let fast = nim_mul(Nimber(a), Nimber(b));
            ensure(slow == fast, || {
                format!("{a} * {b}: fast {fast}, inductive {slow}")
            })?;
        }
    }
    for a in (0..32).map(Nimber) {
        ensure(a * Nimber::ONE == a, || format!("identity at {a}"))?;
        for b in (0..32).map(Nimber) {
            ensure(a * b == b * a, || format!("commutativity at {a},{b}"))?;
            for c in (0..32).map(Nimber) {
                ensure((a * b) * c == a * (b * c), || {
                    format!("associativity at {a},{b},{c}")
                })?;
                ensure(a * (b + c) == a * b + a * c, || {
                    format!("distributivity at {a},{b},{c}")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(30), "nim-mul checks")
}

fn criterion_3() -> Check {
    let got: Vec<u64> = (1..=15).map(|x| ruler_phi(x).unwrap().get()).collect();
    ensure(got == [1, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1], || {
        format!("phi(1..15) = {got:?}")
    })
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let c4 = chain(4).unwrap();
    let d12 = divisor_poset(12).unwrap().poset;
    let pi3 = set_partition_poset(3).unwrap().poset;
    let a4 = asm_poset(4).unwrap().poset;
    let b22 = subspace_lattice(2, 2).unwrap().poset;
    ft_oracle("chain[4] tt", &c4, tt_sets(&c4))?;
    ft_oracle("chain[4] ideal", &c4, ideal_sets(&c4))?;
    ft_oracle("chain[4] ruler", &c4, ruler_sets(&c4))?;
    ft_oracle("D12 ruler", &d12, ruler_sets(&d12))?;
    ft_oracle("D12 ideal", &d12, ideal_sets(&d12))?;
    ft_oracle("Pi3 ruler", &pi3, ruler_sets(&pi3))?;
    ft_oracle("A4 ideal", &a4, ideal_sets(&a4))?;
    ft_oracle("A4 ruler", &a4, ruler_sets(&a4))?;
    ft_oracle("B2(2) ruler", &b22, ruler_sets(&b22))?;
    within(start, Duration::from_secs(60), "fundamental theorem oracle")
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let (c3, c4) = (chain(3).unwrap(), chain(4).unwrap());
    let (s3, s4) = (ruler_sets(&c3), ruler_sets(&c4));
    let (b3, b4) = (brute_force(&c3, &s3), brute_force(&c4, &s4));
    // The sum as one coin game on the disjoint union [3] + [4].
    let union = FinitePoset::from_relation(7, |x, y| (x < 3) == (y < 3) && x <= y, vec![]).unwrap();
    let mut sets = s3.clone();
    sets.extend(s4.iter().map(|s| s << 3));
    let bu = brute_force(&union, &sets);
    // The same sum through explicit game graphs.
    let g3 =
        GenericGame::from_coin_game(&family_from_masks(&c3, &s3), DEFAULT_POSITION_CAP).unwrap();
    let g4 =
        GenericGame::from_coin_game(&family_from_masks(&c4, &s4), DEFAULT_POSITION_CAP).unwrap();
    let gs = brute_force_all(&combined(&g3, &g4, DEFAULT_POSITION_CAP).unwrap()).unwrap();
    for p in 0..8usize {
        for q in 0..16usize {
            let expected = b3[p] ^ b4[q];
            ensure(bu[p | q << 3] == expected, || {
                format!("union game at ({p:#b},{q:#b})")
            })?;
            ensure(gs[p * 16 + q].get() == expected, || {
                format!("combined game at ({p:#b},{q:#b})")
            })?;
        }
    }
    within(start, Duration::from_secs(10), "sum of rulers")
}

fn criterion_6() -> Check {
    let d = divisor_poset(12).unwrap();
    ensure(d.divisors == [1, 2, 3, 4, 6, 12], || {
        format!("divisors {:?}", d.divisors)
    })?;
    let ruler = solve_elementwise(&d.poset, &TurningFamily::ruler(&d.poset));
    ensure(ints(ruler.values()) == [1, 2, 2, 1, 3, 2], || {
        format!("ruler {:?}", ints(ruler.values()))
    })?;
    let ideal = solve_elementwise(&d.poset, &TurningFamily::order_ideals(&d.poset));
    ensure(ints(ideal.values()) == [1, 0, 0, 0, 0, 0], || {
        format!("ideal {:?}", ints(ideal.values()))
    })
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let even = [1u64, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1];
    let odd = [1u64, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3];
    for (q, row) in [(2u64, even), (4, even), (3, odd), (5, odd)] {
        let rec = subspace_recurrence(q, 14);
        for (d, &expected) in row.iter().enumerate() {
            ensure(rec.g(d).get() == expected, || {
                format!("recurrence q={q} d={d}: {}", rec.g(d))
            })?;
            let closed = subspace_ruler_grundy(q, d).get();
            ensure(closed == expected, || {
                format!("closed form q={q} d={d}: {closed}")
            })?;
        }
    }
    let b = subspace_lattice(3, 2).unwrap();
    let t = solve_elementwise(&b.poset, &TurningFamily::ruler(&b.poset));
    let mut by_dim: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); 4];
    for id in 0..b.subspaces.len() {
        by_dim[b.dim(id)].insert(t.get(id).get());
    }
    let expected: Vec<BTreeSet<u64>> = [1, 2, 1, 4]
        .iter()
        .map(|&v| [v].into_iter().collect())
        .collect();
    ensure(by_dim == expected, || {
        format!("B3(2) values by dimension {by_dim:?}")
    })?;
    within(start, Duration::from_secs(30), "subspace checks")
}

fn criterion_8() -> Check {
    let start = Instant::now();
    for n in 3..=7 {
        let a = asm_poset(n).unwrap();
        let t = solve_elementwise(&a.poset, &TurningFamily::order_ideals(&a.poset));
        let mut fibres: HashMap<AsmProjection, BTreeSet<u64>> = HashMap::new();
        for (i, e) in a.elements.iter().enumerate() {
            let rho = n - 2 - (e.x + e.y);
            let formula = u64::from(rho == 0 || rho == 2 * e.z + 1 || rho + 1 == 2 * e.z);
            ensure(t.get(i).get() == formula, || {
                format!("n={n} {e:?}: solver {}", t.get(i))
            })?;
            ensure(asm_ideal_grundy(n, *e).unwrap().get() == formula, || {
                format!("closed form at n={n} {e:?}")
            })?;
            fibres
                .entry(e.project(n).unwrap())
                .or_default()
                .insert(t.get(i).get());
        }
        for (proj, values) in fibres {
            ensure(values.len() == 1, || {
                format!("n={n}: fibre {proj:?} carries {values:?}")
            })?;
        }
    }
    within(start, Duration::from_secs(60), "ASM order-ideal checks")
}

fn criterion_9() -> Check {
    let table = [1u64, 2, 1, 4, 1, 2, 1, 7, 15, 16, 8, 5, 19, 5, 37, 17, 14];
    let start = Instant::now();
    let h12 = h_sequence(12, None).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(60), "h(1..12)")?;
    ensure(ints(h12.values()) == table[..12], || {
        format!("h(1..12) = {:?}", ints(h12.values()))
    })?;
    let start = Instant::now();
    let h17 =
        h_sequence(17, Some(start + Duration::from_secs(30 * 60))).map_err(|e| e.to_string())?;
    ensure(ints(h17.values()) == table, || {
        format!("h(1..17) = {:?}", ints(h17.values()))
    })?;
    for n in 1..=5usize {
        let pi = set_partition_poset(n).unwrap();
        let t = solve_elementwise(&pi.poset, &TurningFamily::ruler(&pi.poset));
        let top = pi.poset.maximum().unwrap();
        ensure(pi.partitions[top].num_blocks() == 1, || {
            "top of Pi_n is not the one-block partition".into()
        })?;
        ensure(t.get(top).get() == table[n - 1], || {
            format!("solver on Pi_{n}: {}", t.get(top))
        })?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let h = HSequence::from_values(vec![Nimber(1), Nimber(2), Nimber(1)]);
    let order: Vec<IntegerPartition> = ["4", "1 3", "2^2", "1^2 2", "1^4"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    ensure(all_partitions(4) == order, || "Par_4 order".into())?;
    let s: Vec<u64> = order
        .iter()
        .map(|mu| s_of_mu(4, mu, &h).unwrap().get())
        .collect();
    ensure(s == [0, 1, 3, 1, 2], || format!("s_4 = {s:?}"))?;
    let mu: IntegerPartition = "1^2 2".parse().unwrap();
    let m: Vec<u128> = ["1^2 2", "1 3", "2^2"]
        .iter()
        .map(|l| multiplicity_m(&l.parse().unwrap(), &mu).unwrap())
        .collect();
    ensure(m == [1, 2, 1], || format!("M = {m:?}"))
}

fn criterion_11() -> Check {
    let start = Instant::now();
    let phi = |x: u64| x & x.wrapping_neg();
    for n in 1..=1024u64 {
        // H(x, n) for x = n, n-1, .., 1.
        let mut values = vec![0u64];
        let mut acc = 0u64;
        for x in (1..n).rev() {
            acc ^= phi(x);
            ensure(acc != 0, || format!("H({x},{n}) = 0"))?;
            values.push(acc);
        }
        let set: BTreeSet<u64> = values.into_iter().collect();
        let mex = (0..).find(|v| !set.contains(v)).unwrap();
        ensure(mex == phi(n), || format!("mex S({n}) = {mex}"))?;
        ensure(suffix_set(n).unwrap() == set, || {
            format!("library S({n}) differs")
        })?;
    }
    for k in 0..=8 {
        let n = 1u64 << k;
        let s = suffix_set(n).unwrap();
        ensure(s == (0..n).collect(), || format!("S(2^{k}) = {s:?}"))?;
    }
    within(start, Duration::from_secs(10), "suffix sums")
}

fn criterion_12() -> Check {
    let start = Instant::now();
    for n in [6, 8, 10] {
        let table = asm_ruler_table(n, None).map_err(|e| e.to_string())?;
        for (s, t, g) in table.entries() {
            ensure(table.get(s, s - t) == g, || {
                format!("n={n}: g({s},{t}) != g({s},{})", s - t)
            })?;
        }
        let a = asm_poset(n).unwrap();
        let full = solve_elementwise(&a.poset, &TurningFamily::ruler(&a.poset));
        let xi = a.map_ids(|e| e.xi());
        let eta = a.map_ids(|e| e.eta(n).unwrap());
        for (i, e) in a.elements.iter().enumerate() {
            ensure(full.get(i) == full.get(xi[i]), || {
                format!("n={n}: xi moves the value at {e:?}")
            })?;
            ensure(full.get(i) == full.get(eta[i]), || {
                format!("n={n}: eta moves the value at {e:?}")
            })?;
            ensure(full.get(i) == table.of(e), || {
                format!("n={n}: table disagrees with the solver at {e:?}")
            })?;
        }
    }
    within(start, Duration::from_secs(300), "ASM ruler tables")
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        ("nim-addition is XOR", criterion_1),
        ("nim-multiplication fast path and field laws", criterion_2),
        ("ruler sequence phi(1..15)", criterion_3),
        ("brute force equals nim-sum of coin values", criterion_4),
        ("sum of chain rulers [3] + [4]", criterion_5),
        ("ruler and order-ideal values on D12", criterion_6),
        ("subspace lattice rows and B3(2)", criterion_7),
        ("order-ideal game on A_n (n = 3..7)", criterion_8),
        ("h(1..17) on set-partition lattices", criterion_9),
        ("worked n = 4 partition example", criterion_10),
        ("suffix ruler sums", criterion_11),
        ("ASM ruler tables (n = 6, 8, 10)", criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let t = start.elapsed();
        match &result {
            Ok(()) => println!("PASS criterion {}: {name} ({t:.2?})", i + 1),
            Err(msg) => {
                println!("FAIL criterion {}: {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
