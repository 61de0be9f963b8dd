//! Coin-turning games on finite posets.
//!
//! A game is a poset `X` with a family `T` of turning sets, each with a unique
//! maximum. A position is a subset `P` of `X`; a move picks `T` whose maximum
//! lies in `P` and replaces `P` by the symmetric difference `P (-) T`.
//!
//! [`solve_elementwise`] computes the Grundy value of every singleton by
//! `g(x) = mex { nim-sum of g over T \ {x} : T has maximum x }`, and the value
//! of a position is the nim-sum over its elements. [`generic`] holds the
//! brute-force machinery used to check that against the definition.

pub mod generic;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::nimber::{mex, nim_sum, Nimber};
use crate::poset::{is_order_isomorphism, FinitePoset, LinearExtension};

pub use generic::{
    brute_force_all, brute_force_grundy, combined, GenericGame, DEFAULT_POSITION_CAP,
};

/// A position: the set of elements currently showing heads.
pub type Position = BitSet;

/// The three standard families of turning sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// All `{x, y}` with `x <= y`.
    TurningTurtles,
    /// All principal order ideals.
    OrderIdeal,
    /// All closed intervals.
    Ruler,
}

impl FamilyKind {
    pub fn build(self, poset: &FinitePoset) -> TurningFamily {
        match self {
            FamilyKind::TurningTurtles => TurningFamily::turning_turtles(poset),
            FamilyKind::OrderIdeal => TurningFamily::order_ideals(poset),
            FamilyKind::Ruler => TurningFamily::ruler(poset),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::TurningTurtles => "tt",
            FamilyKind::OrderIdeal => "ideal",
            FamilyKind::Ruler => "ruler",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tt" | "turtles" => Ok(FamilyKind::TurningTurtles),
            "ideal" | "oi" => Ok(FamilyKind::OrderIdeal),
            "ruler" | "interval" => Ok(FamilyKind::Ruler),
            _ => Err(Error::Parse(format!(
                "unknown family '{s}' (expected tt, ideal or ruler)"
            ))),
        }
    }
}

/// A family of turning sets, each with a unique maximum, bucketed by maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurningFamily {
    universe: usize,
    sets: Vec<BitSet>,
    max_of: Vec<usize>,
    by_max: Vec<Vec<usize>>,
}

/// The unique maximum of `set`, if it has one.
pub fn unique_maximum(poset: &FinitePoset, set: &BitSet) -> Option<usize> {
    set.iter().find(|&m| set.iter().all(|t| poset.leq(t, m)))
}

/// Checks that every set has a unique maximum; reports the first offender.
pub fn check_sharp(poset: &FinitePoset, sets: &[BitSet]) -> Result<Vec<usize>> {
    sets.iter()
        .enumerate()
        .map(|(index, s)| unique_maximum(poset, s).ok_or(Error::SharpViolation { index }))
        .collect()
}

impl TurningFamily {
    pub fn new(poset: &FinitePoset, sets: Vec<BitSet>) -> Result<Self> {
        if let Some(s) = sets.iter().find(|s| s.universe() != poset.len()) {
            return Err(Error::InvalidPoset(format!(
                "turning set over {} elements on a poset of {}",
                s.universe(),
                poset.len()
            )));
        }
        let max_of = check_sharp(poset, &sets)?;
        Ok(Self::from_parts(poset.len(), sets, max_of))
    }

    fn from_parts(universe: usize, sets: Vec<BitSet>, max_of: Vec<usize>) -> Self {
        let mut by_max = vec![Vec::new(); universe];
        for (i, &m) in max_of.iter().enumerate() {
            by_max[m].push(i);
        }
        TurningFamily {
            universe,
            sets,
            max_of,
            by_max,
        }
    }

    /// `{ {x, y} : x <= y }`, including the singletons `{x}`.
    pub fn turning_turtles(poset: &FinitePoset) -> Self {
        let n = poset.len();
        let mut sets = Vec::new();
        let mut max_of = Vec::new();
        for y in 0..n {
            for x in poset.down_set(y).iter() {
                sets.push(BitSet::from_elements(n, [x, y]));
                max_of.push(y);
            }
        }
        Self::from_parts(n, sets, max_of)
    }

    /// `{ down-set of x : x in X }`.
    pub fn order_ideals(poset: &FinitePoset) -> Self {
        let n = poset.len();
        let sets = (0..n).map(|x| poset.down_set(x)).collect();
        Self::from_parts(n, sets, (0..n).collect())
    }

    /// `{ [x, y] : x <= y }`.
    pub fn ruler(poset: &FinitePoset) -> Self {
        let n = poset.len();
        let mut sets = Vec::new();
        let mut max_of = Vec::new();
        for y in 0..n {
            let down = poset.down_set(y);
            for x in down.iter() {
                sets.push(poset.up_set(x).intersection(&down));
                max_of.push(y);
            }
        }
        Self::from_parts(n, sets, max_of)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    pub fn max_of(&self, index: usize) -> usize {
        self.max_of[index]
    }

    /// The sets whose maximum is `x`.
    pub fn sets_with_max(&self, x: usize) -> impl Iterator<Item = &BitSet> {
        self.by_max[x].iter().map(move |&i| &self.sets[i])
    }

    /// Elements that are the maximum of some set.
    pub fn maxima(&self) -> BitSet {
        BitSet::from_elements(self.universe, self.max_of.iter().copied())
    }

    /// Image of the family under an element bijection.
    pub fn mapped(&self, target: &FinitePoset, map: &[usize]) -> Result<TurningFamily> {
        let sets = self
            .sets
            .iter()
            .map(|s| BitSet::from_elements(target.len(), s.iter().map(|x| map[x])))
            .collect();
        TurningFamily::new(target, sets)
    }

    fn set_collection(&self) -> BTreeSet<&BitSet> {
        self.sets.iter().collect()
    }
}

/// All options of `position`: one per turning set whose maximum is in it.
pub fn moves(family: &TurningFamily, position: &Position) -> Vec<Position> {
    position
        .iter()
        .flat_map(|x| family.sets_with_max(x))
        .map(|t| position.symmetric_difference(t))
        .collect()
}

/// `F(P) = sum of 2^tau(x)` over `x` in `P`; strictly decreases along moves.
pub fn potential(tau: &LinearExtension, position: &Position) -> BigUint {
    position.iter().fold(BigUint::zero(), |acc, x| {
        acc + (BigUint::one() << tau.tau[x])
    })
}

/// Grundy values of single elements for one `(poset, family)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundyTable {
    values: Vec<Nimber>,
}

impl GrundyTable {
    pub fn values(&self) -> &[Nimber] {
        &self.values
    }

    pub fn get(&self, x: usize) -> Nimber {
        self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Nim-sum of the element values in `position`.
    pub fn position(&self, position: &Position) -> Nimber {
        grundy_position(self, position)
    }
}

pub fn grundy_position(table: &GrundyTable, position: &Position) -> Nimber {
    nim_sum(position.iter().map(|x| table.values[x]))
}

/// Per-element Grundy values, evaluated along a linear extension so every
/// element below `x` is known before `x`. Elements that are nobody's maximum
/// get `mex {} = 0`.
pub fn solve_elementwise(poset: &FinitePoset, family: &TurningFamily) -> GrundyTable {
    assert_eq!(poset.len(), family.universe());
    let mut values = vec![Nimber::ZERO; poset.len()];
    for &x in &poset.linear_extension().order {
        let options: Vec<Nimber> = family
            .sets_with_max(x)
            .map(|t| nim_sum(t.iter().filter(|&u| u != x).map(|u| values[u])))
            .collect();
        values[x] = mex(options);
    }
    GrundyTable { values }
}

/// The product family `{ T1 x T2 }` on `p1 x p2`; `(a, b)` has id `a * |p2| + b`.
pub fn product_family(
    p1: &FinitePoset,
    f1: &TurningFamily,
    p2: &FinitePoset,
    f2: &TurningFamily,
) -> (FinitePoset, TurningFamily) {
    let poset = p1.product(p2);
    let (n, n2) = (poset.len(), p2.len());
    let mut sets = Vec::with_capacity(f1.len() * f2.len());
    let mut max_of = Vec::with_capacity(f1.len() * f2.len());
    for (i, t1) in f1.sets().iter().enumerate() {
        for (j, t2) in f2.sets().iter().enumerate() {
            let elems = t1.iter().flat_map(|a| t2.iter().map(move |b| a * n2 + b));
            sets.push(BitSet::from_elements(n, elems));
            max_of.push(f1.max_of(i) * n2 + f2.max_of(j));
        }
    }
    (poset, TurningFamily::from_parts(n, sets, max_of))
}

/// Checks that `map` is an order isomorphism carrying `f1` onto `f2`, and that
/// the Grundy value of every `x` equals that of `map(x)`.
pub fn grundy_respects_isomorphism(
    p1: &FinitePoset,
    f1: &TurningFamily,
    p2: &FinitePoset,
    f2: &TurningFamily,
    map: &[usize],
) -> Result<()> {
    if !is_order_isomorphism(p1, p2, map) {
        return Err(Error::NotAnIsomorphism("not an order isomorphism".into()));
    }
    let image = f1.mapped(p2, map)?;
    if image.set_collection() != f2.set_collection() {
        return Err(Error::NotAnIsomorphism("families do not correspond".into()));
    }
    let (g1, g2) = (solve_elementwise(p1, f1), solve_elementwise(p2, f2));
    for (x, &m) in map.iter().enumerate() {
        if g1.get(x) != g2.get(m) {
            return Err(Error::GrundyMismatch {
                element: x,
                left: g1.get(x).get(),
                right: g2.get(m).get(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nimber::nim_mul;
    use crate::zoo::{chain, divisor_poset};

    fn values(t: &GrundyTable) -> Vec<u64> {
        t.values().iter().map(|v| v.get()).collect()
    }

    #[test]
    fn family_sizes() {
        let c2 = chain(2).unwrap();
        let ruler = TurningFamily::ruler(&c2);
        assert_eq!(ruler.len(), 3);
        let mut listed: Vec<Vec<usize>> = ruler.sets().iter().map(|s| s.iter().collect()).collect();
        listed.sort();
        assert_eq!(listed, vec![vec![0], vec![0, 1], vec![1]]);
        for n in 1..8 {
            let c = chain(n).unwrap();
            assert_eq!(TurningFamily::turning_turtles(&c).len(), n * (n + 1) / 2);
            assert_eq!(TurningFamily::order_ideals(&c).len(), n);
        }
        let d = divisor_poset(60).unwrap();
        assert_eq!(TurningFamily::order_ideals(&d.poset).len(), 12);
    }

    #[test]
    fn sharp_condition() {
        let d = divisor_poset(12).unwrap();
        let p = &d.poset;
        for kind in [
            FamilyKind::TurningTurtles,
            FamilyKind::OrderIdeal,
            FamilyKind::Ruler,
        ] {
            let f = kind.build(p);
            assert!(check_sharp(p, f.sets()).is_ok());
        }
        // {2, 3} is an antichain.
        let bad = vec![
            BitSet::from_elements(6, [0]),
            BitSet::from_elements(6, [1, 2]),
        ];
        assert_eq!(
            check_sharp(p, &bad),
            Err(Error::SharpViolation { index: 1 })
        );
        assert!(TurningFamily::new(p, bad).is_err());
        let c = chain(3).unwrap();
        let (prod, fam) =
            product_family(&c, &TurningFamily::ruler(&c), p, &TurningFamily::ruler(p));
        let maxima = check_sharp(&prod, fam.sets()).unwrap();
        for (i, m) in maxima.iter().enumerate() {
            assert_eq!(*m, fam.max_of(i));
        }
    }

    #[test]
    fn move_generation() {
        let c = chain(2).unwrap();
        let ruler = TurningFamily::ruler(&c);
        let p = BitSet::from_elements(2, [1]);
        let mut opts: Vec<Vec<usize>> = moves(&ruler, &p)
            .iter()
            .map(|o| o.iter().collect())
            .collect();
        opts.sort();
        assert_eq!(opts, vec![vec![], vec![0]]);
        let ideal = TurningFamily::order_ideals(&c);
        assert!(moves(&ideal, &BitSet::new(2)).is_empty());
        // Elements outside D: a family whose only set has maximum 1.
        let f = TurningFamily::new(&c, vec![BitSet::from_elements(2, [0, 1])]).unwrap();
        assert!(moves(&f, &BitSet::from_elements(2, [0])).is_empty());
        assert_eq!(solve_elementwise(&c, &f).get(0), Nimber(0));
    }

    #[test]
    fn potential_values() {
        let c = chain(2).unwrap();
        let tau = c.linear_extension();
        assert_eq!(potential(&tau, &BitSet::new(2)), BigUint::zero());
        assert_eq!(
            potential(&tau, &BitSet::from_elements(2, [0, 1])),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn chain_solutions() {
        let c1 = chain(1).unwrap();
        assert_eq!(
            values(&solve_elementwise(&c1, &TurningFamily::ruler(&c1))),
            vec![1]
        );
        let c = chain(15).unwrap();
        let g = solve_elementwise(&c, &TurningFamily::ruler(&c));
        assert_eq!(
            values(&g),
            vec![1, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1]
        );
        let oi = solve_elementwise(&c, &TurningFamily::order_ideals(&c));
        assert_eq!(oi.get(0), Nimber(1));
        assert!((1..15).all(|x| oi.get(x) == Nimber(0)));
        let c3 = chain(3).unwrap();
        let g3 = solve_elementwise(&c3, &TurningFamily::ruler(&c3));
        assert_eq!(g3.position(&BitSet::full(3)), Nimber(2));
        assert_eq!(g3.position(&BitSet::new(3)), Nimber(0));
        assert_eq!(g3.position(&BitSet::from_elements(3, [1])), Nimber(2));
    }

    #[test]
    fn product_theorem_small() {
        let (c3, c2) = (chain(3).unwrap(), chain(2).unwrap());
        let (f3, f2) = (TurningFamily::ruler(&c3), TurningFamily::ruler(&c2));
        let (prod, fam) = product_family(&c3, &f3, &c2, &f2);
        let (g3, g2, g) = (
            solve_elementwise(&c3, &f3),
            solve_elementwise(&c2, &f2),
            solve_elementwise(&prod, &fam),
        );
        for a in 0..3 {
            for b in 0..2 {
                assert_eq!(g.get(a * 2 + b), nim_mul(g3.get(a), g2.get(b)));
            }
        }
        // Product with the one-element ruler reproduces the factor.
        let c1 = chain(1).unwrap();
        let (p1, f1) = product_family(&c3, &f3, &c1, &TurningFamily::ruler(&c1));
        assert_eq!(solve_elementwise(&p1, &f1), g3);
    }

    #[test]
    fn isomorphism_check() {
        let d = divisor_poset(12).unwrap();
        let f = TurningFamily::ruler(&d.poset);
        let id: Vec<usize> = (0..6).collect();
        assert!(grundy_respects_isomorphism(&d.poset, &f, &d.poset, &f, &id).is_ok());
        let (c3, c2) = (chain(3).unwrap(), chain(2).unwrap());
        let (prod, fam) = product_family(
            &c3,
            &TurningFamily::ruler(&c3),
            &c2,
            &TurningFamily::ruler(&c2),
        );
        let map: Vec<usize> = (0..6)
            .map(|k| {
                d.index_of(2u64.pow(k as u32 / 2) * 3u64.pow(k as u32 % 2))
                    .unwrap()
            })
            .collect();
        assert!(grundy_respects_isomorphism(&prod, &fam, &d.poset, &f, &map).is_ok());
        // In D_6 swapping 2 and 3 is an automorphism; in D_12 it is not.
        let d6 = divisor_poset(6).unwrap();
        let f6 = TurningFamily::ruler(&d6.poset);
        assert!(grundy_respects_isomorphism(&d6.poset, &f6, &d6.poset, &f6, &[0, 2, 1, 3]).is_ok());
        let mut swap = id.clone();
        swap.swap(1, 2);
        assert!(grundy_respects_isomorphism(&d.poset, &f, &d.poset, &f, &swap).is_err());
        let mut bad = id.clone();
        bad.swap(0, 5);
        assert!(grundy_respects_isomorphism(&d.poset, &f, &d.poset, &f, &bad).is_err());
        // The same map but mismatched families.
        let oi = TurningFamily::order_ideals(&d.poset);
        assert!(grundy_respects_isomorphism(&d.poset, &f, &d.poset, &oi, &id).is_err());
    }

    #[test]
    fn family_kind_parsing() {
        assert_eq!("ruler".parse::<FamilyKind>().unwrap(), FamilyKind::Ruler);
        assert_eq!(
            "tt".parse::<FamilyKind>().unwrap(),
            FamilyKind::TurningTurtles
        );
        assert_eq!(
            "ideal".parse::<FamilyKind>().unwrap(),
            FamilyKind::OrderIdeal
        );
        assert!("foo".parse::<FamilyKind>().is_err());
    }
}
