//! Finite posets on element ids `0..n`.
//!
//! Small posets (up to [`DENSE_LIMIT`] elements) store the full `<=` relation
//! as a bit matrix of up-sets. Larger posets keep a comparison callback and
//! answer queries by scanning.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Largest poset stored as an explicit relation matrix.
pub const DENSE_LIMIT: usize = 4096;
/// Largest poset whose axioms are checked on construction.
pub const DEFAULT_VALIDATION_BOUND: usize = 512;

type Comparator = Arc<dyn Fn(usize, usize) -> bool + Send + Sync>;

#[derive(Clone)]
enum Relation {
    /// `up[i]` is the set `{j : i <= j}`, `down[i]` the set `{j : j <= i}`.
    Dense {
        up: Vec<BitSet>,
        down: Vec<BitSet>,
    },
    Callback(Comparator),
}

/// A finite partially ordered set. Immutable once built.
#[derive(Clone)]
pub struct FinitePoset {
    n: usize,
    relation: Relation,
    labels: Vec<String>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("n", &self.n)
            .field("dense", &self.is_dense())
            .finish()
    }
}

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub members: BitSet,
}

/// Rank of every element: 0 on minimal elements, +1 along every cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    pub rank: Vec<usize>,
}

impl RankFunction {
    pub fn of(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }
}

/// An order-preserving bijection onto `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearExtension {
    /// `order[k]` is the element placed at position `k`.
    pub order: Vec<usize>,
    /// `tau[x]` is the position of element `x`.
    pub tau: Vec<usize>,
}

/// JSON form of a poset: `<=` is the reflexive-transitive closure of `covers`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl FinitePoset {
    /// Builds a poset from a `<=` predicate, validating the axioms when
    /// `n <= DEFAULT_VALIDATION_BOUND`.
    pub fn from_relation<F>(n: usize, leq: F, labels: Vec<String>) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool + Send + Sync + 'static,
    {
        Self::from_relation_checked(n, leq, labels, DEFAULT_VALIDATION_BOUND)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn from_relation_checked<F>(
        n: usize,
        leq: F,
        labels: Vec<String>,
        validation_bound: usize,
    ) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool + Send + Sync + 'static,
    {
        let labels = Self::fill_labels(n, labels)?;
        let relation = if n <= DENSE_LIMIT {
            let mut up = vec![BitSet::new(n); n];
            let mut down = vec![BitSet::new(n); n];
            for i in 0..n {
                for j in 0..n {
                    if leq(i, j) {
                        up[i].insert(j);
                        down[j].insert(i);
                    }
                }
            }
            Relation::Dense { up, down }
        } else {
            Relation::Callback(Arc::new(leq))
        };
        let poset = FinitePoset {
            n,
            relation,
            labels,
        };
        if n <= validation_bound {
            poset.validate()?;
        }
        Ok(poset)
    }

    /// Builds a poset as the reflexive-transitive closure of cover pairs
    /// `(i, j)` meaning `i < j`.
    pub fn from_covers(n: usize, covers: &[[usize; 2]], labels: Vec<String>) -> Result<Self> {
        let labels = Self::fill_labels(n, labels)?;
        if n > DENSE_LIMIT {
            return Err(Error::TooLarge {
                size: n as u128,
                cap: DENSE_LIMIT as u128,
            });
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &[i, j] in covers {
            if i >= n {
                return Err(Error::NoSuchElement(i));
            }
            if j >= n {
                return Err(Error::NoSuchElement(j));
            }
            if i == j {
                return Err(Error::InvalidPoset(format!("self-cover at {i}")));
            }
            succ[i].push(j);
            indeg[j] += 1;
        }
        // Topological order; a leftover element means a cycle.
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(i) = queue.pop_front() {
            topo.push(i);
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidPoset("cover relation has a cycle".into()));
        }
        let mut up = vec![BitSet::new(n); n];
        for &i in topo.iter().rev() {
            up[i].insert(i);
            for &j in &succ[i] {
                let uj = up[j].clone();
                up[i].union_with(&uj);
            }
        }
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row {
                down[j].insert(i);
            }
        }
        Ok(FinitePoset {
            n,
            relation: Relation::Dense { up, down },
            labels,
        })
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        Self::from_covers(file.n, &file.covers, file.labels.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            n: self.n,
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: self.labels.clone(),
        }
    }

    fn fill_labels(n: usize, labels: Vec<String>) -> Result<Vec<String>> {
        if labels.is_empty() {
            return Ok((0..n).map(|i| i.to_string()).collect());
        }
        if labels.len() != n {
            return Err(Error::InvalidPoset(format!(
                "{} labels for {} elements",
                labels.len(),
                n
            )));
        }
        Ok(labels)
    }

    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if !self.leq(i, i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {i}")));
            }
        }
        for i in 0..self.n {
            let up_i = self.up_set(i);
            for j in up_i.iter() {
                if j != i && self.leq(j, i) {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric at ({i}, {j})"
                    )));
                }
                if !self.up_set(j).is_subset(&up_i) {
                    return Err(Error::InvalidPoset(format!(
                        "not transitive through ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.relation, Relation::Dense { .. })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        match &self.relation {
            Relation::Dense { up, .. } => up[x].contains(y),
            Relation::Callback(f) => f(x, y),
        }
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::NoSuchElement(x))
        }
    }

    /// `{t : x <= t}`.
    pub fn up_set(&self, x: usize) -> BitSet {
        match &self.relation {
            Relation::Dense { up, .. } => up[x].clone(),
            Relation::Callback(f) => {
                BitSet::from_elements(self.n, (0..self.n).filter(|&t| f(x, t)))
            }
        }
    }

    /// `{t : t <= x}`, the principal order ideal generated by `x`.
    pub fn down_set(&self, x: usize) -> BitSet {
        match &self.relation {
            Relation::Dense { down, .. } => down[x].clone(),
            Relation::Callback(f) => {
                BitSet::from_elements(self.n, (0..self.n).filter(|&t| f(t, x)))
            }
        }
    }

    pub fn principal_ideal(&self, x: usize) -> Result<BitSet> {
        self.check_element(x)?;
        Ok(self.down_set(x))
    }

    pub fn principal_filter(&self, x: usize) -> Result<BitSet> {
        self.check_element(x)?;
        Ok(self.up_set(x))
    }

    pub fn interval(&self, lo: usize, hi: usize) -> Result<Interval> {
        self.check_element(lo)?;
        self.check_element(hi)?;
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable { lo, hi });
        }
        let members = match &self.relation {
            Relation::Dense { up, down } => up[lo].intersection(&down[hi]),
            Relation::Callback(f) => {
                BitSet::from_elements(self.n, (0..self.n).filter(|&t| f(lo, t) && f(t, hi)))
            }
        };
        Ok(Interval { lo, hi, members })
    }

    /// All covering pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            out.extend(self.upper_covers(x).into_iter().map(|y| (x, y)));
        }
        out
    }

    /// Elements covering `x`, in increasing id order.
    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        if let Relation::Dense { up, down } = &self.relation {
            // y covers x iff [x, y] = {x, y}.
            return up[x]
                .iter()
                .filter(|&y| y != x && up[x].intersection(&down[y]).count() == 2)
                .collect();
        }
        let mut strict_up = self.up_set(x);
        strict_up.remove(x);
        let ups: Vec<usize> = strict_up.iter().collect();
        ups.iter()
            .copied()
            .filter(|&y| !ups.iter().any(|&u| u != y && self.leq(u, y)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| self.down_set(x).count() == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| self.up_set(x).count() == 1)
            .collect()
    }

    /// The unique global minimum, if any.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.n).find(|&m| self.up_set(m).count() == self.n)
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.n).find(|&m| self.down_set(m).count() == self.n)
    }

    /// Rank function by longest paths in the cover graph; fails unless every
    /// cover raises the rank by exactly one.
    pub fn rank_function(&self) -> Result<RankFunction> {
        let ext = self.linear_extension();
        let covers: Vec<Vec<usize>> = (0..self.n).map(|x| self.upper_covers(x)).collect();
        let mut rank = vec![0usize; self.n];
        for &x in &ext.order {
            for &y in &covers[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        for (x, ys) in covers.iter().enumerate() {
            if ys.iter().any(|&y| rank[y] != rank[x] + 1) {
                return Err(Error::NotGraded);
            }
        }
        Ok(RankFunction { rank })
    }

    /// Topological order with ties broken by smallest element id.
    pub fn linear_extension(&self) -> LinearExtension {
        let mut below: Vec<usize> = (0..self.n).map(|x| self.down_set(x).count() - 1).collect();
        let mut heap: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&x| below[x] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(x)) = heap.pop() {
            order.push(x);
            for y in self.up_set(x).iter() {
                if y != x {
                    below[y] -= 1;
                    if below[y] == 0 {
                        heap.push(Reverse(y));
                    }
                }
            }
        }
        let mut tau = vec![0; self.n];
        for (k, &x) in order.iter().enumerate() {
            tau[x] = k;
        }
        LinearExtension { order, tau }
    }

    /// Direct product with componentwise order; `(a, b)` has id `a * |q| + b`.
    pub fn product(&self, other: &FinitePoset) -> FinitePoset {
        let (n1, n2) = (self.n, other.n);
        let labels: Vec<String> = (0..n1 * n2)
            .map(|k| format!("({},{})", self.labels[k / n2], other.labels[k % n2]))
            .collect();
        let (p, q) = (self.clone(), other.clone());
        let leq = move |a: usize, b: usize| p.leq(a / n2, b / n2) && q.leq(a % n2, b % n2);
        // Componentwise orders are posets whenever the factors are.
        FinitePoset::from_relation_checked(n1 * n2, leq, labels, 0)
            .expect("product of valid posets")
    }

    /// The same order with different labels.
    pub fn relabeled(mut self, labels: Vec<String>) -> Result<Self> {
        self.labels = Self::fill_labels(self.n, labels)?;
        Ok(self)
    }

    /// The subposet induced on `elements` (in the given order).
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        let elems: Vec<usize> = elements.to_vec();
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        let p = self.clone();
        let e2 = elems.clone();
        FinitePoset::from_relation_checked(elems.len(), move |a, b| p.leq(e2[a], e2[b]), labels, 0)
            .expect("induced subposet")
    }
}

/// Whether `map` is a bijection `p -> q` with `x <= y  <=>  map(x) <= map(y)`.
pub fn is_order_isomorphism(p: &FinitePoset, q: &FinitePoset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut hit = vec![false; q.len()];
    for &m in map {
        if m >= q.len() || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == q.leq(map[x], map[y])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset {
        FinitePoset::from_relation(n, |a, b| a <= b, vec![]).unwrap()
    }

    fn antichain(n: usize) -> FinitePoset {
        FinitePoset::from_relation(n, |a, b| a == b, vec![]).unwrap()
    }

    fn divisors12() -> (FinitePoset, Vec<u64>) {
        let d = vec![1u64, 2, 3, 4, 6, 12];
        let d2 = d.clone();
        let p = FinitePoset::from_relation(6, move |a, b| d2[b] % d2[a] == 0, vec![]).unwrap();
        (p, d)
    }

    #[test]
    fn chain_covers() {
        assert_eq!(chain(3).covers(), vec![(0, 1), (1, 2)]);
        assert!(antichain(3).covers().is_empty());
    }

    #[test]
    fn d12_covers() {
        let (p, d) = divisors12();
        let covers: Vec<(u64, u64)> = p.covers().into_iter().map(|(a, b)| (d[a], d[b])).collect();
        assert_eq!(covers.len(), 7);
        assert!(covers.contains(&(4, 12)) && covers.contains(&(6, 12)));
        assert!(!covers.contains(&(2, 12)));
    }

    #[test]
    fn ideals_and_intervals() {
        let c = chain(4);
        assert_eq!(
            c.principal_ideal(2).unwrap().iter().collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert_eq!(
            c.principal_ideal(0).unwrap().iter().collect::<Vec<_>>(),
            vec![0]
        );
        let (p, d) = divisors12();
        let six = d.iter().position(|&v| v == 6).unwrap();
        let ideal: Vec<u64> = p
            .principal_ideal(six)
            .unwrap()
            .iter()
            .map(|i| d[i])
            .collect();
        assert_eq!(ideal, vec![1, 2, 3, 6]);
        let iv = p.interval(1, 5).unwrap();
        assert_eq!(
            iv.members.iter().map(|i| d[i]).collect::<Vec<_>>(),
            vec![2, 4, 6, 12]
        );
        assert_eq!(
            p.interval(3, 3).unwrap().members.iter().collect::<Vec<_>>(),
            vec![3]
        );
        assert_eq!(p.interval(2, 3), Err(Error::NotComparable { lo: 2, hi: 3 }));
        assert_eq!(
            c.interval(1, 3).unwrap().members.iter().collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
    }

    #[test]
    fn product_matches_d12() {
        let prod = chain(3).product(&chain(2));
        assert_eq!(prod.len(), 6);
        let (d12, d) = divisors12();
        // (a, b) -> 2^a 3^b
        let map: Vec<usize> = (0..6)
            .map(|k| {
                let v = 2u64.pow((k / 2) as u32) * 3u64.pow((k % 2) as u32);
                d.iter().position(|&x| x == v).unwrap()
            })
            .collect();
        assert!(is_order_isomorphism(&prod, &d12, &map));
        let single = chain(1);
        let p1 = d12.product(&single);
        assert!(is_order_isomorphism(&p1, &d12, &(0..6).collect::<Vec<_>>()));
    }

    #[test]
    fn ranks() {
        let c = chain(5);
        assert_eq!(c.rank_function().unwrap().rank, vec![0, 1, 2, 3, 4]);
        // 0 < 1 < 2 and 3 < 2: maximal chains of lengths 2 and 1.
        let p = FinitePoset::from_covers(4, &[[0, 1], [1, 2], [3, 2]], vec![]).unwrap();
        assert_eq!(p.rank_function(), Err(Error::NotGraded));
    }

    #[test]
    fn extensions_and_minimum() {
        let c = chain(4);
        assert_eq!(c.linear_extension().order, vec![0, 1, 2, 3]);
        assert_eq!(antichain(4).linear_extension().order, vec![0, 1, 2, 3]);
        let p = FinitePoset::from_covers(4, &[[3, 0], [2, 1]], vec![]).unwrap();
        let ext = p.linear_extension();
        assert_eq!(ext.order, vec![2, 1, 3, 0]);
        for x in 0..4 {
            for y in 0..4 {
                if p.lt(x, y) {
                    assert!(ext.tau[x] < ext.tau[y]);
                }
            }
        }
        assert_eq!(c.minimum(), Some(0));
        assert_eq!(antichain(2).minimum(), None);
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(FinitePoset::from_relation(
            3,
            |a, b| a == b || (a, b) == (0, 1) || (a, b) == (1, 2),
            vec![]
        )
        .is_err());
        assert!(FinitePoset::from_relation(2, |_, _| true, vec![]).is_err());
        assert!(FinitePoset::from_relation(2, |a, b| a < b, vec![]).is_err());
        assert!(FinitePoset::from_covers(2, &[[0, 1], [1, 0]], vec![]).is_err());
        assert!(FinitePoset::from_covers(2, &[[0, 2]], vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"n": 3, "covers": [[0,1],[0,2]], "labels": ["a","b","c"]}"#;
        let p = FinitePoset::from_json(text).unwrap();
        assert!(p.leq(0, 2) && !p.leq(1, 2));
        assert_eq!(p.label(1), "b");
        let back = FinitePoset::from_file(&p.to_file()).unwrap();
        assert!(is_order_isomorphism(&p, &back, &[0, 1, 2]));
    }

    #[test]
    fn callback_posets_answer_queries() {
        let n = DENSE_LIMIT + 10;
        let p = FinitePoset::from_relation(n, |a, b| a <= b, vec![]).unwrap();
        assert!(!p.is_dense());
        assert_eq!(p.minimum(), Some(0));
        assert_eq!(p.interval(5, 8).unwrap().members.count(), 4);
    }
}
