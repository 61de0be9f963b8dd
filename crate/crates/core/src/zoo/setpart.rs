use super::{check_size, DEFAULT_MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

pub const MAX_SET_PARTITION_N: usize = 9;

/// A set partition of `{1..n}` as a restricted growth string: `rgs[i]` is the
/// block index of element `i + 1`, with blocks numbered by first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    pub fn from_rgs(rgs: Vec<u8>) -> Result<Self> {
        let mut max: i32 = -1;
        for &b in &rgs {
            if b as i32 > max + 1 {
                return Err(Error::InvalidPartition(format!(
                    "{rgs:?} is not a restricted growth string"
                )));
            }
            max = max.max(b as i32);
        }
        Ok(SetPartition { rgs })
    }

    /// From blocks of 1-based elements covering `1..=n` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e == 0 || e > n || owner[e - 1] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("bad element {e}")));
                }
                owner[e - 1] = b;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::InvalidPartition(
                "blocks do not cover the ground set".into(),
            ));
        }
        // Renumber blocks by first appearance.
        let mut renum = vec![u8::MAX; blocks.len()];
        let mut next = 0u8;
        let rgs = owner
            .iter()
            .map(|&b| {
                if renum[b] == u8::MAX {
                    renum[b] = next;
                    next += 1;
                }
                renum[b]
            })
            .collect();
        Ok(SetPartition { rgs })
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn ground_size(&self) -> usize {
        self.rgs.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Blocks of 1-based elements, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b as usize].push(i + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &b in &self.rgs {
            sizes[b as usize] += 1;
        }
        sizes
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.rgs.len() != other.rgs.len() {
            return false;
        }
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (&a, &b) in self.rgs.iter().zip(&other.rgs) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// `n - |blocks|`.
    pub fn rank(&self) -> usize {
        self.rgs.len() - self.num_blocks()
    }

    pub fn label(&self) -> String {
        self.blocks()
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|e| e.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect()
    }
}

/// All restricted growth strings of length `n` in lexicographic order.
pub fn all_set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(SetPartition { rgs: vec![] });
        return out;
    }
    let mut rgs = vec![0u8; n];
    let mut maxes = vec![0u8; n];
    loop {
        out.push(SetPartition { rgs: rgs.clone() });
        // Increment the rightmost position that can still grow.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if rgs[i] <= maxes[i - 1] {
                rgs[i] += 1;
                maxes[i] = maxes[i - 1].max(rgs[i]);
                for j in i + 1..n {
                    rgs[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

pub fn bell_number(n: usize) -> u128 {
    // Bell triangle.
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    row[0]
}

/// The lattice `Pi_n` ordered by refinement: singletons at the bottom, the
/// one-block partition at the top.
#[derive(Debug, Clone)]
pub struct SetPartitionPoset {
    pub n: usize,
    pub partitions: Vec<SetPartition>,
    pub poset: FinitePoset,
}

impl SetPartitionPoset {
    pub fn index_of(&self, p: &SetPartition) -> Option<usize> {
        self.partitions.binary_search(p).ok()
    }
}

pub fn set_partition_poset(n: usize) -> Result<SetPartitionPoset> {
    set_partition_poset_capped(n, DEFAULT_MAX_ELEMENTS)
}

pub fn set_partition_poset_capped(n: usize, cap: usize) -> Result<SetPartitionPoset> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    if n > MAX_SET_PARTITION_N {
        return Err(Error::TooLarge {
            size: bell_number(n),
            cap: bell_number(MAX_SET_PARTITION_N),
        });
    }
    check_size(bell_number(n), cap)?;
    let partitions = all_set_partitions(n);
    let labels = partitions.iter().map(SetPartition::label).collect();
    let parts = partitions.clone();
    let poset = FinitePoset::from_relation(
        partitions.len(),
        move |a, b| parts[a].refines(&parts[b]),
        labels,
    )?;
    Ok(SetPartitionPoset {
        n,
        partitions,
        poset,
    })
}
