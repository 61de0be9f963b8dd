use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// A point `(x, y, z)` of the ASM poset `A_n`: non-negative with
/// `x + y + z <= n - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AsmElement {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// `(rank, z)` coordinates of an ASM element, with `0 <= s <= r <= n - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AsmProjection {
    pub r: usize,
    pub s: usize,
}

impl AsmElement {
    pub fn new(n: usize, x: usize, y: usize, z: usize) -> Result<Self> {
        let e = AsmElement { x, y, z };
        e.check(n)?;
        Ok(e)
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n >= 2 && self.x + self.y + self.z <= n - 2 {
            Ok(())
        } else {
            Err(Error::NotInAsm {
                n,
                x: self.x,
                y: self.y,
                z: self.z,
            })
        }
    }

    /// `x1 >= x2, y1 >= y2, z1 <= z2, x1+y1+z1 >= x2+y2+z2`.
    pub fn leq(&self, other: &AsmElement) -> bool {
        self.x >= other.x
            && self.y >= other.y
            && self.z <= other.z
            && self.x + self.y + self.z >= other.x + other.y + other.z
    }

    /// `n - 2 - (x + y)`.
    pub fn rank(&self, n: usize) -> usize {
        n - 2 - (self.x + self.y)
    }

    pub fn project(&self, n: usize) -> Result<AsmProjection> {
        self.check(n)?;
        Ok(AsmProjection {
            r: self.rank(n),
            s: self.z,
        })
    }

    /// Swaps `x` and `y`.
    pub fn xi(&self) -> AsmElement {
        AsmElement {
            x: self.y,
            y: self.x,
            z: self.z,
        }
    }

    /// Replaces `z` by `n - 2 - (x + y + z)`.
    pub fn eta(&self, n: usize) -> Result<AsmElement> {
        self.check(n)?;
        Ok(AsmElement {
            x: self.x,
            y: self.y,
            z: n - 2 - (self.x + self.y + self.z),
        })
    }
}

/// `pi(e) = (n - 2 - (x + y), z)`.
pub fn asm_pi(n: usize, e: AsmElement) -> Result<AsmProjection> {
    e.project(n)
}

pub fn asm_xi(n: usize, e: AsmElement) -> Result<AsmElement> {
    e.check(n)?;
    Ok(e.xi())
}

pub fn asm_eta(n: usize, e: AsmElement) -> Result<AsmElement> {
    e.eta(n)
}

/// The ASM poset `A_n` together with its coordinate decoding.
#[derive(Debug, Clone)]
pub struct AsmPoset {
    pub n: usize,
    pub elements: Vec<AsmElement>,
    index: HashMap<AsmElement, usize>,
    pub poset: FinitePoset,
}

impl AsmPoset {
    pub fn index_of(&self, e: &AsmElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn id(&self, x: usize, y: usize, z: usize) -> Result<usize> {
        self.index_of(&AsmElement { x, y, z })
            .ok_or(Error::NotInAsm { n: self.n, x, y, z })
    }

    /// The candidates `(x+1,y,z), (x,y+1,z), (x+1,y,z-1), (x,y+1,z-1)` that
    /// lie in `A_n`; these are exactly the elements covered by `e`.
    pub fn lower_cover_candidates(&self, e: &AsmElement) -> Vec<AsmElement> {
        let mut out = vec![
            AsmElement { x: e.x + 1, ..*e },
            AsmElement { y: e.y + 1, ..*e },
        ];
        if e.z > 0 {
            out.push(AsmElement {
                x: e.x + 1,
                z: e.z - 1,
                ..*e
            });
            out.push(AsmElement {
                y: e.y + 1,
                z: e.z - 1,
                ..*e
            });
        }
        out.retain(|c| self.index.contains_key(c));
        out
    }

    /// Applies a coordinate map to element ids.
    pub fn map_ids<F: Fn(&AsmElement) -> AsmElement>(&self, f: F) -> Vec<usize> {
        self.elements.iter().map(|e| self.index[&f(e)]).collect()
    }
}

/// Builds `A_n` for `n >= 2`; elements are listed in lexicographic `(x, y, z)`
/// order and labelled `(x,y,z)`.
pub fn asm_poset(n: usize) -> Result<AsmPoset> {
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
    super::check_size(elements.len() as u128, super::DEFAULT_MAX_ELEMENTS)?;
    let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let labels = elements
        .iter()
        .map(|e| format!("({},{},{})", e.x, e.y, e.z))
        .collect();
    let els = elements.clone();
    let poset =
        FinitePoset::from_relation(elements.len(), move |a, b| els[a].leq(&els[b]), labels)?;
    Ok(AsmPoset {
        n,
        elements,
        index,
        poset,
    })
}
