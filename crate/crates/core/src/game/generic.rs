//! Explicit finite game graphs and literal Grundy evaluation.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::nimber::{mex, Nimber};

use super::TurningFamily;

pub const DEFAULT_POSITION_CAP: usize = 1 << 20;

/// A finite impartial game given by its option lists. Positions are ids
/// `0..len`; a position with no options is an ending position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericGame {
    options: Vec<Vec<usize>>,
}

impl GenericGame {
    pub fn new(options: Vec<Vec<usize>>) -> Result<Self> {
        let n = options.len();
        for (position, opts) in options.iter().enumerate() {
            if let Some(&option) = opts.iter().find(|&&o| o >= n) {
                return Err(Error::BadOption { position, option });
            }
        }
        Ok(GenericGame { options })
    }

    /// The full position space `2^X` of a coin-turning game. Position ids are
    /// the bitmasks of the heads sets.
    pub fn from_coin_game(family: &TurningFamily, cap: usize) -> Result<Self> {
        let n = family.universe();
        let size = if n >= 64 { u128::MAX } else { 1u128 << n };
        if size > cap as u128 {
            return Err(Error::TooLarge {
                size,
                cap: cap as u128,
            });
        }
        let masks: Vec<Vec<u64>> = (0..n)
            .map(|x| {
                family
                    .sets_with_max(x)
                    .map(|t| t.to_mask().expect("at most 63 elements"))
                    .collect()
            })
            .collect();
        let options = (0..size as u64)
            .map(|p| {
                BitSet::from_mask(n, p)
                    .iter()
                    .flat_map(|x| masks[x].iter().map(move |&t| (p ^ t) as usize))
                    .collect()
            })
            .collect();
        Ok(GenericGame { options })
    }

    pub fn len(&self) -> usize {
        self.options.len()
    }

    pub fn is_empty(&self) -> bool {
        self.options.is_empty()
    }

    pub fn options(&self, position: usize) -> &[usize] {
        &self.options[position]
    }

    pub fn is_ending(&self, position: usize) -> bool {
        self.options[position].is_empty()
    }

    pub fn ending_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.is_ending(p)).collect()
    }

    /// Whether no play can revisit a position.
    pub fn is_acyclic(&self) -> bool {
        self.post_order(0..self.len()).is_ok()
    }

    /// Length of the longest play from every position.
    pub fn play_lengths(&self) -> Result<Vec<usize>> {
        let order = self.post_order(0..self.len())?;
        let mut len = vec![0usize; self.len()];
        for p in order {
            len[p] = self.options[p]
                .iter()
                .map(|&o| len[o] + 1)
                .max()
                .unwrap_or(0);
        }
        Ok(len)
    }

    /// Reachable positions from `roots`, each listed after all of its options.
    fn post_order(&self, roots: impl IntoIterator<Item = usize>) -> Result<Vec<usize>> {
        const NEW: u8 = 0;
        const OPEN: u8 = 1;
        const DONE: u8 = 2;
        let mut state = vec![NEW; self.len()];
        let mut order = Vec::new();
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in roots {
            if state[root] != NEW {
                continue;
            }
            state[root] = OPEN;
            stack.push((root, 0));
            while let Some(top) = stack.last_mut() {
                let (p, next) = *top;
                if let Some(&o) = self.options[p].get(next) {
                    top.1 += 1;
                    match state[o] {
                        NEW => {
                            state[o] = OPEN;
                            stack.push((o, 0));
                        }
                        OPEN => return Err(Error::CyclicGame(o)),
                        _ => {}
                    }
                } else {
                    state[p] = DONE;
                    order.push(p);
                    stack.pop();
                }
            }
        }
        Ok(order)
    }
}

/// `g(P) = mex { g(P') : P' an option of P }`, evaluated over the positions
/// reachable from `root` (at most `cap` of them).
pub fn brute_force_grundy(game: &GenericGame, root: usize, cap: usize) -> Result<Nimber> {
    if root >= game.len() {
        return Err(Error::BadOption {
            position: root,
            option: root,
        });
    }
    let order = game.post_order([root])?;
    if order.len() > cap {
        return Err(Error::TooLarge {
            size: order.len() as u128,
            cap: cap as u128,
        });
    }
    let mut g = vec![Nimber::ZERO; game.len()];
    for p in order {
        g[p] = mex(game.options(p).iter().map(|&o| g[o]));
    }
    Ok(g[root])
}

/// Brute-force Grundy values of every position.
pub fn brute_force_all(game: &GenericGame) -> Result<Vec<Nimber>> {
    let order = game.post_order(0..game.len())?;
    let mut g = vec![Nimber::ZERO; game.len()];
    for p in order {
        g[p] = mex(game.options(p).iter().map(|&o| g[o]));
    }
    Ok(g)
}

/// The sum `G1 + G2`: a move is made in exactly one component. Position
/// `(p1, p2)` has id `p1 * |G2| + p2`.
pub fn combined(g1: &GenericGame, g2: &GenericGame, cap: usize) -> Result<GenericGame> {
    let size = g1.len() as u128 * g2.len() as u128;
    if size > cap as u128 {
        return Err(Error::TooLarge {
            size,
            cap: cap as u128,
        });
    }
    let n2 = g2.len();
    let mut options = Vec::with_capacity(size as usize);
    for p1 in 0..g1.len() {
        for p2 in 0..n2 {
            let opts = g1
                .options(p1)
                .iter()
                .map(|&o1| o1 * n2 + p2)
                .chain(g2.options(p2).iter().map(|&o2| p1 * n2 + o2))
                .collect();
            options.push(opts);
        }
    }
    Ok(GenericGame { options })
}
