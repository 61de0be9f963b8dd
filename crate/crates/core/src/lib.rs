//! Sprague-Grundy functions of coin-turning games on finite posets.
//!
//! The crate is organised bottom-up:
//!
//! * [`nimber`]: mex, nim-addition and nim-multiplication, with slow
//!   inductive oracles used by the test-suites.
//! * [`poset`]: a finite poset kernel (covers, intervals, ideals, ranks,
//!   linear extensions, products).
//! * [`zoo`]: chains, divisor posets, subspace lattices over finite fields,
//!   set-partition lattices and the ASM poset.
//! * [`game`]: turning-set families, positions, the elementwise Grundy
//!   solver and a brute-force solver over explicit game graphs.
//! * [`closed_forms`]: closed-form Grundy functions and the recurrences
//!   behind them.
//! * [`partition`]: integer partitions under refinement and the `h(n)`
//!   recurrence for rulers on set-partition lattices.
//! * [`verify`]: self-check suites used by the command line tool.

pub mod bitset;
pub mod closed_forms;
mod error;
pub mod game;
pub mod nimber;
pub mod partition;
pub mod poset;
pub mod verify;
pub mod zoo;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use game::{GenericGame, GrundyTable, TurningFamily};
pub use nimber::Nimber;
pub use partition::IntegerPartition;
pub use poset::{FinitePoset, Interval, LinearExtension, RankFunction};
