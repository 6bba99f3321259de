//! Rational `(a,b)`-noncrossing partitions for every coprime pair.
//!
//! Dyck paths in an `a x b` box map to labeled pairs `(P,Q)` of noncrossing
//! partitions of `[b-1]` through lasers. The crate covers that map and its
//! inverse, rotation and reflection, a membership test for arbitrary pairs,
//! rotation-fixed points and cyclic sieving, and noncrossing parking
//! functions with their `S_a x Z_{b-1}` character.
//!
//! ```
//! use ratnc::{CoprimePair, DyckPath, LabeledPair};
//!
//! let pair = CoprimePair::new(5, 3)?;
//! let d = DyckPath::new(pair, vec![3, 1, 1])?;
//! let pq = LabeledPair::from_path(&d);
//! assert_eq!(pq.to_path()?.runs(), d.runs());
//! # Ok::<(), ratnc::Error>(())
//! ```

pub mod arith;
pub mod config12;
pub mod error;
pub mod membership;
pub mod parking;
pub mod partitions;
pub mod paths;
pub mod qpoly;
pub mod sieving;

pub use config12::Config12;
pub use error::{Error, Result};
pub use membership::{is_member, BlockRef, Verdict};
pub use parking::{NCParkingFunction, Permutation, RationalSlopePF};
pub use partitions::{Block, LabeledPair, SetPartition, Side};
pub use paths::{CoprimePair, DyckPath, Laser, LatticePath, WeightedPath};
pub use qpoly::{CycValue, QPoly};
pub use sieving::DModSequences;
