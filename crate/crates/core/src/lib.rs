//! Exact common transversal probabilities of finite groups.
//!
//! For subgroups `H, K` of equal index `n` in a finite group `G`,
//! `P_G(H, K)` is the probability that a uniformly random left transversal
//! of `H` is also a right transversal of `K`. It depends only on the
//! component sizes `t` of the coset intersection graph and equals the
//! product of `t!/t^t`. `tp(G)` is the minimum of `P_G(H, H)` over all
//! subgroups.
//!
//! The crate computes both exactly and carries two independent oracles (a
//! Ryser permanent of the weight matrix and brute-force transversal
//! enumeration) together with checkers for the bounds and classification
//! results that surround these quantities.
//!
//! ```
//! use tpgroup::group::{alternating_group, all_subgroups};
//! use tpgroup::tp::tp;
//! use tpgroup::rational::ratio;
//!
//! let a4 = alternating_group(4).unwrap();
//! assert_eq!(tp(&a4).unwrap().tp, ratio(2, 9));
//! assert_eq!(all_subgroups(&a4).unwrap().len(), 10);
//! ```

pub mod arith;
pub mod catalog;
pub mod coset_graph;
pub mod error;
pub mod exec;
pub mod group;
pub mod rational;
pub mod tp;
pub mod transversal;

pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{GroupTable, Subgroup};
pub use rational::BigRational;
