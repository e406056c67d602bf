//! Karp–Rabin fingerprints and AVL-balanced grammars that answer substring
//! fingerprint queries in O(log n).
//!
//! ```
//! use lzdmw_avl::{AvlGrammar, HashConfig};
//!
//! let cfg = HashConfig::seeded(7);
//! let mut g = AvlGrammar::from_symbols(cfg, &[1, 2, 3]);
//! g.append_copy(1, 3).unwrap();
//! assert_eq!(g.extract(0, 5).unwrap(), vec![1, 2, 3, 2, 3]);
//! assert_eq!(g.substring_fp(3, 5).unwrap(), cfg.of(&[2, 3]));
//! ```

mod error;
pub mod fingerprint;
pub mod grammar;

pub use error::AvlError;
pub use fingerprint::{fp_concat, Fingerprint, HashConfig, MERSENNE_61};
pub use grammar::{AvlGrammar, Node, NodeId};
