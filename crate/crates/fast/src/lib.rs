//! Streaming LZD and LZMW parsing in O(n + z log² n) expected time and
//! O(z log n) space.
//!
//! The parsed prefix is kept as an AVL-balanced grammar with Karp–Rabin
//! fingerprints, the dictionary as a z-fast trie whose nodes point into the
//! grammar, and a marked-ancestor structure picks the longest dictionary
//! string on a trie path. The Monte-Carlo core can go wrong on a
//! fingerprint collision; [`parse_las_vegas`] verifies and retries.
//!
//! ```
//! use lzdmw_core::{parse_reference, Scheme, Text};
//! use lzdmw_fast::{parse_las_vegas, LasVegas, SliceSource};
//!
//! let s = Text::from_bytes(b"abbaababaaba$");
//! let run = parse_las_vegas(|| Ok(SliceSource::new(s.symbols())), LasVegas::new(Scheme::Lzd, 1)).unwrap();
//! assert_eq!(run.parsing, parse_reference(&s, Scheme::Lzd));
//! ```

pub mod engine;
mod error;
pub mod marked;
pub mod reader;
pub mod ztrie;

pub use engine::{
    lzd_parse_fast, lzmw_parse_fast, parse_fast, parse_las_vegas, verify_against, FastRun,
    FastStats, LasVegas, LasVegasRun,
};
pub use error::FastError;
pub use lzdmw_avl::{HashConfig, MERSENNE_61};
pub use marked::MarkedAncestors;
pub use reader::{
    block_len_for, BlockReader, ByteSource, CountingSource, SliceSource, SymbolSource,
};
pub use ztrie::{Locus, Query, ZTrie};
