//! LZD and LZMW parsing: the shared data model, brute-force reference
//! parsers, grammar conversion, verification and the naive compacted-trie
//! parsers.
//!
//! ```
//! use lzdmw_core::{lzd_parse_reference, Text};
//!
//! let s = Text::from_bytes(b"abbaababaaba$");
//! assert_eq!(lzd_parse_reference(&s).len(), 5);
//! ```

pub mod error;
pub mod format;
pub mod grammar;
pub mod model;
pub mod naive;
pub mod reference;
pub mod verify;

pub use error::{FormatError, ModelError};
pub use grammar::{expand_grammar, parsing_to_grammar, GSym, Grammar};
pub use model::{LzdPhrase, LzmwPhrase, Parsing, PhrasePart, Phrases, Scheme, Symbol, Text};
pub use naive::{
    lzd_parse_naive, lzmw_parse_naive, parse_naive, DictEntry, NaiveParser, StepStats,
};
pub use reference::{lzd_parse_reference, lzmw_parse_reference};
pub use verify::{
    check_lzd_distinct, check_lzmw_pair_distinct, expansion_matches, verify_parsing, PhraseExpander,
};

/// Reference parse under either scheme.
pub fn parse_reference(s: &Text, scheme: Scheme) -> Parsing {
    match scheme {
        Scheme::Lzd => lzd_parse_reference(s),
        Scheme::Lzmw => lzmw_parse_reference(s),
    }
}
