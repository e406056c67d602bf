//! Hard inputs for LZD and LZMW.
//!
//! * [`gen_lzmw_approx`] / [`gen_lzd_approx`]: strings over `{a,b,c,d}` whose
//!   parsings have Θ(k²) phrases although a grammar of size O(k) exists
//!   ([`small_grammar_lzmw`] / [`small_grammar_lzd`]).
//! * [`gen_lzd_slow`] / [`gen_lzmw_slow`]: strings of length Θ(k⁴) on which
//!   the naive trie parsers do Θ(k⁵) work.
//! * [`binary_reduce`]: re-encodes any text over `{0,1}` so that its parsing
//!   is preserved symbol for symbol.
//!
//! Letters `a, b, c, d` are symbols `0, 1, 2, 3`. In the slow families
//! `a_{i,j}` is `(i-1)k + (j-1)` and every separator is a fresh symbol
//! numbered from `k²` upwards.

mod approx;
mod binary;
mod slow;

use std::fmt;
use std::str::FromStr;

use lzdmw_core::Text;
use thiserror::Error;

pub use approx::{gen_lzd_approx, gen_lzmw_approx, small_grammar_lzd, small_grammar_lzmw};
pub use binary::{
    alpha_sequence, alpha_set, beta_block, beta_sequence, beta_set, binary_reduce, Morphism,
};
pub use slow::{gen_lzd_slow, gen_lzmw_slow, slow_layout, SlowLayout};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("k = {k} is invalid for {family}: {reason}")]
    BadK {
        k: usize,
        family: Family,
        reason: &'static str,
    },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("cannot reduce an empty text")]
    EmptyText,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    LzmwApprox,
    LzdApprox,
    LzdSlow,
    LzmwSlow,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::LzmwApprox,
        Family::LzdApprox,
        Family::LzdSlow,
        Family::LzmwSlow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::LzmwApprox => "lzmw-approx",
            Family::LzdApprox => "lzd-approx",
            Family::LzdSlow => "lzd-slow",
            Family::LzmwSlow => "lzmw-slow",
        }
    }

    pub fn min_k(self) -> usize {
        match self {
            Family::LzmwApprox | Family::LzdApprox => 4,
            Family::LzdSlow | Family::LzmwSlow => 8,
        }
    }

    /// The scheme the family is built against.
    pub fn scheme(self) -> lzdmw_core::Scheme {
        match self {
            Family::LzmwApprox | Family::LzmwSlow => lzdmw_core::Scheme::Lzmw,
            Family::LzdApprox | Family::LzdSlow => lzdmw_core::Scheme::Lzd,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub family: Family,
    pub k: usize,
}

impl GenParams {
    pub fn new(family: Family, k: usize) -> Result<Self, GenError> {
        check_k(family, k)?;
        Ok(GenParams { family, k })
    }

    pub fn generate(&self) -> Result<Text, GenError> {
        generate(self.family, self.k)
    }
}

pub(crate) fn check_k(family: Family, k: usize) -> Result<(), GenError> {
    let bad = |reason| GenError::BadK { k, family, reason };
    if !k.is_power_of_two() {
        return Err(bad("not a power of two"));
    }
    if k < family.min_k() {
        return Err(bad("too small"));
    }
    if matches!(family, Family::LzdSlow | Family::LzmwSlow) && k > 1 << 10 {
        return Err(bad("too large"));
    }
    Ok(())
}

pub fn generate(family: Family, k: usize) -> Result<Text, GenError> {
    match family {
        Family::LzmwApprox => gen_lzmw_approx(k),
        Family::LzdApprox => gen_lzd_approx(k),
        Family::LzdSlow => gen_lzd_slow(k),
        Family::LzmwSlow => gen_lzmw_slow(k),
    }
}
