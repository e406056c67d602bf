//! Brute-force LZD and LZMW parsers.
//!
//! These are the correctness oracle for every other parser: the dictionary
//! is a plain list of text intervals and the longest match is found by
//! comparing the text against every entry that starts with the right symbol.

use std::collections::HashMap;

use crate::model::{LzdPhrase, LzmwPhrase, Parsing, PhrasePart, Symbol, Text};

/// What a dictionary entry stands for in the output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EntryLabel {
    /// 1-based LZD phrase index.
    Phrase(usize),
    /// 1-based `j` of an LZMW pair `p_j p_{j+1}`.
    Pair(usize),
}

/// Longest-prefix dictionary over intervals of one text.
pub(crate) struct BruteDictionary<'a> {
    text: &'a [Symbol],
    by_first: HashMap<Symbol, Vec<(usize, usize, EntryLabel)>>,
}

impl<'a> BruteDictionary<'a> {
    pub(crate) fn new(text: &'a [Symbol]) -> Self {
        BruteDictionary {
            text,
            by_first: HashMap::new(),
        }
    }

    /// Adds `text[start..start + len]`.
    pub(crate) fn insert(&mut self, start: usize, len: usize, label: EntryLabel) {
        debug_assert!(len > 0 && start + len <= self.text.len());
        self.by_first
            .entry(self.text[start])
            .or_default()
            .push((start, len, label));
    }

    /// Longest entry that is a prefix of `text[pos..]`; ties go to the entry
    /// inserted first. `None` means only the letter `text[pos]` matches.
    pub(crate) fn longest_entry(&self, pos: usize) -> Option<(usize, EntryLabel)> {
        let rest = &self.text[pos..];
        let bucket = self.by_first.get(rest.first()?)?;
        let mut best: Option<(usize, EntryLabel)> = None;
        for &(start, len, label) in bucket {
            if len > rest.len() || best.is_some_and(|(l, _)| l >= len) {
                continue;
            }
            if self.text[start..start + len] == rest[..len] {
                best = Some((len, label));
            }
        }
        best
    }

    /// Length of the longest dictionary match at `pos`, counting the current
    /// letter as a length-1 match.
    pub(crate) fn longest_len(&self, pos: usize) -> usize {
        self.longest_entry(pos).map_or(1, |(l, _)| l.max(1))
    }
}

fn lzd_part(dict: &BruteDictionary<'_>, text: &[Symbol], pos: usize) -> (usize, PhrasePart) {
    match dict.longest_entry(pos) {
        Some((len, EntryLabel::Phrase(j))) if len > 1 => (len, PhrasePart::Phrase(j)),
        _ => (1, PhrasePart::Literal(text[pos])),
    }
}

/// LZD parsing by exhaustive longest-match search.
///
/// No end sentinel is added: if the input ends right after the first part of
/// a phrase, that phrase has a single part.
pub fn lzd_parse_reference(s: &Text) -> Parsing {
    let text = s.symbols();
    let n = text.len();
    let mut dict = BruteDictionary::new(text);
    let mut phrases = Vec::new();
    let mut pos = 0;
    while pos < n {
        let start = pos;
        let (l1, first) = lzd_part(&dict, text, pos);
        pos += l1;
        if pos == n {
            phrases.push(LzdPhrase::single(first));
            break;
        }
        let (l2, second) = lzd_part(&dict, text, pos);
        pos += l2;
        phrases.push(LzdPhrase::pair(first, second));
        dict.insert(start, pos - start, EntryLabel::Phrase(phrases.len()));
    }
    Parsing::lzd(phrases, n)
}

/// LZMW parsing by exhaustive longest-match search over the adjacent-pair
/// dictionary.
pub fn lzmw_parse_reference(s: &Text) -> Parsing {
    let text = s.symbols();
    let n = text.len();
    let mut dict = BruteDictionary::new(text);
    let mut phrases = Vec::new();
    let mut prev_start: Option<usize> = None;
    let mut pos = 0;
    while pos < n {
        let (len, phrase) = match dict.longest_entry(pos) {
            Some((len, EntryLabel::Pair(j))) if len > 1 => (len, LzmwPhrase::Pair(j)),
            _ => (1, LzmwPhrase::Literal(text[pos])),
        };
        phrases.push(phrase);
        if let Some(ps) = prev_start {
            // p_{i-1} p_i becomes usable from phrase i+1 on.
            dict.insert(ps, pos + len - ps, EntryLabel::Pair(phrases.len() - 1));
        }
        prev_start = Some(pos);
        pos += len;
    }
    Parsing::lzmw(phrases, n)
}
