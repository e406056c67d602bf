//! Checking parsings against texts, and the structural distinctness
//! properties every LZD / LZMW parsing has.

use std::collections::{HashMap, HashSet};

use crate::error::ModelError;
use crate::model::{LzmwPhrase, Parsing, PhrasePart, Phrases, Symbol, Text};
use crate::reference::{BruteDictionary, EntryLabel};

enum Pending {
    Literal(Symbol),
    Phrase(usize),
}

/// Streams the symbols a parsing encodes using only a stack proportional to
/// the derivation depth; no part of the output is kept.
pub struct PhraseExpander<'a> {
    parsing: &'a Parsing,
    next_top: usize,
    stack: Vec<Pending>,
}

impl<'a> PhraseExpander<'a> {
    pub fn new(parsing: &'a Parsing) -> Result<Self, ModelError> {
        parsing.validate()?;
        Ok(PhraseExpander {
            parsing,
            next_top: 0,
            stack: Vec::new(),
        })
    }

    fn push_phrase(&mut self, idx0: usize) {
        match &self.parsing.phrases {
            Phrases::Lzd(ph) => {
                let p = ph[idx0];
                for part in [Some(p.first), p.second].into_iter().flatten().rev() {
                    self.stack.push(match part {
                        PhrasePart::Literal(c) => Pending::Literal(c),
                        PhrasePart::Phrase(j) => Pending::Phrase(j - 1),
                    });
                }
            }
            Phrases::Lzmw(ph) => match ph[idx0] {
                LzmwPhrase::Literal(c) => self.stack.push(Pending::Literal(c)),
                LzmwPhrase::Pair(j) => {
                    self.stack.push(Pending::Phrase(j));
                    self.stack.push(Pending::Phrase(j - 1));
                }
            },
        }
    }
}

impl Iterator for PhraseExpander<'_> {
    type Item = Symbol;

    fn next(&mut self) -> Option<Symbol> {
        loop {
            match self.stack.pop() {
                Some(Pending::Literal(c)) => return Some(c),
                Some(Pending::Phrase(i)) => self.push_phrase(i),
                None => {
                    if self.next_top == self.parsing.len() {
                        return None;
                    }
                    self.next_top += 1;
                    self.push_phrase(self.next_top - 1);
                }
            }
        }
    }
}

/// Compares the expansion of `p` with a stream of symbols. Returns false on
/// any mismatch, including a length mismatch.
pub fn expansion_matches<I>(p: &Parsing, symbols: I) -> bool
where
    I: IntoIterator<Item = Symbol>,
{
    let Ok(mut exp) = PhraseExpander::new(p) else {
        return false;
    };
    let mut count = 0usize;
    for c in symbols {
        if exp.next() != Some(c) {
            return false;
        }
        count += 1;
    }
    exp.next().is_none() && count == p.source_len
}

/// True iff `p` is well formed and expands to `s`. In strict mode every
/// phrase part must also be a longest dictionary match at its position.
pub fn verify_parsing(s: &Text, p: &Parsing, strict: bool) -> bool {
    if p.source_len != s.len() || !expansion_matches(p, s.symbols().iter().copied()) {
        return false;
    }
    !strict || is_greedy(s.symbols(), p)
}

fn is_greedy(text: &[Symbol], p: &Parsing) -> bool {
    let Ok(lens) = p.phrase_lengths() else {
        return false;
    };
    let mut dict = BruteDictionary::new(text);
    let mut pos = 0usize;
    match &p.phrases {
        Phrases::Lzd(phrases) => {
            for (i, ph) in phrases.iter().enumerate() {
                let start = pos;
                for part in ph.parts() {
                    let len = match part {
                        PhrasePart::Literal(_) => 1,
                        PhrasePart::Phrase(j) => lens[j - 1],
                    };
                    if dict.longest_len(pos) != len {
                        return false;
                    }
                    pos += len;
                }
                if ph.second.is_none() && pos != text.len() {
                    return false;
                }
                dict.insert(start, pos - start, EntryLabel::Phrase(i + 1));
            }
        }
        Phrases::Lzmw(phrases) => {
            let mut prev_start: Option<usize> = None;
            for (i, len) in lens.iter().enumerate().take(phrases.len()) {
                if dict.longest_len(pos) != *len {
                    return false;
                }
                if let Some(ps) = prev_start {
                    dict.insert(ps, pos + len - ps, EntryLabel::Pair(i));
                }
                prev_start = Some(pos);
                pos += len;
            }
        }
    }
    true
}

/// Phrase boundaries of a decoded parsing: `starts[i]..starts[i + 1]` is
/// phrase `i + 1`.
fn boundaries(p: &Parsing) -> Option<(Vec<Symbol>, Vec<usize>)> {
    let text = p.decode().ok()?;
    let lens = p.phrase_lengths().ok()?;
    let mut starts = Vec::with_capacity(lens.len() + 1);
    let mut acc = 0;
    starts.push(0);
    for l in lens {
        acc += l;
        starts.push(acc);
    }
    Some((text, starts))
}

/// All LZD phrases are pairwise distinct.
///
/// Without an end sentinel the last phrase may consist of a single
/// dictionary entry and then legitimately repeats an earlier phrase, so a
/// one-part final phrase is left out of the comparison.
pub fn check_lzd_distinct(p: &Parsing) -> bool {
    let Some(phrases) = p.as_lzd() else {
        return false;
    };
    let Some((text, starts)) = boundaries(p) else {
        return false;
    };
    let mut seen: HashSet<&[Symbol]> = HashSet::with_capacity(phrases.len());
    for (i, ph) in phrases.iter().enumerate() {
        if ph.second.is_none() {
            continue;
        }
        if !seen.insert(&text[starts[i]..starts[i + 1]]) {
            return false;
        }
    }
    true
}

/// Adjacent-pair strings `p_{i-1} p_i` of an LZMW parsing repeat at most
/// once, and only for consecutive `i`.
pub fn check_lzmw_pair_distinct(p: &Parsing) -> bool {
    let Some(phrases) = p.as_lzmw() else {
        return false;
    };
    let Some((text, starts)) = boundaries(p) else {
        return false;
    };
    let mut first_seen: HashMap<&[Symbol], (usize, usize)> = HashMap::new();
    for i in 2..=phrases.len() {
        let pair = &text[starts[i - 2]..starts[i]];
        match first_seen.get_mut(pair) {
            None => {
                first_seen.insert(pair, (i, 1));
            }
            Some((last, count)) => {
                *count += 1;
                if *count > 2 || i != *last + 1 {
                    return false;
                }
                *last = i;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LzdPhrase;
    use crate::reference::{lzd_parse_reference, lzmw_parse_reference};

    fn example() -> Text {
        Text::from_bytes(b"abbaababaaba$")
    }

    #[test]
    fn example_parsings_verify() {
        let s = example();
        let lzd = lzd_parse_reference(&s);
        let lzmw = lzmw_parse_reference(&s);
        assert!(verify_parsing(&s, &lzd, false));
        assert!(verify_parsing(&s, &lzd, true));
        assert!(verify_parsing(&s, &lzmw, true));
        assert!(check_lzd_distinct(&lzd));
        assert!(check_lzmw_pair_distinct(&lzmw));
    }

    #[test]
    fn dropped_phrase_fails() {
        let s = example();
        let mut p = lzd_parse_reference(&s);
        if let Phrases::Lzd(ph) = &mut p.phrases {
            ph.pop();
        }
        assert!(!verify_parsing(&s, &p, false));
    }

    #[test]
    fn non_greedy_parsing_fails_only_in_strict_mode() {
        // "abab" as a,b,a,b literals is a valid LZMW factorisation but not greedy.
        let s = Text::from_bytes(b"ababab");
        let lits: Vec<LzmwPhrase> = s
            .symbols()
            .iter()
            .map(|&c| LzmwPhrase::Literal(c))
            .collect();
        let p = Parsing::lzmw(lits, s.len());
        assert!(verify_parsing(&s, &p, false));
        assert!(!verify_parsing(&s, &p, true));
    }

    #[test]
    fn duplicated_lzd_phrase_detected() {
        let a = PhrasePart::Literal(0);
        let b = PhrasePart::Literal(1);
        let p = Parsing::lzd(vec![LzdPhrase::pair(a, b), LzdPhrase::pair(a, b)], 4);
        assert!(!check_lzd_distinct(&p));
        // a trailing single-part copy of an earlier phrase is allowed
        let p = Parsing::lzd(
            vec![
                LzdPhrase::pair(a, b),
                LzdPhrase::single(PhrasePart::Phrase(1)),
            ],
            4,
        );
        assert!(check_lzd_distinct(&p));
    }

    #[test]
    fn lzmw_pair_checks() {
        let s = Text::from_bytes(b"aaaa");
        assert!(check_lzmw_pair_distinct(&lzmw_parse_reference(&s)));
        // p1 p2 = p5 p6 = "ab"
        use LzmwPhrase::Literal as L;
        let p = Parsing::lzmw(vec![L(0), L(1), L(2), L(3), L(0), L(1)], 6);
        assert!(!check_lzmw_pair_distinct(&p));
        // equal pairs at consecutive indices are fine: a,a,a
        let p = Parsing::lzmw(vec![L(0), L(0), L(0)], 3);
        assert!(check_lzmw_pair_distinct(&p));
    }

    #[test]
    fn expander_streams_lzmw_pairs() {
        let s = example();
        let p = lzmw_parse_reference(&s);
        let out: Vec<Symbol> = PhraseExpander::new(&p).unwrap().collect();
        assert_eq!(out, s.symbols());
    }
}
