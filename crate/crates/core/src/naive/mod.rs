//! The O(z)-space parsers that keep the dictionary in a compacted trie
//! whose edge labels point into the input.
//!
//! Both parsers walk the trie from the root for every phrase part and
//! again for every dictionary update, so their running time depends on how
//! far the walks get before they fail. [`StepStats`] counts that work.

mod trie;

pub use trie::{CompactedTrie, Descent, DictEntry, NodeId, StepStats};

use crate::model::{LzdPhrase, LzmwPhrase, Parsing, PhrasePart, Scheme, Symbol, Text};

/// Work spent on one phrase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhraseCost {
    /// 0-based start position of the phrase.
    pub start: usize,
    pub len: usize,
    /// Symbol comparisons charged while finding the phrase and updating
    /// the trie afterwards.
    pub comparisons: u64,
    /// The part of `comparisons` spent finding the phrase.
    pub search_comparisons: u64,
}

/// A naive parse that can be driven one phrase at a time.
pub struct NaiveParser<'a> {
    text: &'a [Symbol],
    scheme: Scheme,
    trie: CompactedTrie,
    stats: StepStats,
    pos: usize,
    lzd: Vec<LzdPhrase>,
    lzmw: Vec<LzmwPhrase>,
    prev_start: Option<usize>,
    trace: Option<Vec<PhraseCost>>,
    search_cmp: u64,
}

impl<'a> NaiveParser<'a> {
    pub fn new(text: &'a Text, scheme: Scheme) -> Self {
        NaiveParser {
            text: text.symbols(),
            scheme,
            trie: CompactedTrie::new(),
            stats: StepStats::default(),
            pos: 0,
            lzd: Vec::new(),
            lzmw: Vec::new(),
            prev_start: None,
            trace: None,
            search_cmp: 0,
        }
    }

    /// Records a [`PhraseCost`] per phrase.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn trie(&self) -> &CompactedTrie {
        &self.trie
    }

    pub fn stats(&self) -> &StepStats {
        &self.stats
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn phrase_count(&self) -> usize {
        match self.scheme {
            Scheme::Lzd => self.lzd.len(),
            Scheme::Lzmw => self.lzmw.len(),
        }
    }

    pub fn is_done(&self) -> bool {
        self.pos >= self.text.len()
    }

    /// Longest dictionary entry at `pos`. A letter never seen before gets
    /// its own marked node first.
    fn find_part(&mut self, pos: usize) -> (usize, DictEntry) {
        let before = self.stats.symbol_comparisons;
        let d = self.trie.descend(self.text, pos, &mut self.stats);
        self.search_cmp += self.stats.symbol_comparisons - before;
        match d.marked_node {
            Some(v) => (d.marked_len, self.trie.entry(v).expect("marked node")),
            None => {
                self.trie.insert_marked(
                    self.text,
                    pos,
                    pos + 1,
                    DictEntry::Letter,
                    &mut self.stats,
                );
                (1, DictEntry::Letter)
            }
        }
    }

    fn lzd_part(&self, pos: usize, len: usize, e: DictEntry) -> PhrasePart {
        match e {
            DictEntry::Phrase(j) if len > 1 => PhrasePart::Phrase(j),
            _ => PhrasePart::Literal(self.text[pos]),
        }
    }

    /// Parses one phrase. Returns false once the input is exhausted.
    pub fn step(&mut self) -> bool {
        if self.is_done() {
            return false;
        }
        let before = self.stats.symbol_comparisons;
        self.search_cmp = 0;
        let start = self.pos;
        match self.scheme {
            Scheme::Lzd => {
                let (l1, e1) = self.find_part(start);
                let first = self.lzd_part(start, l1, e1);
                self.pos += l1;
                if self.is_done() {
                    self.lzd.push(LzdPhrase::single(first));
                } else {
                    let (l2, e2) = self.find_part(self.pos);
                    let second = self.lzd_part(self.pos, l2, e2);
                    self.pos += l2;
                    self.lzd.push(LzdPhrase::pair(first, second));
                    let idx = self.lzd.len();
                    self.trie.insert_marked(
                        self.text,
                        start,
                        self.pos,
                        DictEntry::Phrase(idx),
                        &mut self.stats,
                    );
                }
            }
            Scheme::Lzmw => {
                let (len, e) = self.find_part(start);
                let phrase = match e {
                    DictEntry::Pair(j) if len > 1 => LzmwPhrase::Pair(j),
                    _ => LzmwPhrase::Literal(self.text[start]),
                };
                self.lzmw.push(phrase);
                self.pos += len;
                if let Some(ps) = self.prev_start {
                    let j = self.lzmw.len() - 1;
                    self.trie.insert_marked(
                        self.text,
                        ps,
                        self.pos,
                        DictEntry::Pair(j),
                        &mut self.stats,
                    );
                }
                self.prev_start = Some(start);
            }
        }
        if let Some(trace) = &mut self.trace {
            trace.push(PhraseCost {
                start,
                len: self.pos - start,
                comparisons: self.stats.symbol_comparisons - before,
                search_comparisons: self.search_cmp,
            });
        }
        true
    }

    pub fn finish(mut self) -> NaiveRun {
        while self.step() {}
        let n = self.text.len();
        let parsing = match self.scheme {
            Scheme::Lzd => Parsing::lzd(self.lzd, n),
            Scheme::Lzmw => Parsing::lzmw(self.lzmw, n),
        };
        NaiveRun {
            parsing,
            stats: self.stats,
            trace: self.trace.unwrap_or_default(),
            trie_nodes: self.trie.num_nodes(),
        }
    }
}

/// Output of a complete naive parse.
#[derive(Clone, Debug)]
pub struct NaiveRun {
    pub parsing: Parsing,
    pub stats: StepStats,
    /// Empty unless tracing was requested.
    pub trace: Vec<PhraseCost>,
    pub trie_nodes: usize,
}

pub fn lzd_parse_naive(s: &Text) -> (Parsing, StepStats) {
    let run = NaiveParser::new(s, Scheme::Lzd).finish();
    (run.parsing, run.stats)
}

pub fn lzmw_parse_naive(s: &Text) -> (Parsing, StepStats) {
    let run = NaiveParser::new(s, Scheme::Lzmw).finish();
    (run.parsing, run.stats)
}

pub fn parse_naive(s: &Text, scheme: Scheme) -> (Parsing, StepStats) {
    match scheme {
        Scheme::Lzd => lzd_parse_naive(s),
        Scheme::Lzmw => lzmw_parse_naive(s),
    }
}
