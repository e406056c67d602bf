//! The streaming parsers and the verifying wrapper.
//!
//! The parsed prefix lives in an [`AvlGrammar`]. Input that has been read
//! but not parsed yet is always a prefix of some dictionary string, so it is
//! kept as an occurrence inside the grammar rather than as symbols. New
//! input arrives in blocks; the part of a block past the first mismatch is
//! handed back to the reader.

use lzdmw_avl::{AvlGrammar, Fingerprint, HashConfig, MERSENNE_61};
use lzdmw_core::{
    DictEntry, LzdPhrase, LzmwPhrase, Parsing, PhraseExpander, PhrasePart, Scheme, Symbol,
};

use crate::error::FastError;
use crate::reader::{BlockReader, SymbolSource};
use crate::ztrie::{Locus, Query, ZTrie, ROOT};

/// Work and space counters of one run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FastStats {
    pub symbols_read: u64,
    pub blocks: u64,
    pub block_len: usize,
    pub phrases: usize,
    pub trie_nodes: usize,
    pub grammar_nodes: usize,
    pub grammar_height: u32,
    pub grammar_visits: u64,
    pub handle_lookups: u64,
    pub fingerprint_compares: u64,
    pub child_steps: u64,
    pub climbs: u64,
    pub splay_rotations: u64,
}

impl FastStats {
    /// Symbols read, grammar nodes visited, trie probes and splay
    /// rotations.
    pub fn ops(&self) -> u64 {
        self.symbols_read
            + self.grammar_visits
            + self.handle_lookups
            + self.fingerprint_compares
            + self.child_steps
            + self.splay_rotations
    }

    pub fn to_pairs(&self) -> Vec<(&'static str, u64)> {
        vec![
            ("symbols_read", self.symbols_read),
            ("blocks", self.blocks),
            ("block_len", self.block_len as u64),
            ("phrases", self.phrases as u64),
            ("trie_nodes", self.trie_nodes as u64),
            ("grammar_nodes", self.grammar_nodes as u64),
            ("grammar_height", self.grammar_height as u64),
            ("grammar_visits", self.grammar_visits),
            ("handle_lookups", self.handle_lookups),
            ("fingerprint_compares", self.fingerprint_compares),
            ("child_steps", self.child_steps),
            ("splay_rotations", self.splay_rotations),
            ("ops", self.ops()),
        ]
    }
}

#[derive(Clone, Debug)]
pub struct FastRun {
    pub parsing: Parsing,
    pub stats: FastStats,
}

/// One dictionary match: `len` symbols starting at `occ` in the grammar,
/// or a letter that is not in the grammar yet.
enum Part {
    Copy {
        occ: usize,
        len: usize,
        entry: Option<DictEntry>,
    },
    Fresh(Symbol),
}

struct Engine<'r, S> {
    scheme: Scheme,
    g: AvlGrammar,
    trie: ZTrie,
    reader: &'r mut BlockReader<S>,
    pend_occ: usize,
    pend_len: usize,
    block: Vec<Symbol>,
    block_fps: Vec<Fingerprint>,
}

impl<'r, S: SymbolSource> Engine<'r, S> {
    fn new(reader: &'r mut BlockReader<S>, cfg: HashConfig, scheme: Scheme) -> Self {
        Engine {
            scheme,
            g: AvlGrammar::new(cfg),
            trie: ZTrie::new(),
            reader,
            pend_occ: 0,
            pend_len: 0,
            block: Vec::new(),
            block_fps: Vec::new(),
        }
    }

    fn check_symbols(&self) -> Result<(), FastError> {
        let p = self.g.config().modulus();
        match self.block.iter().find(|&&c| c as u64 >= p) {
            Some(&symbol) => Err(FastError::SymbolAboveModulus { symbol, p }),
            None => Ok(()),
        }
    }

    /// Extends the pending occurrence with blocks of input for as long as
    /// it stays on a trie path.
    fn scan(&mut self, mut loc: Locus) -> Result<Locus, FastError> {
        loop {
            self.reader.read_block(&mut self.block)?;
            if self.block.is_empty() {
                return Ok(loc);
            }
            self.check_symbols()?;
            self.block_fps = self.g.config().prefixes(&self.block);
            let q = Query::with_block(
                &self.g,
                self.pend_occ,
                self.pend_len,
                &self.block,
                &self.block_fps,
            );
            loc = self.trie.locate(&self.g, &q);
            if loc.depth < self.pend_len {
                // only after a fingerprint collision
                self.reader.unread(&self.block);
                return Ok(loc);
            }
            let used = loc.depth - self.pend_len;
            self.reader.unread(&self.block[used..]);
            if loc.depth > 0 {
                self.pend_occ = self.trie.occ(loc.node);
            }
            self.pend_len = loc.depth;
            if used < self.block.len() {
                return Ok(loc);
            }
        }
    }

    /// The longest dictionary string at the current position, or `None`
    /// at the end of the input.
    fn find_part(&mut self) -> Result<Option<Part>, FastError> {
        let mut loc = Locus {
            node: ROOT,
            depth: 0,
        };
        if self.pend_len > 0 {
            loc = self
                .trie
                .locate(&self.g, &Query::in_grammar(self.pend_occ, self.pend_len));
        }
        if loc.depth == self.pend_len {
            loc = self.scan(loc)?;
        }
        let marked = match self.pend_len {
            0 => None,
            _ => self.trie.nearest_marked(loc),
        };
        let (len, entry) = match marked {
            Some(v) => (self.trie.depth(v), self.trie.entry(v)),
            None if self.pend_len > 0 => (1, None),
            None => {
                return match self.reader.next_symbol()? {
                    Some(c) => {
                        let p = self.g.config().modulus();
                        if c as u64 >= p {
                            return Err(FastError::SymbolAboveModulus { symbol: c, p });
                        }
                        Ok(Some(Part::Fresh(c)))
                    }
                    None => Ok(None),
                };
            }
        };
        let len = len.min(self.pend_len).max(1);
        let part = Part::Copy {
            occ: self.pend_occ,
            len,
            entry,
        };
        self.pend_occ += len;
        self.pend_len -= len;
        Ok(Some(part))
    }

    /// Appends the part to the grammar; returns its first symbol and length.
    fn append(&mut self, part: &Part) -> Result<(Symbol, usize), FastError> {
        match *part {
            Part::Copy { occ, len, .. } => {
                let c = self.g.symbol_at(occ)?;
                self.g.append_copy(occ, occ + len)?;
                Ok((c, len))
            }
            Part::Fresh(c) => {
                self.g.append_literal(c);
                if self.scheme == Scheme::Lzd {
                    let at = self.g.len() - 1;
                    self.trie.insert(&self.g, at, 1, DictEntry::Letter);
                }
                Ok((c, 1))
            }
        }
    }

    fn lzd_part(&mut self, part: Part) -> Result<PhrasePart, FastError> {
        let entry = match part {
            Part::Copy { entry, .. } => entry,
            Part::Fresh(_) => None,
        };
        let (c, len) = self.append(&part)?;
        Ok(match entry {
            Some(DictEntry::Phrase(j)) if len > 1 => PhrasePart::Phrase(j),
            _ => PhrasePart::Literal(c),
        })
    }

    fn run_lzd(&mut self) -> Result<Parsing, FastError> {
        let mut out = Vec::new();
        loop {
            let start = self.g.len();
            let Some(first) = self.find_part()? else {
                break;
            };
            let first = self.lzd_part(first)?;
            let Some(second) = self.find_part()? else {
                out.push(LzdPhrase::single(first));
                break;
            };
            let second = self.lzd_part(second)?;
            out.push(LzdPhrase::pair(first, second));
            let len = self.g.len() - start;
            self.trie
                .insert(&self.g, start, len, DictEntry::Phrase(out.len()));
        }
        Ok(Parsing::lzd(out, self.g.len()))
    }

    fn run_lzmw(&mut self) -> Result<Parsing, FastError> {
        let mut out = Vec::new();
        let mut prev_start = None;
        loop {
            let start = self.g.len();
            let Some(part) = self.find_part()? else {
                break;
            };
            let entry = match part {
                Part::Copy { entry, .. } => entry,
                Part::Fresh(_) => None,
            };
            let (c, len) = self.append(&part)?;
            out.push(match entry {
                Some(DictEntry::Pair(j)) if len > 1 => LzmwPhrase::Pair(j),
                _ => LzmwPhrase::Literal(c),
            });
            if let Some(ps) = prev_start {
                let j = out.len() - 1;
                self.trie
                    .insert(&self.g, ps, self.g.len() - ps, DictEntry::Pair(j));
            }
            prev_start = Some(start);
        }
        Ok(Parsing::lzmw(out, self.g.len()))
    }

    fn run(mut self) -> Result<FastRun, FastError> {
        let parsing = match self.scheme {
            Scheme::Lzd => self.run_lzd()?,
            Scheme::Lzmw => self.run_lzmw()?,
        };
        let ts = self.trie.stats();
        let stats = FastStats {
            symbols_read: self.reader.fresh_reads(),
            blocks: self.reader.blocks(),
            block_len: self.reader.block_len(),
            phrases: parsing.len(),
            trie_nodes: self.trie.num_nodes(),
            grammar_nodes: self.g.node_count(),
            grammar_height: self.g.height().unwrap_or(0),
            grammar_visits: self.g.visits(),
            handle_lookups: ts.handle_lookups,
            fingerprint_compares: ts.fingerprint_compares,
            child_steps: ts.child_steps,
            climbs: ts.climbs,
            splay_rotations: self.trie.marks().rotations(),
        };
        Ok(FastRun { parsing, stats })
    }
}

/// Monte-Carlo LZD parsing: correct unless two distinct substrings share a
/// fingerprint.
pub fn lzd_parse_fast<S: SymbolSource>(
    reader: &mut BlockReader<S>,
    cfg: HashConfig,
) -> Result<FastRun, FastError> {
    Engine::new(reader, cfg, Scheme::Lzd).run()
}

/// Monte-Carlo LZMW parsing.
pub fn lzmw_parse_fast<S: SymbolSource>(
    reader: &mut BlockReader<S>,
    cfg: HashConfig,
) -> Result<FastRun, FastError> {
    Engine::new(reader, cfg, Scheme::Lzmw).run()
}

pub fn parse_fast<S: SymbolSource>(
    reader: &mut BlockReader<S>,
    scheme: Scheme,
    cfg: HashConfig,
) -> Result<FastRun, FastError> {
    Engine::new(reader, cfg, scheme).run()
}

/// Expands `p` and compares it with a fresh pass over the input.
pub fn verify_against<S: SymbolSource>(p: &Parsing, mut src: S) -> Result<bool, FastError> {
    let Ok(mut exp) = PhraseExpander::new(p) else {
        return Ok(false);
    };
    let mut n = 0usize;
    while let Some(c) = src.next_symbol()? {
        if exp.next() != Some(c) {
            return Ok(false);
        }
        n += 1;
    }
    Ok(exp.next().is_none() && n == p.source_len)
}

/// Settings for [`parse_las_vegas`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LasVegas {
    pub scheme: Scheme,
    pub seed: u64,
    pub modulus: u64,
    pub max_rounds: u32,
    /// Fixed block length; by default it follows the source's length hint.
    pub block_len: Option<usize>,
}

impl LasVegas {
    pub fn new(scheme: Scheme, seed: u64) -> Self {
        LasVegas {
            scheme,
            seed,
            modulus: MERSENNE_61,
            max_rounds: 10_000,
            block_len: None,
        }
    }

    pub fn modulus(mut self, p: u64) -> Self {
        self.modulus = p;
        self
    }

    pub fn max_rounds(mut self, r: u32) -> Self {
        self.max_rounds = r;
        self
    }

    pub fn block_len(mut self, b: usize) -> Self {
        self.block_len = Some(b);
        self
    }
}

#[derive(Clone, Debug)]
pub struct LasVegasRun {
    pub parsing: Parsing,
    /// Counters of the accepted round.
    pub stats: FastStats,
    /// Rounds run, the accepted one included.
    pub rounds: u32,
    pub delta: u64,
}

impl LasVegasRun {
    pub fn retries(&self) -> u32 {
        self.rounds - 1
    }
}

/// Parses, verifies against a second pass over the input, and retries with
/// a new base δ until the parsing checks out. Round `r` draws δ from seed
/// `seed + r`. `open` must yield the same input every time.
pub fn parse_las_vegas<S, F>(mut open: F, opts: LasVegas) -> Result<LasVegasRun, FastError>
where
    S: SymbolSource,
    F: FnMut() -> Result<S, FastError>,
{
    for round in 0..opts.max_rounds {
        let cfg = HashConfig::with_modulus(opts.modulus, opts.seed.wrapping_add(round as u64))?;
        let src = open()?;
        let mut reader = match opts.block_len {
            Some(b) => BlockReader::with_block_len(src, b),
            None => BlockReader::new(src),
        };
        let run = match parse_fast(&mut reader, opts.scheme, cfg) {
            Ok(run) => run,
            Err(FastError::Grammar(_) | FastError::Model(_)) => continue,
            Err(e) => return Err(e),
        };
        if verify_against(&run.parsing, open()?)? {
            return Ok(LasVegasRun {
                parsing: run.parsing,
                stats: run.stats,
                rounds: round + 1,
                delta: cfg.delta(),
            });
        }
    }
    Err(FastError::RetriesExhausted {
        rounds: opts.max_rounds,
    })
}
