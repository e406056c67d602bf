//! Sequential symbol sources and the block reader with pushback.

use std::collections::VecDeque;
use std::io::{self, BufReader, Read};

use lzdmw_core::Symbol;

use crate::error::FastError;

/// A one-way stream of symbols.
pub trait SymbolSource {
    fn next_symbol(&mut self) -> Result<Option<Symbol>, FastError>;

    /// The total length, when known in advance.
    fn len_hint(&self) -> Option<usize> {
        None
    }
}

#[derive(Clone, Debug)]
pub struct SliceSource<'a> {
    s: &'a [Symbol],
    pos: usize,
}

impl<'a> SliceSource<'a> {
    pub fn new(s: &'a [Symbol]) -> Self {
        SliceSource { s, pos: 0 }
    }
}

impl SymbolSource for SliceSource<'_> {
    fn next_symbol(&mut self) -> Result<Option<Symbol>, FastError> {
        let c = self.s.get(self.pos).copied();
        self.pos += c.is_some() as usize;
        Ok(c)
    }

    fn len_hint(&self) -> Option<usize> {
        Some(self.s.len())
    }
}

/// Raw bytes, one symbol per byte.
pub struct ByteSource<R> {
    inner: BufReader<R>,
    len: Option<usize>,
}

impl<R: Read> ByteSource<R> {
    pub fn new(inner: R, len: Option<usize>) -> Self {
        ByteSource {
            inner: BufReader::new(inner),
            len,
        }
    }
}

impl<R: Read> SymbolSource for ByteSource<R> {
    fn next_symbol(&mut self) -> Result<Option<Symbol>, FastError> {
        let mut b = [0u8];
        loop {
            return match self.inner.read(&mut b) {
                Ok(0) => Ok(None),
                Ok(_) => Ok(Some(Symbol::from(b[0]))),
                Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
                Err(e) => Err(e.into()),
            };
        }
    }

    fn len_hint(&self) -> Option<usize> {
        self.len
    }
}

/// Counts the symbols pulled from the wrapped source and refuses to be
/// read again after reporting the end.
pub struct CountingSource<S> {
    inner: S,
    count: usize,
    ended: bool,
}

impl<S> CountingSource<S> {
    pub fn new(inner: S) -> Self {
        CountingSource {
            inner,
            count: 0,
            ended: false,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

impl<S: SymbolSource> SymbolSource for CountingSource<S> {
    fn next_symbol(&mut self) -> Result<Option<Symbol>, FastError> {
        assert!(!self.ended, "source read past its end");
        let c = self.inner.next_symbol()?;
        match c {
            Some(_) => self.count += 1,
            None => self.ended = true,
        }
        Ok(c)
    }

    fn len_hint(&self) -> Option<usize> {
        self.inner.len_hint()
    }
}

/// `max(16, ⌈log₂ n⌉²)`.
pub fn block_len_for(n: usize) -> usize {
    let log = (n.max(2) as f64).log2().ceil() as usize;
    (log * log).max(16)
}

/// Hands out the input in blocks. Symbols handed back with [`unread`]
/// come out again before any new input, so each source symbol is pulled
/// exactly once.
///
/// [`unread`]: BlockReader::unread
pub struct BlockReader<S> {
    src: S,
    pushback: VecDeque<Symbol>,
    fixed: Option<usize>,
    fresh: u64,
    blocks: u64,
    eof: bool,
}

impl<S: SymbolSource> BlockReader<S> {
    /// The block length follows the source's length hint; without one it
    /// tracks `2 × symbols read so far` as the length estimate.
    pub fn new(src: S) -> Self {
        let fixed = src.len_hint().map(block_len_for);
        BlockReader {
            src,
            pushback: VecDeque::new(),
            fixed,
            fresh: 0,
            blocks: 0,
            eof: false,
        }
    }

    pub fn with_block_len(src: S, b: usize) -> Self {
        let mut r = Self::new(src);
        r.fixed = Some(b.max(1));
        r
    }

    pub fn block_len(&self) -> usize {
        self.fixed
            .unwrap_or_else(|| block_len_for(2 * self.fresh as usize))
    }

    /// Symbols pulled from the source.
    pub fn fresh_reads(&self) -> u64 {
        self.fresh
    }

    pub fn blocks(&self) -> u64 {
        self.blocks
    }

    pub fn source(&self) -> &S {
        &self.src
    }

    fn pull(&mut self) -> Result<Option<Symbol>, FastError> {
        if self.eof {
            return Ok(None);
        }
        let c = self.src.next_symbol()?;
        match c {
            Some(_) => self.fresh += 1,
            None => self.eof = true,
        }
        Ok(c)
    }

    /// Fills `out` with the next block; empty at the end of input.
    pub fn read_block(&mut self, out: &mut Vec<Symbol>) -> Result<(), FastError> {
        out.clear();
        let b = self.block_len();
        while out.len() < b {
            match self.pushback.pop_front() {
                Some(c) => out.push(c),
                None => break,
            }
        }
        while out.len() < b {
            match self.pull()? {
                Some(c) => out.push(c),
                None => break,
            }
        }
        if !out.is_empty() {
            self.blocks += 1;
        }
        Ok(())
    }

    pub fn next_symbol(&mut self) -> Result<Option<Symbol>, FastError> {
        match self.pushback.pop_front() {
            Some(c) => Ok(Some(c)),
            None => self.pull(),
        }
    }

    /// Puts `syms` back in front of the remaining input.
    pub fn unread(&mut self, syms: &[Symbol]) {
        for &c in syms.iter().rev() {
            self.pushback.push_front(c);
        }
    }

    /// Symbols waiting in the pushback buffer.
    pub fn buffered(&self) -> usize {
        self.pushback.len()
    }
}
