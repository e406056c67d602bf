//! Texts, phrases and parsings shared by every parser in the workspace.

use std::fmt;

use crate::error::ModelError;

/// A single input letter. Symbols are plain 32-bit integers; the alphabet
/// bound of the owning [`Text`] says how many of them are in use.
pub type Symbol = u32;

/// A sequence of symbols together with an upper bound on its alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Text {
    symbols: Vec<Symbol>,
    alphabet_bound: u64,
}

impl Text {
    /// Builds a text, checking that every symbol is below `alphabet_bound`.
    pub fn new(symbols: Vec<Symbol>, alphabet_bound: u64) -> Result<Self, ModelError> {
        if alphabet_bound == 0 || alphabet_bound > 1u64 << 32 {
            return Err(ModelError::BadAlphabetBound(alphabet_bound));
        }
        if let Some((pos, &sym)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &c)| u64::from(c) >= alphabet_bound)
        {
            return Err(ModelError::SymbolOutOfRange {
                pos,
                symbol: sym,
                bound: alphabet_bound,
            });
        }
        Ok(Text {
            symbols,
            alphabet_bound,
        })
    }

    /// Builds a text whose alphabet bound is one more than its largest symbol.
    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        let alphabet_bound = symbols
            .iter()
            .copied()
            .max()
            .map_or(1, |m| u64::from(m) + 1);
        Text {
            symbols,
            alphabet_bound,
        }
    }

    /// Interprets every byte as one symbol (alphabet bound 256).
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Text {
            symbols: bytes.iter().map(|&b| Symbol::from(b)).collect(),
            alphabet_bound: 256,
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn alphabet_bound(&self) -> u64 {
        self.alphabet_bound
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of distinct symbols that actually occur.
    pub fn distinct_symbols(&self) -> usize {
        let mut seen: Vec<Symbol> = self.symbols.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

impl AsRef<[Symbol]> for Text {
    fn as_ref(&self) -> &[Symbol] {
        &self.symbols
    }
}

/// Which LZ78 variant a parsing follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Lzd,
    Lzmw,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Lzd => "lzd",
            Scheme::Lzmw => "lzmw",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lzd" => Ok(Scheme::Lzd),
            "lzmw" => Ok(Scheme::Lzmw),
            other => Err(ModelError::UnknownScheme(other.to_string())),
        }
    }
}

/// One half of an LZD phrase: a letter, or a reference to an earlier phrase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhrasePart {
    Literal(Symbol),
    /// 1-based index of an earlier phrase.
    Phrase(usize),
}

/// An LZD phrase `first · second`. `second` is absent only when the input
/// ran out right after `first`, which can only happen on the last phrase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LzdPhrase {
    pub first: PhrasePart,
    pub second: Option<PhrasePart>,
}

impl LzdPhrase {
    pub fn pair(first: PhrasePart, second: PhrasePart) -> Self {
        LzdPhrase {
            first,
            second: Some(second),
        }
    }

    pub fn single(first: PhrasePart) -> Self {
        LzdPhrase {
            first,
            second: None,
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = PhrasePart> {
        std::iter::once(self.first).chain(self.second)
    }
}

/// An LZMW phrase: a letter, or a copy of the concatenation `p_j p_{j+1}`
/// of two earlier adjacent phrases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LzmwPhrase {
    Literal(Symbol),
    /// 1-based `j`; the phrase equals `p_j p_{j+1}`.
    Pair(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Phrases {
    Lzd(Vec<LzdPhrase>),
    Lzmw(Vec<LzmwPhrase>),
}

/// The output of a parser: the phrase list plus the length of the text it
/// claims to encode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parsing {
    pub source_len: usize,
    pub phrases: Phrases,
}

impl Parsing {
    pub fn lzd(phrases: Vec<LzdPhrase>, source_len: usize) -> Self {
        Parsing {
            source_len,
            phrases: Phrases::Lzd(phrases),
        }
    }

    pub fn lzmw(phrases: Vec<LzmwPhrase>, source_len: usize) -> Self {
        Parsing {
            source_len,
            phrases: Phrases::Lzmw(phrases),
        }
    }

    pub fn scheme(&self) -> Scheme {
        match self.phrases {
            Phrases::Lzd(_) => Scheme::Lzd,
            Phrases::Lzmw(_) => Scheme::Lzmw,
        }
    }

    /// Number of phrases, `z`.
    pub fn len(&self) -> usize {
        match &self.phrases {
            Phrases::Lzd(p) => p.len(),
            Phrases::Lzmw(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_lzd(&self) -> Option<&[LzdPhrase]> {
        match &self.phrases {
            Phrases::Lzd(p) => Some(p),
            Phrases::Lzmw(_) => None,
        }
    }

    pub fn as_lzmw(&self) -> Option<&[LzmwPhrase]> {
        match &self.phrases {
            Phrases::Lzmw(p) => Some(p),
            Phrases::Lzd(_) => None,
        }
    }

    /// Checks that every reference points backwards as the scheme requires.
    pub fn validate(&self) -> Result<(), ModelError> {
        match &self.phrases {
            Phrases::Lzd(phrases) => {
                for (i, ph) in phrases.iter().enumerate() {
                    let idx = i + 1;
                    if ph.second.is_none() && idx != phrases.len() {
                        return Err(ModelError::TruncatedPhrase { phrase: idx });
                    }
                    for part in ph.parts() {
                        if let PhrasePart::Phrase(j) = part {
                            if j == 0 || j >= idx {
                                return Err(ModelError::BadReference {
                                    phrase: idx,
                                    target: j,
                                });
                            }
                        }
                    }
                }
            }
            Phrases::Lzmw(phrases) => {
                for (i, ph) in phrases.iter().enumerate() {
                    let idx = i + 1;
                    if let LzmwPhrase::Pair(j) = *ph {
                        if j == 0 || j + 2 > idx {
                            return Err(ModelError::BadReference {
                                phrase: idx,
                                target: j,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Lengths of the expansions of every phrase, or an error when a
    /// reference is malformed.
    pub fn phrase_lengths(&self) -> Result<Vec<usize>, ModelError> {
        self.validate()?;
        let mut lens: Vec<usize> = Vec::with_capacity(self.len());
        let part_len = |lens: &[usize], part: PhrasePart| match part {
            PhrasePart::Literal(_) => 1,
            PhrasePart::Phrase(j) => lens[j - 1],
        };
        match &self.phrases {
            Phrases::Lzd(phrases) => {
                for ph in phrases {
                    let l = ph.parts().map(|p| part_len(&lens, p)).sum();
                    lens.push(l);
                }
            }
            Phrases::Lzmw(phrases) => {
                for ph in phrases {
                    let l = match *ph {
                        LzmwPhrase::Literal(_) => 1,
                        LzmwPhrase::Pair(j) => lens[j - 1] + lens[j],
                    };
                    lens.push(l);
                }
            }
        }
        Ok(lens)
    }

    /// Expands every phrase into its own string. Quadratic in the worst case;
    /// meant for tests and the structural checks.
    pub fn expand_phrases(&self) -> Result<Vec<Vec<Symbol>>, ModelError> {
        self.validate()?;
        let mut out: Vec<Vec<Symbol>> = Vec::with_capacity(self.len());
        match &self.phrases {
            Phrases::Lzd(phrases) => {
                for ph in phrases {
                    let mut s = Vec::new();
                    for part in ph.parts() {
                        match part {
                            PhrasePart::Literal(c) => s.push(c),
                            PhrasePart::Phrase(j) => s.extend_from_slice(&out[j - 1]),
                        }
                    }
                    out.push(s);
                }
            }
            Phrases::Lzmw(phrases) => {
                for ph in phrases {
                    let s = match *ph {
                        LzmwPhrase::Literal(c) => vec![c],
                        LzmwPhrase::Pair(j) => [out[j - 1].as_slice(), out[j].as_slice()].concat(),
                    };
                    out.push(s);
                }
            }
        }
        Ok(out)
    }

    /// Decodes the whole parsing into the text it represents.
    pub fn decode(&self) -> Result<Vec<Symbol>, ModelError> {
        let lens = self.phrase_lengths()?;
        let total: usize = lens.iter().sum();
        let mut out: Vec<Symbol> = Vec::with_capacity(total);
        let mut starts: Vec<usize> = Vec::with_capacity(lens.len());
        let copy = |out: &mut Vec<Symbol>, start: usize, len: usize| {
            for t in start..start + len {
                let c = out[t];
                out.push(c);
            }
        };
        match &self.phrases {
            Phrases::Lzd(phrases) => {
                for ph in phrases {
                    starts.push(out.len());
                    for part in ph.parts() {
                        match part {
                            PhrasePart::Literal(c) => out.push(c),
                            PhrasePart::Phrase(j) => copy(&mut out, starts[j - 1], lens[j - 1]),
                        }
                    }
                }
            }
            Phrases::Lzmw(phrases) => {
                for ph in phrases {
                    starts.push(out.len());
                    match *ph {
                        LzmwPhrase::Literal(c) => out.push(c),
                        LzmwPhrase::Pair(j) => copy(&mut out, starts[j - 1], lens[j - 1] + lens[j]),
                    }
                }
            }
        }
        Ok(out)
    }
}
