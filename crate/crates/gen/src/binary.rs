use std::collections::{BTreeSet, HashMap};

use lzdmw_core::{
    parse_reference, LzdPhrase, LzmwPhrase, Parsing, PhrasePart, Scheme, Symbol, Text,
};

use crate::GenError;

type Bits = Vec<Symbol>;

/// A_0 = {0,1}; A_L = {xy : x,y ∈ A_{L-1}, x ≤ y}, in lexicographic order.
pub fn alpha_set(level: u32) -> Vec<Bits> {
    let mut set: Vec<Bits> = vec![vec![0], vec![1]];
    for _ in 0..level {
        let mut next = Vec::with_capacity(set.len() * (set.len() + 1) / 2);
        for (i, x) in set.iter().enumerate() {
            for y in &set[i..] {
                next.push([x.as_slice(), y.as_slice()].concat());
            }
        }
        set = next;
    }
    set
}

/// B_0 = {0,1}; B_L = {xy : x,y ∈ B_{L-1}} minus 1^h 0^h, in lexicographic order.
pub fn beta_set(level: u32) -> Vec<Bits> {
    let mut set: Vec<Bits> = vec![vec![0], vec![1]];
    for _ in 0..level {
        let h = set[0].len();
        let mut next = Vec::with_capacity(set.len() * set.len());
        for x in &set {
            for y in &set {
                if x.iter().all(|&c| c == 1) && y.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut xy = Vec::with_capacity(2 * h);
                xy.extend_from_slice(x);
                xy.extend_from_slice(y);
                next.push(xy);
            }
        }
        set = next;
    }
    set
}

/// α_1, α_2, …: all of A_1, then A_2, and so on.
pub fn alpha_sequence(count: usize) -> Vec<Bits> {
    let mut out = Vec::with_capacity(count);
    let mut level = 1;
    while out.len() < count {
        out.extend(alpha_set(level).into_iter().take(count - out.len()));
        level += 1;
    }
    out
}

/// β_1, β_2, …: all of B_0, then B_1, and so on.
pub fn beta_sequence(count: usize) -> Vec<Bits> {
    let mut out = Vec::with_capacity(count);
    let mut level = 0;
    while out.len() < count {
        out.extend(beta_set(level).into_iter().take(count - out.len()));
        level += 1;
    }
    out
}

/// b(β_m) = β_M β_m · β_{M+1} β_m ⋯ β_{m-1} β_m · β_m, where β_M = 0^{|β_m|}
/// is the first member of β_m's level. `m` is 1-based.
pub fn beta_block(m: usize) -> Bits {
    assert!(m >= 1, "beta indices start at 1");
    let seq = beta_sequence(m);
    let bm = &seq[m - 1];
    let first = seq
        .iter()
        .position(|b| b.len() == bm.len())
        .expect("β_m's level is present");
    let mut out = Vec::new();
    for b in &seq[first..m - 1] {
        out.extend_from_slice(b);
        out.extend_from_slice(bm);
    }
    out.extend_from_slice(bm);
    out
}

/// An injective map from the symbols of a text to binary words of a common
/// length, together with the binary prefix that primes the dictionary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub scheme: Scheme,
    pub level: u32,
    /// Common image length `2^level`.
    pub ell: usize,
    pub table: HashMap<Symbol, Bits>,
    pub prefix: Bits,
}

impl Morphism {
    pub fn image(&self, c: Symbol) -> &[Symbol] {
        &self.table[&c]
    }

    pub fn apply(&self, s: &[Symbol]) -> Bits {
        let mut out = Vec::with_capacity(s.len() * self.ell);
        for &c in s {
            out.extend_from_slice(self.image(c));
        }
        out
    }

    /// The parsing `t · φ(s)` must have: the parsing of `t` followed by the
    /// φ-image of `p`, the parsing of `s`.
    pub fn expected_parsing(&self, p: &Parsing) -> Parsing {
        let t = Text::from_symbols(self.prefix.clone());
        let tp = parse_reference(&t, self.scheme);
        let shift = tp.len();
        let tphrases = tp.expand_phrases().expect("reference parsings are valid");
        let total = self.prefix.len() + p.source_len * self.ell;
        match (tp.phrases, &p.phrases) {
            (lzdmw_core::Phrases::Lzd(mut out), lzdmw_core::Phrases::Lzd(src)) => {
                let index: HashMap<&[Symbol], usize> = tphrases
                    .iter()
                    .enumerate()
                    .rev()
                    .map(|(i, w)| (w.as_slice(), i + 1))
                    .collect();
                let map = |x: PhrasePart| match x {
                    PhrasePart::Literal(c) => PhrasePart::Phrase(index[self.image(c)]),
                    PhrasePart::Phrase(j) => PhrasePart::Phrase(j + shift),
                };
                for ph in src {
                    out.push(match ph.second {
                        Some(b) => LzdPhrase::pair(map(ph.first), map(b)),
                        None => LzdPhrase::single(map(ph.first)),
                    });
                }
                Parsing::lzd(out, total)
            }
            (lzdmw_core::Phrases::Lzmw(mut out), lzdmw_core::Phrases::Lzmw(src)) => {
                let mut index: HashMap<Bits, usize> = HashMap::new();
                for j in (1..tphrases.len()).rev() {
                    index.insert(
                        [tphrases[j - 1].as_slice(), tphrases[j].as_slice()].concat(),
                        j,
                    );
                }
                for ph in src {
                    out.push(match *ph {
                        LzmwPhrase::Literal(c) => LzmwPhrase::Pair(index[self.image(c)]),
                        LzmwPhrase::Pair(j) => LzmwPhrase::Pair(j + shift),
                    });
                }
                Parsing::lzmw(out, total)
            }
            _ => panic!("parsing scheme differs from the morphism's"),
        }
    }
}

/// Encodes `s` over `{0,1}` so that the parsing of the result is the
/// parsing of the prefix `t` followed by the image of the parsing of `s`.
///
/// LZD: `t = α_1 ⋯ α_m` with the smallest level `L ≥ 1` such that
/// `|A_L| ≥ σ` and `m` minimal; the images are the first `σ` members of
/// `A_L`, assigned to the symbols in increasing order.
///
/// LZMW: `t = b(β_1) ⋯ b(β_m)` where `β_m = 1^{2^{L-1}}` closes level `L-1`,
/// so every member of `B_L` is in the dictionary after `t`. The images are
/// the first `σ` members of `B_L`; `s[1]` gets `0^{2^L}`.
pub fn binary_reduce(s: &Text, scheme: Scheme) -> Result<(Text, Morphism), GenError> {
    let first = *s.symbols().first().ok_or(GenError::EmptyText)?;
    let alphabet: BTreeSet<Symbol> = s.symbols().iter().copied().collect();
    let sigma = alphabet.len();
    let (level, images, prefix) = match scheme {
        Scheme::Lzd => {
            let mut level = 1;
            let mut before = 0;
            while alpha_set(level).len() < sigma {
                before += alpha_set(level).len();
                level += 1;
            }
            let seq = alpha_sequence(before + sigma);
            let images = seq[before..].to_vec();
            (level, images, seq.concat())
        }
        Scheme::Lzmw => {
            let mut level = 1;
            while beta_set(level).len() < sigma {
                level += 1;
            }
            let m: usize = (0..level).map(|l| beta_set(l).len()).sum();
            let prefix: Bits = (1..=m).flat_map(beta_block).collect();
            let images = beta_set(level)[..sigma].to_vec();
            (level, images, prefix)
        }
    };
    let mut table = HashMap::with_capacity(sigma);
    let mut rest = images.iter();
    if scheme == Scheme::Lzmw {
        table.insert(first, rest.next().expect("sigma ≥ 1").clone());
    }
    for &c in &alphabet {
        table
            .entry(c)
            .or_insert_with(|| rest.next().expect("enough images").clone());
    }
    let morphism = Morphism {
        scheme,
        level,
        ell: 1 << level,
        table,
        prefix,
    };
    let mut out = morphism.prefix.clone();
    out.extend(morphism.apply(s.symbols()));
    let text = Text::new(out, 2).expect("binary output");
    Ok((text, morphism))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Bits {
        s.bytes()
            .filter(|b| *b != b' ')
            .map(|b| Symbol::from(b - b'0'))
            .collect()
    }

    #[test]
    fn first_twelve_alphas() {
        let got = alpha_sequence(12);
        let want = [
            "00", "01", "11", "0000", "0001", "0011", "0101", "0111", "1111", "00000000",
            "00000001", "00000011",
        ];
        assert_eq!(got, want.iter().map(|w| bits(w)).collect::<Vec<_>>());
    }

    #[test]
    fn set_sizes() {
        assert_eq!(alpha_set(1).len(), 3);
        assert_eq!(alpha_set(2).len(), 6);
        assert_eq!(alpha_set(3).len(), 21);
        assert_eq!(beta_set(1).len(), 3);
        assert_eq!(beta_set(2).len(), 8);
        assert_eq!(beta_set(3).len(), 63);
    }

    #[test]
    fn first_six_beta_blocks() {
        let got: Bits = (1..=6).flat_map(beta_block).collect();
        assert_eq!(got, bits("0 0 1 1 00 00 01 01 00 11 01 11 11 0000"));
        assert_eq!(beta_block(6), bits("0000"));
    }

    #[test]
    fn sets_are_sorted() {
        for l in 0..4 {
            let a = alpha_set(l);
            assert!(a.windows(2).all(|w| w[0] < w[1]));
            let b = beta_set(l);
            assert!(b.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn lzd_binary_alphabet_uses_level_one() {
        let s = Text::from_symbols(vec![0, 1, 1, 0]);
        let (_, m) = binary_reduce(&s, Scheme::Lzd).unwrap();
        assert_eq!(m.level, 1);
        assert_eq!(m.ell, 2);
        assert_eq!(m.image(0), bits("00"));
        assert_eq!(m.image(1), bits("01"));
    }

    #[test]
    fn lzmw_first_symbol_maps_to_zeros() {
        let s = Text::from_symbols(vec![5, 2, 9, 2]);
        let (_, m) = binary_reduce(&s, Scheme::Lzmw).unwrap();
        assert_eq!(m.level, 1);
        assert_eq!(m.image(5), bits("00"));
        let images: BTreeSet<&Bits> = m.table.values().collect();
        assert_eq!(images.len(), 3);
    }
}
