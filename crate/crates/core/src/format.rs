//! On-disk formats.
//!
//! * `.sym` texts: a `#sigma <N>` header line, then decimal symbols separated
//!   by spaces or newlines.
//! * raw texts: one byte per symbol, alphabet bound 256.
//! * parsings: a `LZD <z> <n>` or `LZMW <z> <n>` header, then one phrase per
//!   line made of `L:<symbol>` / `P:<index>` tokens.
//! * stats: flat `key=value` lines.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::error::FormatError;
use crate::model::{LzdPhrase, LzmwPhrase, Parsing, PhrasePart, Phrases, Scheme, Symbol, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TextFormat {
    /// `.sym` if the data starts with `#sigma`, raw bytes otherwise.
    #[default]
    Auto,
    Sym,
    Raw,
}

pub fn write_sym<W: Write>(mut w: W, text: &Text) -> io::Result<()> {
    writeln!(w, "#sigma {}", text.alphabet_bound())?;
    let mut line = String::with_capacity(text.len() * 4);
    for (i, c) in text.symbols().iter().enumerate() {
        if i > 0 {
            line.push(' ');
        }
        write!(line, "{c}").expect("writing to a String");
    }
    line.push('\n');
    w.write_all(line.as_bytes())
}

pub fn sym_string(text: &Text) -> String {
    let mut buf = Vec::new();
    write_sym(&mut buf, text).expect("writing to a Vec");
    String::from_utf8(buf).expect("ascii output")
}

pub fn parse_sym(data: &str) -> Result<Text, FormatError> {
    let mut lines = data
        .lines()
        .enumerate()
        .skip_while(|(_, l)| l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    let mut it = header.split_whitespace();
    if it.next() != Some("#sigma") {
        return Err(FormatError::syntax(
            hline + 1,
            "expected `#sigma <N>` header",
        ));
    }
    let bound: u64 = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| FormatError::syntax(hline + 1, "bad alphabet bound"))?;
    if it.next().is_some() {
        return Err(FormatError::syntax(
            hline + 1,
            "trailing tokens after header",
        ));
    }
    let mut symbols = Vec::new();
    for (lno, line) in lines {
        for tok in line.split_whitespace() {
            let c: Symbol = tok
                .parse()
                .map_err(|_| FormatError::syntax(lno + 1, format!("bad symbol {tok:?}")))?;
            symbols.push(c);
        }
    }
    if symbols.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(Text::new(symbols, bound)?)
}

pub fn read_text(data: &[u8], format: TextFormat) -> Result<Text, FormatError> {
    let sym = match format {
        TextFormat::Sym => true,
        TextFormat::Raw => false,
        TextFormat::Auto => data.starts_with(b"#sigma"),
    };
    if sym {
        let s = std::str::from_utf8(data).map_err(|_| FormatError::syntax(1, "not ASCII"))?;
        parse_sym(s)
    } else if data.is_empty() {
        Err(FormatError::Empty)
    } else {
        Ok(Text::from_bytes(data))
    }
}

pub fn write_raw<W: Write>(mut w: W, text: &Text) -> Result<(), FormatError> {
    if text.alphabet_bound() > 256 {
        return Err(FormatError::syntax(
            0,
            format!(
                "alphabet bound {} does not fit in bytes",
                text.alphabet_bound()
            ),
        ));
    }
    let bytes: Vec<u8> = text.symbols().iter().map(|&c| c as u8).collect();
    w.write_all(&bytes)?;
    Ok(())
}

fn part_token(p: PhrasePart) -> String {
    match p {
        PhrasePart::Literal(c) => format!("L:{c}"),
        PhrasePart::Phrase(j) => format!("P:{j}"),
    }
}

pub fn write_parsing<W: Write>(mut w: W, p: &Parsing) -> io::Result<()> {
    let tag = match p.scheme() {
        Scheme::Lzd => "LZD",
        Scheme::Lzmw => "LZMW",
    };
    let mut out = format!("{tag} {} {}\n", p.len(), p.source_len);
    match &p.phrases {
        Phrases::Lzd(ph) => {
            for x in ph {
                out.push_str(&part_token(x.first));
                if let Some(s) = x.second {
                    out.push(' ');
                    out.push_str(&part_token(s));
                }
                out.push('\n');
            }
        }
        Phrases::Lzmw(ph) => {
            for x in ph {
                let tok = match *x {
                    LzmwPhrase::Literal(c) => format!("L:{c}"),
                    LzmwPhrase::Pair(j) => format!("P:{j}"),
                };
                out.push_str(&tok);
                out.push('\n');
            }
        }
    }
    w.write_all(out.as_bytes())
}

pub fn parsing_string(p: &Parsing) -> String {
    let mut buf = Vec::new();
    write_parsing(&mut buf, p).expect("writing to a Vec");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_part(tok: &str, line: usize) -> Result<PhrasePart, FormatError> {
    let bad = || FormatError::syntax(line, format!("bad token {tok:?}"));
    let (kind, val) = tok.split_once(':').ok_or_else(bad)?;
    match kind {
        "L" => Ok(PhrasePart::Literal(val.parse().map_err(|_| bad())?)),
        "P" => Ok(PhrasePart::Phrase(val.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

pub fn parse_parsing(data: &str) -> Result<Parsing, FormatError> {
    let mut lines = data
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(FormatError::Empty)?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || FormatError::syntax(hline + 1, "expected `LZD|LZMW <z> <n>` header");
    if head.len() != 3 {
        return Err(bad_header());
    }
    let z: usize = head[1].parse().map_err(|_| bad_header())?;
    let n: usize = head[2].parse().map_err(|_| bad_header())?;
    let parsing = match head[0] {
        "LZD" => {
            let mut phrases = Vec::with_capacity(z);
            for (lno, line) in lines {
                let toks: Vec<&str> = line.split_whitespace().collect();
                let ph = match toks.as_slice() {
                    [a] => LzdPhrase::single(parse_part(a, lno + 1)?),
                    [a, b] => LzdPhrase::pair(parse_part(a, lno + 1)?, parse_part(b, lno + 1)?),
                    _ => {
                        return Err(FormatError::syntax(
                            lno + 1,
                            "LZD phrase needs 1 or 2 tokens",
                        ))
                    }
                };
                phrases.push(ph);
            }
            Parsing::lzd(phrases, n)
        }
        "LZMW" => {
            let mut phrases = Vec::with_capacity(z);
            for (lno, line) in lines {
                let toks: Vec<&str> = line.split_whitespace().collect();
                let [tok] = toks.as_slice() else {
                    return Err(FormatError::syntax(lno + 1, "LZMW phrase needs 1 token"));
                };
                phrases.push(match parse_part(tok, lno + 1)? {
                    PhrasePart::Literal(c) => LzmwPhrase::Literal(c),
                    PhrasePart::Phrase(j) => LzmwPhrase::Pair(j),
                });
            }
            Parsing::lzmw(phrases, n)
        }
        _ => return Err(bad_header()),
    };
    if parsing.len() != z {
        return Err(FormatError::syntax(
            hline + 1,
            format!("header announces {z} phrases, found {}", parsing.len()),
        ));
    }
    parsing.validate()?;
    Ok(parsing)
}

/// Writes `key=value` lines.
pub fn write_stats<W: Write>(mut w: W, pairs: &[(&str, u64)]) -> io::Result<()> {
    for (k, v) in pairs {
        writeln!(w, "{k}={v}")?;
    }
    Ok(())
}
