//! Straight-line grammars: conversion from parsings and expansion.

use std::fmt;

use crate::error::ModelError;
use crate::model::{LzmwPhrase, Parsing, PhrasePart, Phrases, Symbol, Text};

/// A right-hand-side symbol: a terminal letter or a reference to a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GSym {
    T(Symbol),
    N(usize),
}

/// A grammar that derives exactly one string.
///
/// Rules are indexed by position; any rule may have an arbitrary right-hand
/// side (including the empty one). Size is the total number of right-hand
/// side symbols over all rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grammar {
    rules: Vec<Vec<GSym>>,
    names: Vec<Option<String>>,
    start: usize,
}

impl Grammar {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a rule and returns its id.
    pub fn add_rule(&mut self, rhs: Vec<GSym>) -> usize {
        self.rules.push(rhs);
        self.names.push(None);
        self.rules.len() - 1
    }

    /// Appends a rule with a display name (used by the debug dump).
    pub fn add_named_rule(&mut self, name: impl Into<String>, rhs: Vec<GSym>) -> usize {
        let id = self.add_rule(rhs);
        self.names[id] = Some(name.into());
        id
    }

    /// Replaces the right-hand side of an existing rule.
    pub fn set_rule(&mut self, id: usize, rhs: Vec<GSym>) {
        self.rules[id] = rhs;
    }

    pub fn set_start(&mut self, id: usize) {
        self.start = id;
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn rules(&self) -> &[Vec<GSym>] {
        &self.rules
    }

    pub fn rule(&self, id: usize) -> &[GSym] {
        &self.rules[id]
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    /// Total right-hand-side length.
    pub fn size(&self) -> usize {
        self.rules.iter().map(Vec::len).sum()
    }

    /// Rules in an order where every rule comes after the rules it uses.
    fn topological_order(&self) -> Result<Vec<usize>, ModelError> {
        const NEW: u8 = 0;
        const ACTIVE: u8 = 1;
        const DONE: u8 = 2;
        let n = self.rules.len();
        if self.start >= n {
            return Err(ModelError::UndefinedRule {
                rule: self.start,
                target: self.start,
            });
        }
        let mut state = vec![NEW; n];
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<(usize, usize)> = vec![(self.start, 0)];
        state[self.start] = ACTIVE;
        while let Some(&mut (rule, ref mut next)) = stack.last_mut() {
            if *next == self.rules[rule].len() {
                state[rule] = DONE;
                order.push(rule);
                stack.pop();
                continue;
            }
            let sym = self.rules[rule][*next];
            *next += 1;
            if let GSym::N(target) = sym {
                if target >= n {
                    return Err(ModelError::UndefinedRule { rule, target });
                }
                match state[target] {
                    NEW => {
                        state[target] = ACTIVE;
                        stack.push((target, 0));
                    }
                    ACTIVE => return Err(ModelError::Cycle(target)),
                    _ => {}
                }
            }
        }
        Ok(order)
    }

    /// Length of the derived string, without expanding it.
    pub fn expansion_len(&self) -> Result<usize, ModelError> {
        let order = self.topological_order()?;
        let mut lens = vec![0usize; self.rules.len()];
        for r in order {
            lens[r] = self.rules[r]
                .iter()
                .map(|s| match *s {
                    GSym::T(_) => 1,
                    GSym::N(t) => lens[t],
                })
                .sum();
        }
        Ok(lens[self.start])
    }

    /// Expands the start rule. Linear in the output length plus grammar size.
    pub fn expand(&self) -> Result<Vec<Symbol>, ModelError> {
        let total = self.expansion_len()?;
        let mut out = Vec::with_capacity(total);
        let mut stack: Vec<(usize, usize)> = vec![(self.start, 0)];
        while let Some(&mut (rule, ref mut next)) = stack.last_mut() {
            match self.rules[rule].get(*next) {
                None => {
                    stack.pop();
                }
                Some(&sym) => {
                    *next += 1;
                    match sym {
                        GSym::T(c) => out.push(c),
                        GSym::N(t) => stack.push((t, 0)),
                    }
                }
            }
        }
        Ok(out)
    }

    /// Human-readable rule listing.
    pub fn dump(&self) -> String {
        let name = |id: usize| self.names[id].clone().unwrap_or_else(|| format!("R{id}"));
        let mut s = String::new();
        for (id, rhs) in self.rules.iter().enumerate() {
            let marker = if id == self.start { "*" } else { "" };
            s.push_str(&format!("{marker}{} ->", name(id)));
            if rhs.is_empty() {
                s.push_str(" ε");
            }
            for sym in rhs {
                match *sym {
                    GSym::T(c) => s.push_str(&format!(" {c}")),
                    GSym::N(t) => s.push_str(&format!(" {}", name(t))),
                }
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// One rule per phrase plus the start rule `S -> P_1 ... P_z`.
///
/// Phrase `i` gets rule id `i - 1`; the start rule is the last rule.
pub fn parsing_to_grammar(p: &Parsing) -> Result<Grammar, ModelError> {
    p.validate()?;
    let mut g = Grammar::new();
    let part = |x: PhrasePart| match x {
        PhrasePart::Literal(c) => GSym::T(c),
        PhrasePart::Phrase(j) => GSym::N(j - 1),
    };
    match &p.phrases {
        Phrases::Lzd(phrases) => {
            for (i, ph) in phrases.iter().enumerate() {
                g.add_named_rule(format!("P{}", i + 1), ph.parts().map(part).collect());
            }
        }
        Phrases::Lzmw(phrases) => {
            for (i, ph) in phrases.iter().enumerate() {
                let rhs = match *ph {
                    LzmwPhrase::Literal(c) => vec![GSym::T(c)],
                    LzmwPhrase::Pair(j) => vec![GSym::N(j - 1), GSym::N(j)],
                };
                g.add_named_rule(format!("P{}", i + 1), rhs);
            }
        }
    }
    let z = p.len();
    let start = g.add_named_rule("S", (0..z).map(GSym::N).collect());
    g.set_start(start);
    Ok(g)
}

/// Expands a grammar into a [`Text`] whose alphabet bound is tight.
pub fn expand_grammar(g: &Grammar) -> Result<Text, ModelError> {
    Ok(Text::from_symbols(g.expand()?))
}
