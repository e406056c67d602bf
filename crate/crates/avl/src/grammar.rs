//! Height-balanced straight-line programs over a shared node store.
//!
//! Nodes are immutable once built. Appending a copied substring builds the
//! O(log n) new nodes along the cut and joins them onto the root, so every
//! earlier node stays valid.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use lzdmw_core::Symbol;

use crate::error::AvlError;
use crate::fingerprint::{Fingerprint, HashConfig};

pub type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(Symbol),
    Pair(NodeId, NodeId),
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    node: Node,
    height: u32,
    fp: Fingerprint,
}

/// A text held as an AVL-balanced grammar whose nodes carry fingerprints.
/// Positions are 0-based and ranges half-open.
#[derive(Debug)]
pub struct AvlGrammar {
    cfg: HashConfig,
    slots: Vec<Slot>,
    leaves: HashMap<Symbol, NodeId>,
    root: Option<NodeId>,
    visits: AtomicU64,
}

impl AvlGrammar {
    pub fn new(cfg: HashConfig) -> Self {
        AvlGrammar {
            cfg,
            slots: Vec::new(),
            leaves: HashMap::new(),
            root: None,
            visits: AtomicU64::new(0),
        }
    }

    pub fn from_symbols(cfg: HashConfig, s: &[Symbol]) -> Self {
        let mut g = Self::new(cfg);
        for &c in s {
            g.append_literal(c);
        }
        g
    }

    pub fn config(&self) -> &HashConfig {
        &self.cfg
    }

    pub fn len(&self) -> usize {
        self.root.map_or(0, |r| self.len_of(r))
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    /// Every node ever built, including ones no longer reachable.
    pub fn node_count(&self) -> usize {
        self.slots.len()
    }

    /// Height of the derivation tree, leaves at height 0.
    pub fn height(&self) -> Option<u32> {
        self.root.map(|r| self.slots[r as usize].height)
    }

    pub fn node(&self, v: NodeId) -> Node {
        self.slots[v as usize].node
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.root.map_or(Fingerprint::EMPTY, |r| self.fp_of(r))
    }

    /// Nodes visited by queries and updates so far.
    pub fn visits(&self) -> u64 {
        self.visits.load(Ordering::Relaxed)
    }

    #[inline]
    fn visit(&self) {
        self.visits.fetch_add(1, Ordering::Relaxed);
    }

    #[inline]
    fn len_of(&self, v: NodeId) -> usize {
        self.slots[v as usize].fp.len
    }

    #[inline]
    fn h(&self, v: NodeId) -> u32 {
        self.slots[v as usize].height
    }

    #[inline]
    fn fp_of(&self, v: NodeId) -> Fingerprint {
        self.slots[v as usize].fp
    }

    fn children(&self, v: NodeId) -> (NodeId, NodeId) {
        match self.slots[v as usize].node {
            Node::Pair(l, r) => (l, r),
            Node::Leaf(_) => unreachable!("leaf has no children"),
        }
    }

    fn push(&mut self, slot: Slot) -> NodeId {
        self.visit();
        let id = NodeId::try_from(self.slots.len()).expect("node store exceeds u32");
        self.slots.push(slot);
        id
    }

    fn leaf(&mut self, c: Symbol) -> NodeId {
        if let Some(&v) = self.leaves.get(&c) {
            return v;
        }
        let fp = self.cfg.symbol(c);
        let v = self.push(Slot {
            node: Node::Leaf(c),
            height: 0,
            fp,
        });
        self.leaves.insert(c, v);
        v
    }

    fn mk(&mut self, l: NodeId, r: NodeId) -> NodeId {
        let fp = self.cfg.concat(self.fp_of(l), self.fp_of(r));
        let height = self.h(l).max(self.h(r)) + 1;
        self.push(Slot {
            node: Node::Pair(l, r),
            height,
            fp,
        })
    }

    /// `mk(a, b)` where the heights of `a` and `b` may differ by 2.
    fn balance(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let (ha, hb) = (self.h(a), self.h(b));
        if hb > ha + 1 {
            let (b1, b2) = self.children(b);
            if self.h(b2) >= self.h(b1) {
                let left = self.mk(a, b1);
                self.mk(left, b2)
            } else {
                let (b11, b12) = self.children(b1);
                let left = self.mk(a, b11);
                let right = self.mk(b12, b2);
                self.mk(left, right)
            }
        } else if ha > hb + 1 {
            let (a1, a2) = self.children(a);
            if self.h(a1) >= self.h(a2) {
                let right = self.mk(a2, b);
                self.mk(a1, right)
            } else {
                let (a21, a22) = self.children(a2);
                let left = self.mk(a1, a21);
                let right = self.mk(a22, b);
                self.mk(left, right)
            }
        } else {
            self.mk(a, b)
        }
    }

    /// Concatenation in O(|h(l) − h(r)| + 1) new nodes.
    fn join2(&mut self, l: NodeId, r: NodeId) -> NodeId {
        self.visit();
        let (hl, hr) = (self.h(l), self.h(r));
        if hl > hr + 1 {
            let (a, b) = self.children(l);
            let nr = self.join2(b, r);
            self.balance(a, nr)
        } else if hr > hl + 1 {
            let (c, d) = self.children(r);
            let nl = self.join2(l, c);
            self.balance(nl, d)
        } else {
            self.mk(l, r)
        }
    }

    fn join(&mut self, l: Option<NodeId>, r: Option<NodeId>) -> Option<NodeId> {
        match (l, r) {
            (None, x) | (x, None) => x,
            (Some(l), Some(r)) => Some(self.join2(l, r)),
        }
    }

    /// A tree for `v[i..j]`, sharing whole subtrees of `v`.
    fn range(&mut self, v: NodeId, i: usize, j: usize) -> Option<NodeId> {
        self.visit();
        if i >= j {
            return None;
        }
        if i == 0 && j == self.len_of(v) {
            return Some(v);
        }
        let (l, r) = self.children(v);
        let ll = self.len_of(l);
        if j <= ll {
            self.range(l, i, j)
        } else if i >= ll {
            self.range(r, i - ll, j - ll)
        } else {
            let a = self.range(l, i, ll);
            let b = self.range(r, 0, j - ll);
            self.join(a, b)
        }
    }

    fn check_range(&self, i: usize, j: usize) -> Result<(), AvlError> {
        let len = self.len();
        if i > j || j > len {
            return Err(AvlError::Range {
                start: i,
                end: j,
                len,
            });
        }
        Ok(())
    }

    pub fn append_literal(&mut self, c: Symbol) {
        let leaf = self.leaf(c);
        self.root = self.join(self.root, Some(leaf));
    }

    /// Appends a copy of `self[i..j]`.
    pub fn append_copy(&mut self, i: usize, j: usize) -> Result<(), AvlError> {
        self.check_range(i, j)?;
        if let Some(root) = self.root {
            let piece = self.range(root, i, j);
            self.root = self.join(Some(root), piece);
        }
        Ok(())
    }

    fn fp_range(&self, v: NodeId, i: usize, j: usize) -> Fingerprint {
        self.visit();
        if i >= j {
            return Fingerprint::EMPTY;
        }
        if i == 0 && j == self.len_of(v) {
            return self.fp_of(v);
        }
        let (l, r) = self.children(v);
        let ll = self.len_of(l);
        if j <= ll {
            self.fp_range(l, i, j)
        } else if i >= ll {
            self.fp_range(r, i - ll, j - ll)
        } else {
            let a = self.fp_range(l, i, ll);
            let b = self.fp_range(r, 0, j - ll);
            self.cfg.concat(a, b)
        }
    }

    /// `φ(self[i..j])` in O(log n).
    pub fn substring_fp(&self, i: usize, j: usize) -> Result<Fingerprint, AvlError> {
        self.check_range(i, j)?;
        Ok(match self.root {
            Some(r) => self.fp_range(r, i, j),
            None => Fingerprint::EMPTY,
        })
    }

    pub fn symbol_at(&self, i: usize) -> Result<Symbol, AvlError> {
        self.check_range(i, i + 1)?;
        let mut v = self.root.expect("nonempty");
        let mut i = i;
        loop {
            self.visit();
            match self.node(v) {
                Node::Leaf(c) => return Ok(c),
                Node::Pair(l, r) => {
                    let ll = self.len_of(l);
                    if i < ll {
                        v = l;
                    } else {
                        i -= ll;
                        v = r;
                    }
                }
            }
        }
    }

    fn collect(&self, v: NodeId, i: usize, j: usize, out: &mut Vec<Symbol>) {
        self.visit();
        if i >= j {
            return;
        }
        match self.node(v) {
            Node::Leaf(c) => out.push(c),
            Node::Pair(l, r) => {
                let ll = self.len_of(l);
                if i < ll {
                    self.collect(l, i, j.min(ll), out);
                }
                if j > ll {
                    self.collect(r, i.saturating_sub(ll), j - ll, out);
                }
            }
        }
    }

    /// `self[i..j]` in O(log n + j − i).
    pub fn extract(&self, i: usize, j: usize) -> Result<Vec<Symbol>, AvlError> {
        self.check_range(i, j)?;
        let mut out = Vec::with_capacity(j - i);
        if let Some(r) = self.root {
            self.collect(r, i, j, &mut out);
        }
        Ok(out)
    }

    /// Checks balance, heights, lengths and fingerprints of every node.
    pub fn validate(&self) -> Result<(), AvlError> {
        for (id, s) in self.slots.iter().enumerate() {
            let bad = |what: &str| Err(AvlError::Invalid(format!("node {id}: {what}")));
            match s.node {
                Node::Leaf(c) => {
                    if s.height != 0 || s.fp != self.cfg.symbol(c) {
                        return bad("leaf fields");
                    }
                }
                Node::Pair(l, r) => {
                    if l as usize >= id || r as usize >= id {
                        return bad("child built after parent");
                    }
                    let (hl, hr) = (self.h(l), self.h(r));
                    if hl.abs_diff(hr) > 1 {
                        return bad("unbalanced");
                    }
                    if s.height != hl.max(hr) + 1 {
                        return bad("height");
                    }
                    if s.fp != self.cfg.concat(self.fp_of(l), self.fp_of(r)) {
                        return bad("fingerprint");
                    }
                }
            }
        }
        Ok(())
    }

    /// One rule per line: `N5 -> N3 N4` or `N0 -> 'c'`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, s) in self.slots.iter().enumerate() {
            let _ = match s.node {
                Node::Leaf(c) => writeln!(out, "N{id} -> '{c}'"),
                Node::Pair(l, r) => writeln!(out, "N{id} -> N{l} N{r}"),
            };
        }
        if let Some(r) = self.root {
            let _ = writeln!(out, "start N{r}");
        }
        out
    }
}
