//! A compacted trie over substrings of a growing grammar, searched by fat
//! binary search on prefix fingerprints.
//!
//! Every node stores one occurrence of its string in the grammar, so the
//! trie itself never holds any text. Each non-root node `v` is registered
//! under its handle, the prefix of its string whose length is the 2-fattest
//! number in `(depth(parent), depth(v)]`.

use std::collections::HashMap;

use lzdmw_avl::{AvlGrammar, Fingerprint};
use lzdmw_core::{DictEntry, Symbol};

use crate::marked::MarkedAncestors;

pub type NodeId = usize;

pub const ROOT: NodeId = 0;

/// The number in `(a, b]` with the most trailing zeros. Needs `a < b`.
pub fn two_fattest(a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    let m = usize::BITS - 1 - (a ^ b).leading_zeros();
    (b >> m) << m
}

/// A string given by prefix fingerprints: an occurrence inside the grammar
/// followed by an optional block of symbols not yet in the grammar.
pub struct Query<'a> {
    occ: usize,
    head: usize,
    head_fp: Fingerprint,
    block: &'a [Symbol],
    block_fps: &'a [Fingerprint],
}

impl<'a> Query<'a> {
    pub fn in_grammar(occ: usize, len: usize) -> Self {
        Query {
            occ,
            head: len,
            head_fp: Fingerprint::EMPTY,
            block: &[],
            block_fps: &[],
        }
    }

    /// `g[occ..occ+head]` followed by `block`; `block_fps[i]` is the
    /// fingerprint of `block[..i]`.
    pub fn with_block(
        g: &AvlGrammar,
        occ: usize,
        head: usize,
        block: &'a [Symbol],
        block_fps: &'a [Fingerprint],
    ) -> Self {
        let head_fp = g
            .substring_fp(occ, occ + head)
            .expect("head inside the grammar");
        Query {
            occ,
            head,
            head_fp,
            block,
            block_fps,
        }
    }

    pub fn len(&self) -> usize {
        self.head + self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn prefix_fp(&self, g: &AvlGrammar, l: usize) -> Fingerprint {
        if l <= self.head {
            g.substring_fp(self.occ, self.occ + l)
                .expect("head inside the grammar")
        } else {
            g.config()
                .concat(self.head_fp, self.block_fps[l - self.head])
        }
    }

    fn symbol(&self, g: &AvlGrammar, i: usize) -> Symbol {
        if i < self.head {
            g.symbol_at(self.occ + i).expect("head inside the grammar")
        } else {
            self.block[i - self.head]
        }
    }
}

/// A point on a root path: at `node` when `depth == depth(node)`, else
/// inside the edge entering `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Locus {
    pub node: NodeId,
    pub depth: usize,
}

#[derive(Clone, Debug)]
struct TrieNode {
    parent: NodeId,
    depth: usize,
    occ: usize,
    /// First symbol of the edge entering the node.
    key: Symbol,
    entry: Option<DictEntry>,
    handle: Option<(u64, usize)>,
}

/// Work counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrieStats {
    pub handle_lookups: u64,
    pub fingerprint_compares: u64,
    pub child_steps: u64,
    /// Searches whose fat-binary-search answer was off the query's path.
    pub climbs: u64,
}

#[derive(Clone, Debug)]
pub struct ZTrie {
    nodes: Vec<TrieNode>,
    children: HashMap<(NodeId, Symbol), NodeId>,
    handles: HashMap<(u64, usize), NodeId>,
    marks: MarkedAncestors,
    stats: TrieStats,
}

impl Default for ZTrie {
    fn default() -> Self {
        Self::new()
    }
}

impl ZTrie {
    pub fn new() -> Self {
        ZTrie {
            nodes: vec![TrieNode {
                parent: ROOT,
                depth: 0,
                occ: 0,
                key: 0,
                entry: None,
                handle: None,
            }],
            children: HashMap::new(),
            handles: HashMap::new(),
            marks: MarkedAncestors::new(),
            stats: TrieStats::default(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn stats(&self) -> TrieStats {
        self.stats
    }

    pub fn marks(&self) -> &MarkedAncestors {
        &self.marks
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.nodes[v].depth
    }

    pub fn parent(&self, v: NodeId) -> NodeId {
        self.nodes[v].parent
    }

    /// Start of an occurrence of `v`'s string in the grammar.
    pub fn occ(&self, v: NodeId) -> usize {
        self.nodes[v].occ
    }

    pub fn entry(&self, v: NodeId) -> Option<DictEntry> {
        self.nodes[v].entry
    }

    pub fn child(&self, v: NodeId, c: Symbol) -> Option<NodeId> {
        self.children.get(&(v, c)).copied()
    }

    fn node_fp(&self, g: &AvlGrammar, v: NodeId, l: usize) -> Fingerprint {
        let o = self.nodes[v].occ;
        g.substring_fp(o, o + l)
            .expect("node strings lie in the grammar")
    }

    /// Largest `l ∈ [lo, hi]` with `q[..l] = str(v)[..l]`, given that `lo`
    /// qualifies.
    pub fn lcp(&mut self, g: &AvlGrammar, q: &Query, v: NodeId, lo: usize, hi: usize) -> usize {
        let (mut lo, mut hi) = (lo, hi);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            self.stats.fingerprint_compares += 1;
            if q.prefix_fp(g, mid) == self.node_fp(g, v, mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    /// The deepest node whose handle matches a prefix of `q`, following
    /// the 2-fattest numbers of the shrinking interval of candidate
    /// lengths. Unvalidated.
    pub fn fat_search(&mut self, g: &AvlGrammar, q: &Query) -> NodeId {
        let (mut a, mut b) = (0, q.len());
        let mut found = ROOT;
        while a < b {
            let f = two_fattest(a, b);
            self.stats.handle_lookups += 1;
            match self.handles.get(&(q.prefix_fp(g, f).hash, f)) {
                Some(&v) => {
                    found = v;
                    a = self.nodes[v].depth;
                }
                None => b = f - 1,
            }
        }
        found
    }

    /// End of the longest prefix of `q` that spells a root path.
    pub fn locate(&mut self, g: &AvlGrammar, q: &Query) -> Locus {
        let m = q.len();
        if m == 0 {
            return Locus {
                node: ROOT,
                depth: 0,
            };
        }
        let mut v = self.fat_search(g, q);
        let (mut u, mut d);
        loop {
            if v == ROOT {
                (u, d) = (ROOT, 0);
                break;
            }
            let p = self.nodes[v].parent;
            let dp = self.nodes[p].depth;
            let l = self.lcp(g, q, v, 0, m.min(self.nodes[v].depth));
            if l < dp {
                self.stats.climbs += 1;
                v = p;
            } else if l == self.nodes[v].depth {
                (u, d) = (v, l);
                break;
            } else if l == dp {
                (u, d) = (p, dp);
                break;
            } else {
                return Locus { node: v, depth: l };
            }
        }
        loop {
            if d == m {
                return Locus { node: u, depth: d };
            }
            self.stats.child_steps += 1;
            let Some(c) = self.child(u, q.symbol(g, d)) else {
                return Locus { node: u, depth: d };
            };
            let l = self.lcp(g, q, c, d + 1, m.min(self.nodes[c].depth));
            if l < self.nodes[c].depth {
                return Locus { node: c, depth: l };
            }
            (u, d) = (c, l);
        }
    }

    fn set_handle(&mut self, g: &AvlGrammar, v: NodeId) {
        if let Some(key) = self.nodes[v].handle.take() {
            if self.handles.get(&key) == Some(&v) {
                self.handles.remove(&key);
            }
        }
        let dp = self.nodes[self.nodes[v].parent].depth;
        let f = two_fattest(dp, self.nodes[v].depth);
        let key = (self.node_fp(g, v, f).hash, f);
        // a clash here is a fingerprint collision; the older node keeps it
        if let std::collections::hash_map::Entry::Vacant(e) = self.handles.entry(key) {
            e.insert(v);
            self.nodes[v].handle = Some(key);
        }
    }

    fn push_node(&mut self, parent: NodeId, depth: usize, occ: usize, key: Symbol) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(TrieNode {
            parent,
            depth,
            occ,
            key,
            entry: None,
            handle: None,
        });
        id
    }

    /// Makes the point `depth` inside the edge entering `c` explicit.
    fn split(&mut self, g: &AvlGrammar, c: NodeId, depth: usize) -> NodeId {
        let p = self.nodes[c].parent;
        let occ = self.nodes[c].occ;
        let key = self.nodes[c].key;
        let mid = self.push_node(p, depth, occ, key);
        let ckey = g
            .symbol_at(occ + depth)
            .expect("node strings lie in the grammar");
        self.children.insert((p, key), mid);
        self.children.insert((mid, ckey), c);
        self.nodes[c].parent = mid;
        self.nodes[c].key = ckey;
        self.set_handle(g, c);
        self.set_handle(g, mid);
        self.marks.insert_above(mid, c);
        mid
    }

    fn add_leaf(&mut self, g: &AvlGrammar, u: NodeId, occ: usize, len: usize) -> NodeId {
        let d = self.nodes[u].depth;
        let key = g
            .symbol_at(occ + d)
            .expect("inserted strings lie in the grammar");
        let leaf = self.push_node(u, len, occ, key);
        self.children.insert((u, key), leaf);
        self.set_handle(g, leaf);
        self.marks.add_leaf(u, leaf);
        leaf
    }

    /// Inserts `g[occ..occ+len]` and marks its node with `entry` unless the
    /// node is marked already. Returns the node.
    pub fn insert(&mut self, g: &AvlGrammar, occ: usize, len: usize, entry: DictEntry) -> NodeId {
        assert!(len > 0, "empty strings are not dictionary entries");
        let q = Query::in_grammar(occ, len);
        let loc = self.locate(g, &q);
        let mut v = loc.node;
        if loc.depth < self.nodes[v].depth {
            v = self.split(g, v, loc.depth);
        }
        if loc.depth < len {
            v = self.add_leaf(g, v, occ, len);
        }
        if self.marks.mark(v) {
            self.nodes[v].entry = Some(entry);
        }
        v
    }

    /// The deepest marked node at or above `loc`.
    pub fn nearest_marked(&mut self, loc: Locus) -> Option<NodeId> {
        let base = if loc.depth == self.nodes[loc.node].depth {
            loc.node
        } else {
            self.nodes[loc.node].parent
        };
        self.marks.nearest(base)
    }

    /// Checks the node strings, child keys and handles against the grammar.
    pub fn validate(&self, g: &AvlGrammar) -> Result<(), String> {
        for (v, n) in self.nodes.iter().enumerate().skip(1) {
            let p = &self.nodes[n.parent];
            if p.depth >= n.depth {
                return Err(format!("node {v}: depth not below parent"));
            }
            let s = g
                .extract(n.occ, n.occ + n.depth)
                .map_err(|e| e.to_string())?;
            let ps = g
                .extract(p.occ, p.occ + p.depth)
                .map_err(|e| e.to_string())?;
            if s[..p.depth] != ps[..] {
                return Err(format!("node {v}: string does not extend its parent's"));
            }
            if s[p.depth] != n.key || self.child(n.parent, n.key) != Some(v) {
                return Err(format!("node {v}: child key"));
            }
            if n.handle.is_none() {
                return Err(format!("node {v}: no handle"));
            }
            if self.marks.is_marked(v) != n.entry.is_some() {
                return Err(format!("node {v}: mark and entry disagree"));
            }
            let branching = self.children.keys().filter(|(u, _)| *u == v).count();
            if n.entry.is_none() && branching < 2 {
                return Err(format!("node {v}: unmarked and not branching"));
            }
        }
        Ok(())
    }
}
