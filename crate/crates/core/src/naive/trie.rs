use std::collections::BTreeMap;

use crate::model::Symbol;

pub type NodeId = usize;

/// What a marked node stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DictEntry {
    Letter,
    /// 1-based LZD phrase index.
    Phrase(usize),
    /// 1-based `j` of the LZMW pair `p_j p_{j+1}`.
    Pair(usize),
}

/// Work counters for the naive parsers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    /// Symbols compared, including the failed comparison that ends a walk.
    pub symbol_comparisons: u64,
    /// Trie edges walked. A compacted edge with a label of length `l`
    /// that is walked for `m` symbols counts `m`: the count is in the
    /// units of the uncompacted trie the compacted one represents.
    pub edges_traversed: u64,
    /// Explicit (compacted) edges entered.
    pub explicit_edges: u64,
    pub nodes_created: u64,
}

impl StepStats {
    pub fn to_pairs(&self) -> [(&'static str, u64); 4] {
        [
            ("symbol_comparisons", self.symbol_comparisons),
            ("edges_traversed", self.edges_traversed),
            ("explicit_edges", self.explicit_edges),
            ("nodes_created", self.nodes_created),
        ]
    }
}

#[derive(Clone, Debug)]
struct Node {
    parent: Option<NodeId>,
    /// Edge label as `text[start..end]`; empty for the root.
    start: usize,
    end: usize,
    depth: usize,
    children: BTreeMap<Symbol, NodeId>,
    entry: Option<DictEntry>,
}

/// Result of walking the trie along a suffix of the text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Descent {
    /// Length of the longest prefix spelled from the root.
    pub matched_len: usize,
    /// Length of the deepest marked node on that path (0 if none).
    pub marked_len: usize,
    pub marked_node: Option<NodeId>,
}

/// Compacted trie whose edge labels are intervals of one text.
#[derive(Clone, Debug)]
pub struct CompactedTrie {
    nodes: Vec<Node>,
}

impl Default for CompactedTrie {
    fn default() -> Self {
        Self::new()
    }
}

impl CompactedTrie {
    pub const ROOT: NodeId = 0;

    pub fn new() -> Self {
        CompactedTrie {
            nodes: vec![Node {
                parent: None,
                start: 0,
                end: 0,
                depth: 0,
                children: BTreeMap::new(),
                entry: None,
            }],
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.nodes[v].depth
    }

    pub fn entry(&self, v: NodeId) -> Option<DictEntry> {
        self.nodes[v].entry
    }

    pub fn is_marked(&self, v: NodeId) -> bool {
        self.nodes[v].entry.is_some()
    }

    /// Walks from the root along `text[from..]`.
    pub fn descend(&self, text: &[Symbol], from: usize, stats: &mut StepStats) -> Descent {
        let n = text.len();
        let mut node = Self::ROOT;
        let mut depth = 0;
        let mut marked: Option<NodeId> = None;
        while from + depth < n {
            stats.symbol_comparisons += 1;
            let Some(&child) = self.nodes[node].children.get(&text[from + depth]) else {
                break;
            };
            stats.explicit_edges += 1;
            let (cs, ce) = (self.nodes[child].start, self.nodes[child].end);
            let mut i = 1;
            while i < ce - cs && from + depth + i < n {
                stats.symbol_comparisons += 1;
                if text[cs + i] != text[from + depth + i] {
                    break;
                }
                i += 1;
            }
            stats.edges_traversed += i as u64;
            depth += i;
            if i < ce - cs {
                break;
            }
            node = child;
            if self.nodes[child].entry.is_some() {
                marked = Some(child);
            }
        }
        Descent {
            matched_len: depth,
            marked_len: marked.map_or(0, |m| self.nodes[m].depth),
            marked_node: marked,
        }
    }

    fn new_node(
        &mut self,
        parent: NodeId,
        start: usize,
        end: usize,
        stats: &mut StepStats,
    ) -> NodeId {
        let depth = self.nodes[parent].depth + (end - start);
        self.nodes.push(Node {
            parent: Some(parent),
            start,
            end,
            depth,
            children: BTreeMap::new(),
            entry: None,
        });
        stats.nodes_created += 1;
        self.nodes.len() - 1
    }

    /// Makes sure a node spelling `text[start..end]` exists and marks it with
    /// `entry` unless it already carries a mark. At most two nodes are created.
    pub fn insert_marked(
        &mut self,
        text: &[Symbol],
        start: usize,
        end: usize,
        entry: DictEntry,
        stats: &mut StepStats,
    ) -> NodeId {
        let len = end - start;
        let mut node = Self::ROOT;
        let mut depth = 0;
        let target = loop {
            if depth == len {
                break node;
            }
            stats.symbol_comparisons += 1;
            let c = text[start + depth];
            let Some(&child) = self.nodes[node].children.get(&c) else {
                let leaf = self.new_node(node, start + depth, end, stats);
                self.nodes[node].children.insert(c, leaf);
                break leaf;
            };
            stats.explicit_edges += 1;
            let (cs, ce) = (self.nodes[child].start, self.nodes[child].end);
            let mut i = 1;
            while i < ce - cs && depth + i < len {
                stats.symbol_comparisons += 1;
                if text[cs + i] != text[start + depth + i] {
                    break;
                }
                i += 1;
            }
            stats.edges_traversed += i as u64;
            if i == ce - cs {
                depth += i;
                node = child;
                continue;
            }
            // split the edge after i symbols
            let mid = self.new_node(node, cs, cs + i, stats);
            self.nodes[node].children.insert(c, mid);
            self.nodes[mid].children.insert(text[cs + i], child);
            self.nodes[child].parent = Some(mid);
            self.nodes[child].start = cs + i;
            depth += i;
            if depth == len {
                break mid;
            }
            let leaf = self.new_node(mid, start + depth, end, stats);
            self.nodes[mid].children.insert(text[start + depth], leaf);
            break leaf;
        };
        if self.nodes[target].entry.is_none() {
            self.nodes[target].entry = Some(entry);
        }
        target
    }

    /// The string spelled from the root to `v`.
    pub fn spell(&self, text: &[Symbol], v: NodeId) -> Vec<Symbol> {
        let mut labels = Vec::new();
        let mut cur = v;
        while let Some(p) = self.nodes[cur].parent {
            labels.push(&text[self.nodes[cur].start..self.nodes[cur].end]);
            cur = p;
        }
        labels.into_iter().rev().flatten().copied().collect()
    }

    /// Strings of all marked nodes, with their marks.
    pub fn marked_strings(&self, text: &[Symbol]) -> Vec<(Vec<Symbol>, DictEntry)> {
        (0..self.nodes.len())
            .filter_map(|v| self.nodes[v].entry.map(|e| (self.spell(text, v), e)))
            .collect()
    }

    /// Checks the structural invariants of a compacted trie.
    pub fn validate(&self, text: &[Symbol]) -> Result<(), String> {
        for (id, node) in self.nodes.iter().enumerate() {
            if id == Self::ROOT {
                if node.parent.is_some() || node.start != node.end {
                    return Err("root has a parent or label".into());
                }
            } else {
                let p = node.parent.ok_or(format!("node {id} has no parent"))?;
                if node.end <= node.start || node.end > text.len() {
                    return Err(format!("node {id} has a bad label"));
                }
                if node.depth != self.nodes[p].depth + node.end - node.start {
                    return Err(format!("node {id} has a wrong depth"));
                }
                if self.nodes[p].children.get(&text[node.start]) != Some(&id) {
                    return Err(format!("node {id} is not filed under its first symbol"));
                }
                if node.entry.is_none() && node.children.len() < 2 {
                    return Err(format!("unmarked node {id} does not branch"));
                }
            }
            for (&c, &ch) in &node.children {
                if self.nodes[ch].parent != Some(id) || text[self.nodes[ch].start] != c {
                    return Err(format!("child {ch} of {id} is misfiled"));
                }
            }
        }
        Ok(())
    }
}
