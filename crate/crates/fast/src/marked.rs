//! Nearest marked ancestor over a growing tree.
//!
//! The Euler tour of the tree is kept in a splay tree, one token for the
//! opening and one for the closing of each node. A marked node weighs +1 at
//! its opening and −1 at its closing. Before the opening of `v`, the suffix
//! sums are 1 exactly at the openings of marked ancestors whose subtree is
//! not closed yet, and at most 0 past the deepest one, so the deepest marked
//! ancestor is the rightmost token with suffix sum ≥ 1.

const NIL: u32 = u32::MAX;
const NEG: i64 = i64::MIN / 4;

#[derive(Clone, Copy, Debug)]
struct Tok {
    parent: u32,
    left: u32,
    right: u32,
    w: i64,
    sum: i64,
    max_suffix: i64,
}

impl Tok {
    const BLANK: Tok = Tok {
        parent: NIL,
        left: NIL,
        right: NIL,
        w: 0,
        sum: 0,
        max_suffix: 0,
    };
}

#[derive(Clone, Debug)]
pub struct MarkedAncestors {
    toks: Vec<Tok>,
    marked: Vec<bool>,
    rotations: u64,
}

fn open(v: usize) -> u32 {
    (2 * v) as u32
}

fn close(v: usize) -> u32 {
    (2 * v + 1) as u32
}

impl Default for MarkedAncestors {
    fn default() -> Self {
        Self::new()
    }
}

impl MarkedAncestors {
    /// A tree holding only the root, node 0.
    pub fn new() -> Self {
        let mut m = MarkedAncestors {
            toks: vec![Tok::BLANK; 2],
            marked: vec![false],
            rotations: 0,
        };
        m.toks[0].right = 1;
        m.toks[1].parent = 0;
        m.update(1);
        m.update(0);
        m
    }

    pub fn num_nodes(&self) -> usize {
        self.marked.len()
    }

    /// Splay rotations so far.
    pub fn rotations(&self) -> u64 {
        self.rotations
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.marked[v]
    }

    fn sum(&self, x: u32) -> i64 {
        if x == NIL {
            0
        } else {
            self.toks[x as usize].sum
        }
    }

    fn max_suffix(&self, x: u32) -> i64 {
        if x == NIL {
            NEG
        } else {
            self.toks[x as usize].max_suffix
        }
    }

    fn update(&mut self, x: u32) {
        let t = self.toks[x as usize];
        let right = self.sum(t.right);
        let sum = self.sum(t.left) + t.w + right;
        let best = self
            .max_suffix(t.right)
            .max(t.w + right)
            .max(self.max_suffix(t.left) + t.w + right);
        let t = &mut self.toks[x as usize];
        t.sum = sum;
        t.max_suffix = best;
    }

    fn rotate(&mut self, x: u32) {
        self.rotations += 1;
        let p = self.toks[x as usize].parent;
        let g = self.toks[p as usize].parent;
        if self.toks[p as usize].left == x {
            let b = self.toks[x as usize].right;
            self.toks[p as usize].left = b;
            if b != NIL {
                self.toks[b as usize].parent = p;
            }
            self.toks[x as usize].right = p;
        } else {
            let b = self.toks[x as usize].left;
            self.toks[p as usize].right = b;
            if b != NIL {
                self.toks[b as usize].parent = p;
            }
            self.toks[x as usize].left = p;
        }
        self.toks[p as usize].parent = x;
        self.toks[x as usize].parent = g;
        if g != NIL {
            if self.toks[g as usize].left == p {
                self.toks[g as usize].left = x;
            } else {
                self.toks[g as usize].right = x;
            }
        }
        self.update(p);
        self.update(x);
    }

    fn splay(&mut self, x: u32) {
        loop {
            let p = self.toks[x as usize].parent;
            if p == NIL {
                return;
            }
            let g = self.toks[p as usize].parent;
            if g != NIL {
                let zig_zig =
                    (self.toks[g as usize].left == p) == (self.toks[p as usize].left == x);
                self.rotate(if zig_zig { p } else { x });
            }
            self.rotate(x);
        }
    }

    fn grow(&mut self, v: usize) {
        if self.marked.len() <= v {
            self.marked.resize(v + 1, false);
            self.toks.resize(2 * v + 2, Tok::BLANK);
        }
    }

    fn insert_after(&mut self, x: u32, y: u32) {
        self.splay(x);
        let r = self.toks[x as usize].right;
        self.toks[y as usize] = Tok {
            parent: x,
            left: NIL,
            right: r,
            ..Tok::BLANK
        };
        if r != NIL {
            self.toks[r as usize].parent = y;
        }
        self.toks[x as usize].right = y;
        self.update(y);
        self.update(x);
    }

    fn insert_before(&mut self, x: u32, y: u32) {
        self.splay(x);
        let l = self.toks[x as usize].left;
        self.toks[y as usize] = Tok {
            parent: x,
            left: l,
            right: NIL,
            ..Tok::BLANK
        };
        if l != NIL {
            self.toks[l as usize].parent = y;
        }
        self.toks[x as usize].left = y;
        self.update(y);
        self.update(x);
    }

    /// Adds `child` as a new leaf below `parent`.
    pub fn add_leaf(&mut self, parent: usize, child: usize) {
        self.grow(child);
        self.insert_after(open(parent), open(child));
        self.insert_after(open(child), close(child));
    }

    /// Puts the new node `mid` between `child` and its parent.
    pub fn insert_above(&mut self, mid: usize, child: usize) {
        self.grow(mid);
        self.insert_before(open(child), open(mid));
        self.insert_after(close(child), close(mid));
    }

    fn set_weight(&mut self, x: u32, w: i64) {
        self.splay(x);
        self.toks[x as usize].w = w;
        self.update(x);
    }

    /// Marks `v`; returns false if it was marked already.
    pub fn mark(&mut self, v: usize) -> bool {
        if self.marked[v] {
            return false;
        }
        self.marked[v] = true;
        self.set_weight(open(v), 1);
        self.set_weight(close(v), -1);
        true
    }

    /// The deepest marked node on the path from the root to `v`, `v`
    /// included.
    pub fn nearest(&mut self, v: usize) -> Option<usize> {
        if self.marked[v] {
            return Some(v);
        }
        let o = open(v);
        self.splay(o);
        let mut x = self.toks[o as usize].left;
        let mut acc = 0;
        if self.max_suffix(x) < 1 {
            return None;
        }
        loop {
            let t = self.toks[x as usize];
            if t.right != NIL && self.max_suffix(t.right) + acc >= 1 {
                x = t.right;
                continue;
            }
            acc += self.sum(t.right);
            if t.w + acc >= 1 {
                break;
            }
            acc += t.w;
            x = t.left;
        }
        self.splay(x);
        Some(x as usize / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_mark_is_its_own_answer() {
        let mut m = MarkedAncestors::new();
        m.add_leaf(0, 1);
        assert!(m.mark(1));
        assert!(!m.mark(1));
        assert_eq!(m.nearest(1), Some(1));
    }

    #[test]
    fn sibling_sees_nothing() {
        let mut m = MarkedAncestors::new();
        m.add_leaf(0, 1);
        m.add_leaf(0, 2);
        m.mark(1);
        assert_eq!(m.nearest(1), Some(1));
        assert_eq!(m.nearest(2), None);
        assert_eq!(m.nearest(0), None);
    }

    #[test]
    fn split_keeps_nesting() {
        let mut m = MarkedAncestors::new();
        m.add_leaf(0, 1);
        m.add_leaf(1, 2);
        m.mark(1);
        m.insert_above(3, 2);
        assert_eq!(m.nearest(2), Some(1));
        m.mark(3);
        assert_eq!(m.nearest(2), Some(3));
        m.add_leaf(3, 4);
        assert_eq!(m.nearest(4), Some(3));
        m.add_leaf(1, 5);
        assert_eq!(m.nearest(5), Some(1));
    }
}
