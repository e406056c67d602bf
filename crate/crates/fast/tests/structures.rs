use lzdmw_avl::AvlGrammar;
use lzdmw_core::{DictEntry, Symbol};
use lzdmw_fast::ztrie::ROOT;
use lzdmw_fast::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn marked_ancestors_match_walk_up() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let mut m = MarkedAncestors::new();
        let mut parent: Vec<usize> = vec![0];
        let mut marked = vec![false];
        for _ in 0..400 {
            let n = parent.len();
            match rng.gen_range(0..4) {
                0 => {
                    let p = rng.gen_range(0..n);
                    m.add_leaf(p, n);
                    parent.push(p);
                    marked.push(false);
                }
                1 if n > 1 => {
                    let c = rng.gen_range(1..n);
                    m.insert_above(n, c);
                    parent.push(parent[c]);
                    parent[c] = n;
                    marked.push(false);
                }
                2 => {
                    let v = rng.gen_range(0..n);
                    m.mark(v);
                    marked[v] = true;
                }
                _ => {
                    let v = rng.gen_range(0..n);
                    let mut u = v;
                    let want = loop {
                        if marked[u] {
                            break Some(u);
                        }
                        if u == 0 {
                            break None;
                        }
                        u = parent[u];
                    };
                    assert_eq!(m.nearest(v), want);
                }
            }
        }
    }
}

fn lcp(a: &[Symbol], b: &[Symbol]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[test]
fn trie_locates_like_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for round in 0..10 {
        let text: Vec<Symbol> = (0..3000).map(|_| rng.gen_range(0..3)).collect();
        let g = AvlGrammar::from_symbols(HashConfig::seeded(round), &text);
        let mut t = ZTrie::new();
        let mut strings: Vec<&[Symbol]> = Vec::new();
        for i in 0..200 {
            let len = rng.gen_range(1..40);
            let occ = rng.gen_range(0..text.len() - len);
            t.insert(&g, occ, len, DictEntry::Phrase(i + 1));
            strings.push(&text[occ..occ + len]);
        }
        t.validate(&g).unwrap();
        assert!(t.num_nodes() <= 2 * strings.len() + 1);
        for _ in 0..500 {
            let len = rng.gen_range(1..60);
            let occ = rng.gen_range(0..text.len() - len);
            let q = &text[occ..occ + len];
            let want = strings.iter().map(|s| lcp(s, q)).max().unwrap();
            let loc = t.locate(&g, &Query::in_grammar(occ, len));
            assert_eq!(loc.depth, want);
            let best = strings
                .iter()
                .filter(|s| s.len() <= want && q.starts_with(s))
                .map(|s| s.len())
                .max();
            let got = t.nearest_marked(loc).map(|v| t.depth(v));
            assert_eq!(got, best);
        }
        assert_eq!(t.stats().climbs, 0);
    }
}

#[test]
fn lcp_by_fingerprint_matches_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let text: Vec<Symbol> = (0..4000).map(|_| rng.gen_range(0..2)).collect();
    let g = AvlGrammar::from_symbols(HashConfig::seeded(3), &text);
    let mut t = ZTrie::new();
    let v = t.insert(&g, 0, 2000, DictEntry::Phrase(1));
    for _ in 0..10_000 {
        let len = rng.gen_range(0..2000);
        let occ = rng.gen_range(0..text.len() - len);
        let q = Query::in_grammar(occ, len);
        let got = t.lcp(&g, &q, v, 0, len);
        assert_eq!(got, lcp(&text[..2000], &text[occ..occ + len]));
    }
    assert_eq!(t.lcp(&g, &Query::in_grammar(0, 2000), v, 0, 2000), 2000);
}

#[test]
fn exact_query_returns_its_node() {
    let text: Vec<Symbol> = b"abracadabra".iter().map(|&b| Symbol::from(b)).collect();
    let g = AvlGrammar::from_symbols(HashConfig::seeded(5), &text);
    let mut t = ZTrie::new();
    let a = t.insert(&g, 0, 4, DictEntry::Phrase(1));
    let b = t.insert(&g, 4, 3, DictEntry::Phrase(2));
    assert_eq!(t.locate(&g, &Query::in_grammar(7, 4)).node, a);
    assert_eq!(t.locate(&g, &Query::in_grammar(4, 3)).node, b);
    assert_eq!(t.fat_search(&g, &Query::in_grammar(0, 4)), a);
    let zero = t.locate(&g, &Query::in_grammar(2, 1));
    assert_eq!(zero.node, ROOT);
    assert_eq!(zero.depth, 0);
}
