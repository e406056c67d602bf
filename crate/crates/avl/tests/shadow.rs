use lzdmw_avl::*;
use lzdmw_core::Symbol;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn height_bound(n: usize) -> f64 {
    1.45 * ((n + 2) as f64).log2()
}

#[test]
fn thousand_appends_match_the_buffer() {
    let cfg = HashConfig::seeded(11);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut g = AvlGrammar::new(cfg);
    let mut shadow = Vec::new();
    for _ in 0..1000 {
        let c = rng.gen_range(0..5);
        g.append_literal(c);
        shadow.push(c);
        assert!(g.height().unwrap() as f64 <= height_bound(shadow.len()));
    }
    assert_eq!(g.extract(0, shadow.len()).unwrap(), shadow);
    g.validate().unwrap();
    assert_eq!(g.fingerprint(), cfg.of(&shadow));
}

#[test]
fn random_copies_match_the_buffer() {
    let cfg = HashConfig::seeded(12);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut g = AvlGrammar::new(cfg);
    let mut shadow: Vec<Symbol> = Vec::new();
    let mut copies = 0usize;
    for step in 0..10_000 {
        if shadow.is_empty() || rng.gen_bool(0.3) {
            let c = rng.gen_range(0..4);
            g.append_literal(c);
            shadow.push(c);
        } else {
            let n = shadow.len();
            let len = rng.gen_range(1..=n.min(64));
            let i = rng.gen_range(0..=n - len);
            g.append_copy(i, i + len).unwrap();
            shadow.extend_from_within(i..i + len);
            copies += 1;
        }
        if step % 500 == 0 {
            g.validate().unwrap();
        }
        let n = shadow.len();
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(i..=n);
        assert_eq!(g.substring_fp(i, j).unwrap(), cfg.of(&shadow[i..j]));
    }
    g.validate().unwrap();
    let n = shadow.len();
    assert_eq!(g.extract(0, n).unwrap(), shadow);
    assert!(g.height().unwrap() as f64 <= height_bound(n));
    for _ in 0..1000 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(i..=n.min(i + 200));
        assert_eq!(g.extract(i, j).unwrap(), &shadow[i..j]);
        assert_eq!(g.symbol_at(i).unwrap(), shadow[i]);
    }
    let per_op = g.node_count() as f64 / (copies as f64 * (n as f64).log2());
    assert!(per_op < 4.0, "{per_op} nodes per copy per log n");
}

#[test]
fn doubling_stays_small() {
    let cfg = HashConfig::seeded(3);
    let mut g = AvlGrammar::from_symbols(cfg, &[0, 1]);
    for _ in 0..40 {
        let n = g.len();
        g.append_copy(0, n).unwrap();
    }
    assert_eq!(g.len(), 2 << 40);
    assert!(g.node_count() < 200);
    g.validate().unwrap();
    let n = g.len();
    assert_eq!(g.extract(n - 4, n).unwrap(), vec![0, 1, 0, 1]);
    assert_eq!(g.substring_fp(0, n).unwrap(), g.fingerprint());
}

proptest! {
    #[test]
    fn interleaved_ops(ops in proptest::collection::vec((0u32..3, any::<u16>(), any::<u16>()), 1..200)) {
        let cfg = HashConfig::seeded(5);
        let mut g = AvlGrammar::new(cfg);
        let mut shadow: Vec<Symbol> = Vec::new();
        for (c, a, b) in ops {
            if shadow.is_empty() || c == 0 {
                g.append_literal(a as Symbol % 3);
                shadow.push(a as Symbol % 3);
            } else {
                let n = shadow.len();
                let (i, j) = ((a as usize) % (n + 1), (b as usize) % (n + 1));
                let (i, j) = (i.min(j), i.max(j));
                g.append_copy(i, j).unwrap();
                shadow.extend_from_within(i..j);
            }
            if shadow.len() > 5000 {
                break;
            }
        }
        prop_assert!(g.validate().is_ok());
        prop_assert_eq!(g.extract(0, shadow.len()).unwrap(), shadow.clone());
        prop_assert_eq!(g.fingerprint(), cfg.of(&shadow));
    }

    #[test]
    fn concat_is_associative(x in proptest::collection::vec(0u32..9, 0..20),
                             y in proptest::collection::vec(0u32..9, 0..20),
                             z in proptest::collection::vec(0u32..9, 0..20)) {
        let cfg = HashConfig::seeded(8);
        let (a, b, c) = (cfg.of(&x), cfg.of(&y), cfg.of(&z));
        prop_assert_eq!(fp_concat(&cfg, fp_concat(&cfg, a, b), c), fp_concat(&cfg, a, fp_concat(&cfg, b, c)));
        prop_assert_eq!(fp_concat(&cfg, a, b), cfg.of(&[x, y].concat()));
    }
}
