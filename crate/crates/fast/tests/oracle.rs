use lzdmw_core::{
    check_lzd_distinct, check_lzmw_pair_distinct, parse_reference, Scheme, Symbol, Text,
};
use lzdmw_fast::*;
use lzdmw_gen::{binary_reduce, generate, Family};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fast(s: &[Symbol], scheme: Scheme, seed: u64) -> FastRun {
    let mut r = BlockReader::new(CountingSource::new(SliceSource::new(s)));
    parse_fast(&mut r, scheme, HashConfig::seeded(seed)).unwrap()
}

fn random_text(rng: &mut ChaCha8Rng, sigma: u32, n: usize) -> Vec<Symbol> {
    // mix uniform noise with copied runs so long phrases show up
    let mut s: Vec<Symbol> = Vec::with_capacity(n);
    while s.len() < n {
        if s.len() > 8 && rng.gen_bool(0.4) {
            let len = rng.gen_range(1..=s.len().min(n - s.len()).min(64));
            let i = rng.gen_range(0..=s.len() - len);
            s.extend_from_within(i..i + len);
        } else {
            s.push(rng.gen_range(0..sigma));
        }
    }
    s
}

#[test]
fn random_texts_match_the_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (t, sigma) in [2u32, 4, 16, 256].iter().cycle().take(200).enumerate() {
        let n = rng.gen_range(1..3000);
        let s = Text::new(random_text(&mut rng, *sigma, n), 256).unwrap();
        for scheme in [Scheme::Lzd, Scheme::Lzmw] {
            let run = fast(s.symbols(), scheme, t as u64);
            assert_eq!(
                run.parsing,
                parse_reference(&s, scheme),
                "text {t}, σ = {sigma}"
            );
            assert_eq!(run.stats.symbols_read, n as u64);
        }
    }
}

#[test]
fn families_match_the_reference_across_seeds() {
    for family in Family::ALL {
        let ks: &[usize] = match family {
            Family::LzdSlow | Family::LzmwSlow => &[8, 16],
            _ => &[4, 8, 16],
        };
        for &k in ks {
            let s = generate(family, k).unwrap();
            let want = parse_reference(&s, family.scheme());
            let seeds = if k == 16 { 10 } else { 100 };
            for seed in 0..seeds {
                let run = fast(s.symbols(), family.scheme(), seed);
                assert_eq!(run.parsing, want, "{family} k = {k} seed {seed}");
            }
        }
    }
}

#[test]
fn binary_reductions_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let n = rng.gen_range(1..200);
        let s = Text::from_symbols(random_text(&mut rng, 6, n));
        for scheme in [Scheme::Lzd, Scheme::Lzmw] {
            let (b, _) = binary_reduce(&s, scheme).unwrap();
            assert_eq!(
                fast(b.symbols(), scheme, 5).parsing,
                parse_reference(&b, scheme)
            );
        }
    }
}

#[test]
fn example_through_las_vegas() {
    let s = Text::from_bytes(b"abbaababaaba$");
    for scheme in [Scheme::Lzd, Scheme::Lzmw] {
        let run = parse_las_vegas(
            || Ok(SliceSource::new(s.symbols())),
            LasVegas::new(scheme, 9),
        )
        .unwrap();
        assert_eq!(run.parsing, parse_reference(&s, scheme));
        assert_eq!(run.rounds, 1);
    }
}

#[test]
fn tiny_modulus_still_verifies() {
    let mut rng = ChaCha8Rng::seed_from_u64(251);
    let mut retried = 0;
    for t in 0..30 {
        let n = rng.gen_range(50..400);
        let s = Text::from_symbols(random_text(&mut rng, 4, n));
        for scheme in [Scheme::Lzd, Scheme::Lzmw] {
            let opts = LasVegas::new(scheme, t).modulus(251);
            let run = parse_las_vegas(|| Ok(SliceSource::new(s.symbols())), opts).unwrap();
            assert_eq!(run.parsing, parse_reference(&s, scheme));
            retried += run.retries().min(1);
        }
    }
    assert!(retried > 0, "p = 251 should force some retries");
}

#[test]
fn single_pass_and_space_bounds() {
    for family in Family::ALL {
        let k = if matches!(family, Family::LzdSlow | Family::LzmwSlow) {
            16
        } else {
            32
        };
        let s = generate(family, k).unwrap();
        let mut r = BlockReader::new(CountingSource::new(SliceSource::new(s.symbols())));
        let b = r.block_len();
        let run = parse_fast(&mut r, family.scheme(), HashConfig::seeded(1)).unwrap();
        let n = s.len();
        let z = run.parsing.len();
        assert_eq!(r.source().count(), n);
        let sigma = s.distinct_symbols();
        assert!(run.stats.trie_nodes <= 2 * z + sigma + 1);
        let blocks_bound = 2 * z + n.div_ceil(b) + z;
        assert!(
            (run.stats.blocks as usize) <= blocks_bound,
            "{family}: {} blocks",
            run.stats.blocks
        );
        match family.scheme() {
            Scheme::Lzd => assert!(check_lzd_distinct(&run.parsing)),
            Scheme::Lzmw => assert!(check_lzmw_pair_distinct(&run.parsing)),
        }
    }
}

#[test]
fn streaming_source_without_length() {
    struct Unsized<'a>(SliceSource<'a>);
    impl SymbolSource for Unsized<'_> {
        fn next_symbol(&mut self) -> Result<Option<Symbol>, FastError> {
            self.0.next_symbol()
        }
    }
    let s = generate(Family::LzdSlow, 8).unwrap();
    let mut r = BlockReader::new(Unsized(SliceSource::new(s.symbols())));
    let run = lzd_parse_fast(&mut r, HashConfig::seeded(4)).unwrap();
    assert_eq!(run.parsing, parse_reference(&s, Scheme::Lzd));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_reference(v in proptest::collection::vec(0u32..3, 1..300), seed in 0u64..1000, b in 1usize..40) {
        let s = Text::from_symbols(v);
        for scheme in [Scheme::Lzd, Scheme::Lzmw] {
            let mut r = BlockReader::with_block_len(SliceSource::new(s.symbols()), b);
            let run = parse_fast(&mut r, scheme, HashConfig::seeded(seed)).unwrap();
            prop_assert_eq!(run.parsing, parse_reference(&s, scheme));
        }
    }
}
