//! Shared fixtures for the integration suites: the fixed corpus and a
//! seeded random corpus of valid, non-degenerate sequences.

#![allow(dead_code)]

use hypergeom::hyperseq::{make_sequence, HypergeomSeq};
use hypergeom::numtheory::rat;
use hypergeom::parse::parse_sequence_file;
use hypergeom::RatPoly;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CORPUS: &str = include_str!("../data/corpus.txt");

pub fn fixed_corpus() -> Vec<HypergeomSeq> {
    parse_sequence_file(CORPUS)
        .expect("corpus parses")
        .into_iter()
        .map(|s| make_sequence(s.f, s.g, s.u0).expect("corpus entries are valid"))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> RatPoly {
    let deg = rng.gen_range(0..=max_deg);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-bound..=bound);
    }
    RatPoly::from_ints(&c)
}

/// `count` random sequences that are valid and never vanish.
pub fn random_corpus(seed: u64, count: usize) -> Vec<HypergeomSeq> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let f = random_poly(&mut r, 3, 6);
        let g = random_poly(&mut r, 3, 6);
        let mut num = 0;
        while num == 0 {
            num = r.gen_range(-9..=9);
        }
        let u0 = rat(num, r.gen_range(1..=9));
        if let Ok(s) = make_sequence(f, g, u0) {
            let trivial = s.f().is_constant() && s.g().is_constant();
            if !s.is_degenerate() && !trivial {
                out.push(s);
            }
        }
    }
    out
}

/// Every corpus used by the suites: fixed entries first.
pub fn full_corpus() -> Vec<HypergeomSeq> {
    let mut v = fixed_corpus();
    v.extend(random_corpus(0x5eed, 24));
    v
}
