//! Karp–Rabin fingerprints `φ(s) = Σ s[i]·δ^{i-1} mod p`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lzdmw_core::Symbol;

use crate::error::AvlError;

/// The Mersenne prime 2^61 − 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Modulus and base of one fingerprinting run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HashConfig {
    p: u64,
    delta: u64,
    seed: u64,
}

impl HashConfig {
    /// Fixed base; `seed` is recorded as 0.
    pub fn new(p: u64, delta: u64) -> Result<Self, AvlError> {
        check_modulus(p)?;
        if delta == 0 || delta >= p {
            return Err(AvlError::BadBase { delta, p });
        }
        Ok(HashConfig { p, delta, seed: 0 })
    }

    /// Modulus 2^61 − 1 with δ drawn from `seed`.
    pub fn seeded(seed: u64) -> Self {
        Self::with_modulus(MERSENNE_61, seed).expect("2^61 - 1 is prime")
    }

    /// δ uniform in `[1..p-1]`, drawn from a ChaCha stream keyed by `seed`.
    pub fn with_modulus(p: u64, seed: u64) -> Result<Self, AvlError> {
        check_modulus(p)?;
        let delta = ChaCha8Rng::seed_from_u64(seed).gen_range(1..p);
        Ok(HashConfig { p, delta, seed })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn pow(&self, mut e: u64) -> u64 {
        let (mut base, mut acc) = (self.delta, 1 % self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn symbol(&self, c: Symbol) -> Fingerprint {
        Fingerprint {
            hash: c as u64 % self.p,
            pow: self.delta,
            len: 1,
        }
    }

    pub fn of(&self, s: &[Symbol]) -> Fingerprint {
        s.iter().fold(Fingerprint::EMPTY, |acc, &c| {
            self.concat(acc, self.symbol(c))
        })
    }

    /// `φ(xy) = φ(x) + δ^{|x|}·φ(y)`.
    #[inline]
    pub fn concat(&self, a: Fingerprint, b: Fingerprint) -> Fingerprint {
        Fingerprint {
            hash: self.add(a.hash, self.mul(a.pow, b.hash)),
            pow: self.mul(a.pow, b.pow),
            len: a.len + b.len,
        }
    }

    /// Fingerprints of all prefixes of `s`, `out[i] = φ(s[..i])`.
    pub fn prefixes(&self, s: &[Symbol]) -> Vec<Fingerprint> {
        let mut out = Vec::with_capacity(s.len() + 1);
        let mut acc = Fingerprint::EMPTY;
        out.push(acc);
        for &c in s {
            acc = self.concat(acc, self.symbol(c));
            out.push(acc);
        }
        out
    }
}

fn check_modulus(p: u64) -> Result<(), AvlError> {
    // products of two residues must fit in u128 and sums in u64
    if !(2..=MERSENNE_61).contains(&p) || !primal_check::miller_rabin(p) {
        return Err(AvlError::BadModulus(p));
    }
    Ok(())
}

/// Hash of a string together with `δ^len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub hash: u64,
    pub pow: u64,
    pub len: usize,
}

impl Fingerprint {
    pub const EMPTY: Fingerprint = Fingerprint {
        hash: 0,
        pow: 1,
        len: 0,
    };
}

pub fn fp_concat(cfg: &HashConfig, a: Fingerprint, b: Fingerprint) -> Fingerprint {
    cfg.concat(a, b)
}
