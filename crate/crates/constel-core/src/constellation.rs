//! Constellations (prime k-tuples) and their residue algebra: ν-profiles,
//! admissibility, nonconvexity scoring, mirroring, and gap statistics.

use crate::error::{Error, Result};
use crate::primes::{self, is_prime_u64};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::RwLock;

/// Largest span for which we are willing to run a π(span) sieve.
const SCORE_SPAN_LIMIT: u64 = 100_000_000;

/// A pattern of candidate positions: offsets h_0 = 0 < h_1 < … < h_J, or
/// equivalently the J gaps between them. Offsets are the canonical form;
/// gaps are derived views.
///
/// Values are immutable after construction, so every method is safe to call
/// concurrently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    offsets: Vec<BigUint>,
    /// The same offsets when they all fit in a machine word — the common
    /// case, and the one the hot search loops rely on.
    small: Option<Vec<u64>>,
}

/// `n mod m` for a word-sized modulus.
pub(crate) fn umod(n: &BigUint, m: u64) -> u64 {
    (n % m).to_u64().expect("residue fits after reduction")
}

impl Constellation {
    /// Build from offsets: at least two entries, first 0, strictly ascending.
    pub fn from_offsets(offsets: Vec<BigUint>) -> Result<Self> {
        if offsets.len() < 2 {
            return Err(Error::Format(
                "a constellation needs at least two offsets".into(),
            ));
        }
        if !offsets[0].is_zero() {
            return Err(Error::Format(format!(
                "offsets must start at 0, got {}",
                offsets[0]
            )));
        }
        for w in offsets.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Format(format!(
                    "offsets must be strictly ascending, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        let small = offsets
            .iter()
            .map(|h| h.to_u64())
            .collect::<Option<Vec<u64>>>();
        Ok(Constellation { offsets, small })
    }

    pub fn from_offsets_u64(offsets: &[u64]) -> Result<Self> {
        Self::from_offsets(offsets.iter().map(|&h| BigUint::from(h)).collect())
    }

    /// Build from gaps g_1..g_J; every gap must be ≥ 1.
    pub fn from_gaps(gaps: &[BigUint]) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::Format("a constellation needs at least one gap".into()));
        }
        if let Some(g) = gaps.iter().find(|g| g.is_zero()) {
            let _ = g;
            return Err(Error::Format("gaps must be at least 1".into()));
        }
        let mut offsets = Vec::with_capacity(gaps.len() + 1);
        let mut acc = BigUint::zero();
        offsets.push(acc.clone());
        for g in gaps {
            acc += g;
            offsets.push(acc.clone());
        }
        Self::from_offsets(offsets)
    }

    pub fn from_gaps_u64(gaps: &[u64]) -> Result<Self> {
        let gaps: Vec<BigUint> = gaps.iter().map(|&g| BigUint::from(g)).collect();
        Self::from_gaps(&gaps)
    }

    pub fn offsets(&self) -> &[BigUint] {
        &self.offsets
    }

    /// Offsets as machine words, when they all fit.
    pub fn offsets_u64(&self) -> Option<&[u64]> {
        self.small.as_deref()
    }

    /// J — the number of gaps (one less than the number of offsets).
    pub fn length(&self) -> u64 {
        (self.offsets.len() - 1) as u64
    }

    /// |s| — the last offset.
    pub fn span(&self) -> &BigUint {
        self.offsets.last().unwrap()
    }

    pub fn gaps(&self) -> Vec<BigUint> {
        self.offsets.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    pub fn gaps_u64(&self) -> Option<Vec<u64>> {
        self.small
            .as_ref()
            .map(|hs| hs.windows(2).map(|w| w[1] - w[0]).collect())
    }

    /// ν_q — the number of distinct offset residues mod q.
    pub fn nu(&self, q: u64) -> Result<u64> {
        if !is_prime_u64(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(self.nu_unchecked(q))
    }

    pub(crate) fn nu_unchecked(&self, q: u64) -> u64 {
        if q <= 1 << 22 {
            let mut seen = vec![false; q as usize];
            let mut count = 0u64;
            match &self.small {
                Some(hs) => {
                    for &h in hs {
                        let r = (h % q) as usize;
                        if !seen[r] {
                            seen[r] = true;
                            count += 1;
                        }
                    }
                }
                None => {
                    for h in &self.offsets {
                        let r = umod(h, q) as usize;
                        if !seen[r] {
                            seen[r] = true;
                            count += 1;
                        }
                    }
                }
            }
            count
        } else {
            let set: HashSet<u64> = self.offsets.iter().map(|h| umod(h, q)).collect();
            set.len() as u64
        }
    }

    /// The residues r mod q with (r + h) mod q ≠ 0 for every offset h;
    /// exactly q − ν_q of them, returned ascending.
    pub fn admissible_residues(&self, q: u64) -> Result<Vec<u64>> {
        if !is_prime_u64(q) {
            return Err(Error::NotPrime(q));
        }
        let mut struck = vec![false; q as usize];
        match &self.small {
            Some(hs) => {
                for &h in hs {
                    struck[((q - h % q) % q) as usize] = true;
                }
            }
            None => {
                for h in &self.offsets {
                    struck[((q - umod(h, q)) % q) as usize] = true;
                }
            }
        }
        Ok((0..q).filter(|&r| !struck[r as usize]).collect())
    }

    /// Admissible ⇔ ν_q < q for every prime q ≤ J+1 (beyond that,
    /// ν_q ≤ J+1 < q holds automatically).
    pub fn is_admissible(&self) -> bool {
        let bound = self.length() + 1;
        let table = primes::sieve(bound).expect("J + 1 >= 2");
        table.primes().iter().all(|&q| self.nu_unchecked(q) < q)
    }

    /// J − π(|s|); positive exactly for the counterexample class.
    pub fn nonconvexity_score(&self) -> Result<i64> {
        let span = self.span().to_u64().filter(|&v| v <= SCORE_SPAN_LIMIT);
        let span = span.ok_or_else(|| {
            Error::UnsupportedSpan(format!(
                "span {} is beyond the exact prime-counting range",
                self.span()
            ))
        })?;
        Ok(self.length() as i64 - primes::prime_count(span) as i64)
    }

    /// True iff |s| < p_J — i.e. the score is positive. Cheap at any span.
    pub fn is_counterexample(&self) -> bool {
        let p_j = primes::nth_prime(self.length());
        self.span() < &BigUint::from(p_j)
    }

    /// The reflected constellation: gaps in reverse order.
    pub fn mirror(&self) -> Constellation {
        let span = self.span();
        let mut offsets: Vec<BigUint> = self.offsets.iter().map(|h| span - h).collect();
        offsets.reverse();
        let small = self
            .small
            .as_ref()
            .map(|hs| hs.iter().rev().map(|h| hs[hs.len() - 1] - h).collect());
        Constellation { offsets, small }
    }

    /// Gap-size → multiplicity; counts sum to J.
    pub fn gap_histogram(&self) -> BTreeMap<BigUint, u64> {
        let mut hist = BTreeMap::new();
        for g in self.gaps() {
            *hist.entry(g).or_insert(0) += 1;
        }
        hist
    }

    /// Canonical single-line text form: offsets separated by single spaces.
    pub fn canonical_text(&self) -> String {
        let parts: Vec<String> = self.offsets.iter().map(|h| h.to_string()).collect();
        parts.join(" ")
    }

    /// SHA-256 of the canonical text, hex-encoded. Identifies a tuple in
    /// checkpoints.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical_text().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// J copies of the gap g.
pub fn repetition(j: u64, g: &BigUint) -> Result<Constellation> {
    if j < 1 {
        return Err(Error::InvalidArgument("need at least one repetition".into()));
    }
    if g.is_zero() {
        return Err(Error::InvalidArgument("repetition gap must be at least 1".into()));
    }
    let mut offsets = Vec::with_capacity(j as usize + 1);
    let mut acc = BigUint::zero();
    offsets.push(acc.clone());
    for _ in 0..j {
        acc += g;
        offsets.push(acc.clone());
    }
    Constellation::from_offsets(offsets)
}

/// The smallest g for which `repetition(J, g)` is admissible: the product of
/// all primes ≤ J+1. Any prime q ≤ J+1 must divide g, else the J+1 offsets
/// meet every residue class mod q.
pub fn minimal_repetition_gap(j: u64) -> BigUint {
    assert!(j >= 1);
    primes::primorial(j + 1)
}

/// Cached ν-profile of a constellation. First computation per prime is
/// idempotent, so concurrent fills are safe.
pub struct NuProfile<'a> {
    tuple: &'a Constellation,
    cache: RwLock<HashMap<u64, u64>>,
}

impl<'a> NuProfile<'a> {
    pub fn new(tuple: &'a Constellation) -> Self {
        NuProfile {
            tuple,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn tuple(&self) -> &Constellation {
        self.tuple
    }

    pub fn nu(&self, q: u64) -> Result<u64> {
        if let Some(&v) = self.cache.read().unwrap().get(&q) {
            return Ok(v);
        }
        let v = self.tuple.nu(q)?;
        self.cache.write().unwrap().insert(q, v);
        Ok(v)
    }
}
