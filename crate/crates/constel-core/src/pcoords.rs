//! Primorial mixed-radix coordinates for initial generators.
//!
//! A value is written v = Σ_j m_j · p_{j−1}# with 0 ≤ m_j < p_j and
//! p_0# = 1, so the radix at the lowest position is 2, then 3, 5, 7, ….
//! Every natural number has exactly one such digit string, and comparing
//! values is the same as comparing digit strings from the top down (after
//! trimming trailing zeros).

use crate::error::{Error, Result};
use crate::primes::{first_primes, is_prime_u64, nth_prime, prime_count};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Digits stored lowest position first, canonically trimmed: the last digit
/// is nonzero (the zero value has no digits).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimorialCoords {
    digits: Vec<u64>,
}

impl PrimorialCoords {
    /// Validate digit bounds (digit j must be below p_j) and trim.
    pub fn new(mut digits: Vec<u64>) -> Result<Self> {
        let radices = first_primes(digits.len());
        for (i, (&d, &r)) in digits.iter().zip(&radices).enumerate() {
            if d >= r {
                return Err(Error::CoordinateBound {
                    digit: d,
                    position: i + 1,
                    bound: r,
                });
            }
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(PrimorialCoords { digits })
    }

    /// Digits already known to satisfy the bounds (search hot path).
    pub(crate) fn from_digits_unchecked(mut digits: Vec<u64>) -> Self {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        PrimorialCoords { digits }
    }

    pub fn zero() -> Self {
        PrimorialCoords { digits: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Greedy residue extraction: divide by 2, then 3, then 5, … until the
    /// quotient vanishes.
    pub fn encode(n: &BigUint) -> Self {
        let mut digits = Vec::new();
        let mut rest = n.clone();
        let mut p = 2u64;
        while !rest.is_zero() {
            let (q, r) = num_integer::div_rem(rest, BigUint::from(p));
            digits.push(r.to_u64().expect("residue below a word-sized prime"));
            rest = q;
            p = crate::primes::next_prime_after(p);
        }
        PrimorialCoords { digits }
    }

    /// Exact value Σ m_j · p_{j−1}#, by a Horner pass from the top digit.
    pub fn decode(&self) -> BigUint {
        let radices = first_primes(self.digits.len());
        let mut v = BigUint::zero();
        for (&d, &r) in self.digits.iter().zip(&radices).rev() {
            v = v * r + d;
        }
        v
    }

    /// The highest nonzero digit m and the prime p of its base p#, matching
    /// the display form m·p#. The lowest position reports p = 1 (p_0# = 1).
    pub fn leading_term(&self) -> Result<(u64, u64)> {
        match self.digits.last() {
            None => Err(Error::ZeroValue),
            Some(&m) => {
                let i = self.digits.len() - 1;
                let p = if i == 0 { 1 } else { nth_prime(i as u64) };
                Ok((m, p))
            }
        }
    }

    /// Value mod p#, taken from the digit prefix below the p#-position —
    /// no full decode.
    pub fn residue_mod_primorial(&self, p: u64) -> Result<BigUint> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let k = prime_count(p) as usize;
        let prefix = &self.digits[..k.min(self.digits.len())];
        let radices = first_primes(prefix.len());
        let mut v = BigUint::zero();
        for (&d, &r) in prefix.iter().zip(&radices).rev() {
            v = v * r + d;
        }
        Ok(v)
    }

    /// Value mod q by a word-sized Horner pass.
    pub fn residue_mod_prime(&self, q: u64) -> u64 {
        let radices = first_primes(self.digits.len());
        let mut v: u64 = 0;
        for (&d, &r) in self.digits.iter().zip(&radices).rev() {
            v = (((v as u128 * (r % q) as u128) + d as u128) % q as u128) as u64;
        }
        v
    }

    /// Anchored display: the residue below anchor# as a plain integer, then
    /// one m*q# term per nonzero digit at or above the anchor position.
    pub fn anchored(&self, anchor: u64) -> Result<String> {
        let base = self.residue_mod_primorial(anchor)?;
        let k = prime_count(anchor) as usize;
        let mut out = base.to_string();
        for (i, &d) in self.digits.iter().enumerate().skip(k) {
            if d != 0 {
                out.push_str(&format!(" + {d}*{}#", nth_prime(i as u64)));
            }
        }
        Ok(out)
    }

    /// Parse the text form produced by [`fmt::Display`].
    pub fn from_text(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::Format("empty coordinate string".into()));
        }
        let digits = trimmed
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Format(format!("bad coordinate digit {part:?}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        Self::new(digits)
    }
}

/// Comma-separated digits, lowest position first; the zero value prints "0".
impl fmt::Display for PrimorialCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Value order: digit count first (no trailing zeros, so more digits means
/// strictly larger), then digits from the top down.
impl Ord for PrimorialCoords {
    fn cmp(&self, other: &Self) -> Ordering {
        self.digits
            .len()
            .cmp(&other.digits.len())
            .then_with(|| self.digits.iter().rev().cmp(other.digits.iter().rev()))
    }
}

impl PartialOrd for PrimorialCoords {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
