//! Prime infrastructure: sieving, counting, primorials, and primality tests
//! for both machine words and big integers.

use crate::constellation::Constellation;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

const SEGMENT: usize = 1 << 18;

/// Ascending table of all primes up to a fixed limit.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve all primes up to `limit` (inclusive). `limit < 2` is an error,
    /// since the table invariant requires the first entry to be 2.
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::EmptyDomain(format!("no primes at or below {limit}")));
        }
        Ok(PrimeTable {
            limit,
            primes: segmented_sieve(limit),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// π(x) for any x ≤ limit.
    pub fn prime_count(&self, x: u64) -> u64 {
        debug_assert!(x <= self.limit);
        self.primes.partition_point(|&p| p <= x) as u64
    }

    /// The n-th prime, 1-indexed, if within the table.
    pub fn nth(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.primes.get(n as usize - 1).copied()
    }

    pub fn contains(&self, q: u64) -> bool {
        self.primes.binary_search(&q).is_ok()
    }
}

/// Sieve of all primes ≤ limit. See [`PrimeTable::new`].
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    PrimeTable::new(limit)
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn segmented_sieve(limit: u64) -> Vec<u64> {
    let root = limit.sqrt();
    let base = simple_sieve(root.max(2));
    let mut primes: Vec<u64> = base.iter().copied().filter(|&p| p <= limit).collect();
    let mut lo = root + 1;
    let mut mark = vec![false; SEGMENT];
    while lo <= limit {
        let hi = (lo + SEGMENT as u64 - 1).min(limit);
        let width = (hi - lo + 1) as usize;
        mark[..width].fill(false);
        for &p in &base {
            // first multiple of p in [lo, hi]
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                mark[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (i, &m) in mark[..width].iter().enumerate() {
            if !m {
                primes.push(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
    primes
}

/// π(x): the number of primes ≤ x.
pub fn prime_count(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    segmented_sieve(x).len() as u64
}

/// The n-th prime, 1-indexed with p_1 = 2. Panics on n = 0.
pub fn nth_prime(n: u64) -> u64 {
    assert!(n >= 1, "primes are 1-indexed");
    const SMALL: [u64; 6] = [2, 3, 5, 7, 11, 13];
    if n as usize <= SMALL.len() {
        return SMALL[n as usize - 1];
    }
    // Rosser-style upper bound, grown if the estimate falls short.
    let nf = n as f64;
    let mut bound = (nf * (nf.ln() + nf.ln().ln())).ceil() as u64 + 16;
    loop {
        let primes = segmented_sieve(bound);
        if let Some(&p) = primes.get(n as usize - 1) {
            return p;
        }
        bound += bound / 4;
    }
}

/// The first `k` primes, ascending.
pub fn first_primes(k: usize) -> Vec<u64> {
    if k == 0 {
        return Vec::new();
    }
    let mut out = segmented_sieve(nth_prime(k as u64));
    out.truncate(k);
    out
}

/// The smallest prime strictly greater than `q`.
pub fn next_prime_after(q: u64) -> u64 {
    let mut n = q + 1;
    loop {
        if is_prime_u64(n) {
            return n;
        }
        n += 1;
    }
}

/// p# — the product of all primes ≤ p, with the empty product 1 for p < 2.
pub fn primorial(p: u64) -> BigUint {
    let mut out = BigUint::one();
    if p >= 2 {
        for q in segmented_sieve(p) {
            out *= q;
        }
    }
    out
}

/// Outcome of a primality test, carrying the certainty tier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Deterministic result (below the 64-bit threshold, or horizon-certified).
    Prime,
    /// Strong-probable-prime result from the combined base-2 + Lucas test;
    /// no counterexample to this combination is known.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }

    pub fn is_certain(self) -> bool {
        matches!(self, Primality::Prime)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers. The witness set
/// {2, 325, 9375, 28178, 450775, 9780504, 1795265022} is exact for all
/// n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality with a certainty tier: deterministic below 2^64, a combined
/// strong base-2 + strong Lucas probable-prime test above it.
pub fn is_prime(n: &BigUint) -> Primality {
    if let Some(v) = n.to_u64() {
        return if is_prime_u64(v) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    // quick trial division
    for p in simple_sieve(1000) {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    if !strong_base2(n) {
        return Primality::Composite;
    }
    if !strong_lucas(n) {
        return Primality::Composite;
    }
    Primality::ProbablePrime
}

fn strong_base2(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    let mut x = BigUint::from(2u8).modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u8), n);
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd n > 0.
fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let mut a = a.mod_floor(&BigInt::from(n.clone()));
    let mut n = BigInt::from(n.clone());
    let mut t = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r: BigInt = n.mod_floor(&BigInt::from(8));
            let r = r.to_u8().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&BigInt::from(4)).to_u8() == Some(3)
            && n.mod_floor(&BigInt::from(4)).to_u8() == Some(3)
        {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas(n: &BigUint) -> bool {
    // squares never admit jacobi(D/n) = -1; rule them out first
    let r = n.sqrt();
    if &(&r * &r) == n {
        return false;
    }
    // Selfridge method A: D = 5, -7, 9, -11, ... with (D/n) = -1
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 => return false, // shares a factor with n
            _ => {
                d = if d.is_positive() { -(d + 2i32) } else { -(d - 2i32) };
            }
        }
    }
    let nn = BigInt::from(n.clone());
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let inv2: BigInt = (&nn + 1i32) / 2i32; // inverse of 2 mod odd n

    let plus1 = n + BigUint::one();
    let s = plus1.trailing_zeros().unwrap();
    let idx = &plus1 >> s;

    // ladder for U_idx, V_idx, Q^idx from the most significant bit down
    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(&nn);
    let bits = idx.bits();
    for i in (0..bits - 1).rev() {
        // double: U_2k = U_k V_k, V_2k = V_k^2 - 2 Q^k
        u = (&u * &v).mod_floor(&nn);
        v = (&v * &v - &qk * 2i32).mod_floor(&nn);
        qk = (&qk * &qk).mod_floor(&nn);
        if idx.bit(i) {
            // advance: U_{2k+1} = (P U + V)/2, V_{2k+1} = (D U + P V)/2
            let nu = ((&p * &u + &v) * &inv2).mod_floor(&nn);
            let nv = ((&d * &u + &p * &v) * &inv2).mod_floor(&nn);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(&nn);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2i32).mod_floor(&nn);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(&nn);
    }
    false
}

/// The constellation of the first J prime gaps measured from 0: the initial
/// gap 0→2, then the consecutive prime gaps. Its span is exactly p_J.
pub fn prime_gap_constellation(j: u64) -> Constellation {
    assert!(j >= 1, "need at least one gap");
    let p_j = nth_prime(j);
    let table = segmented_sieve(p_j);
    let mut offsets = Vec::with_capacity(j as usize + 1);
    offsets.push(0u64);
    offsets.extend(table.iter().take(j as usize).copied());
    Constellation::from_offsets_u64(&offsets).expect("prime offsets are ascending from 0")
}
