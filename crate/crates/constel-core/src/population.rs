//! Instance-count products across sieve stages and asymptotic relative
//! populations.
//!
//! For an admissible constellation s with ν-profile ν_q, the number of
//! admissible residues mod p# is the exact product Π_{q ≤ p}(q − ν_q), and
//! the asymptotic population relative to a same-length reference is
//!
//! w_s(∞) = Π_{q ≤ J+1}(q − ν_q) · Π_{q > J+1}(q − ν_q)/(q − J − 1).
//!
//! The second product terminates at the largest prime ≤ span, because every
//! later prime sees all J+1 offsets in distinct residue classes.

use crate::constellation::Constellation;
use crate::error::{Error, Result};
use crate::primes::{next_prime_after, sieve};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

/// Largest span for which factor 2 is computed by direct prime iteration.
const FACTOR2_SPAN_LIMIT: u64 = 10_000_000;

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exact product Π(q − ν_q) over a prime range, with a diagnostic when some
/// factor vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceCount {
    pub count: BigUint,
    /// The smallest prime in range with ν_q = q, when the count is zero.
    pub vanished_at: Option<u64>,
}

/// Π over primes q in [from, to] of (q − ν_q). An empty range yields the
/// empty product 1. A vanishing factor short-circuits to zero and names the
/// offending prime.
pub fn instance_count(s: &Constellation, from: u64, to: u64) -> InstanceCount {
    if from > to {
        return InstanceCount {
            count: BigUint::one(),
            vanished_at: None,
        };
    }
    let mut count = BigUint::one();
    if to >= 2 {
        for &q in sieve(to).expect("to >= 2").primes() {
            if q < from {
                continue;
            }
            let nu = s.nu_unchecked(q);
            if nu == q {
                return InstanceCount {
                    count: BigUint::zero(),
                    vanished_at: Some(q),
                };
            }
            count *= q - nu;
        }
    }
    InstanceCount {
        count,
        vanished_at: None,
    }
}

/// The two exact factors of w_s(∞) and their product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopulationReport {
    pub tuple_digest: String,
    /// Π_{q ≤ J+1}(q − ν_q), an exact integer.
    pub factor1: BigUint,
    /// Π_{J+1 < q ≤ |s|}(q − ν_q)/(q − J − 1), an exact rational.
    pub factor2: BigRational,
    /// factor1 × factor2.
    pub w_infinity: BigRational,
    /// For an inadmissible tuple the whole product vanishes; this names the
    /// first prime whose factor is zero.
    pub vanished_at: Option<u64>,
}

impl PopulationReport {
    /// Decimal scientific rendering of w_s(∞).
    pub fn w_scientific(&self, sig: usize) -> String {
        crate::render::sci_ratio(&self.w_infinity, sig)
    }
}

fn ratio_one() -> BigRational {
    BigRational::from_integer(BigInt::one())
}

/// Factor 2 by direct iteration over the primes in (J+1, span].
pub(crate) fn factor2_by_iteration(s: &Constellation, span: u64) -> BigRational {
    let j_plus_1 = s.length() + 1;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    if span > j_plus_1 && span >= 2 {
        for &q in sieve(span).expect("span >= 2").primes() {
            if q <= j_plus_1 {
                continue;
            }
            num *= q - s.nu_unchecked(q);
            den *= q - j_plus_1;
        }
    }
    BigRational::new(num.into(), den.into())
}

/// Factor 2 for a uniform-gap constellation whose gap has no prime factor
/// above J+1: every prime q > J+1 then sees J+1 distinct residues, so the
/// product is exactly 1. The gap's factorization is certified by dividing
/// out, never assumed.
pub(crate) fn factor2_uniform(s: &Constellation) -> Result<BigRational> {
    let gaps = s.gaps();
    let g = &gaps[0];
    if gaps.iter().any(|h| h != g) {
        return Err(Error::UnsupportedSpan(format!(
            "span {} is too large for direct iteration and the gaps are not uniform",
            s.span()
        )));
    }
    let mut rest = g.clone();
    for &q in sieve(s.length() + 1).expect("J + 1 >= 2").primes() {
        while (&rest % q).is_zero() {
            rest /= q;
        }
    }
    if !rest.is_one() {
        return Err(Error::UnsupportedSpan(format!(
            "uniform gap has a prime factor above {} (cofactor {rest})",
            s.length() + 1
        )));
    }
    // Spot-check the claim behind the shortcut: the first primes past J+1
    // must see all J+1 residues.
    let mut q = next_prime_after(s.length() + 1);
    for _ in 0..3 {
        assert_eq!(s.nu_unchecked(q), s.length() + 1);
        q = next_prime_after(q);
    }
    Ok(ratio_one())
}

/// The asymptotic relative population w_s(∞) with both factors exact.
/// An inadmissible tuple yields a zero report naming the offending prime.
pub fn w_infinity(s: &Constellation) -> Result<PopulationReport> {
    let digest = s.digest();
    let j_plus_1 = s.length() + 1;
    let mut factor1 = BigUint::one();
    let mut vanished_at = None;
    for &q in sieve(j_plus_1).expect("J + 1 >= 2").primes() {
        let nu = s.nu_unchecked(q);
        if nu == q {
            vanished_at = Some(q);
            break;
        }
        factor1 *= q - nu;
    }
    if let Some(q) = vanished_at {
        return Ok(PopulationReport {
            tuple_digest: digest,
            factor1: BigUint::zero(),
            factor2: ratio_one(),
            w_infinity: BigRational::zero(),
            vanished_at: Some(q),
        });
    }
    let factor2 = match s.span().to_u64() {
        Some(span) if span <= FACTOR2_SPAN_LIMIT => factor2_by_iteration(s, span),
        _ => factor2_uniform(s)?,
    };
    let w = BigRational::from_integer(factor1.clone().into()) * &factor2;
    Ok(PopulationReport {
        tuple_digest: digest,
        factor1,
        factor2,
        w_infinity: w,
        vanished_at: None,
    })
}

/// Per-tuple reports for a family of same-length constellations, in input
/// order. Relative populations are only comparable at equal length, so
/// mixed lengths are refused.
pub fn w_infinity_table(tuples: &[Constellation]) -> Result<Vec<PopulationReport>> {
    let mut lengths = tuples.iter().map(|s| s.length());
    if let Some(first) = lengths.next() {
        if let Some(other) = lengths.find(|&l| l != first) {
            return Err(Error::MixedLengths(first, other));
        }
    }
    tuples.par_iter().map(w_infinity).collect()
}

/// The stage past which a constellation of mean gap μ would be expected:
/// solves e^γ · ln p = μ, returning p as (mantissa, decimal exponent).
pub fn mertens_mu_threshold(target_mu: f64) -> Result<(f64, i64)> {
    if !(target_mu > 1.0) || !target_mu.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "mean gap must exceed 1, got {target_mu}"
        )));
    }
    let log10_p = target_mu * (-EULER_GAMMA).exp() / std::f64::consts::LN_10;
    let exponent = log10_p.floor() as i64;
    let mantissa = 10f64.powf(log10_p - exponent as f64);
    Ok((mantissa, exponent))
}
