//! Window evolution: how the neighborhood of an instance thins out as
//! sieving advances, which offsets survive around it, and at which stage a
//! target tuple first appears as the exact survivor pattern of an instance.
//!
//! Striking is pure residue arithmetic: a window offset t dies at stage
//! prime q when γ0 + t ≡ 0 mod q. The surviving offsets around γ0 form its
//! driving term — the tuple that γ0 actually instantiates at that stage.

use crate::constellation::Constellation;
use crate::error::{Error, Result};
use crate::pcoords::PrimorialCoords;
use crate::primes::sieve;
use crate::search::{initial_frontier, lift, SearchFrontier};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Windows wider than this are refused rather than sieved element by
/// element.
const WINDOW_SPAN_LIMIT: u64 = 100_000_000;

fn window_span(target: &Constellation) -> Result<u64> {
    match target.span().to_u64() {
        Some(span) if span <= WINDOW_SPAN_LIMIT => Ok(span),
        _ => Err(Error::UnsupportedSpan(format!(
            "window spans above {WINDOW_SPAN_LIMIT} are not sieved"
        ))),
    }
}

/// Residue striking over [0, span] without the γ0 ≥ 2 precondition; the
/// public wrapper enforces it, prefix tracking dips below it on purpose.
fn survivor_offsets(gamma0: &PrimorialCoords, span: u64, stage: u64) -> Result<Vec<u64>> {
    if span > WINDOW_SPAN_LIMIT {
        return Err(Error::UnsupportedSpan(format!(
            "window spans above {WINDOW_SPAN_LIMIT} are not sieved"
        )));
    }
    let mut alive = vec![true; span as usize + 1];
    for &q in sieve(stage)?.primes() {
        let r = gamma0.residue_mod_prime(q);
        let mut t = (q - r) % q;
        while t <= span {
            alive[t as usize] = false;
            t += q;
        }
    }
    Ok(alive
        .iter()
        .enumerate()
        .filter_map(|(t, &a)| a.then_some(t as u64))
        .collect())
}

/// The offsets t in [0, span] for which γ0 + t survives every stage prime,
/// i.e. γ0 + t ≢ 0 mod q for all primes q ≤ stage.
pub fn survivors_in_window(gamma0: &PrimorialCoords, span: u64, stage: u64) -> Result<Vec<u64>> {
    if gamma0.decode() < BigUint::from(2u32) {
        return Err(Error::InvalidArgument(
            "window base must decode to at least 2".into(),
        ));
    }
    survivor_offsets(gamma0, span, stage)
}

/// The tuple an instance actually drives at a stage: all survivors in its
/// window, rebased to start at zero.
#[derive(Clone, Debug)]
pub struct DrivingTerm {
    pub stage: u64,
    pub gamma0: PrimorialCoords,
    /// Surviving offsets relative to γ0, in ascending order.
    pub survivors: Vec<u64>,
    /// The survivors as a constellation (rebased to a leading zero).
    pub term: Constellation,
    /// Whether every target offset is among the survivors.
    pub contains_target: bool,
    /// Number of gaps in the term.
    pub length: u64,
}

/// Sieve the window of γ0 spanned by the target tuple and package the
/// surviving pattern.
pub fn driving_term(
    gamma0: &PrimorialCoords,
    target: &Constellation,
    stage: u64,
) -> Result<DrivingTerm> {
    let span = window_span(target)?;
    let survivors = survivors_in_window(gamma0, span, stage)?;
    if survivors.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "only {} offset(s) survive in the window; no term to report",
            survivors.len()
        )));
    }
    let base = survivors[0];
    let rebased: Vec<u64> = survivors.iter().map(|&t| t - base).collect();
    let term = Constellation::from_offsets_u64(&rebased)?;
    let contains_target = target
        .offsets_u64()
        .map_or(false, |offs| {
            offs.iter().all(|h| survivors.binary_search(h).is_ok())
        });
    let length = (survivors.len() - 1) as u64;
    Ok(DrivingTerm {
        stage,
        gamma0: gamma0.clone(),
        survivors,
        term,
        contains_target,
        length,
    })
}

/// The unique admissible instance at a stage, when there is exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquePrefix {
    pub gamma0: PrimorialCoords,
    /// Gap count of the instance's driving term over the target's span.
    pub driving_length: u64,
}

/// One stage of prefix tracking: the exact instance count, and the unique
/// instance whenever the count is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixStage {
    pub stage: u64,
    pub count: BigUint,
    pub unique: Option<UniquePrefix>,
}

/// Follow the admissible instances of a target through every stage up to
/// max_stage. While the count stays at one, the single instance is the
/// forced prefix of any occurrence of the target, and its driving term
/// shows how much excess pattern still surrounds it.
pub fn track_prefix(
    target: &Constellation,
    max_stage: u64,
    budget: u64,
) -> Result<Vec<PrefixStage>> {
    if !target.is_admissible() {
        return Err(Error::InvalidArgument(
            "target tuple is inadmissible; it has no instances".into(),
        ));
    }
    let span = window_span(target)?;
    let stages: Vec<u64> = sieve(max_stage)?.primes().to_vec();
    let mut rows = Vec::with_capacity(stages.len());
    let mut frontier: Option<SearchFrontier> = None;
    let mut last_completed: u64 = 0;
    for &q in &stages {
        let next = match &frontier {
            None => initial_frontier(target, 2, budget)?,
            Some(f) => lift(target, f, q, budget)?,
        };
        if next.is_truncated() {
            return Err(Error::BudgetExceeded {
                last_stage: last_completed,
            });
        }
        let unique = if next.len() == 1 {
            let gamma0 = next.instance(0);
            let survivors = survivor_offsets(&gamma0, span, q)?;
            Some(UniquePrefix {
                gamma0,
                driving_length: (survivors.len() - 1) as u64,
            })
        } else {
            None
        };
        rows.push(PrefixStage {
            stage: q,
            count: next.count().clone(),
            unique,
        });
        last_completed = q;
        frontier = Some(next);
    }
    Ok(rows)
}

/// The smallest stage at which some admissible instance's survivor pattern
/// equals the target exactly — no extra survivors in the window, none
/// missing. Instances below 2 are skipped: their windows are phantoms that
/// no run of primes can realize.
pub fn first_appearance(
    target: &Constellation,
    max_stage: u64,
    budget: u64,
) -> Result<Option<u64>> {
    if !target.is_admissible() {
        return Ok(None);
    }
    let span = window_span(target)?;
    let target_offsets: Vec<u64> = target
        .offsets_u64()
        .ok_or_else(|| Error::UnsupportedSpan("target offsets exceed u64".into()))?
        .to_vec();
    let two = BigUint::from(2u32);
    let stages: Vec<u64> = sieve(max_stage)?.primes().to_vec();
    let mut frontier: Option<SearchFrontier> = None;
    let mut last_completed: u64 = 0;
    for &q in &stages {
        let next = match &frontier {
            None => initial_frontier(target, 2, budget)?,
            Some(f) => lift(target, f, q, budget)?,
        };
        if next.is_truncated() {
            return Err(Error::BudgetExceeded {
                last_stage: last_completed,
            });
        }
        for i in 0..next.len() {
            if next.value(i) < two {
                continue;
            }
            if survivor_offsets(&next.instance(i), span, q)? == target_offsets {
                return Ok(Some(q));
            }
        }
        last_completed = q;
        frontier = Some(next);
    }
    Ok(None)
}
