//! Instance search across sieve stages: breadth-first residue lifting with
//! exact frontier accounting, best-first search for the minimal admissible
//! instance, survival certification, and restartable checkpoints.
//!
//! A frontier at stage p holds admissible residues mod p#, i.e. values γ
//! with (γ + h) ≢ 0 mod q for every offset h and every prime q ≤ p. Lifting
//! to the next prime extends each value by one primorial digit: γ spawns
//! γ + m·p# for m in [0, next), of which exactly next − ν survive.

use crate::constellation::{umod, Constellation};
use crate::error::{Error, Result};
use crate::pcoords::PrimorialCoords;
use crate::population::instance_count;
use crate::primes::{
    first_primes, is_prime, is_prime_u64, next_prime_after, prime_count, sieve, Primality,
};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

const CHECKPOINT_VERSION: u64 = 1;

/// Primes whose horizon intervals are consulted during survival checks.
const HORIZON_LIMIT: u64 = 10_000;

/// The admissible instances of a tuple mod stage#, in ascending value
/// order. `count` always carries the exact cardinality from the product
/// formula; `truncated` records whether the materialized instances are only
/// a prefix of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchFrontier {
    tuple_digest: String,
    stage: u64,
    width: usize,
    radices: Vec<u64>,
    slab: Vec<u16>,
    count: BigUint,
    truncated: bool,
}

fn row_value(row: &[u16], radices: &[u64]) -> BigUint {
    let mut v = BigUint::zero();
    for (&d, &r) in row.iter().zip(radices).rev() {
        v = v * r + d;
    }
    v
}

fn row_mod(row: &[u16], radices: &[u64], q: u64) -> u64 {
    let mut v: u64 = 0;
    for (&d, &r) in row.iter().zip(radices).rev() {
        v = (v * (r % q) + d as u64) % q;
    }
    v
}

impl SearchFrontier {
    /// The frontier at stage 2: the admissible residues mod 2.
    fn base(s: &Constellation) -> Self {
        let residues = s.admissible_residues(2).expect("2 is prime");
        let slab: Vec<u16> = residues.iter().map(|&r| r as u16).collect();
        let count = instance_count(s, 2, 2).count;
        SearchFrontier {
            tuple_digest: s.digest(),
            stage: 2,
            width: 1,
            radices: vec![2],
            slab,
            count,
            truncated: false,
        }
    }

    pub fn tuple_digest(&self) -> &str {
        &self.tuple_digest
    }

    pub fn stage(&self) -> u64 {
        self.stage
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Exact instance count mod stage#, independent of materialization.
    pub fn count(&self) -> &BigUint {
        &self.count
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Number of materialized instances.
    pub fn len(&self) -> usize {
        if self.width == 0 {
            0
        } else {
            self.slab.len() / self.width
        }
    }

    pub fn is_empty(&self) -> bool {
        self.slab.is_empty()
    }

    fn row(&self, i: usize) -> &[u16] {
        &self.slab[i * self.width..(i + 1) * self.width]
    }

    pub fn instance(&self, i: usize) -> PrimorialCoords {
        PrimorialCoords::from_digits_unchecked(self.row(i).iter().map(|&d| d as u64).collect())
    }

    pub fn value(&self, i: usize) -> BigUint {
        row_value(self.row(i), &self.radices)
    }

    pub fn values(&self) -> impl Iterator<Item = BigUint> + '_ {
        (0..self.len()).map(|i| self.value(i))
    }

    /// Write the frontier as a checkpoint: UTF-8 header lines, then one
    /// instance per line in coordinate text form.
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = File::create(path)?;
        let mut out = BufWriter::new(file);
        writeln!(out, "version {CHECKPOINT_VERSION}")?;
        writeln!(out, "tuple-digest {}", self.tuple_digest)?;
        writeln!(out, "stage {}", self.stage)?;
        writeln!(out, "count {}", self.count)?;
        writeln!(out, "truncated {}", self.truncated)?;
        for i in 0..self.len() {
            writeln!(out, "{}", self.instance(i))?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reload a checkpoint, re-validating structure, digit bounds, and
    /// ascending order. The tuple digest is checked when the frontier is
    /// next used against a tuple.
    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path)?;
        let reader = BufReader::new(file);
        let mut lines = reader.lines();
        let mut header = |name: &str| -> Result<String> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Checkpoint(format!("missing {name} header")))??;
            line.strip_prefix(name)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(str::to_owned)
                .ok_or_else(|| Error::Checkpoint(format!("expected {name} header, got {line:?}")))
        };
        let version: u64 = header("version")?
            .parse()
            .map_err(|_| Error::Checkpoint("unreadable version".into()))?;
        if version != CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!("unsupported version {version}")));
        }
        let digest = header("tuple-digest")?;
        let stage: u64 = header("stage")?
            .parse()
            .map_err(|_| Error::Checkpoint("unreadable stage".into()))?;
        if !is_prime_u64(stage) || stage > u16::MAX as u64 {
            return Err(Error::Checkpoint(format!("invalid stage {stage}")));
        }
        let count = BigUint::parse_bytes(header("count")?.as_bytes(), 10)
            .ok_or_else(|| Error::Checkpoint("unreadable count".into()))?;
        let truncated: bool = header("truncated")?
            .parse()
            .map_err(|_| Error::Checkpoint("unreadable truncated flag".into()))?;
        let width = prime_count(stage) as usize;
        let radices = first_primes(width);
        let mut slab: Vec<u16> = Vec::new();
        let mut prev: Option<Vec<u16>> = None;
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let coords = PrimorialCoords::from_text(&line)
                .map_err(|e| Error::Checkpoint(format!("bad instance line {line:?}: {e}")))?;
            if coords.digits().len() > width {
                return Err(Error::Checkpoint(format!(
                    "instance {line:?} has more digits than stage {stage} allows"
                )));
            }
            let mut row = vec![0u16; width];
            for (slot, &d) in row.iter_mut().zip(coords.digits()) {
                *slot = d as u16;
            }
            if let Some(p) = &prev {
                if row.iter().rev().cmp(p.iter().rev()) != Ordering::Greater {
                    return Err(Error::Checkpoint("instances are not ascending".into()));
                }
            }
            slab.extend_from_slice(&row);
            prev = Some(row);
        }
        Ok(SearchFrontier {
            tuple_digest: digest,
            stage,
            width,
            radices,
            slab,
            count,
            truncated,
        })
    }
}

fn check_digest(s: &Constellation, frontier: &SearchFrontier) -> Result<()> {
    let found = s.digest();
    if frontier.tuple_digest != found {
        return Err(Error::DigestMismatch {
            expected: frontier.tuple_digest.clone(),
            found,
        });
    }
    Ok(())
}

/// Extend a frontier by one stage. Children are generated in ascending
/// value order (outer loop over the new digit m, inner loop over parents);
/// when the budget is hit, the smallest values are the ones kept.
pub fn lift(
    s: &Constellation,
    parent: &SearchFrontier,
    next: u64,
    budget: u64,
) -> Result<SearchFrontier> {
    check_digest(s, parent)?;
    let expected = next_prime_after(parent.stage);
    if next != expected {
        return Err(Error::StageOrder {
            expected,
            got: next,
        });
    }
    if next > u16::MAX as u64 {
        return Err(Error::InvalidArgument(format!(
            "stage {next} exceeds the frontier digit representation"
        )));
    }
    let nu = s.nu_unchecked(next);
    let count = &parent.count * (next - nu);
    let mut allowed = vec![false; next as usize];
    for r in s.admissible_residues(next)? {
        allowed[r as usize] = true;
    }
    let width = parent.width + 1;
    let n_par = parent.len();
    // residue of each parent value mod next, then one shift per digit m
    let par_res: Vec<u64> = (0..n_par)
        .into_par_iter()
        .map(|i| row_mod(parent.row(i), &parent.radices, next))
        .collect();
    let step_mod = parent.radices.iter().fold(1u64, |acc, &r| acc * (r % next) % next);
    let expect_children = (n_par as u64).saturating_mul(next - nu).min(budget);
    let mut slab: Vec<u16> = Vec::with_capacity((expect_children as usize).saturating_mul(width));
    let mut kept: u64 = 0;
    'blocks: for m in 0..next {
        if nu == next {
            break;
        }
        let shift = m * step_mod % next;
        let hits: Vec<usize> = (0..n_par)
            .into_par_iter()
            .filter(|&i| allowed[((par_res[i] + shift) % next) as usize])
            .collect();
        for i in hits {
            if kept == budget {
                break 'blocks;
            }
            slab.extend_from_slice(parent.row(i));
            slab.push(m as u16);
            kept += 1;
        }
    }
    let truncated = BigUint::from(kept) < count;
    let mut radices = parent.radices.clone();
    radices.push(next);
    Ok(SearchFrontier {
        tuple_digest: parent.tuple_digest.clone(),
        stage: next,
        width,
        radices,
        slab,
        count,
        truncated,
    })
}

/// The complete (budget permitting) frontier mod start#, built by lifting
/// from stage 2.
pub fn initial_frontier(s: &Constellation, start: u64, budget: u64) -> Result<SearchFrontier> {
    if !is_prime_u64(start) {
        return Err(Error::NotPrime(start));
    }
    let mut frontier = SearchFrontier::base(s);
    if frontier.len() as u64 > budget {
        frontier.slab.truncate((budget as usize) * frontier.width);
        frontier.truncated = true;
    }
    for &q in sieve(start).expect("start >= 2").primes() {
        if q > 2 {
            frontier = lift(s, &frontier, q, budget)?;
        }
    }
    Ok(frontier)
}

/// Per-stage accounting of a breadth-first run. `count` is exact from the
/// product formula even when `materialized` was capped by the budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRow {
    pub stage: u64,
    pub count: BigUint,
    pub materialized: u64,
    pub truncated: bool,
}

#[derive(Clone, Debug)]
pub struct BfsReport {
    pub frontier: SearchFrontier,
    pub stages: Vec<StageRow>,
}

fn stage_row(f: &SearchFrontier) -> StageRow {
    StageRow {
        stage: f.stage,
        count: f.count.clone(),
        materialized: f.len() as u64,
        truncated: f.truncated,
    }
}

/// Breadth-first lifting from start to end (primes inclusive), reporting one
/// row per stage.
pub fn bfs(s: &Constellation, start: u64, end: u64, budget: u64) -> Result<BfsReport> {
    if end < start {
        return Err(Error::InvalidArgument(format!(
            "end stage {end} precedes start stage {start}"
        )));
    }
    let frontier = initial_frontier(s, start, budget)?;
    let mut report = BfsReport {
        stages: vec![stage_row(&frontier)],
        frontier,
    };
    continue_bfs(s, &mut report, end, budget)?;
    Ok(report)
}

/// Resume breadth-first lifting from an existing frontier (typically a
/// reloaded checkpoint). Rows cover only the newly lifted stages.
pub fn bfs_from(
    s: &Constellation,
    frontier: SearchFrontier,
    end: u64,
    budget: u64,
) -> Result<BfsReport> {
    check_digest(s, &frontier)?;
    let mut report = BfsReport {
        stages: Vec::new(),
        frontier,
    };
    continue_bfs(s, &mut report, end, budget)?;
    Ok(report)
}

fn continue_bfs(s: &Constellation, report: &mut BfsReport, end: u64, budget: u64) -> Result<()> {
    let mut q = next_prime_after(report.frontier.stage);
    while q <= end {
        report.frontier = lift(s, &report.frontier, q, budget)?;
        report.stages.push(stage_row(&report.frontier));
        q = next_prime_after(q);
    }
    Ok(())
}

#[derive(Debug, PartialEq, Eq)]
struct HeapEntry {
    value: BigUint,
    stage_idx: usize,
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // value first; on ties prefer the deeper stage (closer to the goal)
        self.value
            .cmp(&other.value)
            .then_with(|| other.stage_idx.cmp(&self.stage_idx))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a best-first minimal-instance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinGamma {
    pub coords: PrimorialCoords,
    pub value: BigUint,
    /// The stage the search ran through.
    pub stage: u64,
    /// True when the value is proven minimal; false when the pop budget ran
    /// out and the result is a greedy completion.
    pub optimal: bool,
    pub pops: u64,
}

/// The smallest admissible instance mod end_stage#, by uniform-cost
/// expansion over the value order. Each expansion appends one digit, so the
/// first node popped at the final stage is the minimum over the complete
/// frontier — without materializing it.
pub fn min_gamma(s: &Constellation, end_stage: u64, pop_budget: u64) -> Result<MinGamma> {
    if !is_prime_u64(end_stage) {
        return Err(Error::NotPrime(end_stage));
    }
    let stages: Vec<u64> = sieve(end_stage).expect("end >= 2").primes().to_vec();
    let last = stages.len() - 1;
    let mut allowed: Vec<Vec<bool>> = Vec::with_capacity(stages.len());
    for &q in &stages {
        let mut table = vec![false; q as usize];
        for r in s.admissible_residues(q)? {
            table[r as usize] = true;
        }
        allowed.push(table);
    }
    // primorials[i] = stages[0..=i] product; step_mods[i] = primorials[i-1] mod stages[i]
    let mut primorials: Vec<BigUint> = Vec::with_capacity(stages.len());
    let mut acc = BigUint::one();
    for &q in &stages {
        acc *= q;
        primorials.push(acc.clone());
    }
    let mut step_mods: Vec<u64> = vec![0; stages.len()];
    for i in 1..stages.len() {
        step_mods[i] = umod(&primorials[i - 1], stages[i]);
    }
    let mut heap: BinaryHeap<Reverse<HeapEntry>> = BinaryHeap::new();
    for (r, ok) in allowed[0].iter().enumerate() {
        if *ok {
            heap.push(Reverse(HeapEntry {
                value: BigUint::from(r),
                stage_idx: 0,
            }));
        }
    }
    let mut pops: u64 = 0;
    while let Some(Reverse(entry)) = heap.pop() {
        pops += 1;
        if entry.stage_idx == last {
            return Ok(MinGamma {
                coords: PrimorialCoords::encode(&entry.value),
                value: entry.value,
                stage: end_stage,
                optimal: true,
                pops,
            });
        }
        if pops >= pop_budget {
            // out of budget: finish this branch greedily (for an admissible
            // tuple every parent has exactly q − ν ≥ 1 admissible children)
            let mut value = entry.value;
            for idx in entry.stage_idx + 1..stages.len() {
                let q = stages[idx];
                let v_mod = umod(&value, q);
                let Some(m) =
                    (0..q).find(|&m| allowed[idx][((v_mod + m * step_mods[idx] % q) % q) as usize])
                else {
                    return Err(Error::EmptyDomain(
                        "no admissible instance at any stage".into(),
                    ));
                };
                value += &primorials[idx - 1] * m;
            }
            return Ok(MinGamma {
                coords: PrimorialCoords::encode(&value),
                value,
                stage: end_stage,
                optimal: false,
                pops,
            });
        }
        let idx = entry.stage_idx + 1;
        let q = stages[idx];
        let v_mod = umod(&entry.value, q);
        for m in 0..q {
            if allowed[idx][((v_mod + m * step_mods[idx] % q) % q) as usize] {
                heap.push(Reverse(HeapEntry {
                    value: &entry.value + &primorials[idx - 1] * m,
                    stage_idx: idx,
                }));
            }
        }
    }
    Err(Error::EmptyDomain(
        "no admissible instance at any stage".into(),
    ))
}

/// The largest stage ≤ end whose complete frontier stays within the budget;
/// `None` disables the cap.
pub fn effective_stage(s: &Constellation, end: u64, frontier_budget: Option<u64>) -> Result<u64> {
    let Some(budget) = frontier_budget else {
        return Ok(end);
    };
    let cap = BigUint::from(budget);
    let mut product = BigUint::one();
    let mut best = None;
    for &q in sieve(end)?.primes() {
        product *= q - s.nu_unchecked(q);
        if product <= cap {
            best = Some(q);
        } else {
            break;
        }
    }
    best.ok_or_else(|| {
        Error::InvalidArgument(format!("frontier budget {budget} excludes even stage 2"))
    })
}

#[derive(Clone, Debug)]
pub struct MinGammaAll {
    /// One row per input tuple, in input order.
    pub rows: Vec<MinGamma>,
    /// Index of the smallest value across all rows.
    pub global_min: usize,
}

/// Minimal instances for a family of tuples, each searched through the
/// largest stage ≤ end_stage whose complete frontier fits frontier_budget.
pub fn min_gamma_all(
    tuples: &[Constellation],
    end_stage: u64,
    frontier_budget: Option<u64>,
    pop_budget: u64,
) -> Result<MinGammaAll> {
    if tuples.is_empty() {
        return Err(Error::EmptyDomain("no tuples to search".into()));
    }
    let rows: Vec<MinGamma> = tuples
        .par_iter()
        .map(|s| {
            let stage = effective_stage(s, end_stage, frontier_budget)?;
            min_gamma(s, stage, pop_budget)
        })
        .collect::<Result<Vec<_>>>()?;
    let global_min = rows
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.value.cmp(&b.1.value))
        .map(|(i, _)| i)
        .unwrap();
    Ok(MinGammaAll { rows, global_min })
}

/// The interval (q², q₁²) in which any integer coprime to q# is prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HorizonOfSurvival {
    q: u64,
}

impl HorizonOfSurvival {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime_u64(q) {
            return Err(Error::NotPrime(q));
        }
        if q >= 3_000_000_000 {
            return Err(Error::InvalidArgument(format!(
                "horizon bounds for {q} overflow"
            )));
        }
        Ok(HorizonOfSurvival { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn interval(&self) -> (u64, u64) {
        let q1 = next_prime_after(self.q);
        (self.q * self.q, q1 * q1)
    }
}

/// Outcome of checking whether an instance survives among the primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Survival {
    /// Every element is prime, proven deterministically or by the horizon
    /// argument.
    Certified,
    /// Every element passes probable-prime testing; some lie above the
    /// deterministic threshold.
    Probable,
    /// Some element is composite (or below 2); its offset index is named.
    Dead { offset_index: usize },
}

/// Decide survival of the instance starting at gamma0. Small primes strike
/// composites cheaply; if the whole window drops below the next horizon
/// while still coprime, the instance is certified without any primality
/// test. Otherwise each element is tested individually.
pub fn survival_check(gamma0: &PrimorialCoords, s: &Constellation) -> Survival {
    let v0 = gamma0.decode();
    let window_end = &v0 + s.span();
    let offsets = s.offsets();
    let above_one = v0 >= BigUint::from(2u32);
    let horizon_primes = first_primes(prime_count(HORIZON_LIMIT) as usize);
    for (i, &q) in horizon_primes.iter().enumerate() {
        let v_mod = umod(&v0, q);
        for (idx, h) in offsets.iter().enumerate() {
            if (v_mod + umod(h, q)) % q == 0 {
                // divisible by q: composite unless the element is q itself
                if &v0 + h != BigUint::from(q) {
                    return Survival::Dead { offset_index: idx };
                }
            }
        }
        let q1 = horizon_primes
            .get(i + 1)
            .copied()
            .unwrap_or_else(|| next_prime_after(q));
        if above_one && window_end < BigUint::from(q1) * q1 {
            // coprime to q# and below q1²: every element is prime
            return Survival::Certified;
        }
    }
    let mut all_certain = true;
    for (idx, h) in offsets.iter().enumerate() {
        match is_prime(&(&v0 + h)) {
            Primality::Composite => return Survival::Dead { offset_index: idx },
            Primality::ProbablePrime => all_certain = false,
            Primality::Prime => {}
        }
    }
    if all_certain {
        Survival::Certified
    } else {
        Survival::Probable
    }
}

/// An instance emitted by [`dfs_zero_run`], with its survival status.
#[derive(Clone, Debug)]
pub struct ZeroRunCandidate {
    pub coords: PrimorialCoords,
    pub value: BigUint,
    pub status: Survival,
}

/// Depth-first extension of every frontier instance along m = 0 digits
/// only: an instance survives a stage q unless q strikes one of its
/// elements as a proper multiple (an element equal to q itself stays). The
/// survivors of all `depth` stages are emitted with survival checks.
pub fn dfs_zero_run(
    s: &Constellation,
    frontier: &SearchFrontier,
    depth: usize,
) -> Result<Vec<ZeroRunCandidate>> {
    check_digest(s, frontier)?;
    let mut stages = Vec::with_capacity(depth);
    let mut q = frontier.stage;
    for _ in 0..depth {
        q = next_prime_after(q);
        stages.push(q);
    }
    // offset residues per stage, shared across instances
    let offs_mod: Vec<Vec<u64>> = stages
        .iter()
        .map(|&q| s.offsets().iter().map(|h| umod(h, q)).collect())
        .collect();
    let candidates: Vec<ZeroRunCandidate> = (0..frontier.len())
        .into_par_iter()
        .filter_map(|i| {
            let v = frontier.value(i);
            for (&q, offs) in stages.iter().zip(&offs_mod) {
                let v_mod = umod(&v, q);
                for (idx, &h_mod) in offs.iter().enumerate() {
                    if (v_mod + h_mod) % q == 0 && &v + &s.offsets()[idx] != BigUint::from(q) {
                        return None; // struck: m = 0 is inadmissible here
                    }
                }
            }
            let coords = frontier.instance(i);
            let status = survival_check(&coords, s);
            Some(ZeroRunCandidate {
                coords,
                value: v,
                status,
            })
        })
        .collect();
    Ok(candidates)
}
