//! Acceptance suite: one test per published claim about the bundled
//! 58-tuple dataset, plus self-contained consistency checks. Run with
//! `cargo test --test acceptance -- --nocapture` for the detail lines.

mod expected;

use constel_cli::{parse_tuple_file, phi, TupleFile};
use constel_core::constellation::{minimal_repetition_gap, repetition, Constellation};
use constel_core::evolution::{first_appearance, survivors_in_window, track_prefix};
use constel_core::pcoords::PrimorialCoords;
use constel_core::population::{instance_count, mertens_mu_threshold, w_infinity, w_infinity_table};
use constel_core::primes::{
    next_prime_after, nth_prime, prime_count, prime_gap_constellation, primorial, sieve,
};
use constel_core::render::{sci_biguint, sci_parts, sci_ratio};
use constel_core::search::{
    bfs, dfs_zero_run, initial_frontier, min_gamma_all, HorizonOfSurvival, Survival,
};
use expected::*;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use std::path::Path;

const TRACK_BUDGET: u64 = 1_000_000;
const BFS_BUDGET: u64 = 6_000_000;
const FRONTIER_CAP: u64 = 40_000_000;

fn fixture() -> Option<TupleFile> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/eng459.tuples");
    if !path.exists() {
        println!("skipped: fixture {} not present", path.display());
        return None;
    }
    let tf = parse_tuple_file(&path).expect("fixture parses");
    assert_eq!(tf.records.len(), 58, "fixture holds 58 tuples");
    Some(tf)
}

fn tuples_of(tf: &TupleFile) -> Vec<Constellation> {
    tf.records.iter().map(|r| r.tuple.clone()).collect()
}

#[test]
fn criterion_01_scoring() {
    assert_eq!(prime_count(3242), 457);
    assert_eq!(nth_prime(459), 3253);
    let Some(tf) = fixture() else { return };
    for r in &tf.records {
        let s = &r.tuple;
        assert!(r.admissible, "tuple #{}", r.index);
        assert_eq!(s.length(), 459, "tuple #{}", r.index);
        assert_eq!(s.span(), &BigUint::from(3242u32), "tuple #{}", r.index);
        assert_eq!(s.nonconvexity_score().unwrap(), 2, "tuple #{}", r.index);
        assert!(s.is_counterexample(), "tuple #{}", r.index);
    }
    println!("criterion 01: all 58 tuples score 459 − 457 = 2 with the counterexample flag set — pass");
}

#[test]
fn criterion_02_gap_histograms() {
    let pg = prime_gap_constellation(459);
    let hist = pg.gap_histogram();
    assert_eq!(hist.len(), PRIME_GAP_HIST.len());
    assert_eq!(hist.values().sum::<u64>(), 459);
    for (g, c) in PRIME_GAP_HIST {
        assert_eq!(hist.get(&BigUint::from(g)), Some(&c), "prime gap {g}");
    }
    let wide: u64 = PRIME_GAP_HIST
        .iter()
        .filter(|(g, _)| *g >= 20)
        .map(|(_, c)| c)
        .sum();
    assert_eq!(wide, 14, "gaps of size 20 or more among the first 459");

    let Some(tf) = fixture() else { return };
    let hist4 = tf.records[4].tuple.gap_histogram();
    assert_eq!(hist4.len(), S4_GAP_HIST.len());
    assert_eq!(hist4.values().sum::<u64>(), 459);
    for (g, c) in S4_GAP_HIST {
        assert_eq!(hist4.get(&BigUint::from(g)), Some(&c), "tuple #4 gap {g}");
    }
    println!("criterion 02: both 459-gap histograms match, 16 and 12 bins — pass");
}

#[test]
fn criterion_03_residue_profile() {
    let Some(tf) = fixture() else { return };
    let s = &tf.records[4].tuple;
    for (q, remaining) in S4_RESIDUE_COUNTS {
        assert_eq!(q - s.nu(q).unwrap(), remaining, "q = {q}");
    }
    println!(
        "criterion 03: q − ν_q for tuple #4 matches all {} values, 13 ≤ q ≤ 499 — pass",
        S4_RESIDUE_COUNTS.len()
    );
}

#[test]
fn criterion_04_unique_prefixes() {
    let Some(tf) = fixture() else { return };
    let mut family = Vec::new();
    for r in &tf.records {
        let rows = track_prefix(&r.tuple, 131, TRACK_BUDGET).unwrap();
        assert_eq!(rows.len(), 32, "tuple #{}: one row per stage", r.index);
        for row in &rows {
            assert_eq!(
                row.count,
                BigUint::one(),
                "tuple #{} stage {}",
                r.index,
                row.stage
            );
        }
        let r59 = &rows[16];
        assert_eq!(r59.stage, 59);
        let u = r59.unique.as_ref().unwrap();
        if u.gamma0.decode().to_string() == G0_59_VALUE {
            assert_eq!(u.driving_length, 478, "tuple #{} at stage 59", r.index);
            family.push(r.index);
        }
    }
    assert!(family.contains(&4), "tuple #4 shares the known prefix");

    let s4 = &tf.records[4].tuple;
    let rows = track_prefix(s4, 137, TRACK_BUDGET).unwrap();
    let last = rows.last().unwrap();
    assert_eq!(last.stage, 137);
    assert_eq!(last.count, BigUint::one());
    let g0 = last.unique.as_ref().unwrap().gamma0.decode();
    assert_eq!(g0.to_string(), G0_137_S4);
    assert_eq!(sci_biguint(&g0, 8), "2.2802369E52");

    assert_eq!(first_appearance(s4, 131, TRACK_BUDGET).unwrap(), Some(113));
    println!(
        "criterion 04: unique prefix at every stage through 131 for all 58; {} tuples share \
         the stage-59 instance (driving length 478); tuple #4 appears exactly at 113 and is \
         still unique at 137 with γ0 ≈ 2.2802369E52 — pass",
        family.len()
    );
}

#[test]
fn criterion_05_gamma0_59() {
    let Some(tf) = fixture() else { return };
    let rows = track_prefix(&tf.records[4].tuple, 59, TRACK_BUDGET).unwrap();
    let last = rows.last().unwrap();
    assert_eq!(last.stage, 59);
    let coords = &last.unique.as_ref().unwrap().gamma0;
    assert_eq!(coords.digits(), &G0_59_DIGITS);
    let value = coords.decode();
    assert_eq!(value.to_string(), G0_59_VALUE);
    assert_eq!(sci_biguint(&value, 9), "4.36569294E20");
    println!("criterion 05: γ0(59#) digits (…,23,38,34,46,20,13) and value 4.36569294E20 — pass");
}

#[test]
fn criterion_06_stage_counts() {
    let Some(tf) = fixture() else { return };
    let s4 = &tf.records[4].tuple;
    let report = bfs(s4, 11, 211, BFS_BUDGET).unwrap();
    for (q, want) in S4_STAGE_COUNTS.iter().filter(|(q, _)| *q <= 211) {
        let row = report.stages.iter().find(|r| r.stage == *q).unwrap();
        assert_eq!(row.count.to_string(), *want, "stage {q}");
        assert!(!row.truncated, "stage {q} fits the budget");
        assert_eq!(BigUint::from(row.materialized), row.count, "stage {q}");
    }
    assert_eq!(report.frontier.stage(), 211);
    assert_eq!(report.frontier.len(), 5_346_000);

    for (q, want) in S4_STAGE_COUNTS {
        let c = instance_count(s4, 2, q);
        assert_eq!(c.vanished_at, None);
        let got = if want.contains('E') {
            sci_biguint(&c.count, 4)
        } else {
            c.count.to_string()
        };
        assert_eq!(got, want, "stage {q}");
    }
    println!(
        "criterion 06: all 30 per-stage counts for tuple #4 match; 5,346,000 instances \
         materialized through 211# — pass"
    );
}

#[test]
fn criterion_07_minimal_instances() {
    let Some(tf) = fixture() else { return };
    let tuples = tuples_of(&tf);
    let result = min_gamma_all(&tuples, 211, Some(FRONTIER_CAP), u64::MAX).unwrap();
    assert_eq!(result.rows.len(), 58);
    for (i, row) in result.rows.iter().enumerate() {
        let (m, p, magnitude) = MIN_TERMS[i];
        assert!(row.optimal, "tuple #{i}");
        assert_eq!(row.coords.leading_term().unwrap(), (m, p), "tuple #{i}");
        let lead = BigUint::from(m) * primorial(p);
        assert_eq!(sci_biguint(&lead, 4), magnitude, "tuple #{i}");
    }
    let s4 = &result.rows[4];
    assert_eq!(s4.stage, 211);
    assert_eq!(s4.value.to_string(), MIN_S4_211);
    let t23 = &result.rows[23];
    assert_eq!(t23.stage, 199);
    assert_eq!(t23.value.to_string(), MIN_T23_199);
    assert_eq!(sci_biguint(&t23.value, 6), "9.73313E73");
    assert_eq!(result.global_min, 23);
    let bound = BigUint::from(97u32) * BigUint::from(10u32).pow(72);
    assert!(t23.value > bound, "global minimum exceeds 9.7E73");
    println!(
        "criterion 07: leading terms match for all 58 (tuple #4: 6·193#, tuple #23: 18·181#); \
         no admissible instance below 9.73313E73 — pass"
    );
}

#[test]
fn criterion_08_relative_populations() {
    let Some(tf) = fixture() else { return };
    let rep4 = w_infinity(&tf.records[4].tuple).unwrap();
    assert_eq!(sci_biguint(&rep4.factor1, 7), "1.907367E72");
    assert_eq!(sci_ratio(&rep4.factor2, 7), "2.136352E17");
    assert_eq!(rep4.w_scientific(7), "4.074808E89");

    let tuples = tuples_of(&tf);
    let table = w_infinity_table(&tuples).unwrap();
    for (i, rep) in table.iter().enumerate() {
        assert_eq!(rep.vanished_at, None, "tuple #{i}");
        let (f1, f2, w) = W_TABLE[i];
        assert_eq!(sci_biguint(&rep.factor1, 3), f1, "tuple #{i}");
        assert_eq!(sci_ratio(&rep.factor2, 3), f2, "tuple #{i}");
        assert_eq!(rep.w_scientific(4), w, "tuple #{i}");
    }
    let wmax = table.iter().map(|r| &r.w_infinity).max().unwrap();
    let wmin = table.iter().map(|r| &r.w_infinity).min().unwrap();
    let ratio = (wmax / wmin).to_f64().unwrap();
    assert!((ratio - 27.4).abs() <= 0.1, "max/min ratio {ratio}");
    println!(
        "criterion 08: w(∞) factors match for all 58 rows; populations spread by a factor \
         of {ratio:.1} — pass"
    );
}

#[test]
fn criterion_09_repetition_reference() {
    let g = minimal_repetition_gap(459);
    assert_eq!(g, primorial(457));
    assert_eq!(sci_biguint(&g, 6), "2.19145E187");
    let rep = repetition(459, &g).unwrap();
    assert_eq!(rep.length(), 459);
    assert_eq!(sci_biguint(rep.span(), 13), "1.005874585188E190");

    let report = w_infinity(&rep).unwrap();
    let exact: BigUint = sieve(457)
        .unwrap()
        .primes()
        .iter()
        .map(|&q| BigUint::from(q - 1))
        .product();
    assert_eq!(report.factor1, exact);
    assert!(report.factor2.is_one());
    assert_eq!(report.w_scientific(10), "1.992766199E186");
    println!(
        "criterion 09: minimal repetition gap 457# ≈ 2.19145E187, w(∞) = Π(q−1) ≈ \
         1.992766199E186 exactly — pass"
    );
}

#[test]
fn criterion_10_mertens_threshold() {
    let (mantissa, exponent) = mertens_mu_threshold(460.0).unwrap();
    assert_eq!(sci_parts(mantissa, exponent, 4), "1.465E112");
    let log10 = exponent as f64 + mantissa.log10();
    let want = 112.0 + 1.465f64.log10();
    assert!((log10 - want).abs() / want <= 0.02);
    println!("criterion 10: Mertens threshold for μ = 460 is 1.465E112 — pass");
}

#[test]
fn criterion_11_property_spot_checks() {
    // Randomized versions of these properties run in the core crate's
    // tests/properties.rs; the spot checks here are deterministic.

    // (a) frontier counts and values equal direct residue scans
    for gaps in [
        vec![2u64],
        vec![2, 4],
        vec![4, 2],
        vec![2, 4, 2],
        vec![6, 2, 6, 4],
    ] {
        let s = Constellation::from_gaps_u64(&gaps).unwrap();
        let offs = s.offsets_u64().unwrap().to_vec();
        for end in [7u64, 11] {
            let m = primorial(end).to_u64().unwrap();
            let primes = sieve(end).unwrap().primes().to_vec();
            let brute: Vec<BigUint> = (1..m)
                .filter(|v| {
                    primes
                        .iter()
                        .all(|&q| offs.iter().all(|h| (v + h) % q != 0))
                })
                .map(BigUint::from)
                .collect();
            let report = bfs(&s, 2, end, TRACK_BUDGET).unwrap();
            let values: Vec<BigUint> = report.frontier.values().collect();
            assert_eq!(values, brute, "gaps {gaps:?} mod {end}#");
            assert_eq!(
                instance_count(&s, 2, end).count,
                BigUint::from(brute.len()),
                "gaps {gaps:?} mod {end}#"
            );
        }
    }

    // (b) coordinate round trips on deterministically scrambled values
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut step = || {
        state = state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        state
    };
    for _ in 0..500 {
        let bytes: Vec<u8> = (0..5).flat_map(|_| step().to_le_bytes()).collect();
        let v = BigUint::from_bytes_le(&bytes);
        let coords = PrimorialCoords::encode(&v);
        assert_eq!(coords.decode(), v);
        let text = coords.to_string();
        assert_eq!(PrimorialCoords::from_text(&text).unwrap(), coords);
    }

    // (c) ν is mirror-invariant and equals J + 1 past the span
    for code in 0..243u32 {
        let gaps: Vec<u64> = (0..5).map(|i| 2 + 2 * ((code / 3u32.pow(i)) % 3) as u64).collect();
        let s = Constellation::from_gaps_u64(&gaps).unwrap();
        let mirror = s.mirror();
        for q in [2, 3, 5, 7, 11, 13, 17] {
            assert_eq!(s.nu(q).unwrap(), mirror.nu(q).unwrap(), "gaps {gaps:?} q {q}");
        }
        let q = next_prime_after(s.span().to_u64().unwrap());
        assert_eq!(s.nu(q).unwrap(), s.length() + 1, "gaps {gaps:?}");
    }

    // (d) survivor windows shrink as stages advance
    let gamma0 = PrimorialCoords::encode(&BigUint::from(17u32));
    let mut prev: Option<Vec<u64>> = None;
    for stage in [3, 7, 13, 31] {
        let survivors = survivors_in_window(&gamma0, 60, stage).unwrap();
        if let Some(p) = &prev {
            assert!(survivors.len() <= p.len());
            assert!(survivors.iter().all(|t| p.contains(t)), "stage {stage}");
        }
        prev = Some(survivors);
    }

    // (e) horizon bounds, and primality of everything inside a small one
    for &q in sieve(541).unwrap().primes() {
        let h = HorizonOfSurvival::new(q).unwrap();
        let q1 = next_prime_after(q);
        assert_eq!(h.interval(), (q * q, q1 * q1));
    }
    let is_prime_small = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
    for q in [3u64, 5, 7, 11, 13] {
        let (lo, hi) = HorizonOfSurvival::new(q).unwrap().interval();
        let primes = sieve(q).unwrap().primes().to_vec();
        for n in (lo + 1)..hi {
            if primes.iter().all(|&p| n % p != 0) {
                assert!(is_prime_small(n), "{n} coprime to {q}# inside the horizon");
            }
        }
    }
    println!("criterion 11: deterministic spot checks pass; randomized suites live in the core crate — pass");
}

#[test]
fn criterion_12_phi_crossing() {
    let Some(tf) = fixture() else { return };
    let s4 = &tf.records[4].tuple;
    let pg = prime_gap_constellation(459);
    assert_eq!(phi(s4, 3240), 458);
    assert_eq!(phi(&pg, 3240), 457);
    assert_eq!(phi(s4, 3242), 459);
    assert_eq!(phi(s4, 3242) - phi(&pg, 3242), 2);
    println!("criterion 12: Φ crossing — 458 > 457 at 3240, lead of 2 at the span — pass");
}

#[test]
fn criterion_13_zero_run_no_survival_claim() {
    let twin = Constellation::from_gaps_u64(&[2]).unwrap();
    let f5 = initial_frontier(&twin, 5, 100).unwrap();
    let values: Vec<BigUint> = f5.values().collect();
    assert_eq!(values, [11u32, 17, 29].map(BigUint::from));
    let candidates = dfs_zero_run(&twin, &f5, 2).unwrap();
    assert_eq!(candidates.len(), 3);
    assert!(candidates.iter().all(|c| c.status == Survival::Certified));
    let eleven = candidates
        .iter()
        .find(|c| c.value == BigUint::from(11u32))
        .unwrap();
    assert_eq!(eleven.status, Survival::Certified);

    let Some(tf) = fixture() else { return };
    let s4 = &tf.records[4].tuple;
    let f137 = initial_frontier(s4, 137, 1_000).unwrap();
    assert_eq!(f137.len(), 1);
    let deep = dfs_zero_run(s4, &f137, 3).unwrap();
    assert!(deep.iter().all(|c| c.status != Survival::Certified));
    println!(
        "criterion 13: zero-run certifies the twin instance at 11; {} candidate(s) for tuple #4 \
         at depth 3, none certified — survival of a 459-tuple is out of reach here and no such \
         claim is made — pass",
        deep.len()
    );
}
