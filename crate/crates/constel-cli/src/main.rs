//! `constel` — admissible prime constellations from the command line:
//! scoring, residue profiles, prefix evolution, frontier searches, relative
//! populations, and ΔΦ plot series.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use constel_cli::{delta_phi, emit_csv, parse_tuple_file, TupleFile};
use constel_core::constellation::Constellation;
use constel_core::evolution::track_prefix;
use constel_core::pcoords::PrimorialCoords;
use constel_core::population::{mertens_mu_threshold, w_infinity_table};
use constel_core::primes::{nth_prime, prime_count, sieve};
use constel_core::render::{sci_biguint, sci_parts, sci_ratio};
use constel_core::search::{bfs, bfs_from, effective_stage, min_gamma, min_gamma_all, SearchFrontier};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "constel", version, about = "Prime constellation analysis toolkit")]
struct Cli {
    /// Directory searched for tuple files not found at their literal path.
    #[arg(long, global = true, env = "CONSTELLATION_DATA_DIR")]
    data_dir: Option<PathBuf>,

    /// Cap the worker threads used by the parallel searches.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Length, span, nonconvexity score, and counterexample flag per tuple.
    Score {
        file: PathBuf,
        /// Also report the legacy score (offset count minus π(span + 1)).
        #[arg(long)]
        legacy_score: bool,
    },
    /// Residue profile of one tuple: ν_q and q − ν_q per prime q.
    Nu {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        max_prime: u64,
    },
    /// Instance counts per stage, with the unique prefix while there is one.
    Evolve {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        max_stage: u64,
        /// Abort when a complete frontier would exceed this many instances.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Breadth-first frontier lifting with exact per-stage counts.
    Bfs {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long = "from")]
        from_stage: u64,
        #[arg(long = "to")]
        to_stage: u64,
        /// Materialize at most this many instances per stage.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Resume from this checkpoint if it exists; save the final
        /// frontier to it afterwards.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Smallest admissible instance by best-first search.
    MinGamma {
        file: PathBuf,
        #[arg(long, required_unless_present = "all")]
        index: Option<usize>,
        #[arg(long = "to")]
        to_stage: u64,
        /// Search every tuple in the file and report the global minimum.
        #[arg(long)]
        all: bool,
        /// Cap the search stage per tuple so the complete frontier stays
        /// within this many instances; 0 lifts the cap.
        #[arg(long, default_value_t = 40_000_000)]
        frontier_budget: u64,
        /// Abort best-first expansion after this many pops and finish
        /// greedily (the result is then flagged non-optimal).
        #[arg(long)]
        pop_budget: Option<u64>,
    },
    /// Asymptotic relative populations for every tuple in the file.
    Winf { file: PathBuf },
    /// Gap histogram of one tuple.
    Histogram {
        file: PathBuf,
        #[arg(long)]
        index: usize,
    },
    /// ΔΦ(x) = Φ(x) − x/μ plot series for one tuple.
    DeltaPhi {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        /// Defaults to p_J / J for the tuple's length J.
        #[arg(long)]
        mu: Option<f64>,
        /// Write the series as CSV to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prime threshold exp(μ·e^{−γ}) past which Mertens products stay
    /// above 1/μ.
    Mertens {
        #[arg(long)]
        mu: f64,
    },
}

fn main() {
    if let Err(e) = run() {
        // a downstream consumer closing the pipe early is not an error
        if e.root_cause()
            .downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
        {
            return;
        }
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("initializing the thread pool")?;
    }
    match cli.command {
        Command::Score { file, legacy_score } => {
            let tf = load(&file, cli.data_dir.as_deref())?;
            let mut header = vec!["index", "length", "span", "score", "counterexample"];
            if legacy_score {
                header.push("legacy_score");
            }
            let mut rows = Vec::new();
            for r in &tf.records {
                let s = &r.tuple;
                let mut row = vec![
                    r.index.to_string(),
                    s.length().to_string(),
                    s.span().to_string(),
                    s.nonconvexity_score()?.to_string(),
                    s.is_counterexample().to_string(),
                ];
                if legacy_score {
                    let w = s.span() + 1u32;
                    let w = w.try_into().map(prime_count).unwrap_or(0);
                    row.push(((s.length() as i64 + 1) - w as i64).to_string());
                }
                rows.push(row);
            }
            print_table(cli.format, &header, rows)
        }
        Command::Nu {
            file,
            index,
            max_prime,
        } => {
            let tf = load(&file, cli.data_dir.as_deref())?;
            let s = &tf.get(index)?.tuple;
            let mut rows = Vec::new();
            for &q in sieve(max_prime)?.primes() {
                let nu = s.nu(q)?;
                rows.push(vec![q.to_string(), nu.to_string(), (q - nu).to_string()]);
            }
            print_table(cli.format, &["q", "nu", "remaining"], rows)
        }
        Command::Evolve {
            file,
            index,
            max_stage,
            budget,
        } => {
            let tf = load(&file, cli.data_dir.as_deref())?;
            let s = &tf.get(index)?.tuple;
            let rows = track_prefix(s, max_stage, budget)?
                .into_iter()
                .map(|row| {
                    let (gamma0, len) = match row.unique {
                        Some(u) => (u.gamma0.decode().to_string(), u.driving_length.to_string()),
                        None => ("-".to_string(), "-".to_string()),
                    };
                    vec![row.stage.to_string(), row.count.to_string(), gamma0, len]
                })
                .collect();
            print_table(
                cli.format,
                &["stage", "count", "gamma0", "driving_length"],
                rows,
            )
        }
        Command::Bfs {
            file,
            index,
            from_stage,
            to_stage,
            budget,
            checkpoint,
        } => {
            let tf = load(&file, cli.data_dir.as_deref())?;
            let s = &tf.get(index)?.tuple;
            let report = match &checkpoint {
                Some(path) if path.exists() => {
                    let frontier = SearchFrontier::load(path)?;
                    eprintln!(
                        "resuming from checkpoint {} at stage {}",
                        path.display(),
                        frontier.stage()
                    );
                    bfs_from(s, frontier, to_stage, budget)?
                }
                _ => bfs(s, from_stage, to_stage, budget)?,
            };
            if let Some(path) = &checkpoint {
                report.frontier.save(path)?;
                eprintln!(
                    "saved stage-{} checkpoint to {}",
                    report.frontier.stage(),
                    path.display()
                );
            }
            let rows = report
                .stages
                .iter()
                .map(|row| {
                    vec![
                        row.stage.to_string(),
                        row.count.to_string(),
                        row.materialized.to_string(),
                        row.truncated.to_string(),
                    ]
                })
                .collect();
            print_table(
                cli.format,
                &["stage", "count", "materialized", "truncated"],
                rows,
            )
        }
        Command::MinGamma {
            file,
            index,
            to_stage,
            all,
            frontier_budget,
            pop_budget,
        } => {
            let tf = load(&file, cli.data_dir.as_deref())?;
            let frontier_budget = (frontier_budget > 0).then_some(frontier_budget);
            let pop_budget = pop_budget.unwrap_or(u64::MAX);
            if all {
                let tuples: Vec<Constellation> =
                    tf.records.iter().map(|r| r.tuple.clone()).collect();
                let result = min_gamma_all(&tuples, to_stage, frontier_budget, pop_budget)?;
                let rows = result
                    .rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        vec![
                            i.to_string(),
                            row.stage.to_string(),
                            leading(&row.coords),
                            sci_biguint(&row.value, 6),
                            row.optimal.to_string(),
                            (i == result.global_min).to_string(),
                        ]
                    })
                    .collect();
                print_table(
                    cli.format,
                    &["index", "stage", "leading_term", "value", "optimal", "global_min"],
                    rows,
                )
            } else {
                let s = &tf.get(index.expect("clap enforces index without --all"))?.tuple;
                let stage = effective_stage(s, to_stage, frontier_budget)?;
                let row = min_gamma(s, stage, pop_budget)?;
                let rows = vec![vec![
                    row.stage.to_string(),
                    leading(&row.coords),
                    sci_biguint(&row.value, 6),
                    // comma-free so the cell stays a single CSV field
                    row.coords.to_string().replace(',', " "),
                    row.optimal.to_string(),
                    row.pops.to_string(),
                ]];
                print_table(
                    cli.format,
                    &["stage", "leading_term", "value", "coordinates", "optimal", "pops"],
                    rows,
                )
            }
        }
        Command::Winf { file } => {
            let tf = load(&file, cli.data_dir.as_deref())?;
            let tuples: Vec<Constellation> = tf.records.iter().map(|r| r.tuple.clone()).collect();
            let rows = w_infinity_table(&tuples)?
                .into_iter()
                .enumerate()
                .map(|(i, rep)| {
                    vec![
                        i.to_string(),
                        sci_biguint(&rep.factor1, 7),
                        sci_ratio(&rep.factor2, 7),
                        rep.w_scientific(7),
                        rep.vanished_at
                            .map_or_else(|| "-".to_string(), |q| q.to_string()),
                    ]
                })
                .collect();
            print_table(
                cli.format,
                &["index", "factor1", "factor2", "w_infinity", "vanished_at"],
                rows,
            )
        }
        Command::Histogram { file, index } => {
            let tf = load(&file, cli.data_dir.as_deref())?;
            let s = &tf.get(index)?.tuple;
            let rows = s
                .gap_histogram()
                .into_iter()
                .map(|(gap, count)| vec![gap.to_string(), count.to_string()])
                .collect();
            print_table(cli.format, &["gap", "count"], rows)
        }
        Command::DeltaPhi {
            file,
            index,
            mu,
            out,
        } => {
            let tf = load(&file, cli.data_dir.as_deref())?;
            let s = &tf.get(index)?.tuple;
            let mu = mu.unwrap_or_else(|| {
                let j = s.length();
                nth_prime(j) as f64 / j as f64
            });
            let series = delta_phi(s, mu)?;
            let rows: Vec<Vec<String>> = series
                .breakpoints
                .iter()
                .map(|&(x, v)| vec![format!("{x}"), format!("{v:.6}")])
                .collect();
            match out {
                Some(path) => {
                    let mut f = std::fs::File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    emit_csv(&mut f, &["x", "delta_phi"], &rows)?;
                    eprintln!("wrote {} breakpoints to {}", rows.len(), path.display());
                    Ok(())
                }
                None => print_table(cli.format, &["x", "delta_phi"], rows),
            }
        }
        Command::Mertens { mu } => {
            let (mantissa, exponent) = mertens_mu_threshold(mu)?;
            let rows = vec![vec![format!("{mu}"), sci_parts(mantissa, exponent, 4)]];
            print_table(cli.format, &["mu", "prime_threshold"], rows)
        }
    }
}

/// Literal path if it exists, otherwise relative to the data directory.
fn resolve(path: &Path, data_dir: Option<&Path>) -> PathBuf {
    if !path.exists() {
        if let Some(dir) = data_dir {
            let joined = dir.join(path);
            if joined.exists() {
                return joined;
            }
        }
    }
    path.to_owned()
}

fn load(path: &Path, data_dir: Option<&Path>) -> Result<TupleFile> {
    let resolved = resolve(path, data_dir);
    let tf = parse_tuple_file(&resolved)
        .with_context(|| format!("reading tuples from {}", resolved.display()))?;
    for r in &tf.records {
        if !r.admissible {
            eprintln!(
                "warning: tuple #{} (line {}) is inadmissible",
                r.index, r.line
            );
        }
    }
    Ok(tf)
}

fn leading(coords: &PrimorialCoords) -> String {
    match coords.leading_term() {
        Ok((m, 1)) => m.to_string(),
        Ok((m, p)) => format!("{m}*{p}#"),
        Err(_) => "0".to_string(),
    }
}

fn print_table(format: Format, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Csv => emit_csv(&mut out, header, &rows)?,
        Format::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, field) in widths.iter_mut().zip(row) {
                    *w = (*w).max(field.len());
                }
            }
            let mut line = String::new();
            for (i, h) in header.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(&format!("{h:<w$}", w = widths[i]));
            }
            writeln!(out, "{}", line.trim_end())?;
            for row in &rows {
                let mut line = String::new();
                for (i, field) in row.iter().enumerate() {
                    if i > 0 {
                        line.push_str("  ");
                    }
                    line.push_str(&format!("{field:<w$}", w = widths[i]));
                }
                writeln!(out, "{}", line.trim_end())?;
            }
        }
    }
    Ok(())
}
