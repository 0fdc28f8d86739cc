use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use cycpres::cache::Cache;
use cycpres::dot::star_graph_dot;
use cycpres::report::{
    Abelianisation, Collision, Comparison, Enumeration, Girth, Invariants, KernelFamily, Partition, Record,
    Subgroups, SCHEMA,
};
use cycpres::suites::{self, verdict_text, Suite};
use cycpres_core::abelian::{betti_via_polynomial_gcd, min_generators, order_via_determinant};
use cycpres_core::classify::classify;
use cycpres_core::iso::{collisions_at, condition_partition, enumerate};
use cycpres_core::stargraph::{build_star_graph, girth, heawood_check};
use cycpres_core::subgroup::{distinguish, index_kernel_multiset, second_derived_quotient_ab, Budget, Verdict};
use cycpres_core::GroupParams;

/// Invariants of the cyclically presented groups
/// `Γ_n(k,l) = < x_0..x_{n-1} | x_i x_{i+k} x_{i+l} >`.
#[derive(Parser)]
#[command(name = "cycpres", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (enumerate only).
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads; output order does not depend on it.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Neither read nor write the record cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest |G^ab| for which second derived quotients are computed.
    #[arg(long, global = true, value_name = "N", default_value_t = Budget::default().index_cap)]
    index_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification record of one triple.
    Classify { n: i64, k: i64, l: i64 },
    /// Isomorphism orbits for one n with their invariants.
    Enumerate {
        n: usize,
        /// Add the condition-vector cells and their checks.
        #[arg(long)]
        partition: bool,
        /// Add pairs of orbits with equal abelianisation.
        #[arg(long)]
        collisions: bool,
    },
    /// Star graph, girth and Heawood test.
    Stargraph {
        n: i64,
        k: i64,
        l: i64,
        /// Write the graph in Graphviz format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Abelianisation by every available route.
    Abelianise { n: i64, k: i64, l: i64 },
    /// Kernel abelianisations of maps onto small cyclic groups.
    Subgroups {
        n: usize,
        k: i64,
        l: i64,
        /// Index of the kernels; repeat for several (default 2 and 3).
        #[arg(long = "index", value_name = "D")]
        indices: Vec<u64>,
        /// Compare with Γ_n(K,L).
        #[arg(long, num_args = 2, value_names = ["K", "L"])]
        against: Option<Vec<i64>>,
    },
    /// Recompute a published table or statement.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_name = "N")]
        max_n: Option<usize>,
    },
}

enum Outcome {
    Ok,
    SuiteFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::SuiteFailed) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        let kind = c
            .downcast_ref::<std::io::Error>()
            .map(std::io::Error::kind)
            .or_else(|| c.downcast_ref::<serde_json::Error>().and_then(serde_json::Error::io_error_kind));
        kind == Some(std::io::ErrorKind::BrokenPipe)
    })
}

fn emit(cli: &Cli, json: impl serde::Serialize, text: impl FnOnce() -> String) -> Result<()> {
    let mut out = std::io::stdout().lock();
    if cli.json {
        serde_json::to_writer_pretty(&mut out, &json)?;
        out.write_all(b"\n")?;
    } else {
        out.write_all(text().as_bytes())?;
    }
    Ok(())
}

fn record(cli: &Cli, n: i64, k: i64, l: i64) -> Result<Record> {
    let cache = if cli.no_cache { None } else { Cache::from_env() };
    if let Some(rec) = cache.as_ref().and_then(|c| c.get(n, k, l)) {
        return Ok(rec);
    }
    let rec = Record::from_core(&classify(n, k, l)?)?;
    if let Some(c) = &cache {
        // A cache that cannot be written only costs recomputation.
        let _ = c.put(n, k, l, &rec);
    }
    Ok(rec)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Classify { n, k, l } => {
            let rec = record(cli, *n, *k, *l)?;
            emit(cli, &rec, || rec.to_text())?;
        }
        Command::Enumerate { n, partition, collisions } => {
            let mut e = Enumeration::from_core(&enumerate(*n)?)?;
            if *partition {
                e.partition = Some(Partition::from(&condition_partition(*n)?));
            }
            if *collisions {
                e.collisions = Some(collisions_at(*n)?.iter().map(Collision::from).collect());
            }
            if cli.csv {
                e.write_csv(std::io::stdout().lock())?;
            } else {
                emit(cli, &e, || e.to_text())?;
            }
        }
        Command::Stargraph { n, k, l, dot } => {
            let p = GroupParams::new(usize::try_from(*n).context("n must be positive")?, *k, *l)?;
            let g = build_star_graph(&p)?;
            let report = girth(&g);
            let out = Girth::new(p, g.vertex_count(), g.edges().len(), g.is_simple(), report.as_ref(), heawood_check(&g));
            if let Some(path) = dot {
                std::fs::write(path, star_graph_dot(&p, &g)).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(cli, &out, || out.to_text())?;
        }
        Command::Abelianise { n, k, l } => {
            let rec = record(cli, *n, *k, *l)?;
            let core = classify(*n, *k, *l)?;
            let standard = core.params.is_standard();
            let out = Abelianisation {
                schema: SCHEMA,
                params: rec.params,
                min_generators: min_generators(&core.invariants),
                invariants: rec.invariants.clone(),
                betti_polynomial: if standard { Some(betti_via_polynomial_gcd(&core.params)?) } else { None },
                order_determinant: if standard {
                    Some(cycpres::report::order_string(&order_via_determinant(&core.params)?))
                } else {
                    None
                },
                closed_forms: rec.closed_forms.clone(),
            };
            emit(cli, &out, || out.to_text())?;
        }
        Command::Subgroups { n, k, l, indices, against } => {
            let p = GroupParams::standard(*n, *k, *l)?;
            let indices = if indices.is_empty() { vec![2, 3] } else { indices.clone() };
            let families = indices
                .iter()
                .map(|&d| {
                    let kernels = index_kernel_multiset(&p, d)?.iter().map(Invariants::from).collect();
                    Ok(KernelFamily { index: d, kernels })
                })
                .collect::<Result<Vec<_>>>()?;
            let second_derived = second_derived_quotient_ab(&p, cli.index_cap)?.as_ref().map(Invariants::from);
            let against = match against.as_deref() {
                Some(&[k2, l2]) => {
                    let q = GroupParams::standard(*n, k2, l2)?;
                    let v = distinguish(&p, &q, Budget { index_cap: cli.index_cap })?;
                    let witness = match &v {
                        Verdict::Distinct(w) => Some(w.to_string()),
                        _ => None,
                    };
                    Some(Comparison { other: q.into(), verdict: verdict_text(&v), witness })
                }
                _ => None,
            };
            let out = Subgroups { schema: SCHEMA, params: p.into(), index_cap: cli.index_cap, families, second_derived, against };
            emit(cli, &out, || out.to_text())?;
        }
        Command::Verify { suite, max_n } => {
            let result = suites::run(*suite, suites::Options { max_n: *max_n, index_cap: cli.index_cap })?;
            emit(cli, &result, || result.to_text())?;
            if !result.passed() {
                return Ok(Outcome::SuiteFailed);
            }
        }
    }
    Ok(Outcome::Ok)
}
