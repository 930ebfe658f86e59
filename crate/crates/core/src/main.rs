//! Command-line front end: solve, reduce, verify, extract-cover, gen.
//!
//! Machine-readable key=value stats go to standard output, human prose
//! to standard error. Exit codes: 0 success, 1 error, 2 infeasible.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kanon::error::Error;
use kanon::exact::{solve_exact_with_stats, ExactStats};
use kanon::heuristics::{greedy_agglomerative, suppress_all};
use kanon::oracle::{optimal_by_partition, OracleLimits};
use kanon::reduction::{reduce, solution_to_cover, Graph, ReductionTable, REDUCTION_K};
use kanon::table::SolverReport;
use kanon::{generate, io, verify_solution};

#[derive(Parser)]
#[command(name = "kanon", version, about = "Suppression-based k-anonymization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverName {
    Exact,
    Bruteforce,
    Greedy,
    #[value(name = "suppress-all")]
    SuppressAll,
}

#[derive(Subcommand)]
enum Cmd {
    /// Anonymize a CSV table and write the grid plus a clustering file.
    Solve {
        /// Input table (headerless CSV).
        #[arg(long)]
        input: PathBuf,
        /// Privacy parameter.
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        solver: SolverName,
        /// Cap on candidate subsets visited by the exact solver.
        #[arg(long)]
        budget: Option<u64>,
        /// Anonymized grid destination.
        #[arg(long)]
        output: PathBuf,
        /// Clustering file destination (default: <output>.clusters).
        #[arg(long)]
        clustering_out: Option<PathBuf>,
    },
    /// Build the 3-column hardness table of a 3-regular graph.
    Reduce {
        /// Built-in name (k4, k33, q3, petersen) or a graph file path.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        output: PathBuf,
        /// Role sidecar destination (default: <output>.roles).
        #[arg(long)]
        roles_out: Option<PathBuf>,
    },
    /// Check an anonymized grid against its input table.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        anonymized: PathBuf,
        /// Required without --roles; fixed to 7 with it.
        #[arg(long)]
        k: Option<usize>,
        /// Role sidecar; adds base/extra accounting and cover extraction.
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Verify a reduction-table solution and extract its vertex cover.
    ExtractCover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        anonymized: PathBuf,
        #[arg(long)]
        roles: PathBuf,
    },
    /// Write a seeded uniform random table.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Alphabet size.
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ Error::Infeasible(_)) => {
            eprintln!("{err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Solve {
            input,
            k,
            solver,
            budget,
            output,
            clustering_out,
        } => cmd_solve(&input, k, solver, budget, &output, clustering_out),
        Cmd::Reduce {
            graph,
            output,
            roles_out,
        } => cmd_reduce(&graph, &output, roles_out),
        Cmd::Verify {
            input,
            anonymized,
            k,
            roles,
        } => cmd_verify(&input, &anonymized, k, roles),
        Cmd::ExtractCover {
            input,
            anonymized,
            roles,
        } => cmd_verify(&input, &anonymized, None, Some(roles)),
        Cmd::Gen {
            seed,
            n,
            m,
            sigma,
            output,
        } => cmd_gen(seed, n, m, sigma, &output),
    }
}

fn cmd_solve(
    input: &Path,
    k: usize,
    solver: SolverName,
    budget: Option<u64>,
    output: &Path,
    clustering_out: Option<PathBuf>,
) -> Result<(), Error> {
    let table = io::parse_table(&fs::read_to_string(input)?)?;
    let (report, stats): (SolverReport, Option<ExactStats>) = match solver {
        SolverName::Exact => {
            let (report, stats) = solve_exact_with_stats(&table, k, budget)?;
            (report, Some(stats))
        }
        SolverName::Bruteforce => (
            optimal_by_partition(&table, k, OracleLimits::default())?,
            None,
        ),
        SolverName::Greedy => (greedy_agglomerative(&table, k)?, None),
        SolverName::SuppressAll => (suppress_all(&table, k)?, None),
    };

    fs::write(output, io::grid_to_csv(&report.anonymized))?;
    let clustering_path =
        clustering_out.unwrap_or_else(|| sibling_path(output, "clusters"));
    fs::write(&clustering_path, io::clustering_to_text(&report.clustering))?;

    let mut line = format!(
        "cost={} solver={} n={} m={} k={}",
        report.cost,
        report.solver,
        table.row_count(),
        table.column_count(),
        k
    );
    if let Some(stats) = stats {
        line.push_str(&format!(
            " candidates={} subsets={}",
            stats.candidates, stats.subsets_visited
        ));
    }
    println!("{line}");
    eprintln!(
        "wrote {} and {}",
        output.display(),
        clustering_path.display()
    );
    Ok(())
}

fn cmd_reduce(graph: &str, output: &Path, roles_out: Option<PathBuf>) -> Result<(), Error> {
    let g = match Graph::named(graph) {
        Some(g) => g,
        None => io::parse_graph(&fs::read_to_string(graph)?)?,
    };
    let rt = reduce(&g)?;
    fs::write(output, io::table_to_csv(rt.table()))?;
    let roles_path = roles_out.unwrap_or_else(|| sibling_path(output, "roles"));
    fs::write(&roles_path, io::roles_to_text(rt.roles()))?;
    println!(
        "rows={} abc={} k={}",
        rt.table().row_count(),
        kanon::reduction::abc(&g)?,
        REDUCTION_K
    );
    eprintln!("wrote {} and {}", output.display(), roles_path.display());
    Ok(())
}

fn cmd_verify(
    input: &Path,
    anonymized: &Path,
    k: Option<usize>,
    roles: Option<PathBuf>,
) -> Result<(), Error> {
    let table = io::parse_table(&fs::read_to_string(input)?)?;
    let grid = io::parse_grid(&fs::read_to_string(anonymized)?)?;
    match roles {
        None => {
            let k = k.ok_or_else(|| {
                Error::Argument("--k is required when no role sidecar is given".into())
            })?;
            let cost = verify_solution(&table, &grid, k)?;
            println!("cost={cost}");
        }
        Some(roles_path) => {
            if let Some(k) = k {
                if k != REDUCTION_K {
                    return Err(Error::Argument(format!(
                        "reduction tables fix k={REDUCTION_K}, got --k {k}"
                    )));
                }
            }
            let roles = io::parse_roles(&fs::read_to_string(roles_path)?)?;
            let rt = ReductionTable::from_parts(table, roles)?;
            let cover = solution_to_cover(&rt, &grid)?;
            let ledger = kanon::reduction::extra_cost(&rt, &grid)?;
            let rendered = if cover.is_empty() {
                "-".to_owned()
            } else {
                cover
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            println!(
                "cost={} abc={} extra={} cover_size={} cover={}",
                ledger.actual_cost,
                ledger.abc,
                ledger.total_extra,
                cover.len(),
                rendered
            );
        }
    }
    Ok(())
}

fn cmd_gen(seed: u64, n: usize, m: usize, sigma: usize, output: &Path) -> Result<(), Error> {
    let table = generate::generate_table(seed, n, m, sigma)?;
    fs::write(output, io::table_to_csv(&table))?;
    println!("seed={seed} n={n} m={m} sigma={sigma}");
    eprintln!("wrote {}", output.display());
    Ok(())
}

fn sibling_path(base: &Path, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{}.{suffix}", base.display()))
}
