//! `xbound`: classical, quantum and pairwise-exclusivity bounds for
//! exclusivity graphs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use xbound::catalog;
use xbound::combinatorics::{
    check_clique_constraints, fractional_packing_number, independence_number,
};
use xbound::exclusivity::{ep_certificate, joint_ep_sum, two_copy_ep_bound, EP_TOL};
use xbound::io::{self, GraphFormat};
use xbound::report::{build_report, fmt_real, serialize_report, ReportFormat};
use xbound::sdp::{lovasz_theta_with, SdpOptions};
use xbound::{Error, Execution, Graph, ProbabilityAssignment};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "xbound",
    version,
    about = "Bounds on exclusivity graphs: α ≤ ϑ ≤ α*"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run every stage on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Circulant,
    Cycle,
    Complete,
    Path,
    /// Erdős–Rényi graph drawn with `--seed`.
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Circulant connections, comma separated.
        #[arg(long, value_delimiter = ',')]
        conn: Vec<usize>,
        /// Edge probability for the random family.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the complement of a graph.
    Complement {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the disjunctive (OR) product of two graphs.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Independence number with a witness set.
    Alpha { input: PathBuf },
    /// Fractional packing number over the maximal cliques.
    Alphastar { input: PathBuf },
    /// Lovász number, optionally vertex-weighted.
    Theta {
        input: PathBuf,
        /// JSON file holding `{"weights": [...]}` or `{"p": [...]}`.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Required relative primal-dual gap.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Full bound-chain report.
    Bounds {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include wall-clock stage timings (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Certify that the exclusivity bound equals ϑ and print every check.
    Certify {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Write the upper-bound witness (a distribution on the complement).
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Joint sum Σ p_i q_π(i) for p on G and q on its complement.
    CheckEp {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        /// Vertex map from the complement of G to q's graph.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Graph of p; when given, q is checked against its complement.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Report every maximal clique whose probability sum exceeds one.
    CheckCliques {
        #[arg(long)]
        p: PathBuf,
        input: PathBuf,
    },
    /// Pairwise-exclusivity bound from two independent copies.
    TwoCopy { input: PathBuf },
    /// Show a catalog scenario: kcbs, chsh, complete:<n>, cycle:<n>.
    Scenario {
        name: String,
        /// Recompute every expected value and compare.
        #[arg(long)]
        verify: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SdpNoConvergence { .. }
        | Error::EigenNoConvergence(_)
        | Error::Lp(_)
        | Error::Representation(_)
        | Error::DualInfeasible(_) => EXIT_NO_CONVERGENCE,
        Error::Certificate { .. } | Error::NotSelfComplementary | Error::NotVertexTransitive => {
            EXIT_VIOLATION
        }
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match run(cli.command, cli.seed, exec) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn load_graph(path: &Path) -> xbound::Result<Graph> {
    let parsed = io::read_graph(path)?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.graph)
}

fn write_graph(g: &Graph, path: &Path) -> xbound::Result<()> {
    let text = io::serialize_graph(g, GraphFormat::from_path(path));
    write_text(path, &text)
}

fn write_text(path: &Path, text: &str) -> xbound::Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_weights(path: &Path) -> xbound::Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let list = value
        .get("weights")
        .or_else(|| value.get("p"))
        .ok_or_else(|| Error::Parse("weights file needs a `weights` or `p` array".into()))?;
    serde_json::from_value(list.clone()).map_err(|e| Error::Parse(e.to_string()))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(command: Command, seed: u64, exec: Execution) -> xbound::Result<u8> {
    match command {
        Command::Gen {
            family,
            n,
            conn,
            density,
            output,
        } => {
            let g = match family {
                Family::Circulant => Graph::circulant(n, &conn)?,
                Family::Cycle => Graph::cycle(n)?,
                Family::Complete => Graph::complete(n)?,
                Family::Path => Graph::path(n)?,
                Family::Random => Graph::random(n, density, seed)?,
            };
            write_graph(&g, &output)?;
            eprintln!(
                "wrote n={} edges={} to {}",
                g.vertex_count(),
                g.edge_count(),
                output.display()
            );
            Ok(0)
        }
        Command::Complement { input, output } => {
            write_graph(&load_graph(&input)?.complement(), &output)?;
            Ok(0)
        }
        Command::Product { a, b, output } => {
            let g = load_graph(&a)?.or_product(&load_graph(&b)?)?;
            write_graph(&g, &output)?;
            Ok(0)
        }
        Command::Alpha { input } => {
            let s = independence_number(&load_graph(&input)?)?;
            println!("{}", s.size);
            println!("witness {:?}", s.witness);
            Ok(0)
        }
        Command::Alphastar { input } => {
            let sol = fractional_packing_number(&load_graph(&input)?)?;
            println!("{}", fmt_real(sol.objective));
            let w: Vec<String> = sol.weights.iter().map(|&x| fmt_real(x)).collect();
            println!("weights [{}]", w.join(", "));
            Ok(0)
        }
        Command::Theta {
            input,
            weights,
            tol,
        } => {
            let g = load_graph(&input)?;
            let w = weights.as_deref().map(read_weights).transpose()?;
            let mut opts = SdpOptions::default();
            if let Some(t) = tol {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Error::Parse(format!("--tol must be positive, got {t}")));
                }
                opts.gap_tol = t;
            }
            let sol = lovasz_theta_with(&g, w.as_deref(), &opts)?;
            println!("{}", fmt_real(sol.theta()));
            println!(
                "uncertainty {:.1e}, primal {}, dual {}, {} iterations",
                sol.uncertainty(),
                fmt_real(sol.primal_value),
                fmt_real(sol.dual_value),
                sol.iterations
            );
            if !sol.converged {
                eprintln!(
                    "error: solver stopped before convergence (gap {:.1e})",
                    sol.gap
                );
                return Ok(EXIT_NO_CONVERGENCE);
            }
            Ok(0)
        }
        Command::Bounds {
            input,
            json,
            timings,
        } => {
            let g = load_graph(&input)?;
            let mut report = build_report(&g, seed, exec)?;
            if !timings {
                report = report.drop_timings();
            }
            let format = if json {
                ReportFormat::Json
            } else {
                ReportFormat::Text
            };
            print!("{}", serialize_report(&report, format));
            if !report.theta.converged {
                return Ok(EXIT_NO_CONVERGENCE);
            }
            Ok(if report.chain_consistent {
                0
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Certify {
            input,
            json,
            witness_out,
        } => {
            let g = load_graph(&input)?;
            let cert = ep_certificate(&g, exec)?;
            if let Some(path) = witness_out {
                write_text(&path, &io::serialize_distribution(&cert.upper_witness))?;
            }
            if json {
                let value = serde_json::to_value(&cert).expect("certificate is plain data");
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("certificate is plain data")
                );
            } else {
                println!("theta {} ± {:.1e}", fmt_real(cert.theta), cert.uncertainty);
                println!("achiever sum {}", fmt_real(cert.achiever_sum));
                println!("joint sum {}", fmt_real(cert.joint_sum));
                for c in &cert.checks {
                    println!(
                        "{:<17} {}  value {:.3e}  tolerance {:.1e}",
                        c.name,
                        verdict(c.passed),
                        c.value,
                        c.tolerance
                    );
                }
            }
            if !cert.checks.first().is_some_and(|c| c.passed) {
                return Ok(EXIT_NO_CONVERGENCE);
            }
            Ok(if cert.all_passed() { 0 } else { EXIT_VIOLATION })
        }
        Command::CheckEp { p, q, map, graph } => {
            let p = io::read_distribution(&p)?;
            let q = io::read_distribution(&q)?;
            let map = map.as_deref().map(io::read_vertex_map).transpose()?;
            let value = match graph {
                Some(path) => {
                    let g = load_graph(&path)?;
                    joint_ep_sum(&g, &p, &g.complement(), &q, map.as_ref())?.value
                }
                None => {
                    eprintln!("warning: no --graph given; complement structure not verified");
                    unchecked_joint_sum(&p, &q, map.as_ref())?
                }
            };
            let pass = value <= 1.0 + EP_TOL;
            println!("{}", fmt_real(value));
            println!("{}", verdict(pass));
            Ok(if pass { 0 } else { EXIT_VIOLATION })
        }
        Command::CheckCliques { p, input } => {
            let g = load_graph(&input)?;
            let p = io::read_distribution(&p)?;
            let violations = check_clique_constraints(&g, &p)?;
            for v in &violations {
                println!("clique {:?} sum {}", v.clique, fmt_real(v.sum));
            }
            println!("{} violated cliques", violations.len());
            Ok(if violations.is_empty() {
                0
            } else {
                EXIT_VIOLATION
            })
        }
        Command::TwoCopy { input } => {
            let b = two_copy_ep_bound(&load_graph(&input)?)?;
            println!("{}", fmt_real(b.per_copy_bound));
            println!(
                "product alpha* {} over {} vertices and {} maximal cliques",
                fmt_real(b.product_alpha_star),
                b.product_vertices,
                b.product_cliques
            );
            Ok(0)
        }
        Command::Scenario { name, verify } => {
            let s = catalog::by_name(&name)?;
            println!(
                "{}: n={} edges={} fingerprint={}",
                s.name,
                s.graph.vertex_count(),
                s.graph.edge_count(),
                s.graph.fingerprint()
            );
            if !verify {
                for (key, e) in &s.expected {
                    println!("{key:<10} {}  ({})", fmt_real(e.value), e.provenance);
                }
                return Ok(0);
            }
            let lines = catalog::verify(&s, exec)?;
            for l in &lines {
                let tolerance = if l.tolerance == 0.0 {
                    "exact".to_string()
                } else {
                    format!("{:.0e}", l.tolerance)
                };
                println!(
                    "{:<10} computed {}  expected {}  tolerance {tolerance}  {}",
                    l.key,
                    fmt_real(l.computed),
                    fmt_real(l.expected),
                    verdict(l.passed)
                );
            }
            Ok(if lines.iter().all(|l| l.passed) {
                0
            } else {
                EXIT_VIOLATION
            })
        }
    }
}

fn unchecked_joint_sum(
    p: &ProbabilityAssignment,
    q: &ProbabilityAssignment,
    map: Option<&xbound::VertexMap>,
) -> xbound::Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            actual: q.len(),
        });
    }
    if let Some(m) = map {
        if m.len() != p.len() {
            return Err(Error::LengthMismatch {
                expected: p.len(),
                actual: m.len(),
            });
        }
    }
    let qv = q.values();
    Ok(p.values()
        .iter()
        .enumerate()
        .map(|(i, pi)| pi * qv[map.map_or(i, |m| m.apply(i))])
        .sum())
}
