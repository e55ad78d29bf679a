//! `ecplab` — exact toolkit for generalized Reed-Solomon codes,
//! error-correcting pairs and Schur-product bounds over small fields.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 domain failure (decode
//! failure, recognition miss, absent pair, failed check) with the reason
//! on standard error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ecplab::code::{LinearCode, SupportSet, DEFAULT_DISTANCE_BUDGET};
use ecplab::ecp::{
    build_ecp_for_grs, ecp_decode, search_ecp, verify_ecp_with_budget, DecodeOutcome, EcpPair,
    SearchOutcome,
};
use ecplab::fixtures;
use ecplab::gf::Field;
use ecplab::grs::{recognize_any, GrsSpec, ProjPoint};
use ecplab::io;
use ecplab::pmds;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Table,
    Records,
}

#[derive(Parser)]
#[command(name = "ecplab", version, about = "exact GRS / error-correcting-pair laboratory")]
struct Cli {
    /// Seed for randomized subcommands (required by those that sample).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Enumeration budget for distance computations and searches
    /// (overrides the ECPLAB_BUDGET environment variable).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Maximum field-extension degree for pair searches.
    #[arg(long, global = true, default_value_t = 2)]
    max_ext: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Table)]
    output: OutputMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random evaluation spec over GF(q) and write it out.
    GenGrs {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Destination for the spec file (standard output when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the generated code in the code-file format.
        #[arg(long)]
        code_out: Option<PathBuf>,
    },
    /// Dual of a code file.
    Dual {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum distance of a code file.
    Mindist {
        #[arg(long)]
        code: PathBuf,
    },
    /// Delete the listed coordinates (1-based) by restriction.
    Puncture {
        #[arg(long)]
        code: PathBuf,
        /// Comma-separated 1-based coordinates to delete.
        #[arg(long, value_delimiter = ',')]
        at: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shorten at the listed coordinates (1-based).
    Shorten {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_delimiter = ',')]
        at: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Schur (coordinatewise) product of two code files.
    Schur {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        code2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a code is GRS; print the recovered spec on success.
    Recognize {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Error-correcting-pair operations.
    #[command(subcommand)]
    Ecp(EcpCommand),
    /// Product-Singleton-bound operations.
    #[command(subcommand)]
    Pmds(PmdsCommand),
    /// Named example codes and the main-theorem harness.
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Subcommand)]
enum EcpCommand {
    /// Check the pair conditions for (A, B) against C.
    Verify {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Build the standard pair for a GRS code given by a spec file.
    Build {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        a_out: Option<PathBuf>,
        #[arg(long)]
        b_out: Option<PathBuf>,
    },
    /// Decode a received vector with a pair.
    Decode {
        /// Received word as space-separated element literals.
        #[arg(long)]
        received: String,
        #[arg(long)]
        code: PathBuf,
        /// The two pair code files, A then B.
        #[arg(long, num_args = 2)]
        pair: Vec<PathBuf>,
        #[arg(long)]
        t: usize,
    },
    /// Search for a t-ECP over extensions up to --max-ext.
    Search {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        a_out: Option<PathBuf>,
        #[arg(long)]
        b_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PmdsCommand {
    /// Product-Singleton gap, Kneser slack, and (for PMDS pairs) the
    /// structural consequences.
    Check {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Seeded random pair corpus with per-pair bound statistics.
    Corpus {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Run all fixtures (or one by name) and report assertion outcomes.
    Run {
        #[arg(long)]
        only: Option<String>,
        /// Export each fixture code to <dir>/<name>.code.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

/// A domain failure: the computation ran fine but the mathematical answer
/// is negative. Exit code 2.
struct Domain(String);

enum CliError {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<Domain> for CliError {
    fn from(d: Domain) -> Self {
        CliError::Domain(d.0)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successes, everything else is usage
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn budget_of(cli: &Cli) -> Result<u64, CliError> {
    if let Some(b) = cli.budget {
        return check_budget(b);
    }
    match std::env::var("ECPLAB_BUDGET") {
        Ok(s) => {
            let b: u64 = s
                .parse()
                .map_err(|e| CliError::Usage(format!("bad ECPLAB_BUDGET `{s}`: {e}")))?;
            check_budget(b)
        }
        Err(_) => Ok(DEFAULT_DISTANCE_BUDGET),
    }
}

fn check_budget(b: u64) -> Result<u64, CliError> {
    if b == 0 {
        return Err(CliError::Usage("budget must be positive".into()));
    }
    Ok(b)
}

fn seed_of(cli: &Cli) -> Result<u64, CliError> {
    cli.seed.ok_or_else(|| CliError::Usage("this subcommand samples randomly; --seed is required".into()))
}

fn read_code(path: &PathBuf) -> Result<LinearCode, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    io::parse_code(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_grs(path: &PathBuf) -> Result<GrsSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    io::parse_grs(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn support(at: &[usize], n: usize) -> Result<SupportSet, CliError> {
    if at.is_empty() {
        return Err(CliError::Usage("--at needs at least one coordinate".into()));
    }
    Ok(SupportSet::new(at.to_vec(), n)?)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let budget = budget_of(cli)?;
    match &cli.command {
        Command::GenGrs { q, n, k, out, code_out } => {
            let seed = seed_of(cli)?;
            let f = fixtures::field_of_order(*q)?;
            if *n > *q as usize + 1 {
                return Err(CliError::Usage(format!("n={n} exceeds q+1={}", q + 1)));
            }
            if *k > *n {
                return Err(CliError::Usage(format!("k={k} exceeds n={n}")));
            }
            let spec = random_grs(&f, *n, *k, seed)?;
            emit(out, &io::write_grs(&spec))?;
            if let Some(path) = code_out {
                emit(&Some(path.clone()), &io::write_code(&spec.code()))?;
            }
            Ok(())
        }
        Command::Dual { code, out } => {
            let c = read_code(code)?;
            emit(out, &io::write_code(&c.dual()))
        }
        Command::Mindist { code } => {
            let c = read_code(code)?;
            let d = c.min_distance_with_budget(budget)?;
            match cli.output {
                OutputMode::Table => println!("{d}"),
                OutputMode::Records => println!("d={d}"),
            }
            Ok(())
        }
        Command::Puncture { code, at, out } => {
            let c = read_code(code)?;
            let j = support(at, c.len())?;
            emit(out, &io::write_code(&c.puncture(&j)?))
        }
        Command::Shorten { code, at, out } => {
            let c = read_code(code)?;
            let j = support(at, c.len())?;
            emit(out, &io::write_code(&c.shorten(&j)?))
        }
        Command::Schur { code, code2, out } => {
            let a = read_code(code)?;
            let b = read_code(code2)?;
            emit(out, &io::write_code(&a.schur_product(&b)?))
        }
        Command::Recognize { code, out } => {
            let c = read_code(code)?;
            match recognize_any(&c)? {
                Some(spec) => emit(out, &io::write_grs(&spec)),
                None => Err(Domain("not GRS".into()).into()),
            }
        }
        Command::Ecp(sub) => run_ecp(cli, sub, budget),
        Command::Pmds(sub) => run_pmds(cli, sub, budget),
        Command::Fixtures(sub) => run_fixtures(cli, sub),
    }
}

fn random_grs(f: &Field, n: usize, k: usize, seed: u64) -> Result<GrsSpec, CliError> {
    let q = f.order();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pool: Vec<ProjPoint> =
        (0..q).map(ProjPoint::Finite).chain(std::iter::once(ProjPoint::Infinity)).collect();
    for i in (1..pool.len()).rev() {
        pool.swap(i, rng.gen_range(0..=i));
    }
    let b: Vec<u64> = (0..n).map(|_| rng.gen_range(1..q)).collect();
    Ok(GrsSpec::new(f, pool[..n].to_vec(), b, k)?)
}

fn print_report(cli: &Cli, pairs: &[(&str, String)]) {
    match cli.output {
        OutputMode::Table => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in pairs {
                println!("{k:width$}  {v}");
            }
        }
        OutputMode::Records => {
            for (k, v) in pairs {
                println!("{k}={v}");
            }
        }
    }
}

fn run_ecp(cli: &Cli, sub: &EcpCommand, budget: u64) -> Result<(), CliError> {
    match sub {
        EcpCommand::Verify { code, a, b, t } => {
            let c = read_code(code)?;
            let a = read_code(a)?;
            let b = read_code(b)?;
            let report = verify_ecp_with_budget(&a, &b, &c, *t, budget)?;
            print_report(
                cli,
                &[
                    ("e1", report.e1.to_string()),
                    ("e2", report.e2.to_string()),
                    ("e3", report.e3.to_string()),
                    ("e4", report.e4.to_string()),
                    ("e5", report.e5.to_string()),
                    ("e6", report.e6.to_string()),
                    ("is-ecp", report.is_ecp().to_string()),
                    ("is-ecp-variant", report.is_ecp_variant().to_string()),
                ],
            );
            if report.is_ecp() {
                Ok(())
            } else {
                Err(Domain(format!("not a {t}-error-correcting pair")).into())
            }
        }
        EcpCommand::Build { spec, a_out, b_out } => {
            let spec = read_grs(spec)?;
            let pair = build_ecp_for_grs(&spec)?;
            match (a_out, b_out) {
                (Some(pa), Some(pb)) => {
                    emit(&Some(pa.clone()), &io::write_code(pair.a()))?;
                    emit(&Some(pb.clone()), &io::write_code(pair.b()))?;
                }
                _ => {
                    print!("{}", io::write_code(pair.a()));
                    print!("{}", io::write_code(pair.b()));
                }
            }
            Ok(())
        }
        EcpCommand::Decode { received, code, pair, t } => {
            let c = read_code(code)?;
            let a = read_code(&pair[0])?;
            let b = read_code(&pair[1])?;
            let pair = EcpPair::new(a, b, *t)?;
            let y = io::parse_vector(c.spec(), received).map_err(CliError::Usage)?;
            if y.len() != c.len() {
                return Err(CliError::Usage(format!(
                    "received word has {} entries, code length is {}",
                    y.len(),
                    c.len()
                )));
            }
            match ecp_decode(&y, &c, &pair)? {
                DecodeOutcome::Decoded { codeword, error } => {
                    let f = c.spec();
                    print_report(
                        cli,
                        &[
                            ("codeword", io::format_vector(f, &codeword)),
                            ("error", io::format_vector(f, &error)),
                        ],
                    );
                    Ok(())
                }
                DecodeOutcome::Failure(reason) => {
                    Err(Domain(format!("decoding failure: {reason}")).into())
                }
            }
        }
        EcpCommand::Search { code, t, a_out, b_out } => {
            let c = read_code(code)?;
            match search_ecp(&c, *t, cli.max_ext, budget)? {
                SearchOutcome::Found(pair) => {
                    match (a_out, b_out) {
                        (Some(pa), Some(pb)) => {
                            emit(&Some(pa.clone()), &io::write_code(pair.a()))?;
                            emit(&Some(pb.clone()), &io::write_code(pair.b()))?;
                        }
                        _ => {
                            print!("{}", io::write_code(pair.a()));
                            print!("{}", io::write_code(pair.b()));
                        }
                    }
                    Ok(())
                }
                SearchOutcome::FoundNone => {
                    Err(Domain(format!("no {t}-error-correcting pair exists up to extension degree {}", cli.max_ext)).into())
                }
                SearchOutcome::Exhausted => {
                    Err(Domain("search budget exhausted before the space was covered".into()).into())
                }
            }
        }
    }
}

fn run_pmds(cli: &Cli, sub: &PmdsCommand, budget: u64) -> Result<(), CliError> {
    match sub {
        PmdsCommand::Check { a, b } => {
            let a = read_code(a)?;
            let b = read_code(b)?;
            let gap = pmds::product_singleton_gap_with_budget(&a, &b, budget)?;
            let slack = pmds::kneser_slack(&a, &b)?;
            let mut rows = vec![("gap", gap.to_string()), ("slack", slack.to_string())];
            if gap == 0 && a.len() > a.dim() + b.dim() {
                let rep = pmds::pmds_consequences_with_budget(&a, &b, budget)?;
                rows.push(("mds-a", rep.mds_a.to_string()));
                rows.push(("mds-b", rep.mds_b.to_string()));
                rows.push(("mds-ab", rep.mds_ab.to_string()));
                if let Some(shared) = rep.shared_sequence {
                    rows.push(("shared-sequence", shared.to_string()));
                }
                print_report(cli, &rows);
                if !rep.all_hold() {
                    return Err(Domain("a structural consequence failed".into()).into());
                }
            } else {
                print_report(cli, &rows);
            }
            Ok(())
        }
        PmdsCommand::Corpus { q, n, count } => {
            let seed = seed_of(cli)?;
            let f = fixtures::field_of_order(*q)?;
            let rows = pmds::corpus(&f, *n, *count, seed, budget)?;
            match cli.output {
                OutputMode::Table => {
                    println!("{:>3} {:>5} {:>5} {:>5} {:>5} {:>4} {:>5}", "id", "dimA", "dimB", "d(AB)", "bound", "gap", "slack");
                    for r in &rows {
                        println!(
                            "{:>3} {:>5} {:>5} {:>5} {:>5} {:>4} {:>5}",
                            r.id, r.dim_a, r.dim_b, r.d_ab, r.bound, r.gap, r.slack
                        );
                    }
                }
                OutputMode::Records => {
                    for r in &rows {
                        println!(
                            "id={} dim_a={} dim_b={} d_ab={} bound={} gap={} slack={}",
                            r.id, r.dim_a, r.dim_b, r.d_ab, r.bound, r.gap, r.slack
                        );
                    }
                }
            }
            Ok(())
        }
    }
}

fn run_fixtures(cli: &Cli, sub: &FixturesCommand) -> Result<(), CliError> {
    match sub {
        FixturesCommand::Run { only, export } => {
            let seed = seed_of(cli)?;
            let reports = fixtures::run_all(seed)?;
            let reports: Vec<_> = match only {
                Some(name) => {
                    let sel: Vec<_> =
                        reports.into_iter().filter(|r| r.name == *name).collect();
                    if sel.is_empty() {
                        return Err(CliError::Usage(format!("no fixture named `{name}`")));
                    }
                    sel
                }
                None => reports,
            };
            if let Some(dir) = export {
                fs::create_dir_all(dir)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
                for (name, code) in fixtures::exportable_codes(seed)? {
                    if only.as_deref().is_none_or(|o| o == name) {
                        let path = dir.join(format!("{name}.code"));
                        fs::write(&path, io::write_code(&code))
                            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    }
                }
            }
            let mut all_ok = true;
            for rep in &reports {
                all_ok &= rep.all_pass();
                match cli.output {
                    OutputMode::Records => print!("{}", rep.records()),
                    OutputMode::Table => {
                        let params = match rep.params {
                            Some((n, k, d)) => format!("[{n},{k},{d}]"),
                            None => "-".into(),
                        };
                        println!("fixture {}  params {params}", rep.name);
                        for (name, ok) in &rep.assertions {
                            println!("  {:<32} {}", name, if *ok { "pass" } else { "FAIL" });
                        }
                    }
                }
            }
            if all_ok {
                Ok(())
            } else {
                Err(Domain("a fixture assertion failed".into()).into())
            }
        }
    }
}
