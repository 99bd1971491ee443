use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wenum::claims::seeded_rng;
use wenum::{
    avg_cjwe_bruteforce, avg_cjwe_closedform, avg_gfold_bruteforce, avg_gfold_closedform,
    avg_macwilliams, cjwe, cwe, gfold_cjwe, macwilliams_transform, parse_code, random_code,
    verify, write_code, Budget, Claim, Error, Field, Grid, LinearCode, RationalPoly, Variant,
};

#[derive(Parser, Debug)]
#[command(name = "wenum", version, about = "Exact weight enumerators and their monomial averages")]
struct Cli {
    /// Step cap for brute-force enumeration.
    #[arg(long, global = true, default_value_t = Budget::default().steps)]
    budget: u64,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Human-readable output instead of the canonical document.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complete weight enumerator of one code.
    Cwe { path: PathBuf },
    /// Complete joint weight enumerator of two codes.
    Cjwe { first: PathBuf, second: PathBuf },
    /// g-fold joint enumerator of one or more codes.
    Gjwe {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Dual code, in code-file format.
    Dual { path: PathBuf },
    /// Average over all monomial images of the first code.
    Avg {
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// MacWilliams transform of a (joint) enumerator.
    Transform {
        #[arg(long, default_value = "i")]
        variant: String,
        /// Transform the monomial average instead of the enumerator.
        #[arg(long)]
        average: bool,
        #[arg(required = true, num_args = 1..=2)]
        paths: Vec<PathBuf>,
    },
    /// Sweep a claim over small instances.
    Verify {
        claim: String,
        /// Field orders, comma separated.
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u32>>,
        /// Code lengths, comma separated.
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        /// Random instances per (q, n); exhaustive when omitted.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// A random k-dimensional (at most) code from a seeded generator matrix.
    RandomCode {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Brute,
    Closed,
}

enum Failure {
    Violated(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_code(path: &Path) -> Result<LinearCode, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_code(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_codes(paths: &[PathBuf]) -> Result<Vec<LinearCode>, Failure> {
    paths.iter().map(|p| read_code(p)).collect()
}

fn render(poly: &RationalPoly, pretty: bool) -> Result<String, Failure> {
    if pretty {
        Ok(format!("{}\n", poly.pretty_rational()))
    } else {
        Ok(poly.to_document()?)
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let budget = Budget::with_steps(cli.budget);
    let b = &budget;
    match &cli.command {
        Command::Cwe { path } => render(&cwe(&read_code(path)?, b)?, cli.pretty),
        Command::Cjwe { first, second } => {
            render(&cjwe(&read_code(first)?, &read_code(second)?, b)?, cli.pretty)
        }
        Command::Gjwe { paths } => render(&gfold_cjwe(&read_codes(paths)?, b)?, cli.pretty),
        Command::Dual { path } => Ok(write_code(&read_code(path)?.dual())),
        Command::Avg { method, paths } => {
            let codes = read_codes(paths)?;
            let poly = match (method, codes.as_slice()) {
                (Method::Brute, [c1, c2]) => avg_cjwe_bruteforce(c1, c2, b)?,
                (Method::Closed, [c1, c2]) => avg_cjwe_closedform(c1, c2, b)?,
                (Method::Brute, _) => avg_gfold_bruteforce(&codes, b)?,
                (Method::Closed, _) => avg_gfold_closedform(&codes, b)?,
            };
            render(&poly, cli.pretty)
        }
        Command::Transform {
            variant,
            average,
            paths,
        } => {
            let variant: Variant = variant.parse()?;
            let codes = read_codes(paths)?;
            let field = codes[0].field().clone();
            let sizes: Vec<u128> = codes.iter().map(LinearCode::size).collect();
            let poly = match (codes.as_slice(), average) {
                ([c1, c2], true) => {
                    avg_macwilliams(&field, &avg_cjwe_bruteforce(c1, c2, b)?, variant, &sizes, b)?
                }
                (_, true) => {
                    return Err(Error::InvalidArgument(
                        "--average needs exactly two codes".into(),
                    )
                    .into())
                }
                _ => macwilliams_transform(&field, &gfold_cjwe(&codes, b)?, variant, &sizes, b)?,
            };
            render(&poly, cli.pretty)
        }
        Command::Verify {
            claim,
            q,
            n,
            trials,
            seed,
        } => {
            let claim: Claim = claim.parse()?;
            let defaults = Grid::default();
            let grid = Grid {
                q: q.clone().unwrap_or(defaults.q),
                n: n.clone().unwrap_or(defaults.n),
                trials: *trials,
                seed: *seed,
            };
            let check = verify(claim, &grid, b)?;
            let text = if cli.pretty {
                let mut s = String::new();
                for v in &check.verdicts {
                    s.push_str(&format!(
                        "#{:<4} q={} n={} {:<14} {}{}\n",
                        v.index,
                        v.q,
                        v.n,
                        v.check,
                        if v.holds { "holds" } else { "fails" },
                        if v.detail.is_null() { String::new() } else { format!(" {}", v.detail) }
                    ));
                }
                s.push_str(&format!(
                    "{}: {} instances, {} checks passed, {} failed{}\n",
                    check.claim,
                    check.instances,
                    check.passed,
                    check.failed,
                    if check.violated { ", VIOLATED" } else { "" }
                ));
                s
            } else {
                check.to_document()
            };
            if check.violated {
                emit(cli, &text)?;
                return Err(Failure::Violated(format!("{} violated", check.claim)));
            }
            Ok(text)
        }
        Command::RandomCode { q, n, k, seed } => {
            let field = Field::of_order(*q)?;
            if *n == 0 {
                return Err(Error::InvalidArgument("n must be positive".into()).into());
            }
            let code = random_code(&field, *n, *k, &mut seeded_rng(*seed))?;
            Ok(write_code(&code))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::Io(e.to_string()))
                }
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| emit(&cli, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violated(msg)) => {
            eprintln!("wenum: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e @ Error::Capacity { .. })) => {
            eprintln!("wenum: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("wenum: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("wenum: {msg}");
            ExitCode::from(2)
        }
    }
}
