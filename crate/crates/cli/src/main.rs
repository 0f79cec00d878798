use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ezdiag::bipresheaf::{latching_formula_check, latching_object};
use ezdiag::corpus::examples;
use ezdiag::diagonal::{diagonal_with_bound, default_bound, DiagonalMode, PromonoidalStructure};
use ezdiag::homotopy::homology;
use ezdiag::presheaf::{boundary, is_isomorphic, representable, CellComplex};
use ezdiag::text::{parse_complex, parse_object, write_complex};
use ezdiag::verify::{run_suite, SuiteConfig, SUITES};
use ezdiag::{Category, CategoryInstance, Error};

#[derive(Parser)]
#[command(name = "ezdiag", version, about = "Finite presheaves on Eilenberg-Zilber categories")]
struct Cli {
    /// simplex, box, boxc, product:<c>, product:<c>,<d>
    #[arg(long, global = true, default_value = "simplex")]
    category: Category,
    #[arg(long = "degree-bound", global = true)]
    degree_bound: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Cat,
    Join,
    Geom,
}

impl From<Mode> for DiagonalMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Cat => DiagonalMode::Categorical,
            Mode::Join => DiagonalMode::Day(PromonoidalStructure::Join),
            Mode::Geom => DiagonalMode::Day(PromonoidalStructure::Geometric),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the cell census per degree
    Describe { input: PathBuf },
    /// Write the n-skeleton
    Skeleton {
        #[arg(long)]
        n: i64,
        input: PathBuf,
    },
    /// Write the boundary of a representable
    Boundary {
        #[arg(long)]
        object: String,
    },
    /// Print integral homology
    Homology { input: PathBuf },
    /// Write the diagonal of a bicomplex
    Diag {
        #[arg(long, value_enum)]
        mode: Mode,
        input: PathBuf,
    },
    /// Write the latching object at an object of the second factor
    Latch {
        #[arg(long)]
        object: String,
        input: PathBuf,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Randomized inputs per sweep
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Write the built-in example complexes
    Examples {
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
}

enum Failure {
    Verification,
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_complex(path: &Path, bound: Option<u32>) -> std::result::Result<Arc<CellComplex>, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    let k = parse_complex(&text)?;
    Ok(Arc::new(match bound {
        Some(b) => k.rebound(b)?,
        None => k,
    }))
}

fn instance(cli: &Cli) -> CategoryInstance {
    CategoryInstance::new(cli.category.clone(), cli.degree_bound.unwrap_or(2))
}

fn object(category: &Category, token: &str) -> std::result::Result<ezdiag::Object, Failure> {
    parse_object(category, token).map_err(Failure::Input)
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    match &cli.command {
        Command::Describe { input } => {
            let k = read_complex(input, cli.degree_bound)?;
            match cli.format {
                Format::Text => {
                    writeln!(out, "category {}", k.instance().category())?;
                    writeln!(out, "bound {}", k.instance().bound())?;
                    writeln!(out, "cells {}", k.len())?;
                    for (n, c) in k.census().iter().enumerate() {
                        writeln!(out, "degree {n}: {c}")?;
                    }
                }
                Format::Records => {
                    let record = json!({
                        "category": k.instance().category().to_string(),
                        "bound": k.instance().bound(),
                        "census": k.census(),
                    });
                    writeln!(out, "{record}")?;
                }
            }
        }
        Command::Skeleton { n, input } => {
            let k = read_complex(input, cli.degree_bound)?;
            write!(out, "{}", write_complex(&k.skeleton(*n)?.0))?;
        }
        Command::Boundary { object: token } => {
            let instance = instance(cli);
            let a = object(instance.category(), token)?;
            write!(out, "{}", write_complex(&boundary(&instance, &a)?))?;
        }
        Command::Homology { input } => {
            let k = read_complex(input, cli.degree_bound)?;
            let h = homology(&k)?;
            match cli.format {
                Format::Text => write!(out, "{h}")?,
                Format::Records => {
                    for (n, d) in h.degrees.iter().enumerate() {
                        let torsion: Vec<String> = d.torsion.iter().map(ToString::to_string).collect();
                        writeln!(out, "{}", json!({ "degree": n, "rank": d.rank, "torsion": torsion }))?;
                    }
                }
            }
        }
        Command::Diag { mode, input } => {
            let x = read_complex(input, None)?;
            let mode = DiagonalMode::from(*mode);
            let bound = cli.degree_bound.unwrap_or_else(|| default_bound(&x, mode));
            let d = diagonal_with_bound(&x, mode, bound)?;
            write!(out, "{}", write_complex(&d.complex))?;
        }
        Command::Latch { object: token, input } => latch(cli, token, input, out)?,
        Command::Verify { suite, samples } => {
            if suite != "all" && !SUITES.iter().any(|s| s.name == suite) {
                let known: Vec<_> = SUITES.iter().map(|s| s.name).collect();
                return Err(Failure::Input(format!("unknown suite {suite}; expected all or one of {}", known.join(", "))));
            }
            let config = SuiteConfig {
                category: cli.category.clone(),
                bound: cli.degree_bound.unwrap_or(2),
                seed: cli.seed,
                samples: *samples,
            };
            let report = run_suite(suite, &config)?;
            for v in &report.verdicts {
                match cli.format {
                    Format::Text => writeln!(out, "{} {}{}", if v.pass { "PASS" } else { "FAIL" }, v.check, detail(&v.detail))?,
                    Format::Records => writeln!(out, "{}", json!({ "check": v.check, "pass": v.pass, "detail": v.detail }))?,
                }
            }
            let failed = report.failures().count();
            match cli.format {
                Format::Text => writeln!(
                    out,
                    "{} checks, {failed} failed, {} elements touched, {:.2}s",
                    report.verdicts.len(),
                    report.touched,
                    report.elapsed.as_secs_f64()
                )?,
                Format::Records => writeln!(
                    out,
                    "{}",
                    json!({ "checks": report.verdicts.len(), "failed": failed, "touched": report.touched })
                )?,
            }
            if failed > 0 {
                return Err(Failure::Verification);
            }
        }
        Command::Examples { out: dir } => {
            fs::create_dir_all(dir)?;
            for (name, k) in examples()? {
                fs::write(dir.join(&name), write_complex(&k))?;
                writeln!(out, "{}", dir.join(&name).display())?;
            }
        }
    }
    Ok(())
}

fn detail(d: &str) -> String {
    if d.is_empty() {
        String::new()
    } else {
        format!(" ({d})")
    }
}

/// `L_aX`, and for a representable bicomplex the formula check at every level.
fn latch(cli: &Cli, token: &str, input: &Path, out: &mut impl Write) -> Outcome {
    let x = read_complex(input, cli.degree_bound)?;
    let (base, _) = x
        .instance()
        .factors()
        .ok_or_else(|| Error::UnsupportedBase(format!("{} is not a product category", x.instance().category())))?;
    let b = object(base.category(), token)?;
    let latching = latching_object(&x, &b)?;
    write!(out, "{}", write_complex(&latching.complex))?;

    let top = x.max_degree().unwrap_or(0);
    let tops: Vec<_> = x.cells().iter().filter(|c| c.shape.degree() == top).collect();
    if tops.len() != 1 {
        return Ok(());
    }
    let shape = tops[0].shape.clone();
    let rep = Arc::new(representable(x.instance(), &shape)?);
    if !is_isomorphic(&rep, &x)? {
        return Ok(());
    }
    let (a, a_prime) = (shape.first().expect("pair").clone(), shape.second().expect("pair").clone());
    let mut all = true;
    for c in base.objects() {
        let v = latching_formula_check(&base, &a, &a_prime, &b, &c)?;
        all &= v.holds();
        match cli.format {
            Format::Text => writeln!(
                out,
                "# formula at {c}: {} {} vs {}",
                if v.holds() { "PASS" } else { "FAIL" },
                v.colimit_size,
                v.formula_size
            )?,
            Format::Records => writeln!(
                out,
                "{}",
                json!({ "level": c.to_string(), "pass": v.holds(), "colimit": v.colimit_size, "formula": v.formula_size })
            )?,
        }
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundExceeded { .. } | Error::InsufficientBound { .. } => 3,
        Error::UnsupportedBase(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
