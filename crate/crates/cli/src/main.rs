use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pibounds_core::bounds::{builtin_bounds, BoundExpr, Registry};
use pibounds_core::claims::run_all;
use pibounds_core::primes::{pi_point_legendre, DEFAULT_SCAN_CAP};
use pibounds_core::scan::{CrossoverResult, Direction, ScanConfig, Scanner, Status, Verdict};
use pibounds_core::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pibounds",
    version,
    about = "Prime counting, Chebyshev psi and explicit bound checks"
)]
struct Cli {
    /// Largest argument the sieve and scanner will accept.
    #[arg(long, global = true, default_value_t = DEFAULT_SCAN_CAP,
          value_parser = clap::value_parser!(u64).range(2..))]
    cap: u64,

    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Sieve,
    Legendre,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Dir {
    Upper,
    Lower,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Upper => Direction::UpperStrict,
            Dir::Lower => Direction::LowerStrict,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of primes <= x (x may be a decimal; it is floored).
    Pi {
        x: f64,
        #[arg(long, value_enum, default_value_t = Method::Sieve)]
        method: Method,
    },
    /// Chebyshev's psi(x) with its rounding error bound.
    Psi { x: u64 },
    /// List or evaluate the named bounds.
    Bound {
        #[command(subcommand)]
        action: BoundAction,
    },
    /// Check pi(n) against a bound for every integer n in [from, to].
    Scan {
        #[arg(long)]
        bound: String,
        #[arg(long, value_enum)]
        dir: Dir,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Smallest n in [from, to] from which left <= right holds.
    Crossover {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Run the claim suite.
    Verify {
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
    },
    /// CSV table of pi and bound values.
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        step: u64,
        #[arg(long, value_delimiter = ',')]
        bounds: Option<Vec<String>>,
    },
}

#[derive(Subcommand, Debug)]
enum BoundAction {
    List,
    Eval { name: String, x: f64 },
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let scanner = match Scanner::new(ScanConfig {
        cap: cli.cap,
        threads: cli.threads,
    }) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut buf = Vec::new();
    let result = scanner.install(|| run(&cli, &scanner, &mut buf));
    let result = match io::stdout().lock().write_all(&buf) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Io(e)),
        _ => result,
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli, scanner: &Scanner, out: &mut impl Write) -> Outcome {
    let bounds = builtin_bounds();
    match &cli.command {
        Command::Pi { x, method } => pi(cli.format, scanner, *x, *method, out),
        Command::Psi { x } => {
            let v = scanner.counter().psi_at(*x)?;
            match cli.format {
                Format::Text => writeln!(out, "{} (error <= {:e})", v.value, v.error_bound)?,
                Format::Json => {
                    let j = json!({"x": v.x, "psi": v.value, "error_bound": v.error_bound});
                    writeln!(out, "{j}")?
                }
                Format::Csv => write!(
                    out,
                    "x,psi,error_bound\n{},{},{}\n",
                    v.x, v.value, v.error_bound
                )?,
            }
            Ok(true)
        }
        Command::Bound {
            action: BoundAction::List,
        } => {
            bound_list(cli.format, &bounds, out)?;
            Ok(true)
        }
        Command::Bound {
            action: BoundAction::Eval { name, x },
        } => {
            let v = bounds.get(name)?.eval(*x)?;
            match cli.format {
                Format::Text => writeln!(out, "{} (error <= {:e})", v.value, v.abs_error_bound)?,
                Format::Json => {
                    let j = json!({"bound": name, "x": x, "value": v.value,
                                   "abs_error_bound": v.abs_error_bound});
                    writeln!(out, "{j}")?
                }
                Format::Csv => write!(
                    out,
                    "bound,x,value,abs_error_bound\n{name},{x},{},{}\n",
                    v.value, v.abs_error_bound
                )?,
            }
            Ok(true)
        }
        Command::Scan {
            bound,
            dir,
            from,
            to,
        } => {
            let b = bounds.get(bound)?;
            let v = scanner.verify_pi(b, (*dir).into(), *from, *to)?;
            write_verdict(cli.format, b, *dir, (*from, *to), &v, out)?;
            Ok(v.status == Status::Pass)
        }
        Command::Crossover {
            left,
            right,
            from,
            to,
        } => {
            let (f, g) = (bounds.get(left)?, bounds.get(right)?);
            let r = scanner.analytic_crossover(f, g, *from, *to)?;
            write_crossover(cli.format, f, g, &r, out)?;
            Ok(r.threshold.is_some() && r.ambiguous_points.is_empty())
        }
        Command::Verify { claims } => {
            let ids: Option<Vec<&str>> = claims
                .as_ref()
                .map(|c| c.iter().map(String::as_str).collect());
            let report = run_all(scanner, ids.as_deref())?;
            match cli.format {
                Format::Text => write!(out, "{}", report.to_text())?,
                Format::Json => writeln!(out, "{}", report.to_json())?,
                Format::Csv => {
                    let mut w = csv_writer(out);
                    w.write_record([
                        "id",
                        "status",
                        "verdict",
                        "witness",
                        "min_margin",
                        "range_lo",
                        "range_hi",
                        "elapsed_ms",
                    ])?;
                    for c in &report.claims {
                        let v = c.verdict.as_ref();
                        w.write_record([
                            c.id.to_string(),
                            c.status.as_str().to_string(),
                            v.map_or(String::new(), |v| v.status.as_str().to_string()),
                            v.and_then(|v| v.witness)
                                .map_or(String::new(), |w| w.to_string()),
                            v.map_or(String::new(), |v| v.min_margin.to_string()),
                            c.range.0.to_string(),
                            c.range.1.to_string(),
                            c.elapsed.as_millis().to_string(),
                        ])?;
                    }
                    w.flush()?;
                }
            }
            Ok(report.all_match())
        }
        Command::Table {
            from,
            to,
            step,
            bounds: names,
        } => {
            let selected: Vec<&BoundExpr> = match names {
                Some(names) => names
                    .iter()
                    .map(|n| bounds.get(n))
                    .collect::<Result<_, _>>()?,
                None => bounds.iter().collect(),
            };
            table(scanner, *from, *to, *step, &selected, out)?;
            Ok(true)
        }
    }
}

fn pi(format: Format, scanner: &Scanner, x: f64, method: Method, out: &mut impl Write) -> Outcome {
    let count = match method {
        Method::Sieve => scanner.counter().pi_at(x)?,
        Method::Legendre => {
            if x.is_nan() || x < 0.0 {
                return Err(Failure::Usage(format!("pi needs x >= 0, got {x}")));
            }
            pi_point_legendre(x.floor() as u64)?
        }
    };
    let method = match method {
        Method::Sieve => "sieve",
        Method::Legendre => "legendre",
    };
    match format {
        Format::Text => writeln!(out, "{count}")?,
        Format::Json => writeln!(out, "{}", json!({"x": x, "pi": count, "method": method}))?,
        Format::Csv => write!(out, "x,pi\n{x},{count}\n")?,
    }
    Ok(true)
}

fn bound_list(format: Format, bounds: &Registry, out: &mut impl Write) -> Result<(), Failure> {
    match format {
        Format::Text => {
            for b in bounds.iter() {
                writeln!(
                    out,
                    "{:<14} x >= {:<8} {}",
                    b.name(),
                    b.valid_from(),
                    b.kind()
                )?;
            }
        }
        Format::Json => {
            let list: Vec<_> = bounds
                .iter()
                .map(|b| {
                    json!({"name": b.name(), "formula": b.kind().to_string(),
                                "valid_from": b.valid_from(), "kind": b.kind()})
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(list))?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["name", "valid_from", "formula"])?;
            for b in bounds.iter() {
                w.write_record([
                    b.name().to_string(),
                    b.valid_from().to_string(),
                    b.kind().to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn write_verdict(
    format: Format,
    b: &BoundExpr,
    dir: Dir,
    range: (u64, u64),
    v: &Verdict,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let relation = match dir {
        Dir::Upper => format!("pi(x) < {}", b.name()),
        Dir::Lower => format!("{} < pi(x)", b.name()),
    };
    match format {
        Format::Text => {
            writeln!(
                out,
                "{} {relation} on [{}, {}]",
                v.status.as_str(),
                range.0,
                range.1
            )?;
            if let Some(w) = v.witness {
                writeln!(
                    out,
                    "witness {w}: margin {:e}, guard {:e}",
                    v.witness_margin, v.guard_at_witness
                )?;
            }
            writeln!(
                out,
                "min margin {:e}, {} points, {} violations, {} ambiguous",
                v.min_margin,
                v.points_checked,
                v.violations,
                v.ambiguous_points.len()
            )?;
        }
        Format::Json => {
            let j = json!({
                "bound": b.name(),
                "dir": format!("{dir:?}").to_lowercase(),
                "range": [range.0, range.1],
                "status": v.status,
                "witness": v.witness,
                "witness_margin": v.witness_margin,
                "guard_at_witness": v.guard_at_witness,
                "min_margin": v.min_margin,
                "points_checked": v.points_checked,
                "violations": v.violations,
                "ambiguous_points": v.ambiguous_points,
            });
            writeln!(out, "{j}")?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "status",
                "witness",
                "witness_margin",
                "min_margin",
                "points",
                "violations",
                "ambiguous",
            ])?;
            w.write_record([
                v.status.as_str().to_string(),
                v.witness.map_or(String::new(), |w| w.to_string()),
                v.witness_margin.to_string(),
                v.min_margin.to_string(),
                v.points_checked.to_string(),
                v.violations.to_string(),
                v.ambiguous_points.len().to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn write_crossover(
    format: Format,
    f: &BoundExpr,
    g: &BoundExpr,
    r: &CrossoverResult,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let threshold = r.threshold.map_or("none".to_string(), |t| t.to_string());
    match format {
        Format::Text => {
            writeln!(out, "{} <= {} from {threshold}", f.name(), g.name())?;
            writeln!(
                out,
                "{} sign changes, margin {:e} at threshold, {} points, {} ambiguous",
                r.sign_changes,
                r.margin_at_threshold,
                r.points_checked,
                r.ambiguous_points.len()
            )?;
        }
        Format::Json => {
            let finite = |v: f64| v.is_finite().then_some(v);
            let j = json!({
                "left": f.name(),
                "right": g.name(),
                "threshold": r.threshold,
                "last_failure": r.last_failure,
                "sign_changes": r.sign_changes,
                "margin_at_threshold": finite(r.margin_at_threshold),
                "guard_at_threshold": finite(r.guard_at_threshold),
                "points_checked": r.points_checked,
                "ambiguous_points": r.ambiguous_points,
            });
            writeln!(out, "{j}")?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "left",
                "right",
                "threshold",
                "sign_changes",
                "margin_at_threshold",
            ])?;
            w.write_record([
                f.name().to_string(),
                g.name().to_string(),
                r.threshold.map_or(String::new(), |t| t.to_string()),
                r.sign_changes.to_string(),
                r.margin_at_threshold.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// Values outside a bound's domain are left empty.
fn table(
    scanner: &Scanner,
    from: u64,
    to: u64,
    step: u64,
    bounds: &[&BoundExpr],
    out: &mut impl Write,
) -> Result<(), Failure> {
    if from > to {
        return Err(Error::InvalidRange { lo: from, hi: to }.into());
    }
    let pis = scanner.counter().pi_table(from, to)?;
    let mut w = csv_writer(out);
    let mut header = vec!["x".to_string(), "pi".to_string()];
    header.extend(bounds.iter().map(|b| b.name().to_string()));
    w.write_record(&header)?;
    let mut x = from;
    loop {
        let mut row = vec![x.to_string(), pis.get(x).expect("x in table").to_string()];
        for b in bounds {
            row.push(
                b.eval(x as f64)
                    .map_or(String::new(), |v| v.value.to_string()),
            );
        }
        w.write_record(&row)?;
        match x.checked_add(step) {
            Some(next) if next <= to => x = next,
            _ => break,
        }
    }
    w.flush()?;
    Ok(())
}
