//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a `verify` run finds a failing check,
//! 2 on invalid input (including parse errors). Shifts are accepted only
//! as exact rationals (`p/q` or decimal literals), never as binary floats.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use floorlat::asymptotics::{find_alpha0, slope, slope_table, SlopeMethod, SlopeQuery};
use floorlat::lattice::{enumerate_form_count, QuadraticForm};
use floorlat::output::{Cell, OutputRecord};
use floorlat::sequences::{c_seq, count_direct, f_seq, floor_sequence, r_seq};
use floorlat::verify::{run_suite, Suite};
use floorlat::{CongruenceClass, Rational, SequenceSpec};

#[derive(Parser)]
#[command(
    name = "floorlat",
    about = "Congruence-class counts in shifted floor sequences and lattice-point counts",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ShiftArgs {
    /// Shift alpha in [0, 1), as an exact rational (`1/2`, `0.25`).
    #[arg(long, default_value = "0")]
    alpha: Rational,
    /// Offset nu in [0, 1), as an exact rational.
    #[arg(long, default_value = "0")]
    nu: Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Print the terms of the shifted floor sequence for one n.
    Seq {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        shift: ShiftArgs,
    },
    /// Count terms of the sequence congruent to r mod m.
    Count {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        shift: ShiftArgs,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        m: u64,
    },
    /// Tabulate the odd-term counts of the floor, ceiling, and
    /// nearest-integer sequences for n = 1..=n_max.
    Fcr {
        #[arg(long)]
        n_max: u64,
    },
    /// Asymptotic density of class r mod m under shift alpha.
    Slope {
        #[arg(long, default_value = "0")]
        alpha: Rational,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        m: u64,
    },
    /// Density table for every class with modulus up to m.
    Table {
        #[arg(long, default_value = "0")]
        alpha: Rational,
        /// Largest modulus to include.
        #[arg(long)]
        m: u64,
    },
    /// The shift at which even and odd terms become equidistributed.
    Alpha0 {
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
    },
    /// Lattice points satisfying Q(x, y) <= n for n = 0..=n_max.
    Lattice {
        /// Built-in form; mutually exclusive with --a/--b/--c.
        #[arg(long, value_enum, conflicts_with_all = ["a", "b", "c"])]
        form: Option<FormName>,
        /// Custom form coefficient of x^2 (counted by exhaustion).
        #[arg(long, requires = "b", requires = "c")]
        a: Option<i64>,
        /// Custom form coefficient of xy.
        #[arg(long, requires = "a")]
        b: Option<i64>,
        /// Custom form coefficient of y^2.
        #[arg(long, requires = "a")]
        c: Option<i64>,
        #[arg(long)]
        n_max: u64,
    },
    /// Run the formula-vs-oracle verification sweeps.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Upper bound for the sweeps' primary parameter.
        #[arg(long, default_value_t = 1000)]
        cap: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormName {
    /// x^2 + y^2
    Circle,
    /// x^2 + xy + y^2
    Eisenstein,
    /// x^2 + 2y^2
    Z2,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> floorlat::Result<ExitCode> {
    let record = match &cli.command {
        Command::Seq { n, shift } => {
            let spec = SequenceSpec::new(*n, shift.alpha.clone(), shift.nu.clone())?;
            let mut rec = OutputRecord::new(
                &[
                    ("n", n.to_string()),
                    ("alpha", shift.alpha.to_string()),
                    ("nu", shift.nu.to_string()),
                ],
                &["k", "term"],
            );
            for (i, term) in floor_sequence(&spec).iter().enumerate() {
                rec.push_row(vec![
                    Cell::UInt(i as u64 + 1),
                    Cell::Text(term.to_string()),
                ]);
            }
            rec
        }
        Command::Count { n, shift, r, m } => {
            let spec = SequenceSpec::new(*n, shift.alpha.clone(), shift.nu.clone())?;
            let class = CongruenceClass::new(*r, *m)?;
            let count = count_direct(&spec, &class);
            let mut rec = OutputRecord::new(
                &[
                    ("n", n.to_string()),
                    ("alpha", shift.alpha.to_string()),
                    ("nu", shift.nu.to_string()),
                    ("r", r.to_string()),
                    ("m", m.to_string()),
                ],
                &["n", "r", "m", "count"],
            );
            rec.push_row(vec![
                Cell::UInt(*n),
                Cell::UInt(*r),
                Cell::UInt(*m),
                Cell::UInt(count),
            ]);
            rec
        }
        Command::Fcr { n_max } => {
            if *n_max < 1 {
                return Err(floorlat::Error::Domain("n_max must be positive".into()));
            }
            let mut rec = OutputRecord::new(
                &[("n_max", n_max.to_string())],
                &["n", "floor_odd", "ceiling_odd", "round_odd"],
            );
            for n in 1..=*n_max {
                rec.push_row(vec![
                    Cell::UInt(n),
                    Cell::UInt(f_seq(n)),
                    Cell::UInt(c_seq(n)),
                    Cell::UInt(r_seq(n)),
                ]);
            }
            rec
        }
        Command::Slope { alpha, r, m } => {
            let query = SlopeQuery::new(alpha.clone(), *r, *m)?;
            let res = slope(&query);
            let method = match res.method {
                SlopeMethod::Series => "series",
                SlopeMethod::Quadrature => "quadrature",
            };
            let mut rec = OutputRecord::new(
                &[
                    ("alpha", alpha.to_string()),
                    ("r", r.to_string()),
                    ("m", m.to_string()),
                ],
                &["r", "m", "value", "abs_error_estimate", "method"],
            );
            rec.push_row(vec![
                Cell::UInt(*r),
                Cell::UInt(*m),
                Cell::Float(res.value),
                Cell::Float(res.abs_error_estimate),
                Cell::Text(method.to_string()),
            ]);
            rec
        }
        Command::Table { alpha, m } => {
            let rows = slope_table(alpha, *m)?;
            let mut rec = OutputRecord::new(
                &[("alpha", alpha.to_string()), ("m_max", m.to_string())],
                &["r", "m", "value"],
            );
            for e in rows {
                rec.push_row(vec![Cell::UInt(e.r), Cell::UInt(e.m), Cell::Float(e.value)]);
            }
            rec
        }
        Command::Alpha0 { tol } => {
            let a0 = find_alpha0(*tol)?;
            let mut rec = OutputRecord::new(&[("tol", format!("{tol}"))], &["alpha0"]);
            rec.push_row(vec![Cell::Float(a0)]);
            rec
        }
        Command::Lattice {
            form,
            a,
            b,
            c,
            n_max,
        } => lattice_record(*form, *a, *b, *c, *n_max)?,
        Command::Verify { suite, cap } => {
            let suite: Suite = suite.parse()?;
            let checks = run_suite(suite, *cap)?;
            let mut failed = false;
            for check in &checks {
                let status = if check.pass { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", check.name, check.detail);
                failed |= !check.pass;
            }
            println!(
                "{} checks, {} failed",
                checks.len(),
                checks.iter().filter(|c| !c.pass).count()
            );
            return Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            });
        }
    };

    let rendered = match cli.format {
        Format::Csv => record.to_csv(),
        Format::Json => record.to_json(),
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, rendered)
                .map_err(|e| floorlat::Error::Domain(format!("cannot write {}: {e}", path.display())))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| floorlat::Error::Domain(format!("cannot write output: {e}")))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn lattice_record(
    form: Option<FormName>,
    a: Option<i64>,
    b: Option<i64>,
    c: Option<i64>,
    n_max: u64,
) -> floorlat::Result<OutputRecord> {
    let (label, count_fn): (String, Box<dyn Fn(u64) -> u64>) = match (form, a, b, c) {
        (Some(name), None, None, None) => {
            let f: fn(u64) -> u64 = match name {
                FormName::Circle => floorlat::lattice::circle_count,
                FormName::Eisenstein => floorlat::lattice::eisenstein_count,
                FormName::Z2 => floorlat::lattice::z_sqrt_minus2_count,
            };
            let label = match name {
                FormName::Circle => "circle",
                FormName::Eisenstein => "eisenstein",
                FormName::Z2 => "z2",
            };
            (label.to_string(), Box::new(f))
        }
        (None, Some(a), Some(b), Some(c)) => {
            let q = QuadraticForm::new(a, b, c)?;
            (
                format!("({a},{b},{c})"),
                Box::new(move |n| enumerate_form_count(&q, n)),
            )
        }
        _ => {
            return Err(floorlat::Error::Domain(
                "specify either --form or all of --a/--b/--c".into(),
            ))
        }
    };
    let mut rec = OutputRecord::new(
        &[("form", label), ("n_max", n_max.to_string())],
        &["n", "count"],
    );
    for n in 0..=n_max {
        rec.push_row(vec![Cell::UInt(n), Cell::UInt(count_fn(n))]);
    }
    Ok(rec)
}
