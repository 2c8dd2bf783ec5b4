use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sphharm::montecarlo::McReport;
use sphharm::num_traits::ToPrimitive;
use sphharm::poly::parse_poly;
use sphharm::suites::{identities_suite, mc_suite, PropertyResult};
use sphharm::{
    base_r2_expansion, casimir, gaussian_inner, gegenbauer_monic, hermite_poly, la_project, limit_table,
    parse_rational, reduce_mod_sphere, sphere_inner, sphere_laplacian, zonal_poly, AmbientDim, LimitKind, QPoly,
    QSphere, Rational, Scalar,
};

/// Exact polynomial computations on spheres and their Gaussian limits.
#[derive(Parser, Debug)]
#[command(name = "sphharm", version)]
struct Cli {
    /// Output format; plain text when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Sample count for Monte Carlo commands.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    InnerProduct,
    ProjectedMonomial,
    ZonalToHermite,
    SlapToHermite,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Identities,
    Mc,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monic Hermite polynomial H_m.
    Hermite {
        #[arg(short)]
        m: u32,
    },
    /// Monic Gegenbauer polynomial of degree m and parameter b.
    Gegenbauer {
        #[arg(short)]
        b: String,
        #[arg(short)]
        m: u32,
    },
    /// Monic zonal polynomial q_m on S^{N-1}(a).
    Zonal {
        #[arg(short)]
        m: u32,
        #[arg(short = 'n', long = "dim")]
        n: u32,
        /// Squared radius as "p/q", or "N" for a^2 = N.
        #[arg(long)]
        a2: String,
    },
    /// Sphere or Gaussian inner product of two polynomials.
    Inner {
        #[arg(short)]
        p: String,
        #[arg(short)]
        q: String,
        #[arg(short = 'n', long = "dim", required_unless_present = "gaussian")]
        n: Option<u32>,
        #[arg(long, required_unless_present = "gaussian")]
        a2: Option<String>,
        #[arg(long, conflicts_with_all = ["n", "a2"])]
        gaussian: bool,
    },
    /// Spherical Laplacian, reduced to the variables of p.
    Slap {
        #[arg(short)]
        p: String,
        #[arg(short = 'n', long = "dim")]
        n: u32,
        #[arg(long)]
        a2: String,
    },
    /// Harmonic components p_0, p_1, ... with p = sum |X|^{2i} p_i.
    Decompose {
        #[arg(short)]
        p: String,
        #[arg(short = 'n', long = "dim")]
        n: u32,
    },
    /// Harmonic polynomial agreeing with p on the sphere.
    La {
        #[arg(short)]
        p: String,
        #[arg(short = 'n', long = "dim")]
        n: u32,
        #[arg(long)]
        a2: String,
    },
    /// Sum of squared rotation generators.
    Casimir {
        #[arg(short)]
        p: String,
        #[arg(short = 'n', long = "dim")]
        n: u32,
    },
    /// Remainder modulo |X|^2 - a^2.
    Reduce {
        #[arg(short)]
        p: String,
        #[arg(short = 'n', long = "dim")]
        n: u32,
        #[arg(long)]
        a2: String,
    },
    /// Exact error against the N -> infinity limit for each N.
    LimitTable {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Polynomial payload (inner-product, projected-monomial, slap-to-hermite).
        #[arg(short)]
        p: Option<String>,
        /// Second polynomial for inner-product.
        #[arg(short)]
        q: Option<String>,
        /// Degree for zonal-to-hermite.
        #[arg(short)]
        m: Option<u32>,
        /// Comma-separated, strictly increasing.
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<u32>,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Random inputs for the identities suite.
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

/// A command that could not run; always exit code 2. Verification
/// failures are not errors and are reported through `run`'s flag instead.
enum Failure {
    Usage(String),
}

impl From<sphharm::Error> for Failure {
    fn from(e: sphharm::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("cannot write csv: {e}"))
    }
}

fn poly(text: &str) -> Result<QPoly, Failure> {
    parse_poly(text).map_err(|e| Failure::Usage(format!("cannot parse {text:?}: {e}")))
}

fn rational(text: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(text).ok_or_else(|| Failure::Usage(format!("{what} must be a rational \"p/q\", got {text:?}")))
}

fn sphere(n: u32, a2: &str) -> Result<QSphere, Failure> {
    let a2 = if a2.trim() == "N" { Rational::from_int(i64::from(n)) } else { rational(a2, "a2")? };
    Ok(QSphere::new(n, a2)?)
}

fn f64_17(x: &Rational) -> String {
    format!("{:.16e}", x.to_f64().unwrap_or(f64::NAN))
}

/// Renders single-value outputs: plain text, `{"<key>": "..."}` or a
/// one-row csv with header `<key>`.
fn single(key: &str, value: String, format: Option<Format>) -> Result<String, Failure> {
    Ok(match format {
        None => format!("{value}\n"),
        Some(Format::Json) => format!("{}\n", json!({ key: value })),
        Some(Format::Csv) => csv_rows(&[key], [[value]])?,
    })
}

fn csv_rows<R, I>(header: &[&str], rows: I) -> Result<String, Failure>
where
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
    I: IntoIterator<Item = R>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct TableRow {
    n: u32,
    error: String,
    error_f64: String,
}

#[derive(Serialize)]
struct PropertyJson<'a> {
    name: &'a str,
    passed: bool,
    checked: usize,
    detail: Option<&'a str>,
}

#[derive(Serialize)]
struct McJson<'a> {
    p: &'a str,
    q: &'a str,
    n: u32,
    a2: &'a str,
    exact: &'a str,
    mean: f64,
    standard_error: f64,
    discrepancy: f64,
    passed: bool,
}

fn mc_json(r: &McReport) -> McJson<'_> {
    McJson {
        p: &r.p,
        q: &r.q,
        n: r.dim,
        a2: &r.a2,
        exact: &r.exact,
        mean: r.estimate.mean,
        standard_error: r.estimate.standard_error,
        discrepancy: r.discrepancy(),
        passed: r.passed,
    }
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let fmt = cli.format;
    let poly_out = |p: QPoly| single("poly", p.to_string(), fmt);
    let text = match &cli.command {
        Command::Hermite { m } => poly_out(hermite_poly(*m))?,
        Command::Gegenbauer { b, m } => poly_out(gegenbauer_monic(&rational(b, "b")?, *m)?)?,
        Command::Zonal { m, n, a2 } => poly_out(zonal_poly(*m, &sphere(*n, a2)?)?)?,
        Command::Inner { p, q, n, a2, gaussian } => {
            let (p, q) = (poly(p)?, poly(q)?);
            let value = if *gaussian {
                gaussian_inner(&p, &q)
            } else {
                let (n, a2) = (n.expect("required by clap"), a2.as_deref().expect("required by clap"));
                sphere_inner(&p, &q, &sphere(n, a2)?)?
            };
            single("value", value.to_string(), fmt)?
        }
        Command::Slap { p, n, a2 } => poly_out(sphere_laplacian(&poly(p)?, &sphere(*n, a2)?)?.value)?,
        Command::La { p, n, a2 } => poly_out(la_project(&poly(p)?, &sphere(*n, a2)?)?)?,
        Command::Casimir { p, n } => poly_out(casimir(&poly(p)?, AmbientDim::new(*n)?)?)?,
        Command::Reduce { p, n, a2 } => poly_out(reduce_mod_sphere(&poly(p)?, &sphere(*n, a2)?)?.remainder)?,
        Command::Decompose { p, n } => {
            let p = poly(p)?;
            let expansion = base_r2_expansion(&p, AmbientDim::new(*n)?)?;
            let check = expansion.reassemble() == p;
            let comps: Vec<String> = expansion.components.iter().map(ToString::to_string).collect();
            match fmt {
                Some(Format::Json) => format!("{}\n", json!({ "harmonic_components": comps, "check": check })),
                Some(Format::Csv) => {
                    csv_rows(&["index", "component"], comps.iter().enumerate().map(|(i, c)| [i.to_string(), c.clone()]))?
                }
                None => {
                    let mut s: String = comps.iter().enumerate().map(|(i, c)| format!("p{i} = {c}\n")).collect();
                    s.push_str(&format!("check: {check}\n"));
                    s
                }
            }
        }
        Command::LimitTable { kind, p, q, m, n_list } => {
            let need = |x: &Option<String>, flag: &str| -> Result<QPoly, Failure> {
                poly(x.as_deref().ok_or_else(|| Failure::Usage(format!("{kind:?} needs -{flag}")))?)
            };
            let kind = match kind {
                Kind::InnerProduct => LimitKind::InnerProduct { p: need(p, "p")?, q: need(q, "q")? },
                Kind::ProjectedMonomial => LimitKind::ProjectedMonomial { p: need(p, "p")? },
                Kind::SlapToHermite => LimitKind::SlapToHermite { p: need(p, "p")? },
                Kind::ZonalToHermite => {
                    LimitKind::ZonalToHermite { m: m.ok_or_else(|| Failure::Usage("zonal-to-hermite needs -m".into()))? }
                }
            };
            let table = limit_table(&kind, n_list)?;
            let rows: Vec<TableRow> = table
                .rows
                .iter()
                .map(|r| TableRow { n: r.n, error: r.error.to_string(), error_f64: f64_17(&r.error) })
                .collect();
            match fmt {
                Some(Format::Json) => format!("{}\n", json!({ "target": table.target, "rows": rows })),
                _ => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r)?;
                    }
                    String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?).expect("utf-8")
                }
            }
        }
        Command::Verify { suite: Suite::Identities, cases } => {
            let results = identities_suite(cli.seed, *cases);
            let ok = results.iter().all(|r| r.passed);
            return Ok((render_properties(&results, fmt)?, ok));
        }
        Command::Verify { suite: Suite::Mc, .. } => {
            let outcome = mc_suite(cli.samples, cli.seed)?;
            let ok = outcome.passed();
            let text = match fmt {
                Some(Format::Json) => format!(
                    "{}\n",
                    json!({
                        "suite": "mc",
                        "seed": cli.seed,
                        "samples": cli.samples,
                        "passed": outcome.passed_count(),
                        "required": outcome.required,
                        "total": outcome.reports.len(),
                        "ok": ok,
                        "cases": outcome.reports.iter().map(mc_json).collect::<Vec<_>>(),
                    })
                ),
                Some(Format::Csv) => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &outcome.reports {
                        w.serialize(mc_json(r))?;
                    }
                    String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?).expect("utf-8")
                }
                None => {
                    let mut s = String::new();
                    for r in &outcome.reports {
                        s.push_str(&format!(
                            "{} <{}, {}> N={} a2={}: exact {} mean {:.6} se {:.2e}\n",
                            if r.passed { "PASS" } else { "FAIL" },
                            r.p,
                            r.q,
                            r.dim,
                            r.a2,
                            r.exact,
                            r.estimate.mean,
                            r.estimate.standard_error
                        ));
                    }
                    s.push_str(&format!("{}/{} passed (need {})\n", outcome.passed_count(), outcome.reports.len(), outcome.required));
                    s
                }
            };
            return Ok((text, ok));
        }
    };
    Ok((text, true))
}

fn render_properties(results: &[PropertyResult], fmt: Option<Format>) -> Result<String, Failure> {
    let rows: Vec<PropertyJson> = results
        .iter()
        .map(|r| PropertyJson { name: &r.name, passed: r.passed, checked: r.checked, detail: r.detail.as_deref() })
        .collect();
    Ok(match fmt {
        Some(Format::Json) => format!(
            "{}\n",
            json!({ "suite": "identities", "ok": results.iter().all(|r| r.passed), "properties": rows })
        ),
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?).expect("utf-8")
        }
        None => results
            .iter()
            .map(|r| {
                let status = if r.passed { "PASS" } else { "FAIL" };
                match &r.detail {
                    Some(d) => format!("{status} {} ({} checked): {d}\n", r.name, r.checked),
                    None => format!("{status} {} ({} checked)\n", r.name, r.checked),
                }
            })
            .collect(),
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            if let Err(e) = emit(&text, cli.out.as_ref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
