//! Command-line front end: expression parsing, command dispatch, and
//! CSV/JSON artifact writing.
//!
//! Exit codes: 0 success, 2 parse errors, 3 domain/precondition errors,
//! 4 accuracy/convergence failures, 5 verification failures. Logging is
//! controlled by `CONFRACT_LOG` ∈ {quiet, info, debug}.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::calculus::{FractionalOrder, TimeFunction};
use crate::conv::conv_alpha;
use crate::diffusion::{evaluate_field, DiffusionProblem, SeriesSpec, SpaceTimeField};
use crate::error::{Error, Result};
use crate::expr::parse_expression;
use crate::inverse::{
    invert_bromwich, invert_residues, invert_via_classical, partial_fractions, BromwichSpec,
    InversionMethod,
};
use crate::quad::{QuadScheme, QuadratureSpec};
use crate::transform::{forward_transform, pair_table, FrequencyExpression, PairFamily};
use crate::verify::{run_suite, Suite};

/// Configure the logger from `CONFRACT_LOG`.
pub fn init_logging() {
    let level = match std::env::var("CONFRACT_LOG").as_deref() {
        Ok("quiet") => log::LevelFilter::Off,
        Ok("info") => log::LevelFilter::Info,
        Ok("debug") => log::LevelFilter::Debug,
        _ => log::LevelFilter::Warn,
    };
    let _ = env_logger::Builder::new().filter_level(level).try_init();
}

#[derive(Parser, Debug)]
#[command(
    name = "confract",
    version,
    about = "Conformable fractional Laplace transform calculus",
    long_about = "Forward/inverse conformable Laplace transforms, fractional convolution, \
                  closed-form diffusion solutions and their finite-difference verification. \
                  Grid arguments accept a scalar, an explicit comma-separated list, or \
                  start,stop,count."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    FirstOrder,
    SemiInfinite,
    FiniteMixed,
    DirichletSine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvertMethodArg {
    Residues,
    Bromwich,
    PairTable,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate L_0^α{f} over an s-grid (CSV columns s,Re,Im)
    Transform {
        /// Time-domain expression in t and u (u = t^α/α)
        #[arg(long)]
        f: String,
        #[arg(long)]
        alpha: f64,
        /// s-grid: scalar, list, or start,stop,count
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 512)]
        quad_nodes: usize,
        /// Truncation of the u-integral (default derived from the s-grid)
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Invert a rational F(s) over a t-grid (CSV columns t,f)
    Invert {
        /// Rational expression in s, e.g. "1/(s*(s+1))"
        #[arg(long)]
        rational: String,
        #[arg(long)]
        alpha: f64,
        /// t-grid: scalar, list, or start,stop,count
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value_t = InvertMethodArg::Residues)]
        method: InvertMethodArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Fractional convolution of two expressions over a t-grid (CSV t,value)
    Convolve {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 512)]
        quad_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Evaluate a closed-form diffusion solution on an (x, t) grid
    Solve {
        #[arg(long, value_enum)]
        problem: Option<ProblemArg>,
        #[arg(long)]
        alpha: Option<f64>,
        /// Diffusivity κ
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        /// Domain length (finite-mixed)
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        /// Boundary level U (finite-mixed)
        #[arg(long, default_value_t = 1.0)]
        boundary_level: f64,
        /// Boundary data expression f(t) (semi-infinite; default "1")
        #[arg(long)]
        f: Option<String>,
        /// x-grid: scalar, list, or start,stop,count
        #[arg(long)]
        x: Option<String>,
        /// Shortcut: n nodes across the problem's natural domain
        #[arg(long)]
        x_nodes: Option<usize>,
        /// t-grid: scalar, list, or start,stop,count
        #[arg(long)]
        t: Option<String>,
        #[arg(long, default_value_t = 200)]
        series_terms: usize,
        #[arg(long, default_value_t = 512)]
        quad_nodes: usize,
        /// Re-emit a previously written field instead of solving
        #[arg(long)]
        from_csv: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Run a named invariant suite and emit its JSON report
    Verify {
        /// calculus | transform | inverse | convolution | diffusion | oracle
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the closed-form pair table
    Table {
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
    },
}

/// Exit status of a verification run: 0 when every check passed, 5 otherwise.
pub fn verify_exit_code(pass: bool) -> i32 {
    if pass {
        0
    } else {
        5
    }
}

/// Parse args, dispatch, and map failures onto the exit-code contract.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return 2;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    log::info!("dispatching {}", command_name(&command));
    match command {
        Command::Transform {
            f,
            alpha,
            s,
            quad_nodes,
            t_max,
            out,
            format,
        } => {
            let alpha = FractionalOrder::new(alpha)?;
            let func = expression_function(&f, alpha)?;
            let s_grid = parse_grid(&s)?;
            let s_min = s_grid.iter().copied().fold(f64::INFINITY, f64::min);
            let default_quad = QuadratureSpec::for_transform(s_min, 0.0);
            let quad = QuadratureSpec::new(
                t_max.unwrap_or(default_quad.t_max),
                quad_nodes,
                QuadScheme::TransformedGauss,
            )?;
            let mut rows = Vec::with_capacity(s_grid.len());
            for &sv in &s_grid {
                let value = forward_transform(&func, alpha, Complex64::new(sv, 0.0), &quad)?;
                rows.push((sv, value.re, value.im));
            }
            let content = match format {
                OutputFormat::Csv => {
                    let mut text = String::new();
                    text.push_str("# confract-transform v1\n");
                    text.push_str(&format!("# alpha: {:.16e}\n", alpha.get()));
                    text.push_str(&format!("# f: {f}\n"));
                    text.push_str("s,Re,Im\n");
                    for (sv, re, im) in &rows {
                        text.push_str(&format!("{sv:.16e},{re:.16e},{im:.16e}\n"));
                    }
                    text
                }
                OutputFormat::Json => {
                    #[derive(serde::Serialize)]
                    struct Row {
                        s: f64,
                        re: f64,
                        im: f64,
                    }
                    #[derive(serde::Serialize)]
                    struct Doc {
                        alpha: f64,
                        f: String,
                        rows: Vec<Row>,
                    }
                    let doc = Doc {
                        alpha: alpha.get(),
                        f,
                        rows: rows.iter().map(|&(s, re, im)| Row { s, re, im }).collect(),
                    };
                    serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
                }
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Command::Invert {
            rational,
            alpha,
            t,
            method,
            out,
            format,
        } => {
            let alpha = FractionalOrder::new(alpha)?;
            let fexpr = FrequencyExpression::from_rational_text(&rational)?;
            let t_grid = parse_grid(&t)?;
            let mut rows = Vec::with_capacity(t_grid.len());
            match method {
                InvertMethodArg::Residues => {
                    let poles = partial_fractions(&fexpr)?;
                    for &tv in &t_grid {
                        rows.push((tv, invert_residues(&poles, alpha, tv)?));
                    }
                }
                InvertMethodArg::Bromwich => {
                    for &tv in &t_grid {
                        let spec = BromwichSpec::default_for(&fexpr, alpha, tv)?;
                        rows.push((tv, invert_bromwich(&fexpr, alpha, tv, &spec)?));
                    }
                }
                InvertMethodArg::PairTable => {
                    for &tv in &t_grid {
                        rows.push((
                            tv,
                            invert_via_classical(&fexpr, alpha, tv, InversionMethod::PairTable)?,
                        ));
                    }
                }
            }
            let content = match format {
                OutputFormat::Csv => {
                    let mut text = String::new();
                    text.push_str("# confract-invert v1\n");
                    text.push_str(&format!("# alpha: {:.16e}\n", alpha.get()));
                    text.push_str(&format!("# rational: {rational}\n"));
                    text.push_str("t,f\n");
                    for (tv, fv) in &rows {
                        text.push_str(&format!("{tv:.16e},{fv:.16e}\n"));
                    }
                    text
                }
                OutputFormat::Json => {
                    #[derive(serde::Serialize)]
                    struct Row {
                        t: f64,
                        f: f64,
                    }
                    #[derive(serde::Serialize)]
                    struct Doc {
                        alpha: f64,
                        rational: String,
                        rows: Vec<Row>,
                    }
                    let doc = Doc {
                        alpha: alpha.get(),
                        rational,
                        rows: rows.iter().map(|&(t, f)| Row { t, f }).collect(),
                    };
                    serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
                }
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Command::Convolve {
            f,
            g,
            alpha,
            t,
            quad_nodes,
            out,
            format,
        } => {
            let alpha = FractionalOrder::new(alpha)?;
            let ff = expression_function(&f, alpha)?;
            let gg = expression_function(&g, alpha)?;
            let quad = QuadratureSpec::new(40.0, quad_nodes, QuadScheme::TransformedGauss)?;
            let t_grid = parse_grid(&t)?;
            let mut rows = Vec::with_capacity(t_grid.len());
            for &tv in &t_grid {
                rows.push((tv, conv_alpha(&ff, &gg, alpha, tv, &quad)?));
            }
            let content = match format {
                OutputFormat::Csv => {
                    let mut text = String::new();
                    text.push_str("# confract-convolve v1\n");
                    text.push_str(&format!("# alpha: {:.16e}\n", alpha.get()));
                    text.push_str(&format!("# f: {f}\n# g: {g}\n"));
                    text.push_str("t,value\n");
                    for (tv, v) in &rows {
                        text.push_str(&format!("{tv:.16e},{v:.16e}\n"));
                    }
                    text
                }
                OutputFormat::Json => {
                    #[derive(serde::Serialize)]
                    struct Row {
                        t: f64,
                        value: f64,
                    }
                    #[derive(serde::Serialize)]
                    struct Doc {
                        alpha: f64,
                        f: String,
                        g: String,
                        rows: Vec<Row>,
                    }
                    let doc = Doc {
                        alpha: alpha.get(),
                        f,
                        g,
                        rows: rows.iter().map(|&(t, value)| Row { t, value }).collect(),
                    };
                    serde_json::to_string_pretty(&doc).expect("serializes") + "\n"
                }
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Command::Solve {
            problem,
            alpha,
            kappa,
            length,
            boundary_level,
            f,
            x,
            x_nodes,
            t,
            series_terms,
            quad_nodes,
            from_csv,
            out,
            format,
        } => {
            let field = if let Some(path) = from_csv {
                let file = std::fs::File::open(path)?;
                SpaceTimeField::read_csv(std::io::BufReader::new(file))?
            } else {
                let problem_arg = problem.ok_or_else(|| {
                    Error::Domain("--problem is required unless --from-csv is given".into())
                })?;
                let alpha = FractionalOrder::new(alpha.ok_or_else(|| {
                    Error::Domain("--alpha is required unless --from-csv is given".into())
                })?)?;
                let problem = match problem_arg {
                    ProblemArg::FirstOrder => DiffusionProblem::FirstOrder { alpha },
                    ProblemArg::DirichletSine => DiffusionProblem::DirichletSine { alpha },
                    ProblemArg::FiniteMixed => {
                        DiffusionProblem::finite_mixed(alpha, kappa, length, boundary_level)?
                    }
                    ProblemArg::SemiInfinite => {
                        let text = f.as_deref().unwrap_or("1");
                        DiffusionProblem::semi_infinite(
                            alpha,
                            kappa,
                            expression_function(text, alpha)?,
                        )?
                    }
                };
                let x_grid = match (&x, x_nodes) {
                    (Some(spec), _) => parse_grid(spec)?,
                    (None, Some(n)) => {
                        let (lo, hi) = problem.default_x_span();
                        linspace(lo, hi, n)?
                    }
                    (None, None) => {
                        return Err(Error::Domain("provide --x or --x-nodes".into()));
                    }
                };
                let t_grid = parse_grid(t.as_deref().ok_or_else(|| {
                    Error::Domain("--t is required unless --from-csv is given".into())
                })?)?;
                let series = SeriesSpec::new(series_terms, 1e-12)?;
                let quad = QuadratureSpec::new(40.0, quad_nodes, QuadScheme::TransformedGauss)?;
                evaluate_field(&problem, &x_grid, &t_grid, &series, &quad)?
            };
            let content = match format {
                OutputFormat::Csv => {
                    let mut buf = Vec::new();
                    field.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("csv is utf8")
                }
                OutputFormat::Json => field.to_json() + "\n",
            };
            write_output(&out, &content)?;
            Ok(0)
        }
        Command::Verify { suite, seed, out } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, seed);
            let content = serde_json::to_string_pretty(&report).expect("serializes") + "\n";
            write_output(&out, &content)?;
            Ok(verify_exit_code(report.pass))
        }
        Command::Table { alpha } => {
            let alpha = FractionalOrder::new(alpha)?;
            let mut text = String::new();
            text.push_str(&format!("pair table at alpha = {}\n", alpha.get()));
            text.push_str("family          f(t)            F(s)              Re(s) >\n");
            for entry in pair_table(alpha) {
                let (family, time, freq, region) = render_pair(&entry.family);
                text.push_str(&format!("{family:<15} {time:<15} {freq:<17} {region}\n"));
            }
            text.push_str(
                "sin/cos entries use the classical normalization: L{sin(λu)} = λ/(s²+λ²), \
                 L{cos(λu)} = s/(s²+λ²)\n",
            );
            write_output(&None, &text)?;
            Ok(0)
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Transform { .. } => "transform",
        Command::Invert { .. } => "invert",
        Command::Convolve { .. } => "convolve",
        Command::Solve { .. } => "solve",
        Command::Verify { .. } => "verify",
        Command::Table { .. } => "table",
    }
}

fn render_pair(family: &PairFamily) -> (String, String, String, String) {
    match family {
        PairFamily::Const => ("const".into(), "1".into(), "1/s".into(), "0".into()),
        PairFamily::ExpEigen(l) => (
            format!("exp({l})"),
            format!("exp({l}·u)"),
            if *l < 0.0 {
                format!("1/(s+{})", -l)
            } else {
                format!("1/(s-{l})")
            },
            format!("{l}"),
        ),
        PairFamily::SinEigen(l) => (
            format!("sin({l})"),
            format!("sin({l}·u)"),
            format!("{l}/(s²+{})", l * l),
            "0".into(),
        ),
        PairFamily::CosEigen(l) => (
            format!("cos({l})"),
            format!("cos({l}·u)"),
            format!("s/(s²+{})", l * l),
            "0".into(),
        ),
        PairFamily::PowerAlpha(k) => {
            let factorial: u64 = (1..=*k as u64).product::<u64>().max(1);
            (
                format!("power({k})"),
                format!("u^{k}"),
                format!("{factorial}/s^{}", k + 1),
                "0".into(),
            )
        }
    }
}

fn expression_function(text: &str, alpha: FractionalOrder) -> Result<TimeFunction> {
    let ast = parse_expression(text)?;
    Ok(TimeFunction::new(move |t| ast.eval(t, alpha).map_or(f64::NAN, |v| v)).with_source(text))
}

fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "grids need at least 2 nodes, got {n}"
        )));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| lo + i as f64 * step).collect())
}

/// Grid syntax: a scalar, an explicit comma-separated list, or exactly
/// three values read as start,stop,count.
fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let values: Vec<f64> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::Domain(format!("bad grid component `{part}`")))
        })
        .collect::<Result<_>>()?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("grid components must be finite".into()));
    }
    if values.len() == 3 {
        let count = values[2];
        if count.fract() != 0.0 || count < 2.0 {
            return Err(Error::Domain(format!(
                "start,stop,count grids need an integer count >= 2, got {count}"
            )));
        }
        return linspace(values[0], values[1], count as usize);
    }
    if values.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    Ok(values)
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("2.5").unwrap(), vec![2.5]);
        assert_eq!(parse_grid("0,1").unwrap(), vec![0.0, 1.0]);
        assert_eq!(
            parse_grid("0,1,5").unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(parse_grid("1,2,4,8").unwrap(), vec![1.0, 2.0, 4.0, 8.0]);
        assert!(parse_grid("0,1,2.5").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn run_maps_clap_usage_errors_to_2() {
        assert_eq!(run(["confract", "no-such-command"]), 2);
        assert_eq!(run(["confract"]), 2);
    }

    #[test]
    fn expression_errors_map_to_2() {
        let code = run([
            "confract",
            "transform",
            "--f",
            "exp(-u",
            "--alpha",
            "0.5",
            "--s",
            "2",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn domain_errors_map_to_3() {
        let code = run([
            "confract",
            "transform",
            "--f",
            "1",
            "--alpha",
            "1.5",
            "--s",
            "2",
        ]);
        assert_eq!(code, 3);
    }
}
