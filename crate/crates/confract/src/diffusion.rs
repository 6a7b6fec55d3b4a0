//! Closed-form evaluators for the four fractional initial-boundary value
//! problems, plus the sampled-field container and its CSV/JSON formats.
//!
//! Every solution depends on time only through u = t^α/α:
//!
//! - transport: u(x,t) = x·(1 - e^{-u})
//! - semi-infinite diffusion: boundary data f convolved with the kernel
//!   g(t) = x/(2√(πκ))·u^{-3/2}·e^{-x²/(4κu)}, or equivalently the
//!   similarity integral (2/√π)∫ f(·) e^{-λ²} dλ
//! - finite medium, mixed boundary: the odd-harmonic sine series
//! - Dirichlet problem on (0, π): sin(x)·e^{-u}

use std::io::{BufRead, Write};

use crate::calculus::{FractionalOrder, TimeFunction};
use crate::conv::conv_alpha;
use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, integrate_graded_lower, QuadratureSpec};

/// Problem selector with the data each kind requires.
#[derive(Debug, Clone)]
pub enum DiffusionProblem {
    /// T_α u + x u_x = x on x > 0, u(x,0) = 0, u(0,t) = 0.
    FirstOrder { alpha: FractionalOrder },
    /// T_α u = κ u_xx on x > 0 with u(0,t) = f(t), u(x,0) = 0, u → 0 at ∞.
    SemiInfinite {
        alpha: FractionalOrder,
        kappa: f64,
        boundary: TimeFunction,
    },
    /// T_α u = κ u_xx on (0, a) with u(0,t) = U, u_x(a,t) = 0, u(x,0) = 0.
    FiniteMixed {
        alpha: FractionalOrder,
        kappa: f64,
        length: f64,
        level: f64,
    },
    /// T_α u = u_xx on (0, π) with u(x,0) = sin x, u(0,t) = u(π,t) = 0.
    DirichletSine { alpha: FractionalOrder },
}

impl DiffusionProblem {
    pub fn semi_infinite(
        alpha: FractionalOrder,
        kappa: f64,
        boundary: TimeFunction,
    ) -> Result<Self> {
        if !(kappa > 0.0) {
            return Err(Error::Domain(format!(
                "diffusivity must be positive, got {kappa}"
            )));
        }
        Ok(Self::SemiInfinite {
            alpha,
            kappa,
            boundary,
        })
    }

    pub fn finite_mixed(
        alpha: FractionalOrder,
        kappa: f64,
        length: f64,
        level: f64,
    ) -> Result<Self> {
        if !(kappa > 0.0) {
            return Err(Error::Domain(format!(
                "diffusivity must be positive, got {kappa}"
            )));
        }
        if !(length > 0.0) {
            return Err(Error::Domain(format!(
                "domain length must be positive, got {length}"
            )));
        }
        Ok(Self::FiniteMixed {
            alpha,
            kappa,
            length,
            level,
        })
    }

    pub fn alpha(&self) -> FractionalOrder {
        match self {
            Self::FirstOrder { alpha }
            | Self::SemiInfinite { alpha, .. }
            | Self::FiniteMixed { alpha, .. }
            | Self::DirichletSine { alpha } => *alpha,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::FirstOrder { .. } => "first-order",
            Self::SemiInfinite { .. } => "semi-infinite",
            Self::FiniteMixed { .. } => "finite-mixed",
            Self::DirichletSine { .. } => "dirichlet-sine",
        }
    }

    /// Spatial interval natural to the problem (unbounded kinds get a
    /// working window for grid construction).
    pub fn default_x_span(&self) -> (f64, f64) {
        match self {
            Self::FirstOrder { .. } => (0.0, 2.0),
            Self::SemiInfinite { .. } => (0.0, 2.0),
            Self::FiniteMixed { length, .. } => (0.0, *length),
            Self::DirichletSine { .. } => (0.0, std::f64::consts::PI),
        }
    }
}

/// Series truncation control for the finite-medium solution.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSpec {
    pub n_terms: usize,
    pub tail_tol: f64,
}

impl SeriesSpec {
    pub fn new(n_terms: usize, tail_tol: f64) -> Result<Self> {
        if n_terms == 0 {
            return Err(Error::Domain("series needs at least one term".into()));
        }
        if !(tail_tol > 0.0) {
            return Err(Error::Domain(format!(
                "tail tolerance must be positive, got {tail_tol}"
            )));
        }
        Ok(Self { n_terms, tail_tol })
    }
}

impl Default for SeriesSpec {
    fn default() -> Self {
        Self {
            n_terms: 200,
            tail_tol: 1e-12,
        }
    }
}

/// Transport solution x·(1 - e^{-u}).
pub fn solve_first_order(x: f64, t: f64, alpha: FractionalOrder) -> f64 {
    x * (1.0 - (-alpha.u_of_t(t)).exp())
}

/// Diffusion kernel x/(2√(πκ))·u^{-3/2}·e^{-x²/(4κu)}, evaluated in log
/// space; underflow far in the tail returns 0.
pub fn semi_infinite_kernel(x: f64, t: f64, alpha: FractionalOrder, kappa: f64) -> f64 {
    let u = alpha.u_of_t(t);
    kernel_of_u(x, u, kappa)
}

fn kernel_of_u(x: f64, u: f64, kappa: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    let log_value = x.ln()
        - (2.0f64).ln()
        - 0.5 * (std::f64::consts::PI * kappa).ln()
        - 1.5 * u.ln()
        - x * x / (4.0 * kappa * u);
    if log_value < -745.0 {
        0.0
    } else {
        log_value.exp()
    }
}

/// Evaluation route for the semi-infinite solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiInfiniteRoute {
    /// (f *_α g)(t) with the diffusion kernel.
    Convolution,
    /// (2/√π)·∫_{λ₀}^∞ f((t^α - αx²/(4κλ²))^{1/α}) e^{-λ²} dλ with
    /// λ₀ = x√α/(2√(κ t^α)).
    Similarity,
}

/// Gaussian tail cut: e^{-λ²} < 1e-16 beyond.
const LAMBDA_CUT: f64 = 6.1;

/// Semi-infinite solution by the chosen route.
pub fn solve_semi_infinite(
    x: f64,
    t: f64,
    alpha: FractionalOrder,
    kappa: f64,
    boundary: &TimeFunction,
    route: SemiInfiniteRoute,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("solution requires x >= 0, got {x}")));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("solution requires t >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(if x == 0.0 { boundary.eval(0.0) } else { 0.0 });
    }
    match route {
        SemiInfiniteRoute::Convolution => {
            let u = alpha.u_of_t(t);
            // split at y = 0.9u; the kernel factor is analytic inside and
            // concentrates toward y = u, where adaptive refinement takes over
            let split = 0.9 * u;
            let mut integrand =
                |y: f64| boundary.eval(alpha.t_of_u(y)) * kernel_of_u(x, u - y, kappa);
            let smooth = integrate_graded_lower(
                &mut integrand,
                0.0,
                split,
                quad.grading_levels(),
                quad.nodes_per_panel(),
            );
            let peak = adaptive_simpson(&mut integrand, split, u, 1e-11, 52)?;
            let v = smooth + peak;
            if !v.is_finite() {
                return Err(Error::Evaluation { t });
            }
            Ok(v)
        }
        SemiInfiniteRoute::Similarity => {
            // lower limit in log space to survive tiny t
            let a = alpha.get();
            let log_lambda0 =
                x.ln() + 0.5 * a.ln() - (2.0f64).ln() - 0.5 * (kappa.ln() + a * t.ln());
            if log_lambda0 >= LAMBDA_CUT.ln() {
                return Ok(0.0);
            }
            let lambda0 = log_lambda0.exp();
            let ratio2 = |lam: f64| {
                let r = lambda0 / lam;
                r * r
            };
            // argument (t^α - αx²/(4κλ²))^{1/α} = t·(1 - (λ₀/λ)²)^{1/α},
            // evaluated exclusive of the lower limit
            let mut integrand = |lam: f64| {
                let arg = t * (1.0 - ratio2(lam)).max(0.0).powf(1.0 / a);
                boundary.eval(arg) * (-lam * lam).exp()
            };
            let v = integrate_graded_lower(
                &mut integrand,
                lambda0,
                LAMBDA_CUT.max(lambda0 * 4.0),
                quad.grading_levels(),
                quad.nodes_per_panel(),
            ) * 2.0
                / std::f64::consts::PI.sqrt();
            if !v.is_finite() {
                return Err(Error::Evaluation { t });
            }
            Ok(v)
        }
    }
}

/// Compute both routes, surface any disagreement beyond 1e-4 relative,
/// and return the similarity value.
pub fn solve_semi_infinite_checked(
    x: f64,
    t: f64,
    alpha: FractionalOrder,
    kappa: f64,
    boundary: &TimeFunction,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let conv = solve_semi_infinite(
        x,
        t,
        alpha,
        kappa,
        boundary,
        SemiInfiniteRoute::Convolution,
        quad,
    )?;
    let sim = solve_semi_infinite(
        x,
        t,
        alpha,
        kappa,
        boundary,
        SemiInfiniteRoute::Similarity,
        quad,
    )?;
    let tol = 1e-4;
    if (conv - sim).abs() > tol * (1.0 + conv.abs().max(sim.abs())) {
        return Err(Error::RouteDisagreement {
            lhs: conv,
            rhs: sim,
            tol,
        });
    }
    Ok(sim)
}

/// Finite-medium mixed-boundary solution
/// U·[1 - (4/π)·Σ (2n-1)⁻¹ sin((2n-1)πx/(2a)) e^{-κ((2n-1)π/(2a))² u}],
/// truncated when the next term bound drops below `tail_tol`.
pub fn solve_finite_mixed(
    x: f64,
    t: f64,
    alpha: FractionalOrder,
    kappa: f64,
    length: f64,
    level: f64,
    series: &SeriesSpec,
) -> Result<f64> {
    if !(0.0..=length).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, {length}]")));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "series solution requires t > 0, got {t}"
        )));
    }
    let u = alpha.u_of_t(t);
    let mut sum = 0.0;
    let mut last_bound = f64::INFINITY;
    for n in 1..=series.n_terms {
        let m = (2 * n - 1) as f64;
        let mode = m * std::f64::consts::PI / (2.0 * length);
        let decay = (-kappa * mode * mode * u).exp();
        sum += decay * (mode * x).sin() / m;
        // bound for the next term, sine replaced by 1
        let m_next = m + 2.0;
        let mode_next = m_next * std::f64::consts::PI / (2.0 * length);
        last_bound = (-kappa * mode_next * mode_next * u).exp() / m_next;
        if last_bound < series.tail_tol {
            return Ok(level * (1.0 - 4.0 / std::f64::consts::PI * sum));
        }
    }
    Err(Error::SeriesTruncation {
        last_term: last_bound,
    })
}

/// Dirichlet solution sin(x)·e^{-u}.
pub fn solve_dirichlet_sine(x: f64, t: f64, alpha: FractionalOrder) -> f64 {
    x.sin() * (-alpha.u_of_t(t)).exp()
}

/// Serializable problem metadata for field artifacts.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ProblemMeta {
    pub problem: String,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<String>,
}

impl ProblemMeta {
    pub fn of(problem: &DiffusionProblem) -> Self {
        let base = Self {
            problem: problem.kind_name().to_string(),
            alpha: problem.alpha().get(),
            kappa: None,
            length: None,
            level: None,
            boundary: None,
        };
        match problem {
            DiffusionProblem::FirstOrder { .. } | DiffusionProblem::DirichletSine { .. } => base,
            DiffusionProblem::SemiInfinite {
                kappa, boundary, ..
            } => Self {
                kappa: Some(*kappa),
                boundary: Some(boundary.source().unwrap_or("<custom>").to_string()),
                ..base
            },
            DiffusionProblem::FiniteMixed {
                kappa,
                length,
                level,
                ..
            } => Self {
                kappa: Some(*kappa),
                length: Some(*length),
                level: Some(*level),
                ..base
            },
        }
    }
}

/// Sampled solution u(x, t) on a rectangular grid; `values[i][j]` pairs
/// `x_grid[i]` with `t_grid[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    pub x_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub meta: ProblemMeta,
}

impl SpaceTimeField {
    pub fn new(
        x_grid: Vec<f64>,
        t_grid: Vec<f64>,
        values: Vec<Vec<f64>>,
        meta: ProblemMeta,
    ) -> Result<Self> {
        if !strictly_increasing(&x_grid) || !strictly_increasing(&t_grid) {
            return Err(Error::Domain("grids must be strictly increasing".into()));
        }
        if values.len() != x_grid.len() || values.iter().any(|row| row.len() != t_grid.len()) {
            return Err(Error::Domain(
                "value matrix does not match the grids".into(),
            ));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Domain("field contains non-finite values".into()));
        }
        Ok(Self {
            x_grid,
            t_grid,
            values,
            meta,
        })
    }

    /// CSV with '#'-prefixed metadata, then `x,t,u` rows in x-major order,
    /// 17 significant digits.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "# confract-field v1")?;
        writeln!(w, "# problem: {}", self.meta.problem)?;
        writeln!(w, "# alpha: {:.16e}", self.meta.alpha)?;
        if let Some(kappa) = self.meta.kappa {
            writeln!(w, "# kappa: {kappa:.16e}")?;
        }
        if let Some(length) = self.meta.length {
            writeln!(w, "# length: {length:.16e}")?;
        }
        if let Some(level) = self.meta.level {
            writeln!(w, "# level: {level:.16e}")?;
        }
        if let Some(boundary) = &self.meta.boundary {
            writeln!(w, "# boundary: {boundary}")?;
        }
        writeln!(w, "x,t,u")?;
        for (i, &x) in self.x_grid.iter().enumerate() {
            for (j, &t) in self.t_grid.iter().enumerate() {
                writeln!(w, "{x:.16e},{t:.16e},{:.16e}", self.values[i][j])?;
            }
        }
        Ok(())
    }

    /// Parse the CSV format produced by [`Self::write_csv`].
    pub fn read_csv(r: impl BufRead) -> Result<Self> {
        let mut meta = ProblemMeta {
            problem: String::new(),
            alpha: f64::NAN,
            kappa: None,
            length: None,
            level: None,
            boundary: None,
        };
        let mut xs: Vec<f64> = Vec::new();
        let mut ts: Vec<f64> = Vec::new();
        let mut triples: Vec<(f64, f64, f64)> = Vec::new();
        let mut saw_header = false;
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('#') {
                if let Some((key, value)) = rest.split_once(':') {
                    let value = value.trim();
                    match key.trim() {
                        "problem" => meta.problem = value.to_string(),
                        "alpha" => meta.alpha = parse_num(value, lineno)?,
                        "kappa" => meta.kappa = Some(parse_num(value, lineno)?),
                        "length" => meta.length = Some(parse_num(value, lineno)?),
                        "level" => meta.level = Some(parse_num(value, lineno)?),
                        "boundary" => meta.boundary = Some(value.to_string()),
                        _ => {}
                    }
                }
                continue;
            }
            if trimmed == "x,t,u" {
                saw_header = true;
                continue;
            }
            let mut parts = trimmed.split(',');
            let x = parse_num(parts.next().unwrap_or(""), lineno)?;
            let t = parse_num(parts.next().unwrap_or(""), lineno)?;
            let u = parse_num(parts.next().unwrap_or(""), lineno)?;
            if !xs.contains(&x) {
                xs.push(x);
            }
            if !ts.contains(&t) {
                ts.push(t);
            }
            triples.push((x, t, u));
        }
        if !saw_header || triples.is_empty() {
            return Err(Error::Domain("CSV lacks an x,t,u section".into()));
        }
        if triples.len() != xs.len() * ts.len() {
            return Err(Error::Domain(format!(
                "expected {} rows for a {}x{} grid, found {}",
                xs.len() * ts.len(),
                xs.len(),
                ts.len(),
                triples.len()
            )));
        }
        let mut values = vec![vec![0.0; ts.len()]; xs.len()];
        for (idx, &(_, _, u)) in triples.iter().enumerate() {
            values[idx / ts.len()][idx % ts.len()] = u;
        }
        Self::new(xs, ts, values, meta)
    }

    /// JSON document: problem metadata, grids, row-major values.
    pub fn to_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct FieldJson<'a> {
            problem: &'a ProblemMeta,
            x_grid: &'a [f64],
            t_grid: &'a [f64],
            values: Vec<f64>,
        }
        serde_json::to_string_pretty(&FieldJson {
            problem: &self.meta,
            x_grid: &self.x_grid,
            t_grid: &self.t_grid,
            values: self.values.iter().flatten().copied().collect(),
        })
        .expect("field serializes")
    }
}

fn parse_num(text: &str, lineno: usize) -> Result<f64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Domain(format!("line {}: bad number `{text}`", lineno + 1)))
}

fn strictly_increasing(xs: &[f64]) -> bool {
    !xs.is_empty() && xs.windows(2).all(|w| w[0] < w[1])
}

/// Dense evaluation of the kind-appropriate solver over a grid;
/// deterministic for fixed specs.
pub fn evaluate_field(
    problem: &DiffusionProblem,
    x_grid: &[f64],
    t_grid: &[f64],
    series: &SeriesSpec,
    quad: &QuadratureSpec,
) -> Result<SpaceTimeField> {
    let alpha = problem.alpha();
    let mut values = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let mut row = Vec::with_capacity(t_grid.len());
        for &t in t_grid {
            let v = match problem {
                DiffusionProblem::FirstOrder { .. } => {
                    if x < 0.0 || t < 0.0 {
                        return Err(Error::Domain(format!("({x}, {t}) outside the domain")));
                    }
                    solve_first_order(x, t, alpha)
                }
                DiffusionProblem::SemiInfinite {
                    kappa, boundary, ..
                } => solve_semi_infinite(
                    x,
                    t,
                    alpha,
                    *kappa,
                    boundary,
                    SemiInfiniteRoute::Similarity,
                    quad,
                )?,
                DiffusionProblem::FiniteMixed {
                    kappa,
                    length,
                    level,
                    ..
                } => solve_finite_mixed(x, t, alpha, *kappa, *length, *level, series)?,
                DiffusionProblem::DirichletSine { .. } => {
                    if !(0.0..=std::f64::consts::PI + 1e-12).contains(&x) {
                        return Err(Error::Domain(format!("x = {x} outside [0, π]")));
                    }
                    solve_dirichlet_sine(x, t, alpha)
                }
            };
            row.push(v);
        }
        values.push(row);
    }
    SpaceTimeField::new(
        x_grid.to_vec(),
        t_grid.to_vec(),
        values,
        ProblemMeta::of(problem),
    )
}

/// Convolution-route evaluation used by the route-agreement checks; thin
/// wrapper so callers need not spell the route enum.
pub fn semi_infinite_convolution_route(
    x: f64,
    t: f64,
    alpha: FractionalOrder,
    kappa: f64,
    boundary: &TimeFunction,
    quad: &QuadratureSpec,
) -> Result<f64> {
    // (f *_α g)(t) with the kernel as the second factor, shared with
    // conv_alpha for the generic algebra; the dedicated route above applies
    // the split-and-refine rule near the kernel peak instead.
    let kernel = TimeFunction::new(move |tt| semi_infinite_kernel(x, tt, alpha, kappa));
    conv_alpha(boundary, &kernel, alpha, t, quad)
}
