//! Domain types and the numeric conformable derivative/integral.
//!
//! Everything downstream is built on the substitution `u = t^α/α`: the
//! conformable derivative of order α equals `t^{1-α} f'(t)` for `t > 0`,
//! and the weight `t^{α-1} dt` collapses to `du`. The types here carry α,
//! the substitution maps, and the function-evaluation contract.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, integrate_graded_lower, QuadScheme, QuadratureSpec};

/// A fractional order α restricted to (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    /// Rejects α outside (0, 1]; orders on (n, n+1] for n ≥ 1 are not supported.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::Domain(format!(
                "fractional order must lie in (0, 1], got {alpha}"
            )))
        }
    }

    pub const fn one() -> Self {
        Self(1.0)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// u(t) = t^α/α. Exact pass-through at α = 1.
    pub fn u_of_t(self, t: f64) -> f64 {
        if self.0 == 1.0 {
            t
        } else {
            t.powf(self.0) / self.0
        }
    }

    /// t(u) = (αu)^{1/α}, the inverse of [`Self::u_of_t`].
    pub fn t_of_u(self, u: f64) -> f64 {
        if self.0 == 1.0 {
            u
        } else {
            (self.0 * u).powf(1.0 / self.0)
        }
    }
}

impl fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The map φ_a(t) = (t-a)^α/α and its inverse, bridging conformable and
/// classical transforms with left endpoint `a`.
#[derive(Debug, Clone, Copy)]
pub struct SubstitutionMap {
    alpha: FractionalOrder,
    a: f64,
}

impl SubstitutionMap {
    pub fn new(alpha: FractionalOrder, a: f64) -> Result<Self> {
        if a.is_finite() && a >= 0.0 {
            Ok(Self { alpha, a })
        } else {
            Err(Error::Domain(format!(
                "left endpoint must be >= 0, got {a}"
            )))
        }
    }

    pub fn origin(alpha: FractionalOrder) -> Self {
        Self { alpha, a: 0.0 }
    }

    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    pub fn left_endpoint(&self) -> f64 {
        self.a
    }

    pub fn forward(&self, t: f64) -> f64 {
        self.alpha.u_of_t(t - self.a)
    }

    pub fn inverse(&self, u: f64) -> f64 {
        self.a + self.alpha.t_of_u(u)
    }
}

/// Exponential-order certificate: |f(t)| ≤ scale · e^{rate · t^α/α}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBound {
    pub scale: f64,
    pub rate: f64,
}

/// A time-domain function on t ≥ 0.
///
/// Holds the evaluation contract, an optional expression-grammar source
/// string, and an optional growth certificate. Evaluators must be
/// reentrant: the operations here and in the transform modules may invoke
/// them concurrently from property suites.
#[derive(Clone)]
pub struct TimeFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    source: Option<String>,
    growth: Option<GrowthBound>,
}

impl TimeFunction {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            source: None,
            growth: None,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c).with_growth(c.abs().max(f64::MIN_POSITIVE), 0.0)
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    /// Attach the certificate |f(t)| ≤ scale · e^{rate · t^α/α}.
    pub fn with_growth(mut self, scale: f64, rate: f64) -> Self {
        self.growth = Some(GrowthBound { scale, rate });
        self
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn growth_bound(&self) -> Option<GrowthBound> {
        self.growth
    }

    /// Spot-check of the growth certificate on sample points.
    pub fn respects_growth(&self, alpha: FractionalOrder, samples: &[f64]) -> bool {
        match self.growth {
            None => true,
            Some(GrowthBound { scale, rate }) => samples.iter().all(|&t| {
                self.eval(t).abs() <= scale * (rate * alpha.u_of_t(t)).exp() * (1.0 + 1e-12)
            }),
        }
    }
}

impl fmt::Debug for TimeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TimeFunction")
            .field("source", &self.source)
            .field("growth", &self.growth)
            .finish_non_exhaustive()
    }
}

/// Default finite-difference step for the conformable derivative.
///
/// Proportional to t with an absolute floor; the floor keeps the stencil
/// truncation error subdominant when transform checks probe t far below 1.
pub fn default_step(t: f64) -> f64 {
    (1e-6 * t).max(1e-9)
}

fn sample(f: &TimeFunction, t: f64) -> Result<f64> {
    let v = f.eval(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { t })
    }
}

fn central_difference(f: &TimeFunction, t: f64, h: f64) -> Result<f64> {
    Ok((sample(f, t + h)? - sample(f, t - h)?) / (2.0 * h))
}

/// Conformable derivative T_α f at `t`, by central differencing of f'
/// scaled with t^{1-α}.
///
/// At t = 0 the derivative is a one-sided limit; it is estimated by
/// sampling t^{1-α} f'(t) at t ∈ {h, h/2, h/4} and Richardson-extrapolating.
/// The limit is reported as extrapolated; its existence is not certified.
pub fn conformable_derivative(
    f: &TimeFunction,
    alpha: FractionalOrder,
    t: f64,
    h: f64,
) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "derivative requires t >= 0, got {t}"
        )));
    }
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let a = alpha.get();
    if t == 0.0 {
        let q = |tau: f64| -> Result<f64> {
            let step = default_step(tau).min(0.5 * tau);
            Ok(tau.powf(1.0 - a) * central_difference(f, tau, step)?)
        };
        let g1 = q(h)?;
        let g2 = q(0.5 * h)?;
        let g4 = q(0.25 * h)?;
        // two Richardson levels assuming an O(τ) + O(τ²) approach
        let e1 = 2.0 * g2 - g1;
        let e2 = 2.0 * g4 - g2;
        return Ok((4.0 * e2 - e1) / 3.0);
    }
    // keep the stencil inside [0, ∞)
    let h_eff = h.min(0.5 * t);
    let weight = if a == 1.0 { 1.0 } else { t.powf(1.0 - a) };
    Ok(weight * central_difference(f, t, h_eff)?)
}

/// Conformable integral g(t) = ∫₀ᵗ f(p) p^{β-1} dp.
///
/// The endpoint weight is removed analytically by integrating in
/// v = p^β/β, so the quadrature only sees f composed with the inverse map.
pub fn conformable_integral(
    f: &TimeFunction,
    beta: FractionalOrder,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!("integral requires t >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let v_max = beta.u_of_t(t);
    let mut bad_t = None;
    let mut integrand = |v: f64| {
        let p = beta.t_of_u(v);
        let y = f.eval(p);
        if !y.is_finite() && bad_t.is_none() {
            bad_t = Some(p);
        }
        y
    };
    let value = match quad.scheme {
        QuadScheme::TransformedGauss => integrate_graded_lower(
            &mut integrand,
            0.0,
            v_max,
            quad.grading_levels(),
            quad.nodes_per_panel(),
        ),
        QuadScheme::AdaptiveSimpson => adaptive_simpson(&mut integrand, 0.0, v_max, 1e-12, 48)?,
    };
    if let Some(t_bad) = bad_t {
        return Err(Error::Evaluation { t: t_bad });
    }
    Ok(value)
}

/// n-fold conformable derivative (T_β)ⁿ f at t > 0, by nested central
/// differences. Orders above 4 amplify stencil noise beyond usefulness
/// and are rejected.
pub fn nth_conformable_derivative(
    f: &TimeFunction,
    beta: FractionalOrder,
    n: u32,
    t: f64,
    h: f64,
) -> Result<f64> {
    if n == 0 || n > 4 {
        return Err(Error::UnsupportedOrder { n });
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "nested derivatives require t > 0, got {t}"
        )));
    }
    nested(f, beta, n, t, h)
}

fn nested(f: &TimeFunction, beta: FractionalOrder, n: u32, t: f64, h: f64) -> Result<f64> {
    if n == 1 {
        return conformable_derivative(f, beta, t, h);
    }
    let h_eff = h.min(0.5 * t);
    let hi = nested(f, beta, n - 1, t + h_eff, h)?;
    let lo = nested(f, beta, n - 1, t - h_eff, h)?;
    let b = beta.get();
    let weight = if b == 1.0 { 1.0 } else { t.powf(1.0 - b) };
    Ok(weight * (hi - lo) / (2.0 * h_eff))
}
