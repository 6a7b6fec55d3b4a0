//! Fractional convolution, weighted norms, and the checks for the
//! convolution algebra, the convolution theorem, and the Young inequality.
//!
//! The convolution (f *_α g)(t) = ∫₀ᵗ f(p) g((t^α-p^α)^{1/α}) p^{α-1} dp
//! is always computed in y = p^α/α, where it becomes the classical
//! convolution of f∘φ⁻¹ and g∘φ⁻¹ on [0, u]; commutativity is then
//! structurally exact up to quadrature symmetry.

use num_complex::Complex64;

use crate::calculus::{FractionalOrder, TimeFunction};
use crate::error::{Error, Result};
use crate::quad::{integrate_graded_both, integrate_graded_lower, QuadratureSpec};
use crate::transform::{forward_transform, ComparisonReport};

/// Parameters of the weighted norm ‖f‖ = (∫₀^{t_max} |f|^n t^{α-1} dt)^{1/n}.
#[derive(Debug, Clone, Copy)]
pub struct WeightedNormSpec {
    pub n: f64,
    pub alpha: FractionalOrder,
    pub t_max: f64,
}

impl WeightedNormSpec {
    pub fn new(n: f64, alpha: FractionalOrder, t_max: f64) -> Result<Self> {
        if !(n >= 1.0) {
            return Err(Error::Domain(format!(
                "norm exponent must be >= 1, got {n}"
            )));
        }
        if !(t_max > 0.0) {
            return Err(Error::Domain(format!(
                "truncation must be positive, got {t_max}"
            )));
        }
        Ok(Self { n, alpha, t_max })
    }
}

/// Fractional convolution (f *_α g)(t), computed in the substituted
/// variable where both the p^{α-1} weight and the inner root disappear.
pub fn conv_alpha(
    f: &TimeFunction,
    g: &TimeFunction,
    alpha: FractionalOrder,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "convolution requires t >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let u = alpha.u_of_t(t);
    let mut bad: Option<f64> = None;
    let value = integrate_graded_both(
        |y: f64| {
            let a = f.eval(alpha.t_of_u(y));
            let b = g.eval(alpha.t_of_u(u - y));
            let v = a * b;
            if !v.is_finite() && bad.is_none() {
                bad = Some(y);
            }
            v
        },
        0.0,
        u,
        quad.grading_levels(),
        quad.nodes_per_panel(),
    );
    if let Some(y) = bad {
        return Err(Error::Evaluation { t: alpha.t_of_u(y) });
    }
    Ok(value)
}

/// Weighted norm, with the endpoint weight removed by the u-substitution.
/// Errs when the truncated integral is not finite (the norm diverges).
pub fn weighted_norm(
    f: &TimeFunction,
    spec: &WeightedNormSpec,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let u_max = spec.alpha.u_of_t(spec.t_max);
    let n = spec.n;
    let mut bad: Option<f64> = None;
    let integral = integrate_graded_lower(
        |y: f64| {
            let v = f.eval(spec.alpha.t_of_u(y)).abs().powf(n);
            if !v.is_finite() && bad.is_none() {
                bad = Some(y);
            }
            v
        },
        0.0,
        u_max,
        quad.grading_levels(),
        quad.nodes_per_panel(),
    );
    if let Some(y) = bad {
        return Err(Error::Evaluation {
            t: spec.alpha.t_of_u(y),
        });
    }
    if !integral.is_finite() {
        return Err(Error::Domain(
            "weighted norm diverged on the truncated interval; the inequality is vacuous".into(),
        ));
    }
    Ok(integral.powf(1.0 / n))
}

/// Algebraic laws of the convolution operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvolutionLaw {
    Commutativity,
    Associativity,
    Distributivity,
    Scalar,
}

/// Nested-quadrature budget for the inner convolution of associativity
/// checks; bounds cost at the price of a wider tolerance.
const INNER_NODE_CAP: usize = 128;

/// Check one algebra law at time t, evaluating each side by independent
/// `conv_alpha` calls. The `h` operand participates in associativity and
/// distributivity; `c` in the scalar law.
#[allow(clippy::too_many_arguments)]
pub fn check_convolution_algebra(
    law: ConvolutionLaw,
    f: &TimeFunction,
    g: &TimeFunction,
    h: &TimeFunction,
    c: f64,
    alpha: FractionalOrder,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<ComparisonReport> {
    let re = |x: f64| Complex64::new(x, 0.0);
    match law {
        ConvolutionLaw::Commutativity => {
            let lhs = conv_alpha(f, g, alpha, t, quad)?;
            let rhs = conv_alpha(g, f, alpha, t, quad)?;
            Ok(ComparisonReport::new(re(lhs), re(rhs)))
        }
        ConvolutionLaw::Associativity => {
            let inner_quad = QuadratureSpec {
                n_nodes: INNER_NODE_CAP,
                ..*quad
            };
            let gh = {
                let (g, h) = (g.clone(), h.clone());
                TimeFunction::new(move |tt| {
                    conv_alpha(&g, &h, alpha, tt, &inner_quad).unwrap_or(f64::NAN)
                })
            };
            let fg = {
                let (f, g) = (f.clone(), g.clone());
                TimeFunction::new(move |tt| {
                    conv_alpha(&f, &g, alpha, tt, &inner_quad).unwrap_or(f64::NAN)
                })
            };
            let lhs = conv_alpha(f, &gh, alpha, t, quad)?;
            let rhs = conv_alpha(&fg, h, alpha, t, quad)?;
            Ok(ComparisonReport::new(re(lhs), re(rhs)).with_note(format!(
                "outer {} x inner {} node budget",
                quad.n_nodes, INNER_NODE_CAP
            )))
        }
        ConvolutionLaw::Distributivity => {
            let gh = {
                let (g, h) = (g.clone(), h.clone());
                TimeFunction::new(move |tt| g.eval(tt) + h.eval(tt))
            };
            let lhs = conv_alpha(f, &gh, alpha, t, quad)?;
            let rhs = conv_alpha(f, g, alpha, t, quad)? + conv_alpha(f, h, alpha, t, quad)?;
            Ok(ComparisonReport::new(re(lhs), re(rhs)))
        }
        ConvolutionLaw::Scalar => {
            let cf = {
                let f = f.clone();
                TimeFunction::new(move |tt| c * f.eval(tt))
            };
            let cg = {
                let g = g.clone();
                TimeFunction::new(move |tt| c * g.eval(tt))
            };
            let scaled = c * conv_alpha(f, g, alpha, t, quad)?;
            let left = conv_alpha(&cf, g, alpha, t, quad)?;
            let right = conv_alpha(f, &cg, alpha, t, quad)?;
            // compare c·(f*g) against (cf)*g, and fold the f*(cg) gap into the note
            let report = ComparisonReport::new(re(scaled), re(left));
            let gap = (left - right).abs();
            Ok(report.with_note(format!("(cf)*g vs f*(cg) gap {gap:e}")))
        }
    }
}

/// Check L{f}·L{g} = L{f *_α g} at s.
pub fn check_convolution_theorem(
    f: &TimeFunction,
    g: &TimeFunction,
    alpha: FractionalOrder,
    s: Complex64,
    quad: &QuadratureSpec,
) -> Result<ComparisonReport> {
    let lhs = forward_transform(f, alpha, s, quad)? * forward_transform(g, alpha, s, quad)?;
    let inner_quad = QuadratureSpec {
        n_nodes: quad.n_nodes.min(256),
        ..*quad
    };
    let conv = {
        let (fc, gc) = (f.clone(), g.clone());
        let tf = TimeFunction::new(move |tt| {
            conv_alpha(&fc, &gc, alpha, tt, &inner_quad).unwrap_or(f64::NAN)
        });
        match (f.growth_bound(), g.growth_bound()) {
            // |(f*g)(t)| <= M_f M_g u e^{ru} <= (M_f M_g/ε) e^{(r+ε)u}
            (Some(a), Some(b)) => {
                let eps = 0.05;
                tf.with_growth(a.scale * b.scale / eps, a.rate.max(b.rate) + eps)
            }
            _ => tf,
        }
    };
    let rhs = forward_transform(&conv, alpha, s, quad)?;
    Ok(ComparisonReport::new(lhs, rhs))
}

/// One-sided inequality check result.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs; negative means the inequality failed by that much.
    pub slack: f64,
    pub pass: bool,
}

/// Young inequality ‖f *_α g‖_{L^n_α} <= ‖f‖_{L¹_α}·‖g‖_{L^n_α} over
/// [0, t_max]; `pass` tolerates 1e-6 relative slack for quadrature noise.
pub fn check_young(
    f: &TimeFunction,
    g: &TimeFunction,
    n: f64,
    alpha: FractionalOrder,
    t_max: f64,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    let inner_quad = QuadratureSpec {
        n_nodes: quad.n_nodes.min(256),
        ..*quad
    };
    let conv = {
        let (f, g) = (f.clone(), g.clone());
        TimeFunction::new(move |tt| conv_alpha(&f, &g, alpha, tt, &inner_quad).unwrap_or(f64::NAN))
    };
    let lhs = weighted_norm(&conv, &WeightedNormSpec::new(n, alpha, t_max)?, quad)?;
    let f1 = weighted_norm(f, &WeightedNormSpec::new(1.0, alpha, t_max)?, quad)?;
    let gn = weighted_norm(g, &WeightedNormSpec::new(n, alpha, t_max)?, quad)?;
    let rhs = f1 * gn;
    Ok(InequalityReport {
        lhs,
        rhs,
        slack: rhs - lhs,
        pass: lhs <= rhs * (1.0 + 1e-6),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(v: f64) -> FractionalOrder {
        FractionalOrder::new(v).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn decaying(a: FractionalOrder) -> TimeFunction {
        TimeFunction::new(move |t| (-a.u_of_t(t)).exp()).with_growth(1.0, -1.0)
    }

    #[test]
    fn convolution_of_ones_is_u() {
        // f = g = 1: ∫₀ᵗ p^{α-1} dp = t^α/α
        let one = TimeFunction::constant(1.0);
        let v = conv_alpha(&one, &one, alpha(0.5), 4.0, &QuadratureSpec::default()).unwrap();
        close(v, 4.0, 1e-10);
    }

    #[test]
    fn convolution_with_decaying_exponential() {
        // in the y-variable: ∫₀^u e^{-(u-y)} dy = 1 - e^{-u}
        let a = alpha(0.7);
        let one = TimeFunction::constant(1.0);
        let g = decaying(a);
        let u = a.u_of_t(2.0);
        let v = conv_alpha(&one, &g, a, 2.0, &QuadratureSpec::default()).unwrap();
        close(v, 1.0 - (-u).exp(), 1e-7);
    }

    #[test]
    fn convolution_with_zero_factor() {
        let f = TimeFunction::new(|t: f64| t.sin() + 2.0);
        let zero = TimeFunction::constant(0.0);
        let v = conv_alpha(&f, &zero, alpha(0.4), 3.0, &QuadratureSpec::default()).unwrap();
        close(v, 0.0, 0.0);
    }

    #[test]
    fn weighted_norm_examples() {
        let q = QuadratureSpec::default();
        for &av in &[0.5, 1.0] {
            let a = alpha(av);
            let f = decaying(a);
            // n = 1: ∫ e^{-u} du = 1
            let n1 = weighted_norm(&f, &WeightedNormSpec::new(1.0, a, 100.0).unwrap(), &q).unwrap();
            close(n1, 1.0, 1e-7);
        }
        // n = 2, α = 0.5: sqrt(1/2)
        let a = alpha(0.5);
        let f = decaying(a);
        let n2 = weighted_norm(&f, &WeightedNormSpec::new(2.0, a, 100.0).unwrap(), &q).unwrap();
        close(n2, 0.5f64.sqrt(), 1e-6);

        let zero = TimeFunction::constant(0.0);
        close(
            weighted_norm(&zero, &WeightedNormSpec::new(1.0, a, 10.0).unwrap(), &q).unwrap(),
            0.0,
            0.0,
        );
    }

    #[test]
    fn norm_truncation_is_monotone_for_decaying_inputs() {
        let a = alpha(0.6);
        let f = decaying(a);
        let q = QuadratureSpec::default();
        let n1 = weighted_norm(&f, &WeightedNormSpec::new(1.0, a, 60.0).unwrap(), &q).unwrap();
        let n2 = weighted_norm(&f, &WeightedNormSpec::new(1.0, a, 120.0).unwrap(), &q).unwrap();
        assert!((n2 - n1).abs() < 1e-8);
    }

    #[test]
    fn commutativity_check() {
        let a = alpha(0.6);
        let one = TimeFunction::constant(1.0);
        let g = decaying(a);
        let r = check_convolution_algebra(
            ConvolutionLaw::Commutativity,
            &one,
            &g,
            &TimeFunction::constant(0.0),
            0.0,
            a,
            1.5,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(r.within(1e-7), "{r:?}");
    }

    #[test]
    fn distributivity_with_cancellation() {
        let a = alpha(0.5);
        let f = TimeFunction::new(|t: f64| 1.0 + t);
        let g = decaying(a);
        let neg = {
            let g = g.clone();
            TimeFunction::new(move |t| -g.eval(t))
        };
        let r = check_convolution_algebra(
            ConvolutionLaw::Distributivity,
            &f,
            &g,
            &neg,
            0.0,
            a,
            2.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(r.lhs.norm() < 1e-9, "f*(g-g) should vanish: {r:?}");
        assert!(r.within(1e-9));
    }

    #[test]
    fn scalar_law_scales_the_integral() {
        let a = alpha(0.5);
        let one = TimeFunction::constant(1.0);
        let r = check_convolution_algebra(
            ConvolutionLaw::Scalar,
            &one,
            &one,
            &TimeFunction::constant(0.0),
            3.0,
            a,
            4.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        close(r.lhs.re, 12.0, 1e-8);
        assert!(r.within(1e-9), "{r:?}");
    }

    #[test]
    fn associativity_check() {
        let a = alpha(0.6);
        let f = TimeFunction::constant(1.0);
        let g = decaying(a);
        let h = TimeFunction::new(move |t: f64| (-2.0 * a.u_of_t(t)).exp());
        let r = check_convolution_algebra(
            ConvolutionLaw::Associativity,
            &f,
            &g,
            &h,
            0.0,
            a,
            1.2,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(r.within(1e-5), "{r:?}");
        assert!(r.note.contains("node budget"));
    }

    #[test]
    fn convolution_theorem_cases() {
        let q = QuadratureSpec::default();
        let a = alpha(0.5);
        let one = TimeFunction::constant(1.0);

        // f = g = 1 at s = 2: both sides 1/s² = 1/4
        let r = check_convolution_theorem(&one, &one, a, Complex64::new(2.0, 0.0), &q).unwrap();
        close(r.lhs.re, 0.25, 1e-8);
        assert!(r.within(1e-6), "{r:?}");

        // f = 1, g = e^{-u} at s = 1: 1/(s(s+1)) = 0.5
        let g = decaying(a);
        let r = check_convolution_theorem(&one, &g, a, Complex64::new(1.0, 0.0), &q).unwrap();
        close(r.lhs.re, 0.5, 1e-7);
        assert!(r.within(1e-6), "{r:?}");

        // zero factor
        let zero = TimeFunction::constant(0.0);
        let r = check_convolution_theorem(&zero, &g, a, Complex64::new(1.5, 0.0), &q).unwrap();
        assert!(r.lhs.norm() < 1e-14 && r.rhs.norm() < 1e-12);
    }

    #[test]
    fn young_equality_edge_and_zero() {
        let a = alpha(0.5);
        let q = QuadratureSpec::default();
        let f = decaying(a);
        // f = g = e^{-u}, n = 1: conv is u e^{-u}, both sides 1 (equality)
        let r = check_young(&f, &f, 1.0, a, 200.0, &q).unwrap();
        assert!(r.pass, "{r:?}");
        close(r.lhs, 1.0, 1e-5);
        close(r.rhs, 1.0, 1e-7);

        let zero = TimeFunction::constant(0.0);
        let r = check_young(&zero, &f, 1.0, a, 100.0, &q).unwrap();
        assert!(r.pass && r.lhs == 0.0 && r.rhs == 0.0);
    }

    #[test]
    fn young_rejects_divergent_norms() {
        let a = alpha(0.5);
        let growing = TimeFunction::new(move |t: f64| (2.0 * a.u_of_t(t)).exp());
        // norm of e^{2u} over a large window overflows the n = 1 integral
        let spec = WeightedNormSpec::new(1.0, a, 1e6).unwrap();
        assert!(weighted_norm(&growing, &spec, &QuadratureSpec::default()).is_err());
    }
}
