//! Quadrature machinery shared by the transform, convolution and solver code.
//!
//! Improper integrals are always evaluated after the substitution that maps
//! the weight `t^(α-1) dt` to `du`, so the integrands seen here live on a
//! finite interval `[0, u_max]` and are at worst mildly non-smooth at the
//! endpoints. Two schemes are offered: composite Gauss-Legendre on panels
//! graded geometrically toward the singular endpoint(s), and an adaptive
//! Simpson fallback that reports its residual estimate on failure.

use std::collections::HashMap;
use std::ops::{Add, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Scalar types the integrators can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Zero {
    fn scale(self, k: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn scale(self, k: f64) -> Self {
        self * k
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Integration scheme selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadScheme {
    /// Gauss-Legendre panels in the substituted variable, graded toward
    /// the endpoint singularities.
    TransformedGauss,
    /// Adaptive Simpson in the substituted variable.
    AdaptiveSimpson,
}

/// Truncation point, node budget and scheme for improper/finite integrals.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct QuadratureSpec {
    /// Truncation of improper integrals, applied in the substituted
    /// variable `u = t^α/α` for transform-type integrals.
    pub t_max: f64,
    pub n_nodes: usize,
    pub scheme: QuadScheme,
}

impl QuadratureSpec {
    pub fn new(t_max: f64, n_nodes: usize, scheme: QuadScheme) -> Result<Self> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::Domain(format!(
                "t_max must be positive, got {t_max}"
            )));
        }
        if n_nodes < 8 {
            return Err(Error::Domain(format!(
                "n_nodes must be >= 8, got {n_nodes}"
            )));
        }
        Ok(Self {
            t_max,
            n_nodes,
            scheme,
        })
    }

    /// Truncation chosen so the exponential tail weight is below 1e-14
    /// for a function of exponential order `rate` transformed at `Re(s) = s_re`.
    pub fn for_transform(s_re: f64, rate: f64) -> Self {
        let gap = (s_re - rate).max(0.05);
        Self {
            t_max: (40.0 / gap).max(40.0),
            ..Self::default()
        }
    }

    pub(crate) fn nodes_per_panel(&self) -> usize {
        (self.n_nodes / 64).clamp(8, 32)
    }

    pub(crate) fn grading_levels(&self) -> usize {
        (self.n_nodes / 8).clamp(32, 96)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            t_max: 40.0,
            n_nodes: 512,
            scheme: QuadScheme::TransformedGauss,
        }
    }
}

type NodeWeightRule = Arc<(Vec<f64>, Vec<f64>)>;

fn gauss_legendre_cache() -> &'static Mutex<HashMap<usize, NodeWeightRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, NodeWeightRule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> NodeWeightRule {
    assert!(n >= 2, "Gauss-Legendre rule needs at least 2 nodes");
    if let Some(hit) = gauss_legendre_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th positive root.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = z;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    let rule = Arc::new((nodes, weights));
    gauss_legendre_cache()
        .lock()
        .unwrap()
        .insert(n, rule.clone());
    rule
}

/// Single Gauss-Legendre panel on [a, b].
pub fn gl_panel<T: QuadValue>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64, n: usize) -> T {
    let rule = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = T::zero();
    for (x, w) in rule.0.iter().zip(rule.1.iter()) {
        acc = acc + f(mid + half * x).scale(*w);
    }
    acc.scale(half)
}

/// Composite Gauss-Legendre with uniform panels.
pub fn integrate_uniform<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    panels: usize,
    nodes: usize,
) -> T {
    let width = (b - a) / panels as f64;
    let mut acc = T::zero();
    for k in 0..panels {
        let lo = a + k as f64 * width;
        acc = acc + gl_panel(&mut f, lo, lo + width, nodes);
    }
    acc
}

/// Gauss-Legendre panels graded geometrically toward the lower endpoint.
///
/// Panel boundaries are `a + (b-a)·2^{-k}`; the last sliver `[a, a+(b-a)·2^{-levels}]`
/// is integrated with one more panel. Summation runs from the smallest panel
/// upward so tiny contributions are not absorbed prematurely.
pub fn integrate_graded_lower<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    levels: usize,
    nodes: usize,
) -> T {
    let span = b - a;
    let mut acc = gl_panel(&mut f, a, a + span * 0.5f64.powi(levels as i32), nodes);
    for k in (0..levels).rev() {
        let hi = a + span * 0.5f64.powi(k as i32);
        let lo = a + span * 0.5f64.powi(k as i32 + 1);
        acc = acc + gl_panel(&mut f, lo, hi, nodes);
    }
    acc
}

/// As [`integrate_graded_lower`] but graded toward the upper endpoint.
pub fn integrate_graded_upper<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    levels: usize,
    nodes: usize,
) -> T {
    let span = b - a;
    let mut acc = gl_panel(&mut f, b - span * 0.5f64.powi(levels as i32), b, nodes);
    for k in (0..levels).rev() {
        let hi = b - span * 0.5f64.powi(k as i32 + 1);
        let lo = b - span * 0.5f64.powi(k as i32);
        acc = acc + gl_panel(&mut f, lo, hi, nodes);
    }
    acc
}

/// Graded toward both endpoints; used for convolution-type integrands whose
/// factors are non-smooth at either end.
pub fn integrate_graded_both<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    levels: usize,
    nodes: usize,
) -> T {
    let mid = 0.5 * (a + b);
    integrate_graded_lower(&mut f, a, mid, levels, nodes)
        + integrate_graded_upper(&mut f, mid, b, levels, nodes)
}

/// Adaptive Simpson with an absolute/relative hybrid tolerance.
///
/// Fails with [`Error::Accuracy`] carrying the residual estimate when the
/// recursion depth is exhausted before the local error dips below tolerance.
pub fn adaptive_simpson<T: QuadValue>(
    f: &mut impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> Result<T> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson_rule(fa, fm, fb, b - a);
    let scale = whole.magnitude().max(1.0);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol * scale, max_depth)
}

fn simpson_rule<T: QuadValue>(fa: T, fm: T, fb: T, width: f64) -> T {
    (fa + fm.scale(4.0) + fb).scale(width / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<T: QuadValue>(
    f: &mut impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: f64,
    depth: usize,
) -> Result<T> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(fa, flm, fm, m - a);
    let right = simpson_rule(fm, frm, fb, b - m);
    let delta = (left + right - whole).magnitude();
    if delta <= 15.0 * tol {
        // Richardson correction term.
        return Ok(left + right + (left + right - whole).scale(1.0 / 15.0));
    }
    if depth == 0 {
        return Err(Error::Accuracy {
            residual: delta / 15.0,
        });
    }
    let l = simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// Deterministic pairwise summation (fixed left-to-right tree).
pub fn pairwise_sum<T: QuadValue>(values: &[T]) -> T {
    match values.len() {
        0 => T::zero(),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
