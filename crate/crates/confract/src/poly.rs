//! Small dense polynomial and rational-function helpers over f64.
//!
//! Coefficients are stored ascending (`c[0] + c[1] s + ...`). This is
//! enough machinery to fold parsed `s`-expressions into `num/den` form,
//! find denominator roots, and expand Taylor series for residue work;
//! it is not a general computer-algebra layer.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense real-coefficient polynomial, ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn constant(c: f64) -> Self {
        Poly::new(vec![c])
    }

    pub fn variable() -> Self {
        Poly(vec![0.0, 1.0])
    }

    fn trim(&mut self) {
        while self.0.len() > 1 && self.0.last() == Some(&0.0) {
            self.0.pop();
        }
        if self.0.is_empty() {
            self.0.push(0.0);
        }
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn leading(&self) -> f64 {
        *self.0.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, s: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * s + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.degree() == 0 {
            return Poly::constant(0.0);
        }
        Poly::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as f64 + 1.0) * c)
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0.0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0.get(i).copied().unwrap_or(0.0) + other.0.get(i).copied().unwrap_or(0.0);
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly::new(self.0.iter().map(|&c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::constant(0.0);
        }
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn powi(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

/// Complex roots of a real polynomial.
///
/// Degree 1 and 2 use closed forms; higher degrees use Durand-Kerner
/// iteration followed by a Newton polish per root (on the appropriate
/// derivative for clustered/multiple roots, done by the caller).
pub fn roots(p: &Poly) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::Domain("zero polynomial has no root set".into()));
    }
    match p.degree() {
        0 => Ok(vec![]),
        1 => Ok(vec![Complex64::new(-p.0[0] / p.0[1], 0.0)]),
        2 => Ok(quadratic_roots(p.0[2], p.0[1], p.0[0])),
        _ => durand_kerner(p),
    }
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<Complex64> {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        // avoid cancellation in the small root
        let q = -0.5 * (b + b.signum() * sq);
        let (r1, r2) = if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / a + 0.0, c / q + 0.0)
        };
        vec![Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a);
        vec![Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

fn durand_kerner(p: &Poly) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let lead = p.leading();
    let monic: Vec<f64> = p.0.iter().map(|&c| c / lead).collect();
    let radius = 1.0 + monic.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut xs: Vec<Complex64> = (0..n).map(|k| radius * seed.powu(k as u32 + 1)).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= xs[k] - xs[j];
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates; nudge apart
                xs[k] += Complex64::new(1e-8 * radius, 1e-8 * radius);
                continue;
            }
            let step = eval(xs[k]) / denom;
            xs[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius {
            break;
        }
    }
    Ok(xs)
}

/// Newton refinement of a root of `p` (or of its (m-1)-th derivative for a
/// multiplicity-m cluster center).
pub fn newton_polish(p: &Poly, z0: Complex64, multiplicity: usize, iters: usize) -> Complex64 {
    let mut target = p.clone();
    for _ in 1..multiplicity {
        target = target.derivative();
    }
    let dtarget = target.derivative();
    let mut z = z0;
    for _ in 0..iters {
        let d = dtarget.eval_complex(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = target.eval_complex(z) / d;
        z -= step;
        if step.norm() < 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// A ratio of real polynomials; the working form for parsed `s`-expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFn {
    pub fn constant(c: f64) -> Self {
        Self {
            num: Poly::constant(c),
            den: Poly::constant(1.0),
        }
    }

    pub fn variable() -> Self {
        Self {
            num: Poly::variable(),
            den: Poly::constant(1.0),
        }
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        RationalFn {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.scale(-1.0),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        RationalFn {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn> {
        if o.num.is_zero() {
            return Err(Error::Domain(
                "division by the zero rational function".into(),
            ));
        }
        Ok(RationalFn {
            num: self.num.mul(&o.den),
            den: self.den.mul(&o.num),
        })
    }

    pub fn powi(&self, n: i32) -> Result<RationalFn> {
        if n >= 0 {
            Ok(RationalFn {
                num: self.num.powi(n as u32),
                den: self.den.powi(n as u32),
            })
        } else {
            if self.num.is_zero() {
                return Err(Error::Domain("negative power of zero".into()));
            }
            Ok(RationalFn {
                num: self.den.powi((-n) as u32),
                den: self.num.powi((-n) as u32),
            })
        }
    }

    /// Normalize so the denominator has leading coefficient 1.
    pub fn normalized(&self) -> RationalFn {
        let lead = self.den.leading();
        RationalFn {
            num: self.num.scale(1.0 / lead),
            den: self.den.scale(1.0 / lead),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derivative() {
        let p = Poly::new(vec![1.0, -3.0, 2.0]); // 2s² - 3s + 1
        assert_eq!(p.eval(2.0), 3.0);
        assert_eq!(p.derivative().0, vec![-3.0, 4.0]);
    }

    #[test]
    fn quadratic_roots_real_and_complex() {
        // (s-1)(s-3)
        let p = Poly::new(vec![3.0, -4.0, 1.0]);
        let mut rs = roots(&p).unwrap();
        rs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((rs[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((rs[1] - Complex64::new(3.0, 0.0)).norm() < 1e-14);

        // s² + 4
        let q = Poly::new(vec![4.0, 0.0, 1.0]);
        let rs = roots(&q).unwrap();
        assert!(rs
            .iter()
            .any(|r| (r - Complex64::new(0.0, 2.0)).norm() < 1e-14));
        assert!(rs
            .iter()
            .any(|r| (r - Complex64::new(0.0, -2.0)).norm() < 1e-14));
    }

    #[test]
    fn durand_kerner_quartic() {
        // (s+1)(s+2)(s-0.5)(s² ... ) keep degree 4: (s+1)(s+2)(s-0.5)(s-3)
        let p = Poly::new(vec![1.0, 1.0])
            .mul(&Poly::new(vec![2.0, 1.0]))
            .mul(&Poly::new(vec![-0.5, 1.0]))
            .mul(&Poly::new(vec![-3.0, 1.0]));
        let rs = roots(&p).unwrap();
        for target in [-1.0, -2.0, 0.5, 3.0] {
            let best = rs
                .iter()
                .map(|r| (r - Complex64::new(target, 0.0)).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-9, "missed root {target}: {best}");
        }
    }

    #[test]
    fn newton_polish_sharpens_multiple_root() {
        // (s+1)³: polish multiplicity-3 center from a perturbed start
        let p = Poly::new(vec![1.0, 1.0]).powi(3);
        let z = newton_polish(&p, Complex64::new(-1.0 + 1e-4, 1e-4), 3, 8);
        assert!((z - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rational_arithmetic_folds() {
        // 1/(s(s+1)) == 1/s - 1/(s+1)
        let s = RationalFn::variable();
        let one = RationalFn::constant(1.0);
        let lhs = one
            .div(&s.mul(&s.add(&RationalFn::constant(1.0))))
            .unwrap()
            .normalized();
        let a = one.div(&s).unwrap();
        let b = one.div(&s.add(&RationalFn::constant(1.0))).unwrap();
        let rhs = a.sub(&b).normalized();
        // compare by evaluation
        for x in [0.7, 2.0, -3.3] {
            let l = lhs.num.eval(x) / lhs.den.eval(x);
            let r = rhs.num.eval(x) / rhs.den.eval(x);
            assert!((l - r).abs() < 1e-12);
        }
    }
}
