//! The transform identities checked two-sided: elementary properties,
//! the derivative and integral rules, and the initial/final value
//! theorems.
//!
//! ```text
//! cargo run --release --example transform_rules
//! ```

use num_complex::Complex64;

use confract::transform::{
    check_property, derivative_transform_check, final_value, initial_value,
    integral_transform_check, nth_derivative_transform_check, FrequencyExpression,
    TransformProperty,
};
use confract::{FractionalOrder, QuadratureSpec, TimeFunction};

fn main() -> confract::Result<()> {
    let alpha = FractionalOrder::new(0.6)?;
    let quad = QuadratureSpec::default();
    let s = Complex64::new(2.5, 0.0);
    let f = TimeFunction::new(move |t| (-alpha.u_of_t(t)).exp()).with_growth(1.0, -1.0);

    println!(
        "elementary properties for f = exp(-u), alpha = {alpha}, s = {}\n",
        s.re
    );
    let properties: Vec<(&str, TransformProperty)> = vec![
        (
            "linearity",
            TransformProperty::Linearity {
                c1: 2.0,
                c2: -0.5,
                g: TimeFunction::constant(1.0),
            },
        ),
        ("scaling a=1.7", TransformProperty::Scaling { a: 1.7 }),
        (
            "first shift a=0.8",
            TransformProperty::FirstShift { a: 0.8 },
        ),
        (
            "second shift a=0.5",
            TransformProperty::SecondShift { a: 0.5 },
        ),
        ("multiply by t^α", TransformProperty::MulTAlpha),
    ];
    for (name, property) in &properties {
        let report = check_property(property, &f, alpha, s, &quad)?;
        println!(
            "{name:<20} lhs {:>14.9} rhs {:>14.9} |gap| {:.2e}",
            report.lhs.re, report.rhs.re, report.abs_err
        );
    }

    println!("\nderivative rule (order beta of the derivative, alpha of the transform):");
    for beta_v in [0.6, 0.9] {
        let beta = FractionalOrder::new(beta_v)?;
        let report = derivative_transform_check(&f, alpha, beta, s, &quad)?;
        println!(
            "  beta = {beta_v}: lhs {:>13.9} rhs {:>13.9} |gap| {:.2e}",
            report.lhs.re, report.rhs.re, report.abs_err
        );
    }
    let second = nth_derivative_transform_check(&f, alpha, alpha, 2, s, &quad)?;
    println!(
        "  n = 2, beta = alpha: lhs {:>13.9} rhs {:>13.9} |gap| {:.2e}",
        second.lhs.re, second.rhs.re, second.abs_err
    );

    println!("\nintegral rule:");
    let report = integral_transform_check(&f, alpha, FractionalOrder::new(0.8)?, s, &quad)?;
    println!(
        "  beta = 0.8: lhs {:>13.9} rhs {:>13.9} |gap| {:.2e}",
        report.lhs.re, report.rhs.re, report.abs_err
    );

    println!("\nvalue theorems for F = 1/(s(s+1)), the transform of 1 - exp(-u):");
    let fexpr = FrequencyExpression::rational(vec![1.0], vec![0.0, 1.0, 1.0])?;
    println!("  initial value (t -> 0+): {}", initial_value(&fexpr)?);
    println!("  final value   (t -> ∞):  {}", final_value(&fexpr)?);
    Ok(())
}
