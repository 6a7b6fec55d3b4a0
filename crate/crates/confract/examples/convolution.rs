//! The fractional convolution: values, algebra laws, the convolution
//! theorem, and the Young inequality in the weighted norms.
//!
//! ```text
//! cargo run --release --example convolution
//! ```

use num_complex::Complex64;

use confract::conv::{
    check_convolution_algebra, check_convolution_theorem, check_young, conv_alpha, weighted_norm,
    ConvolutionLaw, WeightedNormSpec,
};
use confract::{FractionalOrder, QuadratureSpec, TimeFunction};

fn main() -> confract::Result<()> {
    let alpha = FractionalOrder::new(0.5)?;
    let quad = QuadratureSpec::default();
    let one = TimeFunction::constant(1.0);
    let decay = TimeFunction::new(move |t| (-alpha.u_of_t(t)).exp()).with_growth(1.0, -1.0);

    println!("(1 *_α 1)(t) = t^α/α:");
    for t in [1.0, 4.0, 9.0] {
        let v = conv_alpha(&one, &one, alpha, t, &quad)?;
        println!("  t = {t}: {v:.12} (u = {})", alpha.u_of_t(t));
    }

    println!("\n(1 *_α e^(-u))(t) = 1 - e^(-u):");
    for t in [0.5, 2.0] {
        let v = conv_alpha(&one, &decay, alpha, t, &quad)?;
        let exact = 1.0 - (-alpha.u_of_t(t)).exp();
        println!("  t = {t}: {v:.12} vs {exact:.12}");
    }

    println!("\nalgebra laws at t = 1.5:");
    let h = TimeFunction::new(move |t: f64| alpha.u_of_t(t) * (-alpha.u_of_t(t)).exp());
    for (name, law) in [
        ("commutativity", ConvolutionLaw::Commutativity),
        ("associativity", ConvolutionLaw::Associativity),
        ("distributivity", ConvolutionLaw::Distributivity),
        ("scalar (c = 3)", ConvolutionLaw::Scalar),
    ] {
        let report = check_convolution_algebra(law, &one, &decay, &h, 3.0, alpha, 1.5, &quad)?;
        println!(
            "  {name:<15} lhs {:>14.10} rhs {:>14.10} |gap| {:.2e} {}",
            report.lhs.re, report.rhs.re, report.abs_err, report.note
        );
    }

    println!("\nconvolution theorem L{{f}}·L{{g}} = L{{f *_α g}} at s = 2:");
    let report = check_convolution_theorem(&one, &decay, alpha, Complex64::new(2.0, 0.0), &quad)?;
    println!(
        "  lhs {:>14.10} rhs {:>14.10} |gap| {:.2e}",
        report.lhs.re, report.rhs.re, report.abs_err
    );

    println!("\nweighted norms and the Young inequality:");
    let spec = WeightedNormSpec::new(1.0, alpha, 300.0)?;
    println!(
        "  ||e^(-u)||_L1_α = {:.10}",
        weighted_norm(&decay, &spec, &quad)?
    );
    let young = check_young(&decay, &decay, 2.0, alpha, 300.0, &quad)?;
    println!(
        "  ||f *_α g||_L2_α = {:.10} <= ||f||_L1_α·||g||_L2_α = {:.10} (pass: {})",
        young.lhs, young.rhs, young.pass
    );
    Ok(())
}
