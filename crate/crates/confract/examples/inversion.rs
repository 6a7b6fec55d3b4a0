//! Three inversion routes side by side on F(s) = 1/(s(s+1)), whose
//! inverse is 1 - e^{-u} with u = t^α/α.
//!
//! ```text
//! cargo run --release --example inversion
//! ```

use confract::inverse::{
    invert_bromwich, invert_residues, invert_via_classical, partial_fractions, BromwichSpec,
    InversionMethod,
};
use confract::transform::FrequencyExpression;
use confract::FractionalOrder;

fn main() -> confract::Result<()> {
    let alpha = FractionalOrder::new(0.7)?;
    let fexpr = FrequencyExpression::from_rational_text("1/(s*(s+1))")?;

    let poles = partial_fractions(&fexpr)?;
    println!("poles of 1/(s(s+1)):");
    for pole in poles.poles() {
        println!(
            "  s = {:>6.3} (multiplicity {}), residues {:?}",
            pole.location, pole.multiplicity, pole.residue_coeffs
        );
    }

    println!("\ninversion at alpha = {alpha}:");
    println!(
        "{:>6} {:>16} {:>16} {:>16} {:>16}",
        "t", "exact", "residues", "bromwich", "pair table"
    );
    for t in [0.1, 0.5, 1.3, 5.0] {
        let u = alpha.u_of_t(t);
        let exact = 1.0 - (-u).exp();
        let residues = invert_residues(&poles, alpha, t)?;
        let spec = BromwichSpec::default_for(&fexpr, alpha, t)?;
        let bromwich = invert_bromwich(&fexpr, alpha, t, &spec)?;
        // 1/(s(s+1)) is not a single table family; split it by hand
        let part_a = invert_via_classical(
            &FrequencyExpression::from_rational_text("1/s")?,
            alpha,
            t,
            InversionMethod::PairTable,
        )?;
        let part_b = invert_via_classical(
            &FrequencyExpression::from_rational_text("1/(s+1)")?,
            alpha,
            t,
            InversionMethod::PairTable,
        )?;
        println!(
            "{t:>6.2} {exact:>16.12} {residues:>16.12} {bromwich:>16.12} {:>16.12}",
            part_a - part_b
        );
    }

    println!("\nthe imaginary-part diagnostic flags non-conjugate-symmetric input:");
    let lone_pole = FrequencyExpression::blackbox(
        |s| 1.0 / (s - num_complex::Complex64::new(0.0, 1.0)),
        0.0,
    );
    let spec = BromwichSpec::new(1.0, 4096, 400.0)?;
    match invert_bromwich(&lone_pole, alpha, 1.0, &spec) {
        Err(err) => println!("  {err}"),
        Ok(v) => println!("  unexpectedly converged to {v}"),
    }
    Ok(())
}
