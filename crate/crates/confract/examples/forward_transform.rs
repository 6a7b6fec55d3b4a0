//! Forward transforms: evaluate L_0^α{f}(s) numerically and compare with
//! the closed-form pair table.
//!
//! ```text
//! cargo run --release --example forward_transform
//! ```

use num_complex::Complex64;

use confract::transform::{forward_transform, pair_table, truncation_tail_bound};
use confract::{FractionalOrder, QuadratureSpec};

fn main() -> confract::Result<()> {
    let alpha = FractionalOrder::new(0.7)?;
    println!("forward transforms at alpha = {alpha}\n");
    println!(
        "{:<14} {:>6} {:>16} {:>16} {:>10}",
        "family", "s", "numeric", "closed form", "rel gap"
    );
    for entry in pair_table(alpha) {
        let rate = entry.time.growth_bound().map(|g| g.rate).unwrap_or(0.0);
        for s in [1.0, 2.0, 5.0] {
            if s <= rate {
                continue; // below the region abscissa the integral diverges
            }
            let quad = QuadratureSpec::for_transform(s, rate);
            let numeric = forward_transform(&entry.time, alpha, Complex64::new(s, 0.0), &quad)?;
            let exact = entry.freq.eval(Complex64::new(s, 0.0));
            println!(
                "{:<14} {s:>6.1} {:>16.10} {:>16.10} {:>10.2e}",
                format!("{:?}", entry.family),
                numeric.re,
                exact.re,
                (numeric - exact).norm() / exact.norm().max(1e-300)
            );
        }
    }

    // the exponential-order certificate bounds the truncated tail
    let entry = &pair_table(alpha)[1]; // exp(-2u)
    let s = Complex64::new(2.0, 0.0);
    let quad = QuadratureSpec::for_transform(2.0, -2.0);
    if let Some(bound) = truncation_tail_bound(&entry.time, s, quad.t_max) {
        println!(
            "\ntail bound for {:?} truncated at u = {}: {bound:e}",
            entry.family, quad.t_max
        );
    }
    Ok(())
}
