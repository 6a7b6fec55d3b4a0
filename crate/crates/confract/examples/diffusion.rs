//! The four closed-form diffusion solutions, and the CSV/JSON field
//! artifacts the library writes for them.
//!
//! ```text
//! cargo run --release --example diffusion
//! ```

use confract::diffusion::{
    evaluate_field, solve_dirichlet_sine, solve_finite_mixed, solve_first_order,
    solve_semi_infinite_checked, DiffusionProblem, SeriesSpec,
};
use confract::{FractionalOrder, QuadratureSpec, TimeFunction};

fn main() -> confract::Result<()> {
    let alpha = FractionalOrder::new(0.5)?;
    let quad = QuadratureSpec::default();
    let series = SeriesSpec::default();

    println!("transport u = x(1 - e^(-u)) at x = 1:");
    for t in [0.0, 0.5, 2.0, 10.0] {
        println!("  t = {t:>5}: {:.10}", solve_first_order(1.0, t, alpha));
    }

    println!("\nsemi-infinite medium with constant boundary data (cross-checked routes):");
    for x in [0.5, 1.0, 2.0] {
        let v =
            solve_semi_infinite_checked(x, 1.0, alpha, 1.0, &TimeFunction::constant(1.0), &quad)?;
        println!("  u({x}, 1) = {v:.10}");
    }

    println!("\nfinite medium, mixed boundaries (U = 1, a = 1):");
    for x in [0.0, 0.25, 0.5, 1.0] {
        let v = solve_finite_mixed(x, 0.4, alpha, 1.0, 1.0, 1.0, &series)?;
        println!("  u({x:>4}, 0.4) = {v:.10}");
    }

    println!("\nDirichlet problem u = sin(x)·e^(-u):");
    for t in [0.0, 1.0, 4.0] {
        println!(
            "  u(π/2, {t}) = {:.10}",
            solve_dirichlet_sine(std::f64::consts::FRAC_PI_2, t, alpha)
        );
    }

    // write a sampled field both ways
    let problem = DiffusionProblem::DirichletSine { alpha };
    let x_grid: Vec<f64> = (0..=8)
        .map(|i| i as f64 * std::f64::consts::PI / 8.0)
        .collect();
    let t_grid = vec![0.0, 0.5, 1.0, 2.0];
    let field = evaluate_field(&problem, &x_grid, &t_grid, &series, &quad)?;
    let dir = std::env::temp_dir();
    let csv_path = dir.join("confract-dirichlet.csv");
    let json_path = dir.join("confract-dirichlet.json");
    field.write_csv(std::fs::File::create(&csv_path)?)?;
    std::fs::write(&json_path, field.to_json())?;
    println!(
        "\nfield written to {} and {}",
        csv_path.display(),
        json_path.display()
    );
    Ok(())
}
