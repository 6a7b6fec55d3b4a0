//! Validating the closed forms against the independent finite-difference
//! solvers: the τ-substituted implicit scheme, the graded explicit scheme,
//! the upwind transport solve, and the operator-residual probe.
//!
//! ```text
//! cargo run --release --example fd_validation
//! ```

use confract::diffusion::{
    solve_dirichlet_sine, solve_finite_mixed, solve_first_order, DiffusionProblem, SeriesSpec,
};
use confract::fd::{fd_solve_diffusion, fd_solve_first_order, residual_check, FDGrid, TimeMapping};
use confract::FractionalOrder;

fn main() -> confract::Result<()> {
    let alpha = FractionalOrder::new(0.5)?;
    let series = SeriesSpec::default();

    println!("finite medium, alpha = {alpha}: implicit tau scheme vs series");
    let problem = DiffusionProblem::finite_mixed(alpha, 1.0, 1.0, 1.0)?;
    let tau = fd_solve_diffusion(
        &problem,
        &FDGrid::new(201, 400, 0.5, TimeMapping::TauSubstituted)?,
    )?;
    let mut worst = 0.0f64;
    for (i, &x) in tau.field.x_grid.iter().enumerate() {
        for (j, &t) in tau.field.t_grid.iter().enumerate() {
            if t < 0.01 {
                continue; // corner layer below the grid resolution
            }
            let exact = solve_finite_mixed(x, t, alpha, 1.0, 1.0, 1.0, &series)?;
            worst = worst.max((tau.field.values[i][j] - exact).abs());
        }
    }
    println!("  max |fd - series| = {worst:.2e} on a 201 x 400 grid\n");

    println!("same problem, explicit stepping on the graded mesh t_k = T(k/K)^(1/α):");
    let graded = fd_solve_diffusion(
        &problem,
        &FDGrid::new(201, 120_000, 0.5, TimeMapping::DirectGraded)?,
    )?;
    println!(
        "  stability margin {:.4} (bound 1/2), {} stored time levels",
        graded.stability_margin.unwrap(),
        graded.field.t_grid.len()
    );
    let jt = tau.field.t_grid.len() - 1;
    let jg = graded.field.t_grid.len() - 1;
    let mut gap = 0.0f64;
    for i in 0..tau.field.x_grid.len() {
        gap = gap.max((tau.field.values[i][jt] - graded.field.values[i][jg]).abs());
    }
    println!("  final-profile gap between the two time treatments: {gap:.2e}\n");

    println!("transport equation, upwind in τ:");
    let t_end = alpha.t_of_u(2.0);
    let report = fd_solve_first_order(
        alpha,
        2.0,
        &FDGrid::new(401, 800, t_end, TimeMapping::TauSubstituted)?,
    )?;
    let err = report.max_error_against(|x, t| solve_first_order(x, t, alpha));
    println!(
        "  max |fd - closed form| = {err:.2e}, CFL margin {:.3}\n",
        report.stability_margin.unwrap()
    );

    println!("operator residuals of the closed forms (4th-order spatial stencils):");
    let dirichlet = DiffusionProblem::DirichletSine { alpha };
    let xs: Vec<f64> = (1..=9).map(|i| 0.3 + 0.28 * i as f64).collect();
    let ts: Vec<f64> = (1..=9).map(|j| 0.2 * j as f64).collect();
    let good = residual_check(
        move |x, t| solve_dirichlet_sine(x, t, alpha),
        &dirichlet,
        &xs,
        &ts,
    )?;
    let bad = residual_check(|x: f64, t: f64| x.sin() * (-t).exp(), &dirichlet, &xs, &ts)?;
    println!("  sin(x)·e^(-u):  {good:.2e}  (solution)");
    println!("  sin(x)·e^(-t):  {bad:.2e}      (wrong order, rejected)");
    Ok(())
}
