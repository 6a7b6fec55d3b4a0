//! The CLI expression grammar: `u` is sugar for t^α/α, so inputs stay
//! α-generic; errors carry 1-based byte offsets.
//!
//! ```text
//! cargo run --example expressions
//! ```

use confract::expr::parse_expression;
use confract::FractionalOrder;

fn main() {
    let alpha = FractionalOrder::new(0.5).unwrap();
    println!("evaluating with alpha = {alpha} (so u = t^0.5/0.5):\n");
    for text in ["1 - exp(-u)", "sin(t)*exp(-u)", "t^2 / (1 + u)", "-2^2"] {
        let ast = parse_expression(text).unwrap();
        let values: Vec<String> = [0.5, 1.0, 4.0]
            .iter()
            .map(|&t| format!("{:.6}", ast.eval(t, alpha).unwrap()))
            .collect();
        println!("  {text:<18} -> [{}] at t = 0.5, 1, 4", values.join(", "));
    }

    println!("\ndiagnostics:");
    for text in ["exp(-u", "tan(t)", "1/(t-1)"] {
        match parse_expression(text) {
            Err(err) => println!("  {text:<10} parse error: {err}"),
            Ok(ast) => match ast.eval(1.0, alpha) {
                Err(err) => println!("  {text:<10} eval error:  {err}"),
                Ok(v) => println!("  {text:<10} = {v}"),
            },
        }
    }
}
