//! Solves the order constraint for β on a grid of (α, γ) and classifies each triple.

use renyi_lab::params::{solve_beta, RenyiTriple};

fn main() {
    let orders = [0.5, 0.75, 2.0, 4.0, f64::INFINITY];
    println!("{:>6} {:>6} {:>10} {:>9} {:>12}", "alpha", "gamma", "beta", "direction", "case");
    for &alpha in &orders {
        for &gamma in &orders {
            match solve_beta(alpha, gamma) {
                Ok(beta) => {
                    let label = RenyiTriple::new(alpha, beta, gamma)
                        .map(|t| (t.direction.as_str().to_string(), format!("{:?}", t.case)))
                        .unwrap_or_else(|_| ("-".into(), "-".into()));
                    println!("{alpha:>6} {gamma:>6} {beta:>10.6} {:>9} {:>12}", label.0, label.1);
                }
                Err(e) => println!("{alpha:>6} {gamma:>6} {:>10}  {e}", "-"),
            }
        }
    }
}
