//! Sandwiched Rényi divergence between two random qubit states across orders.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use renyi_lab::renyi::sandwiched_divergence;
use renyi_lab::states::random_density;

fn main() -> renyi_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rho = random_density(2, 2, &mut rng);
    let sigma = random_density(2, 2, &mut rng);
    println!("{:>8} {:>14}", "alpha", "D_alpha (bits)");
    for alpha in [0.5, 0.75, 1.0, 1.5, 2.0, 4.0, f64::INFINITY] {
        println!("{alpha:>8} {:>14.8}", sandwiched_divergence(&rho, sigma.op(), alpha)?);
    }
    Ok(())
}
