//! Two-part (p, q) norms of a random positive operator on a qubit pair.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use renyi_lab::interp::two_part_norm;
use renyi_lab::linalg::schatten_norm;
use renyi_lab::states::random_density;
use renyi_lab::SystemLayout;

fn main() -> renyi_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let layout = SystemLayout::bipartite(2, 2);
    let x = random_density(4, 4, &mut rng).into_operator();
    println!("{:>5} {:>5} {:>14}", "p", "q", "||X||_(p,q)");
    for (p, q) in [(1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (4.0, 2.0), (2.0, 4.0)] {
        println!("{p:>5} {q:>5} {:>14.8}", two_part_norm(&x, &layout, p, q, &mut rng)?);
    }
    println!("Schatten 2-norm {:.8}", schatten_norm(&x, 2.0)?);
    Ok(())
}
