//! Uncertainty bounds of the qubit MUB pair and of a random qutrit pair.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use renyi_lab::states::DensityOperator;
use renyi_lab::uncertainty::{hall_bound, q_delta_max, q_delta_state_independent, q_mu, r_cp, r_g, MeasurementPair};

fn show(name: &str, pair: &MeasurementPair) -> renyi_lab::Result<()> {
    let mixed = DensityOperator::maximally_mixed(pair.dim());
    println!("{name}: c = {:.6}", pair.c());
    println!(
        "  q_MU {:.6}  r_CP {:.6}  r_G {:.6}  r_H {:.6}",
        q_mu(pair).value,
        r_cp(pair).value,
        r_g(pair).value,
        hall_bound(pair).value
    );
    for delta in [0.5, 2.0] {
        println!(
            "  delta {delta}: q_delta(mixed) {:.6}  state independent {:.6}",
            q_delta_max(&mixed, pair, delta)?.value,
            q_delta_state_independent(pair, delta)?.value
        );
    }
    Ok(())
}

fn main() -> renyi_lab::Result<()> {
    show("qubit MUB", &MeasurementPair::mub(2))?;
    show("random qutrit pair", &MeasurementPair::random(3, &mut ChaCha8Rng::seed_from_u64(5)))
}
