//! Conditional entropies and mutual informations of a Bell state mixed with |00⟩.

use renyi_lab::renyi::{cond_entropy_down, cond_entropy_up, min_entropy, mutual_info_down, mutual_info_up};
use renyi_lab::states::DensityOperator;
use renyi_lab::{Operator, SystemLayout, C64};

fn main() -> renyi_lab::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = [C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)];
    let pure = Operator::outer(&bell, &bell);
    let p = 0.8;
    let noisy = &pure.scale(p) + &Operator::diag(&[1.0 - p, 0.0, 0.0, 0.0]);
    let rho = DensityOperator::new(noisy, SystemLayout::bipartite(2, 2))?;
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "alpha", "Hdown(A|B)", "Hup(A|B)", "Idown(A:B)", "Iup(A;B)");
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        println!(
            "{alpha:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            cond_entropy_down(&rho, alpha)?,
            cond_entropy_up(&rho, alpha)?.value,
            mutual_info_down(&rho, alpha)?.value,
            mutual_info_up(&rho, alpha)?.value
        );
    }
    println!("Hmin(A|B) = {:.6}", min_entropy(&rho)?.value);
    Ok(())
}
