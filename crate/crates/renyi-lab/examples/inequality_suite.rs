//! Runs the divergence inequality suites on random qubit states.

use renyi_lab::inequalities::{run_suite, Dims, OPTIMIZED_TOL};
use renyi_lab::params::TheoremTag;

fn main() {
    for tag in TheoremTag::ALL.into_iter().filter(|t| t.is_divergence()) {
        let s = run_suite(tag, 10, Dims::default(), 7, OPTIMIZED_TOL).summary;
        println!(
            "{:<11} pass {:>3}  fail {:>3}  skipped {:>3}  min gap {:.3e}",
            tag.name(),
            s.passed,
            s.failed,
            s.skipped,
            s.min_gap
        );
    }
}
