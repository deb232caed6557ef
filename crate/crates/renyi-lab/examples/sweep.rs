//! A small sweep over two suites, writing CSV files to a temporary directory.

use renyi_lab::params::TheoremTag;
use renyi_lab::report::{cmd_sweep, SweepConfig};

fn main() -> renyi_lab::Result<()> {
    let cfg = SweepConfig {
        tags: vec![TheoremTag::Decomp, TheoremTag::Rmu],
        trials: 5,
        master_seed: 11,
        output_path: std::env::temp_dir().join("renyi-lab-example"),
        ..SweepConfig::default()
    };
    let outcome = cmd_sweep(&cfg, &mut std::io::stdout())?;
    for s in &outcome.suites {
        println!("wrote {}", s.csv_path.display());
    }
    println!("exit code {}", outcome.exit_code);
    Ok(())
}
