//! Block-entropy rates of the normal construction at its stage
//! boundaries, and the finite-sample dimension estimates derived from
//! them.
//!
//! ```bash
//! cargo run --release --example block_entropy
//! ```

use liouville::constructions::ConstructionRecipe;
use liouville::dimension::{entropy_rate_profile, CountMode};
use num_traits::ToPrimitive;

const CAP: u64 = 1 << 24;

fn main() {
    let alpha = ConstructionRecipe::debruijn_normal(2).unwrap();
    let boundaries: Vec<u64> = (1..=6)
        .map(|i| alpha.stage_boundary(i).to_u64().unwrap())
        .collect();
    let report = entropy_rate_profile(&alpha, 4, &boundaries, CAP).unwrap();

    println!("sliding rates of {} at stage boundaries:", report.label);
    println!("{:>12} {:>8} {:>8} {:>8} {:>8}", "prefix", "m=1", "m=2", "m=3", "m=4");
    for &prefix in &boundaries {
        let mut line = format!("{prefix:>12}");
        for m in 1..=4usize {
            let rate = report
                .rows
                .iter()
                .find(|r| r.prefix == prefix && r.block_size == m && r.mode == CountMode::Sliding)
                .map(|r| r.rate);
            match rate {
                Some(r) => line.push_str(&format!(" {r:>8.5}")),
                None => line.push_str(&format!(" {:>8}", "-")),
            }
        }
        println!("{line}");
    }
    println!(
        "dimension estimate (sliding):  {:.5}",
        report.dimension_estimate(CountMode::Sliding).unwrap()
    );
    println!(
        "dimension estimate (disjoint): {:.5}",
        report.dimension_estimate(CountMode::Disjoint).unwrap()
    );
    println!("(finite-sample estimates; the defining rates are limits)");
}
