//! Stage-by-stage Liouville certificates for every construction: the
//! number of digits on which the stream provably agrees with the stage
//! convergent, against the number required so that the shared interval is
//! finer than q^(-i). All checks are pure integer arithmetic.
//!
//! ```bash
//! cargo run --release --example certify_liouville
//! ```

use liouville::constructions::ConstructionRecipe;
use liouville::exact::verify_stages;

const CAP: u64 = 1 << 24;

fn main() {
    let cases = [
        (ConstructionRecipe::factorial_ones(), 6u32),
        (ConstructionRecipe::sparse_numerals(), 6),
        (ConstructionRecipe::debruijn_normal(2).unwrap(), 5),
        (ConstructionRecipe::diluted(1, 2).unwrap(), 5),
        (ConstructionRecipe::diluted(3, 5).unwrap(), 4),
    ];
    for (recipe, max_stage) in cases {
        println!("{}", recipe.label());
        for report in verify_stages(&recipe, max_stage, CAP).unwrap() {
            println!(
                "  stage {:>2}: agreement {:>9} digits, required {:>9}, q ~ 2^{:<8} holds={}",
                report.stage, report.agreement, report.required, report.q_bits, report.holds
            );
        }
    }
}
