//! The diluted construction's k-block entropy: exact cyclic counts of the
//! stage-k period, the closed-form rate, and its approach to the target
//! ratio m/n as k grows.
//!
//! ```bash
//! cargo run --release --example dilution_dimension
//! ```

use liouville::constructions::ConstructionRecipe;
use liouville::dimension::{block_frequencies, shannon_entropy, stage_entropy_closed_form, CountMode};

const CAP: u64 = 1 << 24;

fn main() {
    for (m, n) in [(1u32, 2u32), (2, 3), (3, 5)] {
        let recipe = ConstructionRecipe::diluted(m, n).unwrap();
        println!("dilution {m}/{n} (target rate {:.6}):", m as f64 / n as f64);
        for k in [2u32, 4, 8] {
            let block = recipe.stage_block(k, CAP).unwrap();
            let table = block_frequencies(&block, k as usize, CountMode::CyclicSliding, 2).unwrap();
            let zero = vec![0u8; k as usize];
            let counted = shannon_entropy(&table) / k as f64;
            let closed = stage_entropy_closed_form(m, n, k).unwrap();
            println!(
                "  k={k:>2}: period {:>5} digits, zero-block count {:>5}, counted rate {counted:.9}, closed form {closed:.9}",
                block.len(),
                table.count_of(&zero).unwrap(),
            );
        }
        for k in [16u32, 32, 64, 128] {
            let closed = stage_entropy_closed_form(m, n, k).unwrap();
            println!(
                "  k={k:>3}: closed form {closed:.9}  (gap to m/n: {:+.2e})",
                closed - m as f64 / n as f64
            );
        }
    }
}
