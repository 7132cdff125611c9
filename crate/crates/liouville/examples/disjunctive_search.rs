//! Every binary string occurs in the sparse-numerals stream: prefixing a
//! string w with 1 makes it the numeral of some integer, which the stream
//! embeds at a factorial position. The search walks the numeral regions
//! structurally instead of materializing the (astronomical) prefix.
//!
//! ```bash
//! cargo run --release --example disjunctive_search
//! ```

use liouville::constructions::{sparse_numerals_find, ConstructionRecipe};

fn main() {
    let recipe = ConstructionRecipe::sparse_numerals();
    let patterns: Vec<Vec<u8>> = vec![
        vec![1, 1],
        vec![1, 0, 1],
        vec![1, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 1],
        vec![1, 1, 1, 1, 1, 1, 1, 1, 1],
        vec![1, 0, 1, 1, 0, 1, 0, 0, 1],
    ];
    for pattern in patterns {
        let text: String = pattern.iter().map(|&d| (b'0' + d) as char).collect();
        match sparse_numerals_find(&pattern).unwrap() {
            Some(pos) => {
                // read the digits back from the stream to confirm
                let window = recipe.window_at(&pos, pattern.len(), u64::MAX).unwrap();
                assert_eq!(window, pattern);
                println!("{text:>12} first occurs at digit index {pos}");
            }
            None => println!("{text:>12} not found (unexpected)"),
        }
    }
    println!();
    println!("ones are nevertheless vanishingly rare:");
    let prefix = recipe.take_prefix(40320, 1 << 20).unwrap();
    let ones = prefix.iter().filter(|&&d| d == 1).count();
    println!("  prefix of 8! = 40320 digits contains only {ones} ones");
}
