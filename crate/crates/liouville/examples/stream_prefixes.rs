//! Emit prefixes of all four digit-stream constructions along with their
//! stage boundary tables.
//!
//! ```bash
//! cargo run --release --example stream_prefixes
//! ```

use liouville::constructions::{ConstructionRecipe, StageSchedule};

const CAP: u64 = 1 << 20;

fn main() {
    let recipes = [
        ConstructionRecipe::factorial_ones(),
        ConstructionRecipe::sparse_numerals(),
        ConstructionRecipe::debruijn_normal(2).unwrap(),
        ConstructionRecipe::debruijn_normal(3).unwrap(),
        ConstructionRecipe::diluted(1, 2).unwrap(),
        ConstructionRecipe::diluted(2, 3).unwrap(),
    ];
    for recipe in &recipes {
        let prefix = recipe.take_prefix(64, CAP).unwrap();
        let text: String = prefix.iter().map(|&d| (b'0' + d) as char).collect();
        println!("{:<24} {}", recipe.label(), text);

        let schedule = StageSchedule::up_to(recipe, 6);
        let boundaries: Vec<String> = schedule.boundaries().iter().map(|b| b.to_string()).collect();
        println!("{:<24} stages end at {}", "", boundaries.join(", "));
    }
}
