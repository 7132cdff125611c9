//! Canonical de Bruijn sequences and their cyclic window counts.
//!
//! ```bash
//! cargo run --release --example debruijn_windows
//! ```

use liouville::debruijn;

fn main() {
    for (k, n) in [(2u32, 3u32), (2, 4), (3, 2)] {
        let seq = debruijn::generate(k, n).unwrap();
        println!("B({k},{n}) = {}  (length {})", seq.to_ascii().unwrap(), seq.len());

        // every window of length n occurs exactly once cyclically,
        // every window of length m < n exactly k^(n-m) times
        for m in 1..=n {
            let mut w = vec![0u8; m as usize];
            let mut counts = Vec::new();
            loop {
                counts.push(seq.cyclic_occurrences(&w).unwrap());
                if !next_word(&mut w, k) {
                    break;
                }
            }
            println!(
                "  window size {m}: counts {:?} (expected {} each)",
                counts,
                (k as u64).pow(n - m)
            );
        }
    }
}

fn next_word(w: &mut [u8], k: u32) -> bool {
    for d in w.iter_mut().rev() {
        if (*d as u32) + 1 < k {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}
