//! Primitive-root certificates, simultaneous primes, the maximal-period
//! expansion block of 1/p, and orbit equidistribution counts.
//!
//! ```bash
//! cargo run --release --example primitive_roots
//! ```

use liouville::artin;

fn main() {
    for (a, p) in [(2u64, 13u64), (2, 7), (3, 7), (10, 7)] {
        let cert = artin::primitive_root_certificate(a, p).unwrap();
        println!(
            "order of {a} mod {p} is {} of {} -> primitive: {}",
            cert.order,
            p - 1,
            cert.is_primitive()
        );
    }

    println!();
    let primes = artin::find_simultaneous_primes(&[2, 3], 200).unwrap();
    println!("primes below 200 with both 2 and 3 as primitive roots: {primes:?}");
    for &p in primes.iter().take(3) {
        println!(
            "  orbit identity for p={p}: {}",
            artin::verify_orbit_identity(&[2, 3], p).unwrap()
        );
    }

    println!();
    let block = artin::period_block(10, 7).unwrap();
    let text: String = block.iter().map(|&d| (b'0' + d) as char).collect();
    println!("1/7 in base 10 repeats {text} (length {} = 7-1)", block.len());
    let block = artin::period_block(2, 13).unwrap();
    let text: String = block.iter().map(|&d| (b'0' + d) as char).collect();
    println!("1/13 in base 2 repeats {text} (length {})", block.len());

    println!();
    println!("orbit of 2^m/101 mod 1 over one period, 2^k bins:");
    for k in 1..=6u32 {
        let counts = artin::orbit_bin_counts_period(2, 101, k).unwrap();
        println!("  k={k}: {counts:?}");
    }
}
