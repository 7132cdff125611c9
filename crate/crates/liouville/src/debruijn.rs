//! Canonical de Bruijn sequences and cyclic occurrence counting.
//!
//! Sequences are produced by concatenating, in lexicographic order, the
//! Lyndon words over {0,…,k−1} whose length divides the order n
//! (Fredricksen–Kessler–Maiorana). This yields the lexicographically least
//! de Bruijn sequence of order n, so the same (k, n) always produces the
//! identical string — later stages of the stream constructions and their
//! convergents rely on that.

use crate::error::{Error, Result};

/// Default cap on k^n, the number of symbols a sequence materializes.
pub const DEFAULT_LENGTH_CAP: u64 = 1 << 28;

/// A canonical (lexicographically least) de Bruijn sequence B(k, n):
/// every string in {0,…,k−1}^n occurs exactly once as a cyclic window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnSequence {
    alphabet_size: u32,
    order: u32,
    digits: Vec<u8>,
}

/// Generates B(k, n) under the default length cap.
pub fn generate(k: u32, n: u32) -> Result<DeBruijnSequence> {
    generate_with_cap(k, n, DEFAULT_LENGTH_CAP)
}

/// Generates B(k, n), refusing to materialize more than `cap` symbols.
pub fn generate_with_cap(k: u32, n: u32, cap: u64) -> Result<DeBruijnSequence> {
    if k < 2 {
        return Err(Error::invalid(format!("alphabet size must be >= 2, got {k}")));
    }
    if k > 256 {
        return Err(Error::invalid(format!("alphabet size must be <= 256, got {k}")));
    }
    if n < 1 {
        return Err(Error::invalid(format!("order must be >= 1, got {n}")));
    }
    let length = (k as u128).checked_pow(n).filter(|&l| l <= cap as u128).ok_or(
        Error::BudgetExceeded {
            requested: (k as u128).checked_pow(n).unwrap_or(u128::MAX),
            cap,
        },
    )?;

    // FKM: w holds the current Lyndon-word candidate (1-indexed).
    let mut digits = Vec::with_capacity(length as usize);
    let n = n as usize;
    let mut w = vec![0u8; n + 1];
    let mut t = 1usize;
    loop {
        if n % t == 0 {
            digits.extend_from_slice(&w[1..=t]);
        }
        // Next pre-necklace: extend periodically, then increment the last
        // symbol that is not k−1.
        let mut j = t;
        while j < n {
            j += 1;
            w[j] = w[j - t];
        }
        while j > 0 && w[j] as u32 == k - 1 {
            j -= 1;
        }
        if j == 0 {
            break;
        }
        w[j] += 1;
        t = j;
    }
    debug_assert_eq!(digits.len() as u128, length);

    Ok(DeBruijnSequence {
        alphabet_size: k,
        order: n as u32,
        digits,
    })
}

impl DeBruijnSequence {
    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.digits
    }

    /// Number of start positions whose cyclic window of length |w| equals w,
    /// wrapping around the end of the sequence.
    pub fn cyclic_occurrences(&self, w: &[u8]) -> Result<u64> {
        if w.is_empty() || w.len() > self.digits.len() {
            return Err(Error::invalid(format!(
                "pattern length must be in 1..={}, got {}",
                self.digits.len(),
                w.len()
            )));
        }
        if let Some(&bad) = w.iter().find(|&&s| s as u32 >= self.alphabet_size) {
            return Err(Error::invalid(format!(
                "symbol {bad} outside alphabet 0..{}",
                self.alphabet_size
            )));
        }
        let n = self.digits.len();
        let mut count = 0u64;
        for start in 0..n {
            if w.iter()
                .enumerate()
                .all(|(i, &s)| self.digits[(start + i) % n] == s)
            {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Digits rendered as ASCII '0'..'9'; only valid for alphabets up to 10.
    pub fn to_ascii(&self) -> Result<String> {
        if self.alphabet_size > 10 {
            return Err(Error::invalid(format!(
                "cannot render alphabet of size {} as single ASCII digits",
                self.alphabet_size
            )));
        }
        Ok(self.digits.iter().map(|&d| (b'0' + d) as char).collect())
    }
}
