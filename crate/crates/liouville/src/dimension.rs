//! Block frequency counting, Shannon entropy, and finite-state dimension
//! estimation over digit strings.
//!
//! Counting runs in one pass with a rolling window key, O(|x|) time and
//! O(k^m) memory. Entropies are reported in bits together with the
//! normalized rate H/(m·log2 k), so rates stay in [0, 1] for every
//! alphabet. True liminf/limsup rates are limits and not computable from
//! finite data; the profile therefore reports the sampled trajectory plus
//! min/max over the samples, explicitly as estimates.

use crate::constructions::ConstructionRecipe;
use crate::error::{Error, Result};

/// Largest block-key space k^m a frequency table may allocate.
pub const TABLE_CAP: u64 = 1 << 22;

/// How windows are placed over the string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// Overlapping windows at every start position (|x|−m+1 of them).
    Sliding,
    /// Non-overlapping blocks left to right (⌊|x|/m⌋ of them).
    Disjoint,
    /// Overlapping windows at every position, wrapping around the end
    /// (|x| of them). This is the window semantics of a period block.
    CyclicSliding,
}

impl CountMode {
    pub fn label(&self) -> &'static str {
        match self {
            CountMode::Sliding => "sliding",
            CountMode::Disjoint => "disjoint",
            CountMode::CyclicSliding => "cyclic",
        }
    }
}

/// Exact occurrence counts of every length-m block of a string.
#[derive(Debug, Clone)]
pub struct FrequencyTable {
    base: u32,
    block_size: usize,
    mode: CountMode,
    counts: Vec<u64>,
    window_total: u64,
}

/// Number of times w occurs in x, sliding and non-cyclic.
pub fn count_occurrences(w: &[u8], x: &[u8]) -> Result<u64> {
    if w.is_empty() || w.len() > x.len() {
        return Err(Error::invalid(format!(
            "pattern length must be in 1..={}, got {}",
            x.len(),
            w.len()
        )));
    }
    Ok(x.windows(w.len()).filter(|win| *win == w).count() as u64)
}

/// Counts all length-m blocks of x in the requested mode.
pub fn block_frequencies(x: &[u8], m: usize, mode: CountMode, base: u32) -> Result<FrequencyTable> {
    if m == 0 {
        return Err(Error::invalid("block size must be positive"));
    }
    if x.len() < m {
        return Err(Error::invalid(format!(
            "string of length {} is shorter than block size {m}",
            x.len()
        )));
    }
    if let Some(&bad) = x.iter().find(|&&d| d as u32 >= base) {
        return Err(Error::invalid(format!("symbol {bad} outside alphabet 0..{base}")));
    }
    let size = (base as u64)
        .checked_pow(m as u32)
        .filter(|&s| s <= TABLE_CAP)
        .ok_or(Error::BudgetExceeded {
            requested: (base as u128).pow(m as u32),
            cap: TABLE_CAP,
        })?;
    let mut table = FrequencyTable {
        base,
        block_size: m,
        mode,
        counts: vec![0u64; size as usize],
        window_total: 0,
    };
    let modulus = size;
    match mode {
        CountMode::Sliding => {
            let mut key = 0u64;
            for (i, &d) in x.iter().enumerate() {
                key = (key * base as u64 + d as u64) % modulus;
                if i + 1 >= m {
                    table.counts[key as usize] += 1;
                    table.window_total += 1;
                }
            }
        }
        CountMode::Disjoint => {
            for chunk in x.chunks_exact(m) {
                let key = chunk.iter().fold(0u64, |k, &d| k * base as u64 + d as u64);
                table.counts[key as usize] += 1;
                table.window_total += 1;
            }
        }
        CountMode::CyclicSliding => {
            let mut key = 0u64;
            for (i, &d) in x.iter().chain(x[..m - 1].iter()).enumerate() {
                key = (key * base as u64 + d as u64) % modulus;
                if i + 1 >= m {
                    table.counts[key as usize] += 1;
                    table.window_total += 1;
                }
            }
        }
    }
    Ok(table)
}

impl FrequencyTable {
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }

    pub fn window_total(&self) -> u64 {
        self.window_total
    }

    pub fn count_of(&self, w: &[u8]) -> Result<u64> {
        if w.len() != self.block_size {
            return Err(Error::invalid(format!(
                "expected block of size {}, got {}",
                self.block_size,
                w.len()
            )));
        }
        if let Some(&bad) = w.iter().find(|&&d| d as u32 >= self.base) {
            return Err(Error::invalid(format!(
                "symbol {bad} outside alphabet 0..{}",
                self.base
            )));
        }
        let key = w.iter().fold(0u64, |k, &d| k * self.base as u64 + d as u64);
        Ok(self.counts[key as usize])
    }

    /// (block digits, count) for every block that occurred.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<u8>, u64)> + '_ {
        self.counts.iter().enumerate().filter_map(move |(key, &c)| {
            if c == 0 {
                return None;
            }
            let mut digits = vec![0u8; self.block_size];
            let mut k = key as u64;
            for d in digits.iter_mut().rev() {
                *d = (k % self.base as u64) as u8;
                k /= self.base as u64;
            }
            Some((digits, c))
        })
    }

    pub(crate) fn raw_counts(&self) -> &[u64] {
        &self.counts
    }
}

/// Shannon entropy of the empirical block distribution, in bits, with the
/// 0·log(1/0) = 0 convention.
pub fn shannon_entropy(table: &FrequencyTable) -> f64 {
    entropy_bits(table.raw_counts(), table.window_total)
}

/// Entropy normalized per symbol and per log of the alphabet size, so the
/// result lies in [0, 1].
pub fn normalized_rate(table: &FrequencyTable) -> f64 {
    shannon_entropy(table) / (table.block_size as f64 * (table.base as f64).log2())
}

fn entropy_bits(counts: &[u64], total: u64) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let total_f = total as f64;
    let mut sum_c_log_c = 0.0f64;
    for &c in counts {
        if c > 0 {
            let cf = c as f64;
            sum_c_log_c += cf * cf.log2();
        }
    }
    total_f.log2() - sum_c_log_c / total_f
}

/// Closed form for the k-block entropy rate of the k-th stage period of
/// the binary diluted construction with ratio m/n: every block other than
/// 0^k occurs with frequency m/(n·2^k), and 0^k soaks up the rest.
pub fn stage_entropy_closed_form(m: u32, n: u32, k: u32) -> Result<f64> {
    let _ = crate::constructions::Dilution::new(m, n)?;
    if k == 0 || k > 900 {
        return Err(Error::invalid(format!("stage must be in 1..=900, got {k}")));
    }
    let (mf, nf, kf) = (m as f64, n as f64, k as f64);
    let two_k = kf.exp2();
    let off_zero = mf / (nf * two_k);
    let zero_block = (nf - mf) / nf + off_zero;
    let value = off_zero * (two_k - 1.0) * (1.0 / off_zero).log2()
        + zero_block * (1.0 / zero_block).log2();
    Ok(value / kf)
}

/// One sampled entropy measurement.
#[derive(Debug, Clone)]
pub struct EntropyRow {
    pub prefix: u64,
    pub block_size: usize,
    pub mode: CountMode,
    pub windows: u64,
    pub entropy_bits: f64,
    pub rate: f64,
}

/// Trajectory extremes for one (block size, mode) pair across the sampled
/// prefixes — finite-sample stand-ins for liminf and limsup. Samples with
/// fewer than 4·k^m windows are recorded in the trajectory but excluded
/// here: a prefix that cannot even cover the block space says nothing
/// about the limiting rate.
#[derive(Debug, Clone)]
pub struct RateSummary {
    pub block_size: usize,
    pub mode: CountMode,
    pub min_rate: f64,
    pub max_rate: f64,
}

/// Entropy rates of a stream at chosen prefix lengths.
#[derive(Debug, Clone)]
pub struct EntropyReport {
    pub label: String,
    pub base: u32,
    pub rows: Vec<EntropyRow>,
    pub summaries: Vec<RateSummary>,
}

impl EntropyReport {
    /// Desk-scale estimate of the finite-state dimension: min over block
    /// sizes of the smallest sampled rate. An estimate, not the limit.
    pub fn dimension_estimate(&self, mode: CountMode) -> Option<f64> {
        self.summaries
            .iter()
            .filter(|s| s.mode == mode)
            .map(|s| s.min_rate)
            .min_by(f64::total_cmp)
    }

    /// Analogue for the strong dimension: min over block sizes of the
    /// largest sampled rate.
    pub fn strong_dimension_estimate(&self, mode: CountMode) -> Option<f64> {
        self.summaries
            .iter()
            .filter(|s| s.mode == mode)
            .map(|s| s.max_rate)
            .min_by(f64::total_cmp)
    }
}

/// Sliding and disjoint entropy rates of `digits` for every block size up
/// to `m_max`, sampled at each prefix length.
pub fn entropy_profile_digits(
    digits: &[u8],
    base: u32,
    m_max: usize,
    prefix_lengths: &[u64],
) -> Result<EntropyReport> {
    if m_max == 0 {
        return Err(Error::invalid("m_max must be positive"));
    }
    if prefix_lengths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("prefix lengths must be strictly ascending"));
    }
    if let Some(&last) = prefix_lengths.last() {
        if last > digits.len() as u64 {
            return Err(Error::invalid(format!(
                "prefix length {last} exceeds available digits {}",
                digits.len()
            )));
        }
    }
    let mut rows = Vec::new();
    for m in 1..=m_max {
        for &prefix in prefix_lengths {
            if prefix < m as u64 {
                continue;
            }
            let slice = &digits[..prefix as usize];
            for mode in [CountMode::Sliding, CountMode::Disjoint] {
                let table = block_frequencies(slice, m, mode, base)?;
                let entropy = shannon_entropy(&table);
                rows.push(EntropyRow {
                    prefix,
                    block_size: m,
                    mode,
                    windows: table.window_total(),
                    entropy_bits: entropy,
                    rate: entropy / (m as f64 * (base as f64).log2()),
                });
            }
        }
    }
    let mut summaries = Vec::new();
    for m in 1..=m_max {
        let informative = 4 * (base as u64).pow(m as u32);
        for mode in [CountMode::Sliding, CountMode::Disjoint] {
            let rates: Vec<f64> = rows
                .iter()
                .filter(|r| r.block_size == m && r.mode == mode && r.windows >= informative)
                .map(|r| r.rate)
                .collect();
            if rates.is_empty() {
                continue;
            }
            summaries.push(RateSummary {
                block_size: m,
                mode,
                min_rate: rates.iter().copied().fold(f64::INFINITY, f64::min),
                max_rate: rates.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            });
        }
    }
    Ok(EntropyReport {
        label: String::new(),
        base,
        rows,
        summaries,
    })
}

/// Profile of a constructed stream, materializing the longest requested
/// prefix once.
pub fn entropy_rate_profile(
    recipe: &ConstructionRecipe,
    m_max: usize,
    prefix_lengths: &[u64],
    cap: u64,
) -> Result<EntropyReport> {
    let longest = *prefix_lengths
        .last()
        .ok_or_else(|| Error::invalid("at least one prefix length is required"))?;
    let digits = recipe.take_prefix(longest, cap)?;
    let mut report = entropy_profile_digits(&digits, recipe.base(), m_max, prefix_lengths)?;
    report.label = recipe.label();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::ConstructionRecipe;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    const CAP: u64 = 1 << 28;

    #[test]
    fn sliding_count_examples() {
        assert_eq!(count_occurrences(&[0, 0], &[1, 0, 0, 0]).unwrap(), 2);
        assert_eq!(count_occurrences(&[0, 1], &[0, 1, 0, 1]).unwrap(), 2);
        let w = [1u8, 0, 1];
        assert_eq!(count_occurrences(&w, &w).unwrap(), 1);
        assert!(count_occurrences(&[], &[0]).is_err());
        assert!(count_occurrences(&[0, 0], &[0]).is_err());
    }

    #[test]
    fn frequency_table_examples() {
        let x = [0u8, 1, 0, 1];
        let disjoint = block_frequencies(&x, 2, CountMode::Disjoint, 2).unwrap();
        assert_eq!(disjoint.window_total(), 2);
        assert_eq!(disjoint.count_of(&[0, 1]).unwrap(), 2);
        assert_eq!(disjoint.count_of(&[1, 0]).unwrap(), 0);

        let sliding = block_frequencies(&x, 2, CountMode::Sliding, 2).unwrap();
        assert_eq!(sliding.window_total(), 3);
        assert_eq!(sliding.count_of(&[0, 1]).unwrap(), 2);
        assert_eq!(sliding.count_of(&[1, 0]).unwrap(), 1);
    }

    #[test]
    fn entropy_examples() {
        // uniform over all 2^m blocks has entropy m
        for m in 1..=4usize {
            let mut x = Vec::new();
            for v in 0..(1u32 << m) {
                for b in (0..m).rev() {
                    x.push(((v >> b) & 1) as u8);
                }
            }
            let t = block_frequencies(&x, m, CountMode::Disjoint, 2).unwrap();
            assert!((shannon_entropy(&t) - m as f64).abs() < 1e-12);
        }
        // point mass
        let t = block_frequencies(&[1u8; 32], 2, CountMode::Sliding, 2).unwrap();
        assert_eq!(shannon_entropy(&t), 0.0);
        // {1/2, 1/4, 1/4}
        let t = block_frequencies(&[0u8, 0, 1, 2], 1, CountMode::Disjoint, 3).unwrap();
        assert!((shannon_entropy(&t) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn diluted_period_counts_match_closed_form() {
        for (m, n) in [(1u32, 2u32), (1, 3), (2, 3), (3, 5)] {
            let recipe = ConstructionRecipe::diluted(m, n).unwrap();
            for k in 1..=8u32 {
                let block = recipe.stage_block(k, CAP).unwrap();
                let table =
                    block_frequencies(&block, k as usize, CountMode::CyclicSliding, 2).unwrap();
                assert_eq!(table.window_total(), block.len() as u64);
                let zero = vec![0u8; k as usize];
                let expected_zero = (n - m) as u64 * (1u64 << k) + m as u64;
                assert_eq!(table.count_of(&zero).unwrap(), expected_zero, "({m},{n}) k={k}");
                for (digits, count) in table.nonzero() {
                    if digits != zero {
                        assert_eq!(count, m as u64, "({m},{n}) k={k} block {digits:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_counted_entropy() {
        for (m, n) in [(1u32, 2u32), (1, 3), (2, 3), (3, 5)] {
            let recipe = ConstructionRecipe::diluted(m, n).unwrap();
            for k in 1..=8u32 {
                let block = recipe.stage_block(k, CAP).unwrap();
                let table =
                    block_frequencies(&block, k as usize, CountMode::CyclicSliding, 2).unwrap();
                let counted = shannon_entropy(&table) / k as f64;
                let closed = stage_entropy_closed_form(m, n, k).unwrap();
                assert!(
                    (counted - closed).abs() < 1e-12,
                    "({m},{n}) k={k}: counted {counted}, closed {closed}"
                );
            }
        }
    }

    #[test]
    fn closed_form_frozen_value_and_limit() {
        // direct evaluation of the formula at (1,2), k=8
        let v = stage_entropy_closed_form(1, 2, 8).unwrap();
        assert!((v - 0.6226937).abs() < 1e-6, "got {v}");
        // rate approaches m/n, within the (1+log2 n)-scaled envelope
        for (m, n) in [(1u32, 2u32), (1, 3), (2, 3), (3, 5)] {
            let target = m as f64 / n as f64;
            let mut last_gap = f64::INFINITY;
            for k in [8u32, 16, 32, 64] {
                let gap = (stage_entropy_closed_form(m, n, k).unwrap() - target).abs();
                let envelope = 2.5 * (1.0 + (n as f64).log2()) / k as f64;
                assert!(gap <= envelope, "({m},{n}) k={k}: gap {gap} > {envelope}");
                assert!(gap < last_gap, "({m},{n}) k={k}: not shrinking");
                last_gap = gap;
            }
        }
    }

    #[test]
    fn last_term_log_stays_between_bounds() {
        // log2 n > log2(n·2^k / (m + (n−m)·2^k)) > −1
        for (m, n) in [(1u32, 2u32), (1, 3), (2, 3), (3, 5), (4, 7)] {
            for k in 1..=32u32 {
                let two_k = (k as f64).exp2();
                let inner = (n as f64 * two_k) / (m as f64 + (n - m) as f64 * two_k);
                let v = inner.log2();
                assert!(v < (n as f64).log2(), "({m},{n}) k={k}");
                assert!(v > -1.0, "({m},{n}) k={k}");
            }
        }
    }

    #[test]
    fn counted_sliding_over_many_repetitions_approaches_closed_frequencies() {
        let reps = 1000u64;
        for (m, n) in [(1u32, 2u32), (2, 3)] {
            let recipe = ConstructionRecipe::diluted(m, n).unwrap();
            for k in [3u32, 5] {
                let block = recipe.stage_block(k, CAP).unwrap();
                let mut x = Vec::with_capacity(block.len() * reps as usize);
                for _ in 0..reps {
                    x.extend_from_slice(&block);
                }
                let table = block_frequencies(&x, k as usize, CountMode::Sliding, 2).unwrap();
                let total = table.window_total() as f64;
                let period = block.len() as f64;
                let zero = vec![0u8; k as usize];
                let zero_expected = ((n - m) as f64 * (k as f64).exp2() + m as f64)
                    / (n as f64 * (k as f64).exp2());
                let tolerance = 2.0 * k as f64 / (reps as f64 * period);
                let zero_freq = table.count_of(&zero).unwrap() as f64 / total;
                assert!((zero_freq - zero_expected).abs() <= tolerance);
                for (digits, count) in table.nonzero() {
                    if digits != zero {
                        let freq = count as f64 / total;
                        let expected = m as f64 / (n as f64 * (k as f64).exp2());
                        assert!((freq - expected).abs() <= tolerance, "block {digits:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn periodic_disjoint_entropy_equals_one_period_distribution() {
        // prefix = whole periods and m | P: same distribution, same entropy
        let periods: [&[u8]; 3] = [&[0, 1, 1, 0, 1, 0], &[0, 0, 1, 0], &[1, 1, 0, 1, 0, 0, 1, 0]];
        for period in periods {
            for m in 1..=period.len() {
                if period.len() % m != 0 {
                    continue;
                }
                let mut x = Vec::new();
                for _ in 0..1000 {
                    x.extend_from_slice(period);
                }
                let long = block_frequencies(&x, m, CountMode::Disjoint, 2).unwrap();
                let one = block_frequencies(period, m, CountMode::Disjoint, 2).unwrap();
                assert!((shannon_entropy(&long) - shannon_entropy(&one)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn alpha_rate_is_monotone_at_stage_boundaries() {
        let recipe = ConstructionRecipe::debruijn_normal(2).unwrap();
        let boundaries: Vec<u64> = (2..=5)
            .map(|i| recipe.stage_boundary(i).to_u64().unwrap())
            .collect();
        let report = entropy_rate_profile(&recipe, 4, &boundaries, CAP).unwrap();
        for m in 1..=4usize {
            let rates: Vec<f64> = report
                .rows
                .iter()
                .filter(|r| r.block_size == m && r.mode == CountMode::Sliding)
                .map(|r| r.rate)
                .collect();
            // nondecreasing from stage m+1 onward, up to boundary noise
            for w in rates[m.saturating_sub(1)..].windows(2) {
                assert!(w[1] >= w[0] - 0.02, "m={m}: {rates:?}");
            }
        }
    }

    #[test]
    fn sparse_ones_rate_vanishes() {
        let recipe = ConstructionRecipe::factorial_ones();
        let report = entropy_rate_profile(&recipe, 1, &[1 << 20], CAP).unwrap();
        let rate = report
            .rows
            .iter()
            .find(|r| r.mode == CountMode::Sliding)
            .unwrap()
            .rate;
        assert!(rate < 1e-3, "rate {rate}");
    }

    proptest! {
        #[test]
        fn frequencies_sum_to_one_and_entropy_in_range(
            digits in proptest::collection::vec(0u8..3, 8..200),
            m in 1usize..5,
        ) {
            for mode in [CountMode::Sliding, CountMode::Disjoint, CountMode::CyclicSliding] {
                let t = block_frequencies(&digits, m, mode, 3).unwrap();
                let sum: u64 = t.raw_counts().iter().sum();
                prop_assert_eq!(sum, t.window_total());
                let expected_total = match mode {
                    CountMode::Sliding => (digits.len() - m + 1) as u64,
                    CountMode::Disjoint => (digits.len() / m) as u64,
                    CountMode::CyclicSliding => digits.len() as u64,
                };
                prop_assert_eq!(t.window_total(), expected_total);
                let h = shannon_entropy(&t);
                prop_assert!(h >= 0.0);
                prop_assert!(h <= m as f64 * 3f64.log2() + 1e-9);
                let rate = normalized_rate(&t);
                prop_assert!((0.0..=1.0 + 1e-12).contains(&rate));
            }
        }

        #[test]
        fn sliding_table_agrees_with_direct_count(
            digits in proptest::collection::vec(0u8..2, 4..64),
            w in proptest::collection::vec(0u8..2, 1..4),
        ) {
            prop_assume!(w.len() <= digits.len());
            let t = block_frequencies(&digits, w.len(), CountMode::Sliding, 2).unwrap();
            prop_assert_eq!(t.count_of(&w).unwrap(), count_occurrences(&w, &digits).unwrap());
        }
    }
}
