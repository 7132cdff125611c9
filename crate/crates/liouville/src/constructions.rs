//! The digit-stream constructions and their stage schedules.
//!
//! Four families are supported, all emitting digits most-significant first
//! (digit j carries weight base^−(j+1)):
//!
//! * `FactorialOnes` (base 2): digit j is 1 exactly when j+1 is a
//!   factorial, i.e. the value Σ 2^(−i!).
//! * `SparseNumerals` (base 2): all zeros except that the binary numeral
//!   of i occupies positions i!−len(i) … i!−1 for every i ≥ 3, i.e. the
//!   value Σ_{i≥3} i·2^(−i!). The numerals never overlap (asserted while
//!   streaming), so no carries arise.
//! * `DeBruijnNormal` (any base k ≥ 2): stage i is i^i concatenated copies
//!   of the canonical de Bruijn sequence B(k,i).
//! * `DeBruijnDiluted` (dilution m/n in lowest terms): stage i repeats the
//!   period block 0^((n−m)·k^i) · B(k,i)^m exactly i^i times.
//!
//! Stage boundaries are exact big integers: i! for the factorial layouts,
//! Σ m^m·k^m for the normal construction and Σ (n·k^m)·m^m for the diluted
//! one.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::debruijn;
use crate::error::{Error, Result};

/// Which stream family a recipe describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    /// Ones at factorial positions; the classic sparse Liouville value.
    FactorialOnes,
    /// Binary numerals of 3, 4, 5, … embedded at factorial positions;
    /// disjunctive but with vanishing ones density.
    SparseNumerals,
    /// Stage i = i^i copies of B(k,i); normal to base k.
    DeBruijnNormal,
    /// Zero-padded de Bruijn stages; block-entropy rate tends to m/n.
    DeBruijnDiluted,
}

/// A dilution ratio m/n, 0 < m < n, in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dilution {
    pub numerator: u32,
    pub denominator: u32,
}

impl Dilution {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::invalid(format!(
                "dilution must satisfy 0 < m < n, got {m}/{n}"
            )));
        }
        if m.gcd(&n) != 1 {
            return Err(Error::invalid(format!(
                "dilution must be in lowest terms, got {m}/{n}"
            )));
        }
        Ok(Dilution {
            numerator: m,
            denominator: n,
        })
    }
}

/// Complete description of one constructed stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRecipe {
    kind: ConstructionKind,
    base: u32,
    dilution: Option<Dilution>,
}

impl ConstructionRecipe {
    pub fn factorial_ones() -> Self {
        ConstructionRecipe {
            kind: ConstructionKind::FactorialOnes,
            base: 2,
            dilution: None,
        }
    }

    pub fn sparse_numerals() -> Self {
        ConstructionRecipe {
            kind: ConstructionKind::SparseNumerals,
            base: 2,
            dilution: None,
        }
    }

    pub fn debruijn_normal(base: u32) -> Result<Self> {
        check_base(base)?;
        Ok(ConstructionRecipe {
            kind: ConstructionKind::DeBruijnNormal,
            base,
            dilution: None,
        })
    }

    /// The binary diluted construction with target rate m/n.
    pub fn diluted(m: u32, n: u32) -> Result<Self> {
        Self::diluted_with_base(2, m, n)
    }

    pub fn diluted_with_base(base: u32, m: u32, n: u32) -> Result<Self> {
        check_base(base)?;
        Ok(ConstructionRecipe {
            kind: ConstructionKind::DeBruijnDiluted,
            base,
            dilution: Some(Dilution::new(m, n)?),
        })
    }

    pub fn kind(&self) -> ConstructionKind {
        self.kind
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn dilution(&self) -> Option<Dilution> {
        self.dilution
    }

    /// First stage index that carries content (1 for everything except the
    /// numeral stream, whose first embedded numeral is 3).
    pub fn first_stage(&self) -> u32 {
        match self.kind {
            ConstructionKind::SparseNumerals => 3,
            _ => 1,
        }
    }

    /// Name used by the CLI and in reports.
    pub fn label(&self) -> String {
        match self.kind {
            ConstructionKind::FactorialOnes => "psi1".to_string(),
            ConstructionKind::SparseNumerals => "psi2".to_string(),
            ConstructionKind::DeBruijnNormal => format!("alpha(base {})", self.base),
            ConstructionKind::DeBruijnDiluted => {
                let d = self.dilution.expect("diluted recipe carries a ratio");
                format!("diluted {}/{} (base {})", d.numerator, d.denominator, self.base)
            }
        }
    }

    /// Exact prefix length at the end of stage i, with boundary(0) = 0.
    pub fn stage_boundary(&self, i: u32) -> BigUint {
        match self.kind {
            ConstructionKind::FactorialOnes | ConstructionKind::SparseNumerals => {
                if i == 0 {
                    BigUint::zero()
                } else {
                    factorial_big(i)
                }
            }
            ConstructionKind::DeBruijnNormal => {
                let k = BigUint::from(self.base);
                let mut sum = BigUint::zero();
                for m in 1..=i {
                    sum += BigUint::from(m).pow(m) * k.pow(m);
                }
                sum
            }
            ConstructionKind::DeBruijnDiluted => {
                let d = self.dilution.expect("diluted recipe carries a ratio");
                let k = BigUint::from(self.base);
                let n = BigUint::from(d.denominator);
                let mut sum = BigUint::zero();
                for m in 1..=i {
                    sum += &n * k.pow(m) * BigUint::from(m).pow(m);
                }
                sum
            }
        }
    }

    /// First `length` digits of the stream. Idempotent: always starts at
    /// digit 0.
    pub fn take_prefix(&self, length: u64, cap: u64) -> Result<Vec<u8>> {
        if length > cap {
            return Err(Error::BudgetExceeded {
                requested: length as u128,
                cap,
            });
        }
        let mut out = Vec::with_capacity(length as usize);
        let stream = DigitStream::new(self);
        out.extend(stream.take(length as usize));
        Ok(out)
    }

    /// `length` digits starting at an arbitrary (big) index, without
    /// materializing the prefix before `start`.
    pub fn window_at(&self, start: &BigUint, length: usize, cap: u64) -> Result<Vec<u8>> {
        if length as u64 > cap {
            return Err(Error::BudgetExceeded {
                requested: length as u128,
                cap,
            });
        }
        match self.kind {
            ConstructionKind::FactorialOnes => Ok(ones_window(start, length)),
            ConstructionKind::SparseNumerals => Ok(numerals_window(start, length)),
            ConstructionKind::DeBruijnNormal | ConstructionKind::DeBruijnDiluted => {
                self.staged_window(start, length, cap)
            }
        }
    }

    fn staged_window(&self, start: &BigUint, length: usize, cap: u64) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(length);
        let mut pos = start.clone();
        let end = start + BigUint::from(length);
        let mut stage = 1u32;
        let mut stage_start = BigUint::zero();
        let mut stage_end = self.stage_boundary(1);
        while pos < end {
            while stage_end <= pos {
                stage += 1;
                stage_start = stage_end;
                stage_end = self.stage_boundary(stage);
            }
            let block = self.stage_block(stage, cap)?;
            let period = BigUint::from(block.len());
            let mut idx = ((&pos - &stage_start) % &period)
                .to_usize()
                .expect("block index fits usize");
            while pos < end && pos < stage_end {
                out.push(block[idx]);
                idx += 1;
                if idx == block.len() {
                    idx = 0;
                }
                pos += 1u32;
            }
        }
        Ok(out)
    }

    /// The repeating block of stage i: B(k,i) for the normal construction,
    /// the zero-padded period for the diluted one.
    pub fn stage_block(&self, i: u32, cap: u64) -> Result<Vec<u8>> {
        match self.kind {
            ConstructionKind::DeBruijnNormal => {
                Ok(debruijn::generate_with_cap(self.base, i, cap)?.into_digits())
            }
            ConstructionKind::DeBruijnDiluted => {
                let d = self.dilution.expect("diluted recipe carries a ratio");
                let b = debruijn::generate_with_cap(self.base, i, cap)?;
                let block_len = b.len() as u128 * d.denominator as u128;
                if block_len > cap as u128 {
                    return Err(Error::BudgetExceeded {
                        requested: block_len,
                        cap,
                    });
                }
                let pad = b.len() * (d.denominator - d.numerator) as usize;
                let mut block = vec![0u8; pad];
                for _ in 0..d.numerator {
                    block.extend_from_slice(b.digits());
                }
                Ok(block)
            }
            _ => Err(Error::invalid(
                "stage blocks are only defined for the de Bruijn constructions".to_string(),
            )),
        }
    }
}

fn check_base(base: u32) -> Result<()> {
    if !(2..=256).contains(&base) {
        return Err(Error::invalid(format!("base must be in 2..=256, got {base}")));
    }
    Ok(())
}

/// Precomputed stage boundaries b_0 = 0 < b_1 < b_2 < … for one recipe.
#[derive(Debug, Clone)]
pub struct StageSchedule {
    recipe: ConstructionRecipe,
    boundaries: Vec<BigUint>,
}

impl StageSchedule {
    pub fn up_to(recipe: &ConstructionRecipe, max_stage: u32) -> Self {
        let boundaries = (0..=max_stage).map(|i| recipe.stage_boundary(i)).collect();
        StageSchedule {
            recipe: recipe.clone(),
            boundaries,
        }
    }

    pub fn recipe(&self) -> &ConstructionRecipe {
        &self.recipe
    }

    pub fn boundaries(&self) -> &[BigUint] {
        &self.boundaries
    }

    pub fn boundary(&self, i: u32) -> &BigUint {
        &self.boundaries[i as usize]
    }
}

/// Lazy digit emitter. `Iterator::next` does O(1) amortized work per digit
/// after the one-off cost of materializing each stage's block.
pub struct DigitStream {
    cursor: u64,
    state: StreamState,
}

enum StreamState {
    Ones {
        // position of the next 1 (= i!−1), None once it leaves u64 range
        next_one: Option<u64>,
        index: u64,
    },
    Numerals {
        digits: Vec<u8>,
        start: u64,
        value: u64,
        exhausted: bool,
    },
    Staged {
        recipe: ConstructionRecipe,
        stage: u32,
        block: Vec<u8>,
        pos: usize,
        remaining: u128,
    },
}

impl DigitStream {
    pub fn new(recipe: &ConstructionRecipe) -> Self {
        let state = match recipe.kind {
            ConstructionKind::FactorialOnes => StreamState::Ones {
                next_one: Some(0),
                index: 1,
            },
            ConstructionKind::SparseNumerals => {
                let digits = numeral_bits(3);
                StreamState::Numerals {
                    start: 6 - digits.len() as u64,
                    digits,
                    value: 3,
                    exhausted: false,
                }
            }
            ConstructionKind::DeBruijnNormal | ConstructionKind::DeBruijnDiluted => {
                let block = recipe
                    .stage_block(1, u64::MAX)
                    .expect("stage 1 block is tiny");
                StreamState::Staged {
                    recipe: recipe.clone(),
                    stage: 1,
                    remaining: stage_length(1, block.len()),
                    block,
                    pos: 0,
                }
            }
        };
        DigitStream { cursor: 0, state }
    }

    pub fn position(&self) -> u64 {
        self.cursor
    }
}

fn stage_length(stage: u32, block_len: usize) -> u128 {
    let copies = sat_pow(stage as u128, stage);
    copies.saturating_mul(block_len as u128)
}

fn sat_pow(base: u128, exp: u32) -> u128 {
    let mut acc = 1u128;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

impl Iterator for DigitStream {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let j = self.cursor;
        self.cursor += 1;
        let digit = match &mut self.state {
            StreamState::Ones { next_one, index } => {
                if *next_one == Some(j) {
                    *index += 1;
                    // next 1 sits at (index)!−1
                    *next_one = factorial_u64(*index).map(|f| f - 1);
                    1
                } else {
                    0
                }
            }
            StreamState::Numerals {
                digits,
                start,
                value,
                exhausted,
            } => {
                if *exhausted || j < *start {
                    0
                } else {
                    let offset = (j - *start) as usize;
                    let d = digits[offset];
                    if offset + 1 == digits.len() {
                        // advance to the next numeral region
                        let prev_end = *start + digits.len() as u64;
                        *value += 1;
                        match factorial_u64(*value) {
                            Some(f) => {
                                *digits = numeral_bits(*value);
                                *start = f - digits.len() as u64;
                                // carry-free layout: regions never touch
                                assert!(
                                    *start >= prev_end,
                                    "numeral regions must be disjoint"
                                );
                            }
                            None => *exhausted = true,
                        }
                    }
                    d
                }
            }
            StreamState::Staged {
                recipe,
                stage,
                block,
                pos,
                remaining,
            } => {
                let d = block[*pos];
                *pos += 1;
                if *pos == block.len() {
                    *pos = 0;
                }
                *remaining -= 1;
                if *remaining == 0 {
                    *stage += 1;
                    *block = recipe
                        .stage_block(*stage, u64::MAX)
                        .expect("stage block bounded by traversed prefix");
                    *pos = 0;
                    *remaining = stage_length(*stage, block.len());
                }
                d
            }
        };
        Some(digit)
    }
}

pub(crate) fn factorial_u64(i: u64) -> Option<u64> {
    let mut acc = 1u64;
    for m in 2..=i {
        acc = acc.checked_mul(m)?;
    }
    Some(acc)
}

pub(crate) fn factorial_big(i: u32) -> BigUint {
    let mut acc = BigUint::one();
    for m in 2..=i as u64 {
        acc *= m;
    }
    acc
}

/// Binary numeral of v, most significant bit first.
pub(crate) fn numeral_bits(v: u64) -> Vec<u8> {
    assert!(v > 0);
    let len = 64 - v.leading_zeros() as u64;
    (0..len).rev().map(|b| ((v >> b) & 1) as u8).collect()
}

fn ones_window(start: &BigUint, length: usize) -> Vec<u8> {
    let mut out = vec![0u8; length];
    let end = start + BigUint::from(length);
    let mut fact = BigUint::one();
    let mut i = 1u64;
    // digit at position f−1 is 1 for every factorial f
    loop {
        if fact >= end {
            break;
        }
        let pos = &fact - 1u32;
        if pos >= *start {
            let offset = (&pos - start).to_usize().expect("window offset");
            out[offset] = 1;
        }
        i += 1;
        fact *= i;
    }
    out
}

fn numerals_window(start: &BigUint, length: usize) -> Vec<u8> {
    let mut out = vec![0u8; length];
    let end = start + BigUint::from(length);
    let mut fact = factorial_big(3);
    let mut v = 3u64;
    loop {
        let digits = numeral_bits(v);
        let region_start = &fact - BigUint::from(digits.len());
        if region_start >= end {
            break;
        }
        for (d_idx, &bit) in digits.iter().enumerate() {
            let pos = &region_start + BigUint::from(d_idx);
            if pos >= *start && pos < end {
                let offset = (&pos - start).to_usize().expect("window offset");
                out[offset] = bit;
            }
        }
        v += 1;
        fact *= v;
    }
    out
}

/// Position of the first occurrence of `pattern` in the sparse-numerals
/// stream, found structurally: any pattern containing a 1 must overlap a
/// numeral region, so only the neighborhoods of the embedded numerals need
/// scanning; all-zero patterns sit in the leading zero run.
///
/// Patterns up to 16 symbols are supported (inter-numeral gaps always
/// exceed that, so a pattern never spans two numerals).
pub fn sparse_numerals_find(pattern: &[u8]) -> Result<Option<BigUint>> {
    if pattern.is_empty() || pattern.len() > 16 {
        return Err(Error::invalid(
            "pattern length must be in 1..=16".to_string(),
        ));
    }
    if pattern.iter().any(|&b| b > 1) {
        return Err(Error::invalid("pattern must be binary".to_string()));
    }
    let recipe = ConstructionRecipe::sparse_numerals();
    if pattern.iter().all(|&b| b == 0) {
        // the stream starts 0000 11 …, and gaps between numerals grow
        let mut v = 3u64;
        loop {
            let gap_start = if v == 3 {
                BigUint::zero()
            } else {
                factorial_big(v as u32 - 1)
            };
            let gap_end = factorial_big(v as u32) - BigUint::from(numeral_bits(v).len());
            if &gap_end - &gap_start >= BigUint::from(pattern.len()) {
                return Ok(Some(gap_start));
            }
            v += 1;
        }
    }
    // strip leading zeros: the remainder starts with 1, so it is the
    // numeral of some integer — or a prefix of a slightly larger one
    // (appending zero bits), which caps the search at max(core, 8);
    // the zero run fits in any inter-numeral gap past the first
    let zeros = pattern.iter().take_while(|&&b| b == 0).count();
    let core = &pattern[zeros..];
    let core_value = core.iter().fold(0u64, |acc, &b| acc * 2 + b as u64);
    let margin = pattern.len() - 1;
    let mut best: Option<BigUint> = None;
    for v in 3..=core_value.max(8) {
        let digits = numeral_bits(v);
        let region_start = factorial_big(v as u32) - BigUint::from(digits.len());
        let scan_start = if region_start > BigUint::from(margin) {
            &region_start - BigUint::from(margin)
        } else {
            BigUint::zero()
        };
        let scan_len = digits.len() + 2 * margin;
        let window = recipe.window_at(&scan_start, scan_len, u64::MAX)?;
        if let Some(hit) = window.windows(pattern.len()).position(|w| w == pattern) {
            let pos = &scan_start + BigUint::from(hit);
            if best.as_ref().is_none_or(|b| pos < *b) {
                best = Some(pos);
            }
        }
        if best.is_some() {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CAP: u64 = 1 << 28;

    fn ascii(digits: &[u8]) -> String {
        digits.iter().map(|&d| (b'0' + d) as char).collect()
    }

    #[test]
    fn normal_alpha_first_18_digits() {
        let r = ConstructionRecipe::debruijn_normal(2).unwrap();
        assert_eq!(ascii(&r.take_prefix(18, CAP).unwrap()), "010011001100110011");
        assert_eq!(ascii(&r.take_prefix(2, CAP).unwrap()), "01");
    }

    #[test]
    fn factorial_ones_mask() {
        let r = ConstructionRecipe::factorial_ones();
        assert_eq!(ascii(&r.take_prefix(6, CAP).unwrap()), "110001");
        assert_eq!(r.take_prefix(0, CAP).unwrap(), Vec::<u8>::new());
        // ones exactly at i!−1
        let prefix = r.take_prefix(5040, CAP).unwrap();
        let ones: Vec<usize> = prefix
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(j, _)| j)
            .collect();
        assert_eq!(ones, vec![0, 1, 5, 23, 119, 719, 5039]);
    }

    #[test]
    fn diluted_first_stage_block() {
        let r = ConstructionRecipe::diluted(1, 2).unwrap();
        assert_eq!(ascii(&r.take_prefix(4, CAP).unwrap()), "0001");
        assert_eq!(ascii(&r.stage_block(1, CAP).unwrap()), "0001");
    }

    #[test]
    fn sparse_numerals_layout() {
        let r = ConstructionRecipe::sparse_numerals();
        let prefix = r.take_prefix(30, CAP).unwrap();
        // numeral of 3 = "11" ends at 3!−1 = 5; numeral of 4 = "100" ends at 23
        assert_eq!(ascii(&prefix[..6]), "000011");
        assert_eq!(ascii(&prefix[21..24]), "100");
        assert!(prefix[6..21].iter().all(|&d| d == 0));
    }

    #[test]
    fn stage_boundaries_frozen() {
        let alpha = ConstructionRecipe::debruijn_normal(2).unwrap();
        let expected = [0u64, 2, 18, 234, 4330, 104330, 3090314];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(alpha.stage_boundary(i as u32), BigUint::from(want));
        }
        let d = ConstructionRecipe::diluted(1, 2).unwrap();
        assert_eq!(d.stage_boundary(1), BigUint::from(4u32));
        assert_eq!(d.stage_boundary(2), BigUint::from(36u32));
        let psi = ConstructionRecipe::factorial_ones();
        assert_eq!(psi.stage_boundary(4), BigUint::from(24u32));
    }

    #[test]
    fn normal_boundary_growth_bound() {
        // b_i < 2 · i^i · 2^i for i = 1..20
        let alpha = ConstructionRecipe::debruijn_normal(2).unwrap();
        for i in 1..=20u32 {
            let b = alpha.stage_boundary(i);
            let bound = BigUint::from(2u32) * BigUint::from(i).pow(i) * BigUint::from(2u32).pow(i);
            assert!(b < bound, "stage {i}");
        }
    }

    #[test]
    fn stage_content_parses_into_debruijn_copies() {
        let alpha = ConstructionRecipe::debruijn_normal(2).unwrap();
        let schedule = StageSchedule::up_to(&alpha, 4);
        let prefix = alpha.take_prefix(4330, CAP).unwrap();
        for i in 1..=4u32 {
            let lo = schedule.boundary(i - 1).to_usize().unwrap();
            let hi = schedule.boundary(i).to_usize().unwrap();
            let block = debruijn::generate(2, i).unwrap();
            let stage = &prefix[lo..hi];
            assert_eq!(stage.len() % block.len(), 0);
            assert_eq!(stage.len() / block.len(), (i as usize).pow(i));
            for chunk in stage.chunks(block.len()) {
                assert_eq!(chunk, block.digits(), "stage {i}");
            }
        }
    }

    #[test]
    fn diluted_stage_content() {
        let r = ConstructionRecipe::diluted(2, 3).unwrap();
        let schedule = StageSchedule::up_to(&r, 3);
        let hi = schedule.boundary(3).to_u64().unwrap();
        let prefix = r.take_prefix(hi, CAP).unwrap();
        for i in 1..=3u32 {
            let lo = schedule.boundary(i - 1).to_usize().unwrap();
            let hi = schedule.boundary(i).to_usize().unwrap();
            let block = r.stage_block(i, CAP).unwrap();
            let stage = &prefix[lo..hi];
            assert_eq!(stage.len() / block.len(), (i as usize).pow(i));
            for chunk in stage.chunks(block.len()) {
                assert_eq!(chunk, &block[..]);
            }
        }
    }

    #[test]
    fn window_matches_prefix_for_all_kinds() {
        let recipes = [
            ConstructionRecipe::factorial_ones(),
            ConstructionRecipe::sparse_numerals(),
            ConstructionRecipe::debruijn_normal(2).unwrap(),
            ConstructionRecipe::debruijn_normal(3).unwrap(),
            ConstructionRecipe::diluted(1, 2).unwrap(),
            ConstructionRecipe::diluted(3, 5).unwrap(),
        ];
        for r in &recipes {
            let prefix = r.take_prefix(2000, CAP).unwrap();
            for (start, len) in [(0u64, 40usize), (1, 17), (233, 100), (1900, 100), (999, 1)] {
                let w = r.window_at(&BigUint::from(start), len, CAP).unwrap();
                assert_eq!(w, prefix[start as usize..start as usize + len], "{}", r.label());
            }
        }
    }

    #[test]
    fn ones_count_bound_in_numeral_stream() {
        // at prefix i! there are at most i(⌊log2 i⌋+1) ones
        let r = ConstructionRecipe::sparse_numerals();
        let prefix = r.take_prefix(40320, CAP).unwrap();
        for i in 3..=8u64 {
            let n = factorial_u64(i).unwrap() as usize;
            let ones = prefix[..n].iter().filter(|&&d| d == 1).count() as u64;
            let bound = i * (63 - i.leading_zeros() as u64 + 1);
            assert!(ones <= bound, "i={i}: {ones} > {bound}");
        }
    }

    #[test]
    fn disjunctive_witness_for_all_short_strings() {
        // every binary w with |w| <= 8 appears as 1w somewhere
        for len in 0..=8usize {
            for bits in 0..(1u32 << len) {
                let mut pattern = vec![1u8];
                for b in (0..len).rev() {
                    pattern.push(((bits >> b) & 1) as u8);
                }
                let hit = sparse_numerals_find(&pattern).unwrap();
                assert!(hit.is_some(), "pattern {pattern:?} not found");
            }
        }
    }

    #[test]
    fn found_positions_really_contain_the_pattern() {
        let r = ConstructionRecipe::sparse_numerals();
        for pattern in [
            vec![1u8, 1, 1, 1, 1, 1, 1, 1, 1],
            vec![0, 0, 0, 0, 1],
            vec![1, 0, 1, 0, 1],
            vec![0, 0, 0, 0],
        ] {
            let pos = sparse_numerals_find(&pattern).unwrap().unwrap();
            let w = r.window_at(&pos, pattern.len(), u64::MAX).unwrap();
            assert_eq!(w, pattern, "at {pos}");
        }
    }

    #[test]
    fn long_zero_runs_before_short_cores_are_found() {
        // the zero run outgrows the gap before the first numeral, so the
        // match has to land in front of a later numeral sharing the prefix
        let r = ConstructionRecipe::sparse_numerals();
        for zeros in 0..=13usize {
            for core in [vec![1u8], vec![1, 0], vec![1, 1], vec![1, 1, 1]] {
                let mut pattern = vec![0u8; zeros];
                pattern.extend_from_slice(&core);
                if pattern.len() > 16 {
                    continue;
                }
                let pos = sparse_numerals_find(&pattern)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{pattern:?} not found"));
                let w = r.window_at(&pos, pattern.len(), u64::MAX).unwrap();
                assert_eq!(w, pattern);
            }
        }
    }

    #[test]
    fn rejects_invalid_dilutions() {
        assert!(ConstructionRecipe::diluted(2, 4).is_err());
        assert!(ConstructionRecipe::diluted(0, 2).is_err());
        assert!(ConstructionRecipe::diluted(3, 3).is_err());
        assert!(ConstructionRecipe::diluted(5, 3).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let r = ConstructionRecipe::debruijn_normal(2).unwrap();
        assert!(matches!(
            r.take_prefix(1000, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn prefix_consistency(a in 0u64..3000, b in 0u64..3000, which in 0usize..6) {
            let recipes = [
                ConstructionRecipe::factorial_ones(),
                ConstructionRecipe::sparse_numerals(),
                ConstructionRecipe::debruijn_normal(2).unwrap(),
                ConstructionRecipe::debruijn_normal(4).unwrap(),
                ConstructionRecipe::diluted(1, 3).unwrap(),
                ConstructionRecipe::diluted(2, 3).unwrap(),
            ];
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let r = &recipes[which];
            let long = r.take_prefix(hi, CAP).unwrap();
            let short = r.take_prefix(lo, CAP).unwrap();
            prop_assert_eq!(&long[..lo as usize], &short[..]);
            let base = r.base() as u8;
            prop_assert!(long.iter().all(|&d| d < base));
        }
    }
}
