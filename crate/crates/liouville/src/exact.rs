//! Exact rational arithmetic, stage convergents, and decidable Liouville
//! certificates.
//!
//! A [`Convergent`] for stage i is the rational whose expansion reproduces
//! the stream through the end of stage i and then repeats the stage block
//! forever; its numerator and denominator are kept exactly as constructed
//! (never reduced — reducing would only shrink the denominator and
//! strengthen every certificate, so the unreduced form is the conservative
//! one to certify).
//!
//! The certificate itself avoids all irrational arithmetic. If the first B
//! base-k digits of p/q equal the stream's first B digits, both numbers lie
//! in one half-open interval of width k^−B, and the stream value stays
//! strictly inside it as soon as one later stream digit is below k−1. So
//!
//! > agreement ≥ required,  where required = ⌈log_k(q^i)⌉,
//!
//! certifies |α − p/q| < k^−B ≤ q^−i with integer comparisons only. Digit
//! agreement is decided by one multiplication: the first B digits of p/q
//! equal the integer P exactly when 0 ≤ p·k^B − P·q < q.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::constructions::{factorial_big, numeral_bits, ConstructionKind, ConstructionRecipe};
use crate::error::{Error, Result};

/// A fraction num/den with den > 0. Not reduced unless asked.
#[derive(Debug, Clone)]
pub struct ExactRational {
    num: BigInt,
    den: BigInt,
}

impl ExactRational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("denominator must be nonzero"));
        }
        if den.is_negative() {
            Ok(ExactRational { num: -num, den: -den })
        } else {
            Ok(ExactRational { num, den })
        }
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        ExactRational {
            num: v.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when 0 ≤ self < 1.
    pub fn is_proper(&self) -> bool {
        !self.num.is_negative() && self.num < self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        ExactRational {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExactRational {
            num: &self.num * &other.den - &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExactRational {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn abs(&self) -> Self {
        ExactRational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactRational {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    pub fn reduced(&self) -> Self {
        let g = self.num.gcd(&self.den);
        if g.is_zero() {
            return self.clone();
        }
        ExactRational {
            num: &self.num / &g,
            den: &self.den / &g,
        }
    }

    /// First `count` base-k digits of self, which must lie in [0, 1).
    /// Plain long division, batched: each step multiplies the remainder by
    /// k^chunk and splits off the integer part.
    pub fn expansion_digits(&self, base: u32, count: u64) -> Result<Vec<u8>> {
        if !(2..=256).contains(&base) {
            return Err(Error::invalid(format!("base must be in 2..=256, got {base}")));
        }
        if !self.is_proper() {
            return Err(Error::invalid(format!(
                "expansion requires 0 <= value < 1, got {}/{}",
                self.num, self.den
            )));
        }
        let q = self.den.to_biguint().expect("positive denominator");
        let mut rem = self.num.to_biguint().expect("proper value is nonnegative");
        let mut out = Vec::with_capacity(count as usize);
        let chunk = (count / 16).clamp(4096, 1 << 17);
        let chunk_scale = pow_base(base, chunk);
        let mut remaining = count;
        while remaining > 0 {
            let c = remaining.min(chunk);
            let scale = if c == chunk {
                chunk_scale.clone()
            } else {
                pow_base(base, c)
            };
            let (d, r) = (rem * scale).div_rem(&q);
            out.extend_from_slice(&to_digits_padded(&d, base, c as usize));
            rem = r;
            remaining -= c;
        }
        Ok(out)
    }
}

impl PartialEq for ExactRational {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ExactRational {}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // denominators are positive, so cross-multiplication preserves order
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl std::fmt::Display for ExactRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// k^e over big integers, with the base-2 case done as a shift.
pub fn pow_base(base: u32, exp: u64) -> BigUint {
    if base == 2 {
        BigUint::one() << usize::try_from(exp).expect("exponent fits usize")
    } else {
        BigUint::from(base).pow(u32::try_from(exp).expect("exponent fits u32"))
    }
}

/// Integer value of a digit string (most significant first).
pub fn digits_to_biguint(digits: &[u8], base: u32) -> BigUint {
    if digits.is_empty() {
        return BigUint::zero();
    }
    BigUint::from_radix_be(digits, base).expect("digits below base")
}

/// Digit string of v in the given base, left-padded with zeros to `width`.
pub fn to_digits_padded(v: &BigUint, base: u32, width: usize) -> Vec<u8> {
    let raw = v.to_radix_be(base);
    assert!(raw.len() <= width, "value does not fit the requested width");
    let mut out = vec![0u8; width - raw.len()];
    out.extend_from_slice(&raw);
    out
}

/// Smallest B ≥ 0 with base^B ≥ x.
pub fn ceil_log(base: u32, x: &BigUint) -> BigUint {
    if x <= &BigUint::one() {
        return BigUint::zero();
    }
    if base == 2 {
        return BigUint::from((x - 1u32).bits());
    }
    // estimate from the bit length, then correct by exact comparison
    let bits = x.bits();
    let est = ((bits.saturating_sub(1)) as f64 * std::f64::consts::LN_2 / (base as f64).ln())
        .floor() as u64;
    let mut b = est.saturating_sub(2);
    let mut t = pow_base(base, b);
    while t < *x {
        t *= base;
        b += 1;
    }
    BigUint::from(b)
}

/// Stage-i rational approximant: expansion equals the stream through the
/// end of stage i, then repeats the stage block forever.
#[derive(Debug, Clone)]
pub struct Convergent {
    pub value: ExactRational,
    pub stage: u32,
    /// Guaranteed digit-match length with the stream (the stage boundary).
    pub agreement_digits: BigUint,
    /// ⌈log2 q⌉ of the unreduced denominator.
    pub q_bits: u64,
}

pub fn convergent(recipe: &ConstructionRecipe, stage: u32, cap: u64) -> Result<Convergent> {
    if stage < recipe.first_stage() {
        return Err(Error::invalid(format!(
            "stage must be >= {} for {}, got {stage}",
            recipe.first_stage(),
            recipe.label()
        )));
    }
    let base = recipe.base();
    let (p, q, agreement) = match recipe.kind() {
        ConstructionKind::FactorialOnes => {
            let exps = checked_factorials(stage, cap)?;
            let top = exps[stage as usize];
            // Σ_{j<=stage} 2^(top − j!) over denominator 2^top
            let mut p = BigUint::zero();
            for &e in &exps[1..] {
                p += pow_base(2, top - e);
            }
            let q = pow_base(2, top);
            let agreement = factorial_big(stage + 1) - 1u32;
            (p, q, agreement)
        }
        ConstructionKind::SparseNumerals => {
            let exps = checked_factorials(stage, cap)?;
            let top = exps[stage as usize];
            // Σ_{3<=j<=stage} j · 2^(top − j!)
            let mut p = BigUint::zero();
            for (j, &e) in exps.iter().enumerate().skip(3) {
                p += BigUint::from(j) * pow_base(2, top - e);
            }
            let q = pow_base(2, top);
            let next_len = numeral_bits(stage as u64 + 1).len();
            let agreement = factorial_big(stage + 1) - BigUint::from(next_len);
            (p, q, agreement)
        }
        ConstructionKind::DeBruijnNormal | ConstructionKind::DeBruijnDiluted => {
            let prev = recipe
                .stage_boundary(stage - 1)
                .to_u64()
                .ok_or(Error::BudgetExceeded {
                    requested: u128::MAX,
                    cap,
                })?;
            if prev > cap {
                return Err(Error::BudgetExceeded {
                    requested: prev as u128,
                    cap,
                });
            }
            let head = digits_to_biguint(&recipe.take_prefix(prev, cap)?, base);
            let block = recipe.stage_block(stage, cap)?;
            let block_int = digits_to_biguint(&block, base);
            let period = block.len() as u64;
            let repeat = pow_base(base, period) - BigUint::one();
            // head/k^prev + block/((k^period − 1)·k^prev)
            let p = head * &repeat + block_int;
            let q = repeat * pow_base(base, prev);
            (p, q, recipe.stage_boundary(stage))
        }
    };
    let q_bits = (&q - 1u32).bits();
    let value = ExactRational::new(BigInt::from(p), BigInt::from(q))?;
    Ok(Convergent {
        value,
        stage,
        agreement_digits: agreement,
        q_bits,
    })
}

/// Factorials 0!..=stage! as u64 exponents, rejecting stages whose
/// denominator exponent would blow past the symbol budget.
fn checked_factorials(stage: u32, cap: u64) -> Result<Vec<u64>> {
    let mut exps = vec![1u64; stage as usize + 1];
    for j in 2..=stage as u64 {
        let f = exps[j as usize - 1]
            .checked_mul(j)
            .filter(|&f| f <= cap)
            .ok_or(Error::BudgetExceeded {
                requested: u128::MAX,
                cap,
            })?;
        exps[j as usize] = f;
    }
    Ok(exps)
}

/// Per-stage certification outcome.
#[derive(Debug, Clone)]
pub struct StageReport {
    pub stage: u32,
    pub q_bits: u64,
    /// Verified digit-match length between the stream and the convergent.
    pub agreement: BigUint,
    /// Digits needed so that k^−agreement ≤ q^−stage.
    pub required: BigUint,
    pub holds: bool,
}

/// Checks the Liouville inequality |α − p_i/q_i| < 1/q_i^i for one stage,
/// entirely in integer arithmetic. A `holds = false` outcome is a report,
/// not an error.
pub fn verify_liouville_stage(
    recipe: &ConstructionRecipe,
    stage: u32,
    cap: u64,
) -> Result<StageReport> {
    const LOOKAHEAD: u64 = 64;
    let conv = convergent(recipe, stage, cap)?;
    let b = conv
        .agreement_digits
        .to_u64()
        .filter(|&b| b.saturating_add(LOOKAHEAD) <= cap)
        .ok_or(Error::BudgetExceeded {
            requested: conv.agreement_digits.to_u128().unwrap_or(u128::MAX),
            cap,
        })?;
    let base = recipe.base();
    let digits = recipe.take_prefix(b + LOOKAHEAD, cap)?;

    let agreement = agreement_length(&conv.value, &digits[..b as usize], base);
    let q = conv.value.denom().to_biguint().expect("q > 0");
    let required = ceil_log(base, &q.pow(stage));

    // The interval argument needs the stream to stay strictly below the
    // right endpoint: some digit after the matched prefix must be < k−1.
    let max_digit = (base - 1) as u8;
    let strict = digits[agreement as usize..]
        .iter()
        .any(|&d| d < max_digit);

    let holds = BigUint::from(agreement) >= required && strict;
    Ok(StageReport {
        stage,
        q_bits: conv.q_bits,
        agreement: BigUint::from(agreement),
        required,
        holds,
    })
}

/// Length of the longest common prefix between the base-k expansion of
/// `value` and `digits`. The full-length test is one big multiplication;
/// only a mismatch falls back to bisection.
pub fn agreement_length(value: &ExactRational, digits: &[u8], base: u32) -> u64 {
    if expansion_starts_with(value, digits, base) {
        return digits.len() as u64;
    }
    let (mut lo, mut hi) = (0u64, digits.len() as u64); // invariant: lo matches, hi does not
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if expansion_starts_with(value, &digits[..mid as usize], base) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// True when the first |digits| base-k digits of `value` equal `digits`:
/// 0 ≤ p·k^B − P·q < q.
pub fn expansion_starts_with(value: &ExactRational, digits: &[u8], base: u32) -> bool {
    let p = match value.numer().to_biguint() {
        Some(p) => p,
        None => return false,
    };
    let q = value.denom().to_biguint().expect("q > 0");
    let prefix_int = digits_to_biguint(digits, base);
    let shifted = p * pow_base(base, digits.len() as u64);
    let floor_part = prefix_int * &q;
    shifted >= floor_part && shifted - floor_part < q
}

/// Certification reports for all stages from the recipe's first up to
/// `max_stage` inclusive.
pub fn verify_stages(
    recipe: &ConstructionRecipe,
    max_stage: u32,
    cap: u64,
) -> Result<Vec<StageReport>> {
    (recipe.first_stage()..=max_stage)
        .map(|i| verify_liouville_stage(recipe, i, cap))
        .collect()
}
