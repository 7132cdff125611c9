//! Primitive-root machinery and the conditional multi-base construction.
//!
//! The building blocks: deterministic Miller–Rabin primality for u64,
//! multiplicative orders via the factorization of p−1, search for primes
//! admitting several bases as simultaneous primitive roots, the maximal
//! period-(p−1) expansion block of 1/p, and equidistribution counts of the
//! orbit a^m/p mod 1.
//!
//! On top of those sits the staged sum
//!
//! > γ = Σ_i S(i),  S(i) = right-shifted Σ_{t=1..f(i)} N(i)·A^(−t(p_i−1)),
//!
//! with A = a_1⋯a_n, P_i = ⌊A^(p_i−1)/p_i⌋ and N(i) = P_i·A^(−(p_i−1)).
//! Whether the per-stage digits really form repeated blocks in every base,
//! and whether digits stay put as later stages are added, is not a theorem
//! at this level of generality — both are checked at build time and
//! reported per stage and base rather than assumed. The Liouville
//! inequality for each partial sum is certified exactly, with the unbuilt
//! tail bounded through the next prime in the schedule.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{to_digits_padded, ExactRational};

/// Order computation and validity of one (base, prime) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveRootCertificate {
    pub base: u64,
    pub prime: u64,
    /// Multiplicative order of base mod prime.
    pub order: u64,
}

impl PrimitiveRootCertificate {
    pub fn is_primitive(&self) -> bool {
        self.order == self.prime - 1
    }
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, a, m);
        }
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the fixed witness set decides correctly for
/// every n < 3.3·10^24.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let trailing = (n - 1).trailing_zeros();
    let odd = (n - 1) >> trailing;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..trailing {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factors of n (without multiplicities), by trial division.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of a mod p for prime p and a not ≡ 0.
pub fn multiplicative_order(a: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if a % p == 0 {
        return Err(Error::invalid(format!("{a} is divisible by {p}")));
    }
    let group = p - 1;
    let mut order = group;
    for q in prime_factors(group) {
        while order % q == 0 && mod_pow(a, order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

pub fn primitive_root_certificate(a: u64, p: u64) -> Result<PrimitiveRootCertificate> {
    let order = multiplicative_order(a, p)?;
    Ok(PrimitiveRootCertificate { base: a, prime: p, order })
}

/// True iff the powers of a mod p realize all p−1 nonzero residues.
pub fn is_primitive_root(a: u64, p: u64) -> Result<bool> {
    Ok(primitive_root_certificate(a, p)?.is_primitive())
}

fn is_perfect_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(2)..=r + 2).any(|c| c * c == n)
}

fn validate_bases(bases: &[u64]) -> Result<()> {
    if bases.is_empty() {
        return Err(Error::invalid("at least one base is required"));
    }
    for &a in bases {
        if a < 2 {
            return Err(Error::invalid(format!("base {a} rejected: must be >= 2")));
        }
        if is_perfect_square(a) {
            return Err(Error::invalid(format!(
                "base {a} rejected: a perfect square is never a primitive root of an odd prime"
            )));
        }
    }
    if bases.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("bases must be strictly ascending"));
    }
    Ok(())
}

/// All primes p ≤ limit having every listed base as a primitive root.
pub fn find_simultaneous_primes(bases: &[u64], limit: u64) -> Result<Vec<u64>> {
    validate_bases(bases)?;
    if limit > 1 << 31 {
        return Err(Error::BudgetExceeded {
            requested: limit as u128,
            cap: 1 << 31,
        });
    }
    let mut out = Vec::new();
    for p in 2..=limit {
        if is_prime(p) && simultaneous_at(bases, p) {
            out.push(p);
        }
    }
    Ok(out)
}

fn simultaneous_at(bases: &[u64], p: u64) -> bool {
    bases
        .iter()
        .all(|&a| a % p != 0 && multiplicative_order(a, p).map(|o| o == p - 1).unwrap_or(false))
}

/// Smallest simultaneous primitive-root prime ≥ from.
fn next_simultaneous_prime(bases: &[u64], from: u64, search_limit: u64) -> Result<u64> {
    let mut p = from.max(2);
    while p <= search_limit {
        if is_prime(p) && simultaneous_at(bases, p) {
            return Ok(p);
        }
        p += 1;
    }
    Err(Error::BudgetExceeded {
        requested: search_limit as u128,
        cap: search_limit,
    })
}

/// The repeating block of the base-a expansion of 1/p; exactly p−1 digits
/// when a is a primitive root of p.
pub fn period_block(a: u64, p: u64) -> Result<Vec<u8>> {
    if a > 256 {
        return Err(Error::invalid(format!(
            "digit alphabet limited to 256, got base {a}"
        )));
    }
    if !is_primitive_root(a, p)? {
        return Err(Error::invalid(format!("{a} is not a primitive root of {p}")));
    }
    let mut digits = Vec::with_capacity((p - 1) as usize);
    let mut r = 1u64;
    for _ in 0..p - 1 {
        r *= a; // a ≤ 256 keeps r·a within u64 for any prime p < 2^56
        digits.push((r / p) as u8);
        r %= p;
    }
    debug_assert_eq!(r, 1, "primitive root must close the cycle at 1/p");
    Ok(digits)
}

/// Bin counts of the orbit points a^m/p mod 1 over a window of p
/// consecutive exponents m ∈ [start, start+p−1], into a^k equal bins.
/// The window covers the full orbit once plus one repeat.
pub fn orbit_bin_counts(a: u64, p: u64, k: u32, start: u64) -> Result<Vec<u64>> {
    orbit_bins(a, p, k, start, p)
}

/// Bin counts over one exact period m ∈ [1, p−1]: every orbit point once.
pub fn orbit_bin_counts_period(a: u64, p: u64, k: u32) -> Result<Vec<u64>> {
    orbit_bins(a, p, k, 1, p - 1)
}

fn orbit_bins(a: u64, p: u64, k: u32, start: u64, window: u64) -> Result<Vec<u64>> {
    if !is_primitive_root(a, p)? {
        return Err(Error::invalid(format!("{a} is not a primitive root of {p}")));
    }
    let bins = a
        .checked_pow(k)
        .filter(|&b| b < p)
        .ok_or_else(|| Error::invalid(format!("need a^k < p, got a={a}, k={k}, p={p}")))?;
    let mut counts = vec![0u64; bins as usize];
    let mut r = mod_pow(a, start, p);
    for _ in 0..window {
        // a^m/p mod 1 = r/p falls in bin ⌊r·a^k/p⌋
        counts[((r as u128 * bins as u128) / p as u128) as usize] += 1;
        r = mod_mul(r, a, p);
    }
    Ok(counts)
}

/// Checks (a_1⋯a_n)^(p−1) ≡ 1 (mod p) and that multiplying the whole
/// power orbit of each base by that quantity leaves the orbit fixed.
pub fn verify_orbit_identity(bases: &[u64], p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let product = bases.iter().fold(1u64, |acc, &a| mod_mul(acc, a % p, p));
    let c = mod_pow(product, p - 1, p);
    if c != 1 {
        return Ok(false);
    }
    for &a in bases {
        let mut plain = Vec::with_capacity(p as usize);
        let mut scaled = Vec::with_capacity(p as usize);
        let mut x = 1u64;
        for _ in 0..p {
            plain.push(x);
            scaled.push(mod_mul(x, c, p));
            x = mod_mul(x, a % p, p);
        }
        plain.sort_unstable();
        scaled.sort_unstable();
        if plain != scaled {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bases, primes, and repetition schedule for one staged construction.
/// `primes` holds one entry beyond the stage count: the tail bound for the
/// last stage looks one prime ahead.
#[derive(Debug, Clone)]
pub struct GammaRecipe {
    pub bases: Vec<u64>,
    pub primes: Vec<u64>,
    pub schedule: Vec<u64>,
    pub stages: u32,
}

impl GammaRecipe {
    /// Validates the primitive-root certificates behind the recipe.
    pub fn check_certificates(&self) -> Result<()> {
        for &p in &self.primes {
            for &a in &self.bases {
                if !is_primitive_root(a, p)? {
                    return Err(Error::invalid(format!(
                        "{a} is not a primitive root of {p}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the default recipe: primes are chosen adaptively so that each
/// stage's Liouville certificate can actually close — the prime after
/// stage i must satisfy p − 1 > (i−1)·E_i + i·(p_i−1), where E_i is the
/// accumulated shift exponent. Consecutive simultaneous primes grow far
/// too slowly for that, so the schedule skips ahead as needed. The
/// repetition counts follow
///
/// > f(i) = i · max(1, ⌈log_an(p_{i+1}) / ((p_i−1)·log_an(a_1))⌉ · (p_i−1)).
pub fn default_gamma_recipe(bases: &[u64], stages: u32, search_limit: u64) -> Result<GammaRecipe> {
    validate_bases(bases)?;
    if stages == 0 || stages > 8 {
        return Err(Error::invalid(format!("stages must be in 1..=8, got {stages}")));
    }
    let a1 = bases[0] as f64;
    let mut primes = vec![next_simultaneous_prime(bases, 2, search_limit)?];
    let mut schedule = Vec::new();
    let mut shift_exp = 0u64; // E_{i-1}
    for i in 1..=stages as u64 {
        let d = primes[i as usize - 1] - 1;
        // f(i) and the next prime depend on each other; iterate to a fixpoint
        let mut f = i * d.max(1);
        let next = loop {
            let e_i = shift_exp + f * d;
            let threshold = (i - 1) * e_i + i * d + 5;
            let candidate = next_simultaneous_prime(
                bases,
                threshold.max(primes[i as usize - 1] + 1),
                search_limit,
            )?;
            let ratio = (candidate as f64).ln() / (d as f64 * a1.ln());
            let f_new = i * ((ratio.ceil() as u64).max(1) * d).max(1);
            if f_new == f {
                break candidate;
            }
            f = f_new;
        };
        schedule.push(f);
        primes.push(next);
        shift_exp += f * d;
    }
    Ok(GammaRecipe {
        bases: bases.to_vec(),
        primes,
        schedule,
        stages,
    })
}

/// Recipe with a caller-provided repetition schedule; primes are the
/// consecutive simultaneous primes. The build still verifies the Liouville
/// inequality exactly, so an unworkable schedule shows up as holds=false.
pub fn gamma_recipe_with_schedule(
    bases: &[u64],
    schedule: Vec<u64>,
    search_limit: u64,
) -> Result<GammaRecipe> {
    validate_bases(bases)?;
    if schedule.is_empty() || schedule.contains(&0) {
        return Err(Error::invalid("schedule entries must be positive"));
    }
    let stages = schedule.len() as u32;
    let mut primes = Vec::with_capacity(schedule.len() + 1);
    let mut from = 2u64;
    for _ in 0..=stages {
        let p = next_simultaneous_prime(bases, from, search_limit)?;
        primes.push(p);
        from = p + 1;
    }
    Ok(GammaRecipe {
        bases: bases.to_vec(),
        primes,
        schedule,
        stages,
    })
}

/// One constructed stage.
#[derive(Debug, Clone)]
pub struct GammaStage {
    pub stage: u32,
    pub prime: u64,
    pub repetitions: u64,
    /// P_i = ⌊A^(p_i−1) / p_i⌋.
    pub block_int: BigUint,
    /// N(i) = P_i · A^(−(p_i−1)).
    pub shifted_block: ExactRational,
    /// S'(i) = Σ_{t=1..f(i)} N(i)·A^(−t(p_i−1)), before the stage shift.
    pub repeated_sum: ExactRational,
    /// S(i) = S'(i)·A^(−E_{i−1}): this stage's contribution to the sum.
    pub contribution: ExactRational,
    /// Exponent of A in this stage's (and partial sum's) denominator.
    pub denominator_exp: u64,
}

/// Per-stage verification outcomes.
#[derive(Debug, Clone)]
pub struct GammaStageReport {
    pub stage: u32,
    pub prime: u64,
    pub repetitions: u64,
    pub q_bits: u64,
    /// Exact Liouville inequality |γ − Γ_i| < q_i^{−i}, with the unbuilt
    /// tail bounded through the prime after the last built stage.
    pub liouville_holds: bool,
    /// Per base: later stages left the digits through this stage's
    /// occupied positions unchanged.
    pub digit_stability: Vec<BaseCheck>,
    /// Per base: the stage's digit span is f(i) repetitions of one block.
    pub block_repetition: Vec<BaseCheck>,
}

#[derive(Debug, Clone)]
pub struct BaseCheck {
    pub base: u64,
    pub passed: bool,
    pub detail: String,
}

/// The assembled construction.
#[derive(Debug)]
pub struct GammaBuild {
    pub recipe: GammaRecipe,
    pub stages: Vec<GammaStage>,
    /// Γ_1 … Γ_N.
    pub partial_sums: Vec<ExactRational>,
    pub reports: Vec<GammaStageReport>,
}

impl GammaBuild {
    /// Final partial sum Γ_N.
    pub fn value(&self) -> &ExactRational {
        self.partial_sums.last().expect("at least one stage")
    }

    /// First `count` digits of Γ_N in one of the recipe's bases.
    pub fn digits(&self, base: u64, count: u64) -> Result<Vec<u8>> {
        if !self.recipe.bases.contains(&base) {
            return Err(Error::invalid(format!("base {base} is not part of the recipe")));
        }
        self.value().expansion_digits(base as u32, count)
    }
}

pub fn build_gamma(recipe: &GammaRecipe) -> Result<GammaBuild> {
    recipe.check_certificates()?;
    if recipe.primes.len() != recipe.stages as usize + 1
        || recipe.schedule.len() != recipe.stages as usize
    {
        return Err(Error::invalid(
            "recipe needs stages+1 primes and one schedule entry per stage",
        ));
    }
    let a: BigUint = recipe.bases.iter().map(|&b| BigUint::from(b)).product();

    let mut stages = Vec::new();
    let mut partial_sums: Vec<ExactRational> = Vec::new();
    let mut shift_exp = 0u64; // E_{i-1}
    let mut numerator = BigUint::zero(); // of Γ_i over A^denominator_exp
    let mut prev_den_exp = 0u64;

    for i in 1..=recipe.stages {
        let p = recipe.primes[i as usize - 1];
        let d = p - 1;
        let f = recipe.schedule[i as usize - 1];
        let a_d = pow_big(&a, d);
        let block_int = &a_d / p;
        let shifted_block =
            ExactRational::new(BigInt::from(block_int.clone()), BigInt::from(a_d.clone()))?;

        // S'(i) = P_i · (A^{f·d} − 1)/(A^d − 1) over A^{(f+1)·d}; the
        // geometric numerator divides exactly
        let a_fd = pow_big(&a, f * d);
        let geo = (&a_fd - 1u32) / (&a_d - 1u32);
        let s_num = &block_int * geo;
        let den_exp = shift_exp + (f + 1) * d; // D_i
        let repeated_sum = ExactRational::new(
            BigInt::from(s_num.clone()),
            BigInt::from(pow_big(&a, (f + 1) * d)),
        )?;
        let contribution =
            ExactRational::new(BigInt::from(s_num.clone()), BigInt::from(pow_big(&a, den_exp)))?;

        // align the running numerator to the new denominator A^{den_exp}
        numerator = numerator * pow_big(&a, den_exp - prev_den_exp) + s_num;
        let gamma_i = ExactRational::new(
            BigInt::from(numerator.clone()),
            BigInt::from(pow_big(&a, den_exp)),
        )?;
        partial_sums.push(gamma_i);

        stages.push(GammaStage {
            stage: i,
            prime: p,
            repetitions: f,
            block_int,
            shifted_block,
            repeated_sum,
            contribution,
            denominator_exp: den_exp,
        });
        shift_exp += f * d;
        prev_den_exp = den_exp;
    }

    let reports = verify_build(recipe, &a, &stages, &partial_sums)?;
    Ok(GammaBuild {
        recipe: recipe.clone(),
        stages,
        partial_sums,
        reports,
    })
}

fn pow_big(a: &BigUint, e: u64) -> BigUint {
    a.pow(u32::try_from(e).expect("exponent fits u32"))
}

fn verify_build(
    recipe: &GammaRecipe,
    a: &BigUint,
    stages: &[GammaStage],
    partial_sums: &[ExactRational],
) -> Result<Vec<GammaStageReport>> {
    let n = stages.len();
    let last = &partial_sums[n - 1];
    let p_next = recipe.primes[n];
    // Σ_{i>N} S(i) < 4·A^{−(E_N + p_{N+1} − 1)}; E_N = D_N − d_N
    let e_n = stages[n - 1].denominator_exp - (stages[n - 1].prime - 1);
    let tail_bound =
        ExactRational::new(BigInt::from(4), BigInt::from(pow_big(a, e_n + p_next - 1)))?;

    let mut reports = Vec::new();
    for (idx, stage) in stages.iter().enumerate() {
        let gamma_i = &partial_sums[idx];
        let q = pow_big(a, stage.denominator_exp);
        let q_bits = (&q - 1u32).bits();
        // |γ − Γ_i| ≤ (Γ_N − Γ_i) + tail < q^{−i}
        let gap = last.sub(gamma_i).add(&tail_bound);
        let rhs = ExactRational::new(BigInt::one(), BigInt::from(q.pow(stage.stage)))?;
        let liouville_holds = gap < rhs;

        let digit_stability = if idx + 1 == n {
            recipe
                .bases
                .iter()
                .map(|&b| BaseCheck {
                    base: b,
                    passed: true,
                    detail: "last built stage; nothing added after it yet".to_string(),
                })
                .collect()
        } else {
            check_stability(recipe, stage, gamma_i, last)?
        };
        let block_repetition = check_repetition(recipe, a, stage, last)?;

        reports.push(GammaStageReport {
            stage: stage.stage,
            prime: stage.prime,
            repetitions: stage.repetitions,
            q_bits,
            liouville_holds,
            digit_stability,
            block_repetition,
        });
    }
    Ok(reports)
}

/// Digits of Γ_i and Γ_N compared through stage i's occupied positions
/// (slightly inside: the boundary digit itself may absorb a carry).
fn check_stability(
    recipe: &GammaRecipe,
    stage: &GammaStage,
    gamma_i: &ExactRational,
    last: &ExactRational,
) -> Result<Vec<BaseCheck>> {
    let a: BigUint = recipe.bases.iter().map(|&b| BigUint::from(b)).product();
    let ln_a = big_ln(&a);
    let mut checks = Vec::new();
    for &b in &recipe.bases {
        let digits = ((stage.denominator_exp as f64 * ln_a) / (b as f64).ln()).floor() as u64;
        let digits = digits.saturating_sub(1);
        if digits == 0 {
            checks.push(BaseCheck {
                base: b,
                passed: true,
                detail: "no positions occupied yet".to_string(),
            });
            continue;
        }
        let early = gamma_i.expansion_digits(b as u32, digits)?;
        let late = last.expansion_digits(b as u32, digits)?;
        let passed = early == late;
        let detail = if passed {
            format!("first {digits} base-{b} digits unchanged")
        } else {
            let at = early.iter().zip(&late).position(|(x, y)| x != y).unwrap_or(0);
            format!("digits diverge at position {at} of {digits} in base {b}")
        };
        checks.push(BaseCheck { base: b, passed, detail });
    }
    Ok(checks)
}

/// A stage's span can only be a repetition of digit blocks in base b when
/// the per-repetition shift A^(p−1) is an exact power of b; that holds for
/// single-base recipes and fails whenever A carries other prime factors.
fn check_repetition(
    recipe: &GammaRecipe,
    a: &BigUint,
    stage: &GammaStage,
    last: &ExactRational,
) -> Result<Vec<BaseCheck>> {
    let d = stage.prime - 1;
    let f = stage.repetitions;
    let start_exp = stage.denominator_exp - f * d; // E_{i-1} + d
    let mut checks = Vec::new();
    for &b in &recipe.bases {
        let block_digits = match exact_power_digits(a, d, b) {
            Some(l) => l,
            None => {
                checks.push(BaseCheck {
                    base: b,
                    passed: false,
                    detail: format!(
                        "shift A^{d} is not a power of {b}; no digit-aligned block exists"
                    ),
                });
                continue;
            }
        };
        let start_digits = match exact_power_digits(a, start_exp, b) {
            Some(s) => s,
            None => {
                checks.push(BaseCheck {
                    base: b,
                    passed: false,
                    detail: format!("stage start A^{start_exp} is not digit-aligned in base {b}"),
                });
                continue;
            }
        };
        let total = start_digits + f * block_digits;
        let digits = last.expansion_digits(b as u32, total)?;
        let span = &digits[start_digits as usize..];
        let expected = to_digits_padded(&stage.block_int, b as u32, block_digits as usize);
        let passed = span.chunks(block_digits as usize).all(|c| c == expected);
        let detail = if passed {
            format!("{f} repetitions of a {block_digits}-digit block in base {b}")
        } else {
            format!("span is not a clean repetition in base {b}")
        };
        checks.push(BaseCheck { base: b, passed, detail });
    }
    Ok(checks)
}

/// If A^e is an exact power of b, returns that power's exponent.
fn exact_power_digits(a: &BigUint, e: u64, b: u64) -> Option<u64> {
    if e == 0 {
        return Some(0);
    }
    let target = pow_big(a, e);
    let guess = (e as f64 * big_ln(a) / (b as f64).ln()).round() as u64;
    for l in guess.saturating_sub(1)..=guess + 1 {
        if BigUint::from(b).pow(u32::try_from(l).ok()?) == target {
            return Some(l);
        }
    }
    None
}

fn big_ln(x: &BigUint) -> f64 {
    // ln via the leading 53 bits; plenty for digit-position estimates
    let bits = x.bits();
    if bits <= 53 {
        (x.to_u64().unwrap() as f64).ln()
    } else {
        let top = (x >> (bits - 53)).to_u64().unwrap() as f64;
        top.ln() + (bits - 53) as f64 * std::f64::consts::LN_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: enumerate all powers of a mod p.
    fn order_by_enumeration(a: u64, p: u64) -> u64 {
        let mut x = a % p;
        let mut order = 1u64;
        while x != 1 {
            x = mod_mul(x, a % p, p);
            order += 1;
        }
        order
    }

    #[test]
    fn primitive_root_examples() {
        assert!(is_primitive_root(2, 13).unwrap());
        assert!(!is_primitive_root(2, 7).unwrap());
        assert!(is_primitive_root(3, 7).unwrap());
        assert!(is_primitive_root(10, 7).unwrap());
    }

    #[test]
    fn order_matches_enumeration_oracle() {
        for p in (3..2000u64).filter(|&p| is_prime(p)) {
            for a in [2u64, 3, 5, 6, 7, 10] {
                if a % p == 0 {
                    assert!(multiplicative_order(a, p).is_err());
                    continue;
                }
                assert_eq!(
                    multiplicative_order(a, p).unwrap(),
                    order_by_enumeration(a, p),
                    "a={a}, p={p}"
                );
            }
        }
    }

    #[test]
    fn rejects_non_primes_and_zero_residues() {
        assert!(matches!(multiplicative_order(2, 15), Err(Error::NotPrime(15))));
        assert!(multiplicative_order(14, 7).is_err());
    }

    #[test]
    fn simultaneous_prime_search() {
        assert_eq!(find_simultaneous_primes(&[2], 20).unwrap(), vec![3, 5, 11, 13, 19]);
        let both = find_simultaneous_primes(&[2, 3], 30).unwrap();
        assert_eq!(both.first(), Some(&5));
        assert!(find_simultaneous_primes(&[4], 10_000).is_err());
        assert!(find_simultaneous_primes(&[1], 100).is_err());
        assert!(find_simultaneous_primes(&[3, 2], 100).is_err());
    }

    #[test]
    fn period_blocks() {
        assert_eq!(period_block(10, 7).unwrap(), vec![1, 4, 2, 8, 5, 7]);
        assert_eq!(
            period_block(2, 13).unwrap(),
            vec![0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 1, 1]
        );
        // block length is forced to p−1
        for (a, p) in [(2u64, 11u64), (3, 17), (10, 23)] {
            if is_primitive_root(a, p).unwrap() {
                assert_eq!(period_block(a, p).unwrap().len() as u64, p - 1);
            }
        }
        assert!(period_block(2, 7).is_err());
    }

    #[test]
    fn period_block_windows_cover_the_orbit() {
        // the doubled block contains, as windows, the digit views of every
        // left-shift of 1/p — all p−1 of them are distinct at full length
        let block = period_block(2, 13).unwrap();
        let doubled = [block.clone(), block.clone()].concat();
        let mut windows: Vec<&[u8]> = doubled.windows(block.len()).take(block.len()).collect();
        windows.sort_unstable();
        windows.dedup();
        assert_eq!(windows.len(), block.len());
    }

    #[test]
    fn orbit_bins_window_and_period() {
        let bins = orbit_bin_counts(2, 13, 1, 0).unwrap();
        assert_eq!(bins.iter().sum::<u64>(), 13);
        for &c in &bins {
            assert!((c as f64 - 6.5).abs() <= 1.0);
        }
        // over one exact period every bin holds ⌊(p−1)/a^k⌋ or ⌈(p−1)/a^k⌉
        for p in (3..500u64).filter(|&p| is_prime(p)) {
            for a in [2u64, 3, 10] {
                if a % p == 0 || !is_primitive_root(a, p).unwrap() {
                    continue;
                }
                let mut k = 1u32;
                while a.pow(k) < p {
                    let counts = orbit_bin_counts_period(a, p, k).unwrap();
                    let lo = (p - 1) / a.pow(k);
                    for &c in &counts {
                        assert!(c == lo || c == lo + 1, "a={a} p={p} k={k}: {c}");
                    }
                    assert_eq!(counts.iter().sum::<u64>(), p - 1);
                    k += 1;
                }
            }
        }
        assert!(orbit_bin_counts(2, 13, 4, 0).is_err()); // 2^4 > 13
    }

    #[test]
    fn orbit_identity_examples() {
        assert!(verify_orbit_identity(&[2, 3], 5).unwrap());
        assert!(verify_orbit_identity(&[2], 3).unwrap());
        for p in find_simultaneous_primes(&[2, 3], 500).unwrap() {
            assert!(verify_orbit_identity(&[2, 3], p).unwrap());
        }
    }

    #[test]
    fn gamma_first_stage_quantities() {
        // {2,3}, p1 = 5: P_1 = ⌊6^4/5⌋ = 259, N(1) = 259/1296
        let recipe = gamma_recipe_with_schedule(&[2, 3], vec![2], 100).unwrap();
        assert_eq!(recipe.primes[0], 5);
        let build = build_gamma(&recipe).unwrap();
        let stage = &build.stages[0];
        assert_eq!(stage.block_int, BigUint::from(259u32));
        assert_eq!(
            stage.shifted_block,
            ExactRational::new(BigInt::from(259), BigInt::from(1296)).unwrap()
        );
        // S'(1) with f = 2 is 259/1296 · (6^−4 + 6^−8); E_0 = 0 so S(1) = S'(1)
        let six = ExactRational::new(BigInt::one(), BigInt::from(1296)).unwrap();
        let expected = stage.shifted_block.mul(&six.add(&six.mul(&six)));
        assert_eq!(stage.repeated_sum, expected);
        assert_eq!(stage.contribution, expected);
    }

    #[test]
    fn gamma_contribution_is_shifted_repeated_sum() {
        let recipe = gamma_recipe_with_schedule(&[2, 3], vec![3, 2], 100).unwrap();
        let build = build_gamma(&recipe).unwrap();
        let mut shift_exp = 0u64;
        for stage in &build.stages {
            let shift = ExactRational::new(
                BigInt::one(),
                BigInt::from(BigUint::from(6u32).pow(shift_exp as u32)),
            )
            .unwrap();
            assert_eq!(stage.contribution, stage.repeated_sum.mul(&shift));
            shift_exp += stage.repetitions * (stage.prime - 1);
        }
    }

    #[test]
    fn gamma_partial_sums_increase_and_stay_below_one() {
        let recipe = default_gamma_recipe(&[2, 3], 2, 1 << 22).unwrap();
        let build = build_gamma(&recipe).unwrap();
        let mut prev = ExactRational::zero();
        let one = ExactRational::from_integer(1);
        for s in &build.partial_sums {
            assert!(*s > prev);
            assert!(*s < one);
            prev = s.clone();
        }
    }

    #[test]
    fn single_base_gamma_repeats_blocks_and_stays_stable() {
        let recipe = default_gamma_recipe(&[2], 3, 1 << 22).unwrap();
        let build = build_gamma(&recipe).unwrap();
        for report in &build.reports {
            assert!(report.liouville_holds, "stage {}", report.stage);
            for check in &report.digit_stability {
                assert!(check.passed, "stage {} stability: {}", report.stage, check.detail);
            }
            for check in &report.block_repetition {
                assert!(check.passed, "stage {} repetition: {}", report.stage, check.detail);
            }
        }
    }

    #[test]
    fn two_base_gamma_reports_are_determinate() {
        let recipe = default_gamma_recipe(&[2, 3], 2, 1 << 22).unwrap();
        let build = build_gamma(&recipe).unwrap();
        assert_eq!(build.reports.len(), 2);
        for report in &build.reports {
            assert!(report.liouville_holds, "stage {}", report.stage);
            // repetition cannot be digit-aligned when A = 6: determinate failure
            for check in &report.block_repetition {
                assert!(!check.passed);
                assert!(!check.detail.is_empty());
            }
        }
    }

    #[test]
    fn manual_schedule_consecutive_primes_fail_later_stages() {
        // with consecutive primes the denominators outrun the tail: the
        // exact check must say so rather than certify
        let recipe = gamma_recipe_with_schedule(&[2, 3], vec![8, 36], 10_000).unwrap();
        assert_eq!(&recipe.primes[..2], &[5, 19]);
        let build = build_gamma(&recipe).unwrap();
        assert!(!build.reports[1].liouville_holds);
    }

    #[test]
    fn gamma_digit_streams_stay_in_alphabet() {
        let recipe = default_gamma_recipe(&[2, 3], 2, 1 << 22).unwrap();
        let build = build_gamma(&recipe).unwrap();
        let b2 = build.digits(2, 64).unwrap();
        let b3 = build.digits(3, 40).unwrap();
        assert!(b2.iter().all(|&d| d < 2));
        assert!(b3.iter().all(|&d| d < 3));
        assert!(build.digits(5, 10).is_err());
    }
}

