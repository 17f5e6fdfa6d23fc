//! Prime sieve, the three-way prime classification, and exact factorization.
//!
//! Every size comparison against a root (`p^3 <= n` and friends) is done in
//! exact integer arithmetic; floating point is never consulted for a
//! classification or root boundary.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Primes `<= limit`, ascending. Plain sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Number of primes `<= x`.
pub fn prime_pi(x: u64) -> usize {
    sieve_primes(x).len()
}

/// Largest `r` with `r^k <= n`, computed by binary search over integers.
pub fn nth_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1, "root order must be positive");
    if n == 0 {
        return 0;
    }
    if k == 1 {
        return n;
    }
    let mut lo = 1u64;
    let mut hi = 1u64 << (64 / k).min(32);
    while pow_at_most(hi, k, n) {
        hi *= 2;
    }
    // invariant: lo^k <= n < hi^k
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pow_at_most(mid, k, n) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// True iff `base^exp <= n`, with overflow treated as "too big".
pub fn pow_at_most(base: u64, exp: u32, n: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = match acc.checked_mul(base) {
            Some(v) => v,
            None => return false,
        };
        if acc > n {
            return false;
        }
    }
    true
}

/// Size class of a prime relative to the ambient bound `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeClass {
    /// `p^3 <= n`
    Small,
    /// `p^2 <= n < p^3`
    Medium,
    /// `p <= n < p^2`
    Large,
}

/// The primes `<= n_limit` split into small, medium and large.
///
/// The three lists are ascending, pairwise disjoint, and together contain
/// every prime `<= n_limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePartition {
    pub n_limit: u64,
    pub small: Vec<u64>,
    pub medium: Vec<u64>,
    pub large: Vec<u64>,
}

/// Classify every prime `<= n_limit` by exact power comparisons.
pub fn classify_primes(n_limit: u64) -> PrimePartition {
    let mut small = Vec::new();
    let mut medium = Vec::new();
    let mut large = Vec::new();
    for p in sieve_primes(n_limit) {
        if pow_at_most(p, 3, n_limit) {
            small.push(p);
        } else if pow_at_most(p, 2, n_limit) {
            medium.push(p);
        } else {
            large.push(p);
        }
    }
    PrimePartition {
        n_limit,
        small,
        medium,
        large,
    }
}

impl PrimePartition {
    pub fn class_of(&self, p: u64) -> Option<PrimeClass> {
        if self.small.binary_search(&p).is_ok() {
            Some(PrimeClass::Small)
        } else if self.medium.binary_search(&p).is_ok() {
            Some(PrimeClass::Medium)
        } else if self.large.binary_search(&p).is_ok() {
            Some(PrimeClass::Large)
        } else {
            None
        }
    }

    /// All primes `<= n_limit`, ascending.
    pub fn all_primes(&self) -> Vec<u64> {
        let mut all: Vec<u64> =
            Vec::with_capacity(self.small.len() + self.medium.len() + self.large.len());
        all.extend_from_slice(&self.small);
        all.extend_from_slice(&self.medium);
        all.extend_from_slice(&self.large);
        all.sort_unstable();
        all
    }
}

/// Multiset of prime exponents: the factorization `value = prod p^e(p)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ExponentVector(BTreeMap<u64, u32>);

impl ExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u32)>) -> Self {
        ExponentVector(pairs.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn get(&self, p: u64) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    /// Sum of all exponents.
    pub fn mass(&self) -> u32 {
        self.0.values().sum()
    }

    /// Restriction to the primes accepted by `keep`.
    pub fn project(&self, keep: impl Fn(u64) -> bool) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .filter(|(&p, _)| keep(p))
                .map(|(&p, &e)| (p, e))
                .collect(),
        )
    }

    /// The integer this vector factors, if it fits in u64.
    pub fn value(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for (&p, &e) in &self.0 {
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&p, &e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A positive integer together with its full factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub value: u64,
    pub exponents: ExponentVector,
}

/// Factor `value >= 1` by trial division over sieved primes.
pub fn factorize(value: u64) -> Result<Element> {
    if value == 0 {
        return Err(Error::OutOfRange(0, u64::MAX));
    }
    let mut rest = value;
    let mut map = BTreeMap::new();
    for p in sieve_primes(nth_root(value, 2)) {
        if p * p > rest {
            break;
        }
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            map.insert(p, e);
        }
    }
    if rest > 1 {
        *map.entry(rest).or_insert(0) += 1;
    }
    Ok(Element {
        value,
        exponents: ExponentVector(map),
    })
}

impl Element {
    /// Exponent sub-vector on medium and large primes of `partition`.
    pub fn medium_and_large(&self, partition: &PrimePartition) -> ExponentVector {
        self.exponents.project(|p| {
            matches!(
                partition.class_of(p),
                Some(PrimeClass::Medium) | Some(PrimeClass::Large)
            )
        })
    }
}

/// `|P_small| * ln(n * log2(n) + 1)`: an upper bound on the natural log of
/// the number of distinct small-prime valuation patterns among products of
/// subsets of `[1, n]`. Diagnostic only — every decision procedure in this
/// crate uses exact arithmetic instead.
pub fn small_valuation_log_bound(n: u64) -> f64 {
    assert!(n >= 2);
    let small = classify_primes(n).small.len() as f64;
    small * ((n as f64) * (n as f64).log2() + 1.0).ln()
}
