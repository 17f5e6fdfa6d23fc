//! Generators for five explicit families of sets with distinct subset
//! products, each paired with an exact closed-form cardinality.
//!
//! Every generator returns a [`ConstructionOutput`] whose element count
//! equals its predicted count on every run; distinctness of the subset
//! products is certified independently by
//! [`verify_distinct`](crate::verifier::verify_distinct).
//!
//! All size-class decisions use exact integer power comparisons
//! ([`pow_at_most`]), never floating-point exponentials.

use std::collections::BTreeMap;
use std::fmt;

use crate::arithmetic::{classify_primes, nth_root, pow_at_most, prime_pi, sieve_primes};
use crate::error::{Error, Result};
use crate::verifier::{verify_distinct_sums, SubsetProductSet, Verdict};

/// Node budget used to re-check each [`ExponentRow`] at table
/// construction time; rows are tiny, so this is never the limit in
/// practice.
const ROW_CHECK_BUDGET: u64 = 1 << 22;

/// One row of an [`ExponentTable`]: a set of `size` positive integers
/// with pairwise distinct subset sums whose largest member is
/// `max_exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentRow {
    pub size: usize,
    pub max_exponent: u32,
    pub exponents: Vec<u32>,
}

/// An ordered list of exponent sets with distinct subset sums and
/// strictly increasing maxima. Drives [`gk_chain`]: a prime `p` adopts
/// the deepest row whose maximum exponent `g` still satisfies
/// `p^g <= n`, contributing one element `p^e` per exponent `e` in the
/// row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTable {
    rows: Vec<ExponentRow>,
}

impl ExponentTable {
    /// Validate a table: every row's exponent set must have the declared
    /// size and maximum and pass the distinct-subset-sums check, and the
    /// maxima must increase strictly from row to row.
    pub fn new(rows: Vec<ExponentRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter(
                "exponent table must have at least one row".into(),
            ));
        }
        for row in &rows {
            let mut sorted = row.exponents.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != row.exponents.len() || sorted.len() != row.size {
                return Err(Error::InvalidParameter(format!(
                    "exponent row {:?} must hold {} distinct values",
                    row.exponents, row.size
                )));
            }
            if sorted.first().is_some_and(|&e| e == 0) {
                return Err(Error::InvalidParameter("exponents must be positive".into()));
            }
            if sorted.last() != Some(&row.max_exponent) {
                return Err(Error::InvalidParameter(format!(
                    "exponent row {:?} does not peak at its declared maximum {}",
                    row.exponents, row.max_exponent
                )));
            }
            let as_u64: Vec<u64> = sorted.iter().map(|&e| u64::from(e)).collect();
            match verify_distinct_sums(&as_u64, ROW_CHECK_BUDGET)? {
                Verdict::Distinct(_) => {}
                Verdict::Collision(_) => {
                    return Err(Error::InvalidParameter(format!(
                        "exponent row {:?} has two subsets with equal sums",
                        row.exponents
                    )));
                }
                Verdict::Inconclusive(_) => {
                    return Err(Error::InvalidParameter(format!(
                        "exponent row {:?} is too large to validate",
                        row.exponents
                    )));
                }
            }
        }
        for pair in rows.windows(2) {
            if pair[0].max_exponent >= pair[1].max_exponent {
                return Err(Error::InvalidParameter(format!(
                    "row maxima must increase strictly ({} then {})",
                    pair[0].max_exponent, pair[1].max_exponent
                )));
            }
        }
        Ok(ExponentTable { rows })
    }

    pub fn rows(&self) -> &[ExponentRow] {
        &self.rows
    }
}

/// The built-in four-row table: the minimal-maximum distinct-subset-sum
/// sets of sizes 1 through 4, peaking at 1, 2, 4, and 7.
pub fn default_ek_table() -> ExponentTable {
    let rows = vec![
        ExponentRow {
            size: 1,
            max_exponent: 1,
            exponents: vec![1],
        },
        ExponentRow {
            size: 2,
            max_exponent: 2,
            exponents: vec![1, 2],
        },
        ExponentRow {
            size: 3,
            max_exponent: 4,
            exponents: vec![1, 2, 4],
        },
        ExponentRow {
            size: 4,
            max_exponent: 7,
            exponents: vec![3, 5, 6, 7],
        },
    ];
    ExponentTable::new(rows).expect("built-in exponent table is valid")
}

/// Which generator produced a [`ConstructionOutput`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    ErdosBasic,
    GkChain,
    Triples,
    Tree,
    Squarefree,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 5] = [
        ConstructionKind::ErdosBasic,
        ConstructionKind::GkChain,
        ConstructionKind::Triples,
        ConstructionKind::Tree,
        ConstructionKind::Squarefree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::ErdosBasic => "erdos",
            ConstructionKind::GkChain => "gk-chain",
            ConstructionKind::Triples => "triples",
            ConstructionKind::Tree => "tree",
            ConstructionKind::Squarefree => "squarefree",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generated set together with the exact count its formula predicts
/// and the parameters that produced it.
#[derive(Debug, Clone)]
pub struct ConstructionOutput {
    pub set: SubsetProductSet,
    pub kind: ConstructionKind,
    pub predicted_count: usize,
    pub parameters: BTreeMap<String, String>,
}

/// Build the output set and enforce the count formula exactly.
fn seal(
    kind: ConstructionKind,
    values: Vec<u64>,
    n_limit: u64,
    predicted_count: usize,
    parameters: BTreeMap<String, String>,
) -> Result<ConstructionOutput> {
    let set = SubsetProductSet::new(&values, n_limit)?;
    assert_eq!(
        set.len(),
        predicted_count,
        "{kind} built {} elements but its formula predicts {predicted_count}",
        set.len(),
    );
    Ok(ConstructionOutput {
        set,
        kind,
        predicted_count,
        parameters,
    })
}

fn base_parameters(n_limit: u64) -> BTreeMap<String, String> {
    BTreeMap::from([("n".to_string(), n_limit.to_string())])
}

/// All primes up to `n` together with all prime squares up to `n`.
/// Exactly `pi(n) + pi(floor(sqrt(n)))` elements.
pub fn erdos_basic(n_limit: u64) -> Result<ConstructionOutput> {
    if n_limit < 2 {
        return Err(Error::Precondition(
            "erdos_basic requires n_limit >= 2".into(),
        ));
    }
    let primes = sieve_primes(n_limit);
    let mut values = primes.clone();
    values.extend(
        primes
            .iter()
            .copied()
            .filter(|&p| pow_at_most(p, 2, n_limit))
            .map(|p| p * p),
    );
    let predicted = prime_pi(n_limit) + prime_pi(nth_root(n_limit, 2));
    seal(
        ConstructionKind::ErdosBasic,
        values,
        n_limit,
        predicted,
        base_parameters(n_limit),
    )
}

/// Prime-power bands driven by an [`ExponentTable`]: each prime `p <= n`
/// adopts the deepest row whose maximum exponent `g` keeps `p^g <= n`
/// (primes too large for even the first row contribute nothing) and
/// contributes `p^e` for every exponent `e` in that row. The predicted
/// count is the sum of the adopted row sizes.
pub fn gk_chain(n_limit: u64, table: &ExponentTable) -> Result<ConstructionOutput> {
    if n_limit < 2 {
        return Err(Error::Precondition("gk_chain requires n_limit >= 2".into()));
    }
    let mut values = Vec::new();
    let mut predicted = 0usize;
    for p in sieve_primes(n_limit) {
        let deepest = table
            .rows()
            .iter()
            .rev()
            .find(|row| pow_at_most(p, row.max_exponent, n_limit));
        if let Some(row) = deepest {
            predicted += row.size;
            values.extend(row.exponents.iter().map(|&e| {
                p.checked_pow(e)
                    .expect("checked against n_limit via the row maximum")
            }));
        }
    }
    let maxima: Vec<String> = table
        .rows()
        .iter()
        .map(|r| r.max_exponent.to_string())
        .collect();
    let mut parameters = base_parameters(n_limit);
    parameters.insert("row_maxima".to_string(), maxima.join(","));
    seal(
        ConstructionKind::GkChain,
        values,
        n_limit,
        predicted,
        parameters,
    )
}

/// Primes whose cube exceeds `n` kept as-is, squares of the primes with
/// `p^2 <= n < p^3`, and a seven-element gadget
/// `{p^2 q, p^2 r, p^2, qr, p^3, q^3, r^3}` for each consecutive
/// ascending triple `p < q < r` of primes with cubes `<= n` (one or two
/// leftover such primes are dropped).
pub fn triples_construction(n_limit: u64) -> Result<ConstructionOutput> {
    if n_limit < 2 {
        return Err(Error::Precondition(
            "triples_construction requires n_limit >= 2".into(),
        ));
    }
    let partition = classify_primes(n_limit);
    let mut values: Vec<u64> = Vec::new();
    values.extend_from_slice(&partition.medium);
    values.extend_from_slice(&partition.large);
    values.extend(partition.medium.iter().map(|&p| p * p));
    for triple in partition.small.chunks_exact(3) {
        let (p, q, r) = (triple[0], triple[1], triple[2]);
        values.extend_from_slice(&[
            p * p * q,
            p * p * r,
            p * p,
            q * r,
            p * p * p,
            q * q * q,
            r * r * r,
        ]);
    }
    let n_small = partition.small.len();
    let predicted = (prime_pi(n_limit) - n_small) + partition.medium.len() + 7 * (n_small / 3);
    seal(
        ConstructionKind::Triples,
        values,
        n_limit,
        predicted,
        base_parameters(n_limit),
    )
}

/// Shape of the spanning tree used by [`tree_construction`] on the
/// primes with `p^2 <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreeStrategy {
    /// A path through the tree vertices in ascending order.
    #[default]
    PathAscending,
    /// A star centered on the smallest tree vertex.
    StarOnSmallest,
}

impl TreeStrategy {
    pub fn name(self) -> &'static str {
        match self {
            TreeStrategy::PathAscending => "path-ascending",
            TreeStrategy::StarOnSmallest => "star-on-smallest",
        }
    }
}

/// Primes with `p^2 > n` kept as-is, squares of all primes with
/// `p^2 <= n`, and the products `pq` along the edges of a spanning tree
/// on those square-rooted primes. Exactly
/// `pi(n) + pi(floor(sqrt(n))) - 1` elements.
pub fn tree_construction(n_limit: u64, strategy: TreeStrategy) -> Result<ConstructionOutput> {
    let partition = classify_primes(n_limit);
    let mut tree_vertices = partition.small.clone();
    tree_vertices.extend_from_slice(&partition.medium);
    if tree_vertices.is_empty() {
        return Err(Error::Precondition(
            "tree_construction requires a prime p with p*p <= n_limit (n_limit >= 4)".into(),
        ));
    }
    let mut values = partition.large.clone();
    values.extend(tree_vertices.iter().map(|&p| p * p));
    match strategy {
        TreeStrategy::PathAscending => {
            values.extend(tree_vertices.windows(2).map(|w| w[0] * w[1]));
        }
        TreeStrategy::StarOnSmallest => {
            let hub = tree_vertices[0];
            values.extend(tree_vertices[1..].iter().map(|&p| hub * p));
        }
    }
    let predicted = prime_pi(n_limit) + prime_pi(nth_root(n_limit, 2)) - 1;
    let mut parameters = base_parameters(n_limit);
    parameters.insert("tree".to_string(), strategy.name().to_string());
    seal(
        ConstructionKind::Tree,
        values,
        n_limit,
        predicted,
        parameters,
    )
}

/// All-squarefree construction: primes `<= floor(sqrt(n))` are listed
/// descending and grouped into consecutive pairs `(q, r)` with `q > r`;
/// each pair greedily takes the largest not-yet-used prime `p` with
/// `p^2 > n` and `pq <= n`, contributing the triangle `{pq, pr, qr}`.
/// Consecutive matched pairs are linked by the product `r_i q_{i+1}`.
/// Unused large primes stay as singletons; the primes of unmatched pairs
/// and a leftover unpaired prime are kept as singletons too (they occur
/// in no product, so they cannot join a collision).
///
/// `epsilon` must lie in `(0, 1/6)`; it does not alter the output, only
/// the count inequality the output is later measured against.
pub fn squarefree_construction(n_limit: u64, epsilon: f64) -> Result<ConstructionOutput> {
    if !(epsilon > 0.0 && epsilon < 1.0 / 6.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/6), got {epsilon}"
        )));
    }
    let partition = classify_primes(n_limit);
    let large = &partition.large;
    let mut small_desc = partition.small.clone();
    small_desc.extend_from_slice(&partition.medium);
    small_desc.reverse();

    let mut used = vec![false; large.len()];
    // (q, r, index into `large` of the matched prime)
    let mut pairs: Vec<(u64, u64, Option<usize>)> = Vec::new();
    let mut singletons: Vec<u64> = Vec::new();
    for chunk in small_desc.chunks_exact(2) {
        let (q, r) = (chunk[0], chunk[1]);
        let cap = n_limit / q;
        let cutoff = large.partition_point(|&p| p <= cap);
        let pick = (0..cutoff).rev().find(|&i| !used[i]);
        match pick {
            Some(i) => {
                used[i] = true;
                pairs.push((q, r, Some(i)));
            }
            None => {
                singletons.push(q);
                singletons.push(r);
                pairs.push((q, r, None));
            }
        }
    }
    singletons.extend_from_slice(small_desc.chunks_exact(2).remainder());

    let mut values: Vec<u64> = large
        .iter()
        .zip(&used)
        .filter(|&(_, &u)| !u)
        .map(|(&p, _)| p)
        .collect();
    let q_size = values.len();
    let mut matched = 0usize;
    for &(q, r, pick) in &pairs {
        if let Some(i) = pick {
            let p = large[i];
            values.extend_from_slice(&[p * q, p * r, q * r]);
            matched += 1;
        }
    }
    let mut chain_links = 0usize;
    for window in pairs.windows(2) {
        let (_, r_here, matched_here) = window[0];
        let (q_next, _, matched_next) = window[1];
        if matched_here.is_some() && matched_next.is_some() {
            values.push(r_here * q_next);
            chain_links += 1;
        }
    }
    values.extend_from_slice(&singletons);

    let predicted = q_size + 3 * matched + chain_links + singletons.len();
    let mut parameters = base_parameters(n_limit);
    parameters.insert("epsilon".to_string(), epsilon.to_string());
    seal(
        ConstructionKind::Squarefree,
        values,
        n_limit,
        predicted,
        parameters,
    )
}
