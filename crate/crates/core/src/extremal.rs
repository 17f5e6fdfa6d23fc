//! Exact extremal values at desk scale, with witnesses.
//!
//! `exact_f` and `exact_h` find the largest subset of `1..=N` (all
//! integers, respectively squarefree ones) whose subsets all multiply
//! to different values; `exact_g` finds the smallest `m` admitting a
//! `k`-element subset of `1..=m` whose subsets all sum to different
//! values. All three are depth-first searches returning the
//! lexicographically smallest witness, with explored-node counts for
//! reproducibility.

use crate::arithmetic::factorize;
use crate::constructions::{
    default_ek_table, erdos_basic, gk_chain, squarefree_construction, tree_construction,
    triples_construction, ConstructionKind, ConstructionOutput, TreeStrategy,
};
use crate::error::{Error, Result};
use crate::verifier::verify_distinct_sums;

/// Largest `N` accepted by `exact_f` and `exact_h`. The subset-product
/// search space grows too fast past desk scale for an exact answer.
pub const MAX_EXACT_N: u64 = 25;

/// Largest `k` accepted by `exact_g`.
pub const MAX_EXACT_K: u64 = 6;

/// Node budget used when a caller does not supply one.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// The outcome of an exact search: the extremal value, a witness
/// achieving it, and how much work the search did. When the node
/// budget ran out, `optimal` is false and the value is only a lower
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// The argument searched at: `N` for subset products, `k` for
    /// subset sums.
    pub parameter: u64,
    /// The extremal value: the maximal size for `exact_f`/`exact_h`,
    /// the minimal bound `m` for `exact_g`.
    pub value: u64,
    /// A set achieving the value, ascending; the lexicographically
    /// smallest one when the search completed.
    pub witness: Vec<u64>,
    /// Candidate extensions tried (`exact_f`/`exact_h`) or candidate
    /// sets tested (`exact_g`).
    pub nodes_explored: u64,
    /// True when the search finished; false when the node budget was
    /// exhausted and the result is a lower bound only.
    pub optimal: bool,
}

/// Depth-first maximum-size search over subsets with pairwise distinct
/// subset products, visiting candidate sets in lexicographic order.
struct ProductSearch {
    candidates: Vec<u64>,
    best_size: usize,
    best_witness: Vec<u64>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl ProductSearch {
    /// Extends `chosen` (whose subset products are `products`, sorted)
    /// by candidates from `from` onward. An extension by `a` is valid
    /// exactly when `products` and `a * products` are disjoint; the
    /// products of the extended set are their sorted union.
    fn run(&mut self, chosen: &mut Vec<u64>, products: &[u128], from: usize) {
        if chosen.len() > self.best_size {
            self.best_size = chosen.len();
            self.best_witness = chosen.clone();
        }
        for index in from..self.candidates.len() {
            // No extension from here can beat the best found set.
            if chosen.len() + (self.candidates.len() - index) < self.best_size {
                break;
            }
            if self.nodes == self.budget {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            let a = u128::from(self.candidates[index]);
            let scaled: Vec<u128> = products.iter().map(|&p| p * a).collect();
            if sorted_disjoint(products, &scaled) {
                let merged = sorted_union(products, &scaled);
                chosen.push(self.candidates[index]);
                self.run(chosen, &merged, index + 1);
                chosen.pop();
                if self.exhausted {
                    return;
                }
            }
        }
    }
}

fn sorted_disjoint(a: &[u128], b: &[u128]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

fn sorted_union(a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn exact_product_search(
    n_limit: u64,
    node_budget: u64,
    candidates: Vec<u64>,
) -> Result<SearchResult> {
    if n_limit > MAX_EXACT_N {
        return Err(Error::SearchCapExceeded(format!(
            "exact subset-product search accepts bounds up to {MAX_EXACT_N}, got {n_limit}"
        )));
    }
    let mut search = ProductSearch {
        candidates,
        best_size: 0,
        best_witness: Vec::new(),
        nodes: 0,
        budget: node_budget,
        exhausted: false,
    };
    let mut chosen = Vec::new();
    search.run(&mut chosen, &[1], 0);
    Ok(SearchResult {
        parameter: n_limit,
        value: search.best_size as u64,
        witness: search.best_witness,
        nodes_explored: search.nodes,
        optimal: !search.exhausted,
    })
}

/// The size of the largest subset of `1..=n_limit` with pairwise
/// distinct subset products, by branch-and-bound. 1 never qualifies
/// (it repeats the empty product), so candidates start at 2.
pub fn exact_f(n_limit: u64, node_budget: u64) -> Result<SearchResult> {
    exact_product_search(n_limit, node_budget, (2..=n_limit).collect())
}

/// [`exact_f`] restricted to squarefree candidates.
pub fn exact_h(n_limit: u64, node_budget: u64) -> Result<SearchResult> {
    let candidates = (2..=n_limit)
        .filter(|&v| {
            factorize(v)
                .map(|e| e.exponents.iter().all(|(_, exp)| exp == 1))
                .unwrap_or(false)
        })
        .collect();
    exact_product_search(n_limit, node_budget, candidates)
}

/// The smallest `m` such that some `k`-element subset of `1..=m` has
/// pairwise distinct subset sums, by increasing `m`; only subsets
/// containing `m` are tested, since smaller ones were covered at
/// smaller `m`. Distinctness of each candidate is decided by the
/// signed meet-in-the-middle sum search. Errors when the node budget
/// runs out before the answer is settled.
pub fn exact_g(k: u64, node_budget: u64) -> Result<SearchResult> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "subset-sum search needs a positive set size".into(),
        ));
    }
    if k > MAX_EXACT_K {
        return Err(Error::SearchCapExceeded(format!(
            "exact subset-sum search accepts sizes up to {MAX_EXACT_K}, got {k}"
        )));
    }
    let k_usize = k as usize;
    let mut nodes: u64 = 0;
    for m in k.. {
        let mut subset = Vec::with_capacity(k_usize);
        if let Some(witness) =
            first_distinct_sum_subset(m, k_usize, &mut subset, 1, &mut nodes, node_budget)?
        {
            return Ok(SearchResult {
                parameter: k,
                value: m,
                witness,
                nodes_explored: nodes,
                optimal: true,
            });
        }
    }
    unreachable!("every k admits a distinct-sum set, e.g. powers of two");
}

/// Depth-first lexicographic scan over the `(k-1)`-element subsets of
/// `1..m` that, together with `m`, might have distinct subset sums;
/// returns the first full subset that does.
fn first_distinct_sum_subset(
    m: u64,
    k: usize,
    subset: &mut Vec<u64>,
    from: u64,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<u64>>> {
    if subset.len() == k - 1 {
        if *nodes == budget {
            return Err(Error::SearchCapExceeded(format!(
                "subset-sum search budget of {budget} tested sets exhausted"
            )));
        }
        *nodes += 1;
        let mut candidate = subset.clone();
        candidate.push(m);
        let verdict = verify_distinct_sums(&candidate, DEFAULT_SEARCH_BUDGET)?;
        if verdict.is_distinct() {
            return Ok(Some(candidate));
        }
        return Ok(None);
    }
    let needed = (k - 1 - subset.len()) as u64;
    let mut next = from;
    while next + needed <= m {
        subset.push(next);
        let found = first_distinct_sum_subset(m, k, subset, next + 1, nodes, budget)?;
        subset.pop();
        if found.is_some() {
            return Ok(found);
        }
        next += 1;
    }
    Ok(None)
}

/// One line of the construction-versus-exact comparison at a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub kind: ConstructionKind,
    /// Construction size at the bound; zero when the construction is
    /// not defined there (bounds below 2).
    pub size: usize,
    /// The exact maximum when the bound is within [`MAX_EXACT_N`] and
    /// the search completed.
    pub exact_value: Option<u64>,
    /// Exact maximum minus construction size, when the former is
    /// known.
    pub gap: Option<i64>,
}

/// Sizes of all five constructions at a bound, next to the exact
/// maximum where it is computable.
pub fn compare_with_constructions(n_limit: u64) -> Vec<ComparisonRow> {
    let exact = if n_limit <= MAX_EXACT_N {
        exact_f(n_limit, DEFAULT_SEARCH_BUDGET)
            .ok()
            .filter(|r| r.optimal)
            .map(|r| r.value)
    } else {
        None
    };
    ConstructionKind::ALL
        .iter()
        .map(|&kind| {
            let built: Result<ConstructionOutput> = match kind {
                ConstructionKind::ErdosBasic => erdos_basic(n_limit),
                ConstructionKind::GkChain => gk_chain(n_limit, &default_ek_table()),
                ConstructionKind::Triples => triples_construction(n_limit),
                ConstructionKind::Tree => tree_construction(n_limit, TreeStrategy::PathAscending),
                ConstructionKind::Squarefree => squarefree_construction(n_limit, 0.05),
            };
            let size = built.map(|output| output.set.len()).unwrap_or(0);
            ComparisonRow {
                kind,
                size,
                exact_value: exact,
                gap: exact.map(|value| value as i64 - size as i64),
            }
        })
        .collect()
}
