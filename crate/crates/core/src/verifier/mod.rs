//! Exact decision of the distinct-subset-products property.
//!
//! A set `A ⊆ [1, N]` has distinct subset products when no two distinct
//! subsets multiply to the same integer. After discarding a shared
//! intersection, a violation is a pair of *disjoint* subsets with equal
//! products — and writing each element as its prime exponent vector turns
//! that into a kernel question: a collision is exactly a nonzero
//! `{-1,0,+1}` combination of exponent columns summing to zero.
//!
//! [`verify_distinct`] decides the question by a ladder of exact,
//! kernel-preserving reductions: forced-zero elimination, splitting into
//! independent components, then per component the cheapest certificate
//! that applies — a linear-time block-structure certificate, a
//! fraction-free rank certificate, and finally a complete bounded search.
//! Every collision leaves as a [`CollisionCertificate`] re-validated by
//! exact integer multiplication; every distinctness verdict carries the
//! [`DistinctTrace`] of steps that proved it. The independent oracle
//! [`brute_force_distinct`] enumerates all subset products directly and is
//! the ground truth the ladder is tested against. [`verify_distinct_sums`]
//! answers the analogous question for subset sums.

pub mod kernel;
pub mod matrix;
pub mod structural;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::arithmetic::{classify_primes, factorize, Element, PrimePartition};
use crate::error::{Error, Result};

pub use kernel::{signed_kernel_search, signed_sum_search, SearchOutcome};
pub use matrix::{
    eliminate_unique_primes, exponent_matrix, integer_rank, rank_certificate, split_components,
    ExponentMatrix, ForcedZero,
};
pub use structural::blocks_certificate;

/// Tuning knobs for the verification ladder and the oracle.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Node budget for the complete search, spent per component.
    pub node_budget: u64,
    /// Meet-in-the-middle is used while each half fits under this many
    /// columns; wider matrices fall back to pruned backtracking.
    pub mitm_half_cap: usize,
    /// Largest set size [`brute_force_distinct`] accepts.
    pub oracle_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            node_budget: 10_000_000,
            mitm_half_cap: 20,
            oracle_cap: 24,
        }
    }
}

/// A validated candidate set `A ⊆ [1, N]`, factored and ready to verify.
#[derive(Debug, Clone)]
pub struct SubsetProductSet {
    n_limit: u64,
    elements: Vec<Element>,
    partition: PrimePartition,
}

impl SubsetProductSet {
    /// Validate and factorize. Values must be distinct and lie in
    /// `[1, n_limit]`; they may arrive in any order.
    pub fn new(values: &[u64], n_limit: u64) -> Result<Self> {
        if n_limit == 0 {
            return Err(Error::InvalidParameter("n_limit must be at least 1".into()));
        }
        let mut sorted = values.to_vec();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateValue(pair[0]));
            }
        }
        for &v in &sorted {
            if v == 0 || v > n_limit {
                return Err(Error::OutOfRange(v, n_limit));
            }
        }
        let elements = sorted
            .into_iter()
            .map(factorize)
            .collect::<Result<Vec<_>>>()?;
        Ok(SubsetProductSet {
            n_limit,
            elements,
            partition: classify_primes(n_limit),
        })
    }

    pub fn n_limit(&self) -> u64 {
        self.n_limit
    }

    /// Elements in strictly increasing value order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// The small/medium/large prime partition of `[1, n_limit]`.
    pub fn partition(&self) -> &PrimePartition {
        &self.partition
    }

    /// Values in strictly increasing order.
    pub fn values(&self) -> Vec<u64> {
        self.elements.iter().map(|e| e.value).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, value: u64) -> bool {
        self.elements
            .binary_search_by_key(&value, |e| e.value)
            .is_ok()
    }
}

/// Two disjoint subsets with coinciding products — machine-checkable
/// evidence that a set fails distinct subset products. The empty product
/// is 1, so one side may be empty (as in `({1}, {})`).
///
/// `subset_b` is normalized to the side containing the largest involved
/// value; both sides are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionCertificate {
    subset_b: Vec<u64>,
    subset_c: Vec<u64>,
}

impl CollisionCertificate {
    /// Build from two candidate sides, validating structure: each side
    /// duplicate-free, sides disjoint, not both empty. Whether the two
    /// products (or sums) actually balance is checked against a concrete
    /// set by [`check_certificate`] / [`check_sum_certificate`].
    pub fn new(first: Vec<u64>, second: Vec<u64>) -> Result<Self> {
        let mut first = first;
        let mut second = second;
        first.sort_unstable();
        second.sort_unstable();
        for side in [&first, &second] {
            for pair in side.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::DuplicateValue(pair[0]));
                }
            }
        }
        if let Some(&shared) = first.iter().find(|&&v| second.binary_search(&v).is_ok()) {
            return Err(Error::Precondition(format!(
                "certificate sides share the value {shared}"
            )));
        }
        if first.is_empty() && second.is_empty() {
            return Err(Error::Precondition(
                "both certificate sides are empty".into(),
            ));
        }
        let (subset_b, subset_c) =
            if first.last().copied().unwrap_or(0) > second.last().copied().unwrap_or(0) {
                (first, second)
            } else {
                (second, first)
            };
        Ok(CollisionCertificate { subset_b, subset_c })
    }

    /// The side containing the largest involved value, ascending.
    pub fn subset_b(&self) -> &[u64] {
        &self.subset_b
    }

    /// The other side, ascending.
    pub fn subset_c(&self) -> &[u64] {
        &self.subset_c
    }

    /// Product of `subset_b`; for a certificate that passes
    /// [`check_certificate`] this is the common colliding product.
    pub fn common_product(&self) -> BigUint {
        product_of(&self.subset_b)
    }
}

/// The support of a `{-1,0,+1}` kernel vector: each involved element value
/// paired with its sign, ascending by value. Reading `+1` as membership in
/// one subset and `-1` as the other turns a kernel vector of the exponent
/// matrix into a collision certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSupportVector {
    entries: Vec<(u64, i8)>,
}

impl SignedSupportVector {
    /// `entries` must pair distinct values with signs `±1` and be nonempty.
    pub fn new(mut entries: Vec<(u64, i8)>) -> Self {
        entries.sort_unstable_by_key(|&(v, _)| v);
        debug_assert!(!entries.is_empty());
        debug_assert!(entries.iter().all(|&(_, s)| s == 1 || s == -1));
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SignedSupportVector { entries }
    }

    pub fn entries(&self) -> &[(u64, i8)] {
        &self.entries
    }

    /// Values carrying `+1`.
    pub fn plus(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|&&(_, s)| s > 0)
            .map(|&(v, _)| v)
            .collect()
    }

    /// Values carrying `-1`.
    pub fn minus(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|&&(_, s)| s < 0)
            .map(|&(v, _)| v)
            .collect()
    }

    /// Split the support into the two sides of a collision certificate.
    ///
    /// # Panics
    /// Panics if the support is empty; kernel vectors never are.
    pub fn to_certificate(&self) -> CollisionCertificate {
        CollisionCertificate::new(self.plus(), self.minus())
            .expect("a kernel vector's sides are disjoint and not both empty")
    }
}

/// One audited step of a distinctness proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    /// All subset products (or signed combinations) were enumerated and
    /// found pairwise distinct.
    ExhaustiveEnumeration { subsets: u64 },
    /// Columns deleted because a single row equation forces their
    /// coefficient to zero, in deduction order.
    ForcedZeroElimination { deductions: Vec<ForcedZero> },
    /// The reduced matrix split into two or more independent components,
    /// listed by their element values in canonical order.
    SplitComponents { components: Vec<Vec<u64>> },
    /// Component certified by its graph shape: every block a bridge or an
    /// odd cycle avoiding the unit vertex, cycle blocks pairwise disjoint.
    AcyclicBlocks { component: Vec<u64> },
    /// Component certified by full column rank over the rationals.
    FullRank { component: Vec<u64>, rank: usize },
    /// A complete signed search covered the component's whole space
    /// without finding a kernel vector.
    SearchExhaustive { component: Vec<u64>, nodes: u64 },
}

/// The ordered reasoning steps behind a `Distinct` verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistinctTrace {
    pub steps: Vec<TraceStep>,
}

/// Where and how a verification run ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetReport {
    /// Element values of the first component whose search was cut short.
    pub component: Vec<u64>,
    /// Nodes explored in that component before the cutoff.
    pub nodes_explored: u64,
    /// The configured per-component budget.
    pub node_budget: u64,
}

/// Outcome of a verification: a proof, a counterexample, or an honest
/// report that the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Distinct(DistinctTrace),
    Collision(CollisionCertificate),
    Inconclusive(BudgetReport),
}

impl Verdict {
    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }

    pub fn is_collision(&self) -> bool {
        matches!(self, Verdict::Collision(_))
    }

    pub fn certificate(&self) -> Option<&CollisionCertificate> {
        match self {
            Verdict::Collision(cert) => Some(cert),
            _ => None,
        }
    }
}

fn product_of(values: &[u64]) -> BigUint {
    values.iter().fold(BigUint::one(), |acc, &v| acc * v)
}

/// True iff both sides are subsets of `set` and their exact integer
/// products agree. Disjointness, internal distinctness, and
/// not-both-empty hold by [`CollisionCertificate`] construction.
pub fn check_certificate(cert: &CollisionCertificate, set: &SubsetProductSet) -> bool {
    let in_set = |side: &[u64]| side.iter().all(|&v| set.contains(v));
    in_set(cert.subset_b())
        && in_set(cert.subset_c())
        && product_of(cert.subset_b()) == product_of(cert.subset_c())
}

/// Subset-sum counterpart of [`check_certificate`]: membership in `values`
/// plus exact equality of the two side sums.
pub fn check_sum_certificate(cert: &CollisionCertificate, values: &[u64]) -> bool {
    let sum = |side: &[u64]| side.iter().map(|&v| u128::from(v)).sum::<u128>();
    let in_values = |side: &[u64]| side.iter().all(|v| values.contains(v));
    in_values(cert.subset_b())
        && in_values(cert.subset_c())
        && sum(cert.subset_b()) == sum(cert.subset_c())
}

/// Ground-truth oracle: enumerate all `2^|A|` subset products exactly.
///
/// Never `Inconclusive`. Returns the least collision by (number of
/// involved elements, their sorted values, first side) so the reported
/// witness is deterministic, or `Distinct` after full enumeration.
/// Errors when the set exceeds `config.oracle_cap` elements.
pub fn brute_force_distinct(set: &SubsetProductSet, config: &VerifyConfig) -> Result<Verdict> {
    let n = set.len();
    if n > config.oracle_cap {
        return Err(Error::OracleCapExceeded(n, config.oracle_cap));
    }
    let values = set.values();

    fn enumerate(
        values: &[u64],
        i: usize,
        mask: u32,
        product: BigUint,
        by_product: &mut HashMap<BigUint, Vec<u32>>,
    ) {
        if i == values.len() {
            by_product.entry(product).or_default().push(mask);
            return;
        }
        enumerate(values, i + 1, mask, product.clone(), by_product);
        enumerate(
            values,
            i + 1,
            mask | (1 << i),
            product * values[i],
            by_product,
        );
    }
    let mut by_product: HashMap<BigUint, Vec<u32>> = HashMap::new();
    enumerate(&values, 0, 0, BigUint::one(), &mut by_product);

    let side = |bits: u32| -> Vec<u64> {
        (0..n)
            .filter(|&i| bits & (1 << i) != 0)
            .map(|i| values[i])
            .collect()
    };
    // Collisions are ranked by (involved element count, union, first side).
    type CollisionKey = (usize, Vec<u64>, Vec<u64>);
    let mut best: Option<(CollisionKey, CollisionCertificate)> = None;
    for masks in by_product.values().filter(|group| group.len() >= 2) {
        for (i, &m1) in masks.iter().enumerate() {
            for &m2 in &masks[i + 1..] {
                // Strip the shared part: the disjoint remainders still have
                // equal products and at least one is nonempty.
                let union = side(m1 ^ m2);
                let cert = CollisionCertificate::new(side(m1 & !m2), side(m2 & !m1))
                    .expect("distinct equal-product subsets split into a valid certificate");
                let key = (union.len(), union, cert.subset_b().to_vec());
                if best.as_ref().is_none_or(|(k, _)| *k > key) {
                    best = Some((key, cert));
                }
            }
        }
    }
    Ok(match best {
        Some((_, cert)) => Verdict::Collision(cert),
        None => Verdict::Distinct(DistinctTrace {
            steps: vec![TraceStep::ExhaustiveEnumeration { subsets: 1u64 << n }],
        }),
    })
}

/// Decide distinct subset products by exact, kernel-preserving reduction.
///
/// The ladder: forced-zero elimination, then independent components, then
/// per component the cheapest applicable certificate — graph-shaped block
/// structure, full column rank, complete bounded search. Components are
/// processed in canonical order and the first collision found is returned
/// after being re-validated by exact integer multiplication. A collision
/// anywhere outranks a budget exhaustion elsewhere; the verdict is
/// `Inconclusive` only when no component collides and at least one
/// component's search was cut short.
pub fn verify_distinct(set: &SubsetProductSet, config: &VerifyConfig) -> Verdict {
    let mut steps = Vec::new();
    let full = exponent_matrix(set.elements());
    let (reduced, deductions) = eliminate_unique_primes(&full);
    if !deductions.is_empty() {
        steps.push(TraceStep::ForcedZeroElimination { deductions });
    }
    let components = split_components(&reduced);
    if components.len() > 1 {
        steps.push(TraceStep::SplitComponents {
            components: components.iter().map(|m| m.cols.clone()).collect(),
        });
    }

    let mut cutoff: Option<BudgetReport> = None;
    for component in &components {
        if blocks_certificate(component) {
            steps.push(TraceStep::AcyclicBlocks {
                component: component.cols.clone(),
            });
            continue;
        }
        if let Some(rank) = rank_certificate(component) {
            steps.push(TraceStep::FullRank {
                component: component.cols.clone(),
                rank,
            });
            continue;
        }
        match signed_kernel_search(component, config.node_budget, config.mitm_half_cap) {
            SearchOutcome::NoKernel { nodes } => {
                steps.push(TraceStep::SearchExhaustive {
                    component: component.cols.clone(),
                    nodes,
                });
            }
            SearchOutcome::Kernel { vector, .. } => {
                let cert = vector.to_certificate();
                assert!(
                    check_certificate(&cert, set),
                    "collision certificate failed re-validation by exact multiplication"
                );
                return Verdict::Collision(cert);
            }
            SearchOutcome::BudgetExhausted { nodes } => {
                cutoff.get_or_insert(BudgetReport {
                    component: component.cols.clone(),
                    nodes_explored: nodes,
                    node_budget: config.node_budget,
                });
            }
        }
    }
    match cutoff {
        Some(report) => Verdict::Inconclusive(report),
        None => Verdict::Distinct(DistinctTrace { steps }),
    }
}

/// Decide whether all subset *sums* of `values` are distinct — the same
/// `{-1,0,+1}` kernel question for the single row of plain values, decided
/// by a complete meet-in-the-middle over signed sums.
///
/// Values must be positive and duplicate-free; order is irrelevant.
pub fn verify_distinct_sums(values: &[u64], node_budget: u64) -> Result<Verdict> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateValue(pair[0]));
        }
    }
    if sorted.first() == Some(&0) {
        return Err(Error::InvalidParameter(
            "subset sums are compared over positive values only".into(),
        ));
    }
    Ok(match signed_sum_search(&sorted, node_budget) {
        SearchOutcome::NoKernel { nodes } => Verdict::Distinct(DistinctTrace {
            steps: vec![TraceStep::SearchExhaustive {
                component: sorted,
                nodes,
            }],
        }),
        SearchOutcome::Kernel { vector, .. } => {
            let cert = vector.to_certificate();
            assert!(
                check_sum_certificate(&cert, &sorted),
                "sum-collision certificate failed re-validation by exact addition"
            );
            Verdict::Collision(cert)
        }
        SearchOutcome::BudgetExhausted { nodes } => Verdict::Inconclusive(BudgetReport {
            component: sorted,
            nodes_explored: nodes,
            node_budget,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(values: &[u64], n_limit: u64) -> SubsetProductSet {
        SubsetProductSet::new(values, n_limit).unwrap()
    }

    fn config() -> VerifyConfig {
        VerifyConfig::default()
    }

    fn expect_collision(verdict: &Verdict, b: &[u64], c: &[u64]) {
        match verdict {
            Verdict::Collision(cert) => {
                assert_eq!((cert.subset_b(), cert.subset_c()), (b, c));
            }
            other => panic!("expected Collision({b:?}, {c:?}), got {other:?}"),
        }
    }

    #[test]
    fn set_construction_validates_input() {
        assert_eq!(
            SubsetProductSet::new(&[6, 6], 10).unwrap_err(),
            Error::DuplicateValue(6)
        );
        assert_eq!(
            SubsetProductSet::new(&[11], 10).unwrap_err(),
            Error::OutOfRange(11, 10)
        );
        assert_eq!(
            SubsetProductSet::new(&[0], 10).unwrap_err(),
            Error::OutOfRange(0, 10)
        );
        assert_eq!(set(&[5, 2, 3], 10).values(), vec![2, 3, 5]);
    }

    #[test]
    fn certificate_construction_normalizes_and_validates() {
        let cert = CollisionCertificate::new(vec![3, 2], vec![6]).unwrap();
        assert_eq!(cert.subset_b(), &[6]);
        assert_eq!(cert.subset_c(), &[2, 3]);
        assert_eq!(cert.common_product(), BigUint::from(6u32));
        assert!(CollisionCertificate::new(vec![], vec![]).is_err());
        assert!(CollisionCertificate::new(vec![3], vec![3]).is_err());
        assert!(CollisionCertificate::new(vec![2, 2], vec![3]).is_err());
    }

    #[test]
    fn certificate_checks_membership_and_products() {
        let good = CollisionCertificate::new(vec![6], vec![2, 3]).unwrap();
        assert!(check_certificate(&good, &set(&[2, 3, 6], 10)));
        let wrong_product = CollisionCertificate::new(vec![6], vec![2, 5]).unwrap();
        assert!(!check_certificate(&wrong_product, &set(&[2, 5, 6], 10)));
        let outside = CollisionCertificate::new(vec![77], vec![7, 11]).unwrap();
        assert!(!check_certificate(&outside, &set(&[2, 3, 6], 10)));
    }

    #[test]
    fn oracle_finds_least_collision() {
        let verdict = brute_force_distinct(&set(&[2, 3, 6], 10), &config()).unwrap();
        expect_collision(&verdict, &[6], &[2, 3]);
    }

    #[test]
    fn oracle_certifies_distinct_sets() {
        let verdict = brute_force_distinct(&set(&[2, 3, 4, 5], 10), &config()).unwrap();
        match verdict {
            Verdict::Distinct(trace) => {
                assert_eq!(
                    trace.steps,
                    vec![TraceStep::ExhaustiveEnumeration { subsets: 16 }]
                );
            }
            other => panic!("expected Distinct, got {other:?}"),
        }
    }

    #[test]
    fn any_set_containing_one_collides() {
        let verdict = brute_force_distinct(&set(&[1], 10), &config()).unwrap();
        expect_collision(&verdict, &[1], &[]);
        let verdict = verify_distinct(&set(&[1, 5, 7], 10), &config());
        expect_collision(&verdict, &[1], &[]);
    }

    #[test]
    fn oracle_enforces_its_cap() {
        let values: Vec<u64> = (2..=26).collect();
        assert_eq!(
            brute_force_distinct(&set(&values, 30), &config()).unwrap_err(),
            Error::OracleCapExceeded(25, 24)
        );
    }

    #[test]
    fn empty_set_is_distinct() {
        assert!(verify_distinct(&set(&[], 5), &config()).is_distinct());
        assert!(brute_force_distinct(&set(&[], 5), &config())
            .unwrap()
            .is_distinct());
    }

    #[test]
    fn ladder_finds_collision_after_elimination() {
        // 35 is eliminated (primes 5 and 7 are unique to it), then the
        // search on the remaining component finds 2*3 = 6.
        let verdict = verify_distinct(&set(&[2, 3, 6, 35], 40), &config());
        expect_collision(&verdict, &[6], &[2, 3]);
    }

    #[test]
    fn ladder_certifies_triangle_by_block_structure() {
        match verify_distinct(&set(&[6, 10, 15], 20), &config()) {
            Verdict::Distinct(trace) => {
                assert_eq!(
                    trace.steps,
                    vec![TraceStep::AcyclicBlocks {
                        component: vec![6, 10, 15]
                    }]
                );
            }
            other => panic!("expected Distinct, got {other:?}"),
        }
    }

    #[test]
    fn ladder_falls_back_to_search_and_agrees_with_oracle() {
        // {6,10,15,30}: rank-deficient but kernel-free, so only the
        // complete search can certify it.
        let s = set(&[6, 10, 15, 30], 30);
        match verify_distinct(&s, &config()) {
            Verdict::Distinct(trace) => {
                assert!(matches!(
                    trace.steps.as_slice(),
                    [TraceStep::SearchExhaustive { component, .. }]
                        if component == &vec![6, 10, 15, 30]
                ));
            }
            other => panic!("expected Distinct, got {other:?}"),
        }
        assert!(brute_force_distinct(&s, &config()).unwrap().is_distinct());
    }

    #[test]
    fn ladder_eliminates_primes_and_squares_outright() {
        // Primes up to 121 together with squares of primes up to 11: the
        // forced-zero rule alone empties the matrix in two rounds.
        let mut values = crate::arithmetic::sieve_primes(121);
        values.extend(crate::arithmetic::sieve_primes(11).iter().map(|p| p * p));
        match verify_distinct(&set(&values, 121), &config()) {
            Verdict::Distinct(trace) => match trace.steps.as_slice() {
                [TraceStep::ForcedZeroElimination { deductions }] => {
                    assert_eq!(deductions.len(), 35);
                }
                other => panic!("expected one elimination step, got {other:?}"),
            },
            other => panic!("expected Distinct, got {other:?}"),
        }
    }

    #[test]
    fn ladder_finds_collision_between_two_odd_cycles() {
        // Two triangles sharing the prime 3: 15*21*143 = 33*35*39 = 45045.
        let verdict = verify_distinct(&set(&[15, 21, 33, 35, 39, 143], 150), &config());
        expect_collision(&verdict, &[15, 21, 143], &[33, 35, 39]);
    }

    #[test]
    fn ladder_finds_collision_involving_a_square() {
        // 25*77 = 35*55 = 1925.
        let verdict = verify_distinct(&set(&[25, 35, 55, 77], 100), &config());
        expect_collision(&verdict, &[25, 77], &[35, 55]);
    }

    #[test]
    fn ladder_reports_budget_exhaustion() {
        let tight = VerifyConfig {
            node_budget: 14,
            ..VerifyConfig::default()
        };
        match verify_distinct(&set(&[8, 32, 64, 128], 130), &tight) {
            Verdict::Inconclusive(report) => {
                assert_eq!(report.component, vec![8, 32, 64, 128]);
                assert_eq!(report.node_budget, 14);
                assert!(report.nodes_explored <= 14);
            }
            other => panic!("expected Inconclusive, got {other:?}"),
        }
        // With the default budget the same set is certified outright.
        assert!(verify_distinct(&set(&[8, 32, 64, 128], 130), &config()).is_distinct());
    }

    #[test]
    fn collision_in_a_later_component_beats_exhaustion_in_an_earlier_one() {
        // Component {8,32,64,128} exhausts a 14-node budget; component
        // {13,17,221} fits inside it and contains 13*17 = 221.
        let tight = VerifyConfig {
            node_budget: 14,
            ..VerifyConfig::default()
        };
        let verdict = verify_distinct(&set(&[8, 13, 17, 32, 64, 128, 221], 250), &tight);
        expect_collision(&verdict, &[221], &[13, 17]);
    }

    #[test]
    fn sum_verification_matches_known_answers() {
        assert!(verify_distinct_sums(&[1, 2, 4], 1_000)
            .unwrap()
            .is_distinct());
        assert!(verify_distinct_sums(&[3, 5, 6, 7], 1_000)
            .unwrap()
            .is_distinct());
        let verdict = verify_distinct_sums(&[1, 2, 3], 1_000).unwrap();
        expect_collision(&verdict, &[3], &[1, 2]);
        assert!(matches!(
            verify_distinct_sums(&[3, 5, 6, 7], 2).unwrap(),
            Verdict::Inconclusive(_)
        ));
        assert_eq!(
            verify_distinct_sums(&[5, 5], 1_000).unwrap_err(),
            Error::DuplicateValue(5)
        );
        assert!(verify_distinct_sums(&[0, 3], 1_000).is_err());
    }
}
