//! Staged cycle removal over factorization graphs, the valuation
//! certificates extracted from removed circuits, and the edge-count
//! audit assembling the counting bound at a given scale.
//!
//! Stage order matters: even circuits up to twice the threshold go
//! first; the remaining short odd cycles are then pairwise
//! vertex-disjoint, so the ones through square-marked primes can be
//! removed whole; finally each leftover short cycle loses one edge
//! joining two plain (non-square medium or unit) vertices.

use std::collections::BTreeMap;

use crate::arithmetic::{factorize, nth_root, prime_pi};
use crate::error::{Error, Result};
use crate::verifier::SubsetProductSet;

use super::{build_graph, reduce_set, Circuit, FactorGraph, PrimeClasses, Vertex};

/// Two disjoint element subsets with equal medium-and-large valuation
/// sums: choosing either side multiplies to the same graph-prime
/// content. Produced from removed circuits; checked exactly by
/// [`check_valuation_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationCertificate {
    side_a: Vec<u64>,
    side_b: Vec<u64>,
}

impl ValuationCertificate {
    pub fn new(mut side_a: Vec<u64>, mut side_b: Vec<u64>) -> Result<Self> {
        side_a.sort_unstable();
        side_b.sort_unstable();
        if side_a.is_empty() || side_b.is_empty() {
            return Err(Error::InvalidParameter(
                "both certificate sides must be nonempty".into(),
            ));
        }
        let dup_inside = |s: &[u64]| s.windows(2).any(|w| w[0] == w[1]);
        if dup_inside(&side_a) || dup_inside(&side_b) {
            return Err(Error::InvalidParameter(
                "certificate sides must not repeat elements".into(),
            ));
        }
        if side_a.iter().any(|v| side_b.binary_search(v).is_ok()) {
            return Err(Error::InvalidParameter(
                "certificate sides must be disjoint".into(),
            ));
        }
        Ok(ValuationCertificate { side_a, side_b })
    }

    pub fn side_a(&self) -> &[u64] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[u64] {
        &self.side_b
    }
}

/// Exact check that both sides carry the same summed valuation at every
/// medium and large prime.
pub fn check_valuation_certificate(
    certificate: &ValuationCertificate,
    classes: &PrimeClasses,
) -> bool {
    let summed = |values: &[u64]| -> Option<BTreeMap<u64, u64>> {
        let mut total: BTreeMap<u64, u64> = BTreeMap::new();
        for &value in values {
            let element = factorize(value).ok()?;
            for (p, e) in classes.graph_valuation(&element).iter() {
                *total.entry(p).or_insert(0) += u64::from(e);
            }
        }
        Some(total)
    };
    match (summed(certificate.side_a()), summed(certificate.side_b())) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// Turns a removed circuit into a valuation certificate.
///
/// Even circuits alternate their edges between the two sides: every
/// vertex is entered as often as it is left, so each side sees it with
/// the same multiplicity. Odd circuits must be cycles through a
/// square-marked prime: rotated to start there, the alternation leaves
/// both boundary edges on one side, and the square witness on the other
/// side restores the balance at the start vertex.
pub fn circuit_to_certificate(
    circuit: &Circuit,
    graph: &FactorGraph,
) -> Result<ValuationCertificate> {
    for (a, b, label) in circuit.edges() {
        let found = graph.edge_between(a, b).ok_or_else(|| {
            Error::InvalidParameter(format!("edge ({a}, {b}) is not in the graph"))
        })?;
        if found.label != label {
            return Err(Error::InvalidParameter(format!(
                "edge ({a}, {b}) is labeled {} in the graph, not {label}",
                found.label
            )));
        }
    }
    if circuit.is_even() {
        let (evens, odds) = alternate(circuit.labels());
        return ValuationCertificate::new(evens, odds);
    }
    if !circuit.is_cycle() {
        return Err(Error::InvalidParameter(
            "an odd circuit yields a certificate only when it is a cycle".into(),
        ));
    }
    let square_prime = circuit
        .vertices()
        .iter()
        .filter_map(|&v| match v {
            Vertex::Prime(p) if graph.is_square_prime(p) => Some(p),
            _ => None,
        })
        .min()
        .ok_or_else(|| {
            Error::InvalidParameter(
                "an odd cycle yields a certificate only through a square-marked prime".into(),
            )
        })?;
    let rotated = circuit.rotate_to_start(Vertex::Prime(square_prime));
    let (evens, mut odds) = alternate(rotated.labels());
    let witness = *graph
        .square_elements()
        .get(&square_prime)
        .expect("square-marked primes carry a witness");
    odds.push(witness);
    ValuationCertificate::new(evens, odds)
}

fn alternate(labels: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let evens = labels.iter().step_by(2).copied().collect();
    let odds = labels.iter().skip(1).step_by(2).copied().collect();
    (evens, odds)
}

/// A shortest even circuit of length `<= max_len`, or `None`.
///
/// Complete by decomposition: any even circuit splits into edge-disjoint
/// cycles whose shared-vertex structure is connected, so either one
/// piece is an even cycle or two odd pieces share a vertex; both shapes
/// are searched exhaustively, and ties prefer the even cycle.
pub fn find_even_circuit(graph: &FactorGraph, max_len: usize) -> Option<Circuit> {
    let cycles = graph.cycles_up_to(max_len);
    let best_even = cycles.iter().find(|c| c.is_even());
    let odd: Vec<&Circuit> = cycles.iter().filter(|c| !c.is_even()).collect();
    let mut best_pair: Option<(usize, &Circuit, &Circuit)> = None;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            let total = odd[i].len() + odd[j].len();
            if total > max_len {
                continue;
            }
            if best_pair.is_some_and(|(t, _, _)| t <= total) {
                continue;
            }
            let disjoint_edges = odd[i].labels().iter().all(|l| !odd[j].labels().contains(l));
            if disjoint_edges && odd[i].shares_vertex_with(odd[j]) {
                best_pair = Some((total, odd[i], odd[j]));
            }
        }
    }
    match (best_even, best_pair) {
        (Some(cycle), Some((total, a, b))) => {
            if cycle.len() <= total {
                Some(cycle.clone())
            } else {
                Some(concatenate_at_shared_vertex(a, b))
            }
        }
        (Some(cycle), None) => Some(cycle.clone()),
        (None, Some((_, a, b))) => Some(concatenate_at_shared_vertex(a, b)),
        (None, None) => None,
    }
}

/// Walks `a` then `b`, both rotated to their smallest shared vertex:
/// an even circuit whenever both are odd and edge-disjoint.
fn concatenate_at_shared_vertex(a: &Circuit, b: &Circuit) -> Circuit {
    let shared = a
        .vertices()
        .iter()
        .copied()
        .filter(|&v| b.contains_vertex(v))
        .min()
        .expect("circuits share a vertex");
    let first = a.rotate_to_start(shared);
    let second = b.rotate_to_start(shared);
    let mut vertices = first.vertices().to_vec();
    vertices.extend_from_slice(second.vertices());
    let mut labels = first.labels().to_vec();
    labels.extend_from_slice(second.labels());
    Circuit::new(vertices, labels).expect("edge-disjoint circuits concatenate to a circuit")
}

/// Greedily removes even circuits of length `<= max_len` until none
/// remain; returns the thinned graph and the removed circuits, which
/// are pairwise edge-disjoint.
pub fn remove_even_circuits(graph: &FactorGraph, max_len: usize) -> (FactorGraph, Vec<Circuit>) {
    let mut current = graph.clone();
    let mut removed = Vec::new();
    while let Some(circuit) = find_even_circuit(&current, max_len) {
        current = current.without_edges(circuit.labels());
        removed.push(circuit);
    }
    (current, removed)
}

/// Greedily removes odd cycles of length `<= max_len` through a
/// square-marked prime, recording each cycle with its smallest such
/// prime. Expects even circuits of length `<= 2 * max_len` to be gone:
/// if two removed cycles share a vertex that expectation was violated,
/// and the stage aborts.
pub fn remove_odd_square_cycles(
    graph: &FactorGraph,
    max_len: usize,
) -> Result<(FactorGraph, Vec<(Circuit, u64)>)> {
    let mut current = graph.clone();
    let mut removed: Vec<(Circuit, u64)> = Vec::new();
    loop {
        let next = current.cycles_up_to(max_len).into_iter().find(|c| {
            !c.is_even()
                && c.vertices()
                    .iter()
                    .any(|&v| matches!(v, Vertex::Prime(p) if current.is_square_prime(p)))
        });
        let Some(cycle) = next else { break };
        if let Some((prior, _)) = removed
            .iter()
            .find(|(prior, _)| prior.shares_vertex_with(&cycle))
        {
            let shared = cycle
                .vertices()
                .iter()
                .copied()
                .filter(|&v| prior.contains_vertex(v))
                .min()
                .expect("overlap was detected");
            return Err(Error::Precondition(format!(
                "odd cycles through square-marked primes share the vertex {shared}: \
                 even circuits of length at most {} were not removed first",
                2 * max_len
            )));
        }
        let square_prime = cycle
            .vertices()
            .iter()
            .filter_map(|&v| match v {
                Vertex::Prime(p) if current.is_square_prime(p) => Some(p),
                _ => None,
            })
            .min()
            .expect("the cycle was selected through a square-marked prime");
        current = current.without_edges(cycle.labels());
        removed.push((cycle, square_prime));
    }
    Ok((current, removed))
}

fn is_plain_vertex(graph: &FactorGraph, v: Vertex) -> bool {
    match v {
        Vertex::Unit => true,
        Vertex::Prime(p) => graph.classes().is_medium(p) && !graph.is_square_prime(p),
    }
}

/// Breaks every remaining cycle of length `<= max_len` by deleting one
/// edge joining two plain (non-square medium or unit) vertices; returns
/// the acyclic-below-threshold graph and the deleted labels. After the
/// earlier stages each such cycle is odd, avoids square-marked primes,
/// and has no two large primes adjacent, so a qualifying edge exists;
/// its absence means the stage order was violated, and the stage
/// aborts.
pub fn remove_remaining_cycles(
    graph: &FactorGraph,
    max_len: usize,
) -> Result<(FactorGraph, Vec<u64>)> {
    let mut current = graph.clone();
    let mut removed = Vec::new();
    while let Some(cycle) = current.find_short_cycle(max_len) {
        let pick = cycle
            .edges()
            .into_iter()
            .find(|&(a, b, _)| is_plain_vertex(&current, a) && is_plain_vertex(&current, b));
        let Some((_, _, label)) = pick else {
            return Err(Error::Precondition(format!(
                "a cycle of length {} has no edge between two non-square medium or unit \
                 vertices: earlier removal stages were skipped",
                cycle.len()
            )));
        };
        current = current.without_edges(&[label]);
        removed.push(label);
    }
    Ok((current, removed))
}

/// Snapshots of the three removal stages run in order over one graph.
#[derive(Debug, Clone)]
pub struct RemovalOutcome {
    pub initial: FactorGraph,
    pub after_even: FactorGraph,
    pub after_odd_square: FactorGraph,
    pub final_graph: FactorGraph,
    pub even_circuits: Vec<Circuit>,
    pub odd_square_cycles: Vec<(Circuit, u64)>,
    pub removed_edge_labels: Vec<u64>,
}

/// Runs the stages in their required order: even circuits up to twice
/// the threshold, odd cycles through square-marked primes up to the
/// threshold, then single-edge breaking of the leftover short cycles.
pub fn run_removal_pipeline(graph: FactorGraph, threshold: usize) -> Result<RemovalOutcome> {
    let (after_even, even_circuits) = remove_even_circuits(&graph, 2 * threshold);
    let (after_odd_square, odd_square_cycles) = remove_odd_square_cycles(&after_even, threshold)?;
    let (final_graph, removed_edge_labels) = remove_remaining_cycles(&after_odd_square, threshold)?;
    Ok(RemovalOutcome {
        initial: graph,
        after_even,
        after_odd_square,
        final_graph,
        even_circuits,
        odd_square_cycles,
        removed_edge_labels,
    })
}

/// The bookkeeping behind the counting bound at one scale: how much the
/// reduction and each removal stage discarded, what survived, and the
/// quantities the bound compares against.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub n_limit: u64,
    /// Cycle-length threshold; even circuits were removed up to twice
    /// this length.
    pub threshold: usize,
    pub input_size: usize,
    pub removed_for_injectivity: usize,
    pub even_circuit_edges_removed: usize,
    pub odd_square_cycle_edges_removed: usize,
    pub remaining_cycle_edges_removed: usize,
    pub p_square_size: usize,
    /// Large primes of degree two or more after all removals.
    pub q_size: usize,
    pub final_edge_count: usize,
    /// Primes up to the bound.
    pub prime_count: usize,
    /// Primes up to the square root of the bound.
    pub sqrt_prime_count: usize,
}

impl AuditReport {
    /// Half the number of square-marked primes, as it enters the bound.
    pub fn half_square_term(&self) -> f64 {
        self.p_square_size as f64 / 2.0
    }
}

/// The audit's full evidence: the report plus the reduced values and
/// every stage snapshot, so each claimed invariant can be re-checked.
#[derive(Debug, Clone)]
pub struct AuditOutcome {
    pub report: AuditReport,
    pub reduced_values: Vec<u64>,
    pub removed_values: Vec<u64>,
    pub removal: RemovalOutcome,
}

/// Default cycle-length threshold for a bound: the twelfth root,
/// floored, but never below three.
pub fn default_threshold(n_limit: u64) -> usize {
    std::cmp::max(3, nth_root(n_limit, 12) as usize)
}

/// Reduces the set, builds its graph, runs the removal pipeline, and
/// assembles the counts entering the bound. Panics if a cycle within
/// the threshold survives the pipeline, since that breaks the
/// pipeline's contract.
pub fn bound_audit(set: &SubsetProductSet, threshold: Option<usize>) -> Result<AuditOutcome> {
    let threshold = threshold.unwrap_or_else(|| default_threshold(set.n_limit()));
    let (reduced, removed_values) = reduce_set(set);
    let graph = build_graph(&reduced)?;
    let removal = run_removal_pipeline(graph, threshold)?;
    assert!(
        removal.final_graph.find_short_cycle(threshold).is_none(),
        "a cycle within the threshold survived the removal pipeline"
    );
    let final_graph = &removal.final_graph;
    let q_size = final_graph
        .classes()
        .large()
        .iter()
        .filter(|&&q| final_graph.degree(Vertex::Prime(q)) >= 2)
        .count();
    let report = AuditReport {
        n_limit: set.n_limit(),
        threshold,
        input_size: set.len(),
        removed_for_injectivity: removed_values.len(),
        even_circuit_edges_removed: removal.even_circuits.iter().map(Circuit::len).sum(),
        odd_square_cycle_edges_removed: removal
            .odd_square_cycles
            .iter()
            .map(|(c, _)| c.len())
            .sum(),
        remaining_cycle_edges_removed: removal.removed_edge_labels.len(),
        p_square_size: final_graph.p_square().len(),
        q_size,
        final_edge_count: final_graph.edge_count(),
        prime_count: prime_pi(set.n_limit()),
        sqrt_prime_count: prime_pi(nth_root(set.n_limit(), 2)),
    };
    Ok(AuditOutcome {
        report,
        reduced_values: reduced.values(),
        removed_values,
        removal,
    })
}
