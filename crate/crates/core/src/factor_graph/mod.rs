//! Prime factorization graphs.
//!
//! Every element of a reduced set is supported on at most two primes
//! above the small range, so the whole set can be drawn as a graph:
//! vertices are the medium and large primes plus a unit vertex, an
//! element with a single first-power prime becomes an edge to the unit
//! vertex, an element with two primes becomes an edge between them, and
//! an element with a squared medium prime marks that vertex as square.
//!
//! On top of the graph sit the counting tools: a reduction to injective
//! nonzero valuations, bounded cycle search and enumeration, staged
//! cycle removal with machine-checkable valuation certificates, the
//! auxiliary link graph on medium primes, and an audit assembling the
//! edge-count bookkeeping behind the counting bound.

mod cycles;
mod pipeline;

pub use cycles::SimpleGraph;
pub use pipeline::{
    bound_audit, check_valuation_certificate, circuit_to_certificate, default_threshold,
    find_even_circuit, remove_even_circuits, remove_odd_square_cycles, remove_remaining_cycles,
    run_removal_pipeline, AuditOutcome, AuditReport, RemovalOutcome, ValuationCertificate,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::arithmetic::{classify_primes, factorize, sieve_primes, Element, ExponentVector};
use crate::error::{Error, Result};
use crate::verifier::SubsetProductSet;

/// The medium/large prime split a factorization graph is built over.
///
/// `from_limit` derives the split from a set bound (medium primes have
/// squares but not cubes within range; large primes only themselves);
/// `custom` accepts an explicit split for hand-built examples. Primes
/// absent from both lists count as small and are projected away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeClasses {
    medium: Vec<u64>,
    large: Vec<u64>,
}

impl PrimeClasses {
    pub fn from_limit(n_limit: u64) -> Self {
        let partition = classify_primes(n_limit);
        PrimeClasses {
            medium: partition.medium,
            large: partition.large,
        }
    }

    pub fn custom(medium: Vec<u64>, large: Vec<u64>) -> Result<Self> {
        let mut medium = medium;
        let mut large = large;
        medium.sort_unstable();
        large.sort_unstable();
        for list in [&medium, &large] {
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(
                    "prime class lists must not repeat a prime".into(),
                ));
            }
        }
        if medium.iter().any(|p| large.binary_search(p).is_ok()) {
            return Err(Error::InvalidParameter(
                "medium and large prime classes must be disjoint".into(),
            ));
        }
        let top = medium.iter().chain(&large).copied().max().unwrap_or(0);
        let primes = sieve_primes(top);
        for &p in medium.iter().chain(&large) {
            if primes.binary_search(&p).is_err() {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
        }
        Ok(PrimeClasses { medium, large })
    }

    pub fn medium(&self) -> &[u64] {
        &self.medium
    }

    pub fn large(&self) -> &[u64] {
        &self.large
    }

    pub fn is_medium(&self, p: u64) -> bool {
        self.medium.binary_search(&p).is_ok()
    }

    pub fn is_large(&self, p: u64) -> bool {
        self.large.binary_search(&p).is_ok()
    }

    pub fn is_graph_prime(&self, p: u64) -> bool {
        self.is_medium(p) || self.is_large(p)
    }

    /// All graph primes (medium then large, merged ascending).
    pub fn graph_primes(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = self.medium.iter().chain(&self.large).copied().collect();
        primes.sort_unstable();
        primes
    }

    /// The element's exponent vector restricted to graph primes.
    pub fn graph_valuation(&self, element: &Element) -> ExponentVector {
        element.exponents.project(|p| self.is_graph_prime(p))
    }
}

/// A factorization-graph vertex: a medium or large prime, or the unit
/// vertex that anchors single-prime elements.
///
/// The derived order (primes ascending, unit last) is the canonical
/// vertex order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Prime(u64),
    Unit,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Prime(p) => write!(f, "{p}"),
            Vertex::Unit => write!(f, "1"),
        }
    }
}

/// An edge of the factorization graph, labeled by the set element it
/// came from. Endpoints are stored in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub ends: (Vertex, Vertex),
    pub label: u64,
}

impl Edge {
    fn new(a: Vertex, b: Vertex, label: u64) -> Edge {
        Edge {
            ends: (a.min(b), a.max(b)),
            label,
        }
    }

    pub fn touches(&self, v: Vertex) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other_end(&self, v: Vertex) -> Option<Vertex> {
        if self.ends.0 == v {
            Some(self.ends.1)
        } else if self.ends.1 == v {
            Some(self.ends.0)
        } else {
            None
        }
    }
}

/// An immutable factorization graph: edges labeled by elements, plus
/// the square-marked medium primes with their witnessing elements.
/// Removal stages produce new graphs via [`FactorGraph::without_edges`].
#[derive(Debug, Clone)]
pub struct FactorGraph {
    classes: PrimeClasses,
    primes: Vec<u64>,
    edges: Vec<Edge>,
    square_elements: BTreeMap<u64, u64>,
}

/// A closed walk with pairwise distinct edges; edge `i` joins
/// `vertices[i]` to `vertices[(i + 1) % len]` and is labeled
/// `labels[i]`. A circuit whose vertices are also pairwise distinct is
/// a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    vertices: Vec<Vertex>,
    labels: Vec<u64>,
}

impl Circuit {
    pub fn new(vertices: Vec<Vertex>, labels: Vec<u64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidParameter(
                "a circuit has at least three edges".into(),
            ));
        }
        if vertices.len() != labels.len() {
            return Err(Error::InvalidParameter(
                "a circuit has as many edges as vertices on its walk".into(),
            ));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(
                "circuit edges must be pairwise distinct".into(),
            ));
        }
        Ok(Circuit { vertices, labels })
    }

    /// Number of edges (equals the number of walk positions).
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn is_even(&self) -> bool {
        self.len().is_multiple_of(2)
    }

    /// True when the walk repeats no vertex.
    pub fn is_cycle(&self) -> bool {
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn shares_vertex_with(&self, other: &Circuit) -> bool {
        self.vertices.iter().any(|v| other.contains_vertex(*v))
    }

    /// Edges as (endpoint, endpoint, label) triples in walk order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, u64)> {
        let k = self.len();
        (0..k)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % k], self.labels[i]))
            .collect()
    }

    /// The same circuit rotated so the walk starts at the first
    /// occurrence of `v`. Panics if `v` is not on the circuit.
    pub(crate) fn rotate_to_start(&self, v: Vertex) -> Circuit {
        let at = self
            .vertices
            .iter()
            .position(|&u| u == v)
            .expect("rotation vertex lies on the circuit");
        let mut vertices = self.vertices[at..].to_vec();
        vertices.extend_from_slice(&self.vertices[..at]);
        let mut labels = self.labels[at..].to_vec();
        labels.extend_from_slice(&self.labels[..at]);
        Circuit { vertices, labels }
    }
}

/// Splits values into the kept graph skeleton and the discarded rest:
/// elements whose graph valuation is zero go, and of any elements
/// sharing a graph valuation only the smallest stays. The kept family
/// has injective nonzero graph valuations; the subset-products question
/// for the original set reduces to the kept family.
pub fn reduce_values(values: &[u64], classes: &PrimeClasses) -> Result<(Vec<u64>, Vec<u64>)> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if let Some(dup) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateValue(dup[0]));
    }
    let mut kept_by_class: BTreeMap<ExponentVector, u64> = BTreeMap::new();
    let mut removed = Vec::new();
    for &value in &sorted {
        let element = factorize(value)?;
        let valuation = classes.graph_valuation(&element);
        if valuation.is_zero() {
            removed.push(value);
            continue;
        }
        match kept_by_class.entry(valuation) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(_) => removed.push(value),
        }
    }
    let mut kept: Vec<u64> = kept_by_class.into_values().collect();
    kept.sort_unstable();
    Ok((kept, removed))
}

/// [`reduce_values`] over a validated set with classes derived from its
/// bound; returns the reduced set and the removed values ascending.
pub fn reduce_set(set: &SubsetProductSet) -> (SubsetProductSet, Vec<u64>) {
    let classes = PrimeClasses::from_limit(set.n_limit());
    let (kept, removed) =
        reduce_values(&set.values(), &classes).expect("a validated set reduces cleanly");
    let reduced =
        SubsetProductSet::new(&kept, set.n_limit()).expect("kept values stay within the bound");
    (reduced, removed)
}

/// Builds the factorization graph of a reduced set (classes derived
/// from the set's bound). Errors if the set was not reduced first or an
/// element has an unsupported valuation shape.
pub fn build_graph(set: &SubsetProductSet) -> Result<FactorGraph> {
    build_graph_with_classes(&set.values(), &PrimeClasses::from_limit(set.n_limit()))
}

/// [`build_graph`] over explicit values and classes, for hand-built
/// examples with custom prime splits.
pub fn build_graph_with_classes(values: &[u64], classes: &PrimeClasses) -> Result<FactorGraph> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if let Some(dup) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateValue(dup[0]));
    }
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_by_pair: BTreeMap<(Vertex, Vertex), u64> = BTreeMap::new();
    let mut square_elements: BTreeMap<u64, u64> = BTreeMap::new();
    for &value in &sorted {
        let element = factorize(value)?;
        let valuation = classes.graph_valuation(&element);
        let support: Vec<(u64, u32)> = valuation.iter().collect();
        let edge = match support.len() {
            0 => {
                return Err(Error::Precondition(format!(
                    "element {value} has zero medium-and-large valuation; reduce the set first"
                )));
            }
            1 => {
                let (p, exponent) = support[0];
                if exponent == 1 {
                    Edge::new(Vertex::Prime(p), Vertex::Unit, value)
                } else {
                    if !classes.is_medium(p) {
                        return Err(Error::Precondition(format!(
                            "element {value} squares the non-medium prime {p}"
                        )));
                    }
                    if let Some(&prior) = square_elements.get(&p) {
                        return Err(Error::Precondition(format!(
                            "elements {prior} and {value} both witness a square at {p}; \
                             reduce the set first"
                        )));
                    }
                    square_elements.insert(p, value);
                    continue;
                }
            }
            2 => {
                let (p, ep) = support[0];
                let (q, eq) = support[1];
                if ep != 1 || eq != 1 {
                    return Err(Error::Precondition(format!(
                        "element {value} carries a square factor on a two-prime support"
                    )));
                }
                if classes.is_large(p) && classes.is_large(q) {
                    return Err(Error::Precondition(format!(
                        "element {value} joins two large primes {p} and {q}"
                    )));
                }
                Edge::new(Vertex::Prime(p), Vertex::Prime(q), value)
            }
            _ => {
                return Err(Error::Precondition(format!(
                    "element {value} is divisible by more than two medium-or-large primes"
                )));
            }
        };
        if let Some(&prior) = edge_by_pair.get(&edge.ends) {
            return Err(Error::Precondition(format!(
                "elements {prior} and {} share the vertex pair ({}, {}); reduce the set first",
                edge.label, edge.ends.0, edge.ends.1
            )));
        }
        edge_by_pair.insert(edge.ends, edge.label);
        edges.push(edge);
    }
    Ok(FactorGraph {
        primes: classes.graph_primes(),
        classes: classes.clone(),
        edges,
        square_elements,
    })
}

impl FactorGraph {
    pub fn classes(&self) -> &PrimeClasses {
        &self.classes
    }

    /// All vertices in canonical order: graph primes ascending, then
    /// the unit vertex. Isolated primes are included.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.primes
            .iter()
            .map(|&p| Vertex::Prime(p))
            .chain(std::iter::once(Vertex::Unit))
            .collect()
    }

    pub fn n_vertices(&self) -> usize {
        self.primes.len() + 1
    }

    /// Edges ascending by label.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The square-marked medium primes, ascending.
    pub fn p_square(&self) -> Vec<u64> {
        self.square_elements.keys().copied().collect()
    }

    pub fn is_square_prime(&self, p: u64) -> bool {
        self.square_elements.contains_key(&p)
    }

    /// Square-marked primes mapped to their witnessing elements.
    pub fn square_elements(&self) -> &BTreeMap<u64, u64> {
        &self.square_elements
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn edge_between(&self, a: Vertex, b: Vertex) -> Option<&Edge> {
        let ends = (a.min(b), a.max(b));
        self.edges.iter().find(|e| e.ends == ends)
    }

    /// The same graph minus the edges with the given labels; vertex set
    /// and square markings are unchanged.
    pub fn without_edges(&self, labels: &[u64]) -> FactorGraph {
        let drop: std::collections::BTreeSet<u64> = labels.iter().copied().collect();
        debug_assert!(
            drop.iter()
                .all(|l| self.edges.iter().any(|e| e.label == *l)),
            "labels to drop exist in the graph"
        );
        FactorGraph {
            classes: self.classes.clone(),
            primes: self.primes.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| !drop.contains(&e.label))
                .copied()
                .collect(),
            square_elements: self.square_elements.clone(),
        }
    }

    fn vertex_index(&self, v: Vertex) -> usize {
        match v {
            Vertex::Prime(p) => self
                .primes
                .binary_search(&p)
                .expect("vertex belongs to the graph"),
            Vertex::Unit => self.primes.len(),
        }
    }

    fn vertex_at(&self, index: usize) -> Vertex {
        if index == self.primes.len() {
            Vertex::Unit
        } else {
            Vertex::Prime(self.primes[index])
        }
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adjacency = vec![Vec::new(); self.n_vertices()];
        for edge in &self.edges {
            let i = self.vertex_index(edge.ends.0);
            let j = self.vertex_index(edge.ends.1);
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        adjacency
    }

    fn circuit_from_indices(&self, cycle: &[usize]) -> Circuit {
        let vertices: Vec<Vertex> = cycle.iter().map(|&i| self.vertex_at(i)).collect();
        let labels: Vec<u64> = (0..vertices.len())
            .map(|i| {
                self.edge_between(vertices[i], vertices[(i + 1) % vertices.len()])
                    .expect("cycle edges exist in the graph")
                    .label
            })
            .collect();
        Circuit::new(vertices, labels).expect("an enumerated cycle is a valid circuit")
    }

    /// A cycle of length `<= max_len`, or `None`. Deterministic: scans
    /// start vertices in canonical order and returns the shortest cycle
    /// through the first start vertex that has one within the bound.
    pub fn find_short_cycle(&self, max_len: usize) -> Option<Circuit> {
        cycles::bfs_short_cycle(&self.adjacency(), max_len)
            .map(|cycle| self.circuit_from_indices(&cycle))
    }

    /// Every cycle of length `<= max_len`, sorted by length then by
    /// canonical vertex sequence. Exponential in `max_len`; meant for
    /// short bounds on small graphs.
    pub fn cycles_up_to(&self, max_len: usize) -> Vec<Circuit> {
        cycles::all_cycles_up_to(&self.adjacency(), max_len)
            .iter()
            .map(|cycle| self.circuit_from_indices(cycle))
            .collect()
    }

    /// Independent even-circuit existence check by exhaustive closed
    /// walks with distinct edges. Exponential; audit use only.
    pub fn even_circuit_exists_exhaustive(&self, max_len: usize) -> bool {
        let mut adjacency = vec![Vec::new(); self.n_vertices()];
        for (id, edge) in self.edges.iter().enumerate() {
            let i = self.vertex_index(edge.ends.0);
            let j = self.vertex_index(edge.ends.1);
            adjacency[i].push((j, id));
            adjacency[j].push((i, id));
        }
        cycles::even_circuit_walk_exists(&adjacency, self.edges.len(), max_len)
    }

    /// Graphviz rendering: primes as nodes (unit vertex as "1"), edges
    /// labeled by element, square-marked primes double-circled,
    /// isolated vertices omitted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph factorization {\n");
        for v in self.vertices() {
            if let Vertex::Prime(p) = v {
                if self.is_square_prime(p) && self.degree(v) > 0 {
                    out.push_str(&format!("  \"{v}\" [peripheries=2];\n"));
                }
            }
        }
        for edge in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                edge.ends.0, edge.ends.1, edge.label
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// An edge of the medium link graph: two medium-or-unit vertices joined
/// because a degree-two-or-more large prime is adjacent to both, with
/// that large prime as witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkEdge {
    pub ends: (Vertex, Vertex),
    pub witness: u64,
}

/// The link graph on the unit vertex and the medium primes. Each large
/// prime of degree two or more witnesses the edges between its
/// neighbors, so the witness map is onto those large primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MediumLinkGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<LinkEdge>,
}

/// Builds the link graph. Errors when two large primes share a pair of
/// neighbors — a four-vertex even circuit in the source graph, which
/// would force parallel link edges.
pub fn medium_link_graph(graph: &FactorGraph) -> Result<MediumLinkGraph> {
    let mut edges: BTreeMap<(Vertex, Vertex), u64> = BTreeMap::new();
    for &q in graph.classes().large() {
        let vertex = Vertex::Prime(q);
        let mut neighbors: Vec<Vertex> = graph
            .edges()
            .iter()
            .filter_map(|e| e.other_end(vertex))
            .collect();
        neighbors.sort_unstable();
        if neighbors.len() < 2 {
            continue;
        }
        for i in 0..neighbors.len() {
            for j in i + 1..neighbors.len() {
                let pair = (neighbors[i], neighbors[j]);
                if let Some(&prior) = edges.get(&pair) {
                    return Err(Error::Precondition(format!(
                        "large primes {prior} and {q} are both adjacent to {} and {}: \
                         a four-edge even circuit is present, remove even circuits first",
                        pair.0, pair.1
                    )));
                }
                edges.insert(pair, q);
            }
        }
    }
    let vertices: Vec<Vertex> = graph
        .classes()
        .medium()
        .iter()
        .map(|&p| Vertex::Prime(p))
        .chain(std::iter::once(Vertex::Unit))
        .collect();
    Ok(MediumLinkGraph {
        vertices,
        edges: edges
            .into_iter()
            .map(|(ends, witness)| LinkEdge { ends, witness })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{squarefree_construction, tree_construction, TreeStrategy};

    fn classes_121() -> PrimeClasses {
        PrimeClasses::from_limit(121)
    }

    /// The seven-element family over bound 121 whose graph is drawn in
    /// the module docs: one square witness at 5, three medium-medium
    /// edges, one medium-large edge, two unit edges.
    fn example_set_121() -> SubsetProductSet {
        SubsetProductSet::new(&[50, 105, 77, 55, 65, 26, 51], 121).unwrap()
    }

    #[test]
    fn classes_from_limit_match_the_partition() {
        let classes = classes_121();
        assert_eq!(classes.medium(), &[5, 7, 11]);
        assert_eq!(classes.large().first(), Some(&13));
        assert_eq!(classes.large().last(), Some(&113));
        assert!(classes.is_graph_prime(5));
        assert!(classes.is_graph_prime(13));
        assert!(!classes.is_graph_prime(2));
        assert!(!classes.is_graph_prime(3));
    }

    #[test]
    fn custom_classes_validate_their_input() {
        assert!(PrimeClasses::custom(vec![5, 3], vec![13]).is_ok());
        assert!(PrimeClasses::custom(vec![4], vec![]).is_err());
        assert!(PrimeClasses::custom(vec![3, 3], vec![]).is_err());
        assert!(PrimeClasses::custom(vec![3], vec![3]).is_err());
        let classes = PrimeClasses::custom(vec![5, 3], vec![13]).unwrap();
        assert_eq!(classes.medium(), &[3, 5]);
        assert_eq!(classes.graph_primes(), vec![3, 5, 13]);
    }

    #[test]
    fn reduce_keeps_the_smallest_of_each_class() {
        // Over bound 36 the primes 2 and 3 are small, 5 is medium, the
        // rest are large: 6 and 12 have zero graph valuation, 35 stays.
        let classes = PrimeClasses::from_limit(36);
        let (kept, removed) = reduce_values(&[6, 12, 35], &classes).unwrap();
        assert_eq!(kept, vec![35]);
        assert_eq!(removed, vec![6, 12]);
    }

    #[test]
    fn reduce_prefers_smaller_values_within_a_class() {
        // 20 = 2^2*5 and 5 share the valuation (5:1) over bound 121.
        let classes = classes_121();
        let (kept, removed) = reduce_values(&[20, 5, 7], &classes).unwrap();
        assert_eq!(kept, vec![5, 7]);
        assert_eq!(removed, vec![20]);
    }

    #[test]
    fn reduce_is_identity_on_an_injective_family() {
        let (reduced, removed) = reduce_set(&example_set_121());
        assert!(removed.is_empty());
        assert_eq!(reduced.len(), 7);
    }

    #[test]
    fn reduce_rejects_duplicates_and_handles_empty() {
        let classes = classes_121();
        assert!(reduce_values(&[5, 5], &classes).is_err());
        let (kept, removed) = reduce_values(&[], &classes).unwrap();
        assert!(kept.is_empty());
        assert!(removed.is_empty());
    }

    #[test]
    fn graph_of_the_seven_element_example() {
        let graph = build_graph(&example_set_121()).unwrap();
        assert_eq!(graph.edge_count(), 6);
        assert_eq!(graph.p_square(), vec![5]);
        assert_eq!(graph.square_elements().get(&5), Some(&50));
        let expect = [
            (Vertex::Prime(13), Vertex::Unit, 26),
            (Vertex::Prime(17), Vertex::Unit, 51),
            (Vertex::Prime(5), Vertex::Prime(11), 55),
            (Vertex::Prime(5), Vertex::Prime(13), 65),
            (Vertex::Prime(7), Vertex::Prime(11), 77),
            (Vertex::Prime(5), Vertex::Prime(7), 105),
        ];
        for (a, b, label) in expect {
            let edge = graph.edge_between(a, b).unwrap();
            assert_eq!(edge.label, label);
        }
        assert_eq!(graph.degree(Vertex::Prime(5)), 3);
        assert_eq!(graph.degree(Vertex::Prime(7)), 2);
        assert_eq!(graph.degree(Vertex::Unit), 2);
        assert_eq!(graph.degree(Vertex::Prime(103)), 0);
        // Elements are exactly edges plus square witnesses.
        assert_eq!(
            example_set_121().len(),
            graph.edge_count() + graph.p_square().len()
        );
    }

    #[test]
    fn build_rejects_unreduced_or_malformed_input() {
        let classes = classes_121();
        // Zero valuation (4 = 2^2 is small-only at 121).
        assert!(build_graph_with_classes(&[4], &classes).is_err());
        // Parallel edge: 35 and 70 share the pair (5, 7).
        assert!(build_graph_with_classes(&[35, 70], &classes).is_err());
        // Two witnesses for the square at 5.
        assert!(build_graph_with_classes(&[25, 50], &classes).is_err());
        // A square at a large prime (custom split).
        let odd = PrimeClasses::custom(vec![], vec![5]).unwrap();
        assert!(build_graph_with_classes(&[25], &odd).is_err());
        // Square factor on a two-prime support (custom split).
        let two = PrimeClasses::custom(vec![3, 5], vec![]).unwrap();
        assert!(build_graph_with_classes(&[45], &two).is_err());
        // Three graph primes (custom split).
        let three = PrimeClasses::custom(vec![3, 5, 7], vec![]).unwrap();
        assert!(build_graph_with_classes(&[105], &three).is_err());
        // Duplicate values.
        assert!(build_graph_with_classes(&[26, 26], &classes).is_err());
    }

    #[test]
    fn empty_input_builds_isolated_vertices_only() {
        let graph = build_graph_with_classes(&[], &classes_121()).unwrap();
        assert_eq!(graph.edge_count(), 0);
        assert!(graph.p_square().is_empty());
        assert_eq!(graph.n_vertices(), 3 + 25 + 1);
    }

    #[test]
    fn tree_construction_reduces_and_builds_as_expected() {
        // Over bound 121: path-tree family of size 34. The tree edges 6
        // (small-small) and the squares 4, 9 have zero graph valuation,
        // so reduction removes exactly {4, 6, 9}; 15 becomes a unit
        // edge at 5, while 35 and 77 stay medium-medium edges.
        let output = tree_construction(121, TreeStrategy::PathAscending).unwrap();
        let (reduced, removed) = reduce_set(&output.set);
        assert_eq!(removed, vec![4, 6, 9]);
        let graph = build_graph(&reduced).unwrap();
        assert_eq!(graph.p_square(), vec![5, 7, 11]);
        assert_eq!(graph.edge_count(), 28);
        assert_eq!(graph.degree(Vertex::Unit), 26);
        assert!(graph.edge_between(Vertex::Prime(5), Vertex::Unit).is_some());
        assert_eq!(
            graph
                .edge_between(Vertex::Prime(5), Vertex::Prime(7))
                .unwrap()
                .label,
            35
        );
        assert_eq!(
            graph
                .edge_between(Vertex::Prime(7), Vertex::Prime(11))
                .unwrap()
                .label,
            77
        );
        assert_eq!(reduced.len(), graph.edge_count() + graph.p_square().len());
    }

    #[test]
    fn short_cycle_search_sees_the_squarefree_triangle() {
        // Squarefree family at 100: after reduction one triangle on
        // {5, 7, 13} remains (91 = 7*13, 65 = 5*13, 35 = 5*7).
        let output = squarefree_construction(100, 0.05).unwrap();
        let (reduced, _) = reduce_set(&output.set);
        let graph = build_graph(&reduced).unwrap();
        let cycle = graph.find_short_cycle(3).unwrap();
        assert_eq!(cycle.len(), 3);
        let mut vertices = cycle.vertices().to_vec();
        vertices.sort_unstable();
        assert_eq!(
            vertices,
            vec![Vertex::Prime(5), Vertex::Prime(7), Vertex::Prime(13)]
        );
        let mut labels = cycle.labels().to_vec();
        labels.sort_unstable();
        assert_eq!(labels, vec![35, 65, 91]);
    }

    #[test]
    fn dot_rendering_is_stable() {
        let graph = build_graph(&example_set_121()).unwrap();
        let dot = graph.to_dot();
        let expected = "graph factorization {\n  \"5\" [peripheries=2];\n  \"13\" -- \"1\" [label=\"26\"];\n  \"17\" -- \"1\" [label=\"51\"];\n  \"5\" -- \"11\" [label=\"55\"];\n  \"5\" -- \"13\" [label=\"65\"];\n  \"7\" -- \"11\" [label=\"77\"];\n  \"5\" -- \"7\" [label=\"105\"];\n}\n";
        assert_eq!(dot, expected);
        // Isolated large primes stay out of the rendering.
        assert!(!dot.contains("\"103\""));
    }

    #[test]
    fn link_graph_of_the_squarefree_family() {
        // At bound 100 only the large prime 13 has two neighbors after
        // reduction (via 91 and 65): one link edge {5, 7} witnessed by
        // 13.
        let output = squarefree_construction(100, 0.05).unwrap();
        let (reduced, _) = reduce_set(&output.set);
        let graph = build_graph(&reduced).unwrap();
        let link = medium_link_graph(&graph).unwrap();
        assert_eq!(
            link.vertices,
            vec![Vertex::Prime(5), Vertex::Prime(7), Vertex::Unit]
        );
        assert_eq!(link.edges.len(), 1);
        assert_eq!(link.edges[0].ends, (Vertex::Prime(5), Vertex::Prime(7)));
        assert_eq!(link.edges[0].witness, 13);
    }

    #[test]
    fn link_graph_rejects_shared_neighbor_pairs() {
        // 3-7-5-11-3 is a four-edge even circuit: both large primes see
        // the pair {3, 5}.
        let classes = PrimeClasses::custom(vec![3, 5], vec![7, 11]).unwrap();
        let graph = build_graph_with_classes(&[21, 35, 33, 55], &classes).unwrap();
        assert!(medium_link_graph(&graph).is_err());
    }

    #[test]
    fn circuit_validation_and_rotation() {
        let v = |p| Vertex::Prime(p);
        assert!(Circuit::new(vec![v(3), v(5)], vec![15, 15]).is_err());
        assert!(Circuit::new(vec![v(3), v(5), v(7)], vec![15, 35]).is_err());
        assert!(Circuit::new(vec![v(3), v(5), v(7)], vec![15, 35, 15]).is_err());
        let c = Circuit::new(vec![v(3), v(5), v(7)], vec![15, 35, 21]).unwrap();
        assert_eq!(c.len(), 3);
        assert!(!c.is_even());
        assert!(c.is_cycle());
        let r = c.rotate_to_start(v(5));
        assert_eq!(r.vertices(), &[v(5), v(7), v(3)]);
        assert_eq!(r.labels(), &[35, 21, 15]);
    }
}
