//! The nine acceptance checks, one test each. Every tolerance, bound,
//! and expected value is pinned in code; each test prints one
//! `ACCEPTANCE n: PASS` line on success (visible with `--nocapture`).

use std::collections::BTreeSet;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dsp_core::arithmetic::{factorize, nth_root, prime_pi};
use dsp_core::constructions::{
    default_ek_table, erdos_basic, gk_chain, squarefree_construction, tree_construction,
    triples_construction, ConstructionKind, ConstructionOutput, TreeStrategy,
};
use dsp_core::extremal::{exact_f, exact_g, exact_h, DEFAULT_SEARCH_BUDGET};
use dsp_core::factor_graph::build_graph_with_classes;
use dsp_core::factor_graph::{
    bound_audit, build_graph, check_valuation_certificate, circuit_to_certificate,
    find_even_circuit, reduce_set, AuditOutcome, PrimeClasses, SimpleGraph, Vertex,
};
use dsp_core::verifier::{
    brute_force_distinct, check_certificate, verify_distinct, CollisionCertificate,
    SubsetProductSet, Verdict, VerifyConfig,
};

// Pinned runtime tolerances, from the acceptance contract.
const LIMIT_ORACLE_EQUIVALENCE: Duration = Duration::from_secs(10);
const LIMIT_WORKED_EXAMPLES: Duration = Duration::from_secs(1);
const LIMIT_CONSTRUCTION_VALIDITY: Duration = Duration::from_secs(60);
const LIMIT_EXACT_VALUES: Duration = Duration::from_secs(300);
const LIMIT_SHORT_CYCLE_SUITE: Duration = Duration::from_secs(120);
const LIMIT_PIPELINE_INVARIANTS: Duration = Duration::from_secs(300);

fn default_output(kind: ConstructionKind, n: u64) -> dsp_core::error::Result<ConstructionOutput> {
    match kind {
        ConstructionKind::ErdosBasic => erdos_basic(n),
        ConstructionKind::GkChain => gk_chain(n, &default_ek_table()),
        ConstructionKind::Triples => triples_construction(n),
        ConstructionKind::Tree => tree_construction(n, TreeStrategy::PathAscending),
        ConstructionKind::Squarefree => squarefree_construction(n, 0.05),
    }
}

/// 1. The ladder and the exhaustive oracle agree on every one of the
///    512 subsets of {2, ..., 10}.
#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let pool: Vec<u64> = (2..=10).collect();
    let config = VerifyConfig::default();
    for mask in 0u16..512 {
        let values: Vec<u64> = pool
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        let set = SubsetProductSet::new(&values, 10).expect("subset of [2, 10]");
        let ladder = verify_distinct(&set, &config);
        let oracle = brute_force_distinct(&set, &config).expect("nine elements fit the oracle");
        assert!(
            !matches!(ladder, Verdict::Inconclusive(_)),
            "ladder inconclusive on {values:?}"
        );
        assert_eq!(
            ladder.is_distinct(),
            oracle.is_distinct(),
            "ladder and oracle disagree on {values:?}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT_ORACLE_EQUIVALENCE, "took {elapsed:?}");
    println!("ACCEPTANCE 1: PASS (512 subsets, ladder == oracle, {elapsed:?})");
}

/// 2. The three worked examples reproduce exactly: the seven-element
///    graph's edges and square mark, and the two circuit certificates
///    with exact valuation equality.
#[test]
fn criterion_2_worked_examples() {
    let start = Instant::now();

    // Seven-element set at bound 121: six edges, square mark at 5.
    let set = SubsetProductSet::new(&[50, 105, 77, 55, 65, 26, 51], 121).unwrap();
    let (reduced, removed) = reduce_set(&set);
    assert!(removed.is_empty(), "the example set is already reduced");
    let graph = build_graph(&reduced).unwrap();
    assert_eq!(graph.edge_count(), 6);
    assert_eq!(graph.p_square(), vec![5]);
    let labeled: Vec<(u64, Vertex, Vertex)> = graph
        .edges()
        .iter()
        .map(|e| (e.label, e.ends.0, e.ends.1))
        .collect();
    use Vertex::{Prime, Unit};
    assert_eq!(
        labeled,
        vec![
            (26, Prime(13), Unit),
            (51, Prime(17), Unit),
            (55, Prime(5), Prime(11)),
            (65, Prime(5), Prime(13)),
            (77, Prime(7), Prime(11)),
            (105, Prime(5), Prime(7)),
        ]
    );

    // Even-circuit certificate: the four-cycle in the two-component
    // fixture balances 15 * 154 = 55 * 84 I exactly on every graph prime.
    let classes = PrimeClasses::custom(vec![3, 5, 7, 11, 13, 17, 19, 23, 29], vec![]).unwrap();
    let graph =
        build_graph_with_classes(&[15, 55, 84, 154, 221, 247, 323, 551, 437, 667], &classes)
            .unwrap();
    let circuit = find_even_circuit(&graph, 8).expect("the fixture has a four-cycle");
    let cert = circuit_to_certificate(&circuit, &graph).unwrap();
    assert_eq!(cert.side_a(), &[15, 154]);
    assert_eq!(cert.side_b(), &[55, 84]);
    assert!(
        check_valuation_certificate(&cert, graph.classes()),
        "even-circuit certificate must balance exactly"
    );

    // Odd-square certificate: the five-cycle with the square witness 9
    // at prime 3 balances 15 * 84 * 143 against 9 * 65 * 154.
    let classes = PrimeClasses::custom(vec![3, 5, 7, 11, 13], vec![]).unwrap();
    let graph = build_graph_with_classes(&[15, 65, 84, 154, 143, 9], &classes).unwrap();
    let circuit = graph
        .find_short_cycle(5)
        .expect("the fixture is a five-cycle");
    assert_eq!(circuit.len(), 5);
    let cert = circuit_to_certificate(&circuit, &graph).unwrap();
    assert_eq!(cert.side_a(), &[15, 84, 143]);
    assert_eq!(cert.side_b(), &[9, 65, 154]);
    assert!(
        check_valuation_certificate(&cert, graph.classes()),
        "odd-square certificate must balance exactly"
    );

    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT_WORKED_EXAMPLES, "took {elapsed:?}");
    println!("ACCEPTANCE 2: PASS (graph shape and both certificates exact, {elapsed:?})");
}

/// 3. Every construction verifies as distinct — never a collision,
///    never inconclusive — at six bounds up to 2000.
#[test]
fn criterion_3_construction_validity() {
    let start = Instant::now();
    let config = VerifyConfig::default();
    for kind in ConstructionKind::ALL {
        for n in [10, 50, 121, 500, 1000, 2000] {
            let output = default_output(kind, n)
                .unwrap_or_else(|err| panic!("{kind} must build at {n}: {err}"));
            let verdict = verify_distinct(&output.set, &config);
            assert!(
                matches!(verdict, Verdict::Distinct(_)),
                "{kind} at {n} must verify distinct, got {verdict:?}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT_CONSTRUCTION_VALIDITY, "took {elapsed:?}");
    println!("ACCEPTANCE 3: PASS (5 constructions x 6 bounds all distinct, {elapsed:?})");
}

/// 4. The count formulas hold exactly: erdos and tree at every bound up
///    to 2000, triples at every bound up to 2000, and the two pinned
///    point values.
#[test]
fn criterion_4_count_formulas() {
    for n in 2..=2000u64 {
        let expected = prime_pi(n) + prime_pi(nth_root(n, 2));
        let erdos = erdos_basic(n).unwrap();
        assert_eq!(erdos.set.len(), expected, "erdos size at {n}");

        let triples = triples_construction(n).unwrap();
        let cube = prime_pi(nth_root(n, 3));
        let expected_triples = prime_pi(n) - 2 * cube + prime_pi(nth_root(n, 2)) + 7 * (cube / 3);
        assert_eq!(triples.set.len(), expected_triples, "triples size at {n}");

        if n >= 4 {
            let tree = tree_construction(n, TreeStrategy::PathAscending).unwrap();
            assert_eq!(tree.set.len(), expected - 1, "tree size at {n}");
        }
    }
    assert_eq!(gk_chain(128, &default_ek_table()).unwrap().set.len(), 39);
    assert_eq!(squarefree_construction(100, 0.05).unwrap().set.len(), 26);
    println!("ACCEPTANCE 4: PASS (count formulas exact for all bounds to 2000)");
}

/// All subset products of `values` are pairwise distinct, by complete
/// enumeration — the independent oracle for criterion 5.
fn products_all_distinct(values: &[u64]) -> bool {
    let mut products: Vec<u128> = vec![1];
    for &v in values {
        let scaled: Vec<u128> = products.iter().map(|p| p * u128::from(v)).collect();
        products.extend(scaled);
    }
    products.sort_unstable();
    products.windows(2).all(|w| w[0] != w[1])
}

/// Largest subset of [1, n] with distinct subset products, by trying
/// all 2^n subsets.
fn independent_f(n: u64) -> u64 {
    let mut best = 0u64;
    for mask in 0u32..(1 << n) {
        let values: Vec<u64> = (1..=n).filter(|&v| mask & (1 << (v - 1)) != 0).collect();
        if values.len() as u64 > best && products_all_distinct(&values) {
            best = values.len() as u64;
        }
    }
    best
}

fn sums_all_distinct(values: &[u64]) -> bool {
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << values.len()) {
        let sum: u64 = values
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .sum();
        if !seen.insert(sum) {
            return false;
        }
    }
    true
}

/// Least m such that some k-subset of [1, m] has distinct subset sums,
/// by trying every subset of [1, m] for growing m.
fn independent_g(k: u64) -> u64 {
    (k..)
        .find(|&m| {
            (0u32..(1 << m)).any(|mask| {
                if u64::from(mask.count_ones()) != k {
                    return false;
                }
                let values: Vec<u64> = (1..=m).filter(|&v| mask & (1 << (v - 1)) != 0).collect();
                sums_all_distinct(&values)
            })
        })
        .expect("every k admits some m")
}

/// 5. Exact extremal values match independent exhaustive enumeration:
///    f(1..12) with its pinned anchors, h(6) = 3, g(1..4) = 1, 2, 4, 7.
#[test]
fn criterion_5_exact_extremal_values() {
    let start = Instant::now();

    let mut f_values = Vec::new();
    for n in 1..=12u64 {
        let exact = exact_f(n, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(exact.optimal, "f({n}) search must complete");
        let independent = independent_f(n);
        assert_eq!(
            exact.value, independent,
            "f({n}) vs independent enumeration"
        );
        f_values.push(exact.value);
    }
    assert_eq!(f_values[0], 0, "f(1)");
    assert_eq!(f_values[1], 1, "f(2)");
    assert_eq!(f_values[4], 4, "f(5)");
    assert_eq!(f_values[5], 4, "f(6)");

    let h6 = exact_h(6, DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(h6.optimal);
    assert_eq!(h6.value, 3, "h(6)");
    // Independent check with the squarefree restriction applied by
    // factorization: keep values whose exponents are all one (and 1).
    let squarefree_pool: Vec<u64> = (1..=6u64)
        .filter(|&v| factorize(v).unwrap().exponents.iter().all(|(_, e)| e == 1))
        .collect();
    let mut best = 0;
    for mask in 0u32..(1 << squarefree_pool.len()) {
        let values: Vec<u64> = squarefree_pool
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        if values.len() > best && products_all_distinct(&values) {
            best = values.len();
        }
    }
    assert_eq!(best, 3, "independent h(6)");

    for (k, expected) in [(1u64, 1u64), (2, 2), (3, 4), (4, 7)] {
        let exact = exact_g(k, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(exact.value, expected, "g({k})");
        assert_eq!(independent_g(k), expected, "independent g({k})");
    }

    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT_EXACT_VALUES, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 5: PASS (f(1..12), h(6), g(1..4) all independently confirmed, {elapsed:?})"
    );
}

/// 6. The short-cycle finder succeeds within its guaranteed bound on
///    200 random graphs for each of nine density settings.
#[test]
fn criterion_6_short_cycle_bound() {
    let start = Instant::now();
    for (ni, &n) in [50usize, 100, 200].iter().enumerate() {
        // All vertex pairs, in a fixed order the sampler indexes into.
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .collect();
        for (ci, &c) in [0.1f64, 0.25, 1.0].iter().enumerate() {
            let n_edges = ((1.0 + c) * n as f64).ceil() as usize;
            let bound = ((2.0 * (c + 1.0) / c) * ((n as f64).log2() + 1.0)).ceil() as usize;
            for trial in 0..200u64 {
                let seed = ((ni as u64) << 40) | ((ci as u64) << 32) | trial;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let chosen = rand::seq::index::sample(&mut rng, pairs.len(), n_edges);
                let edges: Vec<(usize, usize)> = chosen.into_iter().map(|i| pairs[i]).collect();
                let graph = SimpleGraph::new(n, &edges).unwrap();
                let cycle = graph.find_short_cycle(bound).unwrap_or_else(|| {
                    panic!("no cycle within {bound} on n={n}, c={c}, trial={trial}")
                });
                assert!(cycle.len() >= 3 && cycle.len() <= bound);
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT_SHORT_CYCLE_SUITE, "took {elapsed:?}");
    println!("ACCEPTANCE 6: PASS (1800 random graphs, cycle always within bound, {elapsed:?})");
}

/// The four audited invariants of the removal pipeline, checked on one
/// audit outcome.
fn assert_pipeline_invariants(outcome: &AuditOutcome, label: &str) {
    let threshold = outcome.report.threshold;
    let after_even = &outcome.removal.after_even;

    // (a) No even circuit survives up to twice the threshold, checked
    //     exhaustively while the walk space stays small.
    if after_even.edge_count() <= 40 {
        assert!(
            !after_even.even_circuit_exists_exhaustive(2 * threshold),
            "{label}: an even circuit survived stage one"
        );
    }

    // (b) The short odd cycles that remain are pairwise vertex-disjoint.
    let odd_cycles: Vec<_> = after_even
        .cycles_up_to(threshold)
        .into_iter()
        .filter(|c| !c.is_even())
        .collect();
    for i in 0..odd_cycles.len() {
        for j in (i + 1)..odd_cycles.len() {
            assert!(
                !odd_cycles[i].shares_vertex_with(&odd_cycles[j]),
                "{label}: short odd cycles {i} and {j} share a vertex"
            );
        }
    }

    // (c) Stage three removes at most floor((|unsquared mediums| + 1)/2).
    let initial = &outcome.removal.initial;
    let plain_mediums = initial
        .classes()
        .medium()
        .iter()
        .filter(|&&p| !initial.is_square_prime(p))
        .count();
    assert!(
        outcome.removal.removed_edge_labels.len() <= plain_mediums.div_ceil(2),
        "{label}: stage three removed {} edges with only {} unsquared mediums",
        outcome.removal.removed_edge_labels.len(),
        plain_mediums
    );

    // (d) The final graph has no cycle up to the threshold.
    assert!(
        outcome
            .removal
            .final_graph
            .find_short_cycle(threshold)
            .is_none(),
        "{label}: a short cycle survived the full pipeline"
    );
}

/// 7. The removal pipeline completes and keeps its invariants on 100
///    random subsets of [1, 200] and on every construction at bounds
///    up to 500.
#[test]
fn criterion_7_pipeline_invariants() {
    let start = Instant::now();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_CAFE);
    for case in 0..100 {
        let size = rng.gen_range(1..=30);
        let mut values: Vec<u64> = rand::seq::index::sample(&mut rng, 200, size)
            .into_iter()
            .map(|i| i as u64 + 1)
            .collect();
        values.sort_unstable();
        let set = SubsetProductSet::new(&values, 200).unwrap();
        let outcome = bound_audit(&set, None)
            .unwrap_or_else(|err| panic!("audit failed on random case {case}: {err}"));
        assert_pipeline_invariants(&outcome, &format!("random case {case}"));
    }

    for kind in ConstructionKind::ALL {
        for n in [10, 50, 121, 500] {
            let output = default_output(kind, n).unwrap();
            let outcome = bound_audit(&output.set, None)
                .unwrap_or_else(|err| panic!("audit failed on {kind} at {n}: {err}"));
            assert_pipeline_invariants(&outcome, &format!("{kind} at {n}"));
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT_PIPELINE_INVARIANTS, "took {elapsed:?}");
    println!("ACCEPTANCE 7: PASS (120 audits, all four invariants held, {elapsed:?})");
}

/// 8. The squarefree family is at least as large as its proof's lower
///    bound pi(N) + (1/2 - 3e)pi(sqrt N) - 2 at e = 0.05, compared in
///    exact integers: 20*size >= 20*pi(N) + 7*pi(sqrt N) - 40.
#[test]
fn criterion_8_squarefree_count_inequality() {
    for n in [1_000u64, 10_000] {
        let size = squarefree_construction(n, 0.05).unwrap().set.len();
        let lhs = 20 * size;
        let rhs = 20 * prime_pi(n) + 7 * prime_pi(nth_root(n, 2)) - 40;
        assert!(
            lhs >= rhs,
            "at {n}: 20 * {size} = {lhs} falls below the bound {rhs}"
        );
    }
    println!("ACCEPTANCE 8: PASS (squarefree sizes clear the proof bound at 10^3 and 10^4)");
}

/// 9. The command-line contract: exit 0 on a distinct set, 1 on a
///    collision (with a re-validating certificate), 2 when the budget
///    runs out, 64 on an invalid request, 65 on unreadable input.
#[test]
fn criterion_9_cli_contract() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_dsp");
    let path = |name: &str| dir.path().join(name);

    // Exit 0: a construction output verifies distinct.
    let set_path = path("erdos.json");
    let status = Command::new(bin)
        .args(["construct", "--kind", "erdos", "--n", "121", "--out"])
        .arg(&set_path)
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0), "construct must succeed");
    let status = Command::new(bin)
        .arg("verify")
        .arg(&set_path)
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0), "distinct set must exit 0");

    // Exit 1: a collision, and the emitted certificate re-validates.
    let bad_path = path("colliding.txt");
    std::fs::write(&bad_path, "2\n3\n6\n").unwrap();
    let cert_path = path("colliding.cert.json");
    let status = Command::new(bin)
        .arg("verify")
        .arg(&bad_path)
        .arg("--cert-out")
        .arg(&cert_path)
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1), "colliding set must exit 1");

    let cert_json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert_json["format_version"], "dsp-cert/1");
    let side = |key: &str| -> Vec<u64> {
        cert_json[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect()
    };
    let cert = CollisionCertificate::new(side("subset_b"), side("subset_c")).unwrap();
    let set = SubsetProductSet::new(&[2, 3, 6], 6).unwrap();
    assert!(
        check_certificate(&cert, &set),
        "emitted certificate must re-validate"
    );
    assert_eq!(
        cert.common_product().to_string(),
        cert_json["product"].as_str().unwrap(),
        "recorded product must match the certificate sides"
    );

    // Exit 2: a relation-rich set with a starved budget is inconclusive.
    let starved_path = path("starved.txt");
    let lines: String = (2..=30).map(|v| format!("{v}\n")).collect();
    std::fs::write(&starved_path, lines).unwrap();
    let status = Command::new(bin)
        .arg("verify")
        .arg(&starved_path)
        .args(["--budget", "1"])
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2), "budget-starved set must exit 2");

    // Exit 64: invalid construction parameters.
    let status = Command::new(bin)
        .args(["construct", "--kind", "erdos", "--n", "1"])
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(64), "invalid parameters must exit 64");

    // Exit 65: unreadable input.
    let status = Command::new(bin)
        .arg("verify")
        .arg(path("missing.json"))
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(65), "missing input must exit 65");

    println!("ACCEPTANCE 9: PASS (exit codes 0/1/2/64/65 and certificate re-validation)");
}
