//! One handler per subcommand. Each returns the process exit code
//! (0 distinct/done, 1 collision, 2 inconclusive) or a [`CliError`]
//! that fixes the code for invalid requests (64) and bad input (65).

use std::fs;
use std::path::Path;

use serde::Deserialize;

use dsp_core::arithmetic::{nth_root, prime_pi};
use dsp_core::constructions::{
    default_ek_table, erdos_basic, gk_chain, squarefree_construction, tree_construction,
    triples_construction, ConstructionKind, ConstructionOutput, ExponentRow, ExponentTable,
    TreeStrategy,
};
use dsp_core::extremal::{exact_f, exact_g, exact_h, SearchResult, MAX_EXACT_K, MAX_EXACT_N};
use dsp_core::factor_graph::{bound_audit, build_graph, reduce_set};
use dsp_core::verifier::{brute_force_distinct, verify_distinct, TraceStep, Verdict, VerifyConfig};

use crate::formats::{read_set, to_json, CertificateFile, CliError, SetFile};
use crate::output::{out, out_raw};
use crate::{BoundsArgs, ConstructArgs, ExactArgs, ExactFunction, GraphArgs, KindArg, VerifyArgs};

/// Density parameter used by the squarefree family when none is given.
const DEFAULT_EPSILON: f64 = 0.05;

fn usage(err: impl ToString) -> CliError {
    CliError::Usage(err.to_string())
}

// ---------------------------------------------------------------- construct

pub fn construct(args: &ConstructArgs) -> Result<u8, CliError> {
    if args.epsilon.is_some() && args.kind != KindArg::Squarefree {
        return Err(usage("--epsilon applies only to --kind squarefree"));
    }
    if args.tree.is_some() && args.kind != KindArg::Tree {
        return Err(usage("--tree applies only to --kind tree"));
    }
    if args.ek_table.is_some() && args.kind != KindArg::GkChain {
        return Err(usage("--ek-table applies only to --kind gk-chain"));
    }

    let output = build_construction(args).map_err(usage)?;
    let text = to_json(&SetFile::from_construction(&output));
    match &args.out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|err| usage(format!("cannot write {}: {err}", path.display())))?;
            out!(
                "{}: {} elements for bound {}, written to {}",
                output.kind,
                output.set.len(),
                args.n,
                path.display()
            );
        }
        None => out_raw!("{text}"),
    }
    Ok(0)
}

fn build_construction(args: &ConstructArgs) -> dsp_core::error::Result<ConstructionOutput> {
    match args.kind {
        KindArg::Erdos => erdos_basic(args.n),
        KindArg::GkChain => {
            let table = match &args.ek_table {
                Some(path) => load_exponent_table(path)?,
                None => default_ek_table(),
            };
            gk_chain(args.n, &table)
        }
        KindArg::Triples => triples_construction(args.n),
        KindArg::Tree => {
            let strategy = match args.tree.unwrap_or(crate::TreeShape::Path) {
                crate::TreeShape::Path => TreeStrategy::PathAscending,
                crate::TreeShape::Star => TreeStrategy::StarOnSmallest,
            };
            tree_construction(args.n, strategy)
        }
        KindArg::Squarefree => {
            squarefree_construction(args.n, args.epsilon.unwrap_or(DEFAULT_EPSILON))
        }
    }
}

/// Row shape of an `--ek-table` file: a JSON array of these objects.
#[derive(Deserialize)]
struct ExponentRowFile {
    size: usize,
    max_exponent: u32,
    exponents: Vec<u32>,
}

fn load_exponent_table(path: &Path) -> dsp_core::error::Result<ExponentTable> {
    let invalid = |msg: String| dsp_core::Error::InvalidParameter(msg);
    let text = fs::read_to_string(path)
        .map_err(|err| invalid(format!("cannot read {}: {err}", path.display())))?;
    let rows: Vec<ExponentRowFile> = serde_json::from_str(&text)
        .map_err(|err| invalid(format!("malformed exponent table: {err}")))?;
    ExponentTable::new(
        rows.into_iter()
            .map(|row| ExponentRow {
                size: row.size,
                max_exponent: row.max_exponent,
                exponents: row.exponents,
            })
            .collect(),
    )
}

// ------------------------------------------------------------------- verify

pub fn verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let set = read_set(&args.set_path)?;
    let mut config = VerifyConfig::default();
    if let Some(budget) = args.budget {
        config.node_budget = budget;
    }
    out!("set: {} elements, bound {}", set.len(), set.n_limit());

    let verdict = if args.oracle {
        brute_force_distinct(&set, &config).map_err(usage)?
    } else {
        verify_distinct(&set, &config)
    };

    match verdict {
        Verdict::Distinct(trace) => {
            out!("verdict: distinct");
            for step in &trace.steps {
                out!("  {}", describe_step(step));
            }
            Ok(0)
        }
        Verdict::Collision(cert) => {
            out!("verdict: collision");
            out!("subset_b: {:?}", cert.subset_b());
            out!("subset_c: {:?}", cert.subset_c());
            out!("product: {}", cert.common_product());
            let path = args
                .cert_out
                .clone()
                .unwrap_or_else(|| args.set_path.with_extension("cert.json"));
            let text = to_json(&CertificateFile::from_certificate(&cert));
            fs::write(&path, text)
                .map_err(|err| usage(format!("cannot write {}: {err}", path.display())))?;
            out!("certificate written: {}", path.display());
            Ok(1)
        }
        Verdict::Inconclusive(report) => {
            out!("verdict: inconclusive");
            out!(
                "component of {} elements exhausted the budget: {} of {} nodes",
                report.component.len(),
                report.nodes_explored,
                report.node_budget
            );
            Ok(2)
        }
    }
}

fn describe_step(step: &TraceStep) -> String {
    match step {
        TraceStep::ExhaustiveEnumeration { subsets } => {
            format!("exhaustive enumeration: {subsets} subsets, all products distinct")
        }
        TraceStep::ForcedZeroElimination { deductions } => {
            format!(
                "forced-zero elimination: {} columns removed",
                deductions.len()
            )
        }
        TraceStep::SplitComponents { components } => {
            format!("split into {} independent components", components.len())
        }
        TraceStep::AcyclicBlocks { component } => {
            format!(
                "component of {} elements: certified by block structure",
                component.len()
            )
        }
        TraceStep::FullRank { component, rank } => {
            format!(
                "component of {} elements: full column rank {rank}",
                component.len()
            )
        }
        TraceStep::SearchExhaustive { component, nodes } => {
            format!(
                "component of {} elements: signed search exhausted in {nodes} nodes",
                component.len()
            )
        }
    }
}

// -------------------------------------------------------------------- exact

pub fn exact(args: &ExactArgs) -> Result<u8, CliError> {
    let budget = args
        .budget
        .unwrap_or(dsp_core::extremal::DEFAULT_SEARCH_BUDGET);
    let (name, result) = match args.function() {
        ExactFunction::F => {
            check_product_cap(args.n)?;
            ("f", exact_f(args.n, budget))
        }
        ExactFunction::H => {
            check_product_cap(args.n)?;
            ("h", exact_h(args.n, budget))
        }
        ExactFunction::G => {
            if args.n == 0 {
                return Err(usage("g is defined for k >= 1"));
            }
            if args.n > MAX_EXACT_K {
                return Err(usage(format!(
                    "exact distinct-sum search accepts k up to {MAX_EXACT_K}, got {}",
                    args.n
                )));
            }
            ("g", exact_g(args.n, budget))
        }
    };

    // Caps were checked above, so an error here means the node budget
    // ran out before the value was pinned down.
    let result = match result {
        Ok(result) => result,
        Err(err) => {
            out!("inconclusive: {err}");
            return Ok(2);
        }
    };

    out!("{name}({}) = {}", result.parameter, result.value);
    out!("nodes explored: {}", result.nodes_explored);
    out!("optimal: {}", result.optimal);
    out_raw!("{}", to_json(&witness_file(name, args.n, budget, &result)));
    Ok(if result.optimal { 0 } else { 2 })
}

fn check_product_cap(n: u64) -> Result<(), CliError> {
    if n > MAX_EXACT_N {
        return Err(usage(format!(
            "exact subset-product search accepts bounds up to {MAX_EXACT_N}, got {n}"
        )));
    }
    Ok(())
}

fn witness_file(name: &str, n: u64, budget: u64, result: &SearchResult) -> SetFile {
    let n_limit = match name {
        // For g the witness lives in [1, m] for the value m found.
        "g" => result.value.max(1),
        _ => n.max(1),
    };
    SetFile {
        format_version: crate::formats::SET_FORMAT.to_string(),
        n_limit,
        elements: result.witness.clone(),
        meta: Some(crate::formats::SetMeta {
            kind: format!("exact-{name}"),
            parameters: [
                ("parameter".to_string(), result.parameter.to_string()),
                ("value".to_string(), result.value.to_string()),
                (
                    "nodes_explored".to_string(),
                    result.nodes_explored.to_string(),
                ),
                ("budget".to_string(), budget.to_string()),
                ("optimal".to_string(), result.optimal.to_string()),
            ]
            .into(),
            predicted_count: result.witness.len(),
        }),
    }
}

// -------------------------------------------------------------------- graph

pub fn graph(args: &GraphArgs) -> Result<u8, CliError> {
    let set = read_set(&args.set_path)?;

    if args.audit {
        let outcome = bound_audit(&set, args.threshold).map_err(usage)?;
        let report = &outcome.report;
        out!("n_limit: {}", report.n_limit);
        out!("threshold: {}", report.threshold);
        out!("input_size: {}", report.input_size);
        out!(
            "removed_for_injectivity: {}",
            report.removed_for_injectivity
        );
        out!(
            "even_circuit_edges_removed: {}",
            report.even_circuit_edges_removed
        );
        out!(
            "odd_square_cycle_edges_removed: {}",
            report.odd_square_cycle_edges_removed
        );
        out!(
            "remaining_cycle_edges_removed: {}",
            report.remaining_cycle_edges_removed
        );
        out!("p_square_size: {}", report.p_square_size);
        out!("q_size: {}", report.q_size);
        out!("final_edge_count: {}", report.final_edge_count);
        out!("prime_count: {}", report.prime_count);
        out!("sqrt_prime_count: {}", report.sqrt_prime_count);
        out!("half_square_term: {}", report.half_square_term());
    }

    if args.dot.is_some() || !args.audit {
        let (reduced, removed) = reduce_set(&set);
        let graph = build_graph(&reduced).map_err(usage)?;
        match &args.dot {
            Some(path) => {
                fs::write(path, graph.to_dot())
                    .map_err(|err| usage(format!("cannot write {}: {err}", path.display())))?;
                out!("dot written: {}", path.display());
            }
            None => {
                out!("removed by reduction: {removed:?}");
                out!("vertices: {}", graph.n_vertices());
                out!("edges: {}", graph.edge_count());
                out!("square-marked primes: {:?}", graph.p_square());
            }
        }
    }
    Ok(0)
}

// ------------------------------------------------------------------- bounds

pub fn bounds(args: &BoundsArgs) -> Result<u8, CliError> {
    let n = args.n;
    let pi_n = prime_pi(n);
    let pi_sqrt = prime_pi(nth_root(n, 2));
    let pi_cbrt = prime_pi(nth_root(n, 3));
    out!("n: {n}");
    out!("pi(n): {pi_n}");
    out!("pi(n^(1/2)): {pi_sqrt}");
    out!("pi(n^(1/3)): {pi_cbrt}");
    out!("pi(n) + pi(n^(1/2)): {}", pi_n + pi_sqrt);
    out!();
    out!(
        "{:<12} {:>8} {:>8}  {}",
        "construction",
        "size",
        "formula",
        "match"
    );
    for kind in ConstructionKind::ALL {
        let built = match kind {
            ConstructionKind::ErdosBasic => erdos_basic(n),
            ConstructionKind::GkChain => gk_chain(n, &default_ek_table()),
            ConstructionKind::Triples => triples_construction(n),
            ConstructionKind::Tree => tree_construction(n, TreeStrategy::PathAscending),
            ConstructionKind::Squarefree => squarefree_construction(n, DEFAULT_EPSILON),
        };
        let (size, formula) = match built {
            Ok(output) => (output.set.len(), output.predicted_count),
            Err(_) => (0, 0),
        };
        let matches = if size == formula { "yes" } else { "no" };
        out!("{:<12} {size:>8} {formula:>8}  {matches}", kind.name());
    }
    Ok(0)
}
