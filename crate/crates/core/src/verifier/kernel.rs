//! Complete search for a nonzero `{-1,0,+1}` kernel vector of an exponent
//! matrix. "None found" with budget to spare is a distinctness certificate
//! for the component; any vector found is a collision.

use std::collections::HashMap;

use super::matrix::ExponentMatrix;
use super::SignedSupportVector;

/// Result of a bounded complete search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    /// The whole space was covered; the kernel contains no nonzero vector.
    NoKernel { nodes: u64 },
    /// A kernel vector (hence a collision) was found.
    Kernel {
        vector: SignedSupportVector,
        nodes: u64,
    },
    /// The node budget ran out before the space was covered.
    BudgetExhausted { nodes: u64 },
}

/// Search for a nonzero `{-1,0,+1}` vector `x` with `M x = 0`.
///
/// Uses meet-in-the-middle over a column split while both halves fit under
/// `mitm_half_cap` columns, otherwise depth-first search over columns with
/// row-sum pruning. Both strategies are complete within the node budget and
/// deterministic: the same matrix always yields the same outcome.
pub fn signed_kernel_search(
    matrix: &ExponentMatrix,
    node_budget: u64,
    mitm_half_cap: usize,
) -> SearchOutcome {
    if matrix.n_cols() == 0 {
        return SearchOutcome::NoKernel { nodes: 0 };
    }
    if matrix.n_cols() <= 2 * mitm_half_cap {
        meet_in_the_middle(matrix, node_budget)
    } else {
        backtrack(matrix, node_budget)
    }
}

/// Candidate kernel vectors are ranked by (support size, support values):
/// the reported collision touches as few and as small elements as possible
/// among those the search encounters.
type CandidateKey = (usize, Vec<u64>);

/// Callback invoked at each enumeration leaf with (signed support, row sums).
type MatrixLeafVisitor<'a> = dyn FnMut(&[(u64, i8)], &[i64]) + 'a;

/// Callback invoked at each enumeration leaf with (signed support, signed sum).
type SumLeafVisitor<'a> = dyn FnMut(&[(u64, i8)], i128) + 'a;

fn key_of(support: &[(u64, i8)]) -> CandidateKey {
    (support.len(), support.iter().map(|&(v, _)| v).collect())
}

/// Add `sign` times column `col` into the row-sum accumulator.
fn add_col(matrix: &ExponentMatrix, col: usize, sign: i64, sum: &mut [i64]) {
    for (r, acc) in sum.iter_mut().enumerate() {
        *acc += sign * matrix.entries[r][col] as i64;
    }
}

/// Enumerate all `{-1,0,+1}` assignments to columns `[lo, hi)`, calling
/// `visit(support, row_sums)` on each. One leaf costs one budget node.
/// Returns false if the budget ran out mid-enumeration.
fn enumerate_half(
    matrix: &ExponentMatrix,
    lo: usize,
    hi: usize,
    budget_left: &mut u64,
    visit: &mut MatrixLeafVisitor<'_>,
) -> bool {
    fn rec(
        matrix: &ExponentMatrix,
        col: usize,
        hi: usize,
        sum: &mut Vec<i64>,
        support: &mut Vec<(u64, i8)>,
        budget_left: &mut u64,
        visit: &mut MatrixLeafVisitor<'_>,
    ) -> bool {
        if col == hi {
            if *budget_left == 0 {
                return false;
            }
            *budget_left -= 1;
            visit(support, sum);
            return true;
        }
        if !rec(matrix, col + 1, hi, sum, support, budget_left, visit) {
            return false;
        }
        for sign in [1i8, -1i8] {
            add_col(matrix, col, sign as i64, sum);
            support.push((matrix.cols[col], sign));
            let ok = rec(matrix, col + 1, hi, sum, support, budget_left, visit);
            support.pop();
            add_col(matrix, col, -(sign as i64), sum);
            if !ok {
                return false;
            }
        }
        true
    }
    let mut sum = vec![0i64; matrix.n_rows()];
    let mut support = Vec::new();
    rec(matrix, lo, hi, &mut sum, &mut support, budget_left, visit)
}

fn meet_in_the_middle(matrix: &ExponentMatrix, node_budget: u64) -> SearchOutcome {
    let nc = matrix.n_cols();
    let mid = nc / 2;
    let mut budget_left = node_budget;

    // Left pass: best nonzero assignment per row-sum vector.
    let mut by_sum: HashMap<Vec<i64>, Vec<(u64, i8)>> = HashMap::new();
    let complete = enumerate_half(matrix, 0, mid, &mut budget_left, &mut |support, sum| {
        if support.is_empty() {
            return;
        }
        let replace = match by_sum.get(sum) {
            Some(best) => key_of(best) > key_of(support),
            None => true,
        };
        if replace {
            by_sum.insert(sum.to_vec(), support.to_vec());
        }
    });
    if !complete {
        return SearchOutcome::BudgetExhausted { nodes: node_budget };
    }

    // Right pass: match against negated sums. Column values on the right are
    // all larger than on the left, so concatenation keeps supports sorted.
    let mut best: Option<Vec<(u64, i8)>> = None;
    let mut consider = |candidate: Vec<(u64, i8)>| match &best {
        Some(cur) if key_of(cur) <= key_of(&candidate) => {}
        _ => best = Some(candidate),
    };
    let complete = enumerate_half(matrix, mid, nc, &mut budget_left, &mut |support, sum| {
        if !support.is_empty() && sum.iter().all(|&s| s == 0) {
            consider(support.to_vec());
        }
        let negated: Vec<i64> = sum.iter().map(|&s| -s).collect();
        if let Some(left) = by_sum.get(&negated) {
            let mut joined = left.clone();
            joined.extend_from_slice(support);
            consider(joined);
        }
    });
    if !complete {
        return SearchOutcome::BudgetExhausted { nodes: node_budget };
    }

    let nodes = node_budget - budget_left;
    match best {
        Some(support) => SearchOutcome::Kernel {
            vector: SignedSupportVector::new(support),
            nodes,
        },
        None => SearchOutcome::NoKernel { nodes },
    }
}

/// Search for a nonzero `{-1,0,+1}` vector `x` with `Σ xᵢ·valuesᵢ = 0` —
/// the subset-sum analogue of the matrix search, used to decide distinct
/// subset sums. `values` must be strictly increasing. Meet-in-the-middle
/// over signed half-sums; complete within the node budget.
pub fn signed_sum_search(values: &[u64], node_budget: u64) -> SearchOutcome {
    if values.is_empty() {
        return SearchOutcome::NoKernel { nodes: 0 };
    }
    debug_assert!(values.windows(2).all(|w| w[0] < w[1]));

    fn enumerate(
        values: &[u64],
        lo: usize,
        hi: usize,
        budget_left: &mut u64,
        visit: &mut SumLeafVisitor<'_>,
    ) -> bool {
        fn rec(
            values: &[u64],
            i: usize,
            hi: usize,
            sum: i128,
            support: &mut Vec<(u64, i8)>,
            budget_left: &mut u64,
            visit: &mut SumLeafVisitor<'_>,
        ) -> bool {
            if i == hi {
                if *budget_left == 0 {
                    return false;
                }
                *budget_left -= 1;
                visit(support, sum);
                return true;
            }
            if !rec(values, i + 1, hi, sum, support, budget_left, visit) {
                return false;
            }
            for sign in [1i8, -1] {
                support.push((values[i], sign));
                let next = sum + i128::from(sign) * i128::from(values[i]);
                let ok = rec(values, i + 1, hi, next, support, budget_left, visit);
                support.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        rec(values, lo, hi, 0, &mut Vec::new(), budget_left, visit)
    }

    let mid = values.len() / 2;
    let mut budget_left = node_budget;

    let mut by_sum: HashMap<i128, Vec<(u64, i8)>> = HashMap::new();
    let complete = enumerate(values, 0, mid, &mut budget_left, &mut |support, sum| {
        if support.is_empty() {
            return;
        }
        let replace = match by_sum.get(&sum) {
            Some(best) => key_of(best) > key_of(support),
            None => true,
        };
        if replace {
            by_sum.insert(sum, support.to_vec());
        }
    });
    if !complete {
        return SearchOutcome::BudgetExhausted { nodes: node_budget };
    }

    let mut best: Option<Vec<(u64, i8)>> = None;
    let mut consider = |candidate: Vec<(u64, i8)>| match &best {
        Some(cur) if key_of(cur) <= key_of(&candidate) => {}
        _ => best = Some(candidate),
    };
    let complete = enumerate(
        values,
        mid,
        values.len(),
        &mut budget_left,
        &mut |support, sum| {
            if !support.is_empty() && sum == 0 {
                consider(support.to_vec());
            }
            if let Some(left) = by_sum.get(&-sum) {
                let mut joined = left.clone();
                joined.extend_from_slice(support);
                consider(joined);
            }
        },
    );
    if !complete {
        return SearchOutcome::BudgetExhausted { nodes: node_budget };
    }

    let nodes = node_budget - budget_left;
    match best {
        Some(support) => SearchOutcome::Kernel {
            vector: SignedSupportVector::new(support),
            nodes,
        },
        None => SearchOutcome::NoKernel { nodes },
    }
}

fn backtrack(matrix: &ExponentMatrix, node_budget: u64) -> SearchOutcome {
    let nr = matrix.n_rows();
    let nc = matrix.n_cols();
    // suffix[r][j]: total entry mass of row r on columns >= j; a partial sum
    // larger than that can never return to zero.
    let mut suffix = vec![vec![0i64; nc + 1]; nr];
    for (row, entries) in suffix.iter_mut().zip(&matrix.entries) {
        for j in (0..nc).rev() {
            row[j] = row[j + 1] + entries[j] as i64;
        }
    }
    let col_rows: Vec<Vec<usize>> = (0..nc)
        .map(|j| (0..nr).filter(|&r| matrix.entries[r][j] > 0).collect())
        .collect();

    struct State<'a> {
        matrix: &'a ExponentMatrix,
        suffix: &'a [Vec<i64>],
        col_rows: &'a [Vec<usize>],
        sum: Vec<i64>,
        nonzero_rows: usize,
        support: Vec<(u64, i8)>,
        nodes: u64,
        budget: u64,
    }

    enum Step {
        Found(Vec<(u64, i8)>),
        Exhausted,
        NotFound,
    }

    fn rec(st: &mut State, col: usize) -> Step {
        let nc = st.matrix.n_cols();
        if col == nc {
            return if st.nonzero_rows == 0 && !st.support.is_empty() {
                Step::Found(st.support.clone())
            } else {
                Step::NotFound
            };
        }
        for sign in [0i64, 1, -1] {
            if st.nodes == st.budget {
                return Step::Exhausted;
            }
            st.nodes += 1;
            if sign != 0 {
                for &r in &st.col_rows[col] {
                    let before = st.sum[r];
                    st.sum[r] += sign * st.matrix.entries[r][col] as i64;
                    match (before == 0, st.sum[r] == 0) {
                        (true, false) => st.nonzero_rows += 1,
                        (false, true) => st.nonzero_rows -= 1,
                        _ => {}
                    }
                }
                st.support.push((st.matrix.cols[col], sign as i8));
            }
            let feasible = st.col_rows[col]
                .iter()
                .all(|&r| st.sum[r].abs() <= st.suffix[r][col + 1]);
            let step = if feasible {
                rec(st, col + 1)
            } else {
                Step::NotFound
            };
            if sign != 0 {
                st.support.pop();
                for &r in &st.col_rows[col] {
                    let before = st.sum[r];
                    st.sum[r] -= sign * st.matrix.entries[r][col] as i64;
                    match (before == 0, st.sum[r] == 0) {
                        (true, false) => st.nonzero_rows += 1,
                        (false, true) => st.nonzero_rows -= 1,
                        _ => {}
                    }
                }
            }
            match step {
                Step::NotFound => {}
                other => return other,
            }
        }
        Step::NotFound
    }

    let mut st = State {
        matrix,
        suffix: &suffix,
        col_rows: &col_rows,
        sum: vec![0i64; nr],
        nonzero_rows: 0,
        support: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    match rec(&mut st, 0) {
        Step::Found(support) => SearchOutcome::Kernel {
            vector: SignedSupportVector::new(support),
            nodes: st.nodes,
        },
        Step::Exhausted => SearchOutcome::BudgetExhausted { nodes: st.nodes },
        Step::NotFound => SearchOutcome::NoKernel { nodes: st.nodes },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::factorize;
    use crate::verifier::matrix::exponent_matrix;

    fn matrix_of(values: &[u64]) -> ExponentMatrix {
        let elements: Vec<_> = values.iter().map(|&v| factorize(v).unwrap()).collect();
        exponent_matrix(&elements)
    }

    fn search(values: &[u64]) -> SearchOutcome {
        signed_kernel_search(&matrix_of(values), 1_000_000, 20)
    }

    #[test]
    fn finds_no_kernel_for_triangle() {
        assert!(matches!(
            search(&[6, 10, 15]),
            SearchOutcome::NoKernel { .. }
        ));
    }

    #[test]
    fn finds_kernel_for_even_cycle() {
        // 6*35 = 10*21
        match search(&[6, 10, 21, 35]) {
            SearchOutcome::Kernel { vector, .. } => {
                let cert = vector.to_certificate();
                let b: Vec<u64> = cert.subset_b().to_vec();
                let c: Vec<u64> = cert.subset_c().to_vec();
                assert_eq!((b, c), (vec![6, 35], vec![10, 21]));
            }
            other => panic!("expected kernel, got {other:?}"),
        }
    }

    #[test]
    fn both_strategies_agree() {
        let values = [6u64, 10, 15, 14, 21, 35, 22, 33, 55, 26];
        let m = matrix_of(&values);
        let mitm = signed_kernel_search(&m, 10_000_000, 20);
        let bt = signed_kernel_search(&m, 10_000_000, 0); // force backtracking
        match (&mitm, &bt) {
            (SearchOutcome::Kernel { vector: a, .. }, SearchOutcome::Kernel { vector: b, .. }) => {
                // strategies may surface different witnesses; both must be real
                assert!(!a.plus().is_empty() || !a.minus().is_empty());
                assert!(!b.plus().is_empty() || !b.minus().is_empty());
            }
            (SearchOutcome::NoKernel { .. }, SearchOutcome::NoKernel { .. }) => {}
            other => panic!("strategies disagree: {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let m = matrix_of(&[8, 32, 64, 128]);
        match signed_kernel_search(&m, 3, 20) {
            SearchOutcome::BudgetExhausted { nodes } => assert!(nodes <= 3),
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn empty_matrix_has_trivial_kernel() {
        assert!(matches!(
            signed_kernel_search(&matrix_of(&[]), 10, 20),
            SearchOutcome::NoKernel { nodes: 0 }
        ));
    }

    #[test]
    fn sum_search_finds_least_collision() {
        match signed_sum_search(&[1, 2, 3], 1_000) {
            SearchOutcome::Kernel { vector, .. } => {
                assert_eq!(vector.plus(), vec![1, 2]);
                assert_eq!(vector.minus(), vec![3]);
            }
            other => panic!("expected kernel, got {other:?}"),
        }
    }

    #[test]
    fn sum_search_clears_distinct_sum_sets() {
        assert!(matches!(
            signed_sum_search(&[1, 2, 4], 1_000),
            SearchOutcome::NoKernel { .. }
        ));
        assert!(matches!(
            signed_sum_search(&[3, 5, 6, 7], 1_000),
            SearchOutcome::NoKernel { .. }
        ));
    }

    #[test]
    fn sum_search_respects_budget() {
        assert!(matches!(
            signed_sum_search(&[3, 5, 6, 7], 2),
            SearchOutcome::BudgetExhausted { .. }
        ));
    }
}
