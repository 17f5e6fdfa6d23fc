//! Exponent matrix of a set and the kernel-preserving reductions on it.
//!
//! Rows are primes, columns are elements, entries are exponents. A pair of
//! disjoint subsets with equal products is exactly a `{-1,0,+1}` column
//! combination summing to zero, so every transformation here must preserve
//! the set of such kernel vectors (up to extension by zeros).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arithmetic::Element;

/// Exponent matrix: `entries[r][c]` is the exponent of prime `rows[r]` in
/// element `cols[c]`. Rows and columns are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub rows: Vec<u64>,
    pub cols: Vec<u64>,
    pub entries: Vec<Vec<u32>>,
}

/// Build the exponent matrix of `elements` over every prime that occurs.
/// Columns are reordered to ascending element value if needed.
pub fn exponent_matrix(elements: &[Element]) -> ExponentMatrix {
    let mut rows: Vec<u64> = elements
        .iter()
        .flat_map(|el| el.exponents.iter().map(|(p, _)| p))
        .collect();
    rows.sort_unstable();
    rows.dedup();

    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_unstable_by_key(|&i| elements[i].value);
    let cols: Vec<u64> = order.iter().map(|&i| elements[i].value).collect();
    let entries = rows
        .iter()
        .map(|&p| {
            order
                .iter()
                .map(|&i| elements[i].exponents.get(p))
                .collect()
        })
        .collect();
    ExponentMatrix {
        rows,
        cols,
        entries,
    }
}

impl ExponentMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    fn retain_cols(&mut self, keep: &[bool]) {
        let cols = std::mem::take(&mut self.cols);
        self.cols = cols
            .into_iter()
            .enumerate()
            .filter_map(|(j, v)| keep[j].then_some(v))
            .collect();
        for row in &mut self.entries {
            let old = std::mem::take(row);
            *row = old
                .into_iter()
                .enumerate()
                .filter_map(|(j, e)| keep[j].then_some(e))
                .collect();
        }
        let nonzero_rows: Vec<usize> = (0..self.rows.len())
            .filter(|&r| self.entries[r].iter().any(|&e| e > 0))
            .collect();
        let new_rows = nonzero_rows.iter().map(|&r| self.rows[r]).collect();
        let new_entries = nonzero_rows
            .iter()
            .map(|&r| std::mem::take(&mut self.entries[r]))
            .collect();
        self.rows = new_rows;
        self.entries = new_entries;
    }
}

/// One forced-zero deduction: the row equation of `prime` cannot be
/// satisfied with a nonzero coefficient on `element`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForcedZero {
    pub prime: u64,
    pub element: u64,
}

/// Delete every column whose coefficient is forced to zero by a single row
/// equation, repeatedly until a fixpoint.
///
/// A coefficient is forced when its entry exceeds the sum of all other
/// entries in some row (in particular when it is the only nonzero entry
/// there): no `{-1,0,+1}` combination can cancel it. Deleting such columns
/// preserves the kernel exactly.
pub fn eliminate_unique_primes(matrix: &ExponentMatrix) -> (ExponentMatrix, Vec<ForcedZero>) {
    let mut m = matrix.clone();
    let mut trace = Vec::new();
    loop {
        let mut forced = vec![false; m.n_cols()];
        for (r, row) in m.entries.iter().enumerate() {
            let row_sum: u64 = row.iter().map(|&e| e as u64).sum();
            for (j, &e) in row.iter().enumerate() {
                if e > 0 && !forced[j] && (e as u64) > row_sum - e as u64 {
                    forced[j] = true;
                    trace.push(ForcedZero {
                        prime: m.rows[r],
                        element: m.cols[j],
                    });
                }
            }
        }
        if forced.iter().all(|&f| !f) {
            return (m, trace);
        }
        let keep: Vec<bool> = forced.iter().map(|&f| !f).collect();
        m.retain_cols(&keep);
    }
}

/// Split into connected components of the row/column incidence structure,
/// ordered by smallest element value. The kernel is the direct sum of the
/// component kernels.
pub fn split_components(matrix: &ExponentMatrix) -> Vec<ExponentMatrix> {
    let nr = matrix.n_rows();
    let nc = matrix.n_cols();
    // vertices: 0..nr rows, nr..nr+nc columns
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nr + nc];
    for r in 0..nr {
        for c in 0..nc {
            if matrix.entries[r][c] > 0 {
                adj[r].push(nr + c);
                adj[nr + c].push(r);
            }
        }
    }
    let mut comp = vec![usize::MAX; nr + nc];
    let mut n_comp = 0;
    for start in 0..nr + nc {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = n_comp;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = n_comp;
                    stack.push(w);
                }
            }
        }
        n_comp += 1;
    }
    let mut parts = Vec::new();
    for k in 0..n_comp {
        let cols_k: Vec<usize> = (0..nc).filter(|&c| comp[nr + c] == k).collect();
        if cols_k.is_empty() {
            continue;
        }
        let rows_k: Vec<usize> = (0..nr).filter(|&r| comp[r] == k).collect();
        parts.push(ExponentMatrix {
            rows: rows_k.iter().map(|&r| matrix.rows[r]).collect(),
            cols: cols_k.iter().map(|&c| matrix.cols[c]).collect(),
            entries: rows_k
                .iter()
                .map(|&r| cols_k.iter().map(|&c| matrix.entries[r][c]).collect())
                .collect(),
        });
    }
    parts.sort_by_key(|m| m.cols.first().copied().unwrap_or(u64::MAX));
    parts
}

/// Exact column rank by fraction-free (Bareiss) elimination over integers.
/// Returns the rank; equal to the column count iff even the rational kernel
/// is trivial, which certifies distinctness outright.
pub fn integer_rank(matrix: &ExponentMatrix) -> usize {
    let nr = matrix.n_rows();
    let nc = matrix.n_cols();
    let mut m: Vec<Vec<BigInt>> = matrix
        .entries
        .iter()
        .map(|row| row.iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(pivot_row) = (rank..nr).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for r in rank + 1..nr {
            for c in col + 1..nc {
                let num = &m[r][c] * &pivot - &m[r][col] * &m[rank][c];
                debug_assert!(
                    (&num % &prev).is_zero(),
                    "fraction-free step must divide exactly"
                );
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// `Some(rank)` when the matrix has full column rank, else `None`.
pub fn rank_certificate(matrix: &ExponentMatrix) -> Option<usize> {
    let rank = integer_rank(matrix);
    (rank == matrix.n_cols()).then_some(rank)
}
