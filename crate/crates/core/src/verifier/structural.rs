//! Constant-factor distinctness certificate for incidence-shaped components.
//!
//! When every column of a component has one or two entries, all equal to 1,
//! the component is the incidence matrix of a graph: rows are vertices,
//! two-entry columns are edges between them, one-entry columns are edges to
//! a virtual unit vertex that carries no equation. A nonzero `{-1,0,+1}`
//! kernel vector of such a matrix is exactly an edge set that can be signed
//! to cancel at every non-unit vertex, and that is possible iff the graph
//! contains an even cycle, a cycle through the unit vertex, or two odd
//! cycles sharing a vertex. Equivalently: the kernel is trivial iff every
//! block is a bridge or an odd cycle avoiding the unit vertex, and no two
//! cycle blocks meet. That test is linear-time, which lets large cycle-free
//! or triangle-chain components skip the exponential kernel search.

use super::matrix::ExponentMatrix;

/// True iff the component's columns form such a graph and its block
/// structure rules out every signed kernel vector. A `true` answer
/// certifies distinctness; `false` only means "decide some other way".
pub fn blocks_certificate(matrix: &ExponentMatrix) -> bool {
    let nr = matrix.n_rows();
    let unit = nr; // virtual endpoint of one-entry columns
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(matrix.n_cols());
    for j in 0..matrix.n_cols() {
        let mut ends = Vec::new();
        for r in 0..nr {
            match matrix.entries[r][j] {
                0 => {}
                1 => ends.push(r),
                _ => return false,
            }
            if ends.len() > 2 {
                return false;
            }
        }
        match ends.len() {
            1 => edges.push((ends[0], unit)),
            2 => edges.push((ends[0], ends[1])),
            _ => return false,
        }
    }
    blocks_are_safe(nr + 1, &edges, unit)
}

/// Biconnected-component decomposition; each block must be a single edge or
/// an odd cycle avoiding `unit`, and cycle blocks must be vertex-disjoint.
fn blocks_are_safe(n: usize, edges: &[(usize, usize)], unit: usize) -> bool {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(a, b)) in edges.iter().enumerate() {
        if a == b {
            return false;
        }
        adj[a].push((b, id));
        adj[b].push((a, id));
    }

    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut in_cycle_block = vec![false; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<usize> = Vec::new();
    // frames: (vertex, edge taken to reach it, next adjacency index)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        frames.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent_edge, ref mut idx)) = frames.last_mut() {
            if *idx < adj[v].len() {
                let (w, eid) = adj[v][*idx];
                *idx += 1;
                if eid == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(eid);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, eid, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(eid);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (u, _, _)) = frames.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(top) = edge_stack.pop() {
                            block.push(top);
                            if top == parent_edge {
                                break;
                            }
                        }
                        if !block_is_safe(&block, edges, unit, &mut in_cycle_block) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    debug_assert!(edge_stack.is_empty());
    true
}

fn block_is_safe(
    block: &[usize],
    edges: &[(usize, usize)],
    unit: usize,
    in_cycle_block: &mut [bool],
) -> bool {
    if block.len() == 1 {
        return true; // bridge
    }
    // A block all of whose vertices have degree 2 is a single cycle.
    let mut degree: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for &eid in block {
        let (a, b) = edges[eid];
        *degree.entry(a).or_insert(0) += 1;
        *degree.entry(b).or_insert(0) += 1;
    }
    let is_cycle = degree.len() == block.len() && degree.values().all(|&d| d == 2);
    if !is_cycle || block.len().is_multiple_of(2) || degree.contains_key(&unit) {
        return false;
    }
    for &v in degree.keys() {
        if in_cycle_block[v] {
            return false; // meets another cycle block
        }
        in_cycle_block[v] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::factorize;
    use crate::verifier::matrix::exponent_matrix;

    fn certifies(values: &[u64]) -> bool {
        let elements: Vec<_> = values.iter().map(|&v| factorize(v).unwrap()).collect();
        blocks_certificate(&exponent_matrix(&elements))
    }

    #[test]
    fn certifies_triangles_and_bridges() {
        assert!(certifies(&[6, 10, 15])); // odd cycle on {2,3,5}
        assert!(certifies(&[7, 77])); // path through the unit vertex
                                      // chain of two triangles joined by a bridge
        assert!(certifies(&[6, 10, 15, 35, 77, 91, 143]));
    }

    #[test]
    fn rejects_even_cycles() {
        assert!(!certifies(&[6, 10, 21, 35])); // 4-cycle, a real collision
    }

    #[test]
    fn rejects_cycles_through_the_unit_vertex() {
        assert!(!certifies(&[3, 5, 15])); // 3*5 = 15
        assert!(!certifies(&[3, 21, 35, 5])); // 3*35 = 21*5
    }

    #[test]
    fn rejects_two_odd_cycles_sharing_a_vertex() {
        // triangles {3,5,7} and {3,11,13} share the vertex 3:
        // 15*21*143 = 35*33*39 = 45045
        assert!(!certifies(&[15, 35, 21, 33, 143, 39]));
    }

    #[test]
    fn abstains_on_non_unit_entries() {
        assert!(!certifies(&[25, 35, 55, 77])); // 25 = 5^2 is a weighted edge
        assert!(!certifies(&[8, 32, 64, 128]));
    }

    #[test]
    fn accepts_disjoint_odd_cycles_linked_by_bridges() {
        // two triangles {2,3,5} and {11,13,17}, plus the pendant edge 7*11
        let mut values = vec![6u64, 10, 15, 143, 187, 221, 77];
        assert!(certifies(&values));
        // 22 and 26 add the triangle {2,11,13}, which shares vertices with
        // both existing cycles, so the certificate must now abstain
        values.extend([2 * 11, 2 * 13]);
        assert!(!certifies(&values));
    }
}
