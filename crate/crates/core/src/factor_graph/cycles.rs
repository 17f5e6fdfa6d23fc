//! Bounded cycle machinery on small simple graphs: a breadth-first
//! shortest-cycle finder, exhaustive bounded-length cycle enumeration,
//! and an independent walk-based even-circuit existence check.
//!
//! All functions are deterministic: vertices are scanned in index order
//! and adjacency lists are kept sorted.

use crate::error::{Error, Result};

/// An immutable simple graph on vertices `0..n` (no loops, no parallel
/// edges) with sorted adjacency lists.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n_vertices];
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in edges {
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) leaves the vertex range 0..{n_vertices}"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidParameter(format!(
                    "parallel edge between {} and {}",
                    a.min(b),
                    a.max(b)
                )));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(SimpleGraph { adjacency })
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// A cycle of length `<= max_len` as a vertex list (closing edge
    /// implicit), or `None` when no such cycle exists.
    pub fn find_short_cycle(&self, max_len: usize) -> Option<Vec<usize>> {
        bfs_short_cycle(&self.adjacency, max_len)
    }

    /// Every simple cycle of length `<= max_len`, canonically rooted and
    /// sorted by (length, vertex sequence).
    pub fn cycles_up_to(&self, max_len: usize) -> Vec<Vec<usize>> {
        all_cycles_up_to(&self.adjacency, max_len)
    }
}

/// Breadth-first search from every start vertex in index order. Each
/// non-tree meeting of two root paths yields the cycle formed by the two
/// paths minus their shared prefix plus the meeting edge; per start
/// vertex the shortest such cycle is kept, and the first start vertex
/// whose best cycle fits the bound wins.
///
/// Complete for the bound: a start vertex lying on a shortest cycle
/// always exposes that cycle, because distances inside a shortest cycle
/// equal graph distances.
pub(crate) fn bfs_short_cycle(adjacency: &[Vec<usize>], max_len: usize) -> Option<Vec<usize>> {
    if max_len < 3 {
        return None;
    }
    let n = adjacency.len();
    let mut depth: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        depth.fill(None);
        parent.fill(None);
        depth[root] = Some(0);
        let mut queue = std::collections::VecDeque::from([root]);
        let mut best: Option<Vec<usize>> = None;
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u] {
                if depth[w].is_none() {
                    depth[w] = Some(depth[u].unwrap() + 1);
                    parent[w] = Some(u);
                    queue.push_back(w);
                } else if parent[u] != Some(w) && parent[w] != Some(u) {
                    let cycle = trimmed_cycle(&parent, u, w);
                    if cycle.len() <= max_len && best.as_ref().is_none_or(|b| cycle.len() < b.len())
                    {
                        best = Some(cycle);
                    }
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// The simple cycle formed by the root paths of `u` and `w` (trimmed at
/// their lowest common ancestor) plus the edge `{u, w}`.
fn trimmed_cycle(parent: &[Option<usize>], u: usize, w: usize) -> Vec<usize> {
    let root_path = |mut x: usize| {
        let mut path = vec![x];
        while let Some(p) = parent[x] {
            path.push(p);
            x = p;
        }
        path.reverse();
        path
    };
    let path_u = root_path(u);
    let path_w = root_path(w);
    let mut shared = 0;
    while shared < path_u.len() && shared < path_w.len() && path_u[shared] == path_w[shared] {
        shared += 1;
    }
    let mut cycle = path_u[shared - 1..].to_vec();
    cycle.extend(path_w[shared..].iter().rev());
    cycle
}

/// Exhaustive bounded-length cycle enumeration: depth-first paths rooted
/// at each cycle's smallest vertex, emitted once per cycle (the
/// orientation with the smaller second vertex), then sorted by (length,
/// vertex sequence).
pub(crate) fn all_cycles_up_to(adjacency: &[Vec<usize>], max_len: usize) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    if max_len < 3 {
        return found;
    }
    let n = adjacency.len();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend_cycle_paths(
            adjacency,
            root,
            max_len,
            &mut path,
            &mut on_path,
            &mut found,
        );
        on_path[root] = false;
        path.pop();
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}

fn extend_cycle_paths(
    adjacency: &[Vec<usize>],
    root: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut Vec<Vec<usize>>,
) {
    let u = *path.last().unwrap();
    for &w in &adjacency[u] {
        if w == root {
            if path.len() >= 3 && path[1] < *path.last().unwrap() {
                found.push(path.clone());
            }
        } else if w > root && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            extend_cycle_paths(adjacency, root, max_len, path, on_path, found);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Independent even-circuit existence check by brute force over closed
/// walks with distinct edges: explores every walk of length `<= max_len`
/// from every start vertex and reports whether one returns to its start
/// after an even number of steps. Exponential in `max_len`; intended for
/// small audits only.
pub(crate) fn even_circuit_walk_exists(
    adjacency_with_ids: &[Vec<(usize, usize)>],
    edge_count: usize,
    max_len: usize,
) -> bool {
    let mut used = vec![false; edge_count];
    (0..adjacency_with_ids.len())
        .any(|start| even_walk_from(adjacency_with_ids, start, start, 0, &mut used, max_len))
}

fn even_walk_from(
    adjacency: &[Vec<(usize, usize)>],
    start: usize,
    current: usize,
    steps: usize,
    used: &mut [bool],
    max_len: usize,
) -> bool {
    if current == start && steps >= 4 && steps.is_multiple_of(2) {
        return true;
    }
    if steps == max_len {
        return false;
    }
    for &(next, edge_id) in &adjacency[current] {
        if !used[edge_id] {
            used[edge_id] = true;
            let hit = even_walk_from(adjacency, start, next, steps + 1, used, max_len);
            used[edge_id] = false;
            if hit {
                return true;
            }
        }
    }
    false
}
