//! Exhaustive enumeration of connected graphs up to isomorphism, using a
//! canonical labeling by individualization and color refinement.

use std::collections::HashSet;

use crate::graphio::Graph;

/// Largest order accepted by [`canonical_form`] (the key packs 120 bits).
pub const MAX_CANON_N: usize = 16;

type Cells = Vec<Vec<usize>>;

/// Splits cells by neighbor counts into each splitter cell until stable.
/// Subcells are ordered by count, so the result does not depend on labels.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    'outer: loop {
        for si in 0..cells.len() {
            for xi in 0..cells.len() {
                if cells[xi].len() < 2 {
                    continue;
                }
                let counts: Vec<usize> =
                    cells[xi].iter().map(|&v| cells[si].iter().filter(|&&u| g.has_edge(u, v)).count()).collect();
                if counts.iter().all(|&c| c == counts[0]) {
                    continue;
                }
                let mut keys: Vec<usize> = counts.clone();
                keys.sort_unstable();
                keys.dedup();
                let parts: Cells = keys
                    .iter()
                    .map(|&k| cells[xi].iter().zip(&counts).filter(|(_, &c)| c == k).map(|(&v, _)| v).collect())
                    .collect();
                cells.splice(xi..=xi, parts);
                continue 'outer;
            }
        }
        return cells;
    }
}

fn labeling_key(g: &Graph, perm: &[usize]) -> u128 {
    let mut key = 0u128;
    for j in 1..perm.len() {
        for i in 0..j {
            key = key << 1 | g.has_edge(perm[i], perm[j]) as u128;
        }
    }
    key
}

fn search(g: &Graph, cells: Cells, best: &mut Option<(u128, Vec<usize>)>) {
    let Some(target) = (0..cells.len())
        .filter(|&i| cells[i].len() > 1)
        .min_by_key(|&i| (cells[i].len(), i))
    else {
        let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let key = labeling_key(g, &perm);
        if best.as_ref().is_none_or(|(k, _)| key > *k) {
            *best = Some((key, perm));
        }
        return;
    };
    for &v in &cells[target] {
        let mut next = cells.clone();
        let rest: Vec<usize> = cells[target].iter().copied().filter(|&u| u != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        search(g, refine(g, next), best);
    }
}

/// Canonical relabeling and its key: isomorphic graphs map to identical graphs.
pub fn canonical_form(g: &Graph) -> (Graph, u128) {
    let n = g.n();
    assert!(n <= MAX_CANON_N, "canonical form supports n <= {MAX_CANON_N}");
    if n == 0 {
        return (g.clone(), 0);
    }
    let mut best = None;
    search(g, refine(g, vec![(0..n).collect()]), &mut best);
    let (key, perm) = best.expect("at least one leaf");
    (g.permuted(&perm), key)
}

/// Every connected graph on `n` vertices, one per isomorphism class, in a
/// fixed order. Built by attaching a vertex with a nonempty neighborhood to
/// each connected graph on `n - 1` vertices; every connected graph has a
/// vertex whose removal keeps it connected.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![(Graph::empty(1), 0u128)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (g, _) in &level {
            for nbhd in 1u32..(1 << (size - 1)) {
                let mut h = Graph::empty(size);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for u in 0..size - 1 {
                    if nbhd >> u & 1 == 1 {
                        h.add_edge(u, size - 1);
                    }
                }
                let (canon, key) = canonical_form(&h);
                if seen.insert(key) {
                    next.push((canon, key));
                }
            }
        }
        next.sort_by_key(|(_, k)| *k);
        level = next;
    }
    level.into_iter().map(|(g, _)| g).collect()
}
