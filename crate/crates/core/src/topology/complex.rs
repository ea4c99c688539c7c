use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::algebra::ProjectionAlgebra;
use crate::chains::{enumerate_linked_pairs, LinkedPair, NondegenerateType};
use crate::error::Result;

/// A 2-cell: a closed walk `boundary[0], ..., boundary[k-1], boundary[0]`
/// (stored without the repeated endpoint) and the linked pair it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub boundary: Vec<usize>,
    pub source: LinkedPair,
}

/// A graph on `0..vertices` with 2-cells attached along closed walks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Complex2 {
    pub vertices: usize,
    /// Sorted, with `u < v`.
    pub edges: Vec<(usize, usize)>,
    pub cells: Vec<Cell>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// The friendliness graph, no cells.
    Graph,
    /// One cell per linked pair.
    Full,
    /// Triangles from the non-degenerate special linked pairs.
    Reduced,
}

impl Complex2 {
    pub fn new(vertices: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adjacency = vec![Vec::new(); vertices];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for a in adjacency.iter_mut() {
            a.sort_unstable();
        }
        Self {
            vertices,
            edges,
            cells: Vec::new(),
            adjacency,
        }
    }

    pub fn build(alg: &ProjectionAlgebra, which: Which) -> Result<Self> {
        match which {
            Which::Graph => Ok(friendliness_graph(alg)),
            Which::Full => complex_kp(alg),
            Which::Reduced => complex_kp_prime(alg),
        }
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Adds a cell after normalising its boundary. Returns false when the
    /// boundary collapses below three vertices or repeats an existing cell.
    fn attach(&mut self, boundary: &[usize], source: LinkedPair, seen: &mut HashSet<Vec<usize>>) -> bool {
        let b = tighten_cycle(boundary);
        if b.len() < 3 {
            return false;
        }
        debug_assert!(
            (0..b.len()).all(|i| self.has_edge(b[i], b[(i + 1) % b.len()])),
            "cell boundary leaves the graph"
        );
        if !seen.insert(cycle_key(&b)) {
            return false;
        }
        self.cells.push(Cell {
            boundary: b,
            source,
        });
        true
    }

    /// Connected components of the 1-skeleton, each sorted, ordered by
    /// least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertices];
        let mut out = Vec::new();
        for s in 0..self.vertices {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        for c in &self.cells {
            let k = comp[c.boundary[0]];
            assert!(
                c.boundary.iter().all(|&v| comp[v] == k),
                "cell spans components"
            );
        }
        out
    }

    /// `component_of[v]` for the ordering of [`Complex2::components`].
    pub fn component_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.vertices];
        for (i, c) in self.components().iter().enumerate() {
            for &v in c {
                idx[v] = i;
            }
        }
        idx
    }

    pub fn cells_in(&self, component: &[usize]) -> Vec<&Cell> {
        let set: BTreeSet<usize> = component.iter().copied().collect();
        self.cells
            .iter()
            .filter(|c| set.contains(&c.boundary[0]))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }

    /// Graphviz rendering with one cluster per component. Cells are listed as
    /// comments; the same data goes to [`Complex2::faces_json`].
    pub fn to_dot(&self, labels: &dyn Fn(usize) -> String) -> String {
        let mut s = String::from("graph complex {\n  node [shape=circle];\n");
        for (i, comp) in self.components().iter().enumerate() {
            s.push_str(&format!("  subgraph cluster_{i} {{\n"));
            for &v in comp {
                s.push_str(&format!("    v{v} [label=\"{}\"];\n", labels(v)));
            }
            s.push_str("  }\n");
        }
        for &(u, v) in &self.edges {
            s.push_str(&format!("  v{u} -- v{v};\n"));
        }
        for (i, c) in self.cells.iter().enumerate() {
            let b: Vec<String> = c.boundary.iter().map(|v| format!("v{v}")).collect();
            s.push_str(&format!("  // face {i}: {}\n", b.join(" ")));
        }
        s.push_str("}\n");
        s
    }

    pub fn faces_json(&self) -> String {
        serde_json::to_string_pretty(&self.cells).expect("cells serialize")
    }
}

/// Removes cyclically repeated neighbours and back-and-forth spurs.
pub fn tighten_cycle(walk: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = walk.to_vec();
    loop {
        let n = w.len();
        if n < 2 {
            return w;
        }
        let mut changed = false;
        // Consecutive repeats, cyclically.
        let mut out: Vec<usize> = Vec::with_capacity(n);
        for &v in &w {
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        while out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        if out.len() != n {
            changed = true;
        }
        w = out;
        // Spurs (a, b, a) cyclically.
        let n = w.len();
        if n >= 3 {
            for i in 0..n {
                if w[i] == w[(i + 2) % n] {
                    let j = (i + 1) % n;
                    let k = (i + 2) % n;
                    let mut keep: Vec<usize> = Vec::with_capacity(n - 2);
                    for (x, &v) in w.iter().enumerate() {
                        if x != j && x != k {
                            keep.push(v);
                        }
                    }
                    w = keep;
                    changed = true;
                    break;
                }
            }
        } else if n == 2 {
            // (a, b) closes as a -> b -> a, a pure spur.
            w.truncate(1);
            changed = true;
        }
        if !changed {
            return w;
        }
    }
}

/// Key identifying a cycle up to rotation and reversal.
fn cycle_key(c: &[usize]) -> Vec<usize> {
    let n = c.len();
    let mut best: Option<Vec<usize>> = None;
    let rev: Vec<usize> = c.iter().rev().copied().collect();
    for cand in [c, rev.as_slice()] {
        for s in 0..n {
            let rot: Vec<usize> = cand[s..].iter().chain(cand[..s].iter()).copied().collect();
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

pub fn friendliness_graph(alg: &ProjectionAlgebra) -> Complex2 {
    let n = alg.size();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if alg.friendly(u, v) {
                edges.push((u, v));
            }
        }
    }
    Complex2::new(n, edges)
}

/// Cells `(e, eθ_p, f, fθ_p)` for every linked pair.
pub fn complex_kp(alg: &ProjectionAlgebra) -> Result<Complex2> {
    let mut c = friendliness_graph(alg);
    let mut seen = HashSet::new();
    for lp in enumerate_linked_pairs(alg) {
        let boundary = [lp.e, lp.e_prime(alg), lp.f, lp.f_prime(alg)];
        c.attach(&boundary, lp, &mut seen);
    }
    Ok(c)
}

/// Triangles `(e, f, fθ_p)` for type-2 and `(e, eθ_p, f)` for type-3
/// non-degenerate special linked pairs.
pub fn complex_kp_prime(alg: &ProjectionAlgebra) -> Result<Complex2> {
    let mut c = friendliness_graph(alg);
    let mut seen = HashSet::new();
    for lp in enumerate_linked_pairs(alg) {
        let class = lp.classify(alg)?;
        if !class.special || class.degenerate {
            continue;
        }
        let boundary = match class.kind {
            Some(NondegenerateType::Two) => [lp.e, lp.f, lp.f_prime(alg)],
            Some(NondegenerateType::Three) => [lp.e, lp.e_prime(alg), lp.f],
            _ => unreachable!("special non-degenerate pairs have type 2 or 3"),
        };
        c.attach(&boundary, lp, &mut seen);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn tightening() {
        assert_eq!(tighten_cycle(&[0, 1, 2, 3]), vec![0, 1, 2, 3]);
        assert_eq!(tighten_cycle(&[0, 0, 1, 2]), vec![0, 1, 2]);
        assert_eq!(tighten_cycle(&[0, 1, 2, 0]), vec![0, 1, 2]);
        assert_eq!(tighten_cycle(&[0, 1, 0, 2]), vec![0]);
        assert_eq!(tighten_cycle(&[0, 1, 0, 1]), vec![0]);
        assert_eq!(tighten_cycle(&[5, 1, 2, 1]), vec![5]);
    }

    #[test]
    fn cycle_keys() {
        assert_eq!(cycle_key(&[0, 2, 1]), cycle_key(&[2, 1, 0]));
        assert_eq!(cycle_key(&[0, 2, 1]), cycle_key(&[0, 1, 2]));
        assert_ne!(cycle_key(&[0, 1, 2, 3]), cycle_key(&[0, 2, 1, 3]));
    }

    #[test]
    fn kinyon_complexes() {
        let k = fixtures::kinyon();
        let g = friendliness_graph(&k);
        assert_eq!(g.edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3]]);
        let kp = complex_kp_prime(&k).unwrap();
        assert_eq!(kp.cells.len(), 1);
        let mut b = kp.cells[0].boundary.clone();
        b.sort_unstable();
        assert_eq!(b, vec![0, 1, 2]);
        let full = complex_kp(&k).unwrap();
        assert_eq!(full.cells.len(), 1);
    }

    #[test]
    fn adjacency_complexes_have_no_cells() {
        let g = crate::semigroup::AdjacencyGraph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let alg = g.projection_algebra();
        assert!(complex_kp(&alg).unwrap().cells.is_empty());
        assert!(complex_kp_prime(&alg).unwrap().cells.is_empty());
    }
}
