use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::complex::Complex2;
use super::word::{letter, GroupWord};

/// Generators and relators of a group, with the spanning-tree data that
/// produced them when they come from a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<GroupWord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<usize>,
    /// Tree edges as `(parent, child)`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tree: Vec<(usize, usize)>,
    /// Generator `g` runs along `generator_edges[g] = (u, v)`, `u < v`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub generator_edges: Vec<(usize, usize)>,
}

impl GroupPresentation {
    /// A bare presentation. Relators are cyclically reduced and empty ones
    /// dropped.
    pub fn new(generators: usize, relators: Vec<GroupWord>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| r.cyclic_reduce())
            .filter(|r| !r.is_empty())
            .collect();
        Self {
            generators,
            relators,
            basepoint: None,
            tree: Vec::new(),
            generator_edges: Vec::new(),
        }
    }
}

/// Fundamental group data for one component of a complex: a BFS tree, a
/// generator per non-tree edge, and a relator per cell.
#[derive(Debug, Clone)]
pub struct ComponentPi1 {
    pub basepoint: usize,
    pub vertices: Vec<usize>,
    pub presentation: GroupPresentation,
    parent: HashMap<usize, usize>,
    edge_generator: HashMap<(usize, usize), usize>,
}

impl ComponentPi1 {
    /// Letter for traversing the edge `u -> v`; empty for tree edges.
    pub fn edge_word(&self, u: usize, v: usize) -> GroupWord {
        let key = (u.min(v), u.max(v));
        match self.edge_generator.get(&key) {
            Some(&g) => GroupWord::from_letters(vec![letter(g, u > v)]),
            None => GroupWord::empty(),
        }
    }

    /// Word of a walk: product of its edge letters, freely reduced. Repeated
    /// consecutive vertices contribute nothing.
    pub fn walk_word(&self, walk: &[usize]) -> GroupWord {
        let mut out = Vec::new();
        for w in walk.windows(2) {
            if w[0] != w[1] {
                out.extend_from_slice(self.edge_word(w[0], w[1]).letters());
            }
        }
        GroupWord::from_letters(out).free_reduce()
    }

    /// Tree walk from the basepoint to `v`.
    pub fn tree_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != self.basepoint {
            cur = self.parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// A loop at the basepoint representing generator `g` (or its inverse).
    pub fn generator_loop(&self, g: usize, inverse: bool) -> Vec<usize> {
        let (mut u, mut v) = self.presentation.generator_edges[g];
        if inverse {
            std::mem::swap(&mut u, &mut v);
        }
        let mut walk = self.tree_path(u);
        let mut back = self.tree_path(v);
        back.reverse();
        walk.extend(back);
        walk
    }

    pub fn contains(&self, v: usize) -> bool {
        v == self.basepoint || self.parent.contains_key(&v)
    }
}

/// Presentation of the fundamental group of the component containing
/// `basepoint`. Neighbours are explored in increasing order; non-tree edges
/// become generators in sorted edge order, oriented from smaller to larger
/// vertex.
pub fn pi1_presentation(c: &Complex2, basepoint: usize) -> ComponentPi1 {
    let mut parent = HashMap::new();
    let mut order = vec![basepoint];
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([basepoint]);
    let mut visited = std::collections::HashSet::from([basepoint]);
    while let Some(u) = queue.pop_front() {
        for &v in c.neighbours(u) {
            if visited.insert(v) {
                parent.insert(v, u);
                tree.push((u, v));
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    let mut vertices = order.clone();
    vertices.sort_unstable();
    let mut edge_generator = HashMap::new();
    let mut generator_edges = Vec::new();
    for &(u, v) in &c.edges {
        if !visited.contains(&u) {
            continue;
        }
        let is_tree = parent.get(&v) == Some(&u) || parent.get(&u) == Some(&v);
        if !is_tree {
            edge_generator.insert((u, v), generator_edges.len());
            generator_edges.push((u, v));
        }
    }
    let mut pi = ComponentPi1 {
        basepoint,
        vertices,
        presentation: GroupPresentation {
            generators: generator_edges.len(),
            relators: Vec::new(),
            basepoint: Some(basepoint),
            tree,
            generator_edges,
        },
        parent,
        edge_generator,
    };
    let mut relators = Vec::new();
    for cell in &c.cells {
        if !pi.contains(cell.boundary[0]) {
            continue;
        }
        let mut closed = cell.boundary.clone();
        closed.push(cell.boundary[0]);
        let r = pi.walk_word(&closed).cyclic_reduce();
        if !r.is_empty() {
            relators.push(r);
        }
    }
    pi.presentation.relators = relators;
    pi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_component_is_trivial() {
        let c = Complex2::new(4, vec![(0, 1), (1, 2), (1, 3)]);
        let pi = pi1_presentation(&c, 0);
        assert_eq!(pi.presentation.generators, 0);
        assert_eq!(pi.tree_path(3), vec![0, 1, 3]);
    }

    #[test]
    fn triangle_without_cells() {
        let c = Complex2::new(3, vec![(0, 1), (0, 2), (1, 2)]);
        let pi = pi1_presentation(&c, 0);
        assert_eq!(pi.presentation.generators, 1);
        assert!(pi.presentation.relators.is_empty());
        assert_eq!(pi.presentation.generator_edges, vec![(1, 2)]);
        assert_eq!(pi.walk_word(&[0, 1, 2, 0]), GroupWord(vec![1]));
        assert_eq!(pi.walk_word(&[0, 2, 1, 0]), GroupWord(vec![-1]));
        assert_eq!(pi.walk_word(&pi.generator_loop(0, false)), GroupWord(vec![1]));
        assert_eq!(pi.walk_word(&pi.generator_loop(0, true)), GroupWord(vec![-1]));
    }

    #[test]
    fn other_component_ignored() {
        let c = Complex2::new(5, vec![(0, 1), (2, 3), (3, 4), (2, 4)]);
        let pi = pi1_presentation(&c, 0);
        assert_eq!(pi.presentation.generators, 0);
        assert_eq!(pi.vertices, vec![0, 1]);
        let pi2 = pi1_presentation(&c, 3);
        assert_eq!(pi2.presentation.generators, 1);
    }
}
