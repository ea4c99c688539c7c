//! Finite regular *-semigroups given by tables, and adjacency semigroups.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::ProjectionAlgebra;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSemigroup {
    size: usize,
    mult: Vec<usize>,
    star: Vec<usize>,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemigroupFile {
    pub size: usize,
    pub mult: Vec<Vec<usize>>,
    pub star: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl StarSemigroup {
    /// Builds from a flat row-major product table. Shape and ranges are
    /// checked; the laws are left to [`StarSemigroup::validate`].
    pub fn from_flat(size: usize, mult: Vec<usize>, star: Vec<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::MalformedTable("semigroup must be nonempty".into()));
        }
        if mult.len() != size * size || star.len() != size {
            return Err(Error::MalformedTable(format!(
                "tables do not fit size {size}"
            )));
        }
        if mult.iter().chain(star.iter()).any(|&v| v >= size) {
            return Err(Error::MalformedTable("entry out of range".into()));
        }
        Ok(Self {
            size,
            mult,
            star,
            labels: None,
        })
    }

    pub fn new(mult: Vec<Vec<usize>>, star: Vec<usize>) -> Result<Self> {
        let size = mult.len();
        if mult.iter().any(|r| r.len() != size) {
            return Err(Error::MalformedTable("product table is not square".into()));
        }
        Self::from_flat(size, mult.concat(), star)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::MalformedTable("label count mismatch".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size + b]
    }

    #[inline]
    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    /// Product of a nonempty sequence, left to right.
    pub fn mul_all(&self, xs: &[usize]) -> usize {
        let (&first, rest) = xs.split_first().expect("nonempty product");
        rest.iter().fold(first, |acc, &x| self.mul(acc, x))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn is_projection(&self, a: usize) -> bool {
        self.is_idempotent(a) && self.star(a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.is_idempotent(a)).collect()
    }

    pub fn projections(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.is_projection(a)).collect()
    }

    /// Checks associativity, the involution laws, regularity and RS1–RS3,
    /// RS5–RS7.
    pub fn validate(&self) -> ValidationReport {
        let n = self.size;
        let mut rep = ValidationReport::new();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        rep.push("associativity", &[a, b, c]);
                    }
                }
                if self.star(ab) != self.mul(self.star(b), self.star(a)) {
                    rep.push("anti-homomorphism", &[a, b]);
                }
            }
            if self.star(self.star(a)) != a {
                rep.push("involution", &[a]);
            }
            let sa = self.star(a);
            if self.mul(self.mul(a, sa), a) != a {
                rep.push("regularity", &[a]);
            }
            if !self.is_projection(self.mul(a, sa)) {
                rep.push("RS1", &[a]);
            }
        }
        let projections = self.projections();
        for e in self.idempotents() {
            let se = self.star(e);
            if self.mul(self.mul(e, se), self.mul(se, e)) != e {
                rep.push("RS3", &[e]);
            }
        }
        let mut factorisations: HashMap<usize, (usize, usize)> = HashMap::new();
        for &p in &projections {
            for &q in &projections {
                let pq = self.mul(p, q);
                if !self.is_idempotent(pq) {
                    rep.push("RS2", &[p, q]);
                }
                if !self.is_projection(self.mul(pq, p)) {
                    rep.push("RS5", &[p, q]);
                }
                let friendly = self.mul(pq, p) == p && self.mul(self.mul(q, p), q) == q;
                if friendly {
                    if let Some(&(r, s)) = factorisations.get(&pq) {
                        rep.push("RS7", &[p, q, r, s]);
                    } else {
                        factorisations.insert(pq, (p, q));
                    }
                }
            }
            for a in 0..n {
                if !self.is_projection(self.mul(self.mul(a, p), self.star(a))) {
                    rep.push("RS6", &[a, p]);
                }
            }
        }
        rep
    }

    /// The projection algebra `q θ_p = pqp` together with the map from
    /// projection ids to element ids. The semigroup is validated first.
    pub fn projection_algebra(&self) -> Result<(ProjectionAlgebra, Vec<usize>)> {
        let rep = self.validate();
        if !rep.is_valid() {
            return Err(Error::InvalidSemigroup(rep.to_string()));
        }
        Ok(self.projection_algebra_unchecked())
    }

    /// As [`StarSemigroup::projection_algebra`] without the cubic validation
    /// pass. Intended for large tables already known to be valid.
    pub fn projection_algebra_unchecked(&self) -> (ProjectionAlgebra, Vec<usize>) {
        let embedding = self.projections();
        let index: HashMap<usize, usize> =
            embedding.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = embedding.len();
        let mut theta = Vec::with_capacity(m * m);
        for &p in &embedding {
            for &q in &embedding {
                let pqp = self.mul(self.mul(p, q), p);
                theta.push(index[&pqp]);
            }
        }
        let mut alg = ProjectionAlgebra::from_flat(m, theta).expect("projections closed under pqp");
        if let Some(labels) = &self.labels {
            alg = alg
                .with_labels(embedding.iter().map(|&e| labels[e].clone()).collect())
                .expect("label count");
        }
        (alg, embedding)
    }

    /// Smallest subsemigroup containing `gens`.
    pub fn generated_by(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut out: Vec<usize> = Vec::new();
        for &g in gens {
            if !seen[g] {
                seen[g] = true;
                out.push(g);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let a = out[i];
            for &g in gens {
                let ag = self.mul(a, g);
                if !seen[ag] {
                    seen[ag] = true;
                    out.push(ag);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn to_file(&self) -> SemigroupFile {
        SemigroupFile {
            size: self.size,
            mult: self.mult.chunks(self.size).map(|c| c.to_vec()).collect(),
            star: self.star.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_file(f: SemigroupFile) -> Result<Self> {
        if f.mult.len() != f.size {
            return Err(Error::MalformedTable("row count differs from size".into()));
        }
        let s = Self::new(f.mult, f.star)?;
        match f.labels {
            Some(l) => s.with_labels(l),
            None => Ok(s),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("semigroup serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }
}

/// A reflexive symmetric graph on `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyGraph {
    vertices: usize,
    adj: Vec<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// When set, `edges` are arcs and every arc must come with its reverse.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub directed: bool,
}

impl AdjacencyGraph {
    /// Unordered edges; loops are added at every vertex.
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![false; vertices * vertices];
        for v in 0..vertices {
            adj[v * vertices + v] = true;
        }
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::MalformedTable(format!("edge ({u},{v}) out of range")));
            }
            adj[u * vertices + v] = true;
            adj[v * vertices + u] = true;
        }
        Ok(Self { vertices, adj })
    }

    /// Arcs taken literally: every loop and every reverse arc must be listed.
    pub fn from_arcs(vertices: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![false; vertices * vertices];
        for &(u, v) in arcs {
            if u >= vertices || v >= vertices {
                return Err(Error::MalformedTable(format!("arc ({u},{v}) out of range")));
            }
            adj[u * vertices + v] = true;
        }
        for v in 0..vertices {
            if !adj[v * vertices + v] {
                return Err(Error::NotReflexive(v));
            }
        }
        for &(u, v) in arcs {
            if !adj[v * vertices + u] {
                return Err(Error::NotSymmetric(u, v));
            }
        }
        Ok(Self { vertices, adj })
    }

    pub fn complete(vertices: usize) -> Self {
        Self {
            vertices,
            adj: vec![true; vertices * vertices],
        }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.vertices + v]
    }

    /// Non-loop edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices;
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn from_file(f: GraphFile) -> Result<Self> {
        if f.directed {
            let mut arcs = f.edges.clone();
            arcs.extend((0..f.vertices).map(|v| (v, v)));
            Self::from_arcs(f.vertices, &arcs)
        } else {
            Self::new(f.vertices, &f.edges)
        }
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertices,
            edges: self.edges(),
            directed: false,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    /// Element id of `(p, q)` in the adjacency semigroup. The zero is id 0.
    pub fn pair_id(&self, p: usize, q: usize) -> usize {
        1 + p * self.vertices + q
    }

    /// The adjacency semigroup on `(P × P) ∪ {0}`.
    pub fn semigroup(&self) -> StarSemigroup {
        let n = self.vertices;
        let size = 1 + n * n;
        let mut mult = vec![0; size * size];
        let mut star = vec![0; size];
        let mut labels = vec!["0".to_string(); size];
        for p in 0..n {
            for q in 0..n {
                let a = self.pair_id(p, q);
                star[a] = self.pair_id(q, p);
                labels[a] = format!("({p},{q})");
                for r in 0..n {
                    if !self.has_edge(q, r) {
                        continue;
                    }
                    for s in 0..n {
                        mult[a * size + self.pair_id(r, s)] = self.pair_id(p, s);
                    }
                }
            }
        }
        StarSemigroup {
            size,
            mult,
            star,
            labels: Some(labels),
        }
    }

    /// The projection algebra of the adjacency semigroup, written down
    /// directly: id 0 is the zero, id `v + 1` is vertex `v`, and
    /// `q θ_p = p` when `(p, q)` is an edge, `0` otherwise.
    pub fn projection_algebra(&self) -> ProjectionAlgebra {
        let n = self.vertices;
        let m = n + 1;
        let mut theta = vec![0; m * m];
        for p in 0..n {
            for q in 0..n {
                if self.has_edge(p, q) {
                    theta[(p + 1) * m + q + 1] = p + 1;
                }
            }
        }
        let mut labels = vec!["0".to_string()];
        labels.extend((0..n).map(|v| format!("v{v}")));
        ProjectionAlgebra::from_flat(m, theta)
            .and_then(|a| a.with_labels(labels))
            .expect("adjacency table well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_element_semigroup() {
        let s = StarSemigroup::new(vec![vec![0]], vec![0]).unwrap();
        assert!(s.validate().is_valid());
        assert_eq!(s.projections(), vec![0]);
        assert_eq!(s.idempotents(), vec![0]);
    }

    #[test]
    fn adjacency_on_one_vertex() {
        let g = AdjacencyGraph::complete(1);
        let s = g.semigroup();
        assert_eq!(s.size(), 2);
        assert!(s.validate().is_valid());
    }

    #[test]
    fn adjacency_products_and_idempotents() {
        let g = AdjacencyGraph::new(3, &[(0, 1)]).unwrap();
        let s = g.semigroup();
        assert!(s.validate().is_valid());
        // (0,1)(2,0) = 0 since {1,2} is not an edge.
        assert_eq!(s.mul(g.pair_id(0, 1), g.pair_id(2, 0)), 0);
        assert_eq!(s.mul(g.pair_id(0, 1), g.pair_id(0, 2)), g.pair_id(0, 2));
        // E = 3 loops + 2 arcs.
        assert_eq!(s.idempotents().len(), 5 + 1);
        assert_eq!(s.projections().len(), 3 + 1);
    }

    #[test]
    fn adjacency_algebra_matches_extraction() {
        let g = AdjacencyGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let (alg, emb) = g.semigroup().projection_algebra().unwrap();
        assert_eq!(emb[0], 0);
        assert_eq!(alg.flat_table(), g.projection_algebra().flat_table());
    }

    #[test]
    fn strict_arcs() {
        assert!(matches!(
            AdjacencyGraph::from_arcs(2, &[(0, 0), (1, 1), (0, 1)]),
            Err(Error::NotSymmetric(0, 1))
        ));
        assert!(matches!(
            AdjacencyGraph::from_arcs(2, &[(0, 0)]),
            Err(Error::NotReflexive(1))
        ));
        let g = AdjacencyGraph::from_json(r#"{"vertices":3,"edges":[[0,2]]}"#).unwrap();
        assert!(g.has_edge(2, 0) && g.has_edge(1, 1) && !g.has_edge(0, 1));
        let bad = AdjacencyGraph::from_json(r#"{"vertices":2,"edges":[[0,1]],"directed":true}"#);
        assert!(matches!(bad, Err(Error::NotSymmetric(0, 1))));
    }

    #[test]
    fn non_regular_table_rejected() {
        // Null semigroup {0, a} with a² = 0: a a* a = 0.
        let s = StarSemigroup::new(vec![vec![0, 0], vec![0, 0]], vec![0, 1]).unwrap();
        let rep = s.validate();
        assert!(rep.violations.iter().any(|v| v.law == "regularity" && v.witness == vec![1]));
        assert!(matches!(s.projection_algebra(), Err(Error::InvalidSemigroup(_))));
    }

    #[test]
    fn json_roundtrip() {
        let s = AdjacencyGraph::complete(2).semigroup();
        let t = StarSemigroup::from_json(&s.to_json()).unwrap();
        assert_eq!(s, t);
    }
}
