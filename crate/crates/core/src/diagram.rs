//! Partition diagrams and the diagram monoids built from them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::semigroup::StarSemigroup;

/// A set partition of `{0..n} ∪ {n..2n}`: points `0..n` form the top row,
/// `n..2n` the bottom (primed) row. Stored as a restricted growth string, so
/// block `k` is the `k`-th block by minimum point and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionDiagram {
    n: usize,
    labels: Vec<u8>,
}

impl PartitionDiagram {
    /// From arbitrary block labels per point; relabelled canonically.
    pub fn from_labels(n: usize, raw: &[usize]) -> Result<Self> {
        if raw.len() != 2 * n {
            return Err(Error::MalformedTable(format!(
                "{} labels for degree {n}",
                raw.len()
            )));
        }
        Ok(Self {
            n,
            labels: canonical(raw.iter().copied()),
        })
    }

    /// From blocks of point ids in `0..2n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; 2 * n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::MalformedTable("empty block".into()));
            }
            for &x in block {
                if x >= 2 * n || raw[x] != usize::MAX {
                    return Err(Error::MalformedTable(format!("point {x} invalid or repeated")));
                }
                raw[x] = b;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::MalformedTable("blocks do not cover all points".into()));
        }
        Self::from_labels(n, &raw)
    }

    /// From blocks in signed notation: `i` is top point `i`, `-i` is bottom
    /// point `i`, both 1-based.
    pub fn from_signed(n: usize, blocks: &[Vec<i64>]) -> Result<Self> {
        let mut conv = Vec::with_capacity(blocks.len());
        for b in blocks {
            let mut out = Vec::with_capacity(b.len());
            for &x in b {
                let i = x.unsigned_abs() as usize;
                if x == 0 || i > n {
                    return Err(Error::MalformedTable(format!("signed point {x} out of range")));
                }
                out.push(if x > 0 { i - 1 } else { n + i - 1 });
            }
            conv.push(out);
        }
        Self::from_blocks(n, &conv)
    }

    pub fn identity(n: usize) -> Self {
        let raw: Vec<usize> = (0..n).chain(0..n).collect();
        Self::from_labels(n, &raw).expect("shape")
    }

    /// Temperley–Lieb generator joining top points `i, i+1` and bottom points
    /// `i, i+1` (0-based, `i + 1 < n`).
    pub fn tl_generator(n: usize, i: usize) -> Self {
        assert!(i + 1 < n, "generator index out of range");
        let mut raw: Vec<usize> = (0..n).chain(0..n).collect();
        raw[i + 1] = i;
        raw[n + i] = n;
        raw[n + i + 1] = n;
        Self::from_labels(n, &raw).expect("shape")
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Blocks sorted by minimum point, each sorted ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(x);
        }
        out
    }

    pub fn signed_blocks(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        self.blocks()
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|x| if x < n { x as i64 + 1 } else { -((x - n) as i64 + 1) })
                    .collect()
            })
            .collect()
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        Ok(self.compose(other))
    }

    /// Stack `self` on top of `other`, glue `self`'s bottom row to `other`'s
    /// top row, and keep the outer rows.
    fn compose(&self, other: &Self) -> Self {
        let n = self.n;
        let ka = self.block_count();
        let kb = other.block_count();
        let mut uf = UnionFind::new(ka + kb);
        for m in 0..n {
            uf.union(self.labels[n + m] as usize, ka + other.labels[m] as usize);
        }
        let outer: Vec<usize> = (0..2 * n)
            .map(|i| {
                if i < n {
                    uf.find(self.labels[i] as usize)
                } else {
                    uf.find(ka + other.labels[i] as usize)
                }
            })
            .collect();
        Self {
            n,
            labels: canonical(outer.into_iter()),
        }
    }

    /// Reflection swapping the two rows.
    pub fn star(&self) -> Self {
        let n = self.n;
        let raw = self.labels[n..]
            .iter()
            .chain(self.labels[..n].iter())
            .map(|&l| l as usize);
        Self {
            n,
            labels: canonical(raw),
        }
    }

    pub fn max_block_size(&self) -> usize {
        let mut counts = vec![0usize; self.block_count()];
        for &l in &self.labels {
            counts[l as usize] += 1;
        }
        counts.into_iter().max().unwrap_or(0)
    }

    pub fn min_block_size(&self) -> usize {
        let mut counts = vec![0usize; self.block_count()];
        for &l in &self.labels {
            counts[l as usize] += 1;
        }
        counts.into_iter().min().unwrap_or(0)
    }

    /// No two blocks interleave around the cycle `1, ..., n, n', ..., 1'`.
    pub fn is_planar(&self) -> bool {
        let n = self.n;
        let cycle: Vec<usize> = (0..n)
            .map(|i| self.labels[i] as usize)
            .chain((0..n).rev().map(|i| self.labels[n + i] as usize))
            .collect();
        let k = self.block_count();
        let mut last = vec![0usize; k];
        for (pos, &b) in cycle.iter().enumerate() {
            last[b] = pos;
        }
        let mut opened = vec![false; k];
        let mut stack: Vec<usize> = Vec::new();
        for (pos, &b) in cycle.iter().enumerate() {
            if opened[b] {
                if stack.last() != Some(&b) {
                    return false;
                }
            } else {
                opened[b] = true;
                stack.push(b);
            }
            if last[b] == pos {
                stack.pop();
            }
        }
        true
    }
}

impl fmt::Display for PartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.signed_blocks() {
            let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))?;
        }
        Ok(())
    }
}

fn canonical(raw: impl Iterator<Item = usize>) -> Vec<u8> {
    let mut map: Vec<(usize, u8)> = Vec::new();
    raw.map(|x| match map.iter().find(|(k, _)| *k == x) {
        Some(&(_, v)) => v,
        None => {
            let v = map.len() as u8;
            map.push((x, v));
            v
        }
    })
    .collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All partitions of `points` points with every block of size at most
/// `max_block`, in lexicographic order of their restricted growth strings.
pub fn set_partitions(points: usize, max_block: usize) -> Vec<Vec<u8>> {
    fn go(
        rgs: &mut Vec<u8>,
        counts: &mut Vec<usize>,
        points: usize,
        max_block: usize,
        out: &mut Vec<Vec<u8>>,
    ) {
        if rgs.len() == points {
            out.push(rgs.clone());
            return;
        }
        for b in 0..=counts.len() {
            if b == counts.len() {
                counts.push(0);
            }
            if counts[b] < max_block {
                counts[b] += 1;
                rgs.push(b as u8);
                go(rgs, counts, points, max_block, out);
                rgs.pop();
                counts[b] -= 1;
            }
            if counts[b] == 0 {
                counts.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut Vec::new(), points, max_block, &mut out);
    out
}

/// A monoid of diagrams with its full tables.
#[derive(Debug, Clone)]
pub struct DiagramMonoid {
    pub semigroup: StarSemigroup,
    pub elements: Vec<PartitionDiagram>,
    index: HashMap<PartitionDiagram, usize>,
}

impl DiagramMonoid {
    /// Tabulates a set of diagrams closed under product and star.
    pub fn from_elements(elements: Vec<PartitionDiagram>) -> Result<Self> {
        let index: HashMap<PartitionDiagram, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        let size = elements.len();
        let lookup = |d: &PartitionDiagram| {
            index
                .get(d)
                .copied()
                .ok_or_else(|| Error::MalformedTable(format!("set not closed: {d}")))
        };
        let mut mult = Vec::with_capacity(size * size);
        for a in &elements {
            for b in &elements {
                mult.push(lookup(&a.multiply(b)?)?);
            }
        }
        let star = elements.iter().map(|d| lookup(&d.star())).collect::<Result<Vec<_>>>()?;
        let labels = elements.iter().map(|d| d.to_string()).collect();
        let semigroup = StarSemigroup::from_flat(size, mult, star)?.with_labels(labels)?;
        Ok(Self {
            semigroup,
            elements,
            index,
        })
    }

    pub fn index_of(&self, d: &PartitionDiagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// Closure of `gens ∪ {id}` under multiplication, in breadth-first order
/// with the identity first.
pub fn generate_monoid(n: usize, gens: &[PartitionDiagram], cap: usize) -> Result<DiagramMonoid> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(n, g.degree()));
    }
    let mut elements = vec![PartitionDiagram::identity(n)];
    let mut seen: HashMap<PartitionDiagram, usize> = HashMap::new();
    seen.insert(elements[0].clone(), 0);
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let x = elements[i].compose(g);
            if !seen.contains_key(&x) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(x.clone(), elements.len());
                elements.push(x);
            }
        }
        i += 1;
    }
    DiagramMonoid::from_elements(elements)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Partition,
    PartialBrauer,
    Brauer,
    Motzkin,
    TemperleyLieb,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Partition => "partition",
            Family::PartialBrauer => "partial Brauer",
            Family::Brauer => "Brauer",
            Family::Motzkin => "Motzkin",
            Family::TemperleyLieb => "Temperley-Lieb",
        }
    }

    pub fn max_degree(self) -> usize {
        match self {
            Family::Partition | Family::PartialBrauer | Family::Motzkin => 4,
            Family::Brauer => 5,
            Family::TemperleyLieb => 6,
        }
    }

    pub fn contains(self, d: &PartitionDiagram) -> bool {
        match self {
            Family::Partition => true,
            Family::PartialBrauer => d.max_block_size() <= 2,
            Family::Brauer => d.max_block_size() == 2 && d.min_block_size() == 2,
            Family::Motzkin => d.max_block_size() <= 2 && d.is_planar(),
            Family::TemperleyLieb => {
                d.max_block_size() == 2 && d.min_block_size() == 2 && d.is_planar()
            }
        }
    }

    /// Every diagram of degree `n` in the family, identity first, then in
    /// restricted-growth-string order.
    pub fn monoid(self, n: usize) -> Result<DiagramMonoid> {
        if n == 0 || n > self.max_degree() {
            return Err(Error::InfeasibleDegree {
                family: self.name(),
                n,
                max: self.max_degree(),
            });
        }
        let max_block = if self == Family::Partition { 2 * n } else { 2 };
        let id = PartitionDiagram::identity(n);
        let mut elements = vec![id.clone()];
        for labels in set_partitions(2 * n, max_block) {
            let d = PartitionDiagram { n, labels };
            if d != id && self.contains(&d) {
                elements.push(d);
            }
        }
        DiagramMonoid::from_elements(elements)
    }
}

pub fn tl_monoid(n: usize) -> Result<DiagramMonoid> {
    Family::TemperleyLieb.monoid(n)
}

pub fn motzkin_monoid(n: usize) -> Result<DiagramMonoid> {
    Family::Motzkin.monoid(n)
}

pub fn brauer_monoid(n: usize) -> Result<DiagramMonoid> {
    Family::Brauer.monoid(n)
}

pub fn partial_brauer_monoid(n: usize) -> Result<DiagramMonoid> {
    Family::PartialBrauer.monoid(n)
}

pub fn partition_monoid(n: usize) -> Result<DiagramMonoid> {
    Family::Partition.monoid(n)
}

/// `τ_0, ..., τ_{n-2}`.
pub fn tl_generators(n: usize) -> Vec<PartitionDiagram> {
    (0..n.saturating_sub(1))
        .map(|i| PartitionDiagram::tl_generator(n, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn d(n: usize, blocks: &[&[i64]]) -> PartitionDiagram {
        let v: Vec<Vec<i64>> = blocks.iter().map(|b| b.to_vec()).collect();
        PartitionDiagram::from_signed(n, &v).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let id = PartitionDiagram::identity(3);
        let a = d(3, &[&[1, 2, -3], &[3], &[-1, -2]]);
        assert_eq!(id.multiply(&a).unwrap(), a);
        assert_eq!(a.multiply(&id).unwrap(), a);
        assert_eq!(id.star(), id);
        assert!(id.is_planar());
        assert_eq!(id.max_block_size(), 2);
    }

    #[test]
    fn tl_relations() {
        let n = 4;
        let t = tl_generators(n);
        for i in 0..n - 1 {
            assert_eq!(t[i].multiply(&t[i]).unwrap(), t[i]);
            assert_eq!(t[i].star(), t[i]);
            assert!(t[i].is_planar());
            for j in 0..n - 1 {
                let ti_tj = t[i].multiply(&t[j]).unwrap();
                if i.abs_diff(j) == 1 {
                    assert_eq!(ti_tj.multiply(&t[i]).unwrap(), t[i]);
                } else if i.abs_diff(j) > 1 {
                    assert_eq!(ti_tj, t[j].multiply(&t[i]).unwrap());
                }
            }
        }
    }

    #[test]
    fn crossing_is_not_planar() {
        assert!(!d(2, &[&[1, -2], &[2, -1]]).is_planar());
        assert!(d(2, &[&[1, 2], &[-1, -2]]).is_planar());
        assert!(!d(2, &[&[1, -1], &[2, -2]]).multiply(&d(2, &[&[1, -2], &[2, -1]])).unwrap().is_planar());
    }

    #[test]
    fn degree_mismatch() {
        let err = PartitionDiagram::identity(2).multiply(&PartitionDiagram::identity(3));
        assert!(matches!(err, Err(Error::DegreeMismatch(2, 3))));
    }

    #[test]
    fn signed_roundtrip() {
        let a = d(3, &[&[1, -2], &[2, 3], &[-1], &[-3]]);
        assert_eq!(PartitionDiagram::from_signed(3, &a.signed_blocks()).unwrap(), a);
        assert_eq!(a.to_string(), "{1,-2}{2,3}{-1}{-3}");
    }

    #[test]
    fn family_sizes() {
        let sizes = |f: Family, ns: &[usize]| -> Vec<usize> {
            ns.iter().map(|&n| f.monoid(n).unwrap().size()).collect()
        };
        assert_eq!(sizes(Family::TemperleyLieb, &[1, 2, 3, 4, 5]), vec![1, 2, 5, 14, 42]);
        assert_eq!(sizes(Family::Motzkin, &[1, 2, 3, 4]), vec![2, 9, 51, 323]);
        assert_eq!(sizes(Family::Brauer, &[1, 2, 3, 4]), vec![1, 3, 15, 105]);
        assert_eq!(sizes(Family::PartialBrauer, &[1, 2, 3]), vec![2, 10, 76]);
        assert_eq!(sizes(Family::Partition, &[1, 2, 3]), vec![2, 15, 203]);
    }

    #[test]
    fn generated_tl_matches_filter() {
        for n in 1..=5 {
            let gen = generate_monoid(n, &tl_generators(n), 1000).unwrap();
            let fil = tl_monoid(n).unwrap();
            let a: HashSet<_> = gen.elements.iter().cloned().collect();
            let b: HashSet<_> = fil.elements.iter().cloned().collect();
            assert_eq!(a, b);
        }
        assert_eq!(generate_monoid(3, &[], 10).unwrap().size(), 1);
        assert!(matches!(
            generate_monoid(4, &tl_generators(4), 5),
            Err(Error::CapExceeded(5))
        ));
    }

    #[test]
    fn infeasible_degree() {
        assert!(matches!(
            partition_monoid(5),
            Err(Error::InfeasibleDegree { n: 5, .. })
        ));
        assert!(tl_monoid(0).is_err());
    }

    #[test]
    fn tl3_semigroup_is_valid() {
        let m = tl_monoid(3).unwrap();
        assert!(m.semigroup.validate().is_valid());
        assert_eq!(m.semigroup.projections().len(), 3);
        assert_eq!(m.semigroup.idempotents().len(), 5);
        let (alg, emb) = m.semigroup.projection_algebra().unwrap();
        let t1 = m.index_of(&PartitionDiagram::tl_generator(3, 0)).unwrap();
        let t2 = m.index_of(&PartitionDiagram::tl_generator(3, 1)).unwrap();
        let p1 = emb.iter().position(|&e| e == t1).unwrap();
        let p2 = emb.iter().position(|&e| e == t2).unwrap();
        assert_eq!(alg.apply(p2, p1), p1);
    }
}
