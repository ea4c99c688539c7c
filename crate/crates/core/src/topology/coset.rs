//! Todd–Coxeter enumeration of the cosets of the trivial subgroup
//! (HLT strategy with coincidence processing).

use std::collections::VecDeque;

use super::presentation::GroupPresentation;
use super::word::{gen_of, GroupWord};

pub const DEFAULT_COSET_BUDGET: usize = 50_000;

const NONE: usize = usize::MAX;

/// Column of a letter: `2g` for `g`, `2g + 1` for `g⁻¹`.
#[inline]
fn col(l: i32) -> usize {
    2 * gen_of(l) + usize::from(l < 0)
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: VecDeque<usize>,
    budget: usize,
}

impl Enumerator {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Option<usize> {
        if self.table.len() >= self.budget {
            return None;
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][inv_col(x)] = c;
        Some(d)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.cols {
                let d = self.table[e][x];
                if d == NONE {
                    continue;
                }
                self.table[e][x] = NONE;
                if self.table[d][inv_col(x)] == e {
                    self.table[d][inv_col(x)] = NONE;
                }
                let e1 = self.rep(e);
                let d1 = self.rep(d);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(d1, t);
                } else if self.table[d1][inv_col(x)] != NONE {
                    let t = self.table[d1][inv_col(x)];
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = d1;
                    self.table[d1][inv_col(x)] = e1;
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions, defining cosets to close the
    /// gap. Returns false when the budget runs out.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i && self.table[b][inv_col(w[j - 1])] != NONE {
                b = self.table[b][inv_col(w[j - 1])];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if j == i + 1 {
                self.table[f][w[i]] = b;
                self.table[b][inv_col(w[i])] = f;
                return true;
            }
            if self.define(f, w[i]).is_none() {
                return false;
            }
        }
    }
}

/// The regular representation of a finite group found by enumeration.
#[derive(Debug, Clone)]
pub struct CosetTable {
    /// `table[c][col]` for the compacted cosets; coset 0 is the identity.
    table: Vec<Vec<usize>>,
    /// A shortest word reaching each coset from 0 (breadth-first, letters
    /// in column order).
    reps: Vec<GroupWord>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Coset reached from the identity by `w`.
    pub fn element(&self, w: &GroupWord) -> usize {
        w.letters().iter().fold(0, |c, &l| self.table[c][col(l)])
    }

    pub fn representative(&self, c: usize) -> &GroupWord {
        &self.reps[c]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.element(&self.reps[a].concat(&self.reps[b]))
    }
}

/// Enumerates cosets of the trivial subgroup. `None` when more than
/// `budget` cosets would be needed.
pub fn enumerate_cosets(p: &GroupPresentation, budget: usize) -> Option<CosetTable> {
    let cols = 2 * p.generators;
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| r.letters().iter().map(|&l| col(l)).collect())
        .collect();
    let mut en = Enumerator {
        cols,
        table: vec![vec![NONE; cols]],
        parent: vec![0],
        queue: VecDeque::new(),
        budget: budget.max(1),
    };
    let mut c = 0;
    while c < en.table.len() {
        if en.alive(c) {
            for r in &relators {
                if !en.scan_and_fill(c, r) {
                    return None;
                }
                if !en.alive(c) {
                    break;
                }
            }
            if en.alive(c) {
                for x in 0..cols {
                    if en.table[c][x] == NONE && en.define(c, x).is_none() {
                        return None;
                    }
                }
            }
        }
        c += 1;
    }
    // Compact by breadth-first search from coset 0.
    let mut number = vec![NONE; en.table.len()];
    let mut order = vec![0usize];
    number[0] = 0;
    let mut reps = vec![GroupWord::empty()];
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for x in 0..cols {
            let d = en.rep(en.table[c][x]);
            if number[d] == NONE {
                number[d] = order.len();
                order.push(d);
                let letter = if x % 2 == 0 { (x / 2) as i32 + 1 } else { -((x / 2) as i32 + 1) };
                let mut w = reps[number[c]].letters().to_vec();
                w.push(letter);
                reps.push(GroupWord::from_letters(w));
            }
        }
        i += 1;
    }
    let table = order
        .iter()
        .map(|&c| {
            (0..cols)
                .map(|x| {
                    let d = en.rep(en.table[c][x]);
                    number[d]
                })
                .collect()
        })
        .collect();
    Some(CosetTable { table, reps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: usize, rels: &[&[i32]]) -> GroupPresentation {
        GroupPresentation::new(gens, rels.iter().map(|r| GroupWord(r.to_vec())).collect())
    }

    #[test]
    fn cyclic_groups() {
        for n in 1..8 {
            let p = pres(1, &[&vec![1; n]]);
            assert_eq!(enumerate_cosets(&p, 1000).unwrap().order(), n);
        }
    }

    #[test]
    fn symmetric_group_s3() {
        // ⟨a, b | a², b³, (ab)²⟩
        let p = pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]);
        let t = enumerate_cosets(&p, 1000).unwrap();
        assert_eq!(t.order(), 6);
        // Cross-check products against permutations of {0,1,2}.
        let a = [1usize, 0, 2];
        let b = [1usize, 2, 0];
        let perm_of = |w: &GroupWord| {
            let mut x = [0usize, 1, 2];
            for &l in w.letters() {
                let g = if l.unsigned_abs() == 1 { a } else { b };
                let g = if l > 0 {
                    g
                } else {
                    let mut inv = [0; 3];
                    for i in 0..3 {
                        inv[g[i]] = i;
                    }
                    inv
                };
                x = [g[x[0]], g[x[1]], g[x[2]]];
            }
            x
        };
        for i in 0..6 {
            for j in 0..6 {
                let k = t.multiply(i, j);
                let lhs = perm_of(&t.representative(i).concat(t.representative(j)));
                assert_eq!(lhs, perm_of(t.representative(k)));
            }
        }
    }

    #[test]
    fn quaternion_and_trivial() {
        // ⟨a, b | a⁴, a²b⁻², b⁻¹aba⟩ has order 8.
        let q8 = pres(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]);
        assert_eq!(enumerate_cosets(&q8, 1000).unwrap().order(), 8);
        let triv = pres(2, &[&[1], &[1, 2]]);
        assert_eq!(enumerate_cosets(&triv, 100).unwrap().order(), 1);
    }

    #[test]
    fn infinite_group_exceeds_budget() {
        let z = pres(1, &[]);
        assert!(enumerate_cosets(&z, 500).is_none());
    }
}
