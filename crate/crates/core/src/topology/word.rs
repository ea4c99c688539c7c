use std::fmt;

use serde::{Deserialize, Serialize};

/// A word in a free group. Letter `g + 1` is generator `g`, `-(g + 1)` its
/// inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupWord(pub Vec<i32>);

impl GroupWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Self(vec![letter(g, false)])
    }

    pub fn from_letters(letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0));
        Self(letters)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// Largest generator index used, plus one.
    pub fn rank_bound(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    /// Free reduction followed by cancelling inverse letters at the two ends.
    pub fn cyclic_reduce(&self) -> Self {
        let w = self.free_reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Self(w[i..j].to_vec())
    }

    /// Number of occurrences of generator `g` in either sign.
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|&&l| gen_of(l) == g).count()
    }

    /// Replaces every letter of generator `g` by `image` (or its inverse).
    pub fn substitute(&self, g: usize, image: &GroupWord) -> Self {
        let inv = image.inverse();
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if gen_of(l) == g {
                out.extend_from_slice(if l > 0 { &image.0 } else { &inv.0 });
            } else {
                out.push(l);
            }
        }
        Self(out).free_reduce()
    }

    /// Applies a letter map `g ↦ images[g]` to every letter.
    pub fn map(&self, images: &[GroupWord]) -> Self {
        let mut out = Vec::new();
        for &l in &self.0 {
            let img = &images[gen_of(l)];
            if l > 0 {
                out.extend_from_slice(&img.0);
            } else {
                out.extend(img.0.iter().rev().map(|&x| -x));
            }
        }
        Self(out).free_reduce()
    }

    /// Smallest representative among all cyclic rotations of the word and of
    /// its inverse. Used to compare relators.
    pub fn cyclic_canonical(&self) -> Self {
        let w = self.cyclic_reduce();
        let mut best = w.clone();
        for cand in [w.clone(), w.inverse()] {
            let n = cand.0.len();
            for s in 0..n {
                let rot: Vec<i32> = cand.0[s..].iter().chain(cand.0[..s].iter()).copied().collect();
                if rot < best.0 {
                    best = Self(rot);
                }
            }
        }
        best
    }

    /// Exponent sum per generator, over `rank` generators.
    pub fn exponent_vector(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &l in &self.0 {
            v[gen_of(l)] += l.signum() as i64;
        }
        v
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("g{}", l - 1)
                } else {
                    format!("g{}^-1", -l - 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[inline]
pub fn letter(g: usize, inverse: bool) -> i32 {
    let l = g as i32 + 1;
    if inverse {
        -l
    } else {
        l
    }
}

#[inline]
pub fn gen_of(l: i32) -> usize {
    l.unsigned_abs() as usize - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions() {
        let w = GroupWord(vec![1, -1, 2, 1, -1, -2, 3]);
        assert_eq!(w.free_reduce(), GroupWord(vec![3]));
        let c = GroupWord(vec![-2, 1, 3, 2]);
        assert_eq!(c.cyclic_reduce(), GroupWord(vec![1, 3]));
        assert_eq!(GroupWord(vec![1, -1, 1]).free_reduce(), GroupWord(vec![1]));
    }

    #[test]
    fn substitution() {
        let w = GroupWord(vec![1, 2, -1]);
        let img = GroupWord(vec![3, 2]);
        assert_eq!(w.substitute(0, &img), GroupWord(vec![3, 2, 2, -2, -3]).free_reduce());
        assert_eq!(
            GroupWord(vec![-1]).map(&[GroupWord(vec![2, 3])]),
            GroupWord(vec![-3, -2])
        );
    }

    #[test]
    fn canonical_rotation() {
        let a = GroupWord(vec![2, 1, 3]);
        let b = GroupWord(vec![-1, -2, -3]);
        assert_eq!(a.cyclic_canonical(), b.cyclic_canonical());
    }
}
