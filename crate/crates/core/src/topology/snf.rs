use std::fmt;

use serde::Serialize;

use super::presentation::GroupPresentation;

/// `ℤ^free_rank × ℤ/t1 × ℤ/t2 × ...` with `t1 | t2 | ...`, all `ti > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn invariant_factors(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && pivot.map_or(true, |(pi, pj)| x.abs() < a[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return normalise(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let d = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t] / d;
                if q != 0 {
                    for j in t..n {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / d;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                diag.push(d.abs());
                break;
            }
        }
    }
    normalise(diag)
}

/// Turns any diagonal into the divisibility chain with the same cokernel.
fn normalise(mut d: Vec<i128>) -> Vec<i128> {
    let k = d.len();
    for i in 0..k {
        for j in i + 1..k {
            let g = gcd(d[i], d[j]);
            let l = if g == 0 { 0 } else { d[i] / g * d[j] };
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|&x| x != 0);
    d
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn abelianization(p: &GroupPresentation) -> Abelianization {
    let rows: Vec<Vec<i128>> = p
        .relators
        .iter()
        .map(|r| {
            r.exponent_vector(p.generators)
                .into_iter()
                .map(|x| x as i128)
                .collect()
        })
        .collect();
    let factors = invariant_factors(rows);
    Abelianization {
        free_rank: p.generators - factors.len(),
        torsion: factors.into_iter().filter(|&x| x > 1).map(|x| x as u64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::word::GroupWord;

    #[test]
    fn small_matrices() {
        assert_eq!(invariant_factors(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(invariant_factors(vec![vec![4, 0], vec![0, 6]]), vec![2, 12]);
        assert_eq!(invariant_factors(vec![vec![0, 0]]), Vec::<i128>::new());
    }

    #[test]
    fn abelianize() {
        // ⟨a, b | a b a^-1 b^-1, a^4⟩ → ℤ × ℤ/4
        let p = GroupPresentation::new(
            2,
            vec![GroupWord(vec![1, 2, -1, -2]), GroupWord(vec![1, 1, 1, 1])],
        );
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank, 1);
        assert_eq!(ab.torsion, vec![4]);
        assert_eq!(ab.to_string(), "Z x Z/4");
    }
}
