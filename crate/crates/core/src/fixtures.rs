//! Named algebras and small generators used by the CLI and the test suites.

use rand::Rng;

use crate::algebra::ProjectionAlgebra;
use crate::semigroup::AdjacencyGraph;

/// One projection.
pub fn trivial() -> ProjectionAlgebra {
    ProjectionAlgebra::new(vec![vec![0]], Some(vec!["p".into()])).expect("valid table")
}

/// The algebra where every `θ_p` is the constant map to `p`. Its chain
/// semigroup is the `k × k` square band when `k ≤ 2` and infinite above.
pub fn square_band(k: usize) -> ProjectionAlgebra {
    assert!(k >= 1, "square band needs at least one projection");
    let rows = (0..k).map(|p| vec![p; k]).collect();
    let labels = (0..k).map(|i| format!("p{i}")).collect();
    ProjectionAlgebra::new(rows, Some(labels)).expect("valid table")
}

/// Four projections `p, q, r, e` (ids 0..3): `θ_p, θ_q, θ_r` are constant
/// and `θ_e` fixes `p, q, e` while sending `r` to `q`.
pub fn kinyon() -> ProjectionAlgebra {
    let rows = vec![
        vec![0, 0, 0, 0],
        vec![1, 1, 1, 1],
        vec![2, 2, 2, 2],
        vec![0, 1, 1, 3],
    ];
    let labels = ["p", "q", "r", "e"].iter().map(|s| s.to_string()).collect();
    ProjectionAlgebra::new(rows, Some(labels)).expect("valid table")
}

/// Componentwise product; `(a, b)` gets id `a * |B| + b`.
pub fn product(a: &ProjectionAlgebra, b: &ProjectionAlgebra) -> ProjectionAlgebra {
    let (m, n) = (a.size(), b.size());
    let size = m * n;
    let mut theta = vec![0; size * size];
    for p in 0..size {
        for q in 0..size {
            let (p1, p2) = (p / n, p % n);
            let (q1, q2) = (q / n, q % n);
            theta[p * size + q] = a.apply(q1, p1) * n + b.apply(q2, p2);
        }
    }
    let labels = (0..size)
        .map(|p| format!("({},{})", a.label(p / n), b.label(p % n)))
        .collect();
    ProjectionAlgebra::from_flat(size, theta)
        .and_then(|x| x.with_labels(labels))
        .expect("product table well formed")
}

/// Disjoint union with a new zero below everything (`0 θ_p = 0`,
/// `q θ_0 = 0`, and `q θ_p = 0` across summands).
pub fn zero_sum(parts: &[ProjectionAlgebra]) -> ProjectionAlgebra {
    let size = 1 + parts.iter().map(|a| a.size()).sum::<usize>();
    let mut theta = vec![0; size * size];
    let mut labels = vec!["0".to_string()];
    let mut offset = 1;
    for (i, a) in parts.iter().enumerate() {
        for p in 0..a.size() {
            labels.push(format!("{}.{}", i, a.label(p)));
            for q in 0..a.size() {
                theta[(offset + p) * size + offset + q] = offset + a.apply(q, p);
            }
        }
        offset += a.size();
    }
    ProjectionAlgebra::from_flat(size, theta)
        .and_then(|x| x.with_labels(labels))
        .expect("sum table well formed")
}

/// Uniformly random graph on `n` vertices with edge probability `density`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> AdjacencyGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    AdjacencyGraph::new(n, &edges).expect("edges in range")
}

/// One representative per isomorphism class of simple graphs on `n`
/// vertices, as edge lists. Brute force over permutations; fine for n ≤ 6.
pub fn unlabeled_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut pair_index = vec![0usize; n * n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u * n + v] = i;
        pair_index[v * n + u] = i;
    }
    let perms = permutations(n);
    // For each permutation, the image position of every pair slot.
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|pi| {
            pairs
                .iter()
                .map(|&(u, v)| pair_index[pi[u] * n + pi[v]])
                .collect()
        })
        .collect();
    let total = 1u64 << pairs.len();
    let mut out = Vec::new();
    for mask in 0..total {
        let canonical = maps.iter().all(|m| {
            let mut image = 0u64;
            for (i, &j) in m.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    image |= 1 << j;
                }
            }
            image >= mask
        });
        if canonical {
            out.push(
                (0..pairs.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| pairs[i])
                    .collect(),
            );
        }
    }
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| unlabeled_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn constructions_are_valid() {
        for a in [
            trivial(),
            square_band(1),
            square_band(3),
            kinyon(),
            product(&kinyon(), &square_band(2)),
            zero_sum(&[kinyon(), square_band(2)]),
        ] {
            assert!(a.validate_axioms().is_valid(), "{a:?}");
        }
    }
}
