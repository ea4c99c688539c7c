//! Friendly walks, their reduction, restrictions, and linked pairs.

use serde::{Deserialize, Serialize};

use crate::algebra::ProjectionAlgebra;
use crate::error::{Error, Result};

/// A nonempty walk `(p1, ..., pk)` with consecutive vertices friendly.
///
/// Paths do not borrow their algebra; every constructor that accepts
/// arbitrary vertices takes the algebra and checks friendliness.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub algebra: String,
    pub vertices: Vec<usize>,
}

impl Path {
    pub fn new(alg: &ProjectionAlgebra, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPath);
        }
        for &v in &vertices {
            alg.check_index(v)?;
        }
        for w in vertices.windows(2) {
            if !alg.friendly(w[0], w[1]) {
                return Err(Error::NotFriendly(w[0], w[1]));
            }
        }
        Ok(Self { vertices })
    }

    pub fn unit(p: usize) -> Self {
        Self { vertices: vec![p] }
    }

    /// Caller guarantees the walk is friendly.
    pub(crate) fn from_trusted(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty());
        Self { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    pub fn dom(&self) -> usize {
        self.vertices[0]
    }

    pub fn cod(&self) -> usize {
        *self.vertices.last().expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    /// Juxtaposition `(p1..pk, q1..ql)`; needs `pk F q1`.
    pub fn concat(&self, alg: &ProjectionAlgebra, other: &Path) -> Result<Self> {
        if !alg.friendly(self.cod(), other.dom()) {
            return Err(Error::NotFriendly(self.cod(), other.dom()));
        }
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices);
        Ok(Self { vertices: v })
    }

    /// The unique form with no factor `(p,p)` or `(p,q,p)`.
    pub fn reduce(&self) -> Self {
        Self {
            vertices: reduce_vertices(&self.vertices),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.vertices.windows(2).all(|w| w[0] != w[1])
            && self.vertices.windows(3).all(|w| w[0] != w[2])
    }

    /// `(q1, ..., qk)` with `q1 = q` and `qi = q θ_{p2} ... θ_{pi}`.
    pub fn restrict_left(&self, alg: &ProjectionAlgebra, q: usize) -> Result<Self> {
        alg.check_index(q)?;
        if !alg.leq(q, self.dom()) {
            return Err(Error::NotBelow(q, self.dom()));
        }
        let mut out = Vec::with_capacity(self.len());
        let mut cur = q;
        out.push(cur);
        for &p in &self.vertices[1..] {
            cur = alg.apply(cur, p);
            out.push(cur);
        }
        Ok(Self { vertices: out })
    }

    /// `(r1, ..., rk)` with `rk = r` and `ri = r θ_{p(k-1)} ... θ_{pi}`.
    pub fn restrict_right(&self, alg: &ProjectionAlgebra, r: usize) -> Result<Self> {
        alg.check_index(r)?;
        if !alg.leq(r, self.cod()) {
            return Err(Error::NotBelow(r, self.cod()));
        }
        let k = self.len();
        let mut out = vec![0; k];
        let mut cur = r;
        out[k - 1] = cur;
        for i in (0..k - 1).rev() {
            cur = alg.apply(cur, self.vertices[i]);
            out[i] = cur;
        }
        Ok(Self { vertices: out })
    }

    pub fn to_record(&self, alg: &ProjectionAlgebra) -> PathRecord {
        PathRecord {
            algebra: alg.digest(),
            vertices: self.vertices.clone(),
        }
    }

    pub fn from_record(alg: &ProjectionAlgebra, rec: &PathRecord) -> Result<Self> {
        if rec.algebra != alg.digest() {
            return Err(Error::ForeignChain);
        }
        Self::new(alg, rec.vertices.clone())
    }
}

/// Stack reduction: push each vertex, dropping it when it repeats the top
/// and popping the top when it repeats the vertex below.
pub fn reduce_vertices(vertices: &[usize]) -> Vec<usize> {
    let mut stack: Vec<usize> = Vec::with_capacity(vertices.len());
    for &v in vertices {
        let n = stack.len();
        if n >= 1 && stack[n - 1] == v {
            continue;
        }
        if n >= 2 && stack[n - 2] == v {
            stack.pop();
            continue;
        }
        stack.push(v);
    }
    stack
}

/// `(e, f)` is `p`-linked when `f = e θ_p θ_f` and `e = f θ_p θ_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinkedPair {
    pub p: usize,
    pub e: usize,
    pub f: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NondegenerateType {
    /// `e, f, eθ_p, fθ_p` all distinct.
    One,
    /// `e = eθ_p`.
    Two,
    /// `f = fθ_p`.
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinkedPairClass {
    pub special: bool,
    pub degenerate: bool,
    pub kind: Option<NondegenerateType>,
}

pub fn is_linked(alg: &ProjectionAlgebra, p: usize, e: usize, f: usize) -> bool {
    alg.theta_chain(e, &[p, f]) == f && alg.theta_chain(f, &[p, e]) == e
}

impl LinkedPair {
    pub fn new(alg: &ProjectionAlgebra, p: usize, e: usize, f: usize) -> Result<Self> {
        for x in [p, e, f] {
            alg.check_index(x)?;
        }
        if is_linked(alg, p, e, f) {
            Ok(Self { p, e, f })
        } else {
            Err(Error::NotLinked { p, e, f })
        }
    }

    pub fn e_prime(&self, alg: &ProjectionAlgebra) -> usize {
        alg.apply(self.e, self.p)
    }

    pub fn f_prime(&self, alg: &ProjectionAlgebra) -> usize {
        alg.apply(self.f, self.p)
    }

    pub fn swapped(&self) -> Self {
        Self {
            p: self.p,
            e: self.f,
            f: self.e,
        }
    }

    /// `λ = (e, eθ_p, f)` and `ρ = (e, fθ_p, f)`.
    pub fn lambda_rho(&self, alg: &ProjectionAlgebra) -> (Path, Path) {
        let lambda = Path::from_trusted(vec![self.e, self.e_prime(alg), self.f]);
        let rho = Path::from_trusted(vec![self.e, self.f_prime(alg), self.f]);
        (lambda, rho)
    }

    /// Special iff `e ≤ p` or `f ≤ p`; degenerate iff `eθ_p = fθ_p` or both
    /// lie below `p`. Degeneracy is cross-checked against path reduction.
    pub fn classify(&self, alg: &ProjectionAlgebra) -> Result<LinkedPairClass> {
        let (p, e, f) = (self.p, self.e, self.f);
        let (e1, f1) = (self.e_prime(alg), self.f_prime(alg));
        let (e_low, f_low) = (alg.leq(e, p), alg.leq(f, p));
        let special = e_low || f_low;
        let degenerate = e1 == f1 || (e_low && f_low);
        let (lambda, rho) = self.lambda_rho(alg);
        if degenerate != (lambda.reduce() == rho.reduce()) {
            return Err(Error::InconsistentClassification { p, e, f });
        }
        let kind = if degenerate {
            None
        } else {
            let mut set = vec![e, f, e1, f1];
            set.sort_unstable();
            set.dedup();
            match set.len() {
                4 => Some(NondegenerateType::One),
                3 if e == e1 => Some(NondegenerateType::Two),
                3 if f == f1 => Some(NondegenerateType::Three),
                _ => return Err(Error::InconsistentClassification { p, e, f }),
            }
        };
        Ok(LinkedPairClass {
            special,
            degenerate,
            kind,
        })
    }

    /// The `p`-linked pair `(e_low, e_low θ_p θ_f)` for `e_low ≤ e`.
    pub fn restrict(&self, alg: &ProjectionAlgebra, e_low: usize) -> Result<Self> {
        alg.check_index(e_low)?;
        if !alg.leq(e_low, self.e) {
            return Err(Error::NotBelow(e_low, self.e));
        }
        let f_low = alg.theta_chain(e_low, &[self.p, self.f]);
        debug_assert!(is_linked(alg, self.p, e_low, f_low));
        Ok(Self {
            p: self.p,
            e: e_low,
            f: f_low,
        })
    }
}

/// All linked pairs, ordered by `(p, e, f)`.
pub fn enumerate_linked_pairs(alg: &ProjectionAlgebra) -> Vec<LinkedPair> {
    let n = alg.size();
    let mut out = Vec::new();
    for p in 0..n {
        for e in 0..n {
            for f in 0..n {
                if is_linked(alg, p, e, f) {
                    out.push(LinkedPair { p, e, f });
                }
            }
        }
    }
    out
}
