//! Regular *-biordered sets: the idempotents of a regular *-semigroup with
//! their arrows, basic products and involution.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::ProjectionAlgebra;
use crate::chain_semigroup::{ChainSemigroup, ReducedChain};
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::semigroup::StarSemigroup;

/// A finite *-boset. `e ← f` means `e = ef`, `e → f` means `e = fe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boset {
    size: usize,
    left: Vec<bool>,
    right: Vec<bool>,
    product: Vec<Option<usize>>,
    star: Vec<usize>,
    /// For bosets built from a projection algebra: element `i` is the
    /// idempotent `[[pairs[i].0, pairs[i].1]]`.
    pairs: Option<Vec<(usize, usize)>>,
    labels: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BosetFile {
    pub elements: Vec<String>,
    pub left_arrows: Vec<(usize, usize)>,
    pub right_arrows: Vec<(usize, usize)>,
    pub basic_products: Vec<(usize, usize, usize)>,
    pub star: Vec<usize>,
}

impl Boset {
    fn from_arrows(
        left: Vec<bool>,
        right: Vec<bool>,
        star: Vec<usize>,
        labels: Vec<String>,
        pairs: Option<Vec<(usize, usize)>>,
        mut prod: impl FnMut(usize, usize) -> Result<usize>,
    ) -> Result<Self> {
        let size = star.len();
        let mut product = vec![None; size * size];
        for e in 0..size {
            for f in 0..size {
                let basic = left[e * size + f]
                    || right[e * size + f]
                    || left[f * size + e]
                    || right[f * size + e];
                if basic {
                    product[e * size + f] = Some(prod(e, f)?);
                }
            }
        }
        Ok(Self {
            size,
            left,
            right,
            product,
            star,
            pairs,
            labels,
        })
    }

    /// The boset of idempotents of a table semigroup. Element `i` is the
    /// `i`-th idempotent in increasing id order.
    pub fn of_semigroup(s: &StarSemigroup) -> Result<(Self, Vec<usize>)> {
        let idem = s.idempotents();
        let pos: HashMap<usize, usize> = idem.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = idem.len();
        let mut left = vec![false; k * k];
        let mut right = vec![false; k * k];
        for (i, &e) in idem.iter().enumerate() {
            for (j, &f) in idem.iter().enumerate() {
                left[i * k + j] = s.mul(e, f) == e;
                right[i * k + j] = s.mul(f, e) == e;
            }
        }
        let star = idem
            .iter()
            .map(|&e| {
                pos.get(&s.star(e))
                    .copied()
                    .ok_or_else(|| Error::InvalidSemigroup("star of an idempotent is not idempotent".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = idem.iter().map(|&e| s.label(e)).collect();
        let b = Self::from_arrows(left, right, star, labels, None, |i, j| {
            pos.get(&s.mul(idem[i], idem[j]))
                .copied()
                .ok_or_else(|| Error::InvalidSemigroup("basic product is not idempotent".into()))
        })?;
        Ok((b, idem))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn pairs(&self) -> Option<&[(usize, usize)]> {
        self.pairs.as_deref()
    }

    pub fn index_of_pair(&self, p: usize, q: usize) -> Option<usize> {
        self.pairs.as_ref()?.iter().position(|&x| x == (p, q))
    }

    /// `e ← f`, i.e. `e = ef`.
    pub fn left(&self, e: usize, f: usize) -> bool {
        self.left[e * self.size + f]
    }

    /// `e → f`, i.e. `e = fe`.
    pub fn right(&self, e: usize, f: usize) -> bool {
        self.right[e * self.size + f]
    }

    pub fn is_basic(&self, e: usize, f: usize) -> bool {
        self.product[e * self.size + f].is_some()
    }

    /// `ef` when `(e, f)` is a basic pair.
    pub fn product(&self, e: usize, f: usize) -> Option<usize> {
        self.product[e * self.size + f]
    }

    pub fn star(&self, e: usize) -> usize {
        self.star[e]
    }

    /// Star-fixed elements, increasing.
    pub fn projections(&self) -> Vec<usize> {
        (0..self.size).filter(|&e| self.star[e] == e).collect()
    }

    /// `M(e, f) = {g : g = ge and g = fg}`.
    pub fn mixed_lower(&self, e: usize, f: usize) -> Vec<usize> {
        (0..self.size)
            .filter(|&g| self.left(g, e) && self.right(g, f))
            .collect()
    }

    /// Sandwich set from the partial products alone: the elements of
    /// `M(e, f)` above every other under `h ≼ g ⇔ eh → eg and hf ← gf`.
    pub fn sandwich_abstract(&self, e: usize, f: usize) -> Vec<usize> {
        let m = self.mixed_lower(e, f);
        let pe = |g: usize| self.product(e, g).expect("g ← e makes (e, g) basic");
        let pf = |g: usize| self.product(g, f).expect("g → f makes (g, f) basic");
        m.iter()
            .copied()
            .filter(|&g| {
                m.iter()
                    .all(|&h| self.right(pe(h), pe(g)) && self.left(pf(h), pf(g)))
            })
            .collect()
    }

    /// The unique `g ∈ S(p, q)` with `pg` and `gq` projections.
    pub fn e_abstract(&self, p: usize, q: usize) -> Result<usize> {
        let found: Vec<usize> = self
            .sandwich_abstract(p, q)
            .into_iter()
            .filter(|&g| {
                let pg = self.product(p, g);
                let gq = self.product(g, q);
                matches!((pg, gq), (Some(a), Some(b)) if self.star[a] == a && self.star[b] == b)
            })
            .collect();
        match found.as_slice() {
            [g] => Ok(*g),
            _ => Err(Error::Mismatch(format!(
                "{} candidates for e({}, {})",
                found.len(),
                self.labels[p],
                self.labels[q]
            ))),
        }
    }

    /// Arrows are pre-orders, `⇆` is antisymmetric, and SB1–SB3 hold.
    pub fn validate(&self) -> ValidationReport {
        let n = self.size;
        let mut rep = ValidationReport::new();
        for e in 0..n {
            if !self.left(e, e) || !self.right(e, e) {
                rep.push("arrow-reflexive", &[e]);
            }
            if self.star[self.star[e]] != e {
                rep.push("SB1", &[e]);
            }
            for f in 0..n {
                if e != f && self.left(e, f) && self.right(e, f) && self.left(f, e) && self.right(f, e) {
                    rep.push("double-arrow-antisymmetric", &[e, f]);
                }
                for g in 0..n {
                    if self.left(e, f) && self.left(f, g) && !self.left(e, g) {
                        rep.push("left-arrow-transitive", &[e, f, g]);
                    }
                    if self.right(e, f) && self.right(f, g) && !self.right(e, g) {
                        rep.push("right-arrow-transitive", &[e, f, g]);
                    }
                }
                if let Some(ef) = self.product(e, f) {
                    match self.product(self.star[f], self.star[e]) {
                        Some(x) if x == self.star[ef] => {}
                        _ => rep.push("SB2", &[e, f]),
                    }
                }
            }
            self.check_tau(e, &mut rep);
        }
        rep
    }

    /// τ-commutativity with `s` the projection `→`-equivalent to `e` and `t`
    /// the projection `←`-equivalent to it.
    fn check_tau(&self, e: usize, rep: &mut ValidationReport) {
        let projections = self.projections();
        let s: Vec<usize> = projections
            .iter()
            .copied()
            .filter(|&s| self.right(e, s) && self.right(s, e))
            .collect();
        let t: Vec<usize> = projections
            .iter()
            .copied()
            .filter(|&t| self.left(e, t) && self.left(t, e))
            .collect();
        let (&[s], &[t]) = (s.as_slice(), t.as_slice()) else {
            rep.push("SB3-projections", &[e]);
            return;
        };
        let es = self.star[e];
        for g in 0..self.size {
            if !(self.left(g, e) && self.right(g, e)) {
                continue;
            }
            let lhs = self
                .product(g, s)
                .and_then(|gs| self.product(es, gs));
            let rhs = self
                .product(t, g)
                .and_then(|tg| self.product(tg, es));
            if lhs.is_none() || lhs != rhs {
                rep.push("SB3", &[e, g]);
            }
        }
    }

    pub fn to_file(&self) -> BosetFile {
        let n = self.size;
        let mut left_arrows = Vec::new();
        let mut right_arrows = Vec::new();
        let mut basic_products = Vec::new();
        for e in 0..n {
            for f in 0..n {
                if self.left(e, f) {
                    left_arrows.push((e, f));
                }
                if self.right(e, f) {
                    right_arrows.push((e, f));
                }
                if let Some(x) = self.product(e, f) {
                    basic_products.push((e, f, x));
                }
            }
        }
        BosetFile {
            elements: self.labels.clone(),
            left_arrows,
            right_arrows,
            basic_products,
            star: self.star.clone(),
        }
    }
}

/// The boset of the chain semigroup: elements are the friendly pairs
/// `(p, q)`, ordered lexicographically, with the closed-form arrows and
/// products.
pub fn boset_of(alg: &ProjectionAlgebra) -> Boset {
    let n = alg.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .filter(|&(p, q)| alg.friendly(p, q))
        .collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let k = pairs.len();
    let mut left = vec![false; k * k];
    let mut right = vec![false; k * k];
    for (i, &(p, q)) in pairs.iter().enumerate() {
        for (j, &(r, s)) in pairs.iter().enumerate() {
            left[i * k + j] = alg.leq(q, s);
            right[i * k + j] = alg.leq(p, r);
        }
    }
    let star = pairs.iter().map(|&(p, q)| index[&(q, p)]).collect();
    let labels = pairs
        .iter()
        .map(|&(p, q)| {
            if p == q {
                alg.label(p)
            } else {
                format!("[[{},{}]]", alg.label(p), alg.label(q))
            }
        })
        .collect();
    let prod = |i: usize, j: usize| -> Result<usize> {
        let ((p, q), (r, s)) = (pairs[i], pairs[j]);
        let a = alg.theta_chain(r, &[q, p]);
        let b = alg.theta_chain(q, &[r, s]);
        index
            .get(&(a, b))
            .copied()
            .ok_or_else(|| Error::Mismatch(format!("basic product ({a},{b}) is not friendly")))
    };
    Boset::from_arrows(left, right, star, labels, Some(pairs.clone()), prod)
        .expect("basic products of a valid algebra are friendly pairs")
}

/// The chain for a friendly pair.
pub fn pair_chain(handle: &ChainSemigroup, (p, q): (usize, usize)) -> Result<ReducedChain> {
    if p == q {
        Ok(handle.projection(p))
    } else {
        handle.chain(&[p, q])
    }
}

/// `S(e, f) = {g : e g f = e f and f g e = g}` with products taken in the
/// chain semigroup. Indices refer to `b = boset_of(handle.algebra())`.
pub fn sandwich_set(handle: &ChainSemigroup, b: &Boset, e: usize, f: usize) -> Result<Vec<usize>> {
    let pairs = b
        .pairs()
        .ok_or_else(|| Error::Mismatch("boset has no pair encoding".into()))?;
    let chains = pairs
        .iter()
        .map(|&x| pair_chain(handle, x))
        .collect::<Result<Vec<_>>>()?;
    let (ce, cf) = (&chains[e], &chains[f]);
    let ef = handle.product(ce, cf)?;
    let mut out = Vec::new();
    for (g, cg) in chains.iter().enumerate() {
        if handle.product_all(&[ce.clone(), cg.clone(), cf.clone()])? == ef
            && handle.product_all(&[cf.clone(), cg.clone(), ce.clone()])? == *cg
        {
            out.push(g);
        }
    }
    Ok(out)
}

/// `(p θ_q, q θ_p)`, the friendly pair of `q ⊛ p`.
pub fn e_of(alg: &ProjectionAlgebra, p: usize, q: usize) -> (usize, usize) {
    (alg.apply(p, q), alg.apply(q, p))
}

/// Reads a projection algebra off a boset: the projections are the
/// star-fixed elements and `q θ_p = p · e(p, q)`.
pub fn projection_algebra_of_boset(b: &Boset) -> Result<ProjectionAlgebra> {
    let proj = b.projections();
    let pos: HashMap<usize, usize> = proj.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let m = proj.len();
    let mut theta = vec![0; m * m];
    for (i, &p) in proj.iter().enumerate() {
        for (j, &q) in proj.iter().enumerate() {
            let e = b.e_abstract(p, q)?;
            let x = b
                .product(p, e)
                .ok_or_else(|| Error::Mismatch("p e(p,q) undefined".into()))?;
            theta[i * m + j] = *pos
                .get(&x)
                .ok_or_else(|| Error::Mismatch("p e(p,q) is not a projection".into()))?;
        }
    }
    let labels = proj.iter().map(|&e| b.label(e).to_string()).collect();
    ProjectionAlgebra::from_flat(m, theta)?.with_labels(labels)
}

/// Checks that `[[p, q]] ↦ pq` is an isomorphism from `boset_of(alg)` onto
/// the idempotents of `s`, preserving arrows, basic pairs, products and
/// star. Returns the map into element ids of `s`.
pub fn compare_with_semigroup_boset(alg: &ProjectionAlgebra, s: &StarSemigroup) -> Result<Vec<usize>> {
    let (q_alg, emb) = s.projection_algebra_unchecked();
    if q_alg.flat_table() != alg.flat_table() {
        return Err(Error::Mismatch("projection algebra of the semigroup differs".into()));
    }
    let ours = boset_of(alg);
    let (theirs, idem) = Boset::of_semigroup(s)?;
    let pos: HashMap<usize, usize> = idem.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let pairs = ours.pairs().expect("pair encoding");
    let mut map = Vec::with_capacity(pairs.len());
    for &(p, q) in pairs {
        let x = s.mul(emb[p], emb[q]);
        let i = *pos.get(&x).ok_or_else(|| {
            Error::Mismatch(format!("image of [[{p},{q}]] is not idempotent"))
        })?;
        map.push(i);
    }
    let mut hit = vec![false; theirs.size()];
    for &i in &map {
        if std::mem::replace(&mut hit[i], true) {
            return Err(Error::Mismatch(format!("map is not injective at {}", theirs.label(i))));
        }
    }
    if ours.size() != theirs.size() {
        return Err(Error::Mismatch(format!(
            "{} pairs but {} idempotents",
            ours.size(),
            theirs.size()
        )));
    }
    let describe = |e: usize, f: usize| format!("({}, {})", ours.label(e), ours.label(f));
    for e in 0..ours.size() {
        if map[ours.star(e)] != theirs.star(map[e]) {
            return Err(Error::Mismatch(format!("star at {}", ours.label(e))));
        }
        for f in 0..ours.size() {
            let (a, b) = (map[e], map[f]);
            if ours.left(e, f) != theirs.left(a, b) || ours.right(e, f) != theirs.right(a, b) {
                return Err(Error::Mismatch(format!("arrows at {}", describe(e, f))));
            }
            match (ours.product(e, f), theirs.product(a, b)) {
                (None, None) => {}
                (Some(x), Some(y)) if map[x] == y => {}
                _ => return Err(Error::Mismatch(format!("basic product at {}", describe(e, f)))),
            }
        }
    }
    Ok(map.into_iter().map(|i| idem[i]).collect())
}
