//! The free projection-generated regular *-semigroup of a projection
//! algebra, with elements encoded as endpoints plus a fundamental-group word.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::ProjectionAlgebra;
use crate::chains::{enumerate_linked_pairs, reduce_vertices, Path};
use crate::error::{Error, Result};
use crate::semigroup::StarSemigroup;
use crate::topology::{
    complex_kp_prime, pi1_presentation, tietze_simplify, Budgets, Classification, Complex2,
    ComponentPi1, GroupWord, Simplified, WordSolver,
};

/// A reduced chain from `dom` to `cod`: the homotopy class of
/// `tree(base→dom)⁻¹ · walk · tree(base→cod)` recorded as a word in the
/// component's simplified fundamental group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedChain {
    pub component: usize,
    pub dom: usize,
    pub cod: usize,
    pub word: GroupWord,
}

#[derive(Debug, Clone)]
pub struct ComponentData {
    pub vertices: Vec<usize>,
    pub pi1: ComponentPi1,
    pub simplified: Simplified,
    pub solver: WordSolver,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum SizeVerdict {
    Finite(usize),
    Infinite,
    Unknown,
}

impl fmt::Display for SizeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeVerdict::Finite(n) => write!(f, "{n}"),
            SizeVerdict::Infinite => write!(f, "Infinite"),
            SizeVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Closure sizes above this are not cross-checked by enumeration.
const CLOSURE_CHECK_LIMIT: usize = 100_000;

#[derive(Debug, Clone)]
pub struct ChainSemigroup {
    alg: ProjectionAlgebra,
    complex: Complex2,
    component_of: Vec<usize>,
    components: Vec<ComponentData>,
    budgets: Budgets,
}

impl ChainSemigroup {
    pub fn new(alg: &ProjectionAlgebra) -> Result<Self> {
        Self::with_budgets(alg, Budgets::default())
    }

    pub fn with_budgets(alg: &ProjectionAlgebra, budgets: Budgets) -> Result<Self> {
        let complex = complex_kp_prime(alg)?;
        let comps = complex.components();
        let mut component_of = vec![0; alg.size()];
        let mut components = Vec::with_capacity(comps.len());
        for (i, vertices) in comps.into_iter().enumerate() {
            for &v in &vertices {
                component_of[v] = i;
            }
            let pi1 = pi1_presentation(&complex, vertices[0]);
            let simplified = tietze_simplify(&pi1.presentation, budgets);
            let solver = WordSolver::new(&simplified);
            components.push(ComponentData {
                vertices,
                pi1,
                simplified,
                solver,
            });
        }
        Ok(Self {
            alg: alg.clone(),
            complex,
            component_of,
            components,
            budgets,
        })
    }

    pub fn algebra(&self) -> &ProjectionAlgebra {
        &self.alg
    }

    pub fn complex(&self) -> &Complex2 {
        &self.complex
    }

    pub fn components(&self) -> &[ComponentData] {
        &self.components
    }

    pub fn component_of(&self, p: usize) -> usize {
        self.component_of[p]
    }

    /// Whether every component has a decisive word solver.
    pub fn is_decisive(&self) -> bool {
        self.components.iter().all(|c| c.solver.is_decisive())
    }

    pub fn projection(&self, p: usize) -> ReducedChain {
        ReducedChain {
            component: self.component_of[p],
            dom: p,
            cod: p,
            word: GroupWord::empty(),
        }
    }

    pub fn projections(&self) -> Vec<ReducedChain> {
        (0..self.alg.size()).map(|p| self.projection(p)).collect()
    }

    pub fn normalize(&self, path: &Path) -> Result<ReducedChain> {
        self.normalize_walk(path.vertices())
    }

    /// Checks friendliness, then normalizes.
    pub fn chain(&self, vertices: &[usize]) -> Result<ReducedChain> {
        let path = Path::new(&self.alg, vertices.to_vec())?;
        self.normalize(&path)
    }

    fn normalize_walk(&self, walk: &[usize]) -> Result<ReducedChain> {
        let reduced = reduce_vertices(walk);
        let (dom, cod) = (reduced[0], *reduced.last().expect("nonempty"));
        let component = self.component_of[dom];
        let data = &self.components[component];
        let raw = data.pi1.walk_word(&reduced);
        let word = data
            .solver
            .normalize(&data.simplified.to_new(&raw))
            .ok_or(Error::UndecidedEquality(component))?;
        Ok(ReducedChain {
            component,
            dom,
            cod,
            word,
        })
    }

    fn check(&self, c: &ReducedChain) -> Result<()> {
        let n = self.alg.size();
        if c.dom >= n
            || c.cod >= n
            || c.component >= self.components.len()
            || self.component_of[c.dom] != c.component
            || self.component_of[c.cod] != c.component
            || c.word.rank_bound() > self.components[c.component].simplified.presentation.generators
        {
            return Err(Error::ForeignChain);
        }
        Ok(())
    }

    /// A reduced walk representing `c`.
    pub fn expand(&self, c: &ReducedChain) -> Path {
        let data = &self.components[c.component];
        let mut walk = data.pi1.tree_path(c.dom);
        walk.reverse();
        for &l in data.simplified.to_original(&c.word).letters() {
            let g = crate::topology::word::gen_of(l);
            walk.extend(data.pi1.generator_loop(g, l < 0));
        }
        walk.extend(data.pi1.tree_path(c.cod));
        Path::from_trusted(reduce_vertices(&walk))
    }

    /// `c ⊛ d`: restrict `c` on the right to `dom(d) θ_{cod(c)}`, restrict `d`
    /// on the left to `cod(c) θ_{dom(d)}`, and join.
    pub fn product(&self, c: &ReducedChain, d: &ReducedChain) -> Result<ReducedChain> {
        self.check(c)?;
        self.check(d)?;
        let (p, q) = (c.cod, d.dom);
        let p1 = self.alg.apply(q, p);
        let q1 = self.alg.apply(p, q);
        let left = self.expand(c).restrict_right(&self.alg, p1)?;
        let right = self.expand(d).restrict_left(&self.alg, q1)?;
        let mut walk = left.into_vertices();
        walk.extend(right.into_vertices());
        self.normalize_walk(&walk)
    }

    pub fn product_all(&self, xs: &[ReducedChain]) -> Result<ReducedChain> {
        let (first, rest) = xs.split_first().ok_or(Error::EmptyPath)?;
        rest.iter().try_fold(first.clone(), |acc, x| self.product(&acc, x))
    }

    /// Reversal: swap the endpoints and invert the word.
    pub fn star(&self, c: &ReducedChain) -> Result<ReducedChain> {
        self.check(c)?;
        let data = &self.components[c.component];
        let word = data
            .solver
            .normalize(&c.word.inverse())
            .ok_or(Error::UndecidedEquality(c.component))?;
        Ok(ReducedChain {
            component: c.component,
            dom: c.cod,
            cod: c.dom,
            word,
        })
    }

    pub fn is_projection(&self, c: &ReducedChain) -> bool {
        c.dom == c.cod && c.word.is_empty()
    }

    pub fn is_idempotent(&self, c: &ReducedChain) -> Result<bool> {
        Ok(&self.product(c, c)? == c)
    }

    /// `Σ v_i² · |G_i|` over components when every group is finite.
    pub fn formula_size(&self) -> SizeVerdict {
        let mut total = 0usize;
        let mut unknown = false;
        for c in &self.components {
            let v = c.vertices.len();
            match c.simplified.classification {
                Classification::Free(r) if r > 0 => return SizeVerdict::Infinite,
                Classification::Unknown => {
                    if c.simplified.abelianization.free_rank > 0 {
                        return SizeVerdict::Infinite;
                    }
                    unknown = true;
                }
                cl => total += v * v * cl.order().expect("finite classification"),
            }
        }
        if unknown {
            SizeVerdict::Unknown
        } else {
            SizeVerdict::Finite(total)
        }
    }

    /// Size, cross-checked against closure enumeration when finite.
    pub fn size(&self) -> Result<SizeVerdict> {
        let verdict = self.formula_size();
        if let SizeVerdict::Finite(n) = verdict {
            if n <= CLOSURE_CHECK_LIMIT {
                let found = self.enumerate(n)?.len();
                if found != n {
                    return Err(Error::Mismatch(format!(
                        "component formula gives {n} elements, closure gives {found}"
                    )));
                }
            }
        }
        Ok(verdict)
    }

    /// All elements, by closing the projections under right multiplication
    /// by projections. Sorted.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<ReducedChain>> {
        let gens = self.projections();
        if gens.len() > cap {
            return Err(Error::CapExceeded(cap));
        }
        let mut seen: HashSet<ReducedChain> = gens.iter().cloned().collect();
        let mut out = gens.clone();
        let mut i = 0;
        while i < out.len() {
            let x = out[i].clone();
            for g in &gens {
                let y = self.product(&x, g)?;
                if !seen.contains(&y) {
                    if out.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    seen.insert(y.clone());
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort();
        Ok(out)
    }

    /// The simplified fundamental group of `p`'s component, based at `p`.
    pub fn maximal_subgroup(&self, p: usize) -> Result<Simplified> {
        self.alg.check_index(p)?;
        let pi1 = pi1_presentation(&self.complex, p);
        Ok(tietze_simplify(&pi1.presentation, self.budgets))
    }

    /// Extends a map from projections to projections of `s` to a
    /// homomorphism on chains. `phi[p]` is an element id of `s`.
    pub fn extend_morphism(&self, s: &StarSemigroup, phi: &[usize]) -> Result<ChainMorphism> {
        let n = self.alg.size();
        if phi.len() != n {
            return Err(Error::NotAMorphism(format!(
                "{} images for {n} projections",
                phi.len()
            )));
        }
        if let Some(&x) = phi.iter().find(|&&x| x >= s.size() || !s.is_projection(x)) {
            return Err(Error::NotAMorphism(format!("{x} is not a projection of the target")));
        }
        let (target, embedding) = s.projection_algebra_unchecked();
        let position: HashMap<usize, usize> =
            embedding.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let phi_q: Vec<usize> = phi.iter().map(|x| position[x]).collect();
        if let Some(why) = self.alg.morphism_violation(&target, &phi_q) {
            return Err(Error::NotAMorphism(why));
        }
        // The relations generating chain equivalence must hold in the target.
        for p in 0..n {
            for q in 0..n {
                if self.alg.friendly(p, q) && s.mul_all(&[phi[p], phi[q], phi[p]]) != phi[p] {
                    return Err(Error::NotAMorphism(format!("backtrack ({p},{q},{p})")));
                }
            }
        }
        for lp in enumerate_linked_pairs(&self.alg) {
            let (lambda, rho) = lp.lambda_rho(&self.alg);
            let ev = |path: &Path| s.mul_all(&path.vertices().iter().map(|&v| phi[v]).collect::<Vec<_>>());
            if ev(&lambda) != ev(&rho) {
                return Err(Error::NotAMorphism(format!(
                    "linked pair ({},{}) over {}",
                    lp.e, lp.f, lp.p
                )));
            }
        }
        Ok(ChainMorphism {
            images: phi.to_vec(),
        })
    }

    /// Cayley table of a finite chain semigroup, with the elements in
    /// [`ChainSemigroup::enumerate`] order.
    pub fn to_star_semigroup(&self, cap: usize) -> Result<(StarSemigroup, Vec<ReducedChain>)> {
        let elements = self.enumerate(cap)?;
        let index: HashMap<&ReducedChain, usize> =
            elements.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let size = elements.len();
        let mut mult = Vec::with_capacity(size * size);
        for a in &elements {
            for b in &elements {
                mult.push(index[&self.product(a, b)?]);
            }
        }
        let star = elements
            .iter()
            .map(|c| self.star(c).map(|x| index[&x]))
            .collect::<Result<Vec<_>>>()?;
        let labels = elements.iter().map(|c| self.display(c)).collect();
        let s = StarSemigroup::from_flat(size, mult, star)?.with_labels(labels)?;
        Ok((s, elements))
    }

    /// `[[p1,...,pk]]` using algebra labels and a representative walk.
    pub fn display(&self, c: &ReducedChain) -> String {
        let labels: Vec<String> = self
            .expand(c)
            .vertices()
            .iter()
            .map(|&v| self.alg.label(v))
            .collect();
        format!("[[{}]]", labels.join(","))
    }
}

/// A homomorphism from chains to a concrete semigroup, given by the images
/// of the projections.
#[derive(Debug, Clone)]
pub struct ChainMorphism {
    pub images: Vec<usize>,
}

impl ChainMorphism {
    pub fn apply(&self, handle: &ChainSemigroup, s: &StarSemigroup, c: &ReducedChain) -> usize {
        let walk: Vec<usize> = handle
            .expand(c)
            .vertices()
            .iter()
            .map(|&v| self.images[v])
            .collect();
        s.mul_all(&walk)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const P: usize = 0;
    const Q: usize = 1;
    const R: usize = 2;
    const E: usize = 3;

    #[test]
    fn kinyon_identities() {
        let h = ChainSemigroup::new(&fixtures::kinyon()).unwrap();
        assert_eq!(h.chain(&[P, Q, R]).unwrap(), h.chain(&[P, R]).unwrap());
        assert_eq!(h.chain(&[Q, P, R]).unwrap(), h.chain(&[Q, R]).unwrap());
        let re = h.product(&h.projection(R), &h.projection(E)).unwrap();
        assert_eq!(re, h.chain(&[R, Q]).unwrap());
        assert_eq!(h.size().unwrap(), SizeVerdict::Finite(10));
        let all = h.enumerate(100).unwrap();
        assert_eq!(all.len(), 10);
        assert_eq!(all.iter().filter(|c| h.is_projection(c)).count(), 4);
        assert!(all.iter().all(|c| h.is_idempotent(c).unwrap()));
    }

    #[test]
    fn square_bands() {
        let h2 = ChainSemigroup::new(&fixtures::square_band(2)).unwrap();
        assert_eq!(h2.size().unwrap(), SizeVerdict::Finite(4));
        let pq = h2.chain(&[0, 1]).unwrap();
        assert_eq!(h2.expand(&pq).vertices(), &[0, 1]);
        let h3 = ChainSemigroup::new(&fixtures::square_band(3)).unwrap();
        assert_eq!(h3.size().unwrap(), SizeVerdict::Infinite);
        let g = h3.maximal_subgroup(1).unwrap();
        assert_eq!(g.classification, Classification::Free(1));
        assert!(matches!(h3.enumerate(50), Err(Error::CapExceeded(50))));
    }

    #[test]
    fn projection_laws() {
        let alg = fixtures::kinyon();
        let h = ChainSemigroup::new(&alg).unwrap();
        for p in 0..4 {
            for q in 0..4 {
                let pqp = h
                    .product_all(&[h.projection(p), h.projection(q), h.projection(p)])
                    .unwrap();
                assert_eq!(pqp, h.projection(alg.apply(q, p)));
                if alg.friendly(p, q) {
                    let pq = h.product(&h.projection(p), &h.projection(q)).unwrap();
                    assert_eq!(pq, h.chain(&[p, q]).unwrap());
                    assert_eq!(h.star(&pq).unwrap(), h.chain(&[q, p]).unwrap());
                }
            }
        }
    }

    #[test]
    fn trivial_algebra() {
        let h = ChainSemigroup::new(&fixtures::trivial()).unwrap();
        assert_eq!(h.enumerate(1).unwrap(), vec![h.projection(0)]);
        assert_eq!(h.expand(&h.projection(0)).vertices(), &[0]);
    }

    #[test]
    fn foreign_chain_rejected() {
        let h = ChainSemigroup::new(&fixtures::trivial()).unwrap();
        let bogus = ReducedChain {
            component: 0,
            dom: 3,
            cod: 0,
            word: GroupWord::empty(),
        };
        assert!(matches!(h.product(&bogus, &bogus), Err(Error::ForeignChain)));
    }
}
