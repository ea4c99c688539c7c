use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::coset::{enumerate_cosets, CosetTable};
use super::presentation::GroupPresentation;
use super::snf::{abelianization, Abelianization};
use super::word::{gen_of, GroupWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Classification {
    Trivial,
    Free(usize),
    Finite(usize),
    Unknown,
}

impl Classification {
    /// Order when finite (the trivial group has order 1).
    pub fn order(&self) -> Option<usize> {
        match *self {
            Classification::Trivial | Classification::Free(0) => Some(1),
            Classification::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_decisive(&self) -> bool {
        !matches!(self, Classification::Unknown)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Trivial => write!(f, "trivial"),
            Classification::Free(r) => write!(f, "free of rank {r}"),
            Classification::Finite(n) => write!(f, "finite of order {n}"),
            Classification::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    /// Maximum number of generator eliminations.
    pub tietze_steps: usize,
    /// Longest relator allowed to arise from a substitution.
    pub max_relator_length: usize,
    pub cosets: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            tietze_steps: 10_000,
            max_relator_length: 10_000,
            cosets: super::coset::DEFAULT_COSET_BUDGET,
        }
    }
}

/// A simplified presentation and how it relates to the original.
#[derive(Debug, Clone)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// Original generator `g` equals `images[g]` in the new generators.
    pub images: Vec<GroupWord>,
    /// New generator `j` is original generator `survivors[j]`.
    pub survivors: Vec<usize>,
    pub classification: Classification,
    pub abelianization: Abelianization,
    pub cosets: Option<CosetTable>,
}

impl Simplified {
    /// Rewrites a word over the original generators in the new ones.
    pub fn to_new(&self, w: &GroupWord) -> GroupWord {
        w.map(&self.images)
    }

    /// A word over the original generators for a word in the new ones.
    pub fn to_original(&self, w: &GroupWord) -> GroupWord {
        let lift: Vec<GroupWord> = self
            .survivors
            .iter()
            .map(|&g| GroupWord::generator(g))
            .collect();
        w.map(&lift)
    }
}

/// Free and cyclic reduction, duplicate removal, and elimination of
/// generators occurring exactly once in some relator, then classification.
pub fn tietze_simplify(p: &GroupPresentation, budgets: Budgets) -> Simplified {
    let n = p.generators;
    let mut alive = vec![true; n];
    let mut images: Vec<GroupWord> = (0..n).map(GroupWord::generator).collect();
    let mut relators: Vec<GroupWord> = p.relators.clone();
    let mut steps = 0;
    loop {
        relators = tidy(relators);
        if steps >= budgets.tietze_steps {
            break;
        }
        // Shortest relator with a generator that occurs in it exactly once.
        let mut choice: Option<(usize, usize)> = None;
        for (ri, r) in relators.iter().enumerate() {
            if choice.is_some_and(|(cj, _)| relators[cj].len() <= r.len()) {
                continue;
            }
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for &l in r.letters() {
                let g = gen_of(l);
                match counts.iter_mut().find(|(h, _)| *h == g) {
                    Some(e) => e.1 += 1,
                    None => counts.push((g, 1)),
                }
            }
            if let Some(&(g, _)) = counts.iter().filter(|(_, c)| *c == 1).min_by_key(|(g, _)| *g) {
                choice = Some((ri, g));
            }
        }
        let Some((ri, g)) = choice else { break };
        let r = relators.remove(ri);
        // Rotate so that g comes first: r ~ g^ε w, hence g = w^{-ε}.
        let pos = r.letters().iter().position(|&l| gen_of(l) == g).expect("present");
        let l = r.letters()[pos];
        let rest: Vec<i32> = r.letters()[pos + 1..]
            .iter()
            .chain(r.letters()[..pos].iter())
            .copied()
            .collect();
        let w = GroupWord::from_letters(rest);
        let value = if l > 0 { w.inverse() } else { w };
        let substituted: Vec<GroupWord> = relators.iter().map(|x| x.substitute(g, &value)).collect();
        if substituted.iter().any(|x| x.len() > budgets.max_relator_length) {
            relators.insert(ri, r);
            break;
        }
        relators = substituted;
        for img in images.iter_mut() {
            *img = img.substitute(g, &value);
        }
        alive[g] = false;
        steps += 1;
    }
    // Renumber the surviving generators.
    let survivors: Vec<usize> = (0..n).filter(|&g| alive[g]).collect();
    let mut renumber: Vec<GroupWord> = vec![GroupWord::empty(); n];
    for (j, &g) in survivors.iter().enumerate() {
        renumber[g] = GroupWord::generator(j);
    }
    let images: Vec<GroupWord> = images.iter().map(|w| w.map(&renumber)).collect();
    let relators: Vec<GroupWord> = relators.iter().map(|w| w.map(&renumber)).collect();
    let mut presentation = GroupPresentation::new(survivors.len(), relators);
    presentation.basepoint = p.basepoint;
    presentation.generator_edges = survivors
        .iter()
        .filter_map(|&g| p.generator_edges.get(g).copied())
        .collect();
    let abelianization = abelianization(&presentation);
    let (classification, cosets) = classify(&presentation, budgets.cosets);
    Simplified {
        presentation,
        images,
        survivors,
        classification,
        abelianization,
        cosets,
    }
}

fn classify(p: &GroupPresentation, budget: usize) -> (Classification, Option<CosetTable>) {
    if p.generators == 0 {
        return (Classification::Trivial, None);
    }
    if p.relators.is_empty() {
        return (Classification::Free(p.generators), None);
    }
    match enumerate_cosets(p, budget) {
        Some(t) if t.order() == 1 => (Classification::Trivial, Some(t)),
        Some(t) => (Classification::Finite(t.order()), Some(t)),
        None => (Classification::Unknown, None),
    }
}

fn tidy(relators: Vec<GroupWord>) -> Vec<GroupWord> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in relators {
        let r = r.cyclic_reduce();
        if r.is_empty() {
            continue;
        }
        if seen.insert(r.cyclic_canonical()) {
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: usize, rels: &[&[i32]]) -> GroupPresentation {
        GroupPresentation::new(gens, rels.iter().map(|r| GroupWord(r.to_vec())).collect())
    }

    #[test]
    fn single_generator_killed() {
        let s = tietze_simplify(&pres(1, &[&[1]]), Budgets::default());
        assert_eq!(s.classification, Classification::Trivial);
        assert_eq!(s.images, vec![GroupWord::empty()]);
    }

    #[test]
    fn free_input_unchanged() {
        let s = tietze_simplify(&pres(3, &[]), Budgets::default());
        assert_eq!(s.classification, Classification::Free(3));
        assert_eq!(s.survivors, vec![0, 1, 2]);
        assert_eq!(s.abelianization.free_rank, 3);
    }

    #[test]
    fn elimination_tracks_images() {
        // ⟨a, b, c | a b c^-1, b⟩: b = 1, then c = a.
        let p = pres(3, &[&[1, 2, -3], &[2]]);
        let s = tietze_simplify(&p, Budgets::default());
        assert_eq!(s.classification, Classification::Free(1));
        let a = &s.images[0];
        assert!(s.images[1].is_empty());
        assert_eq!(&s.images[2], a);
        assert_eq!(s.to_new(&GroupWord(vec![1, 2, -3])), GroupWord::empty());
    }

    #[test]
    fn finite_presentation_classified() {
        let s = tietze_simplify(&pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]), Budgets::default());
        assert_eq!(s.classification, Classification::Finite(6));
        assert_eq!(s.abelianization.torsion, vec![2]);
    }

    #[test]
    fn unknown_falls_back_on_abelianization() {
        // ℤ² survives elimination and has relators, so only the budget stops it.
        let p = pres(2, &[&[1, 2, -1, -2]]);
        let s = tietze_simplify(
            &p,
            Budgets {
                cosets: 200,
                ..Budgets::default()
            },
        );
        assert_eq!(s.classification, Classification::Unknown);
        assert_eq!(s.abelianization.free_rank, 2);
    }
}
