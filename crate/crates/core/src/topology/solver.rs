use super::tietze::{Classification, Simplified};
use super::word::GroupWord;

/// Canonical forms for words in a simplified presentation, when the group
/// was recognised.
#[derive(Debug, Clone)]
pub struct WordSolver {
    kind: SolverKind,
}

#[derive(Debug, Clone)]
enum SolverKind {
    Trivial,
    Free,
    Finite(super::coset::CosetTable),
    Undecided,
}

impl WordSolver {
    pub fn new(s: &Simplified) -> Self {
        let kind = match (s.classification, &s.cosets) {
            (Classification::Trivial, _) => SolverKind::Trivial,
            (Classification::Free(_), _) => SolverKind::Free,
            (Classification::Finite(_), Some(t)) => SolverKind::Finite(t.clone()),
            _ => SolverKind::Undecided,
        };
        Self { kind }
    }

    pub fn is_decisive(&self) -> bool {
        !matches!(self.kind, SolverKind::Undecided)
    }

    /// Canonical word equal to `w`, or `None` when equality is undecided.
    pub fn normalize(&self, w: &GroupWord) -> Option<GroupWord> {
        match &self.kind {
            SolverKind::Trivial => Some(GroupWord::empty()),
            SolverKind::Free => Some(w.free_reduce()),
            SolverKind::Finite(t) => Some(t.representative(t.element(w)).clone()),
            SolverKind::Undecided => None,
        }
    }

    pub fn equal(&self, a: &GroupWord, b: &GroupWord) -> Option<bool> {
        Some(self.normalize(a)? == self.normalize(b)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::presentation::GroupPresentation;
    use crate::topology::tietze::{tietze_simplify, Budgets};

    fn solver(gens: usize, rels: &[&[i32]]) -> WordSolver {
        let p = GroupPresentation::new(gens, rels.iter().map(|r| GroupWord(r.to_vec())).collect());
        WordSolver::new(&tietze_simplify(&p, Budgets::default()))
    }

    #[test]
    fn free_rank_one() {
        let s = solver(1, &[]);
        assert_eq!(s.normalize(&GroupWord(vec![1, -1, 1])), Some(GroupWord(vec![1])));
    }

    #[test]
    fn trivial_group() {
        let s = solver(2, &[&[1], &[2]]);
        assert_eq!(s.normalize(&GroupWord(vec![1, 2, 2])), Some(GroupWord::empty()));
    }

    #[test]
    fn cyclic_of_order_three() {
        let s = solver(1, &[&[1, 1, 1]]);
        assert_eq!(s.equal(&GroupWord(vec![1, 1]), &GroupWord(vec![-1])), Some(true));
        assert_eq!(s.equal(&GroupWord(vec![1]), &GroupWord(vec![-1])), Some(false));
    }

    #[test]
    fn undecided_is_reported() {
        let p = GroupPresentation::new(2, vec![GroupWord(vec![1, 2, -1, -2])]);
        let s = WordSolver::new(&tietze_simplify(
            &p,
            Budgets {
                cosets: 100,
                ..Budgets::default()
            },
        ));
        assert!(!s.is_decisive());
        assert_eq!(s.normalize(&GroupWord(vec![1])), None);
    }
}
