//! Friendliness graphs, linked-pair complexes and their fundamental groups.

pub mod complex;
pub mod coset;
pub mod presentation;
pub mod snf;
pub mod solver;
pub mod tietze;
pub mod word;

pub use coset::DEFAULT_COSET_BUDGET;
pub use complex::{complex_kp, complex_kp_prime, friendliness_graph, Cell, Complex2, Which};
pub use presentation::{pi1_presentation, ComponentPi1, GroupPresentation};
pub use snf::Abelianization;
pub use solver::WordSolver;
pub use tietze::{tietze_simplify, Budgets, Classification, Simplified};
pub use word::GroupWord;
