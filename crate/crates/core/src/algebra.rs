//! Finite projection algebras stored as dense θ-tables.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A finite projection algebra on `0..size`.
///
/// `theta[p * size + q]` holds `q θ_p`. Operators compose left to right, so
/// `q θ_p θ_r` means "apply θ_p, then θ_r".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionAlgebra {
    size: usize,
    theta: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// On-disk form: `theta[p][q] = q θ_p`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub size: usize,
    pub theta: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ProjectionAlgebra {
    /// Builds an algebra from nested rows (`rows[p][q] = q θ_p`). Only the
    /// shape and index ranges are checked here; use [`validate_axioms`] for
    /// the laws.
    ///
    /// [`validate_axioms`]: ProjectionAlgebra::validate_axioms
    pub fn new(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::MalformedTable("algebra must be nonempty".into()));
        }
        let mut theta = Vec::with_capacity(size * size);
        for (p, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::MalformedTable(format!(
                    "row {p} has length {}, expected {size}",
                    row.len()
                )));
            }
            for (q, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(Error::MalformedTable(format!(
                        "entry ({p},{q}) = {v} out of range"
                    )));
                }
            }
            theta.extend_from_slice(row);
        }
        Self::check_labels(size, &labels)?;
        Ok(Self {
            size,
            theta,
            labels,
        })
    }

    /// Builds from a flat row-major table.
    pub fn from_flat(size: usize, theta: Vec<usize>) -> Result<Self> {
        if size == 0 || theta.len() != size * size {
            return Err(Error::MalformedTable(format!(
                "flat table of length {} does not fit size {size}",
                theta.len()
            )));
        }
        if let Some(i) = theta.iter().position(|&v| v >= size) {
            return Err(Error::MalformedTable(format!(
                "entry ({},{}) = {} out of range",
                i / size,
                i % size,
                theta[i]
            )));
        }
        Ok(Self {
            size,
            theta,
            labels: None,
        })
    }

    fn check_labels(size: usize, labels: &Option<Vec<String>>) -> Result<()> {
        if let Some(l) = labels {
            if l.len() != size {
                return Err(Error::MalformedTable(format!(
                    "{} labels for {size} projections",
                    l.len()
                )));
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        let labels = Some(labels);
        Self::check_labels(self.size, &labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, p: usize) -> String {
        match &self.labels {
            Some(l) => l[p].clone(),
            None => p.to_string(),
        }
    }

    /// Index of the projection carrying `label`, if labels are present.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// `q θ_p`.
    #[inline]
    pub fn apply(&self, q: usize, p: usize) -> usize {
        self.theta[p * self.size + q]
    }

    pub fn row(&self, p: usize) -> &[usize] {
        &self.theta[p * self.size..(p + 1) * self.size]
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.theta
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.theta.chunks(self.size).map(|c| c.to_vec()).collect()
    }

    /// `p ≤ q` iff `p = p θ_q`.
    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.apply(p, q) == p
    }

    /// `p ≤F q` iff `p = q θ_p`.
    #[inline]
    pub fn leq_f(&self, p: usize, q: usize) -> bool {
        self.apply(q, p) == p
    }

    #[inline]
    pub fn friendly(&self, p: usize, q: usize) -> bool {
        self.leq_f(p, q) && self.leq_f(q, p)
    }

    /// Applies `θ_{ops[0]}`, then `θ_{ops[1]}`, ... to `start`.
    pub fn theta_chain(&self, start: usize, ops: &[usize]) -> usize {
        ops.iter().fold(start, |x, &p| self.apply(x, p))
    }

    pub fn check_index(&self, p: usize) -> Result<()> {
        if p < self.size {
            Ok(())
        } else {
            Err(Error::OutOfRange(p))
        }
    }

    /// Exhaustive check of P1–P5.
    pub fn validate_axioms(&self) -> ValidationReport {
        let n = self.size;
        let mut report = ValidationReport::new();
        for p in 0..n {
            if self.apply(p, p) != p {
                report.push("P1", &[p]);
            }
            for q in 0..n {
                let qp = self.apply(q, p);
                if self.apply(qp, p) != qp {
                    report.push("P2", &[p, q]);
                }
                if self.apply(self.apply(p, q), p) != qp {
                    report.push("P3", &[p, q]);
                }
                for r in 0..n {
                    let rp = self.apply(r, p);
                    let rpq = self.apply(rp, q);
                    let rpqp = self.apply(rpq, p);
                    if rpqp != self.apply(r, qp) {
                        report.push("P4", &[p, q, r]);
                    }
                    if self.apply(rpqp, q) != rpq {
                        report.push("P5", &[p, q, r]);
                    }
                }
            }
        }
        report
    }

    pub fn relations(&self) -> Result<ProjectionRelations> {
        let n = self.size;
        let mut leq = vec![false; n * n];
        let mut leq_f = vec![false; n * n];
        for p in 0..n {
            for q in 0..n {
                leq[p * n + q] = self.leq(p, q);
                leq_f[p * n + q] = self.leq_f(p, q);
            }
        }
        let friendly = (0..n * n)
            .map(|i| leq_f[i] && leq_f[(i % n) * n + i / n])
            .collect();
        for p in 0..n {
            if !leq[p * n + p] {
                return Err(Error::NotPartialOrder(format!("{p} is not below itself")));
            }
            for q in 0..n {
                if p != q && leq[p * n + q] && leq[q * n + p] {
                    return Err(Error::NotPartialOrder(format!(
                        "antisymmetry fails for {p}, {q}"
                    )));
                }
                if !leq[p * n + q] {
                    continue;
                }
                for r in 0..n {
                    if leq[q * n + r] && !leq[p * n + r] {
                        return Err(Error::NotPartialOrder(format!(
                            "transitivity fails for {p} <= {q} <= {r}"
                        )));
                    }
                }
            }
        }
        Ok(ProjectionRelations {
            size: n,
            leq,
            leq_f,
            friendly,
        })
    }

    /// Exhaustive check of PA1–PA5 and both composite identities for θ-words
    /// of length `1..=max_k`. A valid algebra must produce an empty report.
    pub fn check_derived_laws(&self, max_k: usize) -> ValidationReport {
        let n = self.size;
        let mut report = ValidationReport::new();
        for p in 0..n {
            for q in 0..n {
                if !self.friendly(self.apply(p, q), self.apply(q, p)) {
                    report.push("PA1", &[p, q]);
                }
                if self.leq(p, q) {
                    if !self.leq_f(p, q) {
                        report.push("PA3", &[p, q]);
                    }
                    for x in 0..n {
                        let xp = self.apply(x, p);
                        if self.apply(xp, q) != xp || self.apply(self.apply(x, q), p) != xp {
                            report.push("PA4", &[p, q, x]);
                        }
                    }
                }
                if self.leq_f(p, q) {
                    for x in 0..n {
                        if self.theta_chain(x, &[p, q, p]) != self.apply(x, p) {
                            report.push("PA5", &[p, q, x]);
                        }
                    }
                }
                for r in 0..n {
                    if self.leq(p, q) && self.leq_f(q, r) && !self.leq_f(p, r) {
                        report.push("PA2", &[p, q, r]);
                    }
                    if self.leq_f(p, q) && self.leq(q, r) && !self.leq_f(p, r) {
                        report.push("PA2", &[p, q, r]);
                    }
                }
            }
        }
        let mut ops = Vec::new();
        for k in 1..=max_k {
            ops.clear();
            ops.resize(k, 0);
            loop {
                self.check_composite_identities(&ops, &mut report);
                if !advance_tuple(&mut ops, n) {
                    break;
                }
            }
        }
        report
    }

    /// For a θ-word `ops = (p1..pk)` and every `q`:
    /// `θ_{q θ_{p1}..θ_{pk}} = θ_{pk}..θ_{p1} θ_q θ_{p1}..θ_{pk}` pointwise and
    /// `r θ_{pk}..θ_{p1} θ_q θ_{p1}..θ_{pk} θ_r = q θ_{p1}..θ_{pk} θ_r`.
    fn check_composite_identities(&self, ops: &[usize], report: &mut ValidationReport) {
        let n = self.size;
        let rev: Vec<usize> = ops.iter().rev().copied().collect();
        for q in 0..n {
            let target = self.theta_chain(q, ops);
            for x in 0..n {
                let lhs = self.apply(x, target);
                let rhs = self.theta_chain(self.apply(self.theta_chain(x, &rev), q), ops);
                if lhs != rhs {
                    let mut w = vec![q, x];
                    w.extend_from_slice(ops);
                    report.push("theta-composite", &w);
                }
                let r = x;
                let lhs2 = self.apply(rhs, r);
                let rhs2 = self.apply(target, r);
                if lhs2 != rhs2 {
                    let mut w = vec![q, r];
                    w.extend_from_slice(ops);
                    report.push("theta-composite-sandwich", &w);
                }
            }
        }
    }

    /// Whether `phi: self -> other` satisfies `(p θ_q)φ = (pφ) θ_{qφ}`.
    pub fn is_morphism(&self, other: &ProjectionAlgebra, phi: &[usize]) -> bool {
        self.morphism_violation(other, phi).is_none()
    }

    /// First `(p, q)` breaking the morphism identity, or a description of a
    /// malformed map.
    pub fn morphism_violation(&self, other: &ProjectionAlgebra, phi: &[usize]) -> Option<String> {
        if phi.len() != self.size {
            return Some(format!(
                "map has {} entries for {} projections",
                phi.len(),
                self.size
            ));
        }
        if let Some(&v) = phi.iter().find(|&&v| v >= other.size) {
            return Some(format!("image {v} out of range"));
        }
        for p in 0..self.size {
            for q in 0..self.size {
                if phi[self.apply(p, q)] != other.apply(phi[p], phi[q]) {
                    return Some(format!("identity fails at p={p}, q={q}"));
                }
            }
        }
        None
    }

    /// Hex SHA-256 of the size and table. Labels are not hashed.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.size as u64).to_le_bytes());
        for &v in &self.theta {
            h.update((v as u64).to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            size: self.size,
            theta: self.rows(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_file(file: AlgebraFile) -> Result<Self> {
        if file.theta.len() != file.size {
            return Err(Error::MalformedTable(format!(
                "size {} but {} rows",
                file.size,
                file.theta.len()
            )));
        }
        Self::new(file.theta, file.labels)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    /// Relabels along a permutation: projection `p` becomes `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::MalformedTable("not a permutation".into()));
        }
        let mut theta = vec![0; n * n];
        for p in 0..n {
            for q in 0..n {
                theta[perm[p] * n + perm[q]] = perm[self.apply(q, p)];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for (i, s) in l.iter().enumerate() {
                out[perm[i]] = s.clone();
            }
            out
        });
        Ok(Self {
            size: n,
            theta,
            labels,
        })
    }
}

/// Odometer over `0..base` tuples. Returns false after the last tuple.
pub(crate) fn advance_tuple(t: &mut [usize], base: usize) -> bool {
    for slot in t.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// The order `≤`, the relation `≤F` and friendliness `F`, as dense matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionRelations {
    size: usize,
    leq: Vec<bool>,
    leq_f: Vec<bool>,
    friendly: Vec<bool>,
}

impl ProjectionRelations {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p * self.size + q]
    }

    pub fn leq_f(&self, p: usize, q: usize) -> bool {
        self.leq_f[p * self.size + q]
    }

    pub fn friendly(&self, p: usize, q: usize) -> bool {
        self.friendly[p * self.size + q]
    }

    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(&self.leq)
    }

    pub fn leq_f_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(&self.leq_f)
    }

    pub fn friendly_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs(&self.friendly)
    }

    fn pairs(&self, m: &[bool]) -> Vec<(usize, usize)> {
        let n = self.size;
        (0..n * n).filter(|&i| m[i]).map(|i| (i / n, i % n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_algebra_is_valid() {
        let a = ProjectionAlgebra::new(vec![vec![0]], None).unwrap();
        assert!(a.validate_axioms().is_valid());
        assert!(a.check_derived_laws(3).is_valid());
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let err = ProjectionAlgebra::new(vec![vec![0, 2], vec![0, 1]], None).unwrap_err();
        assert!(matches!(err, Error::MalformedTable(_)));
        assert!(ProjectionAlgebra::new(vec![vec![0, 1]], None).is_err());
    }

    #[test]
    fn square_band_relations() {
        let a = fixtures::square_band(2);
        assert!(a.validate_axioms().is_valid());
        let rel = a.relations().unwrap();
        assert!(rel.friendly(0, 1));
        assert!(rel.friendly(1, 0));
        assert!(!rel.leq(0, 1));
    }

    #[test]
    fn kinyon_tables() {
        let a = fixtures::kinyon();
        assert!(a.validate_axioms().is_valid());
        assert!(a.check_derived_laws(3).is_valid());
        let [p, q, r, e] = [0, 1, 2, 3];
        assert_eq!(a.theta_chain(r, &[e]), q);
        let rel = a.relations().unwrap();
        for x in [p, q, r] {
            assert!(!rel.friendly(e, x));
            for y in [p, q, r] {
                assert!(rel.friendly(x, y));
            }
        }
        assert!(rel.friendly(e, e));
        assert!(rel.leq(p, e) && rel.leq(q, e));
        assert!(!rel.leq(r, e));
    }

    #[test]
    fn broken_table_reports_witness() {
        // θ_0 sends 0 to 1: P1 fails at 0.
        let a = ProjectionAlgebra::new(vec![vec![1, 1], vec![1, 1]], None).unwrap();
        let rep = a.validate_axioms();
        assert!(rep.violations.iter().any(|v| v.law == "P1" && v.witness == vec![0]));
    }

    #[test]
    fn band_embeds_in_kinyon() {
        let band = fixtures::square_band(3);
        let k = fixtures::kinyon();
        assert!(band.is_morphism(&k, &[0, 1, 2]));
        assert!(k.is_morphism(&k, &[0, 1, 2, 3]));
        let one = ProjectionAlgebra::new(vec![vec![0]], None).unwrap();
        assert!(k.is_morphism(&one, &[0, 0, 0, 0]));
        assert!(!band.is_morphism(&k, &[0, 1, 3]));
    }

    #[test]
    fn json_roundtrip_and_digest() {
        let a = fixtures::kinyon();
        let b = ProjectionAlgebra::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), fixtures::square_band(4).digest());
    }

    #[test]
    fn permutation_preserves_validity() {
        let a = fixtures::kinyon();
        let b = a.permuted(&[3, 1, 0, 2]).unwrap();
        assert!(b.validate_axioms().is_valid());
        assert!(a.is_morphism(&b, &[3, 1, 0, 2]));
    }
}
