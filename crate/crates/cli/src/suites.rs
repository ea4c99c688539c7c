use std::fmt;

use projgen::boset::{boset_of, compare_with_semigroup_boset, projection_algebra_of_boset};
use projgen::chain_semigroup::{ChainSemigroup, SizeVerdict};
use projgen::diagram::{motzkin_monoid, tl_monoid, Family};
use projgen::presentations::{
    presentation_re, presentation_re2, presentation_rp, tl_model, tl_presentation,
    verify_in_model, verify_presentation, Verdict, VerifyMode, VerifyOptions,
};
use projgen::topology::{Budgets, Classification};
use projgen::{fixtures, AdjacencyGraph, Error, ProjectionAlgebra};

use crate::source::Loaded;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Default)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    /// Runs one check. Budget-type errors count as inconclusive, any other
    /// error as a failure.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        f: impl FnOnce() -> projgen::Result<(bool, String)>,
    ) {
        let (status, detail) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e @ (Error::UndecidedEquality(_) | Error::BudgetExceeded(_) | Error::CapExceeded(_))) => {
                (Status::Inconclusive, e.to_string())
            }
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.checks.push(Check {
            name: name.into(),
            status,
            detail,
        });
    }

    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub struct SuiteArgs {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub budgets: Budgets,
    pub cap: usize,
}

fn handle(alg: &ProjectionAlgebra, args: &SuiteArgs) -> projgen::Result<ChainSemigroup> {
    ChainSemigroup::with_budgets(alg, args.budgets)
}

pub fn kinyon(args: &SuiteArgs, r: &mut SuiteReport) {
    let alg = fixtures::kinyon();
    let [p, q, rr, e] = [0, 1, 2, 3];
    let h = match handle(&alg, args) {
        Ok(h) => h,
        Err(err) => return r.check("kinyon chain semigroup", || Err(err)),
    };
    r.check("kinyon size", || {
        let v = h.size()?;
        Ok((v == SizeVerdict::Finite(10), format!("|PG| = {v}")))
    });
    r.check("kinyon idempotents", || {
        let els = h.enumerate(args.cap)?;
        let proj = els.iter().filter(|c| h.is_projection(c)).count();
        let mut idem = 0;
        for c in &els {
            if h.is_idempotent(c)? && !h.is_projection(c) {
                idem += 1;
            }
        }
        Ok((proj == 4 && idem == 6, format!("{proj} projections, {idem} other idempotents")))
    });
    r.check("kinyon r*e", || {
        let re = h.product(&h.projection(rr), &h.projection(e))?;
        Ok((re == h.chain(&[rr, q])?, h.display(&re)))
    });
    r.check("kinyon cell", || {
        let cells = &h.complex().cells;
        let ok = cells.len() == 1 && {
            let mut b = cells[0].boundary.clone();
            b.sort();
            b == [p, q, rr]
        };
        Ok((ok, format!("{} cells", cells.len())))
    });
}

pub fn band(args: &SuiteArgs, r: &mut SuiteReport) {
    let ks = match args.k {
        Some(k) => vec![k],
        None => vec![1, 2, 3],
    };
    for k in ks {
        r.check(format!("band:{k}"), || {
            let h = handle(&fixtures::square_band(k), args)?;
            let size = h.size()?;
            let classes: Vec<Classification> =
                h.components().iter().map(|c| c.simplified.classification).collect();
            // The friendliness graph is complete with no cells, so its
            // cycle rank is the free rank.
            let rank = (k - 1) * k.saturating_sub(2) / 2;
            let ok = if rank == 0 {
                size == SizeVerdict::Finite(k * k) && classes.iter().all(|c| c.order() == Some(1))
            } else {
                size == SizeVerdict::Infinite && classes == [Classification::Free(rank)]
            };
            let detail = classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
            Ok((ok, format!("size {size}; groups: {detail}")))
        });
    }
}

pub fn tl(args: &SuiteArgs, r: &mut SuiteReport) {
    let ns = match args.n {
        Some(n) => vec![n],
        None => vec![2, 3, 4, 5],
    };
    for n in ns {
        r.check(format!("tl:{n}"), || {
            let m = tl_monoid(n)?;
            let (alg, emb) = m.semigroup.projection_algebra_unchecked();
            let h = handle(&alg, args)?;
            let trivial = h
                .components()
                .iter()
                .all(|c| c.simplified.classification == Classification::Trivial);
            let size = h.size()?;
            let els = h.enumerate(args.cap)?;
            let phi = h.extend_morphism(&m.semigroup, &emb)?;
            let img: Vec<usize> = els.iter().map(|c| phi.apply(&h, &m.semigroup, c)).collect();
            let mut sorted = img.clone();
            sorted.sort();
            sorted.dedup();
            let bijective = sorted.len() == els.len() && els.len() == m.size();
            let mut preserves = true;
            for (i, a) in els.iter().enumerate() {
                if img[els.binary_search(&h.star(a)?).expect("closed")] != m.semigroup.star(img[i]) {
                    preserves = false;
                }
                for (j, b) in els.iter().enumerate() {
                    let ab = els.binary_search(&h.product(a, b)?).expect("closed");
                    if img[ab] != m.semigroup.mul(img[i], img[j]) {
                        preserves = false;
                    }
                }
            }
            Ok((
                trivial && size == SizeVerdict::Finite(m.size()) && bijective && preserves,
                format!(
                    "|P| = {}, |PG| = {size}, |TL_{n}| = {}, trivial groups {trivial}, \
                     bijection {bijective}, preserves product and star {preserves}",
                    alg.size(),
                    m.size()
                ),
            ))
        });
    }
}

pub fn motzkin(args: &SuiteArgs, r: &mut SuiteReport) {
    let ns = match args.n {
        Some(n) => vec![n],
        None => vec![3, 4],
    };
    for n in ns {
        r.check(format!("motzkin:{n}"), || {
            let m = motzkin_monoid(n)?;
            let (alg, emb) = m.semigroup.projection_algebra_unchecked();
            let h = handle(&alg, args)?;
            let c = h.complex();
            let comps = c.components();
            let size = h.size()?;
            let mut detail = format!(
                "{} vertices, {} components, {} cells, size {size}",
                c.vertices,
                comps.len(),
                c.cells.len()
            );
            let ok = match n {
                3 => {
                    let trivial = h
                        .components()
                        .iter()
                        .all(|c| c.simplified.classification == Classification::Trivial);
                    let els = h.enumerate(args.cap)?;
                    let phi = h.extend_morphism(&m.semigroup, &emb)?;
                    let mut img: Vec<usize> =
                        els.iter().map(|c| phi.apply(&h, &m.semigroup, c)).collect();
                    img.sort();
                    img.dedup();
                    let generated = m.semigroup.generated_by(&m.semigroup.idempotents());
                    detail += &format!(", image {} of <E> = {}", img.len(), generated.len());
                    trivial && img.len() == els.len() && img == generated
                }
                4 => {
                    let big = h.components().iter().find(|d| d.vertices.len() == 12);
                    let group_ok = big.is_some_and(|d| {
                        d.simplified.classification == Classification::Free(1)
                            && d.simplified.abelianization.free_rank == 1
                            && d.simplified.abelianization.torsion.is_empty()
                    });
                    detail += &format!(", 12-vertex component free of rank 1: {group_ok}");
                    c.vertices == 35 && comps.len() == 11 && group_ok && size == SizeVerdict::Infinite
                }
                _ => size != SizeVerdict::Unknown,
            };
            Ok((ok, detail))
        });
    }
}

pub fn presentations(alg: &ProjectionAlgebra, name: &str, args: &SuiteArgs, r: &mut SuiteReport) {
    let h = match handle(alg, args) {
        Ok(h) => h,
        Err(err) => return r.check(format!("{name} chain semigroup"), || Err(err)),
    };
    let opts = VerifyOptions {
        cap: args.cap,
        samples: args.samples,
        seed: args.seed,
        ..VerifyOptions::default()
    };
    for pres in [presentation_rp(alg), presentation_re(alg), presentation_re2(alg)] {
        for mode in [VerifyMode::Soundness, VerifyMode::Size, VerifyMode::NormalForm] {
            let label = format!("{name} {} {mode}", pres.name);
            let result = verify_presentation(&h, &pres, mode, &opts);
            push_presentation(r, label, result);
        }
    }
}

pub fn tl_presentations(n: usize, args: &SuiteArgs, r: &mut SuiteReport) {
    let opts = VerifyOptions {
        cap: args.cap,
        ..VerifyOptions::default()
    };
    let result = tl_presentation(n)
        .and_then(|p| verify_in_model(&tl_model(n)?, &p, VerifyMode::Size, &opts));
    push_presentation(r, format!("TL_{n} presentation size"), result);
}

fn push_presentation(
    r: &mut SuiteReport,
    label: String,
    result: projgen::Result<projgen::presentations::PresentationReport>,
) {
    match result {
        Ok(rep) => {
            let status = match rep.verdict {
                Verdict::Pass => Status::Pass,
                Verdict::Fail => Status::Fail,
                Verdict::Inconclusive => Status::Inconclusive,
            };
            let mut detail = format!("{} checked", rep.checked);
            if let Some(c) = rep.classes {
                detail += &format!(", {c} classes");
            }
            if let Some(f) = rep.failures.first() {
                detail += &format!("; {f}");
            }
            r.checks.push(Check {
                name: label,
                status,
                detail,
            });
        }
        Err(e) => r.check(label, || Err(e)),
    }
}

/// Every algebra used by the axiom battery.
pub fn axiom_battery() -> projgen::Result<Vec<(String, ProjectionAlgebra)>> {
    let mut out = vec![("kinyon".to_string(), fixtures::kinyon())];
    for n in 2..=5 {
        let m = tl_monoid(n)?;
        out.push((format!("tl:{n}"), m.semigroup.projection_algebra_unchecked().0));
    }
    for (family, max) in [(Family::Motzkin, 4), (Family::Brauer, 4)] {
        for n in 1..=max {
            let m = family.monoid(n)?;
            out.push((
                format!("{}:{n}", family.name()),
                m.semigroup.projection_algebra_unchecked().0,
            ));
        }
    }
    for n in 1..=6 {
        for (i, edges) in fixtures::unlabeled_graphs(n).into_iter().enumerate() {
            let g = AdjacencyGraph::new(n, &edges)?;
            out.push((format!("graph:{n}:{i}"), g.projection_algebra()));
        }
    }
    Ok(out)
}

pub fn axioms(algebras: &[(String, ProjectionAlgebra)], r: &mut SuiteReport) {
    let mut failing = Vec::new();
    for (name, alg) in algebras {
        let mut rep = alg.validate_axioms();
        rep.merge(alg.check_derived_laws(3));
        if !rep.is_valid() {
            failing.push(format!("{name}: {}", rep.failed_laws().join(", ")));
        }
    }
    r.check("axioms and derived laws", || {
        Ok((
            failing.is_empty(),
            if failing.is_empty() {
                format!("{} algebras", algebras.len())
            } else {
                failing.join("; ")
            },
        ))
    });
}

pub fn boset(loaded: &Loaded, args: &SuiteArgs, r: &mut SuiteReport) {
    let alg = &loaded.algebra;
    let name = &loaded.name;
    r.check(format!("{name} boset laws"), || {
        let b = boset_of(alg);
        let rep = b.validate();
        Ok((rep.is_valid(), format!("{} idempotents; {}", b.size(), rep)))
    });
    r.check(format!("{name} boset roundtrip"), || {
        let back = projection_algebra_of_boset(&boset_of(alg))?;
        Ok((back.flat_table() == alg.flat_table(), format!("{} projections", back.size())))
    });
    r.check(format!("{name} idempotents of the semigroup"), || {
        let s = match &loaded.semigroup {
            Some(s) => s.clone(),
            None => handle(alg, args)?.to_star_semigroup(args.cap)?.0,
        };
        let map = compare_with_semigroup_boset(alg, &s)?;
        Ok((true, format!("{} idempotents matched", map.len())))
    });
}
