//! Semigroup presentations of chain semigroups and of Temperley–Lieb
//! monoids, with bounded verification against a concrete model.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::ProjectionAlgebra;
use crate::boset::{boset_of, pair_chain};
use crate::chain_semigroup::{ChainSemigroup, ReducedChain, SizeVerdict};
use crate::chains::Path;
use crate::diagram::{tl_generators, tl_monoid};
use crate::error::{Error, Result};
use crate::semigroup::StarSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Letter {
    Projection { p: usize },
    Pair { p: usize, q: usize },
    Identity,
    Generator { i: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RelationTag {
    R1,
    R2,
    R3,
    #[serde(rename = "R1'")]
    R1Prime,
    #[serde(rename = "R2'")]
    R2Prime,
    #[serde(rename = "R1''")]
    R1Second,
    #[serde(rename = "R2''")]
    R2Second,
    #[serde(rename = "R3''")]
    R3Second,
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl fmt::Display for RelationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationTag::R1 => "R1",
            RelationTag::R2 => "R2",
            RelationTag::R3 => "R3",
            RelationTag::R1Prime => "R1'",
            RelationTag::R2Prime => "R2'",
            RelationTag::R1Second => "R1''",
            RelationTag::R2Second => "R2''",
            RelationTag::R3Second => "R3''",
            RelationTag::T1 => "T1",
            RelationTag::T2 => "T2",
            RelationTag::T3 => "T3",
            RelationTag::T4 => "T4",
            RelationTag::T5 => "T5",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub tag: RelationTag,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SemigroupPresentation {
    pub name: String,
    pub letters: Vec<Letter>,
    pub labels: Vec<String>,
    pub relations: Vec<Relation>,
}

impl SemigroupPresentation {
    pub fn new(
        name: impl Into<String>,
        letters: Vec<Letter>,
        labels: Vec<String>,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        if labels.len() != letters.len() {
            return Err(Error::Mismatch("one label per letter".into()));
        }
        for r in &relations {
            if r.lhs.is_empty() || r.rhs.is_empty() {
                return Err(Error::EmptyPath);
            }
            if let Some(&x) = r.lhs.iter().chain(&r.rhs).find(|&&x| x >= letters.len()) {
                return Err(Error::OutOfRange(x));
            }
        }
        Ok(Self {
            name: name.into(),
            letters,
            labels,
            relations,
        })
    }

    pub fn count(&self, tag: RelationTag) -> usize {
        self.relations.iter().filter(|r| r.tag == tag).count()
    }

    pub fn with_tag(&self, tag: RelationTag) -> impl Iterator<Item = &Relation> {
        self.relations.iter().filter(move |r| r.tag == tag)
    }

    pub fn render(&self, w: &[usize]) -> String {
        w.iter()
            .map(|&x| self.labels[x].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// One relation per line: `TAG: lhs = rhs`.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n# letters: {}\n", self.name, self.labels.join(" "));
        for r in &self.relations {
            out.push_str(&format!("{}: {} = {}\n", r.tag, self.render(&r.lhs), self.render(&r.rhs)));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The letter's word over projections, for letters naming elements of
    /// a chain semigroup.
    fn projection_word(&self, x: usize) -> Option<Vec<usize>> {
        match self.letters[x] {
            Letter::Projection { p } => Some(vec![p]),
            Letter::Pair { p, q } if p == q => Some(vec![p]),
            Letter::Pair { p, q } => Some(vec![p, q]),
            _ => None,
        }
    }
}

fn projection_letters(alg: &ProjectionAlgebra) -> (Vec<Letter>, Vec<String>) {
    (0..alg.size())
        .map(|p| (Letter::Projection { p }, format!("x[{}]", alg.label(p))))
        .unzip()
}

/// Generators `x_p` with `x_p² = x_p`, `(x_p x_q)² = x_p x_q` and
/// `x_p x_q x_p = x_{q θ_p}`.
pub fn presentation_rp(alg: &ProjectionAlgebra) -> SemigroupPresentation {
    let n = alg.size();
    let (letters, labels) = projection_letters(alg);
    let mut rels = Vec::with_capacity(n + 2 * n * n);
    for p in 0..n {
        rels.push(Relation {
            tag: RelationTag::R1,
            lhs: vec![p, p],
            rhs: vec![p],
        });
    }
    for p in 0..n {
        for q in 0..n {
            rels.push(Relation {
                tag: RelationTag::R2,
                lhs: vec![p, q, p, q],
                rhs: vec![p, q],
            });
        }
    }
    for p in 0..n {
        for q in 0..n {
            rels.push(Relation {
                tag: RelationTag::R3,
                lhs: vec![p, q, p],
                rhs: vec![alg.apply(q, p)],
            });
        }
    }
    SemigroupPresentation::new("R_P", letters, labels, rels).expect("well-formed")
}

fn pair_letters(alg: &ProjectionAlgebra, pairs: &[(usize, usize)]) -> (Vec<Letter>, Vec<String>) {
    pairs
        .iter()
        .map(|&(p, q)| {
            if p == q {
                (Letter::Pair { p, q }, format!("x[{}]", alg.label(p)))
            } else {
                (
                    Letter::Pair { p, q },
                    format!("x[{},{}]", alg.label(p), alg.label(q)),
                )
            }
        })
        .unzip()
}

/// The product `p q` of two projections as a friendly pair.
pub fn projection_product(alg: &ProjectionAlgebra, p: usize, q: usize) -> (usize, usize) {
    (alg.apply(q, p), alg.apply(p, q))
}

fn basic_relations(b: &crate::boset::Boset, tag: RelationTag) -> Vec<Relation> {
    let mut rels = Vec::new();
    for e in 0..b.size() {
        for f in 0..b.size() {
            if let Some(ef) = b.product(e, f) {
                rels.push(Relation {
                    tag,
                    lhs: vec![e, f],
                    rhs: vec![ef],
                });
            }
        }
    }
    rels
}

/// Generators indexed by idempotents, with the basic products and
/// `x_p x_q = x_{pq}` for all projections.
pub fn presentation_re(alg: &ProjectionAlgebra) -> SemigroupPresentation {
    let b = boset_of(alg);
    let pairs = b.pairs().expect("pair encoding").to_vec();
    let (letters, labels) = pair_letters(alg, &pairs);
    let mut rels = basic_relations(&b, RelationTag::R1Prime);
    let n = alg.size();
    for p in 0..n {
        for q in 0..n {
            let (a, c) = projection_product(alg, p, q);
            rels.push(Relation {
                tag: RelationTag::R2Prime,
                lhs: vec![index(&b, p, p), index(&b, q, q)],
                rhs: vec![index(&b, a, c)],
            });
        }
    }
    SemigroupPresentation::new("R_E", letters, labels, rels).expect("well-formed")
}

fn index(b: &crate::boset::Boset, p: usize, q: usize) -> usize {
    b.index_of_pair(p, q).expect("friendly pair")
}

/// Generators indexed by idempotents, with the basic products, the
/// sandwich relations `x_e x_f = x_e x_g x_f` and `x_p x_q = x_{pq}` for
/// friendly `p, q`.
pub fn presentation_re2(alg: &ProjectionAlgebra) -> SemigroupPresentation {
    let b = boset_of(alg);
    let pairs = b.pairs().expect("pair encoding").to_vec();
    let (letters, labels) = pair_letters(alg, &pairs);
    let mut rels = basic_relations(&b, RelationTag::R1Second);
    for e in 0..b.size() {
        for f in 0..b.size() {
            for g in b.sandwich_abstract(e, f) {
                rels.push(Relation {
                    tag: RelationTag::R2Second,
                    lhs: vec![e, f],
                    rhs: vec![e, g, f],
                });
            }
        }
    }
    for &(p, q) in &pairs {
        rels.push(Relation {
            tag: RelationTag::R3Second,
            lhs: vec![index(&b, p, p), index(&b, q, q)],
            rhs: vec![index(&b, p, q)],
        });
    }
    SemigroupPresentation::new("R_E''", letters, labels, rels).expect("well-formed")
}

/// Temperley–Lieb monoid on letters `e, t1, ..., t(n-1)`, with `e` acting
/// as the identity.
pub fn tl_presentation(n: usize) -> Result<SemigroupPresentation> {
    if n < 2 {
        return Err(Error::InfeasibleDegree {
            family: "temperley-lieb".into(),
            n,
            max: usize::MAX,
        });
    }
    let mut letters = vec![Letter::Identity];
    let mut labels = vec!["e".to_string()];
    for i in 1..n {
        letters.push(Letter::Generator { i });
        labels.push(format!("t{i}"));
    }
    let k = n - 1;
    let mut rels = Vec::new();
    for i in 1..=k {
        rels.push(Relation {
            tag: RelationTag::T1,
            lhs: vec![i, i],
            rhs: vec![i],
        });
    }
    for i in 1..=k {
        for j in i + 2..=k {
            rels.push(Relation {
                tag: RelationTag::T2,
                lhs: vec![i, j],
                rhs: vec![j, i],
            });
        }
    }
    for i in 1..=k {
        for j in 1..=k {
            if i.abs_diff(j) == 1 {
                rels.push(Relation {
                    tag: RelationTag::T3,
                    lhs: vec![i, j, i],
                    rhs: vec![i],
                });
            }
        }
    }
    rels.push(Relation {
        tag: RelationTag::T4,
        lhs: vec![0, 0],
        rhs: vec![0],
    });
    for i in 1..=k {
        rels.push(Relation {
            tag: RelationTag::T5,
            lhs: vec![0, i],
            rhs: vec![i],
        });
        rels.push(Relation {
            tag: RelationTag::T5,
            lhs: vec![i, 0],
            rhs: vec![i],
        });
    }
    SemigroupPresentation::new(format!("TL_{n}"), letters, labels, rels)
}

/// Rewrites a word over projections into a friendly path with the same
/// value, each vertex below the corresponding letter.
pub fn word_to_friendly_path(alg: &ProjectionAlgebra, word: &[usize]) -> Result<Path> {
    let (&first, rest) = word.split_first().ok_or(Error::EmptyPath)?;
    alg.check_index(first)?;
    // Forward: track the codomain; heads[i] ends the prefix once w_{i+1}
    // is appended.
    let mut cur = first;
    let mut heads = Vec::with_capacity(rest.len());
    for &w in rest {
        alg.check_index(w)?;
        heads.push(alg.apply(w, cur));
        cur = alg.apply(cur, w);
    }
    // Backward: compose the right restrictions.
    let mut out = vec![cur];
    let mut next = cur;
    for &h in heads.iter().rev() {
        next = alg.apply(next, h);
        out.push(next);
    }
    out.reverse();
    Path::new(alg, out)
}

/// A finite semigroup with an image for every letter.
#[derive(Debug, Clone)]
pub struct TableModel {
    pub semigroup: StarSemigroup,
    pub images: Vec<usize>,
}

impl TableModel {
    pub fn eval(&self, w: &[usize]) -> usize {
        let elems: Vec<usize> = w.iter().map(|&x| self.images[x]).collect();
        self.semigroup.mul_all(&elems)
    }
}

/// The chain semigroup as a Cayley table, with letters sent to their
/// chains.
pub fn pg_model(
    handle: &ChainSemigroup,
    pres: &SemigroupPresentation,
    cap: usize,
) -> Result<(TableModel, Vec<ReducedChain>)> {
    let (s, elements) = handle.to_star_semigroup(cap)?;
    let index: HashMap<&ReducedChain, usize> =
        elements.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let images = (0..pres.letters.len())
        .map(|x| {
            let c = letter_chain(handle, pres, x)?;
            Ok(index[&c])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((TableModel { semigroup: s, images }, elements))
}

/// `TL_n` with `e` the identity diagram and `t_i` the `i`-th cup-cap.
pub fn tl_model(n: usize) -> Result<TableModel> {
    let m = tl_monoid(n)?;
    let mut images = vec![m.index_of(&crate::diagram::PartitionDiagram::identity(n)).expect("identity")];
    for g in tl_generators(n) {
        images.push(m.index_of(&g).expect("generator"));
    }
    Ok(TableModel {
        semigroup: m.semigroup,
        images,
    })
}

fn letter_chain(handle: &ChainSemigroup, pres: &SemigroupPresentation, x: usize) -> Result<ReducedChain> {
    match pres.letters[x] {
        Letter::Projection { p } => {
            handle.algebra().check_index(p)?;
            Ok(handle.projection(p))
        }
        Letter::Pair { p, q } => pair_chain(handle, (p, q)),
        _ => Err(Error::Mismatch(format!(
            "letter {} has no chain image",
            pres.labels[x]
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Soundness,
    Size,
    NormalForm,
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyMode::Soundness => "soundness",
            VerifyMode::Size => "size",
            VerifyMode::NormalForm => "normal-form",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest chain semigroup turned into a table.
    pub cap: usize,
    /// Longest intermediate word in size mode. Defaults to twice the
    /// longest expanded chain plus two, or twice the longest shortest
    /// word plus two for table models.
    pub word_length: Option<usize>,
    /// Words visited per derivation search in size mode.
    pub search_nodes: usize,
    /// Random words in normal-form mode.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            cap: 10_000,
            word_length: None,
            search_nodes: 200_000,
            samples: 1_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationReport {
    pub presentation: String,
    pub mode: VerifyMode,
    pub verdict: Verdict,
    /// Relations, Cayley edges or sampled words examined.
    pub checked: usize,
    /// Classes of the presented semigroup, when size mode settles it.
    pub classes: Option<usize>,
    pub failures: Vec<String>,
}

impl PresentationReport {
    fn new(pres: &SemigroupPresentation, mode: VerifyMode) -> Self {
        Self {
            presentation: pres.name.clone(),
            mode,
            verdict: Verdict::Pass,
            checked: 0,
            classes: None,
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.verdict = Verdict::Fail;
        self.failures.push(msg);
    }

    fn inconclusive(mut self, msg: String) -> Self {
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Inconclusive;
        }
        self.failures.push(msg);
        self
    }
}

impl fmt::Display for PresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "{} {}: {verdict} ({} checked", self.presentation, self.mode, self.checked)?;
        if let Some(c) = self.classes {
            write!(f, ", {c} classes")?;
        }
        write!(f, ")")?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

/// Checks a presentation of a chain semigroup against the chains
/// themselves.
pub fn verify_presentation(
    handle: &ChainSemigroup,
    pres: &SemigroupPresentation,
    mode: VerifyMode,
    opts: &VerifyOptions,
) -> Result<PresentationReport> {
    match mode {
        VerifyMode::Soundness => {
            let mut rep = PresentationReport::new(pres, mode);
            let images = (0..pres.letters.len())
                .map(|x| letter_chain(handle, pres, x))
                .collect::<Result<Vec<_>>>()?;
            let eval = |w: &[usize]| {
                let cs: Vec<ReducedChain> = w.iter().map(|&x| images[x].clone()).collect();
                handle.product_all(&cs)
            };
            for r in &pres.relations {
                rep.checked += 1;
                if eval(&r.lhs)? != eval(&r.rhs)? {
                    rep.fail(format!("{}: {} = {}", r.tag, pres.render(&r.lhs), pres.render(&r.rhs)));
                }
            }
            Ok(rep)
        }
        VerifyMode::Size => {
            let rep = PresentationReport::new(pres, mode);
            match handle.size() {
                Ok(SizeVerdict::Finite(n)) if n <= opts.cap => {}
                Ok(v) => return Ok(rep.inconclusive(format!("chain semigroup size {v}"))),
                Err(Error::UndecidedEquality(c)) => {
                    return Ok(rep.inconclusive(format!("component {c} undecided")))
                }
                Err(e) => return Err(e),
            }
            let (model, elements) = pg_model(handle, pres, opts.cap)?;
            let longest = elements.iter().map(|c| handle.expand(c).len()).max().unwrap_or(1);
            let opts = VerifyOptions {
                word_length: opts.word_length.or(Some(2 * longest + 2)),
                ..*opts
            };
            verify_in_model(&model, pres, mode, &opts)
        }
        VerifyMode::NormalForm => verify_normal_form(handle, pres, opts),
    }
}

/// Soundness or size checks against a finite table model.
pub fn verify_in_model(
    model: &TableModel,
    pres: &SemigroupPresentation,
    mode: VerifyMode,
    opts: &VerifyOptions,
) -> Result<PresentationReport> {
    if model.images.len() != pres.letters.len() {
        return Err(Error::Mismatch("one image per letter".into()));
    }
    let mut rep = PresentationReport::new(pres, mode);
    for r in &pres.relations {
        rep.checked += 1;
        if model.eval(&r.lhs) != model.eval(&r.rhs) {
            rep.fail(format!("{}: {} = {}", r.tag, pres.render(&r.lhs), pres.render(&r.rhs)));
        }
    }
    match mode {
        VerifyMode::Soundness => Ok(rep),
        VerifyMode::Size if rep.verdict == Verdict::Fail => Ok(rep),
        VerifyMode::Size => Ok(size_closure(model, pres, opts, rep)),
        VerifyMode::NormalForm => Err(Error::Mismatch(
            "normal-form mode needs a chain semigroup".into(),
        )),
    }
}

/// Shortest words for the generated elements, in breadth-first order.
fn representatives(model: &TableModel, letters: usize) -> (Vec<usize>, HashMap<usize, Vec<usize>>) {
    let mut order = Vec::new();
    let mut reps: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..letters {
        let e = model.images[x];
        if let std::collections::hash_map::Entry::Vacant(v) = reps.entry(e) {
            v.insert(vec![x]);
            order.push(e);
        }
    }
    let mut i = 0;
    while i < order.len() {
        let s = order[i];
        for x in 0..letters {
            let t = model.semigroup.mul(s, model.images[x]);
            if !reps.contains_key(&t) {
                let mut w = reps[&s].clone();
                w.push(x);
                reps.insert(t, w);
                order.push(t);
            }
        }
        i += 1;
    }
    (order, reps)
}

/// Derives `rep(s) x = rep(s x)` for every generated `s` and letter `x`
/// by bounded rewriting. Once every such edge is derived, every word is
/// equivalent to a representative, so the presented semigroup has exactly
/// as many classes as the model generates.
fn size_closure(
    model: &TableModel,
    pres: &SemigroupPresentation,
    opts: &VerifyOptions,
    mut rep: PresentationReport,
) -> PresentationReport {
    let k = pres.letters.len();
    let (order, reps) = representatives(model, k);
    let generated = order.len();
    let longest = reps.values().map(Vec::len).max().unwrap_or(1);
    let max_len = opts.word_length.unwrap_or(2 * longest + 2);
    let position: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    // proven[s][x]: the edge (s, x) is derived.
    let mut proven = vec![vec![false; k]; generated];
    for (i, &s) in order.iter().enumerate() {
        for x in 0..k {
            let t = model.semigroup.mul(s, model.images[x]);
            let mut w = reps[&s].clone();
            w.push(x);
            proven[i][x] = w == reps[&t];
        }
    }
    // Single letters whose image is shared with an earlier letter.
    let mut letter_edges: Vec<bool> = (0..k).map(|x| reps[&model.images[x]] == [x]).collect();

    let rules: Vec<(&[usize], &[usize])> = pres
        .relations
        .iter()
        .flat_map(|r| [(&r.lhs[..], &r.rhs[..]), (&r.rhs[..], &r.lhs[..])])
        .collect();

    let mut progress = true;
    while progress {
        progress = false;
        for x in 0..k {
            if !letter_edges[x] {
                let target = &reps[&model.images[x]];
                let ctx = Closure {
                    model,
                    reps: &reps,
                    position: &position,
                    proven: &proven,
                    rules: &rules,
                    max_len,
                    nodes: opts.search_nodes,
                };
                if ctx.derive(vec![x], target) {
                    letter_edges[x] = true;
                    progress = true;
                }
            }
        }
        for i in 0..generated {
            for x in 0..k {
                if proven[i][x] {
                    continue;
                }
                let s = order[i];
                let t = model.semigroup.mul(s, model.images[x]);
                let mut start = reps[&s].clone();
                start.push(x);
                let ctx = Closure {
                    model,
                    reps: &reps,
                    position: &position,
                    proven: &proven,
                    rules: &rules,
                    max_len,
                    nodes: opts.search_nodes,
                };
                if ctx.derive(start, &reps[&t]) {
                    proven[i][x] = true;
                    progress = true;
                }
            }
        }
    }
    rep.checked = generated * k + k;
    let proven = &proven;
    let open: Vec<String> = order
        .iter()
        .enumerate()
        .flat_map(|(i, s)| (0..k).filter(move |&x| !proven[i][x]).map(move |x| (*s, x)))
        .map(|(s, x)| format!("{} {}", pres.render(&reps[&s]), pres.labels[x]))
        .chain(
            (0..k)
                .filter(|&x| !letter_edges[x])
                .map(|x| pres.labels[x].clone()),
        )
        .collect();
    if !open.is_empty() {
        let n = open.len();
        let mut rep = rep.inconclusive(format!(
            "{n} edges not derived within word length {max_len}"
        ));
        rep.failures.extend(open);
        return rep;
    }
    rep.classes = Some(generated);
    if generated != model.semigroup.size() {
        rep.fail(format!(
            "{generated} classes but the model has {} elements",
            model.semigroup.size()
        ));
    }
    rep
}

struct Closure<'a> {
    model: &'a TableModel,
    reps: &'a HashMap<usize, Vec<usize>>,
    position: &'a HashMap<usize, usize>,
    proven: &'a [Vec<bool>],
    rules: &'a [(&'a [usize], &'a [usize])],
    max_len: usize,
    nodes: usize,
}

impl Closure<'_> {
    /// Collapses the longest prefix that follows derived edges into its
    /// representative.
    fn collapse(&self, w: &[usize]) -> Vec<usize> {
        let first = self.model.images[w[0]];
        if self.reps[&first] != [w[0]] {
            return w.to_vec();
        }
        let mut s = first;
        let mut i = 1;
        while i < w.len() {
            let pos = self.position[&s];
            if !self.proven[pos][w[i]] {
                break;
            }
            s = self.model.semigroup.mul(s, self.model.images[w[i]]);
            i += 1;
        }
        let mut out = self.reps[&s].clone();
        out.extend_from_slice(&w[i..]);
        out
    }

    fn derive(&self, start: Vec<usize>, target: &[usize]) -> bool {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(w) = queue.pop_front() {
            if w == target {
                return true;
            }
            for &(from, to) in self.rules {
                if from.len() > w.len() || w.len() - from.len() + to.len() > self.max_len {
                    continue;
                }
                for at in 0..=w.len() - from.len() {
                    if &w[at..at + from.len()] != from {
                        continue;
                    }
                    let mut v = Vec::with_capacity(w.len() - from.len() + to.len());
                    v.extend_from_slice(&w[..at]);
                    v.extend_from_slice(to);
                    v.extend_from_slice(&w[at + from.len()..]);
                    let c = self.collapse(&v);
                    if c == target {
                        return true;
                    }
                    for u in [v, c] {
                        if seen.len() < self.nodes && !seen.contains(&u) {
                            seen.insert(u.clone());
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        false
    }
}

/// Random words and random relation rewrites of them must normalize to
/// the same chain, which must also be their product.
fn verify_normal_form(
    handle: &ChainSemigroup,
    pres: &SemigroupPresentation,
    opts: &VerifyOptions,
) -> Result<PresentationReport> {
    let alg = handle.algebra();
    let mut rep = PresentationReport::new(pres, VerifyMode::NormalForm);
    let k = pres.letters.len();
    let letter_words = (0..k)
        .map(|x| {
            pres.projection_word(x).ok_or_else(|| {
                Error::Mismatch(format!("letter {} is not a chain", pres.labels[x]))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let images = (0..k)
        .map(|x| letter_chain(handle, pres, x))
        .collect::<Result<Vec<_>>>()?;
    let normal = |w: &[usize]| -> Result<ReducedChain> {
        let flat: Vec<usize> = w.iter().flat_map(|&x| letter_words[x].iter().copied()).collect();
        handle.normalize(&word_to_friendly_path(alg, &flat)?)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let len = rng.gen_range(1..=8);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..k)).collect();
        let mut v = w.clone();
        for _ in 0..rng.gen_range(1..=4) {
            v = random_rewrite(&mut rng, pres, &v);
        }
        rep.checked += 1;
        let a = normal(&w)?;
        let b = normal(&v)?;
        let cs: Vec<ReducedChain> = w.iter().map(|&x| images[x].clone()).collect();
        let direct = handle.product_all(&cs)?;
        if a != b || a != direct {
            rep.fail(format!("{} vs {}", pres.render(&w), pres.render(&v)));
        }
    }
    Ok(rep)
}

fn random_rewrite(rng: &mut ChaCha8Rng, pres: &SemigroupPresentation, w: &[usize]) -> Vec<usize> {
    let mut sites = Vec::new();
    for (ri, r) in pres.relations.iter().enumerate() {
        for (dir, from) in [(false, &r.lhs), (true, &r.rhs)] {
            if from.len() <= w.len() {
                for at in 0..=w.len() - from.len() {
                    if &w[at..at + from.len()] == from.as_slice() {
                        sites.push((ri, dir, at));
                    }
                }
            }
        }
    }
    if sites.is_empty() {
        return w.to_vec();
    }
    let (ri, dir, at) = sites[rng.gen_range(0..sites.len())];
    let r = &pres.relations[ri];
    let (from, to) = if dir { (&r.rhs, &r.lhs) } else { (&r.lhs, &r.rhs) };
    let mut v = w[..at].to_vec();
    v.extend_from_slice(to);
    v.extend_from_slice(&w[at + from.len()..]);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rp_counts() {
        let p = presentation_rp(&fixtures::kinyon());
        assert_eq!(p.relations.len(), 4 + 16 + 16);
        let band = presentation_rp(&fixtures::square_band(2));
        assert!(band
            .with_tag(RelationTag::R3)
            .any(|r| r.lhs == [0, 1, 0] && r.rhs == [0]));
    }

    #[test]
    fn tl_counts() {
        let t3 = tl_presentation(3).unwrap();
        assert_eq!(t3.letters.len(), 3);
        assert_eq!(t3.count(RelationTag::T2), 0);
        assert_eq!(t3.count(RelationTag::T3), 2);
        let t4 = tl_presentation(4).unwrap();
        let t2: Vec<_> = t4.with_tag(RelationTag::T2).collect();
        assert_eq!(t2.len(), 1);
        assert_eq!((t2[0].lhs.as_slice(), t2[0].rhs.as_slice()), (&[1, 3][..], &[3, 1][..]));
        assert!(tl_presentation(1).is_err());
    }

    #[test]
    fn friendly_words_are_fixed() {
        let alg = fixtures::kinyon();
        assert_eq!(word_to_friendly_path(&alg, &[2]).unwrap().vertices(), &[2]);
        for (p, q) in alg.relations().unwrap().friendly_pairs() {
            assert_eq!(word_to_friendly_path(&alg, &[p, q]).unwrap().vertices(), &[p, q]);
        }
        assert!(word_to_friendly_path(&alg, &[]).is_err());
    }

    #[test]
    fn size_mode_on_small_algebras() {
        let opts = VerifyOptions::default();
        let band = fixtures::square_band(2);
        let h = ChainSemigroup::new(&band).unwrap();
        let r = verify_presentation(&h, &presentation_rp(&band), VerifyMode::Size, &opts).unwrap();
        assert_eq!((r.verdict, r.classes), (Verdict::Pass, Some(4)), "{r}");
        let k = fixtures::kinyon();
        let h = ChainSemigroup::new(&k).unwrap();
        let r = verify_presentation(&h, &presentation_rp(&k), VerifyMode::Size, &opts).unwrap();
        assert_eq!((r.verdict, r.classes), (Verdict::Pass, Some(10)), "{r}");
    }

    #[test]
    fn missing_relation_is_not_a_pass() {
        // Dropping R3 leaves an infinite semigroup; never report 4 classes.
        let band = fixtures::square_band(2);
        let h = ChainSemigroup::new(&band).unwrap();
        let mut p = presentation_rp(&band);
        p.relations.retain(|r| r.tag != RelationTag::R3);
        let opts = VerifyOptions {
            search_nodes: 2_000,
            ..VerifyOptions::default()
        };
        let r = verify_presentation(&h, &p, VerifyMode::Size, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn text_export() {
        let t = presentation_rp(&fixtures::square_band(2)).to_text();
        assert!(t.contains("R3: x[p0] x[p1] x[p0] = x[p0]"), "{t}");
    }
}
