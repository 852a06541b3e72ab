//! Differential biquivers (free normal bocses) as first-class data:
//! validation, the graded Leibniz extension of the differential, the
//! representation category with explicit morphisms, the right-algebra
//! dimension, and a brute-force indecomposable oracle over prime fields.
//!
//! Degrees: solid arrows have degree 0, dashed arrows degree 1. Products
//! compose right-to-left; a word stores its factors in application order
//! (index 0 acts first), so the displayed form is the reversed sequence.

use crate::matrix::Matrix;
use crate::pathalg::{AlgebraPresentation, Path, PathElement, Quiver};
use crate::scalar::{Field, Rat};
use crate::Error;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BArrow {
    pub name: String,
    pub source: String,
    pub target: String,
    pub dashed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiQuiver {
    /// Ordered vertex labels; the order is the quasi-hereditary order.
    pub vertices: Vec<String>,
    pub arrows: Vec<BArrow>,
}

impl BiQuiver {
    pub fn arrow(&self, name: &str) -> Option<&BArrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn vertex_pos(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn solid(&self) -> impl Iterator<Item = &BArrow> {
        self.arrows.iter().filter(|a| !a.dashed)
    }

    pub fn dashed(&self) -> impl Iterator<Item = &BArrow> {
        self.arrows.iter().filter(|a| a.dashed)
    }

    /// All arrows point from lower to higher vertex in the order.
    pub fn is_directed(&self) -> bool {
        self.arrows.iter().all(|a| {
            let s = self.vertex_pos(&a.source);
            let t = self.vertex_pos(&a.target);
            matches!((s, t), (Some(s), Some(t)) if s <= t)
        })
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Factor {
    Solid(String),
    Dashed(String),
}

impl Factor {
    pub fn name(&self) -> &str {
        match self {
            Factor::Solid(n) | Factor::Dashed(n) => n,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Factor::Solid(_) => 0,
            Factor::Dashed(_) => 1,
        }
    }
}

/// A composable word of arrows; `factors[0]` acts first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Word {
    pub source: String,
    pub factors: Vec<Factor>,
}

impl Word {
    pub fn trivial(vertex: &str) -> Self {
        Word {
            source: vertex.to_string(),
            factors: Vec::new(),
        }
    }

    pub fn of_arrow(bq: &BiQuiver, name: &str) -> Self {
        let a = bq.arrow(name).unwrap_or_else(|| panic!("unknown arrow {name}"));
        Word {
            source: a.source.clone(),
            factors: vec![if a.dashed {
                Factor::Dashed(a.name.clone())
            } else {
                Factor::Solid(a.name.clone())
            }],
        }
    }

    pub fn target<'a>(&'a self, bq: &'a BiQuiver) -> &'a str {
        match self.factors.last() {
            None => &self.source,
            Some(f) => &bq.arrow(f.name()).expect("arrow exists").target,
        }
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.degree()).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_composable(&self, bq: &BiQuiver) -> bool {
        let mut at = self.source.clone();
        for f in &self.factors {
            let Some(a) = bq.arrow(f.name()) else {
                return false;
            };
            if a.dashed != matches!(f, Factor::Dashed(_)) || a.source != at {
                return false;
            }
            at = a.target.clone();
        }
        true
    }

    pub fn contains_arrow(&self, name: &str) -> bool {
        self.factors.iter().any(|f| f.name() == name)
    }

    pub fn display(&self) -> String {
        if self.factors.is_empty() {
            format!("e_{}", self.source)
        } else {
            self.factors
                .iter()
                .rev()
                .map(|f| f.name().to_string())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Linear combination of parallel words of one degree.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MixedElement {
    pub terms: BTreeMap<Word, Rat>,
}

impl MixedElement {
    pub fn zero() -> Self {
        MixedElement::default()
    }

    pub fn unit(vertex: &str) -> Self {
        MixedElement::single(Word::trivial(vertex), Rat::one())
    }

    pub fn of_arrow(bq: &BiQuiver, name: &str) -> Self {
        MixedElement::single(Word::of_arrow(bq, name), Rat::one())
    }

    pub fn single(word: Word, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !Field::is_zero(&coeff) {
            terms.insert(word, coeff);
        }
        MixedElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, coeff: Rat) {
        if Field::is_zero(&coeff) {
            return;
        }
        let remove = {
            let e = self.terms.entry(word.clone()).or_insert_with(Field::zero);
            *e = e.add(&coeff);
            Field::is_zero(e)
        };
        if remove {
            self.terms.remove(&word);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if Field::is_zero(c) {
            return MixedElement::zero();
        }
        MixedElement {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Field::neg(&Rat::one()))
    }

    /// Product self∘other, with `other` applied first; zero on mismatch.
    pub fn mul(&self, bq: &BiQuiver, other: &Self) -> Self {
        let mut out = MixedElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if w1.source != w2.target(bq) {
                    continue;
                }
                let mut factors = w2.factors.clone();
                factors.extend(w1.factors.iter().cloned());
                out.add_term(
                    Word {
                        source: w2.source.clone(),
                        factors,
                    },
                    c1.mul(c2),
                );
            }
        }
        out
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.degree())
    }

    pub fn endpoints<'a>(&'a self, bq: &'a BiQuiver) -> Option<(&'a str, &'a str)> {
        let w = self.terms.keys().next()?;
        Some((w.source.as_str(), w.target(bq)))
    }

    pub fn contains_arrow(&self, name: &str) -> bool {
        self.terms.keys().any(|w| w.contains_arrow(name))
    }

    /// Replace every occurrence of `name` by `repl` (same degree).
    pub fn substitute(&self, bq: &BiQuiver, name: &str, repl: &MixedElement) -> Self {
        fn subst_word(
            bq: &BiQuiver,
            word: &Word,
            name: &str,
            repl: &MixedElement,
        ) -> MixedElement {
            let Some(k) = word.factors.iter().position(|f| f.name() == name) else {
                return MixedElement::single(word.clone(), Rat::one());
            };
            let before = Word {
                source: word.source.clone(),
                factors: word.factors[..k].to_vec(),
            };
            let after_source = bq.arrow(name).expect("arrow exists").target.clone();
            let after = Word {
                source: after_source,
                factors: word.factors[k + 1..].to_vec(),
            };
            let after_subst = subst_word(bq, &after, name, repl);
            after_subst
                .mul(bq, repl)
                .mul(bq, &MixedElement::single(before, Rat::one()))
        }
        let mut out = MixedElement::zero();
        for (w, c) in &self.terms {
            if w.contains_arrow(name) {
                out = out.add(&subst_word(bq, w, name, repl).scale(c));
            } else {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mut coeff = if c.is_one() {
                String::new()
            } else if Field::is_one(&Field::neg(c)) {
                "-".to_string()
            } else {
                format!("{c}*")
            };
            if i > 0 {
                if coeff.starts_with('-') {
                    out.push_str(" - ");
                    coeff = coeff[1..].to_string();
                } else {
                    out.push_str(" + ");
                }
            }
            out.push_str(&coeff);
            out.push_str(&w.display());
        }
        out
    }
}

impl fmt::Display for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// A differential biquiver, with an optional compatible relation ideal on
/// the solid part.
#[derive(Clone, Debug, Default)]
pub struct DifferentialBiquiver {
    pub name: String,
    pub bq: BiQuiver,
    /// Differential per arrow name; absent means zero.
    pub diff: BTreeMap<String, MixedElement>,
    /// Ordered generators of the compatible ideal, in solid arrows only.
    pub relations: Vec<MixedElement>,
}

impl DifferentialBiquiver {
    pub fn diff_of(&self, name: &str) -> MixedElement {
        self.diff.get(name).cloned().unwrap_or_default()
    }

    pub fn arrow_count(&self) -> usize {
        self.bq.arrows.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.bq.vertices.len()
    }

    /// Graded Leibniz extension of the differential to a mixed element.
    ///
    /// The factor hit by the differential contributes the sign (-1)^d where
    /// d is the degree of everything applied after it (to its left in the
    /// written word).
    pub fn leibniz_extend(&self, x: &MixedElement) -> MixedElement {
        let mut out = MixedElement::zero();
        for (w, c) in &x.terms {
            for k in 0..w.factors.len() {
                let dk = self.diff_of(w.factors[k].name());
                if dk.is_zero() {
                    continue;
                }
                let left_degree: usize =
                    w.factors[k + 1..].iter().map(|f| f.degree()).sum();
                let sign = if left_degree.is_multiple_of(2) {
                    Rat::one()
                } else {
                    Field::neg(&Rat::one())
                };
                let before = MixedElement::single(
                    Word {
                        source: w.source.clone(),
                        factors: w.factors[..k].to_vec(),
                    },
                    Rat::one(),
                );
                let after_source = self
                    .bq
                    .arrow(w.factors[k].name())
                    .expect("arrow exists")
                    .target
                    .clone();
                let after = MixedElement::single(
                    Word {
                        source: after_source,
                        factors: w.factors[k + 1..].to_vec(),
                    },
                    Rat::one(),
                );
                let term = after.mul(&self.bq, &dk).mul(&self.bq, &before);
                out = out.add(&term.scale(&c.mul(&sign)));
            }
        }
        out
    }

    /// Bounded-degree membership of `x` in the span of the relation ideal
    /// (any solid segment carries an ideal factor; `outer_only` restricts to
    /// the first and last segment, which is the compatibility condition
    /// I·W + W·I).
    pub fn in_ideal_span(
        &self,
        x: &MixedElement,
        gens: &[MixedElement],
        outer_only: bool,
    ) -> bool {
        if x.is_zero() {
            return true;
        }
        if gens.iter().all(|g| g.is_zero()) {
            return false;
        }
        // Sparse Gaussian elimination over words; span elements are found by
        // matching generator term-paths inside solid segments of words seen
        // so far.
        let mut rows: Vec<MixedElement> = Vec::new();
        let reduce = |rows: &[MixedElement], mut v: MixedElement| -> MixedElement {
            loop {
                let mut changed = false;
                for r in rows {
                    let pivot = r.terms.keys().next().unwrap().clone();
                    if let Some(c) = v.terms.get(&pivot).cloned() {
                        let pc = r.terms[&pivot].clone();
                        let f = c.mul(&pc.inv().unwrap());
                        v = v.add(&r.scale(&Field::neg(&f)));
                        changed = true;
                    }
                }
                if !changed {
                    return v;
                }
            }
        };
        let mut support: BTreeSet<Word> = x.terms.keys().cloned().collect();
        let mut queue: Vec<Word> = support.iter().cloned().collect();
        let mut seen: BTreeSet<(Word, usize, usize, usize)> = BTreeSet::new();
        let mut count = 0usize;
        while let Some(w) = queue.pop() {
            // Split the word into solid segments.
            let mut segments: Vec<(usize, usize)> = Vec::new(); // factor index ranges
            let mut start = 0;
            for (i, f) in w.factors.iter().enumerate() {
                if matches!(f, Factor::Dashed(_)) {
                    segments.push((start, i));
                    start = i + 1;
                }
            }
            segments.push((start, w.factors.len()));
            for (si, &(s, e)) in segments.iter().enumerate() {
                if outer_only && si != 0 && si != segments.len() - 1 {
                    continue;
                }
                for (gi, g) in gens.iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    for (gw, gc) in &g.terms {
                        let glen = gw.factors.len();
                        if glen > e - s {
                            continue;
                        }
                        for off in s..=(e - glen) {
                            let matches = (0..glen)
                                .all(|k| w.factors[off + k].name() == gw.factors[k].name());
                            if !matches {
                                continue;
                            }
                            let key = (w.clone(), si, gi, off);
                            if !seen.insert(key) {
                                continue;
                            }
                            // Span element: w with gw replaced by g/gc.
                            let mut elem = MixedElement::zero();
                            for (tw, tc) in &g.terms {
                                let mut factors = w.factors[..off].to_vec();
                                factors.extend(tw.factors.iter().cloned());
                                factors.extend(w.factors[off + glen..].iter().cloned());
                                elem.add_term(
                                    Word {
                                        source: w.source.clone(),
                                        factors,
                                    },
                                    tc.mul(&gc.inv().unwrap()),
                                );
                            }
                            let red = reduce(&rows, elem);
                            if !red.is_zero() {
                                for nw in red.terms.keys() {
                                    if support.insert(nw.clone()) {
                                        queue.push(nw.clone());
                                    }
                                }
                                rows.push(red);
                            }
                            count += 1;
                            if count > 20_000 {
                                // Budget blown; treat as non-membership.
                                return reduce(&rows, x.clone()).is_zero();
                            }
                        }
                    }
                }
            }
        }
        reduce(&rows, x.clone()).is_zero()
    }

    /// Structured validation report; an empty problem list means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut problems = Vec::new();
        let bq = &self.bq;
        // Hygiene.
        let mut names = BTreeSet::new();
        for a in &bq.arrows {
            if !names.insert(a.name.clone()) {
                problems.push(format!("duplicate arrow name {}", a.name));
            }
            for v in [&a.source, &a.target] {
                if bq.vertex_pos(v).is_none() {
                    problems.push(format!("arrow {} references unknown vertex {v}", a.name));
                }
            }
        }
        let mut vnames = BTreeSet::new();
        for v in &bq.vertices {
            if !vnames.insert(v.clone()) {
                problems.push(format!("duplicate vertex label {v}"));
            }
        }
        if !problems.is_empty() {
            return ValidationReport {
                problems,
                directed: false,
            };
        }
        // Differential shape.
        for (name, d) in &self.diff {
            let Some(a) = bq.arrow(name) else {
                problems.push(format!("differential assigned to unknown arrow {name}"));
                continue;
            };
            if d.is_zero() {
                continue;
            }
            let want_degree = if a.dashed { 2 } else { 1 };
            for w in d.terms.keys() {
                if !w.is_composable(bq) {
                    problems.push(format!(
                        "term {} in the differential of {name} is not composable",
                        w.display()
                    ));
                    continue;
                }
                if w.degree() != want_degree {
                    problems.push(format!(
                        "differential of {name} has a term of degree {} (expected {want_degree})",
                        w.degree()
                    ));
                }
                if w.source != a.source || w.target(bq) != a.target {
                    problems.push(format!(
                        "differential of {name} has a term with mismatched endpoints: {}",
                        w.display()
                    ));
                }
            }
        }
        // Relations: degree 0, solid only, composable, parallel.
        for (i, r) in self.relations.iter().enumerate() {
            for w in r.terms.keys() {
                if !w.is_composable(bq) || w.degree() != 0 {
                    problems.push(format!(
                        "relation {i} has a non-solid or non-composable term {}",
                        w.display()
                    ));
                }
            }
            if let Some((s, t)) = r.endpoints(bq) {
                let (s, t) = (s.to_string(), t.to_string());
                for w in r.terms.keys() {
                    if w.source != s || w.target(bq) != t {
                        problems.push(format!("relation {i} has mixed endpoints"));
                        break;
                    }
                }
            }
        }
        if !problems.is_empty() {
            return ValidationReport {
                problems,
                directed: bq.is_directed(),
            };
        }
        // ∂² = 0 (exactly in the free case, modulo the ideal otherwise).
        for a in &bq.arrows {
            let d2 = self.leibniz_extend(&self.diff_of(&a.name));
            if d2.is_zero() {
                continue;
            }
            if self.relations.is_empty() || !self.in_ideal_span(&d2, &self.relations, false) {
                problems.push(format!(
                    "∂² of arrow {} is {} (not zero modulo the ideal)",
                    a.name,
                    d2.display()
                ));
            }
        }
        // Compatibility of the ordered relation generators.
        for i in 0..self.relations.len() {
            let dr = self.leibniz_extend(&self.relations[i]);
            if dr.is_zero() {
                continue;
            }
            let earlier = &self.relations[..i];
            if !self.in_ideal_span(&dr, earlier, true) {
                problems.push(format!(
                    "relation generator {i} is not compatible: ∂(r) = {}",
                    dr.display()
                ));
            }
        }
        ValidationReport {
            problems,
            directed: bq.is_directed(),
        }
    }

    /// The solid part as an algebra presentation (for projectives and the
    /// right algebra).
    pub fn solid_presentation(&self) -> AlgebraPresentation {
        let vertices: Vec<&str> = self.bq.vertices.iter().map(|s| s.as_str()).collect();
        let arrows: Vec<(&str, &str, &str)> = self
            .bq
            .solid()
            .map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str()))
            .collect();
        let quiver = Quiver::new(&vertices, &arrows);
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let mut pe = PathElement::zero();
                for (w, c) in &r.terms {
                    let arrows: Vec<usize> = w
                        .factors
                        .iter()
                        .map(|f| quiver.arrow_index(f.name()).expect("solid arrow"))
                        .collect();
                    pe.add_term(
                        Path {
                            source: quiver.vertex_index(&w.source).expect("vertex"),
                            arrows,
                        },
                        c.clone(),
                    );
                }
                pe
            })
            .collect();
        AlgebraPresentation { quiver, relations }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub problems: Vec<String>,
    pub directed: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Representation of the solid part: a dimension per vertex (positional,
/// following `bq.vertices`) and a matrix per solid arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct DbqRep<F: Field> {
    pub dims: Vec<usize>,
    pub mats: BTreeMap<String, Matrix<F>>,
}

impl<F: Field> DbqRep<F> {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim_at(&self, dbq: &DifferentialBiquiver, v: &str) -> usize {
        self.dims[dbq.bq.vertex_pos(v).expect("vertex")]
    }

    /// Action of a solid path (factors in application order).
    pub fn act_solid(&self, dbq: &DifferentialBiquiver, source: &str, factors: &[Factor]) -> Matrix<F> {
        let mut m = Matrix::identity(self.dim_at(dbq, source));
        for f in factors {
            let Factor::Solid(name) = f else {
                panic!("dashed factor in solid path");
            };
            m = self.mats[name].mul(&m);
        }
        m
    }

    pub fn evaluates_relations_to_zero(&self, dbq: &DifferentialBiquiver) -> bool {
        dbq.relations.iter().all(|r| {
            let Some((s, t)) = r.endpoints(&dbq.bq) else {
                return true;
            };
            let (s, t) = (s.to_string(), t.to_string());
            let mut m = Matrix::zero(self.dim_at(dbq, &t), self.dim_at(dbq, &s));
            for (w, c) in &r.terms {
                m = m.add(&self.act_solid(dbq, &w.source, &w.factors).scale(&F::from_rat(c)));
            }
            m.is_zero()
        })
    }

    pub fn direct_sum(dbq: &DifferentialBiquiver, parts: &[&DbqRep<F>]) -> Self {
        let nv = dbq.bq.vertices.len();
        let dims: Vec<usize> = (0..nv)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let mut mats = BTreeMap::new();
        for a in dbq.bq.solid() {
            let (si, ti) = (
                dbq.bq.vertex_pos(&a.source).unwrap(),
                dbq.bq.vertex_pos(&a.target).unwrap(),
            );
            let mut m = Matrix::zero(dims[ti], dims[si]);
            let (mut ro, mut co) = (0, 0);
            for p in parts {
                let b = &p.mats[&a.name];
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m[(ro + i, co + j)] = b[(i, j)].clone();
                    }
                }
                ro += p.dims[ti];
                co += p.dims[si];
            }
            mats.insert(a.name.clone(), m);
        }
        DbqRep { dims, mats }
    }
}

/// A morphism in the bocs category: vertex maps plus one map per dashed
/// arrow, satisfying the differential-twisted intertwining conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct DbqMorphism<F: Field> {
    pub vertex_maps: Vec<Matrix<F>>,
    pub dashed_maps: BTreeMap<String, Matrix<F>>,
}

impl<F: Field> DbqMorphism<F> {
    pub fn identity(dbq: &DifferentialBiquiver, m: &DbqRep<F>) -> Self {
        DbqMorphism {
            vertex_maps: m.dims.iter().map(|&d| Matrix::identity(d)).collect(),
            dashed_maps: dbq
                .bq
                .dashed()
                .map(|a| {
                    let s = m.dim_at(dbq, &a.source);
                    let t = m.dim_at(dbq, &a.target);
                    (a.name.clone(), Matrix::zero(t, s))
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        DbqMorphism {
            vertex_maps: self.vertex_maps.iter().map(|m| m.scale(c)).collect(),
            dashed_maps: self
                .dashed_maps
                .iter()
                .map(|(k, m)| (k.clone(), m.scale(c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        DbqMorphism {
            vertex_maps: self
                .vertex_maps
                .iter()
                .zip(&other.vertex_maps)
                .map(|(a, b)| a.add(b))
                .collect(),
            dashed_maps: self
                .dashed_maps
                .iter()
                .map(|(k, m)| (k.clone(), m.add(&other.dashed_maps[k])))
                .collect(),
        }
    }
}

/// Basis of the morphism space M -> N in the bocs category.
///
/// For every solid arrow a: i -> j with ∂(a) = Σ λ b ξ b', the condition is
/// Σ λ N_b f_ξ M_{b'} = N_a f_i - f_j M_a, with the right solid segment
/// acting in the source and the left one in the target.
pub fn morphism_space<F: Field>(
    dbq: &DifferentialBiquiver,
    m: &DbqRep<F>,
    n: &DbqRep<F>,
) -> Vec<DbqMorphism<F>> {
    let bq = &dbq.bq;
    let nv = bq.vertices.len();
    // Unknown layout: vertex maps first, then dashed maps in arrow order.
    let mut offsets: Vec<usize> = Vec::new();
    let mut total = 0usize;
    for v in 0..nv {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    let dashed: Vec<&BArrow> = bq.dashed().collect();
    let mut dashed_offsets: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
    for a in &dashed {
        let rows = n.dim_at(dbq, &a.target);
        let cols = m.dim_at(dbq, &a.source);
        dashed_offsets.insert(a.name.as_str(), (total, rows, cols));
        total += rows * cols;
    }
    let mut eq_rows: Vec<Vec<F>> = Vec::new();
    for a in bq.solid() {
        let (si, ti) = (
            bq.vertex_pos(&a.source).unwrap(),
            bq.vertex_pos(&a.target).unwrap(),
        );
        let ma = &m.mats[&a.name];
        let na = &n.mats[&a.name];
        let rows = n.dims[ti];
        let cols = m.dims[si];
        // For each entry (r, c): (N_a f_i - f_j M_a - Σ λ N_b f_ξ M_b')[r,c] = 0.
        let mut entries: Vec<Vec<F>> = vec![vec![F::zero(); total]; rows * cols];
        // N_a f_i
        for r in 0..rows {
            for c in 0..cols {
                let row = &mut entries[r * cols + c];
                for k in 0..n.dims[si] {
                    let idx = offsets[si] + k * m.dims[si] + c;
                    row[idx] = row[idx].add(&na[(r, k)]);
                }
                // - f_j M_a
                for k in 0..m.dims[ti] {
                    let idx = offsets[ti] + r * m.dims[ti] + k;
                    row[idx] = row[idx].sub(&ma[(k, c)]);
                }
            }
        }
        // - Σ λ N_b f_ξ M_b'
        for (w, lambda) in dbq.diff_of(&a.name).terms.iter() {
            let lam = F::from_rat(lambda);
            let dpos = w
                .factors
                .iter()
                .position(|f| matches!(f, Factor::Dashed(_)))
                .expect("degree-1 word has one dashed factor");
            let right = &w.factors[..dpos]; // acts first, in M
            let left = &w.factors[dpos + 1..]; // acts last, in N
            let xi = w.factors[dpos].name();
            let mb = m.act_solid(dbq, &w.source, right);
            let xi_target = bq.arrow(xi).unwrap().target.clone();
            let nb = n.act_solid(dbq, &xi_target, left);
            let (off, fr, fc) = dashed_offsets[xi];
            // (N_b f_ξ M_b')[r,c] = Σ_{u,v} nb[r,u] f_ξ[u,v] mb[v,c]
            for r in 0..rows {
                for c in 0..cols {
                    let row = &mut entries[r * cols + c];
                    for u in 0..fr {
                        if nb[(r, u)].is_zero() {
                            continue;
                        }
                        for v in 0..fc {
                            let coeff = lam.mul(&nb[(r, u)]).mul(&mb[(v, c)]);
                            let idx = off + u * fc + v;
                            row[idx] = row[idx].sub(&coeff);
                        }
                    }
                }
            }
        }
        eq_rows.extend(entries);
    }
    let sys = if eq_rows.is_empty() {
        Matrix::zero(0, total)
    } else {
        Matrix::from_rows(eq_rows)
    };
    sys.kernel_basis()
        .into_iter()
        .map(|col| {
            let vertex_maps = (0..nv)
                .map(|v| {
                    Matrix::from_fn(n.dims[v], m.dims[v], |i, j| {
                        col[(offsets[v] + i * m.dims[v] + j, 0)].clone()
                    })
                })
                .collect();
            let dashed_maps = dashed
                .iter()
                .map(|a| {
                    let (off, fr, fc) = dashed_offsets[a.name.as_str()];
                    (
                        a.name.clone(),
                        Matrix::from_fn(fr, fc, |i, j| col[(off + i * fc + j, 0)].clone()),
                    )
                })
                .collect();
            DbqMorphism {
                vertex_maps,
                dashed_maps,
            }
        })
        .collect()
}

/// Composition f∘g of bocs morphisms (g first), including the correction
/// terms read off from the differentials of the dashed arrows.
pub fn compose_morphisms<F: Field>(
    dbq: &DifferentialBiquiver,
    f: &DbqMorphism<F>,
    g: &DbqMorphism<F>,
    low: &DbqRep<F>,
    mid: &DbqRep<F>,
    top: &DbqRep<F>,
) -> DbqMorphism<F> {
    let bq = &dbq.bq;
    let vertex_maps: Vec<Matrix<F>> = f
        .vertex_maps
        .iter()
        .zip(&g.vertex_maps)
        .map(|(a, b)| a.mul(b))
        .collect();
    let mut dashed_maps = BTreeMap::new();
    for a in bq.dashed() {
        let (si, ti) = (
            bq.vertex_pos(&a.source).unwrap(),
            bq.vertex_pos(&a.target).unwrap(),
        );
        // f_j g_φ + f_φ g_i
        let mut out = f.vertex_maps[ti]
            .mul(&g.dashed_maps[&a.name])
            .add(&f.dashed_maps[&a.name].mul(&g.vertex_maps[si]));
        // + Σ λ top_c f_ψ mid_{c'} g_{ψ'} low_{c''}
        for (w, lambda) in dbq.diff_of(&a.name).terms.iter() {
            let lam = F::from_rat(lambda);
            let dpos: Vec<usize> = w
                .factors
                .iter()
                .enumerate()
                .filter(|(_, f)| matches!(f, Factor::Dashed(_)))
                .map(|(i, _)| i)
                .collect();
            debug_assert_eq!(dpos.len(), 2, "degree-2 word has two dashed factors");
            let (p1, p2) = (dpos[0], dpos[1]); // p1 acts first (pairs with g)
            let c2 = &w.factors[..p1]; // innermost solid, acts in `low`
            let c1 = &w.factors[p1 + 1..p2]; // middle solid, in `mid`
            let c0 = &w.factors[p2 + 1..]; // outer solid, in `top`
            let xi_g = w.factors[p1].name();
            let xi_f = w.factors[p2].name();
            let low_m = low.act_solid(dbq, &w.source, c2);
            let mid_src = bq.arrow(xi_g).unwrap().target.clone();
            let mid_m = mid.act_solid(dbq, &mid_src, c1);
            let top_src = bq.arrow(xi_f).unwrap().target.clone();
            let top_m = top.act_solid(dbq, &top_src, c0);
            let term = top_m
                .mul(&f.dashed_maps[xi_f])
                .mul(&mid_m)
                .mul(&g.dashed_maps[xi_g])
                .mul(&low_m)
                .scale(&lam);
            out = out.add(&term);
        }
        dashed_maps.insert(a.name.clone(), out);
    }
    DbqMorphism {
        vertex_maps,
        dashed_maps,
    }
}

/// A morphism is an isomorphism iff all vertex maps are invertible; the
/// inverse is constructed by solving the composition equations and then
/// verified on both sides.
pub fn is_isomorphism<F: Field>(
    dbq: &DifferentialBiquiver,
    f: &DbqMorphism<F>,
    m: &DbqRep<F>,
    n: &DbqRep<F>,
) -> Result<bool, Error> {
    if !f.vertex_maps.iter().all(|b| b.is_invertible()) {
        return Ok(false);
    }
    // Inverse vertex maps are forced; dashed components solve a triangular
    // linear condition coming from (f ∘ g)_φ = 0.
    let inv_vertex: Vec<Matrix<F>> = f
        .vertex_maps
        .iter()
        .map(|b| b.inverse().expect("invertible"))
        .collect();
    let mut g = DbqMorphism {
        vertex_maps: inv_vertex,
        dashed_maps: dbq
            .bq
            .dashed()
            .map(|a| {
                let s = n.dim_at(dbq, &a.source);
                let t = m.dim_at(dbq, &a.target);
                (a.name.clone(), Matrix::zero(t, s))
            })
            .collect(),
    };
    // Iterate: set g_φ := -f_{t}^{-1} (f∘g)_φ  until f∘g = id. For directed
    // bocses the correction terms are triangular in the dashed components,
    // so this converges; bail out after a generous number of sweeps.
    let id_m = DbqMorphism::identity(dbq, m);
    // g: N -> M, so f∘g: N -> N must become the identity.
    for _ in 0..=dbq.bq.arrows.len() {
        let fg = compose_morphisms(dbq, f, &g, n, m, n);
        let defect: Vec<(String, Matrix<F>)> = dbq
            .bq
            .dashed()
            .map(|a| {
                let ti = dbq.bq.vertex_pos(&a.target).unwrap();
                let d = fg.dashed_maps[&a.name].clone();
                (
                    a.name.clone(),
                    f.vertex_maps[ti].inverse().unwrap().mul(&d).neg(),
                )
            })
            .collect();
        if defect.iter().all(|(_, d)| d.is_zero()) {
            break;
        }
        for (name, d) in defect {
            let cur = g.dashed_maps[&name].clone();
            g.dashed_maps.insert(name, cur.add(&d));
        }
    }
    let fg = compose_morphisms(dbq, f, &g, n, m, n);
    let gf = compose_morphisms(dbq, &g, f, m, n, m);
    let id_n = DbqMorphism::identity(dbq, n);
    let ok_fg = fg.vertex_maps == id_n.vertex_maps
        && fg.dashed_maps.values().all(|d| d.is_zero());
    let ok_gf = gf.vertex_maps == id_m.vertex_maps
        && gf.dashed_maps.values().all(|d| d.is_zero());
    if ok_fg && ok_gf {
        Ok(true)
    } else {
        Err(Error::Internal(
            "inverse construction failed for a morphism with invertible vertex maps".into(),
        ))
    }
}

/// Total dimension of End of the direct sum of the projective solid-algebra
/// representations, i.e. the dimension of the right algebra of the bocs.
pub fn right_algebra_dim(dbq: &DifferentialBiquiver) -> Result<usize, Error> {
    let pres = dbq.solid_presentation();
    let basis = crate::pathalg::algebra_basis(&pres, crate::pathalg::DEFAULT_LENGTH_CAP)?;
    let nv = dbq.bq.vertices.len();
    let projs: Vec<DbqRep<Rat>> = (0..nv)
        .map(|v| {
            let p = crate::findim::projective(&basis, v);
            DbqRep {
                dims: p.module.dims.clone(),
                mats: dbq
                    .bq
                    .solid()
                    .map(|a| {
                        let ai = pres.quiver.arrow_index(&a.name).unwrap();
                        (a.name.clone(), p.module.actions[ai].clone())
                    })
                    .collect(),
            }
        })
        .collect();
    let mut total = 0;
    for pi in &projs {
        for pj in &projs {
            total += morphism_space(dbq, pi, pj).len();
        }
    }
    Ok(total)
}

/// Result of the brute-force enumeration oracle.
pub struct EnumerationResult<F: Field> {
    pub indecomposables: Vec<DbqRep<F>>,
}

pub const DEFAULT_ORACLE_BUDGET: usize = 2_000_000;

/// Enumerate all representations over F within the per-vertex caps, group
/// them into isomorphism classes, and discard the classes isomorphic to a
/// direct sum of smaller ones. Deterministic: assignments are generated in
/// lexicographic order, so class representatives are canonical.
pub fn enumerate_indecomposables<F: Field>(
    dbq: &DifferentialBiquiver,
    caps: &[usize],
    budget: usize,
) -> Result<EnumerationResult<F>, Error> {
    assert_eq!(caps.len(), dbq.bq.vertices.len(), "one cap per vertex");
    let p = F::CHAR;
    assert!(p > 0, "the oracle runs over a prime field");
    let solid: Vec<&BArrow> = dbq.bq.solid().collect();
    // All dimension vectors within caps, by increasing total dimension.
    let mut dimvecs: Vec<Vec<usize>> = vec![vec![]];
    for &c in caps {
        dimvecs = dimvecs
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    dimvecs.retain(|v| v.iter().sum::<usize>() > 0);
    dimvecs.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));

    let mut spent = 0usize;
    let mut classes: Vec<(DbqRep<F>, bool)> = Vec::new(); // (canonical rep, indecomposable)
    for dims in dimvecs {
        let entry_count: usize = solid
            .iter()
            .map(|a| {
                dims[dbq.bq.vertex_pos(&a.target).unwrap()]
                    * dims[dbq.bq.vertex_pos(&a.source).unwrap()]
            })
            .sum();
        let count = (p as u128).checked_pow(entry_count as u32).unwrap_or(u128::MAX);
        if count > budget as u128 || spent + count as usize > budget {
            return Err(Error::SearchSpaceTooLarge(format!(
                "dimension vector {dims:?} needs {count} assignments"
            )));
        }
        spent += count as usize;
        // Enumerate assignments in lexicographic order.
        let mut digits = vec![0u64; entry_count];
        loop {
            let rep = {
                let mut mats = BTreeMap::new();
                let mut k = 0;
                for a in &solid {
                    let rows = dims[dbq.bq.vertex_pos(&a.target).unwrap()];
                    let cols = dims[dbq.bq.vertex_pos(&a.source).unwrap()];
                    let m = Matrix::from_fn(rows, cols, |_, _| {
                        let v = F::from_int(digits[k] as i64);
                        k += 1;
                        v
                    });
                    mats.insert(a.name.clone(), m);
                }
                DbqRep {
                    dims: dims.clone(),
                    mats,
                }
            };
            if rep.evaluates_relations_to_zero(dbq) {
                let known = classes
                    .iter()
                    .any(|(c, _)| c.dims == rep.dims && reps_isomorphic(dbq, c, &rep));
                if !known {
                    let indec = !is_sum_of_classes(dbq, &rep, &classes);
                    classes.push((rep, indec));
                }
            }
            // Increment the digit vector.
            let mut i = 0;
            loop {
                if i == entry_count {
                    break;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == entry_count {
                break;
            }
        }
    }
    Ok(EnumerationResult {
        indecomposables: classes
            .into_iter()
            .filter(|(_, ind)| *ind)
            .map(|(r, _)| r)
            .collect(),
    })
}

/// Exhaustive isomorphism test over a finite field: search the vertex-map
/// projection of the morphism space for an invertible tuple. The dashed
/// components are free fibers over that projection, so they never obstruct.
pub fn reps_isomorphic<F: Field>(
    dbq: &DifferentialBiquiver,
    m: &DbqRep<F>,
    n: &DbqRep<F>,
) -> bool {
    if m.dims != n.dims {
        return false;
    }
    let basis = morphism_space(dbq, m, n);
    if basis.is_empty() {
        return m.total_dim() == 0;
    }
    // Independent vertex-map tuples spanning the projection.
    let nv = dbq.bq.vertices.len();
    let flat_len: usize = (0..nv).map(|v| m.dims[v] * n.dims[v]).sum();
    let mut span = crate::matrix::RowSpan::<F>::new(flat_len);
    let mut projected: Vec<Vec<Matrix<F>>> = Vec::new();
    for f in &basis {
        let mut flat = Vec::with_capacity(flat_len);
        for b in &f.vertex_maps {
            for i in 0..b.rows() {
                flat.extend(b.row(i).iter().cloned());
            }
        }
        if span.insert(&flat) {
            projected.push(f.vertex_maps.clone());
        }
    }
    if projected.is_empty() {
        // Only zero vertex maps are realizable.
        return m.total_dim() == 0;
    }
    let p = F::CHAR;
    let dim = projected.len();
    let combos = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    assert!(
        combos <= 4_000_000,
        "isomorphism search space too large ({combos} candidates)"
    );
    let mut digits = vec![0u64; dim];
    loop {
        let mut f: Vec<Matrix<F>> = projected[0]
            .iter()
            .map(|b| b.scale(&F::from_int(digits[0] as i64)))
            .collect();
        for k in 1..dim {
            let c = F::from_int(digits[k] as i64);
            for (acc, b) in f.iter_mut().zip(&projected[k]) {
                *acc = acc.add(&b.scale(&c));
            }
        }
        if f.iter().all(|b| b.is_invertible()) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == dim {
                return false;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Is `rep` isomorphic to a direct sum of at least two known classes?
fn is_sum_of_classes<F: Field>(
    dbq: &DifferentialBiquiver,
    rep: &DbqRep<F>,
    classes: &[(DbqRep<F>, bool)],
) -> bool {
    // Enumerate multisets of indecomposable classes whose dimension vectors
    // sum to rep's. Depth-first with pruning.
    let indec: Vec<&DbqRep<F>> = classes
        .iter()
        .filter(|(_, i)| *i)
        .map(|(r, _)| r)
        .collect();
    fn search<F: Field>(
        dbq: &DifferentialBiquiver,
        rep: &DbqRep<F>,
        indec: &[&DbqRep<F>],
        start: usize,
        remaining: Vec<i64>,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if remaining.iter().all(|&d| d == 0) {
            if chosen.len() < 2 {
                return false;
            }
            let parts: Vec<&DbqRep<F>> = chosen.iter().map(|&i| indec[i]).collect();
            let sum = DbqRep::direct_sum(dbq, &parts);
            return reps_isomorphic(dbq, rep, &sum);
        }
        for i in start..indec.len() {
            let d = &indec[i].dims;
            if d.iter().zip(&remaining).all(|(&a, &b)| (a as i64) <= b) {
                let next: Vec<i64> = remaining
                    .iter()
                    .zip(d)
                    .map(|(&r, &a)| r - a as i64)
                    .collect();
                chosen.push(i);
                if search(dbq, rep, indec, i, next, chosen) {
                    chosen.pop();
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let remaining: Vec<i64> = rep.dims.iter().map(|&d| d as i64).collect();
    search(dbq, rep, &indec, 0, remaining, &mut Vec::new())
}

/// Test-only rational isomorphism check: look for a morphism whose vertex
/// maps are all invertible by solving for one with identity 1x1 blocks.
#[cfg(test)]
fn reps_isomorphic_over_rationals(
    dbq: &DifferentialBiquiver,
    m: &DbqRep<Rat>,
    n: &DbqRep<Rat>,
) -> bool {
    if m.dims != n.dims || m.dims.iter().any(|&d| d > 1) {
        return false;
    }
    morphism_space(dbq, m, n)
        .iter()
        .any(|f| f.vertex_maps.iter().all(|b| b.is_invertible()))
        || {
            // No single basis vector works; try the sum.
            let homs = morphism_space(dbq, m, n);
            if homs.is_empty() {
                return m.total_dim() == 0;
            }
            let mut sum = homs[0].clone();
            for f in &homs[1..] {
                sum = sum.add(f);
            }
            sum.vertex_maps.iter().all(|b| b.is_invertible())
        }
}
