//! Quivers, paths, linear combinations of paths, admissible relations, and
//! normal-form bases of finite-dimensional quotients kQ/I.
//!
//! Composition is right-to-left throughout: in the product `p*q`, `q` is
//! applied first. Internally a path stores its arrows in application order,
//! so the displayed name is the reverse of the stored sequence.

use crate::scalar::{Field, Rat};
use crate::Error;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Build from vertex labels and `(name, source label, target label)` triples.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Self {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let idx = |label: &str| {
            vertices
                .iter()
                .position(|v| v == label)
                .unwrap_or_else(|| panic!("unknown vertex {label}"))
        };
        let arrows = arrows
            .iter()
            .map(|(n, s, t)| Arrow {
                name: n.to_string(),
                source: idx(s),
                target: idx(t),
            })
            .collect();
        Quiver { vertices, arrows }
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow(&self, name: &str) -> &Arrow {
        &self.arrows[self.arrow_index(name).unwrap_or_else(|| panic!("unknown arrow {name}"))]
    }
}

/// A path in a quiver; `arrows` are in application order (index 0 first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path {
            source: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn of_arrow(q: &Quiver, name: &str) -> Self {
        let i = q.arrow_index(name).unwrap_or_else(|| panic!("unknown arrow {name}"));
        Path {
            source: q.arrows[i].source,
            arrows: vec![i],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows
            .last()
            .map_or(self.source, |&a| q.arrows[a].target)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertices[self.source])
        } else {
            self.arrows
                .iter()
                .rev()
                .map(|&a| q.arrows[a].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Concatenation `p∘q` with `q` applied first; `None` when sources mismatch.
pub fn compose(q: &Quiver, p: &Path, tail: &Path) -> Option<Path> {
    if p.source != tail.target(q) {
        return None;
    }
    let mut arrows = tail.arrows.clone();
    arrows.extend(&p.arrows);
    Some(Path {
        source: tail.source,
        arrows,
    })
}

/// A linear combination of parallel paths (all terms share source and target).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PathElement {
    pub terms: BTreeMap<Path, Rat>,
}

impl PathElement {
    pub fn zero() -> Self {
        PathElement::default()
    }

    pub fn unit(vertex: usize) -> Self {
        PathElement::single(Path::trivial(vertex), Rat::one())
    }

    pub fn single(path: Path, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !Field::is_zero(&coeff) {
            terms.insert(path, coeff);
        }
        PathElement { terms }
    }

    pub fn of_arrow(q: &Quiver, name: &str) -> Self {
        PathElement::single(Path::of_arrow(q, name), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, path: Path, coeff: Rat) {
        if Field::is_zero(&coeff) {
            return;
        }
        let entry = self.terms.entry(path).or_insert_with(Field::zero);
        *entry = entry.add(&coeff);
        if Field::is_zero(entry) {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| Field::is_zero(*v))
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if Field::is_zero(c) {
            return PathElement::zero();
        }
        PathElement {
            terms: self
                .terms
                .iter()
                .map(|(p, a)| (p.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Field::neg(&Rat::one()))
    }

    /// Common (source, target) of the terms, when the element is nonzero.
    pub fn endpoints(&self, q: &Quiver) -> Option<(usize, usize)> {
        let first = self.terms.keys().next()?;
        Some((first.source, first.target(q)))
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let coeff = if c.is_one() {
                String::new()
            } else if Field::is_one(&Field::neg(c)) {
                "-".to_string()
            } else {
                format!("{c}*")
            };
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&coeff);
            out.push_str(&p.display(q));
        }
        out
    }
}

impl fmt::Display for PathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} terms>", self.terms.len())
    }
}

/// A quiver with admissible relations.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub quiver: Quiver,
    pub relations: Vec<PathElement>,
}

/// Path-normal-form basis of kQ/I, plus the rewrite table for reducible paths.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub presentation: AlgebraPresentation,
    /// Basis paths in (length, path) order. Trivial paths come first.
    pub basis: Vec<Path>,
    pub index: BTreeMap<Path, usize>,
    /// Reducible paths of length < `zero_len`, expressed in the basis.
    rewrite: BTreeMap<Path, Vec<(usize, Rat)>>,
    /// Smallest length at which the quotient has no basis paths; all longer
    /// paths are zero modulo the ideal.
    pub zero_len: usize,
}

impl AlgebraBasis {
    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.presentation.quiver.vertices.len()
    }

    /// Basis paths from vertex `i` to vertex `j`.
    pub fn basis_paths(&self, i: usize, j: usize) -> Vec<&Path> {
        let q = self.quiver();
        self.basis
            .iter()
            .filter(|p| p.source == i && p.target(q) == j)
            .collect()
    }

    /// Coordinates of a normal-form element in the global basis.
    pub fn coords(&self, x: &PathElement) -> Vec<Rat> {
        let mut v = vec![<Rat as Field>::zero(); self.basis.len()];
        for (p, c) in &x.terms {
            let i = self.index[p];
            v[i] = v[i].add(c);
        }
        v
    }

    /// Normal form: rewrite every term into the basis; idempotent.
    pub fn normal_form(&self, x: &PathElement) -> PathElement {
        let mut out = PathElement::zero();
        for (p, c) in &x.terms {
            if p.len() >= self.zero_len {
                continue;
            }
            if self.index.contains_key(p) {
                out.add_term(p.clone(), c.clone());
            } else if let Some(rw) = self.rewrite.get(p) {
                for (bi, a) in rw {
                    out.add_term(self.basis[*bi].clone(), a.mul(c));
                }
            } else {
                unreachable!("path of length < zero_len must be basis or rewritable");
            }
        }
        out
    }

    /// Bilinear product followed by normal form.
    pub fn multiply(&self, x: &PathElement, y: &PathElement) -> PathElement {
        let q = self.quiver();
        let mut out = PathElement::zero();
        for (p, a) in &x.terms {
            for (r, b) in &y.terms {
                if let Some(pr) = compose(q, p, r) {
                    out.add_term(pr, a.mul(b));
                }
            }
        }
        self.normal_form(&out)
    }
}

/// Enumerate the normal-form basis of kQ/I by increasing path length.
///
/// Relations must be length-homogeneous (every fixture in this crate is);
/// per-length row reduction against the padded relation span is then an
/// exact computation of the graded quotient. Stabilization — one length
/// with no new basis paths — certifies finite dimensionality, because the
/// arrow ideal is nilpotent from that length on.
pub fn algebra_basis(pres: &AlgebraPresentation, length_cap: usize) -> Result<AlgebraBasis, Error> {
    let q = &pres.quiver;
    for r in &pres.relations {
        if r.is_zero() {
            continue;
        }
        let lens: Vec<usize> = r.terms.keys().map(|p| p.len()).collect();
        if lens.iter().any(|&l| l < 2) {
            return Err(Error::BadInput(format!(
                "relation {} has a path of length < 2",
                r.display(q)
            )));
        }
        if lens.iter().any(|&l| l != lens[0]) {
            return Err(Error::BadInput(format!(
                "relation {} is not length-homogeneous",
                r.display(q)
            )));
        }
        if r.endpoints(q).is_none() {
            return Err(Error::BadInput("relation with mixed endpoints".into()));
        }
    }

    let mut basis: Vec<Path> = Vec::new();
    let mut rewrite: BTreeMap<Path, Vec<(usize, Rat)>> = BTreeMap::new();
    let mut prev: Vec<Path> = (0..q.vertices.len()).map(Path::trivial).collect();
    basis.extend(prev.iter().cloned());

    // Paths of each length, kept for relation padding.
    let mut by_len: Vec<Vec<Path>> = vec![prev.clone()];

    let mut zero_len = None;
    for len in 1..=length_cap {
        // All paths of this length.
        let mut cur: Vec<Path> = Vec::new();
        for p in &prev {
            let t = p.target(q);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == t {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    cur.push(Path {
                        source: p.source,
                        arrows,
                    });
                }
            }
        }
        cur.sort();
        by_len.push(cur.clone());
        if cur.is_empty() {
            zero_len = Some(len);
            break;
        }
        let col_of: BTreeMap<&Path, usize> =
            cur.iter().enumerate().map(|(i, p)| (p, i)).collect();

        // Span of p∘r∘q with total length == len.
        let mut span = crate::matrix::RowSpan::<Rat>::new(cur.len());
        for r in &pres.relations {
            if r.is_zero() {
                continue;
            }
            let rlen = r.terms.keys().next().unwrap().len();
            if rlen > len {
                continue;
            }
            let (rsrc, rtgt) = r.endpoints(q).unwrap();
            for left_len in 0..=(len - rlen) {
                let right_len = len - rlen - left_len;
                for pleft in by_len[left_len].iter().filter(|p| p.source == rtgt) {
                    for pright in by_len[right_len].iter().filter(|p| p.target(q) == rsrc) {
                        let mut vec = vec![<Rat as Field>::zero(); cur.len()];
                        for (mid, c) in &r.terms {
                            let pm = compose(q, mid, pright).unwrap();
                            let full = compose(q, pleft, &pm).unwrap();
                            let col = col_of[&full];
                            vec[col] = vec[col].add(c);
                        }
                        span.insert(&vec);
                    }
                }
            }
        }

        // Non-pivot paths extend the basis; pivot rows become rewrite rules.
        let pivots = span.pivot_columns();
        let is_pivot = {
            let mut v = vec![false; cur.len()];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let new_count = cur.len() - pivots.len();
        let base_index: BTreeMap<usize, usize> = cur
            .iter()
            .enumerate()
            .filter(|(i, _)| !is_pivot[*i])
            .map(|(i, p)| {
                basis.push(p.clone());
                (i, basis.len() - 1)
            })
            .collect();
        for row in span.basis_rows() {
            let pcol = row.iter().position(|x| !Field::is_zero(x)).unwrap();
            let mut rw = Vec::new();
            for (j, c) in row.iter().enumerate() {
                if j != pcol && !Field::is_zero(c) {
                    rw.push((base_index[&j], Field::neg(c)));
                }
            }
            rewrite.insert(cur[pcol].clone(), rw);
        }
        if new_count == 0 {
            zero_len = Some(len);
            break;
        }
        prev = cur;
    }

    let Some(zero_len) = zero_len else {
        return Err(Error::NotFiniteDimensional { cap: length_cap });
    };

    let index = basis
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    Ok(AlgebraBasis {
        presentation: pres.clone(),
        basis,
        index,
        rewrite,
        zero_len,
    })
}

pub const DEFAULT_LENGTH_CAP: usize = 30;
