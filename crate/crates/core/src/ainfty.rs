//! Hom complexes of families of projective resolutions, the Merkulov
//! transfer of A-infinity products onto their cohomology, and the count
//! cross-checks between a quasi-hereditary algebra and a claimed bocs.

use crate::dbq::DifferentialBiquiver;
use crate::findim::{
    ext_dim, hom_dim, hom_space, minimal_resolution, standard_module, ModuleMap, Resolution,
    DEFAULT_RESOLUTION_CAP,
};
use crate::matrix::Matrix;
use crate::pathalg::AlgebraBasis;
use crate::scalar::{Field, Rat};
use crate::Error;
use std::collections::BTreeMap;

/// The differential graded category of a family of resolutions: objects are
/// family indices, a degree-k morphism shifts the resolution degree by k.
pub struct HomComplex<'a> {
    pub basis: &'a AlgebraBasis,
    pub resolutions: Vec<Resolution>,
}

/// Element of the complex: components keyed by source resolution degree m,
/// each a module map P_src[m] -> P_tgt[m-k].
#[derive(Clone, Debug)]
pub struct ComplexElement {
    pub source: usize,
    pub target: usize,
    pub degree: i64,
    pub components: BTreeMap<usize, ModuleMap<Rat>>,
}

impl ComplexElement {
    pub fn zero(source: usize, target: usize, degree: i64) -> Self {
        ComplexElement {
            source,
            target,
            degree,
            components: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|f| f.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            (self.source, self.target, self.degree),
            (other.source, other.target, other.degree)
        );
        let mut components = self.components.clone();
        for (m, f) in &other.components {
            components
                .entry(*m)
                .and_modify(|g| *g = g.add(f))
                .or_insert_with(|| f.clone());
        }
        components.retain(|_, f| !f.is_zero());
        ComplexElement {
            source: self.source,
            target: self.target,
            degree: self.degree,
            components,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ComplexElement {
            source: self.source,
            target: self.target,
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|(m, f)| (*m, f.scale(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Field::neg(&Rat::one()))
    }
}

impl<'a> HomComplex<'a> {
    pub fn new(
        basis: &'a AlgebraBasis,
        modules: &[crate::findim::FDModule<Rat>],
    ) -> Result<Self, Error> {
        let resolutions = modules
            .iter()
            .map(|m| minimal_resolution(basis, m, DEFAULT_RESOLUTION_CAP))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomComplex { basis, resolutions })
    }

    /// Basis of the degree-k space from family i to family j.
    pub fn space_basis(&self, i: usize, j: usize, k: i64) -> Vec<ComplexElement> {
        let q = self.basis.quiver();
        let ri = &self.resolutions[i];
        let rj = &self.resolutions[j];
        let mut out = Vec::new();
        for m in 0..ri.modules.len() {
            let tm = m as i64 - k;
            if tm < 0 || tm as usize >= rj.modules.len() {
                continue;
            }
            for h in hom_space(q, &ri.modules[m], &rj.modules[tm as usize]) {
                let mut e = ComplexElement::zero(i, j, k);
                e.components.insert(m, h);
                out.push(e);
            }
        }
        out
    }

    /// d(f) = f∘∂ - (-1)^{|f|} ∂∘f.
    pub fn differential(&self, f: &ComplexElement) -> ComplexElement {
        let ri = &self.resolutions[f.source];
        let rj = &self.resolutions[f.target];
        let k = f.degree;
        let mut out = ComplexElement::zero(f.source, f.target, k + 1);
        let sign = if k.rem_euclid(2) == 0 {
            Field::neg(&Rat::one())
        } else {
            Rat::one()
        };
        for m in 0..ri.modules.len() {
            let tm = m as i64 - (k + 1);
            if tm < 0 || tm as usize >= rj.modules.len() {
                continue;
            }
            let mut acc: Option<ModuleMap<Rat>> = None;
            // f_{m-1} ∘ ∂^src_m
            if m >= 1 && m - 1 < ri.differentials.len() + 1 {
                if let Some(fm1) = f.components.get(&(m - 1)) {
                    if m - 1 < ri.modules.len() && m <= ri.differentials.len() {
                        let d = &ri.differentials[m - 1];
                        acc = Some(fm1.compose(d));
                    }
                }
            }
            // -(-1)^k ∂^tgt_{m-k} ∘ f_m
            if let Some(fm) = f.components.get(&m) {
                let src_deg = m as i64 - k;
                if src_deg >= 1 && (src_deg as usize) <= rj.differentials.len() {
                    let d = &rj.differentials[src_deg as usize - 1];
                    let t = d.compose(fm).scale(&sign);
                    acc = Some(match acc {
                        None => t,
                        Some(x) => x.add(&t),
                    });
                }
            }
            if let Some(a) = acc {
                if !a.is_zero() {
                    out.components.insert(m, a);
                }
            }
        }
        out
    }

    /// Composition g∘f (f applied first); zero when the families mismatch.
    pub fn compose(&self, g: &ComplexElement, f: &ComplexElement) -> ComplexElement {
        let mut out = ComplexElement::zero(f.source, g.target, f.degree + g.degree);
        if f.target != g.source {
            return out;
        }
        for (m, fm) in &f.components {
            let mid = *m as i64 - f.degree;
            if mid < 0 {
                continue;
            }
            if let Some(gm) = g.components.get(&(mid as usize)) {
                let comp = gm.compose(fm);
                if !comp.is_zero() {
                    out.components
                        .entry(*m)
                        .and_modify(|x| *x = x.add(&comp))
                        .or_insert(comp);
                }
            }
        }
        out.components.retain(|_, f| !f.is_zero());
        out
    }

    /// Coordinates of an element in a direct-sum space basis (one basis map
    /// per component slot, as produced by `space_basis`).
    fn coords(&self, space: &[ComplexElement], e: &ComplexElement) -> Vec<Rat> {
        if space.is_empty() {
            assert!(e.is_zero(), "nonzero element of an empty space");
            return Vec::new();
        }
        let keys: Vec<usize> = {
            let mut ks: Vec<usize> = space
                .iter()
                .flat_map(|b| b.components.keys().copied())
                .collect();
            ks.sort_unstable();
            ks.dedup();
            ks
        };
        let flat = |x: &ComplexElement| -> Vec<Rat> {
            let mut v = Vec::new();
            for &m in &keys {
                let shape = space
                    .iter()
                    .find_map(|b| b.components.get(&m))
                    .expect("key comes from the space");
                if let Some(f) = x.components.get(&m) {
                    for blk in &f.blocks {
                        for i in 0..blk.rows() {
                            v.extend(blk.row(i).iter().cloned());
                        }
                    }
                } else {
                    let len: usize = shape.blocks.iter().map(|b| b.rows() * b.cols()).sum();
                    v.extend(std::iter::repeat_n(<Rat as Field>::zero(), len));
                }
            }
            v
        };
        let cols: Vec<Vec<Rat>> = space.iter().map(flat).collect();
        let rows = cols[0].len();
        let sys = Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone());
        let rhs = Matrix::column(flat(e));
        let sol = sys.solve(&rhs).expect("element lies in the space");
        (0..cols.len())
            .map(|j| sol.particular[(j, 0)].clone())
            .collect()
    }
}

struct DegreeSplit {
    space: Vec<ComplexElement>,
    harmonic: Vec<ComplexElement>,
    /// Projection onto H in H-coordinates (nh x dim).
    p_matrix: Matrix<Rat>,
    /// Homotopy into the space one degree down (dim_{k-1} x dim_k).
    g_matrix: Matrix<Rat>,
}

/// Deterministic Merkulov splitting A = B ⊕ H ⊕ L per degree and family
/// pair: boundaries in rref order, harmonic representatives as the first
/// complement vectors, L the rest; G kills L ⊕ H and inverts d from L
/// onto B.
pub struct Splitting<'a, 'b> {
    pub complex: &'b HomComplex<'a>,
    splits: BTreeMap<(usize, usize, i64), DegreeSplit>,
}

pub fn choose_splitting<'a, 'b>(
    complex: &'b HomComplex<'a>,
    degree_range: std::ops::RangeInclusive<i64>,
) -> Splitting<'a, 'b> {
    let n = complex.resolutions.len();
    let lo = *degree_range.start();
    let hi = *degree_range.end();
    // Pass 1: spaces and differential matrices per key.
    let mut spaces: BTreeMap<(usize, usize, i64), Vec<ComplexElement>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in lo..=hi + 1 {
                spaces.insert((i, j, k), complex.space_basis(i, j, k));
            }
        }
    }
    let mut dmats: BTreeMap<(usize, usize, i64), Matrix<Rat>> = BTreeMap::new();
    for ((i, j, k), space) in &spaces {
        if *k > hi {
            continue;
        }
        let next = &spaces[&(*i, *j, k + 1)];
        let m = Matrix::from_fn(next.len(), space.len(), |r, c| {
            let img = complex.differential(&space[c]);
            complex.coords(next, &img)[r].clone()
        });
        dmats.insert((*i, *j, *k), m);
    }
    // Pass 2 and 3: the decomposition, then G through the L of the degree
    // below.
    #[allow(clippy::type_complexity)]
    let mut bhl: BTreeMap<(usize, usize, i64), (Vec<Vec<Rat>>, Vec<Vec<Rat>>, Vec<Vec<Rat>>)> =
        BTreeMap::new();
    for ((i, j, k), space) in &spaces {
        if *k > hi {
            continue;
        }
        let dim = space.len();
        let mut span = crate::matrix::RowSpan::<Rat>::new(dim);
        let mut b_vecs: Vec<Vec<Rat>> = Vec::new();
        if dim > 0 {
            if let Some(dprev) = dmats.get(&(*i, *j, k - 1)) {
                for c in 0..dprev.cols() {
                    let v = dprev.col_vec(c);
                    if span.insert(&v) {
                        b_vecs.push(v);
                    }
                }
            }
        }
        let mut h_vecs: Vec<Vec<Rat>> = Vec::new();
        if dim > 0 {
            for kv in dmats[&(*i, *j, *k)].kernel_basis() {
                let v = kv.col_vec(0);
                if span.insert(&v) {
                    h_vecs.push(v);
                }
            }
        }
        let mut l_vecs: Vec<Vec<Rat>> = Vec::new();
        for e in 0..dim {
            let mut v = vec![<Rat as Field>::zero(); dim];
            v[e] = Rat::one();
            if span.insert(&v) {
                l_vecs.push(v);
            }
        }
        bhl.insert((*i, *j, *k), (b_vecs, h_vecs, l_vecs));
    }
    let mut splits = BTreeMap::new();
    for ((i, j, k), space) in &spaces {
        if *k > hi {
            continue;
        }
        let dim = space.len();
        let (b_vecs, h_vecs, l_vecs) = &bhl[&(*i, *j, *k)];
        if dim == 0 {
            splits.insert(
                (*i, *j, *k),
                DegreeSplit {
                    space: space.clone(),
                    harmonic: Vec::new(),
                    p_matrix: Matrix::zero(0, 0),
                    g_matrix: Matrix::zero(
                        spaces.get(&(*i, *j, k - 1)).map_or(0, |s| s.len()),
                        0,
                    ),
                },
            );
            continue;
        }
        let cols: Vec<&Vec<Rat>> = b_vecs.iter().chain(h_vecs).chain(l_vecs).collect();
        let pmat = Matrix::from_fn(dim, dim, |r, c| cols[c][r].clone());
        let pinv = pmat.inverse().expect("B ⊕ H ⊕ L spans");
        let (nb, nh) = (b_vecs.len(), h_vecs.len());
        let p_matrix = Matrix::from_fn(nh, dim, |r, c| pinv[(nb + r, c)].clone());
        // G: for each B-basis vector, its preimage under d restricted to the
        // L of the degree below.
        let prev_dim = spaces.get(&(*i, *j, k - 1)).map_or(0, |s| s.len());
        let g_matrix = if nb == 0 || prev_dim == 0 {
            Matrix::zero(prev_dim, dim)
        } else {
            let (_, _, l_prev) = &bhl[&(*i, *j, k - 1)];
            let dprev = &dmats[&(*i, *j, k - 1)];
            let lmat = Matrix::from_fn(prev_dim, l_prev.len(), |r, c| l_prev[c][r].clone());
            let dl = dprev.mul(&lmat);
            // Solve d|_L x = b for all B vectors at once.
            let bmat = Matrix::from_fn(dim, nb, |r, c| b_vecs[c][r].clone());
            let sol = dl.solve(&bmat).expect("d maps L onto B");
            let preimages = lmat.mul(&sol.particular); // prev_dim x nb
            // G(v) = preimages · (B-coordinates of v).
            let bcoords = Matrix::from_fn(nb, dim, |r, c| pinv[(r, c)].clone());
            preimages.mul(&bcoords)
        };
        let harmonic = h_vecs
            .iter()
            .map(|v| {
                let mut e = ComplexElement::zero(*i, *j, *k);
                for (c, coeff) in v.iter().enumerate() {
                    if !coeff.is_zero() {
                        e = e.add(&space[c].scale(coeff));
                    }
                }
                e
            })
            .collect();
        splits.insert(
            (*i, *j, *k),
            DegreeSplit {
                space: space.clone(),
                harmonic,
                p_matrix,
                g_matrix,
            },
        );
    }
    Splitting { complex, splits }
}

impl<'a, 'b> Splitting<'a, 'b> {
    pub fn harmonic_basis(&self, i: usize, j: usize, k: i64) -> &[ComplexElement] {
        self.splits
            .get(&(i, j, k))
            .map(|s| s.harmonic.as_slice())
            .unwrap_or(&[])
    }

    pub fn cohomology_dim(&self, i: usize, j: usize, k: i64) -> usize {
        self.harmonic_basis(i, j, k).len()
    }

    /// Projection p onto H, in H-coordinates.
    pub fn project(&self, e: &ComplexElement) -> Vec<Rat> {
        let Some(split) = self.splits.get(&(e.source, e.target, e.degree)) else {
            assert!(e.is_zero(), "projection outside the computed degree range");
            return Vec::new();
        };
        if split.space.is_empty() {
            return Vec::new();
        }
        let v = self.complex.coords(&split.space, e);
        split.p_matrix.mul(&Matrix::column(v)).col_vec(0)
    }

    /// Homotopy G: vanishes on L ⊕ H and inverts d from L onto B.
    pub fn homotopy(&self, e: &ComplexElement) -> ComplexElement {
        let key = (e.source, e.target, e.degree);
        let Some(split) = self.splits.get(&key) else {
            assert!(e.is_zero(), "homotopy outside the computed degree range");
            return ComplexElement::zero(e.source, e.target, e.degree - 1);
        };
        let prev = self
            .complex
            .space_basis(e.source, e.target, e.degree - 1);
        if split.space.is_empty() || prev.is_empty() {
            return ComplexElement::zero(e.source, e.target, e.degree - 1);
        }
        let v = self.complex.coords(&split.space, e);
        let out = split.g_matrix.mul(&Matrix::column(v));
        let mut acc = ComplexElement::zero(e.source, e.target, e.degree - 1);
        for (c, b) in prev.iter().enumerate() {
            if !out[(c, 0)].is_zero() {
                acc = acc.add(&b.scale(&out[(c, 0)]));
            }
        }
        acc
    }

    /// Merkulov λ_n, with Gλ_1 := -1 by convention.
    pub fn lambda(&self, inputs: &[ComplexElement]) -> ComplexElement {
        assert!(inputs.len() >= 2);
        if inputs.len() == 2 {
            return self.complex.compose(&inputs[0], &inputs[1]);
        }
        let n = inputs.len();
        let src = inputs[n - 1].source;
        let tgt = inputs[0].target;
        let deg: i64 = inputs.iter().map(|x| x.degree).sum::<i64>() + 2 - n as i64;
        let mut acc = ComplexElement::zero(src, tgt, deg);
        for k in 1..n {
            let l = n - k;
            let left = &inputs[..k];
            let right = &inputs[k..];
            let gl_left = if k == 1 {
                left[0].neg()
            } else {
                self.homotopy(&self.lambda(left))
            };
            let gl_right = if l == 1 {
                right[0].neg()
            } else {
                self.homotopy(&self.lambda(right))
            };
            let sigma: i64 =
                k as i64 + (l as i64 - 1) * left.iter().map(|x| x.degree).sum::<i64>();
            let sign = if sigma.rem_euclid(2) == 0 {
                Rat::one()
            } else {
                Field::neg(&Rat::one())
            };
            // λ_n = -Σ (-1)^σ m₂(Gλ_k ⊗ Gλ_l)
            let term = self
                .complex
                .compose(&gl_left, &gl_right)
                .scale(&Field::neg(&sign));
            acc = acc.add(&term);
        }
        acc
    }

    /// Transferred product m_n = p λ_n i, in H-coordinates of the target.
    pub fn m_n(&self, inputs: &[ComplexElement]) -> Vec<Rat> {
        self.project(&self.lambda(inputs))
    }
}

// ---------------------------------------------------------------------------
// count verification

#[derive(Clone, Debug)]
pub struct CountReport {
    pub mismatches: Vec<String>,
}

impl CountReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check a claimed bocs against the homological data of the algebra: for
/// every ordered vertex pair, solid arrows must match dim Ext¹(Δi, Δj),
/// relation generators dim Ext²(Δi, Δj), and dashed arrows
/// dim Hom(Δi, Δj) - δ_ij. Vertices are matched positionally.
pub fn verify_bocs_counts(
    basis: &AlgebraBasis,
    claimed: &DifferentialBiquiver,
) -> Result<CountReport, Error> {
    let n = basis.vertex_count();
    let mut mismatches = Vec::new();
    if claimed.bq.vertices.len() != n {
        mismatches.push(format!(
            "vertex count differs: algebra has {n}, bocs has {}",
            claimed.bq.vertices.len()
        ));
        return Ok(CountReport { mismatches });
    }
    let q = basis.quiver();
    let deltas: Vec<_> = (0..n).map(|i| standard_module(basis, i)).collect();
    let label = |i: usize| claimed.bq.vertices[i].clone();
    for i in 0..n {
        for j in 0..n {
            let (li, lj) = (label(i), label(j));
            let solid = claimed
                .bq
                .solid()
                .filter(|a| a.source == li && a.target == lj)
                .count();
            let dashed = claimed
                .bq
                .dashed()
                .filter(|a| a.source == li && a.target == lj)
                .count();
            let rels = claimed
                .relations
                .iter()
                .filter(|r| {
                    r.endpoints(&claimed.bq)
                        .map(|(s, t)| s == li && t == lj)
                        .unwrap_or(false)
                })
                .count();
            let ext1 = ext_dim(basis, &deltas[i], &deltas[j], 1, DEFAULT_RESOLUTION_CAP)?;
            let ext2 = ext_dim(basis, &deltas[i], &deltas[j], 2, DEFAULT_RESOLUTION_CAP)?;
            let hom = hom_dim(q, &deltas[i], &deltas[j]);
            let want_dashed = hom - usize::from(i == j);
            if solid != ext1 {
                mismatches.push(format!(
                    "solid arrows {li}->{lj}: bocs has {solid}, Ext^1 gives {ext1}"
                ));
            }
            if rels != ext2 {
                mismatches.push(format!(
                    "relation generators {li}->{lj}: bocs has {rels}, Ext^2 gives {ext2}"
                ));
            }
            if dashed != want_dashed {
                mismatches.push(format!(
                    "dashed arrows {li}->{lj}: bocs has {dashed}, rad Hom gives {want_dashed}"
                ));
            }
        }
    }
    Ok(CountReport { mismatches })
}
