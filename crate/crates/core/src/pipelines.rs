//! End-to-end constructions: the P¹ biquiver of an algebra, the two-simple
//! family, the Schur (A_n) family, and representation-type verdicts.

use crate::dbq::{BArrow, BiQuiver, DifferentialBiquiver, Factor, MixedElement, Word};
use crate::pathalg::{algebra_basis, AlgebraBasis, AlgebraPresentation, PathElement};
use crate::reduce::{run, Limits, Verdict};
use crate::scalar::{Field, Rat};
use crate::Error;
use std::collections::BTreeMap;

/// Outcome of a finiteness check on a filtered module category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeVerdict {
    /// Terminal bocs reached; the count is the number of indecomposables.
    Finite(usize),
    /// Loop reduction or limits would be needed to continue.
    Inconclusive(String),
}

impl TypeVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, TypeVerdict::Finite(_))
    }
}

/// The differential biquiver of the category P¹(A): per chosen basis vector
/// of rad Hom(P_i, P_j), one solid arrow u: i -> j̄ plus two dashed arrows
/// v: i ⇢ j and w: ī ⇢ j̄ carrying the radical morphism components of the
/// two projective legs, with the differential dual to the multiplication of
/// rad A on all three families.
///
/// The chosen basis is the path basis in normal-form order, which makes the
/// construction deterministic. Both dashed families are needed: with only
/// the unbarred one the biquiver category stops identifying objects whose
/// isomorphisms use radical components on the second leg, and the category
/// is no longer finite for rad² ≠ 0.
fn bar_label(q: &crate::pathalg::Quiver, v: usize) -> String {
    format!("{}_bar", q.vertices[v])
}

pub fn p1_construct(basis: &AlgebraBasis) -> DifferentialBiquiver {
    let q = basis.quiver();
    let n = q.vertices.len();
    let bar = |v: usize| format!("{}_bar", q.vertices[v]);
    let plain = |v: usize| q.vertices[v].clone();
    let mut vertices: Vec<String> = (0..n).map(plain).collect();
    vertices.extend((0..n).map(bar));
    // Radical basis paths; a path p: s -> t is a basis vector of
    // rad Hom(P_t, P_s).
    let rad: Vec<&crate::pathalg::Path> =
        basis.basis.iter().filter(|p| !p.is_empty()).collect();
    let pname = |p: &crate::pathalg::Path, kind: &str| -> String {
        let mut s = kind.to_string();
        for a in p.arrows.iter().rev() {
            s.push('_');
            s.push_str(&q.arrows[*a].name);
        }
        s
    };
    let mut arrows = Vec::new();
    for p in &rad {
        let t = p.target(q);
        let s = p.source;
        arrows.push(BArrow {
            name: pname(p, "u"),
            source: plain(t),
            target: bar(s),
            dashed: false,
        });
    }
    for p in &rad {
        let t = p.target(q);
        let s = p.source;
        arrows.push(BArrow {
            name: pname(p, "v"),
            source: plain(t),
            target: plain(s),
            dashed: true,
        });
    }
    for p in &rad {
        let t = p.target(q);
        let s = p.source;
        arrows.push(BArrow {
            name: pname(p, "w"),
            source: bar(t),
            target: bar(s),
            dashed: true,
        });
    }
    let bq = BiQuiver { vertices, arrows };
    // For every factorization γ = β∘α (α acting first along the path), the
    // multiplication constant c^γ_{α,β} dualizes into
    //   ∂(u_γ) += c (w_α∘u_β - u_α∘v_β),
    //   ∂(v_γ) += c  v_α∘v_β,
    //   ∂(w_γ) += c  w_α∘w_β.
    // The signs are forced: they are the unique choice for which the two
    // Leibniz contributions to ∂² cancel against associativity of rad A.
    let mut diff: BTreeMap<String, MixedElement> = BTreeMap::new();
    let mut add = |name: String, term: MixedElement| {
        let cur = diff.remove(&name).unwrap_or_default();
        diff.insert(name, cur.add(&term));
    };
    for alpha in &rad {
        for beta in &rad {
            if beta.source != alpha.target(q) {
                continue;
            }
            let prod = basis.multiply(
                &PathElement::single((*beta).clone(), Rat::one()),
                &PathElement::single((*alpha).clone(), Rat::one()),
            );
            for (gamma, c) in &prod.terms {
                if gamma.is_empty() {
                    continue;
                }
                add(
                    pname(gamma, "u"),
                    MixedElement::single(
                        Word {
                            source: plain(beta.target(q)),
                            factors: vec![
                                Factor::Solid(pname(beta, "u")),
                                Factor::Dashed(pname(alpha, "w")),
                            ],
                        },
                        c.clone(),
                    )
                    .add(&MixedElement::single(
                        Word {
                            source: plain(beta.target(q)),
                            factors: vec![
                                Factor::Dashed(pname(beta, "v")),
                                Factor::Solid(pname(alpha, "u")),
                            ],
                        },
                        Field::neg(c),
                    )),
                );
                add(
                    pname(gamma, "v"),
                    MixedElement::single(
                        Word {
                            source: plain(beta.target(q)),
                            factors: vec![
                                Factor::Dashed(pname(beta, "v")),
                                Factor::Dashed(pname(alpha, "v")),
                            ],
                        },
                        c.clone(),
                    ),
                );
                add(
                    pname(gamma, "w"),
                    MixedElement::single(
                        Word {
                            source: bar_label(q, beta.target(q)),
                            factors: vec![
                                Factor::Dashed(pname(beta, "w")),
                                Factor::Dashed(pname(alpha, "w")),
                            ],
                        },
                        c.clone(),
                    ),
                );
            }
        }
    }
    diff.retain(|_, v| !v.is_zero());
    DifferentialBiquiver {
        name: "p1".into(),
        bq,
        diff,
        relations: vec![],
    }
}

/// Representation-type verdict for the algebra, through its P¹ biquiver:
/// a terminal reduction with v vertices means v - n indecomposables (the n
/// objects (P_i, 0, 0) are subtracted). Semisimple algebras short-circuit
/// to n.
pub fn module_count_from_p1(basis: &AlgebraBasis, limits: Limits) -> Result<TypeVerdict, Error> {
    let n = basis.vertex_count();
    if basis.dim() == n {
        // rad A = 0: the P¹ biquiver is empty and the bookkeeping above
        // degenerates; the simples are the only indecomposables.
        return Ok(TypeVerdict::Finite(n));
    }
    let p1 = p1_construct(basis);
    // Verdict pipeline: per-move ∂² checking is covered by the scripted
    // property suite and only slows the loop-probing phase down here.
    let limits = Limits {
        check_invariants: false,
        ..limits
    };
    let out = run(&p1, limits, None)?;
    Ok(match out.verdict {
        Verdict::Terminal => TypeVerdict::Finite(out.state.vertex_count() - n),
        Verdict::LoopEncountered => TypeVerdict::Inconclusive("loop".into()),
        Verdict::LimitExceeded => TypeVerdict::Inconclusive("limits".into()),
    })
}

/// Predicted classification data for the two-simple family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSimpleRecord {
    pub s: usize,
    pub t: usize,
    pub right_algebra_dim: usize,
    pub finite: bool,
    pub tame: bool,
}

/// The quasi-hereditary algebras with two simples: s solid and t dashed
/// arrows with zero differential, right algebra of dimension 2+s+t+st,
/// finite filtered type iff s <= 1 and tame iff s = 2.
pub fn two_simple(s: usize, t: usize) -> (DifferentialBiquiver, TwoSimpleRecord) {
    let dbq = crate::fixtures::two_simple_bocs(s, t);
    let record = TwoSimpleRecord {
        s,
        t,
        right_algebra_dim: 2 + s + t + s * t,
        finite: s <= 1,
        tame: s == 2,
    };
    (dbq, record)
}

/// Closed-form dimensions for the Schur (A_n) family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurDims {
    pub exact_borel_dim: usize,
    pub right_algebra_dim: usize,
    pub basic_algebra_dim: usize,
}

/// The basic algebra presentation, the bocs, and the expected dimensions
/// n(n+1)/2, n(n+1)(2n+1)/6 and 4(n-1)+1.
pub fn schur_an(n: usize) -> (AlgebraPresentation, DifferentialBiquiver, SchurDims) {
    assert!(n >= 2);
    let pres = crate::fixtures::schur_an_algebra(n);
    let bocs = crate::fixtures::schur_an_bocs(n);
    let dims = SchurDims {
        exact_borel_dim: n * (n + 1) / 2,
        right_algebra_dim: n * (n + 1) * (2 * n + 1) / 6,
        basic_algebra_dim: 4 * (n - 1) + 1,
    };
    (pres, bocs, dims)
}

/// Run the reduction to a verdict; Finite carries the terminal vertex count,
/// which is the number of indecomposables of the filtered category.
pub fn filtered_type(dbq: &DifferentialBiquiver, limits: Limits) -> Result<TypeVerdict, Error> {
    let limits = Limits {
        check_invariants: false,
        ..limits
    };
    let out = run(dbq, limits, None)?;
    Ok(match out.verdict {
        Verdict::Terminal => TypeVerdict::Finite(out.state.vertex_count()),
        Verdict::LoopEncountered => TypeVerdict::Inconclusive("loop".into()),
        Verdict::LimitExceeded => TypeVerdict::Inconclusive("limits".into()),
    })
}

/// Recompute the exact Borel dimension of the Schur bocs from first
/// principles (the solid algebra basis).
pub fn schur_borel_dim(n: usize) -> Result<usize, Error> {
    let bocs = crate::fixtures::schur_an_bocs(n);
    let pres = bocs.solid_presentation();
    Ok(algebra_basis(&pres, crate::pathalg::DEFAULT_LENGTH_CAP)?.dim())
}
