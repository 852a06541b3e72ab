//! Acceptance suite: one test per criterion, each ending in a printed
//! pass line. Every tolerance here is exact; the arithmetic is rational.

use bocs_core::dbq::{
    enumerate_indecomposables, right_algebra_dim, DifferentialBiquiver, MixedElement,
    DEFAULT_ORACLE_BUDGET,
};
use bocs_core::pathalg::{algebra_basis, DEFAULT_LENGTH_CAP};
use bocs_core::pipelines::{filtered_type, module_count_from_p1, schur_an, two_simple, TypeVerdict};
use bocs_core::reduce::{
    ar_quiver, gauge_equivalent, initial_provenance, minimal_edge_reduce, parse_script,
    predicted_arrow_count, regularise, run, superfluous_match, ArQuiver, Limits, LogRow,
    ScriptMove, Verdict,
};
use bocs_core::{ainfty, findim, fixtures, format, Fp};

fn script(name: &str) -> Vec<ScriptMove> {
    parse_script(fixtures::fixture_script(name).expect("script exists")).expect("script parses")
}

/// Scripted runs are shared across criteria; each is executed once, with
/// invariant checking on.
fn scripted_run(name: &str) -> std::sync::Arc<bocs_core::reduce::RunOutcome> {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<bocs_core::reduce::RunOutcome>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(out) = guard.get(name) {
        return out.clone();
    }
    let dbq = fixtures::fixture_bocs(name).expect("fixture");
    let out = Arc::new(
        run(&dbq, Limits::default(), Some(&script(name))).expect("scripted run is applicable"),
    );
    guard.insert(name.to_string(), out.clone());
    out
}

/// Limits for verdict-only pipeline runs; the ∂² invariant is certified
/// separately on the scripted runs, and skipping it keeps the loop-probing
/// phases cheap.
fn verdict_limits() -> Limits {
    Limits {
        check_invariants: false,
        ..Limits::default()
    }
}

/// Golden differential set on the computed arrow inventory.
fn with_diffs(state: &DifferentialBiquiver, diffs: &[(&str, MixedElement)]) -> DifferentialBiquiver {
    let mut golden = state.clone();
    golden.diff.clear();
    for (name, d) in diffs {
        golden.diff.insert(name.to_string(), d.clone());
    }
    golden
}

fn word(bq: &bocs_core::dbq::BiQuiver, names_math_order: &[&str]) -> MixedElement {
    let mut it = names_math_order.iter().rev();
    let mut out = MixedElement::of_arrow(bq, it.next().unwrap());
    for n in it {
        out = MixedElement::of_arrow(bq, n).mul(bq, &out);
    }
    out
}

#[test]
fn criterion_01_sl2_flow() {
    let out = scripted_run("sl2");
    assert_eq!(out.verdict, Verdict::Terminal);
    assert_eq!(out.state.vertex_count(), 3);
    assert_eq!(out.state.bq.dashed().count(), 6);
    assert_eq!(out.state.bq.solid().count(), 0);
    let arq = ar_quiver(&out.state, &out.provenance);
    assert_eq!((arq.nodes.len(), arq.edges.len()), (3, 3));
    // Published differentials (φ' = phi_3_1, φ'' = phi_2_3, φ''' = phi_3_3,
    // ι_a = a_t, π_a = a_s): ∂(φ') = ι_a φ, ∂(φ'') = -φ π_a,
    // ∂(φ''') = ι_a φ'' - φ' π_a. Monomial supports must match exactly;
    // signs up to a ±1 arrow gauge.
    let bq = &out.state.bq;
    let golden = with_diffs(
        &out.state,
        &[
            ("phi_3_1", word(bq, &["a_t", "phi"])),
            ("phi_2_3", word(bq, &["phi", "a_s"]).neg()),
            (
                "phi_3_3",
                word(bq, &["a_t", "phi_2_3"]).add(&word(bq, &["phi_3_1", "a_s"]).neg()),
            ),
        ],
    );
    assert!(gauge_equivalent(&out.state, &golden));
    println!("criterion 1 PASS: sl2 flow terminal (3 vertices, 6 dashed), AR 3/3, differentials match up to gauge");
}

#[test]
fn criterion_02_a3_flow() {
    let dbq = fixtures::fixture_bocs("a3_regular").unwrap();
    let prov = initial_provenance(&dbq);
    let (s1, prov) = minimal_edge_reduce(&dbq, &prov, "a").unwrap();
    let (s2, prov) = minimal_edge_reduce(&s1, &prov, "b_3_4").unwrap();
    // Post step 2: ∂(a_t) = b_34s a_t52, ∂(b_52) = -a_t52 + b_34t b,
    // ∂(a_s15) = -a_s b_34s.
    let bq2 = &s2.bq;
    let golden2 = with_diffs(
        &s2,
        &[
            ("a_t", word(bq2, &["b_3_4_s", "a_t_5_2"])),
            (
                "b_5_2",
                word(bq2, &["a_t_5_2"])
                    .neg()
                    .add(&word(bq2, &["b_3_4_t", "b"])),
            ),
            ("a_s_1_5", word(bq2, &["a_s", "b_3_4_s"]).neg()),
        ],
    );
    assert!(gauge_equivalent(&s2, &golden2));
    // Regularise b_52; then ∂(a_t) = b_34s b_34t b.
    let m = superfluous_match(&s2, "b_5_2").expect("b_5_2 is superfluous");
    let s3 = regularise(&s2, &m).unwrap();
    let bq3 = &s3.bq;
    let golden3 = with_diffs(
        &s3,
        &[
            ("a_t", word(bq3, &["b_3_4_s", "b_3_4_t", "b"])),
            ("a_s_1_5", word(bq3, &["a_s", "b_3_4_s"]).neg()),
        ],
    );
    assert!(gauge_equivalent(&s3, &golden3));
    let (s4, prov) = minimal_edge_reduce(&s3, &prov, "b").unwrap();
    assert_eq!(s4.vertex_count(), 6);
    assert_eq!(s4.bq.solid().count(), 0);
    assert_eq!(s4.bq.dashed().count(), 9);
    let arq = ar_quiver(&s4, &prov);
    assert_eq!((arq.nodes.len(), arq.edges.len()), (6, 6));
    println!("criterion 2 PASS: A3 flow terminal (6 vertices, 9 dashed), AR 6/6, intermediate differentials match up to gauge");
}

/// The reference thirty-row run: (move kind, vertices, arrows). R rows are
/// minimal edge reductions, G rows regularisations.
const MAZORCHUK_ROWS: &[(char, usize, usize)] = &[
    ('S', 3, 6),
    ('R', 4, 14),
    ('R', 5, 35),
    ('R', 6, 55),
    ('G', 6, 53),
    ('G', 6, 51),
    ('R', 7, 75),
    ('G', 7, 73),
    ('G', 7, 71),
    ('G', 7, 69),
    ('G', 7, 67),
    ('R', 8, 107),
    ('G', 8, 105),
    ('G', 8, 103),
    ('G', 8, 101),
    ('G', 8, 99),
    ('G', 8, 97),
    ('G', 8, 95),
    ('R', 9, 156),
    ('G', 9, 154),
    ('G', 9, 152),
    ('G', 9, 150),
    ('G', 9, 148),
    ('G', 9, 146),
    ('G', 9, 144),
    ('G', 9, 142),
    ('G', 9, 140),
    ('G', 9, 138),
    ('G', 9, 136),
];

fn row_kind(descr: &str) -> char {
    if descr == "start" {
        'S'
    } else if descr == "regularisations" {
        'A'
    } else if descr.starts_with("minimal edge reduction") {
        'R'
    } else if descr.starts_with("regularisation at") {
        'G'
    } else if descr.starts_with("removing") {
        'E'
    } else {
        '?'
    }
}

#[test]
fn criterion_03_mazorchuk_table() {
    let out = scripted_run("mazorchuk");
    assert_eq!(out.verdict, Verdict::Terminal);
    let got: Vec<(char, usize, usize)> = out
        .log
        .iter()
        .map(|r| (row_kind(&r.descr), r.vertices, r.arrows))
        .collect();
    assert_eq!(got, MAZORCHUK_ROWS, "scripted replay rows");
    assert_eq!(out.state.vertex_count(), 9);
    assert_eq!(out.state.arrow_count(), 136);
    // The default strategy reaches the same terminal.
    let free = run(
        &fixtures::fixture_bocs("mazorchuk").unwrap(),
        verdict_limits(),
        None,
    )
    .unwrap();
    assert_eq!(free.verdict, Verdict::Terminal);
    assert_eq!(free.state.vertex_count(), 9);
    assert_eq!(free.state.arrow_count(), 136);
    println!("criterion 3 PASS: mazorchuk scripted replay matches all 29 table rows; default strategy also ends at (9, 136)");
}

/// Named rows of the two tame Schur tables: start, ten named moves, final
/// regularisation sweep.
const H4_ROWS: &[(char, usize, usize)] = &[
    ('S', 4, 9),
    ('R', 5, 20),
    ('E', 5, 19),
    ('R', 6, 42),
    ('R', 7, 64),
    ('R', 8, 85),
    ('R', 9, 83),
    ('R', 10, 105),
    ('R', 11, 139),
    ('R', 12, 180),
    ('R', 13, 228),
    ('A', 13, 194),
];

const R4_ROWS: &[(char, usize, usize)] = &[
    ('S', 4, 9),
    ('R', 5, 20),
    ('E', 5, 19),
    ('R', 6, 42),
    ('R', 7, 63),
    ('R', 8, 85),
    ('R', 9, 92),
    ('R', 10, 125),
    ('R', 11, 142),
    ('R', 12, 170),
    ('R', 13, 222),
    ('A', 13, 194),
];

fn named_rows(log: &[LogRow]) -> Vec<(char, usize, usize)> {
    log.iter()
        .map(|r| (row_kind(&r.descr), r.vertices, r.arrows))
        .filter(|(k, _, _)| *k != 'G')
        .collect()
}

fn check_tame_table(name: &str, expect: &[(char, usize, usize)]) -> ArQuiver {
    let out = scripted_run(name);
    assert_eq!(out.verdict, Verdict::Terminal, "{name} reaches terminal");
    assert_eq!(named_rows(&out.log), expect, "{name} table rows");
    ar_quiver(&out.state, &out.provenance)
}

#[test]
fn criterion_04_tame_schur_tables() {
    let arq_h4 = check_tame_table("h4", H4_ROWS);
    assert_eq!((arq_h4.nodes.len(), arq_h4.edges.len()), (13, 20));
    let arq_r4 = check_tame_table("r4", R4_ROWS);
    assert_eq!((arq_r4.nodes.len(), arq_r4.edges.len()), (13, 20));
    println!("criterion 4 PASS: h4 and r4 scripted replays match all 12 reference rows, both end at (13, 194) with AR quivers 13/20");
}

#[test]
fn criterion_05_filtered_finite_type() {
    for name in ["d3", "d4", "r4", "h4"] {
        let dbq = fixtures::fixture_bocs(name).unwrap();
        let verdict = filtered_type(&dbq, verdict_limits()).unwrap();
        assert!(verdict.is_finite(), "{name}: {verdict:?}");
    }
    // The exact Borel subalgebras of (D3) and (D4) are representation-
    // finite; the P¹ pipeline certifies it.
    for name in ["d3", "d4"] {
        let pres = fixtures::fixture_bocs(name).unwrap().solid_presentation();
        let basis = algebra_basis(&pres, DEFAULT_LENGTH_CAP).unwrap();
        let verdict = module_count_from_p1(&basis, verdict_limits()).unwrap();
        assert!(verdict.is_finite(), "borel of {name}: {verdict:?}");
    }
    println!("criterion 5 PASS: filtered type is finite for d3, d4, r4, h4; the d3 and d4 solid algebras pass the p1 finiteness check");
}

#[test]
fn criterion_06_two_simple_classification() {
    for s in 0..=3usize {
        for t in 0..=3usize {
            let (dbq, record) = two_simple(s, t);
            assert_eq!(
                right_algebra_dim(&dbq).unwrap(),
                2 + s + t + s * t,
                "dim R for ({s},{t})"
            );
            assert_eq!(record.right_algebra_dim, 2 + s + t + s * t);
            if s <= 1 {
                let verdict = filtered_type(&dbq, verdict_limits()).unwrap();
                let expect = if s == 0 { 2 } else { 3 };
                assert_eq!(verdict, TypeVerdict::Finite(expect), "({s},{t})");
            }
        }
    }
    for t in 0..=1usize {
        let (dbq, _) = two_simple(2, t);
        assert_eq!(
            filtered_type(&dbq, verdict_limits()).unwrap(),
            TypeVerdict::Inconclusive("loop".into()),
            "(2,{t})"
        );
    }
    println!("criterion 6 PASS: right algebra dims are 2+s+t+st on the 4x4 grid; finite iff s<=1 with terminal counts 2 and 3; loops for s=2, t<=1");
}

#[test]
fn criterion_07_schur_dimensions() {
    for (n, b, r) in [(2usize, 3usize, 5usize), (3, 6, 14), (4, 10, 30)] {
        let (pres, bocs, dims) = schur_an(n);
        assert_eq!(dims.exact_borel_dim, b);
        assert_eq!(dims.right_algebra_dim, r);
        // Recomputed from first principles.
        let solid = bocs.solid_presentation();
        assert_eq!(algebra_basis(&solid, DEFAULT_LENGTH_CAP).unwrap().dim(), b);
        assert_eq!(right_algebra_dim(&bocs).unwrap(), r);
        let basis = algebra_basis(&pres, DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(basis.dim(), 4 * (n - 1) + 1);
    }
    println!("criterion 7 PASS: schur dims recomputed: B = 3, 6, 10; R = 5, 14, 30; basic algebras 4(n-1)+1");
}

#[test]
fn criterion_08_homological_cross_checks() {
    // Minimal resolutions of all standard modules, term by term (vertex
    // indices are 0-based positions in the quasi-hereditary order).
    let cases: [(&str, Vec<Vec<Vec<usize>>>); 4] = [
        (
            "d3",
            vec![
                vec![vec![0], vec![1, 2], vec![2]],
                vec![vec![1], vec![2]],
                vec![vec![2]],
            ],
        ),
        (
            "r4",
            vec![
                vec![vec![0], vec![1]],
                vec![vec![1], vec![2], vec![3]],
                vec![vec![2], vec![3]],
                vec![vec![3]],
            ],
        ),
        (
            "h4",
            vec![
                vec![vec![0], vec![1], vec![3]],
                vec![vec![1], vec![2, 3]],
                vec![vec![2]],
                vec![vec![3]],
            ],
        ),
        (
            "d4",
            vec![
                vec![vec![0], vec![1], vec![2, 3], vec![3]],
                vec![vec![1], vec![2, 3], vec![3]],
                vec![vec![2], vec![3]],
                vec![vec![3]],
            ],
        ),
    ];
    for (name, shapes) in &cases {
        let basis = algebra_basis(&fixtures::fixture_algebra(name).unwrap(), DEFAULT_LENGTH_CAP)
            .unwrap();
        for (i, expect) in shapes.iter().enumerate() {
            let delta = findim::standard_module(&basis, i);
            let res = findim::minimal_resolution(&basis, &delta, 10).unwrap();
            assert_eq!(&res.shape(), expect, "{name}: resolution of Delta({i})");
        }
        let report =
            ainfty::verify_bocs_counts(&basis, &fixtures::fixture_bocs(name).unwrap()).unwrap();
        assert!(report.is_clean(), "{name}: {:?}", report.mismatches);
    }
    // Merkulov: the only candidate higher multiplication of (D4) vanishes.
    let basis = fixtures::d4_algebra_basis();
    let standards: Vec<_> = (0..4).map(|i| findim::standard_module(&basis, i)).collect();
    let complex = ainfty::HomComplex::new(&basis, &standards).unwrap();
    let split = ainfty::choose_splitting(&complex, -1..=3);
    let a = split.harmonic_basis(0, 1, 1)[0].clone();
    let b = split.harmonic_basis(1, 2, 1)[0].clone();
    let d = split.harmonic_basis(2, 3, 1)[0].clone();
    let m3 = split.m_n(&[d, b, a]);
    assert!(m3.iter().all(|c| bocs_core::scalar::Field::is_zero(c)));
    println!("criterion 8 PASS: resolutions of all standards match the reference shapes; bocs counts clean for d3, r4, h4, d4; m3(d,b,a) = 0");
}

#[test]
fn criterion_09_p1_oracle_equivalence() {
    for (pres, expect) in [(fixtures::kxx_algebra(), 2usize), (fixtures::ka2_algebra(), 3)] {
        let basis = algebra_basis(&pres, DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(
            module_count_from_p1(&basis, verdict_limits()).unwrap(),
            TypeVerdict::Finite(expect)
        );
        // Independent brute-force enumeration over F_2 at caps <= 2, through
        // the regular bocs of the algebra.
        let regular = regular_bocs(&pres);
        let caps = vec![2usize; pres.quiver.vertices.len()];
        let oracle =
            enumerate_indecomposables::<Fp<2>>(&regular, &caps, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(oracle.indecomposables.len(), expect);
    }
    println!("criterion 9 PASS: p1 module counts (2 for k[x]/(x^2), 3 for kA2) match brute-force enumeration over F_2");
}

/// The regular bocs of an algebra presentation: same solid data, no dashed
/// arrows, zero differential.
fn regular_bocs(pres: &bocs_core::pathalg::AlgebraPresentation) -> DifferentialBiquiver {
    use bocs_core::dbq::{BArrow, BiQuiver, Factor, Word};
    let q = &pres.quiver;
    let bq = BiQuiver {
        vertices: q.vertices.clone(),
        arrows: q
            .arrows
            .iter()
            .map(|a| BArrow {
                name: a.name.clone(),
                source: q.vertices[a.source].clone(),
                target: q.vertices[a.target].clone(),
                dashed: false,
            })
            .collect(),
    };
    let relations = pres
        .relations
        .iter()
        .map(|r| {
            let mut out = MixedElement::zero();
            for (p, c) in &r.terms {
                out.add_term(
                    Word {
                        source: q.vertices[p.source].clone(),
                        factors: p
                            .arrows
                            .iter()
                            .map(|&ai| Factor::Solid(q.arrows[ai].name.clone()))
                            .collect(),
                    },
                    c.clone(),
                );
            }
            out
        })
        .collect();
    DifferentialBiquiver {
        name: format!("regular_{}", "algebra"),
        bq,
        diff: Default::default(),
        relations,
    }
}

#[test]
fn criterion_10_property_suites() {
    // (a) ∂² = 0 after every step of every scripted run: the runs above are
    // executed with invariant checking on (the default), so reaching a
    // verdict at all certifies it. Re-run explicitly here.
    for name in ["sl2", "a3_regular", "mazorchuk", "r4", "h4"] {
        let out = scripted_run(name);
        assert_eq!(out.verdict, Verdict::Terminal, "{name}");
    }
    // (b) Count arithmetic of minimal edge reduction on every scripted row.
    for name in ["sl2", "a3_regular", "mazorchuk", "r4", "h4"] {
        let dbq = fixtures::fixture_bocs(name).unwrap();
        let mut state = dbq.clone();
        let mut prov = initial_provenance(&dbq);
        for mv in script(name) {
            match mv {
                ScriptMove::Reduce(arrow) => {
                    let predicted = predicted_arrow_count(&state, &arrow);
                    let (next, p) = minimal_edge_reduce(&state, &prov, &arrow).unwrap();
                    assert_eq!(next.arrow_count(), predicted, "{name}: reduce {arrow}");
                    assert_eq!(next.vertex_count(), state.vertex_count() + 1);
                    state = next;
                    prov = p;
                }
                ScriptMove::Regularise(arrow) => {
                    let before = state.arrow_count();
                    let m = superfluous_match(&state, &arrow).unwrap();
                    state = regularise(&state, &m).unwrap();
                    assert_eq!(state.arrow_count(), before - 2);
                }
                ScriptMove::Eliminate(arrow) => {
                    let before = state.arrow_count();
                    let (gi, _) = bocs_core::reduce::find_eliminable(&state).unwrap();
                    state = bocs_core::reduce::eliminate_arrow(&state, gi, &arrow).unwrap();
                    assert_eq!(state.arrow_count(), before - 1);
                }
                ScriptMove::AutoReg | ScriptMove::RegAll => {
                    while let Some(m) = bocs_core::reduce::find_superfluous(&state) {
                        let before = state.arrow_count();
                        state = regularise(&state, &m).unwrap();
                        assert_eq!(state.arrow_count(), before - 2);
                    }
                }
            }
        }
    }
    // (c) Terminal invariants are move-order independent on the mazorchuk
    // bocs: the scripted and the default strategy agree on vertex count,
    // dashed count, and the Δ-support multisets.
    {
        let scripted = scripted_run("mazorchuk");
        let free = run(
            &fixtures::fixture_bocs("mazorchuk").unwrap(),
            verdict_limits(),
            None,
        )
        .unwrap();
        assert_eq!(free.verdict, Verdict::Terminal);
        let supports = |out: &bocs_core::reduce::RunOutcome| {
            let mut s: Vec<Vec<(String, usize)>> = ar_quiver(&out.state, &out.provenance)
                .nodes
                .iter()
                .map(|n| n.support.iter().map(|(k, v)| (k.clone(), *v)).collect())
                .collect();
            s.sort();
            s
        };
        assert_eq!(scripted.state.vertex_count(), free.state.vertex_count());
        assert_eq!(
            scripted.state.bq.dashed().count(),
            free.state.bq.dashed().count()
        );
        assert_eq!(supports(&scripted), supports(&free));
    }
    // (d) Morphism composition is associative and unital on random small
    // instances over F_5 (sl2 and mazorchuk bocses).
    {
        use bocs_core::dbq::{compose_morphisms, morphism_space, DbqMorphism, DbqRep};
        use bocs_core::matrix::Matrix;
        let mut seed = 9u64;
        let mut rng = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as i64
        };
        for name in ["sl2", "mazorchuk"] {
            let dbq = fixtures::fixture_bocs(name).unwrap();
            let nv = dbq.bq.vertices.len();
            let rep = |vals: &mut dyn FnMut() -> i64, dims: Vec<usize>| -> DbqRep<Fp<5>> {
                let mats = dbq
                    .bq
                    .solid()
                    .map(|a| {
                        let r = dims[dbq.bq.vertex_pos(&a.target).unwrap()];
                        let c = dims[dbq.bq.vertex_pos(&a.source).unwrap()];
                        (a.name.clone(), Matrix::from_fn(r, c, |_, _| Fp::<5>::new(vals())))
                    })
                    .collect();
                DbqRep { dims, mats }
            };
            let m = rep(&mut rng, vec![1; nv]);
            let n = rep(&mut rng, vec![1; nv]);
            let p = rep(&mut rng, vec![1; nv]);
            let q = rep(&mut rng, vec![1; nv]);
            let fs = morphism_space(&dbq, &m, &n);
            let gs = morphism_space(&dbq, &n, &p);
            let hs = morphism_space(&dbq, &p, &q);
            let idn = DbqMorphism::identity(&dbq, &n);
            for f in fs.iter().take(3) {
                let idf = compose_morphisms(&dbq, &idn, f, &m, &n, &n);
                assert_eq!(&idf, f, "{name}: left unit");
                for g in gs.iter().take(3) {
                    for h in hs.iter().take(3) {
                        let hg = compose_morphisms(&dbq, h, g, &n, &p, &q);
                        let gf = compose_morphisms(&dbq, g, f, &m, &n, &p);
                        let left = compose_morphisms(&dbq, &hg, f, &m, &n, &q);
                        let right = compose_morphisms(&dbq, h, &gf, &m, &p, &q);
                        assert_eq!(left, right, "{name}: associativity");
                    }
                }
            }
        }
    }
    // (e) Parse/emit round-trips are stable on every fixture.
    for name in fixtures::FIXTURE_NAMES {
        let dbq = fixtures::fixture_bocs(name).unwrap();
        let parsed = format::parse_bocs(&format::emit_bocs(&dbq)).unwrap();
        assert_eq!(parsed.bq, dbq.bq, "{name}");
        assert_eq!(parsed.diff, dbq.diff, "{name}");
        assert_eq!(parsed.relations, dbq.relations, "{name}");
    }
    println!("criterion 10 PASS: ∂²=0 along every scripted run, count arithmetic exact on every row, terminal invariants order-independent, composition associative/unital, round-trips stable");
}
