//! Command-line front end: validate and reduce bocs files, extract AR
//! quivers, run the P¹ and standardization pipelines, and query the builtin
//! example registry.
//!
//! Exit codes: 0 success / terminal, 2 loop encountered, 3 limits exceeded,
//! 1 usage or input error.

use bocs_core::dbq::DifferentialBiquiver;
use bocs_core::pathalg::{algebra_basis, AlgebraPresentation, DEFAULT_LENGTH_CAP};
use bocs_core::pipelines::TypeVerdict;
use bocs_core::reduce::{ar_quiver, parse_script, run, Limits, Verdict};
use bocs_core::{ainfty, findim, fixtures, format, pipelines, Error, Fp};
use std::process::ExitCode;

const USAGE: &str = "\
usage:
  bocs validate FILE
  bocs reduce FILE [--script F] [--max-steps N] [--max-arrows N] [--log table|json]
  bocs ar FILE [--dot OUT]
  bocs p1 ALGFILE
  bocs standardize ALGFILE [--against FILE]
  bocs twosimple S T
  bocs schur N
  bocs example NAME [--emit bocs|algebra|script]
  bocs oracle FILE --char P --caps C1,C2,...

FILE may be a path or example:NAME (e.g. example:h4).";

fn main() -> ExitCode {
    // Die quietly when the output pipe closes (e.g. `bocs ar ... | head`).
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn load_bocs(spec: &str) -> Result<DifferentialBiquiver, Error> {
    if let Some(name) = spec.strip_prefix("example:") {
        return fixtures::fixture_bocs(name)
            .ok_or_else(|| Error::BadInput(format!("unknown example {name}")));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::BadInput(format!("cannot read {spec}: {e}")))?;
    format::parse_bocs(&text)
}

fn load_algebra(spec: &str) -> Result<AlgebraPresentation, Error> {
    if let Some(name) = spec.strip_prefix("example:") {
        return fixtures::fixture_algebra(name)
            .ok_or_else(|| Error::BadInput(format!("unknown example {name}")));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::BadInput(format!("cannot read {spec}: {e}")))?;
    format::parse_algebra(&text)
}

fn flag_value<'a>(args: &'a [String], name: &str) -> Option<&'a str> {
    args.iter()
        .position(|a| a == name)
        .and_then(|i| args.get(i + 1))
        .map(|s| s.as_str())
}

fn verdict_code(v: &Verdict) -> ExitCode {
    match v {
        Verdict::Terminal => ExitCode::from(0),
        Verdict::LoopEncountered => ExitCode::from(2),
        Verdict::LimitExceeded => ExitCode::from(3),
    }
}

fn limits_from(args: &[String]) -> Result<Limits, Error> {
    let mut limits = Limits::default();
    if let Some(v) = flag_value(args, "--max-steps") {
        limits.max_steps = v
            .parse()
            .map_err(|_| Error::BadInput(format!("bad --max-steps {v}")))?;
    }
    if let Some(v) = flag_value(args, "--max-arrows") {
        limits.max_arrows = v
            .parse()
            .map_err(|_| Error::BadInput(format!("bad --max-arrows {v}")))?;
    }
    Ok(limits)
}

fn dispatch(args: &[String]) -> Result<ExitCode, Error> {
    let Some(cmd) = args.first() else {
        eprintln!("{USAGE}");
        return Ok(ExitCode::from(1));
    };
    match cmd.as_str() {
        "validate" => {
            let file = args.get(1).ok_or_else(|| Error::BadInput("missing FILE".into()))?;
            let dbq = load_bocs(file)?;
            let report = dbq.validate();
            if report.is_valid() {
                println!(
                    "valid{}: {} vertices, {} solid, {} dashed, {} relations",
                    if report.directed { ", directed" } else { "" },
                    dbq.vertex_count(),
                    dbq.bq.solid().count(),
                    dbq.bq.dashed().count(),
                    dbq.relations.len()
                );
                Ok(ExitCode::from(0))
            } else {
                for p in &report.problems {
                    eprintln!("invalid: {p}");
                }
                Ok(ExitCode::from(1))
            }
        }
        "reduce" => {
            let file = args.get(1).ok_or_else(|| Error::BadInput("missing FILE".into()))?;
            let dbq = load_bocs(file)?;
            let limits = limits_from(args)?;
            let script = match flag_value(args, "--script") {
                Some(f) => {
                    let text = if let Some(name) = f.strip_prefix("example:") {
                        fixtures::fixture_script(name)
                            .ok_or_else(|| {
                                Error::BadInput(format!("no builtin script for {name}"))
                            })?
                            .to_string()
                    } else {
                        std::fs::read_to_string(f)
                            .map_err(|e| Error::BadInput(format!("cannot read {f}: {e}")))?
                    };
                    Some(parse_script(&text)?)
                }
                None => None,
            };
            let out = run(&dbq, limits, script.as_deref())?;
            match flag_value(args, "--log").unwrap_or("table") {
                "json" => print!("{}", format::emit_log_json(&out.log)),
                _ => print!("{}", format::emit_log_table(&out.log)),
            }
            println!("verdict: {:?}", out.verdict);
            Ok(verdict_code(&out.verdict))
        }
        "ar" => {
            let file = args.get(1).ok_or_else(|| Error::BadInput("missing FILE".into()))?;
            let dbq = load_bocs(file)?;
            let out = run(&dbq, limits_from(args)?, None)?;
            if out.verdict != Verdict::Terminal {
                eprintln!("reduction did not reach a terminal bocs: {:?}", out.verdict);
                return Ok(verdict_code(&out.verdict));
            }
            let arq = ar_quiver(&out.state, &out.provenance);
            println!("{} nodes, {} edges", arq.nodes.len(), arq.edges.len());
            for n in &arq.nodes {
                let support: Vec<String> = n
                    .support
                    .iter()
                    .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m))
                    .collect();
                println!("node {}: [{}]", n.vertex, support.join(" "));
            }
            for e in &arq.edges {
                println!("edge {}: {} -> {}", e.name, e.source, e.target);
            }
            if let Some(path) = flag_value(args, "--dot") {
                std::fs::write(path, format::emit_dot(&arq))
                    .map_err(|e| Error::BadInput(format!("cannot write {path}: {e}")))?;
                println!("wrote {path}");
            }
            Ok(ExitCode::from(0))
        }
        "p1" => {
            let file = args.get(1).ok_or_else(|| Error::BadInput("missing ALGFILE".into()))?;
            let pres = load_algebra(file)?;
            let basis = algebra_basis(&pres, DEFAULT_LENGTH_CAP)?;
            let p1 = pipelines::p1_construct(&basis);
            println!(
                "p1 biquiver: {} vertices, {} solid, {} dashed",
                p1.vertex_count(),
                p1.bq.solid().count(),
                p1.bq.dashed().count()
            );
            match pipelines::module_count_from_p1(&basis, limits_from(args)?)? {
                TypeVerdict::Finite(n) => {
                    println!("finite: {n} indecomposables");
                    Ok(ExitCode::from(0))
                }
                TypeVerdict::Inconclusive(reason) => {
                    println!("inconclusive: {reason}");
                    Ok(ExitCode::from(if reason == "loop" { 2 } else { 3 }))
                }
            }
        }
        "standardize" => {
            let file = args.get(1).ok_or_else(|| Error::BadInput("missing ALGFILE".into()))?;
            let pres = load_algebra(file)?;
            let basis = algebra_basis(&pres, DEFAULT_LENGTH_CAP)?;
            let q = basis.quiver();
            let n = basis.vertex_count();
            let qh = findim::is_quasi_hereditary(&basis);
            println!(
                "algebra: dim {}, {}quasi-hereditary in the given order",
                basis.dim(),
                if qh.quasi_hereditary { "" } else { "NOT " }
            );
            let deltas: Vec<_> = (0..n).map(|i| findim::standard_module(&basis, i)).collect();
            for (i, d) in deltas.iter().enumerate() {
                let res = findim::minimal_resolution(&basis, d, findim::DEFAULT_RESOLUTION_CAP)?;
                let shape: Vec<String> = res
                    .shape()
                    .iter()
                    .map(|t| {
                        let names: Vec<String> =
                            t.iter().map(|&v| format!("P{}", q.vertices[v])).collect();
                        names.join("+")
                    })
                    .collect();
                println!(
                    "Delta({}): dim {}, resolution {}",
                    q.vertices[i],
                    d.total_dim(),
                    shape.join(" <- ")
                );
            }
            for i in 0..n {
                for j in 0..n {
                    let e1 = findim::ext_dim(&basis, &deltas[i], &deltas[j], 1, 10)?;
                    let e2 = findim::ext_dim(&basis, &deltas[i], &deltas[j], 2, 10)?;
                    let h = findim::hom_dim(q, &deltas[i], &deltas[j]);
                    if e1 + e2 + h > 0 {
                        println!(
                            "({},{}): hom {} ext1 {} ext2 {}",
                            q.vertices[i], q.vertices[j], h, e1, e2
                        );
                    }
                }
            }
            if let Some(f) = flag_value(args, "--against") {
                let claimed = load_bocs(f)?;
                let report = ainfty::verify_bocs_counts(&basis, &claimed)?;
                if report.is_clean() {
                    println!("claimed bocs: counts are clean");
                } else {
                    for m in &report.mismatches {
                        println!("claimed bocs mismatch: {m}");
                    }
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::from(0))
        }
        "twosimple" => {
            let s: usize = args
                .get(1)
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::BadInput("missing S".into()))?;
            let t: usize = args
                .get(2)
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::BadInput("missing T".into()))?;
            let (dbq, record) = pipelines::two_simple(s, t);
            let dim = bocs_core::dbq::right_algebra_dim(&dbq)?;
            println!(
                "two_simple({s},{t}): right algebra dim {dim} (predicted {}), predicted type: {}",
                record.right_algebra_dim,
                if record.finite {
                    "finite"
                } else if record.tame {
                    "tame"
                } else {
                    "wild"
                }
            );
            let verdict = pipelines::filtered_type(&dbq, Limits::default())?;
            match verdict {
                TypeVerdict::Finite(k) => {
                    println!("engine verdict: finite with {k} indecomposables");
                    Ok(ExitCode::from(0))
                }
                TypeVerdict::Inconclusive(reason) => {
                    println!("engine verdict: inconclusive ({reason})");
                    Ok(ExitCode::from(if reason == "loop" { 2 } else { 3 }))
                }
            }
        }
        "schur" => {
            let n: usize = args
                .get(1)
                .and_then(|x| x.parse().ok())
                .filter(|&n| n >= 2)
                .ok_or_else(|| Error::BadInput("missing or bad N (need N >= 2)".into()))?;
            let (pres, bocs, dims) = pipelines::schur_an(n);
            let basis = algebra_basis(&pres, DEFAULT_LENGTH_CAP)?;
            let borel = pipelines::schur_borel_dim(n)?;
            let right = bocs_core::dbq::right_algebra_dim(&bocs)?;
            println!(
                "schur({n}): basic algebra dim {} (expected {}), exact Borel dim {} (expected {}), right algebra dim {} (expected {})",
                basis.dim(),
                dims.basic_algebra_dim,
                borel,
                dims.exact_borel_dim,
                right,
                dims.right_algebra_dim
            );
            Ok(ExitCode::from(0))
        }
        "example" => {
            let name = args.get(1).ok_or_else(|| Error::BadInput("missing NAME".into()))?;
            match flag_value(args, "--emit").unwrap_or("bocs") {
                "algebra" => {
                    let pres = fixtures::fixture_algebra(name)
                        .ok_or_else(|| Error::BadInput(format!("no algebra fixture {name}")))?;
                    print!("{}", format::emit_algebra(name, &pres));
                }
                "script" => {
                    let text = fixtures::fixture_script(name)
                        .ok_or_else(|| Error::BadInput(format!("no builtin script for {name}")))?;
                    print!("{text}");
                }
                _ => {
                    let dbq = fixtures::fixture_bocs(name)
                        .ok_or_else(|| Error::BadInput(format!("no bocs fixture {name}")))?;
                    print!("{}", format::emit_bocs(&dbq));
                }
            }
            Ok(ExitCode::from(0))
        }
        "oracle" => {
            let file = args.get(1).ok_or_else(|| Error::BadInput("missing FILE".into()))?;
            let dbq = load_bocs(file)?;
            let p: u64 = flag_value(args, "--char")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::BadInput("missing --char P".into()))?;
            let caps: Vec<usize> = flag_value(args, "--caps")
                .ok_or_else(|| Error::BadInput("missing --caps".into()))?
                .split(',')
                .map(|c| c.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::BadInput("bad --caps".into()))?;
            if caps.len() != dbq.vertex_count() {
                return Err(Error::BadInput(format!(
                    "need {} caps, got {}",
                    dbq.vertex_count(),
                    caps.len()
                )));
            }
            let budget = bocs_core::dbq::DEFAULT_ORACLE_BUDGET;
            let count = match p {
                2 => bocs_core::dbq::enumerate_indecomposables::<Fp<2>>(&dbq, &caps, budget)?
                    .indecomposables
                    .len(),
                3 => bocs_core::dbq::enumerate_indecomposables::<Fp<3>>(&dbq, &caps, budget)?
                    .indecomposables
                    .len(),
                5 => bocs_core::dbq::enumerate_indecomposables::<Fp<5>>(&dbq, &caps, budget)?
                    .indecomposables
                    .len(),
                _ => return Err(Error::BadInput("supported characteristics: 2, 3, 5".into())),
            };
            println!("{count} indecomposables within caps {caps:?} over F_{p}");
            Ok(ExitCode::from(0))
        }
        "--help" | "-h" | "help" => {
            println!("{USAGE}");
            Ok(ExitCode::from(0))
        }
        other => {
            eprintln!("unknown command {other}\n{USAGE}");
            Ok(ExitCode::from(1))
        }
    }
}
