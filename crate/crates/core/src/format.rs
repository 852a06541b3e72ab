//! Line-oriented file formats for bocses and algebra presentations, plus
//! the table, JSON and DOT emitters.
//!
//! `*` composes right-to-left: in `b*a` the arrow `a` is applied first.
//! Omitted `diff` lines mean a zero differential; `#` starts a comment.

use crate::dbq::{BArrow, BiQuiver, DifferentialBiquiver, Factor, MixedElement, Word};
use crate::pathalg::{AlgebraPresentation, Path, PathElement, Quiver};
use crate::reduce::{ArQuiver, LogRow};
use crate::scalar::{rat, Field, Rat};
use crate::Error;
use num_bigint::BigInt;

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Split an expression into (sign, term) pairs at top-level + and -.
fn split_terms(expr: &str) -> Vec<(i64, String)> {
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    let mut started = false;
    for ch in expr.chars() {
        match ch {
            '+' | '-' if started || !current.trim().is_empty() => {
                if !current.trim().is_empty() {
                    terms.push((sign, current.trim().to_string()));
                }
                sign = if ch == '-' { -1 } else { 1 };
                current = String::new();
                started = true;
            }
            '-' => {
                sign = -sign;
                started = true;
            }
            '+' => {
                started = true;
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        terms.push((sign, current.trim().to_string()));
    }
    terms
}

fn parse_coeff(tok: &str) -> Option<Rat> {
    if let Some((n, d)) = tok.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(Rat::new(BigInt::from(n), BigInt::from(d)))
    } else {
        tok.trim().parse::<i64>().ok().map(rat)
    }
}

/// Parse an expression into a mixed element over the biquiver.
fn parse_mixed(bq: &BiQuiver, expr: &str, line: usize) -> Result<MixedElement, Error> {
    let mut out = MixedElement::zero();
    for (sign, term) in split_terms(expr) {
        let mut coeff = rat(sign);
        let mut factors_written: Vec<String> = Vec::new();
        for (k, tok) in term.split('*').enumerate() {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(perr(line, 1, "empty factor in expression"));
            }
            if k == 0 && tok.chars().next().unwrap().is_ascii_digit() && !is_arrow(bq, tok) {
                let c = parse_coeff(tok)
                    .ok_or_else(|| perr(line, 1, format!("bad coefficient {tok}")))?;
                coeff = coeff.mul(&c);
                continue;
            }
            factors_written.push(tok.to_string());
        }
        if factors_written.is_empty() {
            return Err(perr(line, 1, "term without arrows"));
        }
        // Rightmost factor acts first.
        let mut factors = Vec::new();
        for name in factors_written.iter().rev() {
            let a = bq
                .arrow(name)
                .ok_or_else(|| perr(line, 1, format!("unknown arrow {name} in expression")))?;
            factors.push(if a.dashed {
                Factor::Dashed(a.name.clone())
            } else {
                Factor::Solid(a.name.clone())
            });
        }
        let source = bq
            .arrow(factors[0].name())
            .expect("checked above")
            .source
            .clone();
        let word = Word { source, factors };
        if !word.is_composable(bq) {
            return Err(perr(
                line,
                1,
                format!("non-composable product {}", word.display()),
            ));
        }
        out.add_term(word, coeff);
    }
    Ok(out)
}

fn is_arrow(bq: &BiQuiver, name: &str) -> bool {
    bq.arrow(name).is_some()
}

/// Parse the bocs file format.
pub fn parse_bocs(text: &str) -> Result<DifferentialBiquiver, Error> {
    let mut name = None;
    let mut bq = BiQuiver::default();
    let mut deferred: Vec<(usize, String)> = Vec::new(); // diff/rel lines, parsed after arrows
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "bocs" => {
                if !is_ident(rest) {
                    return Err(perr(line_no, 6, "bad bocs name"));
                }
                name = Some(rest.to_string());
            }
            "order" => {
                for v in rest.split_whitespace() {
                    if !is_ident(v) {
                        return Err(perr(line_no, 7, format!("bad vertex label {v}")));
                    }
                    bq.vertices.push(v.to_string());
                }
            }
            "solid" | "dashed" => {
                let dashed = kw == "dashed";
                let sep = if dashed { "=>" } else { "->" };
                let (nm, arrow_spec) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(line_no, 1, "expected `name : v -> w`"))?;
                let nm = nm.trim();
                if !is_ident(nm) {
                    return Err(perr(line_no, 1, format!("bad arrow name {nm}")));
                }
                let (s, t) = arrow_spec
                    .split_once(sep)
                    .ok_or_else(|| perr(line_no, 1, format!("expected `{sep}`")))?;
                let (s, t) = (s.trim(), t.trim());
                for v in [s, t] {
                    if !bq.vertices.iter().any(|x| x == v) {
                        return Err(perr(line_no, 1, format!("unknown vertex {v}")));
                    }
                }
                bq.arrows.push(BArrow {
                    name: nm.to_string(),
                    source: s.to_string(),
                    target: t.to_string(),
                    dashed,
                });
            }
            "diff" | "rel" => deferred.push((line_no, line.to_string())),
            _ => return Err(perr(line_no, 1, format!("unknown keyword {kw}"))),
        }
    }
    let mut dbq = DifferentialBiquiver {
        name: name.ok_or_else(|| perr(1, 1, "missing `bocs NAME` header"))?,
        bq,
        diff: Default::default(),
        relations: Vec::new(),
    };
    for (line_no, line) in deferred {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((&line, ""));
        let rest = rest.trim();
        if kw == "diff" {
            let (arrow, expr) = rest
                .split_once('=')
                .ok_or_else(|| perr(line_no, 1, "expected `diff arrow = expr`"))?;
            let arrow = arrow.trim();
            if dbq.bq.arrow(arrow).is_none() {
                return Err(perr(line_no, 6, format!("unknown arrow {arrow}")));
            }
            let val = parse_mixed(&dbq.bq, expr.trim(), line_no)?;
            if !val.is_zero() {
                dbq.diff.insert(arrow.to_string(), val);
            }
        } else {
            let val = parse_mixed(&dbq.bq, rest, line_no)?;
            if !val.is_zero() {
                dbq.relations.push(val);
            }
        }
    }
    Ok(dbq)
}

/// Parse the algebra file format.
pub fn parse_algebra(text: &str) -> Result<AlgebraPresentation, Error> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut rel_lines: Vec<(usize, String)> = Vec::new();
    let mut seen_header = false;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "algebra" => {
                if !is_ident(rest) {
                    return Err(perr(line_no, 9, "bad algebra name"));
                }
                seen_header = true;
            }
            "vertices" => {
                for v in rest.split_whitespace() {
                    vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let (nm, spec) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(line_no, 1, "expected `name : v -> w`"))?;
                let (s, t) = spec
                    .split_once("->")
                    .ok_or_else(|| perr(line_no, 1, "expected `->`"))?;
                let (nm, s, t) = (nm.trim(), s.trim(), t.trim());
                for v in [s, t] {
                    if !vertices.iter().any(|x| x == v) {
                        return Err(perr(line_no, 1, format!("unknown vertex {v}")));
                    }
                }
                arrows.push((nm.to_string(), s.to_string(), t.to_string()));
            }
            "rel" => rel_lines.push((line_no, rest.to_string())),
            _ => return Err(perr(line_no, 1, format!("unknown keyword {kw}"))),
        }
    }
    if !seen_header {
        return Err(perr(1, 1, "missing `algebra NAME` header"));
    }
    let vrefs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let arefs: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|(n, s, t)| (n.as_str(), s.as_str(), t.as_str()))
        .collect();
    let quiver = Quiver::new(&vrefs, &arefs);
    let mut relations = Vec::new();
    for (line_no, expr) in rel_lines {
        let mut pe = PathElement::zero();
        for (sign, term) in split_terms(&expr) {
            let mut coeff = rat(sign);
            let mut names: Vec<String> = Vec::new();
            for (k, tok) in term.split('*').enumerate() {
                let tok = tok.trim();
                if k == 0
                    && tok.chars().next().is_some_and(|c| c.is_ascii_digit())
                    && quiver.arrow_index(tok).is_none()
                {
                    let c = parse_coeff(tok)
                        .ok_or_else(|| perr(line_no, 1, format!("bad coefficient {tok}")))?;
                    coeff = coeff.mul(&c);
                    continue;
                }
                names.push(tok.to_string());
            }
            let mut arrows_idx = Vec::new();
            for nm in names.iter().rev() {
                let i = quiver
                    .arrow_index(nm)
                    .ok_or_else(|| perr(line_no, 1, format!("unknown arrow {nm}")))?;
                arrows_idx.push(i);
            }
            if arrows_idx.is_empty() {
                return Err(perr(line_no, 1, "relation term without arrows"));
            }
            let path = Path {
                source: quiver.arrows[arrows_idx[0]].source,
                arrows: arrows_idx,
            };
            // composability
            let mut at = path.source;
            for &a in &path.arrows {
                if quiver.arrows[a].source != at {
                    return Err(perr(line_no, 1, "non-composable relation term"));
                }
                at = quiver.arrows[a].target;
            }
            pe.add_term(path, coeff);
        }
        if !pe.is_zero() {
            relations.push(pe);
        }
    }
    Ok(AlgebraPresentation { quiver, relations })
}

fn emit_coeff(c: &Rat, first: bool) -> String {
    let one: Rat = Rat::one();
    let minus_one = Field::neg(&one);
    if *c == one {
        if first {
            String::new()
        } else {
            "+ ".into()
        }
    } else if *c == minus_one {
        "- ".into()
    } else if crate::scalar::rat_is_negative(c) {
        format!("- {}*", Field::neg(c))
    } else if first {
        format!("{c}*")
    } else {
        format!("+ {c}*")
    }
}

fn emit_mixed(x: &MixedElement) -> String {
    let mut out = String::new();
    for (i, (w, c)) in x.terms.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&emit_coeff(c, i == 0));
        let word: Vec<&str> = w.factors.iter().rev().map(|f| f.name()).collect();
        out.push_str(&word.join("*"));
    }
    out
}

/// Deterministic emission of the bocs file format; parsing the output gives
/// back the same object.
pub fn emit_bocs(dbq: &DifferentialBiquiver) -> String {
    let mut out = format!("bocs {}\n", dbq.name);
    out.push_str("order ");
    out.push_str(&dbq.bq.vertices.join(" "));
    out.push('\n');
    for a in dbq.bq.solid() {
        out.push_str(&format!("solid {} : {} -> {}\n", a.name, a.source, a.target));
    }
    for a in dbq.bq.dashed() {
        out.push_str(&format!(
            "dashed {} : {} => {}\n",
            a.name, a.source, a.target
        ));
    }
    for a in &dbq.bq.arrows {
        let d = dbq.diff_of(&a.name);
        if !d.is_zero() {
            out.push_str(&format!("diff {} = {}\n", a.name, emit_mixed(&d)));
        }
    }
    for r in &dbq.relations {
        out.push_str(&format!("rel {}\n", emit_mixed(r)));
    }
    out
}

pub fn emit_algebra(name: &str, pres: &AlgebraPresentation) -> String {
    let q = &pres.quiver;
    let mut out = format!("algebra {name}\n");
    out.push_str("vertices ");
    out.push_str(&q.vertices.join(" "));
    out.push('\n');
    for a in &q.arrows {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            a.name, q.vertices[a.source], q.vertices[a.target]
        ));
    }
    for r in &pres.relations {
        let mut line = String::from("rel ");
        for (i, (p, c)) in r.terms.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&emit_coeff(c, i == 0));
            line.push_str(&p.display(q));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Aligned text table of a reduction log, mirroring the reference layout.
pub fn emit_log_table(log: &[LogRow]) -> String {
    let mut out = String::new();
    let width = log
        .iter()
        .map(|r| r.descr.len())
        .chain(std::iter::once("step".len()))
        .max()
        .unwrap_or(4);
    out.push_str(&format!(
        "{:width$}  {:>8}  {:>6}\n",
        "step", "vertices", "arrows"
    ));
    for row in log {
        out.push_str(&format!(
            "{:width$}  {:>8}  {:>6}\n",
            row.descr, row.vertices, row.arrows
        ));
    }
    out
}

/// JSON records of a reduction log with a stable key order.
pub fn emit_log_json(log: &[LogRow]) -> String {
    let mut out = String::from("[\n");
    for (i, row) in log.iter().enumerate() {
        let comma = if i + 1 == log.len() { "" } else { "," };
        out.push_str(&format!(
            "  {{\"step\": {}, \"move\": \"{}\", \"vertices\": {}, \"arrows\": {}}}{}\n",
            row.step,
            row.descr.replace('\\', "\\\\").replace('"', "\\\""),
            row.vertices,
            row.arrows,
            comma
        ));
    }
    out.push_str("]\n");
    out
}

/// DOT rendering of an AR quiver: nodes carry Δ-support labels, irreducible
/// maps are dashed edges (they come from dashed arrows of the terminal
/// bocs).
pub fn emit_dot(arq: &ArQuiver) -> String {
    let mut out = String::from("digraph ar {\n");
    for node in &arq.nodes {
        let support: Vec<String> = node
            .support
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m))
            .collect();
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\"];\n",
            node.vertex,
            support.join(" ")
        ));
    }
    for e in &arq.edges {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [style=dashed, label=\"{}\"];\n",
            e.source, e.target, e.name
        ));
    }
    out.push_str("}\n");
    out
}
