//! The line-oriented presentation file format.
//!
//! ```text
//! # label: B3-pattern
//! q 2
//! points a0 a1 a2 a3 a4 a5 a6
//! lambda a0: a1 a2 a4
//! ...
//! triples
//! a0 a1 a1
//! ...
//! end
//! ```
//!
//! Only one rotation of each triple needs to be listed; the loader closes
//! the set under rotation. `#` starts a comment. A leading comment of the
//! form `# label: <text>` names the presentation.

use std::fmt::Write as _;

use super::{TrianglePresentation, Triple};
use crate::plane::{plane_size, Point, PointLineCorrespondence, ProjectivePlane};
use crate::{Error, Result};

pub fn serialize(tp: &TrianglePresentation) -> String {
    let plane = tp.plane();
    let mut out = String::new();
    if !tp.label().is_empty() {
        let _ = writeln!(out, "# label: {}", tp.label());
    }
    let _ = writeln!(out, "q {}", plane.order());
    let _ = writeln!(out, "points {}", plane.names().join(" "));
    for x in plane.points() {
        let line: Vec<&str> = tp.lambda_points(x).iter().map(|&p| plane.name(p)).collect();
        let _ = writeln!(out, "lambda {}: {}", plane.name(x), line.join(" "));
    }
    out.push_str("triples\n");
    for t in tp.representatives() {
        let _ = writeln!(
            out,
            "{} {} {}",
            plane.name(t.0),
            plane.name(t.1),
            plane.name(t.2)
        );
    }
    out.push_str("end\n");
    out
}

#[derive(PartialEq)]
enum Section {
    Order,
    Points,
    Lambda,
    Triples,
    Done,
}

pub fn parse(text: &str) -> Result<TrianglePresentation> {
    let syntax = |line: usize, message: String| Error::Syntax { line, message };
    let mut label = String::new();
    let mut order = None;
    let mut names: Vec<String> = Vec::new();
    let mut lambda_lines: Vec<Option<Vec<String>>> = Vec::new();
    let mut raw_triples: Vec<(usize, [String; 3])> = Vec::new();
    let mut section = Section::Order;
    let mut seen_content = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        if !seen_content {
            if let Some(rest) = raw.trim().strip_prefix("# label:") {
                label = rest.trim().to_string();
                continue;
            }
        }
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        seen_content = true;
        let mut tokens = content.split_whitespace();
        let head = tokens.next().unwrap();
        match section {
            Section::Order => {
                if head != "q" {
                    return Err(syntax(
                        lineno,
                        format!("expected `q <order>`, found `{head}`"),
                    ));
                }
                let q: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(lineno, "order must be a nonnegative integer".into()))?;
                if q == 0 || tokens.next().is_some() {
                    return Err(syntax(lineno, "expected a single positive order".into()));
                }
                order = Some(q);
                section = Section::Points;
            }
            Section::Points => {
                if head != "points" {
                    return Err(syntax(lineno, format!("expected `points`, found `{head}`")));
                }
                names = tokens.map(str::to_string).collect();
                let q = order.unwrap();
                if names.len() != plane_size(q) {
                    return Err(syntax(
                        lineno,
                        format!(
                            "order {q} needs {} points, found {}",
                            plane_size(q),
                            names.len()
                        ),
                    ));
                }
                for (k, name) in names.iter().enumerate() {
                    if name == "e" || name.contains('^') || names[..k].contains(name) {
                        return Err(syntax(
                            lineno,
                            format!("invalid or repeated point name `{name}`"),
                        ));
                    }
                }
                lambda_lines = vec![None; names.len()];
                section = Section::Lambda;
            }
            Section::Lambda if head == "triples" => {
                if tokens.next().is_some() {
                    return Err(syntax(lineno, "`triples` takes no arguments".into()));
                }
                if let Some(k) = lambda_lines.iter().position(Option::is_none) {
                    return Err(syntax(
                        lineno,
                        format!("missing `lambda {}:` line", names[k]),
                    ));
                }
                section = Section::Triples;
            }
            Section::Lambda => {
                if head != "lambda" {
                    return Err(syntax(
                        lineno,
                        format!("expected `lambda` or `triples`, found `{head}`"),
                    ));
                }
                let rest = content["lambda".len()..].trim();
                let (name, pts) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(lineno, "expected `lambda <name>: <names>`".into()))?;
                let name = name.trim();
                let k = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::UnknownPoint(name.to_string()))?;
                if lambda_lines[k].is_some() {
                    return Err(syntax(lineno, format!("second `lambda {name}:` line")));
                }
                lambda_lines[k] = Some(pts.split_whitespace().map(str::to_string).collect());
            }
            Section::Triples if head == "end" => {
                if tokens.next().is_some() {
                    return Err(syntax(lineno, "`end` takes no arguments".into()));
                }
                section = Section::Done;
            }
            Section::Triples => {
                let t: Vec<&str> = content.split_whitespace().collect();
                if t.len() != 3 {
                    return Err(syntax(
                        lineno,
                        format!("a triple needs 3 names, found {}", t.len()),
                    ));
                }
                raw_triples.push((lineno, [t[0].into(), t[1].into(), t[2].into()]));
            }
            Section::Done => {
                return Err(syntax(lineno, "content after `end`".into()));
            }
        }
    }
    if section != Section::Done {
        return Err(syntax(
            text.lines().count(),
            "unexpected end of input, expected `end`".into(),
        ));
    }

    let lookup = |name: &str| -> Result<Point> {
        names
            .iter()
            .position(|n| n == name)
            .map(|i| Point(i as u16))
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    };
    let mut lines: Vec<Vec<Point>> = Vec::with_capacity(names.len());
    for l in lambda_lines.iter().flatten() {
        let mut pts = l.iter().map(|n| lookup(n)).collect::<Result<Vec<_>>>()?;
        pts.sort_unstable();
        pts.dedup();
        if lines.contains(&pts) {
            return Err(Error::LambdaNotBijective(format!(
                "line {{{}}} is assigned to two points",
                l.join(" ")
            )));
        }
        lines.push(pts);
    }
    let plane = ProjectivePlane::from_lines(order.unwrap(), names.clone(), lines.clone())?;
    let map = lines
        .iter()
        .map(|l| plane.line_id(l).expect("line was inserted"))
        .collect();
    let lambda = PointLineCorrespondence::new(map)?;
    let mut triples = Vec::with_capacity(raw_triples.len());
    for (_, [x, y, z]) in &raw_triples {
        triples.push(Triple(lookup(x)?, lookup(y)?, lookup(z)?));
    }
    TrianglePresentation::with_cyclic_closure(label, plane, lambda, triples)
}
