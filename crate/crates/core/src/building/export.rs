use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ApartmentGrid, CayleyBall, Triangle};
use crate::presentation::Triple;
use crate::words::A2Group;
use crate::{Error, Result};

/// JSON form of a ball. `edges` are `[source, label, target]` where `label`
/// indexes `labels`; `triangles` list vertices in edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub radius: usize,
    pub center: String,
    pub labels: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn ball_to_dot(ball: &CayleyBall) -> String {
    let group = ball.group();
    let tp = group.presentation();
    let mut out = String::from("digraph ball {\n");
    for (i, g) in ball.vertices().iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label={}];", quote(&group.format(g)));
    }
    for &(s, x, t) in ball.edges() {
        let _ = writeln!(out, "  v{s} -> v{t} [label={}];", quote(tp.name(x)));
    }
    out.push_str("}\n");
    out
}

pub fn ball_to_json(ball: &CayleyBall) -> Result<String> {
    let group = ball.group();
    let tp = group.presentation();
    let json = BallJson {
        radius: ball.radius(),
        center: group.format(ball.center()),
        labels: tp.plane().names().to_vec(),
        vertices: ball.vertices().iter().map(|g| group.format(g)).collect(),
        edges: ball
            .edges()
            .iter()
            .map(|&(s, x, t)| [s, x.index(), t])
            .collect(),
        triangles: ball.triangles().iter().map(|t| t.vertices).collect(),
    };
    Ok(serde_json::to_string_pretty(&json)? + "\n")
}

/// Rebuilds a ball from its JSON form, checking every stored edge and
/// triangle against the group.
pub fn parse_ball_json(group: &A2Group, text: &str) -> Result<CayleyBall> {
    let json: BallJson = serde_json::from_str(text)?;
    let bad = |msg: String| Error::Precondition(format!("ball JSON: {msg}"));
    let tp = group.presentation();
    if json.labels != tp.plane().names() {
        return Err(bad("labels differ from the presentation's points".into()));
    }
    let center = group.parse(&json.center)?;
    let vertices = json
        .vertices
        .iter()
        .map(|w| group.parse(w))
        .collect::<Result<Vec<_>>>()?;
    if vertices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("vertices are not in canonical order".into()));
    }
    let inv_center = group.invert(&center);
    let distance: Vec<usize> = vertices
        .iter()
        .map(|g| group.multiply(&inv_center, g).len())
        .collect();
    let index: HashMap<_, _> = vertices
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let n = vertices.len();
    let mut edges = Vec::with_capacity(json.edges.len());
    for &[s, x, t] in &json.edges {
        if s >= n || t >= n || x >= tp.num_points() {
            return Err(bad(format!("edge [{s}, {x}, {t}] out of range")));
        }
        let x = crate::plane::Point(x as u16);
        if group.multiply(&vertices[s], &group.generator(x)) != vertices[t] {
            return Err(bad(format!(
                "edge [{s}, {}, {t}] is not a Cayley edge",
                x.index()
            )));
        }
        edges.push((s, x, t));
    }
    let label: HashMap<(usize, usize), crate::plane::Point> =
        edges.iter().map(|&(s, x, t)| ((s, t), x)).collect();
    let mut triangles = Vec::with_capacity(json.triangles.len());
    for &[a, b, c] in &json.triangles {
        let get = |s, t| {
            label
                .get(&(s, t))
                .copied()
                .ok_or_else(|| bad(format!("triangle [{a}, {b}, {c}] has a missing edge")))
        };
        triangles.push(Triangle {
            vertices: [a, b, c],
            labels: Triple(get(a, b)?, get(b, c)?, get(c, a)?),
        });
    }
    Ok(CayleyBall {
        group: group.clone(),
        center,
        radius: json.radius,
        vertices,
        distance,
        index,
        edges,
        triangles,
    })
}

pub fn grid_to_dot(group: &A2Group, grid: &ApartmentGrid) -> String {
    let tp = group.presentation();
    let mut out = String::from("digraph apartment {\n");
    for (i, ((k, l), g)) in grid.vertices.iter().enumerate() {
        let _ = writeln!(
            out,
            "  v{i} [label={}, pos=\"{},{}\"];",
            quote(&group.format(g)),
            k,
            l
        );
    }
    for &(s, x, t) in &grid.edges {
        let _ = writeln!(out, "  v{s} -> v{t} [label={}];", quote(tp.name(x)));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct GridJson {
    radius: usize,
    triple: [String; 3],
    vertices: Vec<String>,
    coordinates: Vec<[i64; 2]>,
    edges: Vec<[usize; 3]>,
}

/// Edge labels index the points of the plane, as in [`BallJson`].
pub fn grid_to_json(group: &A2Group, grid: &ApartmentGrid) -> Result<String> {
    let tp = group.presentation();
    let (a, b, c) = grid.triple;
    let json = GridJson {
        radius: grid.radius,
        triple: [a, b, c].map(|p| tp.name(p).to_string()),
        vertices: grid.vertices.iter().map(|(_, g)| group.format(g)).collect(),
        coordinates: grid.vertices.iter().map(|&((k, l), _)| [k, l]).collect(),
        edges: grid
            .edges
            .iter()
            .map(|&(s, x, t)| [s, x.index(), t])
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&json)? + "\n")
}
