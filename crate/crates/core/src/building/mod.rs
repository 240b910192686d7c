//! Finite balls in the Cayley graph, which is the 1-skeleton of the
//! building, together with vertex links and flat apartment patches.

mod export;
mod link;

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::plane::{plane_size, Point};
use crate::presentation::Triple;
use crate::words::{A2Group, GroupElement};
use crate::{Error, Result};

pub use export::{ball_to_dot, ball_to_json, grid_to_dot, grid_to_json, parse_ball_json, BallJson};
pub use link::{girth, incidence_graph, is_isomorphic, BipartiteGraph};

/// Default limit on the number of vertices of a ball.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

/// Number of left normal forms of length `len` over a plane of order `q`:
/// a block of `m ≥ 1` letters has `n q^(2(m-1))` choices, and a mixed word
/// additionally requires `x_m ≠ y₁`.
pub fn normal_form_count(q: usize, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    let n = plane_size(q) as u128;
    let q2 = (q * q) as u128;
    let block = |m: usize| n * q2.pow(m as u32 - 1);
    let mut total = 2 * block(len);
    for m in 1..len {
        let k = len - m;
        total += block(m) * (n - 1) * q2.pow(k as u32 - 1);
    }
    total
}

/// `Σ_{ℓ ≤ radius} normal_form_count(q, ℓ)`.
pub fn ball_size(q: usize, radius: usize) -> u128 {
    (0..=radius).map(|l| normal_form_count(q, l)).sum()
}

/// A triangle `v₀ → v₁ → v₂ → v₀` whose edges carry the labels of `labels`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub labels: Triple,
}

/// The vertices `center · h` with `|h| ≤ radius`, the directed edges
/// `(g, x, g x)` between them and the triangles they span.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    group: A2Group,
    center: GroupElement,
    radius: usize,
    vertices: Vec<GroupElement>,
    distance: Vec<usize>,
    index: HashMap<GroupElement, usize>,
    edges: Vec<(usize, Point, usize)>,
    triangles: Vec<Triangle>,
}

impl PartialEq for CayleyBall {
    fn eq(&self, other: &Self) -> bool {
        self.center == other.center
            && self.radius == other.radius
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.triangles == other.triangles
    }
}

impl CayleyBall {
    pub fn group(&self) -> &A2Group {
        &self.group
    }

    pub fn center(&self) -> &GroupElement {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Sorted in the canonical order of the group elements.
    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Distance of vertex `i` from the center.
    pub fn distance(&self, i: usize) -> usize {
        self.distance[i]
    }

    /// Sorted `(source, label, target)` with `target = source · label`.
    pub fn edges(&self) -> &[(usize, Point, usize)] {
        &self.edges
    }

    /// Sorted; each triangle listed once, starting at its least vertex.
    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// Sizes of the spheres around the center.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.radius + 1];
        for &d in &self.distance {
            out[d] += 1;
        }
        out
    }

    /// Number of triangles on each edge, keyed like [`CayleyBall::edges`].
    pub fn triangles_per_edge(&self) -> HashMap<(usize, usize), usize> {
        let mut out: HashMap<(usize, usize), usize> =
            self.edges.iter().map(|&(s, _, t)| ((s, t), 0)).collect();
        for tri in &self.triangles {
            let [a, b, c] = tri.vertices;
            for key in [(a, b), (b, c), (c, a)] {
                *out.entry(key).or_insert(0) += 1;
            }
        }
        out
    }

    /// Edges whose endpoints are both at distance `< radius`.
    pub fn interior_edges(&self) -> impl Iterator<Item = &(usize, Point, usize)> {
        self.edges
            .iter()
            .filter(|&&(s, _, t)| self.distance[s] < self.radius && self.distance[t] < self.radius)
    }
}

pub fn build_ball(group: &A2Group, radius: usize) -> Result<CayleyBall> {
    build_ball_around(group, &group.identity(), radius, DEFAULT_VERTEX_CAP)
}

pub fn build_ball_around(
    group: &A2Group,
    center: &GroupElement,
    radius: usize,
    cap: usize,
) -> Result<CayleyBall> {
    let q = group.presentation().order();
    let estimate = ball_size(q, radius);
    if estimate > cap as u128 {
        return Err(Error::ResourceCap { estimate, cap });
    }
    let gens: Vec<GroupElement> = crate::words::GroupOracle::generators(group);
    // Spheres around the identity, then translated by the center.
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    seen.insert(group.identity());
    let mut layers: Vec<Vec<GroupElement>> = vec![vec![group.identity()]];
    for _ in 0..radius {
        let frontier = layers.last().unwrap();
        let mut next: Vec<GroupElement> = frontier
            .par_iter()
            .flat_map_iter(|g| gens.iter().map(move |s| group.multiply(g, s)))
            .filter(|h| h.len() == frontier[0].len() + 1)
            .collect();
        next.par_sort_unstable();
        next.dedup();
        next.retain(|h| !seen.contains(h));
        seen.extend(next.iter().cloned());
        layers.push(next);
    }
    let mut tagged: Vec<(GroupElement, usize)> = layers
        .into_iter()
        .enumerate()
        .flat_map(|(d, layer)| layer.into_iter().map(move |h| (h, d)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(h, d)| (group.multiply(center, &h), d))
        .collect();
    tagged.par_sort_unstable();
    let (vertices, distance): (Vec<_>, Vec<_>) = tagged.into_iter().unzip();
    let index: HashMap<GroupElement, usize> = vertices
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();

    let tp = group.presentation();
    let points: Vec<Point> = tp.plane().points().collect();
    let mut edges: Vec<(usize, Point, usize)> = vertices
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let index = &index;
            points.iter().filter_map(move |&x| {
                let h = group.multiply(g, &group.generator(x));
                index.get(&h).map(|&j| (i, x, j))
            })
        })
        .collect();
    edges.sort_unstable();

    let mut out_edge: HashMap<(usize, Point), usize> = HashMap::with_capacity(edges.len());
    for &(s, x, t) in &edges {
        out_edge.insert((s, x), t);
    }
    let mut triangles: Vec<Triangle> = edges
        .par_iter()
        .flat_map_iter(|&(s, x, v1)| {
            let out_edge = &out_edge;
            tp.plane().points().flat_map(move |y| {
                tp.thirds(x, y).iter().filter_map(move |&z| {
                    let &v2 = out_edge.get(&(v1, y))?;
                    // Keep the rotation starting at the least vertex.
                    (out_edge.get(&(v2, z)) == Some(&s) && s < v1 && s < v2).then_some(Triangle {
                        vertices: [s, v1, v2],
                        labels: Triple(x, y, z),
                    })
                })
            })
        })
        .collect();
    triangles.sort_unstable();
    triangles.dedup();

    Ok(CayleyBall {
        group: group.clone(),
        center: center.clone(),
        radius,
        vertices,
        distance,
        index,
        edges,
        triangles,
    })
}

/// The link of a vertex: out-neighbours `v x` on one side, in-neighbours
/// `v z⁻¹` on the other, adjacent when they span a triangle with `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLink {
    pub vertex: usize,
    /// `out_points[i]` is the label `x` of the out-neighbour `v x`.
    pub out_points: Vec<Point>,
    /// `in_points[j]` is the label `z` of the in-neighbour `v z⁻¹`.
    pub in_points: Vec<Point>,
    pub graph: BipartiteGraph,
}

pub fn vertex_link(ball: &CayleyBall, v: usize) -> Result<VertexLink> {
    let distance = ball.distance(v);
    if distance + 1 > ball.radius() {
        return Err(Error::InsufficientRadius {
            distance,
            radius: ball.radius(),
        });
    }
    let mut out_points: Vec<(usize, Point)> = Vec::new();
    let mut in_points: Vec<(usize, Point)> = Vec::new();
    for &(s, x, t) in ball.edges() {
        if s == v {
            out_points.push((t, x));
        }
        if t == v {
            in_points.push((s, x));
        }
    }
    out_points.sort_by_key(|&(_, x)| x);
    in_points.sort_by_key(|&(_, x)| x);
    let out_pos: HashMap<usize, usize> = out_points
        .iter()
        .enumerate()
        .map(|(i, &(w, _))| (w, i))
        .collect();
    let in_pos: HashMap<usize, usize> = in_points
        .iter()
        .enumerate()
        .map(|(i, &(w, _))| (w, i))
        .collect();
    let mut adj = vec![BTreeSet::new(); out_points.len()];
    for tri in ball.triangles() {
        let vs = tri.vertices;
        if let Some(k) = vs.iter().position(|&w| w == v) {
            let next = vs[(k + 1) % 3];
            let prev = vs[(k + 2) % 3];
            if let (Some(&i), Some(&j)) = (out_pos.get(&next), in_pos.get(&prev)) {
                adj[i].insert(j);
            }
        }
    }
    Ok(VertexLink {
        vertex: v,
        out_points: out_points.into_iter().map(|(_, x)| x).collect(),
        in_points: in_points.into_iter().map(|(_, x)| x).collect(),
        graph: BipartiteGraph::new(
            adj.len(),
            in_pos.len(),
            adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        ),
    })
}

/// A patch of the flat apartment spanned by a commuting triple `(a, b, c)`:
/// the vertex with coordinates `(k, l)` is `a^k b^l`, so that `a`, `b`, `c`
/// move by `(1, 0)`, `(0, 1)` and `(-1, -1)`.
#[derive(Clone, Debug)]
pub struct ApartmentGrid {
    pub triple: (Point, Point, Point),
    pub radius: usize,
    /// Sorted by coordinates.
    pub vertices: Vec<((i64, i64), GroupElement)>,
    /// `(source, generator, target)` with `target = source · generator`.
    pub edges: Vec<(usize, Point, usize)>,
}

impl ApartmentGrid {
    pub fn element_at(&self, k: i64, l: i64) -> Option<&GroupElement> {
        self.vertices
            .binary_search_by_key(&(k, l), |(c, _)| *c)
            .ok()
            .map(|i| &self.vertices[i].1)
    }
}

/// `max(|k|, |l|, |k - l|)`, the graph distance in the triangular lattice.
pub fn hex_norm(k: i64, l: i64) -> usize {
    k.abs().max(l.abs()).max((k - l).abs()) as usize
}

pub fn apartment_grid(
    group: &A2Group,
    triple: (Point, Point, Point),
    radius: usize,
) -> Result<ApartmentGrid> {
    let (a, b, c) = triple;
    let ga = group.generator(a);
    let gb = group.generator(b);
    let gc = group.generator(c);
    let commute = |x: &GroupElement, y: &GroupElement| group.multiply(x, y) == group.multiply(y, x);
    let abc = group.multiply(&group.multiply(&ga, &gb), &gc);
    if a == b || b == c || a == c || !commute(&ga, &gb) || !commute(&gb, &gc) || !abc.is_identity()
    {
        return Err(Error::Precondition(format!(
            "({}, {}, {}) is not a commuting triple with abc = e",
            group.presentation().name(a),
            group.presentation().name(b),
            group.presentation().name(c)
        )));
    }
    let r = radius as i64;
    let mut vertices = Vec::new();
    for k in -r..=r {
        for l in -r..=r {
            if hex_norm(k, l) <= radius {
                let g = group.multiply(&group.power(&ga, k), &group.power(&gb, l));
                vertices.push(((k, l), g));
            }
        }
    }
    let pos: HashMap<(i64, i64), usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, (c, _))| (*c, i))
        .collect();
    let mut edges = Vec::new();
    for (i, ((k, l), _)) in vertices.iter().enumerate() {
        for (x, (dk, dl)) in [(a, (1, 0)), (b, (0, 1)), (c, (-1, -1))] {
            if let Some(&j) = pos.get(&(k + dk, l + dl)) {
                edges.push((i, x, j));
            }
        }
    }
    edges.sort_unstable();
    Ok(ApartmentGrid {
        triple,
        radius,
        vertices,
        edges,
    })
}

#[cfg(test)]
mod tests;
