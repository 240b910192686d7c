use proptest::prelude::*;

use super::*;
use crate::fixtures;
use crate::plane::build_desarguesian_plane;
use crate::words::Letter;

fn group(text: &str) -> A2Group {
    A2Group::new(fixtures::load(text).unwrap()).unwrap()
}

/// Counts left normal forms of each length by enumerating letter sequences
/// and checking the admissibility conditions one letter at a time.
fn brute_force_counts(group: &A2Group, max_len: usize) -> Vec<usize> {
    let tp = group.presentation();
    let n = tp.num_points() as u16;
    let admissible = |w: &[Letter], l: Letter| match w.last() {
        None => true,
        Some(&prev) => match (prev.inverse, l.inverse) {
            // x_i^-1 x_{i+1}^-1 needs x_i ∉ λ(x_{i+1}).
            (true, true) => !tp.on_lambda(l.point, prev.point),
            (true, false) => prev.point != l.point,
            (false, true) => false,
            // y_j y_{j+1} needs y_{j+1} ∉ λ(y_j).
            (false, false) => !tp.on_lambda(prev.point, l.point),
        },
    };
    let mut counts = vec![1];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for p in 0..n {
                for l in [Letter::inv(Point(p)), Letter::pos(Point(p))] {
                    if admissible(w, l) {
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
        }
        counts.push(next.len());
        layer = next;
    }
    counts
}

#[test]
fn normal_form_count_matches_enumeration() {
    for text in [fixtures::Z2, fixtures::T333, fixtures::B3_PATTERN] {
        let g = group(text);
        let q = g.presentation().order();
        let counts = brute_force_counts(&g, 4);
        for (len, &c) in counts.iter().enumerate() {
            assert_eq!(normal_form_count(q, len), c as u128);
        }
    }
    assert_eq!(ball_size(2, 3), 1 + 14 + 98 + 560);
}

#[test]
fn sphere_sizes_match_the_count() {
    for (text, radius) in [
        (fixtures::B3_PATTERN, 3),
        (fixtures::Z2, 6),
        (fixtures::Q3_COMMUTING, 2),
    ] {
        let g = group(text);
        let q = g.presentation().order();
        let ball = build_ball(&g, radius).unwrap();
        let expected: Vec<usize> = (0..=radius)
            .map(|l| normal_form_count(q, l) as usize)
            .collect();
        assert_eq!(ball.sphere_sizes(), expected);
    }
}

#[test]
fn link_of_the_identity_is_the_incidence_graph() {
    for (text, q) in [(fixtures::B3_PATTERN, 2), (fixtures::Q3_COMMUTING, 3)] {
        let g = group(text);
        let ball = build_ball(&g, 1).unwrap();
        let e = ball.index_of(&g.identity()).unwrap();
        let link = vertex_link(&ball, e).unwrap();
        let plane = build_desarguesian_plane(q).unwrap();
        assert!(is_isomorphic(&link.graph, &incidence_graph(&plane)));
        assert_eq!(girth(&link.graph), Some(6));
        // x is joined to z^-1 exactly when x ∈ λ(z).
        let tp = g.presentation();
        for (i, &x) in link.out_points.iter().enumerate() {
            for (j, &z) in link.in_points.iter().enumerate() {
                assert_eq!(link.graph.has_edge(i, j), tp.on_lambda(z, x));
            }
        }
    }
}

#[test]
fn flat_link_is_a_labelled_hexagon() {
    let g = group(fixtures::Z2);
    let ball = build_ball(&g, 1).unwrap();
    let e = ball.index_of(&g.identity()).unwrap();
    let link = vertex_link(&ball, e).unwrap();
    assert_eq!(link.graph.num_edges(), 6);
    assert_eq!(girth(&link.graph), Some(6));
    assert!(link.graph.degrees().0.iter().all(|&d| d == 2));
    // a - b^-1 - c - a^-1 - b - c^-1 - a.
    let name = |side: &[Point], i: usize| g.presentation().name(side[i]).to_string();
    let mut walk = vec![name(&link.out_points, 0)];
    let right = link.graph.right_adj();
    let (mut i, mut from_right) = (0usize, usize::MAX);
    for step in 0..5 {
        if step % 2 == 0 {
            let j = *link.graph.adj[i]
                .iter()
                .find(|&&j| j != from_right)
                .unwrap();
            walk.push(name(&link.in_points, j) + "^-1");
            from_right = j;
        } else {
            let k = *right[from_right].iter().find(|&&k| k != i).unwrap();
            walk.push(name(&link.out_points, k));
            i = k;
        }
    }
    let hexagon = ["a0", "a1^-1", "a2", "a0^-1", "a1", "a2^-1"];
    let reversed = ["a0", "a2^-1", "a1", "a0^-1", "a2", "a1^-1"];
    assert!(walk == hexagon || walk == reversed, "{walk:?}");
}

#[test]
fn interior_edges_lie_on_q_plus_one_triangles() {
    for (text, radius) in [
        (fixtures::B3_PATTERN, 2),
        (fixtures::Z2, 3),
        (fixtures::Q3_COMMUTING, 2),
    ] {
        let g = group(text);
        let q = g.presentation().order();
        let ball = build_ball(&g, radius).unwrap();
        let per_edge = ball.triangles_per_edge();
        let mut interior = 0;
        for &(s, _, t) in ball.interior_edges() {
            assert_eq!(per_edge[&(s, t)], q + 1);
            interior += 1;
        }
        assert!(interior > 0);
    }
}

#[test]
fn triangle_labels_are_relators() {
    let g = group(fixtures::B3_PATTERN);
    let ball = build_ball(&g, 2).unwrap();
    for tri in ball.triangles() {
        assert!(g.presentation().contains(tri.labels));
        let [a, b, c] = tri.vertices;
        assert!(a < b && a < c);
        let v = ball.vertices();
        assert_eq!(g.multiply(&v[a], &g.generator(tri.labels.0)), v[b]);
        assert_eq!(g.multiply(&v[b], &g.generator(tri.labels.1)), v[c]);
    }
}

#[test]
fn balls_can_be_centred_anywhere() {
    let g = group(fixtures::B3_PATTERN);
    let center = g.parse("a3 a0^-1").unwrap();
    let ball = build_ball_around(&g, &center, 1, DEFAULT_VERTEX_CAP).unwrap();
    assert_eq!(ball.sphere_sizes(), [1, 14]);
    let c = ball.index_of(&center).unwrap();
    let link = vertex_link(&ball, c).unwrap();
    assert!(is_isomorphic(
        &link.graph,
        &incidence_graph(g.presentation().plane())
    ));
}

#[test]
fn resource_cap_and_radius_errors() {
    let g = group(fixtures::B3_PATTERN);
    assert!(matches!(
        build_ball_around(&g, &g.identity(), 8, 1000),
        Err(Error::ResourceCap { .. })
    ));
    let ball = build_ball(&g, 1).unwrap();
    let far = ball.index_of(&g.generator(Point(0))).unwrap();
    assert!(matches!(
        vertex_link(&ball, far),
        Err(Error::InsufficientRadius {
            distance: 1,
            radius: 1
        })
    ));
}

#[test]
fn json_round_trip_and_dot() {
    let g = group(fixtures::B3_PATTERN);
    let ball = build_ball(&g, 2).unwrap();
    let json = ball_to_json(&ball).unwrap();
    let again = parse_ball_json(&g, &json).unwrap();
    assert_eq!(again.vertices(), ball.vertices());
    assert_eq!(again.edges(), ball.edges());
    assert_eq!(again.triangles(), ball.triangles());
    assert_eq!(ball_to_json(&again).unwrap(), json);
    let tampered = json.replacen("\"a0\"", "\"a1\"", 1);
    assert!(parse_ball_json(&g, &tampered).is_err());
    let dot = ball_to_dot(&ball);
    assert!(dot.starts_with("digraph ball {"));
    assert_eq!(dot.matches(" -> ").count(), ball.edges().len());
}

#[test]
fn apartment_grid_coordinates() {
    let g = group(fixtures::Z2);
    let (a, b, c) = (Point(0), Point(1), Point(2));
    let grid = apartment_grid(&g, (a, b, c), 3).unwrap();
    assert_eq!(grid.vertices.len(), 37);
    assert_eq!(
        *grid.element_at(2, 1).unwrap(),
        g.parse("a2^-1 a0").unwrap()
    );
    let mut elems: Vec<_> = grid.vertices.iter().map(|(_, g)| g.clone()).collect();
    elems.sort();
    elems.dedup();
    assert_eq!(elems.len(), 37);
    for ((k, l), h) in &grid.vertices {
        assert_eq!(h.len(), hex_norm(*k, *l));
    }
    for &(s, x, t) in &grid.edges {
        let (vs, vt) = (&grid.vertices[s].1, &grid.vertices[t].1);
        assert_eq!(g.multiply(vs, &g.generator(x)), *vt);
    }
    assert!(grid_to_dot(&g, &grid).contains("->"));
    assert!(grid_to_json(&g, &grid).unwrap().contains("\"a2^-1 a0\""));
}

#[test]
fn apartment_grid_refuses_non_commuting_triples() {
    let g = group(fixtures::B3_PATTERN);
    let err = apartment_grid(&g, (Point(0), Point(1), Point(2)), 2);
    assert!(matches!(err, Err(Error::Precondition(_))));
    let q3 = group(fixtures::Q3_COMMUTING);
    let p = |s| q3.presentation().point(s).unwrap();
    assert!(apartment_grid(&q3, (p("a1"), p("a7"), p("a9")), 4).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn grid_map_is_a_homomorphism(k1 in -5i64..=5, l1 in -5i64..=5, k2 in -5i64..=5, l2 in -5i64..=5) {
        let g = group(fixtures::Q3_COMMUTING);
        let p = |s| g.presentation().point(s).unwrap();
        let grid = apartment_grid(&g, (p("a1"), p("a7"), p("a9")), 20).unwrap();
        let at = |k, l| grid.element_at(k, l).unwrap().clone();
        prop_assert_eq!(g.multiply(&at(k1, l1), &at(k2, l2)), at(k1 + k2, l1 + l2));
    }
}
