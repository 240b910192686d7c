//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any criterion fails.

#![allow(clippy::needless_range_loop)]

mod affine;

use std::collections::{BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use trigroup_core::analysis::{
    classify_degenerate, commuting_triples, condition_ii_bruteforce, icc_conjugate_chain,
    line_central_elements, normalizer_scan, relator_pattern, strip_lattices, strip_pairs,
    DegenerateKind, ZSquareSubgroup,
};
use trigroup_core::building::{
    build_ball, girth, hex_norm, incidence_graph, is_isomorphic, vertex_link,
};
use trigroup_core::cosets::{
    decompose_ball, pukanszky_witness, verify_lemma3c, CyclicFactor, FreeProduct,
};
use trigroup_core::plane::{build_desarguesian_plane, CorrespondenceFamily};
use trigroup_core::presentation::{search_all, validate};
use trigroup_core::words::{check_confluence, spheres, termination_measure, Orientation};
use trigroup_core::{
    fixtures, A2Group, GroupOracle, Letter, Point, Subgroup, TrianglePresentation, Triple,
};

const SEED: u64 = 0x5eed;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn fixture_groups() -> Vec<(&'static str, A2Group)> {
    fixtures::ALL
        .iter()
        .map(|&(stem, text)| (stem, A2Group::new(fixtures::load(text).unwrap()).unwrap()))
        .collect()
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

// ---------------------------------------------------------------- planes

fn plane_axioms() -> Verdict {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for q in [1usize, 2, 3, 5] {
        let plane = build_desarguesian_plane(q).unwrap();
        let n = q * q + q + 1;
        let lines: Vec<BTreeSet<Point>> = plane
            .lines()
            .iter()
            .map(|l| l.iter().copied().collect())
            .collect();
        let mut good = plane.num_points() == n && lines.len() == n;
        good &= lines.iter().all(|l| l.len() == q + 1);
        for x in plane.points() {
            for y in plane.points().filter(|&y| y > x) {
                good &= lines
                    .iter()
                    .filter(|l| l.contains(&x) && l.contains(&y))
                    .count()
                    == 1;
            }
        }
        for (i, l) in lines.iter().enumerate() {
            for m in &lines[i + 1..] {
                good &= l.intersection(m).count() == 1;
            }
        }
        good &= trigroup_core::plane::validate_plane(&plane).is_empty();
        notes.push(format!("q={q}: {n} points"));
        ok &= good;
    }
    let elapsed = start.elapsed();
    ok &= within(elapsed, Duration::from_secs(1));
    verdict(
        ok,
        format!("{} in {elapsed:.2?} (limit 1 s)", notes.join(", ")),
    )
}

// ------------------------------------------------------- order-two search

/// Triples `(x, p, p)` for a line-central `x`, one for each `p ∈ λ(x)`.
fn has_strip_pattern(tp: &TrianglePresentation) -> bool {
    let group = A2Group::new(tp.clone()).unwrap();
    line_central_elements(&group).iter().any(|r| {
        let squares: BTreeSet<Point> = tp
            .triples()
            .iter()
            .filter(|t| t.0 == r.element && t.1 == t.2 && t.1 != r.element)
            .map(|t| t.1)
            .collect();
        let line: BTreeSet<Point> = tp.lambda_points(r.element).iter().copied().collect();
        r.holds() && squares.len() == 3 && squares == line
    })
}

fn order_two_search(results: &[TrianglePresentation], elapsed: Duration) -> Verdict {
    let invalid = results
        .par_iter()
        .filter(|tp| !validate(tp).is_valid())
        .count();
    let pattern = results
        .par_iter()
        .filter(|tp| has_strip_pattern(tp))
        .count();
    let with_triples = results
        .par_iter()
        .filter(|tp| !commuting_triples(&A2Group::new((*tp).clone()).unwrap()).is_empty())
        .count();
    let ok = !results.is_empty()
        && invalid == 0
        && pattern > 0
        && with_triples == 0
        && within(elapsed, Duration::from_secs(600));
    verdict(
        ok,
        format!(
            "{} presentations over 5040 correspondences in {elapsed:.1?} (limit 10 min), {invalid} invalid, \
             {pattern} with the strip pattern, {with_triples} with commuting triples",
            results.len()
        ),
    )
}

// ------------------------------------------------------------- rewriting

/// Counts letter sequences of each length satisfying the normal-form
/// conditions, one letter at a time.
fn admissible_counts(tp: &TrianglePresentation, max_len: usize) -> Vec<usize> {
    let n = tp.num_points() as u16;
    let admissible = |prev: Option<Letter>, l: Letter| match prev {
        None => true,
        Some(prev) => match (prev.inverse, l.inverse) {
            (true, true) => !tp.on_lambda(l.point, prev.point),
            (true, false) => prev.point != l.point,
            (false, true) => false,
            (false, false) => !tp.on_lambda(prev.point, l.point),
        },
    };
    // Words are extended by their last letter only, so count by last letter.
    let letters: Vec<Letter> = (0..n)
        .flat_map(|p| [Letter::pos(Point(p)), Letter::inv(Point(p))])
        .collect();
    let mut counts = vec![1];
    let mut by_last: HashMap<Letter, usize> = letters.iter().map(|&l| (l, 1)).collect();
    for len in 1..=max_len {
        if len > 1 {
            by_last = letters
                .iter()
                .map(|&l| {
                    let c = by_last
                        .iter()
                        .filter(|(&p, _)| admissible(Some(p), l))
                        .map(|(_, c)| c)
                        .sum();
                    (l, c)
                })
                .collect();
        }
        counts.push(by_last.values().sum());
    }
    counts
}

/// Random rewriting walks; returns (steps taken, steps that failed to
/// lower the termination measure).
fn random_rewrites(group: &A2Group, rng: &mut ChaCha8Rng, steps: usize) -> (usize, usize) {
    let rules = group.rules();
    let (mut taken, mut bad) = (0, 0);
    let mut word = Vec::new();
    let mut orientation = Orientation::Left;
    while taken < steps {
        let options: Vec<Vec<Letter>> = (0..word.len().saturating_sub(1))
            .flat_map(|pos| rules.step_at(orientation, &word, pos))
            .map(|(_, w)| w)
            .collect();
        if options.is_empty() {
            let len = rng.gen_range(2..=16);
            word = group.random_word(rng, len);
            orientation = if rng.gen_bool(0.5) {
                Orientation::Left
            } else {
                Orientation::Right
            };
            continue;
        }
        let next = options[rng.gen_range(0..options.len())].clone();
        if termination_measure(orientation, &next) >= termination_measure(orientation, &word) {
            bad += 1;
        }
        word = next;
        taken += 1;
    }
    (taken, bad)
}

fn associativity_failures(group: &A2Group, rng: &mut ChaCha8Rng, samples: usize) -> usize {
    (0..samples)
        .filter(|_| {
            let [x, y, z] = [0; 3].map(|_| group.random_element(rng, 10));
            group.multiply(&group.multiply(&x, &y), &z)
                != group.multiply(&x, &group.multiply(&y, &z))
        })
        .count()
}

fn rewriting_soundness(results: &[TrianglePresentation]) -> Verdict {
    let mut groups: Vec<(String, A2Group)> = fixture_groups()
        .into_iter()
        .map(|(s, g)| (s.to_string(), g))
        .collect();
    groups.extend(
        results
            .iter()
            .map(|tp| (tp.label().to_string(), A2Group::new(tp.clone()).unwrap())),
    );
    let divergent = groups
        .par_iter()
        .filter(|(_, g)| !check_confluence(g.presentation()).is_confluent())
        .count();
    let sphere_mismatch = groups
        .par_iter()
        .filter(|(_, g)| {
            let sizes: Vec<usize> = spheres(g, 3).iter().map(Vec::len).collect();
            sizes != admissible_counts(g.presentation(), 3)
        })
        .count();
    let q2_spheres = admissible_counts(&fixtures::load(fixtures::B3_PATTERN).unwrap(), 3);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut steps, mut bad_steps, mut assoc_bad, mut assoc_total) = (0, 0, 0, 0);
    for (_, g) in groups.iter().take(fixtures::ALL.len()) {
        let (t, b) = random_rewrites(g, &mut rng, 100_000);
        steps += t;
        bad_steps += b;
        assoc_bad += associativity_failures(g, &mut rng, 10_000);
        assoc_total += 10_000;
    }
    // The search results share one more budget, round robin.
    let others = &groups[fixtures::ALL.len()..];
    if !others.is_empty() {
        let per = 100_000usize.div_ceil(others.len());
        let per_assoc = 10_000usize.div_ceil(others.len());
        for (_, g) in others {
            let (t, b) = random_rewrites(g, &mut rng, per);
            steps += t;
            bad_steps += b;
            assoc_bad += associativity_failures(g, &mut rng, per_assoc);
            assoc_total += per_assoc;
        }
    }
    let ok = divergent == 0
        && sphere_mismatch == 0
        && bad_steps == 0
        && assoc_bad == 0
        && q2_spheres[1..3] == [14, 98];
    verdict(
        ok,
        format!(
            "{} presentations: {divergent} non-confluent, {sphere_mismatch} sphere mismatches \
             (q=2 spheres {q2_spheres:?}); {steps} rewrite steps, {bad_steps} not decreasing; \
             {assoc_total} associativity triples, {assoc_bad} failing",
            groups.len()
        ),
    )
}

// ----------------------------------------------------------- lemma suite

/// Violations of the commutation lemmas, computed from multiplication alone.
fn lemma_violations(group: &A2Group) -> usize {
    let tp = group.presentation();
    let q = tp.order();
    let n = tp.num_points();
    let gen = |i: usize| group.generator(Point(i as u16));
    let commute: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| group.multiply(&gen(i), &gen(j)) == group.multiply(&gen(j), &gen(i)))
                .collect()
        })
        .collect();
    let line = |p: usize| -> BTreeSet<usize> {
        tp.lambda_points(Point(p as u16))
            .iter()
            .map(|p| p.index())
            .collect()
    };
    let meet =
        |x: usize, y: usize| -> Vec<usize> { line(x).intersection(&line(y)).copied().collect() };
    let product_trivial = |w: [usize; 3]| {
        group
            .multiply(&group.multiply(&gen(w[0]), &gen(w[1])), &gen(w[2]))
            .is_identity()
    };
    let mut bad = 0;
    for x in 0..n {
        for y in 0..n {
            if x == y || !commute[x][y] {
                continue;
            }
            // xyz = e with z the meet of λ(x) and λ(y).
            bad += usize::from(!matches!(meet(x, y)[..], [z] if product_trivial([x, y, z])));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !(commute[a][b] && commute[a][c] && commute[b][c]) {
                    continue;
                }
                let orders = [
                    [a, b, c],
                    [a, c, b],
                    [b, a, c],
                    [b, c, a],
                    [c, a, b],
                    [c, b, a],
                ];
                let fine = orders
                    .iter()
                    .any(|&[x, y, z]| product_trivial([x, y, z]) && meet(x, y) == [z]);
                bad += usize::from(!fine);
                // No fourth generator commutes with all three.
                bad += (0..n)
                    .filter(|&d| {
                        ![a, b, c].contains(&d) && commute[a][d] && commute[b][d] && commute[c][d]
                    })
                    .count();
            }
        }
    }
    for a in 0..n {
        let partners: BTreeSet<usize> = (0..n).filter(|&x| x != a && commute[a][x]).collect();
        bad += usize::from(partners.len() > q + 1);
        if partners.len() == q + 1 {
            let own = line(a);
            bad += usize::from(own.contains(&a));
            bad += usize::from(partners != own);
            bad += (0..n)
                .filter(|&x| own.contains(&x) != line(x).contains(&a))
                .count();
        }
    }
    bad
}

fn lemma_suite(all: &[TrianglePresentation]) -> Verdict {
    let violations: usize = all
        .par_iter()
        .map(|tp| lemma_violations(&A2Group::new(tp.clone()).unwrap()))
        .sum();
    verdict(
        violations == 0,
        format!("{} presentations, {violations} violations", all.len()),
    )
}

// --------------------------------------------------------- conjugate chains

fn conjugate_chains() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    let mut bad = 0;
    for text in [fixtures::B3_PATTERN, fixtures::Q3_COMMUTING] {
        let group = A2Group::new(fixtures::load(text).unwrap()).unwrap();
        let mut done = 0;
        while done < 100 {
            let g = group.random_element(&mut rng, 10);
            if g.is_identity() {
                continue;
            }
            done += 1;
            checked += 1;
            let chain = match icc_conjugate_chain(&group, &g, 5) {
                Ok(c) => c,
                Err(_) => {
                    bad += 1;
                    continue;
                }
            };
            let mut prev = g.clone();
            for (k, step) in chain.iter().enumerate() {
                let z = group.generator(step.z);
                let expected = group.multiply(&group.multiply(&group.invert(&z), &prev), &z);
                let fine =
                    step.conjugate == expected && step.conjugate.len() == g.len() + 2 * (k + 1);
                bad += usize::from(!fine);
                prev = step.conjugate.clone();
            }
        }
    }
    verdict(
        bad == 0,
        format!("{checked} seeded elements, 5 steps each, {bad} length mismatches"),
    )
}

// ------------------------------------------------------------ strip lattice

fn strip_lattice_normalizer() -> Verdict {
    let group = A2Group::new(fixtures::load(fixtures::B3_PATTERN).unwrap()).unwrap();
    let tp = group.presentation();
    let p = |s| tp.point(s).unwrap();
    let (a, b, c) = (p("a0"), p("a1"), p("a2"));
    let [ga, gb, gc] = [a, b, c].map(|x| group.generator(x));
    let relations = group.multiply(&ga, &group.multiply(&gb, &gb)).is_identity()
        && group.multiply(&ga, &group.multiply(&gc, &gc)).is_identity()
        && strip_pairs(tp).contains(&(a, b))
        && strip_pairs(tp).contains(&(a, c));
    let Some(lattice) = strip_lattices(&group)
        .into_iter()
        .find(|l| (l.a, l.b, l.c) == (a, b, c))
    else {
        return verdict(false, "no strip lattice <a0, a1 a2>");
    };
    let bc = group.multiply(&gb, &gc);
    let generated = *lattice.bc() == bc && lattice.generators().contains(&ga);
    let report = normalizer_scan(&lattice, 2);
    let flagged = report.violators.iter().any(|v| v.element == gb);
    let b_inv = group.invert(&gb);
    let conj = |x: &trigroup_core::GroupElement| group.multiply(&group.multiply(&gb, x), &b_inv);
    let first = conj(&ga) == ga;
    let a_inv = group.invert(&ga);
    let second = conj(&bc) == group.multiply(&group.multiply(&a_inv, &group.invert(&bc)), &a_inv);
    verdict(
        relations && generated && flagged && first && second,
        format!(
            "a0 a1^2 = a0 a2^2 = e: {relations}; subgroup <a0, a1 a2>: {generated}; \
             a1 flagged among {} violators: {flagged}; b a b^-1 = a: {first}; \
             b (bc) b^-1 = a^-1 (bc)^-1 a^-1: {second}",
            report.violators.len()
        ),
    )
}

// -------------------------------------------------------- commuting triples

fn free_double_cosets() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    let group = A2Group::new(fixtures::load(fixtures::Q3_COMMUTING).unwrap()).unwrap();
    let triples: Vec<_> = commuting_triples(&group)
        .into_iter()
        .filter(|t| t.product_trivial)
        .collect();
    ok &= !triples.is_empty();
    for t in &triples {
        let triple = (t.a, t.b, t.c);
        let report = match verify_lemma3c(&group, triple, 5, 6) {
            Ok(r) => r,
            Err(e) => {
                ok = false;
                notes.push(format!("q3 sequence failed: {e}"));
                continue;
            }
        };
        let sub = ZSquareSubgroup::new(&group, t.a, t.b, t.c);
        // Freeness recomputed over the lattice coordinates.
        let lattice: Vec<_> = (-6i64..=6)
            .flat_map(|k| (-6i64..=6).map(move |l| (k, l)))
            .filter(|&(k, l)| (k, l) != (0, 0) && hex_norm(k, l) <= 6)
            .map(|(k, l)| sub.element_at(k, l))
            .collect();
        let free_by_coordinates = report.sequence.g.iter().all(|g| {
            let g_inv = group.invert(g);
            lattice.iter().all(|h| {
                sub.theta(&group.multiply(&group.multiply(&g_inv, h), g))
                    .is_none()
            })
        });
        let witness = pukanszky_witness(&sub, 5, 2, 2);
        let fine = report.sequence.g.len() == 5
            && report.all_free()
            && free_by_coordinates
            && report.normal_form_conditions
            && report.pairwise_disjoint()
            && witness.success();
        ok &= fine;
        let name = |p: Point| group.presentation().name(p).to_string();
        notes.push(format!(
            "q3 triple ({} {} {}): 5-term sequence free up to 6 {}, disjoint {}, witness {}/5",
            name(t.a),
            name(t.b),
            name(t.c),
            report.all_free() && free_by_coordinates,
            report.pairwise_disjoint(),
            witness.count()
        ));
    }
    // The flat group: every generator lies on the three lines, so no
    // sequence exists and the whole ball is the trivial coset.
    let flat = A2Group::new(fixtures::load(fixtures::Z2).unwrap()).unwrap();
    let t = commuting_triples(&flat)[0];
    let sub = ZSquareSubgroup::new(&flat, t.a, t.b, t.c);
    let partition = decompose_ball(&sub, 3, 3);
    let flat_ok = verify_lemma3c(&flat, (t.a, t.b, t.c), 5, 6).is_err()
        && partition.cosets.len() == 1
        && partition.cosets[0].members.len() == 37;
    ok &= flat_ok;
    notes.push(format!(
        "Z^2 path: no sequence and a single coset {flat_ok}"
    ));
    verdict(ok, notes.join("; "))
}

// ------------------------------------------------------------ free product

fn free_product() -> Verdict {
    let start = Instant::now();
    let fp = FreeProduct::new(1, 2).unwrap();
    let h = CyclicFactor::new(&fp).unwrap();
    let a = fp.generator(0);
    // Exact freeness against conjugating a^k, k ≤ 8, directly.
    let ball = trigroup_core::words::ball_elements(&fp, 8);
    let outside: Vec<_> = ball.iter().filter(|g| !h.contains(g)).collect();
    let mismatches = outside
        .par_iter()
        .filter(|g| {
            let g_inv = fp.invert(g);
            let direct = (1..=8).all(|k| {
                let ak = (0..k).fold(fp.identity(), |acc, _| fp.multiply(&acc, &a));
                !h.contains(&fp.multiply(&fp.multiply(&g_inv, &ak), g))
            });
            !(h.exact_condition_31(g) && direct)
        })
        .count();
    let counts: Vec<usize> = [3, 5, 7, 9, 11]
        .iter()
        .map(|&r| decompose_ball(&h, r, r).free_cosets().count())
        .collect();
    let increasing = counts.windows(2).all(|w| w[0] < w[1]);
    let floors = counts.iter().zip(1..).all(|(&c, m)| c >= m);
    let elapsed = start.elapsed();
    let ok = mismatches == 0 && increasing && floors && within(elapsed, Duration::from_secs(10));
    verdict(
        ok,
        format!(
            "{} elements outside <a> to radius 8, {mismatches} not free; free cosets at radii 3,5,7,9,11: \
             {counts:?}; {elapsed:.2?} (limit 10 s)",
            outside.len()
        ),
    )
}

// -------------------------------------------------------------- condition II

fn condition_ii() -> Verdict {
    let start = Instant::now();
    let holds = condition_ii_bruteforce(5, 4);
    let elapsed = start.elapsed();
    verdict(
        holds && within(elapsed, Duration::from_secs(1)),
        format!("entries up to 5, indices up to 4: {holds} in {elapsed:.2?} (limit 1 s)"),
    )
}

// ----------------------------------------------------------------- building

fn building_local_structure() -> Verdict {
    let group = A2Group::new(fixtures::load(fixtures::B3_PATTERN).unwrap()).unwrap();
    let ball = build_ball(&group, 2).unwrap();
    let e = ball.index_of(&group.identity()).unwrap();
    let link = vertex_link(&ball, e).unwrap();
    let iso = is_isomorphic(&link.graph, &incidence_graph(group.presentation().plane()));
    let per_edge = ball.triangles_per_edge();
    let interior: Vec<_> = ball.interior_edges().collect();
    let bad_edges = interior
        .iter()
        .filter(|&&&(s, _, t)| per_edge[&(s, t)] != 3)
        .count();

    // The flat link is the hexagon a - b^-1 - c - a^-1 - b - c^-1.
    let flat = A2Group::new(fixtures::load(fixtures::Z2).unwrap()).unwrap();
    let fball = build_ball(&flat, 1).unwrap();
    let fl = vertex_link(&fball, fball.index_of(&flat.identity()).unwrap()).unwrap();
    let name = |p: Point| flat.presentation().name(p).to_string();
    let mut labelled: BTreeSet<(String, String)> = BTreeSet::new();
    for (i, adj) in fl.graph.adj.iter().enumerate() {
        for &j in adj {
            labelled.insert((name(fl.out_points[i]), name(fl.in_points[j]) + "^-1"));
        }
    }
    let hexagon = ["a0", "a1^-1", "a2", "a0^-1", "a1", "a2^-1"];
    let expected: BTreeSet<(String, String)> = (0..6)
        .map(|k| {
            let (u, v) = (hexagon[k], hexagon[(k + 1) % 6]);
            if u.ends_with("^-1") {
                (v.to_string(), u.to_string())
            } else {
                (u.to_string(), v.to_string())
            }
        })
        .collect();
    let hex_ok = labelled == expected && girth(&fl.graph) == Some(6) && fl.graph.num_edges() == 6;
    verdict(
        iso && bad_edges == 0 && !interior.is_empty() && hex_ok,
        format!(
            "q=2 link is the incidence graph: {iso}; {} interior edges, {bad_edges} not on 3 triangles; \
             flat link is the labelled hexagon: {hex_ok}",
            interior.len()
        ),
    )
}

// -------------------------------------------------------------- degenerate

fn degenerate_classification(q1: &[TrianglePresentation]) -> Verdict {
    let patterns: BTreeSet<Vec<Triple>> = q1.iter().map(relator_pattern).collect();
    let mut kinds = BTreeSet::new();
    let mut mismatches = 0;
    for tp in q1 {
        let by_oracle = affine::identify(tp, 4);
        let by_engine = classify_degenerate(tp);
        mismatches += usize::from(by_oracle.is_none() || by_oracle != by_engine);
        if let Some(k) = by_oracle {
            kinds.insert(k);
        }
    }
    let all_three = kinds.len() == 3 && affine::KINDS.iter().all(|k| kinds.contains(k));
    let names: Vec<&str> = kinds.iter().map(|k: &DegenerateKind| k.name()).collect();
    verdict(
        patterns.len() == 3 && all_three && mismatches == 0,
        format!(
            "{} presentations, {} relator patterns, identified as {}; {mismatches} disagreements with the affine realizations",
            q1.len(),
            patterns.len(),
            names.join(", ")
        ),
    )
}

// ------------------------------------------------------------ determinism

fn run_cli(threads: &str, args: &[String]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_trigroup"))
        .arg("--threads")
        .arg(threads)
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn determinism(dir: &Path) -> Verdict {
    let file = |stem: &str| -> String {
        let text = fixtures::ALL.iter().find(|(s, _)| *s == stem).unwrap().1;
        let path: PathBuf = dir.join(format!("{stem}.tp"));
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    };
    let (b3, q3, z2) = (file("q2_b3_pattern"), file("q3_commuting"), file("q1_z2"));
    let runs: Vec<Vec<String>> = [
        vec!["plane", "--order", "3"],
        vec!["search", "--order", "2", "--lambda", "all", "--max", "40"],
        vec!["search", "--order", "3", "--max", "2", "--json"],
        vec!["validate", &b3],
        vec![
            "normalize",
            &q3,
            "--word",
            "a1 a7 a0^-1 a5 a2^-1",
            "--right",
        ],
        vec!["analyze", &b3, "--normalizer-radius", "2"],
        vec!["analyze", &z2, "--json"],
        vec!["ball", &b3, "--radius", "2", "--json"],
        vec!["ball", &q3, "--radius", "1", "--dot"],
        vec![
            "cosets",
            &q3,
            "--radius",
            "2",
            "--bound",
            "2",
            "--sequence",
            "5",
            "--target",
            "5",
        ],
        vec!["cosets", "--free-product", "1,2", "--radius", "6", "--json"],
        vec!["confluence", &b3, "--samples", "500"],
    ]
    .iter()
    .map(|v| v.iter().map(|s| s.to_string()).collect())
    .collect();
    let differing: Vec<String> = runs
        .iter()
        .filter(|args| run_cli("1", args) != run_cli("8", args))
        .map(|args| args[0].clone())
        .collect();
    verdict(
        differing.is_empty(),
        format!(
            "{} command lines, {} differing between 1 and 8 threads {:?}",
            runs.len(),
            differing.len(),
            differing
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut verdicts: Vec<(&str, Verdict)> = Vec::new();

    verdicts.push(("plane axioms", plane_axioms()));

    let search_start = Instant::now();
    let plane2 = build_desarguesian_plane(2).unwrap();
    let q2 = search_all(&plane2, CorrespondenceFamily::All, false, usize::MAX).unwrap();
    let search_time = search_start.elapsed();
    verdicts.push((
        "order-two exhaustive search",
        order_two_search(&q2, search_time),
    ));

    verdicts.push(("rewriting soundness", rewriting_soundness(&q2)));

    let plane1 = build_desarguesian_plane(1).unwrap();
    let q1 = search_all(&plane1, CorrespondenceFamily::All, false, usize::MAX).unwrap();
    let mut available: Vec<TrianglePresentation> = fixtures::ALL
        .iter()
        .map(|(_, t)| fixtures::load(t).unwrap())
        .collect();
    available.extend(q1.iter().cloned());
    available.extend(q2.iter().cloned());
    verdicts.push(("commutation lemma suite", lemma_suite(&available)));

    verdicts.push(("conjugate chains", conjugate_chains()));
    verdicts.push(("strip lattice normalizer", strip_lattice_normalizer()));
    verdicts.push((
        "free double cosets of a flat subgroup",
        free_double_cosets(),
    ));
    verdicts.push(("free product double cosets", free_product()));
    verdicts.push(("unimodular sublattice condition", condition_ii()));
    verdicts.push(("building local structure", building_local_structure()));
    verdicts.push(("three-point classification", degenerate_classification(&q1)));

    let dir = tempfile::tempdir().unwrap();
    verdicts.push(("thread-count determinism", determinism(dir.path())));

    let mut failed = 0;
    for (i, (name, v)) in verdicts.iter().enumerate() {
        let status = if v.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!v.passed);
        println!("{status} {:>2} {name}: {}", i + 1, v.detail);
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        verdicts.len() - failed,
        verdicts.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
