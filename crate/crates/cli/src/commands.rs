use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use trigroup_core::analysis::{
    analyze, commutes, commuting_pairs, commuting_triples, ZSquareSubgroup,
};
use trigroup_core::building::{
    ball_to_dot, ball_to_json, build_ball_around, girth, incidence_graph, is_isomorphic,
    vertex_link,
};
use trigroup_core::cosets::{
    decompose_ball, verify_lemma3c, Cond31, CyclicFactor, FreeProduct, Lemma3cReport,
};
use trigroup_core::plane::{
    build_desarguesian_plane, enumerate_correspondences, validate_plane, CorrespondenceFamily,
};
use trigroup_core::presentation::{parse, search_with, serialize, validate, SearchOptions};
use trigroup_core::words::{termination_measure, Orientation};
use trigroup_core::{A2Group, GroupOracle, Point, Subgroup, TrianglePresentation, Triple};

use crate::{BallArgs, Cli, Command, CosetArgs, LambdaFamily, SearchArgs};

/// An option value that parsed but makes no sense; reported with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// What a command printed and whether its checks passed.
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            passed: true,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn load(path: &Path) -> Result<TrianglePresentation> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_group(path: &Path) -> Result<A2Group> {
    let tp = load(path)?;
    let report = validate(&tp);
    if !report.is_valid() {
        bail!(
            "{} is not a valid triangle presentation: {}",
            path.display(),
            report.describe(&tp).join("; ")
        );
    }
    Ok(A2Group::new(tp)?)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Plane { order } => plane(*order, cli.json),
        Command::Search(args) => search(args, cli.json),
        Command::Validate { file } => validate_file(file, cli.json),
        Command::Normalize { file, word, right } => normalize(file, word, *right, cli.json),
        Command::Analyze {
            file,
            normalizer_radius,
        } => analyze_file(file, *normalizer_radius, cli.json),
        Command::Ball(args) => ball(args, cli.json),
        Command::Cosets(args) => cosets(args, cli.json),
        Command::Confluence { file, samples } => confluence(file, *samples, cli.seed, cli.json),
    }
}

#[derive(Serialize)]
struct PlaneJson {
    order: usize,
    points: Vec<String>,
    lines: Vec<Vec<String>>,
    violations: Vec<String>,
}

fn plane(order: usize, json: bool) -> Result<Outcome> {
    let plane = build_desarguesian_plane(order)?;
    let violations: Vec<String> = validate_plane(&plane)
        .iter()
        .map(|v| v.to_string())
        .collect();
    let names = |pts: &[Point]| {
        pts.iter()
            .map(|&p| plane.name(p).to_string())
            .collect::<Vec<_>>()
    };
    let passed = violations.is_empty();
    let output = if json {
        to_json(&PlaneJson {
            order,
            points: plane.names().to_vec(),
            lines: plane.lines().iter().map(|l| names(l)).collect(),
            violations,
        })?
    } else {
        let mut out = format!(
            "order {order}: {} points, {} lines\n",
            plane.num_points(),
            plane.num_lines()
        );
        for (i, l) in plane.lines().iter().enumerate() {
            let _ = writeln!(out, "L{i}: {}", names(l).join(" "));
        }
        if passed {
            out += "axioms: OK\n";
        } else {
            for v in &violations {
                let _ = writeln!(out, "violation: {v}");
            }
        }
        out
    };
    Ok(Outcome { output, passed })
}

#[derive(Serialize)]
struct PresentationJson {
    label: String,
    order: usize,
    points: Vec<String>,
    lambda: Vec<Vec<String>>,
    triples: Vec<[String; 3]>,
}

fn presentation_json(tp: &TrianglePresentation) -> PresentationJson {
    let name = |p: Point| tp.name(p).to_string();
    PresentationJson {
        label: tp.label().to_string(),
        order: tp.order(),
        points: tp.plane().names().to_vec(),
        lambda: tp
            .plane()
            .points()
            .map(|x| tp.lambda_points(x).iter().map(|&p| name(p)).collect())
            .collect(),
        triples: tp
            .triples()
            .iter()
            .map(|t| [name(t.0), name(t.1), name(t.2)])
            .collect(),
    }
}

fn search(args: &SearchArgs, json: bool) -> Result<Outcome> {
    let plane = build_desarguesian_plane(args.order)?;
    let family = match args.lambda {
        LambdaFamily::All => CorrespondenceFamily::All,
        LambdaFamily::Singer => CorrespondenceFamily::Singer,
    };
    let mut forced = Vec::new();
    for text in &args.forced {
        let pts: Vec<Point> = text
            .split_whitespace()
            .map(|name| {
                plane
                    .point_by_name(name)
                    .ok_or_else(|| UsageError(format!("unknown point `{name}` in --forced")))
            })
            .collect::<std::result::Result<_, _>>()?;
        let [x, y, z] = pts[..] else {
            return Err(UsageError(format!("--forced needs three points, got `{text}`")).into());
        };
        forced.push(Triple(x, y, z));
    }
    let max = usize::try_from(args.max).unwrap_or(usize::MAX);
    let lambdas: Vec<_> = enumerate_correspondences(&plane, family, args.allow_large)?.collect();
    let options = SearchOptions {
        limit: max,
        forced,
        node_budget: args.node_budget,
    };
    let tag = match args.lambda {
        LambdaFamily::All => "all",
        LambdaFamily::Singer => "singer",
    };
    let outcomes: Vec<_> = lambdas
        .par_iter()
        .map(|lambda| search_with(&plane, lambda, &options))
        .collect::<std::result::Result<_, _>>()?;
    let incomplete = outcomes.iter().filter(|o| !o.complete).count();
    let found: Vec<TrianglePresentation> = outcomes
        .into_iter()
        .enumerate()
        .flat_map(|(i, o)| {
            o.presentations
                .into_iter()
                .enumerate()
                .map(move |(k, tp)| tp.with_label(format!("{tag}-{i}-{k}")))
        })
        .take(max)
        .collect();
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for tp in &found {
            let path = dir.join(format!("{}.tp", tp.label()));
            std::fs::write(&path, serialize(tp))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let output = if json {
        #[derive(Serialize)]
        struct SearchJson {
            order: usize,
            correspondences: usize,
            incomplete: usize,
            presentations: Vec<PresentationJson>,
        }
        to_json(&SearchJson {
            order: args.order,
            correspondences: lambdas.len(),
            incomplete,
            presentations: found.iter().map(presentation_json).collect(),
        })?
    } else {
        let mut out = format!(
            "# {} presentation(s) over {} correspondence(s)",
            found.len(),
            lambdas.len()
        );
        if incomplete > 0 {
            let _ = write!(out, ", {incomplete} search(es) stopped by the node budget");
        }
        out.push('\n');
        if args.out_dir.is_none() {
            for tp in &found {
                out.push('\n');
                out += &serialize(tp);
            }
        }
        out
    };
    Ok(Outcome::ok(output))
}

fn validate_file(file: &Path, json: bool) -> Result<Outcome> {
    let tp = load(file)?;
    let report = validate(&tp);
    let problems = report.describe(&tp);
    let passed = report.is_valid();
    let output = if json {
        #[derive(Serialize)]
        struct ValidateJson {
            valid: bool,
            violations: Vec<String>,
        }
        to_json(&ValidateJson {
            valid: passed,
            violations: problems,
        })?
    } else if passed {
        "OK\n".to_string()
    } else {
        problems
            .iter()
            .map(|p| format!("violation: {p}\n"))
            .collect()
    };
    Ok(Outcome { output, passed })
}

fn normalize(file: &Path, word: &str, right: bool, json: bool) -> Result<Outcome> {
    let group = load_group(file)?;
    let letters = group.parse_word(word)?;
    let g = group.normalize(&letters)?;
    let (pos, neg) = group.right_normal_form(&g);
    let tp = group.presentation();
    let right_form = {
        let mut parts: Vec<String> = pos.iter().map(|&p| tp.name(p).to_string()).collect();
        parts.extend(neg.iter().map(|&p| format!("{}^-1", tp.name(p))));
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join(" ")
        }
    };
    let output = if json {
        #[derive(Serialize)]
        struct NormalizeJson {
            word: String,
            left: String,
            right: String,
            length: usize,
        }
        to_json(&NormalizeJson {
            word: word.to_string(),
            left: group.format(&g),
            right: right_form,
            length: g.len(),
        })?
    } else if right {
        right_form + "\n"
    } else {
        group.format(&g) + "\n"
    };
    Ok(Outcome::ok(output))
}

fn analyze_file(file: &Path, normalizer_radius: Option<usize>, json: bool) -> Result<Outcome> {
    let group = load_group(file)?;
    let report = analyze(&group, normalizer_radius);
    let pairs_ok = commuting_pairs(&group)
        .iter()
        .all(|&(x, y)| commutes(&group, x, y).witness_relation_holds);
    let triples_ok = commuting_triples(&group)
        .iter()
        .all(|t| t.product_trivial && t.meet_is_third);
    let central_ok = report.line_central.iter().all(|r| r.holds);
    let output = if json {
        to_json(&report)?
    } else {
        report.to_text()
    };
    Ok(Outcome {
        output,
        passed: pairs_ok && triples_ok && central_ok,
    })
}

fn ball(args: &BallArgs, json: bool) -> Result<Outcome> {
    let group = load_group(&args.file)?;
    let center = match &args.center {
        Some(w) => group.parse(w)?,
        None => group.identity(),
    };
    let ball = build_ball_around(&group, &center, args.radius, args.cap)?;
    let rendered = match &args.dot {
        Some(_) => Some(ball_to_dot(&ball)),
        None if json => Some(ball_to_json(&ball)?),
        None => None,
    };
    let target = args
        .output
        .as_ref()
        .or(args.dot.as_ref().and_then(Option::as_ref));
    if let Some(text) = rendered {
        match target {
            Some(path) => {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
            }
            None => return Ok(Outcome::ok(text)),
        }
    }
    let sizes: Vec<String> = ball.sphere_sizes().iter().map(usize::to_string).collect();
    let mut out = format!(
        "center {}, radius {}\nvertices {}, edges {}, triangles {}\nsphere sizes: {}\n",
        group.format(&center),
        args.radius,
        ball.vertices().len(),
        ball.edges().len(),
        ball.triangles().len(),
        sizes.join(" ")
    );
    let q = group.presentation().order();
    let mut passed = true;
    let per_edge = ball.triangles_per_edge();
    let interior: Vec<_> = ball.interior_edges().collect();
    let bad = interior
        .iter()
        .filter(|&&&(s, _, t)| per_edge[&(s, t)] != q + 1)
        .count();
    let _ = writeln!(
        out,
        "interior edges: {}, on other than {} triangles: {bad}",
        interior.len(),
        q + 1
    );
    passed &= bad == 0;
    if args.radius >= 1 {
        let c = ball.index_of(&center).expect("center is in its ball");
        let link = vertex_link(&ball, c)?;
        let iso = is_isomorphic(&link.graph, &incidence_graph(group.presentation().plane()));
        let g = girth(&link.graph).map_or("none".to_string(), |g| g.to_string());
        let _ = writeln!(
            out,
            "link of center: {} + {} vertices, {} edges, girth {g}, incidence graph: {}",
            link.graph.left,
            link.graph.right,
            link.graph.num_edges(),
            if iso { "yes" } else { "no" }
        );
        passed &= iso;
    }
    Ok(Outcome {
        output: out,
        passed,
    })
}

fn parse_pair(text: &str, what: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts[..] {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => {
                Err(UsageError(format!("{what} must be two integers \"s,t\", got `{text}`")).into())
            }
        },
        _ => Err(UsageError(format!("{what} must be two integers \"s,t\", got `{text}`")).into()),
    }
}

#[derive(Serialize)]
struct CosetJson {
    subgroup: String,
    radius: usize,
    bound: usize,
    exact: bool,
    ball_size: usize,
    nontrivial: usize,
    /// Nontrivial cosets satisfying the freeness condition up to the bound.
    pukanszky_witness_count: usize,
    cosets: Vec<CosetEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<SequenceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<usize>,
    passed: bool,
}

#[derive(Serialize)]
struct CosetEntry {
    rep: String,
    size: usize,
    /// "holds-up-to-bound" or "fails".
    cond31: &'static str,
    /// For failures, the subgroup element whose conjugate stays in the
    /// subgroup, and that conjugate.
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[String; 2]>,
}

#[derive(Serialize)]
struct SequenceJson {
    elements: Vec<String>,
    first_choices: usize,
    all_free: bool,
    pairwise_disjoint: bool,
    passes: bool,
}

fn coset_report<S: Subgroup>(
    sub: &S,
    radius: usize,
    bound: usize,
    target: Option<usize>,
    sequence: Option<SequenceJson>,
) -> CosetJson {
    let group = sub.group();
    let partition = decompose_ball(sub, radius, bound);
    let free = partition.free_cosets().count();
    let mut passed = target.is_none_or(|t| free >= t);
    if let Some(s) = &sequence {
        passed &= s.passes;
    }
    CosetJson {
        subgroup: sub.describe(),
        radius,
        bound,
        exact: partition.exact,
        ball_size: partition.cosets.iter().map(|c| c.members.len()).sum(),
        nontrivial: partition.nontrivial_count(),
        pukanszky_witness_count: free,
        cosets: partition
            .cosets
            .iter()
            .map(|c| CosetEntry {
                rep: group.format(&c.representative),
                size: c.members.len(),
                cond31: if c.cond31.holds() {
                    "holds-up-to-bound"
                } else {
                    "fails"
                },
                witness: match &c.cond31 {
                    Cond31::HoldsUpToBound => None,
                    Cond31::Fails { witness, conjugate } => {
                        Some([group.format(witness), group.format(conjugate)])
                    }
                },
            })
            .collect(),
        sequence,
        target,
        passed,
    }
}

fn sequence_json(group: &A2Group, report: &Lemma3cReport) -> SequenceJson {
    SequenceJson {
        elements: report.sequence.g.iter().map(|g| group.format(g)).collect(),
        first_choices: report.sequence.first_choices,
        all_free: report.all_free(),
        pairwise_disjoint: report.pairwise_disjoint(),
        passes: report.passes(),
    }
}

fn coset_text(r: &CosetJson) -> String {
    let mut out = format!(
        "subgroup {}, radius {}, bound {}, {}\n",
        r.subgroup,
        r.radius,
        r.bound,
        if r.exact {
            "exact partition"
        } else {
            "bounded search"
        }
    );
    let _ = writeln!(
        out,
        "ball {}: {} nontrivial double coset(s), {} free up to the bound",
        r.ball_size, r.nontrivial, r.pukanszky_witness_count
    );
    for c in &r.cosets {
        let _ = writeln!(
            out,
            "  {} ({} element(s){})",
            c.rep,
            c.size,
            if c.cond31 == "fails" { "" } else { ", free" }
        );
    }
    if let Some(s) = &r.sequence {
        let _ = writeln!(
            out,
            "sequence: {} ({} choice(s) for the first letter)",
            s.elements.join(", "),
            s.first_choices
        );
        let _ = writeln!(
            out,
            "sequence free: {}, pairwise disjoint: {}",
            s.all_free, s.pairwise_disjoint
        );
    }
    if let Some(t) = r.target {
        let _ = writeln!(
            out,
            "target {t}: {}",
            if r.pukanszky_witness_count >= t {
                "reached"
            } else {
                "not reached"
            }
        );
    }
    out
}

fn cosets(args: &CosetArgs, json: bool) -> Result<Outcome> {
    let bound = args.bound.unwrap_or(args.radius);
    let report = if let Some(spec) = &args.free_product {
        let (s, t) = parse_pair(spec, "--free-product")?;
        if args.sequence.is_some() {
            return Err(UsageError("--sequence needs a presentation file".into()).into());
        }
        let fp = FreeProduct::new(s, t)?;
        let sub = CyclicFactor::new(&fp)?;
        coset_report(&sub, args.radius, bound, args.target, None)
    } else {
        let file = args.file.as_ref().expect("clap requires a file");
        let group = load_group(file)?;
        let tp = group.presentation();
        let (a, b, c) = if args.triple == "auto" {
            let t = commuting_triples(&group)
                .into_iter()
                .find(|t| t.product_trivial)
                .context("the presentation has no commuting triple")?;
            (t.a, t.b, t.c)
        } else {
            let pts: Vec<Point> = args
                .triple
                .split(',')
                .map(|s| tp.point(s.trim()))
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| UsageError(format!("--triple: {e}")))?;
            let [a, b, c] = pts[..] else {
                return Err(UsageError(format!(
                    "--triple needs three points, got `{}`",
                    args.triple
                ))
                .into());
            };
            (a, b, c)
        };
        trigroup_core::building::apartment_grid(&group, (a, b, c), 0)?;
        let sequence = match args.sequence {
            Some(n) => Some(sequence_json(
                &group,
                &verify_lemma3c(&group, (a, b, c), n, bound)?,
            )),
            None => None,
        };
        let sub = ZSquareSubgroup::new(&group, a, b, c);
        coset_report(&sub, args.radius, bound, args.target, sequence)
    };
    let passed = report.passed;
    let output = if json {
        to_json(&report)?
    } else {
        coset_text(&report)
    };
    Ok(Outcome { output, passed })
}

#[derive(Serialize)]
struct ConfluenceJson {
    words_checked: usize,
    confluent: bool,
    divergences: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<SampleJson>,
}

#[derive(Serialize)]
struct SampleJson {
    seed: u64,
    samples: usize,
    rewrite_steps: usize,
    measure_failures: usize,
    associativity_failures: usize,
}

fn random_checks(group: &A2Group, samples: usize, seed: u64) -> SampleJson {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0;
    let mut measure_failures = 0;
    let mut associativity_failures = 0;
    for _ in 0..samples {
        let len = rng.gen_range(2..=12);
        let word = group.random_word(&mut rng, len);
        for orientation in [Orientation::Left, Orientation::Right] {
            let before = termination_measure(orientation, &word);
            for pos in 0..word.len() - 1 {
                for (_, next) in group.rules().step_at(orientation, &word, pos) {
                    steps += 1;
                    if termination_measure(orientation, &next) >= before {
                        measure_failures += 1;
                    }
                }
            }
        }
        let [x, y, z] = [0; 3].map(|_| group.random_element(&mut rng, 8));
        if group.multiply(&group.multiply(&x, &y), &z)
            != group.multiply(&x, &group.multiply(&y, &z))
        {
            associativity_failures += 1;
        }
    }
    SampleJson {
        seed,
        samples,
        rewrite_steps: steps,
        measure_failures,
        associativity_failures,
    }
}

fn confluence(file: &Path, samples: usize, seed: u64, json: bool) -> Result<Outcome> {
    let tp = load(file)?;
    let report = trigroup_core::words::check_confluence(&tp);
    let divergences: Vec<String> = report
        .left
        .iter()
        .map(|d| ("left", d))
        .chain(report.right.iter().map(|d| ("right", d)))
        .map(|(side, d)| {
            let forms: Vec<String> = d.forms.iter().map(|f| tp_format(&tp, f)).collect();
            format!(
                "{side}: {} -> {}",
                tp_format(&tp, &d.word),
                forms.join(" | ")
            )
        })
        .collect();
    let sample = if samples > 0 {
        if !validate(&tp).is_valid() {
            bail!("random checks need a valid presentation");
        }
        Some(random_checks(&A2Group::new(tp.clone())?, samples, seed))
    } else {
        None
    };
    let passed = report.is_confluent()
        && sample
            .as_ref()
            .is_none_or(|s| s.measure_failures == 0 && s.associativity_failures == 0);
    let output = if json {
        to_json(&ConfluenceJson {
            words_checked: report.words_checked,
            confluent: report.is_confluent(),
            divergences,
            samples: sample,
        })?
    } else {
        let mut out = if report.is_confluent() {
            format!(
                "confluent: {} words checked in each orientation\n",
                report.words_checked
            )
        } else {
            let mut s = format!("not confluent: {} divergence(s)\n", divergences.len());
            for d in &divergences {
                let _ = writeln!(s, "  {d}");
            }
            s
        };
        if let Some(s) = &sample {
            let _ = writeln!(
                out,
                "random checks (seed {}): {} words, {} rewrite steps, {} measure failure(s), {} associativity failure(s)",
                s.seed, s.samples, s.rewrite_steps, s.measure_failures, s.associativity_failures
            );
        }
        out
    };
    Ok(Outcome { output, passed })
}

fn tp_format(tp: &TrianglePresentation, word: &[trigroup_core::Letter]) -> String {
    trigroup_core::words::format_word(tp, word)
}
