//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_upto, connected_graphs, connected_upto, subset_dp};
use graphsig::census::{census, DEFAULT_BUDGET};
use graphsig::enumerate::{FamilySpec, StreamError, Subject};
use graphsig::graph6::to_graph6;
use graphsig::harness::{
    check_line_families, search_counterexamples, CheckId, CheckOptions, SearchEvent, SearchOutcome, Verdict,
};
use graphsig::inertia::{congruence_inertia, default_zero_tolerance, float_inertia_oracle, inertia};
use graphsig::structure::cut_vertices;
use graphsig::transforms::{line_graph, reduce_fully};
use graphsig::Graph;

type Outcome = Result<String, String>;

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn family(spec: &str) -> impl Iterator<Item = Result<Subject, StreamError>> {
    spec.parse::<FamilySpec>()
        .expect("valid family")
        .subjects()
        .expect("family within caps")
        .map(Ok)
}

fn graphs(gs: impl IntoIterator<Item = Graph>, tag: &'static str) -> impl Iterator<Item = Result<Subject, StreamError>> {
    gs.into_iter()
        .enumerate()
        .map(move |(i, graph)| Ok(Subject::Graph { graph, provenance: format!("{tag} #{}", i + 1) }))
}

/// Runs one check, printing every failure as a graph6 witness.
fn search<I>(subjects: I, id: CheckId, options: &CheckOptions) -> SearchOutcome
where
    I: IntoIterator<Item = Result<Subject, StreamError>>,
{
    search_counterexamples(subjects, id, options, jobs(), |event| {
        if let SearchEvent::Report(r) = event {
            if r.verdict == Verdict::Fail {
                println!("    witness {}", r.to_json());
            }
        }
    })
    .expect("check runs")
}

/// Zero failures and zero skips, with at least one non-vacuous pass.
fn clean(label: &str, outcome: &SearchOutcome) -> Outcome {
    let s = outcome.summary;
    let line = format!(
        "{label}: {} subjects, {} pass, {} vacuous, {} skipped, {} fail",
        s.subjects, s.pass, s.vacuous, s.skipped, s.fail
    );
    if s.fail == 0 && s.skipped == 0 && s.pass > 0 && s.input_errors == 0 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn all_clean(parts: Vec<Outcome>) -> Outcome {
    let failed = parts.iter().any(Result::is_err);
    let text = parts.into_iter().map(|p| p.unwrap_or_else(|e| e)).collect::<Vec<_>>().join("; ");
    if failed {
        Err(text)
    } else {
        Ok(text)
    }
}

fn engines() -> Outcome {
    let mut checked = 0;
    for g in connected_upto(7) {
        let exact = inertia(&g).map_err(|e| e.to_string())?;
        let float = float_inertia_oracle(&g, default_zero_tolerance(&g)).map_err(|e| e.to_string())?;
        let congruence = congruence_inertia(&g).map_err(|e| e.to_string())?;
        if float != Some(exact) || congruence != exact {
            return Err(format!("disagreement on {}: {exact:?} {float:?} {congruence:?}", to_graph6(&g)));
        }
        checked += 1;
    }
    Ok(format!("{checked} connected graphs, three engines agree"))
}

fn path_contraction() -> Outcome {
    let options = CheckOptions::default();
    let cycles = graphs((8..=20).map(Graph::cycle), "cycle");
    let subjects = family("trees:1..10")
        .chain(family("unicyclic:3..10"))
        .chain(family("bicyclic:4..10"))
        .chain(cycles);
    clean("families n<=10 + C8..C20", &search(subjects, CheckId::PathContraction, &options))
}

fn sun_nullity() -> Outcome {
    let outcome = search(family("suns:8,2"), CheckId::SunNullity, &CheckOptions::default());
    if outcome.summary.subjects != 9828 {
        return Err(format!("expected 9828 specs, got {}", outcome.summary.subjects));
    }
    clean("suns t<=8, n_i<=2", &outcome)
}

fn cut_vertex_calculus() -> Outcome {
    let with_cut: Vec<Graph> = connected_upto(8).filter(|g| !cut_vertices(g).is_empty()).collect();
    let options = CheckOptions::default();
    let ids = [
        CheckId::CutVertexRank,
        CheckId::VertexDeletion,
        CheckId::InducedRank,
        CheckId::CutVertexJump,
        CheckId::CutVertexSplit,
        CheckId::CutVertexGain,
        CheckId::CutVertexUpper,
    ];
    let parts = ids
        .into_iter()
        .map(|id| clean(id.as_str(), &search(graphs(with_cut.clone(), "cut"), id, &options)))
        .collect();
    all_clean(parts).map(|t| format!("{} graphs with a cut vertex; {t}", with_cut.len()))
}

fn sparse_families() -> Outcome {
    let options = CheckOptions::default();
    all_clean(vec![
        clean("trees n<=12", &search(family("trees:1..12"), CheckId::Conjecture, &options)),
        clean("unicyclic n<=10", &search(family("unicyclic:3..10"), CheckId::Conjecture, &options)),
        clean("bicyclic n<=9", &search(family("bicyclic:4..9"), CheckId::Conjecture, &options)),
    ])
}

fn line_trees() -> Outcome {
    clean("trees 2<=n<=12", &search(family("trees:2..12"), CheckId::LineTree, &CheckOptions::default()))
}

fn line_graphs() -> Outcome {
    let subjects = graphs((2..=8).flat_map(connected_graphs), "connected");
    clean("connected 2<=n<=8", &search(subjects, CheckId::LineGraph, &CheckOptions::default()))
}

fn theta(paths: [usize; 3]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 2;
    for len in paths {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::from_edges(next, &edges).unwrap()
}

fn shared_vertex(a: usize, b: usize) -> Graph {
    let n = a + b - 1;
    let mut edges: Vec<(usize, usize)> = (0..a).map(|i| (i, (i + 1) % a)).collect();
    let ring: Vec<usize> = std::iter::once(0).chain(a..n).collect();
    edges.extend((0..b).map(|i| (ring[i], ring[(i + 1) % b])));
    Graph::from_edges(n, &edges).unwrap()
}

fn cycle_with_pendants(t: usize, separation: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..t).map(|i| (i, (i + 1) % t)).collect();
    edges.push((0, t));
    edges.push((separation, t + 1));
    Graph::from_edges(t + 2, &edges).unwrap()
}

fn line_families() -> Outcome {
    let cases = [
        ("two C6 sharing a vertex", shared_vertex(6, 6)),
        ("C6 + pendants at separation 1", cycle_with_pendants(6, 1)),
        ("C6 + pendants at separation 3", cycle_with_pendants(6, 3)),
        ("two C6 sharing an edge", theta([1, 5, 5])),
        ("two C6 sharing a path of length 3", theta([3, 3, 3])),
        ("C6 and C10 sharing a vertex", shared_vertex(6, 10)),
        ("C10 + pendants at separation 5", cycle_with_pendants(10, 5)),
        ("theta 3,3,7", theta([3, 3, 7])),
        ("theta 5,5,5", theta([5, 5, 5])),
    ];
    let mut out = Vec::new();
    for (name, g) in cases {
        let l = line_graph(&g);
        let s = inertia(&l).unwrap().signature();
        let reduced = inertia(&reduce_fully(&l).graph).unwrap().signature();
        let report = check_line_families(&g, DEFAULT_BUDGET).unwrap();
        if s != -1 || reduced != -1 || report.verdict != Verdict::Pass {
            return Err(format!("{name}: s(L)={s}, s(reduced)={reduced}, verdict {:?}", report.verdict));
        }
        out.push(name);
    }
    Ok(format!("s(L) = s(reduced L) = -1 for: {}", out.join(", ")))
}

fn tree_powers() -> Outcome {
    let options = CheckOptions { budget: 10_000_000, power_exponents: vec![2, 3] };
    all_clean(vec![
        clean("cycles through every vertex", &search(family("trees:5..9"), CheckId::PowerCycles, &options)),
        clean("bounds on T^k", &search(family("trees:5..9"), CheckId::PowerTree, &options)),
    ])
}

fn total_graphs() -> Outcome {
    let options = CheckOptions::default();
    all_clean(vec![
        clean("T = S^2", &search(family("trees:2..8"), CheckId::TotalEqSquare, &options)),
        clean("bounds on T_G", &search(family("trees:2..8"), CheckId::TotalGraph, &options)),
    ])
}

fn census_oracle() -> Outcome {
    let mut checked = 0;
    for g in all_upto(7) {
        let c = census(&g, DEFAULT_BUDGET).unwrap();
        if c.budget_exceeded || c.by_length != subset_dp(&g) {
            return Err(format!("census mismatch on {}", to_graph6(&g)));
        }
        checked += 1;
    }
    let k4 = census(&Graph::complete(4), DEFAULT_BUDGET).unwrap().by_length;
    let k5 = census(&Graph::complete(5), DEFAULT_BUDGET).unwrap().by_length;
    if k4 != BTreeMap::from([(3, 4), (4, 3)]) || k5 != BTreeMap::from([(3, 10), (4, 15), (5, 12)]) {
        return Err(format!("spot values K4 {k4:?} K5 {k5:?}"));
    }
    Ok(format!("{checked} graphs match the subset oracle; K4 and K5 spot values confirmed"))
}

fn conjecture_search() -> Outcome {
    let subjects = graphs(connected_upto(9), "connected");
    let mut weak_violations = 0u64;
    let outcome = search_counterexamples(subjects, CheckId::Conjecture, &CheckOptions::default(), jobs(), |event| {
        if let SearchEvent::Report(r) = event {
            if r.witness["weakBoundHolds"] == serde_json::Value::Bool(false) {
                weak_violations += 1;
            }
            if r.verdict == Verdict::Fail {
                println!("    witness {}", r.to_json());
            }
        }
    })
    .expect("check runs");
    clean("connected n<=9", &outcome).map(|t| format!("{t}; |s| <= c1 violated {weak_violations} times"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("engine cross-validation", 120, engines),
        ("path contraction", 600, path_contraction),
        ("sun line-graph nullity", 300, sun_nullity),
        ("cut-vertex calculus", 600, cut_vertex_calculus),
        ("bounds on sparse families", 600, sparse_families),
        ("upper bound on line graphs of trees", 600, line_trees),
        ("bounds on line graphs", 600, line_graphs),
        ("two-cycle line graph families", 60, line_families),
        ("tree powers", 600, tree_powers),
        ("total graphs of trees", 600, total_graphs),
        ("cycle census oracle", 120, census_oracle),
        ("conjecture search", 1800, conjecture_search),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {name} [{:.1}s / {}s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
