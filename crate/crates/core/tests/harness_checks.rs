mod common;

use common::{all_upto, arb_graph, connected_graphs};
use graphsig::enumerate::Subject;
use graphsig::graph6::{from_graph6, to_graph6};
use graphsig::harness::{
    check_cut_vertex_laws, check_lemma_2_1, check_vertex_deletion, run_check, search_counterexamples, CheckId,
    CheckOptions, CheckReport, Verdict,
};
use graphsig::inertia::inertia;
use graphsig::transforms::{find_contraction_sites, reduce_fully};
use graphsig::Graph;
use proptest::prelude::*;

fn assert_no_failures(reports: &[CheckReport]) {
    for r in reports {
        assert_ne!(r.verdict, Verdict::Fail, "{}", r.to_json());
    }
}

#[test]
fn vertex_deletion_on_all_small_graphs() {
    for g in all_upto(8).chain(connected_graphs(9).into_iter().step_by(7)) {
        assert_no_failures(&check_vertex_deletion(&g).unwrap());
    }
}

#[test]
fn cut_vertex_laws_on_disconnected_graphs() {
    for g in all_upto(7) {
        assert_no_failures(&check_cut_vertex_laws(&g, 1_000_000).unwrap());
    }
}

#[test]
fn reports_are_reproducible_from_graph6() {
    let options = CheckOptions::default();
    for g in connected_graphs(6) {
        for id in [CheckId::Conjecture, CheckId::CutVertexGain, CheckId::LineGraph, CheckId::InducedRank] {
            let subject = Subject::Graph { graph: g.clone(), provenance: "fixture".into() };
            let first = run_check(id, &subject, &options).unwrap();
            for report in &first {
                let again = Subject::Graph {
                    graph: from_graph6(&report.graph.graph6).unwrap(),
                    provenance: "fixture".into(),
                };
                let rerun = run_check(id, &again, &options).unwrap();
                let twin = rerun.iter().find(|r| r.instance == report.instance).unwrap();
                assert_eq!(twin, report);
            }
        }
    }
}

#[test]
fn search_output_is_independent_of_jobs() {
    let subjects = || {
        connected_graphs(7)
            .into_iter()
            .enumerate()
            .map(|(i, graph)| Ok(Subject::Graph { graph, provenance: format!("#{i}") }))
    };
    let options = CheckOptions::default();
    let collect = |jobs| {
        let mut lines = Vec::new();
        let outcome = search_counterexamples(subjects(), CheckId::CutVertexSplit, &options, jobs, |e| {
            if let graphsig::harness::SearchEvent::Report(r) = e {
                lines.push(r.to_json().to_string());
            }
        })
        .unwrap();
        (lines, outcome)
    };
    let (one, a) = collect(1);
    let (four, b) = collect(4);
    assert_eq!(one, four);
    assert_eq!(a, b);
    assert_eq!(a.summary.subjects, 853);
    assert_eq!(a.summary.fail, 0);
}

#[test]
fn long_cycles_reduce_to_short_cycles() {
    for n in 8..=20 {
        let reports = check_lemma_2_1(&Graph::cycle(n)).unwrap();
        assert_eq!(reports.len(), n);
        assert_no_failures(&reports);
        let reduced = reduce_fully(&Graph::cycle(n));
        let target = 3 + (n - 3) % 4;
        assert_eq!(reduced.graph.without_labels(), Graph::cycle(target).without_labels());
        assert_eq!(reduced.steps, (n - target) / 4);
    }
}

proptest! {
    #[test]
    fn contraction_preserves_signature_and_nullity(g in arb_graph(12)) {
        let before = inertia(&g).unwrap();
        for r in check_lemma_2_1(&g).unwrap() {
            prop_assert_ne!(r.verdict, Verdict::Fail, "{}", to_graph6(&g));
        }
        let reduced = reduce_fully(&g);
        let after = inertia(&reduced.graph).unwrap();
        prop_assert!(find_contraction_sites(&reduced.graph).is_empty());
        prop_assert_eq!(after.signature(), before.signature());
        prop_assert_eq!(after.eta, before.eta);
        prop_assert_eq!(reduced.graph.order() + 4 * reduced.steps, g.order());
    }
}
