//! Bound and identity checks over single graphs, and the stream runner that
//! applies one check to every element of a family or graph6 stream.
//!
//! Every check produces [`CheckReport`]s with a verdict and the numbers that
//! decided it. Proven statements are regression checks of this engine; the
//! general cycle-count bound is a genuine search, and a failure there is a
//! result to keep, not a bug.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::{census_until, cycles_through_vertex, CycleCensus, CycleTarget};
use crate::enumerate::{StreamError, Subject};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::inertia::{inertia, Inertia};
use crate::structure::{components, cut_vertices, is_bipartite, is_connected, is_tree};
use crate::transforms::{
    contract_path4, find_contraction_sites, line_graph, power, reduce_fully, subdivision, sun,
    total_graph, SunSpec,
};

/// Version of the JSON-lines report schema.
pub const SCHEMA_VERSION: u32 = 1;

/// Induced-subgraph checks enumerate every vertex subset up to this order.
pub const SUBSET_ORDER_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    /// `-c3(G) <= s(G) <= c5(G)` on the input graph.
    Conjecture,
    /// Contracting four degree-2 path vertices lowers p and n by 2.
    PathContraction,
    /// Combinatorial nullity of line graphs of sun graphs.
    SunNullity,
    /// Rank behaviour at a cut vertex.
    CutVertexRank,
    /// `|s(G) - s(G-x)| <= 1`, with equality cases.
    VertexDeletion,
    /// Induced subgraphs of full rank share the signature.
    InducedRank,
    /// Rank jump by 2 at a cut vertex keeps the signature.
    CutVertexJump,
    /// Signature splits off a rank-stable component.
    CutVertexSplit,
    /// A signature gain at a cut vertex comes from one component.
    CutVertexGain,
    /// The upper bound passes through a cut vertex.
    CutVertexUpper,
    /// Line graphs of the two-cycle families with cycles of length 2 mod 4.
    LineFamilies,
    /// Upper bound on line graphs of trees.
    LineTree,
    /// Both bounds on line graphs.
    LineGraph,
    /// Every vertex of a tree power lies on a triangle and a 5-cycle.
    PowerCycles,
    /// Both bounds on powers of trees.
    PowerTree,
    /// Both bounds on total graphs of trees.
    TotalGraph,
    /// Total graph equals the square of the subdivision.
    TotalEqSquare,
}

/// Whether a failure refutes a proven statement (an engine bug) or is a
/// search result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckClass {
    Regression,
    Search,
}

impl CheckId {
    pub const ALL: [CheckId; 17] = [
        CheckId::Conjecture,
        CheckId::PathContraction,
        CheckId::SunNullity,
        CheckId::CutVertexRank,
        CheckId::VertexDeletion,
        CheckId::InducedRank,
        CheckId::CutVertexJump,
        CheckId::CutVertexSplit,
        CheckId::CutVertexGain,
        CheckId::CutVertexUpper,
        CheckId::LineFamilies,
        CheckId::LineTree,
        CheckId::LineGraph,
        CheckId::PowerCycles,
        CheckId::PowerTree,
        CheckId::TotalGraph,
        CheckId::TotalEqSquare,
    ];

    /// Identifier used on the command line and in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Conjecture => "conjecture-1.1",
            CheckId::PathContraction => "lemma-2.1",
            CheckId::SunNullity => "lemma-2.2",
            CheckId::CutVertexRank => "lemma-2.3",
            CheckId::VertexDeletion => "lemma-2.4",
            CheckId::InducedRank => "cor-2.5",
            CheckId::CutVertexJump => "cor-2.6",
            CheckId::CutVertexSplit => "lemma-2.7",
            CheckId::CutVertexGain => "lemma-2.8",
            CheckId::CutVertexUpper => "cor-2.9",
            CheckId::LineFamilies => "lemma-3.1",
            CheckId::LineTree => "thm-3.2",
            CheckId::LineGraph => "thm-3.3",
            CheckId::PowerCycles => "lemma-4.1",
            CheckId::PowerTree => "thm-4.2",
            CheckId::TotalGraph => "cor-4.3",
            CheckId::TotalEqSquare => "total-eq-square",
        }
    }

    pub fn class(self) -> CheckClass {
        match self {
            CheckId::Conjecture => CheckClass::Search,
            _ => CheckClass::Regression,
        }
    }

    fn is_cut_vertex_law(self) -> bool {
        matches!(
            self,
            CheckId::CutVertexRank
                | CheckId::CutVertexJump
                | CheckId::CutVertexSplit
                | CheckId::CutVertexGain
                | CheckId::CutVertexUpper
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check id {s:?}")))
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypothesis of the statement does not apply.
    Vacuous,
    /// The cycle budget ran out before the counts were complete.
    Skipped,
}

impl Verdict {
    fn of(holds: bool) -> Self {
        if holds {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphRef {
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub check_id: CheckId,
    pub class: CheckClass,
    pub graph: GraphRef,
    /// Which part of the graph the verdict is about, e.g. `x=3,component=1`.
    pub instance: String,
    pub verdict: Verdict,
    pub witness: Value,
}

impl CheckReport {
    fn new(check_id: CheckId, graph: &GraphRef, instance: impl Into<String>, verdict: Verdict, witness: Value) -> Self {
        CheckReport {
            check_id,
            class: check_id.class(),
            graph: graph.clone(),
            instance: instance.into(),
            verdict,
            witness,
        }
    }

    /// JSON-lines form, tagged with the schema version.
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        let obj = v.as_object_mut().expect("report is an object");
        obj.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
        obj.insert("kind".into(), json!("report"));
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    pub budget: u64,
    /// Exponents tried by the tree-power checks.
    pub power_exponents: Vec<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            budget: crate::census::DEFAULT_BUDGET,
            power_exponents: vec![2, 3],
        }
    }
}

fn graph_ref(g: &Graph, provenance: Option<&str>) -> GraphRef {
    GraphRef {
        graph6: to_graph6(g),
        provenance: provenance.map(str::to_string),
    }
}

fn inertia_json(i: Inertia) -> Value {
    json!({"p": i.p, "n": i.n, "eta": i.eta, "r": i.rank(), "s": i.signature()})
}

/// Outcome of the two-sided bound `-c3 <= s <= c5` on one graph. Cycle
/// enumeration stops once the counts settle the sides asked for.
struct Bounds {
    inertia: Inertia,
    census: CycleCensus,
}

impl Bounds {
    fn compute(g: &Graph, budget: u64, lower: bool, upper: bool) -> Result<Self> {
        let inertia = inertia(g)?;
        let s = inertia.signature();
        let c3_goal = if lower { (-s).max(0) as u64 } else { 0 };
        let c5_goal = if upper { s.max(0) as u64 } else { 0 };
        Ok(Bounds {
            inertia,
            census: census_until(g, budget, c3_goal, c5_goal)?,
        })
    }

    fn s(&self) -> i64 {
        self.inertia.signature()
    }

    fn lower(&self) -> bool {
        -(self.census.c3 as i64) <= self.s()
    }

    fn upper(&self) -> bool {
        self.s() <= self.census.c5 as i64
    }

    fn verdict(&self, lower: bool, upper: bool) -> Verdict {
        if self.census.budget_exceeded {
            Verdict::Skipped
        } else {
            Verdict::of((!lower || self.lower()) && (!upper || self.upper()))
        }
    }

    fn json(&self) -> Value {
        json!({
            "p": self.inertia.p,
            "n": self.inertia.n,
            "eta": self.inertia.eta,
            "s": self.s(),
            "c3": self.census.c3,
            "c5": self.census.c5,
            "c1": self.census.c1,
            "budgetExceeded": self.census.budget_exceeded,
            "partial": self.census.partial,
        })
    }
}

/// `-c3(G) <= s(G) <= c5(G)`, with `|s(G)| <= c1(G)` recorded alongside.
pub fn check_conjecture(g: &Graph, budget: u64) -> Result<CheckReport> {
    conjecture_report(g, &graph_ref(g, None), budget)
}

fn conjecture_report(g: &Graph, gref: &GraphRef, budget: u64) -> Result<CheckReport> {
    let b = Bounds::compute(g, budget, true, true)?;
    let mut witness = b.json();
    witness["weakBoundHolds"] = json!(b.s().unsigned_abs() <= b.census.c1);
    witness["bipartite"] = json!(is_bipartite(g));
    Ok(CheckReport::new(CheckId::Conjecture, gref, "graph", b.verdict(true, true), witness))
}

/// Maximal cyclic zero runs of a pendant sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ZeroChainProfile {
    pub indicator: Vec<bool>,
    /// `(start, length)` of each maximal cyclic zero run bounded by nonzero
    /// entries; empty when the sequence is all zero.
    pub chains: Vec<(usize, usize)>,
    /// Number of nonzero entries.
    pub m: usize,
}

impl ZeroChainProfile {
    pub fn of(pendants: &[usize]) -> Self {
        let t = pendants.len();
        let indicator: Vec<bool> = pendants.iter().map(|&p| p > 0).collect();
        let m = indicator.iter().filter(|&&b| b).count();
        let mut chains = Vec::new();
        if m > 0 {
            for start in 0..t {
                // A run starts right after a nonzero entry.
                if indicator[start] || !indicator[(start + t - 1) % t] {
                    continue;
                }
                let len = (0..t).take_while(|&k| !indicator[(start + k) % t]).count();
                chains.push((start, len));
            }
        }
        ZeroChainProfile { indicator, chains, m }
    }
}

/// Nullity of the line graph of the sun graph `spec`, predicted from the
/// pendant pattern alone.
pub fn predict_sun_nullity(spec: &SunSpec) -> usize {
    let t = spec.t();
    let pendants = spec.pendants();
    let profile = ZeroChainProfile::of(pendants);
    let m = profile.m;
    if m == 0 {
        return if t.is_multiple_of(4) { 2 } else { 0 };
    }
    let unit_loads = pendants.iter().all(|&p| p <= 1);
    let even_chains = profile.chains.iter().all(|&(_, len)| len % 2 == 0);
    let first = unit_loads && even_chains && (t + m).is_multiple_of(4);
    // 1-based odd positions are 0-based even indices.
    let odd_free = pendants.iter().step_by(2).all(|&p| p == 0);
    let even_free = pendants.iter().skip(1).step_by(2).all(|&p| p == 0);
    let second = t.is_multiple_of(4) && (odd_free || even_free);
    usize::from(first || second)
}

pub fn check_sun_nullity(spec: &SunSpec) -> Result<CheckReport> {
    let g = sun(spec);
    let gref = GraphRef {
        graph6: to_graph6(&g),
        provenance: Some(format!("sun {spec}")),
    };
    let predicted = predict_sun_nullity(spec);
    let exact = inertia(&line_graph(&g))?.eta;
    let profile = ZeroChainProfile::of(spec.pendants());
    let witness = json!({
        "sun": spec.to_string(),
        "t": spec.t(),
        "m": profile.m,
        "zeroChains": profile.chains,
        "predicted": predicted,
        "exact": exact,
    });
    Ok(CheckReport::new(
        CheckId::SunNullity,
        &gref,
        "line graph",
        Verdict::of(predicted == exact),
        witness,
    ))
}

fn vacuous(id: CheckId, gref: &GraphRef, why: &str) -> CheckReport {
    CheckReport::new(id, gref, "graph", Verdict::Vacuous, json!({ "reason": why }))
}

/// For every admissible contraction site: p and n drop by exactly 2 and the
/// nullity is unchanged.
pub fn check_lemma_2_1(g: &Graph) -> Result<Vec<CheckReport>> {
    path_contraction_reports(g, &graph_ref(g, None))
}

fn path_contraction_reports(g: &Graph, gref: &GraphRef) -> Result<Vec<CheckReport>> {
    let sites = find_contraction_sites(g);
    if sites.is_empty() {
        return Ok(vec![vacuous(CheckId::PathContraction, gref, "no admissible contraction site")]);
    }
    let before = inertia(g)?;
    sites
        .iter()
        .map(|site| {
            let h = contract_path4(g, site)?;
            let after = inertia(&h)?;
            let holds = before.p == after.p + 2
                && before.n == after.n + 2
                && before.eta == after.eta
                && before.signature() == after.signature();
            Ok(CheckReport::new(
                CheckId::PathContraction,
                gref,
                format!("site={:?},anchors={:?}", site.inner, site.anchors),
                Verdict::of(holds),
                json!({
                    "site": site,
                    "g": inertia_json(before),
                    "h": inertia_json(after),
                    "h6": to_graph6(&h),
                }),
            ))
        })
        .collect()
}

/// `|s(G) - s(G-x)| <= 1` for every vertex, and equality when the rank
/// stays or drops by two.
pub fn check_vertex_deletion(g: &Graph) -> Result<Vec<CheckReport>> {
    vertex_deletion_reports(g, &graph_ref(g, None))
}

fn vertex_deletion_reports(g: &Graph, gref: &GraphRef) -> Result<Vec<CheckReport>> {
    if g.order() == 0 {
        return Ok(vec![vacuous(CheckId::VertexDeletion, gref, "no vertices")]);
    }
    let whole = inertia(g)?;
    (0..g.order())
        .map(|x| {
            let part = inertia(&g.delete_vertex(x)?.0)?;
            let (s, sx) = (whole.signature(), part.signature());
            let (r, rx) = (whole.rank(), part.rank());
            let mut holds = (s - sx).abs() <= 1;
            if rx == r || rx + 2 == r {
                holds &= s == sx;
            }
            Ok(CheckReport::new(
                CheckId::VertexDeletion,
                gref,
                format!("x={x}"),
                Verdict::of(holds),
                json!({"x": x, "s": s, "sMinusX": sx, "r": r, "rMinusX": rx}),
            ))
        })
        .collect()
}

/// Every proper nonempty induced subgraph with the rank of `g` has the
/// signature of `g`. Orders above [`SUBSET_ORDER_CAP`] are skipped.
pub fn check_induced_rank(g: &Graph) -> Result<CheckReport> {
    induced_rank_report(g, &graph_ref(g, None))
}

fn induced_rank_report(g: &Graph, gref: &GraphRef) -> Result<CheckReport> {
    let n = g.order();
    if n > SUBSET_ORDER_CAP {
        return Ok(CheckReport::new(
            CheckId::InducedRank,
            gref,
            "graph",
            Verdict::Skipped,
            json!({"reason": "order exceeds the induced-subgraph cap", "cap": SUBSET_ORDER_CAP}),
        ));
    }
    let whole = inertia(g)?;
    let mut met = 0u64;
    let mut failure = None;
    for mask in 1u64..(1u64 << n).saturating_sub(1) {
        let keep: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = inertia(&g.induced(&keep)?.0)?;
        if sub.rank() == whole.rank() {
            met += 1;
            if sub.signature() != whole.signature() && failure.is_none() {
                failure = Some(json!({"subset": keep, "s": sub.signature()}));
            }
        }
    }
    let verdict = match (&failure, met) {
        (Some(_), _) => Verdict::Fail,
        (None, 0) => Verdict::Vacuous,
        (None, _) => Verdict::Pass,
    };
    Ok(CheckReport::new(
        CheckId::InducedRank,
        gref,
        "graph",
        verdict,
        json!({"r": whole.rank(), "s": whole.signature(), "hypothesisMet": met, "failure": failure}),
    ))
}

/// Spectral data around one cut vertex `x`.
struct CutPieces {
    /// Components of `G - x`, as vertex sets of `G`.
    parts: Vec<Vec<usize>>,
    part: Vec<Inertia>,
    part_plus_x: Vec<Inertia>,
    /// `G - G_i`.
    rest: Vec<Inertia>,
    minus_x: Inertia,
    census: Option<CutCensus>,
}

struct CutCensus {
    part_c5: Vec<u64>,
    part_plus_x_c5: Vec<u64>,
    exceeded: bool,
}

impl CutPieces {
    fn compute(g: &Graph, x: usize, budget: Option<u64>) -> Result<Self> {
        let (minus, map) = g.delete_vertex(x)?;
        let parts: Vec<Vec<usize>> = components(&minus)
            .into_iter()
            .map(|c| c.into_iter().map(|v| map.old_index(v)).collect())
            .collect();
        let mut pieces = CutPieces {
            part: Vec::new(),
            part_plus_x: Vec::new(),
            rest: Vec::new(),
            minus_x: inertia(&minus)?,
            census: budget.map(|_| CutCensus {
                part_c5: Vec::new(),
                part_plus_x_c5: Vec::new(),
                exceeded: false,
            }),
            parts: Vec::new(),
        };
        for comp in &parts {
            let sub = g.induced(comp)?.0;
            let mut with_x = comp.clone();
            with_x.push(x);
            let sub_x = g.induced(&with_x)?.0;
            let (si, six) = (inertia(&sub)?, inertia(&sub_x)?);
            pieces.part.push(si);
            pieces.part_plus_x.push(six);
            pieces.rest.push(inertia(&g.delete_vertices(comp)?.0)?);
            if let (Some(b), Some(cc)) = (budget, pieces.census.as_mut()) {
                let a = census_until(&sub, b, 0, si.signature().max(0) as u64)?;
                let c = census_until(&sub_x, b, 0, six.signature().max(0) as u64)?;
                cc.exceeded |= a.budget_exceeded || c.budget_exceeded;
                cc.part_c5.push(a.c5);
                cc.part_plus_x_c5.push(c.c5);
            }
        }
        pieces.parts = parts;
        Ok(pieces)
    }
}

/// Rank and signature laws at every cut vertex and component of `g - x`,
/// including the upper-bound transfer (which needs cycle counts).
pub fn check_cut_vertex_laws(g: &Graph, budget: u64) -> Result<Vec<CheckReport>> {
    cut_vertex_reports(g, &graph_ref(g, None), Some(budget), None)
}

fn cut_vertex_reports(
    g: &Graph,
    gref: &GraphRef,
    budget: Option<u64>,
    only: Option<CheckId>,
) -> Result<Vec<CheckReport>> {
    let wanted = |id: CheckId| only.is_none_or(|o| o == id);
    let ids = [
        CheckId::CutVertexRank,
        CheckId::CutVertexJump,
        CheckId::CutVertexSplit,
        CheckId::CutVertexGain,
        CheckId::CutVertexUpper,
    ];
    let cuts = cut_vertices(g);
    if cuts.is_empty() {
        return Ok(ids
            .into_iter()
            .filter(|&id| wanted(id))
            .map(|id| vacuous(id, gref, "no cut vertex"))
            .collect());
    }
    let whole = inertia(g)?;
    let (r, s) = (whole.rank(), whole.signature());
    let need_census = wanted(CheckId::CutVertexUpper);
    let whole_census = match (need_census, budget) {
        (true, Some(b)) => Some(census_until(g, b, 0, s.max(0) as u64)?),
        _ => None,
    };

    let mut out = Vec::new();
    for &x in &cuts {
        let pc = CutPieces::compute(g, x, budget.filter(|_| need_census))?;
        let (rx, sx) = (pc.minus_x.rank(), pc.minus_x.signature());
        for (i, comp) in pc.parts.iter().enumerate() {
            let (ri, si) = (pc.part[i].rank(), pc.part[i].signature());
            let rix = pc.part_plus_x[i].rank();
            let (rrest, srest) = (pc.rest[i].rank(), pc.rest[i].signature());
            let instance = format!("x={x},component={i}");
            let base = json!({
                "x": x, "component": comp,
                "r": r, "s": s, "rMinusX": rx, "sMinusX": sx,
                "rPart": ri, "sPart": si, "rPartPlusX": rix,
                "rRest": rrest, "sRest": srest,
            });
            if wanted(CheckId::CutVertexRank) {
                let verdict = if rix == ri + 2 {
                    Verdict::of(r == rx + 2)
                } else if rix == ri {
                    Verdict::of(r == ri + rrest)
                } else {
                    Verdict::Vacuous
                };
                out.push(CheckReport::new(CheckId::CutVertexRank, gref, &instance, verdict, base.clone()));
            }
            if wanted(CheckId::CutVertexJump) {
                let verdict = if rix == ri + 2 { Verdict::of(s == sx) } else { Verdict::Vacuous };
                out.push(CheckReport::new(CheckId::CutVertexJump, gref, &instance, verdict, base.clone()));
            }
            if wanted(CheckId::CutVertexSplit) {
                let verdict = if rix == ri { Verdict::of(s == si + srest) } else { Verdict::Vacuous };
                out.push(CheckReport::new(CheckId::CutVertexSplit, gref, &instance, verdict, base));
            }
        }
        let instance = format!("x={x}");
        if wanted(CheckId::CutVertexSplit) {
            let all_stable = (0..pc.parts.len()).all(|i| pc.part[i].rank() == pc.part_plus_x[i].rank());
            let verdict = if all_stable { Verdict::of(s == sx) } else { Verdict::Vacuous };
            out.push(CheckReport::new(
                CheckId::CutVertexSplit,
                gref,
                format!("{instance},all-components"),
                verdict,
                json!({"x": x, "s": s, "sMinusX": sx}),
            ));
        }
        if wanted(CheckId::CutVertexGain) {
            let total: i64 = pc.part.iter().map(Inertia::signature).sum();
            let candidates: Vec<usize> = (0..pc.parts.len())
                .filter(|&l| {
                    let (sl, slx) = (pc.part[l].signature(), pc.part_plus_x[l].signature());
                    slx == sl + 1 && s == slx + (total - sl)
                })
                .collect();
            let verdict = if s == sx + 1 { Verdict::of(!candidates.is_empty()) } else { Verdict::Vacuous };
            out.push(CheckReport::new(
                CheckId::CutVertexGain,
                gref,
                &instance,
                verdict,
                json!({
                    "x": x, "s": s, "sMinusX": sx,
                    "sParts": pc.part.iter().map(Inertia::signature).collect::<Vec<_>>(),
                    "sPartsPlusX": pc.part_plus_x.iter().map(Inertia::signature).collect::<Vec<_>>(),
                    "witnessComponents": candidates,
                }),
            ));
        }
        if let (Some(cc), Some(wc)) = (&pc.census, &whole_census) {
            let hypothesis = (0..pc.parts.len()).all(|i| {
                pc.part[i].signature() <= cc.part_c5[i] as i64
                    && pc.part_plus_x[i].signature() <= cc.part_plus_x_c5[i] as i64
            });
            let verdict = if cc.exceeded || wc.budget_exceeded {
                Verdict::Skipped
            } else if hypothesis {
                Verdict::of(s <= wc.c5 as i64)
            } else {
                Verdict::Vacuous
            };
            out.push(CheckReport::new(
                CheckId::CutVertexUpper,
                gref,
                &instance,
                verdict,
                json!({
                    "x": x, "s": s, "c5": wc.c5,
                    "c5Parts": cc.part_c5, "c5PartsPlusX": cc.part_plus_x_c5,
                    "sParts": pc.part.iter().map(Inertia::signature).collect::<Vec<_>>(),
                    "sPartsPlusX": pc.part_plus_x.iter().map(Inertia::signature).collect::<Vec<_>>(),
                }),
            ));
        }
    }
    Ok(out)
}

/// Shapes whose line graphs are treated as base cases for the upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "shape")]
pub enum TwoCycleShape {
    /// A cycle with two pendant edges whose attachment points are
    /// `separation` apart along the cycle (0 when they coincide).
    CycleWithTwoPendants { cycle: usize, separation: usize },
    /// Two cycles sharing exactly one vertex.
    SharedVertex { cycles: (usize, usize) },
    /// Three internally disjoint paths between two branch vertices.
    SharedPath { paths: [usize; 3] },
}

impl TwoCycleShape {
    /// True when every cycle of the shape has length 2 mod 4.
    pub fn all_cycles_2_mod_4(&self) -> bool {
        match *self {
            TwoCycleShape::CycleWithTwoPendants { cycle, .. } => cycle % 4 == 2,
            TwoCycleShape::SharedVertex { cycles: (a, b) } => a % 4 == 2 && b % 4 == 2,
            TwoCycleShape::SharedPath { paths: [a, b, c] } => {
                (a + b) % 4 == 2 && (a + c) % 4 == 2 && (b + c) % 4 == 2
            }
        }
    }

    /// Whether the reduced line graph is expected to have signature -1.
    fn expects_minus_one(&self) -> bool {
        match *self {
            TwoCycleShape::CycleWithTwoPendants { separation, .. } => separation % 2 == 1,
            _ => true,
        }
    }
}

/// Walks from `start` through `first` along degree-2 vertices until a
/// vertex of another degree (or `start`) is reached; returns (end, length).
fn walk_thread(g: &Graph, start: usize, first: usize) -> (usize, usize) {
    let (mut prev, mut cur, mut len) = (start, first, 1);
    while cur != start && g.degree(cur) == 2 {
        let ns = g.neighbors(cur);
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
        len += 1;
    }
    (cur, len)
}

/// Recognizes the two-cycle shapes, regardless of cycle lengths.
pub fn classify_two_cycle_shape(g: &Graph) -> Option<TwoCycleShape> {
    if g.order() < 3 || !is_connected(g) {
        return None;
    }
    let degrees = g.degrees();
    let count = |d: usize| degrees.iter().filter(|&&x| x == d).count();
    let n = g.order();
    if g.size() == n && count(1) == 2 && count(2) + count(1) + count(3) + count(4) == n {
        let leaves: Vec<usize> = (0..n).filter(|&v| degrees[v] == 1).collect();
        let (core, map) = g.delete_vertices(&leaves).ok()?;
        let is_cycle = core.order() >= 3 && core.degrees().iter().all(|&d| d == 2) && is_connected(&core);
        if !is_cycle {
            return None;
        }
        let x1 = map.new_index(g.neighbors(leaves[0])[0])?;
        let x2 = map.new_index(g.neighbors(leaves[1])[0])?;
        let d = core.distances_from(x1)[x2]?;
        return Some(TwoCycleShape::CycleWithTwoPendants {
            cycle: core.order(),
            separation: d,
        });
    }
    if g.size() != n + 1 || count(1) > 0 {
        return None;
    }
    if count(4) == 1 && count(2) == n - 1 {
        let hub = (0..n).find(|&v| degrees[v] == 4)?;
        let mut lengths = Vec::new();
        let mut used = std::collections::HashSet::new();
        for &first in g.neighbors(hub) {
            if used.contains(&first) {
                continue;
            }
            let (end, len) = walk_thread(g, hub, first);
            if end != hub {
                return None;
            }
            // Mark both ends of this loop so it is walked once.
            used.insert(first);
            let last = trace_last(g, hub, first);
            used.insert(last);
            lengths.push(len);
        }
        if let [a, b] = lengths[..] {
            return Some(TwoCycleShape::SharedVertex { cycles: (a.min(b), a.max(b)) });
        }
        return None;
    }
    if count(3) == 2 && count(2) == n - 2 {
        let hubs: Vec<usize> = (0..n).filter(|&v| degrees[v] == 3).collect();
        let mut paths = [0usize; 3];
        for (slot, &first) in g.neighbors(hubs[0]).iter().enumerate() {
            let (end, len) = walk_thread(g, hubs[0], first);
            if end != hubs[1] {
                return None;
            }
            paths[slot] = len;
        }
        paths.sort_unstable();
        return Some(TwoCycleShape::SharedPath { paths });
    }
    None
}

fn trace_last(g: &Graph, start: usize, first: usize) -> usize {
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        let ns = g.neighbors(cur);
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
    }
    prev
}

/// Upper bound on the line graphs of the two-cycle shapes with all cycles
/// of length 2 mod 4, plus the signature of their fully reduced line graphs.
pub fn check_line_families(g: &Graph, budget: u64) -> Result<CheckReport> {
    line_family_report(g, &graph_ref(g, None), budget)
}

fn line_family_report(g: &Graph, gref: &GraphRef, budget: u64) -> Result<CheckReport> {
    let Some(shape) = classify_two_cycle_shape(g).filter(TwoCycleShape::all_cycles_2_mod_4) else {
        return Ok(vacuous(CheckId::LineFamilies, gref, "not a two-cycle shape with cycles of length 2 mod 4"));
    };
    let l = line_graph(g);
    let b = Bounds::compute(&l, budget, false, true)?;
    let reduced = reduce_fully(&l);
    let s_reduced = inertia(&reduced.graph)?.signature();
    let mut holds = b.upper() && s_reduced == b.s();
    if shape.expects_minus_one() {
        holds &= s_reduced == -1;
    } else {
        holds &= b.s() <= 0;
    }
    let verdict = if b.census.budget_exceeded { Verdict::Skipped } else { Verdict::of(holds) };
    Ok(CheckReport::new(
        CheckId::LineFamilies,
        gref,
        "line graph",
        verdict,
        json!({
            "shape": shape,
            "line": b.json(),
            "reduced6": to_graph6(&reduced.graph),
            "reductionSteps": reduced.steps,
            "sReduced": s_reduced,
        }),
    ))
}

/// Both bounds on the line graph (no isolated vertices required), and the
/// upper bound tagged separately when the input is a tree with an edge.
pub fn check_line_graph_theorems(g: &Graph, budget: u64) -> Result<Vec<CheckReport>> {
    line_graph_reports(g, &graph_ref(g, None), budget, None)
}

fn line_graph_reports(g: &Graph, gref: &GraphRef, budget: u64, only: Option<CheckId>) -> Result<Vec<CheckReport>> {
    let wanted = |id: CheckId| only.is_none_or(|o| o == id);
    let tree = is_tree(g) && g.size() >= 1;
    let usable = !g.has_isolated_vertex() && g.size() >= 1;
    let mut out = Vec::new();
    let bounds = if usable { Some(Bounds::compute(&line_graph(g), budget, true, true)?) } else { None };
    let tagged = |b: &Bounds| {
        let mut w = b.json();
        w["tree"] = json!(tree);
        w
    };
    if wanted(CheckId::LineGraph) {
        out.push(match &bounds {
            Some(b) => CheckReport::new(CheckId::LineGraph, gref, "line graph", b.verdict(true, true), tagged(b)),
            None => vacuous(CheckId::LineGraph, gref, "isolated vertex or no edges"),
        });
    }
    if wanted(CheckId::LineTree) {
        out.push(match (&bounds, tree) {
            (Some(b), true) => CheckReport::new(CheckId::LineTree, gref, "line graph", b.verdict(false, true), tagged(b)),
            _ => vacuous(CheckId::LineTree, gref, "not a tree with at least one edge"),
        });
    }
    Ok(out)
}

/// Both bounds on `tree^k`, and for at least five vertices, a triangle and
/// a 5-cycle through every vertex.
pub fn check_power_tree_theorems(tree: &Graph, k: usize, budget: u64) -> Result<Vec<CheckReport>> {
    if !is_tree(tree) {
        return Err(Error::NotATree);
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("tree power exponent must be at least 2, got {k}")));
    }
    power_reports(tree, &graph_ref(tree, None), k, budget, None)
}

fn power_reports(tree: &Graph, gref: &GraphRef, k: usize, budget: u64, only: Option<CheckId>) -> Result<Vec<CheckReport>> {
    let wanted = |id: CheckId| only.is_none_or(|o| o == id);
    let p = power(tree, k)?;
    let instance = format!("k={k}");
    let mut out = Vec::new();
    if wanted(CheckId::PowerTree) {
        let b = Bounds::compute(&p, budget, true, true)?;
        let mut w = b.json();
        w["k"] = json!(k);
        w["power6"] = json!(to_graph6(&p));
        out.push(CheckReport::new(CheckId::PowerTree, gref, &instance, b.verdict(true, true), w));
    }
    if wanted(CheckId::PowerCycles) {
        if p.order() < 5 {
            out.push(CheckReport::new(
                CheckId::PowerCycles,
                gref,
                &instance,
                Verdict::Vacuous,
                json!({"k": k, "reason": "fewer than 5 vertices"}),
            ));
        } else {
            let targets = [CycleTarget::Length(3), CycleTarget::Length(5)];
            let mut missing_c3 = Vec::new();
            let mut missing_c5 = Vec::new();
            for v in 0..p.order() {
                let hit = cycles_through_vertex(&p, v, &targets)?;
                if !hit[0] {
                    missing_c3.push(v);
                }
                if !hit[1] {
                    missing_c5.push(v);
                }
            }
            let holds = missing_c3.is_empty() && missing_c5.is_empty();
            out.push(CheckReport::new(
                CheckId::PowerCycles,
                gref,
                &instance,
                Verdict::of(holds),
                json!({"k": k, "missingC3": missing_c3, "missingC5": missing_c5}),
            ));
        }
    }
    Ok(out)
}

/// Total graph of a tree: the square-of-subdivision identity and both bounds.
pub fn check_total_graph(tree: &Graph, budget: u64) -> Result<Vec<CheckReport>> {
    if !is_tree(tree) {
        return Err(Error::NotATree);
    }
    total_reports(tree, &graph_ref(tree, None), budget, None)
}

/// `total_graph(g) == power(subdivision(g), 2)`, labels included.
pub fn check_total_square_identity(g: &Graph) -> Result<CheckReport> {
    Ok(total_reports(g, &graph_ref(g, None), 0, Some(CheckId::TotalEqSquare))?.remove(0))
}

fn total_reports(g: &Graph, gref: &GraphRef, budget: u64, only: Option<CheckId>) -> Result<Vec<CheckReport>> {
    let wanted = |id: CheckId| only.is_none_or(|o| o == id);
    let t = total_graph(g);
    let square = power(&subdivision(g), 2)?;
    let identical = t == square;
    let mut out = Vec::new();
    if wanted(CheckId::TotalGraph) {
        let b = Bounds::compute(&t, budget, true, true)?;
        let mut w = b.json();
        w["identical"] = json!(identical);
        w["total6"] = json!(to_graph6(&t));
        let verdict = match b.verdict(true, true) {
            Verdict::Pass if !identical => Verdict::Fail,
            v => v,
        };
        out.push(CheckReport::new(CheckId::TotalGraph, gref, "total graph", verdict, w));
    }
    if wanted(CheckId::TotalEqSquare) {
        out.push(CheckReport::new(
            CheckId::TotalEqSquare,
            gref,
            "total graph",
            Verdict::of(identical),
            json!({"total6": to_graph6(&t), "square6": to_graph6(&square)}),
        ));
    }
    Ok(out)
}

/// Runs one check on one family element.
///
/// Tree-only checks report non-trees as vacuous here, since streams mix
/// graph classes; the direct `check_*` functions reject them instead.
pub fn run_check(id: CheckId, subject: &Subject, options: &CheckOptions) -> Result<Vec<CheckReport>> {
    let (g, provenance) = match subject {
        Subject::Sun(spec) if id == CheckId::SunNullity => return Ok(vec![check_sun_nullity(spec)?]),
        Subject::Sun(spec) => (sun(spec), format!("sun {spec}")),
        Subject::Graph { graph, provenance } => (graph.clone(), provenance.clone()),
    };
    let gref = graph_ref(&g, Some(&provenance));
    let budget = options.budget;
    match id {
        CheckId::Conjecture => Ok(vec![conjecture_report(&g, &gref, budget)?]),
        CheckId::PathContraction => path_contraction_reports(&g, &gref),
        CheckId::SunNullity => Err(Error::InvalidParameter(format!(
            "{} runs on sun specifications, not graphs",
            CheckId::SunNullity
        ))),
        CheckId::VertexDeletion => vertex_deletion_reports(&g, &gref),
        CheckId::InducedRank => Ok(vec![induced_rank_report(&g, &gref)?]),
        id if id.is_cut_vertex_law() => cut_vertex_reports(&g, &gref, Some(budget), Some(id)),
        CheckId::LineFamilies => Ok(vec![line_family_report(&g, &gref, budget)?]),
        CheckId::LineTree | CheckId::LineGraph => line_graph_reports(&g, &gref, budget, Some(id)),
        CheckId::PowerCycles | CheckId::PowerTree => {
            if !is_tree(&g) {
                return Ok(vec![vacuous(id, &gref, "not a tree")]);
            }
            let mut out = Vec::new();
            for &k in &options.power_exponents {
                if k < 2 {
                    return Err(Error::InvalidParameter(format!("tree power exponent must be at least 2, got {k}")));
                }
                out.extend(power_reports(&g, &gref, k, budget, Some(id))?);
            }
            Ok(out)
        }
        CheckId::TotalGraph => {
            if !is_tree(&g) {
                return Ok(vec![vacuous(id, &gref, "not a tree")]);
            }
            total_reports(&g, &gref, budget, Some(id))
        }
        CheckId::TotalEqSquare => total_reports(&g, &gref, budget, Some(id)),
        _ => unreachable!("all check ids handled"),
    }
}

/// Counts over one search run. Merging is associative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub subjects: u64,
    pub reports: u64,
    pub pass: u64,
    pub fail: u64,
    pub vacuous: u64,
    pub skipped: u64,
    pub input_errors: u64,
}

impl Summary {
    fn record(&mut self, report: &CheckReport) {
        self.reports += 1;
        match report.verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Skipped => self.skipped += 1,
        }
    }

    pub fn merge(self, other: Summary) -> Summary {
        Summary {
            subjects: self.subjects + other.subjects,
            reports: self.reports + other.reports,
            pass: self.pass + other.pass,
            fail: self.fail + other.fail,
            vacuous: self.vacuous + other.vacuous,
            skipped: self.skipped + other.skipped,
            input_errors: self.input_errors + other.input_errors,
        }
    }

    pub fn to_json(&self, id: CheckId) -> Value {
        let mut v = serde_json::to_value(self).expect("summary serializes");
        let obj = v.as_object_mut().expect("summary is an object");
        obj.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
        obj.insert("kind".into(), json!("summary"));
        obj.insert("checkId".into(), json!(id.as_str()));
        v
    }
}

/// Streamed output of a search, in input order.
pub enum SearchEvent<'a> {
    Report(&'a CheckReport),
    InputError(&'a StreamError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub summary: Summary,
    pub failures: Vec<CheckReport>,
}

const CHUNK_PER_JOB: usize = 256;

/// Applies `id` to every subject, `jobs` at a time, emitting events in input
/// order regardless of `jobs`.
pub fn search_counterexamples<I>(
    subjects: I,
    id: CheckId,
    options: &CheckOptions,
    jobs: usize,
    mut sink: impl FnMut(SearchEvent<'_>),
) -> Result<SearchOutcome>
where
    I: IntoIterator<Item = std::result::Result<Subject, StreamError>>,
{
    let jobs = jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let mut summary = Summary::default();
    let mut failures = Vec::new();
    let mut input = subjects.into_iter().peekable();
    while input.peek().is_some() {
        let chunk: Vec<_> = input.by_ref().take(CHUNK_PER_JOB * jobs).collect();
        let results: Vec<Result<std::result::Result<Vec<CheckReport>, StreamError>>> = pool.install(|| {
            chunk
                .into_par_iter()
                .map(|item| match item {
                    Ok(subject) => run_check(id, &subject, options).map(Ok),
                    Err(e) => Ok(Err(e)),
                })
                .collect()
        });
        for result in results {
            match result? {
                Ok(reports) => {
                    summary.subjects += 1;
                    for r in &reports {
                        summary.record(r);
                        sink(SearchEvent::Report(r));
                    }
                    failures.extend(reports.into_iter().filter(|r| r.verdict == Verdict::Fail));
                }
                Err(e) => {
                    summary.input_errors += 1;
                    sink(SearchEvent::InputError(&e));
                }
            }
        }
    }
    Ok(SearchOutcome { summary, failures })
}
