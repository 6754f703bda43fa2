use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use graphsig::census::{census, DEFAULT_BUDGET};
use graphsig::enumerate::{ingest_graph6, FamilySpec, StreamError, Subject};
use graphsig::graph6::to_graph6;
use graphsig::harness::{search_counterexamples, CheckId, CheckOptions, SearchEvent};
use graphsig::inertia::inertia;
use graphsig::transforms::{line_graph, power, reduce_fully, subdivision, sun, total_graph, SunSpec};
use graphsig::Graph;

/// Exact adjacency inertia, cycle counts and bound checks for small graphs.
#[derive(Parser)]
#[command(name = "graphsig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print p, n, nullity, rank and signature of each graph.
    Inertia(Common),
    /// Count simple cycles by length and residue mod 4.
    Census(Common),
    /// Emit a transformed graph per input: line, power:K, subdivide, total,
    /// or sun:T,[N1,...] (which takes no input).
    Transform {
        which: String,
        #[command(flatten)]
        common: Common,
    },
    /// Contract degree-2 paths of four vertices until none remain.
    Reduce(Common),
    /// Run a check over every input graph; exits 1 if any check fails.
    Verify {
        check: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Read graph6 lines from a file.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Read graph6 lines from standard input.
    #[arg(long, group = "source")]
    stdin: bool,
    /// Generated family: trees:A..B, unicyclic:A..B, bicyclic:A..B, suns:TMAX,CAP.
    #[arg(long, group = "source")]
    family: Option<String>,
    /// Shorthand for --family trees:RANGE.
    #[arg(long, group = "source", value_name = "RANGE")]
    trees: Option<String>,
    /// Shorthand for --family suns:TMAX,CAP.
    #[arg(long, group = "source", value_name = "TMAX,CAP")]
    suns: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Maximum number of cycles counted per graph.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Worker threads for verify.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Stop at the first malformed input line and exit 2.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Jsonl,
}

type Item = Result<Subject, StreamError>;

impl Common {
    fn family(&self) -> anyhow::Result<Option<FamilySpec>> {
        let text = match (&self.family, &self.trees, &self.suns) {
            (Some(f), _, _) => f.clone(),
            (_, Some(r), _) => format!("trees:{r}"),
            (_, _, Some(s)) => format!("suns:{s}"),
            _ => return Ok(None),
        };
        Ok(Some(text.parse()?))
    }

    fn has_source(&self) -> bool {
        self.input.is_some() || self.stdin || self.family.is_some() || self.trees.is_some() || self.suns.is_some()
    }

    fn subjects(&self) -> anyhow::Result<Box<dyn Iterator<Item = Item>>> {
        if let Some(spec) = self.family()? {
            return Ok(Box::new(spec.subjects()?.map(Ok)));
        }
        let reader: Box<dyn io::BufRead> = match &self.input {
            Some(path) => Box::new(BufReader::new(
                File::open(path).with_context(|| format!("opening {}", path.display()))?,
            )),
            None if self.stdin => Box::new(io::stdin().lock()),
            None => bail!("no input: give --input PATH, --stdin or --family SPEC"),
        };
        Ok(Box::new(ingest_graph6(reader, self.strict).map(|item| {
            item.map(|sg| Subject::Graph {
                graph: sg.graph,
                provenance: format!("line {}", sg.line),
            })
        })))
    }
}

fn subject_graph(subject: Subject) -> (Graph, String) {
    match subject {
        Subject::Graph { graph, provenance } => (graph, provenance),
        Subject::Sun(spec) => (sun(&spec), format!("sun {spec}")),
    }
}

enum Transform {
    Line,
    Power(usize),
    Subdivide,
    Total,
    Sun(SunSpec),
}

fn parse_transform(which: &str) -> anyhow::Result<Transform> {
    Ok(match which {
        "line" => Transform::Line,
        "subdivide" => Transform::Subdivide,
        "total" => Transform::Total,
        _ => match which.split_once(':') {
            Some(("power", k)) => {
                let k: usize = k.parse().with_context(|| format!("bad power exponent {k:?}"))?;
                if k == 0 {
                    bail!("power exponent must be positive");
                }
                Transform::Power(k)
            }
            Some(("sun", spec)) => Transform::Sun(spec.parse()?),
            _ => bail!("unknown transform {which:?}"),
        },
    })
}

impl Transform {
    fn apply(&self, g: &Graph) -> anyhow::Result<Graph> {
        Ok(match self {
            Transform::Line => line_graph(g),
            Transform::Power(k) => power(g, *k)?,
            Transform::Subdivide => subdivision(g),
            Transform::Total => total_graph(g),
            Transform::Sun(spec) => sun(spec),
        })
    }
}

/// Outcome of a run, mapped to the process exit status.
enum Status {
    Ok,
    CheckFailed,
    InputError,
}

struct Runner<W: Write> {
    out: W,
    format: Format,
    strict: bool,
    input_errors: u64,
}

impl<W: Write> Runner<W> {
    fn emit(&mut self, table: String, value: Value) -> io::Result<()> {
        match self.format {
            Format::Table => writeln!(self.out, "{table}"),
            Format::Jsonl => writeln!(self.out, "{value}"),
        }
    }

    fn input_error(&mut self, e: &StreamError) {
        self.input_errors += 1;
        eprintln!("graphsig: {e}");
    }

    /// Runs `f` on each graph; malformed lines are reported and skipped.
    fn each_graph(
        &mut self,
        subjects: Box<dyn Iterator<Item = Item>>,
        mut f: impl FnMut(&mut Self, Graph, String) -> anyhow::Result<()>,
    ) -> anyhow::Result<Status> {
        for item in subjects {
            match item {
                Ok(subject) => {
                    let (g, provenance) = subject_graph(subject);
                    f(self, g, provenance)?;
                }
                Err(e) => self.input_error(&e),
            }
        }
        Ok(self.finish())
    }

    fn finish(&self) -> Status {
        if self.strict && self.input_errors > 0 {
            Status::InputError
        } else {
            Status::Ok
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let common = match &cli.command {
        Command::Inertia(c) | Command::Census(c) | Command::Reduce(c) => c,
        Command::Transform { common, .. } | Command::Verify { common, .. } => common,
    };
    let mut r = Runner {
        out: BufWriter::new(io::stdout().lock()),
        format: common.format,
        strict: common.strict,
        input_errors: 0,
    };
    let status = match &cli.command {
        Command::Inertia(c) => r.each_graph(c.subjects()?, |r, g, provenance| {
            let i = inertia(&g)?;
            let g6 = to_graph6(&g);
            r.emit(
                format!(
                    "{g6}\tn={} m={} p={} n-={} eta={} r={} s={}",
                    g.order(), g.size(), i.p, i.n, i.eta, i.rank(), i.signature()
                ),
                json!({
                    "graph6": g6, "provenance": provenance, "order": g.order(), "size": g.size(),
                    "p": i.p, "n": i.n, "eta": i.eta, "r": i.rank(), "s": i.signature(),
                }),
            )?;
            Ok(())
        })?,
        Command::Census(c) => {
            let budget = c.budget;
            r.each_graph(c.subjects()?, |r, g, provenance| {
                let cc = census(&g, budget)?;
                let g6 = to_graph6(&g);
                let hist: Vec<String> = cc.by_length.iter().map(|(l, k)| format!("{l}:{k}")).collect();
                let mut v = serde_json::to_value(&cc)?;
                v["graph6"] = json!(g6);
                v["provenance"] = json!(provenance);
                r.emit(
                    format!(
                        "{g6}\tc3={} c5={} c1={} [{}]{}",
                        cc.c3, cc.c5, cc.c1, hist.join(" "),
                        if cc.budget_exceeded { " budget-exceeded" } else { "" }
                    ),
                    v,
                )?;
                Ok(())
            })?
        }
        Command::Transform { which, common } => {
            let t = parse_transform(which)?;
            if let Transform::Sun(spec) = &t {
                if common.has_source() {
                    bail!("sun transforms take no input");
                }
                let g = sun(spec);
                let g6 = to_graph6(&g);
                r.emit(g6.clone(), json!({"graph6": g6, "sun": spec.to_string(), "labels": g.labels()}))?;
                Status::Ok
            } else {
                r.each_graph(common.subjects()?, |r, g, provenance| {
                    let h = t.apply(&g)?;
                    let g6 = to_graph6(&h);
                    r.emit(
                        g6.clone(),
                        json!({"graph6": g6, "source": to_graph6(&g), "provenance": provenance, "labels": h.labels()}),
                    )?;
                    Ok(())
                })?
            }
        }
        Command::Reduce(c) => r.each_graph(c.subjects()?, |r, g, provenance| {
            let red = reduce_fully(&g);
            let (from, to) = (to_graph6(&g), to_graph6(&red.graph));
            r.emit(
                format!("{from}\t{to}\tsteps={}", red.steps),
                json!({"graph6": from, "provenance": provenance, "reduced": to, "steps": red.steps}),
            )?;
            Ok(())
        })?,
        Command::Verify { check, common } => {
            let id: CheckId = check.parse()?;
            let options = CheckOptions {
                budget: common.budget,
                ..CheckOptions::default()
            };
            let mut io_error = None;
            let format = r.format;
            let outcome = {
                let out = &mut r.out;
                search_counterexamples(common.subjects()?, id, &options, common.jobs as usize, |event| {
                    let written = match event {
                        SearchEvent::Report(rep) => match format {
                            Format::Jsonl => writeln!(out, "{}", rep.to_json()),
                            Format::Table if rep.verdict == graphsig::harness::Verdict::Fail => writeln!(
                                out,
                                "FAIL {} {} {} {}",
                                rep.graph.graph6,
                                rep.graph.provenance.as_deref().unwrap_or("-"),
                                rep.instance,
                                rep.witness
                            ),
                            Format::Table => Ok(()),
                        },
                        SearchEvent::InputError(e) => {
                            eprintln!("graphsig: {e}");
                            Ok(())
                        }
                    };
                    if let Err(e) = written {
                        io_error.get_or_insert(e);
                    }
                })?
            };
            if let Some(e) = io_error {
                return Err(e.into());
            }
            r.input_errors = outcome.summary.input_errors;
            let s = outcome.summary;
            r.emit(
                format!(
                    "{id}: subjects={} reports={} pass={} fail={} vacuous={} skipped={} input-errors={}",
                    s.subjects, s.reports, s.pass, s.fail, s.vacuous, s.skipped, s.input_errors
                ),
                s.to_json(id),
            )?;
            match r.finish() {
                Status::Ok if s.fail > 0 => Status::CheckFailed,
                status => status,
            }
        }
    };
    r.out.flush()?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Ok(Status::InputError) => ExitCode::from(2),
        Err(e) => {
            if let Some(io) = e.downcast_ref::<io::Error>() {
                if io.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            eprintln!("graphsig: {e:#}");
            ExitCode::from(2)
        }
    }
}
