//! `chgraph`: construct graph families, check connected-homogeneity and
//! related properties, and run the acceptance suite.
//!
//! Exit codes: 0 when the checked property holds, 1 when it fails, 2 on
//! input or capability errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chgraph_core::cayley::{
    aut_group, aut_h_s, is_cayley, lemma_2_2_check, lemma_5_1_analyze, CayleySpec,
};
use chgraph_core::classification::{table2_rows, table2_verify_row};
use chgraph_core::constructions::{build_str, cayley_with_aut, FamilyInstance};
use chgraph_core::graph::io::{from_graph6, from_json, to_dot, to_graph6};
use chgraph_core::group::set_enumeration_bound;
use chgraph_core::homogeneity::{
    check, is_s_arc_transitive, local_action, proposition_1_2_check, theorem_1_3_classify,
    verify_witness, Mode,
};
use chgraph_core::perm::parse_generator_file;
use chgraph_core::quotients::{maximal_intransitive_normal, theorem_1_4_report};
use chgraph_core::{suite, Error, Graph, PermGroup, Permutation};

#[derive(Parser)]
#[command(name = "chgraph", version, about = "Connected-homogeneous graph verification")]
struct Cli {
    /// Largest group order that may be enumerated element by element.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    enum_bound: Option<u64>,
    /// Worker threads (accepted; checks run on one thread).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family and print it.
    Construct {
        /// Family spec, e.g. `hamming:2,4`, `johnson-c:7,2`, `linegraph:petersen`.
        family: String,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
        /// Also write `<name>.g6`, `<name>.gens` and `<name>.json` here.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Check a property of a graph under a group.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[command(flatten)]
        input: Input,
        #[arg(short, long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=5))]
        k: u8,
        /// Arc length for `arc`.
        #[arg(short, long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
        s: u8,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
    },
    /// Normal quotient report for a normal subgroup given by generators.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Generator of N in cycle or image-list notation; repeat for more.
        #[arg(long, required_unless_present = "maximal")]
        normal: Vec<String>,
        /// Report every maximal intransitive normal subgroup instead.
        #[arg(long, conflicts_with = "normal")]
        maximal: bool,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
    },
    /// Cayley graph analyses.
    Cayley {
        #[arg(value_enum)]
        kind: CayleyKind,
        /// Family built as a Cayley graph (`ex82`, `ex83`, `folded`, `cube`, ...).
        #[arg(long, conflicts_with_all = ["spec", "graph"])]
        family: Option<String>,
        /// Cayley spec file.
        #[arg(long, conflicts_with = "graph")]
        spec: Option<PathBuf>,
        /// Graph file (graph6 or JSON edge list), for `is-cayley`.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Group for `lemma51`; defaults to the family group, or to
        /// `H_R : Aut(H,S)` for spec files.
        #[arg(long)]
        group_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
    },
    /// Verify the shipped centraliser-table rows.
    Table2 {
        /// Only this row.
        #[arg(long)]
        row: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
    },
    /// Run the acceptance criteria.
    Suite {
        /// Criteria to run (default: all).
        #[arg(long = "criterion", short = 'c')]
        criteria: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        out: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Family spec.
    #[arg(long, conflicts_with = "graph")]
    family: Option<String>,
    /// Graph file: graph6 or JSON edge list.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Where the group comes from.
    #[arg(long, value_enum, default_value = "builtin")]
    group: GroupSource,
    /// Generator file for `--group file`.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupSource {
    /// The group shipped with the family.
    Builtin,
    /// The full automorphism group of the graph.
    ComputeAut,
    /// Generators from `--group-file`.
    File,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    #[value(alias = "g6")]
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Ch,
    Csh,
    Hom,
    Sethom,
    Prop12,
    Classify,
    Arc,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum CayleyKind {
    Lemma22,
    Lemma51,
    IsCayley,
    Aut,
}

type CliResult<T> = Result<T, Error>;

/// Report plus whether the property held.
struct Outcome {
    report: Value,
    text: String,
    holds: bool,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        from_json(&text)
    } else {
        let line = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        from_graph6(line)
    }
}

fn read_group(path: &Path, n: usize) -> CliResult<PermGroup> {
    let (degree, gens) = parse_generator_file(&read(path)?)?;
    if degree != n {
        return Err(Error::input(format!("group file has degree {degree}, graph has {n} vertices")));
    }
    PermGroup::new(degree, gens)
}

fn resolve(input: &Input) -> CliResult<(String, Graph, PermGroup)> {
    let (name, graph, builtin) = match (&input.family, &input.graph) {
        (Some(f), _) => {
            let inst = build_str(f)?;
            (inst.name, inst.graph, Some(inst.group))
        }
        (None, Some(p)) => (p.display().to_string(), read_graph(p)?, None),
        (None, None) => return Err(Error::input("give --family or --graph")),
    };
    let group = match input.group {
        GroupSource::Builtin => builtin.ok_or_else(|| {
            Error::input("--graph input has no builtin group; use --group compute-aut or --group file")
        })?,
        GroupSource::ComputeAut => graph.automorphism_group()?,
        GroupSource::File => {
            let path = input
                .group_file
                .as_ref()
                .ok_or_else(|| Error::input("--group file needs --group-file"))?;
            read_group(path, graph.n())?
        }
    };
    Ok((name, graph, group))
}

fn gens_json(g: &PermGroup) -> Value {
    json!({
        "degree": g.degree(),
        "order": g.order() as u64,
        "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn instance_json(inst: &FamilyInstance) -> Value {
    json!({
        "name": inst.name,
        "n": inst.graph.n(),
        "edges": inst.graph.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        "graph6": to_graph6(&inst.graph),
        "group": gens_json(&inst.group),
        "labels": inst.labels,
        "cayley": inst.cayley.as_ref().map(|c| c.summary()),
    })
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn construct(family: &str, out: Format, dir: Option<&Path>) -> CliResult<String> {
    let inst = build_str(family)?;
    if let Some(dir) = dir {
        let stem = file_stem(&inst.name);
        let write = |ext: &str, body: String| {
            fs::write(dir.join(format!("{stem}.{ext}")), body)
                .map_err(|e| Error::input(format!("{}: {e}", dir.display())))
        };
        write("g6", format!("{}\n", to_graph6(&inst.graph)))?;
        write(
            "gens",
            chgraph_core::perm::format_generator_file(inst.group.degree(), inst.group.generators()),
        )?;
        write("json", format!("{}\n", pretty(&instance_json(&inst))))?;
    }
    Ok(match out {
        Format::Graph6 => format!("{}\n", to_graph6(&inst.graph)),
        Format::Dot => to_dot(&inst.graph, &file_stem(&inst.name)),
        Format::Json => format!("{}\n", pretty(&instance_json(&inst))),
        Format::Text => format!(
            "{}: {} vertices, {} edges, group order {}\n",
            inst.name,
            inst.graph.n(),
            inst.graph.edge_count(),
            inst.group.order()
        ),
    })
}

/// Write to stdout, ignoring a closed pipe.
fn say(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn run_check(kind: CheckKind, input: &Input, k: usize, s: usize) -> CliResult<Outcome> {
    let (name, g, group) = resolve(input)?;
    let mode = match kind {
        CheckKind::Ch => Some(Mode::Ch),
        CheckKind::Csh => Some(Mode::Csh),
        CheckKind::Hom => Some(Mode::Homogeneous),
        CheckKind::Sethom => Some(Mode::SetHomogeneous),
        _ => None,
    };
    if let Some(mode) = mode {
        let r = check(&g, &group, k, mode)?;
        let mut report = to_value(&r);
        let verified = match &r.witness {
            Some(w) => Some(verify_witness(&g, &group, mode, w)?),
            None => None,
        };
        report["graph"] = json!(name);
        report["witness_verified"] = json!(verified);
        let mut text = format!("{name}: ({mode}, k={k}) holds = {}\n", r.verdict);
        if let Some(w) = &r.witness {
            text.push_str(&format!(
                "witness: pattern {} on {:?} vs {:?} (verified: {})\n",
                w.pattern.graph6,
                w.first,
                w.second,
                verified.unwrap_or(false)
            ));
        }
        return Ok(Outcome {
            report,
            text,
            holds: r.verdict,
        });
    }
    let (report, holds, text) = match kind {
        CheckKind::Prop12 => {
            let r = proposition_1_2_check(&g, &group)?;
            let t = format!("{name}: rank-3 criterion = {} (branch {:?})\n", r.verdict, r.branch);
            (to_value(&r), r.verdict, t)
        }
        CheckKind::Classify => {
            let k = k.max(3);
            let r = theorem_1_3_classify(&g, &group, k)?;
            let holds = r.ch && r.consistent;
            let t = format!("{name}: case {} (ch {}, consistent {})\n", r.case_label, r.ch, r.consistent);
            (to_value(&r), holds, t)
        }
        CheckKind::Arc => {
            let r = is_s_arc_transitive(&g, &group, s)?;
            (json!({ "s": s, "arc_transitive": r }), r, format!("{name}: {s}-arc transitive = {r}\n"))
        }
        CheckKind::Local => {
            let r = local_action(&g, &group, 0)?;
            let t = format!(
                "{name}: local action of order {}, rank {:?}, primitive {:?}, [Γ(v)] {:?}\n",
                r.local_order, r.rank, r.primitive, r.shape
            );
            (to_value(&r), true, t)
        }
        _ => unreachable!("modes handled above"),
    };
    let mut report = report;
    report["graph"] = json!(name);
    Ok(Outcome { report, text, holds })
}

fn run_quotient(input: &Input, normal: &[String], maximal: bool) -> CliResult<Outcome> {
    let (name, g, group) = resolve(input)?;
    if maximal {
        let cands = maximal_intransitive_normal(&group)?;
        let mut items = Vec::new();
        let mut text = String::new();
        let mut holds = true;
        for m in &cands {
            let r = theorem_1_4_report(&g, &group, &m.subgroup)?;
            holds &= r.verdict;
            text.push_str(&format!(
                "N of order {} ({} orbits): quotient quasiprimitive {}, verdict {}\n",
                m.subgroup.order(),
                m.orbits,
                m.quotient_quasiprimitive,
                r.verdict
            ));
            items.push(json!({
                "normal": gens_json(&m.subgroup),
                "quotient_quasiprimitive": m.quotient_quasiprimitive,
                "report": to_value(&r),
            }));
        }
        return Ok(Outcome {
            report: json!({ "graph": name, "candidates": items }),
            text,
            holds,
        });
    }
    let gens = normal
        .iter()
        .map(|t| Permutation::parse(t, Some(g.n())))
        .collect::<CliResult<Vec<_>>>()?;
    let n = PermGroup::new(g.n(), gens)?;
    let r = theorem_1_4_report(&g, &group, &n)?;
    let text = format!(
        "{name}: quotient on {} orbits ({}), cover {}, verdict {}\n{}",
        r.quotient_vertices,
        r.quotient_graph6,
        r.cover,
        r.verdict,
        r.diagnostics.iter().map(|d| format!("  {d}\n")).collect::<String>()
    );
    let mut report = to_value(&r);
    report["graph"] = json!(name);
    Ok(Outcome {
        report,
        text,
        holds: r.verdict,
    })
}

fn run_cayley(
    kind: CayleyKind,
    family: Option<&str>,
    spec_path: Option<&Path>,
    graph_path: Option<&Path>,
    group_file: Option<&Path>,
) -> CliResult<Outcome> {
    if let CayleyKind::IsCayley = kind {
        let g = match (family, graph_path) {
            (Some(f), _) => build_str(f)?.graph,
            (None, Some(p)) => read_graph(p)?,
            _ => match spec_path {
                Some(p) => CayleySpec::parse(&read(p)?)?.graph(),
                None => return Err(Error::input("give --family, --graph or --spec")),
            },
        };
        let w = is_cayley(&g)?;
        let regular: Vec<Value> = w
            .regular
            .iter()
            .map(|r| {
                let mut v = gens_json(r);
                v["abelian"] = json!(r.is_abelian());
                v
            })
            .collect();
        let text = format!(
            "Aut of order {}: {} regular subgroups up to conjugacy; Cayley = {}\n",
            w.aut_order,
            w.regular.len(),
            w.is_cayley()
        );
        return Ok(Outcome {
            report: json!({
                "aut_order": w.aut_order as u64,
                "cayley": w.is_cayley(),
                "regular_subgroups": regular,
            }),
            text,
            holds: w.is_cayley(),
        });
    }
    let (spec, builtin) = match (family, spec_path) {
        (Some(f), _) => {
            let inst = build_str(f)?;
            let spec = inst
                .cayley
                .clone()
                .ok_or_else(|| Error::input(format!("{f} is not built as a Cayley graph")))?;
            (spec, inst.group)
        }
        (None, Some(p)) => {
            let spec = CayleySpec::parse(&read(p)?)?;
            let inst = cayley_with_aut("cayley", spec.clone())?;
            (spec, inst.group)
        }
        (None, None) => return Err(Error::input("give --family or --spec")),
    };
    match kind {
        CayleyKind::Lemma22 => {
            let r = lemma_2_2_check(&spec)?;
            let text = format!(
                "|N_A(H_R)| = {} = {} * {}: {} (|A| = {}, normal Cayley: {})\n",
                r.normalizer_order, r.h_order, r.aut_hs_order, r.holds, r.aut_graph_order, r.normal_cayley
            );
            Ok(Outcome {
                report: to_value(&r),
                text,
                holds: r.holds,
            })
        }
        CayleyKind::Lemma51 => {
            let group = match group_file {
                Some(p) => read_group(p, spec.order())?,
                None => builtin,
            };
            let r = lemma_5_1_analyze(&spec, &group)?;
            let text = format!(
                "case {} (m = {:?}, consistent {})\n{}",
                r.case_label,
                r.m,
                r.consistent(),
                r.diagnostics.iter().map(|d| format!("  {d}\n")).collect::<String>()
            );
            let mut report = to_value(&r);
            report["consistent"] = json!(r.consistent());
            Ok(Outcome {
                report,
                text,
                holds: r.consistent(),
            })
        }
        CayleyKind::Aut => {
            let aut = aut_group(&spec.group)?;
            let stab = aut_h_s(&spec)?;
            let text = format!(
                "{}: |Aut(H)| = {}, |Aut(H,S)| = {}\n",
                spec.group.describe(),
                aut.order(),
                stab.order()
            );
            Ok(Outcome {
                report: json!({
                    "cayley": spec.summary(),
                    "aut_h": gens_json(&aut),
                    "aut_h_s": gens_json(&stab),
                }),
                text,
                holds: true,
            })
        }
        CayleyKind::IsCayley => unreachable!("handled above"),
    }
}

fn run_table2(row: Option<usize>) -> CliResult<Outcome> {
    let rows = table2_rows()?;
    let selected: Vec<_> = rows.iter().filter(|r| row.is_none_or(|n| r.no == n)).collect();
    if selected.is_empty() {
        return Err(Error::input(format!("no row {}", row.unwrap_or(0))));
    }
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut holds = true;
    for r in selected {
        let rep = table2_verify_row(r)?;
        holds &= rep.holds;
        text.push_str(&format!(
            "row {}: ({}, {}, {}) centraliser order {}, holds {}\n",
            rep.no, rep.names[0], rep.names[1], rep.names[2], rep.centralizer_order, rep.holds
        ));
        reports.push(to_value(&rep));
    }
    Ok(Outcome {
        report: Value::Array(reports),
        text,
        holds,
    })
}

fn run_suite(criteria: &[usize]) -> CliResult<Outcome> {
    if let Some(&bad) = criteria.iter().find(|&&c| !(1..=suite::CRITERIA).contains(&c)) {
        return Err(Error::input(format!("criterion {bad} outside 1..={}", suite::CRITERIA)));
    }
    let ids: Vec<usize> = if criteria.is_empty() {
        (1..=suite::CRITERIA).collect()
    } else {
        criteria.to_vec()
    };
    let outcomes: Vec<_> = ids.into_iter().map(suite::run).collect();
    let holds = outcomes.iter().all(|o| o.passed);
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&o.summary_line());
        text.push('\n');
        for line in o.details.iter().filter(|l| !l.starts_with("ok")) {
            text.push_str(&format!("    {line}\n"));
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    text.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
    Ok(Outcome {
        report: to_value(&outcomes),
        text,
        holds,
    })
}

fn emit(outcome: CliResult<Outcome>, out: Format) -> ExitCode {
    match outcome {
        Ok(o) => {
            match out {
                Format::Text => say(&o.text),
                _ => say(&format!("{}\n", pretty(&o.report))),
            }
            if o.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(b) = cli.enum_bound {
        set_enumeration_bound(b);
    }
    let _ = cli.threads;
    match cli.command {
        Command::Construct { family, out, dir } => match construct(&family, out, dir.as_deref()) {
            Ok(s) => {
                say(&s);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Check { kind, input, k, s, out } => {
            emit(run_check(kind, &input, k as usize, s as usize), out)
        }
        Command::Quotient {
            input,
            normal,
            maximal,
            out,
        } => emit(run_quotient(&input, &normal, maximal), out),
        Command::Cayley {
            kind,
            family,
            spec,
            graph,
            group_file,
            out,
        } => emit(
            run_cayley(kind, family.as_deref(), spec.as_deref(), graph.as_deref(), group_file.as_deref()),
            out,
        ),
        Command::Table2 { row, out } => emit(run_table2(row), out),
        Command::Suite { criteria, out } => emit(run_suite(&criteria), out),
    }
}
