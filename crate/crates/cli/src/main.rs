use clap::{Args, Parser, Subcommand, ValueEnum};
use fyforge_core::building::building_set_from_flats;
use fyforge_core::graph::{built_lattice_of_graph, connected_chordal_graphs};
use fyforge_core::io::{parse_graph, parse_matroid};
use fyforge_core::normal::NormalCtx;
use fyforge_core::pipeline::{
    atom_cap_from_env, certify, graph_id, property_checks, replay, BuildingChoice, CertifyOptions, Family, InstanceSpec,
    Source, REPLAYS,
};
use fyforge_core::{AtomSet, BuiltLattice, Error, GeometricLattice};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fyforge", version, about = "Feichtner-Yuzvinsky rings of built lattices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check circuit, lattice and building-set axioms.
    Validate(InstanceArgs),
    /// Full pipeline with cross-checks.
    Certify(CertifyArgs),
    /// Replay the known negative examples.
    Counterexamples(ReplayArgs),
    /// Hilbert function of the ring.
    Hilbert(InstanceArgs),
    /// Normal-monomial bijection on a supersolvable instance.
    Bijection(InstanceArgs),
    /// Certify every member of a family up to a size bound.
    FamilySweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Lm,
    Cycle,
    Complete,
    Path,
    Star,
    Boolean,
    Partition,
    Chordal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildingName {
    Min,
    Max,
    Graphical,
    File,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long, value_enum, conflicts_with_all = ["matroid", "graph"])]
    family: Option<FamilyName>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Matroid JSON: `{"n_atoms": N, "circuits": [[..], ..]}`.
    #[arg(long, conflicts_with = "graph")]
    matroid: Option<PathBuf>,
    /// Graph JSON: `{"vertices": N, "edges": [[a, b], ..]}`.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Defaults to graphical for graphs and min otherwise.
    #[arg(long, value_enum)]
    building: Option<BuildingName>,
    /// JSON list of flats, each a list of atoms.
    #[arg(long, required_if_eq("building", "file"))]
    building_file: Option<PathBuf>,
    #[arg(long)]
    max_weight: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Also compute the Hilbert function of the second presentation.
    #[arg(long)]
    wonderful: bool,
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ReplayArgs {
    /// Comma-separated replay names; an empty value runs nothing.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
    /// Cycle length used by the triple replay.
    #[arg(long, default_value_t = 6)]
    triple_cycle: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Largest clique size for `lm`.
    #[arg(long)]
    m: Option<usize>,
    /// Largest size parameter; edge bound for `chordal`.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    building: Option<BuildingName>,
    #[arg(long)]
    max_weight: Option<usize>,
    /// Also run seeded property checks on each instance.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Fail {
    Input(String),
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Input(e.to_string())
    }
}

type Run = Result<bool, Fail>;

fn read(p: &PathBuf) -> Result<String, Fail> {
    std::fs::read_to_string(p).map_err(|e| Fail::Input(format!("{}: {e}", p.display())))
}

fn family(name: FamilyName, m: Option<usize>, n: Option<usize>) -> Result<Family, Fail> {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Fail::Input(format!("--{flag} is required")));
    Ok(match name {
        FamilyName::Lm => Family::LosevManin { m: need(m, "m")?, n: need(n, "n")? },
        FamilyName::Cycle => Family::Cycle(need(n, "n")?),
        FamilyName::Complete => Family::Complete(need(n, "n")?),
        FamilyName::Path => Family::Path(need(n, "n")?),
        FamilyName::Star => Family::Star(need(n, "n")?),
        FamilyName::Boolean => Family::Boolean(need(n, "n")?),
        FamilyName::Partition => Family::Partition(need(n, "n")?),
        FamilyName::Chordal => return Err(Fail::Input("chordal is only available to family-sweep".into())),
    })
}

fn choice(name: Option<BuildingName>, source: &Source, file: Option<&PathBuf>) -> Result<BuildingChoice, Fail> {
    Ok(match name {
        Some(BuildingName::Min) => BuildingChoice::Min,
        Some(BuildingName::Max) => BuildingChoice::Max,
        Some(BuildingName::Graphical) => BuildingChoice::Graphical,
        Some(BuildingName::File) => {
            let text = read(file.ok_or_else(|| Fail::Input("--building-file is required".into()))?)?;
            let raw: Vec<Vec<usize>> = serde_json::from_str(&text).map_err(|e| Fail::Input(format!("parse error: {e}")))?;
            let n = source.n_atoms();
            if let Some(a) = raw.iter().flatten().find(|&&a| a >= n) {
                return Err(Fail::Input(format!("atom {a} out of range 0..{n}")));
            }
            BuildingChoice::Flats(raw.into_iter().map(AtomSet::from_indices).collect())
        }
        None if matches!(source, Source::Graph(_)) => BuildingChoice::Graphical,
        None => BuildingChoice::Min,
    })
}

fn suffix(b: &BuildingChoice) -> &'static str {
    match b {
        BuildingChoice::Min => "-min",
        BuildingChoice::Max => "-max",
        BuildingChoice::Flats(_) => "-file",
        BuildingChoice::Graphical => "",
    }
}

fn spec(a: &InstanceArgs) -> Result<InstanceSpec, Fail> {
    let (id, source) = if let Some(p) = &a.matroid {
        (p.display().to_string(), Source::Matroid(parse_matroid(&read(p)?)?))
    } else if let Some(p) = &a.graph {
        (p.display().to_string(), Source::Graph(parse_graph(&read(p)?)?))
    } else if let Some(f) = a.family {
        let f = family(f, a.m, a.n)?;
        (f.id(), f.source()?)
    } else {
        return Err(Fail::Input("one of --family, --matroid or --graph is required".into()));
    };
    let building = choice(a.building, &source, a.building_file.as_ref())?;
    Ok(InstanceSpec { id: format!("{id}{}", suffix(&building)), source, building })
}

fn resolve(a: &InstanceArgs) -> Result<(String, BuiltLattice), Fail> {
    let s = spec(a)?;
    let bl = s.resolve(atom_cap_from_env()?)?;
    Ok((s.id, bl))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn emit(v: &Value, format: Format) {
    match (format, v) {
        (Format::Json, _) => println!("{}", serde_json::to_string_pretty(v).expect("json")),
        (Format::Table, Value::Array(rows)) => {
            let Some(Value::Object(first)) = rows.first() else { return };
            let keys: Vec<&String> = first.keys().filter(|k| !matches!(first[*k], Value::Array(_) | Value::Object(_)) || *k == "hilbert").collect();
            let table: Vec<Vec<String>> = std::iter::once(keys.iter().map(|k| k.to_string()).collect())
                .chain(rows.iter().map(|r| keys.iter().map(|k| cell(&r[k.as_str()])).collect()))
                .collect();
            let widths: Vec<usize> = (0..keys.len()).map(|i| table.iter().map(|r| r[i].len()).max().unwrap_or(0)).collect();
            for r in table {
                let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                println!("{}", line.join("  ").trim_end());
            }
        }
        (Format::Table, Value::Object(map)) => {
            let w = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, x) in map {
                println!("{k:<w$}  {}", cell(x));
            }
        }
        (Format::Table, other) => println!("{}", cell(other)),
    }
}

fn validate(a: &InstanceArgs) -> Run {
    let mut checks: Vec<Value> = Vec::new();
    let mut push = |name: &str, r: Result<(), Error>| -> bool {
        let ok = r.is_ok();
        checks.push(json!({ "check": name, "passed": ok, "message": r.err().map(|e| e.to_string()) }));
        ok
    };
    let source = if let Some(p) = &a.matroid {
        match parse_matroid(&read(p)?) {
            Err(Error::InvalidMatroid(m)) => {
                push("circuits", Err(Error::InvalidMatroid(m)));
                None
            }
            r => {
                let m = r?;
                push("circuits", Ok(()));
                Some(Source::Matroid(m))
            }
        }
    } else if let Some(p) = &a.graph {
        match parse_graph(&read(p)?) {
            Err(Error::InvalidGraph(m)) => {
                push("graph", Err(Error::InvalidGraph(m)));
                None
            }
            r => {
                let g = r?;
                push("graph", Ok(()));
                Some(Source::Graph(g))
            }
        }
    } else {
        Some(spec(a)?.source)
    };
    let ok = match source {
        None => false,
        Some(source) => {
            let cap = atom_cap_from_env()?;
            if source.n_atoms() > cap {
                return Err(Error::CapExceeded { what: "atoms", got: source.n_atoms(), cap }.into());
            }
            let lattice = match &source {
                Source::Matroid(m) => GeometricLattice::from_matroid(m),
                Source::Graph(g) => g.matroid().and_then(|m| GeometricLattice::from_matroid(&m)),
                Source::Lattice(l) => Ok(l.clone()),
            };
            let lok = push("lattice", lattice.as_ref().map(|_| ()).map_err(Clone::clone));
            match (lok, lattice) {
                (true, Ok(l)) => {
                    let building = choice(a.building, &source, a.building_file.as_ref())?;
                    let r = match (&building, &source) {
                        (BuildingChoice::Flats(fs), _) => building_set_from_flats(&l, fs).map(|_| ()),
                        (BuildingChoice::Graphical, Source::Graph(g)) => built_lattice_of_graph(g).map(|_| ()),
                        (BuildingChoice::Graphical, _) => {
                            return Err(Fail::Input("a graphical building set needs a graph".into()))
                        }
                        _ => Ok(()),
                    };
                    push("building set", r)
                }
                _ => false,
            }
        }
    };
    emit(&json!({ "valid": ok, "checks": checks }), a.format);
    if !ok {
        let first = checks.iter().find(|c| c["passed"] == false).map(|c| cell(&c["message"])).unwrap_or_default();
        return Err(Fail::Check(first));
    }
    Ok(true)
}

fn run_certify(a: &CertifyArgs) -> Run {
    let (id, bl) = resolve(&a.inst)?;
    let opts = CertifyOptions { max_weight: a.inst.max_weight, presentation_check: a.wonderful, timings: a.timings };
    let rep = certify(&id, &bl, &opts)?;
    emit(&serde_json::to_value(&rep).expect("json"), a.inst.format);
    match rep.inconsistencies.first() {
        None => Ok(true),
        Some(first) => Err(Fail::Check(first.clone())),
    }
}

fn run_hilbert(a: &InstanceArgs) -> Run {
    let (id, bl) = resolve(a)?;
    let mut h = fyforge_core::fy::hilbert_x(&bl);
    if let Some(w) = a.max_weight {
        h.truncate(w + 1);
    }
    emit(&json!({ "id": id, "hilbert": h, "dimension": h.iter().sum::<usize>() }), a.format);
    Ok(true)
}

fn run_bijection(a: &InstanceArgs) -> Run {
    let (id, bl) = resolve(a)?;
    let mut rep = NormalCtx::new(bl)?.bijection_report()?;
    if let Some(w) = a.max_weight {
        for v in [&mut rep.anm, &mut rep.onm, &mut rep.hilbert] {
            v.truncate(w + 1);
        }
    }
    let mut v = serde_json::to_value(&rep).expect("json");
    v["id"] = json!(id);
    v["coherent"] = json!(rep.coherent());
    emit(&v, a.format);
    if rep.coherent() {
        Ok(true)
    } else {
        Err(Fail::Check(rep.mismatches.first().cloned().unwrap_or_else(|| "bijection failed".into())))
    }
}

fn run_counterexamples(a: &ReplayArgs) -> Run {
    let names: Vec<String> = match &a.only {
        None => REPLAYS.iter().map(|s| s.to_string()).collect(),
        Some(v) => v.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
    };
    let mut rows = Vec::new();
    let mut failed = None;
    for name in &names {
        let r = replay(name, a.triple_cycle)?;
        if !r.reproduced() && failed.is_none() {
            failed = Some(format!("replay {}: expected {}, got {}", r.name, r.expected, r.got));
        }
        let mut v = serde_json::to_value(&r).expect("json");
        v["reproduced"] = json!(r.reproduced());
        rows.push(v);
    }
    emit(&Value::Array(rows), a.format);
    match failed {
        None => Ok(true),
        Some(msg) => Err(Fail::Check(msg)),
    }
}

fn sweep_specs(a: &SweepArgs) -> Result<Vec<InstanceSpec>, Fail> {
    let mut out = Vec::new();
    let mut fam = |f: Family| -> Result<(), Fail> {
        let source = f.source()?;
        let building = choice(a.building, &source, None)?;
        out.push(InstanceSpec { id: format!("{}{}", f.id(), suffix(&building)), source, building });
        Ok(())
    };
    match a.family {
        FamilyName::Chordal => {
            for g in connected_chordal_graphs(a.n) {
                let source = Source::Graph(g.clone());
                let building = choice(a.building, &source, None)?;
                out.push(InstanceSpec { id: format!("{}{}", graph_id(&g), suffix(&building)), source, building });
            }
        }
        FamilyName::Lm => {
            let m_max = a.m.ok_or_else(|| Fail::Input("--m is required".into()))?;
            for m in 1..=m_max {
                for n in 0..=a.n {
                    if m + n >= 2 {
                        fam(Family::LosevManin { m, n })?;
                    }
                }
            }
        }
        f => {
            let lo = match f {
                FamilyName::Cycle => 3,
                FamilyName::Complete | FamilyName::Path | FamilyName::Partition => 2,
                _ => 1,
            };
            for n in lo..=a.n {
                fam(family(f, None, Some(n))?)?;
            }
        }
    }
    if matches!(a.building, Some(BuildingName::File)) {
        return Err(Fail::Input("family-sweep does not take a building file".into()));
    }
    Ok(out)
}

fn run_sweep(a: &SweepArgs) -> Run {
    let specs = sweep_specs(a)?;
    let cap = atom_cap_from_env()?;
    let opts = CertifyOptions { max_weight: a.max_weight, presentation_check: false, timings: a.timings };
    let results: Vec<Result<Value, Error>> = specs
        .par_iter()
        .map(|s| {
            let bl = s.resolve(cap)?;
            let rep = certify(&s.id, &bl, &opts)?;
            let mut v = serde_json::to_value(&rep).expect("json");
            v["coherent"] = json!(rep.coherent());
            if let Some(seed) = a.seed {
                let checks = property_checks(&bl, seed)?;
                v["properties_passed"] = json!(checks.iter().all(|c| c.passed));
                v["properties"] = serde_json::to_value(&checks).expect("json");
            }
            Ok(v)
        })
        .collect();
    let mut rows = Vec::new();
    for r in results {
        rows.push(r?);
    }
    rows.sort_by(|x, y| cell(&x["id"]).cmp(&cell(&y["id"])));
    emit(&Value::Array(rows.clone()), a.format);
    let bad = rows.iter().find(|r| r["coherent"] == false || r.get("properties_passed") == Some(&json!(false)));
    match bad {
        None => Ok(true),
        Some(r) => Err(Fail::Check(format!("{} is incoherent", cell(&r["id"])))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Validate(a) => validate(a),
        Cmd::Certify(a) => run_certify(a),
        Cmd::Counterexamples(a) => run_counterexamples(a),
        Cmd::Hilbert(a) => run_hilbert(a),
        Cmd::Bijection(a) => run_bijection(a),
        Cmd::FamilySweep(a) => run_sweep(a),
    };
    match out {
        Ok(_) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
