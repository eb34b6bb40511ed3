use std::fs;
use std::path::Path;

use cooprepair::code::{dmin_bound, locality_oracle, min_distance, minimal_repair_set, subcode_witness, LocalityOptions};
use cooprepair::constructions::{
    concatenated_code, hadamard_code, mds_code, partition_code, partition_weakened, product_code, ConcatenationParams,
};
use cooprepair::graph::{
    bipartite_girth, edge_code, expansion_check, girth, lambda2, named, unbalanced_expander_code, zemor_code, GraphFile,
};
use cooprepair::sim::{adversarial_sweep, random_sweep, repairer, sample_codeword, StrategyKind, StrategyParams, DEFAULT_CODEWORD_SEED};
use cooprepair::{ErasedWord, Field, LinearCode, Parallelism};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::emit;
use crate::{Cli, Command, ConstructArgs, Failure, GraphArgs, GraphSource, Kind, RepairArgs, SimulateArgs, VerifyArgs, WitnessArgs};

type Outcome = std::result::Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let par = if cli.sequential { Parallelism::Sequential } else { Parallelism::default() };
    let out = |v: &Value| emit(v, cli.format);
    match &cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Verify(a) => verify(a, par, out),
        Command::Repair(a) => repair(a, out),
        Command::Simulate(a) => simulate(a, par, out),
        Command::Witness(a) => witness(a, out),
        Command::Graph(a) => graph(a, par, out),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: Kind) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for {kind:?} codes").to_lowercase()))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<LinearCode, Failure> {
    LinearCode::from_json(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(src: &GraphSource) -> Result<GraphFile, Failure> {
    match (&src.named, &src.file) {
        (Some(name), None) => Ok(named(name)?),
        (None, Some(path)) => GraphFile::parse(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        _ => Err(Failure::Usage("give exactly one of --named or --file".into())),
    }
}

fn field(q: Option<u64>, default: u64) -> Result<Field, Failure> {
    Ok(Field::from_order(q.unwrap_or(default))?)
}

fn build(a: &ConstructArgs) -> Result<LinearCode, Failure> {
    let kind = a.kind;
    let code = match kind {
        Kind::Hadamard => hadamard_code(need(a.k, "k", kind)?)?,
        Kind::Mds => mds_code(&field(a.q, 2)?, need(a.n, "n", kind)?, need(a.k, "k", kind)?)?,
        Kind::Partition => partition_code(&field(a.q, 2)?, need(a.k, "k", kind)?, need(a.r, "r", kind)?, need(a.ell, "l", kind)?, None)?,
        Kind::Weakened => partition_weakened(&field(a.q, 2)?, need(a.groups, "groups", kind)?, need(a.s, "s", kind)?, need(a.t, "t", kind)?)?,
        Kind::Product => product_code(&field(a.q, 2)?, need(a.r, "r", kind)?, need(a.ell, "l", kind)?)?,
        Kind::Concatenated => concatenated_code(
            a.q.unwrap_or(2),
            need(a.r, "r", kind)?,
            need(a.ell, "l", kind)?,
            ConcatenationParams::new(a.x.unwrap_or(1)),
        )?,
        Kind::Edge | Kind::Expander => {
            let GraphFile::Bipartite(g) = load_graph(&a.graph)? else {
                return Err(Failure::Usage(format!("{kind:?} codes need a bipartite graph").to_lowercase()));
            };
            let f = field(a.q, 2)?;
            if kind == Kind::Edge {
                edge_code(&g, &f)?.code
            } else {
                unbalanced_expander_code(&g, &f, need(a.t, "t", kind)?)?.code
            }
        }
        Kind::Zemor => {
            let g = match load_graph(&a.graph)? {
                GraphFile::General(g) => g,
                GraphFile::Bipartite(b) => b.as_graph(),
            };
            zemor_code(&g, &field(a.q, 2)?, need(a.local_dmin, "local-dmin", kind)?)?.code
        }
    };
    Ok(code)
}

fn construct(a: &ConstructArgs, out: impl Fn(&Value)) -> Outcome {
    let mut code = build(a)?;
    if let Some(p) = &a.graph.file {
        code.hints.graph = Some(p.display().to_string());
    }
    let text = code.to_json();
    let rate = code.rate();
    let mut summary = code.summary();
    summary["rate"] = json!(format!("{}/{}", rate.numer(), rate.denom()));
    match &a.output {
        Some(p) => {
            write_text(p, &text)?;
            summary["output"] = json!(p.display().to_string());
            out(&summary);
        }
        None => {
            println!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn verify(a: &VerifyArgs, par: Parallelism, out: impl Fn(&Value)) -> Outcome {
    let code = load_code(&a.code)?;
    let none_selected = !(a.locality || a.distance || a.bounds || a.consistency);
    let mut report = json!({ "code_meta": code.summary() });
    let mut failures = Vec::new();

    if a.consistency || none_selected {
        let ok = code.check_consistency();
        report["consistency"] = json!(ok);
        if !ok {
            failures.push("generator and parity-check matrices disagree".to_string());
        }
    }
    if a.locality {
        let (r, ell) = (need_flag(a.r, "r", "--locality")?, need_flag(a.ell, "l", "--locality")?);
        let mut opts = LocalityOptions { r_max: Some(r), parallelism: par, ..LocalityOptions::default() };
        if let Some(cap) = a.cap {
            opts.cap = cap;
        }
        let cert = locality_oracle(&code, ell, opts)?;
        let verdict = cert.certifies(r);
        report["locality"] = to_value(&cert);
        report["locality_holds"] = json!(verdict);
        match verdict {
            Some(true) => {}
            Some(false) => failures.push(format!("({r}, {ell})-cooperative locality does not hold")),
            None => failures.push(format!("({r}, {ell})-cooperative locality undecided within the search cap")),
        }
    }
    let mut dmin = None;
    if a.distance || a.bounds {
        let d = min_distance(&code, par)?;
        report["dmin"] = json!(d);
        dmin = Some(d);
    }
    if a.bounds {
        let (r, ell) = (need_flag(a.r, "r", "--bounds")?, need_flag(a.ell, "l", "--bounds")?);
        let d = dmin.expect("computed above");
        let bounds = dmin_bound(code.n(), code.k(), r, ell)?.with_alphabet(d);
        let violations = bounds.violations(d);
        report["bounds"] = to_value(&bounds);
        report["violations"] = json!(violations);
        failures.extend(violations);
    }
    report["holds"] = json!(failures.is_empty());
    out(&report);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Property(failures.join("; ")))
    }
}

fn need_flag<T: Copy>(v: Option<T>, flag: &str, check: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required with {check}")))
}

fn strategy(code: &LinearCode, name: &str, r_max: Option<usize>, max_rounds: Option<usize>) -> Result<Box<dyn cooprepair::sim::Repairer>, Failure> {
    let kind: StrategyKind = name.parse()?;
    Ok(repairer(code, kind, &StrategyParams { r_max, max_rounds })?)
}

fn repair(a: &RepairArgs, out: impl Fn(&Value)) -> Outcome {
    let code = load_code(&a.code)?;
    let rep = strategy(&code, &a.strategy, a.r_max, a.max_rounds)?;
    let codeword = sample_codeword(&code, a.seed.unwrap_or(DEFAULT_CODEWORD_SEED))?;
    let report = rep.repair(&ErasedWord::new(&codeword, &a.erase)?)?;
    let correct = report.recovered.as_deref() == Some(codeword.as_slice());
    let mut v = to_value(&report);
    v["strategy"] = json!(rep.kind().name());
    v["code_meta"] = code.summary();
    out(&v);
    if report.success && correct {
        Ok(())
    } else if report.success {
        Err(Failure::Decode("recovered word differs from the codeword".into()))
    } else {
        Err(Failure::Decode(report.failure.unwrap_or_else(|| "repair failed".into())))
    }
}

fn simulate(a: &SimulateArgs, par: Parallelism, out: impl Fn(&Value)) -> Outcome {
    let code = load_code(&a.code)?;
    let rep = strategy(&code, &a.strategy, a.r_max, a.max_rounds)?;
    let report = match (a.exhaustive, a.trials) {
        (true, _) => adversarial_sweep(rep.as_ref(), a.ell, a.cap, a.seed.unwrap_or(DEFAULT_CODEWORD_SEED), par)?,
        (false, Some(trials)) => {
            let seed = a.seed.unwrap_or_else(|| {
                let s = rand::random::<u64>();
                eprintln!("seed: {s}");
                s
            });
            random_sweep(rep.as_ref(), a.ell, trials, seed, par)?
        }
        (false, None) => return Err(Failure::Usage("give --exhaustive or --trials N".into())),
    };
    let v = to_value(&report);
    if let Some(p) = &a.output {
        write_text(p, &serde_json::to_string_pretty(&v).expect("reports serialize"))?;
    }
    out(&v);
    Ok(())
}

fn witness(a: &WitnessArgs, out: impl Fn(&Value)) -> Outcome {
    let code = load_code(&a.code)?;
    let repair_fn = |s: &[usize]| {
        minimal_repair_set(&code, s, a.r).ok().and_then(|rs| rs.set().map(<[usize]>::to_vec)).unwrap_or_default()
    };
    let trace = match subcode_witness(&code, a.r, a.ell, repair_fn) {
        Ok(t) => t,
        Err(cooprepair::Error::InvalidRepairSet(s)) => {
            return Err(Failure::Property(format!("no repair set of size ≤ {} for {s:?}", a.r)));
        }
        Err(e) => return Err(e.into()),
    };
    out(&to_value(&trace));
    if trace.all_checks() {
        Ok(())
    } else {
        Err(Failure::Property("witness checks failed".into()))
    }
}

fn graph(a: &GraphArgs, par: Parallelism, out: impl Fn(&Value)) -> Outcome {
    let gf = load_graph(&a.source)?;
    if let Some(p) = &a.output {
        write_text(p, &gf.to_text())?;
    }
    let mut report = json!({});
    let plain = match &gf {
        GraphFile::General(g) => {
            report["type"] = json!("graph");
            report["vertices"] = json!(g.vertex_count());
            report["edges"] = json!(g.edges().len());
            report["regular_degree"] = json!(g.regular_degree());
            g.clone()
        }
        GraphFile::Bipartite(b) => {
            report["type"] = json!("bipartite");
            report["left"] = json!(b.left_count());
            report["right"] = json!(b.right_count());
            report["edges"] = json!(b.edges().len());
            report["left_degree"] = json!(b.left_regular_degree());
            report["right_degree"] = json!(b.right_regular_degree());
            b.as_graph()
        }
    };
    report["connected"] = json!(plain.is_connected());
    if a.girth {
        let g = match &gf {
            GraphFile::General(g) => girth(g),
            GraphFile::Bipartite(b) => bipartite_girth(b),
        };
        report["girth"] = json!(g);
    }
    if a.lambda {
        report["spectral"] = to_value(&lambda2(&plain)?);
    }
    if a.expansion {
        let GraphFile::Bipartite(b) = &gf else {
            return Err(Failure::Usage("--expansion needs a bipartite graph".into()));
        };
        let s_max = a.s_max.unwrap_or((b.left_count() / 2).max(1));
        let seed = a.seed.unwrap_or(DEFAULT_CODEWORD_SEED);
        let cert = expansion_check(b, s_max, a.budget, seed, par)?;
        if !cert.exhaustive {
            report["seed"] = json!(seed);
        }
        report["expansion"] = to_value(&cert);
    }
    out(&report);
    Ok(())
}
