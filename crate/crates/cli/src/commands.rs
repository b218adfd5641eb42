// Handlers return the finished report as their error value.
#![allow(clippy::result_large_err)]

use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hoopkit::cones::{self, ChainKind, ConeModel, OrderMode, SampleProperty};
use hoopkit::enumerate::{canonical_form, enumerate_hoops, EnumOptions};
use hoopkit::filters::{
    all_filters, filter_lattice, is_normal_filter, minimal_primes, perp, prime_tests, values_of, PrimeCondition,
};
use hoopkit::holland::{build_representation, export_representation, verify_representation, ExportFormat};
use hoopkit::normalvalued::{check_claim, equational_basis_check, is_normal_valued_direct, q2_search, ClaimReport};
use hoopkit::rdp::{rdp_witness, verify_rdp};
use hoopkit::{format, validate, ElemSet, FiniteHoop, Flag, Validation};

use crate::report::{Report, Status};
use crate::{Cli, Command, ConeOrder, EnumerateArgs, ExportKind, FiltersArgs, GenArgs, GenKind, HollandArgs, Method, RdpArgs};

/// Raw bytes (generated algebras, exports) or a report.
enum Output {
    Raw(Vec<u8>),
    Report(Report),
}

type Outcome = Result<Output, Report>;

/// Runs a command, returning what to print and the exit code.
pub fn run(cli: &Cli) -> (Vec<u8>, u8) {
    let start = Instant::now();
    let outcome = dispatch(cli);
    match outcome {
        Ok(Output::Raw(bytes)) => (bytes, 0),
        Ok(Output::Report(r)) | Err(r) => {
            let r = r.timed(start.elapsed());
            (r.render(cli.json), r.status.exit_code())
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { file } => check(file),
        Command::Classify { file } => classify(file),
        Command::Filters(args) => filters(args),
        Command::Rdp(args) => rdp(args),
        Command::NormalValued { file, method } => normal_valued(file, *method, cli.nmax),
        Command::CheckClaim { file, claim } => {
            let m = load("check-claim", file)?;
            let nmax = cli.nmax.unwrap_or(m.size());
            let r = check_claim(&m, *claim, nmax).map_err(|e| Report::from_error("check-claim", e))?;
            let base = match &r {
                ClaimReport::Pass => Report::pass("check-claim"),
                ClaimReport::Fail { witness, detail } => {
                    Report::fail("check-claim", witness).line(detail.clone())
                }
                ClaimReport::Inapplicable { hypothesis } => Report::inapplicable("check-claim", hypothesis),
            };
            Ok(Output::Report(
                base.line(format!("{claim}: {}", claim.statement()))
                    .details(serde_json::to_value(&r).unwrap())
                    .anchors(&[claim.as_str()]),
            ))
        }
        Command::Holland(args) => holland(args),
        Command::Gen(args) => generate(args, cli.seed),
        Command::Enumerate(args) => enumerate(args),
        Command::Q2Search { max_size } => q2(*max_size, cli.nmax),
    }
}

fn read_tables(cmd: &'static str, path: &Path) -> Result<hoopkit::HoopTables, Report> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| Report::error(cmd, format!("{}: {e}", path.display())))?;
    format::parse(&content).map_err(|e| Report::error(cmd, format!("{}: {e}", path.display())))
}

fn violation_report(cmd: &'static str, validation: &Validation) -> Report {
    let mut r = Report::new(cmd, Status::Fail);
    for v in validation.violations() {
        r = r
            .line(format!("violates {:?} at {:?}", v.axiom, v.witness))
            .witness(v);
    }
    r
}

/// Parses and validates; an invalid algebra is an input error for every verb but `check`.
fn load(cmd: &'static str, path: &Path) -> Result<FiniteHoop, Report> {
    let tables = read_tables(cmd, path)?;
    let v = validate(&tables).map_err(|e| Report::error(cmd, format!("{}: {e}", path.display())))?;
    match v {
        Validation::Valid(m) => Ok(m),
        invalid => {
            let mut r = violation_report(cmd, &invalid);
            r.status = Status::Error;
            Err(r.line(format!("{} is not a pseudo hoop", path.display())))
        }
    }
}

fn set_json(s: ElemSet) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn check(file: &Path) -> Outcome {
    let tables = read_tables("check", file)?;
    let v = validate(&tables).map_err(|e| Report::error("check", format!("{}: {e}", file.display())))?;
    let r = match &v {
        Validation::Valid(m) => Report::pass("check")
            .line(format!("valid pseudo hoop with {} elements", m.size()))
            .details(json!({ "size": m.size(), "unit": m.unit(), "zero": m.zero() })),
        invalid => violation_report("check", invalid)
            .details(json!({ "violations": invalid.violations().len() })),
    };
    Ok(Output::Report(r.anchors(&["AXIOMS"])))
}

fn classify(file: &Path) -> Outcome {
    let m = load("classify", file)?;
    let flags = *m.flags();
    let value = serde_json::to_value(flags).unwrap();
    let mut r = Report::pass("classify");
    for (k, v) in value.as_object().unwrap() {
        r = r.line(format!("{k}: {v}"));
    }
    Ok(Output::Report(r.details(value).anchors(&["PROP34"])))
}

fn filters(args: &FiltersArgs) -> Outcome {
    let cmd = "filters";
    let m = load(cmd, &args.file)?;
    let err = |e| Report::from_error(cmd, e);
    let mut r = Report::pass(cmd);
    let mut details = serde_json::Map::new();

    let fs = all_filters(&m);
    let mut listed = Vec::new();
    for f in &fs {
        let normal = is_normal_filter(&m, *f).map_err(err)?;
        r = r.line(format!("filter {:?}{}", f.elements(), if normal { " normal" } else { "" }));
        listed.push(json!({ "elements": set_json(f.elements()), "normal": normal }));
    }
    details.insert("filters".into(), Value::Array(listed));

    if args.lattice {
        let fl = filter_lattice(&m);
        r = r.line(format!("filter lattice distributive: {}", fl.is_distributive()));
        details.insert("lattice".into(), serde_json::to_value(&fl).unwrap());
        if let Some(t) = fl.distributivity_witness {
            r.status = Status::Fail;
            r = r.witness(json!({ "filters": [t.0, t.1, t.2] }));
        }
        if let Some((f, mask)) = fl.family_witness {
            r.status = Status::Fail;
            r = r.witness(json!({ "filter": f, "family": mask }));
        }
        r = r.anchors(&["PROP42"]);
    }
    if args.primes {
        let mut primes = Vec::new();
        for f in fs.iter().filter(|f| f.is_proper(&m)) {
            let p = prime_tests(&m, *f).map_err(err)?;
            let cells: Vec<String> = p
                .results
                .iter()
                .map(|(c, v)| format!("{}={}", condition_name(*c), v.map_or("n/a".to_string(), |b| b.to_string())))
                .collect();
            r = r.line(format!("prime {:?}: {} agree={}", f.elements(), cells.join(" "), p.agree));
            primes.push(json!({ "filter": set_json(f.elements()), "report": p }));
        }
        details.insert("primes".into(), Value::Array(primes));
        r = r.anchors(&["PROP43"]);
    }
    if let Some(g) = args.values {
        if g >= m.size() {
            return Err(Report::error(cmd, format!("element {g} out of range")));
        }
        let vals = values_of(&m, g).map_err(err)?;
        for v in &vals {
            r = r.line(format!("value of {g}: {:?} cover {:?}", v.value.elements(), v.cover.elements()));
        }
        details.insert("values".into(), serde_json::to_value(&vals).unwrap());
    }
    if args.minimal_primes {
        let mins = minimal_primes(&m);
        for f in &mins {
            r = r.line(format!("minimal prime {:?}", f.elements()));
        }
        details.insert("minimal_primes".into(), serde_json::to_value(&mins).unwrap());
    }
    if let Some(xs) = &args.perp {
        if let Some(&x) = xs.iter().find(|&&x| x >= m.size()) {
            return Err(Report::error(cmd, format!("element {x} out of range")));
        }
        let set: ElemSet = xs.iter().copied().collect();
        let p = perp(&m, set).map_err(err)?;
        r = r.line(format!("perp {set:?} = {:?}", p.elements()));
        details.insert("perp".into(), set_json(p.elements()));
    }
    Ok(Output::Report(r.details(Value::Object(details))))
}

fn condition_name(c: PrimeCondition) -> &'static str {
    match c {
        PrimeCondition::I => "i",
        PrimeCondition::II => "ii",
        PrimeCondition::III => "iii",
        PrimeCondition::IIIp => "iii'",
        PrimeCondition::IV => "iv",
        PrimeCondition::V => "v",
        PrimeCondition::VI => "vi",
        PrimeCondition::VII => "vii",
        PrimeCondition::VIII => "viii",
    }
}

fn rdp(args: &RdpArgs) -> Outcome {
    let cmd = "rdp";
    let m = load(cmd, &args.file)?;
    let mut r = Report::pass(cmd).anchors(&["THM41"]);
    let mut details = serde_json::Map::new();
    if let Some(w) = &args.witness {
        let (a, b, c) = (w[0], w[1], w[2]);
        if let Some(&x) = w.iter().find(|&&x| x >= m.size()) {
            return Err(Report::error(cmd, format!("element {x} out of range")));
        }
        let wit = rdp_witness(&m, a, b, c).map_err(|e| Report::from_error(cmd, e))?;
        r = r.line(format!("b' = {}, c' = {}", wit.b_prime, wit.c_prime));
        details.insert("witness".into(), serde_json::to_value(wit).unwrap());
    }
    if args.verify || args.witness.is_none() {
        let v = verify_rdp(&m);
        r = r.line(format!("checked {} triples", v.checked));
        if let Some(t) = v.failure {
            r.status = Status::Fail;
            r = r.witness(json!([t.0, t.1, t.2]));
        }
        details.insert("verify".into(), serde_json::to_value(&v).unwrap());
    }
    Ok(Output::Report(r.details(Value::Object(details))))
}

fn normal_valued(file: &Path, method: Method, nmax: Option<usize>) -> Outcome {
    let cmd = "normal-valued";
    let m = load(cmd, file)?;
    let nmax = nmax.unwrap_or(m.size());
    let mut r = Report::pass(cmd).anchors(&["COR69"]);
    let mut details = serde_json::Map::new();
    let direct = match method {
        Method::Direct | Method::Both => {
            let d = is_normal_valued_direct(&m).map_err(|e| Report::from_error(cmd, e))?;
            r = r.line(format!("direct: {}", d.is_none()));
            details.insert("direct".into(), json!(d.is_none()));
            if let Some(w) = &d {
                r.status = Status::Fail;
                r = r.witness(w);
            }
            Some(d.is_none())
        }
        Method::Equational => None,
    };
    if matches!(method, Method::Equational | Method::Both) {
        let b = equational_basis_check(&m, nmax);
        r = r.line(format!("equational (n ≤ {nmax}): {}", b.is_none()));
        details.insert("equational".into(), json!(b.is_none()));
        if let Some(w) = &b {
            r.status = Status::Fail;
            r = r.witness(w);
        }
        if let Some(d) = direct {
            if m.flags().basic && d != b.is_none() {
                r.status = Status::Fail;
                r = r
                    .witness(json!({ "inconsistency": "direct and equational tests disagree" }))
                    .line("FATAL inconsistency: direct and equational tests disagree");
            }
        }
    }
    Ok(Output::Report(r.details(Value::Object(details))))
}

fn holland(args: &HollandArgs) -> Outcome {
    let cmd = "holland";
    let m = load(cmd, &args.file)?;
    let rep = build_representation(&m).map_err(|e| Report::from_error(cmd, e))?;
    if let Some(e) = args.element {
        if e >= m.size() {
            return Err(Report::error(cmd, format!("element {e} out of range")));
        }
    }
    let export = |kind: ExportKind| {
        let f = match kind {
            ExportKind::Json => ExportFormat::Json,
            ExportKind::Dot => ExportFormat::Dot,
        };
        export_representation(&rep, f, args.element).map_err(|e| Report::from_error(cmd, e))
    };
    if !args.verify {
        if let Some(kind) = args.out {
            return Ok(Output::Raw(export(kind)?));
        }
    }
    let v = verify_representation(&rep);
    let mut r = if v.passed() { Report::pass(cmd) } else { Report::new(cmd, Status::Fail) };
    r = r.line(format!("omega: {} points in segments {:?}", v.omega_size, v.segment_sizes));
    for p in &v.results {
        let shown = p.holds.map_or("skipped".to_string(), |b| b.to_string());
        r = r.line(format!("{:?}: {shown}", p.property));
        if p.holds == Some(false) {
            r = r.witness(json!({ "property": p.property, "witness": p.witness }));
        }
    }
    let mut details = json!({ "verify": v });
    if let Some(kind) = args.out {
        let bytes = export(kind)?;
        details["export"] = match kind {
            ExportKind::Json => serde_json::from_slice(&bytes).unwrap(),
            ExportKind::Dot => Value::String(String::from_utf8(bytes).unwrap()),
        };
    }
    Ok(Output::Report(r.details(details).anchors(&["THM51"])))
}

fn write_algebra(m: &FiniteHoop, args: &GenArgs) -> Outcome {
    let text = if args.text { format::to_text(m) } else { format::to_json(m) };
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Report::error("gen", format!("{}: {e}", path.display())))?;
            Ok(Output::Report(Report::pass("gen").line(format!("wrote {}", path.display()))))
        }
        None => Ok(Output::Raw(text.into_bytes())),
    }
}

fn generate(args: &GenArgs, seed: u64) -> Outcome {
    let cmd = "gen";
    let err = |e| Report::from_error(cmd, e);
    let m = match &args.kind {
        GenKind::Lukasiewicz { n } | GenKind::Godel { n } if *n == 0 || *n > hoopkit::MAX_SIZE => {
            return Err(Report::error(cmd, format!("chain length must be in 1..={}", hoopkit::MAX_SIZE)));
        }
        GenKind::Lukasiewicz { n } => cones::make_chain(ChainKind::Lukasiewicz, *n),
        GenKind::Godel { n } => cones::make_chain(ChainKind::Godel, *n),
        GenKind::Product { a, b } => cones::direct_product(&load(cmd, a)?, &load(cmd, b)?).map_err(err)?,
        GenKind::Osum { a, b } => cones::ordinal_sum(&load(cmd, a)?, &load(cmd, b)?).map_err(err)?,
        GenKind::Cone { dim, order, sample, bound, property } => {
            return cone(*dim, *order, *sample, *bound, property, seed);
        }
    };
    write_algebra(&m, args)
}

fn cone(dim: usize, order: ConeOrder, trials: usize, bound: i64, props: &[String], seed: u64) -> Outcome {
    let cmd = "gen";
    if dim == 0 {
        return Err(Report::error(cmd, "dimension must be at least 1"));
    }
    let mode = match order {
        ConeOrder::Pointwise => OrderMode::Pointwise,
        ConeOrder::Lex => OrderMode::Lex,
    };
    let model = ConeModel::new(dim, mode);
    let properties: Vec<SampleProperty> = if props.is_empty() {
        SampleProperty::ALL.to_vec()
    } else {
        props
            .iter()
            .map(|p| {
                serde_json::from_value(Value::String(p.to_lowercase()))
                    .map_err(|_| Report::error(cmd, format!("unknown property {p:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut r = Report::pass(cmd).anchors(&["COR613"]);
    let mut rows = Vec::new();
    let mut any_applicable = false;
    for p in properties {
        match cones::sample_check(&model, p, trials, bound, seed) {
            Ok(s) if s.inapplicable => {
                r = r.line(format!("{p:?}: inapplicable"));
                rows.push(json!({ "property": p, "status": "inapplicable" }));
            }
            Ok(s) => {
                any_applicable = true;
                r = r.line(format!("{p:?}: {}/{}", s.passes, s.trials));
                rows.push(json!({ "property": p, "passes": s.passes, "trials": s.trials }));
            }
            Err(e) => {
                let f = Report::from_error(cmd, e);
                if f.status == Status::Error {
                    return Err(f);
                }
                r.status = Status::Fail;
                r.witnesses.extend(f.witnesses);
                r.lines.extend(f.lines);
            }
        }
    }
    if !any_applicable && r.status == Status::Pass {
        r.status = Status::Inapplicable;
    }
    Ok(Output::Report(r.details(json!({ "model": model, "seed": seed, "results": rows }))))
}

fn enumerate(args: &EnumerateArgs) -> Outcome {
    let cmd = "enumerate";
    let mut opts = EnumOptions::new(args.size);
    if args.labelled {
        opts = opts.labelled();
    }
    for f in &args.require {
        let flag: Flag = serde_json::from_value(Value::String(f.to_lowercase()))
            .map_err(|_| Report::error(cmd, format!("unknown flag {f:?}")))?;
        opts = opts.require(flag);
    }
    opts.limit = args.limit;
    let algebras = enumerate_hoops(&opts).map_err(|e| Report::from_error(cmd, e))?;
    let mut r = Report::pass(cmd).line(format!("{} algebras of size {}", algebras.len(), args.size));
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|e| Report::error(cmd, format!("{}: {e}", dir.display())))?;
    }
    let mut listed = Vec::new();
    for m in &algebras {
        let key = canonical_form(m);
        let digest = hex::encode(Sha256::digest(key.as_bytes()));
        let file = format!("{}.json", &digest[..16]);
        if let Some(dir) = &args.out {
            let path = dir.join(&file);
            std::fs::write(&path, format::to_json(m))
                .map_err(|e| Report::error(cmd, format!("{}: {e}", path.display())))?;
        }
        r = r.line(format!("{} {}", &digest[..16], hex::encode(key.as_bytes())));
        listed.push(json!({ "sha256": digest, "file": file, "flags": m.flags() }));
    }
    Ok(Output::Report(r.details(json!({ "count": algebras.len(), "algebras": listed }))))
}

fn q2(max_size: usize, nmax: Option<usize>) -> Outcome {
    let cmd = "q2-search";
    let err = |e| Report::from_error(cmd, e);
    let mut stream = Vec::new();
    for n in 1..=max_size {
        stream.extend(enumerate_hoops(&EnumOptions::new(n)).map_err(err)?);
    }
    let q = q2_search(&stream, nmax).map_err(err)?;
    let mut r = Report::pass(cmd)
        .anchors(&["Q2", "COR69"])
        .line(format!("examined {} algebras, {} basic", q.examined, q.basic))
        .line(format!("basic with x²⊙y² ≤ y⊙x: {}", q.satisfying_61))
        .line(format!(
            "not normal-valued: {} (failing branch {})",
            q.not_normal_valued,
            if q.failing_branch_exercised() { "exercised" } else { "never exercised" }
        ))
        .line(format!("candidates: {}", q.candidates.len()));
    for &i in &q.candidates {
        r.status = Status::Fail;
        r = r.witness(json!({ "candidate": format::to_json(&stream[i]) }));
    }
    for (i, msg) in &q.inconsistencies {
        r.status = Status::Fail;
        r = r
            .line(format!("FATAL inconsistency at #{i}: {msg}"))
            .witness(json!({ "inconsistency": msg, "algebra": format::to_json(&stream[*i]) }));
    }
    Ok(Output::Report(r.details(serde_json::to_value(&q).unwrap())))
}
