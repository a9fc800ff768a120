// SPDX-License-Identifier: Apache-2.0

//! `hotkit` command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hotkit::boolfn::BoolFnJson;
use hotkit::choiverify::{self, LocalBasis, PairSelection, SystemDims, Tolerances};
use hotkit::mobius::{self, MobiusJson};
use hotkit::normalform::{self, NormalFormJson};
use hotkit::poset::{self, PosetJson};
use hotkit::signalling::{self, MatrixJson};
use hotkit::subtypes::{self, is_monotone_subtype};
use hotkit::suite;
use hotkit::typeterm::{self, is_chain_type};
use hotkit::{BoolFn, Error, LabelChain, StructurePoset, Subset, TypeFunction, TypeTerm};

#[derive(Parser)]
#[command(name = "hotkit", version, about = "Boolean type functions of higher-order quantum maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term or function file and echo its function.
    Parse(InputArgs),
    /// Full report: split, Möbius expansion, poset, signalling, normal form.
    Analyze(InputArgs),
    /// List 𝒯_n, optionally restricted to an output set.
    EnumerateTypes(EnumArgs),
    /// Regular subtypes generated by 𝒯_{n,O}.
    EnumerateRegular(RegularArgs),
    /// Signalling relation between inputs and outputs.
    Signalling(InputArgs),
    /// Hasse diagram of the structure poset.
    Hasse(HasseArgs),
    /// Join-of-meets normal form by chain types.
    NormalForm(InputArgs),
    /// Run the theorem sweeps.
    Verify(VerifyArgs),
    /// Check the projection identities numerically on Choi matrices.
    ChoiVerify(ChoiArgs),
}

#[derive(Args)]
struct Source {
    /// Type term, e.g. "(A2 -> A1) * (A4 -> A3)".
    #[arg(long, conflicts_with = "fn_file")]
    term: Option<String>,
    /// JSON file {"n": .., "support": [..]}.
    #[arg(long = "fn", value_name = "FILE")]
    fn_file: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated output indices.
    #[arg(long)]
    outputs: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RegularArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    outputs: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HasseArgs {
    #[command(flatten)]
    source: Source,
    /// Graphviz output.
    #[arg(long)]
    dot: bool,
    /// Full poset instead of the reduced one.
    #[arg(long)]
    full: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// `all` or a comma-separated list of suites.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    /// Random cases at n = 5 for the lemma suites.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    GellMann,
    MatrixUnits,
}

#[derive(Args)]
struct ChoiArgs {
    #[command(flatten)]
    source: Source,
    /// Check every pair in 𝒯_n instead of a single term.
    #[arg(long, conflicts_with_all = ["term", "fn_file"])]
    all_types: bool,
    /// System count for --all-types when --dims is absent.
    #[arg(long)]
    n: Option<usize>,
    /// Local dimensions, e.g. "2,2,3"; qubits by default.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long, value_enum, default_value = "gell-mann")]
    basis: BasisArg,
    /// Sample this many ordered pairs instead of all.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    /// Tolerance for the identities.
    #[arg(long, default_value_t = choiverify::IDENTITY_TOL)]
    tolerance: f64,
}

/// Errors raised here: bad input, or a check that came back false.
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant_failure() {
            Failure::Check(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

struct Input {
    term: Option<TypeTerm>,
    f: BoolFn,
}

impl Input {
    fn load(src: &Source) -> std::result::Result<Input, Failure> {
        match (&src.term, &src.fn_file) {
            (Some(t), None) => {
                let term = TypeTerm::parse(t)?;
                term.validate()?;
                let f = term.eval();
                Ok(Input { term: Some(term), f })
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                let json: BoolFnJson = serde_json::from_str(&text)?;
                Ok(Input { term: None, f: BoolFn::from_json(&json)? })
            }
            _ => Err(Failure::Input("give exactly one of --term or --fn".into())),
        }
    }

    /// Certified type function: from the term, or by lookup within the guard.
    fn type_function(&self) -> std::result::Result<Option<TypeFunction>, Failure> {
        if let Some(t) = &self.term {
            return Ok(Some(TypeFunction::from_term(t)?));
        }
        if self.f.n() > typeterm::max_n() {
            return Ok(None);
        }
        if typeterm::is_type_function(&self.f)? {
            Ok(Some(TypeFunction::from_fn(&self.f)?))
        } else {
            Ok(None)
        }
    }
}

fn parse_outputs(n: usize, text: &str) -> std::result::Result<Subset, Failure> {
    let mut idx = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        idx.push(part.parse::<usize>().map_err(|_| Failure::Input(format!("bad index `{part}` in --outputs")))?);
    }
    Ok(Subset::from_indices(n, &idx)?)
}

fn json<T: Serialize>(v: &T) -> Outcome {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn chain_text(p: &StructurePoset, chain: &[usize]) -> String {
    let labels = p.chain_labels(chain);
    match LabelChain::new(labels.clone()) {
        Ok(lc) => lc.to_string(),
        Err(_) => labels.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("-"),
    }
}

// ---- parse -------------------------------------------------------------------

#[derive(Serialize)]
struct ParseJson {
    term: Option<String>,
    function: BoolFnJson,
    mobius: MobiusJson,
}

fn cmd_parse(a: &InputArgs) -> Outcome {
    let input = Input::load(&a.source)?;
    let c = mobius::transform(&input.f);
    if a.json {
        return json(&ParseJson { term: input.term.as_ref().map(|t| t.to_string()), function: input.f.to_json(), mobius: c.to_json() });
    }
    let mut out = String::new();
    if let Some(t) = &input.term {
        let _ = writeln!(out, "term     {t}");
    }
    let _ = writeln!(out, "n        {}", input.f.n());
    let _ = writeln!(out, "mobius   {c}");
    let support: Vec<String> = input.f.support_strings().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "support  {} strings", support.len());
    for s in support {
        let _ = writeln!(out, "  {s}");
    }
    Ok(out)
}

// ---- analyze -----------------------------------------------------------------

#[derive(Serialize)]
struct SplitJson {
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

#[derive(Serialize)]
struct PosetSummary {
    elements: usize,
    reduced_elements: usize,
    rank: usize,
    maximal_chains: Vec<String>,
    free_inputs: Vec<usize>,
    free_outputs: Vec<usize>,
}

#[derive(Serialize)]
struct CheckJson {
    name: String,
    passed: bool,
    detail: Option<String>,
}

#[derive(Serialize)]
struct AnalysisReport {
    term: Option<String>,
    function: BoolFnJson,
    io_split: SplitJson,
    mobius: String,
    type_function: Option<bool>,
    chain_type: bool,
    poset: Option<PosetSummary>,
    signalling: Option<MatrixJson>,
    normal_form: Option<NormalFormJson>,
    normal_form_text: Option<String>,
    checks: Vec<CheckJson>,
}

fn check(checks: &mut Vec<CheckJson>, name: &str, r: std::result::Result<(), String>) {
    checks.push(CheckJson { name: name.into(), passed: r.is_ok(), detail: r.err() });
}

fn analyze(input: &Input) -> std::result::Result<AnalysisReport, Failure> {
    let f = &input.f;
    let split = f.io_split();
    let c = mobius::transform(f);
    let tf = input.type_function()?;
    let type_function = if input.term.is_some() || f.n() <= typeterm::max_n() { Some(tf.is_some()) } else { None };
    let mut checks = Vec::new();

    let p = StructurePoset::new(f);
    let poset = if tf.is_some() || p.is_valid() {
        check(&mut checks, "poset graded of even rank", p.validate().map_err(|e| e.to_string()));
        let rec = p.reconstruct().map_err(|e| e.to_string());
        check(&mut checks, "poset reconstructs f", rec.and_then(|g| if &g == f { Ok(()) } else { Err("differs".into()) }));
        for l in poset::lemma_checks(&p) {
            check(&mut checks, &l.name, l.failure.map_or(Ok(()), Err));
        }
        Some(PosetSummary {
            elements: p.elements().len(),
            reduced_elements: p.reduced_indices().len(),
            rank: p.top_rank(),
            maximal_chains: p.maximal_chains(true).iter().map(|ch| chain_text(&p, ch)).collect(),
            free_inputs: p.free_inputs().to_vec(),
            free_outputs: p.free_outputs().to_vec(),
        })
    } else {
        None
    };

    let signalling = if is_monotone_subtype(f) {
        let m = match &tf {
            Some(t) => signalling::signalling_matrix_typed(t),
            None => signalling::signalling_matrix(f),
        };
        match m {
            Ok(m) => {
                if tf.is_some() {
                    check(&mut checks, "signalling matches pair-rank parity", Ok(()));
                }
                Some(m.to_json())
            }
            Err(e) if e.is_invariant_failure() => {
                check(&mut checks, "signalling matches pair-rank parity", Err(e.to_string()));
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    let (normal_form, normal_form_text) = match &tf {
        Some(t) => match normalform::synthesize(t) {
            Ok(nf) => {
                let minimax = nf.minimax_status()?;
                check(&mut checks, "normal form re-evaluates to f", Ok(()));
                check(&mut checks, &format!("minimax {minimax:?}").to_lowercase(), Ok(()));
                (Some(nf.to_json()), Some(nf.to_string()))
            }
            Err(e) if e.is_invariant_failure() => {
                check(&mut checks, "normal form re-evaluates to f", Err(e.to_string()));
                (None, None)
            }
            Err(e) => return Err(e.into()),
        },
        None => (None, None),
    };

    Ok(AnalysisReport {
        term: input.term.as_ref().map(|t| t.to_string()),
        function: f.to_json(),
        io_split: SplitJson { inputs: split.inputs.to_vec(), outputs: split.outputs.to_vec() },
        mobius: c.to_string(),
        type_function,
        chain_type: tf.is_some() && is_chain_type(f),
        poset,
        signalling,
        normal_form,
        normal_form_text,
        checks,
    })
}

fn list(v: &[usize]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

fn format_report(r: &AnalysisReport, f: &BoolFn) -> String {
    let mut out = String::new();
    if let Some(t) = &r.term {
        let _ = writeln!(out, "term          {t}");
    }
    let _ = writeln!(out, "systems       {}", r.function.n);
    let _ = writeln!(out, "inputs        {}", list(&r.io_split.inputs));
    let _ = writeln!(out, "outputs       {}", list(&r.io_split.outputs));
    let _ = writeln!(out, "mobius        {}", r.mobius);
    let kind = match r.type_function {
        Some(true) if r.chain_type => "type function, causally ordered (comb)",
        Some(true) => "type function, not causally ordered",
        Some(false) if is_monotone_subtype(f) => "regular subtype, not a type function",
        Some(false) => "not a type function",
        None => "undecided (beyond the enumeration guard)",
    };
    let _ = writeln!(out, "kind          {kind}");
    if let Some(p) = &r.poset {
        let _ = writeln!(
            out,
            "poset         {} elements, {} reduced, rank {}, {} maximal chains",
            p.elements,
            p.reduced_elements,
            p.rank,
            p.maximal_chains.len()
        );
        let _ = writeln!(out, "free inputs   {}", list(&p.free_inputs));
        let _ = writeln!(out, "free outputs  {}", list(&p.free_outputs));
        out.push_str("maximal chains of the reduced poset\n");
        for ch in &p.maximal_chains {
            let _ = writeln!(out, "  {ch}");
        }
    }
    if let Some(m) = &r.signalling {
        out.push_str("signalling\n");
        for row in render_matrix(m, &r.io_split).lines() {
            let _ = writeln!(out, "  {row}");
        }
        let blocked: Vec<String> = m.pairs.iter().filter(|p| !p.signals).map(|p| format!("{}↛{}", p.i, p.j)).collect();
        let _ = writeln!(out, "  no signalling: {}", if blocked.is_empty() { "none".into() } else { blocked.join(" ") });
    }
    if let (Some(text), Some(nf)) = (&r.normal_form_text, &r.normal_form) {
        let _ = writeln!(out, "normal form   {text}");
        for (k, leaf) in nf.leaves.iter().enumerate() {
            let _ = writeln!(out, "  c{} = {leaf}", k + 1);
        }
    }
    out.push_str("checks\n");
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = write!(out, "  {status} {}", c.name);
        if let Some(d) = &c.detail {
            let _ = write!(out, ": {d}");
        }
        out.push('\n');
    }
    out
}

fn render_matrix(m: &MatrixJson, split: &SplitJson) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:>6}", "in\\out");
    for j in &split.outputs {
        let _ = write!(out, " {j:>7}");
    }
    out.push('\n');
    for i in &split.inputs {
        let _ = write!(out, "{i:>6}");
        for j in &split.outputs {
            let cell = m.pairs.iter().find(|p| p.i == *i && p.j == *j).expect("full matrix");
            let mark = if cell.signals { "↝" } else { "∅" };
            let text = match cell.pair_rank {
                Some(r) => format!("{mark} ({r})"),
                None => mark.to_string(),
            };
            let _ = write!(out, " {text:>7}");
        }
        out.push('\n');
    }
    out
}

fn cmd_analyze(a: &InputArgs) -> Outcome {
    let input = Input::load(&a.source)?;
    let r = analyze(&input)?;
    let text = if a.json { json(&r)? } else { format_report(&r, &input.f) };
    if r.checks.iter().any(|c| !c.passed) {
        print!("{text}");
        return Err(Failure::Check("analysis checks failed".into()));
    }
    Ok(text)
}

// ---- enumeration -------------------------------------------------------------

#[derive(Serialize)]
struct TypesJson {
    n: usize,
    outputs: Option<Vec<usize>>,
    count: usize,
    chain_types: usize,
    members: Vec<BoolFnJson>,
}

fn cmd_enumerate_types(a: &EnumArgs) -> Outcome {
    let set = typeterm::enumerate_types(a.n)?;
    let members: Vec<BoolFn> = match &a.outputs {
        Some(o) => set.with_outputs(parse_outputs(a.n, o)?),
        None => set.members().to_vec(),
    };
    let chains = members.iter().filter(|f| is_chain_type(f)).count();
    if a.json {
        return json(&TypesJson {
            n: a.n,
            outputs: match &a.outputs {
                Some(o) => Some(parse_outputs(a.n, o)?.to_vec()),
                None => None,
            },
            count: members.len(),
            chain_types: chains,
            members: members.iter().map(BoolFn::to_json).collect(),
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} type functions on {} systems, {} chain types", members.len(), a.n, chains);
    for f in &members {
        let w = set.witness(f).map(|t| t.to_string()).unwrap_or_default();
        let _ = writeln!(out, "  {}  {}", mobius::transform(f), w);
    }
    Ok(out)
}

#[derive(Serialize)]
struct RegularJson {
    n: usize,
    outputs: Vec<usize>,
    count: usize,
    type_count: usize,
    chain_type_count: usize,
    basic_strings: Vec<String>,
    members: Vec<BoolFnJson>,
    generators: Vec<GeneratorJson>,
}

#[derive(Serialize)]
struct GeneratorJson {
    string: String,
    function: BoolFnJson,
}

fn cmd_enumerate_regular(a: &RegularArgs) -> Outcome {
    let o = parse_outputs(a.n, &a.outputs)?;
    let r = subtypes::enumerate_regular(a.n, o)?;
    let basic = subtypes::basic_strings(a.n, o)?;
    let mut generators = Vec::new();
    for s in &basic {
        generators.push(GeneratorJson { string: s.to_string(), function: subtypes::f_s(a.n, o, *s)?.to_json() });
    }
    if a.json {
        return json(&RegularJson {
            n: a.n,
            outputs: o.to_vec(),
            count: r.members.len(),
            type_count: r.type_count,
            chain_type_count: r.chain_type_count,
            basic_strings: basic.iter().map(|s| s.to_string()).collect(),
            members: r.members.iter().map(BoolFn::to_json).collect(),
            generators,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, outputs {}", a.n, o);
    let _ = writeln!(out, "regular subtypes  {}", r.members.len());
    let _ = writeln!(out, "type functions    {}", r.type_count);
    let _ = writeln!(out, "chain types       {}", r.chain_type_count);
    let _ = writeln!(out, "basic strings     {}", basic.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "));
    out.push_str("members\n");
    for f in &r.members {
        let _ = writeln!(out, "  {}", mobius::transform(f));
    }
    Ok(out)
}

// ---- signalling, hasse, normal form -------------------------------------------

fn cmd_signalling(a: &InputArgs) -> Outcome {
    let input = Input::load(&a.source)?;
    let m = match input.type_function()? {
        Some(t) => signalling::signalling_matrix_typed(&t)?,
        None => signalling::signalling_matrix(&input.f)?,
    };
    if a.json {
        return json(&m.to_json());
    }
    Ok(m.render())
}

fn cmd_hasse(a: &HasseArgs) -> Outcome {
    let input = Input::load(&a.source)?;
    let p = StructurePoset::new(&input.f);
    if a.json {
        return json::<PosetJson>(&p.to_json());
    }
    if a.dot {
        return Ok(p.to_dot(!a.full));
    }
    let mut out = String::new();
    let shown: Vec<usize> = if a.full { (0..p.elements().len()).collect() } else { p.reduced_indices() };
    for &k in &shown {
        let e = &p.elements()[k];
        let _ = writeln!(out, "rank {}  T = {}  labels {}", e.rank, e.set, e.labels);
    }
    let covers = if a.full { p.covers().to_vec() } else { p.reduced_covers() };
    for (x, y) in covers {
        let _ = writeln!(out, "{} < {}", p.elements()[x].set, p.elements()[y].set);
    }
    Ok(out)
}

fn cmd_normal_form(a: &InputArgs) -> Outcome {
    let input = Input::load(&a.source)?;
    let tf = input
        .type_function()?
        .ok_or_else(|| Failure::Input("normal forms exist only for type functions".into()))?;
    let nf = normalform::synthesize(&tf)?;
    if a.json {
        return json(&nf.to_json());
    }
    let mut out = String::new();
    let _ = writeln!(out, "{nf}");
    for (k, leaf) in nf.leaf_labels().iter().enumerate() {
        let _ = writeln!(out, "  c{} = {leaf}", k + 1);
    }
    let _ = writeln!(out, "minimax {:?}", nf.minimax_status()?);
    Ok(out)
}

// ---- verification --------------------------------------------------------------

#[derive(Serialize)]
struct EntryJson {
    name: String,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let cfg = suite::Config { max_n: a.max_n, samples: a.samples, seed: a.seed };
    let entries = suite::run_many(&a.suite, &cfg)?;
    let text = if a.json {
        json(&entries
            .iter()
            .map(|e| EntryJson { name: e.name.into(), cases: e.cases, failures: e.failures, first_failure: e.first_failure.clone() })
            .collect::<Vec<_>>())?
    } else {
        suite::render(&entries)
    };
    if entries.iter().all(suite::Entry::passed) {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Check("some suites failed".into()))
    }
}

fn cmd_choi(a: &ChoiArgs) -> Outcome {
    let basis = match a.basis {
        BasisArg::GellMann => LocalBasis::GellMann,
        BasisArg::MatrixUnits => LocalBasis::MatrixUnits,
    };
    let tol = Tolerances { identity: a.tolerance, ..Tolerances::default() };
    let pairs = match a.pairs {
        Some(count) => PairSelection::Sampled { count, seed: a.seed },
        None => PairSelection::Exhaustive,
    };
    let report = if a.all_types {
        let dims = match (&a.dims, a.n) {
            (Some(d), _) => SystemDims::parse(d)?,
            (None, Some(n)) => SystemDims::qubits(n)?,
            (None, None) => return Err(Failure::Input("--all-types needs --n or --dims".into())),
        };
        choiverify::verify_types(&dims.with_basis(basis), pairs, tol)?
    } else {
        let input = Input::load(&a.source)?;
        let dims = match &a.dims {
            Some(d) => SystemDims::parse(d)?,
            None => SystemDims::qubits(input.f.n())?,
        };
        if dims.n() != input.f.n() {
            return Err(Failure::Input(format!("--dims names {} systems, the function has {}", dims.n(), input.f.n())));
        }
        let functions = [input.f.clone(), input.f.complement()];
        choiverify::verify_identities(&dims.with_basis(basis), &functions, pairs, tol)?
    };
    let text = report.render();
    if report.passed() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Check("identities fail beyond tolerance".into()))
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Parse(a) => cmd_parse(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::EnumerateTypes(a) => cmd_enumerate_types(a),
        Command::EnumerateRegular(a) => cmd_enumerate_regular(a),
        Command::Signalling(a) => cmd_signalling(a),
        Command::Hasse(a) => cmd_hasse(a),
        Command::NormalForm(a) => cmd_normal_form(a),
        Command::Verify(a) => cmd_verify(a),
        Command::ChoiVerify(a) => cmd_choi(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
    }
}
