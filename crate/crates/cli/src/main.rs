//! Command line front end. Exit status 0 means every check passed, 1 a
//! verification failure, 2 an input error (reported as JSON on stderr).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use pschur::arrow::{classify_primitive, PrimitiveClass};
use pschur::chromatic::x_direct;
use pschur::eqgraph::{all_f, graph_for_content};
use pschur::io;
use pschur::ncalg::pair;
use pschur::poset::all_31_free;
use pschur::quotient::IdealKind;
use pschur::rmatrix::{eta, pair_and_lump, ChainPair};
use pschur::symfun::{Basis, SymExpr};
use pschur::verify::{check_by_name, registry, CheckInput, Report};
use pschur::{Content, Error, Poset};

#[derive(Parser)]
#[command(name = "pschur", version, about = "P-Schur functions, P-Knuth graphs and chromatic symmetric functions")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Tab separated output.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// X^β of the incomparability graph.
    Chromatic(ChromaticArgs),
    /// P-Knuth equivalence graph on the words of a content.
    KnuthGraph(GraphArgs),
    /// H-graph on the words of a content.
    HGraph(GraphArgs),
    /// Run one named check (or `all`).
    Verify(VerifyArgs),
    /// Ladder R-matrix of a pair of decreasing chains.
    Eta(EtaArgs),
    /// Arrow diagram fillings and clique posets.
    Arrow(ArrowArgs),
    /// The pairing <f, γ> of two free algebra elements.
    Pair(PairArgs),
    /// Run checks over every (3+1)-free poset up to a size.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ChromaticArgs {
    #[arg(long)]
    poset: PathBuf,
    /// Content as a comma separated multiset; defaults to every element once.
    #[arg(long)]
    beta: Option<String>,
    /// Weight by t^asc (needs an order in the poset file).
    #[arg(long)]
    t: bool,
    #[arg(long, value_enum, default_value = "m")]
    basis: BasisArg,
    /// Apply ω before printing.
    #[arg(long)]
    omega: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    M,
    E,
    H,
    S,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::M => Basis::M,
            BasisArg::E => Basis::E,
            BasisArg::H => Basis::H,
            BasisArg::S => Basis::S,
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    poset: PathBuf,
    #[arg(long)]
    content: String,
    /// Keep only words with this inv_P (needs an order).
    #[arg(long)]
    inv: Option<usize>,
    /// Also write Graphviz output here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    content: Option<String>,
    #[arg(long)]
    inv: Option<usize>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    alpha: Option<String>,
    /// Flag bounds: Z_j = {1..flags_j}.
    #[arg(long)]
    flags: Option<String>,
    #[arg(long)]
    t: bool,
    /// Size bound for swept degrees and contents.
    #[arg(long)]
    max: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// schur, e-commute, eta, newton, gasharov, hook, twocol, rectangle,
    /// flagged, arrow, probe or all.
    check: String,
    #[arg(long)]
    poset: PathBuf,
    #[command(flatten)]
    opts: CheckArgs,
}

#[derive(Args)]
struct EtaArgs {
    #[arg(long)]
    poset: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArrowOp {
    Eval,
    Fill,
    Clique,
}

#[derive(Args)]
struct ArrowArgs {
    #[arg(value_enum)]
    op: ArrowOp,
    #[arg(long)]
    diagram: PathBuf,
    #[arg(long)]
    poset: Option<PathBuf>,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    f: PathBuf,
    #[arg(long)]
    gamma: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 4)]
    max_size: usize,
    /// Comma separated check names, or `all`.
    #[arg(long, default_value = "all")]
    check: String,
    /// Size bound for degrees and contents inside each check.
    #[arg(long)]
    max: Option<usize>,
}

enum Failure {
    Input(String, String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.code().to_string(), e.to_string())
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input("io".into(), format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    Ok(io::poset_from_json(&read(path)?)?)
}

fn content(p: &Poset, s: &str) -> Result<Content, Failure> {
    let c = Content::new(io::parse_list(s)?);
    if let Some(&x) = c.as_slice().iter().find(|&&x| x == 0 || x as usize > p.n()) {
        return Err(Error::BadElement(x as usize, p.n()).into());
    }
    Ok(c)
}

struct Out {
    tsv: bool,
}

impl Out {
    fn emit(&self, json: &Value, tsv: impl FnOnce() -> String) {
        if self.tsv {
            print!("{}", tsv());
        } else {
            println!("{json}");
        }
    }
}

fn chromatic(args: &ChromaticArgs, out: &Out) -> Result<(), Failure> {
    let p = load_poset(&args.poset)?;
    let beta = match &args.beta {
        Some(s) => content(&p, s)?,
        None => Content::of_poset(&p),
    };
    let mut x = x_direct(&p, &beta, args.t)?;
    if args.omega {
        x = x.omega();
    }
    let x = x.change_basis(args.basis.into());
    out.emit(&io::sym_terms_to_json(&x), || sym_tsv(&x));
    Ok(())
}

fn sym_tsv(x: &SymExpr) -> String {
    x.terms
        .iter()
        .rev()
        .map(|(l, c)| format!("{}{:?}\t{c}\n", x.basis.tag(), l))
        .collect()
}

fn graph(args: &GraphArgs, kind: IdealKind, out: &Out) -> Result<(), Failure> {
    let p = load_poset(&args.poset)?;
    let beta = content(&p, &args.content)?;
    let g = graph_for_content(&p, &beta, args.inv, kind)?;
    let fs = all_f(&p, &g)?;
    if let Some(path) = &args.dot {
        fs::write(path, io::graph_to_dot(&g)).map_err(|e| io_err(path, e))?;
    }
    out.emit(&io::graph_to_json(&g, Some(&fs)), || {
        (0..g.num_components())
            .map(|c| {
                let rep: String = g.representative(c).iter().map(|x| format!("{x} ")).collect();
                format!("{}\t{}\t{}\n", rep.trim_end(), g.components[c].len(), fs[c])
            })
            .collect()
    });
    Ok(())
}

fn check_input(p: Poset, opts: &CheckArgs) -> Result<CheckInput, Failure> {
    let mut input = CheckInput::new(p);
    if let Some(s) = &opts.content {
        input.content = Some(content(&input.poset, s)?);
    }
    input.inv = opts.inv;
    input.lambda = opts.lambda.as_deref().map(io::parse_usize_list).transpose()?;
    input.k = opts.k;
    input.ell = opts.ell;
    input.alpha = opts.alpha.as_deref().map(io::parse_usize_list).transpose()?;
    input.flags = opts.flags.as_deref().map(io::parse_usize_list).transpose()?;
    input.with_t = opts.t;
    if let Some(m) = opts.max {
        input.max = m;
    }
    Ok(input)
}

fn reports_out(reports: &[Report], out: &Out) -> Result<(), Failure> {
    let pass = reports.iter().all(Report::pass);
    let json = json!({
        "pass": pass,
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    });
    out.emit(&json, || {
        reports
            .iter()
            .flat_map(|r| {
                r.lines.iter().map(move |l| {
                    format!("{}\t{}\t{}\n", if l.pass { "PASS" } else { "FAIL" }, r.check, l.text)
                })
            })
            .collect()
    });
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify(args: &VerifyArgs, out: &Out) -> Result<(), Failure> {
    let input = check_input(load_poset(&args.poset)?, &args.opts)?;
    let checks: Vec<_> = if args.check == "all" {
        registry().to_vec()
    } else {
        vec![check_by_name(&args.check).ok_or_else(|| {
            Failure::Input("unknown_check".into(), format!("no check named {:?}", args.check))
        })?]
    };
    let reports = checks
        .iter()
        .map(|c| c.run(&input))
        .collect::<Result<Vec<_>, _>>()?;
    reports_out(&reports, out)
}

fn eta_cmd(args: &EtaArgs, out: &Out) -> Result<(), Failure> {
    let p = load_poset(&args.poset)?;
    let x = ChainPair::new(&p, io::parse_list(&args.a)?, io::parse_list(&args.b)?)?;
    let y = eta(&p, &x);
    let l = pair_and_lump(&p, &x);
    let lumps: Vec<Value> = l
        .lumps
        .iter()
        .map(|lump| {
            let pairs: Vec<Value> = lump
                .pairs
                .iter()
                .map(|&(i, j, wrap)| json!({"a": i, "b": j, "wrap": wrap}))
                .collect();
            json!({"ladders": lump.ladders, "pairs": pairs, "unpaired": lump.unpaired})
        })
        .collect();
    let json = json!({"c": y.a, "d": y.b, "lumps": lumps});
    out.emit(&json, || {
        let show = |v: &[u8]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("c\t{}\nd\t{}\n", show(&y.a), show(&y.b))
    });
    Ok(())
}

fn arrow_cmd(args: &ArrowArgs, out: &Out) -> Result<(), Failure> {
    let m = io::diagram_from_json(&read(&args.diagram)?)?;
    let need_poset = || -> Result<(PathBuf, Poset), Failure> {
        let path = args
            .poset
            .clone()
            .ok_or_else(|| Failure::Input("param".into(), "--poset is required".into()))?;
        let p = load_poset(&path)?;
        Ok((path, p))
    };
    match args.op {
        ArrowOp::Fill => {
            let (_, p) = need_poset()?;
            let words = m.fill(&p);
            out.emit(&json!(words), || {
                words
                    .iter()
                    .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") + "\n")
                    .collect()
            });
        }
        ArrowOp::Eval => {
            let (path, p) = need_poset()?;
            let f = m.eval(&p);
            let id = json!(path.display().to_string());
            out.emit(&io::nc_to_json(&f, &id), || {
                f.terms()
                    .iter()
                    .map(|(w, c)| format!("{w:?}\t{c}\n"))
                    .collect()
            });
        }
        ArrowOp::Clique => {
            let (class, q) = match classify_primitive(&m)? {
                PrimitiveClass::Closed => ("closed", None),
                PrimitiveClass::Not31Free(q) => ("not31free", Some(q)),
                PrimitiveClass::Ok(q) => ("ok", Some(q)),
            };
            let qj = q.as_ref().map(io::poset_to_json);
            out.emit(&json!({"class": class, "clique_poset": qj}), || format!("{class}\n"));
        }
    }
    Ok(())
}

fn pair_cmd(args: &PairArgs, out: &Out) -> Result<(), Failure> {
    let (_, f) = io::nc_from_json(&read(&args.f)?)?;
    let (_, g) = io::nc_from_json(&read(&args.gamma)?)?;
    let c = pair(&f, &g);
    out.emit(&json!({"pairing": io::poly_to_json(&c)}), || format!("{c}\n"));
    Ok(())
}

fn sweep(args: &SweepArgs, out: &Out) -> Result<(), Failure> {
    let checks: Vec<_> = if args.check == "all" {
        registry().to_vec()
    } else {
        args.check
            .split(',')
            .map(|name| {
                check_by_name(name.trim()).ok_or_else(|| {
                    Failure::Input("unknown_check".into(), format!("no check named {name:?}"))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let posets: Vec<Poset> = (1..=args.max_size)
        .flat_map(all_31_free)
        .map(|p| match p.nuio_witness() {
            Some(order) => p.with_order(&order).expect("witness is valid"),
            None => p,
        })
        .collect();
    let results: Vec<Result<Vec<Report>, Error>> = posets
        .par_iter()
        .map(|p| {
            let mut input = CheckInput::new(p.clone());
            input.with_t = p.has_order();
            if let Some(m) = args.max {
                input.max = m;
            }
            checks.iter().map(|c| c.run(&input)).collect()
        })
        .collect();
    let mut rows = Vec::new();
    let mut pass = true;
    for (p, r) in posets.iter().zip(results) {
        let reports = r?;
        for rep in reports {
            pass &= rep.pass();
            rows.push((io::poset_to_json(p), rep));
        }
    }
    let json = json!({
        "posets": posets.len(),
        "pass": pass,
        "results": rows.iter().map(|(p, r)| json!({
            "poset": p,
            "check": r.check,
            "pass": r.pass(),
            "failures": r.failures().map(|l| l.text.clone()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    out.emit(&json, || {
        rows.iter()
            .map(|(p, r)| {
                format!("{}\t{}\t{}\n", if r.pass() { "PASS" } else { "FAIL" }, r.check, p)
            })
            .collect()
    });
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input("threads".into(), e.to_string()))?;
    }
    let out = Out { tsv: cli.tsv };
    match &cli.cmd {
        Cmd::Chromatic(a) => chromatic(a, &out),
        Cmd::KnuthGraph(a) => graph(a, IdealKind::Plac, &out),
        Cmd::HGraph(a) => graph(a, IdealKind::H, &out),
        Cmd::Verify(a) => verify(a, &out),
        Cmd::Eta(a) => eta_cmd(a, &out),
        Cmd::Arrow(a) => arrow_cmd(a, &out),
        Cmd::Pair(a) => pair_cmd(a, &out),
        Cmd::Sweep(a) => sweep(a, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(code, message)) => {
            eprintln!("{}", json!({"error": code, "message": message}));
            ExitCode::from(2)
        }
    }
}
