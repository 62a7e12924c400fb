mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bisetlab::algebra::{
    aut_multiplicities, build_endo_algebra, certify_semisimple, essential_algebra, eval_simple_quotient, fixture,
    radical_via_trace_form, ModuleData,
};
use bisetlab::burnside::{compose_bisets, linearize, BisetSpace};
use bisetlab::catalog::{parse_descriptors, read_descriptors, Catalog, GroupDescriptor};
use bisetlab::group::DEFAULT_ORDER_CAP;
use bisetlab::repcat::{build_gram, check_pairing_nondegenerate, compose, CharGroup, FieldMode};

#[derive(Parser)]
#[command(name = "bisetlab", version, about = "Exact checks on shifted representation and Burnside functors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Catalog file with extra groups (JSON).
    #[arg(long, env = "BISETLAB_CATALOG", global = true)]
    catalog: Option<PathBuf>,
    /// Largest group order any product may reach.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP, global = true)]
    cap: usize,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix of the pairing on Hom(L, H) and its definiteness.
    Gram(Triple),
    /// Rank of alpha -> (beta^op o alpha)_beta on Hom(L, H).
    Nondeg(Triple),
    /// Radical of End(L) via the trace form, or of a named fixture algebra.
    Radical(RadicalArgs),
    /// Semisimplicity certificate for L over a list of probes.
    Certify(CertifyArgs),
    /// Essential algebra of A at G.
    Essential(EssentialArgs),
    /// Linearization of biset composites against character convolution.
    Oracle(OracleArgs),
    /// Aut(C)-isotypic decomposition of A(C x L x T).
    Autmult(AutArgs),
    /// Evaluate L, J and S for a module over End(C).
    Eval(EvalArgs),
    /// Manage the group catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
        #[command(flatten)]
        common: Common,
    },
    /// Print a report as plain text.
    Render {
        /// Report file, or - for standard input.
        report: PathBuf,
    },
}

#[derive(Args)]
struct Triple {
    #[arg(long = "H")]
    h: String,
    #[arg(long = "L")]
    l: String,
    #[arg(long = "T", default_value = "C1")]
    t: String,
    #[arg(long, default_value = "rational")]
    field: FieldMode,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct RadicalArgs {
    #[arg(long = "L", required_unless_present = "fixture")]
    l: Option<String>,
    #[arg(long = "T", default_value = "C1")]
    t: String,
    #[arg(long, default_value = "rational")]
    field: FieldMode,
    /// Named algebra instead of End(L): rationals, nilpotent2 or injected.
    #[arg(long, conflicts_with = "l")]
    fixture: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long = "L")]
    l: String,
    #[arg(long = "T", default_value = "C1")]
    t: String,
    #[arg(long, default_value = "rational")]
    field: FieldMode,
    /// Comma-separated probe groups H.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    probes: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EssentialArgs {
    #[arg(long = "G")]
    g: String,
    #[arg(long = "T", default_value = "C1")]
    t: String,
    #[arg(long, default_value = "rational")]
    field: FieldMode,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "G")]
    g: String,
    #[arg(long = "H")]
    h: String,
    #[arg(long = "K")]
    k: String,
    #[arg(long = "T", default_value = "C1")]
    t: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AutArgs {
    #[arg(long = "L")]
    l: String,
    #[arg(long = "T", default_value = "C1")]
    t: String,
    #[arg(long = "C")]
    c: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "C")]
    c: String,
    #[arg(long = "G")]
    g: String,
    #[arg(long = "T", default_value = "C1")]
    t: String,
    #[arg(long, default_value = "rational")]
    field: FieldMode,
    /// Module data: {"dim": d, "action": {label: matrix}}.
    #[arg(long)]
    module: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names and orders of all groups.
    List,
    /// Validate the entries of a file and append them to the catalog file.
    Add { file: PathBuf },
    /// Re-check the group axioms of a file (default: the catalog file).
    Validate { file: Option<PathBuf> },
}

/// Outcome of a subcommand: whether its checks passed.
struct Outcome {
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome { pass: true }) => ExitCode::SUCCESS,
        Ok(Outcome { pass: false }) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Gram(a) => gram(a),
        Command::Nondeg(a) => nondeg(a),
        Command::Radical(a) => radical(a),
        Command::Certify(a) => certify(a),
        Command::Essential(a) => essential(a),
        Command::Oracle(a) => oracle(a),
        Command::Autmult(a) => autmult(a),
        Command::Eval(a) => eval(a),
        Command::Catalog { action, common } => catalog_command(action, &common),
        Command::Render { report } => {
            let text = if report == Path::new("-") {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(&report).with_context(|| format!("cannot read {}", report.display()))?
            };
            let value: Value = serde_json::from_str(&text).context("report is not valid JSON")?;
            print_stdout(&render::render(&value)?)?;
            Ok(Outcome { pass: true })
        }
    }
}

/// The catalog plus the settings every report carries.
struct Session {
    catalog: Catalog,
    cap: usize,
}

impl Session {
    fn open(common: &Common) -> Result<Self> {
        if common.cap == 0 {
            bail!("--cap must be positive");
        }
        if let Some(n) = common.threads {
            if n == 0 {
                bail!("--threads must be positive");
            }
            // a second initialization only happens in-process and is harmless
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        let catalog = match &common.catalog {
            Some(p) if p.exists() => Catalog::with_entries(&read_descriptors(p)?, common.cap)?,
            Some(p) => bail!("catalog file {} does not exist", p.display()),
            None => Catalog::builtin(),
        };
        Ok(Session { catalog, cap: common.cap })
    }

    fn group(&self, name: &str) -> Result<Arc<CharGroup>> {
        let g = self.catalog.get(name)?;
        if g.order() > self.cap {
            bail!(bisetlab::Error::OrderCapExceeded { order: g.order(), cap: self.cap });
        }
        Ok(CharGroup::new(g)?)
    }

    fn check_product(&self, groups: &[&Arc<CharGroup>]) -> Result<()> {
        let order: usize = groups.iter().map(|g| g.order()).product();
        if order > self.cap {
            let names: Vec<&str> = groups.iter().map(|g| g.name()).collect();
            return Err(anyhow!(bisetlab::Error::OrderCapExceeded { order, cap: self.cap }))
                .with_context(|| format!("product {}", names.join(" x ")));
        }
        Ok(())
    }

    fn emit(&self, common: &Common, command: &str, config: Value, pass: bool, result: Value) -> Result<Outcome> {
        let mut report = json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "cap": self.cap,
            "catalog_hash": self.catalog.hash(),
            "pass": pass,
            "result": result,
        });
        if report["config"]["field"] == "rational" {
            // integral Gram data lives on the Galois-orbit-sum lattice, which can be
            // a proper sublattice of R_Q(G) when Schur indices exceed 1
            report["lattice"] = json!("galois orbit sums; Schur indices taken as 1");
        }
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        match &common.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
            None => print_stdout(&text)?,
        }
        Ok(Outcome { pass })
    }
}

fn gram(a: Triple) -> Result<Outcome> {
    let s = Session::open(&a.common)?;
    let (h, l, t) = (s.group(&a.h)?, s.group(&a.l)?, s.group(&a.t)?);
    s.check_product(&[&h, &l, &t])?;
    let r = build_gram(&h, &l, &t, a.field)?;
    let config = json!({"H": h.name(), "L": l.name(), "T": t.name(), "field": a.field, "probes": [h.name()]});
    let pass = r.symmetric && r.pd;
    s.emit(&a.common, "gram", config, pass, serde_json::to_value(r)?)
}

fn nondeg(a: Triple) -> Result<Outcome> {
    let s = Session::open(&a.common)?;
    let (h, l, t) = (s.group(&a.h)?, s.group(&a.l)?, s.group(&a.t)?);
    s.check_product(&[&h, &l, &t])?;
    let r = check_pairing_nondegenerate(&h, &l, &t, a.field)?;
    let config = json!({"H": h.name(), "L": l.name(), "T": t.name(), "field": a.field, "probes": [h.name()]});
    let pass = r.pass;
    s.emit(&a.common, "nondeg", config, pass, serde_json::to_value(r)?)
}

fn radical(a: RadicalArgs) -> Result<Outcome> {
    let s = Session::open(&a.common)?;
    let (alg, config) = match (&a.fixture, &a.l) {
        (Some(name), _) => (fixture(name)?, json!({"fixture": name})),
        (None, Some(l)) => {
            let (l, t) = (s.group(l)?, s.group(&a.t)?);
            s.check_product(&[&l, &l, &t])?;
            let config = json!({"L": l.name(), "T": t.name(), "field": a.field});
            (build_endo_algebra(&l, &t, a.field)?, config)
        }
        (None, None) => bail!("either --L or --fixture is required"),
    };
    let r = radical_via_trace_form(&alg)?;
    let pass = r.radical_dim == 0;
    let mut result = serde_json::to_value(&r)?;
    result["radical_dim"] = json!(r.radical_dim);
    s.emit(&a.common, "radical", config, pass, result)
}

fn certify(a: CertifyArgs) -> Result<Outcome> {
    let s = Session::open(&a.common)?;
    let (l, t) = (s.group(&a.l)?, s.group(&a.t)?);
    s.check_product(&[&l, &l, &t])?;
    let probe_names: Vec<String> = a.probes.iter().filter(|p| !p.trim().is_empty()).cloned().collect();
    let probes = probe_names.iter().map(|p| s.group(p)).collect::<Result<Vec<_>>>()?;
    for h in &probes {
        s.check_product(&[h, &l, &t])?;
    }
    let cert = certify_semisimple(&l, &t, a.field, &probes)?;
    let names: Vec<&str> = probes.iter().map(|p| p.name()).collect();
    let config = json!({"L": l.name(), "T": t.name(), "field": a.field, "probes": names});
    let pass = cert.pass;
    s.emit(&a.common, "certify", config, pass, serde_json::to_value(cert)?)
}

fn essential(a: EssentialArgs) -> Result<Outcome> {
    let s = Session::open(&a.common)?;
    let (g, t) = (s.group(&a.g)?, s.group(&a.t)?);
    s.check_product(&[&g, &g, &t])?;
    let r = essential_algebra(&g, &t, a.field, &s.catalog)?;
    let config = json!({"G": g.name(), "T": t.name(), "field": a.field, "probes": r.through});
    let mut result = serde_json::to_value(&r)?;
    result["essential_dim"] = json!(r.quotient_dim);
    s.emit(&a.common, "essential", config, true, result)
}

fn oracle(a: OracleArgs) -> Result<Outcome> {
    let s = Session::open(&a.common)?;
    let (g, h, k, t) = (s.group(&a.g)?, s.group(&a.h)?, s.group(&a.k)?, s.group(&a.t)?);
    for p in [[&g, &h, &t], [&h, &k, &t], [&g, &k, &t]] {
        s.check_product(&p)?;
    }
    let sb = BisetSpace::with_cap(&g, &h, &t, s.cap)?;
    let sa = BisetSpace::with_cap(&h, &k, &t, s.cap)?;
    BisetSpace::with_cap(&g, &k, &t, s.cap)?;
    let (bb, ba) = (sb.basis(), sa.basis());
    let lb = bb.iter().map(linearize).collect::<bisetlab::Result<Vec<_>>>()?;
    let la = ba.iter().map(linearize).collect::<bisetlab::Result<Vec<_>>>()?;
    let mut mismatches = Vec::new();
    for (i, (b, lbi)) in bb.iter().zip(&lb).enumerate() {
        for (j, (al, laj)) in ba.iter().zip(&la).enumerate() {
            if linearize(&compose_bisets(b, al)?)? != compose(lbi, laj)? {
                mismatches.push(json!({"beta": sb.class_to_json(i), "alpha": sa.class_to_json(j)}));
            }
        }
    }
    let config = json!({"G": g.name(), "H": h.name(), "K": k.name(), "T": t.name(), "field": FieldMode::Rational});
    let result = json!({"pairs": bb.len() * ba.len(), "mismatches": mismatches});
    s.emit(&a.common, "oracle", config, mismatches.is_empty(), result)
}

fn autmult(a: AutArgs) -> Result<Outcome> {
    let s = Session::open(&a.common)?;
    let (l, t, c) = (s.group(&a.l)?, s.group(&a.t)?, s.group(&a.c)?);
    s.check_product(&[&c, &l, &t])?;
    s.check_product(&[&c, &c, &t])?;
    let r = aut_multiplicities(&l, &t, &c)?;
    let config = json!({"L": l.name(), "T": t.name(), "C": c.name(), "field": FieldMode::Rational});
    let pass = r.checks_pass();
    let mut result = serde_json::to_value(&r)?;
    let summary: serde_json::Map<String, Value> = r
        .components
        .iter()
        .map(|x| {
            let kernel: Vec<String> = x.kernel.iter().map(u64::to_string).collect();
            (format!("kernel {{{}}}", kernel.join(", ")), json!(x.multiplicity))
        })
        .collect();
    result["aut_multiplicities"] = Value::Object(summary);
    s.emit(&a.common, "autmult", config, pass, result)
}

fn eval(a: EvalArgs) -> Result<Outcome> {
    let s = Session::open(&a.common)?;
    let (c, g, t) = (s.group(&a.c)?, s.group(&a.g)?, s.group(&a.t)?);
    s.check_product(&[&g, &c, &t])?;
    s.check_product(&[&c, &c, &t])?;
    let text = std::fs::read_to_string(&a.module).with_context(|| format!("cannot read {}", a.module.display()))?;
    let data = ModuleData::from_json(&serde_json::from_str(&text).context("module file is not valid JSON")?)?;
    let r = eval_simple_quotient(&c, &data, &g, &t, a.field)?;
    let config = json!({"C": c.name(), "G": g.name(), "T": t.name(), "field": a.field});
    s.emit(&a.common, "eval", config, true, serde_json::to_value(r)?)
}

/// Writes to standard output; a closed pipe is not an error.
fn print_stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn load_all(descriptors: &[GroupDescriptor], cap: usize) -> Result<()> {
    for d in descriptors {
        let g = d.load(cap).with_context(|| format!("entry {}", d.name()))?;
        g.check_associative().with_context(|| format!("entry {}", d.name()))?;
    }
    Ok(())
}

fn catalog_command(action: CatalogAction, common: &Common) -> Result<Outcome> {
    match action {
        CatalogAction::List => {
            let s = Session::open(common)?;
            let text: String = s.catalog.groups().iter().map(|g| format!("{}\t{}\n", g.name(), g.order())).collect();
            print_stdout(&text)?;
        }
        CatalogAction::Add { file } => {
            let path = common
                .catalog
                .as_ref()
                .ok_or_else(|| anyhow!("catalog add needs --catalog or BISETLAB_CATALOG"))?;
            let new = read_descriptors(&file)?;
            load_all(&new, common.cap)?;
            let mut entries = if path.exists() { read_descriptors(path)? } else { Vec::new() };
            entries.extend(new);
            // rejects names that clash with different tables
            Catalog::with_entries(&entries, common.cap)?;
            let text = serde_json::to_string_pretty(&entries)? + "\n";
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            println!("{} entries in {}", entries.len(), path.display());
        }
        CatalogAction::Validate { file } => {
            let path = file
                .or_else(|| common.catalog.clone())
                .ok_or_else(|| anyhow!("nothing to validate: give a file or --catalog"))?;
            let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read {}", path.display()))?;
            let entries = parse_descriptors(&text)?;
            load_all(&entries, common.cap)?;
            Catalog::with_entries(&entries, common.cap)?;
            println!("{}: {} valid entries", path.display(), entries.len());
        }
    }
    Ok(Outcome { pass: true })
}
