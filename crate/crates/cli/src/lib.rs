//! The `qw` command-line workbench.
//!
//! Exit codes: 0 success or a true answer, 1 a false answer (or nothing
//! found within the search bound, or a rejected certificate), 2 invalid
//! input, 3 size cap exceeded, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use quantale_core::catalog;
use quantale_core::json::{
    certificate_json, hom_json, module_json, parse_structure, quantale_json, structure_json,
    tensor_json, to_pretty, Structure, SCHEMA,
};
use quantale_core::{
    dual_module, end_quantale, enumerate_homs, enumerate_homs_of_kind, is_generator,
    is_progenerator, is_projective, is_separator_on, morita_equivalent, tensor_product, trace,
    verify_certificate, Error, Hom, HomKind, Limits, Module, Quantale, SEARCH_DISCLAIMER,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const GRAMMAR: &str = "\
Inputs are JSON files or catalog entries written catalog:NAME.

Examples:
  qw validate catalog:TWO
  qw homs catalog:diamond catalog:chain3 --kind left
  qw tensor catalog:TWO-chain catalog:TWO-chain --ring catalog:TWO --json
  qw check-progenerator --ring catalog:TWO --module catalog:TWO^2
  qw morita catalog:TWO catalog:MAT2 --bound 4 --out cert.json
  qw verify-cert cert.json --family catalog:diamond,catalog:M3
  qw catalog --kind quantale

Exit codes: 0 success/true, 1 false/none within bound/rejected,
2 invalid input, 3 size cap exceeded, 64 usage error.";

#[derive(Debug, Parser)]
#[command(
    name = "qw",
    version,
    about = "Workbench for finite quantales, their modules and Morita equivalence",
    after_help = GRAMMAR
)]
struct Cli {
    /// Largest number of elements of any input-sized structure; derived
    /// structures (hom-sets, tensor products) may have up to cap^2
    #[arg(long, global = true, default_value_t = 16)]
    cap: usize,
    /// Reserved; every computation is deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated modules used for separator and round-trip checks
    #[arg(long, global = true, value_delimiter = ',')]
    family: Vec<String>,
    /// Print a JSON document instead of a report
    #[arg(long, global = true)]
    json: bool,
    /// Write the main artifact (certificate, tensor, quantale, module) here
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Lattice,
    Left,
    Right,
    Both,
}

impl From<KindArg> for HomKind {
    fn from(k: KindArg) -> HomKind {
        match k {
            KindArg::Lattice => HomKind::Lattice,
            KindArg::Left => HomKind::Left,
            KindArg::Right => HomKind::Right,
            KindArg::Both => HomKind::Both,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a structure
    Validate { input: String },
    /// Left and right residual tables of a quantale
    Residuals { quantale: String },
    /// Enumerate homomorphisms between two modules
    Homs {
        src: String,
        dst: String,
        /// Which actions must be preserved (default: all shared ones)
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Endomorphism quantale of a module
    End { module: String },
    /// Dual module Hom(M, Q)
    Dual { module: String },
    /// Tensor product of a right and a left module
    Tensor {
        left: String,
        right: String,
        /// Ring to tensor over; a left module over a commutative ring is
        /// used as a right module when needed
        #[arg(long)]
        ring: Option<String>,
    },
    /// Trace ideal of a left module
    Trace { module: String },
    /// Is the module projective?
    CheckProjective { module: String },
    /// Is the module a generator?
    CheckGenerator { module: String },
    /// Is the module a progenerator?
    CheckProgenerator {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long = "module", value_name = "MODULE")]
        module_flag: Option<String>,
        module: Option<String>,
    },
    /// Bounded search for a Morita equivalence certificate
    Morita {
        q: String,
        r: String,
        /// Largest module size to try
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Re-check a Morita certificate
    VerifyCert { certificate: String },
    /// List catalog entries or print one
    Catalog {
        name: Option<String>,
        #[arg(long)]
        kind: Option<String>,
    },
}

/// What a verb produced: a report, a JSON result, an optional artifact and
/// an exit code.
struct Output {
    code: i32,
    report: String,
    result: Value,
    artifact: Option<Value>,
}

impl Output {
    fn ok(report: String, result: Value) -> Output {
        Output {
            code: EXIT_OK,
            report,
            result,
            artifact: None,
        }
    }

    fn answer(yes: bool, report: String, result: Value) -> Output {
        Output {
            code: if yes { EXIT_OK } else { EXIT_FALSE },
            report,
            result,
            artifact: None,
        }
    }

    fn with_artifact(mut self, v: Value) -> Output {
        self.artifact = Some(v);
        self
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
}

type Res<T> = std::result::Result<T, Failure>;

fn fail<T>(e: Error) -> Res<T> {
    Err(e.into())
}

fn exit_code(e: &Failure) -> i32 {
    match e {
        Failure::Core(Error::SizeCapExceeded { .. }) => EXIT_CAP,
        Failure::Core(Error::CertificateRejected { .. }) => EXIT_FALSE,
        _ => EXIT_INVALID,
    }
}

struct Ctx {
    limits: Limits,
}

impl Ctx {
    fn load(&self, input: &str) -> Res<Structure> {
        if input.starts_with("catalog:") {
            return Ok(catalog::load(input)?);
        }
        let text = std::fs::read_to_string(input).map_err(|source| Failure::Read {
            path: input.to_string(),
            source,
        })?;
        Ok(parse_structure(&text, &catalog::load, &self.limits)?)
    }

    fn quantale(&self, input: &str) -> Res<Arc<Quantale>> {
        Ok(self.load(input)?.into_quantale()?)
    }

    fn module(&self, input: &str) -> Res<Module> {
        Ok(self.load(input)?.into_module()?)
    }

    /// A left module, checked against `ring` when one is given.
    fn left_module(&self, input: &str, ring: Option<&str>) -> Res<Module> {
        let m = self.module(input)?;
        let m = match (m.left().is_some(), m.right_ring()) {
            (true, _) => m.left_view(),
            (false, Some(r)) if r.is_commutative() => m.mirror(),
            _ => return fail(Error::MissingAction(format!("{input} has no left action"))),
        };
        if let Some(ring) = ring {
            let q = self.quantale(ring)?;
            if **m.left_ring().unwrap() != *q {
                return fail(Error::RingMismatch(format!(
                    "{input} is not a module over {ring}"
                )));
            }
        }
        Ok(m)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn names(m: &Module, xs: impl IntoIterator<Item = usize>) -> String {
    let l = m.lattice();
    let v: Vec<&str> = xs.into_iter().map(|x| l.name(x)).collect();
    format!("{{{}}}", v.join(", "))
}

fn map_text(h: &Hom) -> String {
    let (s, d) = (h.src().lattice(), h.dst().lattice());
    let parts: Vec<String> = (0..s.len())
        .map(|x| format!("{} -> {}", s.name(x), d.name(h.apply(x))))
        .collect();
    format!("[{}]", parts.join(", "))
}

fn describe(s: &Structure) -> String {
    match s {
        Structure::Lattice(l) => format!("lattice with {} elements", l.len()),
        Structure::Quantale(q) => format!(
            "quantale with {} elements (commutative: {}, integral: {})",
            q.len(),
            yes(q.is_commutative()),
            yes(q.is_integral())
        ),
        Structure::Module(m) => {
            let side = match (m.left().is_some(), m.right().is_some()) {
                (true, true) => "bimodule",
                (true, false) => "left module",
                (false, true) => "right module",
                (false, false) => "sup-lattice",
            };
            format!("{side} with {} elements", m.len())
        }
        Structure::Hom(h) => format!(
            "{} hom from {} to {} elements",
            h.kind().as_str(),
            h.src().len(),
            h.dst().len()
        ),
        Structure::Certificate(c) => format!(
            "Morita certificate between quantales of sizes {} and {} (P has {} elements)",
            c.q.len(),
            c.r.len(),
            c.module.len()
        ),
    }
}

fn residuals(q: &Quantale) -> (String, Value) {
    let l = q.lattice();
    let n = q.len();
    let width = l
        .names()
        .iter()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1)
        .max(3);
    let grid = |title: &str, f: &dyn Fn(usize, usize) -> usize| {
        let mut s = format!("{title}\n{:>width$}", "");
        for b in 0..n {
            s += &format!(" {:>width$}", l.name(b));
        }
        s.push('\n');
        for a in 0..n {
            s += &format!("{:>width$}", l.name(a));
            for b in 0..n {
                s += &format!(" {:>width$}", l.name(f(a, b)));
            }
            s.push('\n');
        }
        s
    };
    let mut text = grid("left residual b\\a (row b, column a):", &|b, a| {
        q.left_residual(b, a)
    });
    text += &grid("right residual a/b (row a, column b):", &|a, b| {
        q.right_residual(a, b)
    });
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in 0..n {
        for b in 0..n {
            left.push([l.name(b), l.name(a), l.name(q.left_residual(b, a))]);
            right.push([l.name(a), l.name(b), l.name(q.right_residual(a, b))]);
        }
    }
    (text, json!({ "left": left, "right": right }))
}

fn round_trip_family(
    ctx: &Ctx,
    q: &Arc<Quantale>,
    family: &[String],
) -> Res<Vec<(String, Module)>> {
    let as_right = |m: Module| -> Option<Module> {
        if m.right_ring().is_some_and(|r| **r == **q) {
            Some(m.right_view())
        } else if q.is_commutative() && m.left_ring().is_some_and(|r| **r == **q) {
            Some(m.left_view().mirror())
        } else {
            None
        }
    };
    if family.is_empty() {
        let mut out = vec![("regular".to_string(), Module::right_regular(q))];
        for name in catalog::list(None) {
            if let Ok(Structure::Module(m)) = catalog::load(name) {
                if let Some(x) = as_right(m) {
                    out.push((name.to_string(), x));
                }
            }
        }
        return Ok(out);
    }
    family
        .iter()
        .map(|f| {
            let m = ctx.module(f)?;
            as_right(m).map(|x| (f.clone(), x)).ok_or_else(|| {
                Error::RingMismatch(format!("{f} is not a right module over Q")).into()
            })
        })
        .collect()
}

fn separator_family(ctx: &Ctx, family: &[String], ring: &Quantale) -> Res<Vec<(Hom, Hom)>> {
    let mods = family
        .iter()
        .map(|f| ctx.left_module(f, None))
        .collect::<Res<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for a in &mods {
        for b in &mods {
            if **a.left_ring().unwrap() != *ring || **b.left_ring().unwrap() != *ring {
                return fail(Error::RingMismatch(
                    "family modules must share the ring".into(),
                ));
            }
            let homs: Vec<Hom> = enumerate_homs_of_kind(a, b, HomKind::Left, &ctx.limits)?
                .homs()
                .collect();
            for (i, f) in homs.iter().enumerate() {
                for g in &homs[i + 1..] {
                    pairs.push((f.clone(), g.clone()));
                }
            }
        }
    }
    Ok(pairs)
}

fn execute(cli: &Cli) -> Res<Output> {
    let ctx = Ctx {
        limits: Limits::with_cap(cli.cap),
    };
    let l = &ctx.limits;
    Ok(match &cli.command {
        Command::Validate { input } => {
            let s = ctx.load(input)?;
            let v = structure_json(&s);
            Output::ok(format!("valid: {}\n", describe(&s)), v.clone()).with_artifact(v)
        }
        Command::Residuals { quantale } => {
            let q = ctx.quantale(quantale)?;
            let (text, v) = residuals(&q);
            Output::ok(text, v)
        }
        Command::Homs { src, dst, kind } => {
            let (m, n) = (ctx.module(src)?, ctx.module(dst)?);
            let homs = match kind {
                Some(k) => enumerate_homs_of_kind(&m, &n, (*k).into(), l)?,
                None => enumerate_homs(&m, &n, l)?,
            };
            let mut text = format!(
                "{} homs preserving {} structure\n",
                homs.len(),
                homs.kind().as_str()
            );
            let mut maps = Vec::new();
            for h in homs.homs() {
                text += &map_text(&h);
                text.push('\n');
                maps.push(hom_json(&h)["map"].clone());
            }
            Output::ok(
                text,
                json!({ "count": homs.len(), "preserves": homs.kind().as_str(), "maps": maps }),
            )
        }
        Command::End { module } => {
            let m = ctx.module(module)?;
            let end = end_quantale(&m, l)?;
            let q = &end.quantale;
            let text = format!(
                "End(M): {} elements, commutative: {}, integral: {}, unit {}\nelements: {}\n",
                q.len(),
                yes(q.is_commutative()),
                yes(q.is_integral()),
                q.lattice().name(q.unit()),
                q.lattice().names().join(" ")
            );
            let v = quantale_json(q);
            Output::ok(text, v.clone()).with_artifact(v)
        }
        Command::Dual { module } => {
            let m = ctx.left_module(module, None)?;
            let d = dual_module(&m, l)?;
            let text = format!(
                "M*: {} elements, an End(M)-Q bimodule (End(M) has {} elements)\nelements: {}\n",
                d.module.len(),
                d.end.quantale.len(),
                d.module.lattice().names().join(" ")
            );
            let v = module_json(&d.module);
            Output::ok(text, v.clone()).with_artifact(v)
        }
        Command::Tensor { left, right, ring } => {
            let ring = ring.as_deref().map(|r| ctx.quantale(r)).transpose()?;
            let m = ctx.module(left)?;
            let m = if m.right().is_some() {
                m
            } else if m.left_ring().is_some_and(|q| q.is_commutative()) {
                m.mirror()
            } else {
                return fail(Error::MissingAction(format!("{left} has no right action")));
            };
            let n = ctx.module(right)?;
            if n.left().is_none() {
                return fail(Error::MissingAction(format!("{right} has no left action")));
            }
            if let Some(q) = &ring {
                if **m.right_ring().unwrap() != **q || **n.left_ring().unwrap() != **q {
                    return fail(Error::RingMismatch(
                        "factors are not modules over the ring".into(),
                    ));
                }
            }
            let t = tensor_product(&m, &n, l)?;
            let mut text = format!("M (x) N: {} elements\n", t.len());
            for i in 0..t.len() {
                text += &format!("{}: {} pairs\n", t.lattice().name(i), t.pairs(i).len());
            }
            let v = tensor_json(&t);
            Output::ok(text, v.clone()).with_artifact(v)
        }
        Command::Trace { module } => {
            let m = ctx.left_module(module, None)?;
            let tr = trace(&m, l)?;
            let q = m.left_ring().unwrap();
            let reg = Module::regular(q);
            let text = format!(
                "trace(M) = {} ({} of {} elements)\ngenerator: {} (trace(M) {} Q)\n",
                names(&reg, tr.elements()),
                tr.len(),
                q.len(),
                yes(tr.is_everything()),
                if tr.is_everything() { "=" } else { "!=" }
            );
            let rl = reg.lattice();
            let elems: Vec<&str> = tr.elements().into_iter().map(|x| rl.name(x)).collect();
            Output::ok(
                text,
                json!({ "trace": elems, "generator": tr.is_everything() }),
            )
        }
        Command::CheckProjective { module } => {
            let m = ctx.left_module(module, None)?;
            let p = is_projective(&m, l)?;
            let text = format!(
                "projective: {} (beta: M* (x)_Q M -> End(M) is {}onto)\n",
                yes(p),
                if p { "" } else { "not " }
            );
            Output::answer(
                p,
                text,
                json!({ "projective": p, "criterion": "beta surjective" }),
            )
        }
        Command::CheckGenerator { module } => {
            let m = ctx.left_module(module, None)?;
            let g = is_generator(&m, l)?;
            let mut text = format!(
                "generator: {} (trace(M) {} Q)\n",
                yes(g),
                if g { "=" } else { "!=" }
            );
            let mut result = json!({ "generator": g, "criterion": "trace(M) = Q" });
            if !cli.family.is_empty() {
                let pairs = separator_family(&ctx, &cli.family, m.left_ring().unwrap())?;
                let s = is_separator_on(&m, &pairs, l)?;
                text += &format!(
                    "separator on the family: {} ({} pairs of distinct parallel homs)\n",
                    yes(s),
                    pairs.len()
                );
                result["separator_on_family"] = json!(s);
            }
            Output::answer(g, text, result)
        }
        Command::CheckProgenerator {
            ring,
            module_flag,
            module,
        } => {
            let input = module_flag
                .as_ref()
                .or(module.as_ref())
                .ok_or_else(|| Error::MissingAction("no module given".into()))?;
            let m = ctx.left_module(input, ring.as_deref())?;
            let r = is_progenerator(&m, l)?;
            let text =
                format!(
                "progenerator: {} (alpha: M (x)_E M* -> Q is {}, beta: M* (x)_Q M -> E is {})\n\
                 generator: {} (trace(M) {} Q)\nprojective: {} (beta {}onto)\n",
                yes(r.progenerator),
                if r.alpha_surjective && r.alpha_injective { "bijective" } else { "not bijective" },
                if r.beta_surjective && r.beta_injective { "bijective" } else { "not bijective" },
                yes(r.generator),
                if r.generator { "=" } else { "!=" },
                yes(r.projective),
                if r.projective { "" } else { "not " },
            );
            Output::answer(
                r.progenerator,
                text,
                json!({
                    "progenerator": r.progenerator,
                    "generator": r.generator,
                    "projective": r.projective,
                    "alpha": { "surjective": r.alpha_surjective, "injective": r.alpha_injective },
                    "beta": { "surjective": r.beta_surjective, "injective": r.beta_injective },
                }),
            )
        }
        Command::Morita { q, r, bound } => {
            let (qq, rr) = (ctx.quantale(q)?, ctx.quantale(r)?);
            let s = morita_equivalent(&qq, &rr, *bound, &[], l)?;
            match s.certificate {
                Some(c) => {
                    let text = format!(
                        "certificate found: P has {} elements ({}), End(P) = R, alpha and beta bijective\n\
                         {} candidate modules within bound {}\n",
                        c.module.len(),
                        c.module.lattice().names().join(" "),
                        s.candidates,
                        bound
                    );
                    let v = certificate_json(&c);
                    Output::ok(
                        text,
                        json!({ "found": true, "bound": bound, "candidates": s.candidates, "certificate": v }),
                    )
                    .with_artifact(v)
                }
                None => Output::answer(
                    false,
                    format!(
                        "none within bound {bound} ({} candidate modules)\nnote: {SEARCH_DISCLAIMER}\n",
                        s.candidates
                    ),
                    json!({ "found": false, "bound": bound, "candidates": s.candidates, "note": SEARCH_DISCLAIMER }),
                ),
            }
        }
        Command::VerifyCert { certificate } => {
            let c = match ctx.load(certificate)? {
                Structure::Certificate(c) => c,
                other => {
                    return fail(Error::MissingAction(format!(
                        "expected a certificate, found a {}",
                        other.kind()
                    )))
                }
            };
            let family = round_trip_family(&ctx, &c.q, &cli.family)?;
            let report = verify_certificate(&c.q, &c.r, &c, &family, l)?;
            let names: Vec<&str> = report.round_trips.iter().map(|(n, _)| n.as_str()).collect();
            let text = format!(
                "certificate accepted: End(P) = R, alpha and beta bijective\nround trips checked on: {}\n",
                names.join(", ")
            );
            Output::ok(text, json!({ "accepted": true, "round_trips": names }))
        }
        Command::Catalog { name, kind } => match name {
            Some(n) => {
                let e = catalog::entry(n)?;
                let v: Value = serde_json::from_str(e.payload).expect("catalog file is JSON");
                Output::ok(e.payload.to_string(), v)
            }
            None => {
                let entries: Vec<_> = catalog::entries()
                    .iter()
                    .filter(|e| kind.as_deref().is_none_or(|k| e.kind == k))
                    .collect();
                let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
                let mut text = String::new();
                for e in &entries {
                    text += &format!("{:width$}  {:8}  {}\n", e.name, e.kind, e.note);
                }
                let list: Vec<Value> = entries
                    .iter()
                    .map(|e| json!({ "name": e.name, "kind": e.kind, "note": e.note }))
                    .collect();
                Output::ok(text, Value::Array(list))
            }
        },
    })
}

fn verb(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Residuals { .. } => "residuals",
        Command::Homs { .. } => "homs",
        Command::End { .. } => "end",
        Command::Dual { .. } => "dual",
        Command::Tensor { .. } => "tensor",
        Command::Trace { .. } => "trace",
        Command::CheckProjective { .. } => "check-projective",
        Command::CheckGenerator { .. } => "check-generator",
        Command::CheckProgenerator { .. } => "check-progenerator",
        Command::Morita { .. } => "morita",
        Command::VerifyCert { .. } => "verify-cert",
        Command::Catalog { .. } => "catalog",
    }
}

/// Runs one command line (including the program name) and returns the exit
/// code. Reports go to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let name = verb(&cli.command);
    match execute(&cli) {
        Ok(out) => {
            if let (Some(path), Some(artifact)) = (&cli.out, &out.artifact) {
                if let Err(e) = std::fs::write(path, to_pretty(artifact)) {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    return EXIT_INVALID;
                }
            }
            let _ = if cli.json {
                let doc = json!({ "schema": SCHEMA, "verb": name, "result": out.result });
                write!(stdout, "{}", to_pretty(&doc))
            } else {
                write!(stdout, "{}", out.report)
            };
            out.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let doc = json!({
                    "schema": SCHEMA,
                    "verb": name,
                    "error": { "exit": code, "message": e.to_string() },
                });
                let _ = write!(stdout, "{}", to_pretty(&doc));
            }
            let _ = writeln!(stderr, "error: {e}");
            code
        }
    }
}
