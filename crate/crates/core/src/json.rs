//! JSON input and output for every structure the library handles.
//!
//! Elements are referred to by name everywhere. Action triples always put
//! the scalar first: `[q, m, q.m]` for left actions and `[q, m, m.q]` for
//! right actions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Limits, Result};
use crate::homs::{Hom, HomKind};
use crate::iso::QuantaleIso;
use crate::lattice::{validate_suplattice, Elem, RawLattice, SupLattice};
use crate::module::{Module, Side};
use crate::morita::{MoritaCertificate, TensorIsoTables};
use crate::quantale::{powerset_quantale, validate_quantale, Monoid, Quantale};
use crate::tensor::TensorProduct;

/// Schema tag written into every top-level JSON document.
pub const SCHEMA: &str = "qw/v1";

/// Anything a structure file can hold.
#[derive(Debug, Clone)]
pub enum Structure {
    Lattice(Arc<SupLattice>),
    Quantale(Arc<Quantale>),
    Module(Module),
    Hom(Hom),
    Certificate(Box<MoritaCertificate>),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Lattice(_) => "lattice",
            Structure::Quantale(_) => "quantale",
            Structure::Module(m) if m.left().is_some() && m.right().is_some() => "bimodule",
            Structure::Module(m) if m.left().is_none() && m.right().is_none() => "lattice",
            Structure::Module(_) => "module",
            Structure::Hom(_) => "hom",
            Structure::Certificate(_) => "certificate",
        }
    }

    pub fn into_quantale(self) -> Result<Arc<Quantale>> {
        match self {
            Structure::Quantale(q) => Ok(q),
            other => Err(Error::MissingAction(format!(
                "expected a quantale, found a {}",
                other.kind()
            ))),
        }
    }

    /// Modules as they are; lattices as bare sup-lattices; quantales as
    /// their regular bimodule.
    pub fn into_module(self) -> Result<Module> {
        match self {
            Structure::Module(m) => Ok(m),
            Structure::Lattice(l) => Ok(Module::plain_lattice(l)),
            Structure::Quantale(q) => Ok(Module::regular(&q)),
            other => Err(Error::MissingAction(format!(
                "expected a module, found a {}",
                other.kind()
            ))),
        }
    }
}

/// Looks up a name used as a reference inside a file (a ring or a module).
pub type Resolver<'a> = &'a dyn Fn(&str) -> Result<Structure>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<(String, String, String)>>,
}

#[derive(Debug, Clone, Deserialize)]
struct QuantaleFile {
    lattice: LatticeJson,
    mul: Vec<(String, String, String)>,
    unit: String,
}

#[derive(Debug, Clone, Deserialize)]
struct MonoidFile {
    set: Vec<String>,
    mul: Vec<(String, String, String)>,
    unit: String,
}

#[derive(Debug, Clone, Deserialize)]
struct ModuleFile {
    ring: Value,
    side: String,
    lattice: LatticeJson,
    act: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
struct BimoduleFile {
    left_ring: Value,
    right_ring: Value,
    lattice: LatticeJson,
    lact: Vec<(String, String, String)>,
    ract: Vec<(String, String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
struct HomFile {
    src: Value,
    dst: Value,
    map: Vec<(String, String)>,
    #[serde(default)]
    preserves: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TensorIsoJson {
    carrier: Vec<Vec<(Elem, Elem)>>,
    fwd: Vec<Elem>,
    bwd: Vec<Elem>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IsoJson {
    fwd: Vec<Elem>,
    bwd: Vec<Elem>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CertificateFile {
    q: Value,
    r: Value,
    module: Value,
    end: Vec<Vec<String>>,
    end_iso: IsoJson,
    dual: Vec<Vec<String>>,
    alpha: TensorIsoJson,
    beta: TensorIsoJson,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.len(), |p| before.len() - p - 1)
        + 1;
    (line, column)
}

/// Position of the first quoted `name` after the key `context`, falling
/// back to anywhere in the text.
fn locate(text: &str, context: &str, name: &str) -> (usize, usize) {
    let needle = format!("\"{name}\"");
    let start = text.find(&format!("\"{context}\"")).unwrap_or(0);
    let at = text[start..]
        .find(&needle)
        .map(|p| p + start)
        .or_else(|| text.find(&needle));
    at.map_or((1, 1), |p| line_col(text, p + 1))
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Turns unknown-name errors into parse errors pointing into the text.
fn positioned(text: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::UnknownElement { name, context } => {
            let (line, column) = locate(text, &context, &name);
            Error::Parse {
                line,
                column,
                message: format!("unknown element {name:?} in {context}"),
            }
        }
        other => other,
    }
}

fn typed<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(syntax)
}

fn typed_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

fn raw_lattice(l: &LatticeJson) -> Result<RawLattice> {
    match (&l.leq, &l.join) {
        (Some(leq), None) => Ok(RawLattice::Order {
            elements: l.elements.clone(),
            leq: leq.clone(),
        }),
        (None, Some(join)) => Ok(RawLattice::Joins {
            elements: l.elements.clone(),
            join: join.clone(),
        }),
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "a lattice needs exactly one of \"leq\" and \"join\"".into(),
        }),
    }
}

fn build_lattice(l: &LatticeJson) -> Result<Arc<SupLattice>> {
    Ok(Arc::new(validate_suplattice(&raw_lattice(l)?)?))
}

fn build_quantale(f: &QuantaleFile) -> Result<Quantale> {
    let lat = build_lattice(&f.lattice)?;
    let n = lat.len();
    let mut mul = vec![usize::MAX; n * n];
    for (a, b, c) in &f.mul {
        let (a, b, c) = (
            lat.lookup(a, "mul")?,
            lat.lookup(b, "mul")?,
            lat.lookup(c, "mul")?,
        );
        mul[a * n + b] = c;
    }
    if let Some(p) = mul.iter().position(|&c| c == usize::MAX) {
        return Err(Error::IncompleteTable(format!(
            "mul has no entry for ({}, {})",
            lat.name(p / n),
            lat.name(p % n)
        )));
    }
    let unit = lat.lookup(&f.unit, "unit")?;
    validate_quantale(lat, mul, unit)
}

fn build_monoid(f: &MonoidFile, limits: &Limits) -> Result<Quantale> {
    let k = f.set.len();
    let index = |s: &str| {
        f.set
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| Error::UnknownElement {
                name: s.into(),
                context: "mul".into(),
            })
    };
    let mut mul = vec![usize::MAX; k * k];
    for (a, b, c) in &f.mul {
        mul[index(a)? * k + index(b)?] = index(c)?;
    }
    if mul.contains(&usize::MAX) {
        return Err(Error::MonoidInvalid(
            "incomplete multiplication table".into(),
        ));
    }
    let unit = f
        .set
        .iter()
        .position(|x| *x == f.unit)
        .ok_or_else(|| Error::UnknownElement {
            name: f.unit.clone(),
            context: "unit".into(),
        })?;
    powerset_quantale(
        &Monoid {
            elements: f.set.clone(),
            mul,
            unit,
        },
        limits,
    )
}

fn ring_ref(v: &Value, resolve: Resolver, limits: &Limits) -> Result<Arc<Quantale>> {
    match v {
        Value::String(name) => {
            resolve(name.strip_prefix("catalog:").unwrap_or(name))?.into_quantale()
        }
        other => parse_value(other, resolve, limits)?.into_quantale(),
    }
}

fn module_ref(v: &Value, resolve: Resolver, limits: &Limits) -> Result<Module> {
    match v {
        Value::String(name) => {
            resolve(name.strip_prefix("catalog:").unwrap_or(name))?.into_module()
        }
        other => parse_value(other, resolve, limits)?.into_module(),
    }
}

fn action_table(
    ring: &Quantale,
    lat: &SupLattice,
    triples: &[(String, String, String)],
    context: &str,
) -> Result<Vec<Elem>> {
    let (k, n) = (ring.len(), lat.len());
    let mut table = vec![usize::MAX; k * n];
    for (a, x, y) in triples {
        let a = ring.lattice().lookup(a, context)?;
        let x = lat.lookup(x, context)?;
        table[a * n + x] = lat.lookup(y, context)?;
    }
    if let Some(p) = table.iter().position(|&c| c == usize::MAX) {
        return Err(Error::IncompleteTable(format!(
            "{context} has no entry for ({}, {})",
            ring.lattice().name(p / n),
            lat.name(p % n)
        )));
    }
    Ok(table)
}

fn build_module(f: &ModuleFile, resolve: Resolver, limits: &Limits) -> Result<Module> {
    let ring = ring_ref(&f.ring, resolve, limits)?;
    let lat = build_lattice(&f.lattice)?;
    let table = action_table(&ring, &lat, &f.act, "act")?;
    match f.side.as_str() {
        "left" => Module::new(lat, Some((ring, table)), None),
        "right" => Module::new(lat, None, Some((ring, table))),
        other => Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("side must be \"left\" or \"right\", not {other:?}"),
        }),
    }
}

fn build_bimodule(f: &BimoduleFile, resolve: Resolver, limits: &Limits) -> Result<Module> {
    let left = ring_ref(&f.left_ring, resolve, limits)?;
    let right = ring_ref(&f.right_ring, resolve, limits)?;
    let lat = build_lattice(&f.lattice)?;
    let lact = action_table(&left, &lat, &f.lact, "lact")?;
    let ract = action_table(&right, &lat, &f.ract, "ract")?;
    Module::new(lat, Some((left, lact)), Some((right, ract)))
}

fn parse_kind(kind: &str) -> Result<HomKind> {
    Ok(match kind {
        "lattice" => HomKind::Lattice,
        "left" => HomKind::Left,
        "right" => HomKind::Right,
        "both" => HomKind::Both,
        other => {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("unknown hom kind {other:?}"),
            })
        }
    })
}

fn build_hom(f: &HomFile, resolve: Resolver, limits: &Limits) -> Result<Hom> {
    let src = module_ref(&f.src, resolve, limits)?;
    let dst = module_ref(&f.dst, resolve, limits)?;
    let kind = match &f.preserves {
        Some(k) => parse_kind(k)?,
        None => HomKind::infer(&src, &dst),
    };
    let mut table = vec![usize::MAX; src.len()];
    for (x, y) in &f.map {
        table[src.lattice().lookup(x, "map")?] = dst.lattice().lookup(y, "map")?;
    }
    if let Some(x) = table.iter().position(|&y| y == usize::MAX) {
        return Err(Error::IncompleteTable(format!(
            "map has no image for {}",
            src.lattice().name(x)
        )));
    }
    Hom::new(src, dst, kind, table)
}

fn build_certificate(
    f: &CertificateFile,
    resolve: Resolver,
    limits: &Limits,
) -> Result<MoritaCertificate> {
    let q = ring_ref(&f.q, resolve, limits)?;
    let r = ring_ref(&f.r, resolve, limits)?;
    let mut module = module_ref(&f.module, resolve, limits)?;
    // share the ring object with q
    if let Some(ring) = module.left_ring() {
        if **ring == *q {
            let table = module.left().unwrap().table().to_vec();
            module = Module::new(module.lattice_arc().clone(), Some((q.clone(), table)), None)?;
        }
    }
    let by_name = |rows: &[Vec<String>], lat: &SupLattice, what: &str| -> Result<Vec<Vec<Elem>>> {
        rows.iter()
            .map(|row| row.iter().map(|s| lat.lookup(s, what)).collect())
            .collect()
    };
    let tables = |t: &TensorIsoJson| TensorIsoTables {
        carrier: t.carrier.clone(),
        fwd: t.fwd.clone(),
        bwd: t.bwd.clone(),
    };
    Ok(MoritaCertificate {
        end_tables: by_name(&f.end, module.lattice(), "end")?,
        dual_tables: by_name(&f.dual, q.lattice(), "dual")?,
        q,
        r,
        module,
        end_iso: QuantaleIso {
            fwd: f.end_iso.fwd.clone(),
            bwd: f.end_iso.bwd.clone(),
        },
        alpha: tables(&f.alpha),
        beta: tables(&f.beta),
    })
}

fn kind_of(v: &Value) -> Result<String> {
    match v.get("kind").and_then(Value::as_str) {
        Some(k) => Ok(k.to_string()),
        None if v.get("elements").is_some() => Ok("lattice".into()),
        None => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "missing \"kind\" field".into(),
        }),
    }
}

fn dispatch(
    kind: &str,
    typed_of: &dyn Fn() -> Result<Value>,
    resolve: Resolver,
    limits: &Limits,
) -> Result<Structure> {
    let v = typed_of()?;
    Ok(match kind {
        "lattice" => Structure::Lattice(build_lattice(&typed_value::<LatticeJson>(&v)?)?),
        "quantale" => Structure::Quantale(Arc::new(build_quantale(&typed_value(&v)?)?)),
        "monoid" => Structure::Quantale(Arc::new(build_monoid(&typed_value(&v)?, limits)?)),
        "module" => Structure::Module(build_module(&typed_value(&v)?, resolve, limits)?),
        "bimodule" => Structure::Module(build_bimodule(&typed_value(&v)?, resolve, limits)?),
        "hom" => Structure::Hom(build_hom(&typed_value(&v)?, resolve, limits)?),
        "certificate" => Structure::Certificate(Box::new(build_certificate(
            &typed_value(&v)?,
            resolve,
            limits,
        )?)),
        other => {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("unknown kind {other:?}"),
            })
        }
    })
}

/// Parses and validates a structure document. Syntax and shape errors, and
/// references to undeclared element names, come back as [`Error::Parse`]
/// with a line and column; axiom failures come back as their own errors.
pub fn parse_structure(text: &str, resolve: Resolver, limits: &Limits) -> Result<Structure> {
    let v: Value = serde_json::from_str(text).map_err(syntax)?;
    let kind = kind_of(&v)?;
    // shape check against the text so that errors carry positions
    let check_shape = || -> Result<()> {
        match kind.as_str() {
            "lattice" => typed::<LatticeJson>(text).map(drop),
            "quantale" => typed::<QuantaleFile>(text).map(drop),
            "monoid" => typed::<MonoidFile>(text).map(drop),
            "module" => typed::<ModuleFile>(text).map(drop),
            "bimodule" => typed::<BimoduleFile>(text).map(drop),
            "hom" => typed::<HomFile>(text).map(drop),
            "certificate" => typed::<CertificateFile>(text).map(drop),
            _ => Ok(()),
        }
    };
    check_shape()?;
    dispatch(&kind, &|| Ok(v.clone()), resolve, limits).map_err(positioned(text))
}

/// Parses an already decoded JSON value (used for inline references).
pub fn parse_value(v: &Value, resolve: Resolver, limits: &Limits) -> Result<Structure> {
    let kind = kind_of(v)?;
    dispatch(&kind, &|| Ok(v.clone()), resolve, limits)
}

pub fn lattice_json(l: &SupLattice) -> Value {
    let leq: Vec<[&str; 2]> = l
        .covers()
        .into_iter()
        .map(|(a, b)| [l.name(a), l.name(b)])
        .collect();
    json!({ "elements": l.names(), "leq": leq })
}

pub fn quantale_json(q: &Quantale) -> Value {
    let l = q.lattice();
    let mut mul = Vec::with_capacity(q.len() * q.len());
    for a in 0..q.len() {
        for b in 0..q.len() {
            mul.push([l.name(a), l.name(b), l.name(q.mul(a, b))]);
        }
    }
    json!({
        "kind": "quantale",
        "lattice": lattice_json(l),
        "mul": mul,
        "unit": l.name(q.unit()),
    })
}

fn action_json(m: &Module, side: Side) -> Vec<[String; 3]> {
    let l = m.lattice();
    let ring = match side {
        Side::Left => m.left_ring(),
        Side::Right => m.right_ring(),
    }
    .unwrap();
    let mut out = Vec::with_capacity(ring.len() * m.len());
    for a in 0..ring.len() {
        for x in 0..m.len() {
            let y = match side {
                Side::Left => m.act_left(a, x),
                Side::Right => m.act_right(x, a),
            };
            out.push([
                ring.lattice().name(a).to_string(),
                l.name(x).to_string(),
                l.name(y).to_string(),
            ]);
        }
    }
    out
}

pub fn module_json(m: &Module) -> Value {
    let lat = lattice_json(m.lattice());
    match (m.left_ring(), m.right_ring()) {
        (None, None) => {
            let mut v = lat;
            v["kind"] = json!("lattice");
            v
        }
        (Some(q), None) => json!({
            "kind": "module",
            "ring": quantale_json(q),
            "side": "left",
            "lattice": lat,
            "act": action_json(m, Side::Left),
        }),
        (None, Some(q)) => json!({
            "kind": "module",
            "ring": quantale_json(q),
            "side": "right",
            "lattice": lat,
            "act": action_json(m, Side::Right),
        }),
        (Some(l), Some(r)) => json!({
            "kind": "bimodule",
            "leftRing": quantale_json(l),
            "rightRing": quantale_json(r),
            "lattice": lat,
            "lact": action_json(m, Side::Left),
            "ract": action_json(m, Side::Right),
        }),
    }
}

pub fn hom_json(h: &Hom) -> Value {
    let (s, d) = (h.src().lattice(), h.dst().lattice());
    let map: Vec<[&str; 2]> = (0..s.len())
        .map(|x| [s.name(x), d.name(h.apply(x))])
        .collect();
    json!({
        "kind": "hom",
        "preserves": h.kind().as_str(),
        "src": module_json(h.src()),
        "dst": module_json(h.dst()),
        "map": map,
    })
}

pub fn tensor_json(t: &TensorProduct) -> Value {
    let l = t.lattice();
    let (m, n) = (t.left_factor().lattice(), t.right_factor().lattice());
    let mut elementary = Vec::new();
    for x in 0..m.len() {
        for y in 0..n.len() {
            elementary.push([m.name(x), n.name(y), l.name(t.elementary(x, y))]);
        }
    }
    let carrier: Vec<Value> = (0..t.len())
        .map(|i| {
            let pairs: Vec<[&str; 2]> = t
                .pairs(i)
                .into_iter()
                .map(|(x, y)| [m.name(x), n.name(y)])
                .collect();
            json!({ "element": l.name(i), "pairs": pairs })
        })
        .collect();
    json!({
        "kind": "tensor",
        "elements": l.names(),
        "leq": lattice_json(l)["leq"],
        "elementary": elementary,
        "carrier": carrier,
        "module": module_json(&t.module),
    })
}

pub fn certificate_json(c: &MoritaCertificate) -> Value {
    let p = c.module.lattice();
    let q = c.q.lattice();
    let names = |rows: &[Vec<Elem>], l: &SupLattice| -> Vec<Vec<String>> {
        rows.iter()
            .map(|row| row.iter().map(|&x| l.name(x).to_string()).collect())
            .collect()
    };
    let tables = |t: &TensorIsoTables| {
        serde_json::to_value(TensorIsoJson {
            carrier: t.carrier.clone(),
            fwd: t.fwd.clone(),
            bwd: t.bwd.clone(),
        })
        .unwrap()
    };
    json!({
        "kind": "certificate",
        "q": quantale_json(&c.q),
        "r": quantale_json(&c.r),
        "module": module_json(&c.module),
        "end": names(&c.end_tables, p),
        "endIso": { "fwd": c.end_iso.fwd, "bwd": c.end_iso.bwd },
        "dual": names(&c.dual_tables, q),
        "alpha": tables(&c.alpha),
        "beta": tables(&c.beta),
    })
}

pub fn structure_json(s: &Structure) -> Value {
    match s {
        Structure::Lattice(l) => {
            let mut v = lattice_json(l);
            v["kind"] = json!("lattice");
            v
        }
        Structure::Quantale(q) => quantale_json(q),
        Structure::Module(m) => module_json(m),
        Structure::Hom(h) => hom_json(h),
        Structure::Certificate(c) => certificate_json(c),
    }
}

/// Indented JSON with arrays of scalars kept on one line.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    pretty_into(v, 0, &mut out);
    out.push('\n');
    out
}

fn pretty_into(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    let flat = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_));
    match v {
        Value::Array(xs)
            if xs
                .iter()
                .all(|x| flat(x) || x.as_array().is_some_and(|y| y.iter().all(flat))) =>
        {
            let items: Vec<String> = xs
                .iter()
                .map(|x| match x.as_array() {
                    Some(ys) => {
                        let inner: Vec<String> = ys
                            .iter()
                            .map(|y| serde_json::to_string(y).unwrap())
                            .collect();
                        format!("[{}]", inner.join(", "))
                    }
                    None => serde_json::to_string(x).unwrap(),
                })
                .collect();
            out.push_str(&format!("[{}]", items.join(", ")));
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                pretty_into(x, depth + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(o) if o.is_empty() => out.push_str("{}"),
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push_str(": ");
                pretty_into(x, depth + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        other => out.push_str(&serde_json::to_string(other).unwrap()),
    }
}

/// Resolver that knows no names.
pub fn no_names(name: &str) -> Result<Structure> {
    Err(Error::UnknownName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO: &str = r#"{
  "kind": "quantale",
  "lattice": { "elements": ["0", "1"], "leq": [["0", "1"]] },
  "mul": [["0","0","0"], ["0","1","0"], ["1","0","0"], ["1","1","1"]],
  "unit": "1"
}"#;

    fn parse(text: &str) -> Result<Structure> {
        parse_structure(text, &no_names, &Limits::default())
    }

    #[test]
    fn quantale_round_trip() {
        let q = parse(TWO).unwrap().into_quantale().unwrap();
        assert_eq!(q.len(), 2);
        let again = parse(&quantale_json(&q).to_string())
            .unwrap()
            .into_quantale()
            .unwrap();
        assert_eq!(q, again);
    }

    #[test]
    fn unknown_name_in_mul_has_a_position() {
        let bad = TWO.replace(r#"["1","1","1"]"#, r#"["1","x","1"]"#);
        match parse(&bad).unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 4);
                assert!(message.contains("\"x\""), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse("{\n  \"kind\": \"quantale\",\n  \"mul\": [}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = parse(r#"{"kind": "quantale", "unit": "1"}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err:?}");
    }

    #[test]
    fn axiom_failures_are_not_parse_errors() {
        let bad = TWO.replace(r#""unit": "1""#, r#""unit": "0""#);
        assert!(matches!(parse(&bad).unwrap_err(), Error::NotUnital { .. }));
    }

    #[test]
    fn module_with_inline_ring() {
        let text = format!(
            r#"{{"kind": "module", "ring": {TWO}, "side": "left",
                "lattice": {{"elements": ["0", "1"], "join": [["0","0","0"],["0","1","1"],["1","0","1"],["1","1","1"]]}},
                "act": [["0","0","0"],["0","1","0"],["1","0","0"],["1","1","1"]]}}"#
        );
        let m = parse(&text).unwrap().into_module().unwrap();
        assert_eq!(m.len(), 2);
        let again = parse(&module_json(&m).to_string())
            .unwrap()
            .into_module()
            .unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn lattice_needs_one_relation() {
        let err = parse(r#"{"elements": ["0"]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }
}
