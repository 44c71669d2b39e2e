//! Regenerates the catalog data files in `data/`.
//!
//! Run with `cargo run -p quantale-core --example gen_catalog`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use quantale_core::json::{lattice_json, module_json, quantale_json, to_pretty};
use quantale_core::{
    dual_module, end_quantale, free_module, validate_quantale, Limits, Module, Quantale, SupLattice,
};
use serde_json::{json, Value};

fn chain(names: &[&str]) -> Arc<SupLattice> {
    Arc::new(
        SupLattice::from_order(names.iter().map(|s| s.to_string()).collect(), |a, b| a <= b)
            .unwrap(),
    )
}

/// Bottom `0`, top `1`, pairwise incomparable atoms in between.
fn atoms(k: usize) -> Arc<SupLattice> {
    let mut names = vec!["0".to_string()];
    names.extend((0..k).map(|i| ((b'a' + i as u8) as char).to_string()));
    names.push("1".into());
    let top = k + 1;
    Arc::new(SupLattice::from_order(names, |a, b| a == b || a == 0 || b == top).unwrap())
}

fn n5() -> Arc<SupLattice> {
    // 0 < a < b < 1, 0 < c < 1
    let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    let rel = [(1, 2)];
    Arc::new(
        SupLattice::from_order(names, |x, y| {
            x == y || x == 0 || y == 4 || rel.contains(&(x, y))
        })
        .unwrap(),
    )
}

fn three_chain(square: usize) -> Quantale {
    // 0 < a < 1 with unit 1 and a.a = square
    let lat = chain(&["0", "a", "1"]);
    let mul = vec![0, 0, 0, 0, square, 1, 0, 1, 2];
    validate_quantale(lat, mul, 2).unwrap()
}

fn two_module(two: &Arc<Quantale>, lat: Arc<SupLattice>) -> Module {
    let n = lat.len();
    let mut table = vec![lat.bot(); n];
    table.extend(0..n);
    Module::new(lat, Some((two.clone(), table)), None).unwrap()
}

fn rename(v: &mut Value, map: &HashMap<String, String>) {
    match v {
        Value::String(s) => {
            if let Some(t) = map.get(s.as_str()) {
                *s = t.clone();
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(|x| rename(x, map)),
        Value::Object(o) => o.values_mut().for_each(|x| rename(x, map)),
        _ => {}
    }
}

fn with_ring(mut v: Value, key: &str, name: &str) -> Value {
    v[key] = json!(name);
    v
}

struct Writer {
    dir: std::path::PathBuf,
}

impl Writer {
    fn write(&self, name: &str, note: &str, body: Value) {
        let mut out = serde_json::Map::new();
        out.insert("name".into(), json!(name));
        out.insert("note".into(), json!(note));
        for (k, v) in body.as_object().unwrap() {
            out.insert(k.clone(), v.clone());
        }
        let text = to_pretty(&Value::Object(out));
        std::fs::write(self.dir.join(format!("{name}.json")), text).unwrap();
    }
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    std::fs::create_dir_all(&dir).unwrap();
    let w = Writer { dir };
    let limits = Limits::with_cap(64);

    let two = Arc::new(validate_quantale(chain(&["0", "1"]), vec![0, 0, 0, 1], 1).unwrap());
    let nil = Arc::new(three_chain(0));
    let idem = Arc::new(three_chain(1));
    w.write(
        "TWO",
        "two-element Boolean quantale, multiplication is meet",
        quantale_json(&two),
    );
    w.write(
        "C3-nil",
        "three-element chain, unit on top, a.a = 0",
        quantale_json(&nil),
    );
    w.write(
        "C3-idem",
        "three-element chain, unit on top, a.a = a",
        quantale_json(&idem),
    );
    w.write(
        "PZ2",
        "subsets of the two-element group",
        json!({
            "kind": "monoid",
            "set": ["e", "g"],
            "mul": [["e","e","e"], ["e","g","g"], ["g","e","g"], ["g","g","e"]],
            "unit": "e",
        }),
    );
    w.write(
        "PM2",
        "subsets of the two-element monoid with an absorbing idempotent",
        json!({
            "kind": "monoid",
            "set": ["e", "z"],
            "mul": [["e","e","e"], ["e","z","z"], ["z","e","z"], ["z","z","z"]],
            "unit": "e",
        }),
    );

    // 2x2 Boolean matrices as the endomorphisms of the free module of rank 2;
    // an endomorphism h is named by the bits of h(1,0) followed by h(0,1)
    let free = free_module(&two, 2, &limits).unwrap();
    let two2 = free.module.clone();
    let end = end_quantale(&two2, &limits).unwrap();
    let p = two2.lattice();
    let bits = |x: usize| p.name(x).replace(['(', ')', ','], "");
    let mut mat_names = HashMap::new();
    for i in 0..end.homs.len() {
        let t = end.homs.table(i);
        let new = format!(
            "{}{}",
            bits(t[free.generators[0]]),
            bits(t[free.generators[1]])
        );
        mat_names.insert(end.quantale.lattice().name(i).to_string(), new);
    }
    let mut mat = quantale_json(&end.quantale);
    rename(&mut mat, &mat_names);
    w.write(
        "MAT2",
        "2x2 Boolean matrices, the endomorphism quantale of TWO^2 with h.g = g after h",
        mat,
    );

    w.write(
        "TWO^2",
        "free TWO-module of rank 2",
        with_ring(module_json(&two2), "ring", "TWO"),
    );
    let idem2 = free_module(&idem, 2, &limits).unwrap().module;
    w.write(
        "C3-idem^2",
        "free C3-idem-module of rank 2",
        with_ring(module_json(&idem2), "ring", "C3-idem"),
    );

    let lattices = [
        ("chain3", "three-element chain", chain(&["0", "a", "1"])),
        ("diamond", "Boolean lattice on two atoms", atoms(2)),
        ("M3", "five-element lattice with three atoms", atoms(3)),
        ("N5", "five-element non-modular lattice", n5()),
    ];
    w.write(
        "TWO-chain",
        "two-element chain as a TWO-module",
        with_ring(
            module_json(&two_module(&two, chain(&["0", "1"]))),
            "ring",
            "TWO",
        ),
    );
    w.write(
        "one",
        "one-element TWO-module",
        with_ring(module_json(&two_module(&two, chain(&["0"]))), "ring", "TWO"),
    );
    for (name, note, lat) in &lattices {
        let m = two_module(&two, lat.clone());
        w.write(
            name,
            &format!("{note} as a TWO-module"),
            with_ring(module_json(&m), "ring", "TWO"),
        );
        let mut l = lattice_json(lat);
        l["kind"] = json!("lattice");
        w.write(&format!("lat-{name}"), note, l);
    }

    let mat_q = Arc::new(end.quantale.as_ref().clone());
    for (name, q) in [
        ("TWO", &two),
        ("C3-nil", &nil),
        ("C3-idem", &idem),
        ("MAT2", &mat_q),
    ] {
        let mut v = module_json(&Module::regular(q));
        v["leftRing"] = json!(name);
        v["rightRing"] = json!(name);
        if name == "MAT2" {
            rename(&mut v, &mat_names);
        }
        w.write(
            &format!("{name}-reg"),
            &format!("{name} acting on itself on both sides"),
            v,
        );
    }
    for name in ["PZ2", "PM2"] {
        // powerset quantales are built on load, so only the ring names are needed
        let set = if name == "PZ2" {
            ["e", "g"]
        } else {
            ["e", "z"]
        };
        let monoid = quantale_core::Monoid {
            elements: set.map(String::from).to_vec(),
            mul: if name == "PZ2" {
                vec![0, 1, 1, 0]
            } else {
                vec![0, 1, 1, 1]
            },
            unit: 0,
        };
        let q = Arc::new(quantale_core::powerset_quantale(&monoid, &limits).unwrap());
        let mut v = module_json(&Module::regular(&q));
        v["leftRing"] = json!(name);
        v["rightRing"] = json!(name);
        w.write(
            &format!("{name}-reg"),
            &format!("{name} acting on itself on both sides"),
            v,
        );
    }

    // the dual of TWO^2 is a MAT2-TWO bimodule; a functional f is named by
    // f(1,0) followed by f(0,1)
    let dual = dual_module(&two2, &limits).unwrap();
    let mut dual_names = mat_names.clone();
    for i in 0..dual.homs.len() {
        let t = dual.homs.table(i);
        let new = format!("{}{}", t[free.generators[0]], t[free.generators[1]]);
        dual_names.insert(dual.module.lattice().name(i).to_string(), new);
    }
    let mut v = module_json(&dual.module);
    v["leftRing"] = json!("MAT2");
    v["rightRing"] = json!("TWO");
    rename(&mut v, &dual_names);
    w.write("TWO^2-dual", "dual of TWO^2, a MAT2-TWO bimodule", v);
}
