//! Helpers and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use quantale_core::catalog;
use quantale_core::{Elem, HomKind, Module, Quantale, SupLattice};

pub fn ring(name: &str) -> Arc<Quantale> {
    catalog::load(name).unwrap().into_quantale().unwrap()
}

pub fn module(name: &str) -> Module {
    catalog::load(name).unwrap().into_module().unwrap()
}

/// Every catalog entry that has a left action, as a left module.
pub fn catalog_left_modules() -> Vec<(String, Module)> {
    catalog::list(None)
        .into_iter()
        .filter_map(|n| {
            let m = catalog::load(n).ok()?.into_module().ok()?;
            m.left().is_some().then(|| (n.to_string(), m.left_view()))
        })
        .collect()
}

/// Catalog quantales in list order.
pub fn catalog_quantales() -> Vec<(String, Arc<Quantale>)> {
    catalog::list(Some("quantale"))
        .into_iter()
        .map(|n| (n.to_string(), ring(n)))
        .collect()
}

fn preserves_joins(src: &SupLattice, dst: &SupLattice, f: &[Elem]) -> bool {
    if f[src.bot()] != dst.bot() {
        return false;
    }
    (0..src.len()).all(|x| (0..src.len()).all(|y| f[src.join2(x, y)] == dst.join2(f[x], f[y])))
}

/// All maps `|N|^|M|`, filtered by the preservation laws of `kind`.
pub fn brute_force_homs(src: &Module, dst: &Module, kind: HomKind) -> Vec<Vec<Elem>> {
    let (m, n) = (src.len(), dst.len());
    let total = n.pow(m as u32);
    let mut out = Vec::new();
    let mut f = vec![0; m];
    for code in 0..total {
        let mut c = code;
        for slot in f.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        if !preserves_joins(src.lattice(), dst.lattice(), &f) {
            continue;
        }
        if kind.left() {
            let k = src.left_ring().unwrap().len();
            if !(0..k).all(|a| (0..m).all(|x| f[src.act_left(a, x)] == dst.act_left(a, f[x]))) {
                continue;
            }
        }
        if kind.right() {
            let k = src.right_ring().unwrap().len();
            if !(0..k).all(|a| (0..m).all(|x| f[src.act_right(x, a)] == dst.act_right(f[x], a))) {
                continue;
            }
        }
        out.push(f.clone());
    }
    out.sort();
    out
}

/// Joins of every subset of a lattice, indexed by bit mask.
fn subset_joins(l: &SupLattice) -> Vec<Elem> {
    let n = l.len();
    let mut out = vec![l.bot(); 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        out[mask] = l.join2(out[mask & (mask - 1)], low);
    }
    out
}

/// Closed subsets of `M x N` straight from the defining relations: a set
/// `S` is closed when, for every `x` and every `Y`, `(x, join Y)` is in `S`
/// exactly when `{x} x Y` is, symmetrically in the other variable, and
/// `(x a, y)` is in `S` exactly when `(x, a y)` is. Sets are bit masks over
/// pairs `x * |N| + y`.
pub fn closed_subsets_oracle(m: &Module, n: &Module) -> Vec<u64> {
    let (ml, nl) = (m.lattice(), n.lattice());
    let (a, b) = (ml.len(), nl.len());
    assert!(a * b <= 20 && a <= 10 && b <= 10);
    let q = m.right_ring().unwrap();
    let jm = subset_joins(ml);
    let jn = subset_joins(nl);
    let bit = |x: usize, y: usize| 1u64 << (x * b + y);
    let mut out = Vec::new();
    'sets: for s in 0u64..1 << (a * b) {
        let row = |x: usize| {
            (0..b)
                .filter(|&y| s & bit(x, y) != 0)
                .fold(0usize, |r, y| r | 1 << y)
        };
        let col = |y: usize| {
            (0..a)
                .filter(|&x| s & bit(x, y) != 0)
                .fold(0usize, |c, x| c | 1 << x)
        };
        for x in 0..a {
            let r = row(x);
            for ys in 0usize..1 << b {
                let contains = r & ys == ys;
                if contains != (r >> jn[ys] & 1 == 1) {
                    continue 'sets;
                }
            }
        }
        for y in 0..b {
            let c = col(y);
            for xs in 0usize..1 << a {
                let contains = c & xs == xs;
                if contains != (c >> jm[xs] & 1 == 1) {
                    continue 'sets;
                }
            }
        }
        for s_a in 0..q.len() {
            for x in 0..a {
                for y in 0..b {
                    let lhs = s & bit(m.act_right(x, s_a), y) != 0;
                    let rhs = s & bit(x, n.act_left(s_a, y)) != 0;
                    if lhs != rhs {
                        continue 'sets;
                    }
                }
            }
        }
        out.push(s);
    }
    out
}

/// All maps `M x N -> P` that preserve joins in each variable and balance
/// the scalars, found by assigning values on pairs of join-irreducibles.
pub fn bimorphisms(m: &Module, n: &Module, p: &SupLattice) -> Vec<Vec<Elem>> {
    let (ml, nl) = (m.lattice(), n.lattice());
    let (jm, jn) = (
        ml.join_irreducibles().to_vec(),
        nl.join_irreducibles().to_vec(),
    );
    let cells = jm.len() * jn.len();
    let total = p.len().pow(cells as u32);
    let q = m.right_ring().unwrap();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut v = vec![0; cells];
        for slot in v.iter_mut() {
            *slot = c % p.len();
            c /= p.len();
        }
        let f: Vec<Elem> = (0..ml.len())
            .flat_map(|x| {
                let (jm, jn, v) = (&jm, &jn, &v);
                (0..nl.len()).map(move |y| {
                    let mut acc = p.bot();
                    for (i, &j) in jm.iter().enumerate() {
                        for (k, &l) in jn.iter().enumerate() {
                            if ml.leq(j, x) && nl.leq(l, y) {
                                acc = p.join2(acc, v[i * jn.len() + k]);
                            }
                        }
                    }
                    acc
                })
            })
            .collect();
        let at = |x: usize, y: usize| f[x * nl.len() + y];
        let ok = (0..ml.len()).all(|x| {
            (0..nl.len()).all(|y| {
                (0..ml.len()).all(|x2| at(ml.join2(x, x2), y) == p.join2(at(x, y), at(x2, y)))
                    && (0..nl.len())
                        .all(|y2| at(x, nl.join2(y, y2)) == p.join2(at(x, y), at(x, y2)))
                    && (0..q.len()).all(|s| at(m.act_right(x, s), y) == at(x, n.act_left(s, y)))
            })
        });
        if ok {
            out.push(f);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A sup-lattice as a left module over TWO.
pub fn over_two(lat: Arc<SupLattice>) -> Module {
    let n = lat.len();
    let mut table = vec![lat.bot(); n];
    table.extend(0..n);
    Module::new(lat, Some((ring("TWO"), table)), None).unwrap()
}
