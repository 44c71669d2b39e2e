//! Enumeration of small lattices and of the module structures they carry.

use std::sync::Arc;

use crate::error::{Error, Limits, Result};
use crate::iso::{lattice_isomorphic, module_isomorphic};
use crate::lattice::{Elem, SupLattice};
use crate::module::{validate_module, Module, Side};
use crate::quantale::Quantale;

/// Largest lattice size the enumerator accepts. Naturally labelled posets on
/// the middle elements are enumerated as bit masks over ordered pairs, which
/// stops being practical beyond this.
pub const MAX_ENUMERATED_SIZE: usize = 8;

fn middle_name(i: usize) -> String {
    let letters = "abcdefghijklmnopqrstuvwxyz";
    letters[i..i + 1].to_string()
}

/// All lattices with exactly `size` elements, one per isomorphism class.
/// Bottom is `0`, top is `1`, the rest are named `a`, `b`, ...
pub fn lattices_of_size(size: usize) -> Result<Vec<SupLattice>> {
    if size > MAX_ENUMERATED_SIZE {
        return Err(Error::SizeCapExceeded {
            what: "lattice enumeration".into(),
            size,
            cap: MAX_ENUMERATED_SIZE,
        });
    }
    match size {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![SupLattice::from_order(vec!["0".into()], |_, _| true)?]),
        _ => {}
    }
    let mid = size - 2;
    let top = size - 1;
    let mut names = vec!["0".to_string()];
    names.extend((0..mid).map(middle_name));
    names.push("1".into());
    // ordered pairs i < j among the middle elements (ids 1..=mid)
    let pairs: Vec<(usize, usize)> = (1..=mid)
        .flat_map(|i| (i + 1..=mid).map(move |j| (i, j)))
        .collect();
    let mut found: Vec<SupLattice> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![vec![false; size]; size];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = mask >> k & 1 == 1;
        }
        let transitive = (1..=mid).all(|i| {
            (i + 1..=mid).all(|j| !rel[i][j] || (j + 1..=mid).all(|k| !rel[j][k] || rel[i][k]))
        });
        if !transitive {
            continue;
        }
        let leq = |a: Elem, b: Elem| a == b || a == 0 || b == top || rel[a][b];
        let Ok(lat) = SupLattice::from_order(names.clone(), leq) else {
            continue;
        };
        if !found.iter().any(|l| lattice_isomorphic(l, &lat).is_some()) {
            found.push(lat);
        }
    }
    Ok(found)
}

/// Every left action of `q` on `lat`, as validated modules.
///
/// Actions are determined by their values on pairs of join-irreducibles, so
/// those are assigned by backtracking (monotone in both arguments, below or
/// above the identity depending on how the scalar compares with the unit),
/// with the join, unit and associativity laws checked as soon as the values
/// they involve are known.
pub fn left_actions(q: &Arc<Quantale>, lat: &Arc<SupLattice>) -> Vec<Module> {
    let jq = q.lattice().join_irreducibles_linear();
    let jl = lat.join_irreducibles_linear();
    let mut search = ActionSearch {
        q,
        lat,
        jq: &jq,
        jl: &jl,
        values: vec![vec![lat.bot(); jl.len()]; jq.len()],
        out: Vec::new(),
    };
    search.round(0);
    search.out
}

struct ActionSearch<'a> {
    q: &'a Arc<Quantale>,
    lat: &'a Arc<SupLattice>,
    jq: &'a [Elem],
    jl: &'a [Elem],
    /// values[scalar irreducible][lattice irreducible]
    values: Vec<Vec<Elem>>,
    out: Vec<Module>,
}

impl ActionSearch<'_> {
    /// `a x` from the irreducibles assigned in rounds `< done`; `None` when
    /// `x` lies above an irreducible not yet assigned.
    fn act(&self, a: Elem, x: Elem, done: usize) -> Option<Elem> {
        let (ql, l) = (self.q.lattice(), self.lat.as_ref());
        let mut acc = l.bot();
        for (k, &j) in self.jl.iter().enumerate() {
            if !l.leq(j, x) {
                continue;
            }
            if k >= done {
                return None;
            }
            for (i, &b) in self.jq.iter().enumerate() {
                if ql.leq(b, a) {
                    acc = l.join2(acc, self.values[i][k]);
                }
            }
        }
        Some(acc)
    }

    fn laws_hold(&self, done: usize) -> bool {
        let (q, l) = (self.q, self.lat.as_ref());
        let n = l.len();
        let ready: Vec<Elem> = (0..n)
            .filter(|&x| self.act(q.unit(), x, done).is_some())
            .collect();
        for &x in &ready {
            if self.act(q.unit(), x, done) != Some(x) {
                return false;
            }
        }
        for a in 0..q.len() {
            for (i, &x) in ready.iter().enumerate() {
                for &y in &ready[i + 1..] {
                    let z = l.join2(x, y);
                    if let (Some(az), Some(ax), Some(ay)) = (
                        self.act(a, z, done),
                        self.act(a, x, done),
                        self.act(a, y, done),
                    ) {
                        if az != l.join2(ax, ay) {
                            return false;
                        }
                    }
                }
            }
        }
        for &a in self.jq {
            for &b in self.jq {
                for &x in &ready {
                    let bx = self.act(b, x, done).unwrap();
                    if let Some(abx) = self.act(a, bx, done) {
                        if self.act(q.mul(a, b), x, done) != Some(abx) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn round(&mut self, k: usize) {
        if k == self.jl.len() {
            self.finish();
            return;
        }
        self.assign(k, 0);
    }

    fn assign(&mut self, k: usize, i: usize) {
        if i == self.jq.len() {
            if self.laws_hold(k + 1) {
                self.round(k + 1);
            }
            return;
        }
        let (q, l) = (self.q, self.lat.clone());
        let (ql, a, j) = (q.lattice(), self.jq[i], self.jl[k]);
        let mut lower = l.bot();
        for (i2, &b) in self.jq[..i].iter().enumerate() {
            if ql.leq(b, a) {
                lower = l.join2(lower, self.values[i2][k]);
            }
        }
        for (k2, &j2) in self.jl[..k].iter().enumerate() {
            if l.leq(j2, j) {
                lower = l.join2(lower, self.values[i][k2]);
            }
        }
        if ql.leq(q.unit(), a) {
            lower = l.join2(lower, j);
        }
        let below_unit = ql.leq(a, q.unit());
        let candidates: Vec<Elem> = l
            .up_set(lower)
            .ones()
            .filter(|&y| !below_unit || l.leq(y, j))
            .collect();
        for y in candidates {
            self.values[i][k] = y;
            self.assign(k, i + 1);
        }
    }

    fn finish(&mut self) {
        let (q, l) = (self.q, self.lat);
        let n = l.len();
        let done = self.jl.len();
        let mut table = vec![0; q.len() * n];
        for a in 0..q.len() {
            for x in 0..n {
                table[a * n + x] = self.act(a, x, done).unwrap();
            }
        }
        if let Ok(m) = validate_module(q.clone(), l.clone(), table, Side::Left) {
            self.out.push(m);
        }
    }
}

/// Left `q`-modules with `1..=bound` elements, one per isomorphism class,
/// ordered by size and then by enumeration order.
pub fn left_modules_up_to(q: &Arc<Quantale>, bound: usize, limits: &Limits) -> Result<Vec<Module>> {
    limits.check("module enumeration bound", bound)?;
    let mut out = Vec::new();
    for size in 1..=bound {
        for lat in lattices_of_size(size)? {
            let lat = Arc::new(lat);
            let mut classes: Vec<Module> = Vec::new();
            for m in left_actions(q, &lat) {
                if !classes.iter().any(|c| module_isomorphic(c, &m).is_some()) {
                    classes.push(m);
                }
            }
            out.extend(classes);
        }
    }
    Ok(out)
}
