//! Module homomorphisms, hom-sets, endomorphism quantales and duals.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Limits, Result};
use crate::lattice::{Elem, SupLattice};
use crate::module::{same_ring, submodule_generated, FreeModule, Module};
use crate::quantale::{validate_quantale, Quantale};

/// Which scalar actions a map has to preserve. Joins are always preserved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomKind {
    Lattice,
    Left,
    Right,
    Both,
}

impl HomKind {
    pub fn from_sides(left: bool, right: bool) -> HomKind {
        match (left, right) {
            (false, false) => HomKind::Lattice,
            (true, false) => HomKind::Left,
            (false, true) => HomKind::Right,
            (true, true) => HomKind::Both,
        }
    }

    pub fn left(self) -> bool {
        matches!(self, HomKind::Left | HomKind::Both)
    }

    pub fn right(self) -> bool {
        matches!(self, HomKind::Right | HomKind::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HomKind::Lattice => "lattice",
            HomKind::Left => "left",
            HomKind::Right => "right",
            HomKind::Both => "both",
        }
    }

    /// Preserve every action that both modules carry over the same ring.
    pub fn infer(src: &Module, dst: &Module) -> HomKind {
        let shared = |a: Option<&Arc<Quantale>>, b: Option<&Arc<Quantale>>| match (a, b) {
            (Some(a), Some(b)) => same_ring(a, b),
            _ => false,
        };
        HomKind::from_sides(
            shared(src.left_ring(), dst.left_ring()),
            shared(src.right_ring(), dst.right_ring()),
        )
    }

    fn meet(self, other: HomKind) -> HomKind {
        HomKind::from_sides(self.left() && other.left(), self.right() && other.right())
    }

    /// Both modules must carry the preserved actions over the same ring.
    pub fn check(self, src: &Module, dst: &Module) -> Result<()> {
        let side =
            |want: bool, a: Option<&Arc<Quantale>>, b: Option<&Arc<Quantale>>, name: &str| {
                if !want {
                    return Ok(());
                }
                match (a, b) {
                    (Some(a), Some(b)) if same_ring(a, b) => Ok(()),
                    (Some(_), Some(_)) => Err(Error::RingMismatch(format!(
                        "{name} actions of source and target are over different rings"
                    ))),
                    _ => Err(Error::MissingAction(format!(
                        "{name} homs need a {name} action on both modules"
                    ))),
                }
            };
        side(self.left(), src.left_ring(), dst.left_ring(), "left")?;
        side(self.right(), src.right_ring(), dst.right_ring(), "right")
    }
}

/// A join- and action-preserving map stored as a full table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    src: Module,
    dst: Module,
    kind: HomKind,
    table: Vec<Elem>,
}

impl Hom {
    pub fn new(src: Module, dst: Module, kind: HomKind, table: Vec<Elem>) -> Result<Hom> {
        kind.check(&src, &dst)?;
        if table.len() != src.len() || table.iter().any(|&y| y >= dst.len()) {
            return Err(Error::NotAHom(format!(
                "table must send {} elements into {}",
                src.len(),
                dst.len()
            )));
        }
        let hom = Hom {
            src,
            dst,
            kind,
            table,
        };
        hom.check_laws()?;
        Ok(hom)
    }

    pub(crate) fn new_unchecked(src: Module, dst: Module, kind: HomKind, table: Vec<Elem>) -> Hom {
        debug_assert_eq!(table.len(), src.len());
        Hom {
            src,
            dst,
            kind,
            table,
        }
    }

    pub fn from_fn(
        src: &Module,
        dst: &Module,
        kind: HomKind,
        f: impl Fn(Elem) -> Elem,
    ) -> Result<Hom> {
        let table = (0..src.len()).map(f).collect();
        Hom::new(src.clone(), dst.clone(), kind, table)
    }

    fn check_laws(&self) -> Result<()> {
        let (s, d) = (self.src.lattice(), self.dst.lattice());
        let f = |x: Elem| self.table[x];
        if f(s.bot()) != d.bot() {
            return Err(Error::NotAHom(format!(
                "bottom goes to {}",
                d.name(f(s.bot()))
            )));
        }
        for x in 0..s.len() {
            for y in x + 1..s.len() {
                if f(s.join2(x, y)) != d.join2(f(x), f(y)) {
                    return Err(Error::NotAHom(format!(
                        "join of {} and {} not preserved",
                        s.name(x),
                        s.name(y)
                    )));
                }
            }
        }
        if self.kind.left() {
            let q = self.src.left_ring().unwrap();
            for a in 0..q.len() {
                for x in 0..s.len() {
                    if f(self.src.act_left(a, x)) != self.dst.act_left(a, f(x)) {
                        return Err(Error::NotAHom(format!(
                            "left action of {} on {} not preserved",
                            q.lattice().name(a),
                            s.name(x)
                        )));
                    }
                }
            }
        }
        if self.kind.right() {
            let q = self.src.right_ring().unwrap();
            for a in 0..q.len() {
                for x in 0..s.len() {
                    if f(self.src.act_right(x, a)) != self.dst.act_right(f(x), a) {
                        return Err(Error::NotAHom(format!(
                            "right action of {} on {} not preserved",
                            q.lattice().name(a),
                            s.name(x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(m: &Module, kind: HomKind) -> Hom {
        Hom::new_unchecked(m.clone(), m.clone(), kind, (0..m.len()).collect())
    }

    pub fn zero(src: &Module, dst: &Module, kind: HomKind) -> Hom {
        Hom::new_unchecked(
            src.clone(),
            dst.clone(),
            kind,
            vec![dst.lattice().bot(); src.len()],
        )
    }

    pub fn src(&self) -> &Module {
        &self.src
    }

    pub fn dst(&self) -> &Module {
        &self.dst
    }

    pub fn kind(&self) -> HomKind {
        self.kind
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn into_table(self) -> Vec<Elem> {
        self.table
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    /// `self` after `g`.
    pub fn compose(&self, g: &Hom) -> Result<Hom> {
        if g.dst.lattice() != self.src.lattice() {
            return Err(Error::law("composition of homs with mismatched ends"));
        }
        Ok(Hom::new_unchecked(
            g.src.clone(),
            self.dst.clone(),
            self.kind.meet(g.kind),
            g.table.iter().map(|&y| self.table[y]).collect(),
        ))
    }

    /// Same ends and same kind.
    pub fn check_parallel(&self, other: &Hom) -> Result<()> {
        if self.src != other.src || self.dst != other.dst || self.kind != other.kind {
            return Err(Error::law("homs are not parallel"));
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.table.iter().all(|y| seen.insert(*y))
    }

    pub fn is_surjective(&self) -> bool {
        let hit: HashSet<&Elem> = self.table.iter().collect();
        hit.len() == self.dst.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.src.len() == self.dst.len() && self.is_injective()
    }

    /// The inverse map of a bijective hom (itself a hom of the same kind).
    pub fn inverse(&self) -> Option<Hom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(Hom::new_unchecked(
            self.dst.clone(),
            self.src.clone(),
            self.kind,
            inv,
        ))
    }

    /// Same table between other modules over the same lattices.
    pub fn retarget(&self, src: &Module, dst: &Module, kind: HomKind) -> Result<Hom> {
        Hom::new(src.clone(), dst.clone(), kind, self.table.clone())
    }
}

struct Plan<'a> {
    src: &'a Module,
    dst: &'a Module,
    irr: Vec<Elem>,
    /// positions of earlier irreducibles strictly below each irreducible
    below_strict: Vec<Vec<usize>>,
    /// positions of irreducibles below each element
    below: Vec<Vec<usize>>,
    at_level: Vec<Vec<Elem>>,
    join_checks: Vec<Vec<(Elem, Elem)>>,
    /// (side is left, scalar, irreducible, image of the irreducible)
    action_checks: Vec<Vec<(bool, Elem, Elem, Elem)>>,
}

impl<'a> Plan<'a> {
    fn new(src: &'a Module, dst: &'a Module, kind: HomKind) -> Plan<'a> {
        let s = src.lattice();
        let n = s.len();
        let irr = s.join_irreducibles_linear();
        let mut pos = vec![usize::MAX; n];
        for (p, &j) in irr.iter().enumerate() {
            pos[j] = p;
        }
        let below: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..irr.len()).filter(|&p| s.leq(irr[p], x)).collect())
            .collect();
        let level = |x: Elem| below[x].last().copied();
        let below_strict = irr
            .iter()
            .map(|&j| below[j].iter().copied().filter(|&p| irr[p] != j).collect())
            .collect();
        let mut at_level = vec![Vec::new(); irr.len()];
        for x in 0..n {
            if let Some(l) = level(x) {
                at_level[l].push(x);
            }
        }
        let mut join_checks = vec![Vec::new(); irr.len()];
        for x in 0..n {
            for y in x + 1..n {
                let z = s.join2(x, y);
                if z == x || z == y {
                    continue;
                }
                join_checks[level(z).unwrap()].push((x, y));
            }
        }
        let mut action_checks = vec![Vec::new(); irr.len()];
        for (is_left, ring) in [(true, src.left_ring()), (false, src.right_ring())] {
            let Some(ring) = ring else { continue };
            if (is_left && !kind.left()) || (!is_left && !kind.right()) {
                continue;
            }
            for &a in ring.lattice().join_irreducibles() {
                for (p, &j) in irr.iter().enumerate() {
                    let image = if is_left {
                        src.act_left(a, j)
                    } else {
                        src.act_right(j, a)
                    };
                    let l = level(image).map_or(p, |l| l.max(p));
                    action_checks[l].push((is_left, a, j, image));
                }
            }
        }
        Plan {
            src,
            dst,
            irr,
            below_strict,
            below,
            at_level,
            join_checks,
            action_checks,
        }
    }

    fn candidates(&self, depth: usize, fval: &[Elem]) -> Vec<Elem> {
        let d = self.dst.lattice();
        let lb = d.join(self.below_strict[depth].iter().map(|&p| fval[self.irr[p]]));
        d.up_set(lb).ones().collect()
    }

    /// Assigns `y` to the irreducible at `depth`; false if a constraint fails.
    fn assign(&self, depth: usize, y: Elem, fval: &mut [Elem]) -> bool {
        let d = self.dst.lattice();
        for &x in &self.at_level[depth] {
            fval[x] = if x == self.irr[depth] {
                y
            } else {
                d.join(self.below[x].iter().map(|&p| fval[self.irr[p]]))
            };
        }
        self.join_checks[depth]
            .iter()
            .all(|&(x, y)| fval[self.src.lattice().join2(x, y)] == d.join2(fval[x], fval[y]))
            && self.action_checks[depth]
                .iter()
                .all(|&(is_left, a, j, image)| {
                    let want = if is_left {
                        self.dst.act_left(a, fval[j])
                    } else {
                        self.dst.act_right(fval[j], a)
                    };
                    fval[image] == want
                })
    }

    fn extend(&self, depth: usize, fval: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if depth == self.irr.len() {
            out.push(fval.clone());
            return;
        }
        for y in self.candidates(depth, fval) {
            if self.assign(depth, y, fval) {
                self.extend(depth + 1, fval, out);
            }
        }
    }
}

/// Every hom `src -> dst` of the given kind, in lexicographic table order.
pub fn enumerate_homs_of_kind(
    src: &Module,
    dst: &Module,
    kind: HomKind,
    limits: &Limits,
) -> Result<HomSet> {
    kind.check(src, dst)?;
    limits.check("hom source", src.len())?;
    limits.check("hom target", dst.len())?;
    let plan = Plan::new(src, dst, kind);
    let start = vec![dst.lattice().bot(); src.len()];
    let mut tables: Vec<Vec<Elem>> = if plan.irr.is_empty() {
        vec![start]
    } else {
        plan.candidates(0, &start)
            .into_par_iter()
            .flat_map_iter(|y| {
                let mut fval = start.clone();
                let mut out = Vec::new();
                if plan.assign(0, y, &mut fval) {
                    plan.extend(1, &mut fval, &mut out);
                }
                out
            })
            .collect()
    };
    tables.sort_unstable();
    Ok(HomSet::from_tables(src.clone(), dst.clone(), kind, tables))
}

/// Every hom preserving the actions both modules share.
pub fn enumerate_homs(src: &Module, dst: &Module, limits: &Limits) -> Result<HomSet> {
    enumerate_homs_of_kind(src, dst, HomKind::infer(src, dst), limits)
}

/// A complete hom-set with its pointwise order.
#[derive(Debug, Clone)]
pub struct HomSet {
    src: Module,
    dst: Module,
    kind: HomKind,
    tables: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, usize>,
}

impl HomSet {
    fn from_tables(src: Module, dst: Module, kind: HomKind, tables: Vec<Vec<Elem>>) -> HomSet {
        let index = tables
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        HomSet {
            src,
            dst,
            kind,
            tables,
            index,
        }
    }

    pub fn src(&self) -> &Module {
        &self.src
    }

    pub fn dst(&self) -> &Module {
        &self.dst
    }

    pub fn kind(&self) -> HomKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn tables(&self) -> &[Vec<Elem>] {
        &self.tables
    }

    pub fn table(&self, i: usize) -> &[Elem] {
        &self.tables[i]
    }

    pub fn hom(&self, i: usize) -> Hom {
        Hom::new_unchecked(
            self.src.clone(),
            self.dst.clone(),
            self.kind,
            self.tables[i].clone(),
        )
    }

    pub fn homs(&self) -> impl Iterator<Item = Hom> + '_ {
        (0..self.len()).map(|i| self.hom(i))
    }

    pub fn position(&self, table: &[Elem]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// Position of a map given by a function, or an error if it is not in
    /// the set.
    pub fn position_of_fn(&self, what: &str, f: impl Fn(Elem) -> Elem) -> Result<usize> {
        let table: Vec<Elem> = (0..self.src.len()).map(f).collect();
        self.position(&table)
            .ok_or_else(|| Error::law(format!("{what} is not in the hom-set")))
    }

    /// Pointwise join of a family of homs.
    pub fn join(&self, items: impl IntoIterator<Item = usize>) -> usize {
        let d = self.dst.lattice();
        let mut acc = vec![d.bot(); self.src.len()];
        for i in items {
            for (a, &y) in acc.iter_mut().zip(&self.tables[i]) {
                *a = d.join2(*a, y);
            }
        }
        self.index[&acc]
    }

    pub fn bottom(&self) -> usize {
        self.join([])
    }

    /// Element names: the list of images, or `h<i>` if that collides.
    pub fn names(&self) -> Vec<String> {
        let d = self.dst.lattice();
        let names: Vec<String> = self
            .tables
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t.iter().map(|&y| d.name(y)).collect();
                format!("[{}]", parts.join(" "))
            })
            .collect();
        let distinct: HashSet<&String> = names.iter().collect();
        if distinct.len() == names.len() {
            names
        } else {
            (0..names.len()).map(|i| format!("h{i}")).collect()
        }
    }

    /// The hom-set ordered pointwise.
    pub fn lattice(&self, limits: &Limits) -> Result<SupLattice> {
        limits.check_derived("hom-set", self.len())?;
        let d = self.dst.lattice();
        SupLattice::from_order(self.names(), |a, b| {
            self.tables[a]
                .iter()
                .zip(&self.tables[b])
                .all(|(&x, &y)| d.leq(x, y))
        })
    }

    /// The hom-set as a module. Scalars act through any action the homs
    /// do not have to preserve: `(a f)(x) = a f(x)` through the target's
    /// left action or `f(x a)` through the source's right action, and
    /// `(f a)(x) = f(a x)` or `f(x) a` symmetrically. A side is filled only
    /// when exactly one of its two routes is available.
    pub fn as_module(&self, limits: &Limits) -> Result<Module> {
        let lat = Arc::new(self.lattice(limits)?);
        let k = self.len();
        let act_table = |ring: &Arc<Quantale>, apply: &dyn Fn(Elem, &[Elem], Elem) -> Elem| {
            let mut table = vec![0; ring.len() * k];
            for a in 0..ring.len() {
                for (i, t) in self.tables.iter().enumerate() {
                    let image: Vec<Elem> = (0..self.src.len()).map(|x| apply(a, t, x)).collect();
                    table[a * k + i] = self
                        .position(&image)
                        .ok_or_else(|| Error::law("scalar multiple of a hom is not a hom"))?;
                }
            }
            Ok::<_, Error>((ring.clone(), table))
        };
        let (src, dst) = (&self.src, &self.dst);
        let left_routes: Vec<(&Arc<Quantale>, bool)> = [
            dst.left_ring()
                .filter(|_| !self.kind.left())
                .map(|r| (r, true)),
            src.right_ring()
                .filter(|_| !self.kind.right())
                .map(|r| (r, false)),
        ]
        .into_iter()
        .flatten()
        .collect();
        let right_routes: Vec<(&Arc<Quantale>, bool)> = [
            src.left_ring()
                .filter(|_| !self.kind.left())
                .map(|r| (r, true)),
            dst.right_ring()
                .filter(|_| !self.kind.right())
                .map(|r| (r, false)),
        ]
        .into_iter()
        .flatten()
        .collect();
        let left = match left_routes.as_slice() {
            [(ring, true)] => Some(act_table(ring, &|a, t, x| dst.act_left(a, t[x]))?),
            [(ring, false)] => Some(act_table(ring, &|a, t, x| t[src.act_right(x, a)])?),
            _ => None,
        };
        let right = match right_routes.as_slice() {
            [(ring, true)] => Some(act_table(ring, &|a, t, x| t[src.act_left(a, x)])?),
            [(ring, false)] => Some(act_table(ring, &|a, t, x| dst.act_right(t[x], a))?),
            _ => None,
        };
        Module::new(lat, left, right)
    }
}

/// `End(M)` as a quantale, with `M` carrying the induced action of it.
#[derive(Debug, Clone)]
pub struct EndQuantale {
    pub quantale: Arc<Quantale>,
    pub homs: HomSet,
    /// `M` with the endomorphisms acting on the opposite side from the
    /// scalars: `x h = h(x)` for left modules, `h x = h(x)` for right ones.
    pub bimodule: Module,
}

impl EndQuantale {
    pub fn len(&self) -> usize {
        self.homs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homs.is_empty()
    }

    pub fn kind(&self) -> HomKind {
        self.homs.kind()
    }

    pub fn identity(&self) -> usize {
        self.quantale.unit()
    }
}

/// Endomorphism quantale of a module. For a left module (or a bare lattice)
/// the product is `h g = g o h` so that `M` becomes a right `End(M)`-module;
/// for a right module it is `h g = h o g` and `End(M)` acts on the left.
/// A bimodule is treated as its left module.
pub fn end_quantale(m: &Module, limits: &Limits) -> Result<EndQuantale> {
    let base = if m.left().is_some() {
        m.left_view()
    } else {
        m.clone()
    };
    let kind = base.own_kind();
    let homs = enumerate_homs_of_kind(&base, &base, kind, limits)?;
    let k = homs.len();
    let lat = Arc::new(homs.lattice(limits)?);
    let reversed = kind != HomKind::Right;
    let mut mul = vec![0; k * k];
    for h in 0..k {
        for g in 0..k {
            let (outer, inner) = if reversed { (g, h) } else { (h, g) };
            let composite: Vec<Elem> = homs.tables[inner]
                .iter()
                .map(|&y| homs.tables[outer][y])
                .collect();
            mul[h * k + g] = homs.index[&composite];
        }
    }
    let unit = homs.index[&(0..base.len()).collect::<Vec<_>>()];
    let quantale = Arc::new(validate_quantale(lat, mul, unit)?);
    let n = base.len();
    let mut table = vec![0; k * n];
    for h in 0..k {
        table[h * n..(h + 1) * n].copy_from_slice(&homs.tables[h]);
    }
    let bimodule = if kind == HomKind::Right {
        base.with_left(quantale.clone(), table)?
    } else {
        base.with_right(quantale.clone(), table)?
    };
    Ok(EndQuantale {
        quantale,
        homs,
        bimodule,
    })
}

/// `M* = Hom_Q(M, Q)` as an `End(M)`-`Q` bimodule.
#[derive(Debug, Clone)]
pub struct DualModule {
    pub module: Module,
    pub homs: HomSet,
    pub end: EndQuantale,
}

impl DualModule {
    /// `f(m)`, the pairing of `M` with `M*`.
    pub fn pair(&self, m: Elem, f: Elem) -> Elem {
        self.homs.table(f)[m]
    }

    /// `f m`, the endomorphism `x -> f(x) m`.
    pub fn outer(&self, f: Elem, m: Elem) -> Result<Elem> {
        let src = self.end.bimodule.clone();
        self.end
            .homs
            .position_of_fn("f m", |x| src.act_left(self.pair(x, f), m))
    }
}

/// Dual of a left `Q`-module, with the four mixed associativity laws
/// checked exhaustively.
pub fn dual_module(m: &Module, limits: &Limits) -> Result<DualModule> {
    let q = m.require_left("dual module")?.clone();
    let end = end_quantale(&m.left_view(), limits)?;
    let target = Module::regular(&q);
    let homs = enumerate_homs_of_kind(&end.bimodule, &target, HomKind::Left, limits)?;
    let module = homs.as_module(limits)?;
    let dual = DualModule { module, homs, end };
    check_dual_laws(&dual)?;
    Ok(dual)
}

fn check_dual_laws(d: &DualModule) -> Result<()> {
    let m = &d.end.bimodule;
    let e = &d.end.quantale;
    let q = m.left_ring().unwrap();
    let nstar = &d.module;
    for f in 0..d.homs.len() {
        for x in 0..m.len() {
            // MNQ: m (f q) = (m f) q
            for a in 0..q.len() {
                if d.pair(x, nstar.act_right(f, a)) != q.mul(d.pair(x, f), a) {
                    return Err(Error::law("m(fq) = (mf)q fails"));
                }
            }
            // MEN: m (h f) = (m h) f
            for h in 0..e.len() {
                if d.pair(x, nstar.act_left(h, f)) != d.pair(m.act_right(x, h), f) {
                    return Err(Error::law("m(hf) = (mh)f fails"));
                }
            }
        }
    }
    for f in 0..d.homs.len() {
        for x in 0..m.len() {
            let fx = d.outer(f, x)?;
            for y in 0..m.len() {
                // MNM: (m f) m' = m (f m')
                if m.act_left(d.pair(y, f), x) != m.act_right(y, fx) {
                    return Err(Error::law("(mf)m' = m(fm') fails"));
                }
            }
            for g in 0..d.homs.len() {
                // NMN: f (m f') = (f m) f'
                if nstar.act_right(f, d.pair(x, g)) != nstar.act_left(d.outer(f, x)?, g) {
                    return Err(Error::law("f(mf') = (fm)f' fails"));
                }
            }
        }
    }
    Ok(())
}

/// The coordinate functionals of a free module.
#[derive(Debug, Clone)]
pub struct DualBasis {
    pub dual: DualModule,
    /// positions in `dual.homs`, one per generator
    pub basis: Vec<usize>,
}

/// Dual basis `e_i*(x) = x_i` of `Q^n`. Checks `e_j e_i* = [i = j]` and
/// that the basis generates `M*` as a right `Q`-module minimally.
pub fn dual_basis(free: &FreeModule, limits: &Limits) -> Result<DualBasis> {
    let dual = dual_module(&free.module, limits)?;
    let q = &free.ring;
    let sizes = vec![q.len(); free.rank];
    let basis = (0..free.rank)
        .map(|i| {
            dual.homs.position_of_fn("coordinate functional", |x| {
                crate::lattice::decode_tuple(x, &sizes)[i]
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, &f) in basis.iter().enumerate() {
        for (j, &e) in free.generators.iter().enumerate() {
            let want = if i == j { q.unit() } else { q.lattice().bot() };
            if dual.pair(e, f) != want {
                return Err(Error::law("dual basis pairing is not the Kronecker delta"));
            }
        }
    }
    let right = dual.module.right_view();
    if !submodule_generated(&right, &basis).is_everything() {
        return Err(Error::law("dual basis does not generate the dual"));
    }
    for skip in 0..basis.len() {
        let rest: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &f)| f)
            .collect();
        if submodule_generated(&right, &rest).is_everything() {
            return Err(Error::law("dual basis is not minimal"));
        }
    }
    Ok(DualBasis { dual, basis })
}

/// Dual basis of a module that is structurally a free module.
pub fn dual_basis_of(m: &Module, limits: &Limits) -> Result<DualBasis> {
    dual_basis(&FreeModule::recognize(m, limits)?, limits)
}
