//! Left, right and two-sided modules over finite quantales.
//!
//! A [`Module`] is a lattice with an optional left action and an optional
//! right action. A left `Q`-module has only the left slot filled, a `Q`-`R`
//! bimodule has both. A module with neither is a bare sup-lattice, which is
//! the same thing as a module over the two-element quantale.
//!
//! Finite products and coproducts of modules coincide (the product carries
//! the injections `x -> (.., x, ..)` and is universal for both), so only
//! [`product_module`] exists.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Limits, Result};
use crate::homs::{enumerate_homs_of_kind, Hom, HomKind};
use crate::lattice::{
    congruence_closure_with, decode_tuple, encode_tuple, quotient, Elem, SupLattice,
};
use crate::quantale::Quantale;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

pub(crate) fn same_ring(a: &Arc<Quantale>, b: &Arc<Quantale>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Scalar action table: `table[a * n + x]` is `a.x` for a left action and
/// `x.a` for a right action.
#[derive(Clone)]
pub struct Action {
    ring: Arc<Quantale>,
    table: Arc<[Elem]>,
}

impl PartialEq for Action {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.table == other.table
    }
}

impl Eq for Action {}

impl Action {
    pub fn ring(&self) -> &Arc<Quantale> {
        &self.ring
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    fn apply(&self, a: Elem, x: Elem, n: usize) -> Elem {
        self.table[a * n + x]
    }
}

/// Which rings act on which side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleShape {
    pub left: Option<Arc<Quantale>>,
    pub right: Option<Arc<Quantale>>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Module {
    lat: Arc<SupLattice>,
    left: Option<Action>,
    right: Option<Action>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module")
            .field("elements", &self.lat.names())
            .field("left", &self.left.is_some())
            .field("right", &self.right.is_some())
            .finish()
    }
}

fn check_action(lat: &SupLattice, ring: &Quantale, table: &[Elem], side: Side) -> Result<()> {
    let n = lat.len();
    let k = ring.len();
    if table.len() != k * n || table.iter().any(|&x| x >= n) {
        return Err(Error::IncompleteTable(format!(
            "{} action needs {} entries",
            side.as_str(),
            k * n
        )));
    }
    let act = |a: Elem, x: Elem| table[a * n + x];
    let qn = |a: Elem| ring.lattice().name(a).to_string();
    let mn = |x: Elem| lat.name(x).to_string();
    for u in 0..n {
        if act(ring.unit(), u) != u {
            return Err(Error::NotUnitalAction { u: mn(u) });
        }
    }
    for a in 0..k {
        for b in 0..k {
            // left: (ab).u = a.(b.u); right: u.(ab) = (u.a).b
            let (outer, inner) = match side {
                Side::Left => (a, b),
                Side::Right => (b, a),
            };
            for u in 0..n {
                if act(ring.mul(a, b), u) != act(outer, act(inner, u)) {
                    return Err(Error::NotAssociativeAction {
                        a: qn(a),
                        b: qn(b),
                        u: mn(u),
                    });
                }
            }
        }
    }
    let (qbot, mbot) = (ring.lattice().bot(), lat.bot());
    for a in 0..k {
        if act(a, mbot) != mbot {
            return Err(Error::NotJoinDistributiveAction {
                a: qn(a),
                u: mn(mbot),
                v: mn(mbot),
            });
        }
        for u in 0..n {
            for v in u + 1..n {
                if act(a, lat.join2(u, v)) != lat.join2(act(a, u), act(a, v)) {
                    return Err(Error::NotJoinDistributiveAction {
                        a: qn(a),
                        u: mn(u),
                        v: mn(v),
                    });
                }
            }
        }
    }
    let ql = ring.lattice();
    for u in 0..n {
        if act(qbot, u) != mbot {
            return Err(Error::NotJoinDistributiveAction {
                a: qn(qbot),
                u: mn(u),
                v: mn(u),
            });
        }
        for a in 0..k {
            for b in a + 1..k {
                if act(ql.join2(a, b), u) != lat.join2(act(a, u), act(b, u)) {
                    return Err(Error::NotJoinDistributiveAction {
                        a: format!("{} v {}", qn(a), qn(b)),
                        u: mn(u),
                        v: mn(u),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Validates a one-sided module.
pub fn validate_module(
    ring: Arc<Quantale>,
    lat: Arc<SupLattice>,
    act: Vec<Elem>,
    side: Side,
) -> Result<Module> {
    match side {
        Side::Left => Module::new(lat, Some((ring, act)), None),
        Side::Right => Module::new(lat, None, Some((ring, act))),
    }
}

impl Module {
    /// Builds and validates a module; both actions present makes a bimodule.
    pub fn new(
        lat: Arc<SupLattice>,
        left: Option<(Arc<Quantale>, Vec<Elem>)>,
        right: Option<(Arc<Quantale>, Vec<Elem>)>,
    ) -> Result<Module> {
        if let Some((ring, table)) = &left {
            check_action(&lat, ring, table, Side::Left)?;
        }
        if let Some((ring, table)) = &right {
            check_action(&lat, ring, table, Side::Right)?;
        }
        let module = Module {
            lat,
            left: left.map(|(ring, t)| Action {
                ring,
                table: t.into(),
            }),
            right: right.map(|(ring, t)| Action {
                ring,
                table: t.into(),
            }),
        };
        module.check_compatible()?;
        Ok(module)
    }

    fn check_compatible(&self) -> Result<()> {
        if let (Some(l), Some(r)) = (&self.left, &self.right) {
            let n = self.len();
            for a in 0..l.ring.len() {
                for b in 0..r.ring.len() {
                    for u in 0..n {
                        if r.apply(b, l.apply(a, u, n), n) != l.apply(a, r.apply(b, u, n), n) {
                            return Err(Error::IncompatibleActions {
                                a: l.ring.lattice().name(a).into(),
                                u: self.lat.name(u).into(),
                                b: r.ring.lattice().name(b).into(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A bare sup-lattice with no scalar actions.
    pub fn plain_lattice(lat: Arc<SupLattice>) -> Module {
        Module {
            lat,
            left: None,
            right: None,
        }
    }

    /// `Q` acting on itself from both sides.
    pub fn regular(q: &Arc<Quantale>) -> Module {
        let action = Action {
            ring: q.clone(),
            table: q.mul_table().into(),
        };
        // right table is indexed [a * n + x] = x.a
        let n = q.len();
        let mut right = vec![0; n * n];
        for a in 0..n {
            for x in 0..n {
                right[a * n + x] = q.mul(x, a);
            }
        }
        Module {
            lat: q.lattice_arc().clone(),
            left: Some(action),
            right: Some(Action {
                ring: q.clone(),
                table: right.into(),
            }),
        }
    }

    pub fn left_regular(q: &Arc<Quantale>) -> Module {
        Module::regular(q).left_view()
    }

    pub fn right_regular(q: &Arc<Quantale>) -> Module {
        Module::regular(q).right_view()
    }

    /// One-element module with the given shape.
    pub fn trivial(shape: &ModuleShape) -> Module {
        let lat = Arc::new(SupLattice::from_order(vec!["0".into()], |_, _| true).unwrap());
        let act = |ring: &Arc<Quantale>| Action {
            ring: ring.clone(),
            table: vec![0; ring.len()].into(),
        };
        Module {
            lat,
            left: shape.left.as_ref().map(act),
            right: shape.right.as_ref().map(act),
        }
    }

    pub fn lattice(&self) -> &SupLattice {
        &self.lat
    }

    pub fn lattice_arc(&self) -> &Arc<SupLattice> {
        &self.lat
    }

    pub fn len(&self) -> usize {
        self.lat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lat.is_empty()
    }

    pub fn left(&self) -> Option<&Action> {
        self.left.as_ref()
    }

    pub fn right(&self) -> Option<&Action> {
        self.right.as_ref()
    }

    pub fn left_ring(&self) -> Option<&Arc<Quantale>> {
        self.left.as_ref().map(|a| &a.ring)
    }

    pub fn right_ring(&self) -> Option<&Arc<Quantale>> {
        self.right.as_ref().map(|a| &a.ring)
    }

    pub fn shape(&self) -> ModuleShape {
        ModuleShape {
            left: self.left_ring().cloned(),
            right: self.right_ring().cloned(),
        }
    }

    /// `a.x`; panics if there is no left action.
    pub fn act_left(&self, a: Elem, x: Elem) -> Elem {
        self.left
            .as_ref()
            .expect("module has no left action")
            .apply(a, x, self.len())
    }

    /// `x.a`; panics if there is no right action.
    pub fn act_right(&self, x: Elem, a: Elem) -> Elem {
        self.right
            .as_ref()
            .expect("module has no right action")
            .apply(a, x, self.len())
    }

    pub fn require_left(&self, what: &str) -> Result<&Arc<Quantale>> {
        self.left_ring()
            .ok_or_else(|| Error::MissingAction(format!("{what} needs a left action")))
    }

    pub fn require_right(&self, what: &str) -> Result<&Arc<Quantale>> {
        self.right_ring()
            .ok_or_else(|| Error::MissingAction(format!("{what} needs a right action")))
    }

    /// Forget the right action.
    pub fn left_view(&self) -> Module {
        Module {
            lat: self.lat.clone(),
            left: self.left.clone(),
            right: None,
        }
    }

    /// Forget the left action.
    pub fn right_view(&self) -> Module {
        Module {
            lat: self.lat.clone(),
            left: None,
            right: self.right.clone(),
        }
    }

    pub fn plain(&self) -> Module {
        Module::plain_lattice(self.lat.clone())
    }

    /// Swap sides: a left `Q`-module becomes a right `Q^op`-module. Over a
    /// commutative ring the opposite ring is the ring itself.
    pub fn mirror(&self) -> Module {
        let flip = |a: &Action| Action {
            ring: if a.ring.is_commutative() {
                a.ring.clone()
            } else {
                Arc::new(a.ring.opposite())
            },
            table: a.table.clone(),
        };
        Module {
            lat: self.lat.clone(),
            left: self.right.as_ref().map(flip),
            right: self.left.as_ref().map(flip),
        }
    }

    /// A left module over a commutative quantale, acting on both sides.
    pub fn symmetric_bimodule(&self) -> Result<Module> {
        let ring = self.require_left("symmetric bimodule")?;
        if !ring.is_commutative() {
            return Err(Error::RingMismatch(
                "symmetric bimodule needs a commutative ring".into(),
            ));
        }
        Ok(Module {
            lat: self.lat.clone(),
            left: self.left.clone(),
            right: self.left.clone(),
        })
    }

    /// Adds (or replaces) the left action; validates the result.
    pub fn with_left(&self, ring: Arc<Quantale>, table: Vec<Elem>) -> Result<Module> {
        Module::new(
            self.lat.clone(),
            Some((ring, table)),
            self.right
                .as_ref()
                .map(|a| (a.ring.clone(), a.table.to_vec())),
        )
    }

    /// Adds (or replaces) the right action; validates the result.
    pub fn with_right(&self, ring: Arc<Quantale>, table: Vec<Elem>) -> Result<Module> {
        Module::new(
            self.lat.clone(),
            self.left
                .as_ref()
                .map(|a| (a.ring.clone(), a.table.to_vec())),
            Some((ring, table)),
        )
    }

    /// `a\u`: the largest `v` with `a.v <= u` (left action).
    pub fn left_action_residual(&self, a: Elem, u: Elem) -> Elem {
        self.lat
            .join((0..self.len()).filter(|&v| self.lat.leq(self.act_left(a, v), u)))
    }

    /// `u/v`: the largest scalar `a` with `a.v <= u` (left action).
    pub fn left_action_quotient(&self, u: Elem, v: Elem) -> Elem {
        let q = self.left_ring().expect("module has no left action");
        q.lattice()
            .join((0..q.len()).filter(|&a| self.lat.leq(self.act_left(a, v), u)))
    }

    /// `u/a`: the largest `v` with `v.a <= u` (right action).
    pub fn right_action_residual(&self, u: Elem, a: Elem) -> Elem {
        self.lat
            .join((0..self.len()).filter(|&v| self.lat.leq(self.act_right(v, a), u)))
    }

    /// `v\u`: the largest scalar `a` with `v.a <= u` (right action).
    pub fn right_action_quotient(&self, v: Elem, u: Elem) -> Elem {
        let q = self.right_ring().expect("module has no right action");
        q.lattice()
            .join((0..q.len()).filter(|&a| self.lat.leq(self.act_right(v, a), u)))
    }

    /// Elements of a subset closed under the actions selected by `kind`.
    fn closed_under_actions(&self, kind: HomKind, carrier: &FixedBitSet) -> bool {
        let n = self.len();
        carrier.ones().all(|x| {
            let left_ok = !kind.left()
                || self
                    .left
                    .as_ref()
                    .is_none_or(|l| (0..l.ring.len()).all(|a| carrier.contains(l.apply(a, x, n))));
            let right_ok = !kind.right()
                || self
                    .right
                    .as_ref()
                    .is_none_or(|r| (0..r.ring.len()).all(|a| carrier.contains(r.apply(a, x, n))));
            left_ok && right_ok
        })
    }

    /// The natural hom kind for this module's own structure.
    pub fn own_kind(&self) -> HomKind {
        HomKind::from_sides(self.left.is_some(), self.right.is_some())
    }
}

/// A free left module `Q^n` with its standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub module: Module,
    pub ring: Arc<Quantale>,
    pub rank: usize,
    /// `e_i`: unit in slot `i`, bottom elsewhere
    pub generators: Vec<Elem>,
}

pub fn free_module(q: &Arc<Quantale>, rank: usize, limits: &Limits) -> Result<FreeModule> {
    let size = q.len().checked_pow(rank as u32).unwrap_or(usize::MAX);
    limits.check("free module", size)?;
    let reg = Module::left_regular(q);
    let factors = vec![&reg; rank];
    let shape = reg.shape();
    let product = product_module(&shape, &factors, limits)?;
    let sizes = vec![q.len(); rank];
    let generators = (0..rank)
        .map(|i| {
            let coords: Vec<Elem> = (0..rank)
                .map(|k| if k == i { q.unit() } else { q.lattice().bot() })
                .collect();
            encode_tuple(&coords, &sizes)
        })
        .collect();
    Ok(FreeModule {
        module: product.module,
        ring: q.clone(),
        rank,
        generators,
    })
}

impl FreeModule {
    /// Recognizes a module that is structurally equal to `Q^n` as built by
    /// [`free_module`].
    pub fn recognize(module: &Module, limits: &Limits) -> Result<FreeModule> {
        let ring = module.left_ring().ok_or(Error::NotFree)?.clone();
        if module.right().is_some() || ring.len() < 2 {
            return Err(Error::NotFree);
        }
        let mut size = 1;
        for rank in 0.. {
            if size == module.len() {
                let free = free_module(&ring, rank, limits)?;
                return if free.module == *module {
                    Ok(free)
                } else {
                    Err(Error::NotFree)
                };
            }
            if size > module.len() {
                break;
            }
            size *= ring.len();
        }
        Err(Error::NotFree)
    }
}

/// A finite product of modules of the same shape with its projections and
/// injections (the product is also the coproduct).
#[derive(Debug, Clone)]
pub struct Product {
    pub module: Module,
    pub projections: Vec<Hom>,
    pub injections: Vec<Hom>,
}

pub fn product_module(
    shape: &ModuleShape,
    factors: &[&Module],
    limits: &Limits,
) -> Result<Product> {
    for f in factors {
        let ok = |mine: Option<&Arc<Quantale>>, want: &Option<Arc<Quantale>>| match (mine, want) {
            (None, None) => true,
            (Some(a), Some(b)) => same_ring(a, b),
            _ => false,
        };
        if !ok(f.left_ring(), &shape.left) || !ok(f.right_ring(), &shape.right) {
            return Err(Error::RingMismatch(
                "product factors must share rings and sides".into(),
            ));
        }
    }
    let sizes: Vec<usize> = factors.iter().map(|m| m.len()).collect();
    let total = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .unwrap_or(usize::MAX);
    limits.check("product module", total)?;
    let lats: Vec<&SupLattice> = factors.iter().map(|m| m.lattice()).collect();
    let lat = Arc::new(SupLattice::product(&lats)?);
    let componentwise = |ring: &Arc<Quantale>, side: Side| -> Vec<Elem> {
        let mut table = vec![0; ring.len() * total];
        for a in 0..ring.len() {
            for x in 0..total {
                let coords: Vec<Elem> = decode_tuple(x, &sizes)
                    .into_iter()
                    .zip(factors)
                    .map(|(c, m)| match side {
                        Side::Left => m.act_left(a, c),
                        Side::Right => m.act_right(c, a),
                    })
                    .collect();
                table[a * total + x] = encode_tuple(&coords, &sizes);
            }
        }
        table
    };
    let module = Module::new(
        lat,
        shape
            .left
            .as_ref()
            .map(|r| (r.clone(), componentwise(r, Side::Left))),
        shape
            .right
            .as_ref()
            .map(|r| (r.clone(), componentwise(r, Side::Right))),
    )?;
    let kind = module.own_kind();
    let mut projections = Vec::new();
    let mut injections = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let proj = (0..total).map(|x| decode_tuple(x, &sizes)[i]).collect();
        projections.push(Hom::new(module.clone(), (*f).clone(), kind, proj)?);
        let inj = (0..f.len())
            .map(|c| {
                let coords: Vec<Elem> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, m)| if k == i { c } else { m.lattice().bot() })
                    .collect();
                encode_tuple(&coords, &sizes)
            })
            .collect();
        injections.push(Hom::new((*f).clone(), module.clone(), kind, inj)?);
    }
    Ok(Product {
        module,
        projections,
        injections,
    })
}

/// A subset of a module closed under joins and the selected actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    parent: Module,
    kind: HomKind,
    carrier: FixedBitSet,
}

impl Submodule {
    pub fn new(parent: Module, kind: HomKind, carrier: FixedBitSet) -> Result<Submodule> {
        let lat = parent.lattice();
        if !carrier.contains(lat.bot()) {
            return Err(Error::law("submodule must contain bottom"));
        }
        for x in carrier.ones() {
            for y in carrier.ones() {
                if !carrier.contains(lat.join2(x, y)) {
                    return Err(Error::law(format!(
                        "subset not closed under join of {} and {}",
                        lat.name(x),
                        lat.name(y)
                    )));
                }
            }
        }
        if !parent.closed_under_actions(kind, &carrier) {
            return Err(Error::law("subset not closed under the action"));
        }
        Ok(Submodule {
            parent,
            kind,
            carrier,
        })
    }

    pub fn parent(&self) -> &Module {
        &self.parent
    }

    pub fn carrier(&self) -> &FixedBitSet {
        &self.carrier
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.carrier.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.carrier.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_everything(&self) -> bool {
        self.len() == self.parent.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.carrier.contains(x)
    }

    /// The submodule as a module in its own right, with the inclusion hom.
    pub fn to_module(&self) -> Result<(Module, Hom)> {
        let elems = self.elements();
        let mut position = vec![usize::MAX; self.parent.len()];
        for (i, &x) in elems.iter().enumerate() {
            position[x] = i;
        }
        let plat = self.parent.lattice();
        let names = elems.iter().map(|&x| plat.name(x).to_string()).collect();
        let lat = Arc::new(SupLattice::from_order(names, |a, b| {
            plat.leq(elems[a], elems[b])
        })?);
        let restrict = |action: Option<&Action>, side: Side, keep: bool| {
            action.filter(|_| keep).map(|act| {
                let ring = act.ring.clone();
                let mut table = vec![0; ring.len() * elems.len()];
                for a in 0..ring.len() {
                    for (i, &x) in elems.iter().enumerate() {
                        let y = match side {
                            Side::Left => self.parent.act_left(a, x),
                            Side::Right => self.parent.act_right(x, a),
                        };
                        table[a * elems.len() + i] = position[y];
                    }
                }
                (ring, table)
            })
        };
        let module = Module::new(
            lat,
            restrict(self.parent.left(), Side::Left, self.kind.left()),
            restrict(self.parent.right(), Side::Right, self.kind.right()),
        )?;
        let kind = module.own_kind();
        let incl = Hom::new(module.clone(), restricted(&self.parent, kind), kind, elems)?;
        Ok((module, incl))
    }
}

/// The module with only the actions named by `kind`.
pub fn restricted(m: &Module, kind: HomKind) -> Module {
    Module {
        lat: m.lat.clone(),
        left: m.left.clone().filter(|_| kind.left()),
        right: m.right.clone().filter(|_| kind.right()),
    }
}

/// Least submodule containing `generators`: contains bottom, closed under
/// binary joins and under every action present on `m`.
pub fn submodule_generated(m: &Module, generators: &[Elem]) -> Submodule {
    let lat = m.lattice();
    let n = m.len();
    let mut carrier = FixedBitSet::with_capacity(n);
    carrier.insert(lat.bot());
    let mut frontier: Vec<Elem> = Vec::new();
    for &g in generators {
        if !carrier.put(g) {
            frontier.push(g);
        }
    }
    let left: Vec<Elem> = m.left().map(|a| a.table().to_vec()).unwrap_or_default();
    let right: Vec<Elem> = m.right().map(|a| a.table().to_vec()).unwrap_or_default();
    while let Some(x) = frontier.pop() {
        let mut found = Vec::new();
        for y in carrier.ones() {
            found.push(lat.join2(x, y));
        }
        for table in [&left, &right] {
            for a in 0..table.len() / n.max(1) {
                found.push(table[a * n + x]);
            }
        }
        for z in found {
            if !carrier.put(z) {
                frontier.push(z);
            }
        }
    }
    Submodule {
        parent: m.clone(),
        kind: m.own_kind(),
        carrier,
    }
}

/// `{x : f(x) = g(x)}` for parallel homs.
pub fn equalizer(f: &Hom, g: &Hom) -> Result<Submodule> {
    f.check_parallel(g)?;
    let n = f.src().len();
    let mut carrier = FixedBitSet::with_capacity(n);
    for x in 0..n {
        if f.apply(x) == g.apply(x) {
            carrier.insert(x);
        }
    }
    Submodule::new(f.src().clone(), f.kind(), carrier)
}

/// Quotient of the codomain by the congruence generated by `(f(x), g(x))`.
#[derive(Debug, Clone)]
pub struct Coequalizer {
    pub module: Module,
    pub projection: Hom,
}

pub fn coequalizer(f: &Hom, g: &Hom) -> Result<Coequalizer> {
    f.check_parallel(g)?;
    let target = f.dst();
    let kind = f.kind();
    let pairs: Vec<(Elem, Elem)> = (0..f.src().len())
        .map(|x| (f.apply(x), g.apply(x)))
        .collect();
    let n = target.len();
    // one unary map per scalar, for every action the homs preserve
    let mut maps: Vec<Vec<Elem>> = Vec::new();
    for (action, keep) in [(target.left(), kind.left()), (target.right(), kind.right())] {
        if let Some(act) = action.filter(|_| keep) {
            for a in 0..act.ring.len() {
                maps.push(act.table[a * n..(a + 1) * n].to_vec());
            }
        }
    }
    let map_refs: Vec<&[Elem]> = maps.iter().map(|m| m.as_slice()).collect();
    let cong = congruence_closure_with(target.lattice(), &pairs, &map_refs);
    let q = quotient(target.lattice(), &cong)?;
    let qn = q.lattice.len();
    let induce = |action: Option<&Action>, side: Side, keep: bool| {
        action.filter(|_| keep).map(|act| {
            let mut table = vec![0; act.ring.len() * qn];
            for a in 0..act.ring.len() {
                for (i, &rep) in q.representative.iter().enumerate() {
                    let y = match side {
                        Side::Left => target.act_left(a, rep),
                        Side::Right => target.act_right(rep, a),
                    };
                    table[a * qn + i] = q.projection[y];
                }
            }
            (act.ring.clone(), table)
        })
    };
    let module = Module::new(
        Arc::new(q.lattice),
        induce(target.left(), Side::Left, kind.left()),
        induce(target.right(), Side::Right, kind.right()),
    )?;
    let projection = Hom::new(restricted(target, kind), module.clone(), kind, q.projection)?;
    Ok(Coequalizer { module, projection })
}

/// How many test maps a universal-property check looked at, and how many
/// of them had to factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalReport {
    pub tested: usize,
    pub factored: usize,
}

/// Checks the equalizer's universal property against every hom `Y -> M`
/// from the given test modules: each `v` with `f v = g v` must factor
/// through the inclusion in exactly one way.
pub fn verify_equalizer(
    f: &Hom,
    g: &Hom,
    tests: &[Module],
    limits: &Limits,
) -> Result<UniversalReport> {
    let (e, incl) = equalizer(f, g)?.to_module()?;
    let kind = f.kind();
    if (0..e.len()).any(|x| f.apply(incl.apply(x)) != g.apply(incl.apply(x))) {
        return Err(Error::law("inclusion does not equalize"));
    }
    let mut report = UniversalReport {
        tested: 0,
        factored: 0,
    };
    for y in tests {
        let y = restricted(y, kind);
        let into_m = enumerate_homs_of_kind(&y, &restricted(f.src(), kind), kind, limits)?;
        let into_e = enumerate_homs_of_kind(&y, &e, kind, limits)?;
        for v in into_m.tables() {
            report.tested += 1;
            if v.iter().any(|&x| f.apply(x) != g.apply(x)) {
                continue;
            }
            report.factored += 1;
            let through = into_e
                .tables()
                .iter()
                .filter(|w| w.iter().zip(v).all(|(&a, &b)| incl.apply(a) == b))
                .count();
            if through != 1 {
                return Err(Error::law(format!(
                    "equalizing map {v:?} factors {through} times"
                )));
            }
        }
    }
    Ok(report)
}

/// Checks the coequalizer's universal property against every hom `N -> Z`
/// into the given test modules: each `v` with `v f = v g` must factor
/// through the projection in exactly one way.
pub fn verify_coequalizer(
    f: &Hom,
    g: &Hom,
    tests: &[Module],
    limits: &Limits,
) -> Result<UniversalReport> {
    let c = coequalizer(f, g)?;
    let kind = f.kind();
    let p = &c.projection;
    if (0..f.src().len()).any(|x| p.apply(f.apply(x)) != p.apply(g.apply(x))) {
        return Err(Error::law("projection does not coequalize"));
    }
    let mut report = UniversalReport {
        tested: 0,
        factored: 0,
    };
    for z in tests {
        let z = restricted(z, kind);
        let from_n = enumerate_homs_of_kind(&restricted(f.dst(), kind), &z, kind, limits)?;
        let from_c = enumerate_homs_of_kind(&c.module, &z, kind, limits)?;
        for v in from_n.tables() {
            report.tested += 1;
            if (0..f.src().len()).any(|x| v[f.apply(x)] != v[g.apply(x)]) {
                continue;
            }
            report.factored += 1;
            let through = from_c
                .tables()
                .iter()
                .filter(|w| (0..v.len()).all(|y| w[p.apply(y)] == v[y]))
                .count();
            if through != 1 {
                return Err(Error::law(format!(
                    "coequalizing map {v:?} factors {through} times"
                )));
            }
        }
    }
    Ok(report)
}
