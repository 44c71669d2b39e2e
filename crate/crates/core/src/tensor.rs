//! Tensor products of modules over a quantale.
//!
//! `M (x)_Q N` is realized as the lattice of closed subsets of `M x N`. A set
//! `T` is closed when every column `{x : (x, y) in T}` and every row is a
//! principal down-set (this is the join rule in both coordinates, including
//! the empty join, so `(bot, y)` and `(x, bot)` always belong to `T`), and
//! `(x a, y) in T` iff `(x, a y) in T` for every scalar `a`. Because rows
//! and columns are down-closed it is enough to check the scalar rule for
//! join-irreducible scalars.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Limits, Result};
use crate::homs::{enumerate_homs_of_kind, Hom, HomKind, HomSet};
use crate::lattice::{Elem, SupLattice};
use crate::module::{same_ring, Module};
use crate::quantale::Quantale;

/// `M (x)_Q N` together with the data needed to compute with it.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub module: Module,
    left: Module,
    right: Module,
    ring: Arc<Quantale>,
    carrier: Vec<FixedBitSet>,
    /// `elementary[x * |N| + y]` is the id of `x (x) y`
    elementary: Vec<Elem>,
}

/// Precomputed action tables used by the closure fixpoint.
struct Closer<'a> {
    m: &'a SupLattice,
    n: &'a SupLattice,
    /// for each irreducible scalar: `x a` over `M` and `a y` over `N`
    scalars: Vec<(Vec<Elem>, Vec<Elem>)>,
}

impl<'a> Closer<'a> {
    fn new(left: &'a Module, right: &'a Module, ring: &Quantale) -> Closer<'a> {
        let scalars = ring
            .lattice()
            .join_irreducibles()
            .iter()
            .map(|&a| {
                (
                    (0..left.len()).map(|x| left.act_right(x, a)).collect(),
                    (0..right.len()).map(|y| right.act_left(a, y)).collect(),
                )
            })
            .collect();
        Closer {
            m: left.lattice(),
            n: right.lattice(),
            scalars,
        }
    }

    fn pairs(&self) -> usize {
        self.m.len() * self.n.len()
    }

    fn close(&self, set: &mut FixedBitSet) {
        let (nm, nn) = (self.m.len(), self.n.len());
        loop {
            let mut changed = false;
            for y in 0..nn {
                let top = self.m.join((0..nm).filter(|&x| set.contains(x * nn + y)));
                for x in self.m.down_set(top).ones() {
                    changed |= !set.put(x * nn + y);
                }
            }
            for x in 0..nm {
                let top = self.n.join((0..nn).filter(|&y| set.contains(x * nn + y)));
                for y in self.n.down_set(top).ones() {
                    changed |= !set.put(x * nn + y);
                }
            }
            for (xa, ay) in &self.scalars {
                for x in 0..nm {
                    for y in 0..nn {
                        let l = xa[x] * nn + y;
                        let r = x * nn + ay[y];
                        if set.contains(l) != set.contains(r) {
                            set.insert(l);
                            set.insert(r);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
}

fn needs_parens(name: &str) -> bool {
    name.contains(['+', '⊗', ' '])
}

fn factor_name(name: &str) -> String {
    if needs_parens(name) {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// `M (x)_Q N` for a right `Q`-module `M` and a left `Q`-module `N`. The
/// result keeps the left action of `M` and the right action of `N` when
/// they are present.
pub fn tensor_product(m: &Module, n: &Module, limits: &Limits) -> Result<TensorProduct> {
    let q = m.require_right("left tensor factor")?;
    let q2 = n.require_left("right tensor factor")?;
    if !same_ring(q, q2) {
        return Err(Error::RingMismatch(
            "tensor factors act over different rings".into(),
        ));
    }
    let ring = q.clone();
    limits.check_derived("tensor product pairs", m.len() * n.len())?;
    let closer = Closer::new(m, n, &ring);
    let total = closer.pairs();
    let nn = n.len();

    let mut bottom = FixedBitSet::with_capacity(total);
    closer.close(&mut bottom);
    let mut found: HashSet<FixedBitSet> = HashSet::new();
    let mut carrier: Vec<FixedBitSet> = vec![bottom.clone()];
    found.insert(bottom);
    let mut elementary_sets = Vec::with_capacity(total);
    let mut generators: Vec<FixedBitSet> = Vec::new();
    for p in 0..total {
        let mut s = FixedBitSet::with_capacity(total);
        s.insert(p);
        closer.close(&mut s);
        if found.insert(s.clone()) {
            carrier.push(s.clone());
            generators.push(s.clone());
        }
        elementary_sets.push(s);
    }
    limits.check_derived("tensor product", carrier.len())?;
    // every element is a join of elementary tensors; add them one at a time
    let mut next = 0;
    while next < carrier.len() {
        let base = carrier[next].clone();
        next += 1;
        for g in &generators {
            if g.is_subset(&base) {
                continue;
            }
            let mut s = base.clone();
            s.union_with(g);
            closer.close(&mut s);
            if found.insert(s.clone()) {
                carrier.push(s);
                limits.check_derived("tensor product", carrier.len())?;
            }
        }
    }
    carrier.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    let position: HashMap<&FixedBitSet, Elem> =
        carrier.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let elementary: Vec<Elem> = elementary_sets.iter().map(|s| position[s]).collect();
    drop(position);

    let k = carrier.len();
    let order = |a: Elem, b: Elem| carrier[a].is_subset(&carrier[b]);
    let placeholder: Vec<String> = (0..k).map(|i| format!("t{i}")).collect();
    let lat = SupLattice::from_order(placeholder, order)?;
    let names = tensor_names(&lat, &elementary, m.lattice(), n.lattice(), nn);
    let lat = Arc::new(lat.renamed(names)?);

    let mut t = TensorProduct {
        module: Module::plain_lattice(lat.clone()),
        left: m.clone(),
        right: n.clone(),
        ring,
        carrier,
        elementary,
    };
    let left = m.left_ring().map(|s| {
        let mut table = vec![0; s.len() * k];
        for a in 0..s.len() {
            let images = t.lift(&lat, |x, y| t.elementary(m.act_left(a, x), y));
            table[a * k..(a + 1) * k].copy_from_slice(&images);
        }
        (s.clone(), table)
    });
    let right = n.right_ring().map(|r| {
        let mut table = vec![0; r.len() * k];
        for a in 0..r.len() {
            let images = t.lift(&lat, |x, y| t.elementary(x, n.act_right(y, a)));
            table[a * k..(a + 1) * k].copy_from_slice(&images);
        }
        (r.clone(), table)
    });
    t.module = Module::new(lat, left, right)?;
    Ok(t)
}

/// `0` for the bottom, `x⊗y` for the join-irreducibles (smallest pair that
/// produces it), and `+`-joined irreducible names for everything else.
fn tensor_names(
    lat: &SupLattice,
    elementary: &[Elem],
    m: &SupLattice,
    n: &SupLattice,
    nn: usize,
) -> Vec<String> {
    let k = lat.len();
    let mut names: Vec<Option<String>> = vec![None; k];
    names[lat.bot()] = Some("0".into());
    for (p, &e) in elementary.iter().enumerate() {
        if names[e].is_none() && lat.join_irreducibles().contains(&e) {
            let (x, y) = (p / nn, p % nn);
            names[e] = Some(format!(
                "{}⊗{}",
                factor_name(m.name(x)),
                factor_name(n.name(y))
            ));
        }
    }
    let irr_names: Vec<(Elem, String)> = lat
        .join_irreducibles()
        .iter()
        .map(|&j| (j, names[j].clone().unwrap_or_else(|| format!("t{j}"))))
        .collect();
    let mut out: Vec<String> = (0..k)
        .map(|x| {
            names[x].clone().unwrap_or_else(|| {
                irr_names
                    .iter()
                    .filter(|(j, _)| lat.leq(*j, x))
                    .map(|(_, s)| s.as_str())
                    .collect::<Vec<_>>()
                    .join("+")
            })
        })
        .collect();
    let mut seen = HashSet::new();
    if !out.iter().all(|s| seen.insert(s.clone())) {
        out = (0..k).map(|i| format!("t{i}")).collect();
    }
    out
}

impl TensorProduct {
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn lattice(&self) -> &SupLattice {
        self.module.lattice()
    }

    pub fn left_factor(&self) -> &Module {
        &self.left
    }

    pub fn right_factor(&self) -> &Module {
        &self.right
    }

    pub fn ring(&self) -> &Arc<Quantale> {
        &self.ring
    }

    /// Id of `x (x) y`.
    pub fn elementary(&self, x: Elem, y: Elem) -> Elem {
        self.elementary[x * self.right.len() + y]
    }

    pub fn elementary_table(&self) -> &[Elem] {
        &self.elementary
    }

    /// The closed subset of `M x N` representing an element.
    pub fn closed_set(&self, t: Elem) -> &FixedBitSet {
        &self.carrier[t]
    }

    /// Sorted pairs of the closed subset.
    pub fn pairs(&self, t: Elem) -> Vec<(Elem, Elem)> {
        let nn = self.right.len();
        self.carrier[t].ones().map(|p| (p / nn, p % nn)).collect()
    }

    /// Least closed set containing `set`.
    pub fn closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let closer = Closer::new(&self.left, &self.right, &self.ring);
        let mut s = set.clone();
        s.grow(closer.pairs());
        closer.close(&mut s);
        s
    }

    pub fn is_closed(&self, set: &FixedBitSet) -> bool {
        self.closure(set) == *set
    }

    /// Id of a closed set, if it is one.
    pub fn position(&self, set: &FixedBitSet) -> Option<Elem> {
        self.carrier.iter().position(|s| s == set)
    }

    /// Extends a bimorphism `f(x, y)` into `target` along the elementary
    /// tensors: `t -> join of f(x, y) over (x, y) in t`.
    pub fn lift(&self, target: &SupLattice, f: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
        let nn = self.right.len();
        // join over the pairs of a closed set equals the join over the pairs
        // whose elementary tensor is irreducible or bottom; use all pairs
        let values: Vec<Elem> = (0..self.elementary.len())
            .map(|p| f(p / nn, p % nn))
            .collect();
        self.carrier
            .iter()
            .map(|s| target.join(s.ones().map(|p| values[p])))
            .collect()
    }

    /// The hom `M (x) N -> P` induced by a bimorphism, if it is one.
    pub fn induced_hom(
        &self,
        target: &Module,
        kind: HomKind,
        f: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Hom> {
        let table = self.lift(target.lattice(), &f);
        for x in 0..self.left.len() {
            for y in 0..self.right.len() {
                if table[self.elementary(x, y)] != f(x, y) {
                    return Err(Error::law(format!(
                        "map is not balanced at ({}, {})",
                        self.left.lattice().name(x),
                        self.right.lattice().name(y)
                    )));
                }
            }
        }
        Hom::new(self.module.clone(), target.clone(), kind, table)
    }
}

/// `f (x) g` between two already built tensor products.
pub fn tensor_hom_between(
    src: &TensorProduct,
    dst: &TensorProduct,
    f: &Hom,
    g: &Hom,
) -> Result<Hom> {
    if f.src().lattice() != src.left.lattice()
        || g.src().lattice() != src.right.lattice()
        || f.dst().lattice() != dst.left.lattice()
        || g.dst().lattice() != dst.right.lattice()
    {
        return Err(Error::law("morphisms do not match the tensor factors"));
    }
    let table = src.lift(dst.lattice(), |x, y| dst.elementary(f.apply(x), g.apply(y)));
    let kind = HomKind::infer(&src.module, &dst.module);
    Hom::new(src.module.clone(), dst.module.clone(), kind, table)
}

/// `f (x) g : M (x) N -> M' (x) N'`, building both tensor products.
pub fn tensor_of_morphisms(f: &Hom, g: &Hom, limits: &Limits) -> Result<Hom> {
    let src = tensor_product(f.src(), g.src(), limits)?;
    let dst = tensor_product(f.dst(), g.dst(), limits)?;
    tensor_hom_between(&src, &dst, f, g)
}

/// A pair of mutually inverse homs.
#[derive(Debug, Clone)]
pub struct IsoPair {
    pub fwd: Hom,
    pub bwd: Hom,
}

impl IsoPair {
    fn checked(fwd: Hom, bwd: Hom, what: &str) -> Result<IsoPair> {
        let round = |a: &Hom, b: &Hom| (0..a.src().len()).all(|x| b.apply(a.apply(x)) == x);
        if !round(&fwd, &bwd) || !round(&bwd, &fwd) {
            return Err(Error::law(format!("{what}: maps are not mutually inverse")));
        }
        Ok(IsoPair { fwd, bwd })
    }
}

/// `(M (x)_Q N) (x)_R O  ~  M (x)_Q (N (x)_R O)` with all four tensors.
#[derive(Debug, Clone)]
pub struct AssocIso {
    pub mn: TensorProduct,
    pub mn_o: TensorProduct,
    pub no: TensorProduct,
    pub m_no: TensorProduct,
    pub iso: IsoPair,
}

pub fn assoc_iso(m: &Module, n: &Module, o: &Module, limits: &Limits) -> Result<AssocIso> {
    n.require_right("middle factor of an associativity")?;
    let mn = tensor_product(m, n, limits)?;
    let mn_o = tensor_product(&mn.module, o, limits)?;
    let no = tensor_product(n, o, limits)?;
    let m_no = tensor_product(m, &no.module, limits)?;
    let fwd_table = mn_o.lift(m_no.lattice(), |t, z| {
        m_no.lattice().join(
            mn.pairs(t)
                .into_iter()
                .map(|(x, y)| m_no.elementary(x, no.elementary(y, z))),
        )
    });
    let bwd_table = m_no.lift(mn_o.lattice(), |x, s| {
        mn_o.lattice().join(
            no.pairs(s)
                .into_iter()
                .map(|(y, z)| mn_o.elementary(mn.elementary(x, y), z)),
        )
    });
    let kind = HomKind::infer(&mn_o.module, &m_no.module);
    let fwd = Hom::new(mn_o.module.clone(), m_no.module.clone(), kind, fwd_table)?;
    let bwd = Hom::new(m_no.module.clone(), mn_o.module.clone(), kind, bwd_table)?;
    let iso = IsoPair::checked(fwd, bwd, "associativity")?;
    Ok(AssocIso {
        mn,
        mn_o,
        no,
        m_no,
        iso,
    })
}

/// `Q (x)_Q M ~ M` for a left `Q`-module, `q (x) m -> q m`, inverse
/// `m -> 1 (x) m`.
#[derive(Debug, Clone)]
pub struct UnitIso {
    pub tensor: TensorProduct,
    pub iso: IsoPair,
}

pub fn unit_iso(m: &Module, limits: &Limits) -> Result<UnitIso> {
    let q = m.require_left("unit isomorphism")?;
    let tensor = tensor_product(&Module::regular(q), m, limits)?;
    let fwd_table = tensor.lift(m.lattice(), |a, x| m.act_left(a, x));
    let bwd_table = (0..m.len())
        .map(|x| tensor.elementary(q.unit(), x))
        .collect();
    let kind = HomKind::infer(&tensor.module, m);
    let fwd = Hom::new(tensor.module.clone(), m.clone(), kind, fwd_table)?;
    let bwd = Hom::new(m.clone(), tensor.module.clone(), kind, bwd_table)?;
    let iso = IsoPair::checked(fwd, bwd, "unit")?;
    Ok(UnitIso { tensor, iso })
}

/// `X (x)_Q Q ~ X` for a right `Q`-module, `x (x) q -> x q`.
pub fn right_unit_iso(x: &Module, limits: &Limits) -> Result<UnitIso> {
    let q = x.require_right("right unit isomorphism")?;
    let tensor = tensor_product(x, &Module::regular(q), limits)?;
    let fwd_table = tensor.lift(x.lattice(), |u, a| x.act_right(u, a));
    let bwd_table = (0..x.len())
        .map(|u| tensor.elementary(u, q.unit()))
        .collect();
    let kind = HomKind::infer(&tensor.module, x);
    let fwd = Hom::new(tensor.module.clone(), x.clone(), kind, fwd_table)?;
    let bwd = Hom::new(x.clone(), tensor.module.clone(), kind, bwd_table)?;
    let iso = IsoPair::checked(fwd, bwd, "right unit")?;
    Ok(UnitIso { tensor, iso })
}

/// The bijection `Hom(M (x)_Q N, O) ~ Hom(M, Hom_R(N, O))`,
/// `phi(f)(m) = (n -> f(m (x) n))`.
#[derive(Debug, Clone)]
pub struct Adjunction {
    pub tensor: TensorProduct,
    pub target: Module,
    /// `Hom(M (x) N, O)`
    pub tensor_homs: HomSet,
    /// `Hom_R(N, O)` as a module
    pub inner: HomSet,
    pub inner_module: Module,
    /// `Hom(M, Hom_R(N, O))`
    pub curried: HomSet,
    /// positions in `curried`, one per element of `tensor_homs`
    pub phi: Vec<usize>,
    /// positions in `tensor_homs`, one per element of `curried`
    pub psi: Vec<usize>,
}

pub fn adjunction_phi(m: &Module, n: &Module, o: &Module, limits: &Limits) -> Result<Adjunction> {
    let tensor = tensor_product(m, n, limits)?;
    let tensor_homs =
        enumerate_homs_of_kind(&tensor.module, o, HomKind::infer(&tensor.module, o), limits)?;
    let inner_kind = HomKind::from_sides(false, HomKind::infer(n, o).right());
    let inner = enumerate_homs_of_kind(n, o, inner_kind, limits)?;
    let inner_module = inner.as_module(limits)?;
    let curried =
        enumerate_homs_of_kind(m, &inner_module, HomKind::infer(m, &inner_module), limits)?;
    let mut phi = Vec::with_capacity(tensor_homs.len());
    for f in tensor_homs.tables() {
        let table = (0..m.len())
            .map(|x| inner.position_of_fn("curried map", |y| f[tensor.elementary(x, y)]))
            .collect::<Result<Vec<_>>>()?;
        phi.push(
            curried
                .position(&table)
                .ok_or_else(|| Error::law("curried map is not a hom"))?,
        );
    }
    let mut psi = Vec::with_capacity(curried.len());
    for g in curried.tables() {
        let table = tensor.lift(o.lattice(), |x, y| inner.table(g[x])[y]);
        psi.push(
            tensor_homs
                .position(&table)
                .ok_or_else(|| Error::law("uncurried map is not a hom"))?,
        );
    }
    let inverse = phi.iter().enumerate().all(|(i, &j)| psi[j] == i)
        && psi.iter().enumerate().all(|(j, &i)| phi[i] == j);
    if !inverse {
        return Err(Error::law("adjunction maps are not mutually inverse"));
    }
    // both directions preserve pointwise joins
    for a in 0..tensor_homs.len() {
        for b in a + 1..tensor_homs.len() {
            if phi[tensor_homs.join([a, b])] != curried.join([phi[a], phi[b]]) {
                return Err(Error::law("adjunction does not preserve joins"));
            }
        }
    }
    Ok(Adjunction {
        tensor,
        target: o.clone(),
        tensor_homs,
        inner,
        inner_module,
        curried,
        phi,
        psi,
    })
}

impl Adjunction {
    /// Naturality in the first and last variables: for `u` an endomorphism
    /// of `M` and `v` an endomorphism of `O`,
    /// `phi(f o (u (x) id)) = phi(f) o u` and `phi(v o f) = v_* o phi(f)`.
    pub fn check_naturality(&self, us: &[Hom], vs: &[Hom]) -> Result<()> {
        let m = self.tensor.left_factor();
        let n = self.tensor.right_factor();
        let id_n = Hom::identity(n, n.own_kind());
        for u in us {
            let u_id = tensor_hom_between(&self.tensor, &self.tensor, u, &id_n)?;
            for (i, f) in self.tensor_homs.tables().iter().enumerate() {
                let pulled: Vec<Elem> = u_id.table().iter().map(|&t| f[t]).collect();
                let lhs = self
                    .tensor_homs
                    .position(&pulled)
                    .ok_or_else(|| Error::law("f o (u (x) id) is not a hom"))?;
                let g = self.curried.table(self.phi[i]);
                let rhs: Vec<Elem> = (0..m.len()).map(|x| g[u.apply(x)]).collect();
                if self.curried.table(self.phi[lhs]) != rhs.as_slice() {
                    return Err(Error::law("adjunction is not natural in the source"));
                }
            }
        }
        for v in vs {
            for (i, f) in self.tensor_homs.tables().iter().enumerate() {
                let pushed: Vec<Elem> = f.iter().map(|&y| v.apply(y)).collect();
                let lhs = self
                    .tensor_homs
                    .position(&pushed)
                    .ok_or_else(|| Error::law("v o f is not a hom"))?;
                let g = self.curried.table(self.phi[i]);
                let rhs = (0..m.len())
                    .map(|x| {
                        self.inner
                            .position_of_fn("v o phi(f)(m)", |y| v.apply(self.inner.table(g[x])[y]))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if self.curried.table(self.phi[lhs]) != rhs.as_slice() {
                    return Err(Error::law("adjunction is not natural in the target"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{validate_module, Side};
    use crate::quantale::validate_quantale;

    fn chain(k: usize) -> Arc<SupLattice> {
        let names = (0..k).map(|i| i.to_string()).collect();
        Arc::new(SupLattice::from_order(names, |a, b| a <= b).unwrap())
    }

    fn two() -> Arc<Quantale> {
        Arc::new(validate_quantale(chain(2), vec![0, 0, 0, 1], 1).unwrap())
    }

    fn over_two(q: &Arc<Quantale>, lat: Arc<SupLattice>) -> Module {
        let n = lat.len();
        let mut act = vec![lat.bot(); n];
        act.extend(0..n);
        validate_module(q.clone(), lat, act, Side::Left)
            .unwrap()
            .symmetric_bimodule()
            .unwrap()
    }

    fn diamond(q: &Arc<Quantale>) -> Module {
        over_two(
            q,
            Arc::new(
                SupLattice::from_order(
                    vec!["0".into(), "a".into(), "b".into(), "1".into()],
                    |x, y| x == y || x == 0 || y == 3,
                )
                .unwrap(),
            ),
        )
    }

    #[test]
    fn chain_is_the_unit() {
        let q = two();
        let c = over_two(&q, chain(2));
        let t = tensor_product(&c, &c, &Limits::default()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.elementary(1, 1), t.lattice().top());
        assert_eq!(t.elementary(0, 1), t.lattice().bot());
        assert_eq!(t.lattice().names(), &["0", "1⊗1"]);
    }

    #[test]
    fn one_element_factor() {
        let q = two();
        let d = diamond(&q);
        let one = Module::trivial(&d.shape());
        let t = tensor_product(&d, &one, &Limits::default()).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn unit_iso_on_diamond() {
        let q = two();
        let u = unit_iso(&diamond(&q).left_view(), &Limits::default()).unwrap();
        assert_eq!(u.tensor.len(), 4);
        let r = right_unit_iso(&diamond(&q).right_view(), &Limits::default()).unwrap();
        assert_eq!(r.tensor.len(), 4);
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let q = two();
        let d = diamond(&q);
        let t = tensor_product(&d, &d, &Limits::default()).unwrap();
        for p in 0..16 {
            let mut s = FixedBitSet::with_capacity(16);
            s.insert(p);
            let c = t.closure(&s);
            assert!(s.is_subset(&c));
            assert_eq!(t.closure(&c), c);
        }
        // diamond (x) diamond over TWO is the 16-element Boolean algebra
        assert_eq!(t.len(), 16);
        assert_eq!(t.lattice().join_irreducibles().len(), 4);
    }

    #[test]
    fn regular_associativity() {
        let q = two();
        let r = Module::regular(&q);
        let a = assoc_iso(&r, &r, &r, &Limits::default()).unwrap();
        assert_eq!(a.mn_o.len(), 2);
        assert_eq!(a.m_no.len(), 2);
    }

    #[test]
    fn adjunction_counts() {
        let q = two();
        let d = diamond(&q);
        let c = over_two(&q, chain(2));
        let adj = adjunction_phi(&d, &c, &c, &Limits::default()).unwrap();
        assert_eq!(adj.tensor_homs.len(), adj.curried.len());
        assert_eq!(adj.tensor_homs.len(), 4);
    }
}
