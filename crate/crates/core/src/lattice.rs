//! Finite sup-lattices.
//!
//! Elements are dense ids `0..n` in declaration order. The order is stored as
//! one bit row per element (both the up-set and the down-set), binary joins and
//! meets are tabulated at construction.
//!
//! Validation only checks that every pair has a least upper bound and that a
//! bottom exists. For a finite poset this is enough: the join of any nonempty
//! subset is obtained by folding binary joins, and the empty join is the bottom.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of an element inside its lattice.
pub type Elem = usize;

/// A lattice as it is written in an input file: either the order relation or
/// the binary join table over named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawLattice {
    /// Pairs `(a, b)` meaning `a <= b`. Reflexive and transitive closure is taken.
    Order {
        elements: Vec<String>,
        leq: Vec<(String, String)>,
    },
    /// Triples `(a, b, c)` meaning `a v b = c`. Must cover every pair.
    Joins {
        elements: Vec<String>,
        join: Vec<(String, String, String)>,
    },
}

#[derive(Clone)]
pub struct SupLattice {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bot: Elem,
    top: Elem,
    join_irr: Vec<Elem>,
}

impl fmt::Debug for SupLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SupLattice")
            .field("names", &self.names)
            .field("covers", &self.covers())
            .finish()
    }
}

impl PartialEq for SupLattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for SupLattice {}

fn name_index(elements: &[String]) -> Result<HashMap<String, Elem>> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, name) in elements.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateName(name.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, Elem>, name: &str, context: &str) -> Result<Elem> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownElement {
            name: name.to_string(),
            context: context.to_string(),
        })
}

/// Validates a raw lattice description.
pub fn validate_suplattice(raw: &RawLattice) -> Result<SupLattice> {
    match raw {
        RawLattice::Order { elements, leq } => {
            let index = name_index(elements)?;
            let n = elements.len();
            let mut rel = vec![FixedBitSet::with_capacity(n); n];
            for (i, row) in rel.iter_mut().enumerate() {
                row.insert(i);
            }
            for (a, b) in leq {
                let a = lookup(&index, a, "leq")?;
                let b = lookup(&index, b, "leq")?;
                rel[a].insert(b);
            }
            // Warshall closure on rows: if a <= k then up(a) absorbs up(k).
            for k in 0..n {
                let row_k = rel[k].clone();
                for row in rel.iter_mut() {
                    if row.contains(k) {
                        row.union_with(&row_k);
                    }
                }
            }
            SupLattice::from_up_sets(elements.clone(), rel)
        }
        RawLattice::Joins { elements, join } => {
            let index = name_index(elements)?;
            let n = elements.len();
            let mut table: Vec<Option<Elem>> = vec![None; n * n];
            for (a, b, c) in join {
                let a = lookup(&index, a, "join")?;
                let b = lookup(&index, b, "join")?;
                let c = lookup(&index, c, "join")?;
                match table[a * n + b] {
                    Some(prev) if prev != c => {
                        return Err(Error::InconsistentJoin {
                            a: elements[a].clone(),
                            b: elements[b].clone(),
                            given: elements[c].clone(),
                            expected: elements[prev].clone(),
                        })
                    }
                    _ => table[a * n + b] = Some(c),
                }
            }
            // a table may list each unordered pair once
            for a in 0..n {
                for b in 0..n {
                    if table[a * n + b].is_none() {
                        table[a * n + b] = table[b * n + a];
                    }
                }
            }
            let mut full = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    match table[a * n + b] {
                        Some(c) => full.push(c),
                        None => {
                            return Err(Error::MissingJoin {
                                a: elements[a].clone(),
                                b: elements[b].clone(),
                            })
                        }
                    }
                }
            }
            SupLattice::from_join_table(elements.clone(), &full)
        }
    }
}

impl SupLattice {
    /// Builds a lattice from a dense join table `join[a * n + b]`.
    pub fn from_join_table(names: Vec<String>, join: &[Elem]) -> Result<Self> {
        let n = names.len();
        let name = |x: Elem| names[x].clone();
        for a in 0..n {
            if join[a * n + a] != a {
                return Err(Error::NotAPartialOrder {
                    a: name(a),
                    b: name(a),
                });
            }
            for b in 0..n {
                if join[a * n + b] != join[b * n + a] {
                    return Err(Error::InconsistentJoin {
                        a: name(a),
                        b: name(b),
                        given: name(join[a * n + b]),
                        expected: name(join[b * n + a]),
                    });
                }
            }
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in 0..n {
                if join[a * n + b] == b {
                    up[a].insert(b);
                }
            }
        }
        let lat = SupLattice::from_up_sets(names, up)?;
        for a in 0..n {
            for b in 0..n {
                if lat.join2(a, b) != join[a * n + b] {
                    return Err(Error::InconsistentJoin {
                        a: lat.names[a].clone(),
                        b: lat.names[b].clone(),
                        given: lat.names[join[a * n + b]].clone(),
                        expected: lat.names[lat.join2(a, b)].clone(),
                    });
                }
            }
        }
        Ok(lat)
    }

    /// Builds a lattice from an order predicate. Partial-order axioms and the
    /// lattice property are checked.
    pub fn from_order(names: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let n = names.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if leq(a, b) {
                    row.insert(b);
                }
            }
        }
        Self::from_up_sets(names, up)
    }

    /// `up[a]` is the set of `b` with `a <= b`, reflexive and transitive.
    fn from_up_sets(names: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = names.len();
        let index = name_index(&names)?;
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(Error::NotAPartialOrder {
                    a: names[a].clone(),
                    b: names[a].clone(),
                });
            }
            for b in up[a].ones() {
                down[b].insert(a);
            }
        }
        for a in 0..n {
            for b in up[a].ones() {
                if !up[b].is_subset(&up[a]) {
                    let c = up[b].difference(&up[a]).next().unwrap();
                    return Err(Error::NotAPartialOrder {
                        a: names[a].clone(),
                        b: names[c].clone(),
                    });
                }
                if b != a && up[b].contains(a) {
                    return Err(Error::NotAPartialOrder {
                        a: names[a].clone(),
                        b: names[b].clone(),
                    });
                }
            }
        }
        let bot = (0..n)
            .find(|&b| up[b].count_ones(..) == n)
            .ok_or(Error::NoBottom)?;
        let least_in = |set: &FixedBitSet, rows: &[FixedBitSet]| -> Option<Elem> {
            // the least element of `set` is the one whose up-set (resp. down-set) is all of `set`
            set.ones()
                .max_by_key(|&c| rows[c].count_ones(..))
                .filter(|&c| set.is_subset(&rows[c]))
        };
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let mut ub = up[a].clone();
                ub.intersect_with(&up[b]);
                let j = least_in(&ub, &up).ok_or_else(|| Error::MissingJoin {
                    a: names[a].clone(),
                    b: names[b].clone(),
                })?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                let mut lb = down[a].clone();
                lb.intersect_with(&down[b]);
                // a finite poset with all binary joins and a bottom has all meets
                let m = least_in(&lb, &down).ok_or_else(|| Error::MissingJoin {
                    a: names[a].clone(),
                    b: names[b].clone(),
                })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        let top = (0..n)
            .find(|&t| down[t].count_ones(..) == n)
            .expect("finite lattice with binary joins has a top");
        let mut lat = SupLattice {
            names,
            index,
            up,
            down,
            join,
            meet,
            bot,
            top,
            join_irr: Vec::new(),
        };
        lat.join_irr = lat.compute_join_irreducibles();
        Ok(lat)
    }

    fn compute_join_irreducibles(&self) -> Vec<Elem> {
        (0..self.len())
            .filter(|&x| x != self.bot && self.join(self.down[x].ones().filter(|&y| y != x)) != x)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub(crate) fn lookup(&self, name: &str, context: &str) -> Result<Elem> {
        lookup(&self.index, name, context)
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: Elem) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: Elem) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn join2(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    pub fn meet2(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    /// Least upper bound of a set; the empty join is the bottom.
    pub fn join(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.bot, |acc, x| self.join2(acc, x))
    }

    /// Greatest lower bound of a set; the empty meet is the top.
    pub fn meet(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.top, |acc, x| self.meet2(acc, x))
    }

    pub fn join_irreducibles(&self) -> &[Elem] {
        &self.join_irr
    }

    /// Join-irreducibles sorted so that every element comes after all
    /// irreducibles strictly below it.
    pub fn join_irreducibles_linear(&self) -> Vec<Elem> {
        let mut order = self.join_irr.clone();
        order.sort_by_key(|&j| (self.down[j].count_ones(..), j));
        order
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing in between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].ones() {
                if b == a {
                    continue;
                }
                let between = self.up[a]
                    .ones()
                    .any(|c| c != a && c != b && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_raw(&self) -> RawLattice {
        RawLattice::Order {
            elements: self.names.clone(),
            leq: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
        }
    }

    /// Raw join table form, one triple per ordered pair.
    pub fn to_raw_joins(&self) -> RawLattice {
        let mut join = Vec::with_capacity(self.len() * self.len());
        for a in 0..self.len() {
            for b in 0..self.len() {
                join.push((
                    self.names[a].clone(),
                    self.names[b].clone(),
                    self.names[self.join2(a, b)].clone(),
                ));
            }
        }
        RawLattice::Joins {
            elements: self.names.clone(),
            join,
        }
    }

    /// Same order under new names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        assert_eq!(names.len(), self.len());
        Self::from_up_sets(names, self.up.clone())
    }

    /// Cartesian product ordered componentwise. Element ids are mixed-radix
    /// with the first factor most significant.
    pub fn product(factors: &[&SupLattice]) -> Result<Self> {
        let sizes: Vec<usize> = factors.iter().map(|l| l.len()).collect();
        let total: usize = sizes.iter().product();
        let names = (0..total)
            .map(|i| {
                let parts: Vec<&str> = decode_tuple(i, &sizes)
                    .into_iter()
                    .zip(factors)
                    .map(|(c, l)| l.name(c))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Self::from_order(names, |a, b| {
            decode_tuple(a, &sizes)
                .into_iter()
                .zip(decode_tuple(b, &sizes))
                .zip(factors)
                .all(|((x, y), l)| l.leq(x, y))
        })
    }
}

/// Mixed-radix decoding, first coordinate most significant.
pub fn decode_tuple(mut i: usize, sizes: &[usize]) -> Vec<Elem> {
    let mut out = vec![0; sizes.len()];
    for k in (0..sizes.len()).rev() {
        out[k] = i % sizes[k];
        i /= sizes[k];
    }
    out
}

pub fn encode_tuple(coords: &[Elem], sizes: &[usize]) -> usize {
    coords
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&c, &s)| acc * s + c)
}

/// A sup-lattice congruence stored as the closure operator sending each
/// element to the maximum of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatCongruence {
    class_max: Vec<Elem>,
}

impl LatCongruence {
    pub fn identity(lat: &SupLattice) -> Self {
        LatCongruence {
            class_max: (0..lat.len()).collect(),
        }
    }

    pub fn class_max(&self, x: Elem) -> Elem {
        self.class_max[x]
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.class_max
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_max[a] == self.class_max[b]
    }

    pub fn is_identity(&self) -> bool {
        self.class_max.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// Class maxima in id order.
    pub fn maxima(&self) -> Vec<Elem> {
        (0..self.class_max.len())
            .filter(|&x| self.class_max[x] == x)
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller id as root for reproducible class listings
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Least sup-lattice congruence containing the given pairs.
pub fn congruence_closure(lat: &SupLattice, pairs: &[(Elem, Elem)]) -> LatCongruence {
    congruence_closure_with(lat, pairs, &[])
}

/// Least congruence containing `pairs` that is also compatible with every
/// unary map in `maps`: `(u, v)` related implies `(m[u], m[v])` related.
/// With the scalar actions as maps this yields module congruences.
pub fn congruence_closure_with(
    lat: &SupLattice,
    pairs: &[(Elem, Elem)],
    maps: &[&[Elem]],
) -> LatCongruence {
    let n = lat.len();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    loop {
        let mut changed = false;
        for b in 0..n {
            let r = uf.find(b);
            if r == b {
                continue;
            }
            for c in 0..n {
                changed |= uf.union(lat.join2(r, c), lat.join2(b, c));
            }
            for map in maps {
                changed |= uf.union(map[r], map[b]);
            }
        }
        if !changed {
            break;
        }
    }
    let mut class_join = vec![lat.bot(); n];
    for x in 0..n {
        let r = uf.find(x);
        class_join[r] = lat.join2(class_join[r], x);
    }
    let class_max = (0..n).map(|x| class_join[uf.find(x)]).collect();
    LatCongruence { class_max }
}

/// Quotient of a lattice by a congruence, carried on the class maxima.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub lattice: SupLattice,
    /// element of the original lattice -> element of the quotient
    pub projection: Vec<Elem>,
    /// element of the quotient -> class maximum in the original lattice
    pub representative: Vec<Elem>,
}

pub fn quotient(lat: &SupLattice, cong: &LatCongruence) -> Result<Quotient> {
    let maxima = cong.maxima();
    let mut position = vec![usize::MAX; lat.len()];
    for (i, &m) in maxima.iter().enumerate() {
        position[m] = i;
    }
    let names = maxima.iter().map(|&m| lat.name(m).to_string()).collect();
    let lattice = SupLattice::from_order(names, |a, b| lat.leq(maxima[a], maxima[b]))?;
    let projection = (0..lat.len())
        .map(|x| position[cong.class_max(x)])
        .collect();
    Ok(Quotient {
        lattice,
        projection,
        representative: maxima,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn order(elements: &[&str], leq: &[(&str, &str)]) -> Result<SupLattice> {
        validate_suplattice(&RawLattice::Order {
            elements: s(elements),
            leq: leq
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        })
    }

    fn diamond() -> SupLattice {
        order(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap()
    }

    fn chain(n: usize) -> SupLattice {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        SupLattice::from_order(names, |a, b| a <= b).unwrap()
    }

    #[test]
    fn two_chain() {
        let l = order(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.bot(), 0);
        assert_eq!(l.top(), 1);
        assert_eq!(l.join_irreducibles(), &[1]);
    }

    #[test]
    fn diamond_join_irreducibles() {
        let l = diamond();
        assert_eq!(l.join_irreducibles(), &[1, 2]);
        assert_eq!(l.join([1, 2]), 3);
        assert_eq!(l.meet([1, 2]), 0);
    }

    #[test]
    fn bottom_need_not_be_first() {
        let l = order(&["1", "a", "0"], &[("0", "a"), ("a", "1")]).unwrap();
        assert_eq!(l.bot(), 2);
        assert_eq!(l.top(), 0);
        assert_eq!(l.join(std::iter::empty()), 2);
    }

    #[test]
    fn missing_top_is_missing_join() {
        let err = order(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap_err();
        assert!(matches!(err, Error::MissingJoin { .. }), "{err:?}");
    }

    #[test]
    fn cycle_is_rejected() {
        let err = order(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::NotAPartialOrder { .. }));
    }

    #[test]
    fn no_bottom() {
        let err = order(&["a", "b", "1"], &[("a", "1"), ("b", "1")]).unwrap_err();
        assert_eq!(err, Error::NoBottom);
        assert_eq!(order(&[], &[]).unwrap_err(), Error::NoBottom);
    }

    #[test]
    fn unknown_and_duplicate_names() {
        assert!(matches!(
            order(&["0", "1"], &[("0", "2")]).unwrap_err(),
            Error::UnknownElement { .. }
        ));
        assert_eq!(
            order(&["0", "0"], &[]).unwrap_err(),
            Error::DuplicateName("0".into())
        );
    }

    #[test]
    fn join_table_input() {
        let d = diamond();
        let raw = d.to_raw_joins();
        assert_eq!(validate_suplattice(&raw).unwrap(), d);
        // drop one entry and its mirror
        if let RawLattice::Joins { elements, mut join } = raw {
            join.retain(|(a, b, _)| !((a == "a" && b == "b") || (a == "b" && b == "a")));
            let err = validate_suplattice(&RawLattice::Joins { elements, join }).unwrap_err();
            assert!(matches!(err, Error::MissingJoin { .. }));
        }
    }

    #[test]
    fn meets_and_empty_meet() {
        let l = chain(3);
        assert_eq!(l.meet(std::iter::empty()), 2);
        assert_eq!(l.meet([1]), 1);
        assert_eq!(l.join_irreducibles(), &[1, 2]);
    }

    #[test]
    fn congruence_examples() {
        let c2 = chain(2);
        assert!(congruence_closure(&c2, &[]).is_identity());
        let total = congruence_closure(&c2, &[(0, 1)]);
        assert_eq!(total.as_slice(), &[1, 1]);

        let d = diamond();
        let c = congruence_closure(&d, &[(1, 3)]);
        assert_eq!(c.as_slice(), &[0, 3, 2, 3]);
        let q = quotient(&d, &c).unwrap();
        assert_eq!(q.lattice.len(), 3);
        assert_eq!(q.lattice.names(), &["0", "b", "1"]);
        assert!(q.lattice.leq(0, 1) && q.lattice.leq(1, 2));
        assert_eq!(q.projection, vec![0, 2, 1, 2]);
    }

    #[test]
    fn quotient_by_identity_and_total() {
        let d = diamond();
        let q = quotient(&d, &LatCongruence::identity(&d)).unwrap();
        assert_eq!(q.lattice, d);
        assert_eq!(q.projection, vec![0, 1, 2, 3]);
        let all = congruence_closure(&d, &[(0, 3)]);
        assert_eq!(quotient(&d, &all).unwrap().lattice.len(), 1);
    }

    #[test]
    fn product_of_chains() {
        let c2 = chain(2);
        let p = SupLattice::product(&[&c2, &c2]).unwrap();
        assert_eq!(p.names(), &["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        assert_eq!(p.join_irreducibles(), &[1, 2]);
        assert_eq!(SupLattice::product(&[]).unwrap().len(), 1);
    }
}
