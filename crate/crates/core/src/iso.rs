//! Isomorphism search for lattices, quantales and modules.
//!
//! A lattice isomorphism is determined by where it sends the
//! join-irreducibles, so the search backtracks over irreducible images
//! (grouped by invariant fingerprints) and only extends and checks complete
//! assignments.

use crate::error::{Error, Result};
use crate::lattice::{Elem, SupLattice};
use crate::module::{same_ring, Module};
use crate::quantale::Quantale;

type Fingerprint = Vec<usize>;

fn lattice_fingerprints(lat: &SupLattice) -> Vec<Fingerprint> {
    let irr = lat.join_irreducibles();
    let mut lower_covers = vec![0; lat.len()];
    for (_, b) in lat.covers() {
        lower_covers[b] += 1;
    }
    (0..lat.len())
        .map(|x| {
            vec![
                lat.down_set(x).count_ones(..),
                lat.up_set(x).count_ones(..),
                irr.contains(&x) as usize,
                lower_covers[x],
            ]
        })
        .collect()
}

fn sorted_profile(lat: &SupLattice, items: impl Iterator<Item = Elem>) -> Vec<usize> {
    let mut v: Vec<usize> = items.map(|y| lat.down_set(y).count_ones(..)).collect();
    v.sort_unstable();
    v
}

fn quantale_fingerprints(q: &Quantale) -> Vec<Fingerprint> {
    let lat = q.lattice();
    let n = q.len();
    let mut fps = lattice_fingerprints(lat);
    for (x, fp) in fps.iter_mut().enumerate() {
        fp.push((x == q.unit()) as usize);
        fp.push(lat.down_set(q.mul(x, x)).count_ones(..));
        fp.extend(sorted_profile(lat, (0..n).map(|y| q.mul(x, y))));
        fp.extend(sorted_profile(lat, (0..n).map(|y| q.mul(y, x))));
    }
    fps
}

fn multiset(fps: &[Fingerprint]) -> Vec<&Fingerprint> {
    let mut v: Vec<&Fingerprint> = fps.iter().collect();
    v.sort();
    v
}

/// Extends an assignment on join-irreducibles to the whole lattice.
fn extend(a: &SupLattice, b: &SupLattice, irr: &[Elem], images: &[Elem]) -> Vec<Elem> {
    (0..a.len())
        .map(|x| {
            b.join(
                irr.iter()
                    .zip(images)
                    .filter(|(&j, _)| a.leq(j, x))
                    .map(|(_, &img)| img),
            )
        })
        .collect()
}

fn is_order_iso(a: &SupLattice, b: &SupLattice, map: &[Elem]) -> bool {
    let mut seen = vec![false; b.len()];
    for &y in map {
        if std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..a.len()).all(|x| (0..a.len()).all(|y| a.leq(x, y) == b.leq(map[x], map[y])))
}

/// Backtracking search for a lattice isomorphism `a -> b` that respects the
/// fingerprints and passes `accept`. Returns the full forward table.
fn search(
    a: &SupLattice,
    b: &SupLattice,
    fp_a: &[Fingerprint],
    fp_b: &[Fingerprint],
    accept: &mut dyn FnMut(&[Elem]) -> bool,
) -> Option<Vec<Elem>> {
    if a.len() != b.len() || multiset(fp_a) != multiset(fp_b) {
        return None;
    }
    let irr = a.join_irreducibles_linear();
    let targets: Vec<Vec<Elem>> = irr
        .iter()
        .map(|&j| {
            b.join_irreducibles()
                .iter()
                .copied()
                .filter(|&k| fp_b[k] == fp_a[j])
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(irr.len());
    let mut used = vec![false; b.len()];
    fn go(
        depth: usize,
        ctx: (&SupLattice, &SupLattice, &[Elem], &[Vec<Elem>]),
        images: &mut Vec<Elem>,
        used: &mut [bool],
        accept: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> Option<Vec<Elem>> {
        let (a, b, irr, targets) = ctx;
        if depth == irr.len() {
            let map = extend(a, b, irr, images);
            return (is_order_iso(a, b, &map) && accept(&map)).then_some(map);
        }
        let j = irr[depth];
        for &k in &targets[depth] {
            if used[k] {
                continue;
            }
            // order among irreducibles must match in both directions
            let consistent = irr[..depth]
                .iter()
                .zip(images.iter())
                .all(|(&i, &img)| a.leq(i, j) == b.leq(img, k) && a.leq(j, i) == b.leq(k, img));
            if !consistent {
                continue;
            }
            used[k] = true;
            images.push(k);
            if let Some(found) = go(depth + 1, ctx, images, used, accept) {
                return Some(found);
            }
            images.pop();
            used[k] = false;
        }
        None
    }
    go(0, (a, b, &irr, &targets), &mut images, &mut used, accept)
}

fn invert(map: &[Elem]) -> Vec<Elem> {
    let mut inv = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

pub fn lattice_isomorphic(a: &SupLattice, b: &SupLattice) -> Option<Vec<Elem>> {
    search(
        a,
        b,
        &lattice_fingerprints(a),
        &lattice_fingerprints(b),
        &mut |_| true,
    )
}

/// Mutually inverse element maps between two quantales.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantaleIso {
    pub fwd: Vec<Elem>,
    pub bwd: Vec<Elem>,
}

impl QuantaleIso {
    pub fn identity(q: &Quantale) -> QuantaleIso {
        QuantaleIso {
            fwd: (0..q.len()).collect(),
            bwd: (0..q.len()).collect(),
        }
    }

    pub fn inverse(&self) -> QuantaleIso {
        QuantaleIso {
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
        }
    }

    /// `other` after `self`.
    pub fn then(&self, other: &QuantaleIso) -> QuantaleIso {
        QuantaleIso {
            fwd: self.fwd.iter().map(|&x| other.fwd[x]).collect(),
            bwd: other.bwd.iter().map(|&x| self.bwd[x]).collect(),
        }
    }

    /// Checks, in order: mutually inverse bijections, unit, multiplication,
    /// joins. The first failure is reported with a witness.
    pub fn verify(&self, q: &Quantale, r: &Quantale) -> Result<()> {
        let reject = |law: &str, witness: String| {
            Err(Error::CertificateRejected {
                law: law.into(),
                witness,
            })
        };
        let n = q.len();
        if self.fwd.len() != n || self.bwd.len() != r.len() || n != r.len() {
            return reject("bijection", format!("sizes {} and {}", n, r.len()));
        }
        if self.fwd.iter().chain(&self.bwd).any(|&x| x >= n) {
            return reject("bijection", "image out of range".into());
        }
        let (ql, rl) = (q.lattice(), r.lattice());
        for x in 0..n {
            if self.bwd[self.fwd[x]] != x {
                return reject(
                    "bijection",
                    format!("bwd(fwd({})) != {}", ql.name(x), ql.name(x)),
                );
            }
            if self.fwd[self.bwd[x]] != x {
                return reject(
                    "bijection",
                    format!("fwd(bwd({})) != {}", rl.name(x), rl.name(x)),
                );
            }
        }
        if self.fwd[q.unit()] != r.unit() {
            return reject(
                "unit",
                format!("unit sent to {}", rl.name(self.fwd[q.unit()])),
            );
        }
        for a in 0..n {
            for b in 0..n {
                if self.fwd[q.mul(a, b)] != r.mul(self.fwd[a], self.fwd[b]) {
                    return reject(
                        "multiplication",
                        format!("({}, {})", ql.name(a), ql.name(b)),
                    );
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.fwd[ql.join2(a, b)] != rl.join2(self.fwd[a], self.fwd[b]) {
                    return reject("joins", format!("({}, {})", ql.name(a), ql.name(b)));
                }
            }
        }
        Ok(())
    }
}

/// Some isomorphism `q -> r` if one exists.
pub fn quantale_isomorphic(q: &Quantale, r: &Quantale) -> Option<QuantaleIso> {
    if q.len() != r.len()
        || q.is_commutative() != r.is_commutative()
        || q.is_integral() != r.is_integral()
    {
        return None;
    }
    let n = q.len();
    let fwd = search(
        q.lattice(),
        r.lattice(),
        &quantale_fingerprints(q),
        &quantale_fingerprints(r),
        &mut |map| {
            map[q.unit()] == r.unit()
                && (0..n).all(|a| (0..n).all(|b| map[q.mul(a, b)] == r.mul(map[a], map[b])))
        },
    )?;
    let bwd = invert(&fwd);
    Some(QuantaleIso { fwd, bwd })
}

fn module_fingerprints(m: &Module) -> Vec<Fingerprint> {
    let lat = m.lattice();
    let mut fps = lattice_fingerprints(lat);
    for (x, fp) in fps.iter_mut().enumerate() {
        if let Some(ring) = m.left_ring() {
            fp.extend((0..ring.len()).map(|a| lat.down_set(m.act_left(a, x)).count_ones(..)));
        }
        if let Some(ring) = m.right_ring() {
            fp.extend((0..ring.len()).map(|a| lat.down_set(m.act_right(x, a)).count_ones(..)));
        }
    }
    fps
}

/// Some isomorphism `m -> n` of modules over the same rings, preserving every
/// action present.
pub fn module_isomorphic(m: &Module, n: &Module) -> Option<Vec<Elem>> {
    let rings_match = |a: Option<&std::sync::Arc<Quantale>>,
                       b: Option<&std::sync::Arc<Quantale>>| match (a, b) {
        (None, None) => true,
        (Some(a), Some(b)) => same_ring(a, b),
        _ => false,
    };
    if !rings_match(m.left_ring(), n.left_ring()) || !rings_match(m.right_ring(), n.right_ring()) {
        return None;
    }
    search(
        m.lattice(),
        n.lattice(),
        &module_fingerprints(m),
        &module_fingerprints(n),
        &mut |map| {
            (0..m.len()).all(|x| {
                m.left_ring().is_none_or(|q| {
                    (0..q.len()).all(|a| map[m.act_left(a, x)] == n.act_left(a, map[x]))
                }) && m.right_ring().is_none_or(|q| {
                    (0..q.len()).all(|a| map[m.act_right(x, a)] == n.act_right(map[x], a))
                })
            })
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Limits;
    use crate::quantale::{powerset_quantale, validate_quantale, Monoid};
    use std::sync::Arc;

    fn lat(names: &[&str], leq: impl Fn(Elem, Elem) -> bool) -> Arc<SupLattice> {
        Arc::new(
            SupLattice::from_order(names.iter().map(|s| s.to_string()).collect(), leq).unwrap(),
        )
    }

    fn two() -> Quantale {
        validate_quantale(lat(&["0", "1"], |a, b| a <= b), vec![0, 0, 0, 1], 1).unwrap()
    }

    #[test]
    fn two_is_isomorphic_to_itself() {
        let iso = quantale_isomorphic(&two(), &two()).unwrap();
        assert_eq!(iso, QuantaleIso::identity(&two()));
        iso.verify(&two(), &two()).unwrap();
    }

    #[test]
    fn sizes_differ() {
        let c3 = validate_quantale(
            lat(&["0", "a", "1"], |a, b| a <= b),
            vec![0, 0, 0, 0, 1, 1, 0, 1, 2],
            2,
        )
        .unwrap();
        assert!(quantale_isomorphic(&two(), &c3).is_none());
    }

    #[test]
    fn relabelled_powerset() {
        let z2 = Monoid {
            elements: vec!["e".into(), "g".into()],
            mul: vec![0, 1, 1, 0],
            unit: 0,
        };
        let swapped = Monoid {
            elements: vec!["g".into(), "e".into()],
            mul: vec![1, 0, 0, 1],
            unit: 1,
        };
        let a = powerset_quantale(&z2, &Limits::default()).unwrap();
        let b = powerset_quantale(&swapped, &Limits::default()).unwrap();
        let iso = quantale_isomorphic(&a, &b).unwrap();
        iso.verify(&a, &b).unwrap();
        assert_eq!(iso.fwd, vec![0, 2, 1, 3]);
        // the {e,z} monoid has an idempotent instead of an involution
        let ez = Monoid {
            elements: vec!["e".into(), "z".into()],
            mul: vec![0, 1, 1, 1],
            unit: 0,
        };
        let c = powerset_quantale(&ez, &Limits::default()).unwrap();
        assert!(quantale_isomorphic(&a, &c).is_none());
    }

    #[test]
    fn m3_is_not_boolean() {
        let m3 = lat(&["0", "a", "b", "c", "1"], |x, y| {
            x == y || x == 0 || y == 4
        });
        let chain = lat(&["0", "a", "b", "c", "1"], |x, y| x <= y);
        assert!(lattice_isomorphic(&m3, &chain).is_none());
        assert!(lattice_isomorphic(&m3, &m3).is_some());
    }

    #[test]
    fn tampered_iso_is_rejected() {
        let z2 = Monoid {
            elements: vec!["e".into(), "g".into()],
            mul: vec![0, 1, 1, 0],
            unit: 0,
        };
        let q = powerset_quantale(&z2, &Limits::default()).unwrap();
        let bad = QuantaleIso {
            fwd: vec![0, 2, 1, 3],
            bwd: vec![0, 2, 1, 3],
        };
        let err = bad.verify(&q, &q).unwrap_err();
        assert!(matches!(err, Error::CertificateRejected { ref law, .. } if law == "unit"));
    }
}
