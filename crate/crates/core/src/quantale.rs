//! Unital quantales on finite lattices.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Limits, Result};
use crate::lattice::{Elem, SupLattice};

/// A finite lattice with an associative, unital multiplication that
/// distributes over joins in both arguments.
#[derive(Clone)]
pub struct Quantale {
    lat: Arc<SupLattice>,
    mul: Vec<Elem>,
    unit: Elem,
    // b\a and a/b tables, filled on first use
    left_res: OnceLock<Vec<Elem>>,
    right_res: OnceLock<Vec<Elem>>,
}

impl fmt::Debug for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quantale")
            .field("elements", &self.lat.names())
            .field("unit", &self.lat.name(self.unit))
            .finish()
    }
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        self.unit == other.unit && self.mul == other.mul && self.lat == other.lat
    }
}

impl Eq for Quantale {}

/// Checks the quantale axioms. Distributivity is checked over binary joins
/// and the empty join, which covers all joins of a finite lattice.
pub fn validate_quantale(lat: Arc<SupLattice>, mul: Vec<Elem>, unit: Elem) -> Result<Quantale> {
    let n = lat.len();
    if mul.len() != n * n || unit >= n || mul.iter().any(|&c| c >= n) {
        return Err(Error::IncompleteTable(format!(
            "multiplication table needs {} entries over {} elements",
            n * n,
            n
        )));
    }
    let m = |a: Elem, b: Elem| mul[a * n + b];
    let nm = |x: Elem| lat.name(x).to_string();
    for x in 0..n {
        if m(unit, x) != x || m(x, unit) != x {
            return Err(Error::NotUnital {
                unit: nm(unit),
                witness: nm(x),
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = m(a, b);
            for c in 0..n {
                if m(ab, c) != m(a, m(b, c)) {
                    return Err(Error::NotAssociative {
                        a: nm(a),
                        b: nm(b),
                        c: nm(c),
                    });
                }
            }
        }
    }
    let bot = lat.bot();
    for a in 0..n {
        if m(a, bot) != bot || m(bot, a) != bot {
            return Err(Error::NotJoinDistributive {
                a: nm(a),
                b: nm(bot),
                c: nm(bot),
            });
        }
        for b in 0..n {
            for c in b + 1..n {
                let bc = lat.join2(b, c);
                if m(a, bc) != lat.join2(m(a, b), m(a, c))
                    || m(bc, a) != lat.join2(m(b, a), m(c, a))
                {
                    return Err(Error::NotJoinDistributive {
                        a: nm(a),
                        b: nm(b),
                        c: nm(c),
                    });
                }
            }
        }
    }
    Ok(Quantale {
        lat,
        mul,
        unit,
        left_res: OnceLock::new(),
        right_res: OnceLock::new(),
    })
}

impl Quantale {
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

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.len() + b]
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    /// `b\a`: the largest `c` with `b*c <= a`.
    pub fn left_residual(&self, b: Elem, a: Elem) -> Elem {
        let n = self.len();
        let table = self.left_res.get_or_init(|| {
            let mut t = vec![0; n * n];
            for b in 0..n {
                for a in 0..n {
                    t[b * n + a] = self
                        .lat
                        .join((0..n).filter(|&c| self.lat.leq(self.mul(b, c), a)));
                }
            }
            t
        });
        table[b * n + a]
    }

    /// `a/b`: the largest `c` with `c*b <= a`.
    pub fn right_residual(&self, a: Elem, b: Elem) -> Elem {
        let n = self.len();
        let table = self.right_res.get_or_init(|| {
            let mut t = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = self
                        .lat
                        .join((0..n).filter(|&c| self.lat.leq(self.mul(c, b), a)));
                }
            }
            t
        });
        table[a * n + b]
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_integral(&self) -> bool {
        self.unit == self.lat.top()
    }

    /// Same lattice with the multiplication reversed. Right modules over a
    /// quantale are left modules over its opposite.
    pub fn opposite(&self) -> Quantale {
        let n = self.len();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = self.mul(b, a);
            }
        }
        Quantale {
            lat: self.lat.clone(),
            mul,
            unit: self.unit,
            left_res: OnceLock::new(),
            right_res: OnceLock::new(),
        }
    }
}

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    pub elements: Vec<String>,
    pub mul: Vec<Elem>,
    pub unit: Elem,
}

impl Monoid {
    pub fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 {
            return Err(Error::MonoidInvalid("empty carrier".into()));
        }
        if self.mul.len() != n * n || self.unit >= n || self.mul.iter().any(|&c| c >= n) {
            return Err(Error::MonoidInvalid(
                "incomplete multiplication table".into(),
            ));
        }
        let m = |a: Elem, b: Elem| self.mul[a * n + b];
        for x in 0..n {
            if m(self.unit, x) != x || m(x, self.unit) != x {
                return Err(Error::MonoidInvalid(format!(
                    "{} is not a unit (fails at {})",
                    self.elements[self.unit], self.elements[x]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::MonoidInvalid(format!(
                            "not associative at ({}, {}, {})",
                            self.elements[a], self.elements[b], self.elements[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// All subsets of a monoid ordered by inclusion, with the pointwise product.
/// Subset ids are bitmasks over the monoid's declaration order.
pub fn powerset_quantale(monoid: &Monoid, limits: &Limits) -> Result<Quantale> {
    monoid.validate()?;
    let k = monoid.elements.len();
    let size = 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
    limits.check("powerset quantale", size)?;
    let names = (0..size)
        .map(|mask| {
            let members: Vec<&str> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| monoid.elements[i].as_str())
                .collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let lat = SupLattice::from_order(names, |a, b| a & b == a)?;
    let mut mul = vec![0; size * size];
    for a in 0..size {
        for b in 0..size {
            let mut prod = 0usize;
            for x in (0..k).filter(|i| a >> i & 1 == 1) {
                for y in (0..k).filter(|i| b >> i & 1 == 1) {
                    prod |= 1 << monoid.mul[x * k + y];
                }
            }
            mul[a * size + b] = prod;
        }
    }
    validate_quantale(Arc::new(lat), mul, 1 << monoid.unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(names: &[&str]) -> Arc<SupLattice> {
        let names = names.iter().map(|s| s.to_string()).collect();
        Arc::new(SupLattice::from_order(names, |a, b| a <= b).unwrap())
    }

    fn two() -> Quantale {
        validate_quantale(chain(&["0", "1"]), vec![0, 0, 0, 1], 1).unwrap()
    }

    fn c3_nil() -> Quantale {
        // 0 < a < 1, a*a = 0
        validate_quantale(chain(&["0", "a", "1"]), vec![0, 0, 0, 0, 0, 1, 0, 1, 2], 2).unwrap()
    }

    #[test]
    fn two_is_commutative_and_integral() {
        let q = two();
        assert!(q.is_commutative() && q.is_integral());
        assert_eq!(q.left_residual(1, 0), 0);
        assert_eq!(q.right_residual(0, 1), 0);
    }

    #[test]
    fn bottom_as_unit_is_rejected() {
        let err = validate_quantale(chain(&["0", "1"]), vec![0, 0, 0, 1], 0).unwrap_err();
        assert!(matches!(err, Error::NotUnital { .. }));
    }

    #[test]
    fn nilpotent_chain_residuals() {
        let q = c3_nil();
        assert_eq!(q.left_residual(1, 0), 1);
        for a in 0..3 {
            assert_eq!(q.left_residual(q.unit(), a), a);
            assert_eq!(q.right_residual(a, q.unit()), a);
            for b in 0..3 {
                assert_eq!(q.right_residual(a, b), q.left_residual(b, a));
            }
        }
    }

    #[test]
    fn non_distributive_table() {
        // a*a = 1 breaks a*1 = a*(a v 1)
        let err = validate_quantale(chain(&["0", "a", "1"]), vec![0, 0, 0, 0, 2, 1, 0, 1, 2], 2)
            .unwrap_err();
        assert!(matches!(err, Error::NotJoinDistributive { .. }), "{err:?}");
    }

    fn z2() -> Monoid {
        Monoid {
            elements: vec!["e".into(), "g".into()],
            mul: vec![0, 1, 1, 0],
            unit: 0,
        }
    }

    #[test]
    fn powerset_of_z2() {
        let q = powerset_quantale(&z2(), &Limits::default()).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.lattice().names(), &["{}", "{e}", "{g}", "{e,g}"]);
        assert_eq!(q.unit(), 1);
        assert_eq!(q.mul(1, 2), 2);
        assert_eq!(q.mul(3, 3), 3);
        assert_eq!(q.mul(2, 2), 1);
        assert!(q.is_commutative());
        assert!(!q.is_integral());
    }

    #[test]
    fn powerset_of_trivial_monoid_is_two() {
        let m = Monoid {
            elements: vec!["e".into()],
            mul: vec![0],
            unit: 0,
        };
        let q = powerset_quantale(&m, &Limits::default()).unwrap();
        assert_eq!(q.mul_table(), two().mul_table());
        assert_eq!(q.unit(), 1);
    }

    #[test]
    fn powerset_with_idempotent() {
        let m = Monoid {
            elements: vec!["e".into(), "z".into()],
            mul: vec![0, 1, 1, 1],
            unit: 0,
        };
        let q = powerset_quantale(&m, &Limits::default()).unwrap();
        assert_eq!(q.mul(2, 2), 2);
    }

    #[test]
    fn invalid_monoid() {
        let m = Monoid {
            elements: vec!["e".into(), "z".into()],
            mul: vec![0, 1, 1, 0],
            unit: 1,
        };
        assert!(matches!(
            powerset_quantale(&m, &Limits::default()),
            Err(Error::MonoidInvalid(_))
        ));
    }

    #[test]
    fn opposite_of_commutative_is_equal() {
        let q = c3_nil();
        assert_eq!(q.opposite(), q);
    }
}
