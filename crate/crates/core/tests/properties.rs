mod common;

use std::sync::{Arc, OnceLock};

use common::*;
use proptest::prelude::*;
use quantale_core::enumerate::{lattices_of_size, left_actions};
use quantale_core::json::{module_json, no_names, parse_structure, quantale_json};
use quantale_core::{
    congruence_closure, end_quantale, enumerate_homs, powerset_quantale, quantale_isomorphic,
    quotient, submodule_generated, tensor_product, validate_quantale, Elem, Limits, Module, Monoid,
    Quantale, SupLattice,
};

fn lattices() -> &'static [Vec<Arc<SupLattice>>] {
    static L: OnceLock<Vec<Vec<Arc<SupLattice>>>> = OnceLock::new();
    L.get_or_init(|| {
        (0..=6)
            .map(|n| {
                lattices_of_size(n)
                    .unwrap()
                    .into_iter()
                    .map(Arc::new)
                    .collect()
            })
            .collect()
    })
}

fn lattice(max: usize) -> impl Strategy<Value = Arc<SupLattice>> {
    (1..=max).prop_flat_map(|n| {
        let ls = &lattices()[n];
        (0..ls.len()).prop_map(move |i| lattices()[n][i].clone())
    })
}

/// Monoids on up to three elements (element 0 is the unit).
fn monoid() -> impl Strategy<Value = Monoid> {
    (1usize..=3)
        .prop_flat_map(|k| (Just(k), proptest::collection::vec(0..k, (k - 1) * (k - 1))))
        .prop_filter_map("not associative", |(k, cells)| {
            let mut mul = vec![0; k * k];
            for a in 0..k {
                for b in 0..k {
                    mul[a * k + b] = if a == 0 {
                        b
                    } else if b == 0 {
                        a
                    } else {
                        cells[(a - 1) * (k - 1) + b - 1]
                    };
                }
            }
            let m = Monoid {
                elements: (0..k).map(|i| format!("m{i}")).collect(),
                mul,
                unit: 0,
            };
            m.validate().ok().map(|_| m)
        })
}

fn small_catalog_quantales() -> Vec<Arc<Quantale>> {
    catalog_quantales()
        .into_iter()
        .filter(|(n, _)| n != "MAT2")
        .map(|(_, q)| q)
        .collect()
}

/// Catalog quantales, their opposites and powerset quantales of small
/// monoids.
fn quantale() -> impl Strategy<Value = Arc<Quantale>> {
    prop_oneof![
        (0..small_catalog_quantales().len(), any::<bool>()).prop_map(|(i, op)| {
            let q = small_catalog_quantales()[i].clone();
            if op {
                Arc::new(q.opposite())
            } else {
                q
            }
        }),
        monoid().prop_map(|m| Arc::new(powerset_quantale(&m, &Limits::default()).unwrap())),
    ]
}

/// A left module: a small quantale acting on a small lattice.
fn left_module() -> impl Strategy<Value = Module> {
    (quantale(), lattice(4), any::<prop::sample::Index>()).prop_filter_map(
        "no action",
        |(q, l, pick)| {
            let actions = left_actions(&q, &l);
            (!actions.is_empty()).then(|| actions[pick.index(actions.len())].clone())
        },
    )
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0usize..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// Least join-compatible equivalence containing `pairs`, by intersecting
/// every compatible partition that contains them.
fn least_congruence_oracle(l: &SupLattice, pairs: &[(Elem, Elem)]) -> Vec<Vec<bool>> {
    let n = l.len();
    let mut best = vec![vec![true; n]; n];
    let mut labels = vec![0usize; n];
    fn partitions(i: usize, max: usize, labels: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i == labels.len() {
            f(labels);
            return;
        }
        for c in 0..=max {
            labels[i] = c;
            partitions(i + 1, max.max(c + 1), labels, f);
        }
    }
    partitions(0, 0, &mut labels, &mut |lab: &[usize]| {
        let ok = pairs.iter().all(|&(a, b)| lab[a] == lab[b])
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    lab[a] != lab[b] || (0..n).all(|c| lab[l.join2(a, c)] == lab[l.join2(b, c)])
                })
            });
        if ok {
            for a in 0..n {
                for b in 0..n {
                    best[a][b] &= lab[a] == lab[b];
                }
            }
        }
    });
    best
}

fn relabelled(q: &Quantale, perm: &[usize]) -> Quantale {
    // element x of q becomes element perm[x]
    let n = q.len();
    let mut inv = vec![0; n];
    for (x, &p) in perm.iter().enumerate() {
        inv[p] = x;
    }
    let names = (0..n).map(|i| format!("r{i}")).collect();
    let lat = SupLattice::from_order(names, |a, b| q.lattice().leq(inv[a], inv[b])).unwrap();
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[perm[a] * n + perm[b]] = perm[q.mul(a, b)];
        }
    }
    validate_quantale(Arc::new(lat), mul, perm[q.unit()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_laws(l in lattice(6)) {
        let n = l.len();
        for a in 0..n {
            prop_assert_eq!(l.join2(a, l.bot()), a);
            for b in 0..n {
                prop_assert_eq!(l.join2(a, b), l.join2(b, a));
                for c in 0..n {
                    prop_assert_eq!(l.join2(a, l.join2(b, c)), l.join2(l.join2(a, b), c));
                }
            }
        }
        for s in subsets(n) {
            let folded = s.iter().fold(l.bot(), |acc, &x| l.join2(acc, x));
            prop_assert_eq!(l.join(s.iter().copied()), folded);
        }
        for x in 0..n {
            let below = l.join_irreducibles().iter().copied().filter(|&j| l.leq(j, x));
            prop_assert_eq!(l.join(below), x);
        }
    }

    #[test]
    fn congruence_closure_is_least(l in lattice(5), raw in proptest::collection::vec((0usize..5, 0usize..5), 0..3)) {
        let n = l.len();
        let pairs: Vec<(Elem, Elem)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let cong = congruence_closure(&l, &pairs);
        let oracle = least_congruence_oracle(&l, &pairs);
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(cong.related(a, b), oracle[a][b]);
            }
        }
        let q = quotient(&l, &cong).unwrap();
        for s in subsets(n) {
            let image = q.lattice.join(s.iter().map(|&x| q.projection[x]));
            prop_assert_eq!(q.projection[l.join(s.iter().copied())], image);
        }
    }

    #[test]
    fn galois_laws(q in quantale()) {
        let n = q.len();
        let l = q.lattice();
        for a in 0..n {
            for b in 0..n {
                let lr = q.left_residual(b, a);
                let rr = q.right_residual(a, b);
                for c in 0..n {
                    prop_assert_eq!(l.leq(q.mul(b, c), a), l.leq(c, lr));
                    prop_assert_eq!(l.leq(q.mul(c, b), a), l.leq(c, rr));
                }
            }
        }
        if q.is_commutative() {
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(q.left_residual(b, a), q.right_residual(a, b));
                }
            }
        }
    }

    #[test]
    fn multiplication_distributes(q in quantale()) {
        let l = q.lattice();
        for s in subsets(q.len()) {
            let js = l.join(s.iter().copied());
            for x in 0..q.len() {
                prop_assert_eq!(q.mul(x, js), l.join(s.iter().map(|&y| q.mul(x, y))));
                prop_assert_eq!(q.mul(js, x), l.join(s.iter().map(|&y| q.mul(y, x))));
            }
        }
    }

    #[test]
    fn iso_search_is_symmetric_and_transitive(q in quantale(), seed in any::<u64>()) {
        let n = q.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let r = relabelled(&q, &perm);
        let fwd = quantale_isomorphic(&q, &r);
        prop_assert!(fwd.is_some());
        fwd.unwrap().verify(&q, &r).unwrap();
        let back = quantale_isomorphic(&r, &q).unwrap();
        back.verify(&r, &q).unwrap();
        let r2 = relabelled(&r, &perm);
        let qr = quantale_isomorphic(&q, &r).unwrap();
        let rr2 = quantale_isomorphic(&r, &r2).unwrap();
        qr.then(&rr2).verify(&q, &r2).unwrap();
    }

    #[test]
    fn generated_submodules_form_a_closure(m in left_module(), a in any::<u32>(), b in any::<u32>()) {
        let n = m.len();
        let pick = |bits: u32| -> Vec<Elem> { (0..n).filter(|i| bits >> i & 1 == 1).collect() };
        let (small, mut big) = (pick(a), pick(a));
        big.extend(pick(b));
        let s = submodule_generated(&m, &small);
        for &x in &small {
            prop_assert!(s.contains(x));
        }
        let t = submodule_generated(&m, &big);
        for x in s.elements() {
            prop_assert!(t.contains(x));
        }
        prop_assert_eq!(submodule_generated(&m, &s.elements()).elements(), s.elements());
    }

    #[test]
    fn hom_sets_are_closed_under_joins(m in left_module(), l in lattice(4), pick in any::<prop::sample::Index>()) {
        let q = m.left_ring().unwrap().clone();
        let actions = left_actions(&q, &l);
        prop_assume!(!actions.is_empty());
        let n = actions[pick.index(actions.len())].clone();
        let homs = enumerate_homs(&m, &n, &Limits::default()).unwrap();
        let lat = n.lattice();
        for f in homs.tables() {
            for g in homs.tables() {
                let joined: Vec<Elem> = f.iter().zip(g).map(|(&x, &y)| lat.join2(x, y)).collect();
                prop_assert!(homs.position(&joined).is_some());
            }
        }
        let mut ours = homs.tables().to_vec();
        ours.sort();
        prop_assert_eq!(ours, brute_force_homs(&m, &n, homs.kind()));
    }

    #[test]
    fn end_is_a_quantale(m in left_module()) {
        let end = end_quantale(&m, &Limits::with_cap(64)).unwrap();
        let q = end.quantale.clone();
        let again = validate_quantale(q.lattice_arc().clone(), q.mul_table().to_vec(), q.unit());
        prop_assert!(again.is_ok());
    }

    #[test]
    fn tensor_is_bilinear(m in left_module(), pick in any::<prop::sample::Index>(), l in lattice(4)) {
        let q = m.left_ring().unwrap().clone();
        // a right module over q is a left module over its opposite
        let op = Arc::new(q.opposite());
        let actions = left_actions(&op, &l);
        prop_assume!(!actions.is_empty());
        let left_op = actions[pick.index(actions.len())].clone();
        let table: Vec<Elem> = left_op.left().unwrap().table().to_vec();
        let x_mod = Module::new(left_op.lattice_arc().clone(), None, Some((q.clone(), table))).unwrap();
        let t = tensor_product(&x_mod, &m, &Limits::with_cap(64)).unwrap();
        let (xl, ml, tl) = (x_mod.lattice(), m.lattice(), t.lattice());
        for xs in subsets(xl.len()) {
            for y in 0..ml.len() {
                let lhs = t.elementary(xl.join(xs.iter().copied()), y);
                prop_assert_eq!(lhs, tl.join(xs.iter().map(|&x| t.elementary(x, y))));
            }
        }
        for ys in subsets(ml.len()) {
            for x in 0..xl.len() {
                let lhs = t.elementary(x, ml.join(ys.iter().copied()));
                prop_assert_eq!(lhs, tl.join(ys.iter().map(|&y| t.elementary(x, y))));
            }
        }
        for a in 0..q.len() {
            for x in 0..xl.len() {
                for y in 0..ml.len() {
                    prop_assert_eq!(t.elementary(x_mod.act_right(x, a), y), t.elementary(x, m.act_left(a, y)));
                }
            }
        }
        let relat = SupLattice::from_order(
            (0..t.len()).map(|i| format!("t{i}")).collect(),
            |a, b| t.closed_set(a).is_subset(t.closed_set(b)),
        );
        prop_assert!(relat.is_ok());
    }

    #[test]
    fn json_round_trip(m in left_module()) {
        let limits = Limits::with_cap(64);
        let q = m.left_ring().unwrap().clone();
        let text = quantale_json(&q).to_string();
        let q2 = parse_structure(&text, &no_names, &limits).unwrap().into_quantale().unwrap();
        prop_assert_eq!(&*q, &*q2);
        let text = module_json(&m).to_string();
        let m2 = parse_structure(&text, &no_names, &limits).unwrap().into_module().unwrap();
        prop_assert!(m == m2);
    }
}
