//! Traces, generators, projectives, progenerators and Morita equivalence.
//!
//! Throughout, `M` is a left `Q`-module, `E = End(M)` with `h g = g o h`, so
//! `M` is a `Q`-`E` bimodule, and `N = M*` is the dual `E`-`Q` bimodule.

use std::sync::Arc;

use rayon::prelude::*;

use crate::enumerate::left_modules_up_to;
use crate::error::{Error, Limits, Result};
use crate::homs::{
    dual_module, end_quantale, enumerate_homs_of_kind, DualModule, EndQuantale, Hom, HomKind,
};
use crate::iso::{quantale_isomorphic, QuantaleIso};
use crate::lattice::Elem;
use crate::module::{same_ring, submodule_generated, Module, Submodule};
use crate::quantale::Quantale;
use crate::tensor::{assoc_iso, right_unit_iso, tensor_hom_between, tensor_product, TensorProduct};

fn left_only(m: &Module) -> Result<Module> {
    m.require_left("this check")?;
    Ok(m.left_view())
}

/// `tr(M)`: the submodule of `Q` generated by the images of all homs
/// `M -> Q`.
pub fn trace(m: &Module, limits: &Limits) -> Result<Submodule> {
    let m = left_only(m)?;
    let q = m.left_ring().unwrap();
    let reg = Module::regular(q);
    let homs = enumerate_homs_of_kind(&m, &reg, HomKind::Left, limits)?;
    let mut images: Vec<Elem> = homs.tables().iter().flatten().copied().collect();
    images.sort_unstable();
    images.dedup();
    Ok(submodule_generated(&reg, &images))
}

pub fn is_generator(m: &Module, limits: &Limits) -> Result<bool> {
    Ok(trace(m, limits)?.is_everything())
}

/// A section/retraction pair exhibiting `Q` as a retract of `M^I`, with
/// `I = Hom(M, Q)`: `s(q) = (q m_f)_f` and `r(x) = join of f(x_f)`.
#[derive(Debug, Clone)]
pub struct PowerRetract {
    /// one chosen element per hom `M -> Q`
    pub components: Vec<Elem>,
}

/// Cross-check for generators: looks for `Q` as a retract of a power of
/// `M`. `r o s = id` holds iff `join of f(m_f) = 1`, and the largest
/// choice is `m_f = join {m : f(m) <= 1}`.
pub fn generator_retract(m: &Module, limits: &Limits) -> Result<Option<PowerRetract>> {
    let m = left_only(m)?;
    let q = m.left_ring().unwrap().clone();
    let reg = Module::regular(&q);
    let homs = enumerate_homs_of_kind(&m, &reg, HomKind::Left, limits)?;
    let (ql, ml) = (q.lattice(), m.lattice());
    let components: Vec<Elem> = homs
        .tables()
        .iter()
        .map(|f| ml.join((0..m.len()).filter(|&x| ql.leq(f[x], q.unit()))))
        .collect();
    // r(s(a)) for every scalar, computed from the formulas
    for a in 0..q.len() {
        let back = ql.join(
            homs.tables()
                .iter()
                .zip(&components)
                .map(|(f, &mf)| f[m.act_left(a, mf)]),
        );
        if back != a {
            return Ok(None);
        }
    }
    Ok(Some(PowerRetract { components }))
}

/// `M` as a retract of `Q^k`: homs `mu = (f_i) : M -> Q^k` and
/// `theta(q) = join of q_i m_i` with `theta o mu = id`.
#[derive(Debug, Clone)]
pub struct FreeRetract {
    /// `(f_i, m_i)`: position of `f_i` in `Hom(M, Q)` and the element `m_i`
    pub pairs: Vec<(usize, Elem)>,
}

/// Cross-check for projectives. For each join-irreducible `j` look for a
/// functional `f` and an element `u` with `f(j) u = j` and `f(x) u <= x`
/// everywhere; such pairs exist for all `j` exactly when `M` is a retract
/// of `Q^k` with `k = |J(M)|`.
pub fn projective_retract(m: &Module, limits: &Limits) -> Result<Option<FreeRetract>> {
    let m = left_only(m)?;
    let q = m.left_ring().unwrap().clone();
    let reg = Module::regular(&q);
    let homs = enumerate_homs_of_kind(&m, &reg, HomKind::Left, limits)?;
    let ml = m.lattice();
    let mut pairs = Vec::new();
    for &j in ml.join_irreducibles() {
        let found = homs.tables().iter().enumerate().find_map(|(i, f)| {
            (0..m.len())
                .find(|&u| {
                    m.act_left(f[j], u) == j && (0..m.len()).all(|x| ml.leq(m.act_left(f[x], u), x))
                })
                .map(|u| (i, u))
        });
        match found {
            Some(p) => pairs.push(p),
            None => return Ok(None),
        }
    }
    // theta(mu(x)) = x
    for x in 0..m.len() {
        let back = ml.join(pairs.iter().map(|&(i, u)| m.act_left(homs.table(i)[x], u)));
        if back != x {
            return Err(Error::law("free retract does not split"));
        }
    }
    Ok(Some(FreeRetract { pairs }))
}

/// `End(M)`, `M*`, and the two evaluation maps.
#[derive(Debug, Clone)]
pub struct MoritaContext {
    pub dual: DualModule,
    /// `M (x)_E M*`
    pub alpha_tensor: TensorProduct,
    /// `m (x) f -> f(m)`, into `Q`
    pub alpha: Hom,
    /// `M* (x)_Q M`
    pub beta_tensor: TensorProduct,
    /// `f (x) m -> f m`, into `E`
    pub beta: Hom,
}

impl MoritaContext {
    pub fn end(&self) -> &EndQuantale {
        &self.dual.end
    }

    /// `M` as a `Q`-`E` bimodule.
    pub fn bimodule(&self) -> &Module {
        &self.dual.end.bimodule
    }
}

pub fn morita_context(m: &Module, limits: &Limits) -> Result<MoritaContext> {
    let m = left_only(m)?;
    let q = m.left_ring().unwrap().clone();
    let dual = dual_module(&m, limits)?;
    let bim = dual.end.bimodule.clone();
    let e = dual.end.quantale.clone();
    let alpha_tensor = tensor_product(&bim, &dual.module, limits)?;
    let alpha =
        alpha_tensor.induced_hom(&Module::regular(&q), HomKind::Both, |x, f| dual.pair(x, f))?;
    let beta_tensor = tensor_product(&dual.module, &bim, limits)?;
    // f m is always an endomorphism; the dual construction checked that
    let outer: Vec<Vec<Elem>> = (0..dual.homs.len())
        .map(|f| (0..bim.len()).map(|x| dual.outer(f, x)).collect())
        .collect::<Result<_>>()?;
    let beta = beta_tensor.induced_hom(&Module::regular(&e), HomKind::Both, |f, x| outer[f][x])?;
    Ok(MoritaContext {
        dual,
        alpha_tensor,
        alpha,
        beta_tensor,
        beta,
    })
}

/// Projective iff `beta` is onto `E`.
pub fn is_projective(m: &Module, limits: &Limits) -> Result<bool> {
    Ok(morita_context(m, limits)?.beta.is_surjective())
}

#[derive(Debug, Clone)]
pub struct ProgeneratorReport {
    pub generator: bool,
    pub projective: bool,
    pub alpha_surjective: bool,
    pub alpha_injective: bool,
    pub beta_surjective: bool,
    pub beta_injective: bool,
    pub progenerator: bool,
    pub alpha_inverse: Option<Hom>,
    pub beta_inverse: Option<Hom>,
    pub context: MoritaContext,
}

/// Progenerator iff `alpha` and `beta` are both bijective. The report also
/// carries the separate generator and projectivity verdicts, and checks
/// that they agree with the bijectivity test.
pub fn is_progenerator(m: &Module, limits: &Limits) -> Result<ProgeneratorReport> {
    let context = morita_context(m, limits)?;
    let generator = is_generator(m, limits)?;
    let (alpha, beta) = (&context.alpha, &context.beta);
    let alpha_surjective = alpha.is_surjective();
    let alpha_injective = alpha.is_injective();
    let beta_surjective = beta.is_surjective();
    let beta_injective = beta.is_injective();
    let projective = beta_surjective;
    if alpha_surjective != generator {
        return Err(Error::law(
            "alpha is onto Q but the trace is not Q, or vice versa",
        ));
    }
    if alpha_surjective && !alpha_injective {
        return Err(Error::law("alpha is onto but not injective"));
    }
    let progenerator = alpha_surjective && alpha_injective && beta_surjective && beta_injective;
    if progenerator != (generator && projective) {
        return Err(Error::law(
            "bijectivity of alpha and beta disagrees with generator and projective",
        ));
    }
    let alpha_inverse = alpha.inverse().filter(|_| progenerator);
    let beta_inverse = beta.inverse().filter(|_| progenerator);
    Ok(ProgeneratorReport {
        generator,
        projective,
        alpha_surjective,
        alpha_injective,
        beta_surjective,
        beta_injective,
        progenerator,
        alpha_inverse,
        beta_inverse,
        context,
    })
}

/// One verified isomorphism from the progenerator toolkit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgItem {
    pub label: &'static str,
    pub description: &'static str,
    /// size of the two sides
    pub size: usize,
}

/// Builds and checks the five isomorphisms available for a progenerator:
///
/// 1. `M* ~ Hom_E(M_E, E_E)`, `f -> (m -> f m)`;
/// 2. `M ~ Hom_E(_E N, _E E)`, `m -> (f -> f m)`;
/// 3. `Q ~ End(M_E)`, `q -> (m -> q m)`, and `Q ~ End(_E N)`, `q -> (f -> f q)`;
/// 4. `M ~ Hom_Q(N_Q, Q_Q)`, `m -> (f -> f(m))`;
/// 5. `E ~ End(N_Q)`, `h -> (f -> h f)`.
pub fn prog_isomorphisms(m: &Module, limits: &Limits) -> Result<Vec<ProgItem>> {
    let report = is_progenerator(m, limits)?;
    if !report.progenerator {
        return Err(Error::NotProgenerator(
            "alpha and beta are not both bijective".into(),
        ));
    }
    let ctx = &report.context;
    let d = &ctx.dual;
    let bim = ctx.bimodule();
    let q = bim.left_ring().unwrap().clone();
    let e = d.end.quantale.clone();
    let n = &d.module;
    let reg_q = Module::regular(&q);
    let reg_e = Module::regular(&e);
    let mut items = Vec::new();
    let module_iso =
        |src: &Module, homs: &crate::homs::HomSet, table: Vec<Elem>| -> Result<usize> {
            let target = homs.as_module(limits)?;
            let hom = Hom::new(src.clone(), target, HomKind::Both, table)?;
            if !hom.is_bijective() {
                return Err(Error::law("map is not bijective"));
            }
            Ok(hom.src().len())
        };

    // (i)
    let homs = enumerate_homs_of_kind(bim, &reg_e, HomKind::Right, limits)?;
    let table = (0..n.len())
        .map(|f| homs.position_of_fn("lambda(f)", |x| d.outer(f, x).unwrap()))
        .collect::<Result<Vec<_>>>()?;
    items.push(ProgItem {
        label: "i",
        description: "M* = Hom_E(M_E, E_E)",
        size: module_iso(n, &homs, table)?,
    });

    // (ii)
    let homs = enumerate_homs_of_kind(n, &reg_e, HomKind::Left, limits)?;
    let table = (0..bim.len())
        .map(|x| homs.position_of_fn("f -> f m", |f| d.outer(f, x).unwrap()))
        .collect::<Result<Vec<_>>>()?;
    items.push(ProgItem {
        label: "ii",
        description: "M = Hom_E(_E N, _E E)",
        size: module_iso(bim, &homs, table)?,
    });

    // (iii)
    let end_m = end_quantale(&bim.right_view(), limits)?;
    let sigma = (0..q.len())
        .map(|a| {
            end_m
                .homs
                .position_of_fn("sigma(q)", |x| bim.act_left(a, x))
        })
        .collect::<Result<Vec<_>>>()?;
    quantale_iso_from(&sigma)
        .ok_or_else(|| Error::law("sigma is not bijective"))?
        .verify(&q, &end_m.quantale)?;
    let end_n = end_quantale(&n.left_view(), limits)?;
    let tau = (0..q.len())
        .map(|a| end_n.homs.position_of_fn("tau(q)", |f| n.act_right(f, a)))
        .collect::<Result<Vec<_>>>()?;
    quantale_iso_from(&tau)
        .ok_or_else(|| Error::law("tau is not bijective"))?
        .verify(&q, &end_n.quantale)?;
    items.push(ProgItem {
        label: "iii",
        description: "Q = End(M_E) = End(_E N)",
        size: q.len(),
    });

    // (iv)
    let homs = enumerate_homs_of_kind(n, &reg_q, HomKind::Right, limits)?;
    let table = (0..bim.len())
        .map(|x| homs.position_of_fn("f -> f(m)", |f| d.pair(x, f)))
        .collect::<Result<Vec<_>>>()?;
    items.push(ProgItem {
        label: "iv",
        description: "M = Hom_Q(N_Q, Q_Q)",
        size: module_iso(bim, &homs, table)?,
    });

    // (v)
    let end_nq = end_quantale(&n.right_view(), limits)?;
    let rho = (0..e.len())
        .map(|h| {
            end_nq
                .homs
                .position_of_fn("h -> (f -> h f)", |f| n.act_left(h, f))
        })
        .collect::<Result<Vec<_>>>()?;
    quantale_iso_from(&rho)
        .ok_or_else(|| Error::law("h -> (f -> h f) is not bijective"))?
        .verify(&e, &end_nq.quantale)?;
    items.push(ProgItem {
        label: "v",
        description: "E = End(N_Q)",
        size: e.len(),
    });
    Ok(items)
}

fn quantale_iso_from(fwd: &[Elem]) -> Option<QuantaleIso> {
    let mut bwd = vec![usize::MAX; fwd.len()];
    for (x, &y) in fwd.iter().enumerate() {
        if y >= fwd.len() || bwd[y] != usize::MAX {
            return None;
        }
        bwd[y] = x;
    }
    Some(QuantaleIso {
        fwd: fwd.to_vec(),
        bwd,
    })
}

/// Whether `M` separates every supplied pair of distinct parallel homs
/// `f, g : X -> Y`, i.e. some `e : M -> X` has `f o e != g o e`. This only
/// speaks about the given family.
pub fn is_separator_on(m: &Module, family: &[(Hom, Hom)], limits: &Limits) -> Result<bool> {
    for (f, g) in family {
        f.check_parallel(g)?;
        if f.table() == g.table() {
            continue;
        }
        let homs = enumerate_homs_of_kind(m, f.src(), f.kind(), limits)?;
        let separated = homs
            .tables()
            .iter()
            .any(|e| e.iter().any(|&x| f.apply(x) != g.apply(x)));
        if !separated {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tables for an isomorphism out of a tensor product, with the carrier
/// spelled out so the tensor can be rebuilt independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorIsoTables {
    pub carrier: Vec<Vec<(Elem, Elem)>>,
    pub fwd: Vec<Elem>,
    pub bwd: Vec<Elem>,
}

/// Evidence that `Q` and `R` are Morita equivalent via a progenerator `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoritaCertificate {
    pub q: Arc<Quantale>,
    pub r: Arc<Quantale>,
    /// left `Q`-module
    pub module: Module,
    /// `End(P)` in canonical order
    pub end_tables: Vec<Vec<Elem>>,
    /// `R -> End(P)`
    pub end_iso: QuantaleIso,
    /// `P*` in canonical order
    pub dual_tables: Vec<Vec<Elem>>,
    /// `P (x)_R P* -> Q`
    pub alpha: TensorIsoTables,
    /// `P* (x)_Q P -> R`
    pub beta: TensorIsoTables,
}

/// Everything derived from `(Q, R, P, iso)`; shared by the search and the
/// verifier.
struct Derived {
    /// `P` as a `Q`-`R` bimodule, `p r = iso(r)(p)`
    bimodule: Module,
    dual: crate::homs::HomSet,
    dual_module: Module,
    alpha_tensor: TensorProduct,
    alpha: Hom,
    beta_tensor: TensorProduct,
    beta: Hom,
}

fn reject(law: &str, witness: impl Into<String>) -> Error {
    Error::CertificateRejected {
        law: law.into(),
        witness: witness.into(),
    }
}

fn derive(
    q: &Arc<Quantale>,
    r: &Arc<Quantale>,
    p: &Module,
    end: &EndQuantale,
    iso: &QuantaleIso,
    limits: &Limits,
) -> Result<Derived> {
    let n = p.len();
    let mut table = vec![0; r.len() * n];
    for a in 0..r.len() {
        table[a * n..(a + 1) * n].copy_from_slice(end.homs.table(iso.fwd[a]));
    }
    let bimodule = p
        .with_right(r.clone(), table)
        .map_err(|e| reject("transported action", e.to_string()))?;
    let dual = enumerate_homs_of_kind(&bimodule, &Module::regular(q), HomKind::Left, limits)?;
    let dual_module = dual.as_module(limits)?;
    let alpha_tensor = tensor_product(&bimodule, &dual_module, limits)?;
    let alpha = alpha_tensor
        .induced_hom(&Module::regular(q), HomKind::Both, |x, f| dual.table(f)[x])
        .map_err(|e| reject("alpha", e.to_string()))?;
    let beta_tensor = tensor_product(&dual_module, &bimodule, limits)?;
    let mut outer = vec![vec![0; n]; dual.len()];
    for (f, row) in outer.iter_mut().enumerate() {
        for (x, slot) in row.iter_mut().enumerate() {
            let h = end
                .homs
                .position_of_fn("f m", |y| p.act_left(dual.table(f)[y], x))?;
            *slot = iso.bwd[h];
        }
    }
    let beta = beta_tensor
        .induced_hom(&Module::regular(r), HomKind::Both, |f, x| outer[f][x])
        .map_err(|e| reject("beta", e.to_string()))?;
    Ok(Derived {
        bimodule,
        dual,
        dual_module,
        alpha_tensor,
        alpha,
        beta_tensor,
        beta,
    })
}

fn iso_tables(tensor: &TensorProduct, hom: &Hom) -> Option<TensorIsoTables> {
    let inv = hom.inverse()?;
    Some(TensorIsoTables {
        carrier: (0..tensor.len()).map(|t| tensor.pairs(t)).collect(),
        fwd: hom.table().to_vec(),
        bwd: inv.into_table(),
    })
}

/// Certificate for a given progenerator candidate, if `End(P)` is
/// isomorphic to `R` and `alpha`, `beta` are bijective.
pub fn certificate_for(
    q: &Arc<Quantale>,
    r: &Arc<Quantale>,
    p: &Module,
    limits: &Limits,
) -> Result<Option<MoritaCertificate>> {
    let p = left_only(p)?;
    if !same_ring(p.left_ring().unwrap(), q) {
        return Err(Error::RingMismatch("module is not over Q".into()));
    }
    let end = end_quantale(&p, limits)?;
    if end.len() != r.len() {
        return Ok(None);
    }
    let Some(iso) = quantale_isomorphic(r, &end.quantale) else {
        return Ok(None);
    };
    let end_tables = end.homs.tables().to_vec();
    let d = derive(q, r, &p, &end, &iso, limits)?;
    let (Some(alpha), Some(beta)) = (
        iso_tables(&d.alpha_tensor, &d.alpha),
        iso_tables(&d.beta_tensor, &d.beta),
    ) else {
        return Ok(None);
    };
    Ok(Some(MoritaCertificate {
        q: q.clone(),
        r: r.clone(),
        module: p,
        end_tables,
        end_iso: iso,
        dual_tables: d.dual.tables().to_vec(),
        alpha,
        beta,
    }))
}

impl MoritaCertificate {
    /// `P*` as an `R`-`Q` bimodule, rebuilt from the certificate.
    pub fn dual_bimodule(&self, limits: &Limits) -> Result<Module> {
        let end = end_quantale(&self.module, limits)?;
        Ok(derive(&self.q, &self.r, &self.module, &end, &self.end_iso, limits)?.dual_module)
    }
}

/// Printed next to every negative search result.
pub const SEARCH_DISCLAIMER: &str =
    "the search is bounded: no certificate among small modules does not prove the quantales inequivalent";

/// Outcome of a bounded search.
#[derive(Debug, Clone)]
pub struct MoritaSearch {
    pub certificate: Option<MoritaCertificate>,
    /// modules examined (up to isomorphism)
    pub candidates: usize,
    pub bound: usize,
}

/// Searches left `Q`-modules with at most `bound` elements (after any
/// `seeds`) for a progenerator whose endomorphism quantale is isomorphic to
/// `R`. The first hit in canonical order is returned. Finding nothing says
/// nothing about larger modules.
pub fn morita_equivalent(
    q: &Arc<Quantale>,
    r: &Arc<Quantale>,
    bound: usize,
    seeds: &[Module],
    limits: &Limits,
) -> Result<MoritaSearch> {
    let mut candidates: Vec<Module> = seeds.iter().map(|s| s.left_view()).collect();
    candidates.extend(left_modules_up_to(q, bound, limits)?);
    let found = candidates
        .par_iter()
        .map(|p| certificate_for(q, r, p, limits))
        .find_map_first(|res| match res {
            Ok(Some(cert)) => Some(Ok(cert)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .transpose()?;
    Ok(MoritaSearch {
        certificate: found,
        candidates: candidates.len(),
        bound,
    })
}

/// What a successful verification checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// names of the modules `X` for which `(X (x)_Q P) (x)_R P* ~ X` was
    /// checked, with their sizes
    pub round_trips: Vec<(String, usize)>,
}

/// Re-derives everything from `Q`, `R` and the certificate's module and
/// isomorphism, compares with the recorded tables, and checks the round
/// trip `(X (x)_Q P) (x)_R P* -> X (x)_Q (P (x)_R P*) -> X (x)_Q Q -> X`
/// for every right `Q`-module `X` in `family`.
pub fn verify_certificate(
    q: &Arc<Quantale>,
    r: &Arc<Quantale>,
    cert: &MoritaCertificate,
    family: &[(String, Module)],
    limits: &Limits,
) -> Result<VerifyReport> {
    let p = &cert.module;
    if p.left_ring().is_none_or(|ring| !same_ring(ring, q)) || p.right().is_some() {
        return Err(reject("module", "P must be a left Q-module"));
    }
    let end = end_quantale(p, limits)?;
    if end.homs.tables() != cert.end_tables.as_slice() {
        return Err(reject(
            "end carrier",
            "recorded End(P) differs from enumeration",
        ));
    }
    cert.end_iso.verify(r, &end.quantale)?;
    let d = derive(q, r, p, &end, &cert.end_iso, limits)?;
    if d.dual.tables() != cert.dual_tables.as_slice() {
        return Err(reject(
            "dual carrier",
            "recorded P* differs from enumeration",
        ));
    }
    check_tensor_iso("alpha", &d.alpha_tensor, &d.alpha, &cert.alpha)?;
    check_tensor_iso("beta", &d.beta_tensor, &d.beta, &cert.beta)?;

    let mut round_trips = Vec::new();
    for (name, x) in family {
        if x.right_ring().is_none_or(|ring| !same_ring(ring, q)) {
            return Err(Error::RingMismatch(format!(
                "{name} is not a right Q-module"
            )));
        }
        let x = x.right_view();
        let a = assoc_iso(&x, &d.bimodule, &d.dual_module, limits)?;
        let unit = right_unit_iso(&x, limits)?;
        let id_x = Hom::identity(&x, HomKind::Right);
        let one_alpha = tensor_hom_between(&a.m_no, &unit.tensor, &id_x, &d.alpha)?;
        let composite = unit.iso.fwd.compose(&one_alpha.compose(&a.iso.fwd)?)?;
        let composite = Hom::new(
            a.mn_o.module.clone(),
            x.clone(),
            HomKind::Right,
            composite.into_table(),
        )
        .map_err(|e| reject("round trip", format!("{name}: {e}")))?;
        if !composite.is_bijective() {
            return Err(reject(
                "round trip",
                format!("{name}: composite is not bijective"),
            ));
        }
        round_trips.push((name.clone(), x.len()));
    }
    Ok(VerifyReport { round_trips })
}

fn check_tensor_iso(
    law: &str,
    tensor: &TensorProduct,
    hom: &Hom,
    recorded: &TensorIsoTables,
) -> Result<()> {
    let carrier: Vec<Vec<(Elem, Elem)>> = (0..tensor.len()).map(|t| tensor.pairs(t)).collect();
    if carrier != recorded.carrier {
        return Err(reject(law, "recorded tensor carrier differs"));
    }
    if hom.table() != recorded.fwd.as_slice() {
        let t = hom
            .table()
            .iter()
            .zip(&recorded.fwd)
            .position(|(a, b)| a != b)
            .unwrap_or(0);
        return Err(reject(law, format!("forward table differs at element {t}")));
    }
    let n = recorded.fwd.len();
    if recorded.bwd.len() != n || recorded.bwd.iter().any(|&y| y >= n) {
        return Err(reject(law, "inverse table has the wrong shape"));
    }
    for x in 0..n {
        if recorded.bwd[recorded.fwd[x]] != x || recorded.fwd[recorded.bwd[x]] != x {
            return Err(reject(law, format!("tables are not inverse at {x}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SupLattice;
    use crate::module::{free_module, validate_module, Side};
    use crate::quantale::validate_quantale;

    fn two() -> Arc<Quantale> {
        let lat =
            Arc::new(SupLattice::from_order(vec!["0".into(), "1".into()], |a, b| a <= b).unwrap());
        Arc::new(validate_quantale(lat, vec![0, 0, 0, 1], 1).unwrap())
    }

    fn over_two(q: &Arc<Quantale>, lat: SupLattice) -> Module {
        let n = lat.len();
        let mut act = vec![lat.bot(); n];
        act.extend(0..n);
        validate_module(q.clone(), Arc::new(lat), act, Side::Left).unwrap()
    }

    fn m3(q: &Arc<Quantale>) -> Module {
        let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        over_two(
            q,
            SupLattice::from_order(names, |x, y| x == y || x == 0 || y == 4).unwrap(),
        )
    }

    #[test]
    fn traces() {
        let q = two();
        let lim = Limits::default();
        assert!(trace(&Module::left_regular(&q), &lim)
            .unwrap()
            .is_everything());
        let one = Module::trivial(&Module::left_regular(&q).shape());
        assert_eq!(trace(&one, &lim).unwrap().elements(), vec![0]);
        assert!(!is_generator(&one, &lim).unwrap());
        assert!(generator_retract(&one, &lim).unwrap().is_none());
        assert!(generator_retract(&m3(&q), &lim).unwrap().is_some());
    }

    #[test]
    fn m3_is_not_projective() {
        let q = two();
        let lim = Limits::with_cap(64);
        assert!(!is_projective(&m3(&q), &lim).unwrap());
        assert!(projective_retract(&m3(&q), &lim).unwrap().is_none());
        let free = free_module(&q, 2, &lim).unwrap();
        assert!(is_projective(&free.module, &lim).unwrap());
        assert!(projective_retract(&free.module, &lim).unwrap().is_some());
    }

    #[test]
    fn progenerators() {
        let q = two();
        let lim = Limits::with_cap(64);
        assert!(
            is_progenerator(&Module::left_regular(&q), &lim)
                .unwrap()
                .progenerator
        );
        let free = free_module(&q, 2, &lim).unwrap();
        let items = prog_isomorphisms(&free.module, &lim).unwrap();
        assert_eq!(items.len(), 5);
        let one = Module::trivial(&Module::left_regular(&q).shape());
        assert!(matches!(
            prog_isomorphisms(&one, &lim),
            Err(Error::NotProgenerator(_))
        ));
    }

    #[test]
    fn self_equivalence() {
        let q = two();
        let lim = Limits::default();
        let search = morita_equivalent(&q, &q, 2, &[], &lim).unwrap();
        let cert = search.certificate.unwrap();
        assert_eq!(cert.module.len(), 2);
        let family = vec![("TWO".to_string(), Module::right_regular(&q))];
        let report = verify_certificate(&q, &q, &cert, &family, &lim).unwrap();
        assert_eq!(report.round_trips.len(), 1);
    }
}
