mod common;

use std::sync::Arc;

use common::*;
use quantale_core::{
    dual_module, enumerate_homs_of_kind, is_progenerator, is_separator_on, morita_equivalent,
    verify_certificate, Error, HomKind, Limits, Module,
};

#[test]
fn alpha_onto_means_alpha_injective() {
    for (name, m) in catalog_left_modules() {
        let r = is_progenerator(&m, &Limits::default()).unwrap();
        if r.alpha_surjective {
            assert!(r.alpha_injective, "{name}");
        }
    }
}

#[test]
fn duals_of_progenerators_are_progenerators() {
    let limits = Limits::default();
    let mut seen = 0;
    for (name, m) in catalog_left_modules() {
        if m.len() > 9 || !is_progenerator(&m, &limits).unwrap().progenerator {
            continue;
        }
        // M* as a right Q-module is a left module over the opposite ring
        let dual = dual_module(&m, &limits)
            .unwrap()
            .module
            .right_view()
            .mirror();
        let r = is_progenerator(&dual, &limits).unwrap();
        assert!(r.progenerator, "{name}");
        seen += 1;
    }
    assert!(seen >= 5);
}

#[test]
fn morita_search_is_symmetric() {
    let limits = Limits::with_cap(64);
    let (two, mat) = (ring("TWO"), ring("MAT2"));
    let cert = morita_equivalent(&two, &mat, 4, &[], &limits)
        .unwrap()
        .certificate
        .unwrap();
    let seed = cert.dual_bimodule(&limits).unwrap().left_view();
    assert!(Arc::ptr_eq(seed.left_ring().unwrap(), &mat));
    let back = morita_equivalent(&mat, &two, 1, &[seed], &limits).unwrap();
    let back = back.certificate.expect("dual is a progenerator over R");
    assert_eq!(back.module.len(), 4);
    let family = vec![("MAT2-reg".to_string(), module("MAT2-reg").right_view())];
    verify_certificate(&mat, &two, &back, &family, &limits).unwrap();
}

#[test]
fn self_equivalences() {
    let limits = Limits::with_cap(64);
    for (name, q) in catalog_quantales() {
        if q.len() > 4 {
            continue;
        }
        let s = morita_equivalent(&q, &q, 2, &[Module::left_regular(&q)], &limits).unwrap();
        let cert = s.certificate.unwrap_or_else(|| panic!("{name}"));
        let family = vec![(name.clone(), Module::right_regular(&q))];
        verify_certificate(&q, &q, &cert, &family, &limits).unwrap();
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let limits = Limits::with_cap(64);
    let (two, mat) = (ring("TWO"), ring("MAT2"));
    let cert = morita_equivalent(&two, &mat, 4, &[], &limits)
        .unwrap()
        .certificate
        .unwrap();
    let mut bad = cert.clone();
    bad.end_iso.fwd.swap(0, 1);
    bad.end_iso.bwd = {
        let mut b = vec![0; bad.end_iso.fwd.len()];
        for (x, &y) in bad.end_iso.fwd.iter().enumerate() {
            b[y] = x;
        }
        b
    };
    assert!(matches!(
        verify_certificate(&two, &mat, &bad, &[], &limits),
        Err(Error::CertificateRejected { .. })
    ));
    let mut bad = cert.clone();
    bad.alpha.fwd.swap(0, 1);
    assert!(matches!(
        verify_certificate(&two, &mat, &bad, &[], &limits),
        Err(Error::CertificateRejected { .. })
    ));
}

#[test]
fn generators_separate_the_catalog_family() {
    let limits = Limits::default();
    let names = ["TWO-chain", "chain3", "diamond", "M3", "N5"];
    let mut family = Vec::new();
    for a in names {
        for b in names {
            let homs =
                enumerate_homs_of_kind(&module(a), &module(b), HomKind::Left, &limits).unwrap();
            let hs: Vec<_> = homs.homs().collect();
            for (f, g) in hs.iter().zip(hs.iter().skip(1)).step_by(4) {
                family.push((f.clone(), g.clone()));
            }
        }
    }
    assert!(family.len() > 20);
    assert!(is_separator_on(&module("diamond"), &family, &limits).unwrap());
    assert!(is_separator_on(&module("TWO-chain"), &family, &limits).unwrap());
    assert!(!is_separator_on(&module("one"), &family, &limits).unwrap());
}
