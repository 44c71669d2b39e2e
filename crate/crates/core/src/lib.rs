//! Finite quantales, their modules, tensor products and Morita equivalence.

pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod homs;
pub mod iso;
pub mod json;
pub mod lattice;
pub mod module;
pub mod morita;
pub mod quantale;
pub mod tensor;

pub use error::{Error, Limits, Result};
pub use homs::{
    dual_basis, dual_basis_of, dual_module, end_quantale, enumerate_homs, enumerate_homs_of_kind,
    DualBasis, DualModule, EndQuantale, Hom, HomKind, HomSet,
};
pub use iso::{lattice_isomorphic, module_isomorphic, quantale_isomorphic, QuantaleIso};
pub use lattice::{
    congruence_closure, congruence_closure_with, quotient, validate_suplattice, Elem,
    LatCongruence, Quotient, RawLattice, SupLattice,
};
pub use module::{
    coequalizer, equalizer, free_module, product_module, submodule_generated, validate_module,
    verify_coequalizer, verify_equalizer, Action, Coequalizer, FreeModule, Module, ModuleShape,
    Product, Side, Submodule, UniversalReport,
};
pub use morita::{
    certificate_for, generator_retract, is_generator, is_progenerator, is_projective,
    is_separator_on, morita_context, morita_equivalent, prog_isomorphisms, projective_retract,
    trace, verify_certificate, MoritaCertificate, MoritaContext, MoritaSearch, ProgItem,
    ProgeneratorReport, TensorIsoTables, VerifyReport, SEARCH_DISCLAIMER,
};
pub use quantale::{powerset_quantale, validate_quantale, Monoid, Quantale};
pub use tensor::{
    adjunction_phi, assoc_iso, right_unit_iso, tensor_hom_between, tensor_of_morphisms,
    tensor_product, unit_iso, Adjunction, AssocIso, IsoPair, TensorProduct, UnitIso,
};
