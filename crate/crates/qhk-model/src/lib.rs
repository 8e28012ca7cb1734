//! Pointwise model of an almost-quaternionic Hermitian structure over a
//! pair of symplectic complex vector spaces: admissible triples of complex
//! structures, the fundamental 4-form, the embedded module of covariant
//! derivatives and its six-summand decomposition.

#![forbid(unsafe_code)]

pub mod domain;
pub mod embed;
pub mod jtriple;
pub mod probe;

pub use domain::{
    decompose_preimage_field, domain_basis, domain_decompose, domain_dim, DomainComponents,
    DomainProjectors, COMPONENT_NAMES,
};
pub use embed::{l20_basis, l20_dim, lambda4_index, proportionality_ratio, s2h_basis, Embedding};
pub use jtriple::{build_j_triple, build_omega, kahler_form, two_form_eval, AdmissibleBasis};
pub use probe::{alpha0, gamma0, gamma0_alpha0};
