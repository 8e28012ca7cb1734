//! Verification harness: structured checks of every closed-form pipeline
//! value, exact trace identities, structural invariants, and the exact
//! kernel oracle, with deterministic machine-readable reports.

#![forbid(unsafe_code)]

pub mod checks;
pub mod kernel;
pub mod report;
pub mod rng;
pub mod runner;

pub use checks::{
    check_corollary, check_lemma1, check_lemma2, check_lemma3, check_structure, check_traces,
    CheckContext,
};
pub use kernel::kernel_oracle;
pub use report::{CheckReport, CheckStatus, KernelReport, RunOutput};
pub use runner::{run_all, CheckKind, RunConfig};
