//! The algebraic conformal-Killing operator on 4-vector valued 1-forms and
//! the four projection pipelines extracting its components on the small
//! summands of the domain.

#![forbid(unsafe_code)]

pub mod ckt;
pub mod display;
pub mod pipeline;
pub mod stages;

pub use ckt::{ck_t, contraction_trace, wedge_trace, CkCoefficients, CoefficientId};
pub use pipeline::{cascade_to_ee_s3h_e, cascade_to_heee, pipeline_he, pipeline_hk, pipeline_s3h, PipelineResult, Stage};

pub use qhk_algebra::symplectic::{contract_omega_er, pr_lambda_r0};
pub use stages::contract_omega_e4;
