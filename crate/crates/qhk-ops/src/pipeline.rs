//! The four projection pipelines, each recording every intermediate stage.

use qhk_algebra::error::Result;
use qhk_algebra::{LabeledTensor, OneFormField};
use qhk_model::DomainProjectors;

use crate::ckt::{ck_t, CkCoefficients};
use crate::stages;

/// One named stage of a pipeline, carrying the module it lands in.
#[derive(Debug, Clone)]
pub struct Stage {
    pub name: &'static str,
    pub module: &'static str,
    pub value: LabeledTensor,
}

/// Ordered record of every intermediate of one pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub stages: Vec<Stage>,
}

impl PipelineResult {
    pub fn get(&self, name: &str) -> Option<&LabeledTensor> {
        self.stages.iter().find(|s| s.name == name).map(|s| &s.value)
    }

    pub fn final_value(&self) -> &LabeledTensor {
        &self.stages.last().expect("pipelines have stages").value
    }
}

/// The contraction cascade from the tensor form of a 4-vector valued field
/// down to the `[H E E E]` stage (no operator applied).
pub fn cascade_to_heee(tensor: &LabeledTensor) -> Result<Vec<Stage>> {
    let s1 = stages::contract_omega_e4(tensor)?;
    let s2 = stages::contract_omega_h_s2h(&s1)?;
    let s3 = stages::contract_omega_h_pair(&s2)?;
    Ok(vec![
        Stage { name: "omega_e", module: "EH(S2H)(L2T)", value: s1 },
        Stage { name: "omega_h1", module: "EH(L2T)", value: s2 },
        Stage { name: "omega_h2", module: "HEEE", value: s3 },
    ])
}

/// The cascade from the tensor form of a field to the `[E E (S3H) E]`
/// stage of the symmetric pipelines (no operator applied).
pub fn cascade_to_ee_s3h_e(tensor: &LabeledTensor) -> Result<Vec<Stage>> {
    let s1 = stages::contract_omega_h_split(tensor)?;
    let s2 = stages::sym_h_stage(&s1)?;
    let s3 = stages::contract_omega_e_l3(&s2)?;
    Ok(vec![
        Stage { name: "omega_h_split", module: "EE(L3T)", value: s1 },
        Stage { name: "sym_h", module: "EE(S3H)(L3E)", value: s2 },
        Stage { name: "omega_e_l3", module: "EE(S3H)E", value: s3 },
    ])
}

/// Projection onto the `H (x) E` summand: operator, symplectic trace, two
/// `H`-contractions, final `E`-contraction.
pub fn pipeline_he(eta: &OneFormField, coeffs: &CkCoefficients) -> Result<PipelineResult> {
    let t = ck_t(eta, coeffs)?;
    let tensor = t.to_tensor();
    let mut result = vec![Stage { name: "ck", module: "EH(L4T)", value: tensor.clone() }];
    result.extend(cascade_to_heee(&tensor)?);
    let heee = result.last().expect("cascade").value.clone();
    let fin = stages::contract_omega_e_final(&heee)?;
    result.push(Stage { name: "omega_e_final", module: "HE", value: fin });
    Ok(PipelineResult { stages: result })
}

/// Projection onto the `H (x) K` summand: the `[H E E E]` stage projected to
/// `H (x) E (x) L20E`, its skew defect, and the explicit complement
/// component.
pub fn pipeline_hk(
    eta: &OneFormField,
    coeffs: &CkCoefficients,
    proj: &DomainProjectors,
) -> Result<PipelineResult> {
    let t = ck_t(eta, coeffs)?;
    let tensor = t.to_tensor();
    let mut result = vec![Stage { name: "ck", module: "EH(L4T)", value: tensor.clone() }];
    result.extend(cascade_to_heee(&tensor)?);
    let heee = result.last().expect("cascade").value.clone();
    let projected = stages::pr_he_l20(&heee)?;
    result.push(Stage { name: "pr_he_l20", module: "HE(L20E)", value: projected.clone() });
    let alt = qhk_algebra::ops::alt_group(&projected.ungroup(), &[1, 2, 3])?;
    let defect = projected.ungroup().sub(&alt.ungroup())?;
    result.push(Stage { name: "skew_defect", module: "HEEE", value: defect });
    let k_component = proj.project_k(&projected)?;
    result.push(Stage { name: "k_component", module: "HK", value: k_component });
    Ok(PipelineResult { stages: result })
}

/// The two symmetric-side projections: the `[(S3H) L3E]` stage, its
/// primitive part, and the trace finish onto `(S3H) (x) E`.
pub fn pipeline_s3h(eta: &OneFormField, coeffs: &CkCoefficients) -> Result<PipelineResult> {
    let t = ck_t(eta, coeffs)?;
    let tensor = t.to_tensor();
    let mut result = vec![Stage { name: "ck", module: "EH(L4T)", value: tensor.clone() }];
    result.extend(cascade_to_ee_s3h_e(&tensor)?);
    let pre = result.last().expect("cascade").value.clone();
    let l3e = stages::pr_s3h_l3e(&pre)?;
    result.push(Stage { name: "pr_s3h_l3e", module: "(S3H)(L3E)", value: l3e.clone() });
    let primitive = stages::pr_s3h_l30e(&l3e)?;
    result.push(Stage { name: "pr_s3h_l30e", module: "(S3H)(L30E)", value: primitive });
    let finish = stages::contract_omega_e_s3h(&l3e)?;
    result.push(Stage { name: "omega_e_final", module: "(S3H)E", value: finish });
    Ok(PipelineResult { stages: result })
}
