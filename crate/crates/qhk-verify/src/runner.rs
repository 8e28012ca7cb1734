//! Orchestration: runs the selected checks for every requested model size
//! and assembles the machine-readable output.

use qhk_algebra::Result;
use qhk_ops::CoefficientId;

use crate::checks::{
    check_corollary, check_lemma1, check_lemma2, check_lemma3, check_structure, check_traces,
    CheckContext,
};
use crate::kernel::kernel_oracle;
use crate::report::{ConfigEcho, RunOutput};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Lemma1,
    Lemma2,
    Lemma3,
    Corollary,
    Traces,
    Kernel,
    All,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Lemma1 => "lemma1",
            CheckKind::Lemma2 => "lemma2",
            CheckKind::Lemma3 => "lemma3",
            CheckKind::Corollary => "corollary",
            CheckKind::Traces => "traces",
            CheckKind::Kernel => "kernel",
            CheckKind::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ns: Vec<u32>,
    pub check: CheckKind,
    pub seed: u64,
    pub samples: usize,
    pub flip_omega_h: bool,
    pub perturb: Option<CoefficientId>,
    pub force_large_n: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            ns: vec![2],
            check: CheckKind::All,
            seed: 12345,
            samples: 50,
            flip_omega_h: false,
            perturb: None,
            force_large_n: false,
        }
    }
}

pub fn run_all(config: &RunConfig) -> Result<RunOutput> {
    let mut reports = Vec::new();
    let mut kernels = Vec::new();
    for &n in &config.ns {
        let ctx = CheckContext::new(n, config.flip_omega_h, config.perturb)?;
        let want = |k: CheckKind| config.check == k || config.check == CheckKind::All;
        if config.check == CheckKind::All {
            reports.push(check_structure(&ctx)?);
        }
        if want(CheckKind::Lemma1) {
            reports.push(check_lemma1(&ctx)?);
        }
        if want(CheckKind::Lemma2) {
            reports.push(check_lemma2(&ctx)?);
        }
        if want(CheckKind::Lemma3) {
            let (main, sub) = check_lemma3(&ctx)?;
            reports.push(main);
            reports.push(sub);
        }
        if want(CheckKind::Corollary) {
            let (main, sub) = check_corollary(&ctx)?;
            reports.push(main);
            reports.push(sub);
        }
        if want(CheckKind::Traces) {
            reports.push(check_traces(&ctx, config.seed, config.samples)?);
        }
        if want(CheckKind::Kernel) {
            kernels.push(kernel_oracle(&ctx, config.force_large_n)?);
        }
    }
    Ok(RunOutput {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: ConfigEcho {
            ns: config.ns.clone(),
            check: config.check.as_str().to_string(),
            seed: config.seed,
            samples: config.samples,
            flip_omega_h: config.flip_omega_h,
            perturb_coeff: config.perturb.map(|p| {
                match p {
                    CoefficientId::ValuePart => "value-part",
                    CoefficientId::WedgePart => "wedge-part",
                    CoefficientId::DualPart => "dual-part",
                }
                .to_string()
            }),
            force_large_n: config.force_large_n,
        },
        reports,
        kernel: kernels,
    })
}
