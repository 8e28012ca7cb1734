use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The targeted module is zero-dimensional at this `n`; never counted as
    /// a pass.
    Vacuous,
}

/// Structured outcome of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub n: u32,
    pub status: CheckStatus,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// Whether a component of the kernel is identically zero across the whole
/// kernel basis.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentNorms {
    pub he: &'static str,
    pub h_l30: &'static str,
    pub hk: &'static str,
    pub s3h_e: &'static str,
    pub s3h_l30: &'static str,
    pub s3h_k: &'static str,
}

/// Outcome of the exact kernel computation.
#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub n: u32,
    pub domain_dim: usize,
    pub kernel_dim: usize,
    pub allowed_dim_bound: usize,
    pub component_norms: ComponentNorms,
    /// true iff all four small-summand components vanish on the kernel
    pub contained_in_allowed: bool,
    /// true iff the matrix annihilates every kernel basis vector exactly
    pub reverified: bool,
    /// row ordering of the assembled matrix, for reproducibility
    pub matrix_layout: String,
    pub elapsed_ms: u128,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.contained_in_allowed && self.reverified && self.kernel_dim <= self.allowed_dim_bound
    }
}

/// Top-level machine-readable output.
#[derive(Debug, Clone, Serialize)]
pub struct RunOutput {
    pub version: String,
    pub config: ConfigEcho,
    pub reports: Vec<CheckReport>,
    pub kernel: Vec<KernelReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub ns: Vec<u32>,
    pub check: String,
    pub seed: u64,
    pub samples: usize,
    pub flip_omega_h: bool,
    pub perturb_coeff: Option<String>,
    pub force_large_n: bool,
}

impl RunOutput {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| !r.failed()) && self.kernel.iter().all(KernelReport::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let status = match r.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Vacuous => "vacuous",
            };
            out.push_str(&format!(
                "[{status}] {} (n = {}) {} [{} ms]\n",
                r.name, r.n, r.description, r.elapsed_ms
            ));
            if r.status == CheckStatus::Fail {
                out.push_str(&format!(
                    "  expected:\n{}\n  actual:\n{}\n",
                    indent(&r.expected),
                    indent(&r.actual)
                ));
            }
        }
        for k in &self.kernel {
            out.push_str(&format!(
                "[{}] kernel (n = {}) dim {} of {} (bound {}), components: he={} h_l30={} hk={} s3h_e={} s3h_l30={} s3h_k={} [{} ms]\n",
                if k.passed() { "pass" } else { "FAIL" },
                k.n,
                k.kernel_dim,
                k.domain_dim,
                k.allowed_dim_bound,
                k.component_norms.he,
                k.component_norms.h_l30,
                k.component_norms.hk,
                k.component_norms.s3h_e,
                k.component_norms.s3h_l30,
                k.component_norms.s3h_k,
                k.elapsed_ms
            ));
        }
        out
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}")).collect::<Vec<_>>().join("\n")
}
