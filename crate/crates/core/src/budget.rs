//! Resource limits for the exponential searches.

use serde::Serialize;

/// Limits shared by the exact searches. Defaults: `2^24` coset nodes,
/// weight cap 6, 4 GiB of search state, `2^34` group-enumeration steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Maximum number of coset-graph nodes for the exact barrier.
    pub node_cap: u64,
    /// Largest weight tried by weight enumeration.
    pub weight_cap: usize,
    /// Bytes of search state the DP and barrier searches may allocate.
    pub mem_budget: u64,
    /// log2 of the step count allowed for group enumeration.
    pub enum_log2_cap: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { node_cap: 1 << 24, weight_cap: 6, mem_budget: 4 << 30, enum_log2_cap: 34 }
    }
}

impl Budget {
    pub const ENV_NODE_CAP: &'static str = "LOCALCODES_NODE_CAP";
    pub const ENV_WEIGHT_CAP: &'static str = "LOCALCODES_WEIGHT_CAP";
    pub const ENV_MEM_BUDGET: &'static str = "LOCALCODES_MEM_BUDGET";
    pub const ENV_ENUM_LOG2_CAP: &'static str = "LOCALCODES_ENUM_LOG2_CAP";

    /// Defaults overridden by the `LOCALCODES_*` environment variables.
    pub fn from_env() -> Result<Self, String> {
        let mut b = Budget::default();
        fn read<T: std::str::FromStr>(key: &str) -> Result<Option<T>, String> {
            match std::env::var(key) {
                Ok(v) => v.trim().parse().map(Some).map_err(|_| format!("{key}={v} is not a valid number")),
                Err(_) => Ok(None),
            }
        }
        if let Some(v) = read(Self::ENV_NODE_CAP)? {
            b.node_cap = v;
        }
        if let Some(v) = read(Self::ENV_WEIGHT_CAP)? {
            b.weight_cap = v;
        }
        if let Some(v) = read(Self::ENV_MEM_BUDGET)? {
            b.mem_budget = v;
        }
        if let Some(v) = read(Self::ENV_ENUM_LOG2_CAP)? {
            b.enum_log2_cap = v;
        }
        Ok(b)
    }

    pub fn with_weight_cap(mut self, cap: usize) -> Self {
        self.weight_cap = cap;
        self
    }

    pub fn enum_cap(&self) -> f64 {
        2f64.powi(self.enum_log2_cap as i32)
    }
}
