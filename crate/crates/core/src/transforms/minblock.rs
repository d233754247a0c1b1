//! Smallest contiguous block (or full-height strip) whose restricted gauge
//! group still encodes a qubit.

use serde::Serialize;

use crate::budget::Budget;
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::group::CodeGroups;
use crate::lattice::Region;
use crate::metrics::dp::distance_exact;
use crate::metrics::lindist::slabs;
use crate::metrics::target::{Mode, Target};
use crate::pauli::PauliOp;
use crate::transforms::restriction::{restricted_code, restricted_k, shell_size};

#[derive(Clone, Debug, Serialize)]
pub struct BlockChecks {
    /// `d_M <= r L^(D-1)`, which is `d_M <= r` on a chain.
    pub block_distance_within_r: bool,
    /// `d <= d_M + |shell|`.
    pub distance_within_block_plus_shell: bool,
    /// `d <= 3 r L^(D-1)`.
    pub distance_within_3r: bool,
}

#[derive(Clone, Debug)]
pub struct MinimalBlock {
    pub axis: usize,
    pub start: usize,
    pub width: usize,
    pub region: Region,
    pub k_m: usize,
    pub d_m: usize,
    /// Minimum-weight logical of the block code, on the full lattice.
    pub witness: PauliOp,
    pub shell_size: usize,
    pub d: usize,
    pub r: usize,
    pub checks: BlockChecks,
}

impl MinimalBlock {
    pub fn all_hold(&self) -> bool {
        let c = &self.checks;
        c.block_distance_within_r && c.distance_within_block_plus_shell && c.distance_within_3r
    }
}

#[derive(Clone, Debug)]
pub enum MinBlockOutcome {
    Found(Box<MinimalBlock>),
    /// No block, not even the whole lattice, encodes a qubit.
    NoBlock,
}

/// Slabs are tried by increasing width, then start. Supported for `D = 1`
/// (blocks) and `D = 2` (full-height strips).
pub fn minimal_block_search(
    code: &CodeSpec,
    groups: &CodeGroups,
    axis: usize,
    budget: &Budget,
) -> Result<MinBlockOutcome> {
    let layout = code.layout();
    let lat = layout.lattice();
    lat.check_axis(axis)?;
    if lat.dim() > 2 {
        return Err(Error::Unsupported(format!("minimal block search in D={}", lat.dim())));
    }
    for width in 1..=lat.size() {
        for (start, region) in slabs(layout, axis, width)? {
            let mask = layout.qubit_mask(&region)?;
            if mask.is_zero() || restricted_k(groups, &mask)? == 0 {
                continue;
            }
            let (sub, qubits) = restricted_code(code, groups, &mask)?;
            let sub_groups = CodeGroups::new(&sub)?;
            let t = Target::new(&sub_groups, &Mode::Subsystem)?;
            let res = distance_exact(sub.layout(), &t, budget)?;
            let (d_m, w) = match (res.outcome.value(), res.outcome.witness()) {
                (Some(v), Some(w)) => (v, w.embed(code.num_qubits(), &qubits)),
                _ => return Err(Error::Internal("block with a logical qubit has no logical operator".into())),
            };
            let full = Target::new(groups, &Mode::default_for(code.role()))?;
            let d = distance_exact(layout, &full, budget)?
                .outcome
                .value()
                .ok_or_else(|| Error::Internal("code with an encoding block has no logicals".into()))?;
            let shell = shell_size(code, &region)?;
            let r = code.declared_r();
            let cross = lat.size().pow(lat.dim() as u32 - 1);
            let checks = BlockChecks {
                block_distance_within_r: d_m <= r * cross,
                distance_within_block_plus_shell: d <= d_m + shell,
                distance_within_3r: d <= 3 * r * cross,
            };
            return Ok(MinBlockOutcome::Found(Box::new(MinimalBlock {
                axis,
                start,
                width,
                region,
                k_m: sub_groups.k(),
                d_m,
                witness: w,
                shell_size: shell,
                d,
                r,
                checks,
            })));
        }
    }
    Ok(MinBlockOutcome::NoBlock)
}
