//! Linear distance: the narrowest slab along an axis that supports a
//! target operator.
//!
//! For a fixed slab the question is linear: the operators supported on the
//! slab that commute with the checks form a subspace, and the slab supports
//! a target iff the class map is nonzero on it. Widths are tried in
//! increasing order, so the answer is exact.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;
use crate::gf2::{self, BitVec};
use crate::lattice::Region;
use crate::layout::QubitLayout;
use crate::metrics::dp::{axis_order, trellis_min_weight};
use crate::metrics::target::Target;
use crate::pauli::PauliOp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearDistance {
    pub value: usize,
    pub axis: usize,
    pub slab_start: usize,
    pub witness: PauliOp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SlabSpec {
    pub start: usize,
    pub width: usize,
}

/// Some target supported on the qubits in `mask`, or `None`.
pub fn target_in_mask(target: &Target, mask: &BitVec) -> Option<PauliOp> {
    let n = target.num_qubits();
    let qubits: Vec<usize> = mask.iter_ones().collect();
    let m = qubits.len();
    if m == 0 {
        return None;
    }
    // commutation constraints cut to the columns of `qubits`
    let cut = |op: &PauliOp| op.project(&qubits).swapped();
    let rows: Vec<BitVec> = target.checks.iter().map(cut).collect();
    let space = gf2::nullspace(&rows, 2 * m);
    space
        .iter()
        .map(|v| PauliOp::from_symplectic(v).embed(n, &qubits))
        .filter(|p| !target.class(p).is_zero())
        .min_by_key(|p| (p.weight(), p.clone()))
}

/// Like [`target_in_mask`] but of minimum weight when the trellis search
/// fits the budget.
pub fn light_target_in_mask(
    layout: &QubitLayout,
    target: &Target,
    mask: &BitVec,
    axis: usize,
    budget: &Budget,
) -> Option<PauliOp> {
    let any = target_in_mask(target, mask)?;
    let order = axis_order(layout, axis).ok()?;
    match trellis_min_weight(target.num_qubits(), &order, &target.checks, &target.class_ops, Some(mask), budget) {
        Ok(Some(p)) => Some(p),
        _ => Some(any),
    }
}

/// Slabs of width `w` along `axis` in start order.
pub fn slabs(layout: &QubitLayout, axis: usize, w: usize) -> Result<Vec<(usize, Region)>> {
    let lat = layout.lattice();
    let starts = if lat.is_periodic() {
        if w == lat.size() {
            1
        } else {
            lat.size()
        }
    } else {
        lat.size() - w + 1
    };
    (0..starts).map(|s| Ok((s, lat.slab(axis, s, w)?))).collect()
}

/// Exact linear distance of the target set along `axis`; `None` when there
/// are no targets at all.
pub fn linear_distance(
    layout: &QubitLayout,
    target: &Target,
    axis: usize,
    budget: &Budget,
) -> Result<Option<LinearDistance>> {
    let lat = layout.lattice();
    lat.check_axis(axis)?;
    if !target.has_targets() {
        return Ok(None);
    }
    for w in 1..=lat.size() {
        for (start, region) in slabs(layout, axis, w)? {
            let mask = layout.qubit_mask(&region)?;
            if target_in_mask(target, &mask).is_some() {
                let witness =
                    light_target_in_mask(layout, target, &mask, axis, budget).expect("a target exists in this slab");
                return Ok(Some(LinearDistance { value: w, axis, slab_start: start, witness }));
            }
        }
    }
    Ok(None)
}
