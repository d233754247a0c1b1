//! The gauge group restricted to a region, regarded as a code on the
//! region's qubits alone.

use serde::Serialize;

use crate::budget::Budget;
use crate::code::{CodeSpec, Role};
use crate::error::Result;
use crate::gf2::BitVec;
use crate::group::CodeGroups;
use crate::lattice::Region;
use crate::layout::QubitLayout;
use crate::metrics::dp::distance_exact;
use crate::metrics::target::{Mode, Target};
use crate::pauli::PauliOp;

/// Number of logical qubits of the gauge group restricted to `mask`.
pub fn restricted_k(groups: &CodeGroups, mask: &BitVec) -> Result<usize> {
    let qubits: Vec<usize> = mask.iter_ones().collect();
    let g = groups.gauge.restrict_group(mask)?.compact(&qubits);
    let s = g.center().rank();
    // 2m = s + rank(G) + 2k
    Ok((2 * qubits.len() - s - g.rank()) / 2)
}

/// The restricted gauge group as a gauge code on the qubits of `mask`;
/// also returns those qubits in the order used.
pub fn restricted_code(code: &CodeSpec, groups: &CodeGroups, mask: &BitVec) -> Result<(CodeSpec, Vec<usize>)> {
    let qubits: Vec<usize> = mask.iter_ones().collect();
    let layout = code.layout();
    let cells = qubits.iter().map(|&q| *layout.cell(q)).collect();
    let sub = QubitLayout::new(layout.lattice(), cells)?;
    let gens = groups.gauge.restrict_group(mask)?.compact(&qubits).rows().to_vec();
    let spec = CodeSpec::new(format!("{}|M", code.name()), sub, gens, Role::Gauge, code.declared_r())?;
    Ok((spec, qubits))
}

/// Qubits whose site lies within distance `r` of `region` but outside it.
pub fn shell_size(code: &CodeSpec, region: &Region) -> Result<usize> {
    let shell = region.boundary_shell(code.declared_r());
    Ok(code.layout().qubit_mask(&shell)?.count_ones())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum RestrictionCase {
    NoLogicals,
    DistanceBound { d_m: usize, d: usize, shell_size: usize, holds: bool },
}

#[derive(Clone, Debug)]
pub struct RestrictionAudit {
    pub qubits: usize,
    pub k_m: usize,
    pub case: RestrictionCase,
    /// Minimum-weight logical of the restricted code, on the full lattice.
    pub witness: Option<PauliOp>,
}

/// Checks `d_M >= d - |shell|` for the code restricted to `region`, where
/// `d` is the distance of the full code (computed when not given).
pub fn restriction_audit(
    code: &CodeSpec,
    groups: &CodeGroups,
    region: &Region,
    d: Option<usize>,
    budget: &Budget,
) -> Result<RestrictionAudit> {
    let mask = code.layout().qubit_mask(region)?;
    let m = mask.count_ones();
    let k_m = if m == 0 { 0 } else { restricted_k(groups, &mask)? };
    if k_m == 0 {
        return Ok(RestrictionAudit { qubits: m, k_m, case: RestrictionCase::NoLogicals, witness: None });
    }
    let d = match d {
        Some(d) => d,
        None => {
            let t = Target::new(groups, &Mode::default_for(code.role()))?;
            distance_exact(code.layout(), &t, budget)?.outcome.value().unwrap_or(0)
        }
    };
    let (sub, qubits) = restricted_code(code, groups, &mask)?;
    let sub_groups = CodeGroups::new(&sub)?;
    let t = Target::new(&sub_groups, &Mode::Subsystem)?;
    let r = distance_exact(sub.layout(), &t, budget)?;
    let d_m = r.outcome.value().unwrap_or(0);
    let witness = r.outcome.witness().map(|w| w.embed(code.num_qubits(), &qubits));
    let shell = shell_size(code, region)?;
    let holds = d_m + shell >= d;
    Ok(RestrictionAudit {
        qubits: m,
        k_m,
        case: RestrictionCase::DistanceBound { d_m, d, shell_size: shell, holds },
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn toric_examples() {
        let code = zoo::toric_2d(3).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let b = Budget::default();
        let disk = code.lattice().boxed(&[0, 0], &[1, 1]).unwrap();
        let a = restriction_audit(&code, &groups, &disk, Some(3), &b).unwrap();
        assert_eq!(a.case, RestrictionCase::NoLogicals);

        // boundary stars and plaquettes restrict to single-qubit operators,
        // so even a noncontractible annulus encodes nothing
        for w in 1..3 {
            let annulus = code.lattice().slab(0, 0, w).unwrap();
            let a = restriction_audit(&code, &groups, &annulus, Some(3), &b).unwrap();
            assert_eq!(a.case, RestrictionCase::NoLogicals);
        }

        let full = code.lattice().full_region();
        let a = restriction_audit(&code, &groups, &full, None, &b).unwrap();
        assert_eq!(a.case, RestrictionCase::DistanceBound { d_m: 3, d: 3, shell_size: 0, holds: true });
    }
}
