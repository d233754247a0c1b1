//! Cleaning a logical operator off a region.
//!
//! `P` can be cleaned off `M` exactly when `P|M` lies in the restriction of
//! the allowed group to `M`. That is a linear membership problem. When it
//! has no solution, `M` is not correctable and supports a nontrivial logical
//! operator, which is returned instead.

use crate::budget::Budget;
use crate::code::{CodeSpec, Role};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::group::CodeGroups;
use crate::lattice::Region;
use crate::metrics::lindist::light_target_in_mask;
use crate::metrics::target::{Mode, Target};
use crate::pauli::PauliOp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CleanResult {
    /// `cleaned = P * stabilizer` acts trivially on `M`. `factors` lists the
    /// operators multiplied in: declared generator indices for stabilizer
    /// codes, stabilizer basis indices for gauge codes.
    Cleaned { stabilizer: PauliOp, cleaned: PauliOp, factors: Vec<usize> },
    /// A nontrivial logical supported inside `M`.
    Trapped { logical: PauliOp },
}

impl CleanResult {
    pub fn is_cleaned(&self) -> bool {
        matches!(self, CleanResult::Cleaned { .. })
    }
}

/// Solves `p|M = prod of some pool|M`; returns pool indices.
fn solve(p: &PauliOp, pool: &[(usize, PauliOp)], mask: &BitVec) -> Result<Option<Vec<usize>>> {
    let n = p.num_qubits();
    let mut e = Echelon::new(2 * n, pool.len());
    for (j, (_, op)) in pool.iter().enumerate() {
        e.insert(&op.restrict(mask)?.symplectic(), BitVec::from_indices(pool.len(), [j]));
    }
    let (residual, combo) = e.reduce(&p.restrict(mask)?.symplectic());
    Ok(residual.is_zero().then(|| combo.iter_ones().map(|j| pool[j].0).collect()))
}

fn trapped(code: &CodeSpec, groups: &CodeGroups, p: &PauliOp, mask: &BitVec, mode: Mode) -> Result<CleanResult> {
    let target = Target::new(groups, &mode)?;
    if p.support_mask().is_subset_of(mask) && target.is_target(p) {
        return Ok(CleanResult::Trapped { logical: p.clone() });
    }
    light_target_in_mask(code.layout(), &target, mask, 0, &Budget::default())
        .map(|logical| CleanResult::Trapped { logical })
        .ok_or_else(|| Error::Internal("region neither cleans the operator nor supports a logical".into()))
}

fn check_cleaned(p: &PauliOp, s: &PauliOp, mask: &BitVec) -> Result<CleanResult> {
    let cleaned = p.multiply(s)?;
    if !cleaned.restrict(mask)?.is_identity() {
        return Err(Error::Internal("cleaned operator still acts on the region".into()));
    }
    Ok(CleanResult::Cleaned { stabilizer: s.clone(), cleaned, factors: Vec::new() })
}

/// Cleans `p` off `region` using only the declared generators whose support
/// meets the region. `p` must commute with the stabilizer group.
pub fn clean_stabilizer(code: &CodeSpec, groups: &CodeGroups, p: &PauliOp, region: &Region) -> Result<CleanResult> {
    if code.role() != Role::Stabilizer {
        return Err(Error::Precondition("clean_stabilizer needs a stabilizer code".into()));
    }
    let mask = code.layout().qubit_mask(region)?;
    check_member_of_centralizer(code, p, groups.stabilizer.rows(), "stabilizer group")?;
    let n = code.num_qubits();
    if p.restrict(&mask)?.is_identity() {
        return check_cleaned(p, &PauliOp::identity(n), &mask);
    }
    let pool: Vec<(usize, PauliOp)> = code
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.support_mask().intersects(&mask))
        .map(|(i, g)| (i, g.clone()))
        .collect();
    match solve(p, &pool, &mask)? {
        Some(factors) => {
            let s = factors.iter().fold(PauliOp::identity(n), |mut acc, &i| {
                acc.mul_assign(&code.generators()[i]);
                acc
            });
            let mut out = check_cleaned(p, &s, &mask)?;
            if let CleanResult::Cleaned { factors: f, .. } = &mut out {
                *f = factors;
            }
            Ok(out)
        }
        None => trapped(code, groups, p, &mask, Mode::Stabilizer),
    }
}

/// Cleans a bare logical `p` (commuting with the whole gauge group) off
/// `region` by an element of the stabilizer group, which need not have
/// local generators.
pub fn clean_subsystem(code: &CodeSpec, groups: &CodeGroups, p: &PauliOp, region: &Region) -> Result<CleanResult> {
    let mask = code.layout().qubit_mask(region)?;
    check_member_of_centralizer(code, p, code.generators(), "gauge group")?;
    let n = code.num_qubits();
    if p.restrict(&mask)?.is_identity() {
        return check_cleaned(p, &PauliOp::identity(n), &mask);
    }
    let pool: Vec<(usize, PauliOp)> = groups.stabilizer.rows().iter().cloned().enumerate().collect();
    match solve(p, &pool, &mask)? {
        Some(factors) => {
            let s = groups.stabilizer.product(&BitVec::from_indices(pool.len(), factors.iter().copied()));
            let mut out = check_cleaned(p, &s, &mask)?;
            if let CleanResult::Cleaned { factors: f, .. } = &mut out {
                *f = factors;
            }
            Ok(out)
        }
        None => trapped(code, groups, p, &mask, Mode::Subsystem),
    }
}

fn check_member_of_centralizer(code: &CodeSpec, p: &PauliOp, ops: &[PauliOp], what: &str) -> Result<()> {
    if p.num_qubits() != code.num_qubits() {
        return Err(Error::DimensionMismatch { left: code.num_qubits(), right: p.num_qubits() });
    }
    let v = p.swapped();
    if let Some(i) = ops.iter().position(|g| v.dot(&g.symplectic())) {
        return Err(Error::Contract(format!(
            "operator `{}` does not commute with element {i} of the {what}",
            code.op_text(p)
        )));
    }
    Ok(())
}

/// Dispatches on the code's role.
pub fn clean(code: &CodeSpec, groups: &CodeGroups, p: &PauliOp, region: &Region) -> Result<CleanResult> {
    match code.role() {
        Role::Stabilizer => clean_stabilizer(code, groups, p, region),
        Role::Gauge => clean_subsystem(code, groups, p, region),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Cell;
    use crate::pauli::Letter;
    use crate::zoo;

    fn toric_string(code: &CodeSpec, l: u32) -> PauliOp {
        let layout = code.layout();
        PauliOp::from_terms(
            code.num_qubits(),
            (0..l).map(|j| (layout.index_of(&Cell::new(&[0, j], 0b10)).unwrap(), Letter::Z)),
        )
    }

    #[test]
    fn toric_string_deformed_around_disk() {
        let code = zoo::toric_2d(4).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let p = toric_string(&code, 4);
        let m = code.lattice().boxed(&[0, 1], &[1, 2]).unwrap();
        let r = clean_stabilizer(&code, &groups, &p, &m).unwrap();
        let CleanResult::Cleaned { stabilizer, cleaned, factors } = r else { panic!("expected cleaned") };
        let mask = code.layout().qubit_mask(&m).unwrap();
        assert!(cleaned.restrict(&mask).unwrap().is_identity());
        assert!(groups.stabilizer.contains(&stabilizer));
        for i in factors {
            assert!(code.generators()[i].support_mask().intersects(&mask));
        }
    }

    #[test]
    fn disjoint_region_needs_nothing() {
        let code = zoo::toric_2d(4).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let p = toric_string(&code, 4);
        let m = code.lattice().boxed(&[2, 0], &[3, 1]).unwrap();
        let r = clean_stabilizer(&code, &groups, &p, &m).unwrap();
        assert!(matches!(r, CleanResult::Cleaned { ref stabilizer, .. } if stabilizer.is_identity()));
    }

    #[test]
    fn annulus() {
        let code = zoo::toric_2d(3).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let n = code.num_qubits();
        let m = code.lattice().slab(0, 0, 1).unwrap();
        let mask = code.layout().qubit_mask(&m).unwrap();
        // a string inside the annulus slides to the next column
        let p = toric_string(&code, 3);
        let CleanResult::Cleaned { cleaned, .. } = clean_stabilizer(&code, &groups, &p, &m).unwrap() else {
            panic!("expected cleaned")
        };
        assert_eq!(cleaned.weight(), 3);
        assert!(!cleaned.support_mask().intersects(&mask));
        // a string crossing it cannot be pushed out
        let layout = code.layout();
        let crossing =
            PauliOp::from_terms(n, (0..3).map(|x| (layout.index_of(&Cell::new(&[x, 0], 0b01)).unwrap(), Letter::Z)));
        let CleanResult::Trapped { logical } = clean_stabilizer(&code, &groups, &crossing, &m).unwrap() else {
            panic!("expected trapped")
        };
        assert!(logical.support_mask().is_subset_of(&mask));
        let t = Target::new(&groups, &Mode::Stabilizer).unwrap();
        assert!(t.is_target(&logical));
        let full = code.lattice().full_region();
        let r = clean_stabilizer(&code, &groups, &p, &full).unwrap();
        assert_eq!(r, CleanResult::Trapped { logical: p });
    }

    #[test]
    fn bacon_shor_cleaning() {
        let code = zoo::bacon_shor_2d(3).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let layout = code.layout();
        let column = |x: u32| {
            PauliOp::from_terms(9, (0..3).map(|y| (layout.index_of(&Cell::vertex(&[x, y])).unwrap(), Letter::X)))
        };
        let p = column(1);
        assert!(groups.gauge.centralizer().contains(&p));
        let m = code.lattice().boxed(&[1, 0], &[1, 0]).unwrap();
        let CleanResult::Cleaned { cleaned, stabilizer, .. } = clean_subsystem(&code, &groups, &p, &m).unwrap() else {
            panic!("expected cleaned")
        };
        assert!(groups.stabilizer.contains(&stabilizer));
        assert!(!cleaned.support_mask().intersects(&code.layout().qubit_mask(&m).unwrap()));
        let empty = code.lattice().empty_region();
        let r = clean_subsystem(&code, &groups, &p, &empty).unwrap();
        assert!(matches!(r, CleanResult::Cleaned { ref stabilizer, .. } if stabilizer.is_identity()));
    }

    #[test]
    fn rejects_non_centralizer_input() {
        let code = zoo::toric_2d(3).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let p = PauliOp::single(code.num_qubits(), 0, Letter::X);
        let m = code.lattice().full_region();
        assert!(matches!(clean_stabilizer(&code, &groups, &p, &m), Err(Error::Contract(_))));
    }
}
