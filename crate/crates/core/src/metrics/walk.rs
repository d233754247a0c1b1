//! Walks on the Pauli group and their energy profiles.

use serde::Serialize;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::metrics::target::Target;
use crate::pauli::{Letter, PauliOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub qubit: usize,
    pub letter: Letter,
}

/// A walk from the identity: step `i` multiplies the running operator by a
/// single-qubit Pauli. `profile[i]` is the energy after `i` steps, so
/// `profile[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTrace {
    pub steps: Vec<WalkStep>,
    pub profile: Vec<usize>,
    pub eps_max: usize,
    pub end: PauliOp,
}

impl WalkTrace {
    /// Replays `steps` against the declared generators of `code`.
    pub fn replay(code: &CodeSpec, steps: Vec<WalkStep>) -> WalkTrace {
        let n = code.num_qubits();
        let m = code.generators().len();
        // per qubit: generators anticommuting with X_q and with Z_q
        let mut anti_x = vec![BitVec::zeros(m); n];
        let mut anti_z = vec![BitVec::zeros(m); n];
        for (a, g) in code.generators().iter().enumerate() {
            for q in g.support_mask().iter_ones() {
                if g.z_bits().get(q) {
                    anti_x[q].set(a, true);
                }
                if g.x_bits().get(q) {
                    anti_z[q].set(a, true);
                }
            }
        }
        let mut syndrome = BitVec::zeros(m);
        let mut end = PauliOp::identity(n);
        let mut profile = Vec::with_capacity(steps.len() + 1);
        profile.push(0);
        for s in &steps {
            let (x, z) = s.letter.bits();
            if x {
                syndrome.xor_assign(&anti_x[s.qubit]);
            }
            if z {
                syndrome.xor_assign(&anti_z[s.qubit]);
            }
            end.mul_assign(&PauliOp::single(n, s.qubit, s.letter));
            profile.push(2 * syndrome.count_ones());
        }
        let eps_max = profile.iter().copied().max().unwrap_or(0);
        WalkTrace { steps, profile, eps_max, end }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    /// Rows are the positions along the other axes; each row is swept along
    /// `axis` before moving to the next.
    RowByRow { axis: usize },
    /// Increasing qubit index.
    QubitOrder,
    /// An explicit qubit order; must list the witness support exactly.
    Given(Vec<usize>),
}

/// Applies the letters of `witness` one qubit at a time in the schedule's
/// order and reports the energy profile. The witness must be a target.
pub fn walk_bound(code: &CodeSpec, target: &Target, witness: &PauliOp, schedule: &Schedule) -> Result<WalkTrace> {
    if witness.num_qubits() != code.num_qubits() {
        return Err(Error::DimensionMismatch { left: code.num_qubits(), right: witness.num_qubits() });
    }
    if !target.is_target(witness) {
        return Err(Error::Contract(format!(
            "walk witness `{}` is not a nontrivial logical for mode {}",
            code.op_text(witness),
            target.mode
        )));
    }
    let support = witness.support();
    let order: Vec<usize> = match schedule {
        Schedule::QubitOrder => support,
        Schedule::RowByRow { axis } => {
            let layout = code.layout();
            let dim = layout.lattice().dim();
            layout.lattice().check_axis(*axis)?;
            let mut s = support;
            s.sort_by_key(|&q| {
                let c = layout.coord(q);
                let others: Vec<u32> = (0..dim).filter(|a| a != axis).map(|a| c[a]).collect();
                (others, c[*axis], q)
            });
            s
        }
        Schedule::Given(order) => {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != support {
                return Err(Error::Contract("given walk order must list the witness support exactly once".into()));
            }
            order.clone()
        }
    };
    let steps = order.into_iter().map(|q| WalkStep { qubit: q, letter: witness.letter(q) }).collect();
    let trace = WalkTrace::replay(code, steps);
    debug_assert_eq!(&trace.end, witness);
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CodeGroups;
    use crate::lattice::Cell;
    use crate::metrics::energy::energy_cost;
    use crate::metrics::target::Mode;
    use crate::zoo;

    #[test]
    fn straight_toric_string_costs_four() {
        for l in 3..7u32 {
            let code = zoo::toric_2d(l as usize).unwrap();
            let layout = code.layout();
            // Z on the vertical edges (0,j;1) commutes with every star
            let string = PauliOp::from_terms(
                code.num_qubits(),
                (0..l).map(|j| (layout.index_of(&Cell::new(&[0, j], 0b10)).unwrap(), Letter::Z)),
            );
            let groups = CodeGroups::new(&code).unwrap();
            let t = Target::new(&groups, &Mode::Stabilizer).unwrap();
            let trace = walk_bound(&code, &t, &string, &Schedule::RowByRow { axis: 0 }).unwrap();
            assert_eq!(trace.eps_max, 4);
            assert_eq!(*trace.profile.last().unwrap(), 0);
            for (i, &e) in trace.profile.iter().enumerate() {
                let prefix =
                    PauliOp::from_terms(code.num_qubits(), trace.steps[..i].iter().map(|s| (s.qubit, s.letter)));
                assert_eq!(e, energy_cost(&code, &prefix));
            }
        }
    }

    #[test]
    fn rejects_non_logical() {
        let code = zoo::toric_2d(3).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let t = Target::new(&groups, &Mode::Stabilizer).unwrap();
        let e = walk_bound(&code, &t, &code.generators()[0], &Schedule::QubitOrder);
        assert!(matches!(e, Err(Error::Contract(_))));
    }
}
