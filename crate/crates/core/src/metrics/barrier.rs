//! Exact energy barrier by bottleneck search on the coset graph.
//!
//! Energy and target status are invariant under the quotient group `Q`, so
//! a walk can be tracked by its coset `P Q`. A coset is labelled by the
//! commutation pattern of `P` with a basis of `C(Q)`; the labelling is
//! linear and its kernel is exactly `Q`. Single-qubit steps are label
//! XORs. Cosets are settled in increasing bottleneck order (the least
//! possible maximum energy along a walk from the identity), so the first
//! target settled gives the barrier.

use std::collections::HashSet;

use crate::budget::Budget;
use crate::code::{CodeSpec, Role};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::metrics::target::Target;
use crate::metrics::walk::{walk_bound, Schedule, WalkStep, WalkTrace};
use crate::pauli::{Letter, PauliOp};

/// Largest label width handled.
pub const MAX_LABEL_BITS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BarrierMethod {
    /// Bottleneck search; exact for stabilizer Hamiltonians.
    ExactBottleneck,
    /// Energy profile of one explicit walk.
    WalkUpperBound,
    /// Bottleneck search on a gauge Hamiltonian, using the count of
    /// anticommuting terms as the energy; an upper bound on the barrier.
    AnticommutingTermsBound,
}

#[derive(Clone, Debug)]
pub struct BarrierResult {
    pub value: usize,
    pub method: BarrierMethod,
    pub walk: WalkTrace,
    /// Cosets settled or discovered during the search.
    pub nodes: u64,
}

fn parity(x: u128) -> bool {
    x.count_ones() & 1 == 1
}

/// Label space of `P Q` for a code and target.
pub struct CosetGraph {
    n: usize,
    bits: usize,
    generator_combos: Vec<u128>,
    check_combos: Vec<u128>,
    class_combos: Vec<u128>,
    /// Label deltas of `X_q`, `Y_q`, `Z_q` at `3q`, `3q+1`, `3q+2`.
    steps: Vec<u128>,
}

impl CosetGraph {
    pub fn new(code: &CodeSpec, target: &Target) -> Result<CosetGraph> {
        let n = code.num_qubits();
        let q = &target.quotient;
        if q.num_qubits() != n {
            return Err(Error::DimensionMismatch { left: n, right: q.num_qubits() });
        }
        let commutes_with_q = |op: &PauliOp| q.rows().iter().all(|s| !op.swapped().dot(&s.symplectic()));
        if let Some(i) = code.generators().iter().position(|g| !commutes_with_q(g)) {
            return Err(Error::Contract(format!("quotient group does not preserve the energy of generator {i}")));
        }
        if !target.checks.iter().chain(&target.class_ops).all(commutes_with_q) {
            return Err(Error::Contract("quotient group does not preserve the target set".into()));
        }

        let bits = 2 * n - q.rank();
        if bits > MAX_LABEL_BITS {
            return Err(Error::capacity(
                "coset label",
                format!("{bits} bits"),
                format!("{MAX_LABEL_BITS} bits"),
                "use the walk upper bound instead",
            ));
        }
        let mut echelon = Echelon::new(2 * n, bits);
        let mut basis: Vec<BitVec> = Vec::with_capacity(bits);
        let completion = q.centralizer();
        for op in target.checks.iter().chain(&target.class_ops).chain(completion.rows()) {
            if basis.len() == bits {
                break;
            }
            let v = op.symplectic();
            if echelon.insert(&v, BitVec::from_indices(bits, [basis.len()])) {
                basis.push(v);
            }
        }
        if basis.len() != bits {
            return Err(Error::Internal(format!("centralizer basis has {} of {bits} elements", basis.len())));
        }
        let combo = |op: &PauliOp| -> Result<u128> {
            let (residual, c) = echelon.reduce(&op.symplectic());
            if !residual.is_zero() {
                return Err(Error::Internal("operator outside the centralizer of the quotient".into()));
            }
            Ok(c.to_u128())
        };
        let generator_combos = code.generators().iter().map(&combo).collect::<Result<Vec<_>>>()?;
        let check_combos = target.checks.iter().map(&combo).collect::<Result<Vec<_>>>()?;
        let class_combos = target.class_ops.iter().map(&combo).collect::<Result<Vec<_>>>()?;

        let label_of = |p: &PauliOp| -> u128 {
            let v = p.swapped();
            basis.iter().enumerate().fold(0u128, |acc, (i, b)| acc | ((v.dot(b) as u128) << i))
        };
        let mut steps = Vec::with_capacity(3 * n);
        for qubit in 0..n {
            for l in Letter::NONTRIVIAL {
                steps.push(label_of(&PauliOp::single(n, qubit, l)));
            }
        }
        Ok(CosetGraph { n, bits, generator_combos, check_combos, class_combos, steps })
    }

    pub fn label_bits(&self) -> usize {
        self.bits
    }

    pub fn label(&self, p: &PauliOp) -> u128 {
        let mut acc = 0u128;
        for (q, l) in p.terms() {
            acc ^= self.step(q, l);
        }
        acc
    }

    fn step(&self, qubit: usize, letter: Letter) -> u128 {
        let j = Letter::NONTRIVIAL.iter().position(|&x| x == letter).expect("nontrivial letter");
        self.steps[3 * qubit + j]
    }

    pub fn energy_of_label(&self, label: u128) -> usize {
        2 * self.generator_combos.iter().filter(|&&c| parity(label & c)).count()
    }

    pub fn is_target_label(&self, label: u128) -> bool {
        self.check_combos.iter().all(|&c| !parity(label & c)) && self.class_combos.iter().any(|&c| parity(label & c))
    }
}

struct Node {
    label: u128,
    parent: u32,
    step: u32,
}

/// Exact barrier of the target set: the least `max` energy over walks from
/// the identity to any target. Fails with a capacity error once more than
/// `budget.node_cap` cosets are discovered.
pub fn barrier_exact(code: &CodeSpec, target: &Target, budget: &Budget) -> Result<Option<BarrierResult>> {
    if !target.has_targets() {
        return Ok(None);
    }
    let graph = CosetGraph::new(code, target)?;
    let n = graph.n;
    let mut nodes: Vec<Node> = vec![Node { label: 0, parent: u32::MAX, step: u32::MAX }];
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(0);
    let max_energy = 2 * code.generators().len();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_energy + 1];
    buckets[0].push(0);
    let mut level = 0usize;
    let found = loop {
        let Some(idx) = buckets[level].pop() else {
            level += 1;
            if level > max_energy {
                break None;
            }
            continue;
        };
        let label = nodes[idx as usize].label;
        if graph.is_target_label(label) {
            break Some(idx);
        }
        for (s, &delta) in graph.steps.iter().enumerate() {
            let next = label ^ delta;
            if !seen.insert(next) {
                continue;
            }
            if nodes.len() as u64 >= budget.node_cap {
                return Err(Error::capacity(
                    "barrier search nodes",
                    nodes.len() as u64 + 1,
                    budget.node_cap,
                    "raise --node-cap or use the walk upper bound",
                ));
            }
            let b = level.max(graph.energy_of_label(next));
            buckets[b].push(nodes.len() as u32);
            nodes.push(Node { label: next, parent: idx, step: s as u32 });
        }
    };
    let Some(mut idx) = found else {
        return Err(Error::Internal("no target reachable in the coset graph".into()));
    };
    let mut steps = Vec::new();
    while nodes[idx as usize].parent != u32::MAX {
        let node = &nodes[idx as usize];
        let s = node.step as usize;
        steps.push(WalkStep { qubit: s / 3, letter: Letter::NONTRIVIAL[s % 3] });
        idx = node.parent;
    }
    steps.reverse();
    let walk = WalkTrace::replay(code, steps);
    debug_assert_eq!(walk.end.num_qubits(), n);
    if walk.eps_max != level || !target.is_target(&walk.end) {
        return Err(Error::Internal(format!("barrier witness replays to {} but search gave {level}", walk.eps_max)));
    }
    let method = match code.role() {
        Role::Stabilizer => BarrierMethod::ExactBottleneck,
        Role::Gauge => BarrierMethod::AnticommutingTermsBound,
    };
    Ok(Some(BarrierResult { value: level, method, walk, nodes: nodes.len() as u64 }))
}

/// Upper bound on the barrier from walking `witness` in `schedule` order.
pub fn barrier_walk_bound(
    code: &CodeSpec,
    target: &Target,
    witness: &PauliOp,
    schedule: &Schedule,
) -> Result<BarrierResult> {
    let walk = walk_bound(code, target, witness, schedule)?;
    Ok(BarrierResult { value: walk.eps_max, method: BarrierMethod::WalkUpperBound, walk, nodes: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CodeGroups;
    use crate::lattice::Boundary;
    use crate::metrics::energy::energy_cost;
    use crate::metrics::target::Mode;
    use crate::zoo;

    fn exact(code: &CodeSpec, mode: Mode) -> BarrierResult {
        let groups = CodeGroups::new(code).unwrap();
        let t = Target::new(&groups, &mode).unwrap();
        barrier_exact(code, &t, &Budget::default()).unwrap().unwrap()
    }

    #[test]
    fn repetition_barriers() {
        let code = zoo::repetition_1d(6, Boundary::Open).unwrap();
        assert_eq!(exact(&code, Mode::Stabilizer).value, 0);
        let r = exact(&code, Mode::Sector { anticommute_with: vec![1] });
        assert_eq!(r.value, 2);
        assert_eq!(r.walk.end.weight(), 6);
    }

    #[test]
    fn toric_three_is_four() {
        let code = zoo::toric_2d(3).unwrap();
        let r = exact(&code, Mode::Stabilizer);
        assert_eq!(r.value, 4);
        for (i, &e) in r.walk.profile.iter().enumerate() {
            let prefix = PauliOp::from_terms(code.num_qubits(), r.walk.steps[..i].iter().map(|s| (s.qubit, s.letter)));
            assert_eq!(e, energy_cost(&code, &prefix));
        }
    }

    #[test]
    fn labels_on_small_codes() {
        let codes = [
            zoo::repetition_1d(3, Boundary::Open).unwrap(),
            zoo::repetition_1d(4, Boundary::Periodic).unwrap(),
            zoo::bacon_shor_2d(2).unwrap(),
        ];
        for code in &codes {
            let n = code.num_qubits();
            let groups = CodeGroups::new(code).unwrap();
            let t = Target::new(&groups, &Mode::default_for(code.role())).unwrap();
            let g = CosetGraph::new(code, &t).unwrap();
            let all: Vec<PauliOp> = (0..1u32 << (2 * n))
                .map(|m| {
                    let v = BitVec::from_indices(2 * n, (0..2 * n).filter(|i| m >> i & 1 == 1));
                    PauliOp::from_symplectic(&v)
                })
                .collect();
            for p in &all {
                let l = g.label(p);
                assert_eq!(g.energy_of_label(l), energy_cost(code, p));
                assert_eq!(g.is_target_label(l), t.is_target(p));
                for s in t.quotient.rows() {
                    assert_eq!(g.label(&p.multiply(s).unwrap()), l);
                }
            }
        }
    }
}
