//! Minimum-weight search by dynamic programming over a qubit ordering.
//!
//! Qubits are processed one at a time. The check space is first brought to
//! minimal-span form (distinct first and last columns), so at any cut only
//! the checks straddling it are "open". A DP state is the partial
//! commutation parity with every open check together with the accumulated
//! class bits; each state keeps the minimum weight reaching it. A check is
//! enforced when its last qubit has been processed.
//!
//! With qubits ordered along a lattice axis the number of open checks is
//! bounded by the cross-section, giving `O(L exp(L^{D-1}))` work.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::layout::QubitLayout;
use crate::metrics::distance::{distance_bruteforce, DistanceMethod, DistanceOutcome, DistanceResult};
use crate::metrics::target::Target;
use crate::pauli::{Letter, PauliOp};

/// Qubits sorted by their coordinate along `axis`, then by qubit index.
pub fn axis_order(layout: &QubitLayout, axis: usize) -> Result<Vec<usize>> {
    layout.lattice().check_axis(axis)?;
    let mut order: Vec<usize> = (0..layout.num_qubits()).collect();
    order.sort_by_key(|&q| (layout.coord(q)[axis], q));
    Ok(order)
}

struct Span {
    row: BitVec,
    start: usize,
    end: usize,
}

/// Minimal-span basis: Gaussian elimination gives distinct starts, then
/// rows sharing an end are combined (the one starting earlier absorbs the
/// other) until ends are distinct too.
fn minimal_span(rows: Vec<BitVec>) -> Vec<Span> {
    let Some(first) = rows.first() else { return Vec::new() };
    let mut e = Echelon::new(first.len(), 0);
    for r in &rows {
        e.insert_untagged(r);
    }
    let mut spans: Vec<Span> = e
        .rows()
        .iter()
        .map(|r| Span { row: r.clone(), start: r.first_one().unwrap(), end: r.last_one().unwrap() })
        .collect();
    loop {
        let mut by_end: HashMap<usize, usize> = HashMap::new();
        let mut clash = None;
        for (i, s) in spans.iter().enumerate() {
            if let Some(&j) = by_end.get(&s.end) {
                clash = Some((i, j));
                break;
            }
            by_end.insert(s.end, i);
        }
        let Some((i, j)) = clash else { break };
        let (early, late) = if spans[i].start < spans[j].start { (i, j) } else { (j, i) };
        let other = spans[late].row.clone();
        let s = &mut spans[early];
        s.row.xor_assign(&other);
        s.end = s.row.last_one().expect("independent rows");
    }
    spans
}

struct Node {
    state: u128,
    weight: u32,
    prev: u32,
    letter: u8,
}

/// Minimum-weight operator supported on `allowed` (all qubits when `None`)
/// that commutes with `checks` and anticommutes with at least one of
/// `class_ops`, processing qubits in `order`. `None` when no such operator
/// exists.
pub fn trellis_min_weight(
    n: usize,
    order: &[usize],
    checks: &[PauliOp],
    class_ops: &[PauliOp],
    allowed: Option<&BitVec>,
    budget: &Budget,
) -> Result<Option<PauliOp>> {
    if order.len() != n {
        return Err(Error::Precondition("qubit order must list every qubit once".into()));
    }
    // an operator on `allowed` only sees the checks' restrictions to it
    let (checks, class_ops): (Vec<PauliOp>, Vec<PauliOp>) = match allowed {
        Some(mask) => (
            checks.iter().map(|c| c.restrict(mask)).collect::<Result<_>>()?,
            class_ops.iter().map(|c| c.restrict(mask)).collect::<Result<_>>()?,
        ),
        None => (checks.to_vec(), class_ops.to_vec()),
    };
    let nc = class_ops.len();
    if nc == 0 {
        return Ok(None);
    }
    // columns in processing order, x and z interleaved
    let mut pos = vec![0usize; n];
    for (p, &q) in order.iter().enumerate() {
        pos[q] = p;
    }
    let interleave = |op: &PauliOp| {
        let mut v = BitVec::zeros(2 * n);
        for q in op.support_mask().iter_ones() {
            v.set(2 * pos[q], op.x_bits().get(q));
            v.set(2 * pos[q] + 1, op.z_bits().get(q));
        }
        v
    };
    let spans = minimal_span(checks.iter().map(interleave).collect());

    let mut starting: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut ending: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in spans.iter().enumerate() {
        starting[s.start / 2].push(i);
        ending[s.end / 2].push(i);
    }
    let mut open_now = 0usize;
    let mut max_open = 0usize;
    for p in 0..n {
        open_now += starting[p].len();
        max_open = max_open.max(open_now);
        open_now -= ending[p].len();
    }
    if nc + max_open > 128 {
        return Err(Error::capacity(
            "trellis state",
            format!("{} bits", nc + max_open),
            "128 bits",
            "choose an axis with a smaller cross-section or use enumeration",
        ));
    }
    let node_bytes = std::mem::size_of::<Node>() as u64 + 48;
    let max_nodes = budget.mem_budget / node_bytes;

    let mut slot_of = vec![usize::MAX; spans.len()];
    let mut free: Vec<usize> = (nc..nc + max_open).rev().collect();
    let mut layers: Vec<Vec<Node>> = Vec::with_capacity(n + 1);
    layers.push(vec![Node { state: 0, weight: 0, prev: 0, letter: 0 }]);
    let mut total_nodes = 1u64;

    for p in 0..n {
        let q = order[p];
        for &i in &starting[p] {
            slot_of[i] = free.pop().expect("slot count precomputed");
        }
        // effect of X_q and Z_q on open checks and class bits
        let (mut dx, mut dz) = (0u128, 0u128);
        for (i, s) in spans.iter().enumerate() {
            if s.start / 2 <= p && p <= s.end / 2 {
                if s.row.get(2 * p + 1) {
                    dx |= 1 << slot_of[i];
                }
                if s.row.get(2 * p) {
                    dz |= 1 << slot_of[i];
                }
            }
        }
        for (j, c) in class_ops.iter().enumerate() {
            if c.z_bits().get(q) {
                dx |= 1 << j;
            }
            if c.x_bits().get(q) {
                dz |= 1 << j;
            }
        }
        let mut closing = 0u128;
        for &i in &ending[p] {
            closing |= 1 << slot_of[i];
        }
        let letters: &[(u8, u128)] = if allowed.is_none_or(|a| a.get(q)) {
            &[(0, 0), (1, dx), (2, dx ^ dz), (3, dz)][..]
        } else {
            &[(0, 0)][..]
        };
        let prev = layers.last().expect("nonempty");
        let mut next: Vec<Node> = Vec::new();
        let mut index: HashMap<u128, usize> = HashMap::with_capacity(prev.len() * 2);
        for (pi, node) in prev.iter().enumerate() {
            for &(l, d) in letters {
                let s = node.state ^ d;
                if s & closing != 0 {
                    continue;
                }
                let w = node.weight + (l != 0) as u32;
                match index.get(&s) {
                    Some(&k) if next[k].weight <= w => {}
                    Some(&k) => next[k] = Node { state: s, weight: w, prev: pi as u32, letter: l },
                    None => {
                        if total_nodes + next.len() as u64 >= max_nodes {
                            return Err(Error::capacity(
                                "trellis nodes",
                                total_nodes + next.len() as u64 + 1,
                                max_nodes,
                                "raise --mem-budget or use a smaller instance",
                            ));
                        }
                        index.insert(s, next.len());
                        next.push(Node { state: s, weight: w, prev: pi as u32, letter: l });
                    }
                }
            }
        }
        total_nodes += next.len() as u64;
        for &i in &ending[p] {
            free.push(slot_of[i]);
        }
        layers.push(next);
    }

    let class_mask = if nc == 128 { u128::MAX } else { (1u128 << nc) - 1 };
    let last = layers.last().expect("nonempty");
    let Some((mut k, _)) = last
        .iter()
        .enumerate()
        .filter(|(_, node)| node.state & class_mask != 0)
        .min_by_key(|(i, node)| (node.weight, *i))
    else {
        return Ok(None);
    };
    let mut op = PauliOp::identity(n);
    for p in (0..n).rev() {
        let node = &layers[p + 1][k];
        let letter = [Letter::I, Letter::X, Letter::Y, Letter::Z][node.letter as usize];
        op.set(order[p], letter);
        k = node.prev as usize;
    }
    Ok(Some(op))
}

/// Exact minimum weight of a target, sweeping qubits along `axis`.
pub fn distance_dp(layout: &QubitLayout, target: &Target, axis: usize, budget: &Budget) -> Result<DistanceResult> {
    let order = axis_order(layout, axis)?;
    let found = trellis_min_weight(target.num_qubits(), &order, &target.checks, &target.class_ops, None, budget)?;
    let outcome = match found {
        Some(witness) => DistanceOutcome::Exact { value: witness.weight(), witness },
        None => DistanceOutcome::NoLogicals,
    };
    Ok(DistanceResult { outcome, method: DistanceMethod::Trellis, work: 0 })
}

/// Exact minimum weight of a target by whichever method fits: the trellis
/// first on chains, brute force first otherwise, the other one as fallback.
pub fn distance_exact(layout: &QubitLayout, target: &Target, budget: &Budget) -> Result<DistanceResult> {
    let brute = |budget: &Budget| -> Result<Option<DistanceResult>> {
        let r = distance_bruteforce(target, budget)?;
        Ok((!matches!(r.outcome, DistanceOutcome::AboveCap { .. })).then_some(r))
    };
    let trellis = || match distance_dp(layout, target, 0, budget) {
        Ok(r) => Ok(Some(r)),
        Err(Error::Capacity { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let found = if layout.lattice().dim() == 1 {
        match trellis()? {
            Some(r) => Some(r),
            None => brute(budget)?,
        }
    } else {
        match brute(budget)? {
            Some(r) => Some(r),
            None => trellis()?,
        }
    };
    found.ok_or_else(|| {
        Error::capacity(
            "exact distance",
            format!("{} qubits", target.num_qubits()),
            format!("weight cap {} and memory budget {}", budget.weight_cap, budget.mem_budget),
            "raise --weight-cap or --mem-budget",
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CodeGroups;
    use crate::lattice::Boundary;
    use crate::metrics::target::Mode;
    use crate::zoo;
    use std::time::Instant;

    #[test]
    fn minimal_span_has_distinct_ends() {
        let rows: Vec<BitVec> = ["1111000", "0111100", "0011110", "1100000"]
            .iter()
            .map(|s| BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>()))
            .collect();
        let spans = minimal_span(rows);
        let mut starts: Vec<usize> = spans.iter().map(|s| s.start).collect();
        let mut ends: Vec<usize> = spans.iter().map(|s| s.end).collect();
        starts.dedup();
        ends.sort();
        ends.dedup();
        assert_eq!(starts.len(), 4);
        assert_eq!(ends.len(), 4);
    }

    #[test]
    fn long_repetition_chain_is_fast() {
        let code = zoo::repetition_1d(100, Boundary::Open).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let t = Target::new(&groups, &Mode::Stabilizer).unwrap();
        let start = Instant::now();
        let r = distance_dp(code.layout(), &t, 0, &Budget::default()).unwrap();
        assert_eq!(r.outcome.value(), Some(1));
        assert!(start.elapsed().as_secs_f64() < 1.0);
    }

    #[test]
    fn toric_three() {
        let code = zoo::toric_2d(3).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let t = Target::new(&groups, &Mode::Stabilizer).unwrap();
        for axis in 0..2 {
            let r = distance_dp(code.layout(), &t, axis, &Budget::default()).unwrap();
            assert_eq!(r.outcome.value(), Some(3));
            assert!(t.is_target(r.outcome.witness().unwrap()));
        }
    }

    #[test]
    fn support_mask_is_respected() {
        let code = zoo::repetition_1d(5, Boundary::Open).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let t = Target::new(&groups, &Mode::Stabilizer).unwrap();
        let order: Vec<usize> = (0..5).collect();
        let mask = BitVec::from_indices(5, [3, 4]);
        let w =
            trellis_min_weight(5, &order, &t.checks, &t.class_ops, Some(&mask), &Budget::default()).unwrap().unwrap();
        assert_eq!(w.weight(), 1);
        assert!(w.support_mask().is_subset_of(&mask));
        assert!(t.is_target(&w));
    }
}
