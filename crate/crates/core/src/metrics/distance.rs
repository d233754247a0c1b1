//! Exact minimum-weight search by enumeration.
//!
//! Two exhaustive strategies are available and the cheaper one is picked:
//!
//! * weight enumeration: every operator of weight `1, 2, ...` up to the
//!   weight cap, `C(n,w) 3^w` candidates at weight `w`;
//! * group enumeration: every element of the centralizer of the checks with
//!   nonzero class, visited in Gray-code order, `(2^t - 1) 2^{dim ker}`
//!   candidates where `t` is the rank of the class map.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::GroupBasis;
use crate::metrics::target::Target;
use crate::pauli::{Letter, PauliOp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceOutcome {
    Exact {
        value: usize,
        witness: PauliOp,
    },
    /// No target of weight at most `cap` exists.
    AboveCap {
        cap: usize,
    },
    NoLogicals,
}

impl DistanceOutcome {
    pub fn value(&self) -> Option<usize> {
        match self {
            DistanceOutcome::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&PauliOp> {
        match self {
            DistanceOutcome::Exact { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    WeightEnumeration,
    GroupEnumeration,
    Trellis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub outcome: DistanceOutcome,
    pub method: DistanceMethod,
    /// Candidates examined.
    pub work: u64,
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Candidates at weight exactly `w`.
pub fn weight_level_cost(n: usize, w: usize) -> f64 {
    binom(n, w) * 3f64.powi(w as i32)
}

/// Packed per-qubit responses: for each qubit and letter, the check bits
/// followed by the class bits.
struct Responses {
    words: usize,
    data: Vec<u64>,
    check_mask: Vec<u64>,
    class_mask: Vec<u64>,
}

impl Responses {
    fn new(target: &Target) -> Self {
        let n = target.num_qubits();
        let nc = target.checks.len();
        let nb = nc + target.class_ops.len();
        let words = nb.div_ceil(64).max(1);
        let mut data = vec![0u64; n * 3 * words];
        let ops: Vec<&PauliOp> = target.checks.iter().chain(&target.class_ops).collect();
        for q in 0..n {
            for (bit, op) in ops.iter().enumerate() {
                // X_q anticommutes with z-part, Z_q with x-part
                let (ax, az) = (op.z_bits().get(q), op.x_bits().get(q));
                let set = |data: &mut Vec<u64>, l: usize| data[(q * 3 + l) * words + bit / 64] |= 1 << (bit % 64);
                if ax {
                    set(&mut data, 0);
                }
                if ax ^ az {
                    set(&mut data, 1);
                }
                if az {
                    set(&mut data, 2);
                }
            }
        }
        let mut check_mask = vec![0u64; words];
        let mut class_mask = vec![0u64; words];
        for b in 0..nb {
            let m = if b < nc { &mut check_mask } else { &mut class_mask };
            m[b / 64] |= 1 << (b % 64);
        }
        Responses { words, data, check_mask, class_mask }
    }

    fn get(&self, q: usize, l: usize) -> &[u64] {
        let s = (q * 3 + l) * self.words;
        &self.data[s..s + self.words]
    }

    fn qualifies(&self, acc: &[u64]) -> bool {
        let zero = acc.iter().zip(&self.check_mask).all(|(a, m)| a & m == 0);
        zero && acc.iter().zip(&self.class_mask).any(|(a, m)| a & m != 0)
    }
}

const LETTERS: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

struct WeightSearch<'a> {
    resp: &'a Responses,
    qubits: &'a [usize],
    w: usize,
    stack: Vec<u64>,
    chosen: Vec<(usize, usize)>,
    work: u64,
}

impl WeightSearch<'_> {
    fn rec(&mut self, depth: usize, start: usize) -> bool {
        let words = self.resp.words;
        if depth == self.w {
            self.work += 1;
            return self.resp.qualifies(&self.stack[depth * words..(depth + 1) * words]);
        }
        let remaining = self.w - depth;
        for i in start..=self.qubits.len() - remaining {
            let q = self.qubits[i];
            for l in 0..3 {
                let r = self.resp.get(q, l);
                let (done, next) = self.stack.split_at_mut((depth + 1) * words);
                for ((out, &a), &b) in next[..words].iter_mut().zip(&done[depth * words..]).zip(r) {
                    *out = a ^ b;
                }
                self.chosen[depth] = (q, l);
                if self.rec(depth + 1, i + 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// Lowest-weight target of weight exactly `w` supported on `qubits`, first
/// in lexicographic order of (qubit set, letters).
pub fn search_weight(target: &Target, qubits: &[usize], w: usize) -> (Option<PauliOp>, u64) {
    let resp = Responses::new(target);
    search_weight_with(&resp, target.num_qubits(), qubits, w)
}

fn search_weight_with(resp: &Responses, n: usize, qubits: &[usize], w: usize) -> (Option<PauliOp>, u64) {
    if w == 0 || w > qubits.len() {
        return (None, 0);
    }
    let mut s =
        WeightSearch { resp, qubits, w, stack: vec![0; (w + 1) * resp.words], chosen: vec![(0, 0); w], work: 0 };
    let found = s.rec(0, 0);
    let op = found.then(|| PauliOp::from_terms(n, s.chosen.iter().map(|&(q, l)| (q, LETTERS[l]))));
    (op, s.work)
}

/// Adapted basis of the centralizer of the checks: `reps` map to
/// independent class vectors, `kernel` has zero class.
pub struct ClassSplit {
    pub reps: Vec<PauliOp>,
    pub kernel: Vec<PauliOp>,
}

impl ClassSplit {
    pub fn new(target: &Target) -> Result<ClassSplit> {
        if target.class_ops.len() > 128 {
            return Err(Error::Unsupported("more than 128 class operators".into()));
        }
        let space = GroupBasis::span(target.num_qubits(), &target.checks).centralizer();
        let class_bits = |p: &PauliOp| -> u128 { target.class(p).iter_ones().fold(0u128, |acc, i| acc | 1 << i) };
        let mut reps: Vec<(u128, PauliOp)> = Vec::new();
        let mut kernel = Vec::new();
        for v in space.rows() {
            let mut v = v.clone();
            let mut img = class_bits(&v);
            for (ri, rv) in &reps {
                let pivot = ri & ri.wrapping_neg();
                if img & pivot != 0 {
                    img ^= ri;
                    v.mul_assign(rv);
                }
            }
            if img == 0 {
                kernel.push(v);
            } else {
                // keep stored images reduced at the new pivot
                let pivot = img & img.wrapping_neg();
                for (ri, rv) in reps.iter_mut() {
                    if *ri & pivot != 0 {
                        *ri ^= img;
                        rv.mul_assign(&v);
                    }
                }
                reps.push((img, v));
            }
        }
        Ok(ClassSplit { reps: reps.into_iter().map(|(_, v)| v).collect(), kernel })
    }

    /// Number of candidates group enumeration visits.
    pub fn cost(&self) -> f64 {
        (2f64.powi(self.reps.len() as i32) - 1.0) * 2f64.powi(self.kernel.len() as i32)
    }
}

fn pack(p: &PauliOp) -> Vec<u64> {
    p.x_bits().words().iter().chain(p.z_bits().words()).copied().collect()
}

/// Minimum weight over all targets, by Gray-code enumeration of every
/// class coset. Exact regardless of weight.
pub fn group_enumeration(target: &Target, split: &ClassSplit) -> DistanceResult {
    let n = target.num_qubits();
    if split.reps.is_empty() {
        return DistanceResult {
            outcome: DistanceOutcome::NoLogicals,
            method: DistanceMethod::GroupEnumeration,
            work: 0,
        };
    }
    let t = split.reps.len();
    let kdim = split.kernel.len();
    let half = n.div_ceil(64);
    let kernel: Vec<Vec<u64>> = split.kernel.iter().map(pack).collect();
    let reps: Vec<Vec<u64>> = split.reps.iter().map(pack).collect();
    let weight = |v: &[u64]| -> u32 { (0..half).map(|i| (v[i] | v[half + i]).count_ones()).sum() };

    let mut best = u32::MAX;
    let mut best_at = (0u64, 0u64);
    let mut work = 0u64;
    for c in 1..(1u64 << t) {
        let mut cur = vec![0u64; 2 * half];
        for (i, r) in reps.iter().enumerate() {
            if c >> i & 1 == 1 {
                cur.iter_mut().zip(r).for_each(|(a, b)| *a ^= b);
            }
        }
        if half == 1 {
            let (mut x, mut z) = (cur[0], cur[1]);
            let kx: Vec<u64> = kernel.iter().map(|v| v[0]).collect();
            let kz: Vec<u64> = kernel.iter().map(|v| v[1]).collect();
            let w0 = (x | z).count_ones();
            if w0 < best {
                best = w0;
                best_at = (c, 0);
            }
            for i in 1..(1u64 << kdim) {
                let b = i.trailing_zeros() as usize;
                x ^= kx[b];
                z ^= kz[b];
                let w = (x | z).count_ones();
                if w < best {
                    best = w;
                    best_at = (c, i);
                }
            }
        } else {
            let w0 = weight(&cur);
            if w0 < best {
                best = w0;
                best_at = (c, 0);
            }
            for i in 1..(1u64 << kdim) {
                let b = i.trailing_zeros() as usize;
                cur.iter_mut().zip(&kernel[b]).for_each(|(a, k)| *a ^= k);
                let w = weight(&cur);
                if w < best {
                    best = w;
                    best_at = (c, i);
                }
            }
        }
        work += 1u64 << kdim;
    }
    // the Gray code visits i ^ (i >> 1) after i steps
    let (c, i) = best_at;
    let gray = i ^ (i >> 1);
    let mut witness = PauliOp::identity(n);
    for (j, r) in split.reps.iter().enumerate() {
        if c >> j & 1 == 1 {
            witness.mul_assign(r);
        }
    }
    for (j, k) in split.kernel.iter().enumerate() {
        if gray >> j & 1 == 1 {
            witness.mul_assign(k);
        }
    }
    debug_assert_eq!(witness.weight(), best as usize);
    DistanceResult {
        outcome: DistanceOutcome::Exact { value: best as usize, witness },
        method: DistanceMethod::GroupEnumeration,
        work,
    }
}

/// Exact minimum weight of a target operator, choosing between weight and
/// group enumeration by estimated cost. Weight enumeration stops at the
/// budget's weight cap; the result is then a typed lower bound unless group
/// enumeration fits the budget.
pub fn distance_bruteforce(target: &Target, budget: &Budget) -> Result<DistanceResult> {
    if !target.has_targets() {
        return Ok(DistanceResult {
            outcome: DistanceOutcome::NoLogicals,
            method: DistanceMethod::WeightEnumeration,
            work: 0,
        });
    }
    let n = target.num_qubits();
    let split = ClassSplit::new(target)?;
    if split.reps.is_empty() {
        return Ok(DistanceResult {
            outcome: DistanceOutcome::NoLogicals,
            method: DistanceMethod::GroupEnumeration,
            work: 0,
        });
    }
    let group_cost = split.cost();
    let group_ok = group_cost <= budget.enum_cap();
    let resp = Responses::new(target);
    let all: Vec<usize> = (0..n).collect();
    let mut spent = 0.0;
    let mut work = 0u64;
    for w in 1..=budget.weight_cap.min(n) {
        let level = weight_level_cost(n, w);
        if group_ok && spent + level > group_cost {
            return Ok(group_enumeration(target, &split));
        }
        let (found, wk) = search_weight_with(&resp, n, &all, w);
        work += wk;
        spent += level;
        if let Some(witness) = found {
            return Ok(DistanceResult {
                outcome: DistanceOutcome::Exact { value: w, witness },
                method: DistanceMethod::WeightEnumeration,
                work,
            });
        }
    }
    if group_ok {
        return Ok(group_enumeration(target, &split));
    }
    Ok(DistanceResult {
        outcome: DistanceOutcome::AboveCap { cap: budget.weight_cap.min(n) },
        method: DistanceMethod::WeightEnumeration,
        work,
    })
}

/// Weight enumeration only, without the group-enumeration shortcut.
pub fn distance_by_weight(target: &Target, cap: usize) -> DistanceResult {
    let n = target.num_qubits();
    let resp = Responses::new(target);
    let all: Vec<usize> = (0..n).collect();
    let mut work = 0;
    if target.has_targets() {
        for w in 1..=cap.min(n) {
            let (found, wk) = search_weight_with(&resp, n, &all, w);
            work += wk;
            if let Some(witness) = found {
                return DistanceResult {
                    outcome: DistanceOutcome::Exact { value: w, witness },
                    method: DistanceMethod::WeightEnumeration,
                    work,
                };
            }
        }
    }
    let outcome =
        if target.has_targets() { DistanceOutcome::AboveCap { cap: cap.min(n) } } else { DistanceOutcome::NoLogicals };
    DistanceResult { outcome, method: DistanceMethod::WeightEnumeration, work }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CodeGroups;
    use crate::lattice::Boundary;
    use crate::metrics::target::Mode;
    use crate::zoo;

    fn target(code: &crate::code::CodeSpec, mode: Mode) -> Target {
        Target::new(&CodeGroups::new(code).unwrap(), &mode).unwrap()
    }

    #[test]
    fn repetition_distance_is_one() {
        let code = zoo::repetition_1d(6, Boundary::Open).unwrap();
        let r = distance_bruteforce(&target(&code, Mode::Stabilizer), &Budget::default()).unwrap();
        assert_eq!(r.outcome.value(), Some(1));
        assert_eq!(r.outcome.witness().unwrap().to_letters(), "ZIIIII");
    }

    #[test]
    fn strategies_agree() {
        let codes = [
            (zoo::toric_2d(3).unwrap(), Mode::Stabilizer, 3),
            (zoo::bacon_shor_2d(3).unwrap(), Mode::Subsystem, 3),
            (zoo::heisenberg(1, 5).unwrap(), Mode::Subsystem, 1),
            (zoo::steane_chain(1).unwrap(), Mode::Subsystem, 3),
        ];
        for (code, mode, expected) in codes {
            let t = target(&code, mode);
            let by_weight = distance_by_weight(&t, 6);
            let by_group = group_enumeration(&t, &ClassSplit::new(&t).unwrap());
            assert_eq!(by_weight.outcome.value(), Some(expected), "{}", code.name());
            assert_eq!(by_group.outcome.value(), Some(expected), "{}", code.name());
            assert!(t.is_target(by_group.outcome.witness().unwrap()));
            assert!(t.is_target(by_weight.outcome.witness().unwrap()));
        }
    }

    #[test]
    fn cap_gives_lower_bound() {
        let code = zoo::toric_2d(4).unwrap();
        let t = target(&code, Mode::Stabilizer);
        let budget = Budget { weight_cap: 3, enum_log2_cap: 10, ..Budget::default() };
        let r = distance_bruteforce(&t, &budget).unwrap();
        assert_eq!(r.outcome, DistanceOutcome::AboveCap { cap: 3 });
    }
}
