//! Subgroups of the projective Pauli group, held as independent generator
//! lists with a cached echelon form over the symplectic columns
//! `x_0..x_{n-1}, z_0..z_{n-1}`.

use crate::code::{CodeSpec, Role};
use crate::error::{Error, Result};
use crate::gf2::{self, BitVec, Echelon};
use crate::pauli::PauliOp;

#[derive(Clone, Debug)]
pub struct GroupBasis {
    n: usize,
    rows: Vec<PauliOp>,
    echelon: Echelon,
}

impl PartialEq for GroupBasis {
    /// Equality of the generated groups.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rank() == other.rank() && self.contains_group(other)
    }
}

impl GroupBasis {
    pub fn trivial(n: usize) -> Self {
        GroupBasis { n, rows: Vec::new(), echelon: Echelon::new(2 * n, 0) }
    }

    /// Keeps the operators that are independent of the earlier ones, in
    /// the order given.
    pub fn span<'a>(n: usize, ops: impl IntoIterator<Item = &'a PauliOp>) -> Self {
        let mut indep = Vec::new();
        let mut probe = Echelon::new(2 * n, 0);
        for p in ops {
            assert_eq!(p.num_qubits(), n, "operator size mismatch");
            if probe.insert_untagged(&p.symplectic()) {
                indep.push(p.clone());
            }
        }
        GroupBasis::from_independent(n, indep)
    }

    fn from_independent(n: usize, rows: Vec<PauliOp>) -> Self {
        let k = rows.len();
        let mut echelon = Echelon::new(2 * n, k);
        for (i, r) in rows.iter().enumerate() {
            let inserted = echelon.insert(&r.symplectic(), BitVec::from_indices(k, [i]));
            debug_assert!(inserted);
        }
        GroupBasis { n, rows, echelon }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[PauliOp] {
        &self.rows
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, p: &PauliOp) -> bool {
        self.echelon.contains(&p.symplectic())
    }

    /// Exponents over [`GroupBasis::rows`] expressing `p`, if `p` is in the
    /// group. The combination is unique since the rows are independent.
    pub fn member(&self, p: &PauliOp) -> Option<BitVec> {
        let (res, combo) = self.echelon.reduce(&p.symplectic());
        res.is_zero().then_some(combo)
    }

    pub fn product(&self, combo: &BitVec) -> PauliOp {
        let mut p = PauliOp::identity(self.n);
        for i in combo.iter_ones() {
            p.mul_assign(&self.rows[i]);
        }
        p
    }

    pub fn contains_group(&self, other: &GroupBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn join(&self, other: &GroupBasis) -> GroupBasis {
        GroupBasis::span(self.n, self.rows.iter().chain(&other.rows))
    }

    pub fn is_abelian(&self) -> bool {
        let sw: Vec<BitVec> = self.rows.iter().map(PauliOp::swapped).collect();
        self.rows.iter().enumerate().all(|(i, r)| {
            let v = r.symplectic();
            sw[i + 1..].iter().all(|s| !s.dot(&v))
        })
    }

    /// All operators commuting with every element; rank `2n - rank`.
    pub fn centralizer(&self) -> GroupBasis {
        let sw: Vec<BitVec> = self.rows.iter().map(PauliOp::swapped).collect();
        let basis = gf2::nullspace(&sw, 2 * self.n);
        GroupBasis::from_independent(self.n, basis.iter().map(PauliOp::from_symplectic).collect())
    }

    /// `B ∩ C(B)`.
    pub fn center(&self) -> GroupBasis {
        let m = self.rank();
        let sw: Vec<BitVec> = self.rows.iter().map(PauliOp::swapped).collect();
        let gram: Vec<BitVec> = self
            .rows
            .iter()
            .map(|r| {
                let v = r.symplectic();
                BitVec::from_bools(&sw.iter().map(|s| s.dot(&v)).collect::<Vec<_>>())
            })
            .collect();
        let combos = gf2::nullspace(&gram, m);
        GroupBasis::from_independent(self.n, combos.iter().map(|c| self.product(c)).collect())
    }

    /// Span of the restrictions of the rows to the qubits in `mask`.
    pub fn restrict_group(&self, mask: &BitVec) -> Result<GroupBasis> {
        let restricted = self.rows.iter().map(|r| r.restrict(mask)).collect::<Result<Vec<_>>>()?;
        Ok(GroupBasis::span(self.n, restricted.iter().filter(|p| !p.is_identity())))
    }

    /// Elements of the group supported inside `mask`.
    pub fn contained_subgroup(&self, mask: &BitVec) -> Result<GroupBasis> {
        if mask.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: mask.len() });
        }
        let outside = mask.not();
        let outside2 = outside.concat(&outside);
        let cut: Vec<BitVec> = self.rows.iter().map(|r| r.symplectic().and(&outside2)).collect();
        let combos = gf2::left_nullspace(&cut);
        Ok(GroupBasis::span(self.n, combos.iter().map(|c| self.product(c)).collect::<Vec<_>>().iter()))
    }

    /// Reduces every row to the qubits in `qubits` (in that order), giving a
    /// group on `qubits.len()` qubits. Rows are assumed supported there.
    pub fn compact(&self, qubits: &[usize]) -> GroupBasis {
        let ops: Vec<PauliOp> = self.rows.iter().map(|r| r.project(qubits)).collect();
        GroupBasis::span(qubits.len(), ops.iter())
    }
}

/// Logical operators: `used` pairs carry the encoded qubits, `gauge` pairs
/// the gauge qubits. Within a pair the operators anticommute; across pairs
/// everything commutes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalBasis {
    pub used: Vec<(PauliOp, PauliOp)>,
    pub gauge: Vec<(PauliOp, PauliOp)>,
}

impl LogicalBasis {
    pub fn k(&self) -> usize {
        self.used.len()
    }

    pub fn g(&self) -> usize {
        self.gauge.len()
    }

    /// `[X1, Z1, X2, Z2, ...]` of the used pairs.
    pub fn used_ops(&self) -> Vec<PauliOp> {
        flatten(&self.used)
    }

    pub fn gauge_ops(&self) -> Vec<PauliOp> {
        flatten(&self.gauge)
    }
}

fn flatten(pairs: &[(PauliOp, PauliOp)]) -> Vec<PauliOp> {
    pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect()
}

fn weight_lex_key(p: &PauliOp) -> (usize, PauliOp) {
    (p.weight(), p.clone())
}

/// Symplectic Gram-Schmidt on `space` modulo its radical `radical`.
///
/// Candidates are scanned in weight-then-lexicographic order. Each pair is
/// oriented so that its first operator has at least as many X bits as the
/// second.
pub fn symplectic_pairs(space: &GroupBasis, radical: &GroupBasis) -> Result<Vec<(PauliOp, PauliOp)>> {
    let mut cands: Vec<PauliOp> = space.rows().to_vec();
    cands.sort_by_cached_key(weight_lex_key);
    let mut span = radical.clone();
    let mut pairs = Vec::new();
    while let Some(i) = cands.iter().position(|c| !span.contains(c)) {
        let v = cands.remove(i);
        let j = cands
            .iter()
            .position(|c| v.anticommutes(c).expect("same size"))
            .ok_or_else(|| Error::Internal("candidate outside the radical has no symplectic partner".into()))?;
        let w = cands.remove(j);
        for c in cands.iter_mut() {
            let a = c.anticommutes(&w).expect("same size");
            let b = c.anticommutes(&v).expect("same size");
            if a {
                c.mul_assign(&v);
            }
            if b {
                c.mul_assign(&w);
            }
        }
        span = span.join(&GroupBasis::span(space.num_qubits(), [&v, &w]));
        let (v, w) = if v.x_bits().count_ones() >= w.x_bits().count_ones() { (v, w) } else { (w, v) };
        pairs.push((v, w));
    }
    Ok(pairs)
}

/// Greedily multiplies `p` by `reducers` while that lowers the weight.
pub fn reduce_weight(p: &PauliOp, reducers: &[PauliOp]) -> PauliOp {
    let mut best = p.clone();
    let mut w = best.weight();
    loop {
        let mut improved = false;
        for s in reducers {
            let cand = best.multiply(s).expect("same size");
            let cw = cand.weight();
            if cw < w {
                best = cand;
                w = cw;
                improved = true;
            }
        }
        if !improved {
            return best;
        }
    }
}

/// Groups derived from a code: the span of the declared generators, its
/// center, and a logical basis.
#[derive(Clone, Debug)]
pub struct CodeGroups {
    pub gauge: GroupBasis,
    pub stabilizer: GroupBasis,
    pub logicals: LogicalBasis,
}

impl CodeGroups {
    pub fn new(code: &CodeSpec) -> Result<Self> {
        let n = code.num_qubits();
        let gauge = GroupBasis::span(n, code.generators());
        let stabilizer = match code.role() {
            Role::Stabilizer => gauge.clone(),
            Role::Gauge => gauge.center(),
        };
        let reducers: Vec<PauliOp> = match code.role() {
            Role::Stabilizer => code.generators().to_vec(),
            Role::Gauge => {
                let local: Vec<PauliOp> =
                    code.generators().iter().filter(|g| stabilizer.contains(g)).cloned().collect();
                local.into_iter().chain(stabilizer.rows().iter().cloned()).collect()
            }
        };
        let reduce = |pairs: Vec<(PauliOp, PauliOp)>| -> Vec<(PauliOp, PauliOp)> {
            pairs.into_iter().map(|(a, b)| (reduce_weight(&a, &reducers), reduce_weight(&b, &reducers))).collect()
        };
        let bare = gauge.centralizer();
        let used = reduce(symplectic_pairs(&bare, &stabilizer)?);
        let gauge_pairs = match code.role() {
            Role::Stabilizer => Vec::new(),
            Role::Gauge => reduce(symplectic_pairs(&gauge, &stabilizer)?),
        };
        let groups = CodeGroups { gauge, stabilizer, logicals: LogicalBasis { used, gauge: gauge_pairs } };
        // dim C(S) = 2n - s = s + 2g + 2k
        let s = groups.stabilizer.rank();
        if 2 * n - s != s + 2 * groups.g() + 2 * groups.k() {
            return Err(Error::Internal("logical basis size disagrees with rank arithmetic".into()));
        }
        Ok(groups)
    }

    pub fn num_qubits(&self) -> usize {
        self.gauge.num_qubits()
    }

    pub fn k(&self) -> usize {
        self.logicals.k()
    }

    pub fn g(&self) -> usize {
        self.logicals.g()
    }

    /// `C(S) = G · C(G)`, compared by rank and containment.
    pub fn subsystem_identity_holds(&self) -> bool {
        let cs = self.stabilizer.centralizer();
        let joined = self.gauge.join(&self.gauge.centralizer());
        cs.rank() == joined.rank() && cs.contains_group(&joined)
    }
}

/// A GF(2)-linear map from operators to bit vectors: output bit `i` is the
/// commutation bit with `ops[i]`.
#[derive(Clone, Debug)]
pub struct CommutationMap {
    rows: Vec<BitVec>,
}

impl CommutationMap {
    pub fn new<'a>(ops: impl IntoIterator<Item = &'a PauliOp>) -> Self {
        CommutationMap { rows: ops.into_iter().map(PauliOp::swapped).collect() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn apply(&self, p: &PauliOp) -> BitVec {
        let v = p.symplectic();
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(&v)).collect::<Vec<_>>())
    }
}

/// Anticommutation pattern against the declared generators.
pub fn syndrome_map(code: &CodeSpec) -> CommutationMap {
    CommutationMap::new(code.generators())
}

/// Anticommutation pattern against the used logical operators, ordered
/// `X1, Z1, X2, Z2, ...`.
pub fn logical_class_map(logicals: &LogicalBasis) -> CommutationMap {
    CommutationMap::new(&logicals.used_ops())
}
