//! Projective Pauli operators as symplectic vectors over GF(2).
//!
//! A [`PauliOp`] stores an X-part and a Z-part, one bit per qubit. Phases
//! are dropped: `X·Z` and `Y` are the same element.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::layout::QubitLayout;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }

    pub const NONTRIVIAL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp { x: BitVec::zeros(n), z: BitVec::zeros(n) }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch { left: x.len(), right: z.len() });
        }
        Ok(PauliOp { x, z })
    }

    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        let mut p = PauliOp::identity(n);
        p.set(qubit, letter);
        p
    }

    /// Builds an operator from `(qubit, letter)` pairs; later pairs on the
    /// same qubit multiply in.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (usize, Letter)>) -> Self {
        let mut p = PauliOp::identity(n);
        for (q, l) in terms {
            let (x, z) = l.bits();
            if x {
                p.x.flip(q);
            }
            if z {
                p.z.flip(q);
            }
        }
        p
    }

    /// Parses a string such as `"XIZY"`, one letter per qubit.
    pub fn from_letters(s: &str) -> Result<Self> {
        let letters: Vec<Letter> = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse { line: 0, msg: format!("bad letter `{c}`") }))
            .collect::<Result<_>>()?;
        Ok(PauliOp::from_terms(letters.len(), letters.into_iter().enumerate()))
    }

    /// Inverse of [`PauliOp::symplectic`].
    pub fn from_symplectic(v: &BitVec) -> Self {
        let n = v.len() / 2;
        PauliOp { x: v.slice(0, n), z: v.slice(n, n) }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn set(&mut self, qubit: usize, letter: Letter) {
        let (x, z) = letter.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    /// `[x | z]`, length `2n`.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// `[z | x]`; its dot product with a symplectic vector is the
    /// commutation bit.
    pub fn swapped(&self) -> BitVec {
        self.z.concat(&self.x)
    }

    fn check(&self, other: &PauliOp) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            Err(Error::DimensionMismatch { left: self.num_qubits(), right: other.num_qubits() })
        } else {
            Ok(())
        }
    }

    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check(other)?;
        Ok(PauliOp { x: self.x.xor(&other.x), z: self.z.xor(&other.z) })
    }

    /// In-place product. Panics on a size mismatch.
    pub fn mul_assign(&mut self, other: &PauliOp) {
        assert_eq!(self.num_qubits(), other.num_qubits(), "Pauli size mismatch");
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Symplectic inner product; `true` means the operators anticommute.
    pub fn anticommutes(&self, other: &PauliOp) -> Result<bool> {
        self.check(other)?;
        Ok(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    pub fn commutes(&self, other: &PauliOp) -> Result<bool> {
        self.anticommutes(other).map(|a| !a)
    }

    pub fn support_mask(&self) -> BitVec {
        self.x.or(&self.z)
    }

    pub fn support(&self) -> Vec<usize> {
        self.support_mask().iter_ones().collect()
    }

    pub fn weight(&self) -> usize {
        self.support_mask().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Keeps the letters on qubits set in `mask`, identity elsewhere.
    pub fn restrict(&self, mask: &BitVec) -> Result<PauliOp> {
        if mask.len() != self.num_qubits() {
            return Err(Error::DimensionMismatch { left: self.num_qubits(), right: mask.len() });
        }
        Ok(PauliOp { x: self.x.and(mask), z: self.z.and(mask) })
    }

    /// Nontrivial letters in qubit order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Letter)> + '_ {
        self.support_mask().iter_ones().map(move |q| (q, self.letter(q))).collect::<Vec<_>>().into_iter()
    }

    /// Letters of the operator on the qubits in `qubits`, as a compact
    /// operator on `qubits.len()` qubits.
    pub fn project(&self, qubits: &[usize]) -> PauliOp {
        PauliOp::from_terms(qubits.len(), qubits.iter().enumerate().map(|(i, &q)| (i, self.letter(q))))
    }

    /// Places a compact operator back onto the `qubits` of an `n`-qubit
    /// system.
    pub fn embed(&self, n: usize, qubits: &[usize]) -> PauliOp {
        PauliOp::from_terms(n, self.terms().map(|(i, l)| (qubits[i], l)))
    }

    pub fn to_letters(&self) -> String {
        (0..self.num_qubits()).map(|q| self.letter(q).as_char()).collect()
    }

    /// Text form `X(c..) Z(c..)` in qubit order; the identity prints as
    /// the empty string.
    pub fn to_text(&self, layout: &QubitLayout) -> String {
        let mut out = String::new();
        for (q, l) in self.terms() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push(l.as_char());
            out.push_str(&layout.cell(q).to_string());
        }
        out
    }

    pub fn parse(text: &str, layout: &QubitLayout) -> Result<PauliOp> {
        let n = layout.num_qubits();
        let mut p = PauliOp::identity(n);
        let mut seen = BitVec::zeros(n);
        for token in text.split_whitespace() {
            let bad = |msg: String| Error::Parse { line: 0, msg };
            let mut chars = token.chars();
            let letter = chars
                .next()
                .and_then(Letter::from_char)
                .filter(|l| *l != Letter::I)
                .ok_or_else(|| bad(format!("factor `{token}` must start with X, Y or Z")))?;
            let cell = chars.as_str().parse().map_err(bad)?;
            let q = layout.index_of(&cell).ok_or_else(|| bad(format!("`{cell}` is not a qubit of this code")))?;
            if seen.get(q) {
                return Err(bad(format!("qubit {cell} appears twice")));
            }
            seen.set(q, true);
            p.set(q, letter);
        }
        Ok(p)
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_letters())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Boundary, Lattice};
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOp {
        PauliOp::from_letters(s).unwrap()
    }

    #[test]
    fn single_qubit_products() {
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("Y"));
        assert_eq!(p("XXI").multiply(&p("IXX")).unwrap(), p("XIX"));
        assert!(p("XY").multiply(&p("X")).is_err());
    }

    #[test]
    fn commutation_table() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XI").commutes(&p("IZ")).unwrap());
        assert!(p("YY").commutes(&p("XX")).unwrap());
        assert!(!p("YI").commutes(&p("XI")).unwrap());
    }

    #[test]
    fn weight_and_support() {
        assert_eq!(PauliOp::identity(4).weight(), 0);
        let q = p("XZII");
        assert_eq!(q.weight(), 2);
        assert_eq!(q.support(), vec![0, 1]);
    }

    #[test]
    fn restrict_examples() {
        let q = p("XXX");
        assert_eq!(q.restrict(&BitVec::from_indices(3, [0, 1])).unwrap(), p("XXI"));
        assert!(q.restrict(&BitVec::zeros(3)).unwrap().is_identity());
    }

    #[test]
    fn restrict_is_homomorphism_exhaustive() {
        let n = 3;
        let all: Vec<PauliOp> =
            (0..64u64).map(|w| PauliOp::from_symplectic(&BitVec::from_words(2 * n, vec![w]))).collect();
        for a in &all {
            for b in &all {
                for m in 0..8u64 {
                    let mask = BitVec::from_words(n, vec![m]);
                    let lhs = a.multiply(b).unwrap().restrict(&mask).unwrap();
                    let rhs = a.restrict(&mask).unwrap().multiply(&b.restrict(&mask).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let lat = Lattice::new(2, 3, Boundary::Open).unwrap();
        let layout = QubitLayout::vertices(&lat);
        let t = "X(0,0) Y(1,2) Z(2,1)";
        let op = PauliOp::parse(t, &layout).unwrap();
        assert_eq!(op.weight(), 3);
        assert_eq!(op.to_text(&layout), t);
        assert!(PauliOp::parse("", &layout).unwrap().is_identity());
        assert!(PauliOp::parse("X(0,0) Z(0,0)", &layout).is_err());
        assert!(PauliOp::parse("X(3,0)", &layout).is_err());
        assert!(PauliOp::parse("W(0,0)", &layout).is_err());
    }

    fn arb_op(n: usize) -> impl Strategy<Value = PauliOp> {
        proptest::collection::vec(0u8..4, n).prop_map(|ls| {
            PauliOp::from_terms(
                ls.len(),
                ls.iter().enumerate().map(|(i, &l)| (i, [Letter::I, Letter::X, Letter::Y, Letter::Z][l as usize])),
            )
        })
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_op(70), b in arb_op(70), c in arb_op(70)) {
            let ab = a.multiply(&b).unwrap();
            prop_assert_eq!(&ab, &b.multiply(&a).unwrap());
            prop_assert_eq!(ab.multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
            prop_assert!(a.multiply(&a).unwrap().is_identity());
            prop_assert_eq!(a.multiply(&PauliOp::identity(70)).unwrap(), a.clone());
            prop_assert!(ab.weight() <= a.weight() + b.weight());
        }

        #[test]
        fn symplectic_form_is_bilinear(a in arb_op(70), b in arb_op(70), c in arb_op(70)) {
            prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
            let bc = b.multiply(&c).unwrap();
            prop_assert_eq!(
                a.anticommutes(&bc).unwrap(),
                a.anticommutes(&b).unwrap() ^ a.anticommutes(&c).unwrap()
            );
            prop_assert_eq!(a.anticommutes(&b).unwrap(), a.swapped().dot(&b.symplectic()));
        }

        #[test]
        fn restrict_composes(a in arb_op(40), m1 in proptest::collection::vec(any::<bool>(), 40),
                             m2 in proptest::collection::vec(any::<bool>(), 40)) {
            let m1 = BitVec::from_bools(&m1);
            let m2 = BitVec::from_bools(&m2);
            let lhs = a.restrict(&m1).unwrap().restrict(&m2).unwrap();
            prop_assert_eq!(lhs, a.restrict(&m1.and(&m2)).unwrap());
        }
    }
}
