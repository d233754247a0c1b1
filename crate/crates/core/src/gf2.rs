//! Bit-packed linear algebra over GF(2).
//!
//! Everything above this module (Pauli operators, subgroup bases, syndrome
//! maps) reduces to row echelon forms and nullspaces of small dense bit
//! matrices, so the representation here is deliberately plain: one
//! `Vec<u64>` per row, pivots taken at the lowest set column.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec::zeros(len);
        for w in v.words.iter_mut() {
            *w = !0;
        }
        v.clear_tail();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from raw words; bits past `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVec { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[inline]
    pub fn and_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    #[inline]
    pub fn or_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.or_assign(other);
        out
    }

    pub fn not(&self) -> BitVec {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    /// Parity of the bitwise AND: the standard GF(2) dot product.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn last_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `[start, start+len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        let mut out = BitVec::zeros(len);
        if start.is_multiple_of(WORD) {
            let w0 = start / WORD;
            let nw = words_for(len);
            out.words.copy_from_slice(&self.words[w0..w0 + nw]);
            out.clear_tail();
        } else {
            for i in self.iter_ones().filter(|&i| i >= start && i < start + len) {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Low 128 bits, for callers that know the vector is short.
    pub fn to_u128(&self) -> u128 {
        debug_assert!(self.len <= 128);
        let lo = self.words.first().copied().unwrap_or(0) as u128;
        let hi = self.words.get(1).copied().unwrap_or(0) as u128;
        lo | (hi << 64)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Each stored row carries a combination vector recording which inserted
/// vectors it is the sum of, so membership queries can return exponents.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    tags: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    combos: Vec<BitVec>,
}

impl Echelon {
    /// `tags` is the length of the combination vectors.
    pub fn new(ncols: usize, tags: usize) -> Self {
        Echelon { ncols, tags, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows. Returns the residual and the
    /// combination of tags that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut res = v.clone();
        let mut combo = BitVec::zeros(self.tags);
        for ((row, &p), c) in self.rows.iter().zip(&self.pivots).zip(&self.combos) {
            if res.get(p) {
                res.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (res, combo)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut res = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if res.get(p) {
                res.xor_assign(row);
            }
        }
        res.is_zero()
    }

    /// Inserts `v` tagged with combination `tag`. Returns false when `v` was
    /// already in the span (nothing is stored then).
    pub fn insert(&mut self, v: &BitVec, tag: BitVec) -> bool {
        debug_assert_eq!(tag.len(), self.tags);
        let (mut res, combo) = self.reduce(v);
        let Some(p) = res.first_one() else {
            return false;
        };
        let mut c = tag;
        c.xor_assign(&combo);
        for (row, rc) in self.rows.iter_mut().zip(self.combos.iter_mut()) {
            if row.get(p) {
                row.xor_assign(&res);
                rc.xor_assign(&c);
            }
        }
        // keep rows sorted by pivot so iteration order is canonical
        let pos = self.pivots.partition_point(|&q| q < p);
        res.clear_tail();
        self.rows.insert(pos, res);
        self.pivots.insert(pos, p);
        self.combos.insert(pos, c);
        true
    }

    /// Inserts without tracking combinations.
    pub fn insert_untagged(&mut self, v: &BitVec) -> bool {
        let tag = BitVec::zeros(self.tags);
        self.insert(v, tag)
    }

    /// Basis of `{x : row · x = 0 for every stored row}`.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::with_capacity(self.ncols - self.rank());
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.ncols);
            v.set(f, true);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a list of vectors.
pub fn rank(rows: &[BitVec]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut e = Echelon::new(first.len(), 0);
    for r in rows {
        e.insert_untagged(r);
    }
    e.rank()
}

/// Basis of the right nullspace `{x : r · x = 0 for all r in rows}`.
pub fn nullspace(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut e = Echelon::new(ncols, 0);
    for r in rows {
        e.insert_untagged(r);
    }
    e.nullspace()
}

/// Basis of the left nullspace: coefficient vectors `c` with `Σ c_i rows_i = 0`.
pub fn left_nullspace(rows: &[BitVec]) -> Vec<BitVec> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut e = Echelon::new(ncols, m);
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut tag = BitVec::zeros(m);
        tag.set(i, true);
        let (res, combo) = e.reduce(r);
        if res.is_zero() {
            let mut dep = combo;
            dep.set(i, !dep.get(i));
            out.push(dep);
        } else {
            e.insert(r, tag);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn basic_ops() {
        let a = bv("1011");
        let b = bv("0110");
        assert_eq!(a.xor(&b), bv("1101"));
        assert!(a.dot(&b)); // one overlapping bit
        assert_eq!(a.count_ones(), 3);
        assert_eq!(a.iter_ones().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(a.first_one(), Some(0));
        assert_eq!(b.last_one(), Some(2));
        assert_eq!(a.concat(&b), bv("10110110"));
        assert_eq!(a.concat(&b).slice(4, 4), b);
        assert_eq!(BitVec::ones(70).count_ones(), 70);
        assert_eq!(BitVec::ones(70).not().count_ones(), 0);
    }

    #[test]
    fn slice_across_words() {
        let v = BitVec::from_indices(200, [3, 64, 130, 199]);
        assert_eq!(v.slice(128, 72), BitVec::from_indices(72, [2, 71]));
        assert_eq!(v.slice(60, 10), BitVec::from_indices(10, [4]));
    }

    #[test]
    fn echelon_rank_and_membership() {
        let rows = [bv("1100"), bv("0110"), bv("1010")];
        assert_eq!(rank(&rows), 2);
        let mut e = Echelon::new(4, 3);
        for (i, r) in rows.iter().enumerate() {
            e.insert(r, BitVec::from_indices(3, [i]));
        }
        let (res, combo) = e.reduce(&bv("1010"));
        assert!(res.is_zero());
        // 1010 = 1100 + 0110
        assert_eq!(combo, bv("110"));
        assert!(!e.contains(&bv("0001")));
    }

    #[test]
    fn nullspace_is_orthogonal_and_complete() {
        let rows = [bv("11000"), bv("01100"), bv("00011")];
        let ns = nullspace(&rows, 5);
        assert_eq!(ns.len(), 5 - rank(&rows));
        for v in &ns {
            for r in &rows {
                assert!(!r.dot(v));
            }
        }
        assert_eq!(rank(&ns), ns.len());
    }

    #[test]
    fn left_nullspace_finds_dependencies() {
        let rows = [bv("110"), bv("011"), bv("101"), bv("111")];
        let deps = left_nullspace(&rows);
        assert_eq!(deps.len(), 1);
        assert_eq!(deps[0], bv("1110"));
    }
}
