//! Hypercubic lattices, qubit cells, site regions and strip decompositions.
//!
//! Sites are indexed row-major with the first coordinate most significant.
//! Coordinates are zero-based. Qubits that live on higher-dimensional cells
//! (edges, faces) are represented by a [`Cell`]: the minimal-corner vertex
//! plus the set of axes the cell spans. All geometric predicates act on the
//! corner vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;

pub const MAX_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

impl FromStr for Boundary {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "open" => Ok(Boundary::Open),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(format!("unknown boundary `{other}` (expected open|periodic)")),
        }
    }
}

/// The lattice `{0..L-1}^D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    dim: usize,
    size: usize,
    boundary: Boundary,
}

impl Lattice {
    pub fn new(dim: usize, size: usize, boundary: Boundary) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidLattice(format!("dimension {dim} not in 1..={MAX_DIM}")));
        }
        if size < 2 {
            return Err(Error::InvalidLattice(format!("linear size {size} < 2")));
        }
        if size > u32::MAX as usize || size.checked_pow(dim as u32).is_none() {
            return Err(Error::InvalidLattice("lattice too large".into()));
        }
        Ok(Lattice { dim, size, boundary })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn is_periodic(&self) -> bool {
        self.boundary == Boundary::Periodic
    }

    pub fn num_sites(&self) -> usize {
        self.size.pow(self.dim as u32)
    }

    pub fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.dim {
            Err(Error::AxisOutOfRange { axis, dim: self.dim })
        } else {
            Ok(())
        }
    }

    pub fn site_index(&self, coord: &[u32]) -> usize {
        coord[..self.dim].iter().fold(0, |acc, &c| acc * self.size + c as usize)
    }

    pub fn site_coord(&self, mut index: usize) -> [u32; MAX_DIM] {
        let mut c = [0u32; MAX_DIM];
        for axis in (0..self.dim).rev() {
            c[axis] = (index % self.size) as u32;
            index /= self.size;
        }
        c
    }

    pub fn contains_coord(&self, coord: &[u32]) -> bool {
        coord[..self.dim].iter().all(|&c| (c as usize) < self.size)
    }

    /// Moves `coord` by `delta` along `axis`. `None` when an open boundary
    /// is crossed.
    pub fn shift(&self, coord: [u32; MAX_DIM], axis: usize, delta: i64) -> Option<[u32; MAX_DIM]> {
        let l = self.size as i64;
        let v = coord[axis] as i64 + delta;
        let mut out = coord;
        match self.boundary {
            Boundary::Periodic => out[axis] = v.rem_euclid(l) as u32,
            Boundary::Open => {
                if v < 0 || v >= l {
                    return None;
                }
                out[axis] = v as u32;
            }
        }
        Some(out)
    }

    /// Distance between two positions on one axis.
    pub fn axis_distance(&self, a: u32, b: u32) -> usize {
        let d = (a as i64 - b as i64).unsigned_abs() as usize;
        match self.boundary {
            Boundary::Open => d,
            Boundary::Periodic => d.min(self.size - d),
        }
    }

    pub fn linf_distance(&self, a: &[u32], b: &[u32]) -> usize {
        (0..self.dim).map(|i| self.axis_distance(a[i], b[i])).max().unwrap_or(0)
    }

    /// Minimal length of a contiguous (cyclic when periodic) interval of the
    /// axis covering every occupied position. Zero when nothing is occupied.
    pub fn interval_extent(&self, occupied: &[bool]) -> usize {
        debug_assert_eq!(occupied.len(), self.size);
        let positions: Vec<usize> = occupied.iter().enumerate().filter(|(_, &o)| o).map(|(i, _)| i).collect();
        let (Some(&lo), Some(&hi)) = (positions.first(), positions.last()) else {
            return 0;
        };
        match self.boundary {
            Boundary::Open => hi - lo + 1,
            Boundary::Periodic => {
                // complement of the largest cyclic gap
                let mut max_gap = self.size - 1 - hi + lo;
                for w in positions.windows(2) {
                    max_gap = max_gap.max(w[1] - w[0] - 1);
                }
                self.size - max_gap
            }
        }
    }

    /// Extent along `axis` of a set of coordinates.
    pub fn extent_along<'a>(&self, coords: impl IntoIterator<Item = &'a [u32; MAX_DIM]>, axis: usize) -> usize {
        let mut occ = vec![false; self.size];
        for c in coords {
            occ[c[axis] as usize] = true;
        }
        self.interval_extent(&occ)
    }

    pub fn full_region(&self) -> Region {
        Region { lattice: *self, members: BitVec::ones(self.num_sites()) }
    }

    pub fn empty_region(&self) -> Region {
        Region { lattice: *self, members: BitVec::zeros(self.num_sites()) }
    }

    /// Sites whose `axis` coordinate lies in the interval of `width`
    /// positions starting at `start` (wrapping on periodic lattices).
    pub fn slab(&self, axis: usize, start: usize, width: usize) -> Result<Region> {
        self.check_axis(axis)?;
        if width > self.size {
            return Err(Error::Precondition(format!("slab width {width} exceeds L={}", self.size)));
        }
        if !self.is_periodic() && start + width > self.size {
            return Err(Error::Precondition(format!("slab [{start}, {}) leaves the open lattice", start + width)));
        }
        let mut inside = vec![false; self.size];
        for i in 0..width {
            inside[(start + i) % self.size] = true;
        }
        let mut r = self.empty_region();
        for s in 0..self.num_sites() {
            if inside[self.site_coord(s)[axis] as usize] {
                r.members.set(s, true);
            }
        }
        Ok(r)
    }

    /// Axis-aligned box given per-axis `[lo, hi]` inclusive bounds.
    pub fn boxed(&self, lo: &[u32], hi: &[u32]) -> Result<Region> {
        if lo.len() != self.dim || hi.len() != self.dim {
            return Err(Error::Precondition("box bounds must have one entry per axis".into()));
        }
        if !self.contains_coord(lo) || !self.contains_coord(hi) {
            return Err(Error::Precondition("box bounds outside the lattice".into()));
        }
        let mut r = self.empty_region();
        for s in 0..self.num_sites() {
            let c = self.site_coord(s);
            if (0..self.dim).all(|i| c[i] >= lo[i] && c[i] <= hi[i]) {
                r.members.set(s, true);
            }
        }
        Ok(r)
    }

    /// Decomposes the lattice into an even number `K` of contiguous strips
    /// along `axis`, each of width `r` or `r-1`.
    ///
    /// Requires `r >= 2` and `L >= 2(r-1)^2`. Among the admissible
    /// `L = a(r-1) + b r` with `a+b` even the one with the most width-`r`
    /// strips is taken, and the wide strips come first.
    pub fn strip_partition(&self, r: usize, axis: usize) -> Result<Vec<Strip>> {
        self.check_axis(axis)?;
        if r < 2 {
            return Err(Error::Precondition(format!("strip partition needs r >= 2, got {r}")));
        }
        let required = 2 * (r - 1) * (r - 1);
        let l = self.size;
        if l < required {
            return Err(Error::Precondition(format!(
                "strip partition needs L >= 2(r-1)^2 = {required}, got L={l} (r={r})"
            )));
        }
        let (a, b) = (0..=l / r)
            .rev()
            .find_map(|b| {
                let rem = l - b * r;
                (rem.is_multiple_of(r - 1) && (rem / (r - 1) + b).is_multiple_of(2)).then(|| (rem / (r - 1), b))
            })
            .ok_or_else(|| Error::Internal(format!("no even strip decomposition of L={l}, r={r}")))?;
        let widths = std::iter::repeat_n(r, b).chain(std::iter::repeat_n(r - 1, a));
        let mut strips = Vec::with_capacity(a + b);
        let mut start = 0;
        for width in widths {
            strips.push(Strip { start, width, region: self.slab(axis, start, width)? });
            start += width;
        }
        Ok(strips)
    }
}

/// One strip of a [`Lattice::strip_partition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub start: usize,
    pub width: usize,
    pub region: Region,
}

/// A qubit location: corner vertex plus the axes spanned by the cell
/// (empty for vertex qubits).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    coord: [u32; MAX_DIM],
    dim: u8,
    axes: u8,
}

impl Cell {
    pub fn vertex(coord: &[u32]) -> Self {
        Cell::new(coord, 0)
    }

    pub fn new(coord: &[u32], axes: u8) -> Self {
        assert!(coord.len() <= MAX_DIM);
        let mut c = [0u32; MAX_DIM];
        c[..coord.len()].copy_from_slice(coord);
        Cell { coord: c, dim: coord.len() as u8, axes }
    }

    pub fn from_array(coord: [u32; MAX_DIM], dim: usize, axes: u8) -> Self {
        Cell { coord, dim: dim as u8, axes }
    }

    pub fn coord(&self) -> &[u32; MAX_DIM] {
        &self.coord
    }

    pub fn coords(&self) -> &[u32] {
        &self.coord[..self.dim as usize]
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn axes(&self) -> u8 {
        self.axes
    }

    pub fn is_vertex(&self) -> bool {
        self.axes == 0
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        if self.axes != 0 {
            f.write_str(";")?;
            let mut first = true;
            for a in 0..MAX_DIM {
                if self.axes >> a & 1 == 1 {
                    if !first {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                    first = false;
                }
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cell {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("cell `{s}` must look like (c1,...,cD) or (c1,...,cD;a,b)"))?;
        let (coords, axes) = match inner.split_once(';') {
            Some((c, a)) => (c, Some(a)),
            None => (inner, None),
        };
        let coord: Vec<u32> = coords
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad coordinate `{t}` in `{s}`: {e}")))
            .collect::<std::result::Result<_, _>>()?;
        if coord.is_empty() || coord.len() > MAX_DIM {
            return Err(format!("cell `{s}` has {} coordinates", coord.len()));
        }
        let mut mask = 0u8;
        if let Some(a) = axes {
            for t in a.split(',') {
                let axis: usize = t.trim().parse().map_err(|e| format!("bad axis `{t}` in `{s}`: {e}"))?;
                if axis >= coord.len() {
                    return Err(format!("axis {axis} out of range in `{s}`"));
                }
                if mask >> axis & 1 == 1 {
                    return Err(format!("repeated axis {axis} in `{s}`"));
                }
                mask |= 1 << axis;
            }
            if mask == 0 {
                return Err(format!("empty axis list in `{s}`"));
            }
        }
        Ok(Cell::new(&coord, mask))
    }
}

/// A subset of lattice sites.
#[derive(Clone, PartialEq, Eq)]
pub struct Region {
    lattice: Lattice,
    members: BitVec,
}

impl Region {
    pub fn from_sites(lattice: &Lattice, sites: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut r = lattice.empty_region();
        for s in sites {
            if s >= lattice.num_sites() {
                return Err(Error::Precondition(format!("site {s} outside the lattice")));
            }
            r.members.set(s, true);
        }
        Ok(r)
    }

    pub fn from_coords<'a>(lattice: &Lattice, coords: impl IntoIterator<Item = &'a [u32]>) -> Result<Self> {
        let mut r = lattice.empty_region();
        for c in coords {
            if c.len() != lattice.dim() || !lattice.contains_coord(c) {
                return Err(Error::Precondition(format!("coordinate {c:?} outside the lattice")));
            }
            r.members.set(lattice.site_index(c), true);
        }
        Ok(r)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn members(&self) -> &BitVec {
        &self.members
    }

    pub fn contains(&self, site: usize) -> bool {
        self.members.get(site)
    }

    pub fn contains_coord(&self, coord: &[u32]) -> bool {
        self.members.get(self.lattice.site_index(coord))
    }

    pub fn len(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_zero()
    }

    pub fn sites(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    /// Member coordinates in site order (row-major), for serialization.
    pub fn coords(&self) -> Vec<Vec<u32>> {
        self.sites().map(|s| self.lattice.site_coord(s)[..self.lattice.dim()].to_vec()).collect()
    }

    fn check_same(&self, other: &Region) -> Result<()> {
        if self.lattice != other.lattice {
            Err(Error::LatticeMismatch)
        } else {
            Ok(())
        }
    }

    pub fn union(&self, other: &Region) -> Result<Region> {
        self.check_same(other)?;
        Ok(Region { lattice: self.lattice, members: self.members.or(&other.members) })
    }

    pub fn intersection(&self, other: &Region) -> Result<Region> {
        self.check_same(other)?;
        Ok(Region { lattice: self.lattice, members: self.members.and(&other.members) })
    }

    pub fn complement(&self) -> Region {
        Region { lattice: self.lattice, members: self.members.not() }
    }

    /// `{u ∉ M : l∞(u, M) <= r}` with the lattice's boundary conditions.
    pub fn boundary_shell(&self, r: usize) -> Region {
        let lat = self.lattice;
        let d = lat.dim();
        let mut shell = lat.empty_region();
        let span = 2 * r + 1;
        let offsets = span.pow(d as u32);
        for s in self.sites() {
            let c = lat.site_coord(s);
            'off: for o in 0..offsets {
                let mut cur = c;
                let mut rest = o;
                for axis in 0..d {
                    let delta = (rest % span) as i64 - r as i64;
                    rest /= span;
                    match lat.shift(cur, axis, delta) {
                        Some(n) => cur = n,
                        None => continue 'off,
                    }
                }
                let idx = lat.site_index(&cur);
                if !self.members.get(idx) {
                    shell.members.set(idx, true);
                }
            }
        }
        shell
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_rejects_bad_shapes() {
        assert!(Lattice::new(0, 3, Boundary::Open).is_err());
        assert!(Lattice::new(5, 3, Boundary::Open).is_err());
        assert!(Lattice::new(2, 1, Boundary::Open).is_err());
    }

    #[test]
    fn site_indexing_is_row_major() {
        let lat = Lattice::new(2, 3, Boundary::Open).unwrap();
        assert_eq!(lat.site_index(&[0, 2]), 2);
        assert_eq!(lat.site_index(&[1, 0]), 3);
        for s in 0..lat.num_sites() {
            assert_eq!(lat.site_index(&lat.site_coord(s)), s);
        }
    }

    #[test]
    fn interval_extent_open_and_periodic() {
        let open = Lattice::new(1, 5, Boundary::Open).unwrap();
        let per = Lattice::new(1, 5, Boundary::Periodic).unwrap();
        let occ = [true, false, false, false, true];
        assert_eq!(open.interval_extent(&occ), 5);
        assert_eq!(per.interval_extent(&occ), 2);
        assert_eq!(per.interval_extent(&[false; 5]), 0);
        assert_eq!(per.interval_extent(&[true; 5]), 5);
        assert_eq!(per.interval_extent(&[false, true, false, true, false]), 3);
    }

    #[test]
    fn boundary_shell_examples() {
        let lat = Lattice::new(2, 5, Boundary::Open).unwrap();
        let m = Region::from_coords(&lat, [&[2u32, 2][..]]).unwrap();
        assert_eq!(m.boundary_shell(1).len(), 8);
        assert!(lat.full_region().boundary_shell(3).is_empty());

        let chain = Lattice::new(1, 10, Boundary::Open).unwrap();
        let left = Region::from_sites(&chain, 0..5).unwrap();
        let shell = left.boundary_shell(2);
        assert_eq!(shell.sites().collect::<Vec<_>>(), vec![5, 6]);

        let ring = Lattice::new(1, 10, Boundary::Periodic).unwrap();
        let left = Region::from_sites(&ring, 0..5).unwrap();
        assert_eq!(left.boundary_shell(2).sites().collect::<Vec<_>>(), vec![5, 6, 8, 9]);
    }

    #[test]
    fn strip_partition_examples() {
        let widths = |l: usize, r: usize| -> Vec<usize> {
            let lat = Lattice::new(2, l, Boundary::Open).unwrap();
            lat.strip_partition(r, 0).unwrap().iter().map(|s| s.width).collect()
        };
        assert_eq!(widths(8, 3), vec![2, 2, 2, 2]);
        assert_eq!(widths(10, 2), vec![2, 2, 2, 2, 1, 1]);
        assert_eq!(widths(2, 2), vec![1, 1]);
        assert_eq!(widths(3, 2), vec![2, 1]);
        let lat = Lattice::new(2, 7, Boundary::Open).unwrap();
        let err = lat.strip_partition(3, 0).unwrap_err();
        assert!(err.to_string().contains("2(r-1)^2 = 8"));
    }

    #[test]
    fn strips_cover_disjointly() {
        for l in 2..30 {
            for r in 2..5 {
                let lat = Lattice::new(2, l, Boundary::Periodic).unwrap();
                let Ok(strips) = lat.strip_partition(r, 1) else {
                    assert!(l < 2 * (r - 1) * (r - 1));
                    continue;
                };
                assert_eq!(strips.len() % 2, 0);
                let mut total = lat.empty_region();
                for s in &strips {
                    assert!(s.width == r || s.width == r - 1);
                    assert!(total.intersection(&s.region).unwrap().is_empty());
                    total = total.union(&s.region).unwrap();
                }
                assert_eq!(total, lat.full_region());
            }
        }
    }

    #[test]
    fn cell_text_round_trip() {
        for s in ["(0,1)", "(3,0,2;0)", "(1,1;0,1)", "(7)"] {
            let c: Cell = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("(1,2;2)".parse::<Cell>().is_err());
        assert!("1,2".parse::<Cell>().is_err());
        assert!("(1,1;0,0)".parse::<Cell>().is_err());
    }
}
