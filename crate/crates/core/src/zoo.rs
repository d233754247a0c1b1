//! Constructors for the standard code families.
//!
//! Conventions shared by all families: coordinates are zero-based, qubits
//! are listed in sorted cell order, and generators are emitted in a fixed
//! order documented per family.

use crate::code::{CodeSpec, Role};
use crate::error::{Error, Result};
use crate::lattice::{Boundary, Cell, Lattice, MAX_DIM};
use crate::layout::QubitLayout;
use crate::pauli::{Letter, PauliOp};

fn op(layout: &QubitLayout, cells: impl IntoIterator<Item = Cell>, letter: Letter) -> PauliOp {
    PauliOp::from_terms(
        layout.num_qubits(),
        cells.into_iter().map(|c| (layout.index_of(&c).expect("zoo cell is a qubit"), letter)),
    )
}

fn vertex(lat: &Lattice, c: [u32; MAX_DIM]) -> Cell {
    Cell::from_array(c, lat.dim(), 0)
}

/// `Z_i Z_{i+1}` on a chain; the periodic chain adds the wrap-around term.
pub fn repetition_1d(l: usize, boundary: Boundary) -> Result<CodeSpec> {
    let lat = Lattice::new(1, l, boundary)?;
    let layout = QubitLayout::vertices(&lat);
    let pairs = match boundary {
        Boundary::Open => l - 1,
        Boundary::Periodic => l,
    };
    let gens = (0..pairs).map(|i| PauliOp::from_terms(l, [(i, Letter::Z), ((i + 1) % l, Letter::Z)])).collect();
    CodeSpec::new(format!("repetition-L{l}-{boundary}"), layout, gens, Role::Stabilizer, 2)
}

/// Toric code on the edges of the periodic `L x L` lattice. Edge `(v;a)`
/// joins `v` and `v + e_a`. All stars `X` come first, then all plaquettes
/// `Z`, each in site order.
pub fn toric_2d(l: usize) -> Result<CodeSpec> {
    let lat = Lattice::new(2, l, Boundary::Periodic)?;
    let mut cells = Vec::with_capacity(2 * l * l);
    for s in 0..lat.num_sites() {
        let c = lat.site_coord(s);
        cells.push(Cell::from_array(c, 2, 0b01));
        cells.push(Cell::from_array(c, 2, 0b10));
    }
    let layout = QubitLayout::new(&lat, cells)?;
    let edge = |c: [u32; MAX_DIM], axis: usize| Cell::from_array(c, 2, 1 << axis);
    let shift = |c, axis, d| lat.shift(c, axis, d).expect("periodic");
    let mut gens = Vec::with_capacity(2 * l * l);
    for s in 0..lat.num_sites() {
        let v = lat.site_coord(s);
        let star = [edge(v, 0), edge(v, 1), edge(shift(v, 0, -1), 0), edge(shift(v, 1, -1), 1)];
        gens.push(op(&layout, star, Letter::X));
    }
    for s in 0..lat.num_sites() {
        let v = lat.site_coord(s);
        let plaq = [edge(v, 0), edge(v, 1), edge(shift(v, 1, 1), 0), edge(shift(v, 0, 1), 1)];
        gens.push(op(&layout, plaq, Letter::Z));
    }
    CodeSpec::new(format!("toric-L{l}"), layout, gens, Role::Stabilizer, 2)
}

fn masks_of_size(dim: usize, k: usize) -> impl Iterator<Item = u8> {
    (0u8..1 << dim).filter(move |m| m.count_ones() as usize == k)
}

/// CSS code on the periodic D-torus with qubits on `floor(D/2)`-cells, `X`
/// checks on the boundaries of `(floor(D/2)+1)`-cells and `Z` checks on the
/// coboundaries of `(floor(D/2)-1)`-cells. `X` checks come first.
///
/// For `D = 2` the map `(u;0) -> (u+e0;1)`, `(u;1) -> (u+e1;0)` carries this
/// code onto [`toric_2d`].
pub fn generalized_toric(dim: usize, l: usize) -> Result<CodeSpec> {
    if !(2..=4).contains(&dim) {
        return Err(Error::Unsupported(format!("generalized toric code needs 2 <= D <= 4, got D={dim}")));
    }
    let lat = Lattice::new(dim, l, Boundary::Periodic)?;
    let q = dim / 2;
    let mut cells = Vec::new();
    for s in 0..lat.num_sites() {
        let c = lat.site_coord(s);
        cells.extend(masks_of_size(dim, q).map(|m| Cell::from_array(c, dim, m)));
    }
    let layout = QubitLayout::new(&lat, cells)?;
    let shift = |c, axis, d| lat.shift(c, axis, d).expect("periodic");
    let mut gens = Vec::new();
    for s in 0..lat.num_sites() {
        let v = lat.site_coord(s);
        for b in masks_of_size(dim, q + 1) {
            let faces = (0..dim).filter(|a| b >> a & 1 == 1).flat_map(|a| {
                let m = b & !(1 << a);
                [Cell::from_array(v, dim, m), Cell::from_array(shift(v, a, 1), dim, m)]
            });
            gens.push(op(&layout, faces.collect::<Vec<_>>(), Letter::X));
        }
    }
    for s in 0..lat.num_sites() {
        let v = lat.site_coord(s);
        for c in masks_of_size(dim, q - 1) {
            let cofaces = (0..dim).filter(|a| c >> a & 1 == 0).flat_map(|a| {
                let m = c | 1 << a;
                [Cell::from_array(v, dim, m), Cell::from_array(shift(v, a, -1), dim, m)]
            });
            gens.push(op(&layout, cofaces.collect::<Vec<_>>(), Letter::Z));
        }
    }
    CodeSpec::new(format!("toric{dim}d-L{l}"), layout, gens, Role::Stabilizer, 2)
}

/// Rotated surface code on the open `L x L` vertex lattice.
///
/// Face `(i,j)` has corners `(i..=i+1, j..=j+1)` and is `X`-type when `i+j`
/// is even. Faces with `j = -1` or `j = L-1` are kept as two-body checks
/// only when `X`-type; faces with `i = -1` or `i = L-1` only when `Z`-type.
/// Bulk faces come first, then boundary faces, each in `(i,j)` order.
pub fn surface_2d(l: usize) -> Result<CodeSpec> {
    let lat = Lattice::new(2, l, Boundary::Open)?;
    let layout = QubitLayout::vertices(&lat);
    let li = l as i64;
    let face = |i: i64, j: i64| -> Vec<Cell> {
        let mut out = Vec::new();
        for (di, dj) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let (a, b) = (i + di, j + dj);
            if (0..li).contains(&a) && (0..li).contains(&b) {
                out.push(vertex(&lat, [a as u32, b as u32, 0, 0]));
            }
        }
        out
    };
    let letter = |i: i64, j: i64| if (i + j).rem_euclid(2) == 0 { Letter::X } else { Letter::Z };
    let mut gens = Vec::new();
    for i in 0..li - 1 {
        for j in 0..li - 1 {
            gens.push(op(&layout, face(i, j), letter(i, j)));
        }
    }
    let mut boundary = Vec::new();
    for i in -1..li {
        for j in -1..li {
            let vertical_edge = i == -1 || i == li - 1;
            let horizontal_edge = j == -1 || j == li - 1;
            if vertical_edge == horizontal_edge {
                continue;
            }
            let l = letter(i, j);
            if (horizontal_edge && l == Letter::X) || (vertical_edge && l == Letter::Z) {
                boundary.push(op(&layout, face(i, j), l));
            }
        }
    }
    gens.extend(boundary);
    CodeSpec::new(format!("surface-L{l}"), layout, gens, Role::Stabilizer, 2)
}

/// Bacon-Shor gauge group on the open `L x L` lattice: `X_{i,j} X_{i+1,j}`
/// (all of them, site order) followed by `Z_{i,j} Z_{i,j+1}`.
pub fn bacon_shor_2d(l: usize) -> Result<CodeSpec> {
    let lat = Lattice::new(2, l, Boundary::Open)?;
    let layout = QubitLayout::vertices(&lat);
    let mut gens = Vec::with_capacity(2 * l * (l - 1));
    for (axis, letter) in [(0, Letter::X), (1, Letter::Z)] {
        for s in 0..lat.num_sites() {
            let v = lat.site_coord(s);
            if let Some(w) = lat.shift(v, axis, 1) {
                gens.push(op(&layout, [vertex(&lat, v), vertex(&lat, w)], letter));
            }
        }
    }
    CodeSpec::new(format!("bacon-shor-L{l}"), layout, gens, Role::Gauge, 2)
}

/// Gauge group generated by `XX`, `YY` and `ZZ` on every nearest-neighbour
/// pair of the open lattice. `L` must be odd, otherwise the all-`X`
/// operator lies in the gauge group and no logical qubit remains.
pub fn heisenberg(dim: usize, l: usize) -> Result<CodeSpec> {
    if !(1..=2).contains(&dim) {
        return Err(Error::Unsupported(format!("Heisenberg gauge code needs D in {{1,2}}, got D={dim}")));
    }
    if l.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "Heisenberg gauge code needs odd L (got L={l}); for even L the all-X operator is a gauge operator"
        )));
    }
    let lat = Lattice::new(dim, l, Boundary::Open)?;
    let layout = QubitLayout::vertices(&lat);
    let mut gens = Vec::new();
    for s in 0..lat.num_sites() {
        let v = lat.site_coord(s);
        for axis in 0..dim {
            if let Some(w) = lat.shift(v, axis, 1) {
                for letter in [Letter::X, Letter::Y, Letter::Z] {
                    gens.push(op(&layout, [vertex(&lat, v), vertex(&lat, w)], letter));
                }
            }
        }
    }
    CodeSpec::new(format!("heisenberg{dim}d-L{l}"), layout, gens, Role::Gauge, 2)
}

const HAMMING: [[u8; 7]; 3] = [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]];

/// `n` Steane blocks of seven sites on an open chain of length `7n`.
///
/// Generators, in order: the six Hamming checks of every block (X rows then
/// Z rows), then `Xb Xb+1` and `Zb Zb+1` for neighbouring blocks, where
/// `Xb = X^{⊗7}` and `Zb = Z^{⊗7}` on block `b`. The collective operators
/// `X1…Xn`, `Z1…Zn` are the logical pair; the remaining block logicals are
/// gauge. `n` must be odd.
pub fn steane_chain(blocks: usize) -> Result<CodeSpec> {
    if blocks == 0 || blocks.is_multiple_of(2) {
        return Err(Error::Precondition(format!("Steane chain needs an odd number of blocks, got {blocks}")));
    }
    let n = 7 * blocks;
    let lat = Lattice::new(1, n, Boundary::Open)?;
    let layout = QubitLayout::vertices(&lat);
    let mut gens = Vec::new();
    for b in 0..blocks {
        for letter in [Letter::X, Letter::Z] {
            for row in HAMMING {
                let terms = (0..7).filter(|&i| row[i] == 1).map(|i| (7 * b + i, letter));
                gens.push(PauliOp::from_terms(n, terms));
            }
        }
    }
    for b in 0..blocks.saturating_sub(1) {
        for letter in [Letter::X, Letter::Z] {
            gens.push(PauliOp::from_terms(n, (7 * b..7 * b + 14).map(|q| (q, letter))));
        }
    }
    let r = if blocks == 1 { 7 } else { 14 };
    CodeSpec::new(format!("steane-chain-n{blocks}"), layout, gens, Role::Gauge, r)
}

/// The families known to the command line and the audit driver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Repetition { boundary: Boundary },
    Toric,
    GeneralizedToric { dim: usize },
    Surface,
    BaconShor,
    Heisenberg { dim: usize },
    SteaneChain,
}

impl Family {
    pub fn parse(name: &str, dim: Option<usize>, boundary: Option<Boundary>) -> Result<Family> {
        Ok(match name {
            "repetition" => Family::Repetition { boundary: boundary.unwrap_or(Boundary::Open) },
            "toric" => Family::Toric,
            "toric-nd" | "generalized-toric" => Family::GeneralizedToric { dim: dim.unwrap_or(3) },
            "surface" => Family::Surface,
            "bacon-shor" => Family::BaconShor,
            "heisenberg" => Family::Heisenberg { dim: dim.unwrap_or(1) },
            "steane-chain" => Family::SteaneChain,
            other => {
                return Err(Error::Precondition(format!(
                    "unknown family `{other}` (expected repetition, toric, generalized-toric, surface, bacon-shor, heisenberg, steane-chain)"
                )))
            }
        })
    }

    /// Builds the member with size parameter `size` (linear size `L`, or
    /// the block count for the Steane chain).
    pub fn build(&self, size: usize) -> Result<CodeSpec> {
        match *self {
            Family::Repetition { boundary } => repetition_1d(size, boundary),
            Family::Toric => toric_2d(size),
            Family::GeneralizedToric { dim } => generalized_toric(dim, size),
            Family::Surface => surface_2d(size),
            Family::BaconShor => bacon_shor_2d(size),
            Family::Heisenberg { dim } => heisenberg(dim, size),
            Family::SteaneChain => steane_chain(size),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Repetition { boundary } => format!("repetition-{boundary}"),
            Family::Toric => "toric".into(),
            Family::GeneralizedToric { dim } => format!("toric{dim}d"),
            Family::Surface => "surface".into(),
            Family::BaconShor => "bacon-shor".into(),
            Family::Heisenberg { dim } => format!("heisenberg{dim}d"),
            Family::SteaneChain => "steane-chain".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2;
    use std::collections::BTreeSet;

    fn rank(code: &CodeSpec) -> usize {
        gf2::rank(&code.generators().iter().map(PauliOp::symplectic).collect::<Vec<_>>())
    }

    #[test]
    fn repetition_counts() {
        let c = repetition_1d(3, Boundary::Open).unwrap();
        assert_eq!(c.generators().len(), 2);
        let loc = c.validate_locality().unwrap();
        assert_eq!((loc.r_actual, loc.max_participation), (2, 2));
        assert_eq!(repetition_1d(5, Boundary::Periodic).unwrap().generators().len(), 5);
    }

    #[test]
    fn toric_structure() {
        let c = toric_2d(2).unwrap();
        assert_eq!(c.num_qubits(), 8);
        assert_eq!(rank(&c), 6);
        let c4 = toric_2d(4).unwrap();
        assert!(c4.participation().iter().all(|&p| p == 4));
        let loc = c4.validate_locality().unwrap();
        assert_eq!((loc.r_actual, loc.max_participation), (2, 4));
    }

    fn relabel(code: &CodeSpec, f: impl Fn(&Cell) -> Cell, target: &QubitLayout) -> BTreeSet<String> {
        code.generators()
            .iter()
            .map(|g| {
                let moved = PauliOp::from_terms(
                    target.num_qubits(),
                    g.terms().map(|(q, l)| (target.index_of(&f(code.layout().cell(q))).unwrap(), l)),
                );
                moved.to_text(target)
            })
            .collect()
    }

    #[test]
    fn generalized_toric_in_two_dimensions_is_toric() {
        for l in 2..6 {
            let t = toric_2d(l).unwrap();
            let g = generalized_toric(2, l).unwrap();
            let lat = *t.lattice();
            let phi = |c: &Cell| {
                let axis = if c.axes() == 0b01 { 0 } else { 1 };
                let moved = lat.shift(*c.coord(), axis, 1).unwrap();
                Cell::from_array(moved, 2, if axis == 0 { 0b10 } else { 0b01 })
            };
            let image = relabel(&g, phi, t.layout());
            let target: BTreeSet<String> = t.generators().iter().map(|p| t.op_text(p)).collect();
            assert_eq!(image, target, "L={l}");
        }
    }

    #[test]
    fn generalized_toric_3d_shape() {
        let c = generalized_toric(3, 2).unwrap();
        assert_eq!(c.num_qubits(), 24);
        assert_eq!(c.generators().len(), 3 * 8 + 8);
        c.validate_locality().unwrap();
        let c4 = generalized_toric(4, 2).unwrap();
        assert_eq!(c4.num_qubits(), 6 * 16);
        c4.validate_locality().unwrap();
        assert!(generalized_toric(5, 2).is_err());
    }

    #[test]
    fn surface_counts() {
        for l in 2..7 {
            let c = surface_2d(l).unwrap();
            assert_eq!(c.generators().len(), l * l - 1, "L={l}");
            assert_eq!(rank(&c), l * l - 1);
            assert_eq!(c.validate_locality().unwrap().r_actual, 2);
        }
    }

    #[test]
    fn bacon_shor_counts() {
        let c = bacon_shor_2d(3).unwrap();
        assert_eq!(c.generators().len(), 12);
        assert_eq!(c.validate_locality().unwrap().r_actual, 2);
    }

    #[test]
    fn heisenberg_rejects_even() {
        assert!(heisenberg(1, 4).unwrap_err().to_string().contains("odd L"));
        assert_eq!(heisenberg(1, 3).unwrap().generators().len(), 6);
        assert_eq!(heisenberg(2, 3).unwrap().generators().len(), 36);
    }

    #[test]
    fn steane_chain_shape() {
        let c = steane_chain(1).unwrap();
        assert_eq!(c.num_qubits(), 7);
        assert_eq!(c.generators().len(), 6);
        assert_eq!(c.validate_locality().unwrap().r_actual, 7);
        let c3 = steane_chain(3).unwrap();
        assert_eq!(c3.generators().len(), 18 + 4);
        assert_eq!(c3.validate_locality().unwrap().r_actual, 14);
        assert!(steane_chain(2).is_err());
    }
}
