//! The embedding of qubits into a lattice.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::lattice::{Cell, Lattice, Region, MAX_DIM};
use crate::pauli::PauliOp;

/// Qubit index to lattice cell, and back.
#[derive(Clone, Debug)]
pub struct QubitLayout {
    lattice: Lattice,
    cells: Vec<Cell>,
    sites: Vec<usize>,
    index: HashMap<Cell, usize>,
}

impl PartialEq for QubitLayout {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.cells == other.cells
    }
}

impl Eq for QubitLayout {}

impl QubitLayout {
    pub fn new(lattice: &Lattice, cells: Vec<Cell>) -> Result<Self> {
        let mut index = HashMap::with_capacity(cells.len());
        let mut sites = Vec::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            if c.dim() != lattice.dim() {
                return Err(Error::Precondition(format!(
                    "qubit {c} has {} coordinates, lattice has D={}",
                    c.dim(),
                    lattice.dim()
                )));
            }
            if !lattice.contains_coord(c.coords()) {
                return Err(Error::Precondition(format!("qubit {c} lies outside the lattice")));
            }
            if c.axes() >> lattice.dim() != 0 {
                return Err(Error::Precondition(format!("qubit {c} spans a nonexistent axis")));
            }
            if index.insert(*c, i).is_some() {
                return Err(Error::Precondition(format!("duplicate qubit {c}")));
            }
            sites.push(lattice.site_index(c.coords()));
        }
        Ok(QubitLayout { lattice: *lattice, cells, sites, index })
    }

    /// One qubit per lattice site, in site order.
    pub fn vertices(lattice: &Lattice) -> Self {
        let cells =
            (0..lattice.num_sites()).map(|s| Cell::from_array(lattice.site_coord(s), lattice.dim(), 0)).collect();
        QubitLayout::new(lattice, cells).expect("vertex layout is always valid")
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn num_qubits(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, qubit: usize) -> &Cell {
        &self.cells[qubit]
    }

    /// Site of the qubit's corner vertex.
    pub fn site(&self, qubit: usize) -> usize {
        self.sites[qubit]
    }

    pub fn coord(&self, qubit: usize) -> &[u32; MAX_DIM] {
        self.cells[qubit].coord()
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn is_vertex_layout(&self) -> bool {
        self.cells.iter().all(Cell::is_vertex)
    }

    /// Qubits whose corner site lies in `region`.
    pub fn qubit_mask(&self, region: &Region) -> Result<BitVec> {
        if region.lattice() != &self.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(BitVec::from_indices(self.num_qubits(), (0..self.num_qubits()).filter(|&q| region.contains(self.sites[q]))))
    }

    pub fn qubits_in(&self, region: &Region) -> Result<Vec<usize>> {
        Ok(self.qubit_mask(region)?.iter_ones().collect())
    }

    /// Sites carrying at least one qubit of `mask`.
    pub fn sites_of(&self, mask: &BitVec) -> Region {
        Region::from_sites(&self.lattice, mask.iter_ones().map(|q| self.sites[q]))
            .expect("qubit sites lie in the lattice")
    }

    /// Minimal contiguous interval along `axis` covering the support of `p`;
    /// zero for the identity.
    pub fn bounding_extent(&self, p: &PauliOp, axis: usize) -> Result<usize> {
        self.lattice.check_axis(axis)?;
        if p.num_qubits() != self.num_qubits() {
            return Err(Error::DimensionMismatch { left: p.num_qubits(), right: self.num_qubits() });
        }
        Ok(self.lattice.extent_along(p.support().iter().map(|&q| self.coord(q)), axis))
    }

    /// Side of the smallest axis-aligned hypercube covering the support.
    pub fn cube_side(&self, p: &PauliOp) -> usize {
        (0..self.lattice.dim())
            .map(|axis| self.lattice.extent_along(p.support().iter().map(|&q| self.coord(q)), axis))
            .max()
            .unwrap_or(0)
    }
}
