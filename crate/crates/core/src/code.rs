//! Code specifications: a lattice, a qubit layout and a declared generator
//! list.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::lattice::Lattice;
use crate::layout::QubitLayout;
use crate::pauli::PauliOp;

/// Whether the declared generators span an abelian stabilizer group or a
/// (possibly non-abelian) gauge group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Stabilizer,
    Gauge,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Stabilizer => "stabilizer",
            Role::Gauge => "gauge",
        })
    }
}

impl FromStr for Role {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stabilizer" => Ok(Role::Stabilizer),
            "gauge" => Ok(Role::Gauge),
            other => Err(format!("unknown role `{other}` (expected stabilizer|gauge)")),
        }
    }
}

/// Locality figures of a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Locality {
    pub r_actual: usize,
    pub max_participation: usize,
}

/// A code as declared: the generator list is kept exactly as given,
/// including redundant generators, since energies count declared terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    name: String,
    layout: QubitLayout,
    generators: Vec<PauliOp>,
    role: Role,
    declared_r: usize,
}

impl CodeSpec {
    /// Checks generator sizes, rejects identity generators and, for
    /// stabilizer codes, anticommuting pairs. Locality is checked separately
    /// by [`CodeSpec::validate_locality`].
    pub fn new(
        name: impl Into<String>,
        layout: QubitLayout,
        generators: Vec<PauliOp>,
        role: Role,
        declared_r: usize,
    ) -> Result<Self> {
        let n = layout.num_qubits();
        for (i, g) in generators.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(Error::DimensionMismatch { left: n, right: g.num_qubits() });
            }
            if g.is_identity() {
                return Err(Error::IdentityGenerator(i));
            }
        }
        if role == Role::Stabilizer {
            let swapped: Vec<BitVec> = generators.iter().map(PauliOp::swapped).collect();
            for (i, g) in generators.iter().enumerate() {
                let v = g.symplectic();
                if let Some(j) = (i + 1..generators.len()).find(|&j| swapped[j].dot(&v)) {
                    return Err(Error::AnticommutingStabilizers { first: i, second: j });
                }
            }
        }
        Ok(CodeSpec { name: name.into(), layout, generators, role, declared_r })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn lattice(&self) -> &Lattice {
        self.layout.lattice()
    }

    pub fn num_qubits(&self) -> usize {
        self.layout.num_qubits()
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn declared_r(&self) -> usize {
        self.declared_r
    }

    /// Number of generators acting on each qubit.
    pub fn participation(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_qubits()];
        for g in &self.generators {
            for q in g.support_mask().iter_ones() {
                counts[q] += 1;
            }
        }
        counts
    }

    /// Largest covering-hypercube side and largest qubit participation.
    /// Fails on the first generator whose hypercube exceeds the declared r.
    pub fn validate_locality(&self) -> Result<Locality> {
        let mut r_actual = 0;
        for (index, g) in self.generators.iter().enumerate() {
            let extent = self.layout.cube_side(g);
            if extent > self.declared_r {
                return Err(Error::Locality {
                    index,
                    text: g.to_text(&self.layout),
                    extent,
                    declared: self.declared_r,
                });
            }
            r_actual = r_actual.max(extent);
        }
        let max_participation = self.participation().into_iter().max().unwrap_or(0);
        Ok(Locality { r_actual, max_participation })
    }

    /// Operator text in this code's layout.
    pub fn op_text(&self, p: &PauliOp) -> String {
        p.to_text(&self.layout)
    }

    pub fn parse_op(&self, text: &str) -> Result<PauliOp> {
        PauliOp::parse(text, &self.layout)
    }
}
