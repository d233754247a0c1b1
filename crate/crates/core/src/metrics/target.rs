//! Which operators count as nontrivial logicals for a given distance or
//! barrier notion.
//!
//! Every notion used here has the same shape: an operator qualifies when it
//! commutes with a set of `checks` and anticommutes with at least one of a
//! set of `class_ops`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::code::Role;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::group::{CodeGroups, CommutationMap, GroupBasis};
use crate::pauli::PauliOp;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `C(S) \ S`: every logical qubit, gauge ones included.
    Stabilizer,
    /// `C(S) \ G`: dressed logicals of the used qubits.
    Subsystem,
    /// `C(G) \ G`: bare logicals of the used qubits.
    Bare,
    /// `C(S) \ <S, logicals of the qubits not listed>`: only the listed
    /// logical qubits (indices into the used pairs) are protected.
    GaugeQubits { used: Vec<usize> },
    /// `C(S)` elements anticommuting with one of the listed used logical
    /// operators (indices into `X1, Z1, X2, Z2, ...`).
    Sector { anticommute_with: Vec<usize> },
}

impl Mode {
    /// The natural notion for a code's role.
    pub fn default_for(role: Role) -> Mode {
        match role {
            Role::Stabilizer => Mode::Stabilizer,
            Role::Gauge => Mode::Subsystem,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            Mode::Stabilizer => f.write_str("stabilizer"),
            Mode::Subsystem => f.write_str("subsystem"),
            Mode::Bare => f.write_str("bare"),
            Mode::GaugeQubits { used } => write!(f, "gauge-qubits:{}", list(used)),
            Mode::Sector { anticommute_with } => write!(f, "sector:{}", list(anticommute_with)),
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse_list = |v: &str| -> std::result::Result<Vec<usize>, String> {
            v.split(',').map(|t| t.trim().parse().map_err(|_| format!("bad index `{t}` in mode `{s}`"))).collect()
        };
        match s.split_once(':') {
            None => match s {
                "stabilizer" => Ok(Mode::Stabilizer),
                "subsystem" => Ok(Mode::Subsystem),
                "bare" => Ok(Mode::Bare),
                _ => Err(format!(
                    "unknown mode `{s}` (expected stabilizer, subsystem, bare, gauge-qubits:<i,..>, sector:<i,..>)"
                )),
            },
            Some(("gauge-qubits", v)) => Ok(Mode::GaugeQubits { used: parse_list(v)? }),
            Some(("sector", v)) => Ok(Mode::Sector { anticommute_with: parse_list(v)? }),
            Some(_) => Err(format!("unknown mode `{s}`")),
        }
    }
}

/// A resolved target set for a concrete code.
#[derive(Clone, Debug)]
pub struct Target {
    pub mode: Mode,
    /// Independent operators the target must commute with.
    pub checks: Vec<PauliOp>,
    /// The target must anticommute with at least one of these.
    pub class_ops: Vec<PauliOp>,
    /// Subgroup by which energy and target status are invariant.
    pub quotient: GroupBasis,
    check_map: CommutationMap,
    class_map: CommutationMap,
}

impl Target {
    pub fn new(groups: &CodeGroups, mode: &Mode) -> Result<Target> {
        let used = groups.logicals.used_ops();
        let pick = |idx: &[usize], pool: &[PauliOp], what: &str| -> Result<Vec<PauliOp>> {
            idx.iter()
                .map(|&i| {
                    pool.get(i).cloned().ok_or_else(|| {
                        Error::Precondition(format!("{what} index {i} out of range (have {})", pool.len()))
                    })
                })
                .collect()
        };
        let s_checks = groups.stabilizer.rows().to_vec();
        let (checks, class_ops) = match mode {
            Mode::Stabilizer => (s_checks, used.iter().cloned().chain(groups.logicals.gauge_ops()).collect()),
            Mode::Subsystem => (s_checks, used),
            Mode::Bare => (groups.gauge.rows().to_vec(), used),
            Mode::GaugeQubits { used: which } => {
                let pairs: Vec<usize> = which.iter().flat_map(|&j| [2 * j, 2 * j + 1]).collect();
                (s_checks, pick(&pairs, &used, "logical qubit")?)
            }
            Mode::Sector { anticommute_with } => (s_checks, pick(anticommute_with, &used, "logical operator")?),
        };
        Ok(Target {
            mode: mode.clone(),
            check_map: CommutationMap::new(&checks),
            class_map: CommutationMap::new(&class_ops),
            checks,
            class_ops,
            quotient: groups.stabilizer.clone(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.quotient.num_qubits()
    }

    pub fn has_targets(&self) -> bool {
        !self.class_ops.is_empty()
    }

    pub fn syndrome(&self, p: &PauliOp) -> BitVec {
        self.check_map.apply(p)
    }

    pub fn class(&self, p: &PauliOp) -> BitVec {
        self.class_map.apply(p)
    }

    pub fn is_target(&self, p: &PauliOp) -> bool {
        self.syndrome(p).is_zero() && !self.class(p).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Boundary;
    use crate::zoo;

    #[test]
    fn mode_text_round_trip() {
        for m in [
            Mode::Stabilizer,
            Mode::Subsystem,
            Mode::Bare,
            Mode::GaugeQubits { used: vec![0, 2] },
            Mode::Sector { anticommute_with: vec![1] },
        ] {
            assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
        }
        assert!("fancy".parse::<Mode>().is_err());
    }

    #[test]
    fn repetition_sectors() {
        let code = zoo::repetition_1d(4, Boundary::Open).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let all = Target::new(&groups, &Mode::Stabilizer).unwrap();
        let bitflip = Target::new(&groups, &Mode::Sector { anticommute_with: vec![1] }).unwrap();
        let z1 = PauliOp::from_letters("ZIII").unwrap();
        let xall = PauliOp::from_letters("XXXX").unwrap();
        assert!(all.is_target(&z1) && all.is_target(&xall));
        assert!(!bitflip.is_target(&z1) && bitflip.is_target(&xall));
        assert!(Target::new(&groups, &Mode::Sector { anticommute_with: vec![2] }).is_err());
    }
}
