//! Energy cost of a Pauli error against the declared Hamiltonian terms.

use crate::code::CodeSpec;
use crate::pauli::PauliOp;

/// `2 * #{declared generators anticommuting with e}`. Redundant generators
/// count once per declaration. For gauge codes this is the
/// anticommuting-terms upper bound on the excitation energy.
pub fn energy_cost(code: &CodeSpec, e: &PauliOp) -> usize {
    let v = e.swapped();
    2 * code.generators().iter().filter(|g| v.dot(&g.symplectic())).count()
}
