//! Computational-basis conventions.
//!
//! A qubit's rows are ordered `|1⟩, |0⟩`, and a system ⊗ ancilla pair
//! `|s a⟩` lives at row `2(1 - s) + (1 - a)`:
//!
//! | row | state  |
//! |-----|--------|
//! | 0   | `|11⟩` |
//! | 1   | `|10⟩` |
//! | 2   | `|01⟩` |
//! | 3   | `|00⟩` |

use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

/// Row of qubit label `bit` (0 or 1).
pub fn qubit_index(bit: u8) -> usize {
    assert!(bit <= 1, "qubit label must be 0 or 1");
    1 - bit as usize
}

/// Row of the joint label `|s a⟩`.
pub fn pair_index(s: u8, a: u8) -> usize {
    2 * qubit_index(s) + qubit_index(a)
}

pub fn qubit_ket(bit: u8) -> Vec<C64> {
    let mut v = vec![ZERO; 2];
    v[qubit_index(bit)] = ONE;
    v
}

pub fn pair_ket(s: u8, a: u8) -> Vec<C64> {
    let mut v = vec![ZERO; 4];
    v[pair_index(s, a)] = ONE;
    v
}

/// `|bit⟩⟨bit|`.
pub fn qubit_projector(bit: u8) -> ComplexMatrix {
    ComplexMatrix::projector(&qubit_ket(bit))
}

/// `|s a⟩⟨s a|`.
pub fn pair_projector(s: u8, a: u8) -> ComplexMatrix {
    ComplexMatrix::projector(&pair_ket(s, a))
}

/// Joint labels in row order: `(1,1), (1,0), (0,1), (0,0)`.
pub const PAIR_LABELS: [(u8, u8); 4] = [(1, 1), (1, 0), (0, 1), (0, 0)];
