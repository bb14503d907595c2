"""
Leakage: error weight that no Pauli string can represent
========================================================

Physical qubits have more than two levels. A gate that moves amplitude out
of the computational subspace cannot be described by Pauli strings on that
subspace; the escaped weight is reported separately so the model budget
still closes to one.
"""

import numpy as np

from paulinoise import LeakageSpec, extract_from_unitary, overrotated_cz

# A 3-level system where the gate swaps levels 1 and 2. Level 2 is outside
# the computational subspace {0, 1}: half of a uniformly-weighted input
# escapes.
swap_12 = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex)
spec = LeakageSpec(full_dim=3, comp_indices=(0, 1))
model = extract_from_unitary(swap_12, np.eye(3), leakage=spec).model

print("3-level 1<->2 swap, computational subspace {0, 1}:")
print(f"  leakage weight: {model.leakage_weight}")
print(f"  e_I = {model.probability('I')}, e_Z = {model.probability('Z')}")
print(f"  budget (paulis + leakage): {model.total_weight()}")
print()

# Contrast: two qutrits whose gate acts as CZ on the qubit levels and as the
# identity on everything else. Restricting to the computational levels loses
# nothing, and the model is the perfect gate.
full = np.eye(9, dtype=complex)
full[4, 4] = -1.0  # the |11> phase of CZ at qutrit index 1*3 + 1
spec2 = LeakageSpec(full_dim=9, comp_indices=(0, 1, 3, 4))
embedded = extract_from_unitary(full, full, leakage=spec2).model

print("two qutrits, gate = CZ on levels {0,1} x {0,1}, identity elsewhere:")
print(f"  leakage weight: {embedded.leakage_weight}")
print(f"  e_II = {embedded.probability('II')}")
print()
print("Leakage is a property of where the gate sends amplitude, not of its")
print("matrix size: the embedded CZ keeps everything inside the subspace,")
print("the swap loses exactly half.")
