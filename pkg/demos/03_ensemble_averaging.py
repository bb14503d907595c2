"""
Averaging opposite rotations turns coherent error into stochastic error
=======================================================================

Run exp(-i*eps*Z) on half the shots and exp(+i*eps*Z) on the other half.
Each member is purely coherent, but the shot-averaged channel is exactly the
stochastic dephasing channel {I: cos^2, Z: sin^2}: the off-diagonal
coefficients of the two members cancel sign by sign.
"""

import numpy as np

from paulinoise import (
    EnsembleMember,
    average_channel,
    coefficient_matrix,
    extract_from_channel,
    extract_from_unitary,
    lift_unitary,
    z_rotation,
)

eps = 0.3

single = extract_from_unitary(z_rotation(eps)).model
print("one member alone:")
print(f"  model {{I: {single.probability('I'):.6f}, Z: {single.probability('Z'):.6f}}}")
print(f"  coherent residual^2 = {single.diagnostics.coherent_residual_sq:.6e}")

averaged = average_channel(
    [EnsembleMember(0.5, z_rotation(eps)), EnsembleMember(0.5, z_rotation(-eps))]
)
mixed = extract_from_channel(averaged).model
print("fifty-fifty ensemble of +eps and -eps:")
print(f"  model {{I: {mixed.probability('I'):.6f}, Z: {mixed.probability('Z'):.6f}}}")
print(f"  coherent residual^2 = {mixed.diagnostics.coherent_residual_sq:.6e}")
print(f"  distance to model   = {mixed.diagnostics.distance_to_source:.6e}")
print()

# The cancellation is visible in the coefficient matrices themselves.
w_plus = coefficient_matrix(lift_unitary(z_rotation(eps)))
w_avg = coefficient_matrix(averaged)
print(f"|w_IZ| one member: {abs(w_plus[0, 3]):.6f}"
      f"   (cos*sin = {np.cos(eps) * np.sin(eps):.6f})")
print(f"|w_IZ| averaged:   {abs(w_avg[0, 3]):.2e}")
print()
print("The Pauli weights are unchanged by the averaging; only the cross")
print("terms die. The model was already exact in the weights, and now it is")
print("exact as a channel.")
