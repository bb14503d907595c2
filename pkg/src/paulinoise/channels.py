"""Dense superoperators: construction, composition, fidelity, and distance.

A channel ``C`` on a ``D``-dimensional system is stored as the ``D^2 x D^2``
complex matrix ``S`` that acts on row-major vectorized operators::

    vec(O)[a * D + b] = O[a, b]          vec(C(rho)) = S @ vec(rho)

With this convention the superoperator of a unitary ``U`` is
``kron(U, U.conj())``, and the inner product ``Tr(A^dag B) / D^2`` (the
default normalization of :func:`paulinoise.paulis.frobenius_inner` at the
superoperator dimension) makes the family ``kron(P, Q.conj())`` over Pauli
string pairs ``(P, Q)`` an orthonormal basis of channel space. Every
coefficient, fidelity, and distance in this package is expressed in that
basis and metric; in particular :func:`channel_distance` counts both
off-diagonal cross terms ``(P, Q)`` and ``(Q, P)`` separately, as any
entrywise norm must.

Dimension caps: dense superoperator construction is capped at
``DEFAULT_SUPEROP_MAX_QUBITS`` qubits because memory grows as ``16**n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionError, PhysicalityError, SizeLimitError
from .paulis import (
    DEFAULT_UNITARITY_TOL,
    basis_matrices,
    qubit_count,
    require_unitary,
)

#: Dense superoperators hold 16**n complex entries; five qubits is 16 MB.
DEFAULT_SUPEROP_MAX_QUBITS = 5

#: Default tolerance for trace/hermiticity preservation and imaginary parts.
DEFAULT_PHYSICALITY_TOL = 1e-9


def vectorize(op: np.ndarray) -> np.ndarray:
    """Row-major vectorization: ``vec(O)[a * D + b] = O[a, b]``."""
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise DimensionError(f"expected a square operator, got shape {op.shape}")
    return op.reshape(-1)


def devectorize(vec: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`; the length must be a perfect square."""
    vec = np.asarray(vec, dtype=complex)
    if vec.ndim != 1:
        raise DimensionError(f"expected a vector, got shape {vec.shape}")
    dim = int(round(np.sqrt(vec.size)))
    if dim * dim != vec.size:
        raise DimensionError(f"vector length {vec.size} is not a perfect square")
    return vec.reshape(dim, dim)


def superoperator_dims(s: np.ndarray) -> tuple[int, int]:
    """Validate a superoperator shape and return ``(D^2, D)``."""
    s = np.asarray(s)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise DimensionError(f"expected a square superoperator, got shape {s.shape}")
    d2 = s.shape[0]
    d = int(round(np.sqrt(d2)))
    if d * d != d2:
        raise DimensionError(
            f"superoperator dimension {d2} is not the square of an operator dimension"
        )
    return d2, d


def lift_unitary(
    u: np.ndarray,
    *,
    unitarity_tol: float = DEFAULT_UNITARITY_TOL,
    allow_nonunitary: bool = False,
) -> np.ndarray:
    """Superoperator of conjugation by ``u``: ``vec(u rho u^dag) = kron(u, u.conj()) vec(rho)``.

    ``u`` must be unitary within ``unitarity_tol`` unless ``allow_nonunitary``
    is set (useful for lifting non-unitary blocks for diagnostics).
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(f"expected a square operator, got shape {u.shape}")
    if not allow_nonunitary:
        require_unitary(u, unitarity_tol, name="lift_unitary input")
    return np.kron(u, u.conj())


def channel_from_oracle(oracle: Callable[[np.ndarray], np.ndarray], dim: int) -> np.ndarray:
    """Dense superoperator of a channel given only as a callable on operators.

    ``oracle`` receives each matrix unit ``|a><b|`` (a ``dim x dim`` array with
    a single unit entry) and must return the ``dim x dim`` image. Column
    ``a * dim + b`` of the result is the vectorized image of ``|a><b|``.
    """
    if dim < 2:
        raise DimensionError("operator dimension must be at least 2")
    n_estimate = max(1, int(dim - 1).bit_length())
    if n_estimate > DEFAULT_SUPEROP_MAX_QUBITS:
        raise SizeLimitError(
            f"dimension {dim} exceeds the dense superoperator cap of "
            f"{DEFAULT_SUPEROP_MAX_QUBITS} qubits"
        )
    s = np.empty((dim * dim, dim * dim), dtype=complex)
    unit = np.zeros((dim, dim), dtype=complex)
    for a in range(dim):
        for b in range(dim):
            unit[a, b] = 1.0
            image = np.asarray(oracle(unit.copy()), dtype=complex)
            if image.shape != (dim, dim):
                raise DimensionError(
                    f"oracle returned shape {image.shape} for a {dim}-dimensional input"
                )
            s[:, a * dim + b] = image.reshape(-1)
            unit[a, b] = 0.0
    return s


def compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Superoperator of ``outer`` applied after ``inner`` (matrix product)."""
    outer = np.asarray(outer, dtype=complex)
    inner = np.asarray(inner, dtype=complex)
    superoperator_dims(outer)
    superoperator_dims(inner)
    if outer.shape != inner.shape:
        raise DimensionError(
            f"cannot compose superoperators of shapes {outer.shape} and {inner.shape}"
        )
    return outer @ inner


def adjoint_channel(s: np.ndarray) -> np.ndarray:
    """Adjoint (conjugate transpose) of a superoperator.

    For a unitary lift this is the lift of the inverse, and the Pauli-pair
    coefficients of the adjoint are the conjugates of the original's.
    """
    s = np.asarray(s, dtype=complex)
    superoperator_dims(s)
    return s.conj().T


def entanglement_fidelity(
    s: np.ndarray,
    *,
    imag_tol: float = DEFAULT_PHYSICALITY_TOL,
) -> float:
    """Entanglement fidelity of a channel with the identity.

    Equal to the average of ``<a| C(|a><b|) |b>`` over all ``D^2`` index
    pairs. Under row-major vectorization each of those brackets is a diagonal
    entry of the superoperator, so the value is ``trace(s) / D^2`` and the
    doubled-space state is never formed. For the lift of a unitary ``U`` this
    is ``|Tr(U) / D|^2``, the identity weight of the channel.
    """
    s = np.asarray(s, dtype=complex)
    d2, d = superoperator_dims(s)
    qubit_count(d)
    value = complex(np.trace(s)) / d2
    if abs(value.imag) > imag_tol:
        raise PhysicalityError(
            f"entanglement fidelity has imaginary part {value.imag:.3e}, beyond "
            f"tolerance {imag_tol:g}; the channel is not hermiticity preserving"
        )
    return float(value.real)


def channel_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance between superoperators, normalized by ``D^2``.

    ``sqrt(Tr[(a - b)^dag (a - b)] / D^2)``; zero iff the matrices are equal,
    symmetric, and obeys the triangle inequality. In the Pauli-pair basis the
    square equals the sum of squared-magnitude coefficient differences over
    all ordered pairs ``(P, Q)``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    superoperator_dims(a)
    if a.shape != b.shape:
        raise DimensionError(
            f"cannot compare superoperators of shapes {a.shape} and {b.shape}"
        )
    diff = a - b
    return float(np.sqrt(np.sum(np.abs(diff) ** 2) / a.shape[0]))


def trace_preservation_defect(s: np.ndarray) -> float:
    """Largest deviation of ``vec(I)^T s`` from ``vec(I)^T``.

    Zero exactly when the channel preserves the trace of every input.
    """
    s = np.asarray(s, dtype=complex)
    _, d = superoperator_dims(s)
    trace_row = np.eye(d, dtype=complex).reshape(-1)
    return float(np.max(np.abs(trace_row @ s - trace_row)))


def hermiticity_defect(s: np.ndarray) -> float:
    """Largest deviation from the hermiticity-preservation symmetry.

    A channel maps Hermitian inputs to Hermitian outputs iff the 4-index
    form ``T[i, k, j, l] = s[(i, k), (j, l)]`` satisfies
    ``T = T.transpose(1, 0, 3, 2).conj()``.
    """
    s = np.asarray(s, dtype=complex)
    _, d = superoperator_dims(s)
    t = s.reshape(d, d, d, d)
    return float(np.max(np.abs(t - t.transpose(1, 0, 3, 2).conj())))


def pauli_pair_diagonal(
    s: np.ndarray,
    *,
    max_qubits: int = DEFAULT_SUPEROP_MAX_QUBITS,
) -> np.ndarray:
    """Diagonal Pauli-pair coefficients ``<kron(P, P.conj()), s>`` for every
    Pauli string ``P``, in basis index order.

    Computed one string at a time through the same index reduction as
    :func:`entanglement_fidelity` applied to ``P``-twirled channels, without
    building the full coefficient matrix:

    ``w_P = (1 / D^2) sum_{a,b,c,e} P[a, c] s[(c, e), (a, b)] P[e, b]``

    The result is complex; hermiticity-preserving channels have real entries.
    """
    s = np.asarray(s, dtype=complex)
    d2, d = superoperator_dims(s)
    n = qubit_count(d)
    if n > max_qubits:
        raise SizeLimitError(
            f"qubit count {n} exceeds the dense superoperator cap of {max_qubits}"
        )
    stack = basis_matrices(n, max_qubits=max(n, max_qubits))
    t = s.reshape(d, d, d, d)
    return np.einsum("pac,ceab,peb->p", stack, t, stack, optimize=True) / d2


@dataclass(frozen=True)
class PhysicalityReport:
    """Outcome of :func:`check_physicality` with the measured defects."""

    trace_preserving: bool
    hermiticity_preserving: bool
    diagonal_weights_real: bool
    trace_defect: float
    hermiticity_defect: float
    max_diagonal_imag: float
    tol: float

    def all_ok(self) -> bool:
        return (
            self.trace_preserving
            and self.hermiticity_preserving
            and self.diagonal_weights_real
        )


def check_physicality(
    s: np.ndarray,
    tol: float = DEFAULT_PHYSICALITY_TOL,
    *,
    max_qubits: int = DEFAULT_SUPEROP_MAX_QUBITS,
) -> PhysicalityReport:
    """Report trace preservation, hermiticity preservation, and realness of
    the diagonal Pauli-pair weights, each judged against ``tol``."""
    s = np.asarray(s, dtype=complex)
    trace_dev = trace_preservation_defect(s)
    herm_dev = hermiticity_defect(s)
    diag = pauli_pair_diagonal(s, max_qubits=max_qubits)
    max_imag = float(np.max(np.abs(diag.imag)))
    return PhysicalityReport(
        trace_preserving=trace_dev <= tol,
        hermiticity_preserving=herm_dev <= tol,
        diagonal_weights_real=max_imag <= tol,
        trace_defect=trace_dev,
        hermiticity_defect=herm_dev,
        max_diagonal_imag=max_imag,
        tol=tol,
    )
