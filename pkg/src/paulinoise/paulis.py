"""Pauli-string labels, their dense matrices, and the normalized inner product.

Conventions used consistently across the package:

* An ``n``-qubit Pauli string is an ``n``-character label over the alphabet
  ``IXYZ`` with qubit 0 written leftmost.
* Labels are ordered by their base-4 index (``I=0, X=1, Y=2, Z=3``) with
  qubit 0 as the most significant digit, so ``pauli_basis(2)`` starts with
  ``II, IX, IY, IZ`` and ends with ``ZZ``.
* Basis matrices carry no global phase. ``Y`` is materialized directly as
  ``[[0, -1j], [1j, 0]]``, which makes every basis element self-adjoint and
  involutory.
* ``frobenius_inner(a, b)`` is ``Tr(a^dag b)`` divided by a dimension factor,
  the shared matrix dimension by default. Under that normalization the Pauli
  strings form an orthonormal family and the expansion coefficients of a
  unitary ``U`` are ``u_P = frobenius_inner(pauli_matrix(P), U)``.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import DimensionError, PhysicalityError, SizeLimitError

PAULI_ALPHABET = "IXYZ"

#: Largest qubit count accepted by label enumeration and dense materialization.
DEFAULT_MAX_QUBITS = 6

#: Default tolerance for unitarity checks on numerical inputs.
DEFAULT_UNITARITY_TOL = 1e-9

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def validate_label(label: str) -> str:
    """Return ``label`` unchanged if it is a well-formed Pauli string label."""
    if not isinstance(label, str) or len(label) == 0:
        raise ValueError("Pauli label must be a non-empty string")
    bad = set(label) - set(PAULI_ALPHABET)
    if bad:
        raise ValueError(
            f"Pauli label {label!r} contains invalid characters {sorted(bad)}; "
            f"the allowed alphabet is {PAULI_ALPHABET!r}"
        )
    return label


def label_to_index(label: str) -> int:
    """Base-4 index of ``label``, qubit 0 (leftmost character) most significant."""
    validate_label(label)
    index = 0
    for ch in label:
        index = index * 4 + PAULI_ALPHABET.index(ch)
    return index


def index_to_label(index: int, n: int) -> str:
    """Inverse of :func:`label_to_index` for ``n``-qubit labels."""
    if n < 1:
        raise ValueError("qubit count must be at least 1")
    if not 0 <= index < 4**n:
        raise ValueError(f"index {index} is out of range for {n} qubit(s)")
    chars = []
    for _ in range(n):
        index, digit = divmod(index, 4)
        chars.append(PAULI_ALPHABET[digit])
    return "".join(reversed(chars))


def pauli_basis(n: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> list[str]:
    """All ``4**n`` Pauli string labels on ``n`` qubits, in index order.

    The first label is the identity string ``"I" * n``. Qubit counts above
    ``max_qubits`` are rejected to keep dense enumeration affordable.
    """
    if not 1 <= n <= max_qubits:
        raise SizeLimitError(
            f"qubit count {n} is outside the supported range [1, {max_qubits}]"
            " (raise max_qubits to enumerate larger systems)"
        )
    return [index_to_label(i, n) for i in range(4**n)]


def pauli_matrix(label: str) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix for the Pauli string ``label``.

    Kronecker product of single-qubit matrices with qubit 0 (the leftmost
    character) as the first factor.
    """
    validate_label(label)
    out = _SINGLE[label[0]]
    for ch in label[1:]:
        out = np.kron(out, _SINGLE[ch])
    return out


@functools.lru_cache(maxsize=8)
def _basis_matrices_cached(n: int) -> np.ndarray:
    base = np.stack([_SINGLE[ch] for ch in PAULI_ALPHABET])
    stack = base
    for _ in range(n - 1):
        size = stack.shape[0]
        dim = stack.shape[1]
        stack = np.einsum("pij,qkl->pqikjl", stack, base).reshape(
            size * 4, dim * 2, dim * 2
        )
    stack.setflags(write=False)
    return stack


def basis_matrices(n: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """Read-only stack of all ``n``-qubit Pauli matrices, shape
    ``(4**n, 2**n, 2**n)``, in the same order as :func:`pauli_basis`.

    Cached per qubit count; the n = 5 stack occupies about 17 MB.
    """
    if not 1 <= n <= max_qubits:
        raise SizeLimitError(
            f"qubit count {n} is outside the supported range [1, {max_qubits}]"
            " (raise max_qubits to enumerate larger systems)"
        )
    return _basis_matrices_cached(n)


def qubit_count(dim: int) -> int:
    """Qubit count for a Hilbert space dimension, which must be a power of 2."""
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise DimensionError(
            f"dimension {dim} is not a power of 2; for embedded computational"
            " subspaces project out leakage first"
        )
    return n


def frobenius_inner(a: np.ndarray, b: np.ndarray, norm_dim: int | None = None) -> complex:
    """Normalized Frobenius inner product ``Tr(a^dag b) / norm_dim``.

    ``norm_dim`` defaults to the shared matrix dimension, which makes Pauli
    strings orthonormal for operators and Pauli-string pairs orthonormal for
    superoperators. Callers working on a computational block embedded in a
    larger space pass the block dimension explicitly.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise DimensionError(
            f"operands must be square matrices of equal shape, got {a.shape} and {b.shape}"
        )
    if norm_dim is None:
        norm_dim = a.shape[0]
    if norm_dim < 1:
        raise ValueError("norm_dim must be a positive integer")
    return complex(np.sum(a.conj() * b) / norm_dim)


def unitarity_defect(u: np.ndarray) -> float:
    """Largest entrywise deviation of ``u^dag u`` from the identity."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {u.shape}")
    gram = u.conj().T @ u
    return float(np.max(np.abs(gram - np.eye(u.shape[0]))))


def require_unitary(
    u: np.ndarray,
    tol: float = DEFAULT_UNITARITY_TOL,
    name: str = "operator",
) -> np.ndarray:
    """Return ``u`` as a complex array after checking unitarity within ``tol``."""
    u = np.asarray(u, dtype=complex)
    defect = unitarity_defect(u)
    if not np.isfinite(defect) or defect > tol:
        raise PhysicalityError(
            f"{name} is not unitary within tolerance {tol:g} (defect {defect:.3e})"
        )
    return u
