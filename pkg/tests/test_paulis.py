"""Label bookkeeping, dense Pauli matrices, and the normalized inner product."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from paulinoise import (
    DimensionError,
    PhysicalityError,
    SizeLimitError,
    basis_matrices,
    frobenius_inner,
    index_to_label,
    label_to_index,
    pauli_basis,
    pauli_matrix,
)
from paulinoise.paulis import qubit_count, require_unitary, unitarity_defect


def test_basis_order_one_qubit():
    assert pauli_basis(1) == ["I", "X", "Y", "Z"]


def test_basis_order_two_qubits():
    labels = pauli_basis(2)
    assert len(labels) == 16
    assert labels[:4] == ["II", "IX", "IY", "IZ"]
    assert labels[4] == "XI"
    assert labels[-1] == "ZZ"


def test_basis_order_three_qubits():
    labels = pauli_basis(3)
    assert len(labels) == 64
    assert labels[0] == "III"
    assert labels[1] == "IIX"
    assert labels[4] == "IXI"
    assert labels[16] == "XII"
    assert labels[-1] == "ZZZ"


def test_label_index_round_trip_exhaustive():
    for n in range(1, 4):
        for i in range(4**n):
            assert label_to_index(index_to_label(i, n)) == i


@given(st.text(alphabet="IXYZ", min_size=1, max_size=5))
def test_label_round_trip_property(label):
    assert index_to_label(label_to_index(label), len(label)) == label


def test_invalid_labels_rejected():
    for bad in ["", "A", "IXQ", "ixz", "I X"]:
        with pytest.raises(ValueError):
            label_to_index(bad)
    with pytest.raises(ValueError):
        index_to_label(16, 2)
    with pytest.raises(ValueError):
        index_to_label(0, 0)


def test_basis_qubit_cap():
    with pytest.raises(SizeLimitError):
        pauli_basis(7)
    with pytest.raises(SizeLimitError):
        pauli_basis(0)
    assert len(pauli_basis(7, max_qubits=7)) == 4**7


def test_single_qubit_matrices():
    np.testing.assert_array_equal(pauli_matrix("I"), np.eye(2))
    np.testing.assert_array_equal(pauli_matrix("X"), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(pauli_matrix("Y"), [[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(pauli_matrix("Z"), [[1, 0], [0, -1]])


def test_xz_matrix_hand_expansion():
    expected = np.array(
        [
            [0, 0, 1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
            [0, -1, 0, 0],
        ],
        dtype=complex,
    )
    np.testing.assert_array_equal(pauli_matrix("XZ"), expected)


def test_qubit_zero_is_most_significant_factor():
    np.testing.assert_array_equal(
        pauli_matrix("XI"), np.kron(pauli_matrix("X"), np.eye(2))
    )
    np.testing.assert_array_equal(
        pauli_matrix("IX"), np.kron(np.eye(2), pauli_matrix("X"))
    )


def test_hermitian_and_involutory():
    for n in (1, 2, 3):
        eye = np.eye(2**n)
        for label in pauli_basis(n):
            p = pauli_matrix(label)
            np.testing.assert_array_equal(p, p.conj().T)
            np.testing.assert_array_equal(p @ p, eye)


def test_basis_matrices_stack_matches_single_materialization():
    for n in (1, 2, 3):
        stack = basis_matrices(n)
        labels = pauli_basis(n)
        assert stack.shape == (4**n, 2**n, 2**n)
        for i in (0, 1, 4**n // 2, 4**n - 1):
            np.testing.assert_array_equal(stack[i], pauli_matrix(labels[i]))


def test_basis_matrices_read_only():
    stack = basis_matrices(1)
    with pytest.raises(ValueError):
        stack[0, 0, 0] = 2.0


def test_orthonormality_all_pairs():
    for n in (1, 2, 3):
        stack = basis_matrices(n)
        gram = np.einsum("pij,qij->pq", stack.conj(), stack) / 2**n
        np.testing.assert_allclose(gram, np.eye(4**n), atol=1e-12)


def test_completeness_reconstructs_arbitrary_matrices():
    rng = np.random.default_rng(11)
    for n in (1, 2):
        dim = 2**n
        m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        rebuilt = np.zeros_like(m)
        for label in pauli_basis(n):
            p = pauli_matrix(label)
            rebuilt = rebuilt + frobenius_inner(p, m) * p
        np.testing.assert_allclose(rebuilt, m, atol=1e-12)


def test_frobenius_inner_examples():
    assert frobenius_inner(pauli_matrix("I"), pauli_matrix("I")) == 1.0
    assert frobenius_inner(pauli_matrix("X"), pauli_matrix("Z")) == 0.0
    eps = 0.1
    rotation = np.diag([np.exp(-1j * eps), np.exp(1j * eps)])
    np.testing.assert_allclose(
        frobenius_inner(pauli_matrix("Z"), rotation), -1j * np.sin(eps), atol=1e-15
    )


def test_frobenius_inner_conjugate_symmetry_and_norm_dim():
    rng = np.random.default_rng(5)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert frobenius_inner(a, b) == pytest.approx(np.conj(frobenius_inner(b, a)))
    assert frobenius_inner(a, b, norm_dim=2) == pytest.approx(2 * frobenius_inner(a, b))
    with pytest.raises(ValueError):
        frobenius_inner(a, b, norm_dim=0)


def test_frobenius_inner_shape_mismatch():
    with pytest.raises(DimensionError):
        frobenius_inner(np.eye(2), np.eye(4))
    with pytest.raises(DimensionError):
        frobenius_inner(np.zeros((2, 3)), np.zeros((2, 3)))


def test_qubit_count():
    assert qubit_count(2) == 1
    assert qubit_count(4) == 2
    assert qubit_count(8) == 3
    for bad in (0, 1, 3, 6, 12):
        with pytest.raises(DimensionError):
            qubit_count(bad)


def test_unitarity_checks():
    assert unitarity_defect(np.eye(3)) == 0.0
    require_unitary(np.eye(2))
    require_unitary(np.eye(2) * (1 + 1e-10))
    with pytest.raises(PhysicalityError):
        require_unitary(np.eye(2) * 1.001)
    with pytest.raises(PhysicalityError):
        require_unitary(np.array([[1.0, 0.0], [0.0, np.nan]]))
    with pytest.raises(DimensionError):
        require_unitary(np.zeros((2, 3)))
