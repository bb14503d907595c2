"""Extraction of the closest Pauli channel from an approximate gate.

Given an implemented gate (a unitary matrix, a superoperator, or a weighted
unitary ensemble) and its intended target, the workflow is:

1. Form the residual error: ``U_err = U @ U0^dag`` for unitaries, or
   ``S_err = S @ lift_unitary(U0^dag)`` for channels.
2. Expand the error in the Pauli-string basis. For a unitary the amplitudes
   ``u_P = <P, U_err>`` fully determine the channel coefficients through
   ``w_PQ = u_P u_Q^*``; for a superoperator the coefficients ``w_PQ`` are
   read out directly.
3. The diagonal weights ``w_PP``, clamped to probabilities, form the Pauli
   channel with the smallest Frobenius distance to the error channel. The
   off-diagonal weight that no Pauli channel can reproduce is reported as the
   squared coherent residual, and the squared distance to the source channel
   decomposes exactly as::

       distance^2 = sum_P |w_PP - e_P|^2 + sum_{P != Q} |w_PQ|^2

Systems with leakage outside the computational subspace are handled by
projecting the error onto the computational block first; the probability
that is lost to (and from) the leaked levels is reported separately as
``leakage_weight`` and no renormalization is applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .channels import (
    DEFAULT_PHYSICALITY_TOL,
    DEFAULT_SUPEROP_MAX_QUBITS,
    compose,
    hermiticity_defect,
    lift_unitary,
    pauli_pair_diagonal,
    superoperator_dims,
    trace_preservation_defect,
)
from .errors import DimensionError, PhysicalityError, SizeLimitError
from .paulis import (
    DEFAULT_MAX_QUBITS,
    DEFAULT_UNITARITY_TOL,
    basis_matrices,
    index_to_label,
    pauli_basis,
    pauli_matrix,
    qubit_count,
    require_unitary,
    validate_label,
)

#: Diagonal weights below this are a hard error, never silently clamped.
NEGATIVE_WEIGHT_TOL = 1e-6

#: Imaginary parts and sub-zero dips up to this size are clamped away.
DEFAULT_CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class ModelDiagnostics:
    """Secondary quantities recorded alongside the extracted probabilities.

    ``coherent_residual_sq`` and ``distance_to_source`` are ``None`` when the
    model was assembled from diagonal weights alone; they require the full
    coefficient matrix (or the unitary amplitudes) of the source channel.
    """

    identity_prob: float
    coherent_residual_sq: float | None = None
    distance_to_source: float | None = None


@dataclass(frozen=True)
class PauliNoiseModel:
    """Stochastic Pauli noise model: one probability per Pauli string.

    ``probabilities`` maps every ``n``-qubit label (index order) to a weight
    in ``[0, 1]``. ``leakage_weight`` is the probability mass outside the
    computational subspace; for physical inputs the probabilities and the
    leakage weight sum to 1.
    """

    n: int
    probabilities: dict[str, float]
    leakage_weight: float = 0.0
    diagnostics: ModelDiagnostics = field(
        default_factory=lambda: ModelDiagnostics(identity_prob=0.0)
    )

    def probability(self, label: str) -> float:
        return self.probabilities.get(validate_label(label), 0.0)

    def as_array(self) -> np.ndarray:
        """Probabilities as a length ``4**n`` vector in basis index order."""
        labels = pauli_basis(self.n, max_qubits=max(self.n, DEFAULT_MAX_QUBITS))
        return np.array([self.probabilities.get(lab, 0.0) for lab in labels])

    def total_weight(self) -> float:
        return float(sum(self.probabilities.values()) + self.leakage_weight)

    def validate(self, budget_tol: float = DEFAULT_PHYSICALITY_TOL) -> "PauliNoiseModel":
        """Check the probability budget; raises on violation, returns self."""
        for label, prob in self.probabilities.items():
            validate_label(label)
            if len(label) != self.n:
                raise PhysicalityError(
                    f"label {label!r} does not match the model qubit count {self.n}"
                )
            if not np.isfinite(prob) or prob < 0.0 or prob > 1.0:
                raise PhysicalityError(
                    f"probability for {label!r} is {prob!r}, outside [0, 1]"
                )
        if not 0.0 <= self.leakage_weight <= 1.0:
            raise PhysicalityError(
                f"leakage weight {self.leakage_weight!r} is outside [0, 1]"
            )
        total = self.total_weight()
        if abs(total - 1.0) > budget_tol:
            raise PhysicalityError(
                f"probabilities plus leakage sum to {total!r}, not 1 within {budget_tol:g}"
            )
        return self


@dataclass(frozen=True)
class LeakageSpec:
    """Embedding of the computational subspace in a larger physical space.

    ``comp_indices`` are the physical levels spanning the computational
    subspace, strictly increasing, and their count must be a power of 2.
    """

    full_dim: int
    comp_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "comp_indices", tuple(int(i) for i in self.comp_indices))
        if self.full_dim < 2:
            raise DimensionError("full dimension must be at least 2")
        if len(self.comp_indices) < 2:
            raise DimensionError("the computational subspace needs at least 2 levels")
        if any(b <= a for a, b in zip(self.comp_indices, self.comp_indices[1:])):
            raise DimensionError("computational indices must be strictly increasing")
        if self.comp_indices[0] < 0 or self.comp_indices[-1] >= self.full_dim:
            raise DimensionError(
                f"computational indices must lie in [0, {self.full_dim})"
            )
        qubit_count(len(self.comp_indices))

    @property
    def comp_dim(self) -> int:
        return len(self.comp_indices)

    @property
    def n(self) -> int:
        return qubit_count(self.comp_dim)


@dataclass(frozen=True)
class ExtractionResult:
    """A model plus the expansion data it was derived from.

    ``coefficients`` holds the Pauli amplitudes of the error unitary (unitary
    route only). ``weights`` holds the full coefficient matrix when it was
    materialized (channel route); for the unitary route it is reconstructed
    on demand by :meth:`weight_matrix`.
    """

    model: PauliNoiseModel
    coefficients: dict[str, complex] | None = None
    weights: np.ndarray | None = None

    def weight_matrix(self) -> np.ndarray:
        if self.weights is not None:
            return self.weights
        if self.coefficients is None:
            raise ValueError("no expansion data recorded for this result")
        n = self.model.n
        labels = pauli_basis(n, max_qubits=max(n, DEFAULT_MAX_QUBITS))
        vec = np.array([self.coefficients[lab] for lab in labels], dtype=complex)
        return np.outer(vec, vec.conj())


def error_unitary(
    u: np.ndarray,
    u0: np.ndarray,
    *,
    unitarity_tol: float = DEFAULT_UNITARITY_TOL,
    allow_nonunitary: bool = False,
) -> np.ndarray:
    """Residual rotation ``u @ u0^dag`` of an implementation against its target.

    Equals the identity exactly when the gate is perfect. Both inputs must be
    unitary within ``unitarity_tol`` unless ``allow_nonunitary`` is set.
    """
    u = np.asarray(u, dtype=complex)
    u0 = np.asarray(u0, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(f"expected a square implementation, got shape {u.shape}")
    if u0.shape != u.shape:
        raise DimensionError(
            f"implementation {u.shape} and target {u0.shape} dimensions differ"
        )
    if not allow_nonunitary:
        require_unitary(u, unitarity_tol, name="implementation")
        require_unitary(u0, unitarity_tol, name="target")
    return u @ u0.conj().T


def pauli_coefficients(
    u_err: np.ndarray,
    *,
    norm_dim: int | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> dict[str, complex]:
    """Pauli amplitudes ``u_P = Tr(P u_err) / norm_dim`` for every string ``P``.

    For a unitary on the full space the squared magnitudes sum to 1
    (completeness of the basis). ``norm_dim`` defaults to the matrix
    dimension; blocks embedded in larger spaces keep their own dimension.
    """
    m = np.asarray(u_err, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square operator, got shape {m.shape}")
    n = qubit_count(m.shape[0])
    labels = pauli_basis(n, max_qubits=max_qubits)
    if norm_dim is None:
        norm_dim = m.shape[0]
    if n <= 5:
        stack = basis_matrices(n, max_qubits=max(n, max_qubits))
        values = np.einsum("pij,ij->p", stack.conj(), m, optimize=True) / norm_dim
        return dict(zip(labels, (complex(v) for v in values)))
    # Past the cached-stack range, materialize one string at a time.
    return {
        lab: complex(np.sum(pauli_matrix(lab).conj() * m) / norm_dim) for lab in labels
    }


def pauli_coefficient_via_bitstrings(
    label: str,
    oracle: Callable[[np.ndarray], np.ndarray],
) -> complex:
    """Pauli amplitude of an error unitary available only as a state oracle.

    ``oracle`` maps a computational basis state (length ``2**n`` vector) to
    its image under the error unitary. The amplitude is recovered as the
    average over all bitstrings ``b`` of ``<b| P U_err |b>``: prepare ``|b>``,
    apply the unitary and then ``P``, and read the amplitude left on ``|b>``.
    Agrees with :func:`pauli_coefficients` exactly.
    """
    validate_label(label)
    n = len(label)
    dim = 2**n
    p = pauli_matrix(label)
    total = 0.0 + 0.0j
    state = np.zeros(dim, dtype=complex)
    for b in range(dim):
        state[b] = 1.0
        evolved = np.asarray(oracle(state.copy()), dtype=complex)
        if evolved.shape != (dim,):
            raise DimensionError(
                f"oracle returned shape {evolved.shape} for a length-{dim} state"
            )
        total += (p @ evolved)[b]
        state[b] = 0.0
    return complex(total / dim)


def error_channel(
    s: np.ndarray,
    u0: np.ndarray,
    *,
    unitarity_tol: float = DEFAULT_UNITARITY_TOL,
) -> np.ndarray:
    """Residual channel of an implementation ``s`` against a unitary target:
    ``s`` composed after conjugation by ``u0^dag``."""
    s = np.asarray(s, dtype=complex)
    _, d = superoperator_dims(s)
    u0 = np.asarray(u0, dtype=complex)
    if u0.shape != (d, d):
        raise DimensionError(
            f"target shape {u0.shape} does not match the channel dimension {d}"
        )
    require_unitary(u0, unitarity_tol, name="target")
    # u0 was just validated; its adjoint needs no second check.
    return compose(s, lift_unitary(u0.conj().T, allow_nonunitary=True))


def coefficient_matrix(
    s: np.ndarray,
    *,
    max_qubits: int = DEFAULT_SUPEROP_MAX_QUBITS,
) -> np.ndarray:
    """Full Pauli-pair coefficient matrix ``w[P, Q] = <kron(P, Q.conj()), s>``.

    Computed by regrouping the superoperator indices so that every inner
    product becomes a bilinear form over vectorized Pauli strings; the whole
    matrix is three dense matrix products instead of ``16**n`` traces. For the
    lift of a unitary with amplitudes ``u``, ``w = outer(u, u.conj())``.
    """
    s = np.asarray(s, dtype=complex)
    d2, d = superoperator_dims(s)
    n = qubit_count(d)
    if n > max_qubits:
        raise SizeLimitError(
            f"qubit count {n} exceeds the dense superoperator cap of {max_qubits}"
        )
    stack = basis_matrices(n, max_qubits=max(n, max_qubits))
    flat = stack.reshape(4**n, d2)
    # s[(i,k),(j,l)] reindexed to g[(i,j),(k,l)] so that
    # w[P,Q] = vec(P)^* g vec(Q) / D^2.
    g = s.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d2, d2)
    return (flat.conj() @ g @ flat.T) / d2


def diagonal_weights_via_fidelity(
    s: np.ndarray,
    *,
    imag_tol: float = DEFAULT_CLAMP_TOL,
    max_qubits: int = DEFAULT_SUPEROP_MAX_QUBITS,
) -> dict[str, float]:
    """Diagonal weights ``w_PP`` computed through the entanglement-fidelity
    reduction, one Pauli string at a time.

    Independent of :func:`coefficient_matrix` (no index regrouping, no full
    matrix); the two routes agree within numerical precision and the pair is
    kept distinct so they can cross-check each other.
    """
    s = np.asarray(s, dtype=complex)
    diag = pauli_pair_diagonal(s, max_qubits=max_qubits)
    max_imag = float(np.max(np.abs(diag.imag)))
    if max_imag > imag_tol:
        raise PhysicalityError(
            f"diagonal weights have imaginary parts up to {max_imag:.3e}, beyond "
            f"{imag_tol:g}; the channel is not hermiticity preserving"
        )
    _, d = superoperator_dims(s)
    n = qubit_count(d)
    labels = pauli_basis(n, max_qubits=max(n, max_qubits))
    return dict(zip(labels, diag.real.tolist()))


def coherent_residual(w: np.ndarray) -> float:
    """Total squared off-diagonal weight ``sum_{P != Q} |w_PQ|^2``.

    This is the part of a channel's distance to Pauli-channel space that no
    choice of probabilities can remove; it vanishes iff the coefficient
    matrix is diagonal.
    """
    w = np.asarray(w, dtype=complex)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DimensionError(f"expected a square coefficient matrix, got {w.shape}")
    total = float(np.sum(np.abs(w) ** 2))
    diag = float(np.sum(np.abs(np.diagonal(w)) ** 2))
    # Guard against cancellation returning a tiny negative zero.
    return max(total - diag, 0.0)


def _infer_qubits(count: int) -> int:
    n = max((int(count).bit_length() - 1) // 2, 1)
    if count < 4 or 4**n != count:
        raise DimensionError(f"weight count {count} is not 4**n for any n >= 1")
    return n


def _assemble_model(
    diag: np.ndarray,
    leakage_weight: float,
    residual_sq: float | None,
    clamp_tol: float,
) -> PauliNoiseModel:
    """Clamp diagonal weights into probabilities and attach diagnostics.

    Imaginary parts and negative dips within ``clamp_tol`` are removed;
    anything beyond that is a physicality error. Weights below
    ``-NEGATIVE_WEIGHT_TOL`` are never clamped silently.
    """
    diag = np.asarray(diag, dtype=complex).reshape(-1)
    n = _infer_qubits(diag.size)
    max_imag = float(np.max(np.abs(diag.imag)))
    if max_imag > clamp_tol:
        raise PhysicalityError(
            f"diagonal weights have imaginary parts up to {max_imag:.3e}, beyond "
            f"the clamping tolerance {clamp_tol:g}"
        )
    real = diag.real
    worst = int(np.argmin(real))
    if real[worst] < -NEGATIVE_WEIGHT_TOL:
        raise PhysicalityError(
            f"diagonal weight for {index_to_label(worst, n)} is {real[worst]:.6e}; "
            f"weights below -{NEGATIVE_WEIGHT_TOL:g} indicate a non-physical channel "
            "and are not clamped"
        )
    probs = np.clip(real, 0.0, 1.0)
    mismatch_sq = float(np.sum(np.abs(diag - probs) ** 2))
    labels = pauli_basis(n, max_qubits=max(n, DEFAULT_MAX_QUBITS))
    distance = (
        float(np.sqrt(residual_sq + mismatch_sq)) if residual_sq is not None else None
    )
    diagnostics = ModelDiagnostics(
        identity_prob=float(probs[0]),
        coherent_residual_sq=residual_sq,
        distance_to_source=distance,
    )
    return PauliNoiseModel(
        n=n,
        probabilities=dict(zip(labels, probs.tolist())),
        leakage_weight=float(leakage_weight),
        diagnostics=diagnostics,
    )


def nearest_pauli_channel(
    weights: np.ndarray | Mapping[str, complex],
    leakage_weight: float = 0.0,
    *,
    clamp_tol: float = DEFAULT_CLAMP_TOL,
) -> PauliNoiseModel:
    """Project channel coefficients onto the closest Pauli channel.

    ``weights`` is either the full coefficient matrix (square, ``4**n`` on a
    side) or just its diagonal (a length ``4**n`` vector, or a mapping from
    labels to weights). The model's probabilities are the real parts of the
    diagonal, clamped to ``[0, 1]`` within ``clamp_tol``; among all Pauli
    channels this choice minimizes the Frobenius distance to the source.

    With the full matrix available the diagnostics record the squared
    coherent residual and the exact distance to the source channel; with only
    the diagonal those fields are ``None``.
    """
    if isinstance(weights, Mapping):
        if not weights:
            raise DimensionError("weight mapping is empty")
        lengths = {len(validate_label(lab)) for lab in weights}
        if len(lengths) != 1:
            raise DimensionError("weight mapping mixes labels of different lengths")
        n = lengths.pop()
        labels = pauli_basis(n, max_qubits=max(n, DEFAULT_MAX_QUBITS))
        diag = np.array([complex(weights.get(lab, 0.0)) for lab in labels])
        return _assemble_model(diag, leakage_weight, None, clamp_tol)
    arr = np.asarray(weights, dtype=complex)
    if arr.ndim == 2:
        if arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"coefficient matrix must be square, got {arr.shape}")
        residual_sq = coherent_residual(arr)
        return _assemble_model(np.diagonal(arr), leakage_weight, residual_sq, clamp_tol)
    if arr.ndim == 1:
        return _assemble_model(arr, leakage_weight, None, clamp_tol)
    raise DimensionError(f"weights must be a matrix, vector, or mapping, got ndim={arr.ndim}")


def leakage_project(u_full: np.ndarray, spec: LeakageSpec) -> tuple[np.ndarray, float]:
    """Restrict a unitary on the full physical space to the computational block.

    Returns the (generally non-unitary) block and the leakage weight
    ``1 - Tr(B^dag B) / comp_dim``, the probability that the error moves
    amplitude out of the computational subspace. The block's Pauli amplitudes
    (taken with ``norm_dim = comp_dim``) then satisfy
    ``sum_P |u_P|^2 = 1 - leakage_weight``.
    """
    u = np.asarray(u_full, dtype=complex)
    if u.shape != (spec.full_dim, spec.full_dim):
        raise DimensionError(
            f"operator shape {u.shape} does not match the declared full dimension "
            f"{spec.full_dim}"
        )
    idx = np.array(spec.comp_indices)
    block = u[np.ix_(idx, idx)]
    retained = float(np.sum(np.abs(block) ** 2) / spec.comp_dim)
    leak = 1.0 - retained
    if not -1e-9 <= leak <= 1.0 + 1e-9:
        raise PhysicalityError(
            f"leakage weight {leak!r} is outside [0, 1]; the input is not a unitary "
            "on the full space"
        )
    return block, float(np.clip(leak, 0.0, 1.0))


def leakage_project_channel(
    s_full: np.ndarray,
    spec: LeakageSpec,
    *,
    imag_tol: float = DEFAULT_CLAMP_TOL,
) -> tuple[np.ndarray, float]:
    """Channel analogue of :func:`leakage_project`.

    Keeps the superoperator rows and columns whose bra and ket indices both
    lie in the computational subspace, and reports the Pauli weight lost in
    the restriction as the leakage weight ``1 - sum_P w_PP(block)``.
    """
    s = np.asarray(s_full, dtype=complex)
    if s.shape != (spec.full_dim**2, spec.full_dim**2):
        raise DimensionError(
            f"superoperator shape {s.shape} does not match the declared full "
            f"dimension {spec.full_dim}"
        )
    pairs = np.array([a * spec.full_dim + b for a in spec.comp_indices for b in spec.comp_indices])
    block = s[np.ix_(pairs, pairs)]
    d = spec.comp_dim
    # sum_P w_PP = (1/D) sum_{a,c} block[(c,c),(a,a)], a trace identity of the
    # Pauli-pair basis; no per-string loop needed.
    retained = complex(np.einsum("ccaa->", block.reshape(d, d, d, d))) / d
    if abs(retained.imag) > imag_tol:
        raise PhysicalityError(
            f"retained weight has imaginary part {retained.imag:.3e}; the channel "
            "is not hermiticity preserving"
        )
    leak = 1.0 - retained.real
    if not -1e-9 <= leak <= 1.0 + 1e-9:
        raise PhysicalityError(
            f"leakage weight {leak!r} is outside [0, 1]; the input is not a "
            "trace-preserving channel on the full space"
        )
    return block, float(np.clip(leak, 0.0, 1.0))


def extract_from_unitary(
    u: np.ndarray,
    target: np.ndarray | None = None,
    *,
    leakage: LeakageSpec | None = None,
    unitarity_tol: float = DEFAULT_UNITARITY_TOL,
    clamp_tol: float = DEFAULT_CLAMP_TOL,
    allow_nonunitary: bool = False,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> ExtractionResult:
    """Extract the closest Pauli channel to the error of a unitary gate.

    ``target`` defaults to the identity, in which case ``u`` itself is the
    error. With a ``leakage`` spec both matrices live on the full physical
    space and the error is projected onto the computational block before
    expansion. The coefficient matrix of a lifted unitary is the outer
    product of its amplitudes, so the model and its diagnostics are computed
    from the amplitudes alone; the full matrix is available from the result
    on demand.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(f"expected a square operator, got shape {u.shape}")
    if target is None:
        target = np.eye(u.shape[0], dtype=complex)
    err = error_unitary(
        u, target, unitarity_tol=unitarity_tol, allow_nonunitary=allow_nonunitary
    )
    leak = 0.0
    if leakage is not None:
        err, leak = leakage_project(err, leakage)
    n = qubit_count(err.shape[0])
    if n > max_qubits:
        raise SizeLimitError(
            f"qubit count {n} exceeds the configured cap of {max_qubits}"
        )
    coeffs = pauli_coefficients(err, max_qubits=max_qubits)
    labels = pauli_basis(n, max_qubits=max(n, max_qubits))
    amp = np.array([coeffs[lab] for lab in labels], dtype=complex)
    diag = np.abs(amp) ** 2
    total = float(diag.sum())
    # w = outer(amp, amp*): off-diagonal weight in closed form.
    residual_sq = max(total**2 - float(np.sum(diag**2)), 0.0)
    model = _assemble_model(diag.astype(complex), leak, residual_sq, clamp_tol)
    return ExtractionResult(model=model, coefficients=coeffs, weights=None)


def extract_from_channel(
    s: np.ndarray,
    target: np.ndarray | None = None,
    *,
    leakage: LeakageSpec | None = None,
    unitarity_tol: float = DEFAULT_UNITARITY_TOL,
    physicality_tol: float = DEFAULT_PHYSICALITY_TOL,
    clamp_tol: float = DEFAULT_CLAMP_TOL,
    allow_nonphysical: bool = False,
    max_qubits: int = DEFAULT_SUPEROP_MAX_QUBITS,
) -> ExtractionResult:
    """Extract the closest Pauli channel to the error of a channel ``s``.

    ``target`` (a unitary on the same space, identity when omitted) is
    inverted and composed into ``s`` first. Trace and hermiticity
    preservation of the error channel are enforced within
    ``physicality_tol`` unless ``allow_nonphysical`` is set; those checks
    run on the full space, before any leakage projection.
    """
    s = np.asarray(s, dtype=complex)
    err = s if target is None else error_channel(s, target, unitarity_tol=unitarity_tol)
    superoperator_dims(err)
    if not allow_nonphysical:
        trace_dev = trace_preservation_defect(err)
        if trace_dev > physicality_tol:
            raise PhysicalityError(
                f"channel is not trace preserving (defect {trace_dev:.3e}); pass "
                "allow_nonphysical to extract diagnostics anyway"
            )
        herm_dev = hermiticity_defect(err)
        if herm_dev > physicality_tol:
            raise PhysicalityError(
                f"channel is not hermiticity preserving (defect {herm_dev:.3e}); "
                "pass allow_nonphysical to extract diagnostics anyway"
            )
    leak = 0.0
    if leakage is not None:
        err, leak = leakage_project_channel(err, leakage, imag_tol=clamp_tol)
    w = coefficient_matrix(err, max_qubits=max_qubits)
    model = nearest_pauli_channel(w, leak, clamp_tol=clamp_tol)
    return ExtractionResult(model=model, coefficients=None, weights=w)
