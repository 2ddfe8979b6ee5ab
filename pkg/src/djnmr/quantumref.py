"""Dense state-vector reference for the unitary formulation of the problem.

Serves as the cross-check oracle for the complex-bit route: it runs the
standard single-query quantum circuit (Hadamard all, f-controlled-NOT,
Hadamard all) and exposes an executable form of the argument that no unitary
can embed the one-dimensional classical black box.

Qubit ordering: qubit 0 is the leftmost factor of a product state and the
most significant bit of a basis index; the work (target) qubit is always the
last one.  The embedding checker fixes its codomain to the full
2^(n+1)-dimensional space the oracle acts on.

Measurement results are reported as exact probability distributions, never
sampled; the circuit is deterministic wherever the promise holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .complexbit import TruthTable, Verdict
from .errors import DimensionMismatch, NotConstant

_NORM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the computational basis of n qubits."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        size = amps.size
        if size < 2 or size & (size - 1) or amps.ndim != 1:
            raise ValueError(f"amplitude array must be 1-d with power-of-two length, got shape {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state vector is not normalised: |amps| = {norm}")

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def basis_state(n_qubits: int, index: int | str) -> StateVector:
    """The computational basis state |index>, index given as int or bit string."""
    if isinstance(index, str):
        if len(index) != n_qubits:
            raise ValueError(f"bit string {index!r} does not address {n_qubits} qubits")
        index = int(index, 2)
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def hadamard_all(state: StateVector) -> StateVector:
    """Apply the single-qubit Hadamard to every qubit; an involution."""
    n = state.n_qubits
    amps = state.amplitudes.copy()
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for q in range(n):
        view = amps.reshape(2**q, 2, 2 ** (n - q - 1))
        upper = view[:, 0, :].copy()
        lower = view[:, 1, :].copy()
        view[:, 0, :] = (upper + lower) * inv_sqrt2
        view[:, 1, :] = (upper - lower) * inv_sqrt2
    return StateVector(amps)


@dataclass(frozen=True, eq=False)
class UnitaryBlackBox:
    """The f-controlled-NOT |x>|y> -> |x>|y xor f(x)> as a basis permutation."""

    truth_table: TruthTable
    permutation: np.ndarray

    @property
    def n(self) -> int:
        return self.truth_table.n

    @property
    def n_qubits(self) -> int:
        return self.n + 1


def make_unitary_blackbox(f: TruthTable) -> UnitaryBlackBox:
    index = np.arange(2 ** (f.n + 1))
    x = index >> 1
    y = index & 1
    fx = np.asarray(f.values)[x]
    permutation = (x << 1) | (y ^ fx)
    return UnitaryBlackBox(f, permutation)


def apply_unitary_blackbox(u: UnitaryBlackBox, state: StateVector) -> StateVector:
    """Permute amplitudes according to the oracle action."""
    if state.n_qubits != u.n_qubits:
        raise DimensionMismatch(
            f"oracle acts on {u.n_qubits} qubits, state has {state.n_qubits}"
        )
    amps = np.empty_like(state.amplitudes)
    amps[u.permutation] = state.amplitudes
    return StateVector(amps)


@dataclass(frozen=True, eq=False)
class QuantumDJResult:
    """Exact measurement statistics of the input register after the circuit."""

    verdict: Verdict
    distribution: np.ndarray
    outcome: int
    outcome_bits: tuple[int, ...]
    support: tuple[int, ...]
    all_zeros_probability: float

    @property
    def is_point_mass(self) -> bool:
        return len(self.support) == 1


def run_quantum_dj(f: TruthTable, support_tol: float = 1e-12) -> QuantumDJResult:
    """Run the single-query circuit on |0...0>|1> and measure the input register.

    The all-zeros outcome has probability one exactly when f is constant and
    probability zero otherwise, so the verdict is deterministic.  For n=2 the
    supported outcome bits are (f(00) xor f(10), f(10) xor f(11)); the global
    sign (-1)^f(00) never reaches the distribution, which is why this route
    cannot name the hidden function.
    """
    f.require_promise()
    n = f.n
    state = basis_state(n + 1, 1)  # |0...0>|1>
    state = hadamard_all(state)
    state = apply_unitary_blackbox(make_unitary_blackbox(f), state)
    state = hadamard_all(state)
    probs = np.abs(state.amplitudes.reshape(2**n, 2)) ** 2
    distribution = probs.sum(axis=1)
    outcome = int(np.argmax(distribution))
    support = tuple(int(k) for k in np.nonzero(distribution > support_tol)[0])
    p_zero = float(distribution[0])
    verdict = Verdict.CONSTANT if p_zero > 0.5 else Verdict.BALANCED
    bits = tuple((outcome >> (n - 1 - q)) & 1 for q in range(n))
    return QuantumDJResult(verdict, distribution, outcome, bits, support, p_zero)


def phase_indistinguishability(f: TruthTable, tol: float = 1e-12) -> bool:
    """True when f and its complement 1 xor f produce identical statistics.

    The complement only changes the final state by a global sign, so the two
    oracles cannot be told apart by this circuit even though they compute
    different functions.
    """
    d1 = run_quantum_dj(f).distribution
    d2 = run_quantum_dj(f.complement()).distribution
    return bool(np.max(np.abs(d1 - d2)) <= tol)


Embedding = Callable[[str], np.ndarray]


@dataclass(frozen=True, eq=False)
class EmbeddingWitness:
    """Certificate that no unitary realises e(f(x)) = U e(x) for constant f.

    ``x1`` and ``x2`` are orthogonal embedded inputs whose images under f
    coincide; a structure-preserving U would have to map orthogonal vectors
    to one vector, contradicting inner-product preservation.  The Gram
    matrices of inputs and images make the failure explicit.
    """

    x1: str
    x2: str
    input_overlap: complex
    images_equal: bool
    input_gram: np.ndarray
    image_gram: np.ndarray
    grams_differ: bool

    @property
    def valid(self) -> bool:
        return (
            self.x1 != self.x2
            and abs(self.input_overlap) <= 1e-12
            and self.images_equal
            and self.grams_differ
        )


def _standard_embedding(dim: int) -> Embedding:
    def embed(bits: str) -> np.ndarray:
        vec = np.zeros(dim, dtype=complex)
        vec[int(bits, 2)] = 1.0
        return vec

    return embed


def _gram(vectors: Sequence[np.ndarray]) -> np.ndarray:
    stacked = np.column_stack(vectors)
    return stacked.conj().T @ stacked


def check_embedding_impossible(
    f: TruthTable, embedding: Embedding | None = None
) -> EmbeddingWitness:
    """Produce an EmbeddingWitness for a constant f.

    ``embedding`` maps bit strings (inputs of length n, outputs of length 1)
    into the 2^(n+1)-dimensional oracle space; the default uses computational
    basis states.  Inputs must embed orthonormally.
    """
    if not f.is_constant:
        raise NotConstant(f"{f.label} is not constant; the argument needs a non-bijective f")
    n = f.n
    embed = embedding or _standard_embedding(2 ** (n + 1))
    inputs = [format(k, f"0{n}b") for k in range(2**n)]
    in_vecs = [embed(s) for s in inputs]
    img_vecs = [embed(str(f(s))) for s in inputs]
    input_gram = _gram(in_vecs)
    if not np.allclose(input_gram, np.eye(len(inputs)), atol=1e-12):
        raise ValueError("embedding does not map inputs to orthonormal vectors")
    image_gram = _gram(img_vecs)
    x1, x2 = inputs[0], inputs[1]
    overlap = complex(np.vdot(in_vecs[0], in_vecs[1]))
    images_equal = bool(np.allclose(img_vecs[0], img_vecs[1], atol=1e-12))
    grams_differ = not np.allclose(input_gram, image_gram, atol=1e-12)
    return EmbeddingWitness(x1, x2, overlap, images_equal, input_gram, image_gram, grams_differ)
