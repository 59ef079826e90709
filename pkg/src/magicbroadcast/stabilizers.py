"""Pauli strings, Weyl operators, the single-qubit Clifford group, and the
pure stabilizer-state sets for one and two qubits.

Group tables are built once via the module-level caches and are read-only, so
they can be shared freely across threads.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import UnsupportedError
from .states import IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z, PureState

_PAULI_1Q = (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z)
_SUPPORTED_PRIMES = (2, 3, 5, 7)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
PHASE_S = np.array([[1, 0], [0, 1j]], dtype=complex)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


@dataclass(frozen=True, eq=False)
class PauliString:
    """n-qubit Pauli tensor product, encoded base-4 (I=0, X=1, Y=2, Z=3)."""

    n: int
    code: int

    def matrix(self) -> np.ndarray:
        mat = np.array([[1.0 + 0j]])
        code = self.code
        # most significant digit acts on the first qubit
        for site in reversed(range(self.n)):
            digit = (code >> (2 * site)) & 3
            mat = np.kron(mat, _PAULI_1Q[digit])
        return mat


@dataclass(frozen=True, eq=False)
class WeylOperator:
    """Generalized Pauli X^a Z^b on a prime-d qudit."""

    d: int
    a: int
    b: int

    def matrix(self) -> np.ndarray:
        d = self.d
        omega = np.exp(2j * math.pi / d)
        shift = np.roll(np.eye(d, dtype=complex), self.a, axis=0)
        clock = np.diag(omega ** (self.b * np.arange(d)))
        return shift @ clock


@dataclass(frozen=True, eq=False)
class StabilizerSet:
    """Pure stabilizer states of an n-qubit system."""

    n: int
    states: tuple

    def amplitudes(self) -> np.ndarray:
        """All states stacked as a (count, 2^n) array."""
        return np.array([s.amps for s in self.states])


def pauli_group(n: int):
    """The 4^n Pauli strings on n in {1, 2} qubits, identity first."""
    if n not in (1, 2):
        raise UnsupportedError(f"only 1 or 2 qubits are supported, got {n}")
    return [PauliString(n, code) for code in range(4 ** n)]


@functools.lru_cache(maxsize=None)
def pauli_matrices(n: int) -> np.ndarray:
    """All Pauli-string matrices stacked as a (4^n, 2^n, 2^n) array."""
    return np.array([p.matrix() for p in pauli_group(n)])


def weyl_group(d: int):
    """The d^2 Weyl operators X^a Z^b on a prime-d qudit (d <= 7)."""
    if d not in _SUPPORTED_PRIMES:
        raise UnsupportedError(f"d must be a prime <= 7, got {d}")
    return [WeylOperator(d, a, b) for a in range(d) for b in range(d)]


@functools.lru_cache(maxsize=None)
def weyl_matrices(d: int) -> np.ndarray:
    return np.array([w.matrix() for w in weyl_group(d)])


def _phase_canonical(amps: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first nonzero amplitude is real positive."""
    for a in amps:
        if abs(a) > 1e-9:
            return amps * (a.conjugate() / abs(a))
    raise ValueError("zero vector")


def _canonical_key(amps: np.ndarray) -> tuple:
    fixed = _phase_canonical(amps)
    return tuple(np.round(fixed, 9).view(float))


@functools.lru_cache(maxsize=None)
def clifford_group_1q() -> tuple:
    """The 24 single-qubit Clifford unitaries, up to global phase.

    Built as the closure of <H, S> with matrices deduplicated by canonical
    phase fixing of the flattened matrix.
    """
    generators = (HADAMARD, PHASE_S)
    found = {}
    frontier = [IDENTITY_2]
    found[_canonical_key(IDENTITY_2.ravel())] = IDENTITY_2
    while frontier:
        nxt = []
        for mat in frontier:
            for gen in generators:
                cand = gen @ mat
                key = _canonical_key(cand.ravel())
                if key not in found:
                    fixed = _phase_canonical(cand.ravel()).reshape(2, 2)
                    found[key] = fixed
                    nxt.append(fixed)
        frontier = nxt
    mats = tuple(found.values())
    for m in mats:
        m.setflags(write=False)
    return mats


@functools.lru_cache(maxsize=None)
def _two_qubit_clifford_generators() -> tuple:
    gens = [
        np.kron(HADAMARD, IDENTITY_2),
        np.kron(IDENTITY_2, HADAMARD),
        np.kron(PHASE_S, IDENTITY_2),
        np.kron(IDENTITY_2, PHASE_S),
        CNOT,
    ]
    return tuple(gens)


@functools.lru_cache(maxsize=None)
def stabilizer_states(n: int) -> StabilizerSet:
    """The pure stabilizer states: 6 for one qubit, 60 for two.

    Generated as the orbit of |0...0> under the Clifford generators,
    deduplicated up to global phase.
    """
    if n not in (1, 2):
        raise UnsupportedError(f"only 1 or 2 qubits are supported, got {n}")
    if n == 1:
        generators = (HADAMARD, PHASE_S)
        start = np.array([1, 0], dtype=complex)
    else:
        generators = _two_qubit_clifford_generators()
        start = np.zeros(4, dtype=complex)
        start[0] = 1.0
    found = {_canonical_key(start): _phase_canonical(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for vec in frontier:
            for gen in generators:
                cand = gen @ vec
                key = _canonical_key(cand)
                if key not in found:
                    fixed = _phase_canonical(cand)
                    found[key] = fixed
                    nxt.append(fixed)
        frontier = nxt
    states = tuple(PureState(v) for v in found.values())
    return StabilizerSet(n, states)
