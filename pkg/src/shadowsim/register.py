"""Multi-qubit dual registers: a primary amplitude vector plus its shadow.

Basis convention: qubit 0 is the leftmost ket slot, so basis index
``i = sum_k bit_k * 2**(n-1-k)`` with bit 0 = up, bit 1 = down.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

MIRROR_TOL = 1e-12
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10


class BellKind(Enum):
    PHI_PLUS = "phi-plus"
    PHI_MINUS = "phi-minus"
    PSI_PLUS = "psi-plus"
    PSI_MINUS = "psi-minus"

    def amplitudes(self):
        s = 1.0 / np.sqrt(2.0)
        table = {
            BellKind.PHI_PLUS: [s, 0, 0, s],
            BellKind.PHI_MINUS: [s, 0, 0, -s],
            BellKind.PSI_PLUS: [0, s, s, 0],
            BellKind.PSI_MINUS: [0, s, -s, 0],
        }
        return np.array(table[self], dtype=complex)


@dataclass(frozen=True)
class DualRegister:
    """Immutable n-qubit state with mirrored primary and shadow amplitudes."""

    qubit_count: int
    primary: np.ndarray
    shadow: np.ndarray

    def __post_init__(self):
        prim = np.array(self.primary, dtype=complex)
        shad = np.array(self.shadow, dtype=complex)
        if self.qubit_count < 1:
            raise ValueError("qubit_count must be positive")
        if prim.shape != (2 ** self.qubit_count,) or shad.shape != prim.shape:
            raise ValueError("amplitude vector length must be 2**qubit_count")
        if abs(np.linalg.norm(prim) - 1.0) > NORM_TOL:
            raise ValueError("primary register is not normalized")
        if np.max(np.abs(prim - shad)) > MIRROR_TOL:
            raise ValueError("shadow register diverged from primary")
        prim.setflags(write=False)
        shad.setflags(write=False)
        object.__setattr__(self, "primary", prim)
        object.__setattr__(self, "shadow", shad)

    def mirror_deviation(self):
        return float(np.max(np.abs(self.primary - self.shadow)))

    def basis_labels(self):
        return ["".join("ud"[int(b)] for b in f"{i:0{self.qubit_count}b}")
                for i in range(2 ** self.qubit_count)]


def from_amplitudes(coeffs, qubit_count):
    """Build a dual register from raw coefficients, normalizing the vector."""
    vec = np.asarray(coeffs, dtype=complex)
    if vec.shape != (2 ** qubit_count,):
        raise ValueError(
            f"expected {2 ** qubit_count} coefficients for {qubit_count} qubits, "
            f"got {vec.shape}"
        )
    n = np.linalg.norm(vec)
    if n == 0.0:
        raise ValueError("cannot build a register from the zero vector")
    vec = vec / n
    return DualRegister(qubit_count, vec, vec.copy())


def bell_pair(kind: BellKind):
    """Two-qubit register in the named Bell state, shadow mirrored."""
    vec = kind.amplitudes()
    return DualRegister(2, vec, vec.copy())


def tensor(a: DualRegister, b: DualRegister):
    """Kronecker composition, a's qubits leftmost."""
    prim = np.kron(a.primary, b.primary)
    shad = np.kron(a.shadow, b.shadow)
    return DualRegister(a.qubit_count + b.qubit_count, prim, shad)


def _embed_apply(vec, n, targets, u):
    t = len(targets)
    a = vec.reshape([2] * n)
    a = np.moveaxis(a, targets, range(t))
    a = (u @ a.reshape(2 ** t, -1)).reshape([2] * n)
    a = np.moveaxis(a, range(t), targets)
    return a.reshape(-1)


def apply_unitary(state: DualRegister, targets, u):
    """Apply the same unitary to both registers on the listed target qubits."""
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise ValueError("target qubits must be distinct")
    if any(q < 0 or q >= state.qubit_count for q in targets):
        raise IndexError("target qubit out of range")
    u = np.asarray(u, dtype=complex)
    d = 2 ** len(targets)
    if u.shape != (d, d):
        raise ValueError(f"unitary must be {d}x{d} for {len(targets)} targets")
    if np.max(np.abs(u.conj().T @ u - np.eye(d))) > UNITARY_TOL:
        raise ValueError("matrix is not unitary")
    prim = _embed_apply(state.primary, state.qubit_count, targets, u)
    shad = _embed_apply(state.shadow, state.qubit_count, targets, u)
    return DualRegister(state.qubit_count, prim, shad)


def fidelity(a: DualRegister, b: DualRegister):
    """|<a|b>|^2 on the primary registers; insensitive to global phase."""
    if a.qubit_count != b.qubit_count:
        raise ValueError("registers differ in qubit count")
    return float(abs(np.vdot(a.primary, b.primary)) ** 2)


# common single-qubit gates
PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
