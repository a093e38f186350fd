"""Projective single-qubit and Bell-basis measurement with atomic collapse.

Both registers of a DualRegister are projected in one step; no intermediate
state in which primary and shadow disagree is ever exposed.  Each record also
carries the conditional state of the unmeasured qubits read two ways: from the
shadow register (the nonlocality mechanism under test) and from the primary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .register import BellKind, DualRegister, HADAMARD

BASIS_TOL = 1e-10

# columns are the outcome states
Z_BASIS = np.eye(2, dtype=complex)
X_BASIS = HADAMARD.copy()


@dataclass(frozen=True)
class MeasurementRecord:
    outcome: Union[int, BellKind]
    probability: float
    post_state: DualRegister
    remote_state_via_shadow: Optional[DualRegister]
    remote_state_direct: Optional[DualRegister]


def _check_basis(basis):
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (2, 2):
        raise ValueError("basis must be a 2x2 matrix with outcome columns")
    if np.max(np.abs(basis.conj().T @ basis - np.eye(2))) > BASIS_TOL:
        raise ValueError("basis is not orthonormal")
    return basis


def _conditional(vec, n, qubit, outcome_vec):
    """Unnormalized amplitudes of the other qubits given the outcome."""
    a = vec.reshape([2] * n)
    return np.tensordot(outcome_vec.conj(), a, axes=([0], [qubit])).reshape(-1)


def _reinsert(cond, n, qubit, outcome_vec):
    a = np.tensordot(outcome_vec, cond.reshape([2] * (n - 1)), axes=0)
    return np.moveaxis(a, 0, qubit).reshape(-1)


def born_probabilities(state: DualRegister, qubit, basis=Z_BASIS):
    """Born-rule outcome probabilities for measuring one qubit in a basis."""
    if qubit < 0 or qubit >= state.qubit_count:
        raise IndexError(f"qubit {qubit} out of range")
    basis = _check_basis(basis)
    n = state.qubit_count
    probs = tuple(
        float(np.sum(np.abs(_conditional(state.primary, n, qubit, basis[:, k])) ** 2))
        for k in (0, 1)
    )
    return probs


def _remote_register(cond):
    norm = np.linalg.norm(cond)
    if cond.size < 2 or norm == 0.0:
        return None
    vec = cond / norm
    n = int(round(np.log2(cond.size)))
    return DualRegister(n, vec, vec.copy())


def projective_measure(state: DualRegister, qubit, basis=Z_BASIS, rng=None):
    """Measure one qubit; collapse primary and shadow atomically.

    Returns a MeasurementRecord whose remote states are the conditional
    amplitudes of the unmeasured qubits, extracted from the shadow register
    and, independently, from the primary register.
    """
    rng = rng or np.random.default_rng()
    basis = _check_basis(basis)
    p0, p1 = born_probabilities(state, qubit, basis)
    outcome = 0 if rng.random() < p0 else 1
    prob = (p0, p1)[outcome]
    n = state.qubit_count
    ovec = basis[:, outcome]

    cond_primary = _conditional(state.primary, n, qubit, ovec)
    cond_shadow = _conditional(state.shadow, n, qubit, ovec)
    scale = np.linalg.norm(cond_primary)
    post_primary = _reinsert(cond_primary, n, qubit, ovec) / scale
    post_shadow = _reinsert(cond_shadow, n, qubit, ovec) / scale
    post = DualRegister(n, post_primary, post_shadow)

    return MeasurementRecord(
        outcome=outcome,
        probability=prob,
        post_state=post,
        remote_state_via_shadow=_remote_register(cond_shadow),
        remote_state_direct=_remote_register(cond_primary),
    )


def _bell_conditional(vec, n, pair, kind):
    bell = kind.amplitudes().reshape(2, 2)
    a = vec.reshape([2] * n)
    return np.tensordot(bell.conj(), a, axes=([0, 1], list(pair))).reshape(-1)


def _bell_reinsert(cond, n, pair, kind):
    bell = kind.amplitudes().reshape(2, 2)
    rest = cond.reshape([2] * (n - 2)) if n > 2 else cond.reshape(())
    a = np.tensordot(bell, rest, axes=0)
    return np.moveaxis(a, [0, 1], list(pair)).reshape(-1)


def bell_outcome_probabilities(state: DualRegister, pair):
    """Born probabilities of the four Bell outcomes on the given qubit pair."""
    i, j = pair
    if i == j:
        raise ValueError("pair qubits must be distinct")
    if any(q < 0 or q >= state.qubit_count for q in pair):
        raise IndexError("pair qubit out of range")
    if state.qubit_count < 2:
        raise ValueError("Bell measurement needs at least two qubits")
    n = state.qubit_count
    return {
        kind: float(np.sum(np.abs(_bell_conditional(state.primary, n, pair, kind)) ** 2))
        for kind in BellKind
    }


def bell_measure(state: DualRegister, pair, rng=None):
    """Projective Bell-basis measurement on a qubit pair, atomic collapse."""
    rng = rng or np.random.default_rng()
    probs = bell_outcome_probabilities(state, pair)
    n = state.qubit_count
    u = rng.random()
    acc = 0.0
    outcome = list(BellKind)[-1]
    for kind in BellKind:
        acc += probs[kind]
        if u < acc:
            outcome = kind
            break

    cond_primary = _bell_conditional(state.primary, n, pair, outcome)
    cond_shadow = _bell_conditional(state.shadow, n, pair, outcome)
    scale = np.linalg.norm(cond_primary)
    post_primary = _bell_reinsert(cond_primary, n, pair, outcome) / scale
    post_shadow = _bell_reinsert(cond_shadow, n, pair, outcome) / scale
    post = DualRegister(n, post_primary, post_shadow)

    return MeasurementRecord(
        outcome=outcome,
        probability=probs[outcome],
        post_state=post,
        remote_state_via_shadow=_remote_register(cond_shadow),
        remote_state_direct=_remote_register(cond_primary),
    )
