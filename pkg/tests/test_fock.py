"""Fock-algebra tests against independent matrix oracles.

The oracle matrices here are constructed from scratch (plain kron products)
so they do not share code with the map-based operator implementation.
"""

import numpy as np
import pytest

from shadowsim import fock
from shadowsim.fock import (
    DispersionParams,
    DualFockState,
    ModeGrid,
    VacuumHandle,
    apply_b,
    apply_b_dagger,
    anticommutator_residual,
    commutator_residual,
    position_amplitudes,
    position_create,
    vacuum,
)


# --- independent oracle: truncated ladder matrices built locally -----------

def oracle_lowering(nmax):
    m = np.zeros((nmax + 1, nmax + 1), dtype=complex)
    for n in range(1, nmax + 1):
        m[n - 1, n] = np.sqrt(n)
    return m


def oracle_mode_matrix(grid, mode):
    if grid.statistics == "fermion":
        a = np.array([[0, 1], [0, 0]], dtype=complex)
        z = np.diag([1.0, -1.0]).astype(complex)
        mats = [z] * mode + [a] + [np.eye(2)] * (grid.mode_count - mode - 1)
    else:
        a = oracle_lowering(grid.max_occupation)
        eye = np.eye(grid.mode_dim)
        mats = [eye] * mode + [a] + [eye] * (grid.mode_count - mode - 1)
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def boson_grid(modes=2, nmax=3):
    return ModeGrid(tuple(float(k) for k in range(modes)), nmax, "boson")


def fermion_grid(modes=2):
    return ModeGrid(tuple(float(k) for k in range(modes)), 1, "fermion")


# --- construction and vacuum ------------------------------------------------

def test_vacuum_two_modes():
    state = vacuum(boson_grid(2, 3))
    assert state.amplitude((0, 0)) == 1 + 0j
    assert state.shadow[(0, 0)] == 1 + 0j
    assert not state.is_zero


def test_vacuum_fermion():
    state = vacuum(fermion_grid(1))
    assert state.amplitude((0,)) == 1 + 0j


def test_vacuum_norm():
    assert vacuum(boson_grid()).norm() == pytest.approx(1.0, abs=1e-15)


def test_grid_validation():
    with pytest.raises(ValueError):
        ModeGrid((1.0, 1.0), 2, "boson")  # repeated momentum
    with pytest.raises(ValueError):
        ModeGrid((2.0, 1.0), 2, "boson")  # not increasing
    with pytest.raises(ValueError):
        ModeGrid((0.0,), 2, "fermion")  # fermions force nmax = 1
    with pytest.raises(ValueError):
        ModeGrid((), 2, "boson")


def test_mirror_divergence_rejected():
    grid = boson_grid()
    with pytest.raises(ValueError):
        DualFockState(grid, {(0, 0): 1 + 0j}, {(0, 0): 0.5 + 0j})


# --- ladder operators --------------------------------------------------------

def test_create_from_vacuum():
    state = apply_b_dagger(vacuum(boson_grid()), 0)
    assert state.amplitude((1, 0)) == pytest.approx(1.0)
    assert state.shadow[(1, 0)] == pytest.approx(1.0)


def test_sqrt_two_ladder_factor():
    one = apply_b_dagger(vacuum(boson_grid()), 0)
    two = apply_b_dagger(one, 0)
    assert two.amplitude((2, 0)) == pytest.approx(np.sqrt(2.0), abs=1e-15)


def test_fermion_double_creation_is_zero():
    occupied = apply_b_dagger(vacuum(fermion_grid()), 0)
    again = apply_b_dagger(occupied, 0)
    assert again.is_zero


def test_annihilate_vacuum_keeps_handle():
    grid = boson_grid()
    handle = VacuumHandle(grid)
    state = vacuum(grid)
    for _ in range(3):
        state = apply_b(state, 0)
        assert handle.is_valid
    assert state.is_zero


def test_annihilate_single():
    one = apply_b_dagger(vacuum(boson_grid()), 0)
    back = apply_b(one, 0)
    assert back.amplitude((0, 0)) == pytest.approx(1.0)


def test_annihilate_two_sqrt2():
    # oracle: explicit truncated matrix acting on the |2> basis vector
    grid = boson_grid(1, 4)
    a = oracle_mode_matrix(grid, 0)
    vec = np.zeros(5, dtype=complex)
    vec[2] = 1.0
    expected = a @ vec
    state = DualFockState(grid, {(2,): 1 + 0j}, {(2,): 1 + 0j})
    out = apply_b(state, 0)
    assert out.amplitude((1,)) == pytest.approx(expected[1])
    assert expected[1] == pytest.approx(np.sqrt(2.0))


def test_mode_out_of_range():
    state = vacuum(boson_grid(2, 3))
    with pytest.raises(IndexError):
        apply_b_dagger(state, 2)
    with pytest.raises(IndexError):
        apply_b(state, -1)


def random_dual_state(grid, rng):
    occs = grid.basis_occupations()
    amps = rng.standard_normal(len(occs)) + 1j * rng.standard_normal(len(occs))
    amps /= np.linalg.norm(amps)
    prim = {occ: complex(a) for occ, a in zip(occs, amps)}
    return DualFockState(grid, prim, dict(prim))


@pytest.mark.parametrize("statistics", ["boson", "fermion"])
def test_ladder_ops_match_matrix_oracle(statistics):
    rng = np.random.default_rng(11)
    grid = boson_grid(2, 3) if statistics == "boson" else fermion_grid(3)
    for mode in range(grid.mode_count):
        a = oracle_mode_matrix(grid, mode)
        for _ in range(20):
            state = random_dual_state(grid, rng)
            vec = state.to_vector()
            np.testing.assert_allclose(
                apply_b(state, mode).to_vector(), a @ vec, atol=1e-13)
            np.testing.assert_allclose(
                apply_b_dagger(state, mode).to_vector(), a.conj().T @ vec,
                atol=1e-13)


def test_mirror_invariant_random_sequences():
    rng = np.random.default_rng(5)
    for grid in (boson_grid(3, 3), fermion_grid(3)):
        state = vacuum(grid)
        for _ in range(200):
            mode = int(rng.integers(grid.mode_count))
            op = apply_b_dagger if rng.random() < 0.6 else apply_b
            nxt = op(state, mode)
            if nxt.is_zero:
                state = vacuum(grid)
                continue
            state = nxt.normalized() if rng.random() < 0.3 else nxt
            assert state.mirror_deviation() < 1e-12


def test_number_operator_per_component():
    # b-dagger then b scales each surviving component by (n+1)
    grid = boson_grid(2, 4)
    rng = np.random.default_rng(3)
    a = oracle_mode_matrix(grid, 1)
    nop = a @ a.conj().T
    state = random_dual_state(grid, rng)
    result = apply_b(apply_b_dagger(state, 1), 1)
    np.testing.assert_allclose(result.to_vector(), nop @ state.to_vector(),
                               atol=1e-13)
    for occ, amp in state.primary.items():
        if occ[1] <= grid.max_occupation - 1:
            assert result.amplitude(occ) == pytest.approx(
                (occ[1] + 1) * amp, abs=1e-13)


def test_ladder_consistency_expectations():
    grid = boson_grid(1, 5)
    for n in range(grid.max_occupation):
        state = DualFockState(grid, {(n,): 1 + 0j}, {(n,): 1 + 0j})
        up = apply_b_dagger(state, 0)
        down = apply_b(state, 0)
        assert up.norm() ** 2 == pytest.approx(n + 1, abs=1e-12)
        expected_n = 0.0 if down.is_zero else down.norm() ** 2
        assert expected_n == pytest.approx(n, abs=1e-12)


# --- commutation / anticommutation ------------------------------------------

def test_commutator_distinct_modes():
    grid = boson_grid(2, 3)
    assert commutator_residual(grid, 0, 1) < 1e-12


def test_commutator_same_mode_guarded():
    grid = boson_grid(2, 4)
    assert commutator_residual(grid, 0, 0) < 1e-12


def test_commutator_annihilation_pairs():
    grid = boson_grid(3, 3)
    for i in range(3):
        for j in range(3):
            assert commutator_residual(grid, i, j, annihilation_pair=True) < 1e-12


def test_commutator_rejects_fermions():
    with pytest.raises(ValueError):
        commutator_residual(fermion_grid(), 0, 0)


def test_anticommutator_same_mode():
    assert anticommutator_residual(fermion_grid(1), 0, 0) < 1e-12


def test_anticommutator_distinct_modes_jordan_wigner():
    # oracle: explicit 4x4 matrices with the alternating-sign convention
    grid = fermion_grid(2)
    b0 = oracle_mode_matrix(grid, 0)
    b1 = oracle_mode_matrix(grid, 1)
    anti = b0 @ b1.conj().T + b1.conj().T @ b0
    assert np.max(np.abs(anti)) < 1e-12
    assert anticommutator_residual(grid, 0, 1) < 1e-12


def test_anticommutator_annihilation_pairs():
    grid = fermion_grid(3)
    for i in range(3):
        for j in range(3):
            assert anticommutator_residual(grid, i, j, annihilation_pair=True) < 1e-12


def test_anticommutator_rejects_bosons():
    with pytest.raises(ValueError):
        anticommutator_residual(boson_grid(), 0, 0)


# --- position-state creation --------------------------------------------------

def test_position_create_uniform_at_origin():
    grid = ModeGrid((-1.0, 0.0, 1.0), 2, "boson")
    state = position_create(grid, 0.0, 0.0)
    for k in range(3):
        occ = tuple(1 if m == k else 0 for m in range(3))
        assert state.amplitude(occ) == pytest.approx(1 / np.sqrt(3), abs=1e-14)
    assert state.mirror_deviation() < 1e-12


def test_position_overlap_kernel():
    # oracle: direct summation of exp(i p (x - x')) over the grid
    momenta = (-2.0, -1.0, 0.0, 1.0, 2.0)
    grid = ModeGrid(momenta, 2, "boson")
    x, xp = 0.7, -0.3
    a = position_create(grid, x, 0.0)
    b = position_create(grid, xp, 0.0)
    overlap = sum(np.conj(b.amplitude(k)) * a.amplitude(k)
                  for k in a.primary)
    kernel = sum(np.exp(1j * p * (x - xp)) for p in momenta) / len(momenta)
    assert overlap == pytest.approx(kernel, abs=1e-12)


def test_relativistic_weight_at_rest():
    grid = ModeGrid((0.0,), 2, "boson")
    params = DispersionParams(mass=2.0, c=3.0)
    amps = position_amplitudes(grid, 0.0, 0.0, params, relativistic=True)
    expected = 1.0 / np.sqrt(2.0 * params.mass * params.c ** 2)
    assert abs(amps[0]) == pytest.approx(expected, abs=1e-14)


def test_position_create_rejects_fermions():
    with pytest.raises(ValueError):
        position_create(fermion_grid(), 0.0, 0.0)


def test_dispersion_params_validation():
    with pytest.raises(ValueError):
        DispersionParams(mass=-1.0)
    with pytest.raises(ValueError):
        DispersionParams(c=0.0)
