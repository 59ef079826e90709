import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magicbroadcast.errors import (
    InvalidDimensionError,
    InvalidUnitaryError,
    UnsupportedError,
)
from magicbroadcast.measures import (
    magic_power,
    magic_report,
    rom_from_bloch,
    rom_lp_batch,
    rom_lp_oracle,
    rom_qubit,
    sre2_extended,
    sre2_monotone_gap,
    sre2_pure,
    sre2_pure_batch,
    sre2_qudit,
    witness_d,
)
from magicbroadcast.stabilizers import (
    CNOT,
    HADAMARD,
    clifford_group_1q,
    stabilizer_states,
)
from magicbroadcast.states import (
    BlochVector,
    DensityMatrix,
    PureState,
    density_from_bloch,
    h_state,
    haar_random_pure,
    t_state,
    tensor,
)

ball_coords = st.floats(-0.57, 0.57, allow_nan=False)


def test_named_state_robustness():
    assert rom_qubit(t_state().density()) == pytest.approx(
        math.sqrt(3.0), abs=1e-12
    )
    assert rom_qubit(h_state().density()) == pytest.approx(
        math.sqrt(2.0), abs=1e-12
    )
    assert rom_qubit(PureState([1.0, 0.0]).density()) == 1.0


def test_witness_lemma_relation_on_named_states():
    # R = 2D - 1 for a single qubit
    for psi in (t_state(), h_state(), PureState([1.0, 0.0])):
        rho = psi.density()
        assert 2.0 * witness_d(rho, 1) - 1.0 == pytest.approx(
            rom_qubit(rho), abs=1e-12
        )


@given(ball_coords, ball_coords, ball_coords)
def test_lp_oracle_matches_closed_form(x, y, z):
    rho = density_from_bloch(BlochVector(x, y, z))
    assert rom_lp_oracle(rho) == pytest.approx(rom_qubit(rho), abs=1e-8)


def test_lp_oracle_batch_on_extremal_states():
    bloch = np.array(
        [[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0] / np.sqrt(3.0)]
    )
    assert np.allclose(
        rom_lp_batch(bloch), [1.0, 1.0, math.sqrt(3.0)], atol=1e-10
    )


def test_sre2_values():
    assert sre2_pure(t_state(), 1) == pytest.approx(
        math.log2(1.5), abs=1e-12
    )
    assert sre2_pure(PureState([1.0, 0.0]), 1) == pytest.approx(0.0, abs=1e-14)
    # maximally mixed state carries no magic
    assert sre2_extended(DensityMatrix(np.eye(2) / 2.0), 1) == pytest.approx(
        0.0, abs=1e-14
    )


def test_sre2_extended_coincides_with_pure_value():
    rng = np.random.default_rng(2)
    for _ in range(50):
        psi = haar_random_pure(2, rng)
        assert sre2_extended(psi.density(), 1) == pytest.approx(
            sre2_pure(psi, 1), abs=1e-10
        )


def test_sre2_batch_matches_scalar():
    rng = np.random.default_rng(3)
    amps = np.array([haar_random_pure(4, rng).amps for _ in range(20)])
    batch = sre2_pure_batch(amps, 2)
    for row, val in zip(amps, batch):
        assert sre2_pure(PureState(row), 2) == pytest.approx(val, abs=1e-12)


def test_sre2_additivity_spot_check():
    psi, phi = t_state(), h_state()
    joint = sre2_pure(tensor(psi, phi), 2)
    assert joint == pytest.approx(
        sre2_pure(psi, 1) + sre2_pure(phi, 1), abs=1e-12
    )


def test_sre2_clifford_invariance_spot_check():
    rng = np.random.default_rng(4)
    psi = haar_random_pure(2, rng)
    base = sre2_pure(psi, 1)
    for u in clifford_group_1q():
        rotated = PureState(u @ psi.amps)
        assert sre2_pure(rotated, 1) == pytest.approx(base, abs=1e-12)


def test_sre2_qudit_zero_on_basis_states_and_positive_otherwise():
    for d in (3, 5, 7):
        basis = np.zeros(d)
        basis[0] = 1.0
        assert sre2_qudit(PureState(basis), d) == pytest.approx(0.0, abs=1e-12)
        generic = PureState(np.arange(1.0, d + 1) / np.linalg.norm(
            np.arange(1.0, d + 1)
        ))
        assert sre2_qudit(generic, d) > 0.01


def test_sre2_qudit_rejects_bad_dimension():
    with pytest.raises(UnsupportedError):
        sre2_qudit(PureState([1.0, 0.0, 0.0, 0.0]), 4)
    with pytest.raises(InvalidDimensionError):
        sre2_qudit(PureState([1.0, 0.0]), 3)


def test_magic_power_zero_on_clifford_and_positive_on_t_gate():
    assert magic_power(CNOT) <= 1e-10
    t_gate = np.diag([1.0, np.exp(1j * math.pi / 4.0)])
    assert magic_power(np.kron(t_gate, np.eye(2))) > 0.1


def test_magic_power_rejects_non_unitary():
    with pytest.raises(InvalidUnitaryError):
        magic_power(np.ones((4, 4)))
    with pytest.raises(InvalidUnitaryError):
        magic_power(np.eye(2))


def test_magic_report_fields_and_json():
    report = magic_report(t_state())
    assert report.n == 1
    assert report.rom == pytest.approx(math.sqrt(3.0), abs=1e-12)
    assert report.sre2 == pytest.approx(math.log2(1.5), abs=1e-12)
    payload = report.to_json()
    assert payload["schema"] == 1
    assert set(payload) == {"schema", "n", "d", "rom", "sre2", "extended_sre2"}


def test_magic_report_mixed_two_qubit_state():
    rng = np.random.default_rng(5)
    psi = haar_random_pure(4, rng)
    report = magic_report(psi.density())
    assert report.n == 2
    assert report.rom is None and report.sre2 is None
    assert report.extended_sre2 >= 0.0


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_monotone_gap_never_positive(seed):
    psi = haar_random_pure(4, seed)
    assert sre2_monotone_gap(psi) <= 1e-9


def test_stabilizer_states_have_zero_sre2():
    for n in (1, 2):
        vals = sre2_pure_batch(stabilizer_states(n).amplitudes(), n)
        assert np.max(np.abs(vals)) <= 1e-12


def test_rom_from_bloch_floors_at_one():
    assert rom_from_bloch(BlochVector(0.1, 0.1, 0.1)) == 1.0
