import numpy as np
import pytest

from ccdiscord import InvalidParameters, InvalidState, from_bloch, purity_norm_sq
from ccdiscord.presets import (
    bell_diagonal,
    cc_diag,
    example1,
    example2,
    example3,
    h_state,
    make,
    preset_names,
    pure,
    random_state,
    werner,
)

from conftest import h_state_matrix


def test_all_named_presets_are_valid_states():
    cases = [
        h_state(0.3, 1.2),
        bell_diagonal(0.4, -0.2, 0.3),
        werner(0.9),
        pure([1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)]),
        cc_diag([0.4, 0.3, 0.2, 0.1]),
        example1(),
        example2(),
        example3(),
        random_state(4, seed=11),
    ]
    for b in cases:
        from_bloch(b, validate=True)


def test_h_state_matches_matrix_construction():
    from ccdiscord import to_bloch

    for p in (0.0, 0.25, 0.6, 1.0):
        for phi in (0.0, 0.8, np.pi):
            assert h_state(p, phi).allclose(
                to_bloch(h_state_matrix(p, phi)), atol=1e-13
            )


def test_h_state_bloch_components():
    p, phi = 0.4, 0.9
    b = h_state(p, phi)
    assert np.allclose(b.x, [0, 0, 1 - p])
    assert np.allclose(b.y, [0, 0, 1 - p])
    expected_t = np.array(
        [
            [p * np.cos(phi), -p * np.sin(phi), 0],
            [p * np.sin(phi), p * np.cos(phi), 0],
            [0, 0, 1 - 2 * p],
        ]
    )
    assert np.allclose(b.T, expected_t, atol=1e-14)


def test_werner_is_bell_diagonal():
    assert werner(0.5).allclose(bell_diagonal(-0.5, -0.5, -0.5), atol=1e-15)


def test_bell_diagonal_outside_tetrahedron_rejected():
    with pytest.raises(InvalidParameters):
        bell_diagonal(1.0, 1.0, 1.0)


def test_pure_requires_normalization():
    with pytest.raises(InvalidParameters):
        pure([1.0, 1.0, 0.0, 0.0])


def test_pure_state_has_unit_purity():
    b = pure([0.6, 0.0, 0.8j, 0.0])
    assert purity_norm_sq(b) == pytest.approx(1.0, abs=1e-13)


def test_cc_diag_probabilities_checked():
    with pytest.raises(InvalidParameters):
        cc_diag([0.5, 0.5, 0.5, -0.5])


def test_random_state_deterministic_and_rank():
    a = random_state(4, seed=3)
    assert a.allclose(random_state(4, seed=3), atol=0)
    assert not a.allclose(random_state(4, seed=4), atol=1e-6)
    r1 = random_state(1, seed=7)
    assert purity_norm_sq(r1) == pytest.approx(1.0, abs=1e-12)
    rho = from_bloch(random_state(2, seed=9))
    assert np.linalg.matrix_rank(rho, tol=1e-10) == 2


def test_make_parses_parameters():
    assert make("hstate:p=0.6,phi=0.9").allclose(h_state(0.6, 0.9), atol=1e-15)
    assert make("werner:p=0.3").allclose(werner(0.3), atol=1e-15)
    assert make("example1").allclose(example1(), atol=0)
    got = make("pure:a0=0.6,a1=0,a2=0.8j,a3=0")
    assert got.allclose(pure([0.6, 0, 0.8j, 0]), atol=1e-15)


def test_make_rejects_unknown():
    with pytest.raises(InvalidParameters):
        make("nosuch:p=1")
    with pytest.raises(InvalidParameters):
        make("hstate:p=0.5,bogus=1")
    with pytest.raises(InvalidParameters):
        make("hstate:p=nonsense")


def test_h_state_parameter_range():
    with pytest.raises(InvalidParameters):
        h_state(1.2)
    with pytest.raises(InvalidParameters):
        h_state(-0.1)


def test_preset_names_cover_registry():
    names = preset_names()
    for expected in ("hstate", "werner", "bell_diagonal", "example1", "example2",
                     "example3", "pure", "cc_diag"):
        assert expected in names
