import numpy as np
import pytest
import hypothesis as hyp
import hypothesis.strategies as st

from zenoptics import polarization as pol

angles = st.floats(min_value=-2 * np.pi, max_value=2 * np.pi, allow_nan=False)
amps = st.floats(min_value=-10, max_value=10, allow_nan=False)


def phase_invariant_distance(u, v):
    """min over global phase of |u - e^{i phi} v|."""
    inner = np.vdot(v, u)
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return np.linalg.norm(u - phase * v)


# ---- rotator --------------------------------------------------------------


def test_rotator_zero_is_identity():
    np.testing.assert_array_equal(pol.rotator_matrix(0.0), np.eye(2))


def test_rotator_quarter_turn_sends_y_to_minus_x():
    out = pol.apply(pol.rotator_matrix(np.pi / 2), [0, 1])
    np.testing.assert_allclose(out, [-1, 0], atol=1e-16)


def test_rotator_eighth_turn_malus():
    out = pol.apply(pol.rotator_matrix(np.pi / 4), [0, 1])
    assert out[1].real == pytest.approx(np.cos(np.pi / 4), abs=1e-16)
    assert pol.intensity_along(out, pol.Y_AXIS) == pytest.approx(0.5, abs=1e-15)


def test_rotator_is_special_orthogonal():
    r = pol.rotator_matrix(0.73)
    np.testing.assert_allclose(r.T @ r, np.eye(2), atol=1e-15)
    assert np.linalg.det(r).real == pytest.approx(1.0, abs=1e-15)
    assert np.all(r.imag == 0)


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_rotator_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        pol.rotator_matrix(bad)


# ---- polarizer ------------------------------------------------------------


def test_y_polarizer():
    np.testing.assert_allclose(pol.polarizer_matrix(np.pi / 2), [[0, 0], [0, 1]], atol=1e-16)


def test_crossed_polarizer_blocks():
    out = pol.apply(pol.polarizer_matrix(0.0), [0, 1])
    np.testing.assert_array_equal(out, [0, 0])
    assert pol.intensity(out) == 0


def test_polarizer_idempotent():
    p = pol.polarizer_matrix(0.3)
    np.testing.assert_allclose(p @ p, p, atol=1e-15, rtol=0)


def test_polarizer_is_hermitian_projection():
    p = pol.polarizer_matrix(1.1)
    np.testing.assert_allclose(p, p.conj().T, atol=0)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(p)), [0, 1], atol=1e-15)
    assert np.trace(p).real == pytest.approx(1.0, abs=1e-15)


def test_polarizer_extinction_leaks_blocked_axis():
    p = pol.polarizer_matrix(0.0, extinction=1e-4)
    assert pol.intensity(pol.apply(p, [0, 1])) == pytest.approx(1e-4, rel=1e-12)
    assert pol.intensity(pol.apply(p, [1, 0])) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("ext", [-0.1, 1.0, 2.0])
def test_polarizer_rejects_bad_extinction(ext):
    with pytest.raises(ValueError):
        pol.polarizer_matrix(0.0, ext)


def test_polarizer_rejects_non_finite():
    with pytest.raises(ValueError):
        pol.polarizer_matrix(np.nan)


# ---- waveplate ------------------------------------------------------------


def test_zero_retardance_is_identity():
    np.testing.assert_allclose(pol.waveplate_matrix(0.0, 0.7), np.eye(2), atol=1e-15)


def test_half_wave_at_45_swaps_axes():
    out = pol.apply(pol.waveplate_matrix(np.pi, np.pi / 4), [1, 0])
    assert phase_invariant_distance(out, np.array([0, 1], dtype=complex)) < 1e-15


def test_quarter_wave_makes_circular():
    v = pol.linear_polarized(1.0, np.pi / 4)
    out = pol.apply(pol.waveplate_matrix(np.pi / 2, 0.0), v)
    assert abs(out[0]) == pytest.approx(abs(out[1]), abs=1e-15)
    rel_phase = np.angle(out[1] / out[0])
    assert abs(rel_phase) == pytest.approx(np.pi / 2, abs=1e-14)
    s = pol.stokes_from_jones(out)
    assert abs(s[3]) == pytest.approx(s[0], abs=1e-15)


def test_waveplate_rejects_non_finite():
    with pytest.raises(ValueError):
        pol.waveplate_matrix(np.inf, 0.0)


@hyp.given(axis=angles, phi=angles)
def test_half_wave_reflects_linear_angle(axis, phi):
    out = pol.apply(pol.waveplate_matrix(np.pi, axis), pol.linear_polarized(1.0, phi))
    target = pol.linear_polarized(1.0, 2 * axis - phi)
    assert phase_invariant_distance(out, target) < 1e-12


@hyp.given(retardance=angles, axis=angles)
def test_waveplate_unitary(retardance, axis):
    w = pol.waveplate_matrix(retardance, axis)
    np.testing.assert_allclose(w.conj().T @ w, np.eye(2), atol=1e-12)


# ---- apply / compose / intensity -------------------------------------------


def test_apply_identity():
    v = pol.jones_vector(0.3 + 0.1j, -2.0)
    np.testing.assert_array_equal(pol.apply(np.eye(2), v), v)


def test_apply_projection():
    np.testing.assert_array_equal(pol.apply(np.diag([0, 1]), [3, 4]), [0, 4])


def test_compose_then_apply_matches_sequential():
    v = pol.jones_vector(0.6, 0.8j)
    a, b = pol.rotator_matrix(0.2), pol.rotator_matrix(0.5)
    seq = pol.apply(b, pol.apply(a, v))
    np.testing.assert_allclose(pol.apply(pol.compose([a, b]), v), seq, atol=1e-14)
    np.testing.assert_allclose(pol.apply(pol.rotator_matrix(0.7), v), seq, atol=1e-14)


def test_compose_order_first_element_acts_first():
    # polarizer then rotator differs from rotator then polarizer
    p, r = pol.polarizer_matrix(0.0), pol.rotator_matrix(np.pi / 2)
    np.testing.assert_allclose(pol.compose([p, r]), r @ p)
    assert not np.allclose(pol.compose([p, r]), pol.compose([r, p]))


def test_compose_identities():
    np.testing.assert_array_equal(pol.compose([np.eye(2)] * 3), np.eye(2))


def test_compose_quarter_turns():
    r = pol.rotator_matrix(np.pi / 4)
    np.testing.assert_allclose(pol.compose([r, r]), pol.rotator_matrix(np.pi / 2), atol=1e-15)


def test_compose_rotate_then_measure_is_half():
    I0 = 3.0
    m = pol.compose([pol.rotator_matrix(np.pi / 4), pol.polarizer_matrix(pol.Y_AXIS)])
    assert pol.intensity(pol.apply(m, pol.linear_polarized(I0, pol.Y_AXIS))) == pytest.approx(I0 / 2, rel=1e-15)


def test_compose_empty_raises():
    with pytest.raises(ValueError):
        pol.compose([])


@pytest.mark.parametrize(
    "v, expected",
    [((0, 0), 0.0), ((0, np.sqrt(2.5)), 2.5), ((1, 1), 2.0), ((1j, -1), 2.0)],
)
def test_intensity(v, expected):
    assert pol.intensity(pol.jones_vector(*v)) == pytest.approx(expected, rel=1e-15)


def test_intensity_along_axis():
    v = pol.linear_polarized(2.0, 0.4)
    assert pol.intensity_along(v, 0.4) == pytest.approx(2.0, rel=1e-15)
    assert pol.intensity_along(v, 0.4 + np.pi / 2) == pytest.approx(0.0, abs=1e-15)


def test_linear_polarized_rejects_negative_intensity():
    with pytest.raises(ValueError):
        pol.linear_polarized(-1.0, 0.0)


# ---- Stokes / Mueller -----------------------------------------------------


def test_identity_lifts_to_identity():
    np.testing.assert_allclose(pol.mueller_from_jones(np.eye(2)), np.eye(4), atol=1e-15)


def test_y_polarizer_mueller_on_unpolarized():
    m = pol.mueller_from_jones(pol.polarizer_matrix(np.pi / 2))
    np.testing.assert_allclose(m @ [1, 0, 0, 0], [0.5, -0.5, 0, 0], atol=1e-15)


def test_rotator_mueller_rotates_stokes_by_twice_angle():
    m = pol.mueller_from_jones(pol.rotator_matrix(np.pi / 2))
    np.testing.assert_allclose(m @ [1, 1, 0, 0], [1, -1, 0, 0], atol=1e-15)
    a = 0.3
    m = pol.mueller_from_jones(pol.rotator_matrix(a))
    expected = np.eye(4)
    expected[1:3, 1:3] = [[np.cos(2 * a), -np.sin(2 * a)], [np.sin(2 * a), np.cos(2 * a)]]
    np.testing.assert_allclose(m, expected, atol=1e-15)


def test_stokes_sign_convention():
    np.testing.assert_allclose(pol.stokes_from_jones([1, 0]), [1, 1, 0, 0])
    np.testing.assert_allclose(pol.stokes_from_jones([0, 1]), [1, -1, 0, 0])
    np.testing.assert_allclose(pol.stokes_from_jones(pol.linear_polarized(1, np.pi / 4)), [1, 0, 1, 0], atol=1e-15)


@pytest.mark.parametrize("p", [0.0, 0.5, 1.0])
def test_depolarizer(p):
    m = pol.depolarizer_mueller(p)
    s = np.array([2.0, 0.6, -0.8, 1.0])
    out = m @ s
    assert out[0] == 2.0
    np.testing.assert_allclose(out[1:], p * s[1:])
    assert pol.degree_of_polarization(out) == pytest.approx(p * pol.degree_of_polarization(s), abs=1e-15)


@pytest.mark.parametrize("p", [-0.01, 1.01, np.nan])
def test_depolarizer_rejects_out_of_range(p):
    with pytest.raises(ValueError):
        pol.depolarizer_mueller(p)


# ---- properties -----------------------------------------------------------


@hyp.given(a=angles, b=angles)
def test_rotation_group(a, b):
    np.testing.assert_allclose(
        pol.rotator_matrix(a) @ pol.rotator_matrix(b), pol.rotator_matrix(a + b), atol=1e-13, rtol=0
    )


@hyp.given(theta=angles)
def test_projection_property(theta):
    p = pol.polarizer_matrix(theta)
    np.testing.assert_allclose(p @ p, p, atol=1e-14, rtol=0)
    assert np.trace(p).real == pytest.approx(1.0, abs=1e-14)


@hyp.given(phi=angles, theta=angles, I0=st.floats(min_value=0, max_value=100))
def test_malus_law(phi, theta, I0):
    out = pol.apply(pol.polarizer_matrix(theta), pol.linear_polarized(I0, phi))
    assert pol.intensity(out) == pytest.approx(I0 * np.cos(theta - phi) ** 2, abs=1e-12 * max(I0, 1))


@hyp.given(ex_re=amps, ex_im=amps, ey_re=amps, ey_im=amps, a=angles, r=angles, axis=angles)
def test_energy(ex_re, ex_im, ey_re, ey_im, a, r, axis):
    v = pol.jones_vector(ex_re + 1j * ex_im, ey_re + 1j * ey_im)
    i_in = pol.intensity(v)
    tol = 1e-12 * max(i_in, 1)
    assert pol.intensity(pol.apply(pol.rotator_matrix(a), v)) == pytest.approx(i_in, abs=tol)
    assert pol.intensity(pol.apply(pol.waveplate_matrix(r, axis), v)) == pytest.approx(i_in, abs=tol)
    assert pol.intensity(pol.apply(pol.polarizer_matrix(axis), v)) <= i_in + tol


@hyp.given(ex_re=amps, ex_im=amps, ey_re=amps, ey_im=amps)
def test_fully_polarized_stokes_on_boundary(ex_re, ex_im, ey_re, ey_im):
    s = pol.stokes_from_jones([ex_re + 1j * ex_im, ey_re + 1j * ey_im])
    assert s[0] >= 0
    assert s[0] ** 2 == pytest.approx(s[1] ** 2 + s[2] ** 2 + s[3] ** 2, rel=1e-12, abs=1e-300)


@hyp.settings(max_examples=200)
@hyp.given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_jones_mueller_agree_on_random_chains(seed):
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(rng.integers(1, 7)):
        kind = rng.integers(3)
        if kind == 0:
            mats.append(pol.rotator_matrix(rng.uniform(-np.pi, np.pi)))
        elif kind == 1:
            mats.append(pol.polarizer_matrix(rng.uniform(-np.pi, np.pi), rng.uniform(0, 0.5)))
        else:
            mats.append(pol.waveplate_matrix(rng.uniform(-np.pi, np.pi), rng.uniform(-np.pi, np.pi)))
    v = pol.jones_vector(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
    via_jones = pol.stokes_from_jones(pol.apply(pol.compose(mats), v))
    via_mueller = pol.compose([pol.mueller_from_jones(m) for m in mats]) @ pol.stokes_from_jones(v)
    np.testing.assert_allclose(via_mueller, via_jones, rtol=0, atol=1e-9 * max(via_jones[0], 1e-300) + 1e-15)
