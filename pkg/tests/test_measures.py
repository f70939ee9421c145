import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.linalg import eigvalsh

from xxdiscord.measures import (DISCORD, LINEAR, VON_NEUMANN, ConsistencyError,
                                Eigenstate, EntropyKind, PairState, Phase,
                                StateError, TwoQubitState, concurrence,
                                discord_at_angle, dominant_eigenstate, entropy,
                                geometric_discord_closed,
                                geometric_discord_piecewise,
                                info_deficit_at_angle, measure_at_angle,
                                minimize_measure,
                                pair_spectrum, post_measurement_spectrum)

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


@st.composite
def pair_states(draw):
    w = np.array([draw(st.floats(0.0, 1.0)) for _ in range(4)])
    assume(w.sum() > 1e-3)
    w = w / w.sum()
    return PairState(w[0], w[1], 0.5 * (w[2] + w[3]), 0.5 * (w[2] - w[3]))


gammas = st.floats(0.0, np.pi / 2)
kinds = st.sampled_from([VON_NEUMANN, LINEAR, EntropyKind(3.0), EntropyKind(0.5)])


# -- dense oracles ----------------------------------------------------------

def projectors(gamma, phi=0.0):
    n = (np.sin(gamma) * np.cos(phi), np.sin(gamma) * np.sin(phi), np.cos(gamma))
    nd = n[0] * SX + n[1] * SY + n[2] * SZ
    return [np.kron(I2, 0.5 * (I2 + k * nd)) for k in (1, -1)]


def dephased(rho, gamma, phi=0.0):
    return sum(P @ rho @ P for P in projectors(gamma, phi))


def dense_entropy(rho, kind):
    return float(entropy(np.clip(eigvalsh(rho), 0, None), kind))


def vn(rho):
    ev = np.clip(eigvalsh(rho), 1e-300, None)
    return float(-(ev * np.log2(ev)).sum())


def ptrace_a(rho):
    return np.einsum("ijik->jk", rho.reshape(2, 2, 2, 2))


def ptrace_b(rho):
    return np.einsum("ijkj->ik", rho.reshape(2, 2, 2, 2))


def discord_oracle(s, gamma, phi=0.0):
    # mutual information minus classical correlation for a measurement on B
    rho = s.matrix().astype(complex)
    cond = 0.0
    for P in projectors(gamma, phi):
        block = P @ rho @ P
        pk = np.trace(block).real
        if pk > 1e-15:
            cond += pk * vn(ptrace_b(block) / pk)
    return vn(ptrace_a(rho)) - vn(rho) + cond


# -- examples -------------------------------------------------------------------

def test_ground_state_neighbour_values():
    # B = 0, T = 0, L = 1 of the infinite chain: g0 = 1/2, g1 = 1/pi
    g1 = 1 / np.pi
    s = PairState(0.25 - g1 ** 2, 0.25 - g1 ** 2, 0.25 + g1 ** 2, g1)
    r2 = minimize_measure(s, LINEAR)
    alpha_t = 2 / np.pi ** 2
    assert r2.value == pytest.approx(2 * (g1 ** 2 + alpha_t ** 2), abs=1e-12)
    assert r2.value == pytest.approx(0.2847702253, abs=1e-9)
    assert r2.phase is Phase.PERPENDICULAR
    assert minimize_measure(s, VON_NEUMANN).value == pytest.approx(0.3162395419, abs=1e-9)
    assert minimize_measure(s, DISCORD).value == pytest.approx(0.3162395419, abs=1e-9)
    assert concurrence(s) == pytest.approx(2 * (g1 - (0.25 - g1 ** 2)), abs=1e-14)
    assert dominant_eigenstate(s) is Eigenstate.BELL_PLUS


def test_bell_state_is_one_everywhere():
    s = PairState.bell()
    for m in (VON_NEUMANN, LINEAR, EntropyKind(3.0), DISCORD):
        r = minimize_measure(s, m)
        assert r.value == pytest.approx(1.0, abs=1e-12)
        # every angle is optimal; the tie goes to the parallel label
        assert r.phase is Phase.PARALLEL
    assert concurrence(s) == pytest.approx(1.0)


def test_aligned_state_has_nothing():
    s = PairState(0.0, 1.0, 0.0, 0.0)
    for m in (VON_NEUMANN, LINEAR, DISCORD):
        assert minimize_measure(s, m).value == 0.0
    assert dominant_eigenstate(s) is Eigenstate.ALIGNED_DOWN


def test_invalid_states_rejected():
    with pytest.raises(StateError):
        PairState(0.5, 0.5, 0.1, 0.2)  # p - alpha < 0
    with pytest.raises(StateError):
        PairState(0.5, 0.6, 0.0, 0.0)  # trace
    with pytest.raises(StateError):
        entropy([0.5, 0.6, -0.1])
    with pytest.raises(ValueError):
        EntropyKind(0.0)


def test_round_off_negativity_is_clamped():
    s = PairState(0.5 + 5e-13, 0.5 - 5e-13, 0.0, 0.0)
    assert min(pair_spectrum(s)) >= 0.0
    assert sum(pair_spectrum(s)) == pytest.approx(1.0, abs=1e-15)
    t = PairState(0.0, 0.5, 0.25, 0.25 + 5e-13)
    assert min(pair_spectrum(t)) == 0.0


def test_closed_form_rejects_asymmetric_input():
    t = TwoQubitState(np.zeros(3), np.zeros(3), np.zeros((3, 3)))
    object.__setattr__(t, "bloch_b", np.array([np.nan, 0, 0]))
    with pytest.raises(ConsistencyError):
        geometric_discord_closed(t)


def test_w_state_example():
    s = PairState.w_state(40)
    assert minimize_measure(s, LINEAR).value == pytest.approx(4 / 1600, abs=1e-12)
    assert minimize_measure(s, VON_NEUMANN).value == pytest.approx(2 / 40, abs=1e-12)
    assert concurrence(s) ** 2 == pytest.approx(4 / 1600, abs=1e-12)


def test_precision_of_nearly_pure_state():
    # I2 = 4 alpha^2 below alpha_t must survive p- ~ 1
    a = 1e-9
    s = PairState(1e-12, 1 - 2e-9 - 1e-12, 1e-9, a)
    assert minimize_measure(s, LINEAR).value == pytest.approx(
        geometric_discord_piecewise(s), rel=1e-6)


# -- properties -------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(pair_states(), gammas)
def test_trace_preserved(s, g):
    ev = post_measurement_spectrum(s, g)
    assert min(ev) >= 0.0
    assert sum(ev) == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=150, deadline=None)
@given(pair_states(), gammas, st.floats(0.0, 2 * np.pi))
def test_dephasing_oracle(s, g, phi):
    rho = s.matrix().astype(complex)
    ref = np.sort(eigvalsh(dephased(rho, g, phi)))
    assert np.allclose(np.sort(post_measurement_spectrum(s, g)), ref, atol=1e-12, rtol=0)


@settings(max_examples=100, deadline=None)
@given(pair_states(), gammas, st.floats(0.0, 2 * np.pi), kinds)
def test_deficit_matches_dense_and_ignores_azimuth(s, g, phi, kind):
    rho = s.matrix().astype(complex)
    ref = dense_entropy(dephased(rho, g, phi), kind) - dense_entropy(rho, kind)
    # eigvalsh leaves ~1e-16 noise on zero eigenvalues; for q < 1 the entropy
    # turns that into ~sqrt(noise)
    tol = 1e-9 + 8 * float(kind.f(np.array(1e-15)))
    assert float(info_deficit_at_angle(s, g, kind)) == pytest.approx(ref, abs=tol)


@settings(max_examples=100, deadline=None)
@given(pair_states(), gammas, st.floats(0.0, 2 * np.pi))
def test_discord_matches_conditional_entropy_oracle(s, g, phi):
    assert float(discord_at_angle(s, g)) == pytest.approx(discord_oracle(s, g, phi), abs=1e-9)


@settings(max_examples=150, deadline=None)
@given(pair_states(), gammas)
def test_discord_below_one_way_deficit(s, g):
    d = float(discord_at_angle(s, g))
    i1 = float(info_deficit_at_angle(s, g, VON_NEUMANN))
    assert d <= i1 + 1e-12
    if abs(s.delta) < 1e-15:
        assert d == pytest.approx(i1, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(pair_states(), st.sampled_from([VON_NEUMANN, LINEAR, DISCORD]))
def test_stationary_at_both_orientations(s, m):
    h = 1e-6
    for g0 in (0.0, np.pi / 2):
        centered = (float(measure_at_angle(s, g0 + h, m))
                    - float(measure_at_angle(s, g0 - h, m))) / (2 * h)
        assert abs(centered) < 1e-6
        one_sided = (float(measure_at_angle(s, g0 + h, m)) - float(measure_at_angle(s, g0, m))) / h
        assert abs(one_sided) < 1e-3


@settings(max_examples=200, deadline=None)
@given(pair_states())
def test_closed_form_equals_search(s):
    searched = minimize_measure(s, LINEAR).value
    closed, _ = geometric_discord_closed(TwoQubitState.from_pair(s))
    assert searched == pytest.approx(closed, abs=1e-8)
    assert geometric_discord_piecewise(s) == pytest.approx(closed, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(pair_states())
def test_closed_form_orientation_matches_phase(s):
    closed, vec = geometric_discord_closed(TwoQubitState.from_pair(s))
    r = minimize_measure(s, LINEAR)
    if abs(abs(s.alpha) - s.alpha_t) > 1e-6:
        along_z = abs(vec[2]) > 0.5
        assert along_z == (r.phase is Phase.PARALLEL)


@settings(max_examples=100, deadline=None)
@given(pair_states())
def test_zero_coherence_kills_everything(s):
    z = PairState(s.p_plus, s.p_minus, s.p, 0.0)
    for m in (VON_NEUMANN, LINEAR, EntropyKind(3.0), EntropyKind(0.5), DISCORD):
        assert minimize_measure(z, m).value == pytest.approx(0.0, abs=1e-12)
    assert concurrence(z) == 0.0


@pytest.mark.parametrize("kind", [VON_NEUMANN, LINEAR, EntropyKind(3.0)])
def test_quadratic_onset(kind):
    P, M, p = 0.1, 0.5, 0.2
    ratios = [minimize_measure(PairState(P, M, p, a), kind).value / a ** 2 for a in (1e-3, 1e-4)]
    # Richardson step assuming an O(alpha^2) correction
    limit = ratios[1] + (ratios[1] - ratios[0]) / 99.0
    assert limit == pytest.approx(kind.curvature(p), rel=0.01)


def test_concurrence_against_wootters():
    rng = np.random.default_rng(1)
    sy2 = np.kron(SY, SY)
    for _ in range(50):
        w = rng.dirichlet(np.ones(4))
        s = PairState(w[0], w[1], 0.5 * (w[2] + w[3]), 0.5 * (w[2] - w[3]))
        rho = s.matrix()
        R = rho @ sy2 @ rho.conj() @ sy2
        lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(R).real)[::-1], 0, None))
        assert concurrence(s) == pytest.approx(max(0.0, lam[0] - lam[1:].sum()), abs=1e-10)


def test_dominant_eigenstate_degenerate_at_crossing():
    # alpha = p- - p puts |Psi+> and |dd> level
    s = PairState(0.05, 0.45, 0.25, 0.2)
    assert dominant_eigenstate(s) is Eigenstate.DEGENERATE
    assert dominant_eigenstate(PairState(0.05, 0.45, 0.25, 0.21)) is Eigenstate.BELL_PLUS
