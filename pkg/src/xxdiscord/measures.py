"""Discord-type measures of two-spin X states.

A pair of spins in a state that commutes with ``s_iz + s_jz`` and is symmetric
under exchange has the density matrix (basis ``|uu>, |ud>, |du>, |dd>``)::

    [[p+, 0,     0,     0 ],
     [0,  p,     alpha, 0 ],
     [0,  alpha, p,     0 ],
     [0,  0,     0,     p-]]

Everything here works on that four-number representation. A local spin
measurement on the second spin along an axis at polar angle ``gamma`` from
``z`` is the only freedom left after the U(1) symmetry, so every measure is
reduced to a one-dimensional minimization over ``gamma in [0, pi/2]``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import log, pi, sqrt
from typing import Literal, Union

import numpy as np
from scipy.special import xlogy

from ._numerics import golden_section

LN2 = log(2.0)
HALF_PI = pi / 2

# clamp window for round-off negativity of eigenvalues
NEG_TOL = 1e-12
TRACE_TOL = 1e-12

GRID_POINTS = 181
GAMMA_TOL = 1e-10
TIE_RTOL = 1e-12
# an interior optimum must beat the endpoints by this many ulps of the
# largest entropy cancelled inside the measure
NOISE_ULPS = 4


class StateError(ValueError):
    """A pair state violates positivity or normalization."""


class ConsistencyError(RuntimeError):
    """An internal numerical consistency check failed."""


# ---------------------------------------------------------------------------
# state types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairState:
    """X-form reduced state of a spin pair.

    Parameters
    ----------
    p_plus, p_minus : float
        Weights of ``|up,up>`` and ``|down,down>``.
    p : float
        Common diagonal weight of ``|up,down>`` and ``|down,up>``.
    alpha : float
        Off-diagonal coherence ``<s_x s_x + s_y s_y>``.

    Eigenvalues in ``[-1e-12, 0)`` are clamped to zero and the state is
    renormalized; anything more negative raises :class:`StateError`.
    """
    p_plus: float
    p_minus: float
    p: float
    alpha: float

    def __post_init__(self):
        ev = np.array([self.p_plus, self.p_minus,
                       self.p + self.alpha, self.p - self.alpha], dtype=float)
        if not np.all(np.isfinite(ev)):
            raise StateError(f"non-finite pair state {self!r}")
        if ev.min() < -NEG_TOL:
            raise StateError(f"negative eigenvalue {ev.min():.3e} in {self!r}")
        total = ev.sum()
        if abs(total - 1.0) > TRACE_TOL:
            raise StateError(f"trace {total!r} differs from 1")
        if ev.min() < 0.0 or total != 1.0:
            ev = np.clip(ev, 0.0, None)
            ev /= ev.sum()
            object.__setattr__(self, "p_plus", float(ev[0]))
            object.__setattr__(self, "p_minus", float(ev[1]))
            object.__setattr__(self, "p", float(0.5 * (ev[2] + ev[3])))
            object.__setattr__(self, "alpha", float(0.5 * (ev[2] - ev[3])))
        else:
            for name in ("p_plus", "p_minus", "p", "alpha"):
                object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def delta(self) -> float:
        """Single-spin magnetization ``<s_z> = (p+ - p-)/2``."""
        return 0.5 * (self.p_plus - self.p_minus)

    @property
    def alpha_t(self) -> float:
        """Coherence at which parallel and perpendicular geometric discord coincide."""
        a = self.p_minus - self.p
        b = self.p - self.p_plus
        return sqrt(0.5 * (a * a + b * b))

    @property
    def alpha_c(self) -> float:
        """Coherence at which the Bell state overtakes ``|down,down>``."""
        return self.p_minus - self.p

    def matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4))
        rho[0, 0] = self.p_plus
        rho[1, 1] = rho[2, 2] = self.p
        rho[1, 2] = rho[2, 1] = self.alpha
        rho[3, 3] = self.p_minus
        return rho

    @classmethod
    def bell(cls) -> "PairState":
        """The Bell state ``(|ud> + |du>)/sqrt(2)``."""
        return cls(0.0, 0.0, 0.5, 0.5)

    @classmethod
    def w_state(cls, N: int) -> "PairState":
        """Pair state of the one-magnon W state on a ring of `N` spins."""
        if N < 2:
            raise ValueError("W state needs N >= 2")
        return cls(0.0, 1.0 - 2.0 / N, 1.0 / N, 1.0 / N)


_SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1j], [1j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


@dataclass(frozen=True)
class TwoQubitState:
    """General two-qubit state in Bloch form.

    ``rho = (I + a.sigma_A + b.sigma_B + sum_mn corr[m, n] sigma_Am sigma_Bn) / 4``
    """
    bloch_a: np.ndarray
    bloch_b: np.ndarray
    corr: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.bloch_a, dtype=float).reshape(3)
        b = np.asarray(self.bloch_b, dtype=float).reshape(3)
        c = np.asarray(self.corr, dtype=float).reshape(3, 3)
        if np.linalg.norm(a) > 1 + 1e-12 or np.linalg.norm(b) > 1 + 1e-12:
            raise StateError("Bloch vector longer than 1")
        if np.abs(c).max() > 1 + 1e-12:
            raise StateError("correlation entry outside [-1, 1]")
        object.__setattr__(self, "bloch_a", a)
        object.__setattr__(self, "bloch_b", b)
        object.__setattr__(self, "corr", c)

    @classmethod
    def from_pair(cls, s: PairState) -> "TwoQubitState":
        r = np.array([0.0, 0.0, 2.0 * s.delta])
        return cls(r, r.copy(), np.diag([2 * s.alpha, 2 * s.alpha, 1 - 4 * s.p]))

    def matrix(self) -> np.ndarray:
        eye = np.eye(2)
        rho = np.eye(4, dtype=complex)
        for m in range(3):
            rho += self.bloch_a[m] * np.kron(_SIGMA[m], eye)
            rho += self.bloch_b[m] * np.kron(eye, _SIGMA[m])
            for n in range(3):
                rho += self.corr[m, n] * np.kron(_SIGMA[m], _SIGMA[n])
        return rho / 4


@dataclass(frozen=True)
class EntropyKind:
    """Concave entropic function ``f`` entering ``S_f(rho) = Tr f(rho)``.

    ``q == 1`` is von Neumann (base 2); otherwise the normalized Tsallis form
    ``f(p) = (p - p**q) / (1 - 2**(1 - q))``, which gives 1 for a Bell state.
    """
    q: float = 1.0

    def __post_init__(self):
        if not self.q > 0:
            raise ValueError(f"entropic index must be positive, got {self.q}")

    @property
    def is_von_neumann(self) -> bool:
        return abs(self.q - 1.0) < 1e-9

    def f(self, p):
        p = np.asarray(p, dtype=float)
        if self.is_von_neumann:
            return -xlogy(p, p) / LN2
        return (p - np.power(p, self.q)) / (1.0 - 2.0 ** (1.0 - self.q))

    def f_complement(self, c):
        """``f(1 - c)``, accurate for small `c`."""
        c = np.asarray(c, dtype=float)
        if self.is_von_neumann:
            return -(1.0 - c) * np.log1p(-c) / LN2
        return -(1.0 - c) * np.expm1((self.q - 1.0) * np.log1p(-c)) / (1.0 - 2.0 ** (1.0 - self.q))

    def curvature(self, p: float) -> float:
        """``|f''(p)|``."""
        if self.is_von_neumann:
            return 1.0 / (p * LN2)
        return abs(self.q * (self.q - 1.0) * p ** (self.q - 2.0) / (1.0 - 2.0 ** (1.0 - self.q)))


VON_NEUMANN = EntropyKind(1.0)
LINEAR = EntropyKind(2.0)

DISCORD = "discord"
Measure = Union[EntropyKind, Literal["discord"]]


class Phase(str, enum.Enum):
    PARALLEL = "parallel"
    PERPENDICULAR = "perpendicular"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class MeasureResult:
    value: float
    gamma_min: float
    phase: Phase = field(init=False)
    angle_tol: float = 1e-6

    def __post_init__(self):
        if self.gamma_min < self.angle_tol:
            ph = Phase.PARALLEL
        elif HALF_PI - self.gamma_min < self.angle_tol:
            ph = Phase.PERPENDICULAR
        else:
            ph = Phase.INTERMEDIATE
        object.__setattr__(self, "phase", ph)


# ---------------------------------------------------------------------------
# spectra and entropies
# ---------------------------------------------------------------------------

def pair_spectrum(s: PairState) -> tuple[float, float, float, float]:
    """Eigenvalues ``(p+, p-, p + alpha, p - alpha)``.

    The last two belong to the Bell states ``|Psi+>`` and ``|Psi->``.
    """
    return (s.p_plus, s.p_minus, s.p + s.alpha, s.p - s.alpha)


def entropy(probs, kind: EntropyKind = VON_NEUMANN):
    """``sum_i f(p_i)`` over the last axis, with ``f(0) = 0``.

    The probabilities must sum to one; a dominant entry is evaluated through
    the sum of the others so that nearly pure states keep their precision.
    """
    p = np.asarray(probs, dtype=float)
    if p.size and p.min() < -NEG_TOL:
        raise StateError(f"negative probability {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    terms = kind.f(p)
    top = np.argmax(p, axis=-1)[..., None]
    p_top = np.take_along_axis(p, top, axis=-1)
    others = p.copy()
    np.put_along_axis(others, top, 0.0, axis=-1)
    rest = np.clip(others.sum(axis=-1, keepdims=True), 0.0, 1.0)
    top_term = np.where(p_top > 0.5, kind.f_complement(rest),
                        np.take_along_axis(terms, top, axis=-1))
    np.put_along_axis(terms, top, top_term, axis=-1)
    out = terms.sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def _post_spectrum(s: PairState, gamma) -> np.ndarray:
    # each nu-block is 2x2: large root from sum/discriminant, small one from
    # the (manifestly non-negative) determinant to avoid cancellation
    P, M, p, a = s.p_plus, s.p_minus, s.p, s.alpha
    sin2 = np.sin(gamma) ** 2
    one_minus_u = 2.0 * np.sin(0.5 * np.asarray(gamma)) ** 2
    one_plus_u = 2.0 * np.cos(0.5 * np.asarray(gamma)) ** 2
    cross = P * M + (p - a) * (p + a)
    out = []
    for up, um in ((one_plus_u, one_minus_u), (one_minus_u, one_plus_u)):
        # up = 1 + nu u, um = 1 - nu u
        half_sum = (up * P + um * M + 2.0 * p) / 4.0
        lin = up * P - um * M - 2.0 * p * (up - um) / 2.0
        root = np.sqrt(lin ** 2 + 4.0 * a * a * sin2) / 4.0
        large = half_sum + root
        det = (sin2 * cross + M * p * um ** 2 + P * p * up ** 2) / 4.0
        with np.errstate(invalid="ignore", divide="ignore"):
            small = np.where(large > 0, det / np.where(large > 0, large, 1.0), 0.0)
        out.append(large)
        out.append(small)
    return np.clip(np.stack(out, axis=-1), 0.0, None)


def post_measurement_spectrum(s: PairState, gamma: float) -> tuple[float, float, float, float]:
    """Eigenvalues of the state after an unread spin measurement at angle `gamma`.

    Order is ``(nu=+1, mu=+1), (+1, -1), (-1, +1), (-1, -1)``.
    """
    return tuple(float(x) for x in _post_spectrum(s, float(gamma)))


def info_deficit_at_angle(s: PairState, gamma, kind: EntropyKind = VON_NEUMANN):
    """``S_f(rho') - S_f(rho)`` for a measurement at polar angle `gamma`.

    `gamma` may be an array; the result then has the same shape.
    """
    before = entropy(pair_spectrum(s), kind)
    after = entropy(_post_spectrum(s, np.asarray(gamma, dtype=float)), kind)
    return after - before


def discord_at_angle(s: PairState, gamma):
    """Quantum discord for a measurement at polar angle `gamma`.

    Conditional entropy of the measured state minus that of the original
    state. The conditional part is summed outcome by outcome, so the order-one
    entropy of the measured spin never has to cancel.
    """
    g = np.asarray(gamma, dtype=float)
    # marginal weights of the measured spin, kept away from 1 - (small)
    up, down = s.p_plus + s.p, s.p_minus + s.p
    c_up, c_down = np.cos(0.5 * g) ** 2, np.sin(0.5 * g) ** 2
    weights = np.stack([up * c_up + down * c_down, down * c_up + up * c_down], axis=-1)
    ev = _post_spectrum(s, g)
    small = ev[..., 1::2]
    with np.errstate(invalid="ignore", divide="ignore"):
        x = np.where(weights > 0, small / np.where(weights > 0, weights, 1.0), 0.0)
    x = np.clip(x, 0.0, 0.5)
    conditional = (weights * entropy(np.stack([1.0 - x, x], axis=-1), VON_NEUMANN)).sum(axis=-1)
    before = entropy(pair_spectrum(s), VON_NEUMANN) - entropy(np.array([up, down]), VON_NEUMANN)
    out = conditional - before
    return float(out) if np.ndim(out) == 0 else out


def measure_at_angle(s: PairState, gamma, measure: Measure):
    if isinstance(measure, EntropyKind):
        return info_deficit_at_angle(s, gamma, measure)
    if measure == DISCORD:
        return discord_at_angle(s, gamma)
    raise ValueError(f"unknown measure {measure!r}")


def _cancellation_scale(s: PairState, measure: Measure) -> float:
    # largest entropy whose difference forms the measure
    kind = measure if isinstance(measure, EntropyKind) else VON_NEUMANN
    post = entropy(_post_spectrum(s, np.array([0.0, HALF_PI])), kind)
    scale = max(float(np.max(np.abs(post))), abs(entropy(pair_spectrum(s), kind)))
    if measure == DISCORD:
        scale = max(scale, 1.0)  # measured-spin entropy near one bit
    return scale


def minimize_measure(s: PairState, measure: Measure,
                     angle_tol: float = 1e-6) -> MeasureResult:
    """Minimize a measure over the polar measurement angle.

    A 181-point scan on ``[0, pi/2]`` is refined by golden section around the
    best point. Endpoint values equal to a relative ``1e-12`` count as a tie,
    reported as parallel. An interior candidate must beat the better
    endpoint by more than that and by a few ulps of the entropies cancelled
    inside the measure.
    """
    grid = np.linspace(0.0, HALF_PI, GRID_POINTS)
    vals = measure_at_angle(s, grid, measure)
    v0, v90 = float(vals[0]), float(vals[-1])
    tol = TIE_RTOL * max(abs(v0), abs(v90))
    if v0 <= v90 + tol:
        g_best, v_best = 0.0, v0
    else:
        g_best, v_best = HALF_PI, v90

    # golden section can land on favourable round-off, so demand a real gain
    tol = max(tol, NOISE_ULPS * np.finfo(float).eps * _cancellation_scale(s, measure))
    i = int(np.argmin(vals))
    if 0 < i < GRID_POINTS - 1 or vals[i] < v_best - tol:
        lo = grid[max(i - 1, 0)]
        hi = grid[min(i + 1, GRID_POINTS - 1)]
        g_int, v_int = golden_section(lambda g: float(measure_at_angle(s, g, measure)),
                                      lo, hi, tol=GAMMA_TOL)
        if v_int < v_best - tol:
            g_best, v_best = g_int, v_int
    return MeasureResult(max(v_best, 0.0), g_best, angle_tol=angle_tol)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def geometric_discord_closed(t: TwoQubitState) -> tuple[float, np.ndarray]:
    """Geometric discord ``I_2`` from the largest eigenvalue of ``b b^T + C^T C``.

    Returns the value and the optimal measurement axis on the second qubit.
    """
    m2 = np.outer(t.bloch_b, t.bloch_b) + t.corr.T @ t.corr
    if not np.abs(m2 - m2.T).max() <= 1e-12:  # also catches NaN
        raise ConsistencyError("M2 is not a finite symmetric matrix")
    w, v = np.linalg.eigh(m2)
    value = 0.5 * (np.trace(m2) - w[-1])
    return max(float(value), 0.0), v[:, -1]


def geometric_discord_piecewise(s: PairState) -> float:
    """Geometric discord of an X-form pair state, parallel or perpendicular branch."""
    a = abs(s.alpha)
    at = s.alpha_t
    if a <= at:
        return 4.0 * a * a
    return 2.0 * (a * a + at * at)


def concurrence(s: PairState) -> float:
    return 2.0 * max(abs(s.alpha) - sqrt(s.p_plus * s.p_minus), 0.0)


class Eigenstate(str, enum.Enum):
    ALIGNED_UP = "aligned_up"
    ALIGNED_DOWN = "aligned_down"
    BELL_PLUS = "bell_plus"
    BELL_MINUS = "bell_minus"
    DEGENERATE = "degenerate"


_EIGEN_ORDER = (Eigenstate.ALIGNED_UP, Eigenstate.ALIGNED_DOWN,
                Eigenstate.BELL_PLUS, Eigenstate.BELL_MINUS)


def dominant_eigenstate(s: PairState, tol: float = 1e-12) -> Eigenstate:
    ev = np.array(pair_spectrum(s))
    order = np.argsort(ev)[::-1]
    if ev[order[0]] - ev[order[1]] <= tol:
        return Eigenstate.DEGENERATE
    return _EIGEN_ORDER[order[0]]
