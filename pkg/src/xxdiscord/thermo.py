"""Spin-pair states of the infinite XX chain and their asymptotic laws.

All pair correlations follow from the fermionic contractions ``g_L``: a
Fermi-factor cosine transform over the band ``B - J cos(w)``, which at zero
temperature reduces to ``sin(wF L) / (L pi)`` with ``wF = arccos(B/J)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import acos, atanh, exp, isfinite, log, pi, sin, sqrt

import numpy as np
from scipy.integrate import quad
from scipy.special import expit, iv

from .measures import LINEAR, EntropyKind, PairState

QUAD_EPSABS = 1e-12
QUAD_LIMIT = 2 ** 15
# below this T/J the Fermi factor is treated as a step
LOW_T_RATIO = 1e-6


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ThermoParams:
    """Field `B`, coupling `J` and temperature `T` (``k_B = 1``)."""
    B: float
    J: float = 1.0
    T: float = 0.0

    def __post_init__(self):
        if not (isfinite(self.B) and isfinite(self.J) and isfinite(self.T)):
            raise ValueError("parameters must be finite")
        if self.B < 0:
            raise ValueError("field must be non-negative")
        if self.J <= 0:
            raise ValueError("coupling must be positive")
        if self.T < 0:
            raise ValueError("temperature must be non-negative")

    @property
    def beta(self) -> float:
        return 1.0 / self.T if self.T > 0 else float("inf")

    @property
    def is_ground_state(self) -> bool:
        return self.T < LOW_T_RATIO * self.J


def fermi_angle(p: ThermoParams) -> float:
    """Occupied arc ``w_F`` of the ground state; 0 once the chain is saturated."""
    if p.B >= p.J:
        return 0.0
    return acos(p.B / p.J)


def g_zero_temperature(L: int, p: ThermoParams) -> float:
    w = fermi_angle(p)
    if L == 0:
        return w / pi
    return sin(w * L) / (L * pi)


def g_thermal(L: int, p: ThermoParams) -> float:
    """Finite-temperature contraction by adaptive Gauss-Kronrod quadrature."""
    if p.T <= 0:
        raise ValueError("g_thermal needs T > 0; use g_zero_temperature")
    beta = 1.0 / p.T
    B, J = p.B, p.J

    def occ(w):
        return expit(-beta * (B - J * np.cos(w)))

    # split at the Fermi point so each panel sees at most one steep edge
    cuts = [0.0, pi]
    if B < J:
        cuts.insert(1, acos(B / J))
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        if L == 0:
            res = quad(occ, a, b, epsabs=QUAD_EPSABS / 2, epsrel=1e-13,
                       limit=QUAD_LIMIT, full_output=1)
        else:
            res = quad(occ, a, b, weight="cos", wvar=L, epsabs=QUAD_EPSABS / 2,
                       epsrel=1e-13, limit=QUAD_LIMIT, full_output=1)
        if len(res) > 3 and res[1] > QUAD_EPSABS:
            raise QuadratureError(
                f"quadrature for g_{L} did not converge (error {res[1]:.2e}): {res[3]}")
        total += res[0]
    return total / pi


def correlators(Lmax: int, p: ThermoParams) -> np.ndarray:
    """``g_0 .. g_Lmax`` for the given parameters."""
    if Lmax < 0:
        raise ValueError("Lmax must be non-negative")
    if p.is_ground_state:
        return np.array([g_zero_temperature(L, p) for L in range(Lmax + 1)])
    return np.array([g_thermal(L, p) for L in range(Lmax + 1)])


def alpha_from_correlators(g, L: int) -> float:
    """Transverse pair correlation as half a Toeplitz determinant.

    The ``L x L`` matrix has entries ``2 g_{i-j+1} - [i == j - 1]``, with
    ``g_{-m} = g_m``.
    """
    g = np.asarray(g, dtype=float)
    if L < 1:
        raise ValueError("separation must be >= 1")
    if len(g) < L + 1:
        raise IndexError(f"need correlators up to g_{L}, have {len(g) - 1}")
    i = np.arange(L)
    m = i[:, None] - i[None, :] + 1
    A = 2.0 * g[np.abs(m)] - (m == 0)
    return 0.5 * float(np.linalg.det(A))


def pair_state_from_correlators(g, L: int) -> PairState:
    g = np.asarray(g, dtype=float)
    g0, gL = g[0], g[L]
    nn = (g0 - gL) * (g0 + gL)
    p_minus = (1.0 - g0 - gL) * (1.0 - g0 + gL)
    return PairState(nn, p_minus, g0 - nn, alpha_from_correlators(g, L))


def pair_state_thermo(L: int, p: ThermoParams) -> PairState:
    return pair_state_from_correlators(correlators(L, p), L)


def pair_states_thermo(Ls, p: ThermoParams) -> dict[int, PairState]:
    """Pair states for several separations sharing one set of correlators."""
    Ls = list(Ls)
    g = correlators(max(Ls), p)
    return {L: pair_state_from_correlators(g, L) for L in Ls}


def eta(L: int, p: ThermoParams) -> float:
    """``alpha_L * sqrt(L)``, the amplitude of the ``L**-1/2`` decay."""
    return pair_state_thermo(L, p).alpha * sqrt(L)


# ---------------------------------------------------------------------------
# asymptotic laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeficitEstimate:
    value_z: float
    value_perp: float
    B_t: float

    @property
    def value(self) -> float:
        return min(self.value_z, self.value_perp)


def _require_ground(p: ThermoParams):
    if not p.is_ground_state:
        raise ValueError("large-L estimates are for T = 0")


def asymptotic_deficit_large_L(L: int, p: ThermoParams,
                               kind: EntropyKind = LINEAR) -> DeficitEstimate:
    """Large-separation estimates of the parallel and perpendicular deficits at T = 0."""
    _require_ground(p)
    e = eta(L, p)
    x = fermi_angle(p) / pi
    p_L = x * (1.0 - x)
    k_par = kind.curvature(p_L) if p_L > 0 else float("inf")
    k_perp = kind.curvature(0.25)
    value_z = k_par * e * e / L
    value_perp = 0.5 * k_perp * (e * e / L + (p.B / (pi * p.J)) ** 2)
    return DeficitEstimate(value_z, value_perp, pi * e * p.J / sqrt(L))


def discord_coefficient(delta: float, p_L: float) -> float:
    """``(1/ln2) (1/p_L - atanh(2 delta)/delta)``, with the delta -> 0 limit."""
    if abs(delta) < 1e-8:
        ratio = 2.0 + 8.0 * delta * delta / 3.0
    else:
        ratio = atanh(2.0 * delta) / delta
    return (1.0 / p_L - ratio) / log(2.0)


def asymptotic_discord_large_L(L: int, p: ThermoParams) -> float:
    _require_ground(p)
    e = eta(L, p)
    x = fermi_angle(p) / pi
    return discord_coefficient(x - 0.5, x * (1.0 - x)) * e * e / L


def asymptotic_near_critical(p: ThermoParams) -> tuple[float, float]:
    """Separation-independent ``(I_2, I_1)`` as ``B -> J`` from below."""
    if p.B >= p.J:
        return 0.0, 0.0
    i2 = 8.0 * (1.0 - p.B / p.J) / pi ** 2
    return i2, sqrt(i2)


def asymptotic_high_T(L: int, p: ThermoParams,
                      kind: EntropyKind = LINEAR) -> DeficitEstimate:
    """High-temperature estimates of the parallel/perpendicular deficits and ``B_t``."""
    if p.T <= 0:
        raise ValueError("high-T estimate needs T > 0")
    k = kind.curvature(0.25)
    r = p.J / (4.0 * p.T)
    value_z = 0.25 * k * r ** (2 * L)
    value_perp = 0.5 * k * (0.25 * r ** (2 * L) + (p.B / (4.0 * p.T)) ** 2)
    return DeficitEstimate(value_z, value_perp, 0.5 * p.J * r ** (L - 1))


def asymptotic_discord_high_T(L: int, p: ThermoParams) -> float:
    if p.T <= 0:
        raise ValueError("high-T estimate needs T > 0")
    return 0.25 * (2.0 / log(2.0)) * (p.J / (4.0 * p.T)) ** (2 * L)


def asymptotic_strong_field(L: int, p: ThermoParams) -> float:
    """Geometric discord for ``B >> J, T``: ``4 exp(-2B/T) I_L(J/T)**2``."""
    if p.T <= 0:
        return 0.0
    return 4.0 * exp(-2.0 * p.B / p.T) * iv(L, p.J / p.T) ** 2


__all__ = [
    "ThermoParams", "QuadratureError", "DeficitEstimate",
    "fermi_angle", "g_zero_temperature", "g_thermal", "correlators",
    "alpha_from_correlators", "pair_state_from_correlators",
    "pair_state_thermo", "pair_states_thermo", "eta",
    "asymptotic_deficit_large_L", "asymptotic_discord_large_L",
    "discord_coefficient", "asymptotic_near_critical", "asymptotic_high_T",
    "asymptotic_discord_high_T", "asymptotic_strong_field",
]
