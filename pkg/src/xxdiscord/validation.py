"""Exact pipeline versus asymptotic laws, as a table of named checks."""
from __future__ import annotations

from dataclasses import dataclass
from math import log2, pi
from typing import Callable, Optional

import numpy as np

from . import finite, thermo
from .analysis import ThermoContext, measurement_transition_field, w_state_discord
from .measures import DISCORD, LINEAR, VON_NEUMANN, minimize_measure

ETA = 0.294


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    reference: float
    error: float
    tol: float
    kind: str  # "rel" or "abs"

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.error) and self.error <= self.tol)


def _rel(name, value, ref, tol) -> Check:
    return Check(name, value, ref, abs(value - ref) / abs(ref), tol, "rel")


def _abs(name, value, ref, tol) -> Check:
    return Check(name, value, ref, abs(value - ref), tol, "abs")


def _min(L, p, m):
    return minimize_measure(thermo.pair_state_thermo(L, p), m).value


def check_eta():
    p = thermo.ThermoParams(0.0)
    return [_abs(f"eta_L{L}", thermo.eta(L, p), ETA, 0.005) for L in (30, 50)]


def check_bt_sqrt_l():
    out = []
    for L in (10, 20, 40):
        rec = measurement_transition_field(ThermoContext(0.0), L, LINEAR)
        out.append(_rel(f"bt_sqrtL_L{L}", rec.B_t * np.sqrt(L), pi * ETA, 0.05))
    return out


def check_large_l():
    L, p = 25, thermo.ThermoParams(0.0)
    s = thermo.pair_state_thermo(L, p)
    return [
        _rel("large_L_I2", minimize_measure(s, LINEAR).value,
             thermo.asymptotic_deficit_large_L(L, p, LINEAR).value, 0.10),
        _rel("large_L_I1", minimize_measure(s, VON_NEUMANN).value,
             thermo.asymptotic_deficit_large_L(L, p, VON_NEUMANN).value, 0.10),
        _rel("large_L_D", minimize_measure(s, DISCORD).value,
             thermo.asymptotic_discord_large_L(L, p), 0.10),
    ]


def check_near_critical():
    p = thermo.ThermoParams(0.999)
    i2_ref, _ = thermo.asymptotic_near_critical(p)
    out = []
    for L in range(1, 5):
        s = thermo.pair_state_thermo(L, p)
        i2 = minimize_measure(s, LINEAR).value
        i1 = minimize_measure(s, VON_NEUMANN).value
        out.append(_rel(f"near_critical_I2_L{L}", i2, i2_ref, 0.05))
        out.append(_abs(f"near_critical_I1_ratio_L{L}", i1 / np.sqrt(i2), 1.0, 0.1))
    return out


def check_high_t():
    out = []
    p = thermo.ThermoParams(0.0, 1.0, 50.0)
    for L in (1, 2):
        est = thermo.asymptotic_high_T(L, p, LINEAR)
        out.append(_rel(f"high_T_I2_L{L}", _min(L, p, LINEAR), est.value, 0.05))
        rec = measurement_transition_field(ThermoContext(0.0, 1.0, 50.0), L, LINEAR)
        out.append(_rel(f"high_T_Bt_L{L}", rec.B_t, est.B_t, 0.05 if L == 1 else 0.10))
        Ts = np.geomspace(30.0, 100.0, 6)
        vals = [_min(L, thermo.ThermoParams(0.0, 1.0, T), LINEAR) for T in Ts]
        slope = np.polyfit(np.log(Ts), np.log(vals), 1)[0]
        out.append(_rel(f"high_T_slope_L{L}", slope, -2.0 * L, 0.03))
        out.append(_rel(f"high_T_D_L{L}", _min(L, p, DISCORD),
                        thermo.asymptotic_discord_high_T(L, p), 0.05))
    return out


def check_strong_field():
    p = thermo.ThermoParams(20.0, 1.0, 1.0)
    return [_rel("strong_field_I2", _min(1, p, LINEAR),
                 thermo.asymptotic_strong_field(1, p), 0.10)]


def check_w_state():
    w = w_state_discord(40)
    N = 40
    return [_rel("w_state_D_N40", w.exact, 2.0 / N - log2(N / np.e) / N ** 2, 0.10)]


def check_finite_oracle():
    worst = 0.0
    for N in (4, 6, 8):
        for B in (0.0, 0.3, 0.7, 1.2):
            for T in (0.2, 1.0, 5.0):
                spec = finite.ChainSpec(N, B, 1.0, T)
                for L in range(1, N // 2 + 1):
                    a = finite.pair_state_finite_thermal(spec, L)
                    b = finite.brute_force_pair_state(spec, L)
                    d = max(abs(a.p_plus - b.p_plus), abs(a.p_minus - b.p_minus),
                            abs(a.p - b.p), abs(a.alpha - b.alpha))
                    worst = max(worst, d)
    return [_abs("finite_vs_brute_force", worst, 0.0, 1e-8)]


SUITE: dict[str, Callable[[], list]] = {
    "eta": check_eta,
    "bt_sqrtL": check_bt_sqrt_l,
    "large_L": check_large_l,
    "near_critical": check_near_critical,
    "high_T": check_high_t,
    "strong_field": check_strong_field,
    "w_state": check_w_state,
    "finite_vs_brute_force": check_finite_oracle,
}


def run_suite(tolerances: Optional[dict[str, float]] = None,
              groups: Optional[list[str]] = None) -> list[Check]:
    """Run the named check groups; `tolerances` maps a check name or prefix to a tolerance."""
    tolerances = tolerances or {}
    names = groups or list(SUITE)
    unknown = [g for g in names if g not in SUITE]
    if unknown:
        raise KeyError(f"unknown check group(s): {', '.join(unknown)}")
    out = []
    for g in names:
        for c in SUITE[g]():
            # longest matching prefix wins
            keys = [k for k in tolerances if c.name == k or c.name.startswith(k)]
            if keys:
                c = Check(c.name, c.value, c.reference, c.error,
                          tolerances[max(keys, key=len)], c.kind)
            out.append(c)
    return out
