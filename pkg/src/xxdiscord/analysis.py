"""Transition fields, phase diagrams and figure-ready sweeps."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from math import e, log2, nan
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from . import finite, thermo
from ._numerics import bisect_predicate, sign_change_roots
from .measures import (DISCORD, HALF_PI, LINEAR, VON_NEUMANN, EntropyKind,
                       Measure, PairState, Phase, concurrence,
                       dominant_eigenstate, geometric_discord_piecewise,
                       info_deficit_at_angle, minimize_measure, pair_spectrum)

ROOT_XTOL = 1e-14
# measures at or below this carry no orientation information
ZERO_VALUE = 1e-12
SCAN_STEPS = 400


@dataclass(frozen=True)
class ThermoContext:
    """Infinite chain at field `B`, coupling `J`, temperature `T`."""
    B: float
    J: float = 1.0
    T: float = 0.0

    N = None

    def __post_init__(self):
        thermo.ThermoParams(self.B, self.J, self.T)

    @property
    def params(self) -> thermo.ThermoParams:
        return thermo.ThermoParams(self.B, self.J, self.T)

    @property
    def max_separation(self) -> Optional[int]:
        return None

    @property
    def is_stepwise(self) -> bool:
        return False

    def pair_state(self, L: int) -> PairState:
        return thermo.pair_state_thermo(L, self.params)

    def pair_states(self, Ls) -> dict[int, PairState]:
        return thermo.pair_states_thermo(Ls, self.params)

    def replace(self, **changes) -> "ThermoContext":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class FiniteContext:
    """Cyclic chain of `N` spins."""
    N: int
    B: float
    J: float = 1.0
    T: float = 0.0

    def __post_init__(self):
        finite.ChainSpec(self.N, self.B, self.J, self.T)

    @property
    def spec(self) -> finite.ChainSpec:
        return finite.ChainSpec(self.N, self.B, self.J, self.T)

    @property
    def max_separation(self) -> int:
        return self.N // 2

    @property
    def is_stepwise(self) -> bool:
        return self.T == 0

    def pair_state(self, L: int) -> PairState:
        return finite.pair_state_finite(self.spec, L)

    def pair_states(self, Ls) -> dict[int, PairState]:
        return {L: self.pair_state(L) for L in Ls}

    def replace(self, **changes) -> "FiniteContext":
        return dataclasses.replace(self, **changes)


ChainContext = Union[ThermoContext, FiniteContext]


@dataclass(frozen=True)
class TransitionRecord:
    """Measurement-transition and eigenstate-crossing fields for one (L, T).

    `B_t` is the highest field where the perpendicular and parallel values of
    the measure coincide (for discord: where its optimal orientation
    changes). `crossover` is the field interval where an intermediate angle is
    optimal, when one exists. `flagged` marks more than one root.
    """
    L: int
    T: float
    B_t: Optional[float]
    B_c: Optional[float]
    q: Optional[float]
    N: Optional[int] = None
    crossover: Optional[tuple[float, float]] = None
    roots: tuple = ()
    phase_boundaries: tuple = ()
    flagged: bool = False


# ---------------------------------------------------------------------------
# root location over the field axis
# ---------------------------------------------------------------------------

def field_grid(J: float) -> np.ndarray:
    """Uniform ``J/400`` grid on [0, J] plus log-spaced points down to ``1e-10 J``."""
    fine = J * np.logspace(-10, np.log10(1.0 / SCAN_STEPS), 41)
    return np.unique(np.concatenate([np.linspace(0.0, J, SCAN_STEPS + 1), fine]))


def plateau_fields(ctx: FiniteContext) -> tuple[np.ndarray, np.ndarray]:
    """One interior field per ground-state plateau in [0, inf) and the steps between them."""
    crit = np.sort(finite.critical_fields(ctx.N, ctx.J))
    steps = crit[crit > 0]
    lows = np.concatenate([[0.0], steps])
    highs = np.concatenate([steps, [steps[-1] + ctx.J]])
    points = 0.5 * (lows + highs)
    points[0] = 0.0
    return points, steps


def _field_roots(ctx: ChainContext, cond: Callable[[PairState], float], L: int) -> list[float]:
    def f(B):
        return cond(ctx.replace(B=float(B)).pair_state(L))

    if ctx.is_stepwise:
        points, steps = plateau_fields(ctx)
        vals = [f(B) for B in points]
        return [float(steps[i]) for i in range(len(steps)) if vals[i] * vals[i + 1] < 0]
    return sign_change_roots(f, field_grid(ctx.J), xtol=ROOT_XTOL)


def crossing_condition(s: PairState) -> float:
    """Positive while the Bell state dominates ``|down,down>``."""
    return s.alpha - (s.p_minus - s.p)


def crossing_fields(ctx: ChainContext, L: int) -> list[float]:
    return sorted(_field_roots(ctx, crossing_condition, L), reverse=True)


def eigenstate_crossing_field(ctx: ChainContext, L: int) -> Optional[float]:
    """Field where the dominant eigenvector switches between Bell and aligned.

    Searched on [0, J]; returns the highest crossing, or None if there is none.
    """
    roots = crossing_fields(ctx, L)
    return roots[0] if roots else None


def _classify(ctx: ChainContext, L: int, measure: Measure, B: float) -> Optional[Phase]:
    """Optimal orientation, or None where the measure vanishes and every angle ties."""
    r = minimize_measure(ctx.replace(B=float(B)).pair_state(L), measure)
    return r.phase if r.value > ZERO_VALUE else None


def _phase_scan(ctx: ChainContext, L: int, measure: Measure):
    """Optimal-angle phase over the field axis and the fields where it changes."""
    if ctx.is_stepwise:
        points, steps = plateau_fields(ctx)
        phases = [_classify(ctx, L, measure, B) for B in points]
        live = [i for i, ph in enumerate(phases) if ph is not None]
        # steps[i] is the upper edge of plateau i
        return [(float(steps[i]), phases[i], phases[j])
                for i, j in zip(live[:-1], live[1:]) if phases[i] != phases[j]]
    grid = field_grid(ctx.J)
    phases = [_classify(ctx, L, measure, B) for B in grid]
    live = [i for i, ph in enumerate(phases) if ph is not None]
    bounds = []
    for i, j in zip(live[:-1], live[1:]):
        if phases[i] != phases[j]:
            lo_phase = phases[i]
            b = bisect_predicate(lambda B: _classify(ctx, L, measure, B) == lo_phase,
                                 grid[i], grid[j], tol=1e-8 * ctx.J)
            bounds.append((float(b), phases[i], phases[j]))
    return bounds


def _perp_minus_par(kind: EntropyKind) -> Callable[[PairState], float]:
    def cond(s: PairState) -> float:
        v = info_deficit_at_angle(s, np.array([HALF_PI, 0.0]), kind)
        return float(v[0] - v[1])
    return cond


def _alpha_minus_alpha_t(s: PairState) -> float:
    return abs(s.alpha) - s.alpha_t


def measurement_transition_field(ctx: ChainContext, L: int,
                                 measure: Measure = LINEAR,
                                 scan_phases: Optional[bool] = None) -> TransitionRecord:
    """Field where the measurement minimizing `measure` turns parallel.

    For the geometric discord this is the root of ``|alpha| - alpha_t``; for
    other entropies the root of ``I_perp - I_par``, and the classification
    scan additionally reports the intermediate-angle window. For discord
    only the classification scan is used. At T = 0 in a finite chain every
    root sits on one of the critical fields.
    """
    if ctx.max_separation is not None and L > ctx.max_separation:
        raise ValueError(f"separation {L} exceeds N/2 = {ctx.max_separation}")
    B_c = eigenstate_crossing_field(ctx, L)
    is_linear = isinstance(measure, EntropyKind) and abs(measure.q - 2.0) < 1e-12
    if scan_phases is None:
        scan_phases = not is_linear

    bounds = _phase_scan(ctx, L, measure) if scan_phases else []
    if measure == DISCORD:
        roots = sorted((b[0] for b in bounds), reverse=True)
        q = None
    else:
        cond = _alpha_minus_alpha_t if is_linear else _perp_minus_par(measure)
        roots = sorted(_field_roots(ctx, cond, L), reverse=True)
        q = measure.q

    crossover = None
    inter = [b[0] for b in bounds if Phase.INTERMEDIATE in (b[1], b[2])]
    if inter:
        crossover = (min(inter), max(inter))
    return TransitionRecord(
        L=L, T=ctx.T, B_t=roots[0] if roots else None, B_c=B_c, q=q, N=ctx.N,
        crossover=crossover, roots=tuple(roots),
        phase_boundaries=tuple((b[0], b[1].value, b[2].value) for b in bounds),
        flagged=len(roots) > 1)


def phase_diagram(ctx: ChainContext, L_list: Iterable[int], T_grid: Iterable[float],
                  measure: Measure = LINEAR) -> list[TransitionRecord]:
    """Transition records in (L, T) order; fields vary, `ctx.B` is ignored."""
    L_list = list(L_list)
    if ctx.max_separation is not None and max(L_list) > ctx.max_separation:
        raise ValueError(f"separations must not exceed N/2 = {ctx.max_separation}")
    return [measurement_transition_field(ctx.replace(T=float(T)), L, measure)
            for L in L_list for T in T_grid]


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

@dataclass
class SweepRecord:
    B: float
    T: float
    L: int
    N: Optional[int]
    I2: float = nan
    I2_gamma: float = nan
    I1: float = nan
    I1_gamma: float = nan
    Iq: float = nan
    Iq_gamma: float = nan
    D: float = nan
    D_gamma: float = nan
    C: float = nan
    ev_pp: float = nan
    ev_mm: float = nan
    ev_bell_plus: float = nan
    ev_bell_minus: float = nan
    phase_I2: str = ""
    phase_I1: str = ""
    dominant: str = ""
    I2_closed: float = nan
    phase_Iq: str = ""
    phase_D: str = ""
    q: float = nan
    status: str = "ok"


ALL_MEASURES = ("I2", "I1", "Iq", "D", "C")


def sweep_point(ctx: ChainContext, L: int, q: float = 3.0,
                measures: Sequence[str] = ALL_MEASURES,
                state: Optional[PairState] = None) -> SweepRecord:
    rec = SweepRecord(B=ctx.B, T=ctx.T, L=L, N=ctx.N, q=q)
    try:
        s = state if state is not None else ctx.pair_state(L)
    except Exception as exc:  # recorded per point, never raised
        rec.status = f"error: {type(exc).__name__}: {exc}"
        return rec
    rec.ev_pp, rec.ev_mm, rec.ev_bell_plus, rec.ev_bell_minus = pair_spectrum(s)
    rec.dominant = dominant_eigenstate(s).value
    targets = {"I2": LINEAR, "I1": VON_NEUMANN, "Iq": EntropyKind(q), "D": DISCORD}
    for name, m in targets.items():
        if name not in measures:
            continue
        r = minimize_measure(s, m)
        setattr(rec, name, r.value)
        setattr(rec, f"{name}_gamma", r.gamma_min)
        setattr(rec, f"phase_{name}", r.phase.value)
    if "I2" in measures:
        rec.I2_closed = geometric_discord_piecewise(s)
    if "C" in measures:
        rec.C = concurrence(s)
    return rec


def sweep(ctx: ChainContext, axis: str, grid: Iterable, L: Optional[int] = None,
          q: float = 3.0, measures: Sequence[str] = ALL_MEASURES) -> list[SweepRecord]:
    """Evaluate every measure along one axis.

    `axis` is ``"field"`` or ``"temperature"`` (with fixed `L`) or
    ``"separation"`` (the grid lists separations).
    """
    out = []
    if axis == "separation":
        Ls = [int(x) for x in grid]
        try:
            states = ctx.pair_states(Ls)
        except Exception:
            states = {}
        return [sweep_point(ctx, L, q, measures, states.get(L)) for L in Ls]
    if L is None:
        raise ValueError("field and temperature sweeps need a fixed separation")
    key = {"field": "B", "temperature": "T"}.get(axis)
    if key is None:
        raise ValueError(f"unknown sweep axis {axis!r}")
    for x in grid:
        try:
            point = ctx.replace(**{key: float(x)})
        except ValueError as exc:
            rec = SweepRecord(B=float(x) if key == "B" else ctx.B,
                              T=float(x) if key == "T" else ctx.T, L=L, N=ctx.N, q=q,
                              status=f"error: {exc}")
            out.append(rec)
            continue
        out.append(sweep_point(point, L, q, measures))
    return out


# ---------------------------------------------------------------------------
# W state
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WStateDiscord:
    N: int
    exact: float
    estimate: float
    gamma: float
    phase: Phase

    @property
    def rel_gap(self) -> float:
        return abs(self.exact - self.estimate) / abs(self.exact)


def w_state_discord(N: int) -> WStateDiscord:
    """Exact discord of the W-state pair against ``2/N - log2(N/e)/N**2``."""
    if N < 3:
        raise ValueError("N must be >= 3")
    r = minimize_measure(PairState.w_state(N), DISCORD)
    estimate = 2.0 / N - log2(N / e) / N ** 2
    return WStateDiscord(N, r.value, estimate, r.gamma_min, r.phase)
