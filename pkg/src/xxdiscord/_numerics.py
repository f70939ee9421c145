"""Small scalar search helpers shared by the measure and transition code."""
from __future__ import annotations

from math import sqrt
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

INV_PHI = (sqrt(5.0) - 1.0) / 2.0


def golden_section(f: Callable[[float], float], a: float, b: float,
                   tol: float = 1e-10, max_iter: int = 200) -> tuple[float, float]:
    """Minimize a unimodal scalar function on [a, b].

    Returns ``(x_min, f(x_min))``. The bracket is shrunk until its width is
    below `tol`.
    """
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1 = f(x1)
    f2 = f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    if f1 <= f2:
        return x1, f1
    return x2, f2


def sign_change_roots(f: Callable[[float], float], grid: Sequence[float],
                      xtol: float = 1e-14) -> list[float]:
    """All roots of `f` bracketed by sign changes between consecutive grid points.

    Every returned root comes from a verified bracket ``f(a) * f(b) < 0``.
    An exact zero on the grid counts only if the nearest non-zero values on
    either side have opposite signs, so flat stretches of ``f == 0`` are not
    reported.
    """
    xs = np.asarray(grid, dtype=float)
    vals = np.array([f(x) for x in xs])
    roots = []
    for i in range(len(xs) - 1):
        fa, fb = vals[i], vals[i + 1]
        if not (np.isfinite(fa) and np.isfinite(fb)):
            continue
        if fa * fb < 0.0:
            roots.append(float(brentq(f, xs[i], xs[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)))
    for i in np.flatnonzero(vals == 0.0):
        left = vals[:i][vals[:i] != 0.0]
        right = vals[i + 1:][vals[i + 1:] != 0.0]
        if len(left) and len(right) and left[-1] * right[0] < 0.0:
            if i > 0 and vals[i - 1] == 0.0:
                continue  # one root per flat run, at its left end
            roots.append(float(xs[i]))
    return sorted(roots)


def bisect_predicate(pred: Callable[[float], bool], a: float, b: float,
                     tol: float) -> float:
    """Locate where a boolean predicate flips between `a` and `b`.

    Requires ``pred(a) != pred(b)``; returns the midpoint of the final bracket.
    """
    pa = pred(a)
    if pa == pred(b):
        raise ValueError("predicate does not change on the bracket")
    while abs(b - a) > tol:
        m = 0.5 * (a + b)
        if pred(m) == pa:
            a = m
        else:
            b = m
    return 0.5 * (a + b)
