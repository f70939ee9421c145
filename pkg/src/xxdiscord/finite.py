"""Exact cyclic XX chain of N spins.

After the Jordan-Wigner mapping each number-parity sector ``sigma`` is a free
fermion ring, with half-integer momenta for even fermion number
(``sigma = +1``) and integer momenta for odd (``sigma = -1``). Thermal
averages are assembled from four Gaussian blocks ``(sigma, nu)``; Wick's
theorem is applied inside each block only, never to the projected total.

`brute_force_pair_state` diagonalizes the spin Hamiltonian directly
(magnetization block by block) and is used as the reference.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import cos, isfinite, pi

import numpy as np
from scipy.special import expit, logsumexp

from .measures import PairState
from .thermo import alpha_from_correlators, pair_state_from_correlators

DEGENERACY_TOL = 1e-9
BRUTE_FORCE_MAX_N = 12
# |beta * lambda_k| below this in a nu = 1 block makes Z_1 vanish exactly
ZERO_MODE_TOL = 1e-9
ZERO_MODE_SHIFT = 1e-6


class DegenerateGroundStateError(ValueError):
    """The field sits on a level crossing of the finite chain."""


@dataclass(frozen=True)
class ChainSpec:
    N: int
    B: float
    J: float = 1.0
    T: float = 0.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 4 or self.N % 2:
            raise ValueError(f"N must be an even integer >= 4, got {self.N}")
        if not all(isfinite(x) for x in (self.B, self.J, self.T)):
            raise ValueError("parameters must be finite")
        if self.B < 0 or self.J < 0 or self.T < 0:
            raise ValueError("B, J and T must be non-negative")
        object.__setattr__(self, "N", int(self.N))

    @property
    def beta(self) -> float:
        return 1.0 / self.T if self.T > 0 else float("inf")


@dataclass(frozen=True)
class SectorSpectrum:
    sigma: int
    momenta: np.ndarray
    energies: np.ndarray

    @property
    def omega(self) -> np.ndarray:
        return 2 * pi * self.momenta / len(self.momenta)


def critical_fields(N: int, J: float = 1.0) -> np.ndarray:
    """Ground-state level-crossing fields ``B_1 = J > B_2 > ... > B_N = -J``.

    Between ``B_{k+1}`` and ``B_k`` the ground state has ``k`` up spins.
    """
    k = np.arange(1, N + 1)
    return J * np.cos(pi * (k - 0.5) / N) / cos(pi / (2 * N))


def sector_spectrum(spec: ChainSpec, sigma: int) -> SectorSpectrum:
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    N = spec.N
    shift = 0.5 if sigma == 1 else 0.0
    k = np.arange(-(N // 2), (N - 1) // 2 + 1) + shift
    lam = spec.B - spec.J * np.cos(2 * pi * k / N)
    return SectorSpectrum(sigma, k, lam)


# ---------------------------------------------------------------------------
# parity-projected statistics
# ---------------------------------------------------------------------------

def _log_abs_factor(x: np.ndarray, nu: int) -> tuple[np.ndarray, np.ndarray]:
    """``log|1 + (-1)**nu * exp(x)|`` and its sign, elementwise."""
    if nu == 0:
        return np.logaddexp(0.0, x), np.ones_like(x)
    with np.errstate(divide="ignore"):
        out = np.where(x > 0, x + np.log(-np.expm1(-np.abs(x))),
                       np.log(-np.expm1(-np.abs(x))))
    return out, -np.sign(x)


@dataclass(frozen=True)
class ProjectedWeights:
    """Log-magnitudes and signs of the four block partition functions.

    ``Z = (Z_0^+ + Z_1^+ + Z_0^- - Z_1^-) / 2``.
    """
    log_Z: float
    log_abs: dict
    signs: dict

    @property
    def Z(self) -> float:
        return float(np.exp(self.log_Z))

    @property
    def Z_nu_sigma(self) -> dict:
        return {key: self.signs[key] * float(np.exp(self.log_abs[key])) for key in self.log_abs}

    def weight(self, sigma: int, nu: int) -> float:
        """Signed contribution ``(1/2) sigma**nu Z_nu^sigma / Z`` of one block."""
        s = self.signs[(sigma, nu)]
        if s == 0:
            return 0.0
        return 0.5 * s * (sigma if nu == 1 else 1) * float(np.exp(self.log_abs[(sigma, nu)] - self.log_Z))


def projected_weights(spec: ChainSpec) -> ProjectedWeights:
    if spec.T <= 0:
        raise ValueError("projected weights need T > 0; use the ground-state path")
    beta = spec.beta
    log_abs, signs = {}, {}
    for sigma in (1, -1):
        lam = sector_spectrum(spec, sigma).energies
        for nu in (0, 1):
            la, sg = _log_abs_factor(-beta * lam, nu)
            log_abs[(sigma, nu)] = 0.5 * beta * spec.B * spec.N + float(la.sum())
            signs[(sigma, nu)] = int(np.prod(sg))
    keys = list(log_abs)
    coeff = np.array([signs[k] * (k[0] if k[1] == 1 else 1) for k in keys], dtype=float)
    mags = np.array([log_abs[k] for k in keys])
    live = coeff != 0
    log_Z, sgn = logsumexp(mags[live], b=coeff[live], return_sign=True)
    if sgn <= 0:
        raise ArithmeticError("projected partition function is not positive")
    return ProjectedWeights(float(log_Z - np.log(2.0)), log_abs, signs)


def mode_occupations(spec: ChainSpec, sigma: int, nu: int) -> np.ndarray:
    """``1 / (1 + (-1)**nu exp(beta lambda_k))``, saturating on overflow."""
    x = spec.beta * sector_spectrum(spec, sigma).energies
    if nu == 0:
        return expit(-x)
    with np.errstate(over="ignore", divide="ignore"):
        return -1.0 / np.expm1(x)


def partial_contractions(spec: ChainSpec, sigma: int, nu: int, Lmax: int) -> np.ndarray:
    """Block contractions ``g_L = (1/N) sum_k n_k cos(L w_k)`` for ``L = 0..Lmax``.

    For ``nu = 1`` the occupations are signed and unbounded.
    """
    if spec.T <= 0:
        raise ValueError("partial contractions need T > 0")
    sp = sector_spectrum(spec, sigma)
    n = mode_occupations(spec, sigma, nu)
    L = np.arange(Lmax + 1)
    return np.cos(np.outer(L, sp.omega)) @ n / spec.N


def _block_observables(g: np.ndarray, L: int) -> np.ndarray:
    g0, gL = g[0], g[L]
    return np.array([g0, (g0 - gL) * (g0 + gL), alpha_from_correlators(g, L)])


def _thermal_observables(spec: ChainSpec, L: int, parity_projection: bool) -> np.ndarray:
    w = projected_weights(spec)
    total = np.zeros(3)
    for sigma in (1, -1):
        for nu in (0, 1):
            if nu == 1 and not parity_projection:
                continue
            weight = w.weight(sigma, nu)
            if weight == 0.0:
                continue
            g = partial_contractions(spec, sigma, nu, L)
            total += weight * _block_observables(g, L)
    if not parity_projection:
        total /= sum(w.weight(s, 0) for s in (1, -1))
    return total


def _with_field(spec: ChainSpec, B: float) -> ChainSpec:
    # bypasses B >= 0 validation: offsets around B = 0 are legitimate here
    out = object.__new__(ChainSpec)
    for name, value in (("N", spec.N), ("B", B), ("J", spec.J), ("T", spec.T)):
        object.__setattr__(out, name, value)
    return out


def _has_zero_mode(spec: ChainSpec) -> bool:
    for sigma in (1, -1):
        lam = sector_spectrum(spec, sigma).energies
        if np.min(np.abs(spec.beta * lam)) < ZERO_MODE_TOL:
            return True
    return False


def pair_state_finite_thermal(spec: ChainSpec, L: int,
                              parity_projection: bool = True) -> PairState:
    """Thermal pair state at separation `L` from the parity-projected blocks.

    Setting `parity_projection` to False drops the ``nu = 1`` blocks; that is
    wrong physics and exists only to show the projection matters.
    """
    if spec.T <= 0:
        raise ValueError("use pair_state_finite_ground for T = 0")
    if not 1 <= L <= spec.N // 2:
        raise ValueError(f"separation must be in 1..{spec.N // 2}")
    if _has_zero_mode(spec):
        # Z_1^sigma vanishes while its block averages diverge; the product is
        # smooth in B, so average two symmetric offsets.
        h = ZERO_MODE_SHIFT * spec.T
        obs = 0.5 * (_thermal_observables(_with_field(spec, spec.B + h), L, parity_projection)
                     + _thermal_observables(_with_field(spec, spec.B - h), L, parity_projection))
    else:
        obs = _thermal_observables(spec, L, parity_projection)
    n, nn, alpha = obs
    return PairState(nn, 1.0 - 2.0 * n + nn, n - nn, alpha)


# ---------------------------------------------------------------------------
# ground state
# ---------------------------------------------------------------------------

def _sector_ground(sp: SectorSpectrum) -> tuple[float, np.ndarray]:
    occ = sp.energies < 0
    parity = 1 if occ.sum() % 2 == 0 else -1
    if parity != sp.sigma:
        i = int(np.argmin(np.abs(sp.energies)))
        occ[i] = not occ[i]
    energy = float(np.sum(sp.energies * (occ - 0.5)))
    return energy, occ.astype(float)


def ground_state_occupations(spec: ChainSpec) -> tuple[SectorSpectrum, np.ndarray]:
    """Sector and mode occupations of the non-degenerate ground state."""
    crit = critical_fields(spec.N, spec.J)
    if np.any(np.abs(spec.B - crit) < DEGENERACY_TOL * max(spec.J, 1e-300)):
        raise DegenerateGroundStateError(
            f"B = {spec.B!r} is a level crossing of the N = {spec.N} chain; offset the field")
    best = None
    for sigma in (1, -1):
        sp = sector_spectrum(spec, sigma)
        energy, occ = _sector_ground(sp)
        if best is None or energy < best[0]:
            best = (energy, sp, occ)
    return best[1], best[2]


def ground_state_magnetization(spec: ChainSpec) -> float:
    _, occ = ground_state_occupations(spec)
    return occ.sum() - spec.N / 2


def ground_contractions(spec: ChainSpec, Lmax: int) -> np.ndarray:
    sp, occ = ground_state_occupations(spec)
    L = np.arange(Lmax + 1)
    return np.cos(np.outer(L, sp.omega)) @ occ / spec.N


def pair_state_finite_ground(spec: ChainSpec, L: int) -> PairState:
    if not 1 <= L <= spec.N // 2:
        raise ValueError(f"separation must be in 1..{spec.N // 2}")
    return pair_state_from_correlators(ground_contractions(spec, L), L)


def pair_state_finite(spec: ChainSpec, L: int) -> PairState:
    if spec.T > 0:
        return pair_state_finite_thermal(spec, L)
    return pair_state_finite_ground(spec, L)


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------

def _magnetization_blocks(N: int):
    for n_up in range(N + 1):
        states = np.array(sorted(sum(1 << i for i in c) for c in combinations(range(N), n_up)),
                          dtype=np.int64)
        yield n_up, states


def _block_hamiltonian(N: int, B: float, J: float, n_up: int, states: np.ndarray) -> np.ndarray:
    index = {int(s): i for i, s in enumerate(states)}
    H = np.diag(np.full(len(states), B * (n_up - N / 2)))
    for i, s in enumerate(states):
        s = int(s)
        for site in range(N):
            nxt = (site + 1) % N
            if ((s >> site) ^ (s >> nxt)) & 1:
                H[index[s ^ ((1 << site) | (1 << nxt))], i] += -0.5 * J
    return H


def brute_force_pair_state(spec: ChainSpec, L: int) -> PairState:
    """Pair state of sites 0 and L from the full spin Hamiltonian.

    At T = 0 a degenerate ground multiplet is mixed with equal weights.
    """
    N = spec.N
    if N > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to N <= {BRUTE_FORCE_MAX_N}")
    if not 1 <= L <= N // 2:
        raise ValueError(f"separation must be in 1..{N // 2}")
    blocks = []
    for n_up, states in _magnetization_blocks(N):
        E, V = np.linalg.eigh(_block_hamiltonian(N, spec.B, spec.J, n_up, states))
        blocks.append((states, E, V))
    E0 = min(b[1][0] for b in blocks)
    scale = max(abs(spec.B), spec.J, 1.0)

    rho = np.zeros((4, 4))
    Z = 0.0
    mask = (1 << 0) | (1 << L)
    for states, E, V in blocks:
        if spec.T > 0:
            w = np.exp(-(E - E0) / spec.T)
        else:
            w = (E - E0 < DEGENERACY_TOL * scale).astype(float)
        Z += w.sum()
        if not w.any():
            continue
        rb = (V * w) @ V.T
        # pair index: 0 = up,up ... 3 = down,down
        pidx = 2 * (1 - (states & 1)) + (1 - ((states >> L) & 1))
        rest = states & ~mask
        same = rest[:, None] == rest[None, :]
        np.add.at(rho, (np.broadcast_to(pidx[:, None], same.shape)[same],
                        np.broadcast_to(pidx[None, :], same.shape)[same]), rb[same])
    rho /= Z
    return PairState(rho[0, 0], rho[3, 3], 0.5 * (rho[1, 1] + rho[2, 2]), rho[1, 2])


def brute_force_partition_function(spec: ChainSpec) -> float:
    if spec.N > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to N <= {BRUTE_FORCE_MAX_N}")
    Z = 0.0
    for n_up, states in _magnetization_blocks(spec.N):
        E = np.linalg.eigvalsh(_block_hamiltonian(spec.N, spec.B, spec.J, n_up, states))
        Z += np.exp(-E / spec.T).sum()
    return float(Z)


def brute_force_ground_energy(spec: ChainSpec) -> tuple[float, int]:
    """Lowest energy and its number of up spins (first found on ties)."""
    best = None
    for n_up, states in _magnetization_blocks(spec.N):
        e = np.linalg.eigvalsh(_block_hamiltonian(spec.N, spec.B, spec.J, n_up, states))[0]
        if best is None or e < best[0] - 1e-12:
            best = (float(e), n_up)
    return best
