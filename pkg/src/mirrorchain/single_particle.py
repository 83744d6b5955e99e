"""Single-excitation dynamics: eigensystem, propagators, mirror-time search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .chains import ChainSpec, SymmetricTridiagonal, single_particle_matrix
from .polynomials import normalize_row_signs

MIRROR_TOL = 1e-8
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Eigensystem:
    """Ascending energies with orthonormal eigenvectors stored as rows."""

    energies: np.ndarray
    vectors: np.ndarray
    source: str = "numeric"

    @property
    def size(self) -> int:
        return self.energies.size


@dataclass(frozen=True)
class PropagatorMatrix:
    entries: np.ndarray
    time: float

    def unitarity_error(self) -> float:
        u = self.entries
        return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))


@dataclass(frozen=True)
class MirrorReport:
    """Outcome of a mirror-time search.

    ``found`` is False when no time in the scanned window brought the
    residual below the tolerance; ``mirror_time`` and ``residual`` then
    describe the best point seen.
    """

    mirror_time: float
    global_phase: complex
    residual: float
    found: bool

    def to_dict(self) -> dict:
        return {
            "mirror_time": self.mirror_time,
            "global_phase": {"re": self.global_phase.real, "im": self.global_phase.imag},
            "residual": self.residual,
            "found": self.found,
        }


def _as_tridiagonal(m: Union[ChainSpec, SymmetricTridiagonal]) -> SymmetricTridiagonal:
    if isinstance(m, ChainSpec):
        return single_particle_matrix(m)
    return m


def numeric_eigensystem(m: Union[ChainSpec, SymmetricTridiagonal]) -> Eigensystem:
    """Diagonalise the single-particle matrix (LAPACK tridiagonal solver).

    Each eigenvector is sign-fixed so its first non-negligible entry is
    positive.
    """
    m = _as_tridiagonal(m)
    energies, cols = eigh_tridiagonal(m.diagonal, m.off_diagonal)
    vectors = normalize_row_signs(cols.T)
    return Eigensystem(energies, vectors, "numeric")


def propagator(es: Eigensystem, t: float) -> PropagatorMatrix:
    """``U(t) = sum_k exp(-i E_k t) |phi_k><phi_k|``."""
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    v = es.vectors
    u = (v.T * np.exp(-1j * es.energies * t)) @ v
    return PropagatorMatrix(u, float(t))


def transfer_fidelity(spec: ChainSpec, t: float, es: Optional[Eigensystem] = None) -> float:
    """End-to-end amplitude magnitude ``|<N| U(t) |0>|``."""
    es = numeric_eigensystem(spec) if es is None else es
    v = es.vectors
    amp = np.sum(v[:, -1] * v[:, 0] * np.exp(-1j * es.energies * t))
    return float(abs(amp))


def fidelity_curve(spec: ChainSpec, times, es: Optional[Eigensystem] = None) -> np.ndarray:
    es = numeric_eigensystem(spec) if es is None else es
    v = es.vectors
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(times, es.energies))
    return np.abs(phases @ (v[:, -1] * v[:, 0]))


def mirror_residual(u: np.ndarray) -> tuple[float, complex]:
    """Distance of ``u`` from ``phase * A`` (``A`` the site-reversal permutation).

    The phase is read off the largest-magnitude anti-diagonal entry.
    Returns ``(max |u - phase A|, phase)``.
    """
    n = u.shape[0]
    anti = u[np.arange(n)[::-1], np.arange(n)]
    i = int(np.argmax(np.abs(anti)))
    if abs(anti[i]) == 0.0:
        phase = 1.0 + 0j
    else:
        phase = complex(anti[i] / abs(anti[i]))
    target = np.zeros_like(u)
    target[np.arange(n)[::-1], np.arange(n)] = phase
    return float(np.max(np.abs(u - target))), phase


def _scan_residuals(es: Eigensystem, times: np.ndarray, chunk_entries: int = 4_000_000) -> np.ndarray:
    v = es.vectors
    n = es.size
    outer = (v[:, :, None] * v[:, None, :]).reshape(n, n * n)
    rows, cols = np.arange(n)[::-1], np.arange(n)
    anti_mask = np.zeros((n, n), dtype=bool)
    anti_mask[rows, cols] = True
    anti_flat = anti_mask.ravel()
    step = max(1, chunk_entries // (n * n))
    out = np.empty(times.size)
    for start in range(0, times.size, step):
        t = times[start:start + step]
        u = (np.exp(-1j * np.outer(es.energies, t)).T @ outer)  # (T, n*n)
        anti = u[:, anti_flat]
        best = np.argmax(np.abs(anti), axis=1)
        picked = anti[np.arange(t.size), best]
        mag = np.abs(picked)
        phase = np.where(mag > 0, picked / np.where(mag > 0, mag, 1.0), 1.0)
        dev = np.abs(u - phase[:, None] * anti_flat[None, :])
        out[start:start + step] = dev.max(axis=1)
    return out


def _golden_section(f, a: float, b: float, xtol: float) -> float:
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(300):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return c if fc <= fd else d


def find_mirror_time(spec: ChainSpec, t_max: float = 10.0, grid: int = 10_000,
                     tol: float = MIRROR_TOL, es: Optional[Eigensystem] = None) -> MirrorReport:
    """Earliest ``t`` in ``(0, t_max]`` with ``U(t) = phase * A`` to within ``tol``.

    A coarse scan on ``grid`` points is followed by golden-section
    refinement over +-2 grid steps around every local minimum that could
    hide a zero (coarse residual below ``spread * dt``), in time order.
    """
    if not t_max > 0:
        raise ValueError("t_max must be positive")
    if grid < 100:
        raise ValueError("grid must have at least 100 points")
    es = numeric_eigensystem(spec) if es is None else es
    dt = t_max / grid
    times = dt * np.arange(1, grid + 1)
    coarse = _scan_residuals(es, times)

    def residual_at(t):
        return mirror_residual(propagator(es, t).entries)[0]

    spread = float(es.energies[-1] - es.energies[0])
    threshold = max(spread * dt, 10 * tol)
    padded = np.concatenate(([np.inf], coarse, [np.inf]))
    is_min = (padded[1:-1] <= padded[:-2]) & (padded[1:-1] <= padded[2:])
    candidates = np.flatnonzero(is_min & (coarse <= threshold))

    def refine(j):
        lo = max(times[j] - 2 * dt, 0.0)
        hi = min(times[j] + 2 * dt, t_max)
        t = _golden_section(residual_at, lo, hi, xtol=4 * np.finfo(float).eps * max(1.0, hi))
        r, phase = mirror_residual(propagator(es, t).entries)
        return t, r, phase

    for j in candidates:
        t, r, phase = refine(j)
        if r <= tol:
            return MirrorReport(float(t), phase, r, True)
    t, r, phase = refine(int(np.argmin(coarse)))
    return MirrorReport(float(t), phase, r, r <= tol)


def mirror_report_at(spec: ChainSpec, t: float, tol: float = MIRROR_TOL,
                     es: Optional[Eigensystem] = None) -> MirrorReport:
    """Mirror residual at a fixed time, e.g. a family's predicted period."""
    es = numeric_eigensystem(spec) if es is None else es
    r, phase = mirror_residual(propagator(es, t).entries)
    return MirrorReport(float(t), phase, r, r <= tol)
