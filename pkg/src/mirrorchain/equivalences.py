"""Identifications of the engineered chains with angular-momentum Hamiltonians.

* Krawtchouk chain of ``N + 1`` sites == ``2 s_x`` for spin ``s = N/2``,
  with ``|l>`` identified with ``|m = s - l>``.
* Hahn chain with ``N = 2S`` and ``alpha = L - S`` == ``2 L.S`` on the
  ``M_L + M_S = 0`` block, up to a constant shift, with ``M_S = S - l``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .chains import hahn_chain, krawtchouk_chain, single_particle_matrix

EXACT_TOL = 1e-12


@dataclass(frozen=True)
class EquivalenceReport:
    """Entrywise comparison ``lhs`` vs ``scale * chain + shift * I``.

    ``shift_spread`` is the spread of the per-diagonal shifts; it is zero
    when a single constant shift suffices.
    """

    max_entry_difference: float
    scale: float
    shift: float
    shift_spread: float
    passed: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _twice(x, what: str) -> int:
    two = 2 * float(x)
    n = round(two)
    if abs(two - n) > 1e-12 or n < 0:
        raise ValueError(f"{what} = {x} is not a nonnegative multiple of 1/2")
    return int(n)


def spin_x_matrix(s) -> np.ndarray:
    """``2 s_x`` over ``|m>``, ``m = s, s-1, ..., -s``.

    ``H|m> = R(m)|m-1> + L(m)|m+1>`` with
    ``R(m) = sqrt(s(s+1) - m(m-1))`` and ``L(m) = sqrt(s(s+1) - m(m+1))``.
    """
    two_s = _twice(s, "s")
    s = two_s / 2
    dim = two_s + 1
    ms = s - np.arange(dim)
    H = np.zeros((dim, dim))
    for i, m in enumerate(ms):
        if i + 1 < dim:
            H[i + 1, i] = math.sqrt(s * (s + 1) - m * (m - 1))
        if i > 0:
            H[i - 1, i] = math.sqrt(s * (s + 1) - m * (m + 1))
    return H


def verify_krawtchouk_spin_equivalence(N: int, tol: float = EXACT_TOL) -> EquivalenceReport:
    """Compare ``2 s_x`` (``s = N/2``) with the Krawtchouk chain matrix."""
    chain = single_particle_matrix(krawtchouk_chain(N)).to_dense()
    spin = spin_x_matrix(Fraction(N, 2))
    diff = float(np.max(np.abs(spin - chain)))
    return EquivalenceReport(diff, 1.0, 0.0, 0.0, diff <= tol)


def ls_block_matrix(L, S) -> np.ndarray:
    """``L.S`` restricted to ``M_L + M_S = 0``, basis ``M_S = S, S-1, ..., -S``.

    ``D(M_S) = -M_S**2``;
    ``R(M_S) = 1/2 sqrt((L+M_S)(L-M_S+1)) sqrt((S+M_S)(S-M_S+1))`` couples
    to ``M_S - 1`` and ``L(M_S)`` (``M_S -> -M_S`` in both roots) to
    ``M_S + 1``.
    """
    two_l, two_s = _twice(L, "L"), _twice(S, "S")
    L, S = two_l / 2, two_s / 2
    if S >= L:
        raise ValueError(f"S = {S} must be smaller than L = {L}")
    dim = two_s + 1
    ms = S - np.arange(dim)
    H = np.diag(-ms**2)
    for i, m in enumerate(ms):
        if i + 1 < dim:
            H[i + 1, i] = 0.5 * math.sqrt((L + m) * (L - m + 1)) * math.sqrt((S + m) * (S - m + 1))
        if i > 0:
            H[i - 1, i] = 0.5 * math.sqrt((L - m) * (L + m + 1)) * math.sqrt((S - m) * (S + m + 1))
    return H


def ls_parameters(L, S) -> tuple[int, int]:
    """Chain size ``N = 2S`` and Hahn ``p`` with ``alpha = L - S = (2p+1)/2``.

    Only the ``q = 1`` regime is covered: ``S`` odd-half-integer and
    ``L - S`` a positive half-integer.
    """
    two_l, two_s = _twice(L, "L"), _twice(S, "S")
    if two_s % 2 != 1:
        raise ValueError(f"S = {two_s}/2 must be a half-integer")
    if two_s >= two_l:
        raise ValueError("S must be smaller than L")
    two_alpha = two_l - two_s
    if two_alpha % 2 != 1:
        raise ValueError(f"alpha = L - S = {two_alpha}/2 is not a half-integer")
    return two_s, (two_alpha - 1) // 2


def verify_hahn_ls_equivalence(L, S, tol: float = EXACT_TOL) -> EquivalenceReport:
    """Fit ``ls_block_matrix(L, S) = 1/2 * HahnMatrix + c * I``.

    ``c`` is the mean of ``D_ii - h_i / 2``; its spread across the
    diagonal is reported and enters the pass criterion.
    """
    N, p = ls_parameters(L, S)
    ls = ls_block_matrix(L, S)
    chain = single_particle_matrix(hahn_chain(N, p, 1)).to_dense()
    shifts = np.diag(ls) - 0.5 * np.diag(chain)
    c = float(np.mean(shifts))
    spread = float(np.max(shifts) - np.min(shifts))
    diff = float(np.max(np.abs(ls - (0.5 * chain + c * np.eye(N + 1)))))
    return EquivalenceReport(diff, 0.5, c, spread, diff <= tol and spread <= tol)


def ls_eigenvalues_expected(L, S) -> np.ndarray:
    """``(J(J+1) - L(L+1) - S(S+1)) / 2`` for ``J = L+S, ..., L-S``, ascending."""
    L, S = _twice(L, "L") / 2, _twice(S, "S") / 2
    Js = L + S - np.arange(int(round(2 * S)) + 1)
    return np.sort((Js * (Js + 1) - L * (L + 1) - S * (S + 1)) / 2)
