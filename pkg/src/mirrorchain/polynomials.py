"""Krawtchouk and Hahn polynomials and the closed-form chain eigenfunctions.

The engineered chains diagonalise in closed form:

    phi_k(l) = c_k * sqrt(w(l)) * P_k(l),   k, l = 0..N

where ``P_k`` is a Krawtchouk polynomial ``K_k(l; 1/2, N)`` or a
symmetric Hahn polynomial ``Q_k(l; alpha, alpha, N)``, ``w`` is the
orthogonality weight and ``c_k`` the normalisation constant.

The polynomials are terminating hypergeometric series.  In double
precision the series loses several digits to cancellation once N
reaches ~20, so it is summed exactly in rational arithmetic from the
(exact binary) float parameters and rounded once.  The three-term
recurrence in ``k`` is kept as an independent double-precision route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence

import numpy as np
from scipy.special import gammaln

from .chains import HAHN, KRAWTCHOUK, ChainSpec


def pochhammer(x, k: int):
    """Rising factorial ``x (x+1) ... (x+k-1)``; ``(x)_0 = 1``.

    Works for floats, ints and :class:`fractions.Fraction` alike.
    """
    if k < 0 or int(k) != k:
        raise ValueError("k must be a nonnegative integer")
    out = 1
    for j in range(int(k)):
        out = out * (x + j)
    return out


def _exact(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(float(x))


def terminating_hypergeometric(upper: Sequence, lower: Sequence, z) -> float:
    """Sum a generalized hypergeometric series that terminates.

    The series must terminate through a nonpositive integer upper
    parameter before any lower parameter produces a zero denominator.
    Summation is exact (rational); the result is rounded once to float.
    """
    upper = [_exact(a) for a in upper]
    lower = [_exact(b) for b in lower]
    z = _exact(z)
    if not any(a.denominator == 1 and a <= 0 for a in upper):
        raise ValueError("series does not terminate: no nonpositive integer upper parameter")
    total = Fraction(0)
    term = Fraction(1)
    j = 0
    while True:
        total += term
        num = Fraction(1)
        for a in upper:
            num *= a + j
        if num == 0:
            break
        den = Fraction(j + 1)
        for b in lower:
            den *= b + j
        if den == 0:
            raise ZeroDivisionError("lower parameter hit zero before the series terminated")
        term = term * num * z / den
        j += 1
    return float(total)


def _check_indices(k, ell, N):
    if not (0 <= k <= N and 0 <= ell <= N):
        raise ValueError(f"indices k={k}, l={ell} must lie in 0..{N}")


def _check_alpha(alpha):
    if not alpha > -0.5:
        raise ValueError(f"alpha = {alpha} must exceed -1/2")


def krawtchouk_K(k: int, ell: int, N: int, p=Fraction(1, 2)) -> float:
    """``K_k(l; p, N) = 2F1(-k, -l; -N; 1/p)``."""
    _check_indices(k, ell, N)
    return terminating_hypergeometric([-k, -ell], [-N], 1 / _exact(p))


def hahn_Q(k: int, ell: int, alpha, N: int, beta=None) -> float:
    """``Q_k(l; alpha, beta, N) = 3F2(-k, k+alpha+beta+1, -l; alpha+1, -N; 1)``.

    ``beta`` defaults to ``alpha``, the only case the chains use.
    """
    _check_indices(k, ell, N)
    _check_alpha(alpha)
    a = _exact(alpha)
    b = a if beta is None else _exact(beta)
    return terminating_hypergeometric([-k, k + a + b + 1, -ell], [a + 1, -N], 1)


def krawtchouk_recurrence(ell: float, N: int) -> np.ndarray:
    """``K_0(l) .. K_N(l)`` at p = 1/2 from the three-term recurrence in k."""
    K = np.zeros(N + 1)
    K[0] = 1.0
    for n in range(N):
        prev = n * K[n - 1] if n > 0 else 0.0
        K[n + 1] = ((N - 2.0 * ell) * K[n] - prev) / (N - n)
    return K


def hahn_recurrence(ell: float, alpha: float, N: int) -> np.ndarray:
    """``Q_0(l) .. Q_N(l)`` (beta = alpha) from the three-term recurrence in k."""
    _check_alpha(alpha)
    a = b = float(alpha)
    Q = np.zeros(N + 1)
    Q[0] = 1.0
    for n in range(N):
        A = (n + a + b + 1) * (n + a + 1) * (N - n) / ((2 * n + a + b + 1) * (2 * n + a + b + 2))
        if n == 0:
            C, prev = 0.0, 0.0
        else:
            C = n * (n + a + b + N + 1) * (n + b) / ((2 * n + a + b) * (2 * n + a + b + 1))
            prev = C * Q[n - 1]
        Q[n + 1] = ((A + C - ell) * Q[n] - prev) / A
    return Q


def krawtchouk_weights(N: int) -> np.ndarray:
    """``w(l) = binom(N, l) / 2**N``."""
    return np.array([math.comb(N, ell) / 2.0**N for ell in range(N + 1)])


def krawtchouk_norm_constants(N: int) -> np.ndarray:
    """``c_k = sqrt(binom(N, k))``.

    Equal to ``sqrt((-N)_k / ((-1)^k k!))`` because
    ``(-N)_k = (-1)^k N! / (N-k)!``; the positive form avoids a signed
    radicand.
    """
    return np.sqrt([float(math.comb(N, k)) for k in range(N + 1)])


def generalized_binomial(x, y):
    """``Gamma(x+1) / (Gamma(x-y+1) Gamma(y+1))`` via log-gamma (positive arguments)."""
    return np.exp(gammaln(np.add(x, 1)) - gammaln(np.subtract(x, y) + 1) - gammaln(np.add(y, 1)))


def hahn_weights(alpha: float, N: int) -> np.ndarray:
    """``w(l) = binom(alpha + l, l) * binom(alpha + N - l, N - l)``."""
    _check_alpha(alpha)
    ell = np.arange(N + 1, dtype=float)
    return generalized_binomial(alpha + ell, ell) * generalized_binomial(alpha + N - ell, N - ell)


def hahn_norm_constants(alpha: float, N: int) -> np.ndarray:
    """``c_k = sqrt((2k+2a+1) (N!)^2 / ((k+2a+1)_{N+1} k! (N-k)!))``, in log space."""
    _check_alpha(alpha)
    k = np.arange(N + 1, dtype=float)
    log_poch = gammaln(k + 2 * alpha + 1 + N + 1) - gammaln(k + 2 * alpha + 1)
    log_c2 = (np.log(2 * k + 2 * alpha + 1) + 2 * gammaln(N + 1.0)
              - log_poch - gammaln(k + 1) - gammaln(N - k + 1))
    return np.exp(0.5 * log_c2)


def normalize_row_signs(vectors: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Flip rows so that the first entry above ``atol`` in magnitude is positive."""
    out = np.array(vectors, dtype=float, copy=True)
    for row in out:
        nz = np.flatnonzero(np.abs(row) > atol)
        if nz.size and row[nz[0]] < 0:
            row *= -1
    return out


@dataclass(frozen=True)
class EigenfunctionTable:
    """Closed-form eigenfunctions ``values[k, l] = phi_k(l)``.

    ``values`` follow the polynomial formula literally, so they obey the
    polynomial reflection law ``phi_k(N-l) = (-1)^k phi_k(l)``.
    ``site_signs`` is the diagonal gauge that turns those rows into
    eigenvectors of the single-particle matrix with positive couplings:
    all ones for Krawtchouk, ``(-1)^l`` for Hahn (whose difference
    operator has negative off-diagonal entries).
    """

    values: np.ndarray
    family: str
    alpha: Optional[float]
    site_signs: np.ndarray
    energies: Optional[np.ndarray] = None

    @property
    def N(self) -> int:
        return self.values.shape[0] - 1

    @property
    def eigenvectors(self) -> np.ndarray:
        """Rows are eigenvectors of the chain matrix, first nonzero entry positive."""
        return normalize_row_signs(self.values * self.site_signs[None, :])

    def reflection_error(self) -> float:
        """``max |phi_k(N-l) - (-1)^k phi_k(l)|`` over the table."""
        parity = (-1.0) ** np.arange(self.N + 1)
        return float(np.max(np.abs(self.values[:, ::-1] - parity[:, None] * self.values)))

    def gram_error(self) -> float:
        g = self.values @ self.values.T
        return float(np.max(np.abs(g - np.eye(self.N + 1))))


def krawtchouk_table(N: int) -> np.ndarray:
    K = np.array([[krawtchouk_K(k, ell, N) for ell in range(N + 1)] for k in range(N + 1)])
    return krawtchouk_norm_constants(N)[:, None] * np.sqrt(krawtchouk_weights(N))[None, :] * K


def hahn_table(alpha, N: int) -> np.ndarray:
    Q = np.array([[hahn_Q(k, ell, alpha, N) for ell in range(N + 1)] for k in range(N + 1)])
    a = float(alpha)
    return hahn_norm_constants(a, N)[:, None] * np.sqrt(hahn_weights(a, N))[None, :] * Q


def analytic_eigensystem(spec: ChainSpec) -> EigenfunctionTable:
    """Closed-form eigenfunction table of a Krawtchouk or Hahn chain."""
    N = spec.N
    kind = spec.family.kind
    if kind == KRAWTCHOUK:
        return EigenfunctionTable(
            values=krawtchouk_table(N), family=kind, alpha=None,
            site_signs=np.ones(N + 1),
        )
    if kind == HAHN:
        alpha = Fraction(2 * spec.family.p + 1, 2 * spec.family.q)
        k = np.arange(N + 1, dtype=float)
        a = float(alpha)
        return EigenfunctionTable(
            values=hahn_table(alpha, N), family=kind, alpha=a,
            site_signs=(-1.0) ** np.arange(N + 1),
            energies=k * (k + 2 * a + 1),
        )
    raise ValueError(f"no closed-form eigensystem for family {kind!r}")
