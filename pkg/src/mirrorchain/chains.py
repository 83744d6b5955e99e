"""Chain specifications for engineered XY spin chains.

A chain of ``N + 1`` sites is fixed by its nearest-neighbour couplings
``J[0..N-1]`` and on-site fields ``h[0..N]``.  In the single-excitation
sector the Hamiltonian is the real symmetric tridiagonal matrix with
``h`` on the diagonal and ``J`` on the off-diagonals.

Two engineered families are provided:

* Krawtchouk chain: ``J_l = sqrt((l+1)(N-l))``, ``h_l = 0``.
* Hahn chain: with ``alpha = (2p+1)/(2q)``,
  ``J_l = sqrt((l+1)(N-l)(alpha+N-l)(alpha+l+1))`` and
  ``h_l = N**2/2 + (alpha+1)N - 2(l - N/2)**2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

KRAWTCHOUK = "krawtchouk"
HAHN = "hahn"
CUSTOM = "custom"


@dataclass(frozen=True)
class Family:
    """Family tag of a chain; ``p`` and ``q`` are only set for Hahn chains."""

    kind: str
    p: Optional[int] = None
    q: Optional[int] = None

    @property
    def alpha(self) -> Optional[float]:
        if self.kind != HAHN:
            return None
        return (2 * self.p + 1) / (2 * self.q)

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == HAHN:
            d["p"] = self.p
            d["q"] = self.q
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Family":
        kind = d["kind"]
        if kind not in (KRAWTCHOUK, HAHN, CUSTOM):
            raise ValueError(f"unknown chain family {kind!r}")
        if kind == HAHN:
            return cls(kind, int(d["p"]), int(d["q"]))
        return cls(kind)


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ChainSpec:
    """Couplings, fields and family metadata of an ``N + 1`` site chain.

    Attributes
    ----------
    couplings : ndarray, shape (N,)
        Nearest-neighbour couplings ``J_l``.
    fields : ndarray, shape (N + 1,)
        On-site (Zeeman) energies ``h_l``.
    family : Family
        Which construction produced the chain.
    predicted_period : float or None
        Mirror time claimed by the construction, if any.  ``None`` means
        the period has to be found numerically
        (see :func:`mirrorchain.single_particle.find_mirror_time`).
    """

    couplings: np.ndarray
    fields: np.ndarray
    family: Family = field(default_factory=lambda: Family(CUSTOM))
    predicted_period: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "couplings", _frozen(self.couplings))
        object.__setattr__(self, "fields", _frozen(self.fields))
        if self.couplings.ndim != 1 or self.fields.ndim != 1:
            raise ValueError("couplings and fields must be one-dimensional")
        if self.couplings.size == 0:
            raise ValueError("a chain needs at least one coupling (N >= 1)")
        if self.fields.size != self.couplings.size + 1:
            raise ValueError(
                f"expected {self.couplings.size + 1} fields for "
                f"{self.couplings.size} couplings, got {self.fields.size}"
            )
        if not (np.all(np.isfinite(self.couplings)) and np.all(np.isfinite(self.fields))):
            raise ValueError("couplings and fields must be finite")
        if self.family.kind != CUSTOM:
            if np.any(self.couplings <= 0):
                raise ValueError(f"{self.family.kind} couplings must be strictly positive")
            if not self.is_mirror_symmetric:
                raise ValueError(f"{self.family.kind} chain is not mirror symmetric")

    @property
    def n_sites(self) -> int:
        return self.fields.size

    @property
    def N(self) -> int:
        """Index of the last site."""
        return self.couplings.size

    @property
    def alpha(self) -> Optional[float]:
        return self.family.alpha

    @property
    def is_mirror_symmetric(self) -> bool:
        return bool(
            np.array_equal(self.couplings, self.couplings[::-1])
            and np.array_equal(self.fields, self.fields[::-1])
        )

    def to_dict(self) -> dict:
        return {
            "n_sites": self.n_sites,
            "couplings": [float(x) for x in self.couplings],
            "fields": [float(x) for x in self.fields],
            "family": self.family.to_dict(),
            "predicted_period": self.predicted_period,
        }

    def to_json(self, **kwargs) -> str:
        # float repr is the shortest string that round-trips exactly
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict) -> "ChainSpec":
        spec = cls(
            couplings=d["couplings"],
            fields=d["fields"],
            family=Family.from_dict(d.get("family", {"kind": CUSTOM})),
            predicted_period=d.get("predicted_period"),
        )
        if "n_sites" in d and int(d["n_sites"]) != spec.n_sites:
            raise ValueError("n_sites does not match the coupling/field arrays")
        return spec

    @classmethod
    def from_json(cls, text: str) -> "ChainSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SymmetricTridiagonal:
    """Real symmetric tridiagonal matrix stored by its two bands."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "diagonal", _frozen(self.diagonal))
        object.__setattr__(self, "off_diagonal", _frozen(self.off_diagonal))
        if self.off_diagonal.size != self.diagonal.size - 1:
            raise ValueError("off-diagonal must be one shorter than the diagonal")

    @property
    def size(self) -> int:
        return self.diagonal.size

    def to_dense(self) -> np.ndarray:
        return (
            np.diag(self.diagonal)
            + np.diag(self.off_diagonal, 1)
            + np.diag(self.off_diagonal, -1)
        )

    def max_abs(self) -> float:
        """Largest entry magnitude, used to scale tolerances."""
        return float(max(np.max(np.abs(self.diagonal)),
                         np.max(np.abs(self.off_diagonal), initial=0.0)))


def krawtchouk_chain(N: int) -> ChainSpec:
    """Chain whose single-particle eigenvectors are Krawtchouk functions.

    The period is deliberately left unset: with these couplings the
    spectrum is ``{2k - N}`` and the mirror time is found numerically.
    """
    N = _check_count(N)
    ell = np.arange(N)
    J = np.sqrt((ell + 1.0) * (N - ell))
    return ChainSpec(J, np.zeros(N + 1), Family(KRAWTCHOUK), None)


def hahn_chain(N: int, p: int, q: int) -> ChainSpec:
    """Chain with quadratic spectrum ``k(k + 2 alpha + 1)`` and period ``q pi``."""
    N = _check_count(N)
    if int(q) != q or int(p) != p:
        raise ValueError("p and q must be integers")
    p, q = int(p), int(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    alpha = (2 * p + 1) / (2 * q)
    if alpha <= -0.5:
        raise ValueError(f"alpha = {alpha} must exceed -1/2 for positive couplings")
    ell = np.arange(N, dtype=float)
    left, right = ell + 1, N - ell
    # pairwise grouping keeps J_l and J_{N-1-l} bitwise identical
    J = np.sqrt((left * right) * ((alpha + right) * (alpha + left)))
    sites = np.arange(N + 1, dtype=float)
    h = N * N / 2 + (alpha + 1) * N - 2 * (sites - N / 2) ** 2
    return ChainSpec(J, h, Family(HAHN, p, q), abs(q) * math.pi)


def custom_chain(J, h) -> ChainSpec:
    """Arbitrary nearest-neighbour chain.  Mirror symmetry is reported, not enforced."""
    return ChainSpec(J, h, Family(CUSTOM), None)


def single_particle_matrix(spec: ChainSpec) -> SymmetricTridiagonal:
    return SymmetricTridiagonal(spec.fields.copy(), spec.couplings.copy())


def _check_count(N) -> int:
    if int(N) != N:
        raise ValueError("N must be an integer")
    N = int(N)
    if N < 1:
        raise ValueError("N must be at least 1 (a chain needs one coupling)")
    return N
