"""Site permutations generated by mirror inversions of contiguous segments.

A reversal plan is a list of segments ``(start, end)``; each step mirrors
the qubits in ``start..end`` about the segment centre.  Physically a step
is realised by switching on an engineered chain on the segment only (all
other couplings and fields zero) and evolving for its mirror time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .chains import HAHN, KRAWTCHOUK, ChainSpec, custom_chain, hahn_chain, krawtchouk_chain
from .many_body import bit_reverse, full_register_hamiltonian, full_register_propagator
from .single_particle import find_mirror_time, mirror_report_at

MAX_SEGMENT_SITES = 10
MAX_PLAN_SITES = 8
CONCENTRATION_TOL = 1e-6


@dataclass(frozen=True)
class SitePermutation:
    """``mapping[i]`` is the destination site of the qubit starting at site ``i``."""

    mapping: tuple

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError(f"{list(self.mapping)} is not a permutation of 0..{len(mapping) - 1}")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def from_arrangement(cls, arrangement: Sequence[int]) -> "SitePermutation":
        """Build from the final order: ``arrangement[pos]`` is the qubit that ends at ``pos``."""
        arrangement = [int(x) for x in arrangement]
        if sorted(arrangement) != list(range(len(arrangement))):
            raise ValueError(f"{arrangement} is not a permutation of 0..{len(arrangement) - 1}")
        mapping = [0] * len(arrangement)
        for pos, qubit in enumerate(arrangement):
            mapping[qubit] = pos
        return cls(tuple(mapping))

    @property
    def n_sites(self) -> int:
        return len(self.mapping)

    @property
    def arrangement(self) -> tuple:
        out = [0] * self.n_sites
        for qubit, pos in enumerate(self.mapping):
            out[pos] = qubit
        return tuple(out)

    def apply_to_code(self, code: int) -> int:
        """Move bit ``i`` of a register index to bit ``mapping[i]``."""
        return sum(((code >> i) & 1) << dest for i, dest in enumerate(self.mapping))


@dataclass(frozen=True)
class ReversalPlan:
    n_sites: int
    steps: tuple = field(default_factory=tuple)

    def __post_init__(self):
        steps = tuple((int(a), int(b)) for a, b in self.steps)
        for a, b in steps:
            if not 0 <= a < b < self.n_sites:
                raise ValueError(f"segment ({a}, {b}) invalid for {self.n_sites} sites")
        object.__setattr__(self, "steps", steps)

    def to_dict(self) -> dict:
        return {"n_sites": self.n_sites, "steps": [list(s) for s in self.steps]}

    @classmethod
    def from_dict(cls, d: dict) -> "ReversalPlan":
        return cls(int(d["n_sites"]), tuple(tuple(s) for s in d["steps"]))

    def permutation(self) -> SitePermutation:
        """Net site permutation of the plan, by index arithmetic only."""
        pos = list(range(self.n_sites))
        for a, b in self.steps:
            pos = [a + b - p if a <= p <= b else p for p in pos]
        return SitePermutation(tuple(pos))


def plan_reversals(target: SitePermutation) -> ReversalPlan:
    """Selection-by-reversal: fix positions left to right, at most ``N`` steps."""
    goal = target.arrangement
    current = list(range(target.n_sites))
    steps = []
    for i in range(target.n_sites - 1):
        j = current.index(goal[i])
        if j > i:
            steps.append((i, j))
            current[i:j + 1] = current[i:j + 1][::-1]
    return ReversalPlan(target.n_sites, tuple(steps))


def random_permutation(n_sites: int, seed: Optional[int] = None) -> SitePermutation:
    rng = np.random.default_rng(seed)
    return SitePermutation(tuple(int(x) for x in rng.permutation(n_sites)))


def segment_chain(N: int, segment: tuple, family: str = KRAWTCHOUK,
                  p: int = 0, q: int = 1) -> tuple[ChainSpec, ChainSpec]:
    """Register-wide chain with an engineered segment and everything else switched off.

    Returns ``(register_chain, segment_only_chain)``.
    """
    start, end = (int(x) for x in segment)
    if not 0 <= start < end <= N:
        raise ValueError(f"segment {segment} invalid for sites 0..{N}")
    n = end - start
    if family == KRAWTCHOUK:
        local = krawtchouk_chain(n)
    elif family == HAHN:
        local = hahn_chain(n, p, q)
    else:
        raise ValueError(f"unsupported segment family {family!r}")
    J = np.zeros(N)
    h = np.zeros(N + 1)
    J[start:end] = local.couplings
    h[start:end + 1] = local.fields
    return custom_chain(J, h), local


def segment_mirror_time(local: ChainSpec) -> float:
    """Certified mirror time of a segment chain.

    Uses the family's predicted period when it certifies, otherwise the
    earliest time found numerically.
    """
    if local.predicted_period is not None:
        rep = mirror_report_at(local, local.predicted_period)
        if rep.found:
            return rep.mirror_time
    rep = find_mirror_time(local, t_max=4.0 if local.predicted_period is None
                           else 1.1 * local.predicted_period, grid=4000)
    if not rep.found:
        raise RuntimeError(f"segment chain has no mirror time (residual {rep.residual:.3g})")
    return rep.mirror_time


def segment_mirror_unitary(N: int, segment: tuple, family: str = KRAWTCHOUK,
                           p: int = 0, q: int = 1) -> np.ndarray:
    """Full-register unitary mirroring the qubits of ``segment`` (phases included)."""
    if N + 1 > MAX_SEGMENT_SITES:
        raise ValueError(f"{N + 1} sites exceeds the segment limit of {MAX_SEGMENT_SITES}")
    start, end = (int(x) for x in segment)
    return _segment_unitary(int(N), (start, end), family, int(p), int(q)).copy()


@lru_cache(maxsize=256)
def _segment_unitary(N, segment, family, p, q) -> np.ndarray:
    register, local = segment_chain(N, segment, family, p, q)
    T = segment_mirror_time(local)
    return full_register_propagator(full_register_hamiltonian(register), T)


@dataclass(frozen=True)
class PlanVerification:
    """Composite of a plan's segment unitaries checked on every basis state.

    ``phases[b]`` is the phase carried by basis state ``b`` onto its
    permuted image; ``min_target_modulus`` the weakest concentration.
    """

    n_sites: int
    steps: tuple
    mapping: tuple
    min_target_modulus: float
    phases: np.ndarray
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n_sites": self.n_sites,
            "steps": [list(s) for s in self.steps],
            "mapping": list(self.mapping),
            "min_target_modulus": self.min_target_modulus,
            "phases": [{"state": b, "re": float(z.real), "im": float(z.imag)}
                       for b, z in enumerate(self.phases)],
            "pass": self.passed,
        }


def composite_unitary(plan: ReversalPlan, family: str = KRAWTCHOUK,
                      p: int = 0, q: int = 1) -> np.ndarray:
    N = plan.n_sites - 1
    U = np.eye(1 << plan.n_sites, dtype=complex)
    for step in plan.steps:
        U = _segment_unitary(N, step, family, p, q) @ U
    return U


def simulate_plan(N: int, plan: ReversalPlan, family: str = KRAWTCHOUK,
                  p: int = 0, q: int = 1, tol: float = CONCENTRATION_TOL) -> PlanVerification:
    """Multiply the plan's segment unitaries and check the permutation action."""
    if N + 1 > MAX_PLAN_SITES:
        raise ValueError(f"{N + 1} sites exceeds the plan-simulation limit of {MAX_PLAN_SITES}")
    if plan.n_sites != N + 1:
        raise ValueError("plan and register sizes differ")
    U = composite_unitary(plan, family, p, q)
    perm = plan.permutation()
    codes = np.arange(1 << plan.n_sites)
    targets = np.array([perm.apply_to_code(int(b)) for b in codes])
    landed = U[targets, codes]
    mods = np.abs(landed)
    phases = landed / np.where(mods > 0, mods, 1.0)
    min_mod = float(mods.min())
    return PlanVerification(plan.n_sites, plan.steps, perm.mapping, min_mod, phases,
                            min_mod >= 1 - tol)


def is_phased_permutation(U: np.ndarray, tol: float = CONCENTRATION_TOL) -> bool:
    """Every row and column holds exactly one entry of modulus >= 1 - tol, the rest <= tol."""
    mag = np.abs(U)
    big = mag >= 1 - tol
    small = mag <= tol
    return bool(np.all(big | small) and np.all(big.sum(axis=0) == 1) and np.all(big.sum(axis=1) == 1))


def whole_chain_mirror_map(n_sites: int) -> np.ndarray:
    """Register index permutation of a full mirror (``b -> rev(b)``)."""
    return bit_reverse(np.arange(1 << n_sites), n_sites)
