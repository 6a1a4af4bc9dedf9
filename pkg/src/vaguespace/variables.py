"""Vague variables, membership-degree CDFs and balanced values.

A vague variable labels each elementary attribute with a finite real and
implicitly sends top to +inf and bottom to -inf.  Its CDF at ``t`` folds
the degrees of every attribute labelled ``<= t`` under the t-conorm, with
M(bottom) = 0 always included and M(top) = 1 entering only at ``t = +inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from . import settings
from .errors import DomainError, InvalidSpaceError, UnknownAttributeError
from .space import MembershipSpace, consistent_degree

INF = math.inf


@dataclass(frozen=True, eq=False)
class VagueVariable:
    name: str
    values: Mapping[str, float]

    def __post_init__(self):
        table = {}
        for key, v in self.values.items():
            v = float(v)
            if not math.isfinite(v):
                raise DomainError(f"variable {self.name!r}: value for {key!r} must be finite")
            table[key] = v
        object.__setattr__(self, "values", MappingProxyType(table))

    def __eq__(self, other):
        if not isinstance(other, VagueVariable):
            return NotImplemented
        return self.name == other.name and dict(self.values) == dict(other.values)

    def check_total(self, space: MembershipSpace) -> None:
        for p in space.omega:
            if p not in self.values:
                raise DomainError(f"variable {self.name!r} has no value for {p!r}")
        extra = set(self.values) - set(space.omega.names)
        if extra:
            raise UnknownAttributeError(sorted(extra)[0])


@dataclass(frozen=True)
class VagueVector:
    components: tuple[VagueVariable, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise DomainError("a vague vector needs at least one component")
        keys = set(self.components[0].values)
        for comp in self.components[1:]:
            if set(comp.values) != keys:
                raise DomainError("vague vector components must share one attribute set")

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class CdfCurve:
    """Right-continuous step function given by its breakpoints.

    ``thresholds`` starts at -inf and ends at +inf; ``degrees`` is the CDF
    value at each threshold.
    """

    thresholds: tuple[float, ...]
    degrees: tuple[float, ...]

    def __call__(self, t: float) -> float:
        i = int(np.searchsorted(self.thresholds, t, side="right")) - 1
        return self.degrees[max(i, 0)]

    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.thresholds, self.degrees))


def _fold_sublevel(space: MembershipSpace, members: Sequence[str], include_top: bool) -> float:
    if include_top:
        # 1 absorbs under every t-conorm; folding it in would only add rounding
        return 1.0
    # bottom always qualifies and contributes the neutral 0
    return space.algebra.fold_or([0.0] + [space.degrees[p] for p in members])


def cdf(space: MembershipSpace, X: VagueVariable, t: float) -> float:
    X.check_total(space)
    t = float(t)
    if math.isnan(t):
        raise DomainError("threshold must not be NaN")
    members = [p for p in space.omega if X.values[p] <= t]
    return _fold_sublevel(space, members, t == INF)


def cdf_curve(space: MembershipSpace, X: VagueVariable) -> CdfCurve:
    X.check_total(space)
    thresholds = [-INF, *sorted(set(X.values[p] for p in space.omega)), INF]
    return CdfCurve(tuple(thresholds), tuple(cdf(space, X, t) for t in thresholds))


def joint_cdf(space: MembershipSpace, Xvec: VagueVector, ts: Sequence[float]) -> float:
    if len(ts) != len(Xvec):
        raise DomainError(f"expected {len(Xvec)} thresholds, got {len(ts)}")
    for X in Xvec.components:
        X.check_total(space)
    ts = [float(t) for t in ts]
    members = [p for p in space.omega if all(X.values[p] <= t for X, t in zip(Xvec.components, ts))]
    return _fold_sublevel(space, members, all(t == INF for t in ts))


def marginal_cdf(space: MembershipSpace, Xvec: VagueVector, i: int) -> CdfCurve:
    """CDF curve of component ``i``, counted from 1."""
    if not 1 <= i <= len(Xvec):
        raise DomainError(f"component index {i} out of range 1..{len(Xvec)}")
    return cdf_curve(space, Xvec.components[i - 1])


def balanced_value(space: MembershipSpace, X: VagueVariable) -> float:
    """Degree-weighted mean of X over the elementary attributes."""
    X.check_total(space)
    names = space.omega.names
    weights = [space.degrees[p] for p in names]
    denom = math.fsum(weights)
    if denom <= 0.0:
        raise InvalidSpaceError("all elementary degrees are zero; the balanced value is undefined")
    return math.fsum(X.values[p] * w for p, w in zip(names, weights)) / denom


@dataclass(frozen=True)
class Breakpoint:
    threshold: float
    value: float
    left_limit: float
    right_continuous: bool
    left_continuous: bool


@dataclass(frozen=True)
class CdfTheoremReport:
    nondecreasing: bool
    limit_minus_inf: float
    limit_plus_inf: float
    finite_supremum: float
    consistent_degree: float
    breakpoints: tuple[Breakpoint, ...]

    @property
    def limits_ok(self) -> bool:
        return self.limit_minus_inf == 0.0 and self.limit_plus_inf == 1.0

    @property
    def right_continuous(self) -> bool:
        return all(b.right_continuous for b in self.breakpoints)

    @property
    def left_continuous(self) -> bool:
        return all(b.left_continuous for b in self.breakpoints)


def check_cdf_theorem(
    space: MembershipSpace, X: VagueVariable, probes: Sequence[float] = (), tol: float | None = None
) -> CdfTheoremReport:
    """Monotonicity over probes and breakpoints, limits at +-inf, and one-sided continuity.

    At a finite breakpoint v the left limit is the fold over {X < v} and the
    right limit is F at the next float above v.  Both are reported without
    asserting either.
    """
    tol = settings.resolve(tol)
    X.check_total(space)
    curve = cdf_curve(space, X)
    ts = sorted(set(curve.thresholds) | {float(t) for t in probes})
    vals = [cdf(space, X, t) for t in ts]
    nondecreasing = all(b >= a - tol for a, b in zip(vals, vals[1:]))
    finite = [v for v in curve.thresholds if math.isfinite(v)]
    sup_finite = cdf(space, X, finite[-1]) if finite else 0.0
    bps = []
    for v, fv in zip(curve.thresholds[1:-1], curve.degrees[1:-1]):
        below = [p for p in space.omega if X.values[p] < v]
        left = _fold_sublevel(space, below, False)
        right = cdf(space, X, math.nextafter(v, INF))
        bps.append(Breakpoint(v, fv, left, abs(right - fv) <= tol, abs(left - fv) <= tol))
    return CdfTheoremReport(
        nondecreasing,
        cdf(space, X, -INF),
        cdf(space, X, INF),
        sup_finite,
        consistent_degree(space),
        tuple(bps),
    )
