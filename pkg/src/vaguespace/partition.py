"""Vague partitions over a sampled universe and the fuzzy sets they generate.

The universe is a finite, ordered list of sample points; every quantifier
over x ranges over those samples only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from . import settings
from .algebra import AlgebraTriple
from .errors import DomainError, UnknownAttributeError
from .expr import And, AttributeExpr, ElementaryAttributeSet, validate
from .space import (
    AxiomReport,
    MembershipSpace,
    SpaceBatch,
    check_axioms,
    conditional_degree,
    consistent_degree,
    evaluate,
)


@dataclass(frozen=True)
class FuzzySet:
    attribute: str
    samples: tuple[tuple[float, float], ...]

    @property
    def xs(self) -> np.ndarray:
        return np.array([x for x, _ in self.samples])

    @property
    def mu(self) -> np.ndarray:
        return np.array([m for _, m in self.samples])


@dataclass(frozen=True, eq=False)
class VaguePartition:
    """One membership space per universe sample, all sharing Omega and the algebra."""

    omega: ElementaryAttributeSet
    algebra: AlgebraTriple
    spaces: tuple[MembershipSpace, ...]
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        spaces = tuple(self.spaces)
        if not spaces:
            raise DomainError("a vague partition needs at least one universe point")
        xs = []
        for s in spaces:
            if s.omega != self.omega or s.algebra != self.algebra:
                raise DomainError("all spaces in a partition must share Omega and the algebra")
            if s.x is None:
                raise DomainError("every space in a partition must carry its universe point x")
            xs.append(float(s.x))
        if len(set(xs)) != len(xs):
            dup = next(x for x in xs if xs.count(x) > 1)
            raise DomainError(f"duplicate universe point {dup!r}")
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "metadata", dict(self.metadata))

    @classmethod
    def from_rows(
        cls,
        omega: ElementaryAttributeSet | Sequence[str],
        algebra: AlgebraTriple,
        rows: Iterable[tuple[float, Mapping[str, float]]],
        overrides: Mapping[float, Mapping[str, float]] | None = None,
        metadata: Mapping[str, object] | None = None,
    ) -> VaguePartition:
        if not isinstance(omega, ElementaryAttributeSet):
            omega = ElementaryAttributeSet(tuple(omega))
        overrides = overrides or {}
        spaces = tuple(
            MembershipSpace(omega, algebra, degrees, overrides.get(float(x), {}), float(x)) for x, degrees in rows
        )
        return cls(omega, algebra, spaces, metadata or {})

    def __eq__(self, other):
        if not isinstance(other, VaguePartition):
            return NotImplemented
        return self.omega == other.omega and self.algebra == other.algebra and self.spaces == other.spaces

    @property
    def universe(self) -> tuple[float, ...]:
        return tuple(s.x for s in self.spaces)

    def __len__(self) -> int:
        return len(self.spaces)

    def index_of(self, x: float, tol: float | None = None) -> int:
        tol = settings.resolve(tol)
        xs = np.asarray(self.universe)
        i = int(np.argmin(np.abs(xs - float(x))))
        if abs(xs[i] - float(x)) > tol:
            raise DomainError(f"x = {x!r} is not a sampled universe point")
        return i

    def space_at(self, x: float, tol: float | None = None) -> MembershipSpace:
        return self.spaces[self.index_of(x, tol)]

    def degree_matrix(self) -> np.ndarray:
        return np.array([s.degree_vector() for s in self.spaces])

    def batch(self) -> SpaceBatch:
        """All rows as a :class:`SpaceBatch`, overrides folded into the negated degrees."""
        deg = self.degree_matrix()
        if not any(s.negation_overrides for s in self.spaces):
            return SpaceBatch(self.omega, self.algebra, deg)
        neg = np.array([[s.negated_degree(p) for p in self.omega] for s in self.spaces])
        return SpaceBatch(self.omega, self.algebra, deg, neg)

    @property
    def regular(self) -> bool:
        return all(check_axioms(s).regular for s in self.spaces)


def fuzzy_set_of(partition: VaguePartition, p: str) -> FuzzySet:
    """Membership function x -> M_x(p) over the sampled universe."""
    if p not in partition.omega:
        raise UnknownAttributeError(p)
    return FuzzySet(p, tuple((s.x, s.degrees[p]) for s in partition.spaces))


def separation_degree(partition: VaguePartition) -> float:
    """1 minus the smallest consistent degree over the sampled universe."""
    return 1.0 - min(consistent_degree(s) for s in partition.spaces)


def incompatible(partition: VaguePartition, a: AttributeExpr, b: AttributeExpr, tol: float | None = None) -> bool:
    tol = settings.resolve(tol)
    both = And((a, b))
    return all(evaluate(s, both) <= tol for s in partition.spaces)


def absolutely_incompatible(
    partition: VaguePartition, a: AttributeExpr, b: AttributeExpr, tol: float | None = None
) -> bool:
    tol = settings.resolve(tol)
    return not any(evaluate(s, a) > tol and evaluate(s, b) > tol for s in partition.spaces)


def global_conditional(partition: VaguePartition, given: AttributeExpr, target: AttributeExpr) -> float:
    """Minimum over the sampled universe of the pointwise conditional degree."""
    validate(given, partition.omega)
    validate(target, partition.omega)
    return min(conditional_degree(s, given, target) for s in partition.spaces)


@dataclass(frozen=True)
class PartitionReport:
    reports: tuple[AxiomReport, ...]

    @property
    def valid(self) -> bool:
        return all(r.valid for r in self.reports)

    @property
    def regular(self) -> bool:
        return all(r.regular for r in self.reports)

    @property
    def normal(self) -> bool:
        return all(r.normal for r in self.reports)

    def failing(self) -> list[AxiomReport]:
        return [r for r in self.reports if not r.valid]


def check_partition(
    partition: VaguePartition, require_v_prime: bool = False, tol: float | None = None
) -> PartitionReport:
    return PartitionReport(tuple(check_axioms(s, require_v_prime, tol) for s in partition.spaces))


@dataclass(frozen=True)
class PartitionProcess:
    """Vague partitions indexed by an ordered list of labels (times or possible worlds)."""

    index: tuple[Hashable, ...]
    partitions: tuple[VaguePartition, ...]

    def __post_init__(self):
        index = tuple(self.index)
        partitions = tuple(self.partitions)
        if not index or len(index) != len(partitions):
            raise DomainError("process index and partitions must be nonempty and aligned")
        if len(set(index)) != len(index):
            raise DomainError("process index labels must be distinct")
        first = partitions[0]
        for part in partitions[1:]:
            if part.omega != first.omega or part.universe != first.universe:
                raise DomainError("all partitions in a process must share Omega and the universe samples")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "partitions", partitions)

    def at(self, t: Hashable) -> VaguePartition:
        try:
            return self.partitions[self.index.index(t)]
        except ValueError:
            raise DomainError(f"unknown index label {t!r}") from None


def object_trajectory(process: PartitionProcess, p: str) -> dict[Hashable, FuzzySet]:
    return {t: fuzzy_set_of(part, p) for t, part in zip(process.index, process.partitions)}


def attribute_trajectory(
    process: PartitionProcess, x: float, tol: float | None = None
) -> dict[Hashable, dict[str, float]]:
    return {t: dict(part.space_at(x, tol).degrees) for t, part in zip(process.index, process.partitions)}
