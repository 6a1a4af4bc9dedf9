"""Product membership spaces with vector-valued degrees in [0, 1]^n."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import settings
from .algebra import TConorm, TNorm
from .errors import DomainError
from .expr import And, AttributeExpr, Or
from .space import MembershipSpace, check_axioms, evaluate, is_normal, is_regular

VectorDegree = tuple[float, ...]

MAX_TUPLES = 10**6


@dataclass(frozen=True)
class ProductSpace:
    components: tuple[MembershipSpace, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise DomainError("a product space needs at least one component")

    @property
    def dimension(self) -> int:
        return len(self.components)

    @property
    def n_tuples(self) -> int:
        return math.prod(len(c.omega) for c in self.components)

    def attribute_tuples(self, limit: int = MAX_TUPLES) -> Iterator[tuple[str, ...]]:
        """Lazily iterate the product elementary attribute set."""
        if self.n_tuples > limit:
            raise DomainError(f"product attribute set has {self.n_tuples} tuples, above the limit {limit}")
        return itertools.product(*(c.omega.names for c in self.components))


def product(spaces: Sequence[MembershipSpace]) -> ProductSpace:
    return ProductSpace(tuple(spaces))


def evaluate_product(pspace: ProductSpace, exprs: Sequence[AttributeExpr]) -> VectorDegree:
    if len(exprs) != pspace.dimension:
        raise DomainError(f"expected {pspace.dimension} expressions, got {len(exprs)}")
    return tuple(evaluate(s, e) for s, e in zip(pspace.components, exprs))


def is_product_normal(pspace: ProductSpace, tol: float | None = None) -> bool:
    """Some attribute tuple maps to the all-ones vector, i.e. every component is normal."""
    return all(is_normal(c, tol) for c in pspace.components)


def is_product_regular(pspace: ProductSpace, tol: float | None = None) -> bool:
    return all(is_regular(c, tol) for c in pspace.components)


def check_product(pspace: ProductSpace, require_v_prime: bool = False, tol: float | None = None):
    return [check_axioms(c, require_v_prime, tol) for c in pspace.components]


def _same_length(a: Sequence[float], b: Sequence[float]) -> None:
    if len(a) != len(b):
        raise DomainError(f"vector lengths differ: {len(a)} vs {len(b)}")


def vector_order(a: Sequence[float], b: Sequence[float], tol: float | None = None) -> str:
    """Componentwise order: one of "equal", "le", "ge", "incomparable"."""
    _same_length(a, b)
    tol = settings.resolve(tol)
    le = all(x <= y + tol for x, y in zip(a, b))
    ge = all(x >= y - tol for x, y in zip(a, b))
    if le and ge:
        return "equal"
    if le:
        return "le"
    if ge:
        return "ge"
    return "incomparable"


def vector_join(a: Sequence[float], b: Sequence[float]) -> VectorDegree:
    _same_length(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def vector_meet(a: Sequence[float], b: Sequence[float]) -> VectorDegree:
    _same_length(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class ProductLimitVerdict:
    direction: str
    limit: VectorDegree
    combined: VectorDegree
    relations: tuple[str, ...]
    holds: bool


def check_product_limit_theorems(
    pspace: ProductSpace, chain: Sequence[Sequence[AttributeExpr]], tol: float | None = None
) -> ProductLimitVerdict:
    """Componentwise lower/upper limit check along a monotone chain of tuples."""
    tol = settings.resolve(tol)
    if not chain:
        raise DomainError("chain must be nonempty")
    values = [evaluate_product(pspace, t) for t in chain]
    orders = {vector_order(u, v, tol) for u, v in zip(values, values[1:])}
    if orders <= {"le", "equal"}:
        direction = "increasing"
    elif orders <= {"ge", "equal"}:
        direction = "decreasing"
    else:
        raise DomainError("chain values are not monotone in the componentwise order")
    limit = values[-1]
    combined, relations, ok = [], [], True
    for i, comp in enumerate(pspace.components):
        column = [t[i] for t in chain]
        if direction == "increasing":
            val = evaluate(comp, Or(tuple(column))) if len(column) > 1 else limit[i]
            if comp.algebra.tconorm is TConorm.MAXIMUM:
                rel, good = "equal", abs(limit[i] - val) <= tol
            else:
                rel, good = "le", limit[i] <= val + tol
        else:
            val = evaluate(comp, And(tuple(column))) if len(column) > 1 else limit[i]
            if comp.algebra.tnorm is TNorm.MINIMUM:
                rel, good = "equal", abs(limit[i] - val) <= tol
            else:
                rel, good = "ge", limit[i] >= val - tol
        combined.append(val)
        relations.append(rel)
        ok = ok and good
    return ProductLimitVerdict(direction, limit, tuple(combined), tuple(relations), ok)
