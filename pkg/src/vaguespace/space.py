"""Membership spaces at a single universe point.

A :class:`MembershipSpace` stores the elementary degree table M(p) for
p in Omega together with the algebra (T, S, N).  Degrees of compound
attributes are obtained by structural recursion (:func:`evaluate`), which
is how Axioms II and IV hold by construction.  :func:`check_axioms`
verifies the remaining axioms on the stored table.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels, settings
from .algebra import AlgebraTriple, TConorm, TNorm, check_degree
from .errors import DomainError, UnknownAttributeError, UnsupportedCompositionError
from .expr import And, AttributeExpr, Bot, Elem, ElementaryAttributeSet, Not, Or, Top, validate


@dataclass(frozen=True, eq=False)
class MembershipSpace:
    """(Omega, M_x, algebra) at one point ``x``.

    ``negation_overrides`` optionally assigns M(not p) for some elementary
    p; without overrides the space is evaluated regularly, M(not A) = N(M(A)).
    Range and totality are enforced here; the axioms themselves are
    reported by :func:`check_axioms` rather than raised.
    """

    omega: ElementaryAttributeSet
    algebra: AlgebraTriple
    degrees: Mapping[str, float]
    negation_overrides: Mapping[str, float] = field(default_factory=dict)
    x: float | None = None

    def __post_init__(self):
        table = {}
        for name in self.omega:
            if name not in self.degrees:
                raise DomainError(f"degree table has no entry for {name!r}")
            table[name] = check_degree(self.degrees[name], f"M({name})")
        extra = set(self.degrees) - set(self.omega.names)
        if extra:
            raise UnknownAttributeError(sorted(extra)[0])
        overrides = {}
        for name, value in self.negation_overrides.items():
            if name not in self.omega:
                raise UnknownAttributeError(name)
            overrides[name] = check_degree(value, f"M(not {name})")
        object.__setattr__(self, "degrees", MappingProxyType(table))
        object.__setattr__(self, "negation_overrides", MappingProxyType(overrides))

    @classmethod
    def from_values(cls, names: Sequence[str], values: Sequence[float], algebra: AlgebraTriple | str = "minimum", **kw):
        omega = names if isinstance(names, ElementaryAttributeSet) else ElementaryAttributeSet(tuple(names))
        if isinstance(algebra, str):
            algebra = AlgebraTriple.from_tags(algebra)
        return cls(omega, algebra, dict(zip(omega.names, values)), **kw)

    def __eq__(self, other):
        if not isinstance(other, MembershipSpace):
            return NotImplemented
        return (
            self.omega == other.omega
            and self.algebra == other.algebra
            and dict(self.degrees) == dict(other.degrees)
            and dict(self.negation_overrides) == dict(other.negation_overrides)
            and self.x == other.x
        )

    def degree_vector(self) -> np.ndarray:
        return np.array([self.degrees[n] for n in self.omega], dtype=np.float64)

    def negated_degree(self, name: str) -> float:
        if name in self.negation_overrides:
            return self.negation_overrides[name]
        return self.algebra.n(self.degrees[name])

    def with_degrees(self, degrees: Mapping[str, float]) -> MembershipSpace:
        return MembershipSpace(self.omega, self.algebra, degrees, self.negation_overrides, self.x)


def evaluate(space: MembershipSpace, expr: AttributeExpr, strict: bool = False) -> float:
    """Degree of ``expr``: Bot -> 0, Top -> 1, folds for Or/And, N for Not.

    A negated elementary attribute uses its override when one exists.  With
    ``strict=True``, a space carrying overrides refuses Not over a compound
    child instead of composing it through N.
    """
    validate(expr, space.omega)
    return _eval(space, expr, strict and bool(space.negation_overrides))


def _eval(space: MembershipSpace, expr: AttributeExpr, strict: bool) -> float:
    if isinstance(expr, Elem):
        return space.degrees[expr.name]
    if isinstance(expr, Bot):
        return 0.0
    if isinstance(expr, Top):
        return 1.0
    if isinstance(expr, Not):
        child = expr.child
        if isinstance(child, Elem):
            return space.negated_degree(child.name)
        if strict and not isinstance(child, (Bot, Top)):
            raise UnsupportedCompositionError(
                "negation of a compound attribute is undefined in a non-regular space"
            )
        return space.algebra.n(_eval(space, child, strict))
    if isinstance(expr, Or):
        return space.algebra.fold_or(_eval(space, c, strict) for c in expr.children)
    if isinstance(expr, And):
        return space.algebra.fold_and(_eval(space, c, strict) for c in expr.children)
    raise DomainError(f"not an attribute expression: {expr!r}")


# -- axioms -------------------------------------------------------------------

class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


AXIOMS = ("I", "II", "III", "IV_finite", "V", "V_prime")


@dataclass(frozen=True)
class AxiomVerdict:
    status: Status
    witness: str | None = None
    note: str | None = None

    @property
    def passed(self) -> bool:
        return self.status is not Status.FAIL


@dataclass(frozen=True)
class AxiomReport:
    verdicts: Mapping[str, AxiomVerdict]
    regular: bool
    normal: bool
    x: float | None = None

    @property
    def valid(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def failures(self) -> list[tuple[str, AxiomVerdict]]:
        return [(k, v) for k, v in self.verdicts.items() if v.status is Status.FAIL]


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol


def check_axioms(space: MembershipSpace, require_v_prime: bool = False, tol: float | None = None) -> AxiomReport:
    tol = settings.resolve(tol)
    alg = space.algebra
    names = space.omega.names
    m = space.degrees
    verdicts: dict[str, AxiomVerdict] = {}

    # I: bounds, some positive degree, and a unit degree excludes all others
    positive = [n for n in names if m[n] > tol]
    units = [n for n in names if _close(m[n], 1.0, tol)]
    if not positive:
        verdicts["I"] = AxiomVerdict(Status.FAIL, "no positive elementary degree")
    elif units and len(positive) > 1:
        other = next(n for n in positive if n != units[0])
        verdicts["I"] = AxiomVerdict(Status.FAIL, f"M({units[0]}) = 1 but M({other}) > 0")
    else:
        verdicts["I"] = AxiomVerdict(Status.PASS)

    verdicts["II"] = AxiomVerdict(Status.PASS, note="holds by construction: bot -> 0, top -> 1")

    bad3 = [n for n, v in space.negation_overrides.items() if v > alg.n(m[n]) + tol]
    if bad3:
        verdicts["III"] = AxiomVerdict(Status.FAIL, bad3[0])
    else:
        verdicts["III"] = AxiomVerdict(Status.PASS)

    verdicts["IV_finite"] = AxiomVerdict(Status.PASS, note="holds by construction: finite folds")

    bad5 = None
    for p in names:
        rest = alg.fold_or(m[q] for q in names if q != p)
        if space.negated_degree(p) < rest - tol:
            bad5 = p
            break
    verdicts["V"] = AxiomVerdict(Status.FAIL, bad5) if bad5 is not None else AxiomVerdict(Status.PASS)

    if require_v_prime:
        total = math.fsum(m.values())
        if total > tol and total <= 1.0 + tol:
            verdicts["V_prime"] = AxiomVerdict(Status.PASS)
        else:
            verdicts["V_prime"] = AxiomVerdict(Status.FAIL, f"sum of elementary degrees is {total:.9g}")
    else:
        verdicts["V_prime"] = AxiomVerdict(Status.SKIPPED, note="not required by the default profile")

    regular = all(_close(v, alg.n(m[n]), tol) for n, v in space.negation_overrides.items())
    normal = bool(units)
    return AxiomReport(MappingProxyType(verdicts), regular, normal, space.x)


def is_regular(space: MembershipSpace, tol: float | None = None) -> bool:
    tol = settings.resolve(tol)
    return all(_close(v, space.algebra.n(space.degrees[n]), tol) for n, v in space.negation_overrides.items())


def is_normal(space: MembershipSpace, tol: float | None = None) -> bool:
    tol = settings.resolve(tol)
    return any(_close(v, 1.0, tol) for v in space.degrees.values())


def consistent_degree(space: MembershipSpace) -> float:
    """Fold of all elementary degrees under the t-conorm."""
    return space.algebra.fold_or(space.degrees[n] for n in space.omega)


def conditional_degree(space: MembershipSpace, given: AttributeExpr, target: AttributeExpr) -> float:
    """Residuum of the t-norm: sup{z : M(given) (x) z <= M(target)}."""
    return space.algebra.residuum(evaluate(space, given), evaluate(space, target))


def quotient_chain(
    space: MembershipSpace, exprs: Iterable[AttributeExpr], tol: float | None = None
) -> list[tuple[float, list[AttributeExpr]]]:
    """Classes of equal degree, ascending; each class is (value, members)."""
    tol = settings.resolve(tol)
    scored = sorted(((evaluate(space, e), i, e) for i, e in enumerate(exprs)), key=lambda t: (t[0], t[1]))
    classes: list[tuple[float, list[AttributeExpr]]] = []
    for value, _, e in scored:
        if classes and value - classes[-1][0] <= tol:
            classes[-1][1].append(e)
        else:
            classes.append((value, [e]))
    return classes


@dataclass(frozen=True)
class LimitVerdict:
    direction: str  # "increasing" or "decreasing"
    limit: float
    combined: float
    relation: str  # "equal", "le" or "ge" -- the relation asserted
    holds: bool


def check_limit_theorems(
    space: MembershipSpace, chain: Sequence[AttributeExpr], tol: float | None = None
) -> LimitVerdict:
    """Compare the last value of a monotone chain with M(Or chain) / M(And chain).

    Increasing chains are checked against the disjunction (equality when the
    conorm is maximum, ``limit <= combined`` otherwise); decreasing chains
    against the conjunction (equality for minimum, ``>=`` otherwise).  A
    constant chain is treated as increasing.
    """
    tol = settings.resolve(tol)
    if not chain:
        raise DomainError("chain must be nonempty")
    values = [evaluate(space, e) for e in chain]
    steps = np.diff(values)
    if np.all(steps >= -tol):
        direction = "increasing"
        combined = evaluate(space, Or(tuple(chain))) if len(chain) > 1 else values[0]
        if space.algebra.tconorm is TConorm.MAXIMUM:
            relation, holds = "equal", _close(values[-1], combined, tol)
        else:
            relation, holds = "le", values[-1] <= combined + tol
    elif np.all(steps <= tol):
        direction = "decreasing"
        combined = evaluate(space, And(tuple(chain))) if len(chain) > 1 else values[0]
        if space.algebra.tnorm is TNorm.MINIMUM:
            relation, holds = "equal", _close(values[-1], combined, tol)
        else:
            relation, holds = "ge", values[-1] >= combined - tol
    else:
        raise DomainError("chain values are not monotone")
    return LimitVerdict(direction, values[-1], combined, relation, holds)


# -- batched evaluation ---------------------------------------------------------

class SpaceBatch:
    """Many degree tables over one Omega and algebra, evaluated column-wise.

    ``degrees`` is (n_spaces, |Omega|).  ``neg_degrees`` gives M(not p) per
    row and defaults to N(degrees), i.e. regular spaces.  Results are cached
    per expression, so sweeping an enumerated expression list reuses every
    subexpression's array.
    """

    def __init__(self, omega: ElementaryAttributeSet, algebra: AlgebraTriple, degrees, neg_degrees=None):
        self.omega = omega
        self.algebra = algebra
        self.degrees = np.ascontiguousarray(degrees, dtype=np.float64)
        if self.degrees.ndim != 2 or self.degrees.shape[1] != len(omega):
            raise DomainError(f"degree matrix must have shape (n, {len(omega)})")
        self._t = algebra.tnorm.code
        self._s = algebra.tconorm.code
        self._n = algebra.negation.code
        if neg_degrees is None:
            self.neg_degrees = kernels.negation(self._n, self.degrees)
            self.regular = True
        else:
            self.neg_degrees = np.ascontiguousarray(neg_degrees, dtype=np.float64)
            self.regular = False
        self._cache: dict[AttributeExpr, np.ndarray] = {}
        self._zeros = np.zeros(len(self))
        self._ones = np.ones(len(self))

    def __len__(self) -> int:
        return self.degrees.shape[0]

    def space(self, i: int, x: float | None = None) -> MembershipSpace:
        names = self.omega.names
        overrides = {} if self.regular else dict(zip(names, self.neg_degrees[i].tolist()))
        return MembershipSpace(self.omega, self.algebra, dict(zip(names, self.degrees[i].tolist())), overrides, x)

    def evaluate(self, expr: AttributeExpr) -> np.ndarray:
        hit = self._cache.get(expr)
        if hit is not None:
            return hit
        if isinstance(expr, Elem):
            out = self.degrees[:, self.omega.index(expr.name)]
        elif isinstance(expr, Bot):
            out = self._zeros
        elif isinstance(expr, Top):
            out = self._ones
        elif isinstance(expr, Not):
            if isinstance(expr.child, Elem):
                out = self.neg_degrees[:, self.omega.index(expr.child.name)]
            else:
                out = kernels.negation(self._n, self.evaluate(expr.child))
        elif isinstance(expr, Or):
            out = self.evaluate(expr.children[0])
            for c in expr.children[1:]:
                out = kernels.tconorm(self._s, out, self.evaluate(c))
        elif isinstance(expr, And):
            out = self.evaluate(expr.children[0])
            for c in expr.children[1:]:
                out = kernels.tnorm(self._t, out, self.evaluate(c))
        else:
            raise DomainError(f"not an attribute expression: {expr!r}")
        self._cache[expr] = out
        return out

    def axiom_flags(self, tol: float | None = None) -> np.ndarray:
        """(4, n) bool array: Axioms I, III, V, V' per row."""
        return kernels.axiom_flags(self._t, self._s, self._n, self.degrees, self.neg_degrees, settings.resolve(tol))
