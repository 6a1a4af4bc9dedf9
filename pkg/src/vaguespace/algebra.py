"""Triangular norms, conorms and negations on the unit interval.

Only the four basic t-norms (minimum, product, Lukasiewicz, drastic), their
dual t-conorms under the standard negation, and three named negations are
built in.  Scalar functions here are plain Python; batched array versions
live in :mod:`vaguespace.kernels`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DomainError


class TNorm(str, enum.Enum):
    MINIMUM = "minimum"
    PRODUCT = "product"
    LUKASIEWICZ = "lukasiewicz"
    DRASTIC = "drastic"

    @property
    def code(self) -> int:
        return _TNORM_ORDER.index(self)


class TConorm(str, enum.Enum):
    MAXIMUM = "maximum"
    PROBABILISTIC_SUM = "probabilistic_sum"
    LUKASIEWICZ = "lukasiewicz"
    DRASTIC_SUM = "drastic_sum"

    @property
    def code(self) -> int:
        return _TCONORM_ORDER.index(self)


class Negation(str, enum.Enum):
    STANDARD = "standard"
    ONE_MINUS_SQUARE = "one_minus_square"
    GOEDEL = "goedel"

    @property
    def code(self) -> int:
        return _NEGATION_ORDER.index(self)


class NegationClass(str, enum.Enum):
    NOT_NEGATION = "not_negation"
    NEGATION = "negation"
    STRICT = "strict"
    STRONG = "strong"


class Ordering(str, enum.Enum):
    WEAKER = "weaker"
    STRONGER = "stronger"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


_TNORM_ORDER = (TNorm.MINIMUM, TNorm.PRODUCT, TNorm.LUKASIEWICZ, TNorm.DRASTIC)
_TCONORM_ORDER = (TConorm.MAXIMUM, TConorm.PROBABILISTIC_SUM, TConorm.LUKASIEWICZ, TConorm.DRASTIC_SUM)
_NEGATION_ORDER = (Negation.STANDARD, Negation.ONE_MINUS_SQUARE, Negation.GOEDEL)

# weakest to strongest
TNORM_CHAIN = (TNorm.DRASTIC, TNorm.LUKASIEWICZ, TNorm.PRODUCT, TNorm.MINIMUM)
TCONORM_CHAIN = (TConorm.MAXIMUM, TConorm.PROBABILISTIC_SUM, TConorm.LUKASIEWICZ, TConorm.DRASTIC_SUM)


def check_degree(value: float, what: str = "degree") -> float:
    """Return ``value`` as float, raising DomainError unless it lies in [0, 1]."""
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{what} must be a real number, got {value!r}") from None
    if math.isnan(v) or v < 0.0 or v > 1.0:
        raise DomainError(f"{what} must lie in [0, 1], got {value!r}")
    return v


def tnorm_eval(family: TNorm | str, x: float, y: float) -> float:
    family = TNorm(family)
    x = check_degree(x, "x")
    y = check_degree(y, "y")
    return _tnorm(family, x, y)


def _tnorm(family: TNorm, x: float, y: float) -> float:
    if family is TNorm.MINIMUM:
        return min(x, y)
    if family is TNorm.PRODUCT:
        return x * y
    if family is TNorm.LUKASIEWICZ:
        # x + 1 - 1 can round away from x; keep the unit exact
        if y == 1.0 or x == 1.0:
            return min(x, y)
        return max(x + y - 1.0, 0.0)
    if x < 1.0 and y < 1.0:
        return 0.0
    return min(x, y)


def tconorm_eval(family: TConorm | str, x: float, y: float) -> float:
    family = TConorm(family)
    x = check_degree(x, "x")
    y = check_degree(y, "y")
    return _tconorm(family, x, y)


def _tconorm(family: TConorm, x: float, y: float) -> float:
    if family is TConorm.MAXIMUM:
        return max(x, y)
    if family is TConorm.PROBABILISTIC_SUM:
        # larger operand first keeps S(1, y) = 1 and S(x, 0) = x exact
        hi, lo = (x, y) if x >= y else (y, x)
        return hi + lo * (1.0 - hi)
    if family is TConorm.LUKASIEWICZ:
        return min(x + y, 1.0)
    if x > 0.0 and y > 0.0:
        return 1.0
    return max(x, y)


def negation_eval(kind: Negation | str, x: float) -> float:
    kind = Negation(kind)
    return _negation(kind, check_degree(x, "x"))


def _negation(kind: Negation, x: float) -> float:
    if kind is Negation.STANDARD:
        return 1.0 - x
    if kind is Negation.ONE_MINUS_SQUARE:
        return 1.0 - x * x
    return 1.0 if x == 0.0 else 0.0


_DUALS = {
    TNorm.MINIMUM: TConorm.MAXIMUM,
    TNorm.PRODUCT: TConorm.PROBABILISTIC_SUM,
    TNorm.LUKASIEWICZ: TConorm.LUKASIEWICZ,
    TNorm.DRASTIC: TConorm.DRASTIC_SUM,
}


def dual_tconorm(tnorm: TNorm | str) -> TConorm:
    """The t-conorm S(x, y) = 1 - T(1 - x, 1 - y)."""
    return _DUALS[TNorm(tnorm)]


def dual_tnorm(tconorm: TConorm | str) -> TNorm:
    tconorm = TConorm(tconorm)
    return next(t for t, s in _DUALS.items() if s is tconorm)


def _fold(op: Callable[[float, float], float], values: Iterable[float], neutral: float) -> float:
    # seed with the first element: T(1, v) = 1 + v - 1 is not exact in floats
    it = iter(values)
    try:
        first = next(it)
    except StopIteration:
        return neutral
    return reduce(op, it, first)


def fold_tnorm(family: TNorm | str, values: Iterable[float]) -> float:
    """Left fold of the t-norm; the empty fold is 1."""
    family = TNorm(family)
    return _fold(lambda a, b: _tnorm(family, a, b), (check_degree(v) for v in values), 1.0)


def fold_tconorm(family: TConorm | str, values: Iterable[float]) -> float:
    """Left fold of the t-conorm; the empty fold is 0."""
    family = TConorm(family)
    return _fold(lambda a, b: _tconorm(family, a, b), (check_degree(v) for v in values), 0.0)


def residuum(tnorm: TNorm | str, a: float, b: float) -> float:
    """sup{z in [0, 1] : T(a, z) <= b}, in closed form.

    For the drastic product the supremum is 1 whenever a < 1, since every
    z < 1 is admissible there.
    """
    tnorm = TNorm(tnorm)
    a = check_degree(a, "a")
    b = check_degree(b, "b")
    if a <= b:
        return 1.0
    if tnorm is TNorm.MINIMUM:
        return b
    if tnorm is TNorm.PRODUCT:
        return b / a
    if tnorm is TNorm.LUKASIEWICZ:
        return min(1.0, 1.0 - a + b)
    return 1.0 if a < 1.0 else b


def residuum_oracle(
    tnorm: TNorm | str | Callable[[float, float], float],
    a: float,
    b: float,
    grid_points: int = 1001,
    iters: int = 60,
) -> float:
    """Generic sup{z : T(a, z) <= b} for any monotone T: grid scan, then bisection.

    ``tnorm`` may be a family tag or an arbitrary callable.  Accuracy is
    about 2**-iters times the grid step.
    """
    if callable(tnorm) and not isinstance(tnorm, (str, TNorm)):
        t = tnorm
    else:
        fam = TNorm(tnorm)
        t = lambda x, y: _tnorm(fam, x, y)  # noqa: E731
    a = check_degree(a, "a")
    b = check_degree(b, "b")
    last = -1
    for k in range(grid_points):
        z = 1.0 if k == grid_points - 1 else k / (grid_points - 1)
        if t(a, z) <= b:
            last = k
    if last == grid_points - 1:
        return 1.0
    lo = last / (grid_points - 1) if last >= 0 else 0.0
    hi = (last + 1) / (grid_points - 1)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if t(a, mid) <= b:
            lo = mid
        else:
            hi = mid
    return lo


def _interior_grid(n: int = 101) -> tuple[np.ndarray, np.ndarray]:
    g = np.linspace(0.0, 1.0, n)[1:-1]
    x, y = np.meshgrid(g, g, indexing="ij")
    return x.ravel(), y.ravel()


def _order_of(lhs: np.ndarray, rhs: np.ndarray, tol: float) -> Ordering:
    le = np.all(lhs <= rhs + tol)
    ge = np.all(lhs >= rhs - tol)
    if le and ge:
        return Ordering.EQUAL
    if le:
        return Ordering.WEAKER
    if ge:
        return Ordering.STRONGER
    return Ordering.INCOMPARABLE


def _grid_arrays(grid) -> tuple[np.ndarray, np.ndarray]:
    if grid is None:
        return _interior_grid()
    pts = np.asarray(grid, dtype=np.float64).reshape(-1, 2)
    if pts.size == 0:
        raise DomainError("comparison grid is empty")
    if np.any(pts <= 0.0) or np.any(pts >= 1.0):
        raise DomainError("comparison grid must lie inside the open square (0, 1)^2")
    return pts[:, 0], pts[:, 1]


def compare_tnorms(a: TNorm | str, b: TNorm | str, grid=None, tol: float = 0.0) -> Ordering:
    """Pointwise order of two t-norms over ``grid`` (an (n, 2) array in (0, 1)^2).

    The default grid is the interior of a 101 x 101 lattice.
    """
    x, y = _grid_arrays(grid)
    return _order_of(kernels.tnorm(TNorm(a).code, x, y), kernels.tnorm(TNorm(b).code, x, y), tol)


def compare_tconorms(a: TConorm | str, b: TConorm | str, grid=None, tol: float = 0.0) -> Ordering:
    x, y = _grid_arrays(grid)
    return _order_of(kernels.tconorm(TConorm(a).code, x, y), kernels.tconorm(TConorm(b).code, x, y), tol)


def classify_negation(
    fn: Callable[[float], float] | Sequence[float] | np.ndarray,
    resolution: int = 1024,
    max_jump: float = 0.25,
    tol: float = 1e-6,
) -> NegationClass:
    """Sampled check of the negation / strict / strong properties.

    ``fn`` is either a callable (sampled on ``resolution + 1`` uniform
    points) or the samples themselves on a uniform grid that includes both
    endpoints.  Continuity is judged by the largest drop between adjacent
    samples (``max_jump``); involution by comparing N(N(x)) with x, through
    linear interpolation when only samples are available.
    """
    if callable(fn):
        grid = np.linspace(0.0, 1.0, resolution + 1)
        values = np.array([float(fn(v)) for v in grid])
    else:
        values = np.asarray(fn, dtype=np.float64).ravel()
        if values.size == 0:
            raise DomainError("negation sample set is empty")
        grid = np.linspace(0.0, 1.0, values.size)
    if values.size < 2:
        raise DomainError("need samples at both endpoints 0 and 1")
    if np.any(np.isnan(values)):
        return NegationClass.NOT_NEGATION
    steps = np.diff(values)
    endpoints = abs(values[0] - 1.0) <= tol and abs(values[-1]) <= tol
    in_range = np.all((values >= -tol) & (values <= 1.0 + tol))
    if not (endpoints and in_range and np.all(steps <= tol)):
        return NegationClass.NOT_NEGATION
    if not (np.all(steps < 0.0) and np.max(-steps) <= max_jump):
        return NegationClass.NEGATION
    if callable(fn):
        twice = np.array([float(fn(min(max(v, 0.0), 1.0))) for v in values])
    else:
        twice = np.interp(np.clip(values, 0.0, 1.0), grid, values)
    if np.max(np.abs(twice - grid)) <= tol:
        return NegationClass.STRONG
    return NegationClass.STRICT


@dataclass(frozen=True)
class AlgebraTriple:
    """A t-norm, its dual t-conorm and a strong negation.

    ``tconorm`` defaults to the dual of ``tnorm``; passing a non-dual
    conorm, or a negation that is not strong, raises DomainError.
    """

    tnorm: TNorm
    tconorm: TConorm | None = None
    negation: Negation = Negation.STANDARD

    def __post_init__(self):
        tnorm = TNorm(self.tnorm)
        negation = Negation(self.negation)
        tconorm = dual_tconorm(tnorm) if self.tconorm is None else TConorm(self.tconorm)
        if negation is not Negation.STANDARD:
            raise DomainError(f"negation {negation.value!r} is not strong")
        if tconorm is not dual_tconorm(tnorm):
            raise DomainError(
                f"t-conorm {tconorm.value!r} is not the dual of t-norm {tnorm.value!r}"
            )
        object.__setattr__(self, "tnorm", tnorm)
        object.__setattr__(self, "tconorm", tconorm)
        object.__setattr__(self, "negation", negation)

    @classmethod
    def from_tags(cls, tnorm: str, negation: str = "standard", tconorm: str | None = None) -> AlgebraTriple:
        try:
            return cls(TNorm(tnorm), None if tconorm is None else TConorm(tconorm), Negation(negation))
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(str(exc)) from None

    def t(self, x: float, y: float) -> float:
        return _tnorm(self.tnorm, x, y)

    def s(self, x: float, y: float) -> float:
        return _tconorm(self.tconorm, x, y)

    def n(self, x: float) -> float:
        return _negation(self.negation, x)

    def fold_and(self, values: Iterable[float]) -> float:
        return _fold(self.t, values, 1.0)

    def fold_or(self, values: Iterable[float]) -> float:
        return _fold(self.s, values, 0.0)

    def residuum(self, a: float, b: float) -> float:
        return residuum(self.tnorm, a, b)

    @property
    def left_continuous(self) -> bool:
        return self.tnorm is not TNorm.DRASTIC

    def describe(self) -> dict:
        return {"tnorm": self.tnorm.value, "tconorm": self.tconorm.value, "negation": self.negation.value}
