"""Randomized valid membership spaces and a batched law-checking harness.

:func:`sample_degrees` draws degree tables from a mixture proposal and keeps
the rows that pass the requested axiom profile (rejection sampling through
``kernels.axiom_flags``).  :func:`verify_laws` then sweeps expressions over
the whole batch at once and counts counterexamples per law.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels, settings
from .algebra import AlgebraTriple, Negation, TNorm
from .errors import DomainError
from .expr import BOT, TOP, And, AttributeExpr, Elem, ElementaryAttributeSet, Not, Or, count_exprs, enumerate_exprs, format_expr
from .space import SpaceBatch

# enumerate every expression when the depth-limited set is at most this large
ENUMERATION_LIMIT = 8000


def _propose(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """Mixture proposal over [0, 1]^m.

    Four kinds of rows, drawn in equal shares: Dirichlet rows scaled by a
    uniform factor (sum at most 1), independent uniforms, one-hot rows, and
    rows supported on two adjacent attributes with complementary degrees.
    """
    kind = rng.integers(0, 4, size=n)
    out = np.empty((n, m))
    k0 = kind == 0
    out[k0] = rng.dirichlet(np.full(m, 0.7), size=int(k0.sum())) * rng.uniform(0.05, 1.0, size=(int(k0.sum()), 1))
    k1 = kind == 1
    out[k1] = rng.uniform(0.0, 1.0, size=(int(k1.sum()), m))
    k2 = kind == 2
    out[k2] = 0.0
    out[np.flatnonzero(k2), rng.integers(0, m, size=int(k2.sum()))] = 1.0
    k3 = np.flatnonzero(kind == 3)
    out[k3] = 0.0
    left = rng.integers(0, m, size=k3.size)
    right = (left + 1) % m
    a = rng.uniform(0.0, 1.0, size=k3.size)
    out[k3, left] = a
    if m > 1:
        out[k3, right] = 1.0 - a
    return out


def _overrides(rng: np.random.Generator, algebra: AlgebraTriple, deg: np.ndarray) -> np.ndarray:
    """Non-regular M(not p) drawn between the Axiom V floor and the Axiom III ceiling."""
    n, m = deg.shape
    ceil = kernels.negation(algebra.negation.code, deg)
    floor = np.empty_like(deg)
    for p in range(m):
        floor[:, p] = kernels.fold_tconorm(algebra.tconorm.code, np.delete(deg, p, axis=1))
    floor = np.minimum(floor, ceil)
    return floor + rng.uniform(0.0, 1.0, size=deg.shape) * (ceil - floor)


@dataclass
class SampleBatch:
    degrees: np.ndarray
    neg_degrees: np.ndarray | None
    proposed: int

    @property
    def acceptance(self) -> float:
        return len(self.degrees) / self.proposed if self.proposed else 0.0


def sample_degrees(
    rng: np.random.Generator,
    algebra: AlgebraTriple,
    m: int,
    n: int,
    strict: bool = False,
    regular: bool = True,
    tol: float | None = None,
    max_rounds: int = 200,
) -> SampleBatch:
    """Draw ``n`` degree tables over ``m`` attributes that pass the axiom profile.

    The default profile keeps rows passing Axioms I, III and V; ``strict``
    also requires V'.  With ``regular=False`` each kept row carries random
    negation overrides consistent with Axioms III and V.
    """
    if m < 1 or n < 0:
        raise DomainError("need m >= 1 and n >= 0")
    tol = settings.resolve(tol)
    kept_deg, kept_neg = [], []
    have = proposed = 0
    for _ in range(max_rounds):
        if have >= n:
            break
        batch = max(64, 2 * (n - have))
        deg = _propose(rng, batch, m)
        neg = kernels.negation(algebra.negation.code, deg) if regular else _overrides(rng, algebra, deg)
        flags = kernels.axiom_flags(algebra.tnorm.code, algebra.tconorm.code, algebra.negation.code, deg, neg, tol)
        ok = flags[0] & flags[1] & flags[2]
        if strict:
            ok &= flags[3]
        proposed += batch
        kept_deg.append(deg[ok])
        kept_neg.append(neg[ok])
        have += int(ok.sum())
    if have < n:
        raise DomainError(f"rejection sampler produced {have} of {n} tables; the profile is too narrow")
    deg = np.concatenate(kept_deg)[:n]
    neg = None if regular else np.concatenate(kept_neg)[:n]
    return SampleBatch(deg, neg, proposed)


def random_expr(rng: np.random.Generator, omega: ElementaryAttributeSet, depth: int) -> AttributeExpr:
    """A random expression of depth at most ``depth`` with binary And/Or."""
    if depth <= 0 or rng.random() < 0.25:
        r = rng.integers(0, len(omega) + 2)
        if r == len(omega):
            return BOT
        if r == len(omega) + 1:
            return TOP
        return Elem(omega.names[r])
    op = rng.integers(0, 3)
    if op == 0:
        return Not(random_expr(rng, omega, depth - 1))
    pair = (random_expr(rng, omega, depth - 1), random_expr(rng, omega, depth - 1))
    return And(pair) if op == 1 else Or(pair)


def expression_pool(
    omega: ElementaryAttributeSet, depth: int, rng: np.random.Generator | None = None, limit: int = ENUMERATION_LIMIT
) -> list[AttributeExpr]:
    """Every expression to ``depth`` when that set is small, else ``limit`` random ones plus the atoms."""
    if count_exprs(len(omega), depth) <= limit:
        return list(enumerate_exprs(omega, depth))
    if rng is None:
        rng = np.random.default_rng(0)
    pool = dict.fromkeys(enumerate_exprs(omega, 0))
    while len(pool) < limit:
        pool.setdefault(random_expr(rng, omega, depth))
    return list(pool)


@dataclass
class LawResult:
    name: str
    checked: int = 0
    failures: int = 0
    witness: str | None = None
    applicable: bool = True

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class LawReport:
    results: list[LawResult] = field(default_factory=list)
    n_spaces: int = 0
    n_exprs: int = 0
    acceptance: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> LawResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


class _Tally:
    def __init__(self, batch: SpaceBatch, tol: float):
        self.batch = batch
        self.tol = tol
        self.results: dict[str, LawResult] = {}

    def law(self, name: str, applicable: bool = True) -> LawResult:
        if name not in self.results:
            self.results[name] = LawResult(name, applicable=applicable)
        return self.results[name]

    def close(self, name: str, lhs: np.ndarray, rhs: np.ndarray, label) -> None:
        self.check(name, np.abs(lhs - rhs) <= self.tol, label)

    def check(self, name: str, ok: np.ndarray, label) -> None:
        res = self.law(name)
        ok = np.broadcast_to(ok, (len(self.batch),))
        res.checked += ok.size
        bad = np.flatnonzero(~ok)
        if bad.size:
            res.failures += int(bad.size)
            if res.witness is None:
                res.witness = f"space {int(bad[0])}: {label() if callable(label) else label}"


def verify_laws(
    omega: ElementaryAttributeSet,
    algebra: AlgebraTriple,
    samples: int,
    seed: int,
    depth: int = 2,
    strict: bool = False,
    pairs: int = 2000,
    tol: float | None = None,
    degrees: np.ndarray | None = None,
) -> LawReport:
    """Check the algebraic laws of evaluated degrees over random valid spaces.

    Laws are checked per expression (or sampled pair/triple) across every
    space in the batch; a failure counts one (space, expression) instance.
    The Lukasiewicz-only laws and the half bound are reported as not
    applicable for other algebras.
    """
    tol = settings.resolve(tol)
    rng = np.random.default_rng(seed)
    if degrees is None:
        drawn = sample_degrees(rng, algebra, len(omega), samples, strict=strict, tol=tol)
        degrees, acceptance = drawn.degrees, drawn.acceptance
    else:
        acceptance = 1.0
    batch = SpaceBatch(omega, algebra, degrees)
    exprs = expression_pool(omega, depth, rng)
    tally = _Tally(batch, tol)
    ev = batch.evaluate
    fmt = format_expr
    luk = algebra.tnorm is TNorm.LUKASIEWICZ and algebra.negation is Negation.STANDARD

    for a in exprs:
        va = ev(a)
        tally.check("range", (va >= -tol) & (va <= 1.0 + tol), lambda: fmt(a))
        tally.close("identity", ev(Or((a, BOT))), va, lambda: f"{fmt(a)} or bot")
        tally.close("identity", ev(And((a, TOP))), va, lambda: f"{fmt(a)} and top")
        tally.close("annihilation", ev(And((a, BOT))), 0.0, lambda: f"{fmt(a)} and bot")
        tally.close("annihilation", ev(Or((a, TOP))), 1.0, lambda: f"{fmt(a)} or top")
        tally.close("double_negation", ev(Not(Not(a))), va, lambda: f"not not {fmt(a)}")
        if luk:
            na = ev(Not(a))
            tally.close("excluded_middle", kernels.tconorm(algebra.tconorm.code, na, va), 1.0, lambda: fmt(a))
            tally.close("noncontradiction", kernels.tnorm(algebra.tnorm.code, na, va), 0.0, lambda: fmt(a))

    n_pairs = min(pairs, len(exprs) ** 2)
    idx = rng.integers(0, len(exprs), size=(n_pairs, 3))
    for i, j, k in idx:
        a, b, c = exprs[i], exprs[j], exprs[k]
        va, vb, vc = ev(a), ev(b), ev(c)
        tally.close("commutativity", ev(Or((a, b))), ev(Or((b, a))), lambda: f"{fmt(a)} | {fmt(b)}")
        tally.close("commutativity", ev(And((a, b))), ev(And((b, a))), lambda: f"{fmt(a)} & {fmt(b)}")
        tally.close(
            "associativity",
            ev(Or((Or((a, b)), c))),
            ev(Or((a, Or((b, c))))),
            lambda: f"{fmt(a)} | {fmt(b)} | {fmt(c)}",
        )
        tally.close(
            "associativity",
            ev(And((And((a, b)), c))),
            ev(And((a, And((b, c))))),
            lambda: f"{fmt(a)} & {fmt(b)} & {fmt(c)}",
        )
        tally.close("de_morgan", ev(Not(Or((a, b)))), ev(And((Not(a), Not(b)))), lambda: f"not({fmt(a)} or {fmt(b)})")
        tally.close("de_morgan", ev(Not(And((a, b)))), ev(Or((Not(a), Not(b)))), lambda: f"not({fmt(a)} and {fmt(b)})")
        if luk:
            tally.close(
                "lukasiewicz_max",
                ev(Or((a, And((Not(a), b))))),
                np.maximum(va, vb),
                lambda: f"{fmt(a)} | {fmt(b)}",
            )
            tally.close(
                "lukasiewicz_min",
                ev(And((a, Or((Not(a), b))))),
                np.minimum(va, vb),
                lambda: f"{fmt(a)} | {fmt(b)}",
            )
        # residuum equals 1 exactly when antecedent <= consequent (left-continuous t-norms)
        if algebra.left_continuous:
            r = kernels.residuum(algebra.tnorm.code, va, vb)
            ok = np.where(va <= vb, r == 1.0, (r < 1.0) | (va - vb <= tol))
            tally.check("adjunction", ok, lambda: f"{fmt(a)} => {fmt(b)}")
        # increasing and decreasing chains built from three expressions
        up = [a, Or((a, b)), Or((a, b, c))]
        ups = [ev(e) for e in up]
        tally.check("monotone_chain", (ups[1] >= ups[0] - tol) & (ups[2] >= ups[1] - tol), lambda: f"{fmt(a)}, {fmt(b)}, {fmt(c)}")
        union = ev(Or(tuple(up)))
        if algebra.tconorm.code == 0:
            tally.close("upper_limit", ups[-1], union, lambda: f"{fmt(a)}, {fmt(b)}, {fmt(c)}")
        else:
            tally.check("upper_limit", ups[-1] <= union + tol, lambda: f"{fmt(a)}, {fmt(b)}, {fmt(c)}")
        down = [a, And((a, b)), And((a, b, c))]
        downs = [ev(e) for e in down]
        meet = ev(And(tuple(down)))
        if algebra.tnorm.code == 0:
            tally.close("lower_limit", downs[-1], meet, lambda: f"{fmt(a)}, {fmt(b)}, {fmt(c)}")
        else:
            tally.check("lower_limit", downs[-1] >= meet - tol, lambda: f"{fmt(a)}, {fmt(b)}, {fmt(c)}")

    half = tally.law("half_bound", applicable=algebra.negation is Negation.STANDARD)
    if half.applicable:
        big = (degrees > 0.5 + tol).sum(axis=1)
        tally.check("half_bound", big <= 1, "two elementary degrees above 0.5")

    order = [
        "range",
        "commutativity",
        "associativity",
        "identity",
        "annihilation",
        "double_negation",
        "de_morgan",
        "excluded_middle",
        "noncontradiction",
        "lukasiewicz_max",
        "lukasiewicz_min",
        "half_bound",
        "upper_limit",
        "lower_limit",
        "monotone_chain",
        "adjunction",
    ]
    results = []
    for name in order:
        if name in tally.results:
            results.append(tally.results[name])
        else:
            results.append(LawResult(name, applicable=False))
    return LawReport(results, len(batch), len(exprs), acceptance)
