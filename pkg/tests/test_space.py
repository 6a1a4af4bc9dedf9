import numpy as np
import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from vaguespace import settings
from vaguespace.algebra import AlgebraTriple, TNorm
from vaguespace.errors import DomainError, UnknownAttributeError, UnsupportedCompositionError
from vaguespace.expr import BOT, TOP, And, Elem, ElementaryAttributeSet, Not, Or, enumerate_exprs, parse_expr
from vaguespace.props import sample_degrees
from vaguespace.space import (
    AXIOMS,
    MembershipSpace,
    SpaceBatch,
    Status,
    check_axioms,
    check_limit_theorems,
    conditional_degree,
    consistent_degree,
    evaluate,
    is_normal,
    is_regular,
    quotient_chain,
)

INTERVALS = ("[0,40]", "(40,80]", "(80,120]", "(120,160]", "(160,200]")


@pytest.fixture
def interval_space():
    return MembershipSpace.from_values(INTERVALS, [1, 0, 0, 0, 0], "minimum", x=25.0)


def pq(p, q, tnorm="minimum", **kw):
    return MembershipSpace.from_values(("p", "q"), (p, q), tnorm, **kw)


# -- evaluate -----------------------------------------------------------------------------

def test_interval_example(interval_space):
    assert evaluate(interval_space, Elem("[0,40]")) == 1.0
    assert evaluate(interval_space, BOT) == 0.0
    assert evaluate(interval_space, TOP) == 1.0
    rep = check_axioms(interval_space)
    assert rep.valid and rep.regular and rep.normal
    assert set(rep.verdicts) == set(AXIOMS)


def test_evaluate_direct_folds():
    s = pq(0.8, 0.2)
    assert evaluate(s, parse_expr("p or q")) == 0.8
    assert evaluate(s, parse_expr("not p")) == pytest.approx(0.2, abs=1e-15)
    assert evaluate(s, parse_expr("p and q")) == 0.2


def test_evaluate_overrides_and_strict_mode():
    s = pq(0.6, 0.3, negation_overrides={"p": 0.35})
    assert evaluate(s, Not(Elem("p"))) == 0.35
    assert evaluate(s, Not(Elem("q"))) == pytest.approx(0.7)
    compound = Not(Or((Elem("p"), Elem("q"))))
    assert evaluate(s, compound) == pytest.approx(0.4)
    with pytest.raises(UnsupportedCompositionError):
        evaluate(s, compound, strict=True)
    # regular spaces never refuse
    assert evaluate(pq(0.6, 0.3), compound, strict=True) == pytest.approx(0.4)


def test_evaluate_rejects_unknown_attribute():
    with pytest.raises(UnknownAttributeError):
        evaluate(pq(0.5, 0.5), Elem("r"))


def test_constructor_checks_range_and_totality():
    with pytest.raises(DomainError):
        pq(1.2, 0.0)
    with pytest.raises(DomainError):
        MembershipSpace(ElementaryAttributeSet(("p", "q")), AlgebraTriple(TNorm.MINIMUM), {"p": 0.5})
    with pytest.raises(UnknownAttributeError):
        MembershipSpace(ElementaryAttributeSet(("p",)), AlgebraTriple(TNorm.MINIMUM), {"p": 0.5, "z": 0.1})


# -- axioms -------------------------------------------------------------------------------

def test_all_zero_fails_axiom_one():
    rep = check_axioms(pq(0.0, 0.0))
    assert rep.verdicts["I"].status is Status.FAIL
    assert rep.verdicts["I"].witness == "no positive elementary degree"
    assert not rep.valid


def test_unit_degree_excludes_others():
    rep = check_axioms(pq(1.0, 0.2))
    assert rep.verdicts["I"].status is Status.FAIL


def test_axiom_five_failure_witness():
    rep = check_axioms(pq(0.8, 0.7))
    assert rep.verdicts["V"].status is Status.FAIL
    assert rep.verdicts["V"].witness == "p"


def test_axiom_three_overrides():
    rep = check_axioms(pq(0.3, 0.2, negation_overrides={"p": 0.75}))
    assert rep.verdicts["III"].status is Status.FAIL and rep.verdicts["III"].witness == "p"
    rep = check_axioms(pq(0.3, 0.2, negation_overrides={"p": 0.5}))
    assert rep.valid and not rep.regular


def test_v_prime_profile():
    s = MembershipSpace.from_values(("a", "b", "c"), (0.5, 0.5, 0.5), "minimum")
    default = check_axioms(s)
    assert default.verdicts["V_prime"].status is Status.SKIPPED
    assert default.valid
    strict = check_axioms(s, require_v_prime=True)
    assert strict.verdicts["V_prime"].status is Status.FAIL


def test_witness_present_iff_fail():
    for vals in [(0, 0), (1, 0.3), (0.8, 0.7), (0.4, 0.3)]:
        rep = check_axioms(pq(*vals), require_v_prime=True)
        for v in rep.verdicts.values():
            assert (v.witness is not None) == (v.status is Status.FAIL)


def test_tolerance_setting_is_respected():
    s = pq(0.5 + 1e-7, 0.5)
    assert not check_axioms(s).valid
    assert check_axioms(s, tol=1e-6).valid
    old = settings.get_tolerance()
    try:
        settings.set_tolerance(1e-6)
        assert check_axioms(s).valid
    finally:
        settings.set_tolerance(old)


# -- derived quantities --------------------------------------------------------------------

def test_consistent_degree(interval_space):
    assert consistent_degree(interval_space) == 1.0
    assert consistent_degree(pq(0.6, 0.3)) == 0.6


@pytest.mark.parametrize(
    "tnorm, given_, target, expected",
    [("minimum", 0.7, 0.4, 0.4), ("lukasiewicz", 0.7, 0.4, 0.7), ("product", 0.3, 0.4, 1.0)],
)
def test_conditional_degree(tnorm, given_, target, expected):
    s = pq(given_, target, tnorm)
    assert conditional_degree(s, Elem("p"), Elem("q")) == pytest.approx(expected, abs=1e-12)


def test_quotient_chain():
    s = pq(0.8, 0.2)
    assert quotient_chain(s, [BOT, And((Elem("p"), BOT))]) == [(0.0, [BOT, And((Elem("p"), BOT))])]
    assert [v for v, _ in quotient_chain(s, [TOP, Or((Elem("p"), TOP))])] == [1.0]
    chain = quotient_chain(s, [Elem("p"), Elem("q"), Or((Elem("p"), Elem("q")))])
    assert chain == [(0.2, [Elem("q")]), (0.8, [Elem("p"), Or((Elem("p"), Elem("q")))])]


def test_limit_theorems():
    s = MembershipSpace.from_values(("a", "b", "c"), (0.2, 0.3, 0.1), "minimum")
    a, b, c = (Elem(n) for n in "abc")
    up = [a, Or((a, b)), Or((a, b, c))]
    v = check_limit_theorems(s, up)
    assert v.direction == "increasing" and v.relation == "equal" and v.holds
    luk = MembershipSpace.from_values(("a", "b", "c"), (0.2, 0.3, 0.1), "lukasiewicz")
    v = check_limit_theorems(luk, up)
    assert v.relation == "le" and v.holds and v.limit <= v.combined
    down = [Or((a, b)), a, And((a, c))]
    v = check_limit_theorems(s, down)
    assert v.direction == "decreasing" and v.holds
    v = check_limit_theorems(luk, [a, a, a])
    assert v.direction == "increasing" and v.holds
    with pytest.raises(DomainError):
        check_limit_theorems(s, [a, b, c])
    with pytest.raises(DomainError):
        check_limit_theorems(s, [])


# -- properties over random valid spaces -------------------------------------------------

OMEGA3 = ElementaryAttributeSet(("a", "b", "c"))
DEPTH1 = list(enumerate_exprs(OMEGA3, 1))


@st.composite
def valid_space(draw, tnorm=None):
    fam = draw(st.sampled_from(list(TNorm))) if tnorm is None else tnorm
    seed = draw(st.integers(0, 2**32 - 1))
    alg = AlgebraTriple(fam)
    deg = sample_degrees(np.random.default_rng(seed), alg, 3, 1).degrees[0]
    return MembershipSpace.from_values(OMEGA3, deg, alg)


@hsettings(max_examples=60)
@given(s=valid_space(), i=st.integers(0, len(DEPTH1) - 1), j=st.integers(0, len(DEPTH1) - 1))
def test_basic_laws(s, i, j):
    a, b = DEPTH1[i], DEPTH1[j]
    ev = lambda e: evaluate(s, e)
    assert ev(Or((a, b))) == pytest.approx(ev(Or((b, a))), abs=1e-9)
    assert ev(Or((a, BOT))) == pytest.approx(ev(a), abs=1e-9)
    assert ev(And((a, BOT))) == 0.0
    assert ev(And((a, TOP))) == pytest.approx(ev(a), abs=1e-9)
    assert ev(Or((a, TOP))) == 1.0
    assert ev(Not(Not(a))) == pytest.approx(ev(a), abs=1e-9)
    assert ev(Not(Or((a, b)))) == pytest.approx(ev(And((Not(a), Not(b)))), abs=1e-9)
    assert ev(Not(And((a, b)))) == pytest.approx(ev(Or((Not(a), Not(b)))), abs=1e-9)


@hsettings(max_examples=60)
@given(s=valid_space(TNorm.LUKASIEWICZ), i=st.integers(0, len(DEPTH1) - 1), j=st.integers(0, len(DEPTH1) - 1))
def test_lukasiewicz_laws(s, i, j):
    a, b = DEPTH1[i], DEPTH1[j]
    ev = lambda e: evaluate(s, e)
    assert ev(Or((Not(a), a))) == pytest.approx(1.0, abs=1e-9)
    assert ev(And((Not(a), a))) == pytest.approx(0.0, abs=1e-9)
    assert ev(Or((a, And((Not(a), b))))) == pytest.approx(max(ev(a), ev(b)), abs=1e-9)
    assert ev(And((a, Or((Not(a), b))))) == pytest.approx(min(ev(a), ev(b)), abs=1e-9)


@hsettings(max_examples=100)
@given(s=valid_space())
def test_half_bound(s):
    assert sum(v > 0.5 for v in s.degrees.values()) <= 1


@hsettings(max_examples=60)
@given(s=valid_space(), i=st.integers(0, len(DEPTH1) - 1), j=st.integers(0, len(DEPTH1) - 1))
def test_adjunction_form(s, i, j):
    if not s.algebra.left_continuous:
        return
    a, b = DEPTH1[i], DEPTH1[j]
    va, vb = evaluate(s, a), evaluate(s, b)
    assert (conditional_degree(s, a, b) == 1.0) == (va <= vb)


# -- batched evaluator ------------------------------------------------------------------

@pytest.mark.parametrize("tnorm", list(TNorm))
def test_batch_matches_scalar(tnorm):
    alg = AlgebraTriple(tnorm)
    rng = np.random.default_rng(2)
    drawn = sample_degrees(rng, alg, 3, 20, regular=False)
    batch = SpaceBatch(OMEGA3, alg, drawn.degrees, drawn.neg_degrees)
    for e in enumerate_exprs(OMEGA3, 2):
        if rng.random() > 0.05:
            continue
        col = batch.evaluate(e)
        for k in range(len(batch)):
            assert col[k] == pytest.approx(evaluate(batch.space(k), e), abs=1e-12)


def test_batch_shape_checked():
    with pytest.raises(DomainError):
        SpaceBatch(OMEGA3, AlgebraTriple(TNorm.MINIMUM), np.zeros((4, 2)))


def test_normal_and_regular_helpers():
    assert is_normal(pq(1.0, 0.0)) and not is_normal(pq(0.5, 0.5))
    assert is_regular(pq(0.5, 0.2)) and not is_regular(pq(0.5, 0.2, negation_overrides={"q": 0.5}))
