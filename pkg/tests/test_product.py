import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vaguespace.algebra import AlgebraTriple, TNorm
from vaguespace.errors import DomainError
from vaguespace.expr import BOT, TOP, Elem, Not, Or, And
from vaguespace.product import (
    ProductSpace,
    check_product,
    check_product_limit_theorems,
    evaluate_product,
    is_product_normal,
    is_product_regular,
    product,
    vector_join,
    vector_meet,
    vector_order,
)
from vaguespace.space import MembershipSpace, evaluate

FIVE = ("a", "b", "c", "d", "e")


def five(values, tnorm="minimum"):
    return MembershipSpace.from_values(FIVE, values, tnorm)


def test_cartesian_count_is_lazy():
    p = product([five([1, 0, 0, 0, 0]), five([0, 1, 0, 0, 0])])
    assert p.n_tuples == 25
    tuples = list(p.attribute_tuples())
    assert len(tuples) == 25 and tuples[0] == ("a", "a")
    big = ProductSpace(tuple(five([1, 0, 0, 0, 0]) for _ in range(9)))
    with pytest.raises(DomainError):
        big.attribute_tuples()


def test_empty_product_rejected():
    with pytest.raises(DomainError):
        product([])


def test_single_component_agrees():
    s = five([0.3, 0.2, 0, 0, 0])
    p = product([s])
    assert evaluate_product(p, [Or((Elem("a"), Elem("b")))]) == (evaluate(s, Or((Elem("a"), Elem("b")))),)


def test_bounds_and_componentwise_values():
    s1 = MembershipSpace.from_values(("p", "r"), (0.8, 0.2), "minimum")
    s2 = MembershipSpace.from_values(("q", "r"), (0.3, 0.5), "product")
    p = product([s1, s2])
    assert evaluate_product(p, [BOT, BOT]) == (0.0, 0.0)
    assert evaluate_product(p, [TOP, TOP]) == (1.0, 1.0)
    assert evaluate_product(p, [Elem("p"), Elem("q")]) == (0.8, 0.3)
    v = evaluate_product(p, [Or((Elem("p"), Elem("r"))), Or((Elem("q"), Elem("r")))])
    assert v == (0.8, pytest.approx(0.3 + 0.5 - 0.15))
    with pytest.raises(DomainError):
        evaluate_product(p, [BOT])


def test_normality():
    assert is_product_normal(product([five([1, 0, 0, 0, 0]), five([0, 0, 1, 0, 0])]))
    assert not is_product_normal(product([five([1, 0, 0, 0, 0]), five([0.5, 0.5, 0, 0, 0])]))
    assert is_product_regular(product([five([1, 0, 0, 0, 0])]))
    assert all(r.valid for r in check_product(product([five([0.4, 0.6, 0, 0, 0])])))


def test_vector_order_examples():
    assert vector_order((0.2, 0.5), (0.3, 0.9)) == "le"
    assert vector_join((0.2, 0.5), (0.3, 0.9)) == (0.3, 0.9)
    assert vector_order((0.2, 0.9), (0.3, 0.5)) == "incomparable"
    assert vector_join((0.2, 0.9), (0.3, 0.5)) == (0.3, 0.9)
    assert vector_meet((0.2, 0.9), (0.3, 0.5)) == (0.2, 0.5)
    a = (0.4, 0.1, 0.7)
    assert vector_order(a, a) == "equal"
    assert vector_join(a, a) == vector_meet(a, a) == a
    with pytest.raises(DomainError):
        vector_order((0.1,), (0.1, 0.2))


vec = st.lists(st.floats(0, 1, allow_nan=False), min_size=3, max_size=3).map(tuple)


@given(a=vec, b=vec, c=vec)
def test_lattice_laws(a, b, c):
    assert vector_join(a, vector_meet(a, b)) == a
    assert vector_meet(a, vector_join(a, b)) == a
    assert vector_join(a, b) == vector_join(b, a)
    assert vector_join(vector_join(a, b), c) == vector_join(a, vector_join(b, c))
    assert vector_meet(vector_meet(a, b), c) == vector_meet(a, vector_meet(b, c))
    assert vector_order(vector_meet(a, b), vector_join(a, b), 0.0) in ("le", "equal")


def test_limit_theorems_componentwise():
    s1 = MembershipSpace.from_values(("p", "q"), (0.3, 0.4), "minimum")
    s2 = MembershipSpace.from_values(("p", "q"), (0.3, 0.4), "lukasiewicz")
    p = product([s1, s2])
    P, Q = Elem("p"), Elem("q")
    up = [(P, P), (Or((P, Q)), Or((P, Q)))]
    v = check_product_limit_theorems(p, up)
    assert v.direction == "increasing" and v.relations == ("equal", "le") and v.holds
    down = [(Or((P, Q)), Or((P, Q))), (And((P, Q)), And((P, Q)))]
    v = check_product_limit_theorems(p, down)
    assert v.direction == "decreasing" and v.holds
    with pytest.raises(DomainError):
        check_product_limit_theorems(p, [(P, Q), (Q, P)])
