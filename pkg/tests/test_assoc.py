from fractions import Fraction

import pytest
from hypothesis import given, settings

from wkv.freelie import NotPrimitive, generator, lie_zero, ContextError, bracket
from wkv.assoc import (AssocElement, aexp, alog, aone, aproduct, aword, bch, del_k, lie_to_assoc,
                       project_to_lie, trace)
from wkv.cyclic import CyclicElement
from strategies import assoc_elements, lie_elements

N = 4


def W(*ws, n=2, N=N):
    out = AssocElement(n, N)
    for c, w in ws:
        out = out + aword(n, N, w, c)
    return out


def test_product_examples():
    x1, x2 = aword(2, N, (1,)), aword(2, N, (2,))
    v = W((1, (1, 2)), (3, (2,)))
    assert aproduct(aone(2, N), v) == v
    assert aproduct(x1, x2) == aword(2, N, (1, 2))
    assert aproduct(x1 + x2, x1 - x2) == W((1, (1, 1)), (-1, (1, 2)), (1, (2, 1)), (-1, (2, 2)))


def test_product_truncates():
    a = aword(2, 3, (1, 2))
    assert not aproduct(a, a)
    with pytest.raises(ContextError):
        aproduct(aword(2, 3, (1,)), aword(2, 4, (1,)))


def test_exp_log():
    z = AssocElement(2, N)
    assert aexp(z) == aone(2, N)
    x1 = aword(2, N, (1,))
    assert alog(aexp(x1)) == x1
    assert aexp(x1).coeffs[(1, 1, 1)] == Fraction(1, 6)
    with pytest.raises(ValueError):
        aexp(aone(2, N))
    with pytest.raises(ValueError):
        alog(x1)


def test_bch_examples():
    x, y = generator(2, N, 1), generator(2, N, 2)
    assert bch(x, lie_zero(2, N)) == x
    assert not bch(x, -x)
    assert bch(x, y).degree_part(2) == bracket(x, y) * Fraction(1, 2)
    # third order: (1/12)([x,[x,y]] + [y,[y,x]])
    third = (bracket(x, bracket(x, y)) + bracket(y, bracket(y, x))) * Fraction(1, 12)
    assert bch(x, y).degree_part(3) == third


def test_lie_assoc_maps():
    x1, x2 = generator(2, N, 1), generator(2, N, 2)
    c = bracket(x1, x2)
    assert lie_to_assoc(c) == W((1, (1, 2)), (-1, (2, 1)))
    assert project_to_lie(W((1, (1, 2)), (-1, (2, 1)))) == c
    with pytest.raises(NotPrimitive, match="not primitive at degree 2"):
        project_to_lie(aword(2, N, (1, 2)))


def test_del_k_examples():
    assert del_k(aword(2, N, (1, 2)), 2) == aword(2, N, (1,))
    assert not del_k(aword(2, N, (1,)), 2)
    assert del_k(aword(2, N, (2, 1, 1)), 1) == aword(2, N, (2, 1))
    with pytest.raises(ValueError):
        del_k(aword(2, N, (1,)), 3)


def test_trace_examples():
    assert trace(aword(2, N, (1, 2))) == CyclicElement(2, N, {(1, 2): 1})
    assert trace(aword(2, N, (2, 1))) == CyclicElement(2, N, {(1, 2): 1})
    assert not trace(W((1, (1, 2)), (-1, (2, 1))))
    with pytest.raises(ValueError):
        trace(aone(2, N))


@settings(max_examples=30, deadline=None)
@given(assoc_elements(2, 5), assoc_elements(2, 5), assoc_elements(2, 5))
def test_associativity(a, b, c):
    assert aproduct(aproduct(a, b), c) == aproduct(a, aproduct(b, c))


@settings(max_examples=30, deadline=None)
@given(assoc_elements(3, 5), assoc_elements(3, 5))
def test_trace_kills_commutators(u, v):
    assert not trace(aproduct(u, v) - aproduct(v, u))


@settings(max_examples=20, deadline=None)
@given(lie_elements(2, 6, terms=3), lie_elements(2, 6, terms=3))
def test_bch_is_primitive(a, b):
    bch(a, b)  # raises NotPrimitive otherwise


@settings(max_examples=20, deadline=None)
@given(lie_elements(3, 4), lie_elements(3, 4))
def test_bch_exp_compatibility(a, b):
    A, B = lie_to_assoc(a), lie_to_assoc(b)
    assert aexp(lie_to_assoc(bch(a, b))) == aproduct(aexp(A), aexp(B))


@settings(max_examples=30, deadline=None)
@given(assoc_elements(2, 5), assoc_elements(2, 5))
def test_del_k_linear_and_lowers_degree(u, v):
    for k in (1, 2):
        assert del_k(u + v * 3, k) == del_k(u, k) + del_k(v, k) * 3
        assert all(len(w) + 1 <= 5 for w in del_k(u, k).coeffs)
        for w in del_k(u, k).coeffs:
            assert u.coeffs.get(w + (k,))
