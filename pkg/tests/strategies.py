"""Hypothesis strategies for random algebra elements."""


from hypothesis import strategies as st

from wkv.freelie import LieElement, lyndon_basis
from wkv.cyclic import CyclicElement, canonical_tuple
from wkv.tder import TDer
from wkv.arrowcalc import ArrowElement, usec, iota, mul, aone_el

coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool)


@st.composite
def lie_elements(draw, n, N, mindeg=1, maxdeg=None, terms=4):
    top = N if maxdeg is None else maxdeg
    words = [w for d in range(mindeg, top + 1) for w in lyndon_basis(n, d)]
    picks = draw(st.lists(st.tuples(st.sampled_from(words), coeff), max_size=terms))
    out = {}
    for w, c in picks:
        out[w] = out.get(w, 0) + c
    return LieElement(n, N, {w: c for w, c in out.items() if c})


@st.composite
def tders(draw, n, N, mindeg=1, maxdeg=None, terms=3):
    return TDer([draw(lie_elements(n, N, mindeg, maxdeg, terms)) for _ in range(n)], n, N)


@st.composite
def cyc_elements(draw, n, N, mindeg=1, maxdeg=None, terms=3):
    top = N if maxdeg is None else maxdeg
    d = st.integers(mindeg, top)
    word = d.flatmap(lambda k: st.lists(st.integers(1, n), min_size=k, max_size=k))
    picks = draw(st.lists(st.tuples(word, coeff), max_size=terms))
    out = {}
    for w, c in picks:
        k = canonical_tuple(tuple(w))
        out[k] = out.get(k, 0) + c
    return CyclicElement(n, N, {w: c for w, c in out.items() if c})


@st.composite
def arrow_elements(draw, n, N, maxdeg=None, factors=2, terms=3):
    """Random sums of products of u-trees and wheels."""
    top = N if maxdeg is None else maxdeg
    out = ArrowElement(n, N)
    for _ in range(draw(st.integers(1, terms))):
        term = aone_el(n, N) * draw(coeff)
        for _ in range(draw(st.integers(0, factors))):
            if draw(st.booleans()):
                p = usec(draw(tders(n, N, 1, top, terms=1)))
            else:
                p = iota(draw(cyc_elements(n, N, 1, top, terms=1)))
            term = mul(term, p)
        out = out + term
    return out


@st.composite
def assoc_elements(draw, n, N, mindeg=1, maxdeg=None, terms=4):
    from wkv.assoc import AssocElement
    top = N if maxdeg is None else maxdeg
    d = st.integers(mindeg, top)
    word = d.flatmap(lambda k: st.lists(st.integers(1, n), min_size=k, max_size=k).map(tuple))
    picks = draw(st.lists(st.tuples(word, coeff), max_size=terms))
    out = {}
    for w, c in picks:
        out[w] = out.get(w, 0) + c
    return AssocElement(n, N, out)
