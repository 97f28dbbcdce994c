"""Truncated free associative algebra Ass_n: words, exp/log, BCH, del_k, trace."""

from fractions import Fraction

from .freelie import (ContextError, LieElement, NotPrimitive, bracket_expansion,
                      collapse, word_str, parse_word)

__all__ = ["AssocElement", "aproduct", "aexp", "alog", "bch", "lie_to_assoc",
           "project_to_lie", "del_k", "trace", "aone", "aword"]


class AssocElement:
    """Rational combination of words (the empty word is the unit)."""

    __slots__ = ("n", "maxdeg", "coeffs")

    def __init__(self, n, maxdeg, coeffs=None):
        self.n = n
        self.maxdeg = maxdeg
        cs = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if c and len(w) <= maxdeg:
                if w and (min(w) < 1 or max(w) > n):
                    raise ValueError("letter out of range in %s" % word_str(w))
                cs[w] = cs.get(w, 0) + Fraction(c)
        self.coeffs = {w: c for w, c in cs.items() if c}

    @classmethod
    def _raw(cls, n, maxdeg, coeffs):
        e = cls.__new__(cls)
        e.n, e.maxdeg, e.coeffs = n, maxdeg, coeffs
        return e

    def _check(self, other):
        if not isinstance(other, AssocElement):
            raise TypeError("expected AssocElement")
        if (self.n, self.maxdeg) != (other.n, other.maxdeg):
            raise ContextError("context mismatch")

    def __add__(self, other):
        self._check(other)
        cs = dict(self.coeffs)
        for w, c in other.coeffs.items():
            r = cs.get(w, 0) + c
            if r:
                cs[w] = r
            else:
                cs.pop(w, None)
        return AssocElement._raw(self.n, self.maxdeg, cs)

    def __neg__(self):
        return AssocElement._raw(self.n, self.maxdeg, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AssocElement):
            return aproduct(self, other)
        s = Fraction(other)
        if not s:
            return AssocElement._raw(self.n, self.maxdeg, {})
        return AssocElement._raw(self.n, self.maxdeg, {w: s * c for w, c in self.coeffs.items()})

    def __rmul__(self, s):
        return self * s

    def __eq__(self, other):
        if not isinstance(other, AssocElement):
            return NotImplemented
        return (self.n, self.maxdeg) == (other.n, other.maxdeg) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def constant(self):
        return self.coeffs.get((), Fraction(0))

    def degree_part(self, d):
        return AssocElement._raw(self.n, self.maxdeg, {w: c for w, c in self.coeffs.items() if len(w) == d})

    def to_dict(self):
        out = {}
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            c = self.coeffs[w]
            out.setdefault(str(len(w)), {})[word_str(w)] = [c.numerator, c.denominator]
        return out

    @classmethod
    def from_dict(cls, n, maxdeg, data):
        return cls(n, maxdeg, {parse_word(ws): Fraction(p, q)
                               for block in data.values() for ws, (p, q) in block.items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join("%s*%s" % (self.coeffs[w], word_str(w) or "1")
                          for w in sorted(self.coeffs, key=lambda w: (len(w), w)))


def aone(n, maxdeg):
    return AssocElement._raw(n, maxdeg, {(): Fraction(1)})


def aword(n, maxdeg, w, c=1):
    return AssocElement(n, maxdeg, {tuple(w): c})


def aproduct(u, v):
    """Concatenation product, truncated."""
    u._check(v)
    N = u.maxdeg
    out = {}
    for a, ca in u.coeffs.items():
        room = N - len(a)
        for b, cb in v.coeffs.items():
            if len(b) > room:
                continue
            w = a + b
            r = out.get(w, 0) + ca * cb
            if r:
                out[w] = r
            else:
                out.pop(w, None)
    return AssocElement._raw(u.n, N, out)


def aexp(z):
    if z.constant():
        raise ValueError("aexp needs zero constant term")
    res = aone(z.n, z.maxdeg)
    term = aone(z.n, z.maxdeg)
    for k in range(1, z.maxdeg + 1):
        term = aproduct(term, z) * Fraction(1, k)
        if not term:
            break
        res = res + term
    return res


def alog(g):
    if g.constant() != 1:
        raise ValueError("alog needs constant term 1")
    y = g - aone(g.n, g.maxdeg)
    res = AssocElement._raw(g.n, g.maxdeg, {})
    term = aone(g.n, g.maxdeg)
    for k in range(1, g.maxdeg + 1):
        term = aproduct(term, y)
        if not term:
            break
        res = res + term * Fraction((-1) ** (k + 1), k)
    return res


def lie_to_assoc(a):
    out = {}
    for w, c in a.coeffs.items():
        for v, k in bracket_expansion(w).items():
            r = out.get(v, 0) + c * k
            if r:
                out[v] = r
            else:
                out.pop(v, None)
    return AssocElement._raw(a.n, a.maxdeg, out)


def project_to_lie(z):
    """Inverse of lie_to_assoc on its image; NotPrimitive names the failing degree."""
    if z.constant():
        raise NotPrimitive(0)
    by_deg = {}
    for w, c in z.coeffs.items():
        by_deg.setdefault(len(w), {})[w] = c
    out = {}
    for d in sorted(by_deg):
        out.update(collapse(by_deg[d], d))
    return LieElement._raw(z.n, z.maxdeg, {w: Fraction(c) for w, c in out.items()})


def bch(a, b):
    """log(exp(a) exp(b)) for Lie elements, via the truncated series in Ass_n."""
    a._check(b)
    A, B = lie_to_assoc(a), lie_to_assoc(b)
    return project_to_lie(alog(aproduct(aexp(A), aexp(B))))


def del_k(z, k):
    """Keep words ending in x_k and drop that last letter."""
    if not 1 <= k <= z.n:
        raise ValueError("strand index %d out of range" % k)
    out = {}
    for w, c in z.coeffs.items():
        if w and w[-1] == k:
            out[w[:-1]] = out.get(w[:-1], 0) + c
    return AssocElement._raw(z.n, z.maxdeg, {w: c for w, c in out.items() if c})


def trace(z):
    """Image in cyclic words."""
    from .cyclic import CyclicElement, canonical_tuple
    if z.constant():
        raise ValueError("trace needs zero constant term")
    out = {}
    for w, c in z.coeffs.items():
        cw = canonical_tuple(w)
        out[cw] = out.get(cw, 0) + c
    return CyclicElement._raw(z.n, z.maxdeg, {w: c for w, c in out.items() if c})


