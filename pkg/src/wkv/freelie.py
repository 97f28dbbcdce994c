"""Truncated free Lie algebra on x1..xn in the Lyndon basis.

Words are tuples of letters 1..n.  A Lie element stores rational
coefficients on Lyndon words; the word w stands for its standard
bracketing P(w).  Brackets are computed by expanding into the free
associative algebra and collapsing back with the triangular property
P(w) = w + (lexicographically larger words).
"""

from fractions import Fraction
from functools import lru_cache
import re

__all__ = [
    "ContextError", "NotPrimitive", "LieElement",
    "lyndon_basis", "lyndon_words_upto", "is_lyndon", "standard_factor",
    "bracket_expansion", "collapse", "bracket", "generator", "lie_from_bracket_expr",
    "lie_zero", "word_str", "parse_word", "witt_dimension",
]


class ContextError(ValueError):
    """Operands live in different (n, maxdeg) contexts."""


class NotPrimitive(ValueError):
    def __init__(self, degree, word=None):
        self.degree = degree
        self.word = word
        super().__init__("not primitive at degree %d" % degree)


def word_str(w):
    return "".join("x%d" % a for a in w)


def parse_word(s):
    s = s.strip()
    if not re.fullmatch(r"(x[1-9])*", s):
        raise ValueError("bad word %r" % s)
    return tuple(int(c) for c in s[1::2])


def is_lyndon(w):
    w = tuple(w)
    if not w:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words_upto(n, d):
    """All Lyndon words of length <= d over 1..n, via Duval's generation."""
    out = []
    w = [0]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < d:
            w.append(w[len(w) - m])
        while w and w[-1] == n:
            w.pop()
    return out


@lru_cache(maxsize=None)
def lyndon_basis(n, d):
    """Lyndon words of length exactly d over n letters, lexicographically sorted."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    return tuple(sorted(w for w in lyndon_words_upto(n, d) if len(w) == d))


def witt_dimension(n, d):
    def mobius(k):
        res, p = 1, 2
        while p * p <= k:
            if k % p == 0:
                k //= p
                if k % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if k > 1 else res
    return sum(mobius(e) * n ** (d // e) for e in range(1, d + 1) if d % e == 0) // d


@lru_cache(maxsize=None)
def standard_factor(w):
    """Split a Lyndon word w = uv with v its longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("word of length 1 has no standard factorization")


def _commutator(a, b):
    out = {}
    for u, cu in a.items():
        for v, cv in b.items():
            c = cu * cv
            out[u + v] = out.get(u + v, 0) + c
            out[v + u] = out.get(v + u, 0) - c
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def _expansion(w):
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factor(w)
    return _commutator(_expansion(u), _expansion(v))


def bracket_expansion(w):
    """P(w) as a dict word -> int in the free associative algebra."""
    return dict(_expansion(tuple(w)))


def collapse(z, degree=None):
    """Rewrite a homogeneous associative polynomial as a Lyndon combination.

    Raises NotPrimitive when z is outside the Lie subspace.
    """
    z = {k: c for k, c in z.items() if c}
    out = {}
    while z:
        w = min(z)
        if not is_lyndon(w):
            raise NotPrimitive(len(w) if degree is None else degree, w)
        c = z[w]
        out[w] = c
        for v, cv in _expansion(w).items():
            r = z.get(v, 0) - c * cv
            if r:
                z[v] = r
            else:
                z.pop(v, None)
    return out


@lru_cache(maxsize=None)
def _basis_bracket(u, v):
    if u == v:
        return ()
    res = collapse(_commutator(_expansion(u), _expansion(v)))
    return tuple(sorted(res.items()))


class LieElement:
    """Element of lie_n truncated above degree maxdeg."""

    __slots__ = ("n", "maxdeg", "coeffs")

    def __init__(self, n, maxdeg, coeffs=None):
        self.n = n
        self.maxdeg = maxdeg
        cs = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if c and len(w) <= maxdeg:
                if not is_lyndon(w) or max(w) > n:
                    raise ValueError("%s is not a Lyndon word over %d letters" % (word_str(w), n))
                cs[w] = Fraction(c)
        self.coeffs = cs

    @classmethod
    def _raw(cls, n, maxdeg, coeffs):
        e = cls.__new__(cls)
        e.n, e.maxdeg, e.coeffs = n, maxdeg, coeffs
        return e

    def _check(self, other):
        if not isinstance(other, LieElement):
            raise TypeError("expected LieElement")
        if (self.n, self.maxdeg) != (other.n, other.maxdeg):
            raise ContextError("context mismatch: (%d,%d) vs (%d,%d)"
                               % (self.n, self.maxdeg, other.n, other.maxdeg))

    def __add__(self, other):
        self._check(other)
        cs = dict(self.coeffs)
        for w, c in other.coeffs.items():
            r = cs.get(w, 0) + c
            if r:
                cs[w] = r
            else:
                cs.pop(w, None)
        return LieElement._raw(self.n, self.maxdeg, cs)

    def __neg__(self):
        return LieElement._raw(self.n, self.maxdeg, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = Fraction(s)
        if not s:
            return LieElement._raw(self.n, self.maxdeg, {})
        return LieElement._raw(self.n, self.maxdeg, {w: s * c for w, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return (self.n, self.maxdeg) == (other.n, other.maxdeg) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.maxdeg, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def degree_part(self, d):
        return LieElement._raw(self.n, self.maxdeg, {w: c for w, c in self.coeffs.items() if len(w) == d})

    def truncate(self, d):
        return LieElement._raw(self.n, self.maxdeg, {w: c for w, c in self.coeffs.items() if len(w) <= d})

    def with_maxdeg(self, maxdeg):
        """Same element in another truncation context (drops degrees above it)."""
        return LieElement._raw(self.n, maxdeg, {w: c for w, c in self.coeffs.items() if len(w) <= maxdeg})

    def degrees(self):
        return sorted({len(w) for w in self.coeffs})

    def min_degree(self):
        return min((len(w) for w in self.coeffs), default=None)

    def to_dict(self):
        """Serialization: {degree: {word string: [num, den]}}."""
        out = {}
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            c = self.coeffs[w]
            out.setdefault(str(len(w)), {})[word_str(w)] = [c.numerator, c.denominator]
        return out

    @classmethod
    def from_dict(cls, n, maxdeg, data):
        cs = {}
        for d, block in data.items():
            for ws, (p, q) in block.items():
                w = parse_word(ws)
                if len(w) != int(d):
                    raise ValueError("word %s filed under degree %s" % (ws, d))
                cs[w] = Fraction(p, q)
        return cls(n, maxdeg, cs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            parts.append("%s*P(%s)" % (self.coeffs[w], word_str(w)))
        return " + ".join(parts)


def lie_zero(n, maxdeg):
    return LieElement._raw(n, maxdeg, {})


def generator(n, maxdeg, i):
    if not 1 <= i <= n:
        raise ValueError("generator x%d out of range for n=%d" % (i, n))
    return LieElement._raw(n, maxdeg, {(i,): Fraction(1)} if maxdeg >= 1 else {})


def bracket(a, b):
    """Lie bracket [a, b], truncated at the shared maxdeg."""
    a._check(b)
    N = a.maxdeg
    out = {}
    for u, cu in a.coeffs.items():
        for v, cv in b.coeffs.items():
            if len(u) + len(v) > N:
                continue
            if u == v:
                continue
            if u < v:
                terms, sgn = _basis_bracket(u, v), 1
            else:
                terms, sgn = _basis_bracket(v, u), -1
            c = sgn * cu * cv
            for w, k in terms:
                r = out.get(w, 0) + c * k
                if r:
                    out[w] = r
                else:
                    out.pop(w, None)
    return LieElement._raw(a.n, N, out)


_TOKEN = re.compile(r"\s*(?:(x[1-9])|(\d+(?:/\d+)?)\s*\*|([\[\],+\-]))")


def lie_from_bracket_expr(expr, n, maxdeg):
    """Evaluate an expression such as "[x1,[x1,x2]] - 1/2*x2"."""
    toks = []
    pos = 0
    s = expr.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError("malformed expression at %r" % s[pos:])
        if m.group(1):
            toks.append(("gen", int(m.group(1)[1:])))
        elif m.group(2):
            toks.append(("num", Fraction(m.group(2))))
        else:
            toks.append((m.group(3), None))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    toks.append(("end", None))
    i = 0

    def peek():
        return toks[i][0]

    def take(kind):
        nonlocal i
        if toks[i][0] != kind:
            raise ValueError("malformed expression: expected %s in %r" % (kind, expr))
        t = toks[i]
        i += 1
        return t

    def atom():
        k = peek()
        if k == "gen":
            g = take("gen")[1]
            if g > n:
                raise ValueError("generator x%d out of range for n=%d" % (g, n))
            return generator(n, maxdeg, g)
        if k == "[":
            take("[")
            a = sum_()
            take(",")
            b = sum_()
            take("]")
            return bracket(a, b)
        raise ValueError("malformed expression %r" % expr)

    def term():
        if peek() == "num":
            c = take("num")[1]
            return c * atom()
        return atom()

    def sum_():
        sign = 1
        if peek() in "+-":
            sign = -1 if take(peek())[0] == "-" else 1
        acc = sign * term()
        while peek() in ("+", "-"):
            op = take(peek())[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    res = sum_()
    take("end")
    return res
