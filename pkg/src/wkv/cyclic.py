"""Cyclic words tr_n, one-variable series, the delta-tilde map and the tder action."""

from fractions import Fraction

from .freelie import ContextError, generator
from .assoc import AssocElement, aproduct, lie_to_assoc, bch, trace

__all__ = ["CyclicWord", "CyclicElement", "OneVarSeries", "canonical", "canonical_tuple",
           "eval_series", "delta_tilde", "tder_act_tr", "wheel", "cyc_zero"]


def canonical_tuple(w):
    w = tuple(w)
    if not w:
        raise ValueError("cyclic word must be nonempty")
    return min(w[i:] + w[:i] for i in range(len(w)))


class CyclicWord(tuple):
    """A cyclic word stored as its lexicographically minimal rotation."""

    def __new__(cls, letters):
        return super().__new__(cls, canonical_tuple(letters))

    def __str__(self):
        return "w(%s)" % "".join(str(a) for a in self)


def canonical(word):
    return CyclicWord(word)


def _cw_str(w):
    return "w(%s)" % "".join(str(a) for a in w)


def _parse_cw(s):
    s = s.strip()
    if not (s.startswith("w(") and s.endswith(")")) or not s[2:-1].isdigit():
        raise ValueError("bad cyclic word %r" % s)
    return canonical_tuple(int(c) for c in s[2:-1])


class CyclicElement:
    """Element of tr_n (or tr_n^s when sw is set), truncated at maxdeg."""

    __slots__ = ("n", "maxdeg", "coeffs", "sw")

    def __init__(self, n, maxdeg, coeffs=None, sw=False):
        self.n, self.maxdeg, self.sw = n, maxdeg, sw
        cs = {}
        for w, c in (coeffs or {}).items():
            w = canonical_tuple(w)
            if max(w) > n or min(w) < 1:
                raise ValueError("letter out of range in %s" % _cw_str(w))
            if c and len(w) <= maxdeg:
                if sw and len(w) == 1:
                    raise ValueError("one-wheels are not allowed with sw set")
                cs[w] = cs.get(w, 0) + Fraction(c)
        self.coeffs = {w: c for w, c in cs.items() if c}

    @classmethod
    def _raw(cls, n, maxdeg, coeffs, sw=False):
        e = cls.__new__(cls)
        e.n, e.maxdeg, e.coeffs, e.sw = n, maxdeg, coeffs, sw
        return e

    def _check(self, other):
        if not isinstance(other, CyclicElement):
            raise TypeError("expected CyclicElement")
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
        return CyclicElement._raw(self.n, self.maxdeg, cs, self.sw and other.sw)

    def __neg__(self):
        return CyclicElement._raw(self.n, self.maxdeg, {w: -c for w, c in self.coeffs.items()}, self.sw)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = Fraction(s)
        if not s:
            return CyclicElement._raw(self.n, self.maxdeg, {}, self.sw)
        return CyclicElement._raw(self.n, self.maxdeg, {w: s * c for w, c in self.coeffs.items()}, self.sw)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CyclicElement):
            return NotImplemented
        return (self.n, self.maxdeg) == (other.n, other.maxdeg) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degree_part(self, d):
        return CyclicElement._raw(self.n, self.maxdeg,
                                  {w: c for w, c in self.coeffs.items() if len(w) == d}, self.sw)

    def truncate(self, d):
        return CyclicElement._raw(self.n, self.maxdeg,
                                  {w: c for w, c in self.coeffs.items() if len(w) <= d}, self.sw)

    def drop_one_wheels(self):
        return CyclicElement._raw(self.n, self.maxdeg,
                                  {w: c for w, c in self.coeffs.items() if len(w) > 1}, True)

    def with_maxdeg(self, maxdeg):
        return CyclicElement._raw(self.n, maxdeg,
                                  {w: c for w, c in self.coeffs.items() if len(w) <= maxdeg}, self.sw)

    def min_degree(self):
        return min((len(w) for w in self.coeffs), default=None)

    def to_dict(self):
        out = {}
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            c = self.coeffs[w]
            out.setdefault(str(len(w)), {})[_cw_str(w)] = [c.numerator, c.denominator]
        return out

    @classmethod
    def from_dict(cls, n, maxdeg, data, sw=False):
        return cls(n, maxdeg, {_parse_cw(k): Fraction(p, q)
                               for block in data.values() for k, (p, q) in block.items()}, sw)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join("%s*%s" % (self.coeffs[w], _cw_str(w))
                          for w in sorted(self.coeffs, key=lambda w: (len(w), w)))


def cyc_zero(n, maxdeg):
    return CyclicElement._raw(n, maxdeg, {})


def wheel(n, maxdeg, letters, c=1):
    return CyclicElement(n, maxdeg, {canonical_tuple(letters): c})


class OneVarSeries:
    """sum_k c_k t^k with k >= 1, truncated at maxdeg."""

    __slots__ = ("coeffs", "maxdeg")

    def __init__(self, coeffs=None, maxdeg=8):
        self.maxdeg = maxdeg
        cs = {}
        for k, c in (coeffs or {}).items():
            k = int(k)
            if k < 1:
                raise ValueError("series must have no constant term")
            if c and k <= maxdeg:
                cs[k] = Fraction(c)
        self.coeffs = cs

    def __getitem__(self, k):
        return self.coeffs.get(k, Fraction(0))

    def __add__(self, other):
        m = min(self.maxdeg, other.maxdeg)
        ks = set(self.coeffs) | set(other.coeffs)
        return OneVarSeries({k: self[k] + other[k] for k in ks}, m)

    def __neg__(self):
        return OneVarSeries({k: -c for k, c in self.coeffs.items()}, self.maxdeg)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return OneVarSeries({k: Fraction(s) * c for k, c in self.coeffs.items()}, self.maxdeg)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, OneVarSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def to_dict(self):
        return {str(k): [c.numerator, c.denominator] for k, c in sorted(self.coeffs.items())}

    @classmethod
    def from_dict(cls, data, maxdeg):
        return cls({int(k): Fraction(p, q) for k, (p, q) in data.items()}, maxdeg)

    def __repr__(self):
        return "OneVarSeries(%s)" % ", ".join("t^%d: %s" % kv for kv in sorted(self.coeffs.items()))


def eval_series(f, w, N=None):
    """sum_k f_k tr(w^k) for w in Ass_n with zero constant term."""
    if w.constant():
        raise ValueError("eval_series needs zero constant term")
    N = w.maxdeg if N is None else N
    ctx = AssocElement(w.n, N, w.coeffs)
    out = cyc_zero(w.n, N)
    power = None
    for k in range(1, N + 1):
        power = ctx if power is None else aproduct(power, ctx)
        if not power:
            break
        if f[k]:
            out = out + trace(power) * f[k]
    return out


def delta_tilde(a, N):
    """a(x) + a(y) - a(log(e^x e^y)) in tr_2, x = x1, y = x2."""
    x, y = generator(2, N, 1), generator(2, N, 2)
    return (eval_series(a, lie_to_assoc(x), N) + eval_series(a, lie_to_assoc(y), N)
            - eval_series(a, lie_to_assoc(bch(x, y)), N))


def tder_act_tr(D, w):
    """Letterwise action: each x_i in a cyclic word is replaced by [x_i, a_i]."""
    if (D.n, D.maxdeg) != (w.n, w.maxdeg):
        raise ContextError("context mismatch")
    N = w.maxdeg
    subs = {}
    for i, a in enumerate(D.parts, start=1):
        if not a:
            continue
        A = lie_to_assoc(a).coeffs
        s = {}
        for v, c in A.items():
            s[(i,) + v] = s.get((i,) + v, 0) + c
            s[v + (i,)] = s.get(v + (i,), 0) - c
        subs[i] = [(v, c) for v, c in s.items() if c]
    out = {}
    for word, cw in w.coeffs.items():
        L = len(word)
        for m, letter in enumerate(word):
            for v, c in subs.get(letter, ()):
                if L - 1 + len(v) > N:
                    continue
                cyc = canonical_tuple(word[:m] + v + word[m + 1:])
                r = out.get(cyc, 0) + cw * c
                if r:
                    out[cyc] = r
                else:
                    out.pop(cyc, None)
    return CyclicElement._raw(w.n, N, out, w.sw)
