"""Structured model of arrow diagrams on n strands.

A^w(up_n) is realized as U(P) with P = tr_n x| (a_n + tder_n).  Elements
are combinations of PBW monomials: sorted tuples of primitives.

Primitive keys sort wheels before trees:
    Wheel(c)       -> (0, len(c), c)             c a canonical cyclic word
    Tree(i, w)     -> (1, i, len(w), w)          head on strand i, Lyndon word w

Structure constants: [u D, u E] = u [D, E], [u D, iota w] = iota(D.w),
wheels commute.  The lower section is l = u - iota o div, which is the
sign for which e^{uD} (e^{uD})^* = exp(iota j(e^D)) with j built from div.
"""

from fractions import Fraction
from itertools import combinations
import re

from .freelie import ContextError, LieElement
from .cyclic import CyclicElement, canonical_tuple, tder_act_tr
from .tder import TDer, TAutElement, td_bracket, div, elementary, lie_substitute

__all__ = ["ArrowElement", "iota", "usec", "lsec", "mul", "exp_el", "log_el", "arrow", "Rvalue",
           "star", "Jmap", "pi_proj", "coproduct", "is_grouplike", "place", "cable",
           "unzip_strand", "switch_sign", "adjoint_sign", "delete_strand", "commutator",
           "aone_el", "azero_el", "wheels_part", "mono_str", "parse_mono", "NonWheelResidue"]


class NonWheelResidue(ArithmeticError):
    pass


def pdeg(p):
    return p[1] if p[0] == 0 else p[2]


def mdeg(m):
    return sum(pdeg(p) for p in m)


def wheel_key(c):
    c = canonical_tuple(c)
    return (0, len(c), c)


def tree_key(i, w):
    w = tuple(w)
    return (1, i, len(w), w)


def prim_str(p):
    if p[0] == 0:
        return "w(%s)" % "".join(map(str, p[2]))
    return "t%d(%s)" % (p[1], "".join(map(str, p[3])))


def mono_str(m):
    return "·".join(prim_str(p) for p in m) if m else "1"


_PRIM = re.compile(r"^(?:w\((\d+)\)|t(\d)\((\d+)\))$")


def parse_mono(s):
    s = s.strip()
    if s == "1":
        return ()
    out = []
    for tok in s.split("·"):
        m = _PRIM.match(tok.strip())
        if not m:
            raise ValueError("bad primitive %r" % tok)
        if m.group(1):
            out.append(wheel_key(int(c) for c in m.group(1)))
        else:
            out.append(tree_key(int(m.group(2)), (int(c) for c in m.group(3))))
    return tuple(sorted(out))


class _Model:
    """Per-n caches for brackets and straightening."""

    def __init__(self, n):
        self.n = n
        self.brackets = {}
        self.left = {}
        self.prods = {}

    def tder_of(self, p, maxdeg):
        _, i, d, w = p
        return elementary(self.n, maxdeg, i, LieElement._raw(self.n, maxdeg, {w: Fraction(1)}))

    def bracket(self, p, q):
        """[p, q] as a dict primitive -> coefficient."""
        key = (p, q)
        if key in self.brackets:
            return self.brackets[key]
        if p[0] == 0 and q[0] == 0:
            res = {}
        elif p[0] == 0:
            res = {k: -c for k, c in self.bracket(q, p).items()}
        else:
            N = pdeg(p) + pdeg(q)
            D = self.tder_of(p, N)
            if q[0] == 0:
                w = CyclicElement._raw(self.n, N, {q[2]: Fraction(1)})
                res = {wheel_key(c): k for c, k in tder_act_tr(D, w).coeffs.items()}
            else:
                E = self.tder_of(q, N)
                res = {tree_key(i, u): c for (i, u), c in td_bracket(D, E).coordinates().items()}
        self.brackets[key] = res
        return res

    def lmul(self, p, m):
        """p * m for a primitive p and a sorted monomial m, straightened."""
        if not m or p <= m[0]:
            return {(p,) + m: Fraction(1)}
        key = (p, m)
        got = self.left.get(key)
        if got is not None:
            return got
        m0, rest = m[0], m[1:]
        res = {}
        for mono, c in self.lmul(p, rest).items():
            for mono2, c2 in self.lmul(m0, mono).items():
                _acc(res, mono2, c * c2)
        for q, cq in self.bracket(p, m0).items():
            for mono2, c2 in self.lmul(q, rest).items():
                _acc(res, mono2, cq * c2)
        self.left[key] = res
        return res

    def mono_mul(self, a, b):
        if not a:
            return {b: Fraction(1)}
        if not b:
            return {a: Fraction(1)}
        key = (a, b)
        got = self.prods.get(key)
        if got is not None:
            return got
        cur = {b: Fraction(1)}
        for p in reversed(a):
            nxt = {}
            for mono, c in cur.items():
                for mono2, c2 in self.lmul(p, mono).items():
                    _acc(nxt, mono2, c * c2)
            cur = nxt
        self.prods[key] = cur
        return cur


_MODELS = {}


def model(n):
    if n not in _MODELS:
        _MODELS[n] = _Model(n)
    return _MODELS[n]


def _acc(d, k, c):
    r = d.get(k, 0) + c
    if r:
        d[k] = r
    else:
        d.pop(k, None)


class ArrowElement:
    __slots__ = ("n", "maxdeg", "sw", "coeffs")

    def __init__(self, n, maxdeg, coeffs=None, sw=False):
        self.n, self.maxdeg, self.sw = n, maxdeg, sw
        cs = {}
        for m, c in (coeffs or {}).items():
            m = tuple(sorted(m))
            if not c or mdeg(m) > maxdeg:
                continue
            for p in m:
                if p[0] == 0:
                    if max(p[2]) > n:
                        raise ValueError("letter out of range")
                    if sw and p[1] == 1:
                        raise ValueError("one-wheels are not allowed with sw set")
                elif not 1 <= p[1] <= n or max(p[3]) > n:
                    raise ValueError("strand out of range")
            _acc(cs, m, Fraction(c))
        self.coeffs = cs

    @classmethod
    def _raw(cls, n, maxdeg, coeffs, sw=False):
        e = cls.__new__(cls)
        e.n, e.maxdeg, e.coeffs, e.sw = n, maxdeg, coeffs, sw
        return e

    def _check(self, other):
        if not isinstance(other, ArrowElement):
            raise TypeError("expected ArrowElement")
        if (self.n, self.maxdeg, self.sw) != (other.n, other.maxdeg, other.sw):
            raise ContextError("context mismatch")

    def _new(self, coeffs):
        return ArrowElement._raw(self.n, self.maxdeg, coeffs, self.sw)

    def __add__(self, other):
        self._check(other)
        cs = dict(self.coeffs)
        for m, c in other.coeffs.items():
            _acc(cs, m, c)
        return self._new(cs)

    def __neg__(self):
        return self._new({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ArrowElement):
            return mul(self, other)
        s = Fraction(other)
        if not s:
            return self._new({})
        return self._new({m: s * c for m, c in self.coeffs.items()})

    def __rmul__(self, s):
        return self * s

    def __eq__(self, other):
        if not isinstance(other, ArrowElement):
            return NotImplemented
        return (self.n, self.maxdeg) == (other.n, other.maxdeg) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def constant(self):
        return self.coeffs.get((), Fraction(0))

    def degree_part(self, d):
        return self._new({m: c for m, c in self.coeffs.items() if mdeg(m) == d})

    def truncate(self, d):
        return self._new({m: c for m, c in self.coeffs.items() if mdeg(m) <= d})

    def with_maxdeg(self, maxdeg):
        return ArrowElement._raw(self.n, maxdeg,
                                 {m: c for m, c in self.coeffs.items() if mdeg(m) <= maxdeg}, self.sw)

    def drop_one_wheels(self):
        """Image in the sw quotient: monomials containing a one-wheel vanish."""
        return ArrowElement._raw(self.n, self.maxdeg,
                                 {m: c for m, c in self.coeffs.items()
                                  if not any(p[0] == 0 and p[1] == 1 for p in m)}, True)

    def to_dict(self):
        out = {}
        for m in sorted(self.coeffs, key=lambda m: (mdeg(m), m)):
            c = self.coeffs[m]
            out.setdefault(str(mdeg(m)), {})[mono_str(m)] = [c.numerator, c.denominator]
        return out

    @classmethod
    def from_dict(cls, n, maxdeg, data, sw=False):
        return cls(n, maxdeg, {parse_mono(k): Fraction(p, q)
                               for block in data.values() for k, (p, q) in block.items()}, sw)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join("%s*%s" % (self.coeffs[m], mono_str(m))
                          for m in sorted(self.coeffs, key=lambda m: (mdeg(m), m)))


def aone_el(n, maxdeg, sw=False):
    return ArrowElement._raw(n, maxdeg, {(): Fraction(1)}, sw)


def azero_el(n, maxdeg, sw=False):
    return ArrowElement._raw(n, maxdeg, {}, sw)


def mul(a, b, *more):
    if more:
        return mul(mul(a, b), *more)
    a._check(b)
    N = a.maxdeg
    M = model(a.n)
    out = {}
    bdeg = [(mb, cb, mdeg(mb)) for mb, cb in b.coeffs.items()]
    for ma, ca in a.coeffs.items():
        room = N - mdeg(ma)
        for mb, cb, db in bdeg:
            if db > room:
                continue
            for m, c in M.mono_mul(ma, mb).items():
                _acc(out, m, ca * cb * c)
    return a._new(out)


def commutator(a, b):
    return mul(a, b) - mul(b, a)


def iota(w, sw=False):
    out = {}
    for c, k in w.coeffs.items():
        if sw and len(c) == 1:
            raise ValueError("one-wheel in an sw context")
        out[(wheel_key(c),)] = k
    return ArrowElement._raw(w.n, w.maxdeg, out, sw)


def usec(D, sw=False):
    return ArrowElement._raw(D.n, D.maxdeg,
                             {(tree_key(i, w),): c for (i, w), c in D.coordinates().items()}, sw)


def lsec(D, sw=False):
    w = div(D)
    if sw:
        w = w.drop_one_wheels()
    return usec(D, sw) - iota(w, sw)


def exp_el(z, N=None):
    if z.constant():
        raise ValueError("exp_el needs zero constant term")
    if N is not None and N != z.maxdeg:
        z = z.with_maxdeg(N)
    res = aone_el(z.n, z.maxdeg, z.sw)
    term = res
    for k in range(1, z.maxdeg + 1):
        term = mul(term, z) * Fraction(1, k)
        if not term:
            break
        res = res + term
    return res


def log_el(g):
    if g.constant() != 1:
        raise ValueError("log_el needs constant term 1")
    y = g - aone_el(g.n, g.maxdeg, g.sw)
    res = azero_el(g.n, g.maxdeg, g.sw)
    term = aone_el(g.n, g.maxdeg, g.sw)
    for k in range(1, g.maxdeg + 1):
        term = mul(term, y)
        if not term:
            break
        res = res + term * Fraction((-1) ** (k + 1), k)
    return res


def arrow(i, j, n, maxdeg, sw=False):
    """The arrow with tail on strand i and head on strand j."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("strand out of range")
    return ArrowElement._raw(n, maxdeg, {(tree_key(j, (i,)),): Fraction(1)} if maxdeg >= 1 else {}, sw)


def Rvalue(i, j, n, maxdeg, sw=False):
    return exp_el(arrow(i, j, n, maxdeg, sw))


def _star_prim(p, n, N, sw):
    if p[0] == 0:
        return ArrowElement._raw(n, N, {(p,): Fraction(1)}, sw)
    _, i, d, w = p
    D = elementary(n, N, i, LieElement._raw(n, N, {w: Fraction(1)}))
    return -lsec(D, sw)


def star(a):
    """Adjoint: anti-automorphism, wheels fixed, u(D) -> -l(D)."""
    n, N = a.n, a.maxdeg
    cache = {}
    out = azero_el(n, N, a.sw)
    for m, c in a.coeffs.items():
        term = aone_el(n, N, a.sw)
        for p in m:
            if p not in cache:
                cache[p] = _star_prim(p, n, N, a.sw)
            term = mul(cache[p], term)
        out = out + term * c
    return out


def wheels_part(z):
    """Read a combination of single wheels back as a CyclicElement."""
    out = {}
    for m, c in z.coeffs.items():
        if len(m) != 1 or m[0][0] != 0:
            raise NonWheelResidue("non-wheel residue in %s" % mono_str(m))
        out[m[0][2]] = c
    return CyclicElement._raw(z.n, z.maxdeg, out, z.sw)


def Jmap(D, N=None):
    """e^{uD} (e^{uD})^* = e^{uD} e^{-lD}; returned as an ArrowElement."""
    if N is not None and N != D.maxdeg:
        D = D.with_maxdeg(N)
    J = mul(exp_el(usec(D)), exp_el(-lsec(D)))
    wheels_part(log_el(J))
    return J


def _tree_part(z):
    parts = [dict() for _ in range(z.n)]
    for m, c in z.coeffs.items():
        if len(m) == 1 and m[0][0] == 1:
            _, i, _, w = m[0]
            parts[i - 1][w] = c
    return TDer([LieElement._raw(z.n, z.maxdeg, p) for p in parts], z.n, z.maxdeg)


def _is_primitive(z):
    return all(len(m) == 1 for m in z.coeffs)


def pi_proj(a):
    """Kill wheels.  Primitive input gives a TDer, group-like input a TAutElement."""
    if _is_primitive(a):
        return _tree_part(a)
    if a.constant() == 1:
        z = log_el(a)
        if _is_primitive(z):
            return TAutElement(_tree_part(z))
    raise ValueError("pi_proj needs a primitive or group-like element")


def coproduct(a):
    """Delta on PBW monomials: all ways of splitting the factors."""
    out = {}
    for m, c in a.coeffs.items():
        k = len(m)
        for r in range(k + 1):
            for S in combinations(range(k), r):
                left = tuple(m[i] for i in S)
                right = tuple(m[i] for i in range(k) if i not in S)
                _acc(out, (left, right), c)
    return out


def tensor_mul(x, y, n, N):
    """Product in A (x) A of two coproduct-style dicts."""
    M = model(n)
    out = {}
    for (a1, a2), c in x.items():
        for (b1, b2), d in y.items():
            if mdeg(a1) + mdeg(a2) + mdeg(b1) + mdeg(b2) > N:
                continue
            for m1, e1 in M.mono_mul(a1, b1).items():
                for m2, e2 in M.mono_mul(a2, b2).items():
                    _acc(out, (m1, m2), c * d * e1 * e2)
    return out


def is_grouplike(a):
    if a.constant() != 1:
        return False
    return _is_primitive(log_el(a))


def _prim_image(p, n_old, n_new, N, images, sw):
    if p[0] == 0:
        out = {}
        words = [()]
        for letter in p[2]:
            words = [u + (s,) for u in words for s in images[letter]]
        for u in words:
            _acc(out, (wheel_key(u),), Fraction(1))
        return ArrowElement._raw(n_new, N, out, sw)
    _, i, d, w = p
    b = lie_substitute(LieElement._raw(n_old, N, {w: Fraction(1)}), n_new, images)
    out = {}
    for s in images[i]:
        for u, c in b.coeffs.items():
            _acc(out, (tree_key(s, u),), c)
    return ArrowElement._raw(n_new, N, out, sw)


def cable(a, m, images):
    """Strand substitution: strand i becomes the strands images[i].

    images is indexable by 1..n (a list with a dummy slot 0, or a dict).
    Tails and heads are summed over all new strands; the map is an
    algebra homomorphism, so monomials are multiplied out in order.
    """
    if isinstance(images, dict):
        images = [()] + [tuple(images[i]) for i in range(1, a.n + 1)]
    N = a.maxdeg
    cache = {}
    out = azero_el(m, N, a.sw)
    for mono, c in a.coeffs.items():
        term = aone_el(m, N, a.sw)
        for p in mono:
            if p not in cache:
                cache[p] = _prim_image(p, a.n, m, N, images, a.sw)
            term = mul(term, cache[p])
        out = out + term * c
    return out


def place(a, m, f):
    """Relabel strand i as f[i] inside m strands (f injective)."""
    if isinstance(f, dict):
        f = [None] + [f[i] for i in range(1, a.n + 1)]
    targets = f[1:]
    if len(set(targets)) != len(targets):
        raise ValueError("strand map must be injective")
    if any(not 1 <= t <= m for t in targets):
        raise ValueError("strand map out of range")
    return cable(a, m, [()] + [(t,) for t in targets])


def unzip_strand(a, k):
    """Double strand k into k, k+1; later strands shift up by one."""
    if not 1 <= k <= a.n:
        raise ValueError("strand out of range")
    images = [()] + [(i,) if i < k else ((k, k + 1) if i == k else (i + 1,)) for i in range(1, a.n + 1)]
    return cable(a, a.n + 1, images)


def _endings(p, k):
    if p[0] == 0:
        return p[2].count(k)
    return p[3].count(k) + (p[1] == k)


def switch_sign(a, k):
    """(-1)^(number of arrow endings on strand k) on each monomial."""
    if not 1 <= k <= a.n:
        raise ValueError("strand out of range")
    return a._new({m: (-c if sum(_endings(p, k) for p in m) % 2 else c) for m, c in a.coeffs.items()})


def adjoint_sign(a, k):
    """(-1)^(number of heads on strand k) on each monomial."""
    if not 1 <= k <= a.n:
        raise ValueError("strand out of range")
    return a._new({m: (-c if sum(1 for p in m if p[0] == 1 and p[1] == k) % 2 else c)
                   for m, c in a.coeffs.items()})


def delete_strand(a, k):
    """Kill monomials touching strand k and close up the numbering."""
    if not 1 <= k <= a.n:
        raise ValueError("strand out of range")

    def sh(x):
        return x - 1 if x > k else x

    out = {}
    for m, c in a.coeffs.items():
        if any(_endings(p, k) for p in m):
            continue
        new = []
        for p in m:
            if p[0] == 0:
                new.append((0, p[1], tuple(sh(x) for x in p[2])))
            else:
                new.append((1, sh(p[1]), p[2], tuple(sh(x) for x in p[3])))
        out[tuple(new)] = c
    return ArrowElement._raw(a.n - 1, a.maxdeg, out, a.sw)
