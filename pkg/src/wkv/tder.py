"""Tangential derivations tder_n + a_n as n-tuples of Lie elements.

A tuple (a_1, ..., a_n) acts by x_i -> [x_i, a_i].  The tuple is kept as
is: the local part (x_i in slot i) is the abelian a_n summand.
"""

from fractions import Fraction

from .freelie import (ContextError, LieElement, bracket, generator, lie_zero,
                      lyndon_basis, standard_factor)
from .assoc import AssocElement, lie_to_assoc, project_to_lie, del_k, trace, aword
from .cyclic import cyc_zero, tder_act_tr

__all__ = ["TDer", "TAutElement", "td_apply", "td_bracket", "div", "j_of", "taut_apply",
           "taut_mul", "taut_inv", "taut_act_tr", "beta", "is_special", "alpha_heads",
           "transpose21", "no_local_arrows", "local_part", "lie_substitute", "cable",
           "lie_bch_eval", "td_basis", "td_zero", "elementary"]


class TDer:
    __slots__ = ("n", "maxdeg", "parts")

    def __init__(self, parts, n=None, maxdeg=None):
        parts = tuple(parts)
        if not parts:
            raise ValueError("TDer needs at least one part")
        n = parts[0].n if n is None else n
        maxdeg = parts[0].maxdeg if maxdeg is None else maxdeg
        if len(parts) != n:
            raise ValueError("expected %d parts, got %d" % (n, len(parts)))
        for p in parts:
            if (p.n, p.maxdeg) != (n, maxdeg):
                raise ContextError("TDer parts must share (n, maxdeg)")
        self.n, self.maxdeg, self.parts = n, maxdeg, parts

    def _check(self, other):
        if not isinstance(other, TDer):
            raise TypeError("expected TDer")
        if (self.n, self.maxdeg) != (other.n, other.maxdeg):
            raise ContextError("context mismatch")

    def __add__(self, other):
        self._check(other)
        return TDer([a + b for a, b in zip(self.parts, other.parts)])

    def __neg__(self):
        return TDer([-a for a in self.parts])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return TDer([a * s for a in self.parts])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TDer):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __bool__(self):
        return any(self.parts)

    def degree_part(self, d):
        return TDer([a.degree_part(d) for a in self.parts])

    def truncate(self, d):
        return TDer([a.truncate(d) for a in self.parts])

    def with_maxdeg(self, m):
        return TDer([a.with_maxdeg(m) for a in self.parts])

    def degrees(self):
        return sorted({d for a in self.parts for d in a.degrees()})

    def min_degree(self):
        ds = self.degrees()
        return ds[0] if ds else None

    def coordinates(self):
        """Sparse coordinates keyed by (slot, Lyndon word)."""
        return {(i, w): c for i, a in enumerate(self.parts, 1) for w, c in a.coeffs.items()}

    def to_list(self):
        return [a.to_dict() for a in self.parts]

    @classmethod
    def from_list(cls, n, maxdeg, data):
        return cls([LieElement.from_dict(n, maxdeg, d) for d in data], n, maxdeg)

    def __repr__(self):
        return "TDer(%s)" % ", ".join(repr(a) for a in self.parts)


def td_zero(n, maxdeg):
    return TDer([lie_zero(n, maxdeg)] * n, n, maxdeg)


def elementary(n, maxdeg, slot, a):
    """The tuple with a in the given slot and zeros elsewhere."""
    parts = [lie_zero(n, maxdeg)] * n
    parts[slot - 1] = a
    return TDer(parts, n, maxdeg)


def td_basis(n, d, maxdeg=None):
    """Basis tuples of degree d: (slot, Lyndon word) coordinate vectors."""
    maxdeg = d if maxdeg is None else maxdeg
    return [((i, w), elementary(n, maxdeg, i, LieElement._raw(n, maxdeg, {w: Fraction(1)})))
            for i in range(1, n + 1) for w in lyndon_basis(n, d)]


def _substitutions(D):
    subs = {}
    for i, a in enumerate(D.parts, 1):
        if not a:
            continue
        A = lie_to_assoc(a).coeffs
        s = {}
        for v, c in A.items():
            s[(i,) + v] = s.get((i,) + v, 0) + c
            s[v + (i,)] = s.get(v + (i,), 0) - c
        subs[i] = [(v, c) for v, c in s.items() if c]
    return subs


def _act_words(subs, coeffs, N):
    out = {}
    for word, cw in coeffs.items():
        L = len(word)
        for m, letter in enumerate(word):
            for v, c in subs.get(letter, ()):
                if L - 1 + len(v) > N:
                    continue
                w = word[:m] + v + word[m + 1:]
                r = out.get(w, 0) + cw * c
                if r:
                    out[w] = r
                else:
                    out.pop(w, None)
    return out


def td_apply(D, z):
    """Derivation action on a LieElement or an AssocElement."""
    if (D.n, D.maxdeg) != (z.n, z.maxdeg):
        raise ContextError("context mismatch")
    subs = _substitutions(D)
    if isinstance(z, AssocElement):
        return AssocElement._raw(z.n, z.maxdeg, _act_words(subs, z.coeffs, z.maxdeg))
    if isinstance(z, LieElement):
        out = _act_words(subs, lie_to_assoc(z).coeffs, z.maxdeg)
        return project_to_lie(AssocElement._raw(z.n, z.maxdeg, out))
    raise TypeError("td_apply expects a LieElement or AssocElement")


def td_bracket(D, E):
    D._check(E)
    return TDer([td_apply(D, e) - td_apply(E, d) + bracket(d, e)
                 for d, e in zip(D.parts, E.parts)])


def div(D):
    """sum_k tr((del_k a_k) x_k)."""
    out = cyc_zero(D.n, D.maxdeg)
    for k, a in enumerate(D.parts, 1):
        if not a:
            continue
        dk = del_k(lie_to_assoc(a), k)
        if not dk:
            continue
        out = out + trace(dk * aword(D.n, D.maxdeg, (k,)))
    return out


def j_of(D, N=None):
    """j(e^D) = sum_{m>=0} D^m(div D)/(m+1)!."""
    if N is not None and N != D.maxdeg:
        D = D.with_maxdeg(N)
    term = div(D)
    out = term
    m = 1
    while term:
        term = tder_act_tr(D, term) * Fraction(1, m + 1)
        out = out + term
        m += 1
    return out


# Evaluating free Lie polynomials in another Lie algebra.

def lie_bch_eval(X, Y, br, N):
    """log(e^X e^Y) in a graded Lie algebra given by br, both of degree >= 1.

    The BCH series in lie_2 is evaluated on X, Y by reading each Lyndon
    basis element through its standard bracketing.
    """
    from .assoc import bch
    s = bch(generator(2, N, 1), generator(2, N, 2))
    cache = {(1,): X, (2,): Y}

    def ev(w):
        if w not in cache:
            u, v = standard_factor(w)
            cache[w] = br(ev(u), ev(v))
        return cache[w]

    out = X * 0
    for w, c in sorted(s.coeffs.items(), key=lambda t: (len(t[0]), t[0])):
        out = out + ev(w) * c
    return out


class TAutElement:
    """exp(logpart) in TAut_n."""

    __slots__ = ("logpart",)

    def __init__(self, logpart):
        if any(a.coeffs and min(len(w) for w in a.coeffs) < 1 for a in logpart.parts):
            raise ValueError("degree-0 part must vanish")
        self.logpart = logpart

    @property
    def n(self):
        return self.logpart.n

    @property
    def maxdeg(self):
        return self.logpart.maxdeg

    def __mul__(self, other):
        return taut_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TAutElement):
            return NotImplemented
        return self.logpart == other.logpart

    def __repr__(self):
        return "exp(%r)" % (self.logpart,)


def taut_mul(g, h):
    g.logpart._check(h.logpart)
    return TAutElement(lie_bch_eval(g.logpart, h.logpart, td_bracket, g.maxdeg))


def taut_inv(g):
    return TAutElement(-g.logpart)


def taut_apply(g, z, N=None):
    """e^D z = sum_k D^k z / k!."""
    D = g.logpart if isinstance(g, TAutElement) else g
    if N is not None and N != z.maxdeg:
        z = z.with_maxdeg(N)
        D = D.with_maxdeg(N)
    out = z
    term = z
    k = 1
    while True:
        term = td_apply(D, term) * Fraction(1, k)
        if not term:
            break
        out = out + term
        k += 1
    return out


def taut_act_tr(g, w):
    D = g.logpart if isinstance(g, TAutElement) else g
    out = w
    term = w
    k = 1
    while True:
        term = tder_act_tr(D, term) * Fraction(1, k)
        if not term:
            break
        out = out + term
        k += 1
    return out


def beta(D):
    """sum_i [x_i, a_i] = D(x_1 + ... + x_n)."""
    out = lie_zero(D.n, D.maxdeg)
    for i, a in enumerate(D.parts, 1):
        out = out + bracket(generator(D.n, D.maxdeg, i), a)
    return out


def is_special(D):
    return not beta(D)


def local_part(D):
    """Coefficients of x_i in slot i."""
    return [a.coeffs.get((i,), Fraction(0)) for i, a in enumerate(D.parts, 1)]


def no_local_arrows(D):
    return not any(local_part(D))


def lie_substitute(a, m, images):
    """Substitute x_i -> sum of x_s over s in images[i] (letters 1..m)."""
    out = {}
    for w, c in lie_to_assoc(a).coeffs.items():
        words = [()]
        for letter in w:
            words = [u + (s,) for u in words for s in images[letter]]
        for u in words:
            r = out.get(u, 0) + c
            if r:
                out[u] = r
            else:
                out.pop(u, None)
    return project_to_lie(AssocElement._raw(m, a.maxdeg, out))


def cable(D, m, images):
    """Strand doubling/relabeling on tuples.

    images[i] lists the new strands replacing strand i (1-based dict or
    list with a dummy entry at 0).  Tails are substituted, and the slot-i
    head part is copied to every slot in images[i].
    """
    parts = [lie_zero(m, D.maxdeg)] * m
    for i, a in enumerate(D.parts, 1):
        if not a:
            continue
        b = lie_substitute(a, m, images)
        for s in images[i]:
            parts[s - 1] = parts[s - 1] + b
    return TDer(parts, m, D.maxdeg)


def transpose21(D):
    """Swap strands 1 and 2 of a tuple in tder_2."""
    if D.n != 2:
        raise ValueError("transpose21 is defined on tder_2")
    imgs = {1: (2,), 2: (1,)}
    return TDer([lie_substitute(D.parts[1], 2, imgs), lie_substitute(D.parts[0], 2, imgs)])


# alpha on trees: a tree is (root colour, body) where body is a colour or a
# pair (left, right).  Each internal vertex has cyclic order (parent, left, right).

def _tree_graph(tree):
    root, body = tree
    adj = {}
    colour = {}
    counter = [0]

    def new(c=None):
        v = counter[0]
        counter[0] += 1
        adj[v] = []
        if c is not None:
            colour[v] = c
        return v

    def build(node, parent):
        if isinstance(node, int):
            v = new(node)
            adj[v] = [parent]
            return v
        if not (isinstance(node, (tuple, list)) and len(node) == 2):
            raise ValueError("malformed tree node %r" % (node,))
        v = new()
        l = build(node[0], v)
        r = build(node[1], v)
        adj[v] = [parent, l, r]
        return v

    if not isinstance(root, int):
        raise ValueError("tree root must be a colour")
    r = new(root)
    top = build(body, r)
    adj[r] = [top]
    return adj, colour


def alpha_heads(tree, n, maxdeg=None):
    """Sum over leaves of the tree with its head at that leaf."""
    adj, colour = _tree_graph(tree)
    for c in colour.values():
        if not 1 <= c <= n:
            raise ValueError("leaf colour %d out of range" % c)
    leaves = [v for v in adj if v in colour]
    d = len(leaves) - 1
    maxdeg = d if maxdeg is None else maxdeg

    def expr(v, frm):
        if v in colour:
            return generator(n, maxdeg, colour[v])
        nb = adj[v]
        k = nb.index(frm)
        p, q = nb[(k + 1) % 3], nb[(k + 2) % 3]
        return bracket(expr(p, v), expr(q, v))

    parts = [lie_zero(n, maxdeg)] * n
    for leaf in leaves:
        c = colour[leaf]
        parts[c - 1] = parts[c - 1] + expr(adj[leaf][0], leaf)
    return TDer(parts, n, maxdeg)
