"""Brute-force arrow diagrams on n upward strands.

A raw diagram is a tuple of strands, each a tuple of tokens read bottom
to top: +k is the tail of arrow k, -k its head.  Arrows are numbered by
first appearance (strand 1 upwards, then strand 2, ...), which makes the
tuple a canonical form.  Products stack: in a*b the diagram a is below b.

Quotients are computed in TC-class coordinates.  Modulo "tails commute"
a diagram is fixed by the heads on each strand and, for every head, the
strand of its tail together with the number of heads below that tail.
4T and RI are generated as explicit instances and eliminated exactly.
"""

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .freelie import standard_factor, witt_dimension
from .linalg import Echelon

__all__ = ["RawDiagram", "DiagramSpan", "JacobiDiagram", "enumerate_diagrams", "relation_instances",
           "quotient_reduce", "stack", "stu_eliminate", "embed_structured", "dims_raw", "dims_pbw",
           "raw_star", "tc_key", "tree_diagram", "wheel_diagram", "placed_tree", "necklace_count",
           "ResourceGuard", "raw_count"]


class ResourceGuard(RuntimeError):
    pass


def canonicalize(strands):
    relabel = {}
    out = []
    for s in strands:
        row = []
        for t in s:
            k = abs(t)
            if k not in relabel:
                relabel[k] = len(relabel) + 1
            row.append(relabel[k] if t > 0 else -relabel[k])
        out.append(tuple(row))
    return tuple(out)


class RawDiagram:
    __slots__ = ("n", "strands")

    def __init__(self, strands):
        self.strands = canonicalize(strands)
        self.n = len(self.strands)
        toks = Counter(t for s in self.strands for t in s)
        for t, c in toks.items():
            if c != 1 or -t not in toks:
                raise ValueError("every arrow needs exactly one tail and one head")

    @property
    def degree(self):
        return sum(len(s) for s in self.strands) // 2

    @property
    def arrows(self):
        pos = {}
        for si, s in enumerate(self.strands, 1):
            for p, t in enumerate(s, 1):
                pos[t] = (si, p)
        return [(pos[k], pos[-k]) for k in range(1, self.degree + 1)]

    def dump(self):
        return ";".join("T(%d,%d)->H(%d,%d)" % (a[0], a[1], b[0], b[1]) for a, b in self.arrows)

    def __eq__(self, other):
        return isinstance(other, RawDiagram) and self.strands == other.strands

    def __hash__(self):
        return hash(self.strands)

    def __repr__(self):
        return "RawDiagram(%s)" % self.dump()


class DiagramSpan:
    """Rational combination of canonical raw diagrams (keyed by strand tuples)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        self.n = n
        cs = {}
        for k, c in (coeffs or {}).items():
            if isinstance(k, RawDiagram):
                k = k.strands
            else:
                k = canonicalize(k)
            if len(k) != n:
                raise ValueError("strand count mismatch")
            _acc(cs, k, Fraction(c))
        self.coeffs = cs

    @classmethod
    def _raw(cls, n, coeffs):
        e = cls.__new__(cls)
        e.n, e.coeffs = n, coeffs
        return e

    def __add__(self, other):
        cs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _acc(cs, k, c)
        return DiagramSpan._raw(self.n, cs)

    def __neg__(self):
        return DiagramSpan._raw(self.n, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = Fraction(s)
        return DiagramSpan._raw(self.n, {k: s * c for k, c in self.coeffs.items()} if s else {})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeffs)

    def degrees(self):
        return sorted({sum(len(s) for s in k) // 2 for k in self.coeffs})

    def dump(self):
        lines = []
        for k in sorted(self.coeffs):
            lines.append("%s %s" % (self.coeffs[k], RawDiagram(k).dump()))
        return "\n".join(lines)

    def __repr__(self):
        return "DiagramSpan(%d terms)" % len(self.coeffs)


def _acc(d, k, c):
    r = d.get(k, 0) + c
    if r:
        d[k] = r
    else:
        d.pop(k, None)


# ---------------------------------------------------------------- enumeration

def raw_count(n, d):
    """(2d)! C(2d+n-1, n-1) / d!: ordered endpoint placements, unlabeled arrows."""
    return factorial(2 * d) * comb(2 * d + n - 1, n - 1) // factorial(d)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def enumerate_diagrams(n, d):
    """All canonical raw diagrams with d arrows on n strands."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    out = []
    for lengths in _compositions(2 * d, n):
        for fill in _fills(2 * d):
            pos = 0
            strands = []
            for L in lengths:
                strands.append(tuple(fill[pos:pos + L]))
                pos += L
            out.append(tuple(strands))
    return [RawDiagram(s) for s in sorted(set(canonicalize(s) for s in out))]


@lru_cache(maxsize=None)
def _fills(m):
    """Token sequences of length m in first-appearance labeling."""
    res = []

    def rec(seq, k):
        if None not in seq:
            res.append(tuple(seq))
            return
        i = seq.index(None)
        k += 1
        for j in range(i + 1, len(seq)):
            if seq[j] is None:
                for a, b in ((k, -k), (-k, k)):
                    seq[i], seq[j] = a, b
                    rec(seq, k)
                    seq[i] = seq[j] = None

    rec([None] * m, 0)
    return tuple(res)


# ---------------------------------------------------------------- TC classes

def tc_key(strands):
    """Complete invariant of the tails-commute class."""
    head_index = {}
    tail_of = {}
    counts = []
    for si, s in enumerate(strands, 1):
        h = 0
        for t in s:
            if t < 0:
                head_index[-t] = (si, h)
                h += 1
            else:
                tail_of[t] = (si, h)
        counts.append(h)
    order = sorted(head_index, key=lambda k: head_index[k])
    return (tuple(counts), tuple(tail_of[k] for k in order))


def tc_block(key):
    counts = Counter(s for s, _ in key[1])
    return tuple(counts.get(i, 0) for i in range(1, len(key[0]) + 1))


def to_tc(span):
    out = {}
    for k, c in span.coeffs.items():
        _acc(out, tc_key(k), c)
    return out


# ---------------------------------------------------------------- relations

def _remove(strands, tok):
    return tuple(tuple(t for t in s if t != tok) for s in strands)


def _insert(strands, tok, anchor, above):
    out = []
    for s in strands:
        if anchor in s:
            i = s.index(anchor) + (1 if above else 0)
            s = s[:i] + (tok,) + s[i:]
        out.append(s)
    return tuple(out)


def four_t_instances(strands):
    """4T instances read off a diagram where X's head sits just below Y's head.

    [X_h below Y_h] - [X_h above Y_h] - [X_h above Y_t] + [X_h below Y_t] = 0
    """
    res = []
    for s in strands:
        for a, b in zip(s, s[1:]):
            if a < 0 and b < 0:
                X, Y = -a, -b
                base = _remove(strands, -X)
                terms = {}
                for anchor, above, sgn in ((-Y, False, 1), (-Y, True, -1), (Y, True, -1), (Y, False, 1)):
                    _acc(terms, canonicalize(_insert(base, -X, anchor, above)), Fraction(sgn))
                if terms:
                    res.append(DiagramSpan._raw(len(strands), terms))
    return res


def ri_instances(strands):
    res = []
    for s in strands:
        for a, b in zip(s, s[1:]):
            if a == -b:
                swapped = tuple(tuple(b if t == a else a if t == b else t for t in row) for row in strands)
                terms = {}
                _acc(terms, canonicalize(strands), Fraction(1))
                _acc(terms, canonicalize(swapped), Fraction(-1))
                if terms:
                    res.append(DiagramSpan._raw(len(strands), terms))
    return res


def tc_instances(strands):
    res = []
    for si, s in enumerate(strands):
        for i, (a, b) in enumerate(zip(s, s[1:])):
            if a > 0 and b > 0:
                row = s[:i] + (b, a) + s[i + 2:]
                other = strands[:si] + (row,) + strands[si + 1:]
                terms = {}
                _acc(terms, canonicalize(strands), Fraction(1))
                _acc(terms, canonicalize(other), Fraction(-1))
                if terms:
                    res.append(DiagramSpan._raw(len(strands), terms))
    return res


def relation_instances(n, d, flags=("TC", "4T")):
    flags = set(flags)
    bad = flags - {"TC", "4T", "RI"}
    if bad:
        raise ValueError("unknown relation flags %s" % sorted(bad))
    out = []
    for D in enumerate_diagrams(n, d):
        if "TC" in flags:
            out.extend(tc_instances(D.strands))
        if "4T" in flags:
            out.extend(four_t_instances(D.strands))
        if "RI" in flags:
            out.extend(ri_instances(D.strands))
    return out


# ---------------------------------------------------------------- quotients

RAW_LIMIT = 200000


class _Quotient:
    def __init__(self, n, d, sw):
        if raw_count(n, d) > RAW_LIMIT:
            raise ResourceGuard("(n=%d, d=%d) has %d raw diagrams, above the limit %d"
                                % (n, d, raw_count(n, d), RAW_LIMIT))
        self.n, self.d, self.sw = n, d, sw
        self.keys = {}
        self.ech = {}
        rels = {}
        for D in enumerate_diagrams(n, d):
            k = tc_key(D.strands)
            self.keys.setdefault(tc_block(k), set()).add(k)
            inst = four_t_instances(D.strands)
            if sw:
                inst += ri_instances(D.strands)
            for r in inst:
                v = to_tc(r)
                if v:
                    rels.setdefault(tc_block(next(iter(v))), []).append(v)
        for b, vs in rels.items():
            e = Echelon()
            for v in vs:
                e.add(v)
            self.ech[b] = e

    def dim(self):
        return sum(len(ks) - (self.ech[b].rank if b in self.ech else 0) for b, ks in self.keys.items())

    def reduce(self, v):
        blocks = {}
        for k, c in v.items():
            blocks.setdefault(tc_block(k), {})[k] = c
        out = {}
        for b, part in blocks.items():
            e = self.ech.get(b)
            out.update(e.reduce(part) if e else part)
        return out


_QUOTIENTS = {}


def _quotient(n, d, sw):
    key = (n, d, bool(sw))
    if key not in _QUOTIENTS:
        _QUOTIENTS[key] = _Quotient(n, d, sw)
    return _QUOTIENTS[key]


def quotient_reduce(el, sw=False):
    """Normal form of a homogeneous span in the 4T (+RI) quotient, TC coordinates."""
    ds = el.degrees()
    if not ds:
        return {}
    if len(ds) > 1:
        raise ValueError("quotient_reduce needs a homogeneous element")
    return _quotient(el.n, ds[0], sw).reduce(to_tc(el))


def reduce_graded(el, sw=False):
    """Normal forms degree by degree: {degree: coordinates}."""
    by = {}
    for k, c in el.coeffs.items():
        by.setdefault(sum(len(s) for s in k) // 2, {})[k] = c
    out = {}
    for d, part in by.items():
        r = quotient_reduce(DiagramSpan._raw(el.n, part), sw)
        if r:
            out[d] = r
    return out


def dims_raw(n, d, sw=False):
    return _quotient(n, d, sw).dim()


def necklace_count(n, d):
    from math import gcd
    return sum(n ** gcd(k, d) for k in range(d)) // d


def dims_pbw(n, d, sw=False):
    """Graded dimension of Sym(tr_n + (lie_n)^n) in degree d."""
    prim = [0] * (d + 1)
    for k in range(1, d + 1):
        prim[k] = n * witt_dimension(n, k) + (0 if (sw and k == 1) else necklace_count(n, k))
    series = [1] + [0] * d
    for k in range(1, d + 1):
        for _ in range(prim[k]):
            for m in range(k, d + 1):
                series[m] += series[m - k]
    return series[d]


def stack(a, b):
    """a below b on every strand."""
    if a.n != b.n:
        raise ValueError("strand count mismatch")
    out = {}
    for ka, ca in a.coeffs.items():
        off = sum(len(s) for s in ka) // 2
        for kb, cb in b.coeffs.items():
            shifted = tuple(tuple(t + off if t > 0 else t - off for t in s) for s in kb)
            joined = canonicalize(tuple(x + y for x, y in zip(ka, shifted)))
            _acc(out, joined, ca * cb)
    return DiagramSpan._raw(a.n, out)


def raw_star(a):
    """Flip every strand and negate arrow heads: (-1)^(number of arrows)."""
    out = {}
    for k, c in a.coeffs.items():
        d = sum(len(s) for s in k) // 2
        _acc(out, canonicalize(tuple(tuple(reversed(s)) for s in k)), -c if d % 2 else c)
    return DiagramSpan._raw(a.n, out)


# ---------------------------------------------------------------- Jacobi diagrams

class JacobiDiagram:
    """Skeleton endpoints plus internal vertices.

    strands: per strand, tokens ("t", e) (edge e leaves the skeleton) or
    ("h", e) (edge e lands on the skeleton), bottom to top.
    vertices: id -> (left incoming edge, right incoming edge, outgoing edge);
    the cyclic order (left, right, out) is the vertex orientation.
    """

    def __init__(self, n, strands, vertices):
        self.n = n
        self.strands = tuple(tuple(s) for s in strands)
        self.vertices = dict(vertices)
        if len(self.strands) != n:
            raise ValueError("strand count mismatch")
        self._validate()

    def _validate(self):
        src, dst = {}, {}
        for s in self.strands:
            for kind, e in s:
                (src if kind == "t" else dst).setdefault(e, []).append("skel")
        for v, (l, r, o) in self.vertices.items():
            dst.setdefault(l, []).append(v)
            dst.setdefault(r, []).append(v)
            src.setdefault(o, []).append(v)
        edges = set(src) | set(dst)
        for e in edges:
            if len(src.get(e, [])) != 1 or len(dst.get(e, [])) != 1:
                raise ValueError("edge %r must have one source and one target" % (e,))

    def degree(self):
        # skeleton endpoints plus internal vertices, halved
        return (sum(len(s) for s in self.strands) + len(self.vertices)) // 2


def _skeleton_tails(strands):
    return {e for s in strands for k, e in s if k == "t"}


def _skeleton_heads(strands):
    return {e for s in strands for k, e in s if k == "h"}


def _replace_token(strands, tok, seq):
    out = []
    for s in strands:
        if tok in s:
            i = s.index(tok)
            s = s[:i] + tuple(seq) + s[i + 1:]
        out.append(s)
    return tuple(out)


def _moves(strands, vertices):
    """All single STU moves available: (vertex, kind)."""
    tails, heads = _skeleton_tails(strands), _skeleton_heads(strands)
    res = []
    for v in sorted(vertices):
        l, r, o = vertices[v]
        if o in heads:
            res.append((v, "S1"))
        if l in tails:
            res.append((v, "S2L"))
        if r in tails:
            res.append((v, "S2R"))
    return res


def _apply(strands, vertices, v, kind):
    l, r, o = vertices[v]
    rest = {k: x for k, x in vertices.items() if k != v}
    if kind == "S1":
        a = _replace_token(strands, ("h", o), [("h", l), ("h", r)])
        b = _replace_token(strands, ("h", o), [("h", r), ("h", l)])
        return [(1, a, rest), (-1, b, rest)]
    if kind == "S2L":
        spoke, other, sgn = l, r, 1
    else:
        spoke, other, sgn = r, l, -1
    a = _replace_token(strands, ("t", spoke), [("h", other), ("t", o)])
    b = _replace_token(strands, ("t", spoke), [("t", o), ("h", other)])
    return [(sgn, a, rest), (-sgn, b, rest)]


def _arrows_to_raw(strands):
    ids = {}
    out = []
    for s in strands:
        row = []
        for kind, e in s:
            if e not in ids:
                ids[e] = len(ids) + 1
            row.append(ids[e] if kind == "t" else -ids[e])
        out.append(tuple(row))
    return canonicalize(tuple(out))


def stu_eliminate(j, chooser=None):
    """Rewrite all internal vertices away by STU.

    The default strategy takes the lowest-numbered vertex touching the
    skeleton, preferring the move at its outgoing edge.  chooser, if
    given, picks from the list of available moves (used to test that the
    result does not depend on the order, after reduction).
    """
    out = {}
    stack_ = [(Fraction(1), j.strands, j.vertices)]
    while stack_:
        c, strands, verts = stack_.pop()
        if not verts:
            _acc(out, _arrows_to_raw(strands), c)
            continue
        moves = _moves(strands, verts)
        if not moves:
            raise ValueError("component disconnected from the skeleton")
        move = chooser(moves) if chooser else moves[0]
        for sgn, s2, v2 in _apply(strands, verts, *move):
            stack_.append((c * sgn, s2, v2))
    return DiagramSpan._raw(j.n, out)


def _build_tree(expr, counter, vertices):
    """expr: int leaf strand, or (left, right).  Returns (out edge, leaves)."""
    if isinstance(expr, int):
        e = ("e", next(counter))
        return e, [(expr, e)]
    le, ll = _build_tree(expr[0], counter, vertices)
    re_, rl = _build_tree(expr[1], counter, vertices)
    o = ("e", next(counter))
    vertices[("v", next(counter))] = (le, re_, o)
    return o, ll + rl


def _lyndon_expr(w):
    if len(w) == 1:
        return w[0]
    u, v = standard_factor(w)
    return (_lyndon_expr(u), _lyndon_expr(v))


def tree_diagram(n, head, expr, placement="u"):
    """A tree with the given bracket expression, head on strand `head`.

    u: the head sits above every tail on its strand; l: below.
    """
    import itertools
    counter = itertools.count()
    vertices = {}
    root, leaves = _build_tree(expr, counter, vertices)
    strands = [[] for _ in range(n)]
    for s, e in leaves:
        strands[s - 1].append(("t", e))
    hs = strands[head - 1]
    if placement == "u":
        hs.append(("h", root))
    elif placement == "l":
        hs.insert(0, ("h", root))
    else:
        raise ValueError("placement must be 'u' or 'l'")
    return JacobiDiagram(n, strands, vertices)


def wheel_diagram(n, word):
    """Wheel whose spokes come from strands word[0], word[1], ...

    The letters are read against the direction of the cycle: the cycle
    edge leaves vertex j towards vertex j-1.  Vertex j has left input =
    spoke j and right input = the cycle edge from vertex j+1.  Spoke tails
    sit in order of j on each strand.
    """
    m = len(word)
    spokes = [("s", j) for j in range(m)]
    cyc = [("c", j) for j in range(m)]  # cyc[j]: vertex j -> vertex j-1
    vertices = {("v", j): (spokes[j], cyc[(j + 1) % m], cyc[j]) for j in range(m)}
    strands = [[] for _ in range(n)]
    for j, s in enumerate(word):
        strands[s - 1].append(("t", spokes[j]))
    return JacobiDiagram(n, strands, vertices)


def placed_tree(n, head, w, placement="u"):
    """Arrow expansion of the Lyndon tree P(w) with head on strand `head`."""
    return stu_eliminate(tree_diagram(n, head, _lyndon_expr(tuple(w)), placement))


# Wheel embedding sign: chosen once so that raw star and the structured
# adjoint agree (see embed_structured); reading direction as in wheel_diagram.
WHEEL_SIGN = -1


def _prim_span(n, p):
    if p[0] == 0:
        return stu_eliminate(wheel_diagram(n, p[2])) * WHEEL_SIGN
    return placed_tree(n, p[1], p[3], "u")


def embed_structured(a):
    """Raw image of a structured element: primitives stacked in PBW order."""
    cache = {}
    out = DiagramSpan._raw(a.n, {})
    unit = DiagramSpan._raw(a.n, {tuple(() for _ in range(a.n)): Fraction(1)})
    for m, c in a.coeffs.items():
        term = unit
        for p in m:
            if p not in cache:
                cache[p] = _prim_span(a.n, p)
            term = stack(term, cache[p])
        out = out + term * c
    return out


def embed_wheels(w):
    """Raw image of a CyclicElement."""
    out = DiagramSpan._raw(w.n, {})
    for c, k in w.coeffs.items():
        out = out + stu_eliminate(wheel_diagram(w.n, c)) * (WHEEL_SIGN * k)
    return out


def tder_placement(D, placement):
    """Raw image of a TDer with every tree in u or l placement."""
    out = DiagramSpan._raw(D.n, {})
    for (i, w), c in D.coordinates().items():
        out = out + placed_tree(D.n, i, w, placement) * c
    return out
