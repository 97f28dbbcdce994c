"""Exact sparse linear algebra over the rationals.

Vectors are dicts column -> Fraction.  Columns can be any mutually
comparable keys; the pivot of a row is its smallest column.
"""

from fractions import Fraction
import heapq

__all__ = ["Echelon", "solve_linear", "rank_of"]


def _axpy(v, c, row):
    # v += c * row, in place
    for k, x in row.items():
        r = v.get(k, 0) + c * x
        if r:
            v[k] = r
        else:
            v.pop(k, None)


class Echelon:
    """Incrementally built row echelon form with min-column pivots.

    reduce() returns the unique representative of v modulo the span that
    has no entries in pivot columns, so it is a normal form for the quotient.
    """

    def __init__(self):
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        v = {k: Fraction(c) for k, c in v.items() if c}
        heap = [k for k in v if k in self.rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c:
                continue
            row = self.rows[k]
            for j in row:
                if j not in v and j in self.rows and j not in seen:
                    heapq.heappush(heap, j)
            _axpy(v, -c, row)
        return v

    def add(self, v):
        """Insert v; returns True if it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        self.rows[p] = {k: c * inv for k, c in v.items()}
        return True

    def contains(self, v):
        return not self.reduce(v)


def rank_of(vectors):
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def solve_linear(columns, target):
    """Solve sum_j x_j columns[j] = target exactly.

    Free variables are zero; pivots are chosen left to right over the
    unknowns, so the answer is deterministic.  Returns a list of
    Fractions, or None when the system is inconsistent.
    """
    # Augmented rows keyed by unknown index; each entry tracks the
    # combination of columns that produced it.
    m = len(columns)
    e = Echelon()
    combo = {}
    pivots = []
    for j, col in enumerate(columns):
        v = dict(col)
        track = {j: Fraction(1)}
        # reduce by existing rows while recording the combination
        while True:
            ks = [k for k in v if k in e.rows]
            if not ks:
                break
            k = min(ks)
            c = v[k]
            _axpy(v, -c, e.rows[k])
            _axpy(track, -c, combo[k])
        if v:
            p = min(v)
            inv = 1 / v[p]
            e.rows[p] = {k: c * inv for k, c in v.items()}
            combo[p] = {k: c * inv for k, c in track.items()}
            pivots.append(j)
    v = {k: Fraction(c) for k, c in target.items() if c}
    x = {}
    while True:
        ks = [k for k in v if k in e.rows]
        if not ks:
            break
        k = min(ks)
        c = v[k]
        _axpy(v, -c, e.rows[k])
        _axpy(x, c, combo[k])
    if v:
        return None
    return [x.get(j, Fraction(0)) for j in range(m)]
