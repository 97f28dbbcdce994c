"""Kashiwara-Vergne solutions in Alekseev-Torossian form.

A solution is F = exp(Dlog) in TAut_2 with
    KV1   F(x + y) = log(e^x e^y)
    KV2   j(F) = delta_tilde(a)
for a one-variable series a.  The associated foam data are
    D = Dlog^{21},  V = e^{iota b} e^{u D},  b = -j(e^D)/2,  c = -a/2,
with the degree-1 parts of b and c set to zero.

Truncation: a solution "of degree N" fixes Dlog in degrees 1..N and a in
degrees 1..N, so KV1 is meaningful through Lie degree N+1 and KV2
through degree N.
"""

from dataclasses import dataclass
from fractions import Fraction
import json

from .freelie import LieElement, generator, lie_zero, lyndon_basis
from .assoc import bch
from .cyclic import CyclicElement, OneVarSeries, delta_tilde
from .tder import (TDer, TAutElement, taut_apply, taut_mul, taut_inv, j_of, div, beta,
                   is_special, transpose21, cable, td_zero, elementary, local_part)
from .linalg import solve_linear
from .arrowcalc import (ArrowElement, exp_el, iota, usec, mul, star, place, unzip_strand,
                        arrow, aone_el, log_el, pi_proj, wheels_part)
from .arrowcalc import cable as acable

__all__ = ["KVSolution", "VCPair", "CheckReport", "solve_kv", "make_V_C", "read_back",
           "check_kv1", "check_kv2", "check_R4", "check_R4_easy", "check_unitarity", "check_cap",
           "check_twist", "check_associator_eq", "check_even_duflo", "check_normalization",
           "check_all", "even_duflo_series", "associator_from_F", "InconsistentSystem",
           "save_solution", "load_solution"]


class InconsistentSystem(ArithmeticError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__("inconsistent system at degree %d" % degree)


@dataclass
class CheckReport:
    name: str
    passed: bool
    degree: int = None
    residual: str = ""

    def line(self):
        if self.passed:
            return "%s: pass" % self.name
        return "%s: FAIL at degree %s, residual %s" % (self.name, self.degree, self.residual)

    def __bool__(self):
        return self.passed


class KVSolution:
    def __init__(self, N, Dlog, duflo):
        if Dlog.n != 2:
            raise ValueError("KV solutions live in tder_2")
        self.N = N
        self.Dlog = Dlog.with_maxdeg(N + 1).truncate(N)
        self.duflo = OneVarSeries(duflo.coeffs, N)
        self._b = None

    @property
    def F(self):
        return TAutElement(self.Dlog)

    @property
    def D(self):
        return transpose21(self.Dlog)

    @property
    def b(self):
        """b = -j(e^D)/2 in tr_2, degree-1 part dropped."""
        if self._b is None:
            self._b = (j_of(self.D, self.N) * Fraction(-1, 2)).drop_one_wheels()
        return self._b

    @property
    def c(self):
        return OneVarSeries({k: -v / 2 for k, v in self.duflo.coeffs.items() if k > 1}, self.N)

    def copy(self):
        return KVSolution(self.N, self.Dlog, self.duflo)

    def __eq__(self, other):
        return (isinstance(other, KVSolution) and self.N == other.N
                and self.Dlog == other.Dlog and self.duflo == other.duflo)

    def to_dict(self):
        per = {}
        for d in range(1, self.N + 1):
            part = self.Dlog.degree_part(d)
            per[str(d)] = [{k: v for k, v in a.to_dict().get(str(d), {}).items()} for a in part.parts]
        return {"n": 2, "degree": self.N, "Dlog": per, "duflo": self.duflo.to_dict()}

    @classmethod
    def from_dict(cls, data):
        if data.get("n") != 2:
            raise ValueError("solution file must have n = 2")
        N = int(data["degree"])
        parts = [{}, {}]
        for d, tup in data["Dlog"].items():
            if len(tup) != 2:
                raise ValueError("Dlog tuples must have two slots")
            for i, block in enumerate(tup):
                for ws, pq in block.items():
                    parts[i].setdefault(d, {})[ws] = pq
        Dlog = TDer([LieElement.from_dict(2, N + 1, p) for p in parts], 2, N + 1)
        duflo = OneVarSeries.from_dict(data.get("duflo", {}), N)
        return cls(N, Dlog, duflo)

    def __repr__(self):
        return "KVSolution(N=%d, Dlog=%r, duflo=%r)" % (self.N, self.Dlog, self.duflo)


def save_solution(sol, path):
    with open(path, "w") as fh:
        json.dump(sol.to_dict(), fh, indent=1, sort_keys=True)


def load_solution(path):
    with open(path) as fh:
        return KVSolution.from_dict(json.load(fh))


# ---------------------------------------------------------------- series oracle

def _series_log1p(u, N):
    """log(1 + u) for a power series u (dict k -> coeff, k >= 1)."""
    out = {}
    power = {0: Fraction(1)}
    for m in range(1, N + 1):
        nxt = {}
        for i, a in power.items():
            for j, b in u.items():
                if i + j <= N:
                    nxt[i + j] = nxt.get(i + j, 0) + a * b
        power = nxt
        for k, v in power.items():
            out[k] = out.get(k, 0) + v * Fraction((-1) ** (m + 1), m)
    return out


def even_duflo_series(N):
    """Coefficients of (1/2) log(sinh(x/2)/(x/2)) through degree N."""
    from math import factorial
    u = {2 * k: Fraction(1, 4 ** k * factorial(2 * k + 1)) for k in range(1, N // 2 + 1)}
    lg = _series_log1p(u, N)
    return {k: v / 2 for k, v in sorted(lg.items()) if v and k <= N}


# ---------------------------------------------------------------- solver

def _lie_vec(a, d):
    return {("L", w): c for w, c in a.coeffs.items() if len(w) == d}


def _cyc_vec(w, d):
    return {("C", c): k for c, k in w.coeffs.items() if len(c) == d}


def _add(u, v, s=1):
    out = dict(u)
    for k, c in v.items():
        r = out.get(k, 0) + s * c
        if r:
            out[k] = r
        else:
            out.pop(k, None)
    return out


def _unknowns(d):
    """Non-local coordinates (slot, Lyndon word) of degree d, in basis order."""
    return [(i, w) for i in (1, 2) for w in lyndon_basis(2, d) if not (d == 1 and w == (i,))]


def solve_kv(N, even_duflo=False, twist=False, fix=None):
    """Degree-by-degree exact solve; free coordinates are set to zero.

    fix maps (slot, Lyndon word) to a prescribed value of that Dlog
    coordinate; it is moved to the right-hand side before solving.

    With even_duflo the even coefficients of a are pinned to the series
    oracle.  With twist the twist equation is imposed as well (at each
    degree the extra linear conditions are appended to the system).
    """
    if N < 2:
        raise ValueError("solve_kv needs N >= 2")
    M = N + 1
    x1, x2 = generator(2, M, 1), generator(2, M, 2)
    B = bch(x1, x2)
    Dlog = td_zero(2, M)
    a = {}
    pins = even_duflo_series(N) if even_duflo else {}
    for d in range(1, N + 1):
        Ld = TDer([p.with_maxdeg(d + 1) for p in Dlog.parts])
        xs = generator(2, d + 1, 1) + generator(2, d + 1, 2)
        t1 = _add(_lie_vec(B, d + 1), _lie_vec(taut_apply(Ld, xs), d + 1), -1)
        low = OneVarSeries(a, d)
        Dd = TDer([p.with_maxdeg(d) for p in Dlog.parts])
        t2 = _add(_cyc_vec(delta_tilde(low, d), d), _cyc_vec(j_of(Dd), d), -1)
        target = _add(t1, t2)
        cols = []
        unk = []
        fixed = {}
        for i, w in _unknowns(d):
            E = elementary(2, d + 1, i, LieElement._raw(2, d + 1, {w: Fraction(1)}))
            col = _add(_lie_vec(beta(E), d + 1), _cyc_vec(div(E.with_maxdeg(d)), d))
            if fix and (i, w) in fix:
                fixed[(i, w)] = Fraction(fix[(i, w)])
                target = _add(target, col, -fixed[(i, w)])
                if twist:
                    E2 = E.with_maxdeg(d)
                    target = _add(target, _tvec(E2 - transpose21(E2), d), -fixed[(i, w)])
            else:
                unk.append((i, w))
                cols.append(col)
        dt = _cyc_vec(delta_tilde(OneVarSeries({d: 1}, d), d), d)
        pinned = None
        if d == 1:
            pinned = Fraction(0)
        elif d in pins:
            pinned = pins[d]
        elif even_duflo and d % 2 == 0:
            pinned = Fraction(0)
        if pinned is None:
            cols.append({k: -v for k, v in dt.items()})
        else:
            target = _add(target, dt, pinned)
        if twist:
            tcols, ttarget = _twist_system(Dlog, d, unk)
            cols = [_add(c, tc) for c, tc in zip(cols, tcols)] + cols[len(tcols):]
            target = _add(target, ttarget)
        sol = solve_linear(cols, target)
        if sol is None:
            raise InconsistentSystem(d)
        parts = [dict(), dict()]
        for (i, w), v in list(zip(unk, sol)) + list(fixed.items()):
            if v:
                parts[i - 1][w] = v
        Dlog = Dlog + TDer([LieElement._raw(2, M, p) for p in parts], 2, M)
        ad = pinned if pinned is not None else sol[-1]
        if ad:
            a[d] = ad
    return KVSolution(N, Dlog, OneVarSeries(a, N))


# ---------------------------------------------------------------- twist

def _twist_log(Dlog, d):
    """log((F^{21})^{-1} e^{a12} F) - (a12 + a21)/2 through degree d."""
    x1, x2 = generator(2, d, 1), generator(2, d, 2)
    z = lie_zero(2, d)
    F = TAutElement(Dlog.with_maxdeg(d))
    F21 = TAutElement(transpose21(Dlog.with_maxdeg(d)))
    a12 = TAutElement(TDer([z, x1]))
    rhs = taut_mul(taut_mul(taut_inv(F21), a12), F)
    return rhs.logpart - TDer([x2, x1]) * Fraction(1, 2)


def _tvec(D, d):
    return {("T", i, w): c for (i, w), c in D.coordinates().items() if len(w) == d}


def _twist_system(Dlog, d, unk):
    # The degree-d part is linear in the new coordinates: D_d - D_d^{21}.
    target = {k: -v for k, v in _tvec(_twist_log(Dlog, d), d).items()}
    cols = []
    for i, w in unk:
        E = elementary(2, d, i, LieElement._raw(2, d, {w: Fraction(1)}))
        cols.append(_tvec(E - transpose21(E), d))
    return cols, target


# ---------------------------------------------------------------- foam data

@dataclass
class VCPair:
    V: ArrowElement
    c: OneVarSeries
    D: TDer = None
    b: CyclicElement = None


def make_V_C(sol, maxdeg=None):
    """V = e^{iota b} e^{u D} on two strands, and the cap exponent c = -a/2."""
    N = sol.N if maxdeg is None else maxdeg
    D = sol.D.with_maxdeg(N)
    b = sol.b.with_maxdeg(N)
    V = mul(exp_el(iota(b)), exp_el(usec(D)))
    return VCPair(V=V, c=sol.c, D=D, b=b)


def read_back(vc, N):
    """Recover the KVSolution and b from a VCPair (inverse of make_V_C)."""
    D = pi_proj(vc.V).logpart
    rest = mul(vc.V, exp_el(-usec(D)))
    b = wheels_part(log_el(rest))
    Dlog = transpose21(D).with_maxdeg(N + 1)
    a = OneVarSeries({k: -2 * v for k, v in vc.c.coeffs.items()}, N)
    return KVSolution(N, Dlog, a), b


# ---------------------------------------------------------------- checks

def _first_lie_failure(lhs, rhs, degrees):
    diff = lhs - rhs
    for d in degrees:
        part = diff.degree_part(d)
        if part:
            return d, repr(part)
    return None, ""


def check_kv1(sol, N=None):
    """F(x1 + x2) = bch(x1, x2) through Lie degree N+1."""
    N = sol.N if N is None else N
    M = N + 1
    x1, x2 = generator(2, M, 1), generator(2, M, 2)
    lhs = taut_apply(sol.Dlog.with_maxdeg(M), x1 + x2)
    d, r = _first_lie_failure(lhs, bch(x1, x2), range(1, M + 1))
    return CheckReport("kv1", d is None, d, r)


def _first_cyc_failure(diff, degrees):
    for d in degrees:
        part = diff.degree_part(d)
        if part:
            return d, repr(part)
    return None, ""


def check_kv2(sol, N=None):
    """j(F) = delta_tilde(a) through degree N."""
    N = sol.N if N is None else N
    lhs = j_of(sol.Dlog.with_maxdeg(N))
    rhs = delta_tilde(OneVarSeries(sol.duflo.coeffs, N), N)
    d, r = _first_cyc_failure(lhs - rhs, range(1, N + 1))
    return CheckReport("kv2", d is None, d, r)


def check_normalization(sol):
    """No local arrows in Dlog and no degree-1 Duflo term."""
    loc = local_part(sol.Dlog)
    if any(loc):
        return CheckReport("normalization", False, 1, "local arrows %s" % loc)
    if sol.duflo[1]:
        return CheckReport("normalization", False, 1, "a_1 = %s" % sol.duflo[1])
    return CheckReport("normalization", True)


def check_R4(vc, N, untranslated=True, through=None):
    """Hard R4, through degree `through` (default N).

    Translated: e^{D^{21}}(x1 + x2) = log(e^{x1} e^{x2}) in lie_2.
    Untranslated, on three strands:  V^{12} R^{(12)3} = R^{23} R^{13} V^{12}.
    """
    K = N if through is None else through
    x1, x2 = generator(2, K, 1), generator(2, K, 2)
    D21 = transpose21(vc.D.with_maxdeg(K))
    lhs = taut_apply(D21, x1 + x2)
    d, r = _first_lie_failure(lhs, bch(x1, x2), range(1, K + 1))
    if d is not None:
        return CheckReport("R4 (translated)", False, d, r)
    if not untranslated:
        return CheckReport("R4 (translated)", True)
    V = vc.V.with_maxdeg(K)
    V3 = place(V, 3, {1: 1, 2: 2})
    R123 = unzip_strand(exp_el(arrow(1, 2, 2, K)), 1)
    R23 = exp_el(arrow(2, 3, 3, K))
    R13 = exp_el(arrow(1, 3, 3, K))
    diff = mul(V3, R123) - mul(R23, R13, V3)
    for k in range(0, K + 1):
        part = diff.degree_part(k)
        if part:
            return CheckReport("R4 (untranslated)", False, k, repr(part)[:400])
    return CheckReport("R4 (both forms)", True)


def check_R4_easy(V, K):
    """V^{12} R^{3(12)} = R^{32} R^{31} V^{12}; holds for any group-like V."""
    V3 = place(V.with_maxdeg(K), 3, {1: 1, 2: 2})
    R3_12 = acable(exp_el(arrow(1, 2, 2, K)), 3, {1: (3,), 2: (1, 2)})
    diff = mul(V3, R3_12) - mul(exp_el(arrow(3, 2, 3, K)), exp_el(arrow(3, 1, 3, K)), V3)
    for k in range(0, K + 1):
        part = diff.degree_part(k)
        if part:
            return CheckReport("R4 easy", False, k, repr(part)[:400])
    return CheckReport("R4 easy", True)


def check_unitarity(vc, N, structured=True):
    """V V^* = 1, and its translation 2b + j(e^D) = 0 in tr_2 (degrees >= 2)."""
    jD = j_of(vc.D.with_maxdeg(N)).drop_one_wheels()
    diff = vc.b.with_maxdeg(N) * 2 + jD
    d, r = _first_cyc_failure(diff, range(2, N + 1))
    if d is not None:
        return CheckReport("unitarity (translated)", False, d, r)
    if structured:
        V = vc.V.with_maxdeg(N)
        P = mul(V, star(V)) - aone_el(2, N)
        P = P.drop_one_wheels()
        for k in range(1, N + 1):
            part = P.degree_part(k)
            if part:
                return CheckReport("unitarity", False, k, repr(part)[:400])
    return CheckReport("unitarity", True)


def check_cap(sol, N=None, c=None):
    """b^{21} = delta_tilde(c) in tr_2 for degrees >= 2."""
    N = sol.N if N is None else N
    c = sol.c if c is None else c
    b = sol.b.with_maxdeg(N)
    b21 = CyclicElement(2, N, {tuple(3 - x for x in w): k for w, k in b.coeffs.items()})
    rhs = delta_tilde(OneVarSeries(c.coeffs, N), N).drop_one_wheels()
    d, r = _first_cyc_failure(b21 - rhs, range(2, N + 1))
    return CheckReport("cap", d is None, d, r)


def check_twist(sol, N=None):
    """e^{(a12 + a21)/2} = (F^{21})^{-1} e^{a12} F in TAut_2 through degree N."""
    N = sol.N if N is None else N
    diff = _twist_log(sol.Dlog, N)
    for d in range(1, N + 1):
        part = diff.degree_part(d)
        if part:
            return CheckReport("twist", False, d, repr(part))
    return CheckReport("twist", True)


def check_even_duflo(sol, N=None):
    N = sol.N if N is None else N
    ref = even_duflo_series(N)
    for d in range(2, N + 1, 2):
        if sol.duflo[d] != ref.get(d, 0):
            return CheckReport("even duflo", False, d, "f_%d = %s, expected %s" % (d, sol.duflo[d], ref.get(d, 0)))
    return CheckReport("even duflo", True)


def associator_from_F(sol, N=None):
    """log of (F^{3(12)})^{-1} (F^{21})^{-1} F^{32} F^{(23)1} in TAut_3.

    With D = Dlog^{21} this is e^{-D^{(12)3}} e^{-D^{12}} e^{D^{23}} e^{D^{1(23)}}.
    """
    N = sol.N if N is None else N
    D = sol.D.with_maxdeg(N)
    D12_3 = cable(D, 3, {1: (1, 2), 2: (3,)})
    D12 = cable(D, 3, {1: (1,), 2: (2,)})
    D23 = cable(D, 3, {1: (2,), 2: (3,)})
    D1_23 = cable(D, 3, {1: (1,), 2: (2, 3)})
    g = taut_mul(taut_mul(TAutElement(-D12_3), TAutElement(-D12)),
                 taut_mul(TAutElement(D23), TAutElement(D1_23)))
    return g.logpart


def check_associator_eq(sol, phi, N=None):
    """e^{phi} = (F^{3(12)})^{-1} (F^{21})^{-1} F^{32} F^{(23)1} through degree N.

    phi must be special with j(e^phi) = 0; violations raise ValueError.
    """
    N = sol.N if N is None else N
    phi = phi.with_maxdeg(N)
    if phi.n != 3:
        raise ValueError("phi must live in tder_3")
    if not is_special(phi.with_maxdeg(N + 1)):
        raise ValueError("phi is not special")
    if j_of(phi):
        raise ValueError("j(phi) is not zero")
    diff = associator_from_F(sol, N) - phi
    for d in range(1, N + 1):
        part = diff.degree_part(d)
        if part:
            return CheckReport("associator", False, d, repr(part))
    return CheckReport("associator", True)


def check_all(sol, N=None, structured=False, untranslated=False):
    """The core battery used by check-kv and by the mutation suite."""
    N = sol.N if N is None else N
    reports = [check_normalization(sol), check_kv1(sol, N), check_kv2(sol, N)]
    vc = make_V_C(sol) if (structured or untranslated) else VCPair(V=None, c=sol.c, D=sol.D, b=sol.b)
    reports.append(check_R4(vc, N, untranslated=untranslated, through=N + 1))
    reports.append(check_unitarity(vc, N, structured=structured))
    reports.append(check_cap(sol, N))
    return reports
