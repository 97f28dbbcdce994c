"""A tour of arrow diagrams on a few strands."""

from wkv.freelie import lie_from_bracket_expr as L, lie_zero
from wkv.tder import TDer, div, j_of
from wkv.arrowcalc import Jmap, arrow, commutator, exp_el, iota, lsec, mul, usec
from wkv.cli import parse_tangle, z_eval

N = 4
a12, a13, a23 = arrow(1, 2, 3, N), arrow(1, 3, 3, N), arrow(2, 3, 3, N)

# Reidemeister 3 for the crossing value exp(a_ij).
print("R3 holds:", mul(exp_el(a12), exp_el(a13), exp_el(a23)) == mul(exp_el(a23), exp_el(a13), exp_el(a12)))

# Tails on one strand commute, heads do not.
print("[a12, a13] =", commutator(a12, a13))
print("[a13, a23] =", commutator(a13, a23))

# Moving a tree's head past its tails costs a wheel: u - l = iota(div).
D = TDer([lie_zero(2, N), L("[x1,x2]", 2, N)])
print("div D =", div(D))
print("usec D - lsec D =", usec(D) - lsec(D))

# J(D) = e^{uD} (e^{uD})^* is the exponential of a wheel element.
print("J(D) = exp(iota j(D)):", Jmap(D) == exp_el(iota(j_of(D))))

# Words in crossings evaluate to group-like elements.
z = z_eval(parse_tangle(3, "Xp 1 2; Xm 2 3; P 1 3"), 2)
print("Z(Xp 1 2; Xm 2 3; P 1 3) through degree 2:", z)
