"""Solve the KV equations to degree 5 and run every check on the result."""

from wkv import kv
from wkv.cyclic import OneVarSeries

N = 5
sol = kv.solve_kv(N)
print("log F, degree 1:", sol.Dlog.degree_part(1))
print("Duflo coefficients:", sol.duflo)
print("even part of (1/2) log(sinh(x/2)/(x/2)):", kv.even_duflo_series(N))

for r in kv.check_all(sol, structured=True, untranslated=True):
    print(" ", r.line())
print(" ", kv.check_twist(sol).line())

# The vertex value and its inverse map.
vc = kv.make_V_C(sol)
back, b = kv.read_back(vc, N)
print("read_back recovers the solution:", back == sol)

# The associator the solution produces, through degree 3.
phi = kv.associator_from_F(sol, 3)
print("phi, degree 2:", phi.degree_part(2))
print(" ", kv.check_associator_eq(sol, phi, 3).line())

# Break one coefficient and watch a check catch it.
bad = kv.KVSolution(N, sol.Dlog.with_maxdeg(N + 1), sol.duflo + OneVarSeries({3: 1}, N))
print("perturbed a_3:", [r.line() for r in kv.check_all(bad) if not r.passed][0])
