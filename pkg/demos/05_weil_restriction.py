"""Closed conditions pushed down finite free extensions.

Run: python3 demos/05_weil_restriction.py
"""

from orderp import FiniteFreeExtension, Ideal, equalizer_ideal, weil_restrict_closed
from orderp.algebra import Monic, MonomialRewrite, extend, integers, polynomial_ring, quotient
from orderp.weil import homomorphism_condition_ideal

Z = integers()
S = polynomial_ring(Z, ["i"])
Zi = extend(Z, ["i"], [Monic("i", S.gen("i") ** 2 + 1)])
ext = FiniteFreeExtension(Z, Zi)
i = Zi.gen("i")

print("Z -> Z[i], basis", ", ".join(map(str, ext.basis)))
print("  V(2 + 2i) restricts to", weil_restrict_closed(ext, Ideal(Zi, [2 + 2 * i])))
C = polynomial_ring(Z, ["y"])
print("  the points 1 + 2i and 1 - 2i agree exactly over", equalizer_ideal(ext, C, {"y": 1 + 2 * i}, {"y": 1 - 2 * i}))

J = homomorphism_condition_ideal(2)
print("\nWhere is P a homomorphism for p = 2, with lambda and mu free?")
print("  ideal", J)
R = J.ring
lam, mu = R.gen("lam"), R.gen("mu")
Q = quotient(R, [MonomialRewrite(lam * mu, R(2))])
print("  modulo lambda*mu = 2 the generators become", [str(Q(g)) for g in J.generators])
