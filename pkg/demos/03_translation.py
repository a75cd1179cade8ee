"""From congruence data (lambda, mu) to Tate-Oort data with a cogenerator and back.

Run: python3 demos/03_translation.py
"""

from orderp import CongruenceDatum, rationals, tcg_to_tgc, tgc_to_tcg
from orderp.algebra import Monic, extend, padic_ring, polynomial_ring

Q = rationals()
cert = tcg_to_tgc(CongruenceDatum(3, Q, 1, 3))
print("mu_3 as (lambda, mu) = (1, 3):")
print(f"  t = {cert.t}")
print(f"  (a, b) = ({cert.triple.a}, {cert.triple.b}), cogenerator v = {cert.cogenerator.value}")
print(f"  x recovered from t: x = {cert.x_of_t}")

p, N = 5, 10
B = padic_ring(p, N)
S = polynomial_ring(B, ["pi"])
R = extend(B, ["pi"], [Monic("pi", S.gen("pi") ** (p - 1) - p)])
pi = R.gen("pi")
D = CongruenceDatum(p, R, pi, 1)
cert = tcg_to_tgc(D)
print(f"\nZ_5[pi]/(pi^4 - 5) at precision {N}, (lambda, mu) = (pi, 1):")
print(f"  a = {cert.triple.a}")
print(f"  b = {cert.triple.b}")
back = tgc_to_tcg(cert.triple, cert.cogenerator)
for v in back.verdicts:
    print(f"  {'ok ' if v.passed else 'BAD'} {v.name}")
print(f"  recovered (lambda, mu) = ({back.datum.lam}, {back.datum.mu})")
