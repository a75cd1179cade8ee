"""Generic and special fibers of three congruence group schemes over p = 3.

Run: python3 demos/04_degenerations.py
"""

from orderp import CongruenceDatum, degeneration_report
from orderp.algebra import DVRSpec, Monic, divide_exact, extend, integers, localization, polynomial_ring

Z = integers()


def local_order(var, relation):
    S = polynomial_ring(Z, [var])
    return localization(extend(Z, [var], [Monic(var, relation(S.gen(var)))]), 3)


Zl = localization(Z, 3)
print("mu_3 over Z_(3):")
print("  " + degeneration_report(CongruenceDatum(3, Zl, 1, 3), DVRSpec(Zl, 3, {})).describe())

Zz = local_order("z", lambda z: z ** 2 + z + 1)
z = Zz.gen("z")
lam = 1 - z
rep = degeneration_report(CongruenceDatum(3, Zz, lam, divide_exact(Zz(3), lam ** 2)), DVRSpec(Zz, lam, {"z": 1}))
print("\n(1 - zeta, 3/(1 - zeta)^2) over Z[zeta_3] localized:")
print("  " + rep.describe())
cert = rep.special.witness
print(f"  separability witness s = {list(cert.s)}, t = {list(cert.t)}: valid {cert.verify()}")

Zpi = local_order("pi", lambda pi: pi ** 3 - 3)
pi = Zpi.gen("pi")
rep = degeneration_report(CongruenceDatum(3, Zpi, pi, pi), DVRSpec(Zpi, pi, {"pi": 0}))
print("\n(pi, pi) over Z[pi]/(pi^3 - 3) localized:")
print("  " + rep.describe())
