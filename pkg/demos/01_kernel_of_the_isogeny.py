"""The isogeny P : G^(lambda) -> G^(lambda^p) and its kernel, universally.

Run: python3 demos/01_kernel_of_the_isogeny.py
"""

from orderp import embedding_diagram, kernel_hopf, universal_datum, verify_universal_identities
from orderp.congruence import isogeny_polynomial, multiplication_by

print("Universal ring O = Z[E, F]/(E^(p-1) F - p), lambda = E, mu = F.\n")
for p in (2, 3, 5, 7):
    rep = verify_universal_identities(p)
    status = ", ".join(f"{v.name} {'holds' if v.passed else 'FAILS'}" for v in rep.verdicts)
    print(f"p = {p}: P(X) = {isogeny_polynomial(universal_datum(p))}")
    print(f"       {status} ({rep.seconds:.2f}s)")

print("\nThe kernel H = R[x]/(P(x)) with law x1 + x2 + lambda x1 x2.")
for p in (2, 3):
    H = kernel_hopf(universal_datum(p))
    print(f"p = {p}: antipode = {H.antipode}; checks: " + ", ".join(v.name for v in H.verdicts if v.passed))

H = kernel_hopf(universal_datum(3))
for m in (1, 2, 3):
    print(f"  [{m}](x) = {multiplication_by(H, m)}")

D = universal_datum(3)
E = embedding_diagram(D)
print("\nEmbedding into the Kummer sequence via z = 1 + lambda x:")
for v in E.verdicts:
    print(f"  {'ok ' if v.passed else 'BAD'} {v.name}: {v.detail}")
