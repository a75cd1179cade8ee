"""Teichmueller lifts and the constants w_1, ..., w_p.

Run: python3 demos/02_w_constants.py
"""

from orderp.equivalence import extract_w_pm1
from orderp.padic import derive_w_constants, teichmuller

p, N = 5, 12
print(f"Teichmueller representatives in Z/{p}^{N}:")
for m in range(p):
    c = teichmuller(p, m, N)
    print(f"  chi({m}) = {c.residue}   chi({m})^{p} == chi({m}): {c ** p == c}")

print("\nw constants (residues mod p^N; exact integers where they are integers):")
for q in (2, 3, 5, 7):
    W = derive_w_constants(q, 20)
    exact = ", ".join("?" if e is None else str(e) for e in W.exact)
    print(f"  p = {q}: exact ({exact}); constraint failures: {W.check() or 'none'}")

print("\nA second route to w_(p-1): t^p = w_(p-1) mu t in the universal kernel algebra.")
for q in (2, 3, 5):
    print(f"  p = {q}: from t^p {extract_w_pm1(q, 12)}, from mu_p {derive_w_constants(q, 12)[q - 1].residue}")
