"""Case generators and brute-force oracles shared by the test modules."""

from fractions import Fraction
import math
import random

from orderp.algebra import (
    DVRSpec,
    Monic,
    divide_exact,
    extend,
    integers,
    integers_mod,
    inverse,
    localization,
    padic_ring,
    polynomial_ring,
    substitute,
)
from orderp.congruence import CongruenceDatum
from orderp.padic import lambda_data, teichmuller
from orderp.tate_oort import TateOortTriple

SEED = 20240611


# -- w constants -------------------------------------------------------------


def cyclic_mul(f, g, p, mod):
    out = [0] * p
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[(i + j) % p] = (out[(i + j) % p] + a * b) % mod
    return out


def w_oracle(p, N):
    """w_i from y^i = w_i y_i by integer convolution, independent of the ring code.

    Teichmueller values come from Hensel lifting x^(p-1) = 1 rather than from
    iterated Frobenius."""
    mod = p ** N
    chi = {}
    for m in range(1, p):
        x = m
        for _ in range(N + 2):
            # Newton step for x^(p-1) - 1
            fx = pow(x, p - 1, mod) - 1
            dfx = (p - 1) * pow(x, p - 2, mod)
            x = (x - fx * pow(dfx, -1, mod)) % mod
        chi[m] = x

    def y_(i):
        v = [0] * p
        for m in range(1, p):
            c = pow(pow(chi[m], -1, mod), i, mod)
            v[0] = (v[0] + c) % mod
            v[m] = (v[m] - c) % mod
        return v

    y = y_(1)
    out = []
    acc = [1] + [0] * (p - 1)
    for i in range(1, p + 1):
        acc = cyclic_mul(acc, y, p, mod)
        target = y if i == p else y_(i)
        c = acc[1] * pow(target[1], -1, mod) % mod
        assert all((a - c * b) % mod == 0 for a, b in zip(acc, target))
        out.append(c)
    return out


# -- generators and cogenerators --------------------------------------------


def finite_field_cases(p):
    """Every (T, u) over F_p with ab = w_p and u^p = u a."""
    R = integers_mod(p)
    out = []
    for a in range(p):
        for b in range(p):
            if a * b % p:
                continue
            T = TateOortTriple(p, R, a, b)
            for u in range(p):
                if (u ** p - u * a) % p == 0:
                    out.append((T, u))
    return out


def teichmuller_cases(p, count, rng):
    """Random (T, u) over Z/p^2 with u a Teichmueller multiple chi(m) c.

    Half the cases take a = u^(p-1) when that admits a Tate-Oort partner b;
    the rest take any a with u^p = u a."""
    n = p * p
    R = integers_mod(n)
    wp = lambda_data(R.domain, p).w_(p)
    partner = {a: b for a in range(n) for b in range(n) if a * b % n == wp}
    out = []
    while len(out) < count:
        u = teichmuller(p, rng.randrange(p), 2).residue * rng.randrange(n) % n
        sols = [a for a in partner if (pow(u, p, n) - u * a) % n == 0]
        if not sols:
            continue
        gen = pow(u, p - 1, n)
        a = gen if gen in partner and rng.random() < 0.5 else rng.choice(sols)
        out.append((TateOortTriple(p, R, a, partner[a]), u))
    return out


# -- congruence data ---------------------------------------------------------


def ramified_padic(p, N):
    """Z_p[pi]/(pi^(p-1) - p) at precision N."""
    B = padic_ring(p, N)
    S = polynomial_ring(B, ["pi"])
    pi = S.gen("pi")
    return extend(B, ["pi"], [Monic("pi", pi ** (p - 1) - p)])


def _random_unit(R, p, rng, extra=()):
    u = R(rng.choice([k for k in range(1, 4 * p) if k % p]))
    for g in extra:
        u = u + R(rng.randrange(-3, 4)) * g
    return u


def random_datum(p, rng, N=8):
    """A random (lambda, mu) with lambda^(p-1) mu = p over a test ring."""
    kind = rng.choice(["padic", "ramified", "local"] if p in (2, 3) else ["padic", "ramified"])
    if kind == "padic":
        R = padic_ring(p, N)
        u = _random_unit(R, p, rng)
        if p == 2 and rng.random() < 0.5:
            return CongruenceDatum(p, R, 2 * u, inverse(u))
        return CongruenceDatum(p, R, u, p * inverse(u) ** (p - 1))
    if kind == "ramified":
        R = ramified_padic(p, N)
        pi = R.gen("pi")
        u = _random_unit(R, p, rng, [pi])
        k = rng.choice([0, 1])
        lam = u * pi ** k
        mu = inverse(u) ** (p - 1) * pi ** ((p - 1) * (1 - k))
        return CongruenceDatum(p, R, lam, mu)
    # Z localized at p, or Z[zeta_p] localized at 1 - zeta_p
    if rng.random() < 0.5:
        R = localization(integers(), p)
        num = rng.choice([k for k in (1, -1, 2, 5, 7) if k % p])
        u = R(Fraction(num, rng.choice([1, 5, 7, 11])))
        if p == 2 and rng.random() < 0.5:
            return CongruenceDatum(p, R, 2 * u, inverse(u))
        return CongruenceDatum(p, R, u, p * inverse(u) ** (p - 1))
    R = cyclotomic_local(p)
    z = R.gen("z")
    pi = 1 - z
    u = R(rng.choice([1, -1])) * z ** rng.randrange(p)
    lam = u * pi
    return CongruenceDatum(p, R, lam, divide_exact(R(p), lam ** (p - 1)))


def cyclotomic_local(p):
    """Z[zeta_p] localized at the prime above p."""
    Z = integers()
    S = polynomial_ring(Z, ["z"])
    z = S.gen("z")
    phi = sum((z ** i for i in range(p)), S.zero())
    return localization(extend(Z, ["z"], [Monic("z", phi)]), p)


def random_unit_of(D, rng):
    R = D.ring
    p = D.prime
    extra = [R.gen(v) for v in R.variables]
    while True:
        u = _random_unit(R, p, rng, extra)
        try:
            inverse(u)
            return u
        except Exception:
            continue


# -- valued data over DVRs ---------------------------------------------------


def eisenstein_dvr(p, e):
    """Z[pi]/(pi^e - p) localized at (pi)."""
    Z = integers()
    S = polynomial_ring(Z, ["pi"])
    pi = S.gen("pi")
    R = localization(extend(Z, ["pi"], [Monic("pi", pi ** e - p)]), p)
    return DVRSpec(R, R.gen("pi"), {"pi": 0})


def truncated_dvr(p, K):
    F = integers_mod(p)
    S = polynomial_ring(F, ["s"])
    s = S.gen("s")
    R = extend(F, ["s"], [Monic("s", s ** K)])
    return DVRSpec(R, R.gen("s"), {"s": 0})


def random_valued_datum(p, rng):
    """(D, dvr, v(lambda), v(mu)) with valuations in units of the uniformizer,
    known by construction."""
    if rng.random() < 0.25:
        dvr = truncated_dvr(p, 2 * p + 2)
        R = dvr.ring
        s = R.gen("s")
        unit = R(rng.randrange(1, p)) + R(rng.randrange(p)) * s
        choice = rng.randrange(3)
        if choice == 0:
            return CongruenceDatum(p, R, unit, 0), dvr, 0, math.inf
        if choice == 1:
            k = rng.randrange(0, 3)
            return CongruenceDatum(p, R, 0, unit * s ** k), dvr, math.inf, k
        k = rng.randrange(1, 3)
        return CongruenceDatum(p, R, unit * s ** k, 0), dvr, k, math.inf
    e = rng.choice([1, 2, 3] if p == 2 else [1, p - 1, 2 * (p - 1), 3])
    dvr = eisenstein_dvr(p, e)
    R = dvr.ring
    pi = dvr.uniformizer
    k = rng.randrange(0, e // (p - 1) + 1)
    c = rng.choice([c for c in (1, -1, 2, -2, 4) if c % p])
    unit = R(c) + R(rng.randrange(-2, 3)) * pi
    lam = unit * pi ** k
    mu = divide_exact(R(p), lam ** (p - 1))
    return CongruenceDatum(p, R, lam, mu), dvr, k, e - (p - 1) * k


def rng_for(name):
    return random.Random(f"{SEED}-{name}")


# -- Weil restriction --------------------------------------------------------


def _truncated_f2():
    F = integers_mod(2)
    S = polynomial_ring(F, ["s"])
    return extend(F, ["s"], [Monic("s", S.gen("s") ** 2)])


def weil_bases():
    """name -> (A, [(C, phi)] for every quotient ring C = A/K with |C| <= 16,
    scalars used to build generators)."""
    Z = integers()
    A4, A6, Fs = integers_mod(4), integers_mod(6), _truncated_f2()
    s = Fs.gen("s")
    return {
        "Z": (Z, [(integers_mod(m), {}) for m in range(1, 17)], [1, 2, 3, 4, 6]),
        "Z/4": (A4, [(integers_mod(m), {}) for m in (1, 2, 4)], [1, 2]),
        "Z/6": (A6, [(integers_mod(m), {}) for m in (1, 2, 3, 6)], [1, 2, 3]),
        "F2[s]/(s^2)": (
            Fs,
            [(integers_mod(1), {"s": 0}), (integers_mod(2), {"s": 0}), (Fs, {"s": s})],
            [1, s],
        ),
    }


def random_weil_instance(rng):
    """(name, ext, I) with B = A[y]/(f) of rank n <= 3 and I generated by
    scalar multiples of random elements."""
    from orderp.weil import FiniteFreeExtension, Ideal

    bases = weil_bases()
    name = rng.choice(sorted(bases))
    A, _, scalars = bases[name]
    n = rng.randrange(1, 4)
    S = polynomial_ring(A, ["y"])
    y = S.gen("y")
    f = y ** n + sum((A(rng.randrange(-3, 4)) * y ** i for i in range(n)), S.zero())
    B = extend(A, ["y"], [Monic("y", f)])
    yb = B.gen("y")
    gens = []
    for _ in range(rng.randrange(1, 3)):
        c = A(rng.choice(scalars))
        g = sum((A(rng.randrange(-4, 5)) * yb ** i for i in range(n)), B.zero())
        gens.append(c * g)
    return name, FiniteFreeExtension(A, B), Ideal(B, gens)


def section_exists_brute_force(ext, I, C, phi):
    """Does V(I) contain all of Spec(B (x) C)?  Decided in B (x) C itself.

    When B (x) C has at most 256 elements every product g*b is formed; otherwise
    the products g*y^i with the C-module generators y^i are enough."""
    from itertools import product

    if C.one().is_zero():
        return True  # B (x) 0 is the zero ring
    BC = ext.base_change(C, phi)
    y = BC.gen(ext.new_vars[0])
    assignment = {v: BC(phi[v]) for v in ext.base.variables}
    images = [substitute(g, assignment, BC) for g in I.generators]
    n = ext.rank
    size = C.domain.modulus ** n if not C.variables else None
    if size is not None and size <= 256:
        elems = [
            sum((C(c) * y ** i for i, c in enumerate(cs)), BC.zero())
            for cs in product(range(C.domain.modulus), repeat=n)
        ]
    else:
        elems = [y ** i for i in range(n)]
    return all((g * b).is_zero() for g in images for b in elems)
