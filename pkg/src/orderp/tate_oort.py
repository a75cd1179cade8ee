"""Tate-Oort data (a, b) with a*b = w_p over a ring with trivialized line
bundle, sections toward / from the group, and the Katz-Mazur full-set-of-
sections test."""

from dataclasses import dataclass

from .algebra import Monic, extend, is_unit, polynomial_ring
from .errors import InvariantViolation, NotInvertible
from .padic import lambda_data

TOWARD = "toward"  # u: (Z/p)_S -> G, a candidate generator
FROM = "from"  # v: G -> mu_p, a candidate cogenerator


@dataclass(frozen=True)
class TateOortTriple:
    prime: int
    ring: object
    a: object
    b: object

    def __post_init__(self):
        R = self.ring
        object.__setattr__(self, "a", R(self.a))
        object.__setattr__(self, "b", R(self.b))
        wp = self.lambda_data().w_(self.prime)
        if self.a * self.b != R(wp):
            raise InvariantViolation(f"a*b = {self.a * self.b} is not w_p = {R(wp)}", "a*b=w_p")

    def lambda_data(self):
        return lambda_data(self.ring.domain, self.prime)

    def w(self, i):
        return self.ring(self.lambda_data().w_(i))

    def chi(self, m):
        return self.ring(self.lambda_data().chi[m % self.prime])


@dataclass(frozen=True)
class Section:
    """A section u of L with u^p = u a (direction TOWARD), or v of L^-1 with
    v^p = v b (direction FROM)."""

    triple: TateOortTriple
    direction: str
    value: object

    def __post_init__(self):
        T = self.triple
        object.__setattr__(self, "value", T.ring(self.value))
        if self.direction not in (TOWARD, FROM):
            raise ValueError(f"direction must be {TOWARD!r} or {FROM!r}")
        s = self.value
        c = T.a if self.direction == TOWARD else T.b
        if s ** T.prime != s * c:
            name = "u^p = u*a" if self.direction == TOWARD else "v^p = v*b"
            raise InvariantViolation(f"section {s} violates {name}", name)


def group_algebra(T, var="x"):
    """R[x]/(x^p - a x), free of rank p."""
    S = polynomial_ring(T.ring, [var])
    x = S.gen(var)
    return extend(T.ring, [var], [Monic(var, x ** T.prime - T.a * x)])


def cartier_dual(T):
    return TateOortTriple(T.prime, T.ring, T.b, T.a)


def rescale(T, alpha):
    """Image of T under the isomorphism L -> L' given by a unit alpha:
    a' = alpha^(p-1) a, b' = alpha^(1-p) b."""
    alpha = T.ring(alpha)
    r = is_unit(alpha)
    if not r:
        raise NotInvertible(f"{alpha} is not a unit")
    p = T.prime
    return TateOortTriple(p, T.ring, alpha ** (p - 1) * T.a, r.inverse ** (p - 1) * T.b)


def rescale_section(s, alpha):
    T = s.triple
    alpha = T.ring(alpha)
    if s.direction == TOWARD:
        return Section(rescale(T, alpha), TOWARD, alpha * s.value)
    return Section(rescale(T, alpha), FROM, is_unit(alpha).inverse * s.value)


def is_generator(T, u):
    """u^(p-1) = a."""
    u = u.value if isinstance(u, Section) else T.ring(u)
    return u ** (T.prime - 1) == T.a


def is_cogenerator(T, v):
    """v^(p-1) = b."""
    v = v.value if isinstance(v, Section) else T.ring(v)
    return v ** (T.prime - 1) == T.b


def katz_mazur_oracle(T, u):
    """Decide whether the sections chi(i)*u form a full set of sections.

    Builds the universal function f = c_0 + c_1 x + ... + c_(p-1) x^(p-1) with
    indeterminate coefficients, takes Norm(f) as the determinant of
    multiplication by f on the basis 1, ..., x^(p-1) of R[c][x]/(x^p - a x), and
    compares it with the product of f(chi(i) u) over i = 0..p-1.
    """
    p = T.prime
    u = u.value if isinstance(u, Section) else T.ring(u)
    chi = T.lambda_data().chi
    names = [f"c{i}" for i in range(p)]
    Rc = polynomial_ring(T.ring, names)
    Tc = TateOortTriple(p, Rc, T.a, T.b)
    A = group_algebra(Tc, "x")
    S = A.split(["x"])
    x = A.gen("x")
    f = A.zero()
    for i, name in enumerate(names):
        f = f + A.gen(name) * x ** i
    norm = S.norm(f)
    product = Rc.one()
    uc = Rc(u)
    for i in range(p):
        point = Rc(chi[i]) * uc
        value = Rc.zero()
        for k, name in enumerate(names):
            value = value + Rc.gen(name) * point ** k
        product = product * value
    return norm == product


def norm_of(T, f):
    """Norm of an element of the group algebra (a helper for examples)."""
    A = f.ring
    return A.split(["x"]).norm(f)
