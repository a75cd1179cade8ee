"""Weil restriction of closed subschemes along finite free extensions.

If B is free over A with basis e_1..e_n and Z = Spec(B/I), a section of Z
over an A-algebra T exists iff I dies in B (x) T.  Writing every generator of
I in the basis shows this happens iff all basis coordinates die in T, so the
Weil restriction is cut out by the coordinate ideal J in A.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import (
    QQ,
    ZZ,
    Monic,
    PresentedRing,
    RingElement,
    ResidueDomain,
    extend,
    polynomial_ring,
    substitute,
)
from .errors import PresentationError, RelationViolation, Undecidable


class FiniteFreeExtension:
    """B = total viewed as a free A-module (A = base) on standard monomials."""

    def __init__(self, base, total, new_vars=None):
        if new_vars is None:
            new_vars = [v for v in total.variables if v not in base.variables]
        S = total.split(new_vars)
        if S is None:
            raise PresentationError(f"{total} is not visibly free over {base}")
        if S.base.key() != base.key():
            raise PresentationError(f"{total} does not split over {base}")
        self.base = base
        self.total = total
        self.new_vars = tuple(new_vars)
        self._split = S

    @property
    def rank(self):
        return self._split.rank

    @property
    def basis(self):
        return self._split.basis()

    def coordinates(self, e):
        return [self.base(c) for c in self._split.coordinates(self.total(e))]

    def from_coordinates(self, coords):
        return self._split.from_coordinates(coords)

    def relations(self):
        """The relations of B over A, as elements of A[new vars]."""
        S = polynomial_ring(self.base, self.new_vars)
        idx = [self.total.index(v) for v in self.new_vars]
        return [
            S(_rule_lhs_minus_rhs(self.total, r))
            for r in self.total.rules
            if any(r.lhs[i] for i in idx)
        ]

    def base_change(self, target, phi):
        """B (x)_A T as a presented ring over T, given phi: A -> T by generator images."""
        names = self.new_vars
        S = polynomial_ring(target, names)
        rels = []
        A = self.base
        for r in self.total.rules:
            f = _rule_lhs_minus_rhs(self.total, r)
            if not any(f.degree(v) > 0 for v in names):
                continue
            assignment = {v: S(phi[v]) for v in A.variables}
            img = substitute(f, assignment, S)
            var = _pure_power_var(self.total, r)
            rels.append(Monic(var, img))
        return extend(target, names, rels)


def _rule_lhs_minus_rhs(R, r):
    lhs = RingElement(R, {r.lhs: 1})
    rhs = RingElement(R, dict(r.rhs))
    # build in the free polynomial ring so the relation is not reduced away
    F = polynomial_ring(PresentedRing(R.domain, (), (), local_prime=R.local_prime), R.variables)
    return RingElement(F, dict(lhs._terms)) - RingElement(F, dict(rhs._terms))


def _pure_power_var(R, r):
    sup = [i for i, e in enumerate(r.lhs) if e]
    if len(sup) != 1:
        raise PresentationError("base change needs monic relations in the new variables")
    return R.variables[sup[0]]


class Ideal:
    """A finitely generated ideal; generators are normalized and deduplicated.

    Over Z, Z/n and Q (no variables) the generator set is replaced by a single
    canonical generator, which makes equality and membership decidable.  In
    other rings equality compares generator sets only.
    """

    def __init__(self, ring, generators=()):
        self.ring = ring
        gens = []
        seen = set()
        for g in generators:
            g = ring(g)
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators = tuple(self._canonical(gens))

    def _canonical(self, gens):
        R = self.ring
        if R.variables or not gens:
            return sorted(gens, key=repr)
        dom = R.domain
        if dom == ZZ:
            g = 0
            for e in gens:
                g = gcd(g, e.constant())
            return [R(g)]
        if isinstance(dom, ResidueDomain):
            g = dom.modulus
            for e in gens:
                g = gcd(g, e.constant())
            return [] if g == dom.modulus else [R(g)]
        if dom == QQ:
            p = R.local_prime
            if p is None:
                return [R.one()]
            v = min(_vp_fraction(Fraction(e.constant()), p) for e in gens)
            return [R(p ** v)]
        return sorted(gens, key=repr)

    def is_zero(self):
        return not self.generators

    def is_unit_ideal(self):
        return any(g == 1 for g in self.generators)

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and set(self.generators) == set(other.generators)
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.generators)))

    def __add__(self, other):
        return Ideal(self.ring, self.generators + other.generators)

    def contains(self, e):
        """Membership, decided over Z, Z/n and Q; otherwise only for generators."""
        e = self.ring(e)
        if e.is_zero():
            return True
        R = self.ring
        if not R.variables and (R.domain == ZZ or isinstance(R.domain, ResidueDomain)):
            if not self.generators:
                return False
            return e.constant() % self.generators[0].constant() == 0
        if not R.variables and R.domain == QQ:
            if not self.generators:
                return False
            return Ideal(R, [e]).generators[0].constant() % self.generators[0].constant() == 0
        if e in self.generators:
            return True
        raise Undecidable(f"ideal membership in {R} is not decided")

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.generators)

    def image(self, phi, target):
        """Generators pushed forward along phi: ring -> target (generator images)."""
        return Ideal(target, [substitute(g, phi, target) for g in self.generators])

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")" if self.generators else "(0)"


def _vp_fraction(c, p):
    if c == 0:
        return float("inf")
    n, d = c.numerator, c.denominator
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def weil_restrict_closed(ext, I):
    """The ideal of A cutting out the Weil restriction of V(I) along A -> B."""
    if I.ring != ext.total:
        raise PresentationError("the ideal must live in the total ring")
    coords = []
    for g in I.generators:
        coords.extend(ext.coordinates(g))
    return Ideal(ext.base, coords)


def equalizer_ideal(ext, source, f, g):
    """Ideal of A where two A-algebra maps source -> B agree.

    ``source`` is a presented A-algebra, ``f`` and ``g`` give images of its
    variables beyond those of A.  Both maps are checked on the relations."""
    new = [v for v in source.variables if v not in ext.base.variables]
    B = ext.total
    for name, m in (("f", f), ("g", g)):
        if set(m) != set(new):
            raise RelationViolation(f"{name} must assign exactly {new}")
        assignment = {v: B(m[v]) for v in new}
        for r in source.rules:
            rel = _rule_lhs_minus_rhs(source, r)
            if not substitute(rel, assignment, B).is_zero():
                raise RelationViolation(f"{name} does not respect the relation {rel} = 0")
    coords = []
    for v in new:
        coords.extend(ext.coordinates(B(f[v]) - B(g[v])))
    return Ideal(ext.base, coords)


@dataclass
class StructureConditions:
    associativity: Ideal
    counit: Ideal

    @property
    def total(self):
        return self.associativity + self.counit


def tensor_power(ext, k):
    """B^(x)k over A for monogenic B = A[x]/(f), with variables x1..xk."""
    if len(ext.new_vars) != 1:
        raise PresentationError("tensor powers are built for monogenic extensions")
    x = ext.new_vars[0]
    rels = ext.relations()
    if len(rels) != 1:
        raise PresentationError("expected a single monic relation")
    names = [f"{x}{i}" for i in range(1, k + 1)]
    S = polynomial_ring(ext.base, names)
    f = rels[0]
    monic = [Monic(n, substitute(f, {x: S.gen(n)}, S)) for n in names]
    T = extend(ext.base, names, monic)
    return FiniteFreeExtension(ext.base, T)


def structure_condition_ideal(ext, law):
    """Closed conditions for ``law`` (a polynomial in x1, x2 over A) to be an
    associative multiplication with counit x = 0 on B = A[x]/(f)."""
    x = ext.new_vars[0]
    B = ext.total
    E3 = tensor_power(ext, 3)
    T3 = E3.total
    v1, v2, v3 = (T3.gen(f"{x}{i}") for i in (1, 2, 3))
    m = lambda a, b, R: substitute(law, {"x1": a, "x2": b}, R)  # noqa: E731
    assoc = m(m(v1, v2, T3), v3, T3) - m(v1, m(v2, v3, T3), T3)
    xb = B.gen(x)
    counit = [m(xb, B.zero(), B) - xb, m(B.zero(), xb, B) - xb]
    J_assoc = Ideal(ext.base, E3.coordinates(assoc))
    J_counit = Ideal(ext.base, [c for e in counit for c in ext.coordinates(e)])
    return StructureConditions(J_assoc, J_counit)


def coefficient_ideal(f, variables):
    """Ideal of the coefficients of f as a polynomial in ``variables``.

    This is the Weil restriction of V(f) along the free (infinite rank)
    extension A -> A[variables]."""
    R = f.ring
    keep = [v for v in R.variables if v not in variables]
    A = polynomial_ring(PresentedRing(R.domain, (), (), local_prime=R.local_prime), keep)
    if R.rules:
        raise PresentationError("coefficient ideals are taken in polynomial rings")
    coeffs = {}
    idx = [R.index(v) for v in variables]
    kidx = [R.index(v) for v in keep]
    for mono, c in f._terms.items():
        key = tuple(mono[i] for i in idx)
        inner = tuple(mono[i] for i in kidx)
        coeffs.setdefault(key, {})[inner] = c
    return Ideal(A, [RingElement(A, d) for d in coeffs.values()])


def homomorphism_condition_ideal(p, A=None):
    """Where P : G^(lambda) -> G^(lambda^p) is a homomorphism, over A[lambda, mu].

    Here lambda and mu are free: no relation lambda^(p-1) mu = p is imposed,
    and the ideal measures the failure of that relation."""
    from .algebra import integers
    from .congruence import divided_binomial

    A = A if A is not None else integers()
    R = polynomial_ring(A, ["lam", "mu", "x1", "x2"])
    lam, mu, x1, x2 = (R.gen(v) for v in ("lam", "mu", "x1", "x2"))

    def P(X):
        acc = X ** p
        for i in range(1, p):
            acc = acc + divided_binomial(p, i) * lam ** (i - 1) * mu * X ** i
        return acc

    diff = P(x1 + x2 + lam * x1 * x2) - P(x1) - P(x2) - lam ** p * P(x1) * P(x2)
    return coefficient_ideal(diff, ["x1", "x2"])
