"""Congruence group schemes: the smooth group G^(lambda) with law
x1 + x2 + lambda x1 x2, the isogeny P to G^(lambda^p), its kernel H with a
full Hopf presentation, and the embedding into the Kummer sequence."""

from dataclasses import dataclass, field
from math import comb
import time

from .algebra import (
    Monic,
    MonomialRewrite,
    extend,
    integers,
    is_unit,
    polynomial_ring,
    quotient,
    substitute,
)
from .errors import InvariantViolation

DEFAULT_IDENTITY_BOUND = 13


def divided_binomial(p, i):
    """C(p, i) / p, computed in the integers."""
    c = comb(p, i)
    if c % p:
        raise ValueError(f"C({p},{i}) is not divisible by {p}")
    return c // p


@dataclass(frozen=True)
class CongruenceDatum:
    """(lambda, mu) with lambda^(p-1) mu = p in a ring with trivialized M."""

    prime: int
    ring: object
    lam: object
    mu: object

    def __post_init__(self):
        R = self.ring
        object.__setattr__(self, "lam", R(self.lam))
        object.__setattr__(self, "mu", R(self.mu))
        if self.lam ** (self.prime - 1) * self.mu != R(self.prime):
            raise InvariantViolation(
                f"lambda^(p-1)*mu = {self.lam ** (self.prime - 1) * self.mu} is not {self.prime}",
                "lambda^(p-1)*mu=p",
            )


def universal_ring(p, base=None):
    """O = base[E, F]/(E^(p-1) F - p), with base = Z by default."""
    base = base if base is not None else integers()
    S = polynomial_ring(base, ["E", "F"])
    E, F = S.gens
    return quotient(S, [MonomialRewrite(E ** (p - 1) * F, S(p))])


def universal_datum(p, base=None):
    O = universal_ring(p, base)
    return CongruenceDatum(p, O, O.gen("E"), O.gen("F"))


def isogeny_coefficients(D):
    """[c_0, ..., c_p] with P(X) = sum c_i X^i."""
    p = D.prime
    R = D.ring
    coeffs = [R.zero()]
    for i in range(1, p):
        coeffs.append(R(divided_binomial(p, i)) * D.lam ** (i - 1) * D.mu)
    coeffs.append(R.one())
    return coeffs


def isogeny_polynomial(D, var="X", ring=None):
    """P as an element of ring (default D.ring[var])."""
    if ring is None:
        ring = polynomial_ring(D.ring, [var])
    X = ring.gen(var)
    acc = ring.zero()
    for i, c in enumerate(isogeny_coefficients(D)):
        if c:
            acc = acc + ring(c) * X ** i
    return acc


def group_law(ring, lam, x1, x2):
    return x1 + x2 + ring(lam) * x1 * x2


@dataclass
class Verdict:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class IdentityReport:
    prime: int
    verdicts: list
    term_counts: dict
    seconds: float = 0.0

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts)


def verify_identities(D):
    """Check 1 + lambda^p P(X) = (1 + lambda X)^p and
    P(X + Y + lambda XY) = P(X) + P(Y) + lambda^p P(X) P(Y) in D.ring[X, Y]."""
    start = time.perf_counter()
    p = D.prime
    RXY = polynomial_ring(D.ring, ["X", "Y"])
    X, Y = RXY.gen("X"), RXY.gen("Y")
    lam = RXY(D.lam)
    PX = isogeny_polynomial(D, "X", RXY)
    PY = substitute(PX, {"X": Y}, RXY)
    lhs1 = 1 + lam ** p * PX
    rhs1 = (1 + lam * X) ** p
    PXY = substitute(PX, {"X": group_law(RXY, lam, X, Y)}, RXY)
    rhs2 = PX + PY + lam ** p * PX * PY
    ok1 = lhs1 == rhs1
    ok2 = PXY == rhs2
    counts = {
        "identity-1": rhs1.num_terms(),
        "identity-2": PXY.num_terms(),
    }
    verdicts = [
        Verdict("identity-1", ok1, "1+lambda^p*P(X) = (1+lambda*X)^p"),
        Verdict("identity-2", ok2, "P(X+Y+lambda*X*Y) = P(X)+P(Y)+lambda^p*P(X)*P(Y)"),
    ]
    return IdentityReport(p, verdicts, counts, time.perf_counter() - start)


def verify_universal_identities(p, bound=DEFAULT_IDENTITY_BOUND):
    if p > bound:
        raise ValueError(f"p = {p} exceeds the configured bound {bound}")
    return verify_identities(universal_datum(p))


@dataclass
class HopfPresentation:
    """Rank-p algebra R[x]/(P) with group law, counit x = 0, and antipode."""

    datum: CongruenceDatum
    algebra: object
    law: object  # element of R[x1, x2]
    antipode: object  # element of algebra
    verdicts: list = field(default_factory=list)

    @property
    def prime(self):
        return self.datum.prime

    @property
    def counit(self):
        return 0

    def tensor(self, k):
        """R[x1..xk]/(P(x1), ..., P(xk))."""
        D = self.datum
        names = [f"x{i}" for i in range(1, k + 1)]
        rels = []
        S = polynomial_ring(D.ring, names)
        for n in names:
            rels.append(Monic(n, substitute(isogeny_polynomial(D, "X"), {"X": S.gen(n)}, S)))
        return extend(D.ring, names, rels)

    def compose(self, f, g, target):
        """m(f, g) evaluated in target."""
        return substitute(self.law, {"x1": f, "x2": g}, target)

    def ambient_to_mu(self):
        """z = 1 + lambda x, the cogenerator toward mu_p."""
        x = self.algebra.gen("x")
        return 1 + self.algebra(self.datum.lam) * x

    def ambient_to_target(self):
        """The coordinate of G^(lambda^p) under phi, namely P(x)."""
        return isogeny_polynomial(self.datum, "x")

    def multiplicative_identification(self):
        """If lambda is a unit, return x = lambda^-1 (z - 1), identifying H with mu_p."""
        r = is_unit(self.datum.lam)
        if not r:
            return None
        Sz = polynomial_ring(self.datum.ring, ["z"])
        Rz = extend(self.datum.ring, ["z"], [Monic("z", Sz.gen("z") ** self.prime - 1)])
        return r.inverse * (Rz.gen("z") - 1)

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts)


def kernel_algebra(D, var="x"):
    S = polynomial_ring(D.ring, [var])
    return extend(D.ring, [var], [Monic(var, isogeny_polynomial(D, var, S))])


def kernel_hopf(D, check=True):
    """The congruence group scheme H = ker(phi) as a Hopf presentation.

    The antipode is -x (1 + lambda x)^(p-1) reduced modulo P; it is forced by
    x * i(x) = 0 and (1 + lambda x)^p = 1 in the kernel algebra.
    """
    p = D.prime
    A = kernel_algebra(D)
    x = A.gen("x")
    lam = A(D.lam)
    antipode = -x * (1 + lam * x) ** (p - 1)
    L = polynomial_ring(D.ring, ["x1", "x2"])
    law = group_law(L, D.lam, L.gen("x1"), L.gen("x2"))
    H = HopfPresentation(D, A, law, antipode)
    if check:
        H.verdicts = check_hopf(H)
        failed = [v for v in H.verdicts if not v.passed]
        if failed:
            raise InvariantViolation(f"Hopf identity fails: {failed[0].name}", failed[0].name)
    return H


def multiplication_by(H, m, target=None):
    """[m](x), the m-fold group-law iterate, reduced in the kernel algebra."""
    A = target or H.algebra
    x = A.gen("x")
    acc = A.zero()
    for _ in range(m):
        acc = H.compose(acc, x, A)
    return acc


def check_hopf(H):
    p = H.prime
    D = H.datum
    A = H.algebra
    x = A.gen("x")
    T2 = H.tensor(2)
    T3 = H.tensor(3)
    x1, x2, x3 = T3.gen("x1"), T3.gen("x2"), T3.gen("x3")
    m = lambda f, g, R: H.compose(f, g, R)  # noqa: E731
    P = lambda f, R: substitute(isogeny_polynomial(D, "X"), {"X": f}, R)  # noqa: E731
    out = []
    out.append(Verdict("coassociativity", m(m(x1, x2, T3), x3, T3) == m(x1, m(x2, x3, T3), T3)))
    out.append(Verdict("counit", m(x, A.zero(), A) == x and m(A.zero(), x, A) == x))
    out.append(Verdict("antipode", m(x, H.antipode, A).is_zero()))
    y1, y2 = T2.gen("x1"), T2.gen("x2")
    out.append(Verdict("commutativity", m(y1, y2, T2) == m(y2, y1, T2)))
    out.append(Verdict("law-preserves-kernel", P(m(y1, y2, T2), T2).is_zero()))
    out.append(Verdict("antipode-in-kernel", P(H.antipode, A).is_zero()))
    out.append(Verdict("order-p", multiplication_by(H, p).is_zero()))
    return out


@dataclass
class EmbeddingDiagram:
    """0 -> H -> G^(lambda) -> G^(lambda^p) -> 0 over 0 -> mu_p -> G_m -> G_m -> 0."""

    datum: CongruenceDatum
    kernel: HopfPresentation
    isogeny: object  # P(X) in R[X]
    vertical: tuple  # (1 + lambda x, 1 + lambda X, 1 + lambda^p X')
    verdicts: list

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts)


def embedding_diagram(D):
    p = D.prime
    H = kernel_hopf(D)
    ids = verify_identities(D)
    A = H.algebra
    x = A.gen("x")
    lam = A(D.lam)
    kappa = 1 + lam * x
    verdicts = [
        Verdict("right-square", ids.verdicts[0].passed, "(1+lambda*X)^p = 1+lambda^p*P(X)"),
        Verdict("phi-homomorphism", ids.verdicts[1].passed, "P(X+Y+lambda*X*Y) = P(X)+P(Y)+lambda^p*P(X)*P(Y)"),
        Verdict("kappa-in-mu_p", kappa ** p == 1, "(1+lambda*x)^p = 1 mod P"),
        Verdict("kappa-homomorphism", _kappa_is_hom(H), "(1+lambda*x1)(1+lambda*x2) = 1+lambda*m(x1,x2)"),
    ]
    R1 = polynomial_ring(D.ring, ["X"])
    vertical = (kappa, 1 + R1(D.lam) * R1.gen("X"), 1 + R1(D.lam) ** p * R1.gen("X"))
    return EmbeddingDiagram(D, H, isogeny_polynomial(D), vertical, verdicts)


def _kappa_is_hom(H):
    T = H.tensor(2)
    x1, x2 = T.gen("x1"), T.gen("x2")
    lam = T(H.datum.lam)
    return (1 + lam * x1) * (1 + lam * x2) == 1 + lam * H.compose(x1, x2, T)
