"""Passing between congruence data (lambda, mu) and Tate-Oort data with a
cogenerator (a, v).

Given (lambda_0, mu_0), the kernel algebra R[x]/(P) carries the action of
F_p^* by [m](x).  The distinguished coordinate

    t = -sum_{m in F_p^*} chi(m)^(-1) [m](x)

satisfies t^p = w_(p-1) mu_0 t, and the group is G_(a, b) with
a = w_(p-1) mu_0 and cogenerator v = lambda_0.  Conversely x is recovered
from t by

    x = (t + lambda_0 t^2 / w_2 + ... + lambda_0^(p-2) t^(p-1) / w_(p-1)) / (1 - p).
"""

from dataclasses import dataclass, field

from .algebra import is_unit, polynomial_ring, substitute
from .congruence import (
    CongruenceDatum,
    Verdict,
    isogeny_polynomial,
    kernel_hopf,
    multiplication_by,
    universal_datum,
)
from .errors import NonUnitW, NotACogenerator, InvariantViolation, UnsupportedRing
from .padic import lambda_data
from .tate_oort import FROM, Section, TateOortTriple, group_algebra, is_cogenerator
from . import matrices


def multiplication_by_m(H, m):
    """[m](x) in the kernel algebra; [m] depends only on m mod p."""
    return multiplication_by(H, m % H.prime)


def _chi_inv_power(L, m, i):
    """chi(m)^(-i) as a domain constant, using multiplicativity of chi."""
    p = L.prime
    return L.chi[pow(m, -i % (p - 1), p)]


@dataclass
class EigenData:
    hopf: object
    index: int
    matrix: list  # p x p over the base ring, columns = images of x^j

    def apply(self, f):
        S = self.hopf.algebra.split(["x"])
        coords = S.coordinates(f)
        out = [sum((row[j] * coords[j] for j in range(len(coords))), S.base.zero()) for row in self.matrix]
        return S.from_coordinates(out)


def _inverse_constant(R, c, what):
    r = is_unit(R(c))
    if not r:
        raise NonUnitW(f"{what} is not a unit in {R}")
    return r.inverse


def eigenprojector(H, i):
    """e_i(f) = (1/(p-1)) sum_m chi(m)^(-i) f([m](x)) as a matrix on 1, x, ..., x^(p-1)."""
    p = H.prime
    R = H.datum.ring
    L = lambda_data(R.domain, p)
    inv = _inverse_constant(R, p - 1, "p-1")
    A = H.algebra
    S = A.split(["x"])
    actions = {m: multiplication_by_m(H, m) for m in range(1, p)}
    columns = []
    for j in range(p):
        acc = A.zero()
        for m in range(1, p):
            acc = acc + A(_chi_inv_power(L, m, i)) * actions[m] ** j
        columns.append(S.coordinates(acc * A(inv)))
    matrix = [[columns[j][r] for j in range(p)] for r in range(p)]
    return EigenData(H, i, matrix)


def distinguished_t(D, H=None):
    """t = (p-1) e_1(-x) = -sum_m chi(m)^(-1) [m](x), reduced in the kernel algebra."""
    p = D.prime
    L = lambda_data(D.ring.domain, p)
    H = H or kernel_hopf(D)
    A = H.algebra
    acc = A.zero()
    for m in range(1, p):
        acc = acc + A(_chi_inv_power(L, m, 1)) * multiplication_by_m(H, m)
    return -acc


def star_polynomial(R, p, lam0, var="t"):
    """x as a polynomial in t (identity star), in R[t]."""
    L = lambda_data(R.domain, p)
    Rt = polynomial_ring(R, [var])
    t = Rt.gen(var)
    lam0 = Rt(lam0)
    acc = Rt.zero()
    for k in range(1, p):
        wk = _inverse_constant(R, L.w_(k), f"w_{k}")
        acc = acc + Rt(wk) * lam0 ** (k - 1) * t ** k
    return Rt(_inverse_constant(R, 1 - p, "1-p")) * acc


@dataclass
class TranslationCertificate:
    datum: CongruenceDatum
    triple: TateOortTriple
    cogenerator: Section
    t: object  # in the kernel algebra
    x_of_t: object  # in R[t], or None when 1-p or some w_i is not invertible
    verdicts: list = field(default_factory=list)

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts)

    def forget(self):
        """The underlying Tate-Oort triple (a, v^(p-1))."""
        return self.triple


def tcg_to_tgc(D):
    p = D.prime
    R = D.ring
    L = lambda_data(R.domain, p)
    H = kernel_hopf(D)
    t = distinguished_t(D, H)
    A = H.algebra
    w_pm1 = R(L.w_(p - 1))
    a = w_pm1 * D.mu
    v = D.lam
    T = TateOortTriple(p, R, a, v ** (p - 1))
    cog = Section(T, FROM, v)
    verdicts = [
        Verdict("t^p = w_(p-1)*mu*t", t ** p == A(w_pm1 * D.mu) * t),
        Verdict("a*b = w_p", T.a * T.b == R(L.w_(p))),
        Verdict("v is a cogenerator", is_cogenerator(T, v)),
    ]
    try:
        x_of_t = star_polynomial(R, p, D.lam)
    except NonUnitW:
        x_of_t = None
    if x_of_t is not None:
        back = substitute(x_of_t, {"t": t}, A)
        verdicts.append(Verdict("star recovers x", back == A.gen("x")))
    cert = TranslationCertificate(D, T, cog, t, x_of_t, verdicts)
    failed = [v for v in verdicts if not v.passed]
    if failed:
        raise InvariantViolation(f"translation fails: {failed[0].name}", failed[0].name)
    return cert


@dataclass
class TGCResult:
    datum: CongruenceDatum
    x_of_t: object
    verdicts: list

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts)


def tgc_to_tcg(T, v):
    """Recover (lambda_0, mu_0) = (v, a / w_(p-1)) from a triple with cogenerator v."""
    p = T.prime
    R = T.ring
    v = v.value if isinstance(v, Section) else R(v)
    if not is_cogenerator(T, v):
        raise NotACogenerator(f"v^(p-1) = {v ** (p - 1)} differs from b = {T.b}")
    L = lambda_data(R.domain, p)
    w_inv = _inverse_constant(R, L.w_(p - 1), f"w_{p - 1}")
    D = CongruenceDatum(p, R, v, T.a * w_inv)
    x_of_t = star_polynomial(R, p, v)
    G = group_algebra(T, "t")
    x = substitute(x_of_t, {}, G)
    P = isogeny_polynomial(D, "X")
    verdicts = [Verdict("lambda^(p-1)*mu = p", D.lam ** (p - 1) * D.mu == R(p))]
    verdicts.append(Verdict("P(x(t)) = 0", substitute(P, {"X": x}, G).is_zero()))
    cert = tcg_to_tgc(D)
    verdicts.append(
        Verdict("round trip", cert.triple.a == T.a and cert.triple.b == T.b and cert.cogenerator.value == v)
    )
    verdicts.append(Verdict("t(x(t)) = t", substitute(cert.t, {"x": x}, G) == G.gen("t")))
    return TGCResult(D, x_of_t, verdicts)


def rescale_datum(D, alpha):
    """Coordinate change x' = alpha x: lambda' = alpha^-1 lambda, mu' = alpha^(p-1) mu."""
    R = D.ring
    r = is_unit(R(alpha))
    if not r:
        raise InvariantViolation(f"{alpha} is not a unit", "unit")
    p = D.prime
    return CongruenceDatum(p, R, r.inverse * D.lam, R(alpha) ** (p - 1) * D.mu)


def extract_w_pm1(p, N):
    """w_(p-1) read off t^p = c mu t in the universal kernel algebra over Z/p^N.

    Independent of the mu_p computation used to derive the w constants."""
    from .algebra import padic_ring

    D = universal_datum(p, padic_ring(p, N))
    H = kernel_hopf(D)
    A = H.algebra
    t = distinguished_t(D, H)
    tp = t ** p
    x_exp = {"x": 1}
    lead = t.coefficient(x_exp)
    dom = A.domain
    if not dom.is_unit(lead):
        raise UnsupportedRing("x coefficient of t is not a unit")
    c = tp.coefficient({"x": 1, "F": 1}) * dom.inverse(lead) % dom.modulus
    if tp != A(c) * A.gen("F") * t:
        raise InvariantViolation("t^p is not a multiple of mu*t", "t^p")
    return c


def projector_checks(H):
    """Idempotence, orthogonality, completeness and traces of e_1..e_(p-1)."""
    p = H.prime
    R = H.datum.ring
    es = [eigenprojector(H, i) for i in range(1, p)]
    zero, one = R.zero(), R.one()
    out = []
    mats = [e.matrix for e in es]
    idem = all(matrices.matmul(M, M, zero) == M for M in mats)
    ortho = all(
        matrices.matmul(mats[i], mats[j], zero) == [[zero] * p for _ in range(p)]
        for i in range(len(mats))
        for j in range(len(mats))
        if i != j
    )
    total = [[sum((M[r][c] for M in mats), zero) for c in range(p)] for r in range(p)]
    ident = [[one if r == c else zero for c in range(p)] for r in range(p)]
    # on the augmentation ideal (basis x, ..., x^(p-1)) each e_i has rank 1
    traces = [sum((M[r][r] for r in range(1, p)), zero) for M in mats]
    out.append(Verdict("idempotent", idem))
    out.append(Verdict("orthogonal", ortho))
    out.append(Verdict("complete", total == ident))
    out.append(Verdict("rank one on augmentation ideal", all(tr == one for tr in traces)))
    return out
