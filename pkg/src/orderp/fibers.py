"""Generic and special fibers of order-p group data over a discrete valuation
ring: the multiplicative / etale / alpha_p trichotomy.

Labels are read off explicit algebra:

* Multiplicative: lambda is invertible (so 1 + lambda x identifies the kernel
  with mu_p), or on the Tate-Oort side b is invertible;
* Etale: the reduced kernel polynomial is separable, certified by a Bezout
  identity s P + t P' = 1 over the residue field;
* Alpha: the reduced kernel polynomial is X^p.
"""

from dataclasses import dataclass
import math

from .algebra import RingElement, is_unit
from .congruence import CongruenceDatum, isogeny_coefficients
from .errors import InvalidValuations, ZeroValuation
from .tate_oort import TateOortTriple

MULTIPLICATIVE = "Multiplicative"
ETALE = "Etale"
ALPHA = "Alpha"
TAGS = (MULTIPLICATIVE, ETALE, ALPHA)

GENERIC = "generic"
SPECIAL = "special"


# -- polynomials over F_p as coefficient lists, lowest degree first ---------


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _polymul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _polysub(f, g, p):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _trim([(a - b) % p for a, b in zip(f, g)])


def _polydivmod(f, g, p):
    f = _trim(f)
    g = _trim(g)
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 1)
    r = list(f)
    while len(r) >= len(g) and r:
        c = r[-1] * inv % p
        k = len(r) - len(g)
        q[k] = c
        r = _polysub(r, [0] * k + [c * b % p for b in g], p)
    return _trim(q), r


def poly_xgcd(f, g, p):
    """(d, s, t) with s f + t g = d monic, over F_p."""
    r0, r1 = _trim([c % p for c in f]), _trim([c % p for c in g])
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = _polydivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _polysub(s0, _polymul(q, s1, p), p)
        t0, t1 = t1, _polysub(t0, _polymul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    norm = lambda h: _trim([c * inv % p for c in h])  # noqa: E731
    return norm(r0), norm(s0), norm(t0)


def derivative(f, p):
    return _trim([i * c % p for i, c in enumerate(f)][1:])


def format_poly(f, var="X"):
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) or "0"


# -- fiber types -------------------------------------------------------------


@dataclass(frozen=True)
class SeparabilityCertificate:
    """s*P + t*P' = 1 over F_p (coefficient lists, lowest degree first)."""

    prime: int
    P: tuple
    s: tuple
    t: tuple

    def verify(self):
        p = self.prime
        sP = _polymul(list(self.s), list(self.P), p)
        tdP = _polymul(list(self.t), derivative(list(self.P), p), p)
        return _polysub(sP, [(-c) % p for c in tdP], p) == [1]


@dataclass(frozen=True)
class FiberType:
    tag: str
    witness: object
    detail: str = ""

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown fiber tag {self.tag!r}")


@dataclass(frozen=True)
class GenericInverse:
    """lambda^-1 in the fraction field, as num/den with lambda*num = den != 0."""

    num: object
    den: object

    def verify(self, lam):
        return not self.den.is_zero() and lam * self.num == self.den


def _val(dvr, e):
    try:
        return dvr.valuation(e)
    except ZeroValuation:
        return math.inf


def _generic_inverse(dvr, lam, p, mu):
    R = dvr.ring
    if dvr.kind == "mixed":
        return GenericInverse(lam ** (p - 2) * mu, R(p))
    k = int(_val(dvr, lam))
    s = R.variables[0]
    shifted = RingElement(R, {(m[0] - k,): c for m, c in lam._terms.items()})
    u = is_unit(shifted)
    return GenericInverse(u.inverse, R.gen(s) ** k)


def _generic_unit_witness(dvr, e):
    """A GenericInverse for a nonzero element of the DVR."""
    R = dvr.ring
    if dvr.kind == "equal":
        k = int(_val(dvr, e))
        shifted = RingElement(R, {(m[0] - k,): c for m, c in e._terms.items()})
        return GenericInverse(is_unit(shifted).inverse, R.gen(R.variables[0]) ** k)
    if R.variables:
        S = R.split()
        cp = S.charpoly(e)
        n = S.rank
        # Cayley-Hamilton: e * (e^(n-1) + c1 e^(n-2) + ... + c_(n-1)) = -c_n
        acc = R.one()
        for k in range(1, n):
            acc = acc * e + S.embed(cp[k])
        return GenericInverse(-acc, S.embed(cp[n]))
    return GenericInverse(R.one(), e)


def reduced_isogeny(D, dvr):
    """Coefficients of P mod the maximal ideal, lowest degree first."""
    return _trim([dvr.residue(c).constant() for c in isogeny_coefficients(D)])


def _etale_certificate(Pbar, p):
    d, s, t = poly_xgcd(Pbar, derivative(Pbar, p), p)
    if d != [1]:
        return None
    return SeparabilityCertificate(p, tuple(Pbar), tuple(s), tuple(t))


def _classify_congruence(D, dvr, which):
    p = D.prime
    lam, mu = D.lam, D.mu
    if which == GENERIC:
        if not lam.is_zero():
            return FiberType(MULTIPLICATIVE, _generic_inverse(dvr, lam, p, mu), "lambda != 0")
        if not mu.is_zero():
            return FiberType(ETALE, _generic_unit_witness(dvr, mu), f"lambda = 0, P = X^{p} + mu*X")
        return FiberType(ALPHA, (0,) * p + (1,), f"P = X^{p}")
    lam_bar = dvr.residue(lam).constant()
    if lam_bar:
        return FiberType(MULTIPLICATIVE, dvr.is_unit(lam).inverse, f"lambda mod m = {lam_bar}")
    Pbar = reduced_isogeny(D, dvr)
    if dvr.residue(mu).constant():
        if dvr.prime != p:
            raise InvalidValuations(f"lambda vanishes mod {dvr.prime} although p = {p} is a unit")
        cert = _etale_certificate(Pbar, p)
        if cert is None or not cert.verify():
            raise InvalidValuations(f"{format_poly(Pbar)} is not separable")
        return FiberType(ETALE, cert, f"P mod m = {format_poly(Pbar)}")
    if Pbar != [0] * p + [1]:
        raise InvalidValuations(f"lambda and mu vanish but P mod m = {format_poly(Pbar)}")
    return FiberType(ALPHA, tuple(Pbar), f"P mod m = {format_poly(Pbar)}")


def _classify_triple(T, dvr, which):
    a, b = T.a, T.b
    if which == GENERIC:
        if not b.is_zero():
            return FiberType(MULTIPLICATIVE, _generic_unit_witness(dvr, b), "b != 0")
        if not a.is_zero():
            return FiberType(ETALE, _generic_unit_witness(dvr, a), "a != 0")
        return FiberType(ALPHA, (a, b), "a = b = 0")
    rb = dvr.is_unit(b)
    if rb:
        return FiberType(MULTIPLICATIVE, rb.inverse, "b is a unit")
    ra = dvr.is_unit(a)
    if ra:
        return FiberType(ETALE, ra.inverse, "a is a unit")
    if dvr.residue(a).constant() or dvr.residue(b).constant():
        raise InvalidValuations("neither a nor b is a unit, yet one does not vanish")
    return FiberType(ALPHA, (a, b), "a and b vanish mod m")


def classify_fiber(obj, dvr, which=SPECIAL):
    """Fiber type of a CongruenceDatum or TateOortTriple over ``dvr``."""
    if which not in (GENERIC, SPECIAL):
        raise ValueError(f"which must be {GENERIC!r} or {SPECIAL!r}")
    if obj.ring != dvr.ring:
        raise InvalidValuations("datum and DVR live on different rings")
    if isinstance(obj, CongruenceDatum):
        return _classify_congruence(obj, dvr, which)
    if isinstance(obj, TateOortTriple):
        return _classify_triple(obj, dvr, which)
    raise TypeError(f"cannot classify {type(obj).__name__}")


@dataclass(frozen=True)
class DegenerationReport:
    datum: CongruenceDatum
    generic: FiberType
    special: FiberType
    valuations: tuple  # (v(lambda), v(mu)) as Fractions or math.inf
    value_of_p: object
    special_polynomial: tuple  # P mod m, lowest degree first

    def describe(self):
        vl, vm = self.valuations
        return (
            f"generic {self.generic.tag}, special {self.special.tag}, "
            f"v(lambda) = {vl}, v(mu) = {vm}, v(p) = {self.value_of_p}, "
            f"P mod m = {format_poly(list(self.special_polynomial))}"
        )


def degeneration_report(D, dvr):
    p = D.prime
    vl, vm = _val(dvr, D.lam), _val(dvr, D.mu)
    vp = _val(dvr, D.ring(p))
    total = vl * (p - 1) + vm if vl != math.inf else math.inf
    if dvr.kind == "mixed":
        if total != vp:
            raise InvalidValuations(f"(p-1)v(lambda) + v(mu) = {total} differs from v(p) = {vp}")
    elif total != math.inf and total < _horizon(dvr):
        raise InvalidValuations(f"(p-1)v(lambda) + v(mu) = {total} but p = 0 in the residue field")
    gen = classify_fiber(D, dvr, GENERIC)
    spec = classify_fiber(D, dvr, SPECIAL)
    return DegenerationReport(D, gen, spec, (vl, vm), vp, tuple(reduced_isogeny(D, dvr)))


def _horizon(dvr):
    """K for F_p[s]/(s^K): valuations at or beyond K are indistinguishable from infinity."""
    R = dvr.ring
    return R.pure_power_degrees()[R.variables[0]]


def expected_tag(v_lambda, v_mu):
    """The special-fiber tag predicted from valuations alone."""
    if v_lambda == 0:
        return MULTIPLICATIVE
    if v_mu == 0:
        return ETALE
    return ALPHA
