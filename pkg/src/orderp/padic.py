"""p-adic integers at finite precision, Teichmueller lifts, and the
Tate-Oort constants w_1, ..., w_p."""

from dataclasses import dataclass
from fractions import Fraction
import math
import os

from .algebra import (
    QQ,
    ZZ,
    Monic,
    PAdicDomain,
    ResidueDomain,
    _is_prime,
    extend,
    padic_ring,
    polynomial_ring,
    residue_prime,
    _prime_power,
)
from .errors import PrecisionError, PrecisionExhausted, UnsupportedRing

DEFAULT_PRECISION = 40
PRECISION_ENV = "ORDERP_PRECISION"


def default_precision():
    """Working p-adic precision, overridable through $ORDERP_PRECISION."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if n < 2:
        raise ValueError(f"{PRECISION_ENV} must be at least 2")
    return n


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PAdicInt:
    """An element of Z_p known modulo p^precision.

    Arithmetic keeps the largest precision that is actually justified by the
    operands, so results never claim digits they do not have.
    """

    __slots__ = ("prime", "precision", "residue")

    def __init__(self, prime, precision, residue):
        if precision < 0:
            raise PrecisionError("negative precision")
        self.prime = prime
        self.precision = precision
        if isinstance(residue, Fraction):
            if residue.denominator % prime == 0:
                raise PrecisionError(f"{residue} is not a {prime}-adic integer")
            residue = residue.numerator * pow(residue.denominator, -1, prime ** precision)
        self.residue = residue % (prime ** precision)

    @property
    def modulus(self):
        return self.prime ** self.precision

    def valuation(self):
        """v_p(x); equals the precision when x is indistinguishable from 0."""
        if self.residue == 0:
            return self.precision
        return _vp(self.residue, self.prime)

    def is_zero(self):
        return self.residue == 0

    def is_unit(self):
        return self.precision > 0 and self.residue % self.prime != 0

    def _coerce(self, other):
        if isinstance(other, PAdicInt):
            if other.prime != self.prime:
                raise PrecisionError("p-adic numbers for different primes")
            return other
        if isinstance(other, (int, Fraction)):
            # exact integers carry unlimited precision; cap at ours
            return PAdicInt(self.prime, self.precision, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.precision, other.precision)
        return PAdicInt(self.prime, n, self.residue + other.residue)

    __radd__ = __add__

    def __neg__(self):
        return PAdicInt(self.prime, self.precision, -self.residue)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.precision + other.valuation(), other.precision + self.valuation())
        n = min(n, max(self.precision, other.precision))
        return PAdicInt(self.prime, n, self.residue * other.residue)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = PAdicInt(self.prime, self.precision, 1)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self):
        if not self.is_unit():
            raise PrecisionError(f"{self} is not a unit")
        return PAdicInt(self.prime, self.precision, pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        other = self._coerce(other)
        v = other.valuation()
        if v == 0:
            return self * other.inverse()
        if v >= other.precision or self.valuation() < v:
            raise PrecisionError(f"cannot divide {self} by {other}")
        # exact division by p^v times a unit; v digits of precision are lost
        unit = PAdicInt(self.prime, other.precision - v, other.residue // self.prime ** v)
        top = PAdicInt(self.prime, self.precision - v, self.residue // self.prime ** v)
        return top * unit.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PAdicInt(self.prime, self.precision, other)
        if not isinstance(other, PAdicInt):
            return NotImplemented
        n = min(self.precision, other.precision)
        m = self.prime ** n
        return self.prime == other.prime and (self.residue - other.residue) % m == 0

    def __hash__(self):
        return hash((self.prime, self.precision, self.residue))

    def identical(self, other):
        """Equality including the recorded precision."""
        return (
            isinstance(other, PAdicInt)
            and (self.prime, self.precision, self.residue)
            == (other.prime, other.precision, other.residue)
        )

    def signed(self):
        r = self.residue
        return r - self.modulus if 2 * r > self.modulus else r

    def reconstruct(self):
        """Small rational with this expansion, or None.

        Rational reconstruction; the answer is accepted only when
        |numerator| * denominator <= p^(N/2)."""
        m = self.modulus
        bound = math.isqrt(m // 2)
        r0, r1 = m, self.residue
        s0, s1 = 0, 1
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        if s1 == 0 or abs(s1) > bound or math.gcd(abs(s1), self.prime) != 1:
            return None
        # every residue reconstructs near the bound; only trust small answers
        if abs(r1) * abs(s1) > self.prime ** (self.precision // 2):
            return None
        val = Fraction(r1, s1)
        return val.numerator if val.denominator == 1 else val

    def truncate(self, n):
        return PAdicInt(self.prime, min(n, self.precision), self.residue)

    def digits(self):
        out = []
        r = self.residue
        for _ in range(self.precision):
            r, d = divmod(r, self.prime)
            out.append(d)
        return out

    def __repr__(self):
        return f"PAdicInt({self.prime}, {self.precision}, {self.residue})"

    def __str__(self):
        return f"{self.residue} + O({self.prime}^{self.precision})"


def teichmuller(p, m, N):
    """The Teichmueller representative of m in Z_p, modulo p^N."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if N < 1:
        raise ValueError("precision must be positive")
    m %= p
    if m == 0:
        return PAdicInt(p, N, 0)
    # x -> x^p contracts onto the root of unity; N steps fix N digits
    return PAdicInt(p, N, pow(m, p ** (N - 1), p ** N))


@dataclass(frozen=True)
class WConstants:
    """w_1, ..., w_p at precision N.

    ``exact`` holds the small rational (usually an integer) recognised for
    each value, or None when the p-adic number is not recognisably rational.
    """

    prime: int
    precision: int
    values: tuple
    exact: tuple

    def __getitem__(self, i):
        """w_i, 1-based."""
        if not 1 <= i <= self.prime:
            raise IndexError(f"w_{i} undefined for p = {self.prime}")
        return self.values[i - 1]

    def residues(self):
        return tuple(w.residue for w in self.values)

    def check(self):
        p = self.prime
        problems = []
        if self[1] != 1:
            problems.append("w_1 != 1")
        if self[p] != p * self[p - 1]:
            problems.append("w_p != p*w_(p-1)")
        if self.precision < 2 or self[p].valuation() != 1:
            problems.append("w_p/p is not a unit")
        return problems


def derive_w_constants(p, N=None, max_precision=4096):
    """Compute the constants w_i from the algebra of mu_p.

    In Z_p[z]/(z^p - 1) put y_i = sum over m in F_p^* of chi(m)^(-i) (1 - z^m)
    and y = y_1.  Then y^i = w_i y_i for 1 <= i <= p-1 and y^p = w_p y; each
    w_i is read off the z coefficient and the full identity is verified.
    """
    if N is None:
        N = default_precision()
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = max(N, 2)
    while n <= max_precision:
        try:
            values = _w_at(p, n)
        except PrecisionExhausted:
            n *= 2
            continue
        values = tuple(w.truncate(N) for w in values) if N >= 2 else values
        exact = tuple(w.reconstruct() for w in values)
        W = WConstants(p, values[0].precision, values, exact)
        problems = W.check()
        if problems:
            raise PrecisionExhausted(f"w constants for p={p}: {', '.join(problems)}")
        return W
    raise PrecisionExhausted(f"could not certify w constants for p={p}")


def _w_at(p, N):
    R0 = padic_ring(p, N)
    S = polynomial_ring(R0, ["z"])
    A = extend(R0, ["z"], [Monic("z", S.gen("z") ** p - 1)])
    z = A.gen("z")
    chi_inv = {m: pow(teichmuller(p, m, N).residue, -1, p ** N) for m in range(1, p)}
    powers_of_z = [z ** m for m in range(p)]

    def y_(i):
        acc = A.zero()
        for m in range(1, p):
            acc = acc + A(pow(chi_inv[m], i, p ** N)) * (1 - powers_of_z[m])
        return acc

    y = y_(1)
    values = []
    yi_pow = A.one()
    for i in range(1, p + 1):
        yi_pow = yi_pow * y
        target = y if i == p else y_(i)
        w = _proportionality(yi_pow, target, p, N)
        values.append(PAdicInt(p, N, w))
    return values


def _proportionality(lhs, rhs, p, N):
    """The c with lhs = c*rhs, read off the z coefficient (a unit in rhs)."""
    z1 = (1,)
    d = rhs.coefficient(z1)
    if d % p == 0:
        raise PrecisionExhausted("z coefficient of the divisor is not a unit")
    c = lhs.coefficient(z1) * pow(d, -1, p ** N) % p ** N
    if lhs != rhs * c:
        raise PrecisionExhausted("coefficient vectors are not proportional")
    return c


# ---------------------------------------------------------------------------
# Lambda-algebra data of a coefficient domain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LambdaData:
    """Teichmueller values chi(0..p-1) and w_1..w_p as coefficients of a domain."""

    prime: int
    chi: tuple
    w: tuple  # w[0] = w_1

    def w_(self, i):
        return self.w[i - 1]


def lambda_data(domain, p):
    """Realize chi and the w_i inside a coefficient domain.

    F_p-algebras and Z/p^k (including fixed-precision Z_p) always work; Z and
    Q only for p in {2, 3}, where every Teichmueller value and every w_i is a
    rational integer."""
    if isinstance(domain, (ResidueDomain, PAdicDomain)):
        if residue_prime(domain) != p:
            raise UnsupportedRing(f"{domain} is not a Z/{p}^k-algebra")
        k = _prime_power(domain.modulus)[1]
        W = derive_w_constants(p, max(k, 2))
        mod = domain.modulus
        chi = tuple(teichmuller(p, m, max(k, 1)).residue % mod for m in range(p))
        return LambdaData(p, chi, tuple(x.residue % mod for x in W.values))
    if domain in (ZZ, QQ):
        if p not in (2, 3):
            raise UnsupportedRing(f"Teichmueller values for p={p} are not rational")
        W = derive_w_constants(p, 20)
        chi = (0, 1) if p == 2 else (0, 1, -1)
        if any(e is None or isinstance(e, Fraction) for e in W.exact):
            raise UnsupportedRing("w constants are not integers")
        return LambdaData(p, chi, tuple(W.exact))
    raise UnsupportedRing(f"no Teichmueller data over {domain}")
