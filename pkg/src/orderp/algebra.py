"""Exact arithmetic in presented commutative rings.

A ring is a coefficient domain (Z, Q, Z/n, or Z/p^N standing in for Z_p)
together with an ordered list of variables and a set of rewrite rules
``monomial -> polynomial``.  Rules must strictly decrease the monomial order
(lex, later variables more significant) and must be locally confluent; both
facts are checked when the ring is built.  Elements are always stored in
normal form, so equality of elements is equality of dictionaries.
"""

from dataclasses import dataclass
from fractions import Fraction
import heapq
import math

from .errors import (
    CoefficientError,
    NonConfluentPresentation,
    NonTerminatingPresentation,
    NotInvertible,
    PresentationError,
    Undecidable,
    UnknownVariable,
    ZeroValuation,
)
from . import matrices


def _vp(n, p):
    """p-adic valuation of a nonzero integer."""
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_power(n):
    """Return (p, k) if n = p^k with k >= 1, else None."""
    for p in range(2, n + 1):
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


# ---------------------------------------------------------------------------
# Coefficient domains
# ---------------------------------------------------------------------------


class Domain:
    characteristic = 0
    is_field = False
    is_integral = True

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Domain) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def norm(self, c):
        return c

    def convert(self, c):
        raise NotImplementedError

    def is_unit(self, c):
        raise NotImplementedError

    def inverse(self, c):
        if not self.is_unit(c):
            raise NotInvertible(f"{c} is not a unit in {self}")
        return self._inverse(c)

    def signed(self, c):
        """Representative used for display."""
        return c


class IntegerDomain(Domain):
    def key(self):
        return ("Z",)

    def __repr__(self):
        return "Z"

    def convert(self, c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise CoefficientError(f"{c} is not an integer")
            return c.numerator
        if isinstance(c, int):
            return c
        raise CoefficientError(f"cannot read {c!r} as an integer")

    def is_unit(self, c):
        return c in (1, -1)

    def _inverse(self, c):
        return c


class RationalDomain(Domain):
    is_field = True

    def key(self):
        return ("Q",)

    def __repr__(self):
        return "Q"

    def norm(self, c):
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def convert(self, c):
        if isinstance(c, (int, Fraction)):
            return self.norm(c)
        raise CoefficientError(f"cannot read {c!r} as a rational")

    def is_unit(self, c):
        return c != 0

    def _inverse(self, c):
        return self.norm(Fraction(1) / c)


class ResidueDomain(Domain):
    """Z/nZ."""

    def __init__(self, modulus):
        if modulus < 1:
            raise PresentationError("modulus must be positive")
        self.modulus = modulus
        self.characteristic = modulus
        self.is_field = _is_prime(modulus)
        self.is_integral = self.is_field

    def key(self):
        return ("Zmod", self.modulus)

    def __repr__(self):
        return f"Z/{self.modulus}"

    def norm(self, c):
        return c % self.modulus

    def convert(self, c):
        n = self.modulus
        if isinstance(c, Fraction):
            if math.gcd(c.denominator, n) != 1:
                raise CoefficientError(f"denominator of {c} is not invertible mod {n}")
            return c.numerator * pow(c.denominator, -1, n) % n
        if isinstance(c, int):
            return c % n
        raise CoefficientError(f"cannot read {c!r} modulo {n}")

    def is_unit(self, c):
        return math.gcd(c, self.modulus) == 1

    def _inverse(self, c):
        return pow(c, -1, self.modulus)

    def signed(self, c):
        return c - self.modulus if 2 * c > self.modulus else c


class PAdicDomain(ResidueDomain):
    """Z_p at fixed absolute precision N, realized as Z/p^N."""

    def __init__(self, prime, precision):
        if not _is_prime(prime):
            raise PresentationError(f"{prime} is not prime")
        if precision < 1:
            raise PresentationError("precision must be at least 1")
        super().__init__(prime ** precision)
        self.prime = prime
        self.precision = precision

    def key(self):
        return ("padic", self.prime, self.precision)

    def __repr__(self):
        return f"Z_{self.prime}(prec {self.precision})"


ZZ = IntegerDomain()
QQ = RationalDomain()


def Zmod(n):
    return ResidueDomain(n)


def Padic(p, N):
    return PAdicDomain(p, N)


def residue_prime(domain):
    """The prime p when the domain is Z/p^k or Z_p, else None."""
    if isinstance(domain, PAdicDomain):
        return domain.prime
    if isinstance(domain, ResidueDomain):
        pk = _prime_power(domain.modulus)
        return pk[0] if pk else None
    return None


# ---------------------------------------------------------------------------
# Relations and rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monic:
    """Relation f(v) = 0 with f monic in ``variable``; f is an element of the
    polynomial ring being quotiented."""

    variable: str
    polynomial: "RingElement"


@dataclass(frozen=True)
class MonomialRewrite:
    """Relation ``monomial -> polynomial``; both are elements of the
    polynomial ring being quotiented, the first a bare monomial."""

    monomial: "RingElement"
    polynomial: "RingElement"


@dataclass(frozen=True)
class Rule:
    lhs: tuple
    rhs: tuple  # ((monomial, coeff), ...) sorted descending

    def support(self):
        return [i for i, e in enumerate(self.lhs) if e]


def _order_key(m):
    return m[::-1]


def _heap_key(m):
    return tuple(-e for e in reversed(m))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Presented rings
# ---------------------------------------------------------------------------


class PresentedRing:
    """Domain[variables]/(rules), optionally localized at a rational prime.

    Use the module-level constructors (:func:`integers`, :func:`polynomial_ring`,
    :func:`quotient`, ...) rather than calling this directly.
    """

    def __init__(self, domain, variables=(), rules=(), local_prime=None, check=True):
        self.domain = domain
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise PresentationError(f"duplicate variable names in {self.variables}")
        self.rules = tuple(rules)
        self.local_prime = local_prime
        self._index = {v: i for i, v in enumerate(self.variables)}
        self._zero_mono = (0,) * len(self.variables)
        self._supports = [r.support() for r in self.rules]
        if local_prime is not None and domain != QQ:
            raise PresentationError("localized rings carry rational coefficients")
        if check:
            self._check_termination()
            self._check_confluence()

    # -- identity --------------------------------------------------------

    def key(self):
        return (self.domain.key(), self.variables, self.rules, self.local_prime)

    def __eq__(self, other):
        return isinstance(other, PresentedRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        s = repr(self.domain)
        if self.variables:
            s += "[" + ",".join(self.variables) + "]"
        if self.rules:
            s += "/(" + ", ".join(self._rule_str(r) for r in self.rules) + ")"
        if self.local_prime is not None:
            s += f" localized at {self.local_prime}"
        return s

    def _rule_str(self, r):
        lhs = RingElement(self, {r.lhs: 1})
        rhs = RingElement(self, dict(r.rhs))
        return f"{lhs} -> {rhs}"

    # -- construction checks ----------------------------------------------

    def _check_termination(self):
        for r in self.rules:
            if r.lhs == self._zero_mono:
                raise NonTerminatingPresentation("a rule may not rewrite the constant monomial")
            for m, _ in r.rhs:
                if not _order_key(m) < _order_key(r.lhs):
                    raise NonTerminatingPresentation(
                        f"rule {self._rule_str(r)} does not decrease the monomial order"
                    )

    def _check_confluence(self):
        for i, ri in enumerate(self.rules):
            for rj in self.rules[i + 1:]:
                L = _lcm(ri.lhs, rj.lhs)
                left = self._reduce({_add(_sub(L, ri.lhs), m): c for m, c in ri.rhs})
                right = self._reduce({_add(_sub(L, rj.lhs), m): c for m, c in rj.rhs})
                if left != right:
                    raise NonConfluentPresentation(
                        f"critical pair of {self._rule_str(ri)} and {self._rule_str(rj)} "
                        f"does not resolve: {RingElement(self, left)} != {RingElement(self, right)}",
                        pair=(ri, rj),
                    )

    # -- normal forms -------------------------------------------------------

    def _find_rule(self, m):
        for r, sup in zip(self.rules, self._supports):
            lhs = r.lhs
            if all(m[i] >= lhs[i] for i in sup):
                return r
        return None

    def _reduce(self, terms):
        """Normal form of a raw {monomial: coeff} dict (coefficients in domain)."""
        dom = self.domain
        if not self.rules:
            out = {}
            for m, c in terms.items():
                c = dom.norm(c)
                if c:
                    out[m] = c
            return out
        work = {}
        heap = []
        for m, c in terms.items():
            c = dom.norm(c)
            if c:
                work[m] = c
                heap.append((_heap_key(m), m))
        heapq.heapify(heap)
        out = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = work.pop(m, None)
            if c is None:
                continue
            c = dom.norm(c)
            if not c:
                continue
            rule = self._find_rule(m)
            if rule is None:
                out[m] = c
                continue
            q = _sub(m, rule.lhs)
            for rm, rc in rule.rhs:
                n = _add(q, rm)
                if n in work:
                    work[n] = work[n] + c * rc
                else:
                    work[n] = c * rc
                    heapq.heappush(heap, (_heap_key(n), n))
        return out

    def _make(self, terms):
        return RingElement(self, self._reduce(terms))

    def normal_form(self, terms):
        """Normal form of a raw polynomial given as {exponents: coeff}.

        Exponents are tuples aligned with ``variables`` or dicts by name."""
        raw = {}
        for m, c in terms.items():
            mono = self._mono(m)
            raw[mono] = raw.get(mono, 0) + self.domain.convert(c)
        return self._make(raw)

    def _mono(self, m):
        if isinstance(m, dict):
            out = [0] * len(self.variables)
            for v, e in m.items():
                if v not in self._index:
                    if e:
                        raise UnknownVariable(f"{v} is not a variable of {self}")
                    continue
                out[self._index[v]] = e
            return tuple(out)
        m = tuple(m)
        if len(m) != len(self.variables):
            raise UnknownVariable("exponent vector has the wrong length")
        return m

    # -- element construction -----------------------------------------------

    def __call__(self, x):
        if isinstance(x, RingElement):
            if x.ring is self or x.ring == self:
                return RingElement(self, x._terms) if x.ring is not self else x
            return self._coerce(x)
        if isinstance(x, str):
            return self.gen(x)
        if isinstance(x, (int, Fraction)):
            c = self.domain.convert(x)
            self._check_local(c)
            return self._make({self._zero_mono: c})
        if isinstance(x, dict):
            return self.normal_form(x)
        raise CoefficientError(f"cannot coerce {x!r} into {self}")

    def _check_local(self, c):
        p = self.local_prime
        if p is not None and isinstance(c, Fraction) and c.denominator % p == 0:
            raise CoefficientError(f"{c} is not {p}-integral")

    def _coerce(self, x):
        """Map an element of another ring by variable names."""
        raw = {}
        src = x.ring.variables
        for m, c in x._terms.items():
            mono = [0] * len(self.variables)
            for i, e in enumerate(m):
                if e:
                    j = self._index.get(src[i])
                    if j is None:
                        raise UnknownVariable(f"{src[i]} is not a variable of {self}")
                    mono[j] = e
            c = self.domain.convert(c)
            self._check_local(c)
            mono = tuple(mono)
            raw[mono] = raw.get(mono, 0) + c
        return self._make(raw)

    def gen(self, name):
        if name not in self._index:
            raise UnknownVariable(f"{name} is not a variable of {self}")
        m = [0] * len(self.variables)
        m[self._index[name]] = 1
        return self._make({tuple(m): 1})

    @property
    def gens(self):
        return tuple(self.gen(v) for v in self.variables)

    def zero(self):
        return RingElement(self, {})

    def one(self):
        return self(1)

    def index(self, name):
        return self._index[name]

    # -- structure ----------------------------------------------------------

    def pure_power_degrees(self):
        """{variable: d} for variables having a rule with lhs exactly v^d."""
        out = {}
        for r in self.rules:
            sup = [i for i, e in enumerate(r.lhs) if e]
            if len(sup) == 1:
                v = self.variables[sup[0]]
                d = r.lhs[sup[0]]
                out[v] = min(d, out.get(v, d))
        return out

    def split(self, new_vars=None):
        """View the ring as a free module over the subring on the remaining
        variables, with basis the standard monomials in ``new_vars``.

        Returns a :class:`FreeStructure` or None when the ring is not free of
        finite rank over that subring in this way."""
        if new_vars is None:
            candidates = list(self.pure_power_degrees())
            s = self._try_split(candidates)
            if s is None and candidates:
                s = self._try_split([candidates[-1]])
            return s
        return self._try_split(list(new_vars))

    def _try_split(self, new_vars):
        if not new_vars:
            return None
        if any(v not in self._index for v in new_vars):
            raise UnknownVariable(f"{new_vars} not all variables of {self}")
        new_idx = sorted(self._index[v] for v in new_vars)
        new_set = set(new_idx)
        degrees = self.pure_power_degrees()
        if any(v not in degrees for v in new_vars):
            return None
        base_rules = []
        for r in self.rules:
            sup = set(i for i, e in enumerate(r.lhs) if e)
            if sup & new_set:
                if not sup <= new_set:
                    return None
            else:
                for m, _ in r.rhs:
                    if any(m[i] for i in new_idx):
                        return None
                base_rules.append(r)
        old_idx = [i for i in range(len(self.variables)) if i not in new_set]
        base = PresentedRing(
            self.domain,
            [self.variables[i] for i in old_idx],
            [
                Rule(
                    tuple(r.lhs[i] for i in old_idx),
                    tuple((tuple(m[i] for i in old_idx), c) for m, c in r.rhs),
                )
                for r in base_rules
            ],
            local_prime=self.local_prime,
            check=False,
        )
        # enumerate standard monomials in the new variables
        new_rules = [r for r in self.rules if r not in base_rules]
        bounds = [degrees[self.variables[i]] for i in new_idx]
        basis = []

        def rec(k, cur):
            if k == len(new_idx):
                full = [0] * len(self.variables)
                for i, e in zip(new_idx, cur):
                    full[i] = e
                full = tuple(full)
                if not any(_divides(r.lhs, full) for r in new_rules):
                    basis.append(full)
                return
            for e in range(bounds[k]):
                rec(k + 1, cur + [e])

        rec(0, [])
        basis.sort(key=_order_key)
        return FreeStructure(self, base, tuple(new_idx), tuple(old_idx), tuple(basis))

    def is_polynomial_ring(self):
        return not self.rules


class FreeStructure:
    """A ring viewed as a free module of finite rank over a subring."""

    def __init__(self, ring, base, new_idx, old_idx, basis):
        self.ring = ring
        self.base = base
        self.new_idx = new_idx
        self.old_idx = old_idx
        self.basis_monomials = basis
        self._pos = {m: k for k, m in enumerate(basis)}

    @property
    def rank(self):
        return len(self.basis_monomials)

    @property
    def new_variables(self):
        return tuple(self.ring.variables[i] for i in self.new_idx)

    def basis(self):
        return [RingElement(self.ring, {m: 1}) for m in self.basis_monomials]

    def coordinates(self, e):
        coords = [dict() for _ in self.basis_monomials]
        for m, c in e._terms.items():
            new = [0] * len(self.ring.variables)
            for i in self.new_idx:
                new[i] = m[i]
            k = self._pos[tuple(new)]
            coords[k][tuple(m[i] for i in self.old_idx)] = c
        return [RingElement(self.base, d) for d in coords]

    def from_coordinates(self, coords):
        raw = {}
        for b, a in zip(self.basis_monomials, coords):
            a = self.base(a)
            for m, c in a._terms.items():
                full = list(b)
                for i, e in zip(self.old_idx, m):
                    full[i] += e
                full = tuple(full)
                raw[full] = raw.get(full, 0) + c
        return self.ring._make(raw)

    def embed(self, a):
        """Map a base element into the ring."""
        return self.ring(a)

    def multiplication_matrix(self, e):
        """Matrix of multiplication by e: column j holds coordinates of e*basis_j."""
        cols = [self.coordinates(e * b) for b in self.basis()]
        n = self.rank
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self, e):
        return matrices.det(self.multiplication_matrix(e), self.base.zero(), self.base.one())

    def charpoly(self, e):
        """Coefficients [1, c_1, ..., c_n] of det(T - M_e)."""
        return matrices.charpoly(self.multiplication_matrix(e), self.base.zero(), self.base.one())


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class RingElement:
    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- basic protocol -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.ring(other)
            except CoefficientError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            if embeds(other.ring, self.ring):
                return self.ring(other)
            raise CoefficientError(f"elements of {self.ring} and {other.ring} do not mix")
        return self.ring(other)

    def _promote(self, other):
        """(self, other) moved into a common ring of a tower."""
        if isinstance(other, RingElement) and other.ring != self.ring:
            if embeds(self.ring, other.ring) and not embeds(other.ring, self.ring):
                return other.ring(self), other
        return self, self._other(other)

    def __add__(self, other):
        self, other = self._promote(other)
        t = dict(self._terms)
        dom = self.ring.domain
        for m, c in other._terms.items():
            s = dom.norm(t.get(m, 0) + c)
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return RingElement(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        dom = self.ring.domain
        return RingElement(self.ring, {m: dom.norm(-c) for m, c in self._terms.items()})

    def __sub__(self, other):
        self, other = self._promote(other)
        return self + (-other)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        self, other = self._promote(other)
        raw = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _add(m1, m2)
                raw[m] = raw.get(m, 0) + c1 * c2
        return self.ring._make(raw)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self):
        return format_element(self)

    __str__ = __repr__

    # -- inspection -------------------------------------------------------

    def terms(self):
        """Sorted list of (exponent tuple, coefficient), leading term first."""
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def coefficient(self, mono):
        return self._terms.get(self.ring._mono(mono), 0)

    def is_constant(self):
        return all(m == self.ring._zero_mono for m in self._terms)

    def constant(self):
        return self._terms.get(self.ring._zero_mono, 0)

    def degree(self, var):
        i = self.ring.index(var)
        return max((m[i] for m in self._terms), default=-1)

    def variables_used(self):
        used = set()
        for m in self._terms:
            used.update(self.ring.variables[i] for i, e in enumerate(m) if e)
        return tuple(v for v in self.ring.variables if v in used)

    def num_terms(self):
        return len(self._terms)

    def subs(self, assignment, target=None):
        return substitute(self, assignment, target)

    def map_coefficients(self, f, ring=None):
        ring = ring or self.ring
        raw = {}
        for m, c in self._terms.items():
            raw[m] = raw.get(m, 0) + f(c)
        return ring._make(raw)


_EMBEDS = {}


def embeds(small, big):
    """True when mapping variables by name is a ring map small -> big."""
    key = (small, big)
    if key in _EMBEDS:
        return _EMBEDS[key]
    ok = (
        small.domain == big.domain
        and small.local_prime == big.local_prime
        and set(small.variables) <= set(big.variables)
    )
    if ok:
        big_rules = set(big.rules)
        for r in small.rules:
            lhs = big._mono(dict(zip(small.variables, r.lhs)))
            rhs = _sorted_terms(
                {big._mono(dict(zip(small.variables, m))): c for m, c in r.rhs}
            )
            if Rule(lhs, rhs) not in big_rules:
                ok = False
                break
    _EMBEDS[key] = ok
    return ok


def format_element(e):
    if not e._terms:
        return "0"
    dom = e.ring.domain
    parts = []
    for m, c in e.terms():
        c = dom.signed(c)
        mono = "*".join(
            (v if k == 1 else f"{v}^{k}") for v, k in zip(e.ring.variables, m) if k
        )
        neg = c < 0
        a = -c if neg else c
        if mono:
            s = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        else:
            s = _fmt_coeff(a)
        parts.append(("- " if neg else "+ ") + s)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _fmt_coeff(a):
    if isinstance(a, Fraction):
        return f"({a.numerator}/{a.denominator})"
    return str(a)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def integers():
    return PresentedRing(ZZ)


def rationals():
    return PresentedRing(QQ)


def integers_mod(n):
    return PresentedRing(Zmod(n))


def padic_ring(p, N):
    return PresentedRing(Padic(p, N))


def polynomial_ring(base, names):
    names = tuple(names)
    k = len(names)
    rules = [
        Rule(r.lhs + (0,) * k, tuple((m + (0,) * k, c) for m, c in r.rhs)) for r in base.rules
    ]
    return PresentedRing(
        base.domain, base.variables + names, rules, local_prime=base.local_prime, check=False
    )


def quotient(base, relations):
    rules = list(base.rules)
    for rel in relations:
        rules.append(_relation_rule(base, rel))
    return PresentedRing(base.domain, base.variables, rules, local_prime=base.local_prime)


def extend(base, names, relations=()):
    """base[names]/(relations); relations may use base variables and names."""
    S = polynomial_ring(base, names)
    rels = [_lift_relation(S, r) for r in relations]
    return quotient(S, rels) if rels else S


def _lift_relation(S, rel):
    if isinstance(rel, Monic):
        return Monic(rel.variable, S(rel.polynomial))
    if isinstance(rel, MonomialRewrite):
        return MonomialRewrite(S(rel.monomial), S(rel.polynomial))
    raise PresentationError(f"unknown relation {rel!r}")


def _relation_rule(R, rel):
    dom = R.domain
    if isinstance(rel, Monic):
        f = R(rel.polynomial)
        i = R.index(rel.variable)
        d = f.degree(rel.variable)
        if d <= 0:
            raise PresentationError(f"monic relation in {rel.variable} has degree {d}")
        lead = [(m, c) for m, c in f._terms.items() if m[i] == d]
        lhs = tuple(d if j == i else 0 for j in range(len(R.variables)))
        if len(lead) != 1 or lead[0][0] != lhs or lead[0][1] != 1:
            raise PresentationError(f"relation {f} is not monic in {rel.variable}")
        rhs = {m: dom.norm(-c) for m, c in f._terms.items() if m != lhs}
        return Rule(lhs, _sorted_terms(rhs))
    if isinstance(rel, MonomialRewrite):
        mono = R(rel.monomial)
        items = list(mono._terms.items())
        if len(items) != 1 or items[0][1] != 1:
            raise PresentationError(f"{mono} is not a monomial")
        rhs = R(rel.polynomial)
        return Rule(items[0][0], _sorted_terms(rhs._terms))
    raise PresentationError(f"unknown relation {rel!r}")


def _sorted_terms(terms):
    return tuple(sorted(terms.items(), key=lambda t: _order_key(t[0]), reverse=True))


def localization(base, p):
    """Localize a ring presented over Z at the rational prime p.

    The presentation is assumed to be the maximal order near p with a single
    prime above p, so that p-integral coordinates describe the local ring."""
    if base.domain not in (ZZ, QQ):
        raise PresentationError("localization needs a presentation over Z")
    if not _is_prime(p):
        raise PresentationError(f"{p} is not prime")
    return PresentedRing(QQ, base.variables, base.rules, local_prime=p)


def change_domain(R, domain):
    """Same presentation over another coefficient domain."""
    rules = [
        Rule(r.lhs, _sorted_terms({m: domain.convert(c) for m, c in r.rhs if domain.convert(c)}))
        for r in R.rules
    ]
    return PresentedRing(domain, R.variables, rules)


def normal_form(e, R):
    """Normal form of ``e`` in R; e may be an element of another ring (mapped
    by variable names) or a raw {exponents: coeff} dict."""
    return R(e)


def substitute(f, assignment, target=None):
    """Evaluate f with variables replaced by elements of ``target``.

    Variables missing from ``assignment`` go to the same-named variable of the
    target ring; if there is none, UnknownVariable is raised."""
    src = f.ring
    if target is None:
        vals = [v for v in assignment.values() if isinstance(v, RingElement)]
        target = vals[0].ring if vals else src
    for name in assignment:
        if name not in src._index:
            raise UnknownVariable(f"{name} is not a variable of {src}")
    images = []
    for v in src.variables:
        if v in assignment:
            images.append(target(assignment[v]))
        elif v in target._index:
            images.append(target.gen(v))
        else:
            images.append(None)
    powers = [dict() for _ in images]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = images[i] ** e
        return cache[e]

    acc = target.zero()
    for m, c in f._terms.items():
        term = target(c)
        for i, e in enumerate(m):
            if e:
                if images[i] is None:
                    raise UnknownVariable(f"no image for {src.variables[i]}")
                term = term * power(i, e)
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# Units
# ---------------------------------------------------------------------------


class UnitResult:
    """Verdict of :func:`is_unit`; truthy iff a unit, with the inverse as witness."""

    __slots__ = ("unit", "inverse")

    def __init__(self, unit, inverse=None):
        self.unit = unit
        self.inverse = inverse

    def __bool__(self):
        return self.unit

    def __repr__(self):
        return f"UnitResult({self.unit}, {self.inverse})"


def is_unit(e):
    R = e.ring
    if e.is_zero():
        return UnitResult(False)
    if e.is_constant():
        c = e.constant()
        if R.local_prime is not None:
            c = Fraction(c)
            p = R.local_prime
            if c.numerator % p == 0:
                return UnitResult(False)
            return UnitResult(True, R(1 / c))
        if R.domain.is_unit(c):
            return UnitResult(True, R(R.domain.inverse(c)))
        return UnitResult(False)
    S = R.split()
    if S is not None:
        return _unit_via_norm(e, S)
    if R.is_polynomial_ring():
        return _unit_in_polynomial_ring(e)
    raise Undecidable(f"unit test not implemented for {R}")


def _unit_via_norm(e, S):
    R = e.ring
    cp = S.charpoly(e)
    n = S.rank
    cn = cp[n]  # (-1)^n Norm
    verdict = is_unit(cn)
    if not verdict:
        return UnitResult(False)
    # Cayley-Hamilton: e^n + c1 e^(n-1) + ... + cn = 0
    acc = R.one()
    for k in range(1, n):
        acc = acc * e + S.embed(cp[k])
    inv = -acc * S.embed(verdict.inverse)
    if e * inv != 1:
        raise Undecidable("Cayley-Hamilton inverse failed verification")
    return UnitResult(True, inv)


def _unit_in_polynomial_ring(e):
    R = e.ring
    dom = R.domain
    if dom.is_integral:
        return UnitResult(False)
    p = residue_prime(dom)
    if p is None:
        raise Undecidable(f"unit test over {dom} not implemented")
    c = e.constant()
    if c % p == 0 or any(m != R._zero_mono and coef % p for m, coef in e._terms.items()):
        return UnitResult(False)
    c0 = dom.inverse(c)
    nil = e * c0 - 1
    inv = R.one()
    term = R.one()
    while True:
        term = term * (-nil)
        if term.is_zero():
            break
        inv = inv + term
    return UnitResult(True, inv * c0)


def inverse(e):
    r = is_unit(e)
    if not r:
        raise NotInvertible(f"{e} is not a unit in {e.ring}")
    return r.inverse


def divide_exact(a, b):
    """The unique q with b*q = a.

    Over Z or Q (including localizations) this solves the linear system of
    multiplication by b on a free basis; elsewhere b must be a unit."""
    R = a.ring
    b = R(b)
    if b.is_zero():
        raise NotInvertible("division by zero")
    if R.domain in (ZZ, QQ):
        if b.is_constant():
            c = Fraction(b.constant())
            return _rational_terms(R, {m: v / c for m, v in a._terms.items()})
        S = R.split()
        if S is not None and not S.base.variables:
            M = [[Fraction(x.constant()) for x in row] for row in S.multiplication_matrix(b)]
            rhs = [Fraction(x.constant()) for x in S.coordinates(a)]
            sol = matrices.solve_rational(M, rhs)
            if sol is None:
                raise NotInvertible(f"{b} is a zero divisor in {R}")
            return S.from_coordinates([_rational_terms(S.base, {S.base._zero_mono: c}) for c in sol])
        raise Undecidable(f"exact division not implemented in {R}")
    r = is_unit(b)
    if r:
        return a * r.inverse
    raise Undecidable(f"exact division by the non-unit {b} not implemented in {R}")


def _rational_terms(R, raw):
    """Element of R from rational coefficients; fails unless they fit the ring."""
    out = R.zero()
    for m, c in raw.items():
        c = Fraction(c)
        if R.domain == ZZ and c.denominator != 1:
            raise NotInvertible(f"quotient has non-integral coefficient {c}")
        R._check_local(c)
        out = out + RingElement(R, {m: R.domain.norm(c)}) if c else out
    return out


# ---------------------------------------------------------------------------
# Discrete valuation rings
# ---------------------------------------------------------------------------


class DVRSpec:
    """A discrete valuation ring presented exactly.

    Two flavours are supported: a localization (mixed characteristic) of a
    free Z-order with one prime above p, where valuations come from norms to
    Q; and a truncated power series ring F_p[s]/(s^K) (equal characteristic),
    where the valuation is the order in s and v(p) is infinite.  The
    residue map is a substitution sending every variable to an element of F_p.
    """

    def __init__(self, ring, uniformizer, residue):
        self.ring = ring
        self.uniformizer = ring(uniformizer)
        self.residue_assignment = {v: int(c) for v, c in dict(residue).items()}
        if ring.local_prime is not None:
            self.kind = "mixed"
            self.prime = ring.local_prime
            self._split = ring.split() if ring.variables else None
            if ring.variables and (self._split is None or self._split.base.variables):
                raise PresentationError(f"{ring} is not finite free over Z_(p)")
        else:
            p = ring.domain.characteristic
            if not _is_prime(p):
                raise PresentationError("equal characteristic DVRs live over F_p")
            if len(ring.variables) != 1:
                raise PresentationError("truncated power series take exactly one variable")
            self.kind = "equal"
            self.prime = p
            if self.uniformizer != ring.gen(ring.variables[0]):
                raise PresentationError("the uniformizer of F_p[s]/(s^K) must be s")
        missing = [v for v in ring.variables if v not in self.residue_assignment]
        if missing:
            raise PresentationError(f"residue map misses {missing}")
        self.residue_field = integers_mod(self.prime)
        if self.kind == "mixed":
            self._pi_norm_val = self._vnorm(self.uniformizer)
            if self._pi_norm_val == 0:
                raise PresentationError(f"{uniformizer} is a unit")
        for r in ring.rules:
            lhs = self._residue_raw({r.lhs: 1})
            rhs = self._residue_raw(dict(r.rhs))
            if (lhs - rhs) % self.prime:
                raise PresentationError("residue map does not respect the relations")
        if self.residue(self.uniformizer) != 0:
            raise PresentationError("the residue map must kill the uniformizer")
        if self.valuation(self.uniformizer) != 1:
            raise PresentationError("uniformizer must have valuation 1")

    def key(self):
        return (
            self.ring.key(),
            frozenset(self.uniformizer._terms.items()),
            tuple(sorted(self.residue_assignment.items())),
        )

    def __eq__(self, other):
        return isinstance(other, DVRSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"DVR({self.ring}, uniformizer={self.uniformizer})"

    def _vnorm(self, e):
        if self._split is None:
            n = Fraction(e.constant())
        else:
            n = Fraction(self._split.norm(e).constant())
        if n == 0:
            raise ZeroValuation("zero has no valuation")
        p = self.prime
        return _vp(n.numerator, p) - _vp(n.denominator, p)

    def valuation(self, e):
        e = self.ring(e)
        if e.is_zero():
            raise ZeroValuation("zero has no valuation")
        if self.kind == "mixed":
            return Fraction(self._vnorm(e), self._pi_norm_val)
        return Fraction(min(m[0] for m in e._terms))

    def value_of_p(self):
        """v(p), or math.inf in equal characteristic."""
        if self.kind == "equal":
            return math.inf
        return self.valuation(self.ring(self.prime))

    def contains(self, e):
        if self.kind == "equal":
            return True
        p = self.prime
        return all(Fraction(c).denominator % p for c in e._terms.values())

    def is_unit(self, e):
        e = self.ring(e)
        if e.is_zero() or self.valuation(e) != 0:
            return UnitResult(False)
        return is_unit(e)

    def _residue_raw(self, terms):
        p = self.prime
        acc = 0
        for m, c in terms.items():
            c = Fraction(c)
            if c.denominator % p == 0:
                raise CoefficientError(f"{c} is not {p}-integral")
            val = c.numerator * pow(c.denominator, -1, p)
            for v, k in zip(self.ring.variables, m):
                val *= pow(self.residue_assignment[v], k, p)
            acc += val
        return acc % p

    def residue(self, e):
        e = self.ring(e)
        return self.residue_field(self._residue_raw(e._terms))
