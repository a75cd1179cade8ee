"""Congruence data, the isogeny P, its kernel as a Hopf algebra, and the
embedding into the Kummer sequence."""

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from orderp.algebra import integers, integers_mod, localization, polynomial_ring, substitute
from orderp.congruence import (
    CongruenceDatum,
    divided_binomial,
    embedding_diagram,
    isogeny_polynomial,
    kernel_hopf,
    multiplication_by,
    universal_datum,
    verify_identities,
    verify_universal_identities,
)
from orderp.errors import InvariantViolation

from helpers import random_datum, rng_for


def test_invariant_enforced():
    with pytest.raises(InvariantViolation):
        CongruenceDatum(3, integers(), 1, 1)
    # lambda = mu = 0 is allowed exactly when p = 0 in the ring
    CongruenceDatum(3, integers_mod(3), 0, 0)
    with pytest.raises(InvariantViolation):
        CongruenceDatum(3, integers(), 0, 0)


def test_divided_binomials():
    assert [divided_binomial(5, i) for i in range(1, 5)] == [1, 2, 2, 1]
    with pytest.raises(ValueError):
        divided_binomial(4, 2)


@pytest.mark.parametrize(
    "p, expected",
    [(2, "X^2 + F*X"), (3, "X^3 + E*F*X^2 + F*X"), (5, "X^5 + E^3*F*X^4 + 2*E^2*F*X^3 + 2*E*F*X^2 + F*X")],
)
def test_isogeny_polynomial_shapes(p, expected):
    P = isogeny_polynomial(universal_datum(p))
    assert str(P) == expected


def sympy_identities(p):
    """Both identities over Q(lambda) with mu = p / lambda^(p-1)."""
    lam, X, Y = sympy.symbols("lam X Y")
    mu = p / lam ** (p - 1)
    P = lambda t: t ** p + sum(sympy.binomial(p, i) / p * lam ** (i - 1) * mu * t ** i for i in range(1, p))  # noqa: E731
    one = sympy.simplify(1 + lam ** p * P(X) - (1 + lam * X) ** p) == 0
    two = sympy.expand(sympy.cancel(P(X + Y + lam * X * Y) - P(X) - P(Y) - lam ** p * P(X) * P(Y))) == 0
    return one, two


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_universal_identities(p):
    report = verify_universal_identities(p)
    assert report.passed, report.verdicts
    assert [v.name for v in report.verdicts] == ["identity-1", "identity-2"]
    assert all(n > 0 for n in report.term_counts.values())
    assert sympy_identities(p) == (True, True)


def test_identity_bound():
    with pytest.raises(ValueError):
        verify_universal_identities(17)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hopf_suite_universal(p):
    H = kernel_hopf(universal_datum(p))
    names = {v.name: v.passed for v in H.verdicts}
    for key in ["coassociativity", "counit", "antipode", "commutativity", "order-p"]:
        assert names[key], key
    assert H.passed


def test_antipode_closed_forms():
    H2 = kernel_hopf(universal_datum(2))
    x = H2.algebra.gen("x")
    assert H2.antipode == x
    assert H2.compose(x, x, H2.algebra) == 0  # x * x = (2 - lambda mu) x = 0
    H3 = kernel_hopf(universal_datum(3))
    x = H3.algebra.gen("x")
    lam = H3.algebra.gen("E")
    assert H3.antipode == 2 * x + lam * x ** 2


def test_multiplication_by_three():
    H = kernel_hopf(universal_datum(3))
    A = H.algebra
    x, lam = A.gen("x"), A.gen("E")
    assert multiplication_by(H, 1) == x
    assert multiplication_by(H, 2) == 2 * x + lam * x ** 2
    # [3](x) = 3x + 3 lam x^2 + lam^2 x^3 before reduction, zero after
    assert 3 * x + 3 * lam * x ** 2 + lam ** 2 * x ** 3 == 0
    assert multiplication_by(H, 3) == 0


def test_embedding_universal():
    for p in (2, 3):
        E = embedding_diagram(universal_datum(p))
        assert E.passed, E.verdicts
        kappa = E.vertical[0]
        assert kappa ** p == 1


def test_embedding_kummer_example():
    R = localization(integers(), 3)
    D = CongruenceDatum(3, R, 1, 3)
    E = embedding_diagram(D)
    assert E.passed
    S = polynomial_ring(R, ["X"])
    X = S.gen("X")
    assert E.isogeny == (1 + X) ** 3 - 1
    assert E.kernel.multiplicative_identification() is not None


def test_embedding_alpha_p():
    D = CongruenceDatum(3, integers_mod(3), 0, 0)
    E = embedding_diagram(D)
    assert E.passed
    X = E.isogeny.ring.gen("X")
    assert E.isogeny == X ** 3
    assert E.vertical[0] == 1
    assert E.kernel.multiplicative_identification() is None


@pytest.mark.parametrize("p", [2, 3, 5])
def test_random_data_satisfy_everything(p):
    rng = rng_for(f"cong-{p}")
    for _ in range(6):
        D = random_datum(p, rng)
        assert verify_identities(D).passed
        assert kernel_hopf(D).passed
        assert embedding_diagram(D).passed


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 4))
def test_multiplication_maps_compose(p, m, n):
    m, n = m % p or 1, n % p or 1
    H = kernel_hopf(universal_datum(p))
    A = H.algebra
    mn = substitute(multiplication_by(H, m), {"x": multiplication_by(H, n)}, A)
    assert mn == multiplication_by(H, m * n % p or p)
