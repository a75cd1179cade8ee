"""p-adic integers, Teichmueller lifts and the w constants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orderp.algebra import QQ, ZZ, Padic, Zmod
from orderp.errors import PrecisionError, UnsupportedRing
from orderp.padic import (
    DEFAULT_PRECISION,
    PRECISION_ENV,
    PAdicInt,
    default_precision,
    derive_w_constants,
    lambda_data,
    teichmuller,
)

from helpers import w_oracle


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_arithmetic_matches_integers(p, a, b):
    N = 12
    A, B = PAdicInt(p, N, a), PAdicInt(p, N, b)
    m = p ** N
    assert (A + B).residue == (a + b) % m
    assert (A - B).residue == (a - b) % m
    assert (A * B).residue == (a * b) % m


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 10 ** 6))
def test_inverse(p, a):
    if a % p == 0:
        a += 1
    A = PAdicInt(p, 15, a)
    assert A * A.inverse() == 1


def test_precision_tracking():
    a = PAdicInt(3, 10, 9)  # 3^2 * unit
    b = PAdicInt(3, 10, 6)
    q = a / PAdicInt(3, 10, 3)
    assert q == 3 and q.precision == 9
    assert (a * b).precision == 10
    with pytest.raises(PrecisionError):
        PAdicInt(3, 10, 1) / PAdicInt(3, 10, 9)


def test_fraction_entry_and_digits():
    x = PAdicInt(5, 6, Fraction(1, 2))
    assert (2 * x) == 1
    assert PAdicInt(3, 4, 10).digits() == [1, 0, 1, 0]
    with pytest.raises(PrecisionError):
        PAdicInt(3, 4, Fraction(1, 3))


def test_reconstruct():
    assert PAdicInt(3, 20, -3).reconstruct() == -3
    assert PAdicInt(5, 20, Fraction(2, 7)).reconstruct() == Fraction(2, 7)
    assert PAdicInt(5, 20, 5 ** 19 + 12345678).reconstruct() is None


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_teichmuller(p):
    N = 10
    for m in range(p):
        c = teichmuller(p, m, N)
        assert c.residue % p == m
        assert c ** p == c
    prod = teichmuller(p, 2 % p, N) * teichmuller(p, 3 % p, N)
    assert prod == teichmuller(p, 6 % p, N)


def test_w_constants_small_primes_exact():
    W2 = derive_w_constants(2, 20)
    W3 = derive_w_constants(3, 20)
    assert W2.exact == (1, 2)
    assert W3.exact == (1, -1, -3)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_w_constants_match_oracle(p):
    W = derive_w_constants(p, 20)
    assert list(W.residues()) == w_oracle(p, 20)


@pytest.mark.parametrize("p", [5, 7])
def test_w_constants_large_primes(p):
    W20 = derive_w_constants(p, 20)
    W40 = derive_w_constants(p, 40)
    assert W20.check() == []
    assert W40.check() == []
    assert all(a == b for a, b in zip(W20.values, W40.values))
    assert all(e is None for e in W40.exact[1:])  # not rational integers
    assert W40[1] == 1


def test_w_index_bounds():
    W = derive_w_constants(3, 10)
    with pytest.raises(IndexError):
        W[4]


def test_default_precision(monkeypatch):
    monkeypatch.delenv(PRECISION_ENV, raising=False)
    assert default_precision() == DEFAULT_PRECISION == 40
    monkeypatch.setenv(PRECISION_ENV, "17")
    assert default_precision() == 17
    monkeypatch.setenv(PRECISION_ENV, "x")
    with pytest.raises(ValueError):
        default_precision()


def test_lambda_data_domains():
    assert lambda_data(ZZ, 3).w == (1, -1, -3)
    assert lambda_data(QQ, 2).chi == (0, 1)
    L = lambda_data(Padic(5, 6), 5)
    assert L.w[0] == 1 and L.chi[1] == 1
    assert lambda_data(Zmod(9), 3).w == (1, 8, 6)
    with pytest.raises(UnsupportedRing):
        lambda_data(ZZ, 5)
    with pytest.raises(UnsupportedRing):
        lambda_data(Zmod(6), 3)
