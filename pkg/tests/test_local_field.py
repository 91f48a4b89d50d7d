from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaplectic.forms import QuadForm
from metaplectic.local_field import (LocalUnit, Place, PlaceError, hilbert_symbol, primitive_root,
                                     real_signature, symbol_identity_suite, torus_cover)


def _primes_dividing(n):
    n, out, k = abs(n), set(), 2
    while k * k <= n:
        while n % k == 0:
            out.add(k)
            n //= k
        k += 1
    if n > 1:
        out.add(n)
    return out


def _squares(p):
    return {x * x % p for x in range(1, p)}


nonzero = st.integers(-60, 60).filter(bool)


@settings(max_examples=200, deadline=None)
@given(nonzero, nonzero)
def test_product_formula(a, b):
    places = [Place(None, 2)] + [Place(p, 2) for p in sorted(_primes_dividing(2 * a * b))]
    assert sum(hilbert_symbol(a, b, v) for v in places) % 2 == 0


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23])
def test_uniformizer_against_residues(p):
    sq = _squares(p)
    for u in range(1, p):
        assert hilbert_symbol(p, u, Place(p, 2)) == (0 if u in sq else 1)
        assert hilbert_symbol(u, u + p, Place(p, 2)) == 0


def test_two_adic_table():
    v = Place(2, 2)
    for a, b, want in ((-1, -1, 1), (2, 3, 1), (2, 5, 1), (2, 7, 0), (3, 3, 1), (5, 5, 0), (3, 5, 0),
                       (2, 2, 0), (-1, 2, 0)):
        assert hilbert_symbol(a, b, v) == want


def test_real_place():
    v = Place(None, 2)
    assert hilbert_symbol(-1, -1, v) == 1
    assert hilbert_symbol(-2, 3, v) == 0
    assert hilbert_symbol("-1/2", "-3/5", v) == 1


def test_quartic_symbol_generates():
    v = Place(5, 4)
    g = primitive_root(5)
    assert g == 2
    # (5, u) picks out the discrete log of u mod N, negated
    assert {hilbert_symbol(5, u, v) for u in range(1, 5)} == {0, 1, 2, 3}


@pytest.mark.parametrize("p,N", [(3, 2), (7, 2), (5, 4), (13, 4), (7, 3), (13, 3)])
def test_identity_suite(p, N):
    sample = [1, -1, 2, -2, 3, 5, p, Fraction(1, p), 6, 10]
    rep = symbol_identity_suite(Place(p, N), sample)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("p,N", [(None, 3), (2, 4), (7, 4), (9, 2)])
def test_unsupported_places(p, N):
    with pytest.raises(PlaceError):
        Place(p, N)


def test_parse_place():
    assert Place.parse("R", 2).is_real
    assert str(Place.parse("13", 4)) == "Q_13"
    with pytest.raises(PlaceError):
        Place.parse("x", 2)


def test_local_unit():
    u = LocalUnit.of("12/7")
    assert u.valuation(2) == 2 and u.valuation(7) == -1 and u.sign == 1
    with pytest.raises(ValueError):
        LocalUnit.of(0)


def test_torus_commutator_readings():
    tc = torus_cover(2, [[0, 1], [0, 0]], Place(13, 4))
    rep = tc.commutator_report([["2", "3"], ["13", "-1"], ["5", "13"]])
    assert rep["agrees_with"] == {"c_minus_ct": False, "c_plus_ct": True}
    assert tc.associativity_failures([["2", "3"], ["13", "5"]]) == []


def test_torus_symmetric_cocycle_mod_two_is_abelian():
    tc = torus_cover(2, [[0, 1], [1, 0]], Place(7, 2))
    pts = [["2", "3"], ["7", "-1"], ["14", "3"]]
    assert all(r["measured"] == 0 for r in tc.commutator_report(pts)["pairs"])


def test_torus_inverse():
    tc = torus_cover(1, [[1]], Place(5, 4))
    u = tc.element(["5"], 1)
    assert tc.multiply(u, tc.inverse(u)) == tc.element(["1"], 0)


def test_real_signature():
    sig = real_signature(QuadForm.from_list(2, 2, [1, 0, 1]), [1, 0])
    assert sig([1, 1]) == 1 and not sig.trivial
    with pytest.raises(ValueError):
        real_signature(QuadForm.from_list(1, 4, [1]), [0])
