from math import comb, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaplectic.abelian_core import FgAbelianGroup as F
from metaplectic.forms import (QuadForm, ValueGroupTooSmall, binomial_identity_check, diagram_failures,
                              quadratic_refinements, sigma2_homology, theta_skeleton)

vec2 = st.lists(st.integers(-5, 5), min_size=2, max_size=2)
coeffs3 = st.lists(st.integers(0, 11), min_size=3, max_size=3)


@given(coeffs3, vec2, vec2)
def test_polarization_matches_definition(c, x, y):
    Q = QuadForm.from_list(2, 12, c)
    s = [a + b for a, b in zip(x, y)]
    assert Q.polarize()(x, y) == (Q(s) - Q(x) - Q(y)) % 12


@given(coeffs3, vec2)
def test_quadratic_scaling(c, x):
    Q = QuadForm.from_list(2, 12, c)
    assert Q([3 * t for t in x]) == 9 * Q(x) % 12


@given(coeffs3, vec2, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_pullback_is_composition(c, x, g):
    Q = QuadForm.from_list(2, 12, c)
    M = [g[:2], g[2:]]
    gx = [sum(M[i][k] * x[k] for k in range(2)) for i in range(2)]
    assert Q.pullback(M)(x) == Q(gx)


def test_parse_forms_agree():
    a = QuadForm.parse("x^2 - xy + 3y^2", 2, 5)
    b = QuadForm.parse("[1, -1, 3]", 2, 5)
    assert a == b
    assert a([1, 1]) == 3
    assert str(QuadForm.from_list(1, 2, [1])) == "x^2 mod 2"


def test_swap_coinvariants_rank_two():
    untwisted = sigma2_homology(2, False)
    twisted = sigma2_homology(2, True)
    assert untwisted == (F.free(3), F(0, (2, 2)), F())
    assert twisted == (F(1, (2, 2)), F(), F(0, (2, 2)))


def test_theta_level_one_rank_three():
    t = theta_skeleton(3, 4, 1)
    assert t.agree
    assert (t.pi0, t.pi1, t.pi2) == (F(0, (4,) * comb(3, 2)), F(0, (4,) * 3), F())


def test_theta_level_two_rank_one():
    t = theta_skeleton(1, 6, 2)
    assert t.agree
    assert (t.pi0, t.pi1, t.pi2) == (F.cyclic(6), F(), F.cyclic(6))


def test_refinements_of_minus_one_in_mu4():
    # mu_4 written additively: -1 is 2, so Q(g) must be a square root of -1, i.e. 1 or 3
    qs = quadratic_refinements((2,), [[2]], 4)
    assert sorted(q((1,)) for q in qs) == [1, 3]


def test_canonical_refinement_flagged():
    # the pairing 2b' vanishes; refinements are homomorphisms Z/2 -> Z/4; b'(g, g) = 2 is canonical
    qs = quadratic_refinements((2,), [[0]], 4, half=[[2]])
    assert sorted(q((1,)) for q in qs) == [0, 2]
    assert [q((1,)) for q in qs if q.canonical] == [2]


def test_trivial_group_has_one_refinement():
    assert len(quadratic_refinements((), [], 5)) == 1


def test_too_small_value_group():
    # b(g, g) = 1 in Z/2 needs Q(2g) - 2Q(g) = 1 with 2g = 0, impossible mod 2
    with pytest.raises(ValueGroupTooSmall):
        quadratic_refinements((2,), [[1]], 2)
    assert quadratic_refinements((2,), [[1]], 2, allow_empty=True) == []


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2,), (4,), (2, 2), (2, 4), (3,)]), st.sampled_from([4, 8, 12]), st.data())
def test_refinement_count_is_zero_or_hom(orders, M, data):
    k = len(orders)
    b = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            step = M // gcd(M, orders[i], orders[j])
            b[i][j] = b[j][i] = data.draw(st.integers(0, M - 1)) // step * step if step else 0
    qs = quadratic_refinements(orders, b, M, allow_empty=True)
    hom = 1
    for d in orders:
        hom *= gcd(d, M)
    assert len(qs) in (0, hom)
    assert all(not q.polarization_failures() for q in qs)


def test_binomial_identity():
    q = [q for q in quadratic_refinements((2,), [[2]], 4) if q((1,)) == 1][0]
    assert binomial_identity_check(q, (1,), 2)
    assert not binomial_identity_check(q, (1,), 2, pairing=[[0]])
    with pytest.raises(ValueError):
        binomial_identity_check(q, (1,), 3)


def test_degree_two_diagram_is_exact():
    for r in (1, 2, 3):
        assert diagram_failures(r) == []
