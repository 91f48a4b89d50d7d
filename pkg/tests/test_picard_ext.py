from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaplectic.abelian_core import FgAbelianGroup as F
from metaplectic.picard_ext import (ExtCocycle, IncoherentData, PicardGroupoid, baer_sum, build_symmon_from_hom,
                                    check_coherence, heisenberg1, inv, inv_on_generators, isomorphism_witness,
                                    trivial_symmon, twist_graded_algebra, two_term, witness_is_isomorphism)


def test_groupoid_from_two_term_complex():
    P = PicardGroupoid(two_term([[2, 0], [0, 0]], 2, 2))
    assert P.pi0 == F(1, (2,))
    assert P.pi1 == F.free(1)
    assert P.isomorphic([0, 0], [2, 0])
    assert not P.isomorphic([0, 0], [1, 0])


def test_groupoid_rejects_wide_complex():
    from metaplectic.abelian_core import ChainComplex
    with pytest.raises(ValueError):
        PicardGroupoid(ChainComplex(-2, 0, {-2: 1, -1: 1, 0: 1}, {-2: [[0]], -1: [[0]]}))


vec = st.lists(st.integers(-4, 4), min_size=2, max_size=2)


@given(vec, vec, vec)
def test_heisenberg_is_associative(x, y, z):
    H = heisenberg1(2)
    s0 = (0, 0, 0)
    u, v, w = (s0, tuple(x)), (s0, tuple(y)), (s0, tuple(z))
    assert H.multiply(H.multiply(u, v), w) == H.multiply(u, H.multiply(v, w))


def test_heisenberg_duals_are_homomorphisms():
    for r in (1, 2):
        assert heisenberg1(r).dual_homomorphism_failures() == []


def test_heisenberg_quotient_complex():
    from math import comb
    for r in (1, 2, 3):
        P = PicardGroupoid(heisenberg1(r).quotient_complex())
        assert P.pi0 == F.free(r) and P.pi1 == F.free(comb(r, 2))


def test_commutator_is_antisymmetrized_cocycle():
    e = ExtCocycle.make((4, 4), [[1, 3], [1, 0]], 4)
    assert e.commutator_matrix() == [[0, 2], [2, 0]]
    assert not e.is_abelian()
    assert ExtCocycle.make((2, 2), [[1, 1], [1, 0]], 2).is_abelian()


def test_ill_defined_cocycle_is_rejected():
    with pytest.raises(ValueError):
        ExtCocycle.make((3,), [[1]], 2)


def test_baer_sum_adds_commutators():
    e1 = ExtCocycle.make((4, 4), [[0, 1], [0, 0]], 4)
    e2 = ExtCocycle.make((4, 4), [[0, 0], [3, 0]], 4)
    s = baer_sum(e1, e2)
    assert s.commutator_matrix() == [[(a + b) % 4 for a, b in zip(r1, r2)]
                                     for r1, r2 in zip(e1.commutator_matrix(), e2.commutator_matrix())]
    assert (e1 + e1.negate()).sigma == ((0, 0), (0, 0))


def test_isomorphism_witness_for_symmetric_difference():
    # even diagonal: x(x-1)/2 terms are 4-periodic, so q descends to (Z/4)^2
    e1 = ExtCocycle.make((4, 4), [[2, 1], [0, 2]], 4)
    e2 = ExtCocycle.make((4, 4), [[0, 0], [3, 0]], 4)
    w = isomorphism_witness(e1, e2)
    assert w is not None and witness_is_isomorphism(w, e1, e2)
    # odd diagonal on Z/4 is a nonsplit class
    assert isomorphism_witness(ExtCocycle.make((4, 4), [[1, 1], [0, 2]], 4), e2) is None
    # different commutators
    assert isomorphism_witness(e1, ExtCocycle.make((4, 4), [[0, 0], [0, 0]], 4)) is None


def test_isomorphism_witness_on_lattice():
    e1 = ExtCocycle.make((0,), [[2]], 4)
    e2 = ExtCocycle.make((0,), [[0]], 4)
    w = isomorphism_witness(e1, e2, box=3)
    assert w is not None and witness_is_isomorphism(w, e1, e2, box=3)


@pytest.mark.parametrize("orders,N", [((2,), 2), ((2, 2), 4), ((4,), 4), ((2, 4), 2), ((6,), 2)])
def test_inv_inverts_construction(orders, N):
    opts = [[v for v in range(N) if 2 * v % N == 0 and d * v % N == 0] for d in orders]
    for f in product(*opts):
        s = build_symmon_from_hom(orders, list(f), N)
        assert check_coherence(s) is None
        assert inv_on_generators(s) == list(f)


def test_sum_of_built_data_is_coherent():
    a = build_symmon_from_hom((2, 2), [1, 0], 2)
    b = build_symmon_from_hom((2, 2), [0, 1], 2)
    assert check_coherence(a + b) is None
    assert check_coherence(trivial_symmon((3,), 3)) is None


def test_corrupted_braiding_has_witness():
    s = build_symmon_from_hom((2, 2), (2, 0), 4).with_braiding((1, 0), (0, 1), 1)
    bad = check_coherence(s)
    assert bad is not None and bad[0] in ("hexagon", "hexagon-inverse", "inverse")
    with pytest.raises(IncoherentData):
        inv(s)


def test_restriction_along_doubling_kills_invariant():
    s = build_symmon_from_hom((4,), [2], 4)
    assert inv_on_generators(s) == [2]
    assert inv_on_generators(s.pullback([[2]], (4,))) == [0]


def test_sign_twist():
    alg = twist_graded_algebra((2,), ExtCocycle.make((2,), [[1]], 2))
    assert alg.multiply((0, (1,)), (0, (1,))) == (1, (0,))
    assert alg.associativity_failures() == []


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_biadditive_twists_are_associative(entries):
    e = ExtCocycle.make((4, 4), [entries[:2], entries[2:]], 4)
    alg = twist_graded_algebra((4, 4), e)
    assert alg.associativity_failures() == []
    assert alg.commutation((1, 0), (0, 1)) == e.commutator((1, 0), (0, 1))


def test_associativity_is_the_cocycle_identity():
    # the Z/8 extension of Z/2: sigma(1, 1) = 1 mod 4 is a cocycle but not biadditive
    alg = twist_graded_algebra((2,), (4, {((1,), (1,)): 1}))
    assert alg.associativity_failures() == [] and alg.cocycle_failures() == []
    broken = twist_graded_algebra((3,), (3, {((1,), (1,)): 1}))
    assert broken.associativity_failures() and broken.cocycle_failures()
