import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaplectic.abelian_core import FgAbelianGroup as F
from metaplectic.forms import QuadForm
from metaplectic.meta_dual import (Choices, NotStrict, borel_independence_check, dual_pair, epsilon_invariant,
                                   epsilon_oracle, linear_route_comparison, sharp_data)
from metaplectic.root_data import catalog, validate, weyl_group
from metaplectic.suites import strict_forms

SL2 = catalog("SL2")


def q(rd, N, c):
    return QuadForm.from_list(rd.rank, N, c)


def test_sl2_level_one_mod_two():
    # b = 2xy vanishes mod 2, Q(coroot) = 1 has order 2: sharp coroot 2, sharp root 1
    dp = dual_pair(SL2, q(SL2, 2, [1]))
    assert dp.sharp.basis == [[1]]
    assert dp.sharp.datum.coroots == ((2,), (-2,))
    assert dp.dual.coroots == ((1,), (-1,)) and dp.dual.roots == ((2,), (-2,))
    assert dp.center_characters == F.cyclic(2)
    assert dp.epsilon.values == {(0,): 0, (1,): 1}
    assert dp.epsilon.canonical_agrees


def test_sl2_zero_form():
    dp = dual_pair(SL2, q(SL2, 2, [0]))
    assert dp.dual.coroots == ((2,), (-2,)) and dp.dual.roots == ((1,), (-1,))
    assert dp.center_characters == F()


def test_sl2_mod_four():
    # b = 2xy mod 4 kills exactly 2Z; 4 * coroot = 2 * basis vector
    dp = dual_pair(SL2, q(SL2, 4, [1]))
    assert dp.sharp.basis == [[2]] and dp.sharp.datum.coroots == ((2,), (-2,))
    assert dp.center_characters == F.cyclic(2)
    assert dp.epsilon.trivial


def test_gl2_center_is_infinite():
    dp = dual_pair(catalog("GL2"), q(catalog("GL2"), 2, [1, 0, 1]))
    assert dp.center_characters.free_rank == 1
    assert dp.epsilon.mod_two and dp.epsilon.orders == (2,)
    assert dp.epsilon.on_generators() == [1]


@pytest.mark.parametrize("name,N", [("A2", 3), ("B2", 4), ("G2", 2), ("PGL2", 4), ("Sp4", 2), ("GL2", 4)])
def test_dual_data_are_valid(name, N):
    rd = catalog(name)
    for Q in strict_forms(rd, N):
        dp = dual_pair(rd, Q)
        assert validate(dp.dual) == []
        assert dp.epsilon.canonical_agrees


def test_non_strict_is_refused():
    with pytest.raises(NotStrict) as e:
        sharp_data(catalog("A1xA1"), q(catalog("A1xA1"), 2, [0, 1, 0]))
    a, k, lhs, rhs = e.value.violation
    assert lhs != rhs


def test_choices_do_not_change_epsilon():
    rd = catalog("GL2")
    Q = q(rd, 2, [1, 0, 1])
    ref = epsilon_invariant(rd, Q).values
    ch = Choices(lift=[[1, 3], [0, -2]], alternating=[[0, 1], [-1, 0]], symmetric=[[1, 1], [1, 0]], shifts={(1,): [1, -1]})
    assert epsilon_invariant(rd, Q, ch).values == ref


def test_oracle_rank_one():
    o = epsilon_oracle(SL2, q(SL2, 2, [1]), box=1, shift_box=1)
    assert o.independent and o.reference == (1,)


def test_linear_route_reports_without_asserting():
    r = linear_route_comparison(SL2, q(SL2, 4, [1]))
    assert set(r) == {"applicable", "epsilon", "linear_route", "differ"}


def test_borel_independence_and_control():
    rd = catalog("B2")
    W = weyl_group(rd)
    Q = q(rd, 2, [0, 0, 0])
    assert all(borel_independence_check(rd, Q, w).ok for w in W.elements)
    A2 = catalog("A2")
    Wa = weyl_group(A2)
    idx = Wa.lengths.index(1)
    assert not borel_independence_check(A2, q(A2, 3, [0, 0, 0]), Wa.elements[idx],
                                        transport=Wa.elements[0]).ok


@pytest.mark.parametrize("name,N", [("A2", 3), ("G2", 3), ("GL2", 5), ("B2", 3), ("SL2", 7)])
def test_odd_modulus_has_no_epsilon(name, N):
    rd = catalog(name)
    for Q in strict_forms(rd, N):
        assert dual_pair(rd, Q).epsilon.trivial


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "GL2", "PGL2", "GL3", "A1xA1"])
def test_zero_form(name):
    rd = catalog(name)
    dp = dual_pair(rd, q(rd, 2, [0] * (rd.rank * (rd.rank + 1) // 2)))
    assert dp.epsilon.trivial
    assert dp.center_characters.free_rank == rd.rank - len(rd.simple)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.sampled_from(["A2", "B2", "GL2"]))
def test_integral_shift_of_form_changes_nothing(k, name):
    rd = catalog(name)
    N = 4
    Qs = strict_forms(rd, N)
    Q = Qs[len(Qs) // 2]
    ref = epsilon_invariant(rd, Q).values
    assert epsilon_invariant(rd, Q, Choices(lift=[[k[0], k[1]], [0, k[2]]])).values == ref
