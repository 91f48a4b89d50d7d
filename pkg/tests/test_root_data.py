import pytest

from metaplectic.abelian_core import FgAbelianGroup as F
from metaplectic.forms import QuadForm
from metaplectic.root_data import (CATALOG_NAMES, act, catalog, companions, enumerate_strict, generate,
                                   is_strict, is_w_invariant, pair, strictness_violations, transform,
                                   validate, weyl_group)

# classical counts
WEYL_ORDERS = {"A1": 2, "A2": 6, "B2": 8, "C2": 8, "G2": 12, "A1xA1": 4, "A3": 24, "B3": 48, "C3": 48,
               "GL2": 2, "GL3": 6, "PGL2": 2, "SL3": 6, "Sp4": 8}
ROOT_COUNTS = {"A1": 2, "A2": 6, "B2": 8, "G2": 12, "A3": 12, "B3": 18, "C3": 18, "GL1": 0}
PI1 = {"SL2": F(), "PGL2": F.cyclic(2), "GL2": F.free(1), "PGL3": F.cyclic(3), "A2_ad": F.cyclic(3),
       "Sp4": F(), "SO5": F.cyclic(2), "SO4": F.cyclic(2), "GL1": F.free(1)}


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_is_valid(name):
    assert validate(catalog(name)) == []


@pytest.mark.parametrize("name,order", sorted(WEYL_ORDERS.items()))
def test_weyl_group_orders(name, order):
    W = weyl_group(catalog(name))
    assert W.complete and len(W) == order


@pytest.mark.parametrize("name,count", sorted(ROOT_COUNTS.items()))
def test_root_counts(name, count):
    assert len(catalog(name).coroots) == count


@pytest.mark.parametrize("name,pi1", sorted(PI1.items(), key=lambda kv: kv[0]))
def test_fundamental_groups(name, pi1):
    assert companions(catalog(name)).pi1 == pi1


def test_pairing_of_coroot_with_root_is_two():
    for name in CATALOG_NAMES:
        rd = catalog(name)
        assert all(pair(a, r) == 2 for a, r in zip(rd.coroots, rd.roots))


def test_weyl_group_permutes_coroots():
    rd = catalog("G2")
    roots = set(rd.coroots)
    for w in weyl_group(rd).elements:
        assert {act(w, a) for a in rd.coroots} == roots


def test_longest_element_length():
    for name, n_pos in (("A2", 3), ("B2", 4), ("G2", 6)):
        assert max(weyl_group(catalog(name)).lengths) == n_pos


def test_transform_keeps_validity():
    rd = catalog("B2")
    for w in weyl_group(rd).elements:
        assert validate(transform(rd, w)) == []


def test_broken_datum_is_reported():
    rd = catalog("A1")
    bad = type(rd)("bad", 1, ((1,), (-1,)), ((1,), (-1,)), (0,))
    assert validate(bad)


def test_generate_matches_catalog():
    rd = generate("A1g", 1, [(1,)], [(2,)])
    assert set(rd.coroots) == set(catalog("SL2").coroots)


def test_strictness_on_sl2():
    rd = catalog("SL2")
    for q in range(6):
        assert is_strict(rd, QuadForm.from_list(1, 6, [q]))


def test_strict_is_stronger_than_invariant_for_even_modulus():
    rd = catalog("GL2")
    Q = QuadForm.from_list(2, 2, [1, 1, 0])
    assert strictness_violations(rd, Q)
    assert not is_strict(rd, Q)
    # xy on A1xA1: -xy = xy mod 2, but b(e1, e2) = 1 while <2e1, e2> Q(e1) = 0
    Q = QuadForm.from_list(2, 2, [0, 1, 0])
    rd = catalog("A1xA1")
    assert is_w_invariant(rd, Q) and not is_strict(rd, Q)


def test_strict_forms_for_sl2_are_everything():
    assert enumerate_strict(catalog("SL2"), 12).group == F.cyclic(12)
