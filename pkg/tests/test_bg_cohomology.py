import pytest

from metaplectic import abelian_core as ac
from metaplectic.abelian_core import FgAbelianGroup as F
from metaplectic.bg_cohomology import (bg_cohomology, chevalley_strictness_oracle, cover_homotopy,
                                       equivariance_pairings, same_subgroup)
from metaplectic.forms import QuadForm
from metaplectic.root_data import CATALOG_NAMES, catalog, companions, enumerate_strict, simple_factors

SC = [n for n in CATALOG_NAMES
      if catalog(n).rank and companions(catalog(n)).pi1.is_trivial]


@pytest.mark.parametrize("name", SC)
@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_simply_connected_covers(name, N):
    rd = catalog(name)
    c = cover_homotopy(rd, N)
    assert c.agree
    assert c.as_tuple() == (F.cyclic(N).power(simple_factors(rd)), F(), F())


@pytest.mark.parametrize("name", ["PGL2", "GL2", "PGL3", "SO5", "GL3"])
@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_h2_h3_from_fundamental_group(name, N):
    rd = catalog(name)
    rep = bg_cohomology(rd, N)
    hom, ext = ac.hom_ext(companions(rd).pi1, F.cyclic(N))
    assert (rep.H2, rep.H3) == (hom, ext)
    assert rep.ok
    c = cover_homotopy(rd, N)
    assert c.agree and (c.pi2, c.pi1) == (hom, ext)


def test_known_values():
    assert bg_cohomology(catalog("SL2"), 6).H4 == F.cyclic(6)
    rep = bg_cohomology(catalog("PGL2"), 2)
    assert (rep.H2, rep.H3) == (F.cyclic(2), F.cyclic(2))
    rep = bg_cohomology(catalog("GL2"), 3)
    assert (rep.H2, rep.H3, rep.H4) == (F.cyclic(3), F(), F(0, (3, 3)))


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "GL2", "PGL2", "A1xA1"])
def test_schubert_route_matches_enumeration(name):
    rd = catalog(name)
    for N in (2, 4, 6):
        assert same_subgroup(chevalley_strictness_oracle(rd, N), enumerate_strict(rd, N), rd.rank)


def test_same_subgroup_distinguishes():
    rd = catalog("GL2")
    a = enumerate_strict(rd, 4)
    b = enumerate_strict(catalog("PGL2"), 4)
    assert same_subgroup(a, a, 2)
    assert b.group != a.group


def test_equivariance_pairings():
    p = equivariance_pairings(catalog("SL2"), QuadForm.from_list(1, 7, [3]))
    assert p.int_mu.rows() == [[1]] and p.int_mu_sc == [[4]] and p.compatible
    with pytest.raises(ValueError):
        equivariance_pairings(catalog("A1xA1"), QuadForm.from_list(2, 2, [0, 1, 0]))
