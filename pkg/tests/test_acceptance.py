"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
Every comparison is exact; each line carries its runtime against the bound.
"""

import io
import json
import time
from contextlib import redirect_stdout

import pytest

from metaplectic import abelian_core as ac
from metaplectic import suites
from metaplectic.abelian_core import FgAbelianGroup as F
from metaplectic.bg_cohomology import bg_cohomology, cover_homotopy
from metaplectic.cli import main as cli_main
from metaplectic.forms import QuadForm
from metaplectic.meta_dual import dual_pair
from metaplectic.picard_ext import build_symmon_from_hom, check_coherence
from metaplectic.root_data import CATALOG_NAMES, catalog, companions, simple_factors


def _all(entries):
    bad = [e for e in entries if not e["pass"]]
    return not bad, (bad[0] if bad else f"{len(entries)} checks")


def c1():
    return _all(suites.sigma2_entries((1, 2, 3, 4)))


def c2():
    return _all(suites.cosimplicial_entries((1, 2), 4))


def c3():
    return _all(suites.theta_suite((1, 2, 3), (2, 3, 4, 6)))


def c4():
    return _all(suites.schubert_suite(suites.SCHUBERT_DATA, suites.SCHUBERT_MODULI))


def c5():
    out = []
    sc = [n for n in CATALOG_NAMES if catalog(n).rank and companions(catalog(n)).pi1.is_trivial]
    for name in sc:
        rd = catalog(name)
        for N in suites.SCHUBERT_MODULI:
            c = cover_homotopy(rd, N)
            want = (F.cyclic(N).power(simple_factors(rd)), F(), F())
            out.append(suites.entry(f"{name} N {N}", c.agree and c.as_tuple() == want))
    for name in ("PGL2", "GL2"):
        rd = catalog(name)
        for N in suites.SCHUBERT_MODULI:
            rep = bg_cohomology(rd, N)
            want = ac.hom_ext(companions(rd).pi1, F.cyclic(N))
            out.append(suites.entry(f"{name} N {N}", (rep.H2, rep.H3) == want and rep.ok))
    return _all(out)


def c6():
    return _all(suites.symmon_entries(8, 4))


def c7():
    return _all(suites.symbols_suite())


def c8():
    # hand recipe, SL2 = (Z, coroot 1, root 2), N = 2:
    #   Q = x^2: b = 2xy = 0, sharp lattice Z, Q(1) = 1 of order 2, sharp coroot 2, sharp root 1;
    #            dual coroot 1, root 2, center characters Z/(1 -> 2) = Z/2, self-braiding Q(1) = 1
    #   Q = 0:   sharp coroot 1, sharp root 2; dual coroot 2, root 1, center characters 0
    sl2 = catalog("SL2")
    one = dual_pair(sl2, QuadForm.from_list(1, 2, [1]))
    zero = dual_pair(sl2, QuadForm.from_list(1, 2, [0]))
    hand = [
        suites.entry("Q=1 sharp basis", one.sharp.basis == [[1]]),
        suites.entry("Q=1 sharp coroots", one.sharp.datum.coroots == ((2,), (-2,))),
        suites.entry("Q=1 dual of simply connected type",
                     one.dual.coroots == ((1,), (-1,)) and one.dual.roots == ((2,), (-2,))),
        suites.entry("Q=1 center characters", one.center_characters == F.cyclic(2)),
        suites.entry("Q=1 epsilon", one.epsilon.values == {(0,): 0, (1,): 1}),
        suites.entry("Q=0 dual of adjoint type",
                     zero.dual.coroots == ((2,), (-2,)) and zero.dual.roots == ((1,), (-1,))),
        suites.entry("Q=0 center characters", zero.center_characters == F()),
    ]
    return _all(hand + suites.dual_suite(max_N=4, oracle_box=2))


def c9():
    return _all(suites.twisting_entries())


def c10():
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(["dualize", "catalog:A1xA1", "--N", "2", "--Q", "[0, 1, 0]"])
    rep = json.loads(buf.getvalue())
    v = rep["result"].get("violation", {})
    refused = code == 1 and rep["result"].get("refused") and v.get("b(coroot, e_k)") != v.get("<root, e_k> Q(coroot)")
    s = build_symmon_from_hom((2, 2), (2, 0), 4).with_braiding((1, 0), (0, 1), 1)
    w = check_coherence(s)
    caught = w is not None and isinstance(w[1], tuple) and len(w[1]) >= 2
    return _all([suites.entry("non-strict form refused with its violation", refused, v),
                 suites.entry("corrupted braiding has a witness", caught, w)])


CRITERIA = [
    (1, "swap coinvariants of the tensor square, ranks 1-4", 1.0, c1),
    (2, "cosimplicial limits, ranks 1-2, degree <= 4", 5.0, c2),
    (3, "theta homotopy groups by three presentations", 10.0, c3),
    (4, "Schubert oracle equals strict-form enumeration", 30.0, c4),
    (5, "BG cohomology and cover homotopy groups", 1.0, c5),
    (6, "inv inverts the braided construction; coherence", 30.0, c6),
    (7, "Hilbert symbol identities", 5.0, c7),
    (8, "dual construction, epsilon oracle, simple-system independence", 60.0, c8),
    (9, "graded twisting: associative iff biadditive", 1.0, c9),
    (10, "negative controls", 5.0, c10),
]


def evaluate(fn, bound):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    return ok and dt < bound, dt, detail


def line(n, title, bound, ok, dt, detail):
    tag = "PASS" if ok else "FAIL"
    s = f"{tag} criterion {n:2d}: {title} ({dt:.2f}s, bound {bound:g}s)"
    if not ok:
        s += f" -- {json.dumps(detail, default=str)[:400]}"
    return s


@pytest.mark.parametrize("n,title,bound,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, title, bound, fn, capsys):
    ok, dt, detail = evaluate(fn, bound)
    with capsys.disabled():
        print("\n" + line(n, title, bound, ok, dt, detail))
    assert ok, detail


if __name__ == "__main__":
    for n, title, bound, fn in CRITERIA:
        print(line(n, title, bound, *evaluate(fn, bound)))
