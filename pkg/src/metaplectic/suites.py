"""Named verification suites over default parameter grids.

Each suite returns ledger entries ``{"check", "pass", "detail"}``; the
command line and the acceptance tests share them.
"""

from __future__ import annotations

from itertools import product
from math import comb

from . import abelian_core as ac
from .abelian_core import FgAbelianGroup
from .bg_cohomology import chevalley_strictness_oracle, same_subgroup
from .forms import QuadForm, diagram_failures, sigma2_homology, theta_skeleton
from .local_field import Place, symbol_identity_suite
from .meta_dual import borel_independence_check, dual_pair, epsilon_oracle
from .picard_ext import (ExtCocycle, build_symmon_from_hom, check_coherence, inv_on_generators,
                         twist_graded_algebra)
from .root_data import (CATALOG_NAMES, catalog, companions, enumerate_strict, w_invariant_integral_forms,
                        weyl_group)


def entry(check: str, ok: bool, detail=None) -> dict:
    return {"check": check, "pass": bool(ok), "detail": detail}


# ---------------------------------------------------------------------------

FUNCTOR_TAGS = ("Id", "Tensor2", "Gamma2", "Wedge2", "Sym2", "Hcheck1")


def sigma2_entries(ranks=(1, 2, 3, 4)) -> list[dict]:
    out = []
    for r in ranks:
        z2 = FgAbelianGroup.cyclic(2).power(r)
        want = {False: (FgAbelianGroup.free(comb(r + 1, 2)), z2, FgAbelianGroup()),
                True: (FgAbelianGroup.free(comb(r, 2)) + z2, FgAbelianGroup(), z2)}
        for tw in (False, True):
            got = sigma2_homology(r, tw)
            out.append(entry(f"swap coinvariants rank {r}{' twisted' if tw else ''}", got == want[tw],
                             [str(g) for g in got]))
    return out


def cosimplicial_entries(ranks=(1, 2), max_degree: int = 4, tags=FUNCTOR_TAGS) -> list[dict]:
    out = []
    for r in ranks:
        for tag in tags:
            rep = ac.cosimplicial_limit_check(r, tag, max_degree)
            out.append(entry(f"cosimplicial limit {tag} rank {r}", rep.ok,
                             {str(k): str(v) for k, v in sorted(rep.computed.items())}))
    return out


def linear_algebra_suite() -> list[dict]:
    out = sigma2_entries() + cosimplicial_entries()
    for r in (1, 2, 3, 4):
        bad = diagram_failures(r)
        out.append(entry(f"degree-two functor diagram rank {r}", not bad, bad))
    F = FgAbelianGroup
    for a, b, want in ((F.cyclic(2), F.cyclic(4), (F.cyclic(2), F.cyclic(2))),
                       (F.free(1), F.cyclic(5), (F.cyclic(5), F())),
                       (F.cyclic(3), F.cyclic(2), (F(), F()))):
        out.append(entry(f"Hom/Ext({a}, {b})", ac.hom_ext(a, b) == want))
    return out


def theta_suite(ranks=(1, 2, 3), moduli=(2, 3, 4, 6)) -> list[dict]:
    out = []
    for r, N, level in product(ranks, moduli, (1, 2)):
        t = theta_skeleton(r, N, level)
        out.append(entry(f"theta level {level} rank {r} N {N}", t.agree and (t.pi0, t.pi1, t.pi2) == t.expected(),
                         {k: [str(g) for g in v] for k, v in t.routes.items()}))
    return out


SCHUBERT_DATA = ("A1", "A1xA1", "A2", "B2", "G2", "GL2", "PGL2")
SCHUBERT_MODULI = (2, 3, 4, 5, 6, 12)


def schubert_suite(names=SCHUBERT_DATA, moduli=SCHUBERT_MODULI) -> list[dict]:
    out = []
    for name in names:
        rd = catalog(name)
        W = weyl_group(rd)
        for N in moduli:
            a = chevalley_strictness_oracle(rd, N, W)
            b = enumerate_strict(rd, N)
            out.append(entry(f"Schubert oracle {name} N {N}", same_subgroup(a, b, rd.rank),
                             {"oracle": str(a.group), "strict": str(b.group)}))
    return out


def finite_groups(max_order: int) -> list[tuple[int, ...]]:
    """Invariant-factor chains of every abelian group of order at most ``max_order``."""
    out = [()]

    def extend(chain, prod_):
        for d in range(2, max_order + 1):
            if prod_ * d > max_order:
                break
            if chain and d % chain[-1]:
                continue
            new = chain + (d,)
            out.append(new)
            extend(new, prod_ * d)

    extend((), 1)
    return sorted(set(out), key=lambda c: (len(c), c))


def homs_mod_two(orders, N: int) -> list[list[int]]:
    """Generator values of every homomorphism ``G / 2G -> Z/N``."""
    opts = [[v for v in range(N) if 2 * v % N == 0 and d * v % N == 0] for d in orders]
    return [list(f) for f in product(*opts)]


def coherence_suite(max_order: int = 8, max_N: int = 4) -> list[dict]:
    return symmon_entries(max_order, max_N) + twisting_entries()


def symmon_entries(max_order: int = 8, max_N: int = 4) -> list[dict]:
    out = []
    cases = bad = 0
    witness = None
    for orders in finite_groups(max_order):
        for N in range(1, max_N + 1):
            for f in homs_mod_two(orders, N):
                s = build_symmon_from_hom(orders, f, N)
                cases += 1
                c = check_coherence(s)
                back = inv_on_generators(s) if c is None else None
                if c is not None or back != [v % N for v in f]:
                    bad += 1
                    witness = witness or {"orders": orders, "N": N, "f": f, "failure": c}
    out.append(entry("inv inverts the braided construction and all data are coherent", bad == 0,
                     {"cases": cases, "first_failure": witness}))
    s = build_symmon_from_hom((2, 2), (2, 0), 4)
    corrupted = s.with_braiding((1, 0), (0, 1), 1)
    w = check_coherence(corrupted)
    out.append(entry("corrupted braiding is caught", w is not None, None if w is None else [w[0], list(w[1])]))
    return out


TWIST_FAMILIES = (((2,), 2), ((2,), 4), ((3,), 3), ((4,), 2), ((2, 2), 2))


def is_biadditive(alg) -> bool:
    G, s, N = alg.group, alg.sigma, alg.N
    E = G.elements
    return all((s[(G.add(a, b), c)] - s[(a, c)] - s[(b, c)]) % N == 0
               and (s[(a, G.add(b, c))] - s[(a, b)] - s[(a, c)]) % N == 0
               for a, b, c in product(E, repeat=3))


def normalized_tables(orders, N: int):
    """Every Z/N-valued function on pairs vanishing when either argument is zero."""
    alg = twist_graded_algebra(orders, (N, {}))
    keys = [(a, b) for a, b in product(alg.group.elements, repeat=2) if any(a) and any(b)]
    for vals in product(range(N), repeat=len(keys)):
        yield twist_graded_algebra(orders, (N, dict(zip(keys, vals))))


def twist_survey(families=TWIST_FAMILIES) -> dict:
    """Exhaustive comparison of associativity with biadditivity and with the cocycle identity."""
    out = {"tables": 0, "assoc_not_cocycle": [], "biadditive_not_assoc": [], "assoc_not_biadditive": []}
    for orders, N in families:
        for alg in normalized_tables(orders, N):
            out["tables"] += 1
            assoc = not alg.associativity_failures()
            cocycle = not alg.cocycle_failures()
            bi = is_biadditive(alg)
            table = {f"{list(a)},{list(b)}": v for (a, b), v in sorted(alg.sigma.items()) if v}
            if assoc != cocycle:
                out["assoc_not_cocycle"].append((orders, N, table))
            if bi and not assoc:
                out["biadditive_not_assoc"].append((orders, N, table))
            if assoc and not bi:
                out["assoc_not_biadditive"].append((orders, N, table))
    return out


def twisting_entries() -> list[dict]:
    out = []
    alg = twist_graded_algebra((2,), ExtCocycle.make((2,), [[1]], 2))
    x2 = alg.multiply((0, (1,)), (0, (1,)))
    out.append(entry("sign twist squares to -1", x2 == (1, (0,)), list(x2)))
    sign = twist_graded_algebra((2, 2), ExtCocycle.make((2, 2), [[0, 1], [0, 0]], 2))
    table = dict(sign.sigma)
    table[((1, 0), (1, 1))] ^= 1
    bad = twist_graded_algebra((2, 2), (2, table)).associativity_failures()
    out.append(entry("corrupted cocycle is detected", bool(bad), [list(map(list, bad[0]))] if bad else None))
    sv = twist_survey()
    out.append(entry("associativity matches the cocycle identity", not sv["assoc_not_cocycle"],
                     {"tables": sv["tables"], "counterexamples": sv["assoc_not_cocycle"][:3]}))
    out.append(entry("biadditive tables give associative twists", not sv["biadditive_not_assoc"],
                     sv["biadditive_not_assoc"][:3]))
    out.append(entry("associative tables are biadditive", not sv["assoc_not_biadditive"],
                     {"count": len(sv["assoc_not_biadditive"]), "examples": sv["assoc_not_biadditive"][:3]}))
    return out


def odd_primes(limit: int) -> list[int]:
    return [p for p in range(3, limit + 1) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


SYMBOL_SAMPLE = [s * k for k in range(1, 11) for s in (1, -1)]


def symbols_suite() -> list[dict]:
    out = []
    places = [Place(None, 2)] + [Place(p, 2) for p in odd_primes(50)] + [Place(5, 4), Place(13, 4)]
    for v in places:
        sample = SYMBOL_SAMPLE + ([v.p] if v.p else [])
        rep = symbol_identity_suite(v, sample)
        out.append(entry(f"symbol identities at {v} N {v.N}", rep.ok,
                         {k: v_[:3] for k, v_ in rep.failures.items() if v_}))
    return out


def dual_suite(max_N: int = 4, oracle_box: int = 2) -> list[dict]:
    out = []
    sl2 = catalog("SL2")
    for q, want_H, want_Z in ((1, ((1,), (-1,)), FgAbelianGroup.cyclic(2)), (0, ((2,), (-2,)), FgAbelianGroup())):
        dp = dual_pair(sl2, QuadForm.from_list(1, 2, [q]))
        out.append(entry(f"SL2 N 2 Q {q}: dual datum and center", dp.dual.coroots == want_H and dp.center_characters == want_Z,
                         {"dual coroots": [list(c) for c in dp.dual.coroots], "center characters": str(dp.center_characters)}))
    o = epsilon_oracle(sl2, QuadForm.from_list(1, 2, [1]), box=oracle_box, shift_box=oracle_box)
    out.append(entry("SL2 N 2 Q 1: epsilon independent of representatives", o.independent,
                     {"cases": o.cases, "epsilon": list(o.reference)}))
    out += borel_entries(max_N)
    return out


def strict_forms(rd, N: int):
    sg = enumerate_strict(rd, N)
    n = rd.rank * (rd.rank + 1) // 2
    seen = set()
    for cs in product(range(N), repeat=len(sg.generators)):
        v = [0] * n
        for c, g in zip(cs, sg.generators):
            v = [a + c * b for a, b in zip(v, g.as_list())]
        seen.add(tuple(x % N for x in v))
    return [QuadForm.from_list(rd.rank, N, v) for v in sorted(seen)]


def borel_entries(max_N: int = 4, max_rank: int = 2) -> list[dict]:
    cases, bad = 0, []
    for name in CATALOG_NAMES:
        rd = catalog(name)
        if rd.rank > max_rank:
            continue
        W = weyl_group(rd)
        for N in range(1, max_N + 1):
            for Q in strict_forms(rd, N):
                for w in W.elements:
                    cases += 1
                    r = borel_independence_check(rd, Q, w)
                    if not r.ok:
                        bad.append({"datum": name, "N": N, "Q": Q.as_list(), "mismatches": r.mismatches})
    out = [entry("independence of the simple system", not bad, {"cases": cases, "failures": bad[:3]})]
    rd = catalog("A2")
    W = weyl_group(rd)
    Q = QuadForm.zero(2, 3)
    caught = all(not borel_independence_check(rd, Q, w, transport=W.elements[0]).ok
                 for k, w in enumerate(W.elements) if W.lengths[k] > 0)
    out.append(entry("identity transport is rejected for w != 1", caught))
    return out


def _mod_span(vectors, N: int, n: int):
    return ac.lattice_basis([list(v) for v in vectors] + [[N if i == j else 0 for i in range(n)]
                                                          for j in range(n)], n)


def torsion_free_experiment(moduli=SCHUBERT_MODULI) -> list[dict]:
    """Observations, not checks: do integral invariant forms reduce onto strict forms when pi_1 is free?"""
    out = []
    for name in CATALOG_NAMES:
        rd = catalog(name)
        pi1 = companions(rd).pi1
        if pi1.is_finite or pi1.torsion:
            continue
        n = rd.rank * (rd.rank + 1) // 2
        inv = w_invariant_integral_forms(rd)
        for N in moduli:
            strict = [q.as_list() for q in enumerate_strict(rd, N).generators]
            out.append({"experiment": f"{name} N {N}", "pi1": str(pi1),
                        "observed": ac.lattice_equal(_mod_span(inv, N, n), _mod_span(strict, N, n), n)})
    return out


EXPERIMENTS = {"torsion-free": torsion_free_experiment}

SUITES = {
    "linear-algebra": linear_algebra_suite,
    "theta": theta_suite,
    "coherence": coherence_suite,
    "schubert": schubert_suite,
    "symbols": symbols_suite,
    "dual": dual_suite,
}


def run(name: str) -> list[dict]:
    if name == "all":
        out = []
        for k in SUITES:
            out += [dict(e, suite=k) for e in SUITES[k]()]
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
