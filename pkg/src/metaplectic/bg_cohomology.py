"""Low-degree cohomology of classifying stacks with coefficients in Z/N.

Everything is computed from the root datum: ``H^2`` and ``H^3`` from
``pi_1`` through Hom/Ext, ``H^4`` as strict quadratic forms.  An
independent route to ``H^4`` goes through the degree-two Schubert
coefficients of the flag variety.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import abelian_core as ac
from .abelian_core import FgAbelianGroup
from .forms import BilinearFormModN, QuadForm
from .root_data import (BasedRootDatum, StrictGroup, WeylGroup, companions, enumerate_strict,
                        is_strict, pair, pi1_generators, strictness_violations, weyl_group, _keys)


@dataclass
class BgCohomologyReport:
    N: int
    H1: FgAbelianGroup
    H2: FgAbelianGroup
    H3: FgAbelianGroup
    H4: FgAbelianGroup
    H4_generators: list[QuadForm]
    exactness: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.exactness.values())


def restriction_to_sc(rd: BasedRootDatum) -> list[list[int]]:
    """Matrix of ``Hom(L, Z/N) -> Hom(L_sc, Z/N)``: the transpose of the inclusion."""
    return [list(v) for v in rd.simple_coroots]


def bg_cohomology(rd: BasedRootDatum, N: int) -> BgCohomologyReport:
    comp = companions(rd)
    zn = FgAbelianGroup.cyclic(N)
    H2, H3 = ac.hom_ext(comp.pi1, zn)
    strict = enumerate_strict(rd, N)
    checks = {}
    ker, coker = _restriction_ker_coker(rd, N)
    checks["H2 = kernel of restriction"] = ker == H2
    checks["H3 = cokernel of restriction"] = coker == H3
    checks.update(strict.checks)
    return BgCohomologyReport(N, FgAbelianGroup(), H2, H3, strict.group, strict.generators, checks)


# ---------------------------------------------------------------------------
# Schubert-calculus route

@dataclass
class SchubertTerm:
    w: int
    beta: int
    gamma: int


def schubert_terms(rd: BasedRootDatum, W: WeylGroup) -> list[SchubertTerm]:
    """For each length-two ``w`` and simple ``beta <= w``, the positive ``gamma`` with ``w = s_beta s_gamma``."""
    pos = rd.positive_indices()
    refl = {rd.reflection_matrix(k): k for k in pos}
    out = []
    for k in W.stratum(2):
        w = W.elements[k]
        letters = set(W.words[k])
        for beta in rd.simple:
            if beta not in letters:
                continue
            s_beta = rd.reflection_matrix(beta)
            target = tuple(tuple(sum(s_beta[i][t] * w[t][j] for t in range(rd.rank))
                                 for j in range(rd.rank)) for i in range(rd.rank))
            gamma = refl.get(target)
            if gamma is None:
                raise RuntimeError("no positive coroot realizes the Schubert factorization")
            out.append(SchubertTerm(k, beta, gamma))
    return out


def chevalley_functionals(rd: BasedRootDatum, W: WeylGroup | None = None):
    """Linear functionals on upper-triangular coefficients cutting out strict forms.

    One per length-two Weyl element, summing ``c(gamma, beta)`` over its
    Schubert terms with ``c`` the upper-triangular lift; then one per simple
    coroot and ``pi_1`` generator for the length-one stratum.
    """
    if W is None:
        W = weyl_group(rd)
    keys = _keys(rd.rank)
    rows, labels = [], []
    terms = schubert_terms(rd, W)
    for k in W.stratum(2):
        row = [0] * len(keys)
        for t in terms:
            if t.w != k:
                continue
            g, b = rd.coroots[t.gamma], rd.coroots[t.beta]
            for n, (i, j) in enumerate(keys):
                row[n] += g[i] * b[j]
        rows.append(row)
        labels.append(("length-2", W.words[k]))
    for a in rd.simple:
        al, ar = rd.coroots[a], rd.roots[a]
        for lam in pi1_generators(rd):
            row = []
            for i, j in keys:
                bij = lam[i] * al[j] + lam[j] * al[i]
                row.append(bij - pair(ar, lam) * al[i] * al[j])
            rows.append(row)
            labels.append(("length-1", (a, lam)))
    return rows, labels


def chevalley_strictness_oracle(rd: BasedRootDatum, N: int, W: WeylGroup | None = None) -> StrictGroup:
    rows, _ = chevalley_functionals(rd, W)
    n = len(_keys(rd.rank))
    if rows:
        grp, gens = ac.kernel_mod(rows, N, n)
    else:
        grp = FgAbelianGroup.cyclic(N).power(n)
        gens = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return StrictGroup(N, grp, [QuadForm.from_list(rd.rank, N, v) for v in gens])


def same_subgroup(A: StrictGroup, B: StrictGroup, rank: int) -> bool:
    n = len(_keys(rank))
    span = lambda G: ac.lattice_basis(  # noqa: E731
        [q.as_list() for q in G.generators] + [[G.N if i == j else 0 for i in range(n)] for j in range(n)], n)
    return A.N == B.N and ac.lattice_equal(span(A), span(B), n)


# ---------------------------------------------------------------------------
# classification homotopy groups

@dataclass
class CoverHomotopy:
    pi0: FgAbelianGroup
    pi1: FgAbelianGroup
    pi2: FgAbelianGroup
    fiber_pi1: FgAbelianGroup
    fiber_pi2: FgAbelianGroup

    @property
    def agree(self) -> bool:
        return (self.pi1, self.pi2) == (self.fiber_pi1, self.fiber_pi2)

    def as_tuple(self):
        return (self.pi0, self.pi1, self.pi2)


def _restriction_ker_coker(rd: BasedRootDatum, N: int):
    s = len(rd.simple)
    if not s:
        return FgAbelianGroup.cyclic(N).power(rd.rank), FgAbelianGroup()
    res = restriction_to_sc(rd)
    ker, _ = ac.kernel_mod(res, N, rd.rank)
    coker = ac.cokernel(ac.hstack(res, ac.scalar_matrix(s, N), nrows=s), rd.rank + s)
    return ker, coker


def cover_homotopy(rd: BasedRootDatum, N: int) -> CoverHomotopy:
    """Homotopy groups of pointed maps from BG into the degree-four Eilenberg-MacLane object.

    ``pi_1`` and ``pi_2`` are computed twice: from ``pi_1(G)`` by Hom/Ext, and
    from the fiber sequence of the square gluing the torus to the simply
    connected cover, where they are the cokernel and kernel of restricting
    characters mod N to the coroot lattice.
    """
    comp = companions(rd)
    H2, H3 = ac.hom_ext(comp.pi1, FgAbelianGroup.cyclic(N))
    H4 = enumerate_strict(rd, N).group
    ker, coker = _restriction_ker_coker(rd, N)
    return CoverHomotopy(H4, H3, H2, coker, ker)


# ---------------------------------------------------------------------------
# equivariance pairings

@dataclass
class EquivariancePairings:
    int_mu: BilinearFormModN
    int_mu_sc: list[list[int]]
    compatible: bool


def equivariance_pairings(rd: BasedRootDatum, Q: QuadForm) -> EquivariancePairings:
    """``-b`` on the lattice and ``(a_i, w_j) -> -delta_ij Q(a_i)`` on coroots x coweights."""
    if not is_strict(rd, Q):
        a, k, lhs, rhs = strictness_violations(rd, Q)[0]
        raise ValueError(f"form is not strict at coroot {a}, basis vector {k}: {lhs} != {rhs}")
    N = Q.N
    mu = Q.polarize().negate()
    s = len(rd.simple)
    sc = [[(-Q(rd.coroots[i]) if a == b else 0) % N for b in range(s)]
          for a, i in enumerate(rd.simple)]
    # restrict -b to coroots x lattice and compare with the sc pairing composed with L -> L_ad
    ok = True
    for a, i in enumerate(rd.simple):
        for k in range(rd.rank):
            e = [1 if t == k else 0 for t in range(rd.rank)]
            lhs = mu(rd.coroots[i], e)
            rhs = sum(sc[a][j] * pair(rd.roots[rd.simple[j]], e) for j in range(s)) % N
            ok = ok and lhs == rhs
    return EquivariancePairings(mu, sc, ok)
