"""The dual pair attached to a strict quadratic form.

The kernel of the polarization mod N is a sublattice carrying a new root
datum whose coroots are the multiples ``ord(Q(a)) a``.  Its Langlands dual
is the combinatorial part of the output; the other part is a homomorphism
from (the 2-torsion quotient of) the character group of the center to
Z/N, computed by building a symmetric monoidal extension and reading off
self-braidings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

from . import abelian_core as ac
from .abelian_core import FgAbelianGroup
from .forms import QuadForm
from .picard_ext import SymMonExt, build_symmon_from_hom, check_coherence, inv
from .root_data import (BasedRootDatum, act, is_strict, pair, strictness_violations, transform,
                        validate)


class NotStrict(ValueError):
    def __init__(self, violation):
        a, k, lhs, rhs = violation
        self.violation = violation
        super().__init__(f"b(coroot {a}, e_{k}) = {lhs} but <root, e_{k}> Q(coroot) = {rhs}")


def _require_strict(rd: BasedRootDatum, Q: QuadForm):
    if not is_strict(rd, Q):
        raise NotStrict(strictness_violations(rd, Q)[0])


def additive_order(x: int, N: int) -> int:
    return N // gcd(x % N, N)


def _integral_polarization(Q: QuadForm) -> list[list[int]]:
    U = Q.upper_matrix()
    r = Q.rank
    return [[U[i][j] + U[j][i] for j in range(r)] for i in range(r)]


# ---------------------------------------------------------------------------
# the sharp sublattice and its root datum

@dataclass
class SharpData:
    rd: BasedRootDatum
    Q: QuadForm
    basis: list[list[int]]  # rows: basis vectors of the sublattice in ambient coordinates
    multipliers: dict[int, int]
    datum: BasedRootDatum  # coordinates against ``basis``
    integral: bool

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def sharp_coroots(self):
        return self.datum.coroots

    @property
    def sharp_simple(self):
        return self.datum.simple_coroots

    def coordinates(self, v) -> list[int]:
        return ac.coordinates(self.basis, list(v), self.rd.rank)

    def ambient(self, y) -> list[int]:
        return [sum(y[a] * self.basis[a][i] for a in range(self.rank)) for i in range(self.rd.rank)]


def sharp_data(rd: BasedRootDatum, Q: QuadForm) -> SharpData:
    _require_strict(rd, Q)
    r, N = rd.rank, Q.N
    B = _integral_polarization(Q)
    basis = ac.preimage(B, [[N if i == j else 0 for i in range(r)] for j in range(r)], r, r) if r else []
    mult = {}
    coroots, roots = [], []
    integral = True
    for k, (a, ra) in enumerate(zip(rd.coroots, rd.roots)):
        m = additive_order(Q(a), N)
        mult[k] = m
        coroots.append(tuple(ac.coordinates(basis, [m * t for t in a], r)))
        vals = [pair(ra, v) for v in basis]
        if any(x % m for x in vals):
            integral = False
        roots.append(tuple(x // m for x in vals))
    datum = BasedRootDatum(f"{rd.name}#", len(basis), tuple(coroots), tuple(roots), rd.simple)
    return SharpData(rd, Q, basis, mult, datum, integral)


@dataclass
class DualPair:
    sharp: SharpData
    dual: BasedRootDatum
    center_characters: FgAbelianGroup
    problems: list[str] = field(default_factory=list)
    epsilon: "EpsilonReport | None" = None


def dual_root_datum(rd: BasedRootDatum, Q: QuadForm) -> DualPair:
    sh = sharp_data(rd, Q)
    G = sh.datum
    problems = [f"sharp datum: {p}" for p in validate(G)]
    if not sh.integral:
        problems.append("a divided root is not integral on the sharp lattice")
    dual = BasedRootDatum(f"{rd.name}^", G.rank, G.roots, G.coroots, G.simple)
    problems += [f"dual datum: {p}" for p in validate(dual)]
    s = G.rank
    if G.simple:
        center_chars = ac.cokernel(ac.transpose([list(v) for v in G.simple_coroots], s), len(G.simple))
    else:
        center_chars = FgAbelianGroup.free(s)
    if problems:
        raise RuntimeError("; ".join(problems))
    return DualPair(sh, dual, center_chars, problems)


# ---------------------------------------------------------------------------
# the epsilon pipeline

@dataclass
class Choices:
    """Representative choices the answer must not depend on."""

    lift: list[list[int]] | None = None  # added to the upper-triangular lift of Q, times N
    alternating: list[list[int]] | None = None  # D = -D^T added to the braiding matrix
    symmetric: list[list[int]] | None = None  # added to the trivialization
    shifts: dict | None = None  # group element -> coefficients on the subgroup basis


@dataclass
class EpsilonReport:
    N: int
    orders: tuple[int, ...]
    mod_two: bool  # built on the quotient by twice the lattice because the center is infinite
    symmon: SymMonExt
    values: dict
    canonical_agrees: bool
    _U: list[list[int]] = field(repr=False, default_factory=list)
    _keep: list[int] = field(repr=False, default_factory=list)

    def classify(self, y) -> tuple[int, ...]:
        """Group element of a vector of the sharp lattice (sharp coordinates)."""
        z = ac.matvec(self._U, list(y))
        return tuple(z[i] % d for i, d in zip(self._keep, self.orders))

    def at(self, y) -> int:
        return self.values[self.classify(y)]

    def on_generators(self) -> list[int]:
        n = len(self.orders)
        return [self.values[tuple(1 if t == i else 0 for t in range(n))] for i in range(n)]

    @property
    def trivial(self) -> bool:
        return not any(self.values.values())


def _braiding_matrix(sh: SharpData, Q: QuadForm, ch: Choices) -> list[list[int]]:
    """Upper-triangular integral lift of Q on the sharp lattice, plus an alternating adjustment."""
    r, s, N = Q.rank, sh.rank, Q.N
    U = Q.upper_matrix()
    if ch.lift:
        U = [[U[i][j] + (N * ch.lift[i][j] if j >= i else 0) for j in range(r)] for i in range(r)]
    G = [[sh.basis[a][i] for a in range(s)] for i in range(r)]
    M = ac.matmul(ac.matmul(ac.transpose(G, s), U, r, r), G, r, s)
    C = [[(M[a][b] + M[b][a] if b > a else M[a][a] if a == b else 0) for b in range(s)] for a in range(s)]
    if ch.alternating:
        C = [[C[a][b] + ch.alternating[a][b] for b in range(s)] for a in range(s)]
    return C


def _bil(C, x, y, N) -> int:
    return sum(x[a] * C[a][b] * y[b] for a in range(len(x)) for b in range(len(y)) if C[a][b]) % N


def epsilon_invariant(rd: BasedRootDatum, Q: QuadForm, choices: Choices | None = None,
                      pair_: DualPair | None = None) -> EpsilonReport:
    """Self-braiding of the extension of the center's character group.

    The braiding on the sharp lattice is the integral upper-triangular lift
    of Q, which is alternating mod N there.  On the sublattice spanned by
    the sharp coroots (plus twice the lattice when the quotient is
    infinite) it is trivialized by its strictly upper part; passing to
    representatives gives associator and braiding tables on the quotient.
    """
    ch = choices or Choices()
    dp = pair_ or dual_root_datum(rd, Q)
    sh = dp.sharp
    s, N = sh.rank, Q.N
    C = _braiding_matrix(sh, Q, ch)
    c = lambda x, y: _bil(C, x, y, N)  # noqa: E731

    gens = [list(v) for v in sh.datum.simple_coroots]
    mod_two = not dp.center_characters.is_finite
    if mod_two:
        gens += [[2 if i == j else 0 for i in range(s)] for j in range(s)]
    L0 = ac.lattice_basis(gens, s)
    t = len(L0)
    C0 = [[_bil(C, L0[i], L0[j], N) for j in range(t)] for i in range(t)]
    if any(C0[i][i] for i in range(t)) or any((C0[i][j] + C0[j][i]) % N for i in range(t) for j in range(t)):
        raise RuntimeError("braiding is not alternating on the trivialized sublattice")
    Phi = [[C0[i][j] if j > i else 0 for j in range(t)] for i in range(t)]
    if ch.symmetric:
        Phi = [[Phi[i][j] + ch.symmetric[i][j] for j in range(t)] for i in range(t)]

    def phi(x, y):
        return _bil(Phi, ac.coordinates(L0, x, s), ac.coordinates(L0, y, s), N)

    # quotient coordinates from the Smith form of the subgroup
    if t:
        sm = ac.smith(ac.transpose(L0, s), t)
        U, Uinv = sm.U, sm.U_inv
        diag = sm.diag + [0] * (s - sm.rank)
    else:
        U, Uinv, diag = ac.identity(s), ac.identity(s), [0] * s
    if any(d == 0 for d in diag):
        raise RuntimeError("quotient is not finite")
    keep = [i for i, d in enumerate(diag) if d != 1]
    orders = tuple(diag[i] for i in keep)
    elements = list(product(*[range(d) for d in orders]))

    def rep(g):
        y = [0] * s
        for i, v in zip(keep, g):
            y[i] = v
        x = ac.matvec(Uinv, y)
        if ch.shifts and any(g) and g in ch.shifts:
            sh_ = ch.shifts[g]
            x = [x[a] + sum(k * L0[j][a] for j, k in enumerate(sh_)) for a in range(s)]
        return x

    def add(g, h):
        return tuple((a + b) % d for a, b, d in zip(g, h, orders))

    R = {g: rep(g) for g in elements}

    def ell(g, h):
        return [R[add(g, h)][a] - R[g][a] - R[h][a] for a in range(s)]

    assoc, braid = {}, {}
    for g1, g2 in product(elements, repeat=2):
        v = c(R[g1], R[g2])
        if v:
            braid[(g1, g2)] = v
        l12 = ell(g1, g2)
        g12 = add(g1, g2)
        for g3 in elements:
            l23 = ell(g2, g3)
            v = (phi(l23, ell(g1, add(g2, g3))) - c(l12, R[g3]) - phi(l12, ell(g12, g3))) % N
            if v:
                assoc[(g1, g2, g3)] = v
    S = SymMonExt(orders, N, assoc, braid)
    bad = check_coherence(S)
    if bad is not None:
        raise RuntimeError(f"quotient extension fails {bad[0]} at {bad[1]}")
    values = inv(S)
    f = [values[tuple(1 if t_ == i else 0 for t_ in range(len(orders)))] for i in range(len(orders))]
    canon = inv(build_symmon_from_hom(orders, f, N)) == values
    return EpsilonReport(N, orders, mod_two, S, values, canon, U, keep)


def dual_pair(rd: BasedRootDatum, Q: QuadForm) -> DualPair:
    dp = dual_root_datum(rd, Q)
    dp.epsilon = epsilon_invariant(rd, Q, pair_=dp)
    return dp


@dataclass
class OracleReport:
    cases: int
    values: set
    reference: tuple[int, ...]

    @property
    def independent(self) -> bool:
        return len(self.values) == 1


def epsilon_oracle(rd: BasedRootDatum, Q: QuadForm, box: int = 1, shift_box: int = 1,
                   max_cases: int = 20000) -> OracleReport:
    """Run the pipeline over every combination of representative choices in small boxes."""
    dp = dual_root_datum(rd, Q)
    ref = epsilon_invariant(rd, Q, pair_=dp)
    r, s = rd.rank, dp.sharp.rank
    gens = [list(v) for v in dp.sharp.datum.simple_coroots]
    if not dp.center_characters.is_finite:
        gens += [[2 if i == j else 0 for i in range(s)] for j in range(s)]
    t = len(ac.lattice_basis(gens, s))
    rng = range(-box, box + 1)
    upper_r = [(i, j) for i in range(r) for j in range(i, r)]
    strict_s = [(a, b) for a in range(s) for b in range(a + 1, s)]
    sym_t = [(i, j) for i in range(t) for j in range(i, t)]
    nonzero = [g for g in product(*[range(d) for d in ref.orders]) if any(g)]
    shift_opts = list(product(range(-shift_box, shift_box + 1), repeat=t))

    def matrices(keys, n, antisym=False, sym=False):
        for vals in product(rng, repeat=len(keys)):
            M = [[0] * n for _ in range(n)]
            for (i, j), v in zip(keys, vals):
                M[i][j] += v
                if antisym:
                    M[j][i] -= v
                elif sym and i != j:
                    M[j][i] += v
            yield M

    values, cases = set(), 0
    for K in matrices(upper_r, r):
        for D in matrices(strict_s, s, antisym=True):
            for S in matrices(sym_t, t, sym=True):
                for sh in product(shift_opts, repeat=len(nonzero)):
                    ch = Choices(K, D, S, dict(zip(nonzero, sh)))
                    e = epsilon_invariant(rd, Q, ch, pair_=dp)
                    values.add(tuple(sorted(e.values.items())))
                    cases += 1
                    if cases >= max_cases:
                        return OracleReport(cases, values, tuple(ref.on_generators()))
    return OracleReport(cases, values, tuple(ref.on_generators()))


def linear_route_comparison(rd: BasedRootDatum, Q: QuadForm) -> dict:
    """Compare with the strictly commutative structure available when the integral form is even on the sharp lattice.

    That structure has zero self-braiding, so its invariant is zero.
    """
    dp = dual_pair(rd, Q)
    sh = dp.sharp
    B = _integral_polarization(Q)
    even = all(sum(x[i] * B[i][j] * y[j] for i in range(rd.rank) for j in range(rd.rank)) % 2 == 0
               for x in sh.basis for y in sh.basis)
    eps = dp.epsilon.on_generators()
    return {"applicable": even, "epsilon": eps, "linear_route": [0] * len(eps),
            "differ": even and any(eps)}


# ---------------------------------------------------------------------------
# independence of the simple system

@dataclass
class BorelCheck:
    w: tuple
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def borel_independence_check(rd: BasedRootDatum, Q: QuadForm, w, transport=None) -> BorelCheck:
    """Recompute everything for the simple system ``w(simple)`` and compare after transport.

    ``transport`` defaults to ``w``; passing the identity is a negative control.
    """
    w = tuple(tuple(r) for r in w)
    T = w if transport is None else tuple(tuple(r) for r in transport)
    rd2 = transform(rd, w)
    dp1, dp2 = dual_pair(rd, Q), dual_pair(rd2, Q)
    sh1, sh2 = dp1.sharp, dp2.sharp
    out = []
    if not ac.lattice_equal(sh1.basis, sh2.basis, rd.rank):
        out.append("sharp lattices differ")
        return BorelCheck(w, out)
    Wsh = [sh2.coordinates(act(T, v)) for v in sh1.basis]  # rows: images of basis vectors

    def move(y):
        return [sum(y[a] * Wsh[a][b] for a in range(len(y))) for b in range(sh2.rank)]

    for n, (i, j) in enumerate(zip(rd.simple, rd2.simple)):
        if move(sh1.datum.coroots[i]) != list(sh2.datum.coroots[j]):
            out.append(f"simple sharp coroot {n}: {list(sh1.datum.coroots[i])} does not go to "
                       f"{list(sh2.datum.coroots[j])}")
        if sh1.multipliers[i] != sh2.multipliers[j]:
            out.append(f"multiplier of simple coroot {n} changes")
    if dp1.dual.cartan() != dp2.dual.cartan():
        out.append("dual Cartan matrices differ")
    if dp1.center_characters != dp2.center_characters:
        out.append(f"center characters differ: {dp1.center_characters} vs {dp2.center_characters}")
    e1, e2 = dp1.epsilon, dp2.epsilon
    for y in product(range(-1, 2), repeat=sh1.rank):
        if e1.at(y) != e2.at(move(y)):
            out.append(f"epsilon differs at {list(y)}")
            break
    return BorelCheck(w, out)
