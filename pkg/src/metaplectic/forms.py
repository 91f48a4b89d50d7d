"""Quadratic and bilinear forms, the degree-two functors and their diagram.

Also: coinvariant complexes for the swap action on ``L (x) L``, quadratic
refinements of finite pairings, and the homotopy-group skeleton of the
level-one and level-two theta data at a separably closed point.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from math import comb

from . import abelian_core as ac
from .abelian_core import FgAbelianGroup, PresentedGroup


@dataclass(frozen=True)
class Lattice:
    rank: int
    name: str = ""

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")


def _rank_of(L) -> int:
    return L.rank if isinstance(L, Lattice) else int(L)


# ---------------------------------------------------------------------------
# forms

@dataclass(frozen=True)
class BilinearFormModN:
    rank: int
    N: int
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows, N: int) -> "BilinearFormModN":
        return cls(len(rows), N, tuple(tuple(x % N for x in r) for r in rows))

    def __call__(self, x, y) -> int:
        return sum(x[i] * self.matrix[i][j] * y[j]
                   for i in range(self.rank) for j in range(self.rank)) % self.N

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    def is_symmetric(self) -> bool:
        return all(self.matrix[i][j] == self.matrix[j][i]
                   for i in range(self.rank) for j in range(self.rank))

    def is_alternating(self) -> bool:
        return self.is_symmetric_up_to_sign() and all(self.matrix[i][i] == 0 for i in range(self.rank))

    def is_symmetric_up_to_sign(self) -> bool:
        return all((self.matrix[i][j] + self.matrix[j][i]) % self.N == 0
                   for i in range(self.rank) for j in range(self.rank))

    def negate(self) -> "BilinearFormModN":
        return BilinearFormModN.from_rows([[-x for x in r] for r in self.matrix], self.N)

    def __add__(self, other):
        return BilinearFormModN.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)], self.N)


_VARS = "xyzwvu"


@dataclass(frozen=True)
class QuadForm:
    """``Q(x) = sum_{i<=j} q_ij x_i x_j mod N`` stored by its upper triangle."""

    rank: int
    N: int
    coeffs: tuple[tuple[tuple[int, int], int], ...] = ()

    @classmethod
    def from_dict(cls, rank: int, N: int, coeffs: dict) -> "QuadForm":
        clean = {}
        for (i, j), v in coeffs.items():
            if i > j:
                i, j = j, i
            if not (0 <= i < rank and 0 <= j < rank):
                raise ValueError(f"coefficient index {(i, j)} outside rank {rank}")
            clean[(i, j)] = (clean.get((i, j), 0) + v) % N
        return cls(rank, N, tuple(sorted((k, v) for k, v in clean.items() if v)))

    @classmethod
    def from_list(cls, rank: int, N: int, values) -> "QuadForm":
        """Coefficients in upper-triangular row order ``q00, q01, ..., q11, ...``."""
        keys = list(combinations_with_replacement(range(rank), 2))
        values = list(values)
        if len(values) != len(keys):
            raise ValueError(f"expected {len(keys)} coefficients, got {len(values)}")
        return cls.from_dict(rank, N, dict(zip(keys, values)))

    @classmethod
    def zero(cls, rank: int, N: int) -> "QuadForm":
        return cls(rank, N, ())

    @classmethod
    def parse(cls, text: str, rank: int, N: int) -> "QuadForm":
        """Accept a coefficient list ``[a, b, ...]`` or monomials like ``x^2-xy``."""
        text = text.strip()
        if text.startswith("["):
            return cls.from_list(rank, N, json.loads(text))
        if text.startswith("{"):
            return cls.from_json(text, rank)
        return cls.from_dict(rank, N, _parse_monomials(text, rank))

    @classmethod
    def from_json(cls, text: str, rank: int) -> "QuadForm":
        data = json.loads(text) if isinstance(text, str) else text
        coeffs = {}
        for key, v in data["coeffs"].items():
            i, j = (int(t) for t in key.split(","))
            coeffs[(i, j)] = v
        return cls.from_dict(rank, int(data["N"]), coeffs)

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": {f"{i},{j}": v for (i, j), v in self.coeffs}}

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.rank)

    def coeff(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return dict(self.coeffs).get((i, j), 0)

    def as_list(self) -> list[int]:
        return [self.coeff(i, j) for i, j in combinations_with_replacement(range(self.rank), 2)]

    def upper_matrix(self) -> list[list[int]]:
        """Integral upper-triangular lift with entries in ``[0, N)``."""
        M = ac.zeros(self.rank, self.rank)
        for (i, j), v in self.coeffs:
            M[i][j] = v
        return M

    def __call__(self, x) -> int:
        return sum(v * x[i] * x[j] for (i, j), v in self.coeffs) % self.N

    evaluate = __call__

    def polarize(self) -> BilinearFormModN:
        M = ac.zeros(self.rank, self.rank)
        for (i, j), v in self.coeffs:
            if i == j:
                M[i][i] += 2 * v
            else:
                M[i][j] += v
                M[j][i] += v
        return BilinearFormModN.from_rows(M, self.N)

    def __add__(self, other: "QuadForm") -> "QuadForm":
        if (self.rank, self.N) != (other.rank, other.N):
            raise ValueError("rank or modulus mismatch")
        d = dict(self.coeffs)
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return QuadForm.from_dict(self.rank, self.N, d)

    def scale(self, k: int) -> "QuadForm":
        return QuadForm.from_dict(self.rank, self.N, {key: k * v for key, v in self.coeffs})

    def reduce(self, M: int) -> "QuadForm":
        if self.N % M:
            raise ValueError("new modulus must divide the old one")
        return QuadForm.from_dict(self.rank, M, dict(self.coeffs))

    def pullback(self, g) -> "QuadForm":
        """``x -> Q(g x)`` for an integer matrix ``g`` (rank x new_rank)."""
        new_rank = len(g[0]) if g else 0
        d = {}
        for (i, j), v in self.coeffs:
            for a in range(new_rank):
                for b in range(new_rank):
                    c = v * g[i][a] * g[j][b]
                    if c:
                        key = (min(a, b), max(a, b))
                        d[key] = d.get(key, 0) + c
        return QuadForm.from_dict(new_rank, self.N, d)

    def __str__(self) -> str:
        names = _var_names(self.rank)
        terms = []
        for (i, j), v in self.coeffs:
            mono = f"{names[i]}^2" if i == j else f"{names[i]}{names[j]}"
            terms.append(mono if v == 1 else f"{v}{mono}")
        return (" + ".join(terms) if terms else "0") + f" mod {self.N}"


def _var_names(rank: int) -> list[str]:
    if rank <= len(_VARS):
        return list(_VARS[:rank])
    return [f"x{i + 1}" for i in range(rank)]


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*((?:[a-z]\d*(?:\^\d+)?)+)?")
_FACTOR = re.compile(r"([a-z])(\d*)(?:\^(\d+))?")


def _parse_monomials(text: str, rank: int) -> dict:
    names = _var_names(rank)
    index = {n: i for i, n in enumerate(names)}
    coeffs: dict = {}
    s = text.replace(" ", "")
    if not s or s == "0":
        return coeffs
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse quadratic form at column {pos + 1}: {text!r}")
        sign, num, mono = m.groups()
        pos = m.end()
        if not mono:
            raise ValueError(f"constant term in quadratic form: {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        idx = []
        for f in _FACTOR.finditer(mono):
            name = f.group(1) + f.group(2)
            if name not in index:
                raise ValueError(f"unknown variable {name!r} for rank {rank}")
            idx.extend([index[name]] * int(f.group(3) or 1))
        if len(idx) != 2:
            raise ValueError(f"monomial {mono!r} is not quadratic")
        key = (min(idx), max(idx))
        coeffs[key] = coeffs.get(key, 0) + c
    return coeffs


def polarize(Q: QuadForm) -> BilinearFormModN:
    return Q.polarize()


# ---------------------------------------------------------------------------
# the degree-two functors and the maps between them

def _sym_keys(r):
    return list(combinations_with_replacement(range(r), 2))


def _alt_keys(r):
    return list(combinations(range(r), 2))


def functor_groups(r: int) -> dict[str, PresentedGroup]:
    """Presentations on the standard generators of ``Z^r``."""
    sk, ak = _sym_keys(r), _alt_keys(r)
    tl = [f"e{i}(x)e{j}" for i in range(r) for j in range(r)]
    ant_rels = []
    for i, j in sk:
        v = [0] * (r * r)
        v[i * r + j] += 1
        v[j * r + i] += 1
        ant_rels.append(v)
    mod2 = [[2 if a == b else 0 for a in range(r)] for b in range(r)]
    return {
        "Tensor2": PresentedGroup(r * r, [], tl),
        "Sym2": PresentedGroup(len(sk), [], [f"e{i}e{j}" for i, j in sk]),
        "Gamma2": PresentedGroup(len(sk), [], [f"g{i}{j}" for i, j in sk]),
        "Wedge2": PresentedGroup(len(ak), [], [f"e{i}^e{j}" for i, j in ak]),
        "Ant2": PresentedGroup(r * r, ant_rels, [f"[{t}]" for t in tl]),
        "Mod2": PresentedGroup(r, mod2, [f"e{i}" for i in range(r)]),
    }


def functor_maps(r: int) -> dict[str, list[list[int]]]:
    """Matrices on generators for the maps of the degree-two diagram."""
    sk, ak = _sym_keys(r), _alt_keys(r)
    si = {k: n for n, k in enumerate(sk)}
    ai = {k: n for n, k in enumerate(ak)}
    T = r * r
    sym_to_gamma = ac.zeros(len(sk), len(sk))
    gamma_to_tensor = ac.zeros(T, len(sk))
    sym_to_tensor = ac.zeros(T, len(sk))
    gamma_to_mod2 = ac.zeros(r, len(sk))
    for n, (i, j) in enumerate(sk):
        if i == j:
            sym_to_gamma[n][n] = 2
            gamma_to_tensor[i * r + i][n] = 1
            sym_to_tensor[i * r + i][n] = 2
            gamma_to_mod2[i][n] = 1
        else:
            sym_to_gamma[n][n] = 1
            gamma_to_tensor[i * r + j][n] = 1
            gamma_to_tensor[j * r + i][n] = 1
            sym_to_tensor[i * r + j][n] = 1
            sym_to_tensor[j * r + i][n] = 1
    tensor_to_wedge = ac.zeros(len(ak), T)
    tensor_to_sym = ac.zeros(len(sk), T)
    for i in range(r):
        for j in range(r):
            if i < j:
                tensor_to_wedge[ai[(i, j)]][i * r + j] = 1
            elif i > j:
                tensor_to_wedge[ai[(j, i)]][i * r + j] = -1
            tensor_to_sym[si[(min(i, j), max(i, j))]][i * r + j] = 1
    wedge_to_tensor = ac.zeros(T, len(ak))
    for n, (i, j) in enumerate(ak):
        wedge_to_tensor[i * r + j][n] = 1
        wedge_to_tensor[j * r + i][n] = -1
    mod2_to_ant = ac.zeros(T, r)
    for i in range(r):
        mod2_to_ant[i * r + i][i] = 1
    return {
        "sym_to_gamma": sym_to_gamma,
        "gamma_to_tensor": gamma_to_tensor,
        "sym_to_tensor": sym_to_tensor,
        "gamma_to_mod2": gamma_to_mod2,
        "mod2_to_ant": mod2_to_ant,
        "tensor_to_ant": ac.identity(T),
        "tensor_to_wedge": tensor_to_wedge,
        "ant_to_wedge": [row[:] for row in tensor_to_wedge],
        "tensor_to_sym": tensor_to_sym,
        "wedge_to_tensor": wedge_to_tensor,
    }


# (name, first map, second map, groups) for every short exact sequence
SEQUENCES = [
    ("Sym2 -> Gamma2 -> L/2", "sym_to_gamma", "gamma_to_mod2", ("Sym2", "Gamma2", "Mod2")),
    ("Sym2 -> Tensor2 -> Ant2", "sym_to_tensor", "tensor_to_ant", ("Sym2", "Tensor2", "Ant2")),
    ("Gamma2 -> Tensor2 -> Wedge2", "gamma_to_tensor", "tensor_to_wedge", ("Gamma2", "Tensor2", "Wedge2")),
    ("L/2 -> Ant2 -> Wedge2", "mod2_to_ant", "ant_to_wedge", ("Mod2", "Ant2", "Wedge2")),
    ("Wedge2 -> Tensor2 -> Sym2", "wedge_to_tensor", "tensor_to_sym", ("Wedge2", "Tensor2", "Sym2")),
]

# (name, left composite, right composite, source, target)
SQUARES = [
    ("Sym2 -> Tensor2 through Gamma2", ("sym_to_gamma", "gamma_to_tensor"), ("sym_to_tensor",),
     "Sym2", "Tensor2"),
    ("Gamma2 -> Ant2 through L/2", ("gamma_to_mod2", "mod2_to_ant"), ("gamma_to_tensor", "tensor_to_ant"),
     "Gamma2", "Ant2"),
    ("Tensor2 -> Wedge2 through Ant2", ("tensor_to_ant", "ant_to_wedge"), ("tensor_to_wedge",),
     "Tensor2", "Wedge2"),
]


@dataclass
class FunctorValue:
    tag: str
    rank: int
    group: FgAbelianGroup
    presentation: PresentedGroup
    maps: dict[str, list[list[int]]]


def functor_apply(L, tag: str) -> FunctorValue:
    """The value of a degree-two functor on ``Z^r`` with the diagram maps."""
    r = _rank_of(L)
    groups = functor_groups(r)
    if tag not in groups or tag == "Mod2":
        raise ValueError(f"unknown functor {tag!r}")
    p = groups[tag]
    return FunctorValue(tag, r, p.group(), p, functor_maps(r))


def diagram_failures(L) -> list[str]:
    """Every exactness or commutativity failure in the degree-two diagram."""
    r = _rank_of(L)
    groups, maps = functor_groups(r), functor_maps(r)
    out = []
    for name, f, g, (a, b, c) in SEQUENCES:
        for why in ac.short_exact_failures(maps[f], maps[g], groups[a], groups[b], groups[c]):
            out.append(f"{name}: {why}")
    for name, left, right, src, tgt in SQUARES:
        def compose(chain):
            m = None
            for key in chain:
                m = maps[key] if m is None else ac.matmul(maps[key], m, ncols=groups[src].ngens)
            return m
        if not ac.maps_equal(compose(left), compose(right), groups[src], groups[tgt]):
            out.append(f"{name}: square does not commute")
    return out


# ---------------------------------------------------------------------------
# coinvariants of the swap

def _swap_matrices(r):
    T = r * r
    sym = ac.zeros(T, T)
    alt = ac.zeros(T, T)
    for i in range(r):
        for j in range(r):
            a, b = i * r + j, j * r + i
            sym[a][a] += 1
            sym[b][a] += 1
            alt[a][a] += 1
            alt[b][a] -= 1
    return sym, alt


def sigma2_complex(L, twisted: bool = False) -> ac.ChainComplex:
    """Four terms of the periodic complex computing swap coinvariants of ``L (x) L``.

    Degrees ``-3..0``; the twisted version uses the sign-twisted swap.
    """
    r = _rank_of(L)
    sym, alt = _swap_matrices(r)
    first, second = (sym, alt) if twisted else (alt, sym)
    T = r * r
    return ac.ChainComplex(-3, 0, {n: T for n in range(-3, 1)},
                           {-1: first, -2: second, -3: first})


def sigma2_homology(L, twisted: bool = False):
    """``(H^0, H^-1, H^-2)`` of :func:`sigma2_complex`."""
    C = sigma2_complex(L, twisted)
    return tuple(ac.homology(C, n) for n in (0, -1, -2))


# ---------------------------------------------------------------------------
# quadratic refinements of finite pairings

class ValueGroupTooSmall(ValueError):
    """No quadratic refinement exists with values in the requested group."""


def _elements(orders):
    return list(product(*[range(d) for d in orders]))


def _pair(b, M, x, y):
    return sum(x[i] * b[i][j] * y[j] for i in range(len(x)) for j in range(len(y))) % M


@dataclass
class FiniteQuadFunction:
    """A function on a finite abelian group with values in ``Z/M``.

    Elements are coordinate tuples against ``orders``.  ``pairing`` is the
    generator matrix of the symmetric pairing it is meant to refine.
    """

    orders: tuple[int, ...]
    M: int
    values: dict
    pairing: list[list[int]]
    canonical: bool = False

    @property
    def group(self) -> FgAbelianGroup:
        return FgAbelianGroup.from_orders(self.orders)

    def __call__(self, x) -> int:
        return self.values[tuple(k % d for k, d in zip(x, self.orders))]

    def polarization_failures(self) -> list[tuple]:
        out = []
        for x in self.values:
            for y in self.values:
                s = tuple((a + b) % d for a, b, d in zip(x, y, self.orders))
                lhs = (self.values[s] - self.values[x] - self.values[y]) % self.M
                if lhs != _pair(self.pairing, self.M, x, y):
                    out.append((x, y))
        return out


def _as_orders(G) -> tuple[int, ...]:
    if isinstance(G, FgAbelianGroup):
        if G.free_rank:
            raise ValueError("group must be finite")
        return tuple(G.torsion)
    return tuple(int(d) for d in G)


def quadratic_refinements(G, pairing, M: int, half=None, allow_empty: bool = False):
    """All ``Q`` with ``Q(0) = 0`` and ``Q(x+y) - Q(x) - Q(y) = pairing(x, y)``.

    ``G`` is a finite group or a list of cyclic orders; ``pairing`` is its
    generator matrix with values in ``Z/M``.  When ``half`` is given the
    refinement ``x -> half(x, x)`` is flagged canonical.  An empty answer
    raises :class:`ValueGroupTooSmall` unless ``allow_empty``.
    """
    orders = _as_orders(G)
    k = len(orders)
    b = [[pairing[i][j] % M for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(k):
            if b[i][j] != b[j][i]:
                raise ValueError("pairing is not symmetric")
            if (orders[i] * b[i][j]) % M:
                raise ValueError("pairing is not well defined on the group")
    elems = _elements(orders)
    out = []
    for gen_values in product(range(M), repeat=k):
        vals = {}
        for x in elems:
            v = 0
            for i in range(k):
                v += x[i] * gen_values[i] + comb(x[i], 2) * b[i][i]
            for i, j in combinations(range(k), 2):
                v += x[i] * x[j] * b[i][j]
            vals[x] = v % M
        q = FiniteQuadFunction(orders, M, vals, b)
        if q.polarization_failures():
            continue
        if half is not None:
            q.canonical = all(vals[x] == _pair(half, M, x, x) for x in elems)
        out.append(q)
    if not out and not allow_empty:
        raise ValueGroupTooSmall(f"no refinement of the pairing with values in Z/{M}")
    return out


def binomial_identity_check(Q: FiniteQuadFunction, a, N: int, pairing=None) -> bool:
    """``N Q(a) = C(N, 2) b(a, a) + Q(N a)`` in ``Z/M`` for an element with ``N a = 0``."""
    a = tuple(a)
    if any((N * x) % d for x, d in zip(a, Q.orders)):
        raise ValueError("N * a is not zero")
    b = Q.pairing if pairing is None else pairing
    Na = tuple((N * x) % d for x, d in zip(a, Q.orders))
    lhs = (N * Q(a)) % Q.M
    rhs = (comb(N, 2) * _pair(b, Q.M, a, a) + Q(Na)) % Q.M
    return lhs == rhs


# ---------------------------------------------------------------------------
# theta-data skeleta

@dataclass
class ThetaSkeleton:
    rank: int
    N: int
    level: int
    pi0: FgAbelianGroup
    pi1: FgAbelianGroup
    pi2: FgAbelianGroup
    routes: dict[str, tuple[FgAbelianGroup, FgAbelianGroup, FgAbelianGroup]] = field(default_factory=dict)
    extra_degrees: dict[str, dict[int, FgAbelianGroup]] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        vals = list(self.routes.values())
        return all(v == vals[0] for v in vals) and not any(self.extra_degrees.values())

    def expected(self) -> tuple[FgAbelianGroup, FgAbelianGroup, FgAbelianGroup]:
        zn = FgAbelianGroup.cyclic(self.N)
        r = self.rank
        if self.level == 1:
            return zn.power(comb(r, 2)), zn.power(r), FgAbelianGroup()
        return zn.power(comb(r + 1, 2)), FgAbelianGroup(), zn.power(r)


def _homotopy(C: ac.ChainComplex):
    groups = {n: ac.homology(C, n) for n in range(C.lo, C.hi + 1)}
    pis = tuple(groups.get(-k, FgAbelianGroup()) for k in range(3))
    extra = {n: g for n, g in groups.items() if not (-2 <= n <= 0) and not g.is_trivial}
    return pis, extra


def _conc(rank, degree=0):
    return ac.concentrated(rank, degree)


def theta_skeleton(L, N: int, level: int) -> ThetaSkeleton:
    """Homotopy groups of the level-1 or level-2 theta data, three ways.

    Routes: the split triangle, the pushout square and the pullback square.
    The maps built from the torsor of ``N``th roots of ``-1`` are zero at a
    separably closed point because their sources are free, so the squares
    are assembled with zero in those slots.
    """
    if level not in (1, 2):
        raise ValueError("level must be 1 or 2")
    r = _rank_of(L)
    mp = functor_maps(r)
    nsym, nalt, T = comb(r + 1, 2), comb(r, 2), r * r
    nquad = r + nsym
    mod = lambda C: ac.mod_n(C, N)  # noqa: E731
    lin = mod(_conc(r))
    # quadratic functions -> their polarization as a symmetric tensor
    proj = ac.zeros(nsym, nquad)
    for k in range(nsym):
        proj[k][r + k] = 1
    routes, extra = {}, {}

    if level == 1:
        A = ac.shift(lin, 1)
        W = mod(_conc(nalt))
        triangle = ac.direct_sum(A, W)
        G = mod(_conc(nsym))
        Tn = mod(_conc(T))
        incl = ac.mod_n_map({0: mp["gamma_to_tensor"]}, _conc(nsym), _conc(T))
        push = ac.cone(ac.pair_map({}, incl, G, A, Tn), G, ac.direct_sum(A, Tn))
        H1 = ac.shift(mod(_conc(nquad)), 1)
        G1 = ac.shift(G, 1)
        pr = ac.shift_map(ac.mod_n_map({0: proj}, _conc(nquad), _conc(nsym)), 1)
        src = ac.direct_sum(W, H1)
        pull = ac.fiber(ac.sum_maps({}, pr, W, H1, G1), src, G1)
    else:
        A = ac.shift(lin, 2)
        S = mod(_conc(nsym))
        triangle = ac.direct_sum(A, S)
        W = mod(_conc(nalt))
        Tn = mod(_conc(T))
        incl = ac.mod_n_map({0: mp["wedge_to_tensor"]}, _conc(nalt), _conc(T))
        push = ac.cone(ac.pair_map({}, incl, W, A, Tn), W, ac.direct_sum(A, Tn))
        to_tensor = [[-x for x in row] for row in ac.matmul(mp["gamma_to_tensor"], proj, ncols=nquad)]
        dual_heis = ac.ChainComplex(0, 1, {0: nquad, 1: T}, {0: to_tensor})
        W1 = _conc(nalt, 1)
        p = {1: mp["tensor_to_wedge"]}
        H2 = ac.shift(mod(dual_heis), 2)
        Wt = ac.shift(mod(W1), 2)
        pr = ac.shift_map(ac.mod_n_map(p, dual_heis, W1), 2)
        src = ac.direct_sum(S, H2)
        pull = ac.fiber(ac.sum_maps({}, pr, S, H2, Wt), src, Wt)

    for name, C in (("triangle", triangle), ("pushout", push), ("pullback", pull)):
        routes[name], extra[name] = _homotopy(C)
    pi0, pi1, pi2 = routes["triangle"]
    return ThetaSkeleton(r, N, level, pi0, pi1, pi2, routes, extra)
