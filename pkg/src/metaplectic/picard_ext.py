"""Cocycle models for Picard groupoids and extensions by Z/N.

Groups are given by their cyclic orders (``0`` for a copy of Z) and
elements by coordinate tuples against those orders.  Central extensions
carry a biadditive cocycle matrix; symmetric monoidal extensions of finite
groups carry full associator and braiding tables so that the braiding on
the diagonal is never derived from anything else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from . import abelian_core as ac
from .abelian_core import ChainComplex, FgAbelianGroup
from .forms import Lattice


def _orders(base) -> tuple[int, ...]:
    if isinstance(base, Lattice):
        return (0,) * base.rank
    if isinstance(base, FgAbelianGroup):
        return tuple(base.orders())
    return tuple(base)


def _reduce(x, orders):
    return tuple(v % d if d else v for v, d in zip(x, orders))


def _add(x, y, orders):
    return tuple((a + b) % d if d else a + b for a, b, d in zip(x, y, orders))


def _neg(x, orders):
    return tuple((-a) % d if d else -a for a, d in zip(x, orders))


def _sample(orders, box: int = 2):
    """All elements of a finite group, or a box of small vectors on free factors."""
    ranges = [range(d) if d else range(-box, box + 1) for d in orders]
    return list(product(*ranges))


# ---------------------------------------------------------------------------
# Picard groupoids

@dataclass
class PicardGroupoid:
    """Objects are degree-0 vectors; a morphism ``x -> y`` is ``m`` in degree -1 with ``d(m) = y - x``."""

    presentation: ChainComplex

    def __post_init__(self):
        C = self.presentation
        if C.lo < -1 or C.hi > 0:
            raise ValueError("a Picard groupoid is presented by a complex in degrees [-1, 0]")

    @property
    def pi0(self) -> FgAbelianGroup:
        return ac.homology(self.presentation, 0)

    @property
    def pi1(self) -> FgAbelianGroup:
        return ac.homology(self.presentation, -1)

    def isomorphic(self, x, y) -> bool:
        C = self.presentation
        diff = [b - a for a, b in zip(x, y)]
        if not C.rank(-1):
            return not any(diff)
        return ac.in_span(ac.image_gens(C.d(-1), C.rank(-1)), diff, C.rank(0))

    def to_complex(self) -> ChainComplex:
        return self.presentation


def dictionary(C: ChainComplex) -> PicardGroupoid:
    return PicardGroupoid(C)


def two_term(d, m: int, n: int) -> ChainComplex:
    """``Z^m -> Z^n`` placed in degrees -1 and 0."""
    return ChainComplex(-1, 0, {-1: m, 0: n}, {-1: [list(r) for r in d]})


# ---------------------------------------------------------------------------
# Heisenberg extension of a lattice by its second symmetric power

def _sym_keys(r):
    return [(i, j) for i in range(r) for j in range(i, r)]


@dataclass
class HeisenbergExtension:
    """Pairs ``(s, x)`` with ``s`` in Sym^2 (monomial coordinates) and ``x`` in the lattice.

    The product is ``(s, x)(t, y) = (s + t + xy, x + y)``.  Dual elements are
    integer-valued functions ``q`` with ``q(0) = 0`` and bilinear
    polarization ``b``, in the coordinates ``q(e_k)``, ``b(e_k, e_k)``,
    ``b(e_k, e_l)`` for ``k < l``; such a ``q`` pairs with ``(s, x)`` as
    ``q(x) - b(s)``.
    """

    rank: int

    @property
    def sym_rank(self) -> int:
        return self.rank * (self.rank + 1) // 2

    @property
    def dual_rank(self) -> int:
        return self.rank + self.sym_rank

    def cocycle(self, x, y) -> tuple[int, ...]:
        out = []
        for i, j in _sym_keys(self.rank):
            out.append(x[i] * y[i] if i == j else x[i] * y[j] + x[j] * y[i])
        return tuple(out)

    def multiply(self, u, v):
        (s, x), (t, y) = u, v
        c = self.cocycle(x, y)
        return (tuple(a + b + e for a, b, e in zip(s, t, c)), tuple(a + b for a, b in zip(x, y)))

    def dual_value(self, q, x) -> int:
        """``q(x)`` from dual coordinates."""
        r = self.rank
        keys = _sym_keys(r)
        out = 0
        for k in range(r):
            out += q[k] * x[k]
        for n, (i, j) in enumerate(keys):
            bij = q[r + n]
            out += bij * (x[i] * (x[i] - 1) // 2 if i == j else x[i] * x[j])
        return out

    def pair(self, q, u) -> int:
        s, x = u
        return self.dual_value(q, x) - sum(q[self.rank + n] * s[n] for n in range(self.sym_rank))

    def coordinates(self, u) -> list[int]:
        """Coordinates of ``u`` against the basis dual to the dual coordinates."""
        basis = ac.identity(self.dual_rank)
        return [self.pair(q, u) for q in basis]

    def restriction_to_sym(self) -> list[list[int]]:
        """Matrix of dual coordinates -> functionals on Sym^2: the negated inclusion of forms."""
        r, m = self.rank, self.sym_rank
        return [[-1 if c == r + k else 0 for c in range(r + m)] for k in range(m)]

    def dual_homomorphism_failures(self, box: int = 2) -> list:
        """Sample check that every dual basis vector pairs additively with the product."""
        out = []
        pts = _sample((0,) * self.rank, box)
        syms = [tuple(1 if n == k else 0 for n in range(self.sym_rank)) for k in range(self.sym_rank)]
        syms.append((0,) * self.sym_rank)
        for q in ac.identity(self.dual_rank):
            for x, y in product(pts, pts):
                for s in syms:
                    u, v = (s, x), ((0,) * self.sym_rank, y)
                    if self.pair(q, self.multiply(u, v)) != self.pair(q, u) + self.pair(q, v):
                        out.append((tuple(q), u, v))
        return out

    def quotient_complex(self) -> ChainComplex:
        """``Lambda (x) Lambda -> H^(1)``: tensors go to products in Sym^2."""
        r = self.rank
        cols = []
        for i, j in product(range(r), repeat=2):
            x = tuple(1 if t == i else 0 for t in range(r))
            y = tuple(1 if t == j else 0 for t in range(r))
            s = self.cocycle(x, y)
            cols.append(self.coordinates((s, (0,) * r)))
        d = ac.transpose(cols, self.dual_rank) if cols else ac.zeros(self.dual_rank, 0)
        return two_term(d, r * r, self.dual_rank)


def heisenberg1(L) -> HeisenbergExtension:
    r = L.rank if isinstance(L, Lattice) else int(L)
    return HeisenbergExtension(r)


# ---------------------------------------------------------------------------
# central extensions with biadditive cocycles

@dataclass(frozen=True)
class ExtCocycle:
    orders: tuple[int, ...]
    N: int
    sigma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.orders)
        if len(self.sigma) != n or any(len(r) != n for r in self.sigma):
            raise ValueError("cocycle matrix does not match the base")
        sig = tuple(tuple(v % self.N for v in r) for r in self.sigma)
        object.__setattr__(self, "sigma", sig)
        for i, d in enumerate(self.orders):
            for j in range(n):
                if d and (d * sig[i][j] % self.N or d * sig[j][i] % self.N):
                    raise ValueError(f"cocycle is not well defined on generator {i} of order {d}")

    @classmethod
    def make(cls, base, beta, N: int) -> "ExtCocycle":
        return cls(_orders(base), N, tuple(tuple(r) for r in beta))

    def __call__(self, x, y) -> int:
        return sum(x[i] * self.sigma[i][j] * y[j]
                   for i in range(len(x)) for j in range(len(y))) % self.N

    def commutator_matrix(self) -> list[list[int]]:
        n = len(self.orders)
        return [[(self.sigma[i][j] - self.sigma[j][i]) % self.N for j in range(n)] for i in range(n)]

    def commutator(self, x, y) -> int:
        return (self(x, y) - self(y, x)) % self.N

    def diagonal(self) -> list[int]:
        return [self.sigma[i][i] for i in range(len(self.orders))]

    def multiply(self, u, v):
        (a, x), (b, y) = u, v
        return ((a + b + self(x, y)) % self.N, _add(x, y, self.orders))

    def __add__(self, other: "ExtCocycle") -> "ExtCocycle":
        return baer_sum(self, other)

    def negate(self) -> "ExtCocycle":
        return ExtCocycle(self.orders, self.N, tuple(tuple(-v for v in r) for r in self.sigma))

    def scale(self, k: int) -> "ExtCocycle":
        return ExtCocycle(self.orders, self.N, tuple(tuple(k * v for v in r) for r in self.sigma))

    def is_abelian(self) -> bool:
        return not any(any(r) for r in self.commutator_matrix())


def extension_from_bilinear(base, beta, N: int) -> ExtCocycle:
    return ExtCocycle.make(base, beta, N)


def baer_sum(e1: ExtCocycle, e2: ExtCocycle) -> ExtCocycle:
    if e1.orders != e2.orders or e1.N != e2.N:
        raise ValueError("Baer sum needs the same base and modulus")
    n = len(e1.orders)
    return ExtCocycle(e1.orders, e1.N, tuple(tuple(e1.sigma[i][j] + e2.sigma[i][j] for j in range(n))
                                             for i in range(n)))


@dataclass
class IsomorphismWitness:
    """``(a, x) -> (a + q(x), x)`` carries the second extension onto the first."""

    generator_values: tuple[int, ...]
    q: dict

    def __call__(self, x) -> int:
        return self.q[tuple(x)]


def _quadratic_function(gen_values, delta, N, x):
    out = 0
    n = len(x)
    for i in range(n):
        out += gen_values[i] * x[i] + delta[i][i] * (x[i] * (x[i] - 1) // 2)
    for i, j in combinations(range(n), 2):
        out += delta[i][j] * x[i] * x[j]
    return out % N


def isomorphism_witness(e1: ExtCocycle, e2: ExtCocycle, box: int = 2) -> IsomorphismWitness | None:
    """Search ``q`` with ``q(x+y) - q(x) - q(y) = sigma_1 - sigma_2``.

    Candidates are parametrized by ``q`` on generators; each is checked on
    every pair of the finite group, or of a box of lattice vectors.  Returns
    ``None`` if the commutators differ or no candidate works.
    """
    if e1.orders != e2.orders or e1.N != e2.N:
        raise ValueError("extensions over different bases")
    if e1.commutator_matrix() != e2.commutator_matrix():
        return None
    N, orders = e1.N, e1.orders
    n = len(orders)
    delta = [[(e1.sigma[i][j] - e2.sigma[i][j]) % N for j in range(n)] for i in range(n)]
    diff = lambda x, y: (e1(x, y) - e2(x, y)) % N  # noqa: E731
    pts = _sample(orders, box)
    for vals in product(range(N), repeat=n):
        q = {}
        ok = True
        for x in pts:
            v = _quadratic_function(vals, delta, N, x)
            key = _reduce(x, orders)
            if q.setdefault(key, v) != v:
                ok = False
                break
        if not ok:
            continue
        for x, y in product(pts, pts):
            s = _add(x, y, orders)
            if s not in q:
                continue
            if (q[s] - q[_reduce(x, orders)] - q[_reduce(y, orders)]) % N != diff(x, y):
                ok = False
                break
        if ok:
            return IsomorphismWitness(vals, q)
    return None


def witness_is_isomorphism(w: IsomorphismWitness, e1: ExtCocycle, e2: ExtCocycle, box: int = 2) -> bool:
    pts = _sample(e1.orders, box)
    N = e1.N
    phi = lambda u: ((u[0] + w(u[1])) % N, u[1])  # noqa: E731
    for x, y in product(pts, pts):
        s = _add(x, y, e1.orders)
        if s not in w.q:
            continue
        for a in (0, 1):
            u, v = (a, x), (0, y)
            if phi(e2.multiply(u, v)) != e1.multiply(phi(u), phi(v)):
                return False
    return True


# ---------------------------------------------------------------------------
# symmetric monoidal extensions of finite groups

class FiniteGroup:
    """Element table of a finite abelian group given by cyclic orders."""

    def __init__(self, orders):
        self.orders = _orders(orders)
        if any(d == 0 for d in self.orders):
            raise ValueError("finite group expected")
        self.elements = _sample(self.orders)
        self.zero = (0,) * len(self.orders)

    def add(self, x, y):
        return _add(x, y, self.orders)

    def neg(self, x):
        return _neg(x, self.orders)

    def __len__(self):
        return len(self.elements)


@dataclass
class SymMonExt:
    orders: tuple[int, ...]
    N: int
    associator: dict = field(repr=False)
    braiding: dict = field(repr=False)

    @property
    def group(self) -> FiniteGroup:
        return FiniteGroup(self.orders)

    def a(self, x, y, z) -> int:
        return self.associator.get((x, y, z), 0)

    def c(self, x, y) -> int:
        return self.braiding.get((x, y), 0)

    def __add__(self, other: "SymMonExt") -> "SymMonExt":
        if self.orders != other.orders or self.N != other.N:
            raise ValueError("sum needs the same base and modulus")
        N = self.N
        keys3 = set(self.associator) | set(other.associator)
        keys2 = set(self.braiding) | set(other.braiding)
        return SymMonExt(self.orders, N,
                         {k: (self.associator.get(k, 0) + other.associator.get(k, 0)) % N for k in keys3},
                         {k: (self.braiding.get(k, 0) + other.braiding.get(k, 0)) % N for k in keys2})

    def with_braiding(self, x, y, value) -> "SymMonExt":
        br = dict(self.braiding)
        br[(x, y)] = value % self.N
        return SymMonExt(self.orders, self.N, dict(self.associator), br)

    def pullback(self, phi, orders) -> "SymMonExt":
        """Restriction along the group map with generator images ``phi`` (columns)."""
        src = FiniteGroup(orders)
        n = len(self.orders)

        def f(x):
            return _reduce([sum(phi[i][k] * x[k] for k in range(len(x))) for i in range(n)], self.orders)

        im = {x: f(x) for x in src.elements}
        assoc = {}
        br = {}
        for x, y in product(src.elements, repeat=2):
            v = self.c(im[x], im[y])
            if v:
                br[(x, y)] = v
            for z in src.elements:
                v = self.a(im[x], im[y], im[z])
                if v:
                    assoc[(x, y, z)] = v
        return SymMonExt(src.orders, self.N, assoc, br)


def build_symmon_from_hom(G, f, N: int) -> SymMonExt:
    """Trivial associator; braiding ``eps = N/2`` exactly when both arguments have ``f = eps``.

    ``f`` lists values on the generators; it must kill twice the group.
    """
    grp = FiniteGroup(G)
    f = [v % N for v in f]
    if len(f) != len(grp.orders):
        raise ValueError("one value of f per generator")
    if any(f) and N % 2:
        raise ValueError("a nonzero f needs an even modulus")
    if any(2 * v % N or d * v % N for v, d in zip(f, grp.orders)):
        raise ValueError("f is not a homomorphism killing twice the group")
    eps = N // 2
    val = {x: sum(a * b for a, b in zip(f, x)) % N for x in grp.elements}
    br = {}
    for x, y in product(grp.elements, repeat=2):
        if any(f) and val[x] == eps and val[y] == eps:
            br[(x, y)] = eps
    return SymMonExt(grp.orders, N, {}, br)


def trivial_symmon(G, N: int) -> SymMonExt:
    return SymMonExt(FiniteGroup(G).orders, N, {}, {})


def check_coherence(s: SymMonExt, e2: bool = False):
    """First failing ``(axiom, elements)``, or ``None``.

    With ``e2`` the inverse axiom is skipped (braided rather than symmetric).
    """
    G = s.group
    N = s.N
    E = G.elements
    z = G.zero
    a, c, add = s.a, s.c, G.add
    for x, y in product(E, repeat=2):
        if a(z, x, y) or a(x, z, y) or a(x, y, z) or c(z, x) or c(x, z):
            return ("normalization", (x, y))
    for x, y, w in product(E, repeat=3):
        for v in E:
            lhs = a(add(x, y), w, v) + a(x, y, add(w, v))
            rhs = a(x, y, w) + a(x, add(y, w), v) + a(y, w, v)
            if (lhs - rhs) % N:
                return ("pentagon", (x, y, w, v))
        h1 = a(x, y, w) + c(x, add(y, w)) + a(y, w, x) - c(x, y) - a(y, x, w) - c(x, w)
        if h1 % N:
            return ("hexagon", (x, y, w))
        h2 = -a(x, y, w) + c(add(x, y), w) - a(w, x, y) - c(y, w) + a(x, w, y) - c(x, w)
        if h2 % N:
            return ("hexagon-inverse", (x, y, w))
    if not e2:
        for x, y in product(E, repeat=2):
            if (c(x, y) + c(y, x)) % N:
                return ("inverse", (x, y))
    return None


class IncoherentData(ValueError):
    pass


def inv(s: SymMonExt) -> dict:
    """``a -> braiding(a, a)``, checked to be a homomorphism killing twice the group."""
    bad = check_coherence(s)
    if bad is not None:
        raise IncoherentData(f"{bad[0]} fails at {bad[1]}")
    G = s.group
    out = {x: s.c(x, x) % s.N for x in G.elements}
    for x, y in product(G.elements, repeat=2):
        if (out[G.add(x, y)] - out[x] - out[y]) % s.N:
            raise IncoherentData(f"self-braiding is not additive at {(x, y)}")
    for x in G.elements:
        if out[G.add(x, x)]:
            raise IncoherentData(f"self-braiding does not kill 2*{x}")
    return out


def inv_on_generators(s: SymMonExt) -> list[int]:
    table = inv(s)
    n = len(s.orders)
    return [table[tuple(1 if t == i else 0 for t in range(n))] for i in range(n)]


# ---------------------------------------------------------------------------
# graded twisting

@dataclass
class GradedTwistedAlgebra:
    """Basis ``x_a`` over Z[zeta_N]; ``x_a x_b = zeta^sigma(a, b) x_{a+b}``.

    Monomials are ``(phase, a)`` meaning ``zeta^phase x_a``.
    """

    group: FiniteGroup
    N: int
    sigma: dict

    def multiply(self, u, v):
        (p, a), (q, b) = u, v
        return ((p + q + self.sigma[(a, b)]) % self.N, self.group.add(a, b))

    def table(self) -> dict:
        return {(a, b): self.multiply((0, a), (0, b)) for a, b in product(self.group.elements, repeat=2)}

    def associativity_failures(self) -> list:
        out = []
        E = self.group.elements
        for a, b, c in product(E, repeat=3):
            x, y, z = (0, a), (0, b), (0, c)
            if self.multiply(self.multiply(x, y), z) != self.multiply(x, self.multiply(y, z)):
                out.append((a, b, c))
        return out

    def cocycle_failures(self) -> list:
        G, s, N = self.group, self.sigma, self.N
        return [(a, b, c) for a, b, c in product(G.elements, repeat=3)
                if (s[(a, b)] + s[(G.add(a, b), c)] - s[(b, c)] - s[(a, G.add(b, c))]) % N]

    def commutation(self, a, b) -> int:
        """Phase ``k`` with ``x_a x_b = zeta^k x_b x_a``."""
        return (self.sigma[(a, b)] - self.sigma[(b, a)]) % self.N


def twist_graded_algebra(G, sigma) -> GradedTwistedAlgebra:
    """``sigma`` is an :class:`ExtCocycle` on a finite group, or ``(N, table)`` for an arbitrary function."""
    if isinstance(sigma, ExtCocycle):
        grp = FiniteGroup(sigma.orders)
        table = {(a, b): sigma(a, b) for a, b in product(grp.elements, repeat=2)}
        return GradedTwistedAlgebra(grp, sigma.N, table)
    N, table = sigma
    grp = FiniteGroup(G)
    full = {(a, b): table.get((a, b), 0) % N for a, b in product(grp.elements, repeat=2)}
    return GradedTwistedAlgebra(grp, N, full)
