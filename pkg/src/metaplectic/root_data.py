"""Based reduced root data, Weyl groups, companions and strict quadratic forms.

A datum lives on the cocharacter lattice ``Z^rank``.  ``coroots[k]`` is a
vector of that lattice and ``roots[k]`` the matching functional; the pairing
is the dot product.  ``simple`` indexes the simple coroots.

Catalog basis conventions:

* ``An_sc`` etc.: basis of simple coroots, so coroots are ``e_i`` and the
  roots are the columns of the Cartan matrix ``a_ij = <root_j, coroot_i>``.
* ``An_ad`` etc.: basis of fundamental coweights, so roots are ``e_j`` and
  coroots are the rows of the Cartan matrix.
* ``SLn = A(n-1)_sc``, ``PGLn = A(n-1)_ad``, ``Spin_n`` is simply connected.
* ``GLn``: ``Z^n`` with coroots and roots ``e_i - e_j``.
* ``Sp2n``: ``Z^n``, roots ``+-e_i+-e_j, +-2e_i``, coroots ``+-e_i+-e_j, +-e_i``.
* ``SO(2n+1)``: ``Z^n``, roots ``+-e_i+-e_j, +-e_i``, coroots ``+-e_i+-e_j, +-2e_i``.
* ``SO(2n)``: ``Z^n``, roots and coroots ``+-e_i+-e_j``.
* Products join names with ``x``, e.g. ``SL2xSL2`` or ``A1xA1``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import abelian_core as ac
from .abelian_core import FgAbelianGroup
from .forms import QuadForm

Vec = tuple[int, ...]


def pair(x, y) -> int:
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class BasedRootDatum:
    name: str
    rank: int
    coroots: tuple[Vec, ...]
    roots: tuple[Vec, ...]
    simple: tuple[int, ...]

    @property
    def simple_coroots(self) -> list[Vec]:
        return [self.coroots[i] for i in self.simple]

    @property
    def simple_roots(self) -> list[Vec]:
        return [self.roots[i] for i in self.simple]

    def positive_indices(self) -> list[int]:
        basis = [list(v) for v in self.simple_coroots]
        out = []
        for k, c in enumerate(self.coroots):
            x = ac.solve_integer(ac.transpose(basis, self.rank), list(c), len(basis)) if basis else None
            if x is not None and all(t >= 0 for t in x) and any(x):
                out.append(k)
        return out

    def cartan(self) -> list[list[int]]:
        """``a_ij = <root_j, coroot_i>`` over the simple system."""
        return [[pair(self.roots[j], self.coroots[i]) for j in self.simple] for i in self.simple]

    def reflect(self, k: int, lam) -> Vec:
        a, ra = self.coroots[k], self.roots[k]
        t = pair(ra, lam)
        return tuple(x - t * y for x, y in zip(lam, a))

    def reflect_dual(self, k: int, phi) -> Vec:
        a, ra = self.coroots[k], self.roots[k]
        t = pair(phi, a)
        return tuple(x - t * y for x, y in zip(phi, ra))

    def reflection_matrix(self, k: int) -> tuple[Vec, ...]:
        a, ra = self.coroots[k], self.roots[k]
        return tuple(tuple((1 if i == j else 0) - a[i] * ra[j] for j in range(self.rank))
                     for i in range(self.rank))

    def index_of_coroot(self, v) -> int | None:
        v = tuple(v)
        for k, c in enumerate(self.coroots):
            if c == v:
                return k
        return None

    def to_text(self) -> str:
        """The datum in the file grammar read by the command line."""
        vecs = lambda vs: "[" + ", ".join("[" + ", ".join(str(x) for x in v) + "]" for v in vs) + "]"  # noqa: E731
        return (f"name = {self.name}\nrank = {self.rank}\ncoroots = {vecs(self.coroots)}\n"
                f"roots = {vecs(self.roots)}\nsimple = [{', '.join(str(i) for i in self.simple)}]\n")


# ---------------------------------------------------------------------------
# validation

def validate(rd: BasedRootDatum) -> list[str]:
    """All axiom violations; an empty list means the datum is valid."""
    out = []
    r = rd.rank
    if len(rd.coroots) != len(rd.roots):
        return [f"{len(rd.coroots)} coroots but {len(rd.roots)} roots"]
    for k, (c, ro) in enumerate(zip(rd.coroots, rd.roots)):
        if len(c) != r or len(ro) != r:
            out.append(f"pair {k}: vector length differs from rank {r}")
    if out:
        return out
    for k, (c, ro) in enumerate(zip(rd.coroots, rd.roots)):
        p = pair(ro, c)
        if p != 2:
            out.append(f"pair {k}: <root, coroot> = {p} != 2 (coroot {list(c)}, root {list(ro)})")
    if len(set(rd.coroots)) != len(rd.coroots):
        out.append("repeated coroot")
    pos = {c: k for k, c in enumerate(rd.coroots)}
    for k in range(len(rd.coroots)):
        for m, (c, ro) in enumerate(zip(rd.coroots, rd.roots)):
            img = rd.reflect(k, c)
            j = pos.get(img)
            if j is None:
                out.append(f"reflection in coroot {k} sends coroot {m} outside the set")
            elif rd.roots[j] != rd.reflect_dual(k, ro):
                out.append(f"reflection in coroot {k} breaks the coroot/root matching at {m}")
    for k, c in enumerate(rd.coroots):
        if tuple(2 * x for x in c) in pos:
            out.append(f"coroot {k} is divisible: twice it is also a coroot")
    for i in rd.simple:
        if not 0 <= i < len(rd.coroots):
            out.append(f"simple index {i} out of range")
    if out or not rd.coroots:
        return out
    basis = [list(v) for v in rd.simple_coroots]
    if ac.lattice_basis(basis, r) and len(ac.lattice_basis(basis, r)) != len(basis):
        out.append("simple coroots are linearly dependent")
        return out
    orbit = set(rd.simple_coroots)
    frontier = list(orbit)
    while frontier:
        nxt = []
        for v in frontier:
            for i in rd.simple:
                w = rd.reflect(i, v)
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    for k, c in enumerate(rd.coroots):
        if c not in orbit:
            out.append(f"coroot {k} is not a Weyl image of a simple coroot")
        x = ac.solve_integer(ac.transpose(basis, r), list(c), len(basis))
        if x is None or not (all(t >= 0 for t in x) or all(t <= 0 for t in x)):
            out.append(f"coroot {k} is neither a positive nor a negative combination of simple coroots")
    return out


# ---------------------------------------------------------------------------
# construction and catalog

def generate(name: str, rank: int, simple_coroots, simple_roots) -> BasedRootDatum:
    """Close a simple system under simple reflections.

    Positive coroots come first ordered by height, then their negatives.
    """
    sc = [tuple(v) for v in simple_coroots]
    sr = [tuple(v) for v in simple_roots]
    n = len(sc)
    pairs = {c: ro for c, ro in zip(sc, sr)}
    queue = deque(sc)
    while queue:
        c = queue.popleft()
        ro = pairs[c]
        for a, ra in zip(sc, sr):
            t = pair(ra, c)
            c2 = tuple(x - t * y for x, y in zip(c, a))
            if c2 not in pairs:
                s = pair(ro, a)
                pairs[c2] = tuple(x - s * y for x, y in zip(ro, ra))
                queue.append(c2)
    basis = ac.transpose([list(v) for v in sc], rank)
    pos = []
    for c in pairs:
        x = ac.solve_integer(basis, list(c), n) if n else None
        if x is not None and all(t >= 0 for t in x):
            pos.append((sum(x), tuple(x), c))
    pos.sort()
    ordered = [c for _, _, c in pos] + [tuple(-t for t in c) for _, _, c in pos]
    coroots = tuple(ordered)
    roots = tuple(pairs[c] for c in ordered)
    simple = tuple(coroots.index(c) for c in sc)
    return BasedRootDatum(name, rank, coroots, roots, simple)


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    """Cartan matrix ``a_ij = <root_j, coroot_i>``, Bourbaki numbering."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j], A[j][i] = aij, aji

    if kind == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif kind in ("B", "C"):
        if n < 2:
            raise ValueError(f"{kind}{n} needs rank at least 2")
        for i in range(n - 2):
            link(i, i + 1)
        if kind == "B":
            link(n - 2, n - 1, -1, -2)
        else:
            link(n - 2, n - 1, -2, -1)
    elif kind == "D":
        if n < 3:
            raise ValueError("D needs rank at least 3")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif kind == "E":
        if n not in (6, 7, 8):
            raise ValueError("E needs rank 6, 7 or 8")
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif kind == "F":
        if n != 4:
            raise ValueError("F needs rank 4")
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif kind == "G":
        if n != 2:
            raise ValueError("G needs rank 2")
        link(0, 1, -3, -1)
    else:
        raise ValueError(f"unknown Cartan type {kind!r}")
    return A


def from_cartan(name: str, A, form: str) -> BasedRootDatum:
    n = len(A)
    if form == "sc":
        cor = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
        ro = [[A[i][j] for i in range(n)] for j in range(n)]
    elif form == "ad":
        cor = [list(A[i]) for i in range(n)]
        ro = [[1 if k == j else 0 for k in range(n)] for j in range(n)]
    else:
        raise ValueError(f"unknown form {form!r}")
    return generate(name, n, cor, ro)


def _unit(n, i, k=1):
    return [k if t == i else 0 for t in range(n)]


def _gl(n):
    cor = [[(1 if t == i else -1 if t == i + 1 else 0) for t in range(n)] for i in range(n - 1)]
    return generate(f"GL{n}", n, cor, cor)


def _sp(n):
    cor = [[(1 if t == i else -1 if t == i + 1 else 0) for t in range(n)] for i in range(n - 1)]
    ro = [list(v) for v in cor]
    cor.append(_unit(n, n - 1))
    ro.append(_unit(n, n - 1, 2))
    return generate(f"Sp{2 * n}", n, cor, ro)


def _so_odd(n):
    cor = [[(1 if t == i else -1 if t == i + 1 else 0) for t in range(n)] for i in range(n - 1)]
    ro = [list(v) for v in cor]
    cor.append(_unit(n, n - 1, 2))
    ro.append(_unit(n, n - 1))
    return generate(f"SO{2 * n + 1}", n, cor, ro)


def _so_even(n):
    cor = [[(1 if t == i else -1 if t == i + 1 else 0) for t in range(n)] for i in range(n - 1)]
    cor.append([(1 if t in (n - 2, n - 1) else 0) for t in range(n)])
    return generate(f"SO{2 * n}", n, cor, cor)


def product(name: str, *data: BasedRootDatum) -> BasedRootDatum:
    rank = sum(d.rank for d in data)
    cor, ro = [], []
    offset = 0
    for d in data:
        for c, r in zip(d.simple_coroots, d.simple_roots):
            cor.append([0] * offset + list(c) + [0] * (rank - offset - d.rank))
            ro.append([0] * offset + list(r) + [0] * (rank - offset - d.rank))
        offset += d.rank
    return generate(name, rank, cor, ro)


_TYPE = re.compile(r"^([A-G])(\d+)(?:_(sc|ad))?$")


def _single(name: str) -> BasedRootDatum:
    m = _TYPE.match(name)
    if m:
        kind, n, form = m.group(1), int(m.group(2)), m.group(3) or "sc"
        return from_cartan(name, cartan_matrix(kind, n), form)
    m = re.match(r"^(SL|GL|PGL|Sp|SO|Spin)(\d+)$", name)
    if m:
        fam, n = m.group(1), int(m.group(2))
        if fam == "SL" and n >= 2:
            return from_cartan(name, cartan_matrix("A", n - 1), "sc")
        if fam == "PGL" and n >= 2:
            return from_cartan(name, cartan_matrix("A", n - 1), "ad")
        if fam == "GL" and n >= 1:
            return _gl(n)
        if fam == "Sp" and n >= 2 and n % 2 == 0:
            return _sp(n // 2)
        if fam == "SO" and n >= 3 and n % 2 == 1:
            return _so_odd(n // 2)
        if fam == "SO" and n >= 4 and n % 2 == 0:
            return _so_even(n // 2)
        if fam == "Spin" and n >= 5:
            kind = "B" if n % 2 else "D"
            return from_cartan(name, cartan_matrix(kind, n // 2), "sc")
    if name in ("Gm", "T1"):
        return generate(name, 1, [], [])
    raise ValueError(f"unknown root datum {name!r}")


def catalog(name: str) -> BasedRootDatum:
    """A catalog datum; see the module docstring for basis conventions."""
    parts = name.split("x")
    # "x" never occurs inside a single catalog name
    if len(parts) == 1:
        return _single(name)
    return product(name, *[_single(p) for p in parts])


CATALOG_NAMES = ["SL2", "SL3", "GL1", "GL2", "GL3", "PGL2", "PGL3", "Sp4", "SO5", "SO4", "Spin5",
                 "A1", "A2", "A2_ad", "B2", "B2_ad", "C2", "G2", "A1xA1", "SL2xSL2", "A3", "B3", "C3"]


# ---------------------------------------------------------------------------
# Weyl groups

@dataclass
class WeylGroup:
    """Elements as integer matrices acting on the cocharacter lattice."""

    elements: list[tuple[Vec, ...]]
    lengths: list[int]
    words: list[tuple[int, ...]]
    complete: bool
    simple: tuple[int, ...]
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {w: k for k, w in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def index(self, w) -> int:
        return self._index[tuple(tuple(r) for r in w)]

    def stratum(self, n: int) -> list[int]:
        return [k for k, l in enumerate(self.lengths) if l == n]

    def reduced_words(self, k: int, rd: BasedRootDatum) -> list[tuple[int, ...]]:
        """All reduced words of a length-two element (single word otherwise)."""
        if self.lengths[k] != 2:
            return [self.words[k]]
        out = []
        for a in self.simple:
            for b in self.simple:
                if a != b and _mul(rd.reflection_matrix(a), rd.reflection_matrix(b)) == self.elements[k]:
                    out.append((a, b))
        return out

    def below(self, u: int, w: int, rd: BasedRootDatum) -> bool:
        """Bruhat order through the subword property of a reduced word of ``w``."""
        word = self.words[w]
        target = self.elements[u]
        n = len(word)
        for mask in range(1 << n):
            m = _identity(len(target))
            for i in range(n):
                if mask >> i & 1:
                    m = _mul(m, rd.reflection_matrix(word[i]))
            if m == target:
                return True
        return False


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mul(A, B):
    n = len(B[0]) if B else 0
    return tuple(tuple(sum(a * B[k][j] for k, a in enumerate(row)) for j in range(n)) for row in A)


class WeylGroupTooLarge(RuntimeError):
    pass


def weyl_group(rd: BasedRootDatum, cap: int = 10_000, strict_cap: bool = False) -> WeylGroup:
    """Breadth-first generation by simple reflections; depth is the length.

    Beyond ``cap`` elements only lengths up to two are kept and the group is
    marked incomplete, or :class:`WeylGroupTooLarge` is raised if
    ``strict_cap``.
    """
    gens = [(i, rd.reflection_matrix(i)) for i in rd.simple]
    e = _identity(rd.rank)
    elements, lengths, words = [e], [0], [()]
    seen = {e}
    frontier = [(e, ())]
    depth = 0
    complete = True
    while frontier:
        depth += 1
        nxt = []
        for w, word in frontier:
            for i, s in gens:
                v = _mul(w, s)
                if v not in seen:
                    seen.add(v)
                    nxt.append((v, word + (i,)))
        if len(elements) + len(nxt) > cap:
            if strict_cap:
                raise WeylGroupTooLarge(f"Weyl group of {rd.name} exceeds {cap} elements")
            complete = False
            if depth > 2:
                break
        for v, word in nxt:
            elements.append(v)
            lengths.append(depth)
            words.append(word)
        frontier = nxt
        if not complete and depth >= 2:
            break
    return WeylGroup(elements, lengths, words, complete, rd.simple)


def act(w, lam) -> Vec:
    return tuple(sum(a * x for a, x in zip(row, lam)) for row in w)


def act_dual(w, phi) -> Vec:
    """Contragredient action: ``phi -> phi o w^-1``; ``w`` is unimodular."""
    inv = _inverse(w)
    n = len(phi)
    return tuple(sum(phi[i] * inv[i][j] for i in range(n)) for j in range(n))


def _inverse(w):
    n = len(w)
    cols = []
    for j in range(n):
        x = ac.solve_integer([list(r) for r in w], [1 if i == j else 0 for i in range(n)], n)
        cols.append(x)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def transform(rd: BasedRootDatum, w) -> BasedRootDatum:
    """The same coroot set with simple system ``w(simple)``."""
    simple = []
    for i in rd.simple:
        k = rd.index_of_coroot(act(w, rd.coroots[i]))
        if k is None:
            raise ValueError("matrix does not preserve the coroots")
        simple.append(k)
    return BasedRootDatum(rd.name, rd.rank, rd.coroots, rd.roots, tuple(simple))


# ---------------------------------------------------------------------------
# companions and pi_1

@dataclass
class Companions:
    sc: BasedRootDatum
    ad: BasedRootDatum
    pi1: FgAbelianGroup
    pi1_presentation: list[list[int]]
    sc_to_lattice: list[list[int]]
    lattice_to_ad: list[list[int]]


def companions(rd: BasedRootDatum) -> Companions:
    """Simply connected and adjoint data on the coroot and coweight lattices."""
    A = rd.cartan()
    n = len(A)
    sc = from_cartan(f"{rd.name}_sc", A, "sc") if n else generate(f"{rd.name}_sc", 0, [], [])
    ad = from_cartan(f"{rd.name}_ad", A, "ad") if n else generate(f"{rd.name}_ad", 0, [], [])
    incl = ac.transpose([list(v) for v in rd.simple_coroots], rd.rank) if n else ac.zeros(rd.rank, 0)
    to_ad = [list(v) for v in rd.simple_roots]
    pi1 = ac.cokernel(incl, n) if rd.rank else FgAbelianGroup()
    return Companions(sc, ad, pi1, incl, incl, to_ad)


def pi1_generators(rd: BasedRootDatum) -> list[Vec]:
    """Lifts to the lattice of generators of ``pi_1``."""
    n = len(rd.simple)
    if not rd.rank:
        return []
    if not n:
        return [tuple(v) for v in ac.identity(rd.rank)]
    s = ac.smith(ac.transpose([list(v) for v in rd.simple_coroots], rd.rank), n)
    out = []
    for i in range(rd.rank):
        d = s.diag[i] if i < s.rank else 0
        if d != 1:
            out.append(tuple(s.U_inv_T[i]))
    return out


def simple_factors(rd: BasedRootDatum) -> int:
    """Connected components of the Dynkin diagram."""
    A = rd.cartan()
    n = len(A)
    seen, comps = set(), 0
    for s in range(n):
        if s in seen:
            continue
        comps += 1
        stack = [s]
        while stack:
            i = stack.pop()
            if i in seen:
                continue
            seen.add(i)
            stack.extend(j for j in range(n) if A[i][j] and j not in seen)
    return comps


# ---------------------------------------------------------------------------
# strict quadratic forms

def _keys(r):
    return list(combinations_with_replacement(range(r), 2))


def strictness_functionals(rd: BasedRootDatum, which: str = "simple"):
    """Rows ``q -> b(a, e_k) - <a_check, e_k> Q(a)`` on upper-triangular coefficients."""
    keys = _keys(rd.rank)
    idx = rd.simple if which == "simple" else range(len(rd.coroots))
    rows, labels = [], []
    for a in idx:
        al, ar = rd.coroots[a], rd.roots[a]
        for k in range(rd.rank):
            row = []
            for i, j in keys:
                v = (al[i] if j == k else 0) + (al[j] if i == k else 0)
                v -= ar[k] * al[i] * al[j]
                row.append(v)
            rows.append(row)
            labels.append((a, k))
    return rows, labels


def strictness_violations(rd: BasedRootDatum, Q: QuadForm, which: str = "simple"):
    """Instances ``(coroot index, basis index, b(a, e_k), <a_check, e_k> Q(a))`` that fail."""
    if Q.rank != rd.rank:
        raise ValueError("quadratic form and root datum have different ranks")
    b = Q.polarize()
    out = []
    idx = rd.simple if which == "simple" else range(len(rd.coroots))
    for a in idx:
        al, ar = rd.coroots[a], rd.roots[a]
        qa = Q(al)
        for k in range(rd.rank):
            e = [1 if t == k else 0 for t in range(rd.rank)]
            lhs = b(al, e)
            rhs = (ar[k] * qa) % Q.N
            if lhs != rhs:
                out.append((a, k, lhs, rhs))
    return out


def is_strict(rd: BasedRootDatum, Q: QuadForm) -> bool:
    simple_ok = not strictness_violations(rd, Q, "simple")
    all_ok = not strictness_violations(rd, Q, "all")
    if simple_ok != all_ok:
        raise RuntimeError("strictness over simple coroots disagrees with strictness over all coroots")
    return simple_ok


def is_w_invariant(rd: BasedRootDatum, Q: QuadForm, W: WeylGroup | None = None) -> bool:
    mats = W.elements if W is not None else [rd.reflection_matrix(i) for i in rd.simple]
    return all(Q.pullback([list(r) for r in w]) == Q for w in mats)


@dataclass
class StrictGroup:
    N: int
    group: FgAbelianGroup
    generators: list[QuadForm]
    checks: dict[str, bool] = field(default_factory=dict)

    def contains(self, Q: QuadForm) -> bool:
        n = len(Q.as_list())
        gens = [g.as_list() for g in self.generators] + [
            [self.N if i == j else 0 for i in range(n)] for j in range(n)]
        return ac.in_span(gens, Q.as_list(), n)


def _span_mod(vectors, N, n):
    return ac.lattice_basis([list(v) for v in vectors] + [[N if i == j else 0 for i in range(n)]
                                                          for j in range(n)], n)


def w_invariant_integral_forms(rd: BasedRootDatum) -> list[list[int]]:
    """Basis of integral quadratic forms fixed by every simple reflection."""
    keys = _keys(rd.rank)
    n = len(keys)
    rows = []
    for i in rd.simple:
        s = [list(r) for r in rd.reflection_matrix(i)]
        # column t: (q o s - q) for the unit form at keys[t]
        cols = []
        for t in range(n):
            img = _pullback_integral(keys[t], s, rd.rank)
            cols.append([img.get(k, 0) - (1 if k == keys[t] else 0) for k in keys])
        rows.extend(ac.transpose(cols, n))
    return ac.kernel_basis(rows, n) if rows else ac.identity(n)


def _pullback_integral(key, g, rank):
    i, j = key
    out = {}
    for a in range(rank):
        for b in range(rank):
            c = g[i][a] * g[j][b]
            if c:
                k = (min(a, b), max(a, b))
                out[k] = out.get(k, 0) + c
    return out


def enumerate_strict(rd: BasedRootDatum, N: int) -> StrictGroup:
    """Strict forms mod N as the kernel of the linear strictness conditions."""
    rows, _ = strictness_functionals(rd, "simple")
    n = len(_keys(rd.rank))
    grp, gens = ac.kernel_mod(rows, N, n)
    forms = [QuadForm.from_list(rd.rank, N, v) for v in gens]
    out = StrictGroup(N, grp, forms)
    if companions(rd).pi1.is_trivial and rd.simple:
        inv = w_invariant_integral_forms(rd)
        strict_span = _span_mod([q.as_list() for q in forms], N, n)
        out.checks["w_invariant_integral_forms_reduce_onto_strict"] = ac.lattice_equal(
            _span_mod(inv, N, n), strict_span, n)
        out.checks["one_cyclic_factor_per_simple_factor"] = (
            grp == FgAbelianGroup.cyclic(N).power(simple_factors(rd)))
    return out
