"""Exact integer linear algebra.

Smith normal form, lattice bookkeeping, finitely generated abelian groups,
cochain complexes with their homology, Hom/Ext between f.g. abelian groups,
and a checker for limits of cosimplicial lattices built from polynomial
functors.

Matrices are lists of rows of Python ints.  Vectors are lists of ints.
Lattices are described by generator lists inside a standard ambient
``Z^n``; the ambient dimension is always passed explicitly because an
empty generator list does not carry it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb, gcd


# ---------------------------------------------------------------------------
# matrices

def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> list[list[int]]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def transpose(A, ncols: int | None = None) -> list[list[int]]:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B, inner: int | None = None, ncols: int | None = None):
    """Product of an m x k and a k x n matrix.

    ``ncols`` is needed when ``B`` has no rows.
    """
    if not B:
        return zeros(len(A), ncols or 0)
    n = len(B[0])
    out = []
    for row in A:
        acc = [0] * n
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A, v) -> list[int]:
    return [sum(a * x for a, x in zip(row, v) if a) for row in A]


def hstack(*blocks, nrows: int) -> list[list[int]]:
    out = [[] for _ in range(nrows)]
    for block in blocks:
        for i in range(nrows):
            out[i].extend(block[i])
    return out


def block_diag(blocks, shapes) -> list[list[int]]:
    """Block diagonal matrix; ``shapes`` lists (rows, cols) per block."""
    total_cols = sum(c for _, c in shapes)
    out = []
    offset = 0
    for block, (r, c) in zip(blocks, shapes):
        for i in range(r):
            row = [0] * total_cols
            row[offset:offset + c] = block[i]
            out.append(row)
        offset += c
    return out


def scalar_matrix(n: int, k: int) -> list[list[int]]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = k
    return out


def det(A) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form

@dataclass
class SmithForm:
    """``U A V = D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``diag`` holds the nonzero invariant factors, each dividing the next.
    ``U_inv_T`` is the transpose of ``U^-1``; rows of it are columns of
    ``U^-1``.  Likewise ``V_T`` stores ``V`` by columns.
    """

    rows: int
    cols: int
    diag: list[int]
    U: list[list[int]]
    U_inv_T: list[list[int]]
    V_T: list[list[int]]
    V_inv: list[list[int]]

    @property
    def rank(self) -> int:
        return len(self.diag)

    @property
    def V(self) -> list[list[int]]:
        return transpose(self.V_T, self.cols)

    @property
    def U_inv(self) -> list[list[int]]:
        return transpose(self.U_inv_T, self.rows)

    @property
    def D(self) -> list[list[int]]:
        out = zeros(self.rows, self.cols)
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return out


def _find_pivot(A, t, m, n):
    best = None
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            a = row[j]
            if a and (best is None or abs(a) < best[0]):
                best = (abs(a), i, j)
                if best[0] == 1:
                    return best
    return best


def smith(A, ncols: int | None = None) -> SmithForm:
    """Smith normal form with full transformation bookkeeping.

    Pivot rule: smallest nonzero absolute value in the active block, ties
    broken in row-major order.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    M = [list(row) for row in A]
    U = identity(m)
    UiT = identity(m)
    VT = identity(n)
    Vi = identity(n)

    def row_add(a, b, k):  # row_a += k * row_b
        if k == 0:
            return
        Ma, Mb = M[a], M[b]
        for j in range(n):
            if Mb[j]:
                Ma[j] += k * Mb[j]
        Ua, Ub = U[a], U[b]
        for j in range(m):
            if Ub[j]:
                Ua[j] += k * Ub[j]
        Sa, Sb = UiT[a], UiT[b]
        for j in range(m):
            if Sa[j]:
                Sb[j] -= k * Sa[j]

    def col_add(a, b, k):  # col_a += k * col_b
        if k == 0:
            return
        for row in M:
            if row[b]:
                row[a] += k * row[b]
        Va, Vb = VT[a], VT[b]
        for j in range(n):
            if Vb[j]:
                Va[j] += k * Vb[j]
        Wa, Wb = Vi[a], Vi[b]
        for j in range(n):
            if Wa[j]:
                Wb[j] -= k * Wa[j]

    def row_swap(a, b):
        if a != b:
            M[a], M[b] = M[b], M[a]
            U[a], U[b] = U[b], U[a]
            UiT[a], UiT[b] = UiT[b], UiT[a]

    def col_swap(a, b):
        if a != b:
            for row in M:
                row[a], row[b] = row[b], row[a]
            VT[a], VT[b] = VT[b], VT[a]
            Vi[a], Vi[b] = Vi[b], Vi[a]

    diag = []
    t = 0
    while t < min(m, n):
        piv = _find_pivot(M, t, m, n)
        if piv is None:
            break
        _, pi, pj = piv
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                if M[i][t]:
                    row_add(i, t, -(M[i][t] // p))
                    if M[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if M[t][j]:
                    col_add(j, t, -(M[t][j] // p))
                    if M[t][j]:
                        clean = False
            if not clean:
                # a smaller remainder appeared in row or column t
                best = (abs(M[t][t]), t, t)
                for i in range(t + 1, m):
                    if M[i][t] and abs(M[i][t]) < best[0]:
                        best = (abs(M[i][t]), i, t)
                for j in range(t + 1, n):
                    if M[t][j] and abs(M[t][j]) < best[0]:
                        best = (abs(M[t][j]), t, j)
                row_swap(t, best[1])
                col_swap(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = M[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
            UiT[t] = [-x for x in UiT[t]]
        diag.append(M[t][t])
        t += 1
    return SmithForm(m, n, diag, U, UiT, VT, Vi)


def smith_normal_form(M, ncols: int | None = None):
    """Return ``(U, D, V)`` with ``U M V = D``."""
    s = smith(M, ncols)
    return s.U, s.D, s.V


# ---------------------------------------------------------------------------
# lattices inside Z^n

def kernel_basis(A, n: int) -> list[list[int]]:
    """Basis of ``{x in Z^n : A x = 0}``."""
    if not A:
        return [row[:] for row in identity(n)]
    s = smith(A, n)
    return [s.V_T[j][:] for j in range(s.rank, n)]


def lattice_basis(gens, dim: int) -> list[list[int]]:
    """A basis of the subgroup of ``Z^dim`` spanned by ``gens``."""
    gens = [g for g in gens if any(g)]
    if not gens:
        return []
    s = smith(transpose(gens, dim) if dim else [], len(gens))
    return [[d * x for x in s.U_inv_T[i]] for i, d in enumerate(s.diag)]


def solve_integer(A, b, n: int) -> list[int] | None:
    """Some integer ``x`` with ``A x = b``, or ``None``."""
    if not A:
        return [0] * n if not any(b) else None
    s = smith(A, n)
    c = matvec(s.U, b)
    y = [0] * n
    for i, ci in enumerate(c):
        if i < s.rank:
            if ci % s.diag[i]:
                return None
            y[i] = ci // s.diag[i]
        elif ci:
            return None
    return [sum(vt[i] * y[i] for i in range(s.rank)) for vt in transpose(s.V_T, n)] if n else []


def in_span(gens, v, dim: int) -> bool:
    if not any(v):
        return True
    if not gens:
        return False
    return solve_integer(transpose(gens, dim), v, len(gens)) is not None


def contains(big, small, dim: int) -> bool:
    return all(in_span(big, v, dim) for v in small)


def lattice_equal(L1, L2, dim: int) -> bool:
    return contains(L1, L2, dim) and contains(L2, L1, dim)


def image_gens(A, n: int) -> list[list[int]]:
    """Columns of ``A`` as vectors."""
    return [list(col) for col in zip(*A)] if A else []


def preimage(g, target_gens, n: int, m: int) -> list[list[int]]:
    """Basis of ``{x in Z^n : g x in span(target_gens)}``; ``g`` is m x n."""
    if m == 0:
        return [row[:] for row in identity(n)]
    k = len(target_gens)
    big = hstack(g if g else zeros(m, n),
                 [[-v[i] for v in target_gens] for i in range(m)], nrows=m)
    ker = kernel_basis(big, n + k)
    return lattice_basis([v[:n] for v in ker], n)


def intersect(L1, L2, dim: int) -> list[list[int]]:
    """Basis of the intersection of two sublattices."""
    if not L1 or not L2:
        return []
    k1 = len(L1)
    big = hstack(transpose(L1, dim), [[-v[i] for v in L2] for i in range(dim)], nrows=dim)
    ker = kernel_basis(big, k1 + len(L2))
    return lattice_basis([[sum(c * L1[j][i] for j, c in enumerate(v[:k1])) for i in range(dim)]
                          for v in ker], dim)


def coordinates(basis, v, dim: int) -> list[int]:
    """Coordinates of ``v`` in an independent ``basis``; raises if absent."""
    if not basis:
        if any(v):
            raise ValueError("vector not in lattice")
        return []
    x = solve_integer(transpose(basis, dim), v, len(basis))
    if x is None:
        raise ValueError("vector not in lattice")
    return x


def quotient_group(sub_gens, basis, dim: int) -> "FgAbelianGroup":
    """``span(basis) / span(sub_gens)``; the subgroup must lie inside."""
    r = len(basis)
    cols = [coordinates(basis, v, dim) for v in sub_gens if any(v)]
    if not cols:
        return FgAbelianGroup(r, ())
    s = smith(transpose(cols, r), len(cols))
    return FgAbelianGroup(r - s.rank, tuple(d for d in s.diag if d != 1))


def kernel_mod(A, N: int, n: int):
    """``{x in (Z/N)^n : A x = 0 mod N}`` as a group with generators.

    Returns ``(group, generators)`` where generators are reduced mod N and
    span the kernel.
    """
    m = len(A)
    L = preimage(A, [[N if i == j else 0 for i in range(m)] for j in range(m)], n, m)
    grp = quotient_group([[N if i == j else 0 for i in range(n)] for j in range(n)], L, n)
    gens = [[x % N for x in v] for v in L]
    return grp, [v for v in gens if any(v)]


def cokernel(A, n: int) -> "FgAbelianGroup":
    """``Z^m / A Z^n`` for an m x n matrix."""
    m = len(A)
    if m == 0:
        return FgAbelianGroup(0, ())
    s = smith(A, n)
    return FgAbelianGroup(m - s.rank, tuple(d for d in s.diag if d != 1))


# ---------------------------------------------------------------------------
# finitely generated abelian groups

def _invariant_factors(orders) -> tuple[int, tuple[int, ...]]:
    """Normalize a list of cyclic orders (0 meaning Z)."""
    free = sum(1 for d in orders if d == 0)
    tors = [abs(d) for d in orders if d not in (0, 1, -1)]
    if not tors:
        return free, ()
    k = len(tors)
    s = smith([[tors[i] if i == j else 0 for j in range(k)] for i in range(k)])
    return free, tuple(d for d in s.diag if d != 1)


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        free, tors = _invariant_factors([0] * self.free_rank + list(self.torsion))
        object.__setattr__(self, "free_rank", free)
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def cyclic(cls, d: int) -> "FgAbelianGroup":
        return cls(0, (d,)) if d else cls(1, ())

    @classmethod
    def free(cls, r: int) -> "FgAbelianGroup":
        return cls(r, ())

    @classmethod
    def from_orders(cls, orders) -> "FgAbelianGroup":
        return cls(*_invariant_factors(list(orders)))

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def power(self, k: int) -> "FgAbelianGroup":
        return FgAbelianGroup(self.free_rank * k, self.torsion * k)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def orders(self) -> list[int]:
        """Cyclic orders, torsion first; 0 stands for Z."""
        return list(self.torsion) + [0] * self.free_rank

    def elements(self):
        """All elements as coordinate tuples against ``orders()``; finite only."""
        if self.free_rank:
            raise ValueError("infinite group")
        out = [()]
        for d in self.torsion:
            out = [e + (k,) for e in out for k in range(d)]
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def hom_ext(A: FgAbelianGroup, B: FgAbelianGroup):
    """``(Hom(A, B), Ext^1(A, B))`` from the cyclic decompositions."""
    hom, ext = [], []
    for a in A.orders():
        for b in B.orders():
            if a == 0:
                hom.append(b)
            elif b == 0:
                ext.append(a)
            else:
                g = gcd(a, b)
                hom.append(g)
                ext.append(g)
    return FgAbelianGroup.from_orders(hom), FgAbelianGroup.from_orders(ext)


# ---------------------------------------------------------------------------
# cochain complexes

@dataclass
class ChainComplex:
    """Cochain complex of free modules, ``d^n: C^n -> C^{n+1}``.

    ``diffs[n]`` is a ``ranks[n+1] x ranks[n]`` matrix; missing entries are
    zero maps and missing ranks are zero.
    """

    lo: int
    hi: int
    ranks: dict[int, int]
    diffs: dict[int, list[list[int]]] = field(default_factory=dict)

    def __post_init__(self):
        for n in range(self.lo, self.hi):
            d = self.diffs.get(n)
            if d is None:
                self.diffs[n] = zeros(self.rank(n + 1), self.rank(n))
                continue
            if len(d) != self.rank(n + 1) or any(len(r) != self.rank(n) for r in d):
                raise ValueError(f"differential in degree {n} has the wrong shape")
        for n in range(self.lo, self.hi - 1):
            prod = matmul(self.d(n + 1), self.d(n), ncols=self.rank(n))
            if any(any(row) for row in prod):
                raise ValueError(f"d^{n + 1} d^{n} is not zero")

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0) if self.lo <= n <= self.hi else 0

    def d(self, n: int) -> list[list[int]]:
        if self.lo <= n < self.hi:
            return self.diffs[n]
        return zeros(self.rank(n + 1), self.rank(n))

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.rank(n) for n in range(self.lo, self.hi + 1))


def homology(C: ChainComplex, n: int) -> FgAbelianGroup:
    """``ker d^n / im d^{n-1}``."""
    r = C.rank(n)
    if r == 0:
        return FgAbelianGroup()
    Z = kernel_basis(C.d(n), r) if C.rank(n + 1) else identity(r)
    B = image_gens(C.d(n - 1), C.rank(n - 1)) if C.rank(n - 1) else []
    return quotient_group(B, Z, r)


def chain_map_ok(f: dict, A: ChainComplex, B: ChainComplex) -> bool:
    lo, hi = min(A.lo, B.lo), max(A.hi, B.hi)
    for n in range(lo, hi):
        fn = _map_at(f, n, A, B)
        fn1 = _map_at(f, n + 1, A, B)
        lhs = matmul(B.d(n), fn, ncols=A.rank(n))
        rhs = matmul(fn1, A.d(n), ncols=A.rank(n))
        if lhs != rhs:
            return False
    return True


def _map_at(f: dict, n: int, A: ChainComplex, B: ChainComplex):
    m = f.get(n)
    return m if m is not None else zeros(B.rank(n), A.rank(n))


def concentrated(rank: int, degree: int = 0) -> ChainComplex:
    return ChainComplex(degree, degree, {degree: rank})


def shift(C: ChainComplex, k: int) -> ChainComplex:
    """``C[k]`` with ``C[k]^n = C^{n+k}`` and differential ``(-1)^k d``."""
    sign = -1 if k % 2 else 1
    return ChainComplex(
        C.lo - k, C.hi - k,
        {n - k: r for n, r in C.ranks.items()},
        {n - k: [[sign * x for x in row] for row in d] for n, d in C.diffs.items()},
    )


def direct_sum(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    lo, hi = min(A.lo, B.lo), max(A.hi, B.hi)
    ranks = {n: A.rank(n) + B.rank(n) for n in range(lo, hi + 1)}
    diffs = {n: block_diag([A.d(n), B.d(n)],
                           [(A.rank(n + 1), A.rank(n)), (B.rank(n + 1), B.rank(n))])
             for n in range(lo, hi)}
    return ChainComplex(lo, hi, ranks, diffs)


def cone(f: dict, A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """Mapping cone: ``Cone^n = A^{n+1} + B^n``, ``d(a, b) = (-d a, f a + d b)``."""
    if not chain_map_ok(f, A, B):
        raise ValueError("not a chain map")
    lo, hi = min(A.lo - 1, B.lo), max(A.hi - 1, B.hi)
    ranks = {n: A.rank(n + 1) + B.rank(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        a0, a1 = A.rank(n + 1), A.rank(n + 2)
        b0, b1 = B.rank(n), B.rank(n + 1)
        dA = A.d(n + 1)
        fn = _map_at(f, n + 1, A, B)
        dB = B.d(n)
        top = [[-x for x in dA[i]] + [0] * b0 for i in range(a1)]
        bottom = [list(fn[i]) + list(dB[i]) for i in range(b1)]
        diffs[n] = top + bottom
        assert all(len(r) == a0 + b0 for r in diffs[n])
    return ChainComplex(lo, hi, ranks, diffs)


def fiber(f: dict, A: ChainComplex, B: ChainComplex) -> ChainComplex:
    return shift(cone(f, A, B), -1)


def mod_n(C: ChainComplex, N: int) -> ChainComplex:
    """Derived reduction ``C / N`` as the cone of multiplication by N."""
    f = {n: scalar_matrix(C.rank(n), N) for n in range(C.lo, C.hi + 1)}
    return cone(f, C, C)


def mod_n_map(f: dict, A: ChainComplex, B: ChainComplex) -> dict:
    """The map ``A/N -> B/N`` induced by a chain map ``f``."""
    lo, hi = min(A.lo, B.lo) - 1, max(A.hi, B.hi)
    out = {}
    for n in range(lo, hi + 1):
        out[n] = block_diag([_map_at(f, n + 1, A, B), _map_at(f, n, A, B)],
                            [(B.rank(n + 1), A.rank(n + 1)), (B.rank(n), A.rank(n))])
    return out


def shift_map(f: dict, k: int) -> dict:
    """``f[k]``; no sign is needed because both differentials pick up ``(-1)^k``."""
    return {n - k: m for n, m in f.items()}


def pair_map(f: dict, g: dict, S: ChainComplex, A: ChainComplex, B: ChainComplex) -> dict:
    """``(f, g): S -> A + B``."""
    lo, hi = min(S.lo, A.lo, B.lo), max(S.hi, A.hi, B.hi)
    return {n: [list(r) for r in _map_at(f, n, S, A)] + [list(r) for r in _map_at(g, n, S, B)]
            for n in range(lo, hi + 1)}


def sum_maps(f: dict, g: dict, A1: ChainComplex, A2: ChainComplex, B: ChainComplex) -> dict:
    """``(f, g): A1 + A2 -> B``."""
    lo, hi = min(A1.lo, A2.lo), max(A1.hi, A2.hi)
    out = {}
    for n in range(lo, hi + 1):
        fn, gn = _map_at(f, n, A1, B), _map_at(g, n, A2, B)
        out[n] = [list(fn[i]) + list(gn[i]) for i in range(B.rank(n))]
    return out


def homology_groups(C: ChainComplex) -> dict[int, FgAbelianGroup]:
    return {n: homology(C, n) for n in range(C.lo, C.hi + 1)}


# ---------------------------------------------------------------------------
# presented groups

@dataclass
class PresentedGroup:
    """``Z^ngens / span(relations)``."""

    ngens: int
    relations: list[list[int]] = field(default_factory=list)
    labels: list[str] | None = None

    def group(self) -> FgAbelianGroup:
        return quotient_group(self.relations, identity(self.ngens), self.ngens)

    def is_zero(self, v) -> bool:
        return in_span(self.relations, v, self.ngens)


def _images(f, src: PresentedGroup):
    return [[f[i][j] for i in range(len(f))] for j in range(src.ngens)]


def maps_equal(f, g, src: PresentedGroup, tgt: PresentedGroup) -> bool:
    diff = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(f, g)]
    return all(tgt.is_zero(v) for v in _images(diff, src)) if tgt.ngens else True


def well_defined(f, src: PresentedGroup, tgt: PresentedGroup) -> bool:
    return all(tgt.is_zero(matvec(f, v)) for v in src.relations) if tgt.ngens else True


def short_exact_failures(f, g, A: PresentedGroup, B: PresentedGroup, C: PresentedGroup) -> list[str]:
    """Reasons why ``0 -> A -f-> B -g-> C -> 0`` fails to be exact; empty if exact."""
    out = []
    if not well_defined(f, A, B):
        out.append("first map does not respect relations")
    if not well_defined(g, B, C):
        out.append("second map does not respect relations")
    ker_f = preimage(f, B.relations, A.ngens, B.ngens) if B.ngens else identity(A.ngens)
    if not contains(A.relations, ker_f, A.ngens):
        out.append("first map is not injective")
    gf = matmul(g, f, ncols=A.ngens) if C.ngens else []
    if C.ngens and not all(C.is_zero(v) for v in _images(gf, A)):
        out.append("composite is not zero")
    ker_g = preimage(g, C.relations, B.ngens, C.ngens) if C.ngens else identity(B.ngens)
    im_f = _images(f, A) + B.relations if B.ngens else []
    if not contains(im_f, ker_g, B.ngens):
        out.append("kernel of second map exceeds image of first")
    if C.ngens:
        im_g = _images(g, B) + C.relations
        if not lattice_equal(lattice_basis(im_g, C.ngens), identity(C.ngens), C.ngens):
            out.append("second map is not surjective")
    return out


# ---------------------------------------------------------------------------
# polynomial functors on Z^m, as presented groups

class PolyFunctor:
    """A functor from lattices to f.g. abelian groups given by presentations.

    ``ngens(m)`` generators, ``relations(m)`` relation vectors, and
    ``apply(g, m_src, m_tgt)`` the matrix on generators induced by an
    integer map ``g: Z^m_src -> Z^m_tgt`` (an m_tgt x m_src matrix).
    """

    tag = ""

    def ngens(self, m: int) -> int:
        raise NotImplementedError

    def relations(self, m: int) -> list[list[int]]:
        return []

    def apply(self, g, m_src: int, m_tgt: int) -> list[list[int]]:
        raise NotImplementedError

    def group(self, m: int) -> FgAbelianGroup:
        n = self.ngens(m)
        return quotient_group(self.relations(m), identity(n), n)


def _sym_index(m):
    return {p: k for k, p in enumerate(combinations_with_replacement(range(m), 2))}


def _alt_index(m):
    return {p: k for k, p in enumerate(combinations(range(m), 2))}


class IdFunctor(PolyFunctor):
    tag = "Id"

    def ngens(self, m):
        return m

    def apply(self, g, m_src, m_tgt):
        return [list(row) for row in g] if m_tgt else []


def _tensor_images(g, m_src, m_tgt):
    """``g e_i (x) g e_j`` as dicts ``{(a, b): coeff}``."""
    cols = [[(a, g[a][i]) for a in range(m_tgt) if g[a][i]] for i in range(m_src)]
    out = {}
    for i in range(m_src):
        for j in range(m_src):
            t = {}
            for a, x in cols[i]:
                for b, y in cols[j]:
                    t[(a, b)] = t.get((a, b), 0) + x * y
            out[(i, j)] = t
    return out


class Tensor2(PolyFunctor):
    tag = "Tensor2"

    def ngens(self, m):
        return m * m

    def apply(self, g, m_src, m_tgt):
        imgs = _tensor_images(g, m_src, m_tgt)
        out = zeros(m_tgt * m_tgt, m_src * m_src)
        for (i, j), t in imgs.items():
            for (a, b), v in t.items():
                out[a * m_tgt + b][i * m_src + j] += v
        return out


class Sym2(PolyFunctor):
    tag = "Sym2"

    def ngens(self, m):
        return comb(m + 1, 2)

    def apply(self, g, m_src, m_tgt):
        si, ti = _sym_index(m_src), _sym_index(m_tgt)
        imgs = _tensor_images(g, m_src, m_tgt)
        out = zeros(len(ti), len(si))
        for (i, j), k in si.items():
            for (a, b), v in imgs[(i, j)].items():
                out[ti[(min(a, b), max(a, b))]][k] += v
        return out


class Wedge2(PolyFunctor):
    tag = "Wedge2"

    def ngens(self, m):
        return comb(m, 2)

    def apply(self, g, m_src, m_tgt):
        si, ti = _alt_index(m_src), _alt_index(m_tgt)
        imgs = _tensor_images(g, m_src, m_tgt)
        out = zeros(len(ti), len(si))
        for (i, j), k in si.items():
            for (a, b), v in imgs[(i, j)].items():
                if a < b:
                    out[ti[(a, b)]][k] += v
                elif a > b:
                    out[ti[(b, a)]][k] -= v
        return out


class Gamma2(PolyFunctor):
    """Symmetric tensors: ``e_i (x) e_i`` and ``e_i (x) e_j + e_j (x) e_i``."""

    tag = "Gamma2"

    def ngens(self, m):
        return comb(m + 1, 2)

    def apply(self, g, m_src, m_tgt):
        si, ti = _sym_index(m_src), _sym_index(m_tgt)
        imgs = _tensor_images(g, m_src, m_tgt)
        out = zeros(len(ti), len(si))
        for (i, j), k in si.items():
            t = dict(imgs[(i, j)])
            if i != j:
                for (a, b), v in imgs[(j, i)].items():
                    t[(a, b)] = t.get((a, b), 0) + v
            # a symmetric tensor is determined by its upper triangle
            for (a, b), v in t.items():
                if a <= b:
                    out[ti[(a, b)]][k] += v
        return out


class Ant2(PolyFunctor):
    """``T / (x (x) y + y (x) x)``: tensor generators modulo symmetric tensors."""

    tag = "Ant2"

    def ngens(self, m):
        return m * m

    def relations(self, m):
        rels = []
        for i, j in combinations_with_replacement(range(m), 2):
            v = [0] * (m * m)
            v[i * m + j] += 1
            v[j * m + i] += 1
            rels.append(v)
        return rels

    def apply(self, g, m_src, m_tgt):
        return Tensor2().apply(g, m_src, m_tgt)


class Hcheck1(PolyFunctor):
    """Integer quadratic functions without constant term, covariant in the dual.

    Coordinates of ``q``: the values ``q(e_k)``, then ``b(e_k, e_k)``, then
    ``b(e_k, e_l)`` for ``k < l``, where ``b`` is the polarization.  A map
    ``g`` of dual lattices acts by precomposition with its transpose.
    """

    tag = "Hcheck1"

    def ngens(self, m):
        return m + comb(m + 1, 2)

    def apply(self, g, m_src, m_tgt):
        si = _sym_index(m_src)
        ti = _sym_index(m_tgt)
        rows = [list(g[a]) for a in range(m_tgt)]  # g^T e'_a
        out = zeros(m_tgt + len(ti), m_src + len(si))

        def lin_of_value(v):
            # q(v) as a linear functional in the coordinates of q
            c = [0] * (m_src + len(si))
            for k in range(m_src):
                c[k] += v[k]
                c[m_src + si[(k, k)]] += comb(v[k], 2) if v[k] >= 0 else v[k] * (v[k] - 1) // 2
            for k, l in combinations(range(m_src), 2):
                c[m_src + si[(k, l)]] += v[k] * v[l]
            return c

        def lin_of_pairing(u, v):
            c = [0] * (m_src + len(si))
            for k in range(m_src):
                c[m_src + si[(k, k)]] += u[k] * v[k]
            for k, l in combinations(range(m_src), 2):
                c[m_src + si[(k, l)]] += u[k] * v[l] + u[l] * v[k]
            return c

        for a in range(m_tgt):
            out[a] = lin_of_value(rows[a])
        for (a, b), k in ti.items():
            out[m_tgt + k] = lin_of_pairing(rows[a], rows[b])
        return out


FUNCTORS = {f.tag: f for f in (IdFunctor(), Tensor2(), Sym2(), Wedge2(), Gamma2(), Ant2(), Hcheck1())}


# ---------------------------------------------------------------------------
# cosimplicial limits

def _coface(i: int, n: int, r: int) -> list[list[int]]:
    """``(Z^r)^{n-1} -> (Z^r)^n``: prepend 0, duplicate slot ``i-1``, or append 0."""
    out = zeros(n * r, (n - 1) * r)
    for slot in range(n):
        if i == 0:
            src = slot - 1
        elif i == n:
            src = slot if slot < n - 1 else -1
        else:
            src = slot if slot < i else slot - 1
        if 0 <= src < n - 1:
            for k in range(r):
                out[slot * r + k][src * r + k] = 1
    return out


def _codegeneracy(i: int, n: int, r: int) -> list[list[int]]:
    """``(Z^r)^{n+1} -> (Z^r)^n`` deleting slot ``i``."""
    out = zeros(n * r, (n + 1) * r)
    for slot in range(n):
        src = slot if slot < i else slot + 1
        for k in range(r):
            out[slot * r + k][src * r + k] = 1
    return out


def expected_cosimplicial_limit(tag: str, r: int) -> dict[int, FgAbelianGroup]:
    """Nonzero cohomology of the limit complex, by degree."""
    F = FgAbelianGroup
    two = comb(r, 2)
    sym = comb(r + 1, 2)
    table = {
        "Id": {1: F(r)},
        "Tensor2": {2: F(r * r)},
        "Gamma2": {2: F(two)},
        "Wedge2": {2: F(sym)},
        "Sym2": {2: F(two, (2,) * r)},
        "Ant2": {1: F(0, (2,) * r), 2: F(sym)},
        "Hcheck1": {1: F(r), 2: F(two)},
    }
    return {k: v for k, v in table[tag].items() if not v.is_trivial}


@dataclass
class CosimplicialReport:
    tag: str
    rank: int
    max_degree: int
    computed: dict[int, FgAbelianGroup]
    expected: dict[int, FgAbelianGroup]
    mismatches: list[tuple[int, str, str]]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def cosimplicial_limit_check(rank: int, functor_tag: str, max_degree: int) -> CosimplicialReport:
    """Cohomology of the normalized cochains of ``[n] -> F((Z^rank)^n)``.

    Degrees ``0..max_degree`` are computed and compared to the closed form
    from :func:`expected_cosimplicial_limit`.  Mismatches are reported.
    """
    F = FUNCTORS[functor_tag]
    r = rank
    top = max_degree + 1
    gens = {n: F.ngens(n * r) for n in range(top + 1)}
    rels = {n: F.relations(n * r) for n in range(top + 1)}

    def diff(n):  # degree n -> n+1
        tot = zeros(gens[n + 1], gens[n])
        for i in range(n + 2):
            m = F.apply(_coface(i, n + 1, r), n * r, (n + 1) * r)
            sgn = -1 if i % 2 else 1
            for a in range(gens[n + 1]):
                ra, ma = tot[a], m[a]
                for b in range(gens[n]):
                    if ma[b]:
                        ra[b] += sgn * ma[b]
        return tot

    def normalized(n):
        # x with every codegeneracy image a relation
        if n == 0 or gens[n] == 0:
            return [row[:] for row in identity(gens[n])]
        S, T, tdim = [], [], 0
        for i in range(n):
            s = F.apply(_codegeneracy(i, n - 1, r), n * r, (n - 1) * r)
            S.extend(s)
            for v in rels[n - 1]:
                T.append([0] * tdim + v)
            tdim += gens[n - 1]
        T = [v + [0] * (tdim - len(v)) for v in T]
        return preimage(S, T, gens[n], tdim)

    P = {n: normalized(n) for n in range(top + 1)}
    D = {n: diff(n) for n in range(top)}
    computed = {}
    for n in range(max_degree + 1):
        g = gens[n]
        if g == 0:
            continue
        Pn = P[n]
        dP = [matvec(D[n], v) for v in Pn]
        # y with d(P y) in relations
        ycoef = preimage(transpose(dP, gens[n + 1]) if Pn else [], rels[n + 1],
                         len(Pn), gens[n + 1]) if Pn else []
        Z = lattice_basis([[sum(c * Pn[j][i] for j, c in enumerate(y)) for i in range(g)]
                           for y in ycoef], g)
        B = [matvec(D[n - 1], v) for v in P[n - 1]] if n >= 1 else []
        B = B + [list(v) for v in rels[n]]
        H = quotient_group(B, Z, g)
        if not H.is_trivial:
            computed[n] = H
    expected = {k: v for k, v in expected_cosimplicial_limit(functor_tag, r).items()
                if k <= max_degree}
    mismatches = []
    for n in sorted(set(computed) | set(expected)):
        c, e = computed.get(n, FgAbelianGroup()), expected.get(n, FgAbelianGroup())
        if c != e:
            mismatches.append((n, str(c), str(e)))
    return CosimplicialReport(functor_tag, r, max_degree, computed, expected, mismatches)
