"""Hilbert symbols over R and Q_p, and covers of split tori built from them.

Symbols take values in Z/N, read as the exponent of a fixed primitive
N-th root of unity: ``-1`` for the real place and for ``p = 2``, and
``g^((p-1)/N)`` with ``g`` the least primitive root mod ``p`` otherwise.
Only the tame case ``N | p - 1`` with ``p`` odd and the classical
``p = 2, N = 2`` case are supported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .forms import QuadForm


class PlaceError(ValueError):
    pass


@dataclass(frozen=True)
class Place:
    p: int | None  # None is the real place
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise PlaceError("N must be positive")
        if self.p is None:
            if self.N != 2:
                raise PlaceError("the real place only carries N = 2")
        elif not _is_prime(self.p):
            raise PlaceError(f"{self.p} is not prime")
        elif self.p == 2:
            if self.N != 2:
                raise PlaceError("at p = 2 only N = 2 is supported")
        elif (self.p - 1) % self.N:
            raise PlaceError(f"N = {self.N} does not divide p - 1 = {self.p - 1}")

    @classmethod
    def parse(cls, text: str, N: int) -> "Place":
        t = text.strip()
        if t.upper() in ("R", "REAL", "INF"):
            return cls(None, N)
        try:
            p = int(t)
        except ValueError:
            raise PlaceError(f"unknown place {text!r}") from None
        return cls(p, N)

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "R" if self.p is None else f"Q_{self.p}"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"no primitive root mod {p}")


@lru_cache(maxsize=None)
def _log_table(p: int, N: int) -> dict[int, int]:
    zeta = pow(primitive_root(p), (p - 1) // N, p)
    return {pow(zeta, k, p): k for k in range(N)}


@dataclass(frozen=True)
class LocalUnit:
    """A nonzero rational number viewed in a local field."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        if v == 0:
            raise ValueError("zero is not a unit")
        object.__setattr__(self, "value", v)

    @classmethod
    def of(cls, x) -> "LocalUnit":
        if isinstance(x, LocalUnit):
            return x
        if isinstance(x, str):
            return cls(Fraction(x.strip()))
        return cls(Fraction(x))

    @property
    def sign(self) -> int:
        return 1 if self.value > 0 else -1

    def valuation(self, p: int) -> int:
        def v(n):
            n, k = abs(n), 0
            while n % p == 0:
                n //= p
                k += 1
            return k
        return v(self.value.numerator) - v(self.value.denominator)

    def __mul__(self, other: "LocalUnit") -> "LocalUnit":
        return LocalUnit(self.value * LocalUnit.of(other).value)

    def __neg__(self) -> "LocalUnit":
        return LocalUnit(-self.value)

    def inverse(self) -> "LocalUnit":
        return LocalUnit(1 / self.value)

    def __str__(self) -> str:
        return str(self.value)


def _mod(x: Fraction, m: int) -> int:
    """Residue of a fraction with denominator prime to ``m``."""
    return x.numerator * pow(x.denominator, -1, m) % m


def hilbert_symbol(a, b, v: Place) -> int:
    return _symbol(LocalUnit.of(a), LocalUnit.of(b), v)


@lru_cache(maxsize=1 << 16)
def _symbol(a: LocalUnit, b: LocalUnit, v: Place) -> int:
    if v.is_real:
        return 1 if a.sign < 0 and b.sign < 0 else 0
    p, N = v.p, v.N
    va, vb = a.valuation(p), b.valuation(p)
    if p == 2:
        u = a.value / Fraction(2) ** va
        w = b.value / Fraction(2) ** vb
        ur, wr = _mod(u, 8), _mod(w, 8)
        eps = lambda t: (t - 1) // 2 % 2  # noqa: E731
        omega = lambda t: (t * t - 1) // 8 % 2  # noqa: E731
        return (eps(ur) * eps(wr) + va * omega(wr) + vb * omega(ur)) % 2
    # a = p^va ua, b = p^vb ub, so a^vb b^-va = ua^vb ub^-va
    ua = _mod(a.value / Fraction(p) ** va, p)
    ub = _mod(b.value / Fraction(p) ** vb, p)
    u = (-1 if va * vb % 2 else 1) * pow(ua, vb, p) * pow(ub, -va, p)
    t = pow(u % p, (p - 1) // N, p)
    return _log_table(p, N)[t]


# ---------------------------------------------------------------------------
# identity suite

@dataclass
class SymbolSuiteReport:
    place: Place
    sample: list
    failures: dict[str, list] = field(default_factory=dict)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def symbol_identity_suite(v: Place, sample) -> SymbolSuiteReport:
    units = [LocalUnit.of(x) for x in sample]
    h = lambda x, y: hilbert_symbol(x, y, v)  # noqa: E731
    N = v.N
    rep = SymbolSuiteReport(v, [str(u) for u in units])
    names = ["bilinear-left", "bilinear-right", "antisymmetry", "a,-a", "steinberg", "a,a = a,-1"]
    for n in names:
        rep.failures[n] = []
        rep.checked[n] = 0
    minus_one = LocalUnit.of(-1)

    def record(name, ok, witness):
        rep.checked[name] += 1
        if not ok:
            rep.failures[name].append(witness)

    # index every value once; Fraction hashing dominates otherwise
    ids: dict[LocalUnit, int] = {}
    for x in units:
        ids.setdefault(x, len(ids))
    prod_id = [[ids.setdefault(a * b, len(ids)) for b in units] for a in units]
    vals = list(ids)
    uid = [ids[x] for x in units]
    left = [[h(x, c) for c in units] for x in vals]
    right = [[h(c, x) for c in units] for x in vals]
    for a in units:
        record("a,-a", h(a, -a) == 0, (str(a),))
        if a.value != 1:
            record("steinberg", h(a, LocalUnit(1 - a.value)) == 0, (str(a),))
        record("a,a = a,-1", h(a, a) == h(a, minus_one), (str(a),))
    n = len(units)
    for i in range(n):
        for j in range(n):
            record("antisymmetry", (left[uid[i]][j] + left[uid[j]][i]) % N == 0, (str(units[i]), str(units[j])))
            ab, la, lb, ra, rb = prod_id[i][j], left[uid[i]], left[uid[j]], right[uid[i]], right[uid[j]]
            for k in range(n):
                w = (i, j, k)
                record("bilinear-left", left[ab][k] == (la[k] + lb[k]) % N, w)
                record("bilinear-right", right[ab][k] == (ra[k] + rb[k]) % N, w)
    for key in ("bilinear-left", "bilinear-right"):
        rep.failures[key] = [tuple(str(units[t]) for t in w) for w in rep.failures[key]]
    return rep


# ---------------------------------------------------------------------------
# covers of split tori

@dataclass
class TorusCover:
    """Pairs ``(x, z)`` with ``x`` in ``(F^x)^r`` and ``z`` in Z/N.

    ``(x, z)(y, w) = (xy, z + w + sum_ij c_ij (x_i, y_j))``.
    """

    rank: int
    c: tuple[tuple[int, ...], ...]
    place: Place

    def cocycle(self, x, y) -> int:
        v = self.place
        return sum(self.c[i][j] * hilbert_symbol(x[i], y[j], v)
                   for i in range(self.rank) for j in range(self.rank) if self.c[i][j]) % v.N

    def element(self, x, z: int = 0):
        return (tuple(LocalUnit.of(t) for t in x), z % self.place.N)

    def multiply(self, u, w):
        (x, z), (y, t) = u, w
        return (tuple(a * b for a, b in zip(x, y)), (z + t + self.cocycle(x, y)) % self.place.N)

    def inverse(self, u):
        x, z = u
        xi = tuple(a.inverse() for a in x)
        return (xi, (-z - self.cocycle(x, xi)) % self.place.N)

    def commutator(self, x, y) -> int:
        """Fiber phase of ``[(x, 0), (y, 0)]``, measured from the group law."""
        N = self.place.N
        return (self.cocycle(x, y) - self.cocycle(y, x)) % N

    def commutator_readings(self, x, y) -> dict[str, int]:
        """``sum (x_i, y_j)`` weighted by ``c - c^T`` and by ``c + c^T``."""
        v, N, r = self.place, self.place.N, self.rank
        out = {}
        for name, sgn in (("c_minus_ct", -1), ("c_plus_ct", 1)):
            out[name] = sum((self.c[i][j] + sgn * self.c[j][i]) * hilbert_symbol(x[i], y[j], v)
                            for i in range(r) for j in range(r)) % N
        return out

    def associativity_failures(self, sample) -> list:
        pts = [self.element(x) for x in sample]
        out = []
        for a, b, c in product(pts, repeat=3):
            if self.multiply(self.multiply(a, b), c) != self.multiply(a, self.multiply(b, c)):
                out.append((a, b, c))
        return out

    def commutator_report(self, sample) -> dict:
        """Measured commutators against both readings over all pairs of ``sample``."""
        rows = []
        agree = {"c_minus_ct": True, "c_plus_ct": True}
        for x, y in product(sample, repeat=2):
            xs, ys = [LocalUnit.of(t) for t in x], [LocalUnit.of(t) for t in y]
            m = self.commutator(xs, ys)
            rd = self.commutator_readings(xs, ys)
            for k in agree:
                agree[k] = agree[k] and rd[k] == m
            rows.append({"x": [str(t) for t in xs], "y": [str(t) for t in ys], "measured": m, **rd})
        return {"pairs": rows, "agrees_with": agree}


def torus_cover(r: int, c, v: Place) -> TorusCover:
    c = tuple(tuple(int(t) for t in row) for row in c)
    if len(c) != r or any(len(row) != r for row in c):
        raise ValueError("cocycle matrix must be r x r")
    return TorusCover(r, c, v)


# ---------------------------------------------------------------------------
# real signature

@dataclass
class RealSignature:
    tau: tuple[int, ...]
    Q: QuadForm

    @property
    def trivial(self) -> bool:
        return not any(self.tau)

    def __call__(self, lam) -> int:
        return sum(t * x for t, x in zip(self.tau, lam)) % 2


def real_signature(Q: QuadForm, tau) -> RealSignature:
    """Signature of a real cover given as a form plus a character mod 2; the form contributes nothing."""
    if Q.N != 2:
        raise ValueError("real covers need N = 2")
    tau = tuple(int(t) % 2 for t in tau)
    if len(tau) != Q.rank:
        raise ValueError("one signature value per basis vector")
    return RealSignature(tau, Q)
