"""Command line: root data in, JSON reports out.

Root-datum files hold ``key = value`` records, one per key, with keys
``name``, ``rank``, ``coroots``, ``roots`` and ``simple``.  Values are
decimal integers, bare names, or bracketed comma-separated lists (nested
for vectors); a value may continue over several lines while a bracket is
open.  ``#`` starts a comment.

Exit status: 0 when every check passes, 1 on a verification failure or a
refused input, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bg_cohomology as bg
from . import suites
from .forms import QuadForm, theta_skeleton
from .local_field import Place, PlaceError, hilbert_symbol, symbol_identity_suite, torus_cover
from .meta_dual import NotStrict, borel_independence_check, dual_pair
from .root_data import (CATALOG_NAMES, BasedRootDatum, catalog, is_strict, strictness_violations,
                        validate, weyl_group)

SCHEMA = "metaplectic-report/1"
REQUIRED = ("name", "rank", "coroots", "roots", "simple")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


# ---------------------------------------------------------------------------
# root-datum files

class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.line = 1
        self.col = 1

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.i]
        self.i += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def skip(self, newlines: bool):
        while True:
            ch = self.peek()
            if ch == "#":
                while self.peek() and self.peek() != "\n":
                    self.advance()
            elif ch in " \t\r" and ch:
                self.advance()
            elif ch == "\n" and newlines:
                self.advance()
            else:
                return

    def fail(self, msg: str):
        raise ParseError(msg, self.line, self.col)

    def word(self) -> str:
        start = self.i
        while self.peek() and (self.peek().isalnum() or self.peek() in "_-+"):
            self.advance()
        return self.text[start:self.i]

    def value(self, depth: int = 0):
        self.skip(newlines=depth > 0)
        ch = self.peek()
        if ch == "[":
            self.advance()
            items = []
            self.skip(True)
            if self.peek() == "]":
                self.advance()
                return items
            while True:
                items.append(self.value(depth + 1))
                self.skip(True)
                ch = self.peek()
                if ch == ",":
                    self.advance()
                elif ch == "]":
                    self.advance()
                    return items
                else:
                    self.fail(f"expected ',' or ']' but found {ch!r}" if ch else "unclosed '['")
        if not ch or ch in "\n,]":
            self.fail("missing value")
        line, col = self.line, self.col
        w = self.word()
        if not w:
            self.fail(f"unexpected character {ch!r}")
        try:
            return int(w)
        except ValueError:
            if depth:
                raise ParseError(f"expected an integer, found {w!r}", line, col) from None
            return w


def parse_root_datum(text: str) -> BasedRootDatum:
    if not "".join(line.split("#", 1)[0] for line in text.splitlines()).strip():
        raise ParseError("empty file", 1, 1)
    rd = _Reader(text)
    fields, where = {}, {}
    while True:
        rd.skip(newlines=True)
        if not rd.peek():
            break
        line, col = rd.line, rd.col
        key = rd.word()
        if not key:
            rd.fail(f"expected a key, found {rd.peek()!r}")
        rd.skip(newlines=False)
        if rd.peek() != "=":
            rd.fail(f"expected '=' after {key!r}")
        rd.advance()
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", line, col)
        if key not in REQUIRED:
            raise ParseError(f"unknown key {key!r}", line, col)
        where[key] = (line, col)
        fields[key] = rd.value()
        rd.skip(newlines=False)
        if rd.peek() not in ("\n", ""):
            rd.fail(f"unexpected text after the value of {key!r}")
    missing = [k for k in REQUIRED if k not in fields]
    if missing:
        raise ParseError(f"missing key(s): {', '.join(missing)}", rd.line, rd.col)
    name, rank = fields["name"], fields["rank"]
    if not isinstance(rank, int) or rank < 0:
        raise ParseError("rank must be a non-negative integer", *where["rank"])

    def vectors(key):
        v = fields[key]
        if not isinstance(v, list) or not all(isinstance(x, list) for x in v):
            raise ParseError(f"{key} must be a list of vectors", *where[key])
        for x in v:
            if len(x) != rank:
                raise ParseError(f"{key}: vector {x} does not have length {rank}", *where[key])
        return tuple(tuple(x) for x in v)

    coroots, roots = vectors("coroots"), vectors("roots")
    if len(coroots) != len(roots):
        raise ParseError("coroots and roots have different lengths", *where["roots"])
    simple = fields["simple"]
    if not isinstance(simple, list) or not all(isinstance(x, int) for x in simple):
        raise ParseError("simple must be a list of indices", *where["simple"])
    return BasedRootDatum(str(name), rank, coroots, roots, tuple(simple))


def load_datum(source: str) -> BasedRootDatum:
    """A file path, or ``catalog:NAME``."""
    if source.startswith("catalog:"):
        return catalog(source.split(":", 1)[1])
    with open(source, encoding="utf-8") as fh:
        return parse_root_datum(fh.read())


# ---------------------------------------------------------------------------
# reports

def _datum_json(rd: BasedRootDatum) -> dict:
    return {"name": rd.name, "rank": rd.rank, "coroots": [list(v) for v in rd.coroots],
            "roots": [list(v) for v in rd.roots], "simple": list(rd.simple)}


def _form_json(Q: QuadForm) -> dict:
    return {"text": str(Q), "coefficients": Q.as_list(), **Q.to_json()}


def emit(command: dict, result: dict, ledger: list[dict], out=None) -> int:
    report = {"schema": SCHEMA, "command": command, "result": result, "ledger": ledger,
              "ok": all(e["pass"] for e in ledger)}
    (out or sys.stdout).write(json.dumps(report, indent=2) + "\n")
    return 0 if report["ok"] else 1


def cmd_validate(args) -> int:
    rd = load_datum(args.datum)
    bad = validate(rd)
    return emit({"command": "validate", "datum": args.datum},
                {"datum": _datum_json(rd), "violations": bad},
                [suites.entry("root datum axioms", not bad, bad)])


def cmd_classify(args) -> int:
    rd = _valid(args.datum)
    N = args.N
    rep = bg.bg_cohomology(rd, N)
    cov = bg.cover_homotopy(rd, N)
    ledger = [suites.entry(k, v) for k, v in rep.exactness.items()]
    ledger.append(suites.entry("homotopy groups from the fiber square", cov.agree,
                               {"pi1": str(cov.fiber_pi1), "pi2": str(cov.fiber_pi2)}))
    W = weyl_group(rd)
    if W.complete:
        a = bg.chevalley_strictness_oracle(rd, N, W)
        from .root_data import enumerate_strict
        ledger.append(suites.entry("Schubert oracle agrees with strict forms",
                                   bg.same_subgroup(a, enumerate_strict(rd, N), rd.rank), str(a.group)))
    result = {
        "datum": rd.name, "N": N,
        "cohomology": {"H1": str(rep.H1), "H2": str(rep.H2), "H3": str(rep.H3), "H4": str(rep.H4)},
        "homotopy": {"pi0": str(cov.pi0), "pi1": str(cov.pi1), "pi2": str(cov.pi2)},
        "strict_generators": [q.as_list() for q in rep.H4_generators],
    }
    return emit({"command": "classify", "datum": args.datum, "N": N}, result, ledger)


def _valid(source: str) -> BasedRootDatum:
    rd = load_datum(source)
    bad = validate(rd)
    if bad:
        raise UsageError(f"invalid root datum: {bad[0]}")
    return rd


def cmd_dualize(args) -> int:
    rd = _valid(args.datum)
    Q = QuadForm.parse(args.Q, rd.rank, args.N)
    command = {"command": "dualize", "datum": args.datum, "N": args.N, "Q": args.Q}
    if not is_strict(rd, Q):
        a, k, lhs, rhs = strictness_violations(rd, Q)[0]
        v = {"coroot": list(rd.coroots[a]), "basis_vector": k, "b(coroot, e_k)": lhs,
             "<root, e_k> Q(coroot)": rhs}
        return emit(command, {"refused": True, "form": _form_json(Q), "violation": v},
                    [suites.entry("form is strict", False, v)])
    dp = dual_pair(rd, Q)
    sh, eps = dp.sharp, dp.epsilon
    ledger = [suites.entry("form is strict", True),
              suites.entry("divided roots are integral", sh.integral),
              suites.entry("canonical braided representative has the same invariant", eps.canonical_agrees)]
    W = weyl_group(rd, cap=args.weyl_cap)
    if W.complete:
        bad = [list(map(list, w)) for w in W.elements if not borel_independence_check(rd, Q, w).ok]
        ledger.append(suites.entry("independent of the simple system", not bad,
                                   {"elements": len(W), "failures": bad[:3]}))
    else:
        ledger.append(suites.entry("independent of the simple system (skipped: Weyl group over cap)", True))
    result = {
        "form": _form_json(Q),
        "sharp": {"basis": sh.basis, "multipliers": [sh.multipliers[k] for k in range(len(rd.coroots))],
                  "datum": _datum_json(sh.datum)},
        "dual": {"datum": _datum_json(dp.dual), "text": dp.dual.to_text()},
        "center_characters": str(dp.center_characters),
        "epsilon": {"domain": list(eps.orders), "quotient_by_two": eps.mod_two,
                    "table": [{"element": list(g), "value": v} for g, v in sorted(eps.values.items())]},
    }
    return emit(command, result, ledger)


def cmd_theta(args) -> int:
    t = theta_skeleton(args.rank, args.N, args.level)
    ok = (t.pi0, t.pi1, t.pi2) == t.expected()
    result = {"rank": args.rank, "N": args.N, "level": args.level,
              "homotopy": [str(t.pi0), str(t.pi1), str(t.pi2)],
              "routes": {k: [str(g) for g in v] for k, v in t.routes.items()}}
    return emit({"command": "theta", "rank": args.rank, "N": args.N, "level": args.level}, result,
                [suites.entry("routes agree", t.agree), suites.entry("closed form", ok)])


def cmd_hilbert(args) -> int:
    v = Place.parse(args.place, args.N)
    val = hilbert_symbol(args.a, args.b, v)
    return emit({"command": "hilbert", "place": str(v), "N": args.N, "a": args.a, "b": args.b},
                {"exponent": val}, [])


def cmd_symbol_suite(args) -> int:
    v = Place.parse(args.place, args.N)
    sample = [s.strip() for s in args.sample.split(",") if s.strip()]
    rep = symbol_identity_suite(v, sample)
    ledger = [suites.entry(k, not rep.failures[k], {"checked": rep.checked[k], "failures": rep.failures[k][:3]})
              for k in rep.checked]
    return emit({"command": "symbol-suite", "place": str(v), "N": args.N, "sample": sample},
                {"sample": rep.sample}, ledger)


def _read_matrix(source: str):
    text = open(source, encoding="utf-8").read() if os.path.exists(source) else source
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if text.startswith("["):
        return json.loads(text)
    return [[int(t) for t in line.replace(",", " ").split()] for line in text.splitlines() if line.strip()]


def cmd_torus_cover(args) -> int:
    v = Place.parse(args.place, args.N)
    c = _read_matrix(args.cocycle)
    tc = torus_cover(args.rank, c, v)
    sample = [[s.strip() for s in pt.split(",")] for pt in args.sample.split(";")] if args.sample else \
        _default_torus_sample(args.rank, v)
    for pt in sample:
        if len(pt) != args.rank:
            raise UsageError(f"sample point {pt} does not have {args.rank} entries")
    rep = tc.commutator_report(sample)
    assoc = tc.associativity_failures(sample)
    ledger = [suites.entry("group law is associative on the sample", not assoc, len(assoc))]
    result = {"cocycle": [list(r) for r in tc.c], "commutators": rep["pairs"],
              "commutator_agrees_with": rep["agrees_with"]}
    return emit({"command": "torus-cover", "rank": args.rank, "place": str(v), "N": args.N}, result, ledger)


def _default_torus_sample(r: int, v: Place):
    base = ["-1", "2", str(v.p) if v.p else "3"]
    return [[base[(i + k) % len(base)] for k in range(r)] for i in range(len(base))]


def cmd_verify(args) -> int:
    if args.suite in suites.EXPERIMENTS:
        obs = suites.EXPERIMENTS[args.suite]()
        return emit({"command": "verify", "suite": args.suite}, {"observations": obs}, [])
    try:
        ledger = suites.run(args.suite)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}") from None
    return emit({"command": "verify", "suite": args.suite}, {"checks": len(ledger)}, ledger)


def cmd_catalog(args) -> int:
    if not args.name:
        sys.stdout.write("\n".join(CATALOG_NAMES) + "\n")
        return 0
    sys.stdout.write(catalog(args.name).to_text())
    return 0


# ---------------------------------------------------------------------------

class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="metaplectic", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def datum(sp):
        sp.add_argument("datum", help="root-datum file, or catalog:NAME")

    sp = sub.add_parser("validate", help="check the root datum axioms")
    datum(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("classify", help="cohomology of BG and strict forms")
    datum(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("dualize", help="dual root datum, center and epsilon table")
    datum(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--Q", required=True, help="coefficient list like [1,0,1] or monomials like x^2+y^2")
    sp.add_argument("--weyl-cap", type=int, default=2000)
    sp.set_defaults(func=cmd_dualize)

    sp = sub.add_parser("theta", help="homotopy groups of theta data three ways")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--level", type=int, choices=(1, 2), default=1)
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("hilbert", help="Hilbert symbol as an exponent")
    sp.add_argument("--place", required=True, help="a prime, or R")
    sp.add_argument("--N", type=int, default=2)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("symbol-suite", help="symbol identities over a sample")
    sp.add_argument("--place", required=True)
    sp.add_argument("--N", type=int, default=2)
    sp.add_argument("--sample", required=True, help="comma-separated rationals")
    sp.set_defaults(func=cmd_symbol_suite)

    sp = sub.add_parser("torus-cover", help="commutators of a split torus cover")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--cocycle", required=True, help="file or inline matrix")
    sp.add_argument("--place", required=True)
    sp.add_argument("--N", type=int, default=2)
    sp.add_argument("--sample", help="points separated by ';', entries by ','")
    sp.set_defaults(func=cmd_torus_cover)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", default="all", help=", ".join(list(suites.SUITES) + ["all"] + list(suites.EXPERIMENTS)))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("catalog", help="list catalog names or print one datum")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2
    try:
        return args.func(args)
    except (ParseError, UsageError, PlaceError, NotStrict, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
