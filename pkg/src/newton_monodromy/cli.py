"""Command line front end.

Reads an instance description (JSON with explicit supports, or
polynomial text), runs the monodromy pipeline, and emits a JSON or
table report.  Exit codes: 0 on success, 1 on invalid input, 2 when an
internal consistency assertion or a self-check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .latticecount import EigenvalueClass
from .oracles import run_all
from .pipeline import (
    enumerate_theta_packages,
    eigenvalue_candidates,
    jordan_blocks,
    spectrum,
)
from .polys import pstr


# ---------------------------------------------------------------------------
# polynomial text parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"(?:(?P<num>\d+)|(?P<name>[A-Za-z]\w*)"
                    r"|(?P<op>[-+*^])|(?P<bad>\S))")

_SHORT_NAMES = ("x", "y", "z", "w")


def _tokenize(s):
    out = []
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(s, pos)
        if m.lastgroup == "bad":
            raise ValueError("unexpected character %r at position %d"
                             % (m.group(), pos))
        out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return out


def _variable_index(name, n, pos):
    if name.startswith("x") and name[1:].isdigit():
        i = int(name[1:])
        if 1 <= i <= n:
            return i - 1
    if n <= 4 and name in _SHORT_NAMES[:n]:
        return _SHORT_NAMES.index(name)
    raise ValueError("unknown variable %r at position %d" % (name, pos))


def parse_polynomial_text(s, n):
    """Support set of a polynomial written with '+', '-', '*', '^'.

    Variables are x1..xn (or x, y, z, w when n <= 4); exponents are
    non-negative integers; coefficients are integers and only their
    being non-zero matters.
    """
    tokens = _tokenize(s)
    if not tokens:
        raise ValueError("empty polynomial")
    support = set()
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == "op" and \
                tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
            first = False
        if first:
            first = False
        if i >= len(tokens):
            raise ValueError("dangling sign at end of polynomial")
        coeff = sign
        expo = [0] * n
        expect_factor = True
        while i < len(tokens):
            kind, text, pos = tokens[i]
            if kind == "op" and text in "+-" and not expect_factor:
                break
            if kind == "num":
                coeff *= int(text)
                i += 1
            elif kind == "name":
                vi = _variable_index(text, n, pos)
                power = 1
                i += 1
                if i < len(tokens) and tokens[i][:2] == ("op", "^"):
                    i += 1
                    if i < len(tokens) and tokens[i][:2] == ("op", "-"):
                        raise ValueError(
                            "negative exponent at position %d"
                            % tokens[i][2])
                    if i >= len(tokens) or tokens[i][0] != "num":
                        raise ValueError(
                            "exponent expected at position %d" % pos)
                    power = int(tokens[i][1])
                    i += 1
                expo[vi] += power
            elif kind == "op" and text == "*":
                i += 1
                expect_factor = True
                continue
            else:
                raise ValueError("unexpected token %r at position %d"
                                 % (text, pos))
            expect_factor = False
        if expect_factor:
            raise ValueError("incomplete term in polynomial")
        if coeff != 0:
            support.add(tuple(expo))
    return sorted(support)


# ---------------------------------------------------------------------------
# problem specification and result document
# ---------------------------------------------------------------------------

@dataclass
class ProblemSpec:
    """Validated instance plus run options."""

    n: int
    k: int
    supports: list
    mode: str = "local"
    want_spectrum: bool = False
    eigenvalues: list | None = None
    check: str = "none"
    jobs: int = 1
    seed: int = 1
    fmt: str = "json"

    def validate(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise ValueError("n and k must be integers")
        if not 2 <= self.k <= self.n:
            raise ValueError("need 2 <= k <= n")
        if self.mode not in ("local", "infinity"):
            raise ValueError("mode must be 'local' or 'infinity'")
        if len(self.supports) != self.k:
            raise ValueError("need exactly k polynomials")
        for s in self.supports:
            if not s:
                raise ValueError("empty support")


def load_problem(data, args):
    """ProblemSpec from a parsed JSON document and CLI arguments."""
    if not isinstance(data, dict):
        raise ValueError("input must be a JSON object")
    try:
        n = data["n"]
        k = data["k"]
        polys = data["polynomials"]
    except KeyError as exc:
        raise ValueError("missing input field %s" % exc)
    if not isinstance(polys, list):
        raise ValueError("'polynomials' must be a list")
    supports = []
    for i, entry in enumerate(polys):
        if not isinstance(entry, dict):
            raise ValueError("polynomial %d must be an object" % i)
        if "support" in entry:
            sup = [tuple(int(x) for x in p) for p in entry["support"]]
        elif "expr" in entry:
            sup = parse_polynomial_text(entry["expr"], n)
        else:
            raise ValueError(
                "polynomial %d needs a 'support' or 'expr' field" % i)
        supports.append(sorted(set(sup)))
    mode = args.mode or data.get("mode", "local")
    eigenvalues = None
    if args.eigenvalue:
        eigenvalues = [EigenvalueClass.parse(t) for t in args.eigenvalue]
    jobs = os.cpu_count() or 1 if args.jobs == "auto" else int(args.jobs)
    if jobs < 1:
        raise ValueError("--jobs must be at least 1")
    spec = ProblemSpec(n=n, k=k, supports=supports, mode=mode,
                       want_spectrum=args.spectrum,
                       eigenvalues=eigenvalues, check=args.check,
                       jobs=jobs, seed=args.seed, fmt=args.format)
    spec.validate()
    return spec


def _beta_array(beta):
    if not beta:
        return [0]
    top = max(beta)
    return [beta.get(i, 0) for i in range(top + 1)]


def _entry(report):
    return {
        "eigenvalue": str(report.eigenvalue),
        "order": report.eigenvalue.order,
        "counts_geq": list(report.counts_geq),
        "counts_exact": list(report.counts_exact),
        "beta": _beta_array(report.beta),
    }


def _worker(payload):
    supports, n, k, mode, texts, check = payload
    pkgs = enumerate_theta_packages(supports, n, k, mode)
    out = []
    for t in texts:
        rep = jordan_blocks(pkgs, EigenvalueClass.parse(t), check=check)
        out.append(_entry(rep))
    return out


def run(spec):
    """Full computation; returns the result document as a dict."""
    pkgs = enumerate_theta_packages(spec.supports, spec.n, spec.k,
                                    spec.mode)
    candidates = eigenvalue_candidates(pkgs)
    targets = spec.eigenvalues if spec.eigenvalues is not None \
        else candidates
    targets = sorted(set(targets), key=lambda c: c.b)
    check = spec.check != "none"
    groups = {}
    for c in targets:
        groups.setdefault(c.order, []).append(str(c))
    order_keys = sorted(groups)
    entries = []
    if spec.jobs > 1 and len(order_keys) > 1:
        payloads = [(spec.supports, spec.n, spec.k, spec.mode,
                     groups[o], check) for o in order_keys]
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            for chunk in pool.map(_worker, payloads):
                entries.extend(chunk)
    else:
        for o in order_keys:
            for t in groups[o]:
                rep = jordan_blocks(pkgs, EigenvalueClass.parse(t),
                                    check=check)
                entries.append(_entry(rep))
    entries.sort(key=lambda e: Fraction(e["eigenvalue"]))
    doc = {
        "tool": "newton-monodromy",
        "version": __version__,
        "input": {
            "n": spec.n,
            "k": spec.k,
            "mode": spec.mode,
            "polynomials": [{"support": [list(p) for p in s]}
                            for s in spec.supports],
        },
        "eigenvalue_candidates": [str(c) for c in candidates],
        "results": entries,
    }
    if spec.want_spectrum:
        sp = spectrum(pkgs)
        doc["spectrum"] = [[str(b), c] for b, c in sp.items()]
    if spec.check != "none":
        reports = run_all(spec.seed, fast=(spec.check == "fast"))
        doc["checks"] = [r.as_dict() for r in reports]
    return doc


# ---------------------------------------------------------------------------
# rendering and entry point
# ---------------------------------------------------------------------------

def _render_table(doc):
    lines = []
    if "input" in doc:
        inp = doc["input"]
        lines.append("instance: n=%d k=%d mode=%s"
                     % (inp["n"], inp["k"], inp["mode"]))
        lines.append("eigenvalue candidates: %s"
                     % (", ".join(doc["eigenvalue_candidates"])
                        or "(none)"))
    for e in doc.get("results", ()):
        beta = {i: c for i, c in enumerate(e["beta"]) if c}
        lines.append("eigenvalue %s (order %d): blocks >= i: %s; "
                     "exact: %s; beta: %s"
                     % (e["eigenvalue"], e["order"], e["counts_geq"],
                        e["counts_exact"], pstr(beta)))
    if "spectrum" in doc:
        parts = ["%s: %d" % (b, c) for b, c in doc["spectrum"]]
        lines.append("spectrum: %s" % (", ".join(parts) or "(zero)"))
    for chk in doc.get("checks", ()):
        lines.append("check %s: %s (%d/%d)"
                     % (chk["name"], "ok" if chk["ok"] else "FAILED",
                        chk["passed"], chk["count"]))
    return "\n".join(lines) + "\n"


def _emit(doc, fmt, out):
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(_render_table(doc))


def _main_parser():
    p = argparse.ArgumentParser(
        prog="newton-monodromy",
        description="Jordan block structure of Milnor monodromies of "
                    "non-degenerate complete intersections, computed "
                    "from Newton polyhedra.")
    p.add_argument("--input", default="-",
                   help="JSON instance file, or '-' for stdin")
    p.add_argument("--mode", choices=["local", "infinity"], default=None,
                   help="override the mode given in the input")
    p.add_argument("--spectrum", action="store_true",
                   help="also compute the non-integral spectrum")
    p.add_argument("--eigenvalue", action="append", metavar="a/d",
                   help="restrict to an eigenvalue class (repeatable)")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--check", choices=["none", "fast", "full"],
                   default="none",
                   help="run consistency checks alongside the pipeline")
    p.add_argument("--jobs", default="1",
                   help="parallel workers: a number, or 'auto'")
    p.add_argument("--seed", type=int, default=1,
                   help="seed for randomized self-check instances")
    return p


def _check_parser():
    p = argparse.ArgumentParser(
        prog="newton-monodromy check",
        description="Run the randomized self-check suites standalone.")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--fast", action="store_true")
    p.add_argument("--format", choices=["json", "table"], default="json")
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "check":
            args = _check_parser().parse_args(argv[1:])
            reports = run_all(args.seed, fast=args.fast)
            doc = {"tool": "newton-monodromy", "version": __version__,
                   "checks": [r.as_dict() for r in reports]}
            _emit(doc, args.format, sys.stdout)
            return 0 if all(r.ok for r in reports) else 2
        args = _main_parser().parse_args(argv)
        if args.input == "-":
            raw = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as fh:
                raw = fh.read()
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError("invalid JSON input: %s" % exc)
        spec = load_problem(data, args)
        doc = run(spec)
        _emit(doc, spec.fmt, sys.stdout)
        checks = doc.get("checks", ())
        return 0 if all(c["ok"] for c in checks) else 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (ArithmeticError, RuntimeError) as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
