"""Command line interface.

Exit codes: 0 success (or an affirmative verdict), 1 a well-formed negative
verdict, 2 bad input, 3 a failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import catalog
from . import derhamring as dr
from . import hdrring as hdr
from . import hodgering as hr
from . import suite
from .gradedpoly import Poly
from .intlattice import IntMatrix, mod_span, rank, saturate, span_equal

SCHEMA = "hodgelab/1"
SPACES = ("hodge", "derham", "hdr")

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(obj, args) -> None:
    payload = {"schema": SCHEMA, **obj}
    if getattr(args, "pretty", False):
        print(json.dumps(payload, indent=2))
    else:
        print(json.dumps(payload))


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _terms(p: Poly) -> dict:
    return {"expression": str(p), "terms": p.to_json()}


# -- rank ---------------------------------------------------------------------------


def cmd_rank(args) -> int:
    space = args.space_opt or args.space
    degree = args.degree_opt if args.degree_opt is not None else args.degree
    if space is None or degree is None:
        raise InputError("rank needs a space and a degree")
    if space not in SPACES:
        raise InputError(f"unknown space {space!r}")
    if degree < 0:
        raise InputError("degree must be non-negative")
    fn = {"hodge": hr.rank_H, "derham": dr.rank_DR, "hdr": hdr.rank_HDR}[space]
    print(fn(degree))
    return EXIT_OK


# -- decompose ----------------------------------------------------------------------


def _parse_element(data):
    if not isinstance(data, dict) or "type" not in data:
        raise InputError("expected a JSON object with a 'type' field")
    kind = data["type"]
    try:
        if kind == "hodge":
            return hr.HodgeDiamond.from_json(data)
        if kind == "derham":
            return dr.DeRhamVector.from_json(data)
        if kind == "hdr":
            return hdr.HdrElement.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed {kind} element: {exc}") from exc
    raise InputError(f"unknown element type {kind!r}")


def cmd_decompose(args) -> int:
    el = _parse_element(_load_json(args.input_opt or args.input))
    if isinstance(el, hr.HodgeDiamond):
        if not hr.is_member(el):
            _emit({"type": "hodge", "n": el.n, "member": False,
                   "reason": "Serre duality h[i][j] == h[n-i][n-j] fails"}, args)
            return EXIT_NEGATIVE
        res = hr.decompose(el)
        _emit({"type": "hodge", "n": el.n, "member": True, "expression": str(res),
               "P0": _terms(res.P0), "P1": _terms(res.P1)}, args)
        return EXIT_OK
    if isinstance(el, dr.DeRhamVector):
        if not dr.is_member_dr(el):
            _emit({"type": "derham", "n": el.n, "member": False,
                   "reason": "Poincare duality or middle parity fails"}, args)
            return EXIT_NEGATIVE
        res = dr.decompose_DR(el)
        _emit({"type": "derham", "n": el.n, "member": True, **_terms(res)}, args)
        return EXIT_OK
    if not el.is_member:
        _emit({"type": "hdr", "n": el.n, "member": False,
               "reason": "needs a in H_n, b in DR_n, h00(a) == h0(b), chi(a) == chi(b)"}, args)
        return EXIT_NEGATIVE
    res = hdr.decompose_HDR(el)
    g2_part, g3_part, base = {}, {}, {}
    for exp, c in res.items():
        target = g2_part if exp[4] else g3_part if exp[5] else base
        target[exp[:4]] = c
    _emit({
        "type": "hdr", "n": el.n, "member": True, **_terms(res),
        "hodge_part": str(hr.ABCD(base)),
        "ideal_coefficients": {"g2": str(hr.ABCD(g2_part)), "g3": str(hr.ABCD(g3_part))},
    }, args)
    return EXIT_OK


# -- relations ----------------------------------------------------------------------


def _independent(named, dim):
    out = []
    for name, v in named:
        if rank(IntMatrix([w for _, w in out] + [v], ncols=dim)) > len(out):
            out.append((name, v))
    return out


def _hodge_named(n):
    reps = [(i, j) for i, j in hr.orbit_representatives(n) if (i, j) != (n - i, n - j)]
    return [(f"serre[{i},{j}]", v) for (i, j), v in zip(reps, hr.serre_vectors(n))]


def cmd_relations(args) -> int:
    space = args.space_opt or args.space
    n = args.degree_opt if args.degree_opt is not None else args.degree
    m = args.mod
    if space not in SPACES or n is None or n < 0:
        raise InputError("relations needs --space {hodge,derham,hdr} and a degree >= 0")
    if m is not None and m < 2:
        raise InputError("--mod must be >= 2")

    if space == "hodge":
        dim = (n + 1) ** 2
        named = _hodge_named(n)
        computed = [f.vector() for f in (hr.congruences(n, m) if m else hr.relations(n))]
        fmt = lambda v: {"lambda": [list(v[i * (n + 1):(i + 1) * (n + 1)]) for i in range(n + 1)]}
    elif space == "derham":
        dim = 2 * n + 1
        named = [(f"poincare[{i}]", v) for i, v in enumerate(dr.poincare_vectors(n))]
        if m and m % 2 == 0 and n % 2:
            named.append(("parity", dr.parity_vector(n, m)))
        computed = dr.dr_congruences(n, m) if m else dr.dr_relations(n)
        fmt = lambda v: {"mu": list(v)}
    else:
        dim = (n + 1) ** 2 + 2 * n + 1
        named = hdr.named_relations(n, m)
        computed = [f.vector() for f in (hdr.hdr_congruences(n, m) if m else hdr.hdr_relations(n))]
        fmt = lambda v: {k: val for k, val in hdr.CombinedFunctional.from_vector(n, v).to_json().items()
                         if k in ("lambda", "mu")}

    named = _independent(named, dim)
    vectors = [v for _, v in named]
    if m:
        verified = mod_span(computed, m, dim) == mod_span(vectors, m, dim)
    else:
        verified = span_equal(computed, saturate(vectors, dim), dim) if vectors else not computed
    _emit({
        "space": space, "n": n, "modulus": m, "verified": verified,
        "relations": [{"name": name, **fmt(v)} for name, v in named],
    }, args)
    return EXIT_OK if verified else EXIT_VERIFY


# -- birational ---------------------------------------------------------------------


def cmd_birational(args) -> int:
    data = _load_json(args.input_opt or args.input)
    try:
        f = hr.LinearFunctional.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed functional: {exc}") from exc
    verdict = hr.is_birational_invariant(f)
    _emit({"n": f.n, "modulus": f.modulus, **verdict.to_json()}, args)
    return EXIT_OK if verdict.invariant else EXIT_NEGATIVE


# -- verify -------------------------------------------------------------------------


def cmd_verify(args) -> int:
    only = [x for part in (args.only or []) for x in part.split(",") if x]
    for label, value in (("--max", args.max), ("--max-hdr", args.max_hdr)):
        if value < 0:
            raise InputError(f"{label} must be >= 0")
        if value > suite.SOFT_CEILING:
            print(f"warning: {label} {value} is above the soft ceiling {suite.SOFT_CEILING}; "
                  "this may be slow", file=sys.stderr)
    try:
        suite.select(only)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    start = time.perf_counter()
    report = suite.run_suite(args.max, args.max_hdr, only, jobs=args.jobs, tamper=args.tamper)
    elapsed = time.perf_counter() - start
    out = {"max": args.max, "max_hdr": args.max_hdr, **report.to_json(timings=args.timings)}
    _emit(out, args)
    by_check: dict[str, list] = {}
    for rec in report.checks:
        by_check.setdefault(rec.check_id, []).append(rec)
    for check_id, recs in by_check.items():
        bad = [r for r in recs if r.status != "pass"]
        status = "FAIL" if bad else "pass"
        line = f"{status:4}  {check_id:26} degrees {recs[0].degree}..{recs[-1].degree}"
        if bad:
            line += f"  first failure n={bad[0].degree}: {bad[0].witness}"
        print(line, file=sys.stderr)
    print(f"{'all checks passed' if report.ok else 'VERIFICATION FAILED'} ({elapsed:.2f}s)", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY


# -- catalog ------------------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        _emit({"names": catalog.names()}, args)
        return EXIT_OK
    if args.action == "show":
        if len(args.names) != 1:
            raise InputError("catalog show takes exactly one name")
        try:
            entry = catalog.get(args.names[0])
        except catalog.UnknownName as exc:
            raise InputError(f"unknown catalog name {exc}") from exc
        _emit({"entry": entry.to_json()}, args)
        return EXIT_OK
    try:
        el = catalog.product(args.names)
    except catalog.UnknownName as exc:
        raise InputError(f"unknown catalog name {exc}") from exc
    except catalog.PartialEntry as exc:
        _emit({"error": "partial entry", "detail": str(exc)}, args)
        return EXIT_NEGATIVE
    _emit({"names": args.names, "element": el.to_json(),
           "hodge_poly": str(el.a), "derham_poly": str(el.b)}, args)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON output")

    p = argparse.ArgumentParser(prog="hodgelab", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = p.add_subparsers(dest="command", required=True)

    def space_degree(sp):
        sp.add_argument("space", nargs="?", choices=SPACES)
        sp.add_argument("degree", nargs="?", type=int)
        sp.add_argument("--space", dest="space_opt", choices=SPACES)
        sp.add_argument("--degree", "-n", dest="degree_opt", type=int)

    sp = sub.add_parser("rank", parents=[common], help="rank of H_n, DR_n or HDR_n")
    space_degree(sp)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("decompose", parents=[common], help="write an element in the generators")
    sp.add_argument("input", nargs="?")
    sp.add_argument("--input", dest="input_opt")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("relations", parents=[common], help="universal linear relations / congruences")
    space_degree(sp)
    sp.add_argument("--mod", type=int)
    sp.set_defaults(func=cmd_relations)

    sp = sub.add_parser("birational", parents=[common], help="is a functional a birational invariant?")
    sp.add_argument("input", nargs="?")
    sp.add_argument("--input", dest="input_opt")
    sp.set_defaults(func=cmd_birational)

    sp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    sp.add_argument("--max", type=int, default=suite.DEFAULT_MAX)
    sp.add_argument("--max-hdr", type=int, default=suite.DEFAULT_MAX_HDR)
    sp.add_argument("--only", action="append",
                    help="comma separated groups (ranks, hodge, derham, hdr) or check ids")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timings", action="store_true", help="include wall times in the JSON report")
    sp.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("catalog", parents=[common], help="named classes")
    sp.add_argument("action", choices=("list", "show", "product"))
    sp.add_argument("names", nargs="*")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) in ("decompose", "birational") and not (args.input or args.input_opt):
        parser.error(f"{args.command} needs an input file")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
