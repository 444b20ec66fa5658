"""Command-line entry point.  Exit codes: 0 pass, 1 claim or property failure, 2 bad input."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import io
from .catalog import (SIMPLEX_FAMILIES, TABLE2_IDS, TABLE3_IDS, canonical_family, half_sum_invariant,
                      make_simplex, make_table2, make_table3, spans_lattice, strip_pyramids)
from .classify import ClassificationError, classify
from .ehrhart import delta_from_counts
from .enumeration import VMAX, BoundExceeded, enumerate_groups, enumerate_simplices
from .equivalence import SearchBudgetExceeded, are_equivalent
from .groups import InvalidParameters
from .polytope import affine_lattice_normalize, normalized_volume, pyramid
from .verify import FAIL, INDETERMINATE, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _out(text: str) -> None:
    sys.stdout.write(text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(f"latpoly: {text}\n")


def _flag(b: bool) -> str:
    return "true" if b else "false"


# -- subcommands -----------------------------------------------------------------------

def invariants_of(P) -> dict:
    Pn, _ = affine_lattice_normalize(P)
    delta = delta_from_counts(Pn)
    return {"name": P.name, "dim": P.ambient_dim, "intrinsic_dim": Pn.ambient_dim,
            "delta": list(delta.entries), "delta_polynomial": delta.polynomial(),
            "volume": normalized_volume(Pn), "spans_lattice": spans_lattice(Pn),
            "pyramid_layers": strip_pyramids(Pn).layers, "half_sum": half_sum_invariant(Pn)}


def cmd_invariants(args) -> int:
    inv = invariants_of(io.read_polytope(args.file))
    if args.json:
        _out(io.dumps(inv))
    else:
        _out(f"delta: {inv['delta_polynomial']}, vol: {inv['volume']}, "
             f"spans: {_flag(inv['spans_lattice'])}, pyramids: {inv['pyramid_layers']}, "
             f"half-sum: {inv['half_sum']}")
    return EXIT_OK


def generate(family: str, i1=None, i2=None, i3=None, k=None, pyramids: int = 0):
    family = canonical_family(family)
    if family in SIMPLEX_FAMILIES:
        if k is not None:
            raise InvalidParameters(f"{family} takes --i1.. exponents, not --k")
        exps = [x for x in (i1, i2, i3) if x is not None]
        P = make_simplex(family, *exps)
    elif family in TABLE3_IDS:
        if k is None:
            raise InvalidParameters(f"{family} needs --k")
        P = make_table3(family, k)
    elif family in TABLE2_IDS:
        if any(x is not None for x in (i1, i2, i3, k)):
            raise InvalidParameters(f"{family} takes no parameters")
        P = make_table2(family)
    else:
        raise InvalidParameters(f"unknown family {family!r}")
    for _ in range(pyramids):
        P = pyramid(P)
    return P


def cmd_generate(args) -> int:
    if args.pyramids < 0:
        raise InvalidParameters("--pyramids must be non-negative")
    io.write_polytope(generate(args.family, args.i1, args.i2, args.i3, args.k, args.pyramids))
    return EXIT_OK


def cmd_classify(args) -> int:
    P = io.read_polytope(args.file)
    try:
        res = classify(P, budget=args.budget)
    except ClassificationError as exc:
        _err(str(exc))
        return EXIT_FAIL
    if args.json:
        _out(io.dumps(res.to_dict()))
    elif res.in_scope:
        _out(f"{res.entry.label()}, pyramids: {res.entry.pyramids}")
    else:
        _out(f"volume exceeds 4 (volume {res.volume})")
    return EXIT_OK if res.in_scope else EXIT_FAIL


def cmd_equiv(args) -> int:
    P, Q = io.read_polytope(args.file1), io.read_polytope(args.file2)
    if P.ambient_dim != Q.ambient_dim:
        raise io.InputError("the two polytopes live in different dimensions")
    try:
        w = are_equivalent(P, Q, budget=args.budget)
    except SearchBudgetExceeded:
        _out(io.dumps({"equivalent": None}) if args.json else "undecided: search budget exhausted")
        return EXIT_FAIL
    if args.json:
        _out(io.dumps({"equivalent": w is not None, "witness": w.to_dict() if w else None}))
    else:
        _out("equivalent" if w else "not equivalent")
        if w:
            _out(io.dumps(w.to_dict()))
    return EXIT_OK if w else EXIT_FAIL


def _suite_kwargs(args) -> dict:
    kw = {}
    name = args.suite
    if args.dmax is not None and name in ("tables", "feasibility", "enumeration", "lemmas"):
        kw["dmax"] = args.dmax
    if args.kmax is not None and name in ("tables", "matrices", "lemmas"):
        kw["kmax"] = args.kmax
    if args.budget is not None and name == "matrices":
        kw["budget"] = args.budget
    if args.seed is not None and name == "lemmas":
        kw["seed"] = args.seed
    if args.as_printed and name == "feasibility":
        kw["as_printed"] = True
    if name in ("tables", "matrices", "lemmas"):
        kw["workers"] = args.workers
    return kw


def cmd_verify(args) -> int:
    if args.dmax is not None and args.dmax < 1:
        raise BoundExceeded("--dmax must be at least 1")
    if args.kmax is not None and args.kmax < 2:
        raise BoundExceeded("--kmax must be at least 2")
    report = run_suite(args.suite, **_suite_kwargs(args))
    if args.json:
        _out(io.dumps(report.to_dict()))
    else:
        for c in report.checks:
            line = f"{c['status'].upper():13} {c['id']}"
            note = c["details"].get("note") if isinstance(c["details"], dict) else None
            if note:
                line += f"  [{note}]"
            if c["status"] in (FAIL, INDETERMINATE) or c["id"] == "class-counts":
                line += f"  {io.json.dumps(c['details'], ensure_ascii=False)}"
            _out(line)
        n = report.counts()
        _out(f"{report.suite}: {'pass' if report.ok else 'fail'} "
             f"({n['pass']} pass, {n['fail']} fail, {n['indeterminate']} indeterminate)")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_enumerate(args) -> int:
    dmax = 4 if args.dmax is None else args.dmax
    sweep = enumerate_groups if args.groups else enumerate_simplices
    out = {}
    for d in range(1, dmax + 1):
        out[d] = [c.to_dict() for c in sweep(d, args.vmax)]
    if args.json:
        _out(io.dumps({str(d): cs for d, cs in out.items()}))
    else:
        for d, cs in out.items():
            _out(f"d={d}: {len(cs)} classes")
            for c in cs:
                _out(f"  vol {c['volume']}  delta {c['delta_polynomial']}")
    return EXIT_OK


def cmd_apply(args) -> int:
    T = io.read_map(args.map)
    P = io.read_polytope(args.file)
    try:
        image = io.apply_any(T, P)
    except io.InputError:
        raise
    except ValueError as exc:
        _err(f"map does not apply: {exc}")
        return EXIT_FAIL
    io.write_polytope(image)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latpoly", description="Exact invariants and classification of "
                                "lattice polytopes of normalized volume at most four.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", help="delta-vector, volume, spanning, pyramid layers")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("generate", help="catalog polytope as a JSON file")
    s.add_argument("family", help="Δ2 Δ3 Δ41 Δ42 Δ43 (or D2..), P2..S4_4, A4_1 A4_2 A4_3 B4")
    for name in ("--i1", "--i2", "--i3", "--k"):
        s.add_argument(name, type=int)
    s.add_argument("--pyramids", type=int, default=0)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("classify", help="catalog id, parameters and witness chain")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.add_argument("--budget", type=int, default=10**6)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("equiv", help="decide unimodular equivalence of two polytopes")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--json", action="store_true")
    s.add_argument("--budget", type=int, default=10**6)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("verify", help="run a reproduction suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--json", action="store_true")
    s.add_argument("--dmax", type=int)
    s.add_argument("--kmax", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--budget", type=int)
    s.add_argument("--as-printed", action="store_true", help="literal V=3 feasibility condition")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="brute-force simplex classes of small volume")
    s.add_argument("--dmax", type=int)
    s.add_argument("--vmax", type=int, default=VMAX)
    s.add_argument("--groups", action="store_true", help="use the group sweep instead of Hermite forms")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("apply", help="apply a map or witness chain to a polytope")
    s.add_argument("map")
    s.add_argument("file")
    s.set_defaults(func=cmd_apply)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (io.InputError, InvalidParameters, BoundExceeded) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except ValueError as exc:
        # geometry rejected the input, e.g. duplicate points or a non-unimodular matrix
        _err(f"invalid input: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
