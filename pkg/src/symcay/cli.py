"""``symcay`` command line: build, verify, aut, iso, classify, census, script.

Exit codes: 0 pass, 1 verification failure, 2 invalid parameters or
input, 3 resource bound exceeded, 4 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import itertools
import json
import sys
import time
from pathlib import Path

from . import catalog, limits, symmetry
from .graphs import Graph
from .limits import BoundExceeded, HypothesisError
from .notation import format_permutation
from .script import ScriptError, run_script

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_BOUND = 3
EXIT_IO = 4


class _InputError(Exception):
    """Unreadable or malformed input file (exit 4)."""


def _params(pairs: list[str] | None) -> dict:
    out = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise HypothesisError(f"--param expects key=value, got {pair!r}")
        out[key.strip()] = value.strip()
    return out


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return Graph.from_json(text)
    except ValueError as exc:  # json.JSONDecodeError is a ValueError
        raise _InputError(f"{path}: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise _InputError(f"cannot write {path}: {exc.strerror}") from None


def _build(args, out) -> int:
    entry = catalog.build(args.name, _params(args.param))
    text = entry.graph.to_json() + "\n"
    if args.out:
        _write(args.out, text)
        out(f"{args.name} {json.dumps(entry.params, sort_keys=True)}: "
            f"{entry.graph.n} vertices, {entry.graph.num_edges()} edges -> {args.out}")
    else:
        out(text.rstrip("\n"))
    return EXIT_OK


def _verify(args, out) -> int:
    t0 = time.perf_counter()
    entry = catalog.build(args.name, _params(args.param))
    t1 = time.perf_counter()
    report = catalog.verify(entry, "full" if args.full else "structural", stretch=args.stretch)
    t2 = time.perf_counter()
    data = report.to_dict()
    if args.timing:
        data["timing"] = {"build_s": round(t1 - t0, 3), "verify_s": round(t2 - t1, 3)}
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if args.json:
        out(text.rstrip("\n"))
    else:
        for it in report.items:
            mark = {True: "PASS", False: "FAIL", None: "INFO"}[it.passed]
            expect = "" if it.passed is None else f" (expect {it.op} {it.expect})"
            err = f" [{it.error}]" if it.error else ""
            out(f"{mark} {it.key} = {it.value}{expect} <{it.ref}>{err}")
        out(f"{report.entry}: {'PASS' if report.passed else 'FAIL'}")
    if args.out:
        _write(args.out, text)
    return EXIT_OK if report.passed else EXIT_FAIL


def _aut(args, out) -> int:
    gamma = _read_graph(args.file)
    grp = symmetry.automorphism_group(gamma)
    out(f"order {grp.order()}")
    for g in grp.generators:
        out(format_permutation(g))
    return EXIT_OK


def _iso(args, out) -> int:
    a, b = _read_graph(args.file1), _read_graph(args.file2)
    perm = symmetry.are_isomorphic(a, b)
    if perm is None:
        out("not isomorphic")
    else:
        out("isomorphic")
        out(" ".join(f"{v + 1}->{w + 1}" for v, w in enumerate(perm.images)))
    return EXIT_OK


def _classify(args, out) -> int:
    gamma = _read_graph(args.file)
    out(json.dumps(symmetry.classify(gamma).to_dict(), sort_keys=True, indent=2))
    return EXIT_OK


def _parse_range(text: str) -> tuple[str, list[int]]:
    key, sep, span = text.partition("=")
    lo, dots, hi = span.partition("..")
    try:
        values = list(range(int(lo), int(hi) + 1)) if dots else [int(v) for v in span.split(",")]
    except ValueError:
        raise HypothesisError(f"--range expects key=a..b or key=a,b,c, got {text!r}") from None
    if not sep or not key:
        raise HypothesisError(f"--range expects key=a..b, got {text!r}")
    return key.strip(), values


def _census(args, out) -> int:
    fixed = _params(args.param)
    ranges = [_parse_range(r) for r in args.range or []]
    keys = [k for k, _ in ranges]
    built = failed = 0
    for combo in itertools.product(*(v for _, v in ranges)):
        params = {**fixed, **dict(zip(keys, combo))}
        label = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
        try:
            entry = catalog.build(args.family, params)
        except HypothesisError as exc:
            out(f"SKIP {label}: {exc}")
            continue
        except BoundExceeded as exc:
            out(f"SKIP {label}: {exc}")
            continue
        report = catalog.verify(entry, "structural")
        built += 1
        if not report.passed:
            failed += 1
        bad = ",".join(it.key for it in report.failed)
        out(f"{'PASS' if report.passed else 'FAIL'} {label}: {entry.graph.n} vertices"
            + (f" failed={bad}" if bad else ""))
    out(f"{built} built, {failed} failed")
    if built == 0:
        return EXIT_INVALID
    return EXIT_FAIL if failed else EXIT_OK


def _script(args, out) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {args.file}: {exc.strerror}") from None
    run_script(text, out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symcay", description=__doc__.splitlines()[0])
    p.add_argument("--max-aut-vertices", type=int, help="vertex bound for full automorphism search "
                   "(env SYMCAY_MAX_AUT_VERTICES, default 1500)")
    p.add_argument("--max-group-order", type=int, help="bound for element enumeration "
                   "(env SYMCAY_MAX_GROUP_ORDER, default 100000)")
    p.add_argument("--max-coset-index", type=int, help="bound for coset enumeration "
                   "(env SYMCAY_MAX_COSET_INDEX, default 100000)")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a catalog entry and write its graph JSON")
    b.add_argument("name")
    b.add_argument("--param", action="append", metavar="K=V")
    b.add_argument("--out", metavar="FILE")
    b.set_defaults(func=_build)

    v = sub.add_parser("verify", help="check a catalog entry against its manifest")
    v.add_argument("name")
    v.add_argument("--param", action="append", metavar="K=V")
    v.add_argument("--full", action="store_true", help="also compute Aut, classification, normality")
    v.add_argument("--stretch", action="store_true", help="include stretch items (with --full)")
    v.add_argument("--json", action="store_true", help="print the JSON report")
    v.add_argument("--out", metavar="FILE", help="write the JSON report")
    v.add_argument("--timing", action="store_true", help="add wall-clock timings to the report")
    v.set_defaults(func=_verify)

    a = sub.add_parser("aut", help="automorphism group of a graph JSON file")
    a.add_argument("file")
    a.set_defaults(func=_aut)

    i = sub.add_parser("iso", help="isomorphism test between two graph JSON files")
    i.add_argument("file1")
    i.add_argument("file2")
    i.set_defaults(func=_iso)

    c = sub.add_parser("classify", help="transitivity report under the full automorphism group")
    c.add_argument("file")
    c.set_defaults(func=_classify)

    n = sub.add_parser("census", help="build and structurally verify a family over parameter ranges")
    n.add_argument("family")
    n.add_argument("--range", action="append", metavar="K=A..B")
    n.add_argument("--param", action="append", metavar="K=V")
    n.set_defaults(func=_census)

    s = sub.add_parser("script", help="run a script file")
    s.add_argument("file")
    s.set_defaults(func=_script)
    return p


def run(argv: list[str] | None = None, out=print, err=None) -> int:
    if err is None:
        def err(msg):
            print(msg, file=sys.stderr)
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    bounds = {k: getattr(args, k) for k in ("max_aut_vertices", "max_group_order", "max_coset_index")
              if getattr(args, k) is not None}
    try:
        with limits.override(**bounds) if bounds else contextlib.nullcontext():
            return args.func(args, out)
    except BoundExceeded as exc:
        err(f"error: {exc}")
        return EXIT_BOUND
    except _InputError as exc:
        err(f"error: {exc}")
        return EXIT_IO
    except KeyError as exc:
        err(f"error: {exc.args[0] if exc.args else exc}")
        return EXIT_INVALID
    except (HypothesisError, ScriptError, ValueError) as exc:
        err(f"error: {exc}")
        return EXIT_INVALID
    except OSError as exc:
        err(f"error: {exc}")
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
