"""Command-line entry point: every run prints one JSON certificate on stdout.

Exit status is 0 on success, 1 when a verdict fails (the witness is in the
certificate) and 2 on usage errors or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from . import __version__
from . import automorphisms as aut
from . import cyclic as Z
from . import diffsets as DS
from . import lab
from . import oracles as O
from .algebra import GroupContext
from .errors import AxiomViolation, SchurLabError, WedgeCompatibilityError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc


def _parse_ints(text: str, count: int, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        values = ()
    if len(values) != count:
        raise UsageError(f"{what} must be {count} comma-separated integers, got {text!r}")
    return values


def _partition_from(record) -> Z.FinitePartition:
    if not isinstance(record, dict) or "n" not in record or "classes" not in record:
        raise UsageError('partition file must be an object {"n": ..., "classes": [[...], ...]}')
    try:
        n = int(record["n"])
        classes = [[int(x) for x in b] for b in record["classes"]]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"partition file has non-integer entries: {exc}") from exc
    return Z.FinitePartition(n, classes)


def _certificate(command: str, params: dict, verdict: str, body: dict) -> dict:
    return {"tool": "schurlab", "version": __version__, "command": command, "params": params, "verdict": verdict, **body}


# -- subcommands ---------------------------------------------------------------


def cmd_verify_zn(args):
    params = {"file": args.file}
    record = _load_json(args.file)
    try:
        p = _partition_from(record)
    except SchurLabError as exc:
        return _certificate("verify-zn", params, "fail", {"witness": {"reason": str(exc)}})
    params["n"] = p.n
    try:
        sc = Z.verify_partition(p)
    except AxiomViolation as exc:
        return _certificate("verify-zn", params, "fail", {"error": str(exc), "witness": exc.witness})
    return _certificate("verify-zn", params, "pass", {"structure_constants": sc.to_record()})


def cmd_enum_zn(args):
    params = {"n": args.n, "limit": args.limit, "method": args.method}
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.n > args.limit:
        raise UsageError(f"enumeration is limited to n <= {args.limit}; raise --limit to go further")
    brute = Z.enumerate_schur_rings(args.n, limit=args.limit) if args.method in ("brute", "both") else None
    built = Z.enumerate_by_closure(args.n) if args.method in ("closure", "both") else None
    rings = brute if brute is not None else built
    body = {
        "count": len(rings),
        "rings": [{**r.to_record(), "traditional": Z.classify_traditional(r).to_record()} for r in rings],
    }
    verdict = "pass"
    if brute is not None and built is not None:
        agree = sorted(r.blocks for r in brute) == sorted(r.blocks for r in built)
        body["enumerators_agree"] = agree
        verdict = "pass" if agree else "fail"
    if any(r["traditional"]["kind"] == "non-traditional" for r in body["rings"]):
        verdict = "fail"
    return _certificate("enum-zn", params, verdict, body)


def cmd_classify_zn(args):
    params = {"file": args.file}
    p = _partition_from(_load_json(args.file))
    params["n"] = p.n
    try:
        Z.verify_partition(p)
    except AxiomViolation as exc:
        return _certificate("classify-zn", params, "fail", {"error": str(exc), "witness": exc.witness})
    tag = Z.classify_traditional(p)
    verdict = "fail" if tag.kind == "non-traditional" else "pass"
    return _certificate("classify-zn", params, verdict, {"classification": tag.to_record()})


def cmd_orbit(args):
    if not args.gen:
        raise UsageError("orbit needs at least one --gen eps,m,i")
    gens = [aut.AffineAut(*_parse_ints(g, 3, "--gen"), args.n) for g in args.gen]
    t, k = _parse_ints(args.element, 2, "--element")
    H = aut.closure(gens)
    ctx = GroupContext(args.n)
    g = ctx.elem(t, k)
    orb = aut.orbit(H, g)
    params = {"n": args.n, "generators": [x.to_record() for x in gens], "element": list(g)}
    body = {"subgroup_order": len(H), "orbit": [list(h) for h in sorted(orb)]}
    return _certificate("orbit", params, "pass", body)


def cmd_oracle_verify(args):
    spec = _load_json(args.file)
    params = {"file": args.file, "window": args.window, "spec": spec}
    if not isinstance(spec, dict):
        raise UsageError("oracle spec must be a JSON object")
    try:
        o = O.oracle_from_spec(spec)
    except WedgeCompatibilityError as exc:
        return _certificate("oracle-verify", params, "fail", {"error": str(exc), "witness": exc.witness})
    try:
        sc = O.verify_on_window(o, args.window)
    except AxiomViolation as exc:
        return _certificate("oracle-verify", params, "fail", {"error": str(exc), "witness": exc.witness})
    bad = O.size_lemma_violations(o, sc)
    body = {"size_lemma_violations": bad, "structure_constants": sc.to_record()}
    return _certificate("oracle-verify", params, "fail" if bad else "pass", body)


def cmd_diffsets(args):
    params = {"v": args.v, "k": args.k}
    certs = DS.enumerate_difference_sets(args.v)
    if args.k is not None:
        certs = [c for c in certs if c.k == args.k]
    body = {"count": len(certs), "difference_sets": [c.to_record() for c in certs]}
    return _certificate("diffsets", params, "pass", body)


def cmd_diffpart(args):
    mode = "non-trivial-only" if args.non_trivial_only else "all"
    params = {"v": args.v, "mode": mode}
    search = DS.search_difference_partitions(args.v, mode)
    return _certificate("diffpart", params, "pass", {"search": search.to_record()})


def cmd_lab(args):
    if args.all == bool(args.check):
        raise UsageError("lab needs exactly one of --check NAME or --all")
    args.spec = _load_json(args.file) if args.file else None
    if args.all:
        reports = lab.run_all(jobs=args.jobs)
        params = {"all": True}
    else:
        if args.check not in lab.CHECKS:
            raise UsageError(f"unknown check {args.check!r}; choose from {sorted(lab.CHECKS)}")
        reports = [lab.CHECKS[args.check](args)]
        params = {"check": args.check, "p": args.p, "n": args.n, "window": args.window, "bound": args.bound}
        if args.file:
            params["file"] = args.file
    for r in reports:
        print(f"{r.check} {json.dumps(r.params, sort_keys=True)}: {r.verdict} ({r.seconds:.2f}s)", file=sys.stderr)
    verdict = "fail" if any(not r.ok for r in reports) else "pass"
    return _certificate("lab", params, verdict, {"reports": [r.to_record() for r in reports]})


def _render_table(cert: dict) -> str:
    if cert["command"] == "lab":
        rows = [(r["check"], json.dumps(r["params"], sort_keys=True), r["verdict"]) for r in cert["reports"]]
    else:
        rows = [(cert["command"], json.dumps(cert["params"], sort_keys=True), cert["verdict"])]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    lines = [f"{'check':<{w0}}  {'params':<{w1}}  verdict"]
    lines += [f"{a:<{w0}}  {b:<{w1}}  {c}" for a, b, c in rows]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schurlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"schurlab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-zn", parents=[common], help="check the Schur axioms for a partition of Z_n")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_verify_zn)

    p = sub.add_parser("enum-zn", parents=[common], help="all Schur rings over Z_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=Z.ENUMERATION_LIMIT)
    p.add_argument("--method", choices=("brute", "closure", "both"), default="both")
    p.set_defaults(func=cmd_enum_zn)

    p = sub.add_parser("classify-zn", parents=[common], help="name the traditional form of a Schur ring over Z_n")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_classify_zn)

    p = sub.add_parser("orbit", parents=[common], help="orbit of a^k z^t under a subgroup of Aut(Z x Z_n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gen", action="append", default=[], help="generator eps,m,i (repeatable; write --gen=-1,1,1 for negative entries)")
    p.add_argument("--element", required=True, help="t,k")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("oracle-verify", parents=[common], help="window-bounded axiom check of a Schur ring over Z x Z_n")
    p.add_argument("--file", required=True)
    p.add_argument("--window", type=int, default=4)
    p.set_defaults(func=cmd_oracle_verify)

    p = sub.add_parser("diffsets", parents=[common], help="all difference sets of Z_v")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_diffsets)

    p = sub.add_parser("diffpart", parents=[common], help="difference partitions of Z_v by exact cover")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--non-trivial-only", action="store_true")
    p.set_defaults(func=cmd_diffpart)

    p = sub.add_parser("lab", parents=[common], help="structural checks on generated Schur rings")
    p.add_argument("--check")
    p.add_argument("--all", action="store_true")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--bound", type=int)
    p.add_argument("--file", help="oracle spec for per-oracle checks")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_lab)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        cert = args.func(args)
    except (UsageError, SchurLabError) as exc:
        print(f"schurlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    if args.format == "table":
        print(_render_table(cert))
    else:
        print(json.dumps(cert, sort_keys=True, indent=2))
    return EXIT_OK if cert["verdict"] in ("pass", "inapplicable") else EXIT_FAIL
