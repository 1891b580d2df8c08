"""Command-line front end.

Exit codes: 0 success / certified, 1 negative verdict, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .families import CompletionError, Family, FamilyError, complete_with_grid, generate, is_complete_basis
from .graph import GraphError, build_graph, check_isomorphic, edge_counts, to_dot
from .nonlocality import RANK_TOL, InvalidSetError, certify_nonlocal
from .report import build_report, format_report
from .states import ORTHO_TOL, SchemaError, StateSet, load_json, save_json, validate_set

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read_set(path: str) -> StateSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return load_json(text)
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _require_valid(s: StateSet, tol: float, path: str):
    report = validate_set(s, tol)
    if not report.valid:
        names = [f"{s[i].label}/{s[j].label}" for i, j in report.offending_pairs]
        detail = []
        if names:
            detail.append("non-orthogonal pairs: " + ", ".join(names))
        if report.duplicate_labels:
            detail.append("duplicate labels: " + ", ".join(report.duplicate_labels))
        raise UsageError(f"{path}: invalid set ({'; '.join(detail)})")
    return report


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


# -- commands -----------------------------------------------------------------


def cmd_generate(args) -> int:
    try:
        s = generate(args.family, args.m, args.n)
    except FamilyError as exc:
        raise UsageError(str(exc)) from None
    data = save_json(s, indent=None if args.json else 1)
    if args.out is None:
        print(data)
        return EXIT_OK
    _write(args.out, data)
    _emit(
        args,
        {"family": s.family, "m": s.m, "n": s.n, "count": len(s), "out": args.out},
        f"wrote {len(s)} states ({s.family}, {s.m}x{s.n}) to {args.out}",
    )
    return EXIT_OK


def cmd_check(args) -> int:
    s = _read_set(args.inp)
    validation = _require_valid(s, args.tol, args.inp)
    report = certify_nonlocal(s, args.tol, args.rank_tol)
    payload = {
        "validation": validation.to_dict(s.labels),
        "nonlocality": report.to_dict(with_witness=args.witness),
    }
    lines = [
        f"{len(s)} states in {s.m}x{s.n}: orthogonal, max residual {validation.max_residual:.2e}",
        f"alice: dim {report.alice.nullspace_dim}, {report.alice.verdict.value}",
        f"bob:   dim {report.bob.nullspace_dim}, {report.bob.verdict.value}",
        "certified nonlocal" if report.certified_nonlocal else "no nonlocality certificate",
    ]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.certified_nonlocal else EXIT_NEGATIVE


def cmd_graph(args) -> int:
    s = _read_set(args.inp)
    try:
        g = build_graph(s, args.tol)
    except GraphError as exc:
        raise UsageError(f"{args.inp}: {exc}") from None
    if args.out is not None:
        _write(args.out, to_dot(g, args.side))
    n_a, n_b, n_both = edge_counts(g)
    _emit(args, {"nA": n_a, "nB": n_b, "nBoth": n_both}, f"nA={n_a} nB={n_b} nBoth={n_both}")
    return EXIT_OK


def cmd_iso(args) -> int:
    graphs = []
    for path in (args.a, args.b):
        try:
            graphs.append(build_graph(_read_set(path), args.tol))
        except GraphError as exc:
            raise UsageError(f"{path}: {exc}") from None
    g1, g2 = graphs
    res = check_isomorphic(g1, g2, allow_party_swap=args.allow_party_swap, budget=args.budget)
    payload = {
        "isomorphic": res.isomorphic,
        "mapping": res.labeled_mapping(g1, g2),
        "obstruction": res.obstruction,
        "budget_exceeded": res.budget_exceeded,
        "party_swapped": res.party_swapped,
    }
    if res.isomorphic:
        pairs = ", ".join(f"{k}->{v}" for k, v in res.labeled_mapping(g1, g2).items())
        text = "isomorphic" + (" (parties swapped)" if res.party_swapped else "") + f": {pairs}"
    else:
        text = f"not isomorphic: {res.obstruction}" if not res.budget_exceeded else res.obstruction
    _emit(args, payload, text)
    if res.budget_exceeded:
        return EXIT_ERROR
    return EXIT_OK if res.isomorphic else EXIT_NEGATIVE


def cmd_complete(args) -> int:
    s = _read_set(args.inp)
    _require_valid(s, args.tol, args.inp)
    try:
        full = complete_with_grid(s, args.tol)
    except CompletionError as exc:
        raise UsageError(f"{args.inp}: {exc}") from None
    complete = is_complete_basis(full, args.rank_tol)
    if args.out is not None:
        _write(args.out, save_json(full, indent=1))
    _emit(
        args,
        {"count": len(full), "m": full.m, "n": full.n, "complete_basis": complete},
        f"{len(full)} states in {full.m}x{full.n}; complete basis: {'yes' if complete else 'no'}",
    )
    return EXIT_OK if complete else EXIT_NEGATIVE


def cmd_report(args) -> int:
    m_max = args.m if args.m is not None else 5
    n_max = args.n if args.n is not None else m_max
    if m_max < 3 or n_max < 3:
        raise UsageError("report needs --m and --n >= 3")
    report = build_report(m_max, n_max, args.tol, args.rank_tol)
    _emit(args, report, format_report(report))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tol", type=float, default=ORTHO_TOL, help="orthogonality tolerance (relative)")
    common.add_argument("--rank-tol", type=float, default=RANK_TOL, help="rank threshold (relative)")

    p = argparse.ArgumentParser(
        prog="opsets",
        description="Orthogonal product-state sets: generation, nonlocality certificates, graphs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write a family instance as JSON")
    g.add_argument("--family", required=True, choices=[f.value for f in Family])
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("check", parents=[common], help="validate and certify a set")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--witness", action="store_true", help="include witness operators in --json output")
    c.set_defaults(func=cmd_check)

    gr = sub.add_parser("graph", parents=[common], help="orthogonality graph as DOT")
    gr.add_argument("--in", dest="inp", required=True)
    gr.add_argument("--side", default="A", choices=["A", "B", "both", "a", "b"])
    gr.add_argument("--out")
    gr.set_defaults(func=cmd_graph)

    i = sub.add_parser("iso", parents=[common], help="decide isomorphism of two sets")
    i.add_argument("--a", required=True)
    i.add_argument("--b", required=True)
    i.add_argument("--allow-party-swap", action="store_true")
    i.add_argument("--budget", type=int, default=10**7)
    i.set_defaults(func=cmd_iso)

    co = sub.add_parser("complete", parents=[common], help="add middle-grid states")
    co.add_argument("--in", dest="inp", required=True)
    co.add_argument("--out")
    co.set_defaults(func=cmd_complete)

    r = sub.add_parser("report", parents=[common], help="comparison table over m, n <= max")
    r.add_argument("--m", type=int, help="largest m (default 5)")
    r.add_argument("--n", type=int, help="largest n (default: --m)")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, InvalidSetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
