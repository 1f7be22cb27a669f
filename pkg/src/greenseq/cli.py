"""Command line front end.

Subcommands: count, enumerate, verify, export, catalog, serve.  Exit codes:
0 success, 1 verification failure, 2 input error, 3 node budget exceeded.
Given identical flags, output is byte-identical for any --jobs value.
"""
from __future__ import annotations

import argparse
import json
import sys

from greenseq import catalog
from greenseq.quiver import ExchangeMatrix, SignIncoherentError
from greenseq.quiverio import (
    QuiverFormatError,
    dag_dot,
    dag_edge_list,
    format_quiver_text,
    histogram_csv,
    parse_quiver,
    quiver_dot,
    quiver_to_json,
    sequences_lines,
    short_key,
)
from greenseq.search import (
    BudgetExceededError,
    LengthHistogram,
    VerifyStatus,
    check_interval,
    count_mgs,
    enumerate_mgs,
    explore,
    full_exchange_graph,
    verify_sequence,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class InputError(Exception):
    """User-facing input problem; maps to exit code 2."""


def _load(args) -> tuple[ExchangeMatrix, str | None]:
    """The working quiver plus an optional catalog note (e.g. known-empty)."""
    if getattr(args, "catalog", None):
        try:
            entry = catalog.make(args.catalog)
        except KeyError as err:
            raise InputError(err.args[0])
        return entry.matrix, entry.note
    path = getattr(args, "input", None)
    if not path:
        raise InputError("one of --catalog NAME or --input FILE is required")
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}")
    try:
        return parse_quiver(text), None
    except QuiverFormatError as err:
        raise InputError(f"{path}: {err}")


def _max_length(args, matrix: ExchangeMatrix) -> int:
    if args.max_length is not None:
        if args.max_length < 1:
            raise InputError("--max-length must be >= 1")
        return args.max_length
    return matrix.n * (matrix.n + 3)


def _write(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_counts(counts: dict[int, int]) -> dict[str, str]:
    # path counts can exceed double precision; serialize as decimal strings
    return {str(l): str(c) for l, c in sorted(counts.items())}


def _histogram_report(hist: LengthHistogram, note: str | None) -> str:
    lines = []
    if hist.min_length is None:
        lines.append(
            f"no maximal green sequences found up to length {hist.explored_to}"
        )
        if note:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"
    lines.append("length  count")
    for l in range(hist.min_length, hist.explored_to + 1):
        lines.append(f"{l:<7} {hist.counts.get(l, 0)}")
    lines.append(f"total: {hist.total}")
    lines.append(f"min length: {hist.min_length}")
    if hist.empirical_max is not None:
        lines.append(
            f"empirical max length: {hist.empirical_max}"
            " (assumes the interval conjecture)"
        )
    else:
        lines.append(
            f"empirical max length: not detected up to {hist.explored_to}"
        )
    lines.append(f"interval: {'yes' if check_interval(hist) else 'no'}")
    return "\n".join(lines) + "\n"


def _histogram_json(hist: LengthHistogram) -> dict:
    return {
        "counts": _json_counts(hist.counts),
        "total": str(hist.total),
        "min_length": hist.min_length,
        "empirical_max": hist.empirical_max,
        "interval": None if hist.min_length is None else check_interval(hist),
        "explored_to": hist.explored_to,
    }


def cmd_count(args) -> int:
    matrix, note = _load(args)
    hist = count_mgs(
        matrix, _max_length(args, matrix), jobs=args.jobs, node_budget=args.budget
    )
    if args.format == "csv":
        _write(args, histogram_csv(hist))
    elif args.format == "json":
        _write(args, json.dumps(_histogram_json(hist), indent=2) + "\n")
    else:
        _write(args, _histogram_report(hist, note))
    if hist.min_length is None and note and args.format != "text":
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    matrix, note = _load(args)
    seqs = enumerate_mgs(
        matrix, _max_length(args, matrix), jobs=args.jobs, node_budget=args.budget
    )
    if args.format == "json":
        payload = {
            "sequences": [list(s.vertices) for s in seqs],
            "count": len(seqs),
        }
        _write(args, json.dumps(payload, indent=2) + "\n")
    else:
        _write(args, sequences_lines(seqs))
    if not seqs and note:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK


def _parse_sequence(tokens) -> tuple[int, ...]:
    flat = []
    for tok in tokens:
        for piece in tok.replace(",", " ").split():
            try:
                flat.append(int(piece))
            except ValueError:
                raise InputError(f"bad vertex label {piece!r}")
    if not flat:
        raise InputError("empty mutation sequence")
    return tuple(flat)


def cmd_verify(args) -> int:
    matrix, _ = _load(args)
    seq = _parse_sequence(args.sequence)
    try:
        result = verify_sequence(matrix, seq)
    except ValueError as err:
        raise InputError(str(err))
    if result.status is VerifyStatus.VALID_MAXIMAL_GREEN:
        print(f"valid maximal green sequence of length {len(result)}")
        print("terminal permutation:", " ".join(map(str, result.terminal_perm)))
        return EXIT_OK
    print(f"not a maximal green sequence: fails at step {result.failing_step}")
    return EXIT_VERIFY


def cmd_export(args) -> int:
    matrix, _ = _load(args)
    what, fmt = args.what, args.format
    if what == "quiver":
        if fmt in (None, "dot"):
            _write(args, quiver_dot(matrix))
        elif fmt == "json":
            _write(args, json.dumps(quiver_to_json(matrix), indent=2) + "\n")
        elif fmt == "text":
            _write(args, format_quiver_text(matrix))
        else:
            raise InputError(f"export quiver does not support --format {fmt}")
        return EXIT_OK
    if what == "full":
        graph = full_exchange_graph(matrix, node_budget=args.budget)
    else:
        graph = explore(
            matrix, _max_length(args, matrix), jobs=args.jobs,
            node_budget=args.budget,
        )
    if fmt in (None, "dot"):
        _write(args, dag_dot(graph))
    elif fmt == "lines":
        _write(args, dag_edge_list(graph))
    elif fmt == "csv" and what == "dag":
        _write(args, histogram_csv(LengthHistogram(graph.sink_counts(),
                                                   graph.max_length)))
    elif fmt == "json":
        payload = {
            "nodes": [
                {
                    "id": short_key(key),
                    "green": len(node.green),
                    "is_source": key == graph.source_key,
                    "is_sink": key == graph.sink_key,
                }
                for key, node in graph.nodes.items()
            ],
            "edges": [
                {"from": short_key(key), "vertex": v, "to": short_key(child)}
                for key, node in graph.nodes.items()
                for v, child in node.edges or ()
            ],
        }
        if what == "dag":
            payload["histogram"] = _json_counts(graph.sink_counts())
        _write(args, json.dumps(payload, indent=2) + "\n")
    else:
        raise InputError(f"export {what} does not support --format {fmt}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.names():
            print(f"{name:<14} {catalog.make(name).description}")
        return EXIT_OK
    try:
        entry = catalog.make(args.name)
    except KeyError as err:
        raise InputError(err.args[0])
    if args.format == "json":
        _write(args, json.dumps(quiver_to_json(entry.matrix), indent=2) + "\n")
    else:
        _write(args, format_quiver_text(entry.matrix))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from greenseq.service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def _add_source_flags(p: argparse.ArgumentParser):
    p.add_argument("--catalog", metavar="NAME", help="catalog quiver name")
    p.add_argument("--input", metavar="FILE",
                   help="quiver file (text or JSON; - for stdin)")


def _add_run_flags(p: argparse.ArgumentParser):
    p.add_argument("-L", "--max-length", type=int, metavar="N",
                   help="search depth bound (default n*(n+3))")
    p.add_argument("--budget", type=int, metavar="NODES",
                   help="abort after materializing this many classes")
    p.add_argument("--jobs", type=int, default=1, metavar="K",
                   help="worker threads for frontier expansion")
    p.add_argument("--output", metavar="PATH", help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="greenseq",
        description="Explore quiver mutations and maximal green sequences.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="histogram of maximal green sequence lengths")
    _add_source_flags(p)
    _add_run_flags(p)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list every maximal green sequence")
    _add_source_flags(p)
    _add_run_flags(p)
    p.add_argument("--format", choices=["lines", "json"], default="lines")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check one mutation sequence")
    _add_source_flags(p)
    p.add_argument("sequence", nargs="+",
                   help="vertex labels, e.g. 1,2,3,1 or 1 2 3 1")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="DOT / edge list / CSV exports")
    _add_source_flags(p)
    _add_run_flags(p)
    p.add_argument("--what", choices=["dag", "full", "quiver"], default="dag",
                   help="bounded green-search graph, whole exchange graph, "
                        "or the quiver itself")
    p.add_argument("--format", choices=["dot", "lines", "csv", "json", "text"])
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("catalog", help="list or emit built-in quivers")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("serve", help="run the interactive session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8340)
    p.set_defaults(func=cmd_serve)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "catalog" and args.action == "emit" and not args.name:
        print("error: catalog emit requires a name", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except SignIncoherentError as err:
        print(
            "error: sign coherence failed at vertex "
            f"{err.vertex} (c-vector {list(err.c_vector)}); "
            "search aborted",
            file=sys.stderr,
        )
        return EXIT_INPUT
    except BudgetExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        if err.partial_counts:
            partial = ", ".join(
                f"{l}:{c}" for l, c in sorted(err.partial_counts.items())
            )
            print(f"partial histogram before abort: {partial}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
