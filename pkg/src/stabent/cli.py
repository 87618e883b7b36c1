"""Command-line front end: analyze codes, construct families, emit graphs.

Exit codes: 0 success, 2 parse failure, 3 validation failure, 4 resource
limit.  Machine-readable output (--json) is byte-identical across runs
for identical inputs and seeds; wall-clock timing is added only with
--timing so that determinism survives by default.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .bounds import family_expected  # noqa: F401  (re-exported convenience)
from .codes import CssSpec, code_to_text, css, gottesman, parse_binary_matrix, parse_code, toric
from .errors import ParseError, ResourceLimitError, StabentError, ValidationError
from .exact import EntanglementReport, entanglement_report
from .graphstate import css_spec_from_code, css_to_graph, edges, graph_bounds

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4


def _load_code(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_code(text)


def _graph_block(code) -> dict | None:
    spec = css_spec_from_code(code)
    if spec is None:
        return None
    form = css_to_graph(spec)
    upper, lower = graph_bounds(form)
    return {
        "vertices": form.n,
        "first_class": form.first_class,
        "edges": [list(e) for e in edges(form)],
        "adjacency": form.adjacency.to_lists(),
        "qubit_perm": list(form.qubit_perm),
        "bounds": {"upper": upper, "lower": lower},
    }


def _report_document(code, rep: EntanglementReport, graph: dict | None, timing_ms: float | None) -> dict:
    entanglement = {
        "value": rep.value,
        "exact": rep.exact,
        "iterations": rep.iteration.iterations if rep.iteration else None,
        "residual": rep.iteration.residual if rep.iteration else None,
        "starts": rep.iteration.starts_used if rep.iteration else None,
    }
    doc = {
        "code": {
            "n": code.n,
            "k": code.k,
            "generators": [str(g) for g in code.generators],
        },
        "bounds": {
            "upper": {"value": rep.upper, "method": rep.upper_method},
            "lower": {"value": rep.lower, "witness_subset": list(rep.lower_witness.subset)},
        },
        "entanglement": entanglement,
    }
    if graph is not None:
        doc["graph"] = graph
    if timing_ms is not None:
        doc["timing_ms"] = timing_ms
    return doc


def _print_human(doc: dict, out) -> None:
    code = doc["code"]
    print(f"code: n={code['n']} k={code['k']} generators={len(code['generators'])}", file=out)
    up, lo = doc["bounds"]["upper"], doc["bounds"]["lower"]
    print(f"E_u = {up['value']} ({up['method']})", file=out)
    print(f"E_l = {lo['value']} (witness {lo['witness_subset']})", file=out)
    ent = doc["entanglement"]
    if ent["exact"]:
        print(f"E   = {ent['value']:g} (exact: bounds coincide)", file=out)
    else:
        print(
            f"E   = {ent['value']:.6f} (iterated estimate, {ent['starts']} starts, "
            f"{ent['iterations']} sweeps, residual {ent['residual']:.2e})",
            file=out,
        )
    if "graph" in doc:
        g = doc["graph"]
        print(
            f"graph: {g['vertices']} vertices, classes {g['first_class']}+"
            f"{g['vertices'] - g['first_class']}, {len(g['edges'])} edges, "
            f"bounds ({g['bounds']['upper']}, {g['bounds']['lower']})",
            file=out,
        )
    if "timing_ms" in doc:
        print(f"timing: {doc['timing_ms']:.1f} ms", file=out)


def cmd_analyze(args) -> int:
    code = _load_code(args.input)
    t0 = time.perf_counter()
    rep = entanglement_report(
        code,
        use_persistency=args.exact,
        starts=args.starts,
        tol=args.tol,
        seed=args.seed,
        dense_limit=args.dense_limit,
        budget=args.budget,
        lower_strategy="exhaustive" if args.exact else None,
    )
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    graph = _graph_block(code)
    doc = _report_document(code, rep, graph, elapsed_ms if args.timing else None)
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        if not args.timing:
            doc["timing_ms"] = elapsed_ms
        _print_human(doc, sys.stdout)
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.family == "toric":
        if args.k is None:
            raise ValidationError("toric needs --k")
        code = toric(args.k)
    elif args.family == "gottesman":
        if args.m is None:
            raise ValidationError("gottesman needs --m")
        code = gottesman(args.m)
    elif args.family == "css":
        if args.u is None or args.v is None:
            raise ValidationError("css needs --u and --v matrix files")
        u = parse_binary_matrix(Path(args.u).read_text())
        v = parse_binary_matrix(Path(args.v).read_text())
        code = css(CssSpec(u, v))
    else:  # pragma: no cover - argparse restricts choices
        raise ValidationError(f"unknown family {args.family}")
    text = code_to_text(code)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote [[{code.n},{code.k}]] code ({len(code.generators)} generators) to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_graph(args) -> int:
    code = _load_code(args.input)
    spec = css_spec_from_code(code)
    if spec is None:
        raise ValidationError(
            "input is not in CSS form (every generator must be pure X-type or pure Z-type)"
        )
    form = css_to_graph(spec)
    upper, lower = graph_bounds(form)
    if args.json:
        print(json.dumps(_graph_block(code), indent=2))
    else:
        print(f"graph state on {form.n} vertices, classes {form.first_class}+{form.n - form.first_class}")
        for i, j in edges(form):
            print(f"{i} {j}")
        print(f"E_u = {upper}, E_l = {lower}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabent", description="entanglement of stabilizer codewords"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="compute bounds and the entanglement of a code file")
    p_an.add_argument("input", help="letter-format code file")
    p_an.add_argument("--exact", action="store_true", help="enable the measurement search and exhaustive cuts")
    p_an.add_argument("--starts", type=int, default=64)
    p_an.add_argument("--seed", type=int, default=0)
    p_an.add_argument("--tol", type=float, default=1e-10)
    p_an.add_argument("--json", action="store_true")
    p_an.add_argument("--dense-limit", type=int, default=20)
    p_an.add_argument("--budget", type=int, default=None, help="measurement search depth cap")
    p_an.add_argument("--timing", action="store_true", help="include timing_ms in JSON output")
    p_an.set_defaults(func=cmd_analyze)

    p_co = sub.add_parser("construct", help="emit a code family as a letter file")
    p_co.add_argument("family", choices=["css", "toric", "gottesman"])
    p_co.add_argument("--k", type=int, default=None, help="toric lattice size")
    p_co.add_argument("--m", type=int, default=None, help="gottesman parameter")
    p_co.add_argument("--u", default=None, help="binary matrix file of X checks")
    p_co.add_argument("--v", default=None, help="binary matrix file of Z checks")
    p_co.add_argument("--output", "-o", default=None)
    p_co.set_defaults(func=cmd_construct)

    p_gr = sub.add_parser("graph", help="graph-state form of a CSS code file")
    p_gr.add_argument("input")
    p_gr.add_argument("--json", action="store_true")
    p_gr.set_defaults(func=cmd_graph)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except StabentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
