"""Command-line entry point: ``graph-shotgun <subcommand> ...``.

Exit codes: 0 success, 1 bad arguments or config, 2 I/O or malformed input
file, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .assemble_one import assemble_from_1nbhd
from .assemble_two import assemble_auto, assemble_diameter2, assemble_from_2nbhd_fingerprint
from .errors import InvariantViolation, ParameterError, ParseError, ShotgunError
from .graph import ErParams, load_graph, sample_er, save_graph, to_text
from .harness import METHOD_RADIUS, ExperimentConfig, diameter_check, records_csv, records_jsonl, run_sweep
from .iso import is_isomorphic
from .shotgun import dumps_collection, load_collection, recover_centers, save_collection, shred
from .witness import same_r_neighborhoods, search_nonrecon_pair, star_witness

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _params(args) -> ErParams:
    if args.p is None and args.alpha is None:
        raise ParameterError("give --alpha or --p")
    return ErParams(args.n, alpha=None if args.p is not None else args.alpha, p=args.p, seed=args.seed)


def cmd_sample(args) -> int:
    g = sample_er(_params(args))
    _emit(to_text(g), args.out)
    return EXIT_OK


def cmd_shred(args) -> int:
    g = load_graph(args.graph)
    c = shred(g, args.radius, args.seed, args.labeled_centers)
    if args.out:
        save_collection(c, args.out)
    else:
        sys.stdout.write(dumps_collection(c))
    return EXIT_OK


_ASSEMBLERS = {
    "fingerprint1": lambda c, a: assemble_from_1nbhd(c),
    "diameter2": lambda c, a: assemble_diameter2(c),
    "fingerprint2": lambda c, a: assemble_from_2nbhd_fingerprint(c),
    "auto": lambda c, a: assemble_auto(c, c.n, a),
}


def cmd_assemble(args) -> int:
    c = load_collection(args.collection)
    method = args.method or ("fingerprint1" if c.radius == 1 else "auto")
    if METHOD_RADIUS[method] != c.radius:
        raise ParameterError(f"method {method} needs radius {METHOD_RADIUS[method]}")
    if method == "auto" and args.alpha is None:
        raise ParameterError("method auto needs --alpha")
    if not c.labeled:
        c = recover_centers(c, c.n, args.alpha)
    outcome = _ASSEMBLERS[method](c, args.alpha)
    if outcome.graph is not None and args.out:
        save_graph(outcome.graph, args.out)
    report = {"status": str(outcome.status), "method": outcome.method,
              "labeled": c.labeled, "diagnostics": outcome.diagnostics}
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK


def _sweep_config(args) -> ExperimentConfig:
    data = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ParameterError(f"config file is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ParameterError("config file must hold one JSON object")
    overrides = {"n_values": args.n, "alpha_values": args.alpha, "radius": args.radius,
                 "method": args.method, "trials": args.trials, "base_seed": args.seed,
                 "labeled_centers": args.labeled_centers, "output_path": args.out}
    data.update({k: v for k, v in overrides.items() if v is not None})
    if args.star_report:
        data["star_report"] = True
    if "method" in data and "radius" not in data:
        data["radius"] = METHOD_RADIUS.get(data["method"], 1)
    for key in ("n_values", "alpha_values"):
        if key not in data:
            raise ParameterError(f"missing {key} (--{key.split('_')[0]})")
    return ExperimentConfig.from_mapping(data)


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    result = run_sweep(cfg)
    if not cfg.output_path:
        render = records_csv if args.format == "csv" else records_jsonl
        sys.stdout.write(render(result.records))
    for cell in result.summary:
        print(json.dumps(cell, sort_keys=True), file=sys.stderr)
    return EXIT_OK


def cmd_diameter(args) -> int:
    frac = diameter_check(args.n, args.c, args.trials, args.seed)
    print(json.dumps({"n": args.n, "c": args.c, "trials": args.trials, "fraction_diameter_2": frac}))
    return EXIT_OK


def cmd_star(args) -> int:
    if args.alpha is None:
        raise ParameterError("star-witness needs --alpha")
    g = load_graph(args.graph) if args.graph else sample_er(ErParams(args.n, alpha=args.alpha, seed=args.seed))
    report = star_witness(g, args.alpha)
    print(json.dumps(dict(report.to_dict(), pigeonhole_holds=report.pigeonhole_holds)))
    return EXIT_OK


def cmd_search(args) -> int:
    g = load_graph(args.graph)
    h = search_nonrecon_pair(g, args.radius, args.budget, args.seed)
    if h is None:
        print(json.dumps({"found": False}))
        return EXIT_OK
    if not same_r_neighborhoods(g, h, args.radius):
        raise InvariantViolation("search returned a pair that fails re-verification")
    if args.out:
        save_graph(h, args.out)
    print(json.dumps({"found": True, "isomorphic": is_isomorphic(g, h), "edges": [list(e) for e in h.edges()]}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graph-shotgun", description="Graph shotgun assembly experiments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="sample G(n, p) and print it as an edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("shred", help="cut a graph file into anonymized r-neighborhoods")
    p.add_argument("graph")
    p.add_argument("--radius", type=int, choices=(1, 2), default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labeled-centers", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_shred)

    p = sub.add_parser("assemble", help="reassemble a graph from a collection file")
    p.add_argument("collection")
    p.add_argument("--method", choices=sorted(METHOD_RADIUS))
    p.add_argument("--alpha", type=float, help="needed for method auto and unlabeled radius 2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_assemble)

    p = sub.add_parser("sweep", help="run a grid of seeded trials")
    p.add_argument("--config", help="JSON object with ExperimentConfig keys")
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--alpha", type=float, nargs="+")
    p.add_argument("--radius", type=int, choices=(1, 2))
    p.add_argument("--method", choices=sorted(METHOD_RADIUS))
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--labeled-centers", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--star-report", action="store_true")
    p.add_argument("--out", help="output stem; writes .csv, .jsonl, .summary.json, .timing.csv")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv",
                   help="stdout format when --out is not given")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("diameter-check", help="fraction of samples with diameter 2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("star-witness", help="equal-degree star count of a sample")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--alpha", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graph", help="use this graph file instead of sampling")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("search-pair", help="look for a different graph with the same r-neighborhoods")
    p.add_argument("graph")
    p.add_argument("--radius", type=int, choices=(1, 2), default=1)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvariantViolation, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, ParseError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParameterError, ShotgunError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
