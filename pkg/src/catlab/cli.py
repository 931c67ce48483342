"""Command line front end.

Four subcommands over a scenario file (a path or a shipped name):

* ``check``    - adjoin a declared measurement's projector to the lab and
  search for a steering path across a forbidden transition.
* ``run``      - enumerate a protocol exactly or sample it by Monte Carlo.
* ``discriminate`` - compare two sources through one measurement.
* ``enumerate``    - dump the full outcome tree of a protocol.

Reports go to stdout; wall-time and errors go to stderr.  With fixed
inputs and an explicit seed the stdout bytes are identical across runs.
Exit codes: 0 no violation / success, 1 input error, 2 violation witness.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from .catalog import Scenario
from .errors import CatlabError
from .lab import DEFAULT_MAX_DEPTH, nogo_verdict, state_key, verdict_to_json
from .protocols import (
    aggregate_leaves,
    discriminate,
    enumerate_protocol,
    run_monte_carlo,
    tree_to_json,
)
from .qstate import StateVector, format_state
from .scenario import load_scenario

__version__ = "0.1.0"

FORMAT_VERSION = 1
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VIOLATION = 2
DEFAULT_TRIALS = 10000


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the exit-code contract reserves
    2 for violation witnesses, so usage errors are remapped to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"catlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, fmt: bool) -> None:
        p.add_argument(
            "--scenario",
            required=True,
            help="scenario file path or shipped name (cat, composite, photon, stone-bread, resurrection)",
        )
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help="RNG seed; falls back to CATLAB_SEED, then 0",
        )
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("check", help="no-go check for a candidate projector")
    common(p, fmt=False)
    p.add_argument("candidate", help="declared measurement, NAME or NAME:OUTCOME")
    p.add_argument("--from", dest="source", required=True, metavar="STATE",
                   help="state the forbidden transition starts from")
    p.add_argument("--to", dest="target", required=True, metavar="STATE",
                   help="forbidden target state")
    p.add_argument("--depth", type=int, default=DEFAULT_MAX_DEPTH,
                   help="steering search depth bound")

    p = sub.add_parser("run", help="run a protocol exactly or by sampling")
    common(p, fmt=True)
    p.add_argument("protocol", help="declared protocol name")
    p.add_argument("--initial", required=True, help="initial state or mixture name")
    p.add_argument("--trials", type=int, default=None,
                   help=f"Monte Carlo trials (default {DEFAULT_TRIALS})")
    p.add_argument("--exact", action="store_true",
                   help="enumerate instead of sampling")

    p = sub.add_parser("discriminate", help="compare two sources through a measurement")
    common(p, fmt=True)
    p.add_argument("source_a", help="state or mixture name")
    p.add_argument("source_b", help="state or mixture name")
    p.add_argument("measurement", help="declared measurement name")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)

    p = sub.add_parser("enumerate", help="dump a protocol's full outcome tree")
    common(p, fmt=False)
    p.add_argument("protocol", help="declared protocol name")
    p.add_argument("--initial", required=True, help="initial state or mixture name")

    return parser


def resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CATLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CatlabError(f"CATLAB_SEED must be an integer, got {env!r}")
    return 0


def _named_state(scenario: Scenario, name: str) -> StateVector:
    if name not in scenario.states:
        raise CatlabError(f"no state named {name!r} in scenario {scenario.name!r}")
    return scenario.states[name]


def _named_protocol(scenario: Scenario, name: str):
    if name not in scenario.protocols:
        raise CatlabError(f"no protocol named {name!r} in scenario {scenario.name!r}")
    return scenario.protocols[name]


def _named_measurement(scenario: Scenario, name: str):
    if name not in scenario.measurements:
        raise CatlabError(f"no measurement named {name!r} in scenario {scenario.name!r}")
    return scenario.measurements[name]


def cmd_check(scenario: Scenario, args: argparse.Namespace):
    name, _, label = args.candidate.partition(":")
    m = _named_measurement(scenario, name)
    if not label:
        label = m.labels[0]
    candidate = m.projector(label)
    verdict = nogo_verdict(
        scenario.lab,
        candidate,
        _named_state(scenario, args.target),
        _named_state(scenario, args.source),
        max_depth=args.depth,
        name=name,
        outcome_label=label,
    )
    params = {
        "candidate": name,
        "outcome": label,
        "from": args.source,
        "to": args.target,
        "depth": args.depth,
    }
    code = EXIT_VIOLATION if verdict.violated else EXIT_OK
    return params, verdict_to_json(verdict), None, code


def cmd_run(scenario: Scenario, args: argparse.Namespace, seed: int):
    if args.exact and args.trials is not None:
        raise CatlabError("--exact and --trials are mutually exclusive")
    protocol = _named_protocol(scenario, args.protocol)
    initial = scenario.initial(args.initial)
    tree = enumerate_protocol(protocol, scenario.lab, initial)
    exact = aggregate_leaves(tree)
    params = {"protocol": args.protocol, "initial": args.initial}

    if args.exact:
        table = [
            {"state": format_state(st), "probability": p} for st, p in exact
        ]
        result = {
            "mode": "exact",
            "nodes": tree.n_nodes(),
            "leaves": len(tree.leaves()),
            "pruned_mass": tree.pruned_mass,
            "table": table,
        }
        rows = [["state", "exact_p", "empirical_freq", "n"]]
        rows += [[format_state(st), repr(p), "", ""] for st, p in exact]
        return params, result, rows, EXIT_OK

    trials = DEFAULT_TRIALS if args.trials is None else args.trials
    if trials < 1:
        raise CatlabError("need at least one trial (or use --exact)")
    params["trials"] = trials
    mc = run_monte_carlo(protocol, scenario.lab, initial, trials, seed)
    exact_by_key = {state_key(st): p for st, p in exact}
    histogram = []
    rows = [["state", "exact_p", "empirical_freq", "n"]]
    for st, count, freq in mc.rows():
        p = exact_by_key.get(state_key(st), 0.0)
        histogram.append(
            {
                "state": format_state(st),
                "count": count,
                "frequency": freq,
                "exact_p": p,
            }
        )
        rows.append([format_state(st), repr(p), repr(freq), trials])
    result = {"mode": "sample", "trials": trials, "histogram": histogram}
    return params, result, rows, EXIT_OK


def cmd_discriminate(scenario: Scenario, args: argparse.Namespace, seed: int):
    report = discriminate(
        scenario.initial(args.source_a),
        scenario.initial(args.source_b),
        _named_measurement(scenario, args.measurement),
        args.trials,
        seed,
        name=args.measurement,
    )
    params = {
        "source_a": args.source_a,
        "source_b": args.source_b,
        "measurement": args.measurement,
        "trials": args.trials,
    }
    return params, report.to_json(), report.to_csv_rows(), EXIT_OK


def cmd_enumerate(scenario: Scenario, args: argparse.Namespace):
    protocol = _named_protocol(scenario, args.protocol)
    tree = enumerate_protocol(protocol, scenario.lab, scenario.initial(args.initial))
    params = {"protocol": args.protocol, "initial": args.initial}
    return params, tree_to_json(tree), None, EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        scenario, sha = load_scenario(args.scenario)
        seed = resolve_seed(args)
        if args.command == "check":
            params, result, rows, code = cmd_check(scenario, args)
        elif args.command == "run":
            params, result, rows, code = cmd_run(scenario, args, seed)
        elif args.command == "discriminate":
            params, result, rows, code = cmd_discriminate(scenario, args, seed)
        else:
            params, result, rows, code = cmd_enumerate(scenario, args)
    except CatlabError as err:
        print(f"catlab: error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    if getattr(args, "format", "json") == "csv" and rows is not None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows(rows)
    else:
        report = {
            "format_version": FORMAT_VERSION,
            "version": __version__,
            "command": args.command,
            "scenario": args.scenario,
            "scenario_sha256": sha,
            "seed": seed,
            "params": params,
            "result": result,
        }
        print(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False))
    print(f"elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
