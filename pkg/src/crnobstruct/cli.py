"""Command-line interface.

Exit codes of ``analyze``: 0 simple zero achievable or structurally
nonsingular, 10 obstructed, 11 degenerate, 12 undecided. Any command exits 2
on unreadable input and 3 when an enumeration or term cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .analyzer import DEFAULT_SAMPLES, VerdictKind, obstruction_verdict
from .massaction import MassActionInstance, check_equilibrium, probe_singular_equilibrium
from .network import (
    Network,
    ParseError,
    load_network,
    parse_rate_variable,
    positive_kernel_vector,
    rate_variables,
)
from .oracle import spectral_report
from .poly import MultiPoly, TermLimitExceeded
from .selections import (
    DEFAULT_MAX_NODES,
    EnumerationCapExceeded,
    enumerate_child_selections,
    enumerate_partial_child_selections,
)
from .symbolic import (
    DEFAULT_MAX_TERMS,
    adjugate_symbolic,
    adjugate_trace_via_pcs,
    det_direct,
    det_via_child_selections,
    sym_jacobian,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
VERDICT_EXIT = {
    VerdictKind.SIMPLE_ZERO_ACHIEVABLE: 0,
    VerdictKind.NONSINGULAR_STRUCTURAL: 0,
    VerdictKind.OBSTRUCTED: 10,
    VerdictKind.DEGENERATE: 11,
    VerdictKind.UNDECIDED: 12,
}

_ASSIGN = re.compile(r"^\s*([^=\s][^=]*?)\s*=\s*([+-]?\d+(?:\s*/\s*\d+)?)\s*$")


class InputError(ValueError):
    pass


def read_assignments(path: str) -> dict[str, Fraction]:
    """Read ``name = p/q`` lines (``#`` comments allowed)."""
    out: dict[str, Fraction] = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0]
            if not line.strip():
                continue
            m = _ASSIGN.match(line)
            if not m:
                raise InputError(f"{path}:{lineno}: expected 'name = p/q'")
            name = m.group(1)
            if name in out:
                raise InputError(f"{path}:{lineno}: {name} assigned twice")
            out[name] = Fraction(m.group(2).replace(" ", ""))
    return out


def read_rates(path: str):
    rates = {}
    for name, value in read_assignments(path).items():
        try:
            rates[parse_rate_variable(name)] = value
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None
    return rates


# -- report assembly ---------------------------------------------------------


def _network_summary(net: Network) -> dict:
    return {
        "name": net.name,
        "species": list(net.species_names),
        "reactions": list(net.labels),
        "n_species": net.n_species,
        "n_reactions": net.n_reactions,
        "n_variables": len(rate_variables(net)),
    }


def _selection_rows(selections, coeff_attr: str) -> list[dict]:
    return [
        {"assignment": dict(s.assignment), "coefficient": str(getattr(s, coeff_attr))}
        for s in selections
    ]


def _kernel_json(v) -> Optional[list[str]]:
    return None if v is None else [str(x) for x in v]


def analyze(net: Network, seed: int = 0, samples: int = DEFAULT_SAMPLES,
            max_terms: int = DEFAULT_MAX_TERMS, max_enum: int = DEFAULT_MAX_NODES,
            rates=None) -> tuple[dict, VerdictKind]:
    selections = enumerate_child_selections(net, max_enum)
    verdict = obstruction_verdict(net, seed=seed, samples=samples, max_nodes=max_enum)
    direct = det_direct(sym_jacobian(net), max_terms)
    report = {
        "network": _network_summary(net),
        "det": str(verdict.det),
        "tr_adj": str(verdict.tr_adj),
        "det_matches_cofactor_expansion": direct == verdict.det,
        "child_selections": _selection_rows(selections, "alpha"),
        "verdict": verdict.to_json(),
        "positive_kernel_vector": _kernel_json(positive_kernel_vector(net)),
        "caps": {"seed": seed, "samples": samples, "max_terms": max_terms, "max_enum": max_enum},
    }
    if rates is not None:
        report["spectral"] = spectral_report(net, rates).to_json()
    return report, verdict.kind


def _print_text(report: dict) -> None:
    net = report["network"]
    print(f"network: {net['name'] or '(unnamed)'}")
    print(f"species order: {', '.join(net['species'])}")
    print(f"reactions: {net['n_reactions']}, rate variables: {net['n_variables']}")
    print(f"det G = {report['det']}")
    print(f"tr Adj(G) = {report['tr_adj']}")
    print(f"child selections: {len(report['child_selections'])}")
    for row in report["child_selections"]:
        a = ", ".join(f"{m}->{j}" for m, j in row["assignment"].items())
        print(f"  ({a})  alpha = {row['coefficient']}")
    v = report["verdict"]
    print(f"verdict: {v['kind']}")
    if v["certificate"]:
        c = v["certificate"]
        print(f"  certificate: det = {c['scale']} * {c['content']} * ({c['factor']})")
        print(f"               tr Adj = ({c['quotient']}) * ({c['factor']})")
    if v["witness"]:
        print("  witness: " + ", ".join(f"{k} = {x}" for k, x in v["witness"].items()))
    print(f"  samples tried: {v['samples']['tried']}, singular found: {v['samples']['singular_found']}")
    k = report["positive_kernel_vector"]
    print("positive kernel vector: " + ("absent" if k is None else "(" + ", ".join(k) + ")"))
    if "spectral" in report:
        s = report["spectral"]
        print(f"at the given rates: det = {s['determinant']}, tr Adj = {s['adjugate_trace']}, "
              f"alg mult = {s['alg_mult']}, geom mult = {s['geom_mult']}")


def _emit(obj, as_json: bool, text_fn=None) -> None:
    if as_json or text_fn is None:
        print(json.dumps(obj, indent=2))
    else:
        text_fn(obj)


# -- subcommands -------------------------------------------------------------


def cmd_analyze(args) -> int:
    net = load_network(args.network)
    rates = read_rates(args.rates) if args.rates else None
    report, kind = analyze(net, args.seed, args.samples, args.max_terms, args.max_enum, rates)
    _emit(report, args.json, _print_text)
    return VERDICT_EXIT[kind]


def cmd_child_selections(args) -> int:
    net = load_network(args.network)
    rows = _selection_rows(enumerate_child_selections(net, args.max_enum), "alpha")
    _emit({"species": list(net.species_names), "child_selections": rows}, args.json,
          lambda o: [print(json.dumps(r)) for r in o["child_selections"]])
    return EXIT_OK


def cmd_pcs(args) -> int:
    net = load_network(args.network)
    try:
        pcs = enumerate_partial_child_selections(net, args.omit, args.max_enum)
    except KeyError as exc:
        raise InputError(str(exc)) from None
    rows = _selection_rows(pcs, "beta")
    _emit({"omitted": args.omit, "partial_child_selections": rows}, args.json,
          lambda o: [print(json.dumps(r)) for r in o["partial_child_selections"]])
    return EXIT_OK


def cmd_det(args) -> int:
    net = load_network(args.network)
    via_cs = det_via_child_selections(net, args.max_enum)
    direct = det_direct(sym_jacobian(net), args.max_terms)
    out = {"species": list(net.species_names), "det": str(via_cs),
           "tr_adj": str(adjugate_trace_via_pcs(net, args.max_enum)),
           "det_matches_cofactor_expansion": via_cs == direct}
    _emit(out, args.json, lambda o: (print(f"det G = {o['det']}"), print(f"tr Adj(G) = {o['tr_adj']}")))
    return EXIT_OK


def cmd_adjugate(args) -> int:
    net = load_network(args.network)
    adj = adjugate_symbolic(sym_jacobian(net), args.max_terms)
    names = net.species_names
    trace = MultiPoly.zero()
    for i in range(len(names)):
        trace = trace + adj[i][i]
    out = {"species": list(names),
           "adjugate": [[str(p) for p in row] for row in adj],
           "trace": str(trace)}

    def text(o):
        for m, row in zip(names, o["adjugate"]):
            for n, p in zip(names, row):
                print(f"Adj[{m},{n}] = {p}")
        print(f"tr Adj(G) = {o['trace']}")

    _emit(out, args.json, text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    net = load_network(args.network)
    rates = read_rates(args.rates)
    try:
        rep = spectral_report(net, rates)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {"species": list(net.species_names), **rep.to_json()}
    _emit(out, True)
    return EXIT_OK


def cmd_massaction(args) -> int:
    net = load_network(args.network)
    out: dict = {"species": list(net.species_names)}
    if args.k or args.x:
        if not (args.k and args.x):
            raise InputError("--k and --x must be given together")
        inst = MassActionInstance(read_assignments(args.k), read_assignments(args.x))
        try:
            residual, rep = check_equilibrium(net, inst)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        out.update({
            "residual": [str(r) for r in residual],
            "determinant": str(rep.determinant),
            "alg_mult": rep.algebraic_multiplicity_zero,
            "geom_mult": rep.geometric_multiplicity_zero,
        })
    if args.probe:
        out["probe"] = probe_singular_equilibrium(net, seed=args.seed, attempts=args.probe).to_json()
    if len(out) == 1:
        raise InputError("nothing to do: give --k/--x and/or --probe N")
    _emit(out, True)
    return EXIT_OK


def cmd_kernel(args) -> int:
    net = load_network(args.network)
    v = positive_kernel_vector(net)
    out = {"reactions": list(net.labels), "positive_kernel_vector": _kernel_json(v)}
    _emit(out, args.json, lambda o: print(
        "absent" if v is None else " ".join(f"{j}={x}" for j, x in zip(o["reactions"], o["positive_kernel_vector"]))))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                        help=f"singular samples to draw (default {DEFAULT_SAMPLES})")
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS,
                        help="term cap for symbolic expansions")
    common.add_argument("--max-enum", type=int, default=DEFAULT_MAX_NODES,
                        help="node cap for selection enumeration")

    parser = argparse.ArgumentParser(
        prog="crnobstruct",
        description="Decide whether a reaction network's Jacobian can have a simple zero eigenvalue.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("network", help="network file")
        p.set_defaults(func=fn)
        return p

    p = add("analyze", cmd_analyze, "full structural report and verdict")
    p.add_argument("--rates", help="optional rates file for a per-instance spectral report")
    add("child-selections", cmd_child_selections, "list Child Selections with coefficients")
    p = add("pcs", cmd_pcs, "list Partial Child Selections omitting one species")
    p.add_argument("--omit", required=True, help="species to omit")
    add("det", cmd_det, "symbolic det G and tr Adj(G)")
    add("adjugate", cmd_adjugate, "symbolic adjugate matrix")
    p = add("oracle", cmd_oracle, "exact spectral report at given rates")
    p.add_argument("--rates", required=True, help="file of 'r[label,species] = p/q' lines")
    p = add("massaction", cmd_massaction, "mass-action equilibrium check and singular-equilibrium probe")
    p.add_argument("--k", help="file of 'label = p/q' rate constants (inflows too)")
    p.add_argument("--x", help="file of 'species = p/q' concentrations")
    p.add_argument("--probe", type=int, metavar="N", help="probe N attempts for a singular equilibrium")
    add("kernel", cmd_kernel, "strictly positive right kernel vector of S")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (EnumerationCapExceeded, TermLimitExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
