"""Command-line front end.

Every subcommand assembles a Report dict and can emit it as JSON with
--json; identical invocations print byte-identical JSON (timing is shown
only in the human-readable output).  Exit status: 0 pass, 1 fail, 2 error.
"""

import argparse
import json
import sys
import time
from importlib import resources

from . import chartab, groupact, homology, inequal, poset
from .errors import DataError, IncompatibleFieldError, InternalConsistencyError, ResourceLimitError
from .qarith import FieldSpec, is_prime, quantum_char

PITABLE_DEFAULT_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23)


def data_text(name: str) -> str:
    """Contents of a bundled data file (group descriptions, exported tables)."""
    return resources.files("inchom.data").joinpath(name).read_text()


def _read_source(path: str) -> str:
    if path.startswith("data:"):
        return data_text(path[len("data:"):])
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _int_list(text: str) -> list:
    """Comma-separated integers, with a JSON array accepted as well."""
    text = text.strip()
    if text.startswith("["):
        try:
            vals = json.loads(text)
        except json.JSONDecodeError:
            vals = None
        if isinstance(vals, list) and all(isinstance(v, int) for v in vals):
            return vals
        raise argparse.ArgumentTypeError(f"expected a JSON integer array, got {text!r}")
    try:
        return [int(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _factorize(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[str(d)] = out.get(str(d), 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[str(n)] = out.get(str(n), 0) + 1
    return out


def cmd_pitable(args) -> dict:
    primes = [p for p in range(2, args.pmax + 1) if is_prime(p)]
    qs = args.q_list
    cells = []
    for p in primes:
        row = []
        for q in qs:
            row.append(None if q % p == 0 else quantum_char(p, q))
        cells.append(row)
    return {
        "command": "pitable",
        "inputs": {"pmax": args.pmax, "qs": qs},
        "results": {"primes": primes, "qs": qs, "cells": cells},
        "status": "pass",
    }


def _render_pitable(report) -> str:
    res = report["results"]
    width = 4
    lines = ["pi(p,q)" + "".join(f"{q:>{width}}" for q in res["qs"])]
    for p, row in zip(res["primes"], res["cells"]):
        cells = "".join(f"{'--' if v is None else v:>{width}}" for v in row)
        lines.append(f"p={p:<5}" + cells)
    return "\n".join(lines)


def cmd_homology(args) -> dict:
    spec = poset.PosetSpec.parse(args.poset)
    field = FieldSpec(args.p)
    pi = quantum_char(field.p, spec.q)
    inputs = {"poset": spec.describe(), "p": field.p}
    if (args.j is None) != (args.i is None):
        raise DataError("give both -j and -i, or neither")
    if args.j is not None:
        inputs |= {"j": args.j, "i": args.i}
        tc = homology.trace_check(spec, field, args.j, args.i)
        dim = homology.homology_dim(spec, field, args.j, args.i)
        window = homology.vanishing_window(spec.n, pi, args.j, args.i)
        results = {
            "pi": pi,
            "j": args.j,
            "i": args.i,
            "dim": dim,
            "in_window": window,
            "slot": list(tc.slot),
            "lhs": tc.lhs,
            "rhs": tc.rhs,
            "arrow": list(tc.layout.arrow),
            "d": tc.layout.d,
        }
        status = "pass" if tc.passed and (window or dim == 0) else "fail"
    else:
        report = homology.homology_scan(spec, field)
        results = report.to_dict()
        status = "pass" if report.passed else "fail"
    return {"command": "homology", "inputs": inputs, "results": results, "status": status}


def _render_homology(report) -> str:
    res = report["results"]
    lines = [f"pi = {res['pi']}"]
    if "records" in res:
        nonzero = [r for r in res["records"] if r["dim"]]
        lines.append(f"{len(res['records'])} (j,i) pairs checked, "
                     f"{len(nonzero)} with nonzero homology")
        for r in nonzero:
            lines.append(
                f"  j={r['j']} i={r['i']}: dim={r['dim']} "
                f"window={'in' if r['in_window'] else 'OUT'} trace {r['lhs']}={r['rhs']}"
            )
    else:
        lines.append(
            f"j={res['j']} i={res['i']}: dim={res['dim']}, arrow={tuple(res['arrow'])}, "
            f"d={res['d']}, trace lhs={res['lhs']} rhs={res['rhs']}"
        )
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def cmd_orbits(args) -> dict:
    g = groupact.parse_group(_read_source(args.group), name=args.group)
    spec = poset.PosetSpec.parse(args.poset)
    order = groupact.group_order(g, args.max_group_order)
    inputs = {"group": args.group, "poset": spec.describe(),
              "method": args.method, "k": args.k}
    results = {"order": order}
    status = "pass"
    ks = [args.k] if args.k is not None else list(range(spec.n + 1))
    if args.method in ("uf", "both"):
        counts = [
            groupact.orbit_count_unionfind(g, spec, k, cap=args.max_rank_size) for k in ks
        ]
        if args.k is None:
            groupact.OrbitSeries(n=spec.n, values=tuple(counts))  # palindromicity gate
        results["unionfind"] = counts
    if args.method in ("burnside", "both"):
        series = groupact.burnside_counts(g, spec, cap=args.max_group_order)
        results["burnside"] = [series.values[k] for k in ks]
    if args.method == "both":
        agree = results["unionfind"] == results["burnside"]
        results["methods_agree"] = agree
        if not agree:
            status = "fail"
    results["k_values"] = ks
    return {"command": "orbits", "inputs": inputs, "results": results, "status": status}


def _render_orbits(report) -> str:
    res = report["results"]
    lines = [f"|G| = {res['order']}"]
    for key in ("unionfind", "burnside"):
        if key in res:
            pairs = ", ".join(f"N_{k}={v}" for k, v in zip(res["k_values"], res[key]))
            lines.append(f"{key}: {pairs}")
    if "methods_agree" in res:
        lines.append(f"methods agree: {res['methods_agree']}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def cmd_mult(args) -> dict:
    if args.table.startswith("sn:"):
        table = chartab.sn_table(int(args.table[3:]))
    else:
        table = chartab.load_table(_read_source(args.table))
    spec = poset.PosetSpec.parse(args.poset)
    if spec.kind != "boolean":
        raise DataError("multiplicity series need a boolean poset (subset action)")
    field = FieldSpec(args.p)
    pi = quantum_char(field.p, spec.q)
    series = chartab.multiplicity_series(table, args.irreducible, spec.n)
    chain = inequal.check_chain(series, pi)
    palindrome = inequal.check_palindrome(series)
    stanley = inequal.check_lw(series)
    # complex multiplicities equal the characteristic-p ones only when p is
    # coprime to |G|; outside that regime a failed folded chain is informative,
    # not an error
    guaranteed = table.order % field.p != 0
    status = "pass"
    if not (palindrome.passed and stanley.passed):
        status = "fail"
    if guaranteed and not chain.passed:
        status = "fail"
    return {
        "command": "mult",
        "inputs": {"table": args.table, "poset": spec.describe(),
                   "p": args.p, "irreducible": args.irreducible},
        "results": {
            "pi": pi,
            "series": list(series.values),
            "folded": list(chain.folded),
            "chain_passed": chain.passed,
            "chain_violation_r": chain.violation_r,
            "chain_guaranteed": guaranteed,
            "palindrome_passed": palindrome.passed,
            "stanley_passed": stanley.passed,
            "stanley_regime": pi > spec.n,
        },
        "status": status,
    }


def _render_mult(report) -> str:
    res = report["results"]
    chain_note = "pass" if res["chain_passed"] else "FAIL"
    if not res["chain_guaranteed"]:
        chain_note += " (p divides |G|: chain not guaranteed for complex multiplicities)"
    lines = [
        f"pi = {res['pi']}" + ("  (pi > n: plain Stanley regime)" if res["stanley_regime"] else ""),
        "series: " + ",".join(str(v) for v in res["series"]),
        "folded chain: " + " >= ".join(str(v) for v in res["folded"]) + f"  -> {chain_note}",
        f"palindrome: {'pass' if res['palindrome_passed'] else 'FAIL'}, "
        f"monotone toward middle: {'pass' if res['stanley_passed'] else 'FAIL'}",
        f"status: {report['status']}",
    ]
    return "\n".join(lines)


def cmd_bounds(args) -> dict:
    report = inequal.deduce_bounds(args.n, args.pis)
    return {
        "command": "bounds",
        "inputs": {"n": args.n, "pis": list(args.pis)},
        "results": {"bounds": list(report.bounds), "log": list(report.log)},
        "status": "pass",
    }


def _render_bounds(report) -> str:
    res = report["results"]
    lines = ["k : " + " ".join(f"{k}" for k in range(len(res["bounds"])))]
    lines.append("L : " + " ".join(str(v) for v in res["bounds"]))
    lines.extend("  " + step for step in res["log"])
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def cmd_chain(args) -> dict:
    result = inequal.check_chain(args.series, args.pi)
    return {
        "command": "chain",
        "inputs": {"series": args.series, "pi": args.pi, "n": result.n},
        "results": {
            "m": result.m,
            "s": result.s,
            "folded": list(result.folded),
            "violation_r": result.violation_r,
        },
        "status": "pass" if result.passed else "fail",
    }


def _render_chain(report) -> str:
    res = report["results"]
    out = " >= ".join(str(v) for v in res["folded"])
    lines = [f"folded chain (m={res['m']}, s={res['s']}): {out}"]
    if res["violation_r"] is not None:
        lines.append(f"violated at r = {res['violation_r']}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def cmd_order(args) -> dict:
    g = groupact.parse_group(_read_source(args.group), name=args.group)
    order = groupact.group_order(g, args.max_group_order)
    return {
        "command": "order",
        "inputs": {"group": args.group},
        "results": {"order": order, "factorization": _factorize(order),
                    "declared": g.declared_order},
        "status": "pass",
    }


def _render_order(report) -> str:
    res = report["results"]
    factors = " * ".join(
        f"{p}^{e}" if e > 1 else p for p, e in sorted(res["factorization"].items(), key=lambda kv: int(kv[0]))
    )
    return f"|G| = {res['order']} = {factors}\nstatus: {report['status']}"


_RENDERERS = {
    "pitable": _render_pitable,
    "homology": _render_homology,
    "orbits": _render_orbits,
    "mult": _render_mult,
    "bounds": _render_bounds,
    "chain": _render_chain,
    "order": _render_order,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inchom",
        description="Incidence homology, orbit counts and multiplicity chains "
                    "on subset and subspace lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit the machine-readable report")

    p = sub.add_parser("pitable", help="print the quantum characteristic grid pi(p, q)")
    p.add_argument("--pmax", type=int, default=19)
    p.add_argument("--q-list", dest="q_list", type=_int_list,
                   default=list(PITABLE_DEFAULT_QS))
    add_json(p)
    p.set_defaults(func=cmd_pitable)

    p = sub.add_parser("homology", help="scan homology dimensions and trace identities")
    p.add_argument("poset", help="boolean:<n> or projective:<n>,<q>")
    p.add_argument("-p", type=int, required=True, help="field characteristic")
    p.add_argument("-j", type=int, default=None)
    p.add_argument("-i", type=int, default=None)
    p.add_argument("--max-rank-size", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("orbits", help="orbit counts of a group on rank sets")
    p.add_argument("group", help="group file path, or data:<bundled name>")
    p.add_argument("poset")
    p.add_argument("-k", type=int, default=None, help="single rank (default: all)")
    p.add_argument("--method", choices=("uf", "burnside", "both"), default="uf")
    p.add_argument("--max-rank-size", type=int, default=None)
    p.add_argument("--max-group-order", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("mult", help="multiplicity series of one irreducible, with chains")
    p.add_argument("table", help="sn:<n>, a table file path, or data:<bundled name>")
    p.add_argument("poset")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--irreducible", required=True)
    add_json(p)
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("bounds", help="lower bounds on orbit counts from folded chains")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--pis", type=_int_list, required=True)
    add_json(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("chain", help="check the folded chain of an explicit series")
    p.add_argument("--series", type=_int_list, required=True)
    p.add_argument("--pi", type=int, required=True)
    add_json(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("order", help="order of a group given by generators")
    p.add_argument("group")
    p.add_argument("--max-group-order", type=int, default=None)
    add_json(p)
    p.set_defaults(func=cmd_order)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_rank_size", None):
        poset.DEFAULT_RANK_CAP = args.max_rank_size
    started = time.perf_counter()
    try:
        report = args.func(args)
    except (DataError, IncompatibleFieldError, ResourceLimitError,
            InternalConsistencyError, ValueError, OSError) as exc:
        report = {
            "command": args.command,
            "inputs": {},
            "results": {"error": str(exc)},
            "status": "error",
        }
    elapsed = time.perf_counter() - started
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        if report["status"] == "error":
            print(f"error: {report['results']['error']}", file=sys.stderr)
        else:
            print(_RENDERERS[report["command"]](report))
        print(f"[{elapsed:.2f}s]", file=sys.stderr)
    return {"pass": 0, "fail": 1}.get(report["status"], 2)


if __name__ == "__main__":
    sys.exit(main())
