"""Command-line front end.

Exit status: 0 on pass / certificate found, 1 on fail / no certificate,
2 on usage or parse errors (nothing is written in that case).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .bvfunc import Representative, require_continuous
from .certify import (
    certify_dirichlet,
    certify_local,
    explain_dirichlet,
    explain_local,
    verify_dirichlet,
    verify_local,
)
from .core import DomainMismatchError
from .measure import serialize_measure
from .pairing import pair_global, pair_local, pair_modified
from .plot import svg_plot
from .textio import ProblemSyntaxError, parse_problem, serialize_certificate


class UsageError(Exception):
    pass


def _pick_entity(pool: dict, name: str | None, what: str, exclude=()):
    if name is not None:
        if name not in pool:
            raise UsageError(f"no {what} named {name!r}")
        return name, pool[name]
    candidates = [n for n in pool if n not in exclude]
    if len(candidates) == 1:
        return candidates[0], pool[candidates[0]]
    default = "u" if what == "func" else "sigma"
    if default in pool:
        return default, pool[default]
    raise UsageError(f"cannot choose a {what}; pass its name explicitly")


def _datum(problem, args):
    if not args.u0:
        raise UsageError("--u0 <name> is required here")
    if args.u0 not in problem.functions:
        raise UsageError(f"no func named {args.u0!r}")
    u0 = problem.functions[args.u0]
    require_continuous(u0)
    return u0


def _csv(check: str, rows) -> str:
    report = harness.Report()
    for instance, result, witness in rows:
        report.add("", instance, check, result, witness)
    return report.to_csv()


def cmd_pair(args):
    problem = parse_problem(args.problem)
    uname, u = _pick_entity(problem.functions, args.u, "func", exclude=(args.u0,))
    sname, sigma = _pick_entity(problem.fields, args.sigma, "field")
    rep = Representative.parse(args.rep)
    if args.mode == "local":
        mu = pair_local(sigma, u, rep)
    else:
        u0 = _datum(problem, args)
        fn = pair_global if args.mode == "global" else pair_modified
        mu = fn(sigma, u, u0, rep)
    text = serialize_measure(mu)
    check = f"pair-{args.mode}-{rep.value}"
    if args.format == "text":
        return 0, (text + "\n") if text else "0\n"
    if args.format == "csv":
        iid = harness.instance_hash(u, sigma)
        rows = [(iid, "pass", line) for line in text.splitlines()]
        return 0, _csv(check, rows)
    return 0, svg_plot({uname: u, sname: sigma}, {check: mu}, title=check)


def cmd_certify(args):
    problem = parse_problem(args.problem)
    uname, u = _pick_entity(problem.functions, args.u, "func", exclude=(args.u0,))
    rep = Representative.parse(args.rep)
    if args.dirichlet:
        if rep is not Representative.PLUS:
            raise UsageError("Dirichlet certification is defined for rep plus only")
        u0 = _datum(problem, args)
        cert = certify_dirichlet(u, u0)
        reason = None if cert else explain_dirichlet(u, u0)
    else:
        cert = certify_local(u, rep)
        reason = None if cert else explain_local(u, rep)
    status = 0 if cert else 1
    iid = harness.instance_hash(u)
    if args.format == "text":
        return status, (serialize_certificate(cert) if cert else reason) + "\n"
    if args.format == "csv":
        witness = serialize_certificate(cert).replace("\n", "; ") if cert else reason
        return status, _csv("certify", [(iid, "pass" if cert else "fail", witness)])
    plots = {uname: u}
    if cert:
        plots["sigma"] = cert.sigma
    return status, svg_plot(plots, title=f"certify {uname}")


def cmd_verify(args):
    problem = parse_problem(args.problem)
    uname, u = _pick_entity(problem.functions, args.u, "func", exclude=(args.u0,))
    sname, sigma = _pick_entity(problem.fields, args.sigma, "field")
    rep = Representative.parse(args.rep)
    if args.dirichlet:
        ok = verify_dirichlet(sigma, u, _datum(problem, args))
    else:
        ok = verify_local(sigma, u, rep)
    status = 0 if ok else 1
    word = "pass" if ok else "fail"
    if args.format == "text":
        return status, f"{word}\n"
    if args.format == "csv":
        return status, _csv("verify", [(harness.instance_hash(u, sigma), word, "")])
    return status, svg_plot({uname: u, sname: sigma}, title=f"verify: {word}")


def cmd_suite(args):
    report = harness.run_suite(args.trials, args.seed, workers=args.workers)
    if args.witness_search:
        report.notes.append(harness.search_unmodified_witness().to_text())
    status = 0 if report.failures == 0 else 1
    if args.format == "csv":
        return status, report.to_csv()
    if args.format == "svg":
        raise UsageError("suite has no svg output")
    return status, report.to_text()


def cmd_compactness(args):
    problem = parse_problem(args.family)
    if "limit" not in problem.functions:
        raise UsageError("family file needs a func named 'limit'")
    limit = problem.functions["limit"]
    members = [n for kind, n in problem.order if kind == "func" and n not in ("limit", "u0")]
    family = [problem.functions[n] for n in members]
    rep = Representative.parse(args.rep)
    if args.dirichlet:
        if "u0" not in problem.functions:
            raise UsageError("Dirichlet compactness needs a func named 'u0'")
        u0 = problem.functions["u0"]
        require_continuous(u0)
        report = harness.run_compactness_dirichlet(family, [u0] * len(family), limit, u0)
        ok, cert = True, report.limit
    else:
        report = harness.run_compactness(family, limit, rep)
        ok, cert = report.limit_certified, report.limit
    status = 0 if ok else 1
    if args.format == "text":
        return status, report.to_text() + "\n"
    if args.format == "csv":
        witness = serialize_certificate(cert).replace("\n", "; ") if cert else ""
        return status, _csv("compactness", [(harness.instance_hash(limit), "pass" if ok else "fail", witness)])
    plots = {n: problem.functions[n] for n in members}
    plots["limit"] = limit
    return status, svg_plot(plots, title=f"compactness rep={rep.value}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bvpairing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "csv", "svg"), default="text")
        p.add_argument("--out", help="write output here instead of stdout")

    def entities(p, sigma=True):
        p.add_argument("problem", help="problem file")
        p.add_argument("--u", help="name of the BV function (func)")
        if sigma:
            p.add_argument("--sigma", help="name of the field")
        p.add_argument("--u0", help="name of the Dirichlet datum (func)")
        p.add_argument("--rep", default="plus", choices=("plus", "minus", "star"))

    p = sub.add_parser("pair", help="compute a pairing measure")
    entities(p)
    p.add_argument("--mode", choices=("local", "global", "modified"), default="local")
    common(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("certify", help="search for a certificate")
    entities(p, sigma=False)
    p.add_argument("--dirichlet", action="store_true")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="check a given certificate")
    entities(p)
    p.add_argument("--dirichlet", action="store_true")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="run the randomized property suite")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--witness-search", action="store_true",
                   help="also run the unmodified-pairing witness search")
    common(p)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("compactness", help="certify an increasing family and its limit")
    p.add_argument("--family", required=True, help="file with member funcs, 'limit' and optional 'u0'")
    p.add_argument("--rep", default="plus", choices=("plus", "minus", "star"))
    p.add_argument("--dirichlet", action="store_true")
    common(p)
    p.set_defaults(func=cmd_compactness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, output = args.func(args)
    except ProblemSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, KeyError, DomainMismatchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(output)
    else:
        sys.stdout.write(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
