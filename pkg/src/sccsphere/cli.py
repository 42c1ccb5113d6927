"""Command-line front end.

Exit codes: 0 when a verification succeeds, 1 when a verdict is negative,
2 for usage, input or domain errors. Machine-readable output goes to stdout,
diagnostics to stderr.
"""

import argparse
import csv
import json
import sys

import numpy as np

from . import dynamics, families, solver
from .dziobek import DEFAULT_TOL as CRITERION_TOL
from .dziobek import criterion_check, recover_masses
from .errors import InvalidInputError, SccError
from .geometry import Configuration, in_closed_hemisphere
from .potential import DEFAULT_SCC_TOL, MassVector, scc_residual

FAMILY_ALIASES = {
    "polygon": "odd_polygon",
    "circles": "complementary_circles",
    "triangle": "acute_triangle",
    "tetra": "tetra_family",
    "pentatope": "pentatope_family",
    "simplex": "regular_simplex",
}


class UsageError(Exception):
    pass


def _read_text(source):
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None


def _parse_json(text, source):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{source}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_json_arg(value):
    """Either inline JSON or ``@path`` / ``path`` to a JSON file."""
    path = value[1:] if value.startswith("@") else value
    return _parse_json(_read_text(path), path)


def _parse_masses(value):
    if value.startswith("@"):
        data = _load_json_arg(value)
        if isinstance(data, dict):
            data = data.get("masses")
        if not isinstance(data, list):
            raise UsageError(f"{value[1:]}: expected a JSON list of masses")
        return MassVector(data)
    try:
        return MassVector([float(x) for x in value.split(",") if x.strip()])
    except ValueError:
        raise UsageError(f"cannot parse masses {value!r}; use a comma list or @file.json") from None


def _load_problem(args, need_masses=True):
    doc = _parse_json(_read_text(args.input), "stdin" if args.input == "-" else args.input)
    if not isinstance(doc, dict):
        raise UsageError("configuration JSON must be an object with 'dim' and 'points'")
    conf = Configuration.from_dict(doc)
    masses = None
    if getattr(args, "masses", None):
        masses = _parse_masses(args.masses)
    elif "masses" in doc:
        masses = MassVector(doc["masses"])
    if need_masses and masses is None:
        raise UsageError("no masses given: add a 'masses' key to the JSON or pass --masses")
    return conf, masses


def _emit(obj, out):
    json.dump(obj, out)
    out.write("\n")


def cmd_verify(args, out):
    conf, masses = _load_problem(args)
    report = scc_residual(conf, masses, tol=args.tol)
    _emit(report.to_dict(), out)
    return 0 if report.verdict else 1


def cmd_criterion(args, out):
    conf, masses = _load_problem(args)
    report = criterion_check(conf, masses, tol=args.tol)
    if args.table:
        out.write(report.table() + "\n")
    else:
        _emit(report.to_dict(), out)
    return 0 if report.verdict else 1


def cmd_masses(args, out):
    conf, _ = _load_problem(args, need_masses=False)
    masses, residual = recover_masses(conf, anchor=args.anchor)
    _emit({"masses": masses.to_list(), "residual": residual}, out)
    return 0


def cmd_family(args, out):
    kind = FAMILY_ALIASES.get(args.kind, args.kind)
    params = {
        "odd_polygon": lambda: {"k": args.k},
        "complementary_circles": lambda: {"k1": args.k1, "k2": args.k2, "m": args.m, "mbar": args.mbar},
        "acute_triangle": lambda: {"alpha": args.alpha, "beta": args.beta},
        "tetra_family": lambda: {"c": args.c},
        "pentatope_family": lambda: {"c": args.c},
        "regular_simplex": lambda: {"n_bodies": args.bodies},
    }
    if kind not in params:
        raise UsageError(f"unknown family {args.kind!r}")
    spec_params = params[kind]()
    if args.second_root:
        if kind not in ("tetra_family", "pentatope_family"):
            raise UsageError("--second-root applies to tetra and pentatope only")
        spec_params = {"c": families.second_equal_mass_root(kind)}
    missing = [k for k, v in spec_params.items() if v is None]
    if missing:
        raise UsageError(f"family {args.kind} needs --{missing[0].replace('_', '-')}")
    conf, masses = families.build(families.FamilySpec(kind, spec_params))
    doc = conf.to_dict()
    doc["masses"] = masses.to_list()
    _emit(doc, out)
    return 0


def cmd_sweep(args, out):
    rows = families.mass_ratio_curve(args.kind, args.samples)
    if args.csv:
        writer = csv.writer(out, lineterminator="\n")
        for c, f in rows:
            writer.writerow([repr(c), repr(f)])
    else:
        _emit([{"c": c, "f": f} for c, f in rows], out)
    return 0


def cmd_search(args, out, err):
    masses = _parse_masses(args.masses)
    settings = solver.SearchSettings(
        n=args.n,
        trials=args.trials,
        seed=args.seed,
        tol=args.tol,
        max_iters=args.max_iters,
        merge_tol=args.merge_tol,
        workers=args.workers,
    )
    classes = solver.search(masses, settings)
    _emit([cls.to_dict() for cls in classes], out)
    err.write(f"{len(classes)} class(es) from {settings.trials} trials\n")
    err.write(f"{'#':>3} {'hits':>6} {'residual':>10}  distinct distances\n")
    for i, cls in enumerate(classes):
        dists = np.unique(np.round(cls.fingerprint[:, 2], 6))
        err.write(f"{i:>3} {cls.count:>6} {cls.residual:>10.2e}  {' '.join(f'{d:.6f}' for d in dists)}\n")
    return 0


def cmd_simulate(args, out):
    conf, masses = _load_problem(args)
    if args.velocities:
        vel = np.asarray(_load_json_arg(args.velocities), dtype=float)
        state = dynamics.PhaseState(conf, vel)
    else:
        state = dynamics.PhaseState.at_rest(conf)
    trace = [] if args.trace else None
    _, report = dynamics.integrate(state, masses, args.dt, args.t_final, trace=trace)
    if trace is not None:
        with open(args.trace, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            for t, Q in trace:
                writer.writerow([repr(float(t))] + [repr(float(x)) for x in Q.ravel()])
    _emit(report.to_dict(), out)
    return 0


def cmd_hemisphere(args, out):
    conf, _ = _load_problem(args, need_masses=False)
    inside, u = in_closed_hemisphere(conf, require_interior_body=args.strict)
    _emit({"in_closed_hemisphere": inside, "witness": None if u is None else u.tolist()}, out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="sccsphere", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp, masses=True):
        sp.add_argument("input", help="configuration JSON file, or - for stdin")
        if masses:
            sp.add_argument("--masses", help="comma list or @file.json; overrides the JSON 'masses'")

    sp = sub.add_parser("verify", help="critical-point residual of a configuration")
    with_input(sp)
    sp.add_argument("--tol", type=float, default=DEFAULT_SCC_TOL)

    sp = sub.add_parser("criterion", help="codimension-one criterion report")
    with_input(sp)
    sp.add_argument("--tol", type=float, default=CRITERION_TOL)
    sp.add_argument("--table", action="store_true", help="human-readable table instead of JSON")

    sp = sub.add_parser("masses", help="masses implied by a codimension-one shape")
    with_input(sp, masses=False)
    sp.add_argument("--anchor", choices=["standard", "best"], default="standard")

    sp = sub.add_parser("family", help="emit a built-in configuration with its masses")
    sp.add_argument("kind", help="polygon, circles, triangle, tetra, pentatope or simplex")
    sp.add_argument("--k", type=int)
    sp.add_argument("--k1", type=int)
    sp.add_argument("--k2", type=int)
    sp.add_argument("--m", type=float, default=1.0)
    sp.add_argument("--mbar", type=float, default=1.0)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--c", type=float)
    sp.add_argument("--bodies", type=int)
    sp.add_argument("--second-root", action="store_true", help="use c > peak with equal masses")

    sp = sub.add_parser("sweep", help="mass-ratio curve f(c)")
    sp.add_argument("kind", choices=["tetra", "pentatope"])
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--csv", action="store_true")

    sp = sub.add_parser("search", help="multistart search for critical configurations")
    sp.add_argument("--n", type=int, required=True, help="sphere dimension")
    sp.add_argument("--masses", required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--merge-tol", type=float, default=1e-5)
    sp.add_argument("--max-iters", type=int, default=200)
    sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("simulate", help="integrate the equations of motion")
    with_input(sp)
    sp.add_argument("--dt", type=float, default=1e-3)
    sp.add_argument("--t-final", type=float, default=1.0)
    sp.add_argument("--velocities", help="@file.json with one tangent vector per body")
    sp.add_argument("--trace", help="write per-step CSV rows t,positions... to this file")

    sp = sub.add_parser("hemisphere", help="closed-hemisphere test with witness normal")
    with_input(sp, masses=False)
    sp.add_argument("--strict", action="store_true", help="require a body off the boundary")
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "verify": cmd_verify,
        "criterion": cmd_criterion,
        "masses": cmd_masses,
        "family": cmd_family,
        "sweep": cmd_sweep,
        "simulate": cmd_simulate,
        "hemisphere": cmd_hemisphere,
    }
    try:
        if args.command == "search":
            return cmd_search(args, out, err)
        return handlers[args.command](args, out)
    except (UsageError, SccError, InvalidInputError) as exc:
        err.write(f"sccsphere {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
