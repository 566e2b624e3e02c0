"""Command-line entry point.

Exit codes: 0 success, 1 parse or usage error, 2 right-hand side not
admissible, 3 inconclusive (or no construction available), 4 an example
verdict differs from its expected value.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NOT_ADMISSIBLE = 2
EXIT_INCONCLUSIVE = 3
EXIT_MISMATCH = 4

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _configure_threads() -> None:
    """VEKUA_THREADS caps the BLAS/OpenMP pools used through numpy."""
    raw = os.environ.get("VEKUA_THREADS")
    if not raw:
        return
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"VEKUA_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"VEKUA_THREADS must be a positive integer, got {raw!r}")
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ[var] = str(n)


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _xi(value: str):
    try:
        x = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid xi-max {value!r}") from None
    if x <= 0:
        raise argparse.ArgumentTypeError("xi-max must be positive")
    return int(x) if x.denominator == 1 else x


def _load_op(path: str):
    from .operator import operator_from_json

    obj = _read_json(path)
    try:
        return operator_from_json(obj.get("operator", obj))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: invalid operator: {exc}") from None


def _load_data(path: str, op):
    from .coeffs import fourier_from_json

    obj = _read_json(path)
    try:
        data = fourier_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: invalid Fourier data: {exc}") from None
    if data.group != op.group:
        raise InputError(f"{path}: data group {data.group} differs from operator group {op.group}")
    return data


# -- subcommands -------------------------------------------------------------------


def cmd_classify(args) -> int:
    from .classify import INCONCLUSIVE, classify_gh, classify_gs
    from .operator import operator_to_json

    op = _load_op(args.op)
    props = ["GH", "GS"] if args.property == "both" else [args.property]
    verdicts = []
    for prop in props:
        fn = classify_gh if prop == "GH" else classify_gs
        verdicts.append(fn(op, args.xi_max).to_json())
    _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "operator": operator_to_json(op),
            "xi_max": str(args.xi_max),
            "verdicts": verdicts,
        },
        args.out,
    )
    return EXIT_INCONCLUSIVE if any(v["answer"] == INCONCLUSIVE for v in verdicts) else EXIT_OK


def _rhs(args, op):
    from .coeffs import random_fourier_data
    from .solve import make_admissible

    if args.rhs:
        return _load_data(args.rhs, op)
    exact = args.mode != "float"
    f = random_fourier_data(op.group, args.xi_max, 3, args.seed, exact=exact, entry_density=0.3)
    return make_admissible(op, f)


def cmd_admissible(args) -> int:
    from .solve import check_admissible

    op = _load_op(args.op)
    f = _rhs(args, op)
    report = check_admissible(op, f)
    out = {"schema_version": SCHEMA_VERSION, **report.to_json()}
    _dump(out, args.out)
    if report.undecided:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if report.admissible else EXIT_NOT_ADMISSIBLE


def cmd_solve(args) -> int:
    from .coeffs import fourier_to_json
    from .exact import CFExactnessError
    from .solve import IllConditioned, NotAdmissible, residual, solve

    op = _load_op(args.op)
    f = _rhs(args, op)
    try:
        u = solve(op, f, args.mode)
    except NotAdmissible as exc:
        _dump({"schema_version": SCHEMA_VERSION, **exc.report.to_json()}, args.out)
        return EXIT_NOT_ADMISSIBLE
    except (CFExactnessError, IllConditioned) as exc:
        _dump({"schema_version": SCHEMA_VERSION, "error": str(exc)}, args.out)
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        raise InputError(str(exc)) from None
    f_cmp = f if u.exact == f.exact else f.to_float()
    _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "mode": "exact" if u.exact else "float",
            "u": fourier_to_json(u),
            "residual": residual(op, u, f_cmp),
        },
        args.out,
    )
    return EXIT_OK


def cmd_counterexample(args) -> int:
    from .classify import NoResonantSequence
    from .coeffs import estimate_decay, fourier_to_json
    from .counterexample import (
        NoZeroFamily,
        SelfDualObstruction,
        gh_counterexample,
        gs_obstruction,
        singular_kernel,
    )
    from .dual import slot_to_json

    op = _load_op(args.op)
    out = {"schema_version": SCHEMA_VERSION, "kind": args.kind, "xi_max": str(args.xi_max)}
    try:
        if args.kind == "kernel":
            k = singular_kernel(op, args.xi_max)
            rep = estimate_decay(k.u, k.witness)
            out.update(
                {
                    "u": fourier_to_json(k.u),
                    "relation": "Pu=0",
                    "family": k.family.to_json(),
                    "witness_floor": k.floor,
                    "decay": rep.verdict,
                    "verification": [{"check": "apply(op, u) == 0", "ok": k.verify(op)}],
                }
            )
        elif args.kind == "gh":
            g = gh_counterexample(op, args.xi_max)
            out.update(
                {
                    "f": fourier_to_json(g.f),
                    "u": fourier_to_json(g.u),
                    "relation": g.relation,
                    "case": g.case,
                    "slots": [slot_to_json(s) for s in g.slots],
                    "flipped": list(g.flipped),
                    "verification": list(g.verification),
                }
            )
        else:
            g = gs_obstruction(op, args.xi_max)
            out.update(
                {
                    "f": fourier_to_json(g.f),
                    "schedule": [s.to_json() for s in g.schedule],
                    "verification": [{"check": "orbit solve forces |u| = 1/|Delta|", "ok": g.verified}],
                }
            )
    except (NoZeroFamily, NoResonantSequence, SelfDualObstruction) as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
        _dump(out, args.out)
        return EXIT_INCONCLUSIVE
    _dump(out, args.out)
    ok = all(v["ok"] for v in out["verification"])
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    from .coeffs import random_fourier_data
    from .oracle import (
        GroupHasSU2Factor,
        SingularInconsistent,
        bruteforce_apply,
        bruteforce_orbit_solve,
        torus_grid_apply,
    )
    from .operator import apply, orbit_of, orbit_system
    from .solve import NotAdmissible, solve

    op = _load_op(args.op)
    if args.u:
        u = _load_data(args.u, op)
    else:
        u = random_fourier_data(op.group, args.xi_max, 3, args.seed, exact=not op.has_cf)
    out = {"schema_version": SCHEMA_VERSION}
    if args.grid:
        try:
            out["grid"] = torus_grid_apply(op, u, args.grid).to_json()
        except GroupHasSU2Factor as exc:
            out["grid"] = {"skipped": str(exc)}
    checks = {"orbits": 0, "apply_mismatches": 0}
    if u.exact and not op.has_cf:
        pu = apply(op, u)
        seen = set()
        for rep in u.reps:
            for s in _slots(rep):
                orb = orbit_of(op.vf, s)
                if orb.slot in seen:
                    continue
                seen.add(orb.slot)
                vals = {t: u.value(t) for t in orb.slots}
                bf = bruteforce_apply(op, orb, vals)
                checks["orbits"] += 1
                if any(bf[t] != pu.value(t) for t in orb.slots):
                    checks["apply_mismatches"] += 1
    out["apply_vs_bruteforce"] = checks
    status = EXIT_OK
    if args.rhs:
        f = _load_data(args.rhs, op)
        sol = {"orbits": 0, "mismatches": 0, "singular_consistent": 0}
        try:
            usol = solve(op, f, "exact" if f.exact else "float")
        except NotAdmissible as exc:
            out["solve"] = {"admissible": False, **exc.report.to_json()}
            _dump(out, args.out)
            return EXIT_NOT_ADMISSIBLE
        if f.exact and not op.has_cf:
            seen = set()
            for rep in f.reps:
                for s in _slots(rep):
                    orb = orbit_of(op.vf, s)
                    if orb.slot in seen:
                        continue
                    seen.add(orb.slot)
                    fv = {t: f.value(t) for t in orb.slots}
                    try:
                        res = bruteforce_orbit_solve(op, orb, fv)
                    except SingularInconsistent:
                        sol["mismatches"] += 1
                        continue
                    sol["orbits"] += 1
                    uv = {t: usol.value(t) for t in orb.slots}
                    if orbit_system(op, orb).singular:
                        sol["singular_consistent"] += 1
                        if not res.family_contains(op, orb, uv):
                            sol["mismatches"] += 1
                    elif any(res.values[t] != uv[t] for t in orb.slots):
                        sol["mismatches"] += 1
        out["solve_vs_bruteforce"] = sol
        if sol["mismatches"]:
            status = EXIT_INCONCLUSIVE
    if checks["apply_mismatches"]:
        status = EXIT_INCONCLUSIVE
    _dump(out, args.out)
    return status


def _slots(rep):
    from .dual import slots_of

    return list(slots_of(rep))


def cmd_examples(args) -> int:
    from .examples import format_table, run_examples

    rows = run_examples(args.xi_max)
    if args.out:
        _dump({"schema_version": SCHEMA_VERSION, "rows": [r.to_json() for r in rows]}, args.out)
    print(format_table(rows))
    return EXIT_OK if all(r.ok for r in rows) else EXIT_MISMATCH


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vekua", description="Fourier-side analysis of Pu = Xu - qu - p conj(u)."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_op=True, xi_default=50):
        if need_op:
            p.add_argument("--op", required=True, help="operator JSON")
        p.add_argument("--xi-max", type=_xi, default=xi_default, dest="xi_max")
        p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("classify", help="GH / GS verdicts")
    common(p)
    p.add_argument("--property", choices=["GH", "GS", "both"], default="both")
    p.set_defaults(func=cmd_classify)

    for name, fn, hlp in (
        ("solve", cmd_solve, "solve P u = f"),
        ("admissible", cmd_admissible, "check the compatibility conditions"),
    ):
        p = sub.add_parser(name, help=hlp)
        common(p, xi_default=20)
        p.add_argument("--rhs", help="right-hand side JSON (default: seeded random admissible)")
        p.add_argument("--mode", choices=["exact", "float"], default=None)
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=fn)

    p = sub.add_parser("counterexample", help="singular solutions and obstructions")
    common(p, xi_default=40)
    p.add_argument("--kind", choices=["kernel", "gh", "gs"], default="kernel")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("verify", help="independent oracle checks")
    common(p, xi_default=10)
    p.add_argument("--u", help="coefficients of u (default: seeded random)")
    p.add_argument("--rhs", help="right-hand side to cross-check solve against")
    p.add_argument("--grid", type=int, default=0, help="torus grid size for the pointwise check")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", help="run the bundled example suite")
    p.add_argument("--xi-max", type=_xi, default=None, dest="xi_max")
    p.add_argument("--out")
    p.set_defaults(func=cmd_examples)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        _configure_threads()
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main() -> None:
    sys.exit(run())
