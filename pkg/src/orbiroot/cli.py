"""Batch command-line surface.

Reads a session file (``--config``), dispatches one subcommand, and prints a
small human-readable table or, with ``--json``, a machine-readable document
in which every exact rational appears as a ``p/q`` string.  Exit codes:
0 success, 1 domain error (bad input, genus restriction), 2 verification
failure (a cross-checked identity broke, which no valid input can cause).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import inertia_rr, local_model, moduli
from .correspondence import to_parabolic, to_stack, tensor_compat_check
from .geometry import VerificationError
from .parabolic import ParBundle, chi_par, deg_par, deg_par_hilbert, \
    tensor_par
from .root_stack import StackBundle, chi_stack, deg_stack, taut_root_power, \
    tensor_stack
from .selftest import run_selftest
from .session import bundle_to_records, format_fraction, load_graded_module, \
    load_session


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orbiroot", description=__doc__)
    p.add_argument("--config", help="session file (JSON)")
    p.add_argument("--json", action="store_true", dest="json_out",
                   help="emit a machine-readable document")
    p.add_argument("--tol", type=float, default=None,
                   help="tolerance for complex sector sums (default 1e-9, "
                        "or the ORBIROOT_TOL environment variable)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("degree", help="all three degree computations")
    sp.add_argument("name")
    sp = sub.add_parser("chi", help="parabolic Euler characteristic")
    sp.add_argument("name")
    sp.add_argument("--method", default="all",
                    choices=["parabolic", "pushforward", "inertia", "all"])
    sp = sub.add_parser("tensor", help="tensor product of two bundles")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = sub.add_parser("correspond", help="apply the correspondence")
    sp.add_argument("direction", choices=["f", "g", "roundtrip"])
    sp.add_argument("name")
    sp = sub.add_parser("semistable", help="slope and semistability")
    sp.add_argument("name")
    sp = sub.add_parser("check-finite", help="finiteness of a bundle")
    sp.add_argument("name")
    sp = sub.add_parser("witness", help="search for a finiteness witness")
    sp.add_argument("name")
    sp.add_argument("--bound", type=int, default=None,
                    help="maximal relation degree (default r**rank + 2)")
    sub.add_parser("classify-finite",
                   help="enumerate finite line objects, check the bounds")
    sp = sub.add_parser("local-decompose",
                        help="decompose a graded module file into shifts")
    sp.add_argument("modulefile")
    sp = sub.add_parser("selftest", help="run the verification suites")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    return p


def _require_session(args):
    if not args.config:
        raise UsageError("--config is required for this command")
    return load_session(args.config)


def _get_bundle(session, name):
    if name not in session.bundles:
        raise ValueError(f"unknown bundle {name!r}; session defines "
                         f"{sorted(session.bundles)}")
    return session.bundles[name]


def _both_forms(cfg, bundle):
    if isinstance(bundle, ParBundle):
        return bundle, to_stack(cfg, bundle)
    return to_parabolic(cfg, bundle), bundle


def _emit(doc: dict, args) -> None:
    if args.json_out:
        print(json.dumps(doc, indent=2))
        return
    for key, value in doc.items():
        if isinstance(value, list):
            print(f"{key}:")
            for row in value:
                print(f"  {row}")
        else:
            print(f"{key:<18}{value}")


def _cmd_degree(args) -> dict:
    session = _require_session(args)
    E, F = _both_forms(session.config, _get_bundle(session, args.name))
    return {
        "command": "degree",
        "name": args.name,
        "deg_par": format_fraction(deg_par(E)),
        "deg_stack": format_fraction(deg_stack(session.config, F)),
        "deg_hilbert": format_fraction(deg_par_hilbert(session.config, E)),
    }


def _chi_routes(cfg, E, method, tol):
    routes = {}
    r = cfg.root_index
    if method in ("parabolic", "all"):
        routes["parabolic"] = chi_par(cfg, E)
    if method in ("pushforward", "all"):
        F = to_stack(cfg, E)
        total = sum(chi_stack(cfg, tensor_stack(cfg, F,
                                                taut_root_power(cfg, -l)))
                    for l in range(1, r + 1))
        routes["pushforward"] = Fraction(total, r)
    if method in ("inertia", "all"):
        F = to_stack(cfg, E)
        total = sum((inertia_rr.chi_inertia(
            cfg, tensor_stack(cfg, F, taut_root_power(cfg, -l)), tol=tol)
            for l in range(1, r + 1)), Fraction(0))
        routes["inertia"] = total / r
    return routes


def _cmd_chi(args) -> dict:
    session = _require_session(args)
    E, _ = _both_forms(session.config, _get_bundle(session, args.name))
    routes = _chi_routes(session.config, E, args.method, args.tol)
    doc = {"command": "chi", "name": args.name, "method": args.method}
    doc.update({k: format_fraction(v) for k, v in routes.items()})
    if args.method == "all" and len(set(routes.values())) != 1:
        raise VerificationError(f"chi routes disagree: {doc}")
    return doc


def _cmd_tensor(args) -> dict:
    session = _require_session(args)
    cfg = session.config
    Ea, _ = _both_forms(cfg, _get_bundle(session, args.a))
    Eb, _ = _both_forms(cfg, _get_bundle(session, args.b))
    product = tensor_par(cfg, Ea, Eb)
    if not tensor_compat_check(cfg, Ea, Eb):
        raise VerificationError("tensor products disagree across the "
                                "correspondence")
    return {
        "command": "tensor",
        "a": args.a,
        "b": args.b,
        "parabolic": bundle_to_records(cfg, product),
        "stack": bundle_to_records(cfg, to_stack(cfg, product)),
        "deg_par": format_fraction(deg_par(product)),
    }


def _cmd_correspond(args) -> dict:
    session = _require_session(args)
    cfg = session.config
    bundle = _get_bundle(session, args.name)
    doc = {"command": "correspond", "direction": args.direction,
           "name": args.name}
    if args.direction == "f":
        if not isinstance(bundle, StackBundle):
            raise ValueError("correspond f expects a stack bundle "
                             "(summands with 'res')")
        doc["parabolic"] = bundle_to_records(cfg, to_parabolic(cfg, bundle))
    elif args.direction == "g":
        if not isinstance(bundle, ParBundle):
            raise ValueError("correspond g expects a parabolic bundle "
                             "(summands with 'weights')")
        doc["stack"] = bundle_to_records(cfg, to_stack(cfg, bundle))
    else:
        E, F = _both_forms(cfg, bundle)
        back_par = to_parabolic(cfg, to_stack(cfg, E))
        back_stack = to_stack(cfg, to_parabolic(cfg, F))
        if back_par != E or back_stack != F:
            raise VerificationError("round trip is not the identity")
        doc["roundtrip"] = "ok"
        doc["parabolic"] = bundle_to_records(cfg, E)
        doc["stack"] = bundle_to_records(cfg, F)
    return doc


def _cmd_semistable(args) -> dict:
    session = _require_session(args)
    cfg = session.config
    _, F = _both_forms(cfg, _get_bundle(session, args.name))
    return {
        "command": "semistable",
        "name": args.name,
        "slope": format_fraction(moduli.slope(cfg, F)),
        "semistable": moduli.is_semistable(cfg, F),
        "summand_degrees": [format_fraction(deg_stack(cfg, K))
                            for K in F.summands],
    }


def _cmd_check_finite(args) -> dict:
    session = _require_session(args)
    cfg = session.config
    _, F = _both_forms(cfg, _get_bundle(session, args.name))
    return {
        "command": "check-finite",
        "name": args.name,
        "finite": moduli.is_finite(cfg, F),
        "summand_degrees": [format_fraction(deg_stack(cfg, K))
                            for K in F.summands],
    }


def _cmd_witness(args) -> dict:
    session = _require_session(args)
    cfg = session.config
    _, F = _both_forms(cfg, _get_bundle(session, args.name))
    bound = args.bound if args.bound is not None \
        else cfg.root_index ** F.rank + 2
    rel = moduli.witness_polynomials(cfg, F, bound)
    doc = {"command": "witness", "name": args.name, "bound": bound}
    if rel is None:
        doc["relation"] = None
    else:
        doc["relation"] = {
            "P": moduli.format_witness_poly(rel.p_coeffs),
            "Q": moduli.format_witness_poly(rel.q_coeffs),
            "p_coeffs": list(rel.p_coeffs),
            "q_coeffs": list(rel.q_coeffs),
        }
    return doc


def _cmd_classify_finite(args) -> dict:
    session = _require_session(args)
    cfg = session.config
    report = moduli.verify_structure_theorem(cfg)
    rows = [{"d": K.d, "res": list(K.res)}
            for K in moduli.enumerate_finite_lines(cfg)]
    return {
        "command": "classify-finite",
        "count": report.count,
        "expected_count": report.expected_count,
        "min_degree": report.min_degree,
        "max_degree": report.max_degree,
        "bounds": f"-{cfg.num_points} < d <= 0",
        "lines": rows,
    }


def _cmd_local_decompose(args) -> dict:
    M = load_graded_module(args.modulefile)
    shifts = local_model.decompose_shifts(M)
    inv = local_model.invariant_part_rank(M)
    r = M.ring.root_index
    coker_ok = all(local_model.cokernel_free_check(M, l, lp)
                   for l in range(r) for lp in range(l, l + r))
    return {
        "command": "local-decompose",
        "root_index": r,
        "precision": M.ring.precision,
        "shifts": list(shifts),
        "invariant_rank": inv.rank,
        "invariant_t_valuations": list(inv.t_valuations),
        "cokernels_free": coker_ok,
    }


def _cmd_selftest(args) -> dict:
    ok, results = run_selftest(samples=args.samples, seed=args.seed,
                               tol=args.tol)
    doc = {
        "command": "selftest",
        "samples": args.samples,
        "seed": args.seed,
        "ok": ok,
        "suites": [{"name": r.name, "checked": r.checked,
                    "failures": r.failures, "detail": r.detail}
                   for r in results],
    }
    return doc


_COMMANDS = {
    "degree": _cmd_degree,
    "chi": _cmd_chi,
    "tensor": _cmd_tensor,
    "correspond": _cmd_correspond,
    "semistable": _cmd_semistable,
    "check-finite": _cmd_check_finite,
    "witness": _cmd_witness,
    "classify-finite": _cmd_classify_finite,
    "local-decompose": _cmd_local_decompose,
    "selftest": _cmd_selftest,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:      # --help
        return int(exc.code or 0)
    try:
        doc = _COMMANDS[args.command](args)
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command == "selftest":
        if args.json_out:
            print(json.dumps(doc, indent=2))
        else:
            for suite in doc["suites"]:
                mark = "ok  " if suite["failures"] == 0 else "FAIL"
                extra = f" ({suite['detail']})" if suite["detail"] else ""
                print(f"{mark} {suite['name']}: {suite['checked']} checks, "
                      f"{suite['failures']} failures{extra}")
            print("selftest passed" if doc["ok"] else "selftest FAILED")
        return 0 if doc["ok"] else 2
    _emit(doc, args)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
