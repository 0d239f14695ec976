"""Command-line front end: JSON problems in, JSON classifications / certificates out.

Subcommands:

    classify   kind of the extremal problem (colinear / degenerate / nondegenerate)
    tstar      the unique extremal scaling of the target direction
    solve      full certificate (F, f, B) plus a verification report
    certify    re-verify an externally supplied certificate
    green      two-pole Caratheodory / Lempert values and their equality check
    selftest   run the bundled invariant checks

Problems are JSON objects {"nodes": [...], "targets": [...]} with complex
numbers as [re, im] pairs; nodes of dimension n > 2 are reduced
internally.  Input comes from a file path argument or stdin.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import BallPickError, NoConvergence
from .geometry import (
    BlaschkeProduct,
    MapExpr,
    complex_from_json,
    mobius_eval,
    random_unitary,
    vector_from_json,
)
from .green import TwoPoleData, green_report
from .normalize import PickProblem3, canonicalize
from .nondegenerate import GeodesicParams, left_inverse, phi_eval
from .solver import (
    Certificate,
    Classification,
    SolverConfig,
    compute_tstar,
    synthesize,
    verify_certificate,
)
from .normalize import CanonicalProblem

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARSE = 2
EXIT_NO_CONVERGENCE = 3


def _read_input(path):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": f"cannot read input: {exc}"}), file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from None


def _emit(obj):
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _parse_problem(obj):
    nodes = tuple(vector_from_json(v) for v in obj["nodes"])
    targets = tuple(complex_from_json(t) for t in obj["targets"])
    return PickProblem3(nodes=nodes, targets=targets)


def _config(args) -> SolverConfig:
    return SolverConfig(
        tol=args.tol, starts=args.starts, samples=args.samples,
        boundary_samples=args.boundary_samples, seed=args.seed,
    )


def _canonical_run(obj, cfg):
    problem = _parse_problem(obj)
    canonical, framing = canonicalize(problem)
    res = compute_tstar(canonical.z, canonical.w, canonical.sigma, canonical.tau, cfg)
    return problem, canonical, framing, res


def _witnesses_json(witnesses):
    out = {}
    for k, v in witnesses.items():
        if isinstance(v, np.ndarray):
            out[k] = [[c.real, c.imag] for c in v]
        elif isinstance(v, float) and not np.isfinite(v):
            out[k] = None
        else:
            out[k] = v
    return out


def cmd_classify(args):
    _, _, _, res = _canonical_run(_read_input(args.input), _config(args))
    _emit({**res.classification.to_json(), "witnesses": _witnesses_json(res.witnesses)})
    return EXIT_OK


def cmd_tstar(args):
    _, _, _, res = _canonical_run(_read_input(args.input), _config(args))
    _emit(
        {
            "tstar": res.tstar,
            "classification": res.classification.to_json(),
            "witnesses": _witnesses_json(res.witnesses),
        }
    )
    return EXIT_OK


def cmd_solve(args):
    cfg = _config(args)
    problem, canonical, framing, res = _canonical_run(_read_input(args.input), cfg)
    cert = synthesize(canonical.z, canonical.w, canonical.sigma, canonical.tau, cfg)
    scaled = CanonicalProblem(
        z=canonical.z, w=canonical.w,
        sigma=res.tstar * canonical.sigma, tau=res.tstar * canonical.tau,
    )
    report = verify_certificate(cert, scaled, cfg)
    out = cert.to_json()
    out["report"] = report
    out["canonical"] = {
        "z": [[c.real, c.imag] for c in scaled.z],
        "w": [[c.real, c.imag] for c in scaled.w],
        "sigma": [scaled.sigma.real, scaled.sigma.imag],
        "tau": [scaled.tau.real, scaled.tau.imag],
    }
    _emit(out)
    return EXIT_OK if report["pass"] else EXIT_VERIFY_FAIL


def cmd_certify(args):
    cfg = _config(args)
    obj = _read_input(args.input)
    try:
        can = obj["canonical"]
        scaled = CanonicalProblem(
            z=vector_from_json(can["z"]), w=vector_from_json(can["w"]),
            sigma=complex_from_json(can["sigma"]), tau=complex_from_json(can["tau"]),
        )
        cert = Certificate(
            F=MapExpr.from_json(obj["F"]),
            f=MapExpr.from_json(obj["f"]),
            B=BlaschkeProduct.from_json(obj["B"]),
            preimages=tuple(
                None if p is None else complex(p[0], p[1]) for p in obj["preimages"]
            ),
            classification=Classification(
                kind=obj["classification"]["kind"],
                pair=obj["classification"].get("pair"),
            ),
            tstar=float(obj["tstar"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        print(json.dumps({"error": f"malformed certificate: {exc}"}), file=sys.stderr)
        return EXIT_PARSE
    report = verify_certificate(cert, scaled, cfg)
    _emit({"report": report})
    return EXIT_OK if report["pass"] else EXIT_VERIFY_FAIL


def cmd_green(args):
    obj = _read_input(args.input)
    data = TwoPoleData(
        p=vector_from_json(obj["p"]), q=vector_from_json(obj["q"]),
        z=vector_from_json(obj["z"]),
    )
    _emit(green_report(data, tol=max(args.tol, 1e-6), cfg=_config(args)))
    return EXIT_OK


def _selftest_checks(cfg):
    rng = np.random.default_rng(cfg.seed)
    checks = []

    # Mobius involution and the disc identity behind the chart Blaschke product
    for _ in range(50):
        a = 0.9 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) / np.sqrt(2)
        lam = 0.9 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) / np.sqrt(2)
        checks.append(abs(mobius_eval(a, mobius_eval(a, lam)) - lam) < 1e-12)
    for _ in range(50):
        c = rng.uniform(-0.95, 0.95)
        lam = 0.9 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) / np.sqrt(2)
        g = 2 * c / (1 + c * c)
        lhs = mobius_eval(c * c, lam * mobius_eval(g, lam))
        checks.append(abs(lhs - mobius_eval(c, lam) ** 2) < 1e-12)

    # left inverse identity on random geodesic parameters
    for _ in range(20):
        params = GeodesicParams(
            a=rng.uniform(0.1, 0.9), u=random_unitary(rng), c=rng.uniform(-0.8, 0.8)
        )
        lam = 0.85 * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)) / np.sqrt(2)
        lhs = left_inverse(params)(phi_eval(params, lam))
        checks.append(abs(lhs - lam * mobius_eval(params.gamma, lam)) < 1e-10)

    # a pinned degenerate example and a colinear disc reduction
    res = compute_tstar(
        np.array([0.5, 0.0], dtype=complex), np.array([0.3, 0.6], dtype=complex),
        1.0, 0.3, cfg,
    )
    checks.append(abs(res.tstar - 0.5) < 1e-9 and res.classification.kind == "degenerate")
    res = compute_tstar(
        np.array([0.5, 0.0], dtype=complex), np.array([-0.5, 0.0], dtype=complex),
        0.25, 0.25, cfg,
    )
    checks.append(abs(res.tstar - 1.0) < 1e-9 and res.classification.kind == "colinear")
    return checks


def cmd_selftest(args):
    checks = _selftest_checks(_config(args))
    failures = sum(1 for ok in checks if not ok)
    _emit({"checks": len(checks), "failures": failures})
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ballpick",
        description="Extremal 3-point Pick interpolation in the complex unit ball",
    )
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--starts", type=int, default=36)
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--boundary-samples", type=int, default=2000, dest="boundary_samples")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("classify", cmd_classify), ("tstar", cmd_tstar), ("solve", cmd_solve),
        ("certify", cmd_certify), ("green", cmd_green), ("selftest", cmd_selftest),
    ):
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", default=None, help="JSON file path or - for stdin")
        p.set_defaults(fn=fn)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if not (0.0 < args.tol < 1e-3):
        print(json.dumps({"error": "tol must lie in (0, 1e-3)"}), file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    except NoConvergence as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (BallPickError, KeyError, TypeError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
