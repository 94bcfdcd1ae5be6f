"""Command-line surface: files in, verdicts out.

Exit codes carry verdicts so the whole suite is shell-drivable:
0 = pass, 1 = fail (a checked property does not hold), 2 = usage or
input-file error.  All randomness flows from explicit ``--seed`` flags.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import equations, groebner2
from .eigen_enum import eigen_count, enumerate_eigenpairs
from .power_method import decompose
from .symtensor import (
    contract_last,
    decomp_from_dict,
    decomp_to_dict,
    frobenius_norm,
    random_odeco,
    tensor_from_decomp,
    tensor_from_dict,
    tensor_to_dict,
    to_ucoords,
)

PASS, FAIL, USAGE = 0, 1, 2


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _dump_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def _cmd_synth(args) -> int:
    decomp, tensor = random_odeco(args.n, args.d, args.seed, args.lmin, args.lmax)
    _dump_json(tensor_to_dict(tensor), args.output)
    if args.decomp:
        _dump_json(decomp_to_dict(decomp, args.d), args.decomp)
    return PASS


def _cmd_decompose(args) -> int:
    tensor = tensor_from_dict(_load_json(args.input))
    report = decompose(tensor, tol=args.tol, seed=args.seed)
    _dump_json(decomp_to_dict(report.decomp, tensor.d), args.output)
    print(
        "terms=%d residual=%.3e restarts=%d converged=%s"
        % (report.decomp.k, report.residual_norm, report.restarts_used, report.converged)
    )
    return PASS if report.converged else FAIL


def _cmd_eigen(args) -> int:
    decomp, d = decomp_from_dict(_load_json(args.input))
    n = args.n if args.n is not None else decomp.n
    d = args.d if args.d is not None else d
    enum = enumerate_eigenpairs(decomp, n, d)
    _dump_json(
        {
            "n": n,
            "d": d,
            "expected_count": enum.expected_count,
            "isolated": [
                {
                    "re": [float(x) for x in p.w.real],
                    "im": [float(x) for x in p.w.imag],
                    "lambda_re": float(p.lam.real),
                    "lambda_im": float(p.lam.imag),
                    "residual": p.residual,
                    "support": list(p.support),
                    "eta_exponents": list(p.eta_exponents),
                }
                for p in enum.isolated
            ],
            "nullspace_basis": [[float(x) for x in z] for z in enum.nullspace_basis],
        },
        args.output,
    )
    print("isolated=%d expected=%d" % (len(enum.isolated), enum.expected_count))
    return PASS if len(enum.isolated) == enum.expected_count else FAIL


def _cmd_check(args) -> int:
    tensor = tensor_from_dict(_load_json(args.input))
    res = equations.residual(to_ucoords(tensor))
    _, defect = contract_last(tensor)
    scale = frobenius_norm(tensor) ** 2
    print("quadric_residual=%.6e" % res)
    print("contraction_defect=%.6e (threshold %.6e)" % (defect, args.tol * scale))
    ok = res < args.tol and defect < args.tol * scale
    print("verdict=%s" % ("odeco" if ok else "not-odeco"))
    return PASS if ok else FAIL


def _cmd_equations(args) -> int:
    quadrics = (
        equations.generate_spanning_subset(args.n, args.d)
        if args.subset
        else equations.generate_all_quadrics(args.n, args.d)
    )
    if args.count_only:
        if args.subset:
            mat = equations.coefficient_matrix(quadrics, args.n, args.d)
            from .numkit import exact_integer_rank

            print(exact_integer_rank(mat) if quadrics else 0)
        else:
            print(equations.independent_count(args.n, args.d))
        return PASS
    if args.output:
        _dump_json(
            {
                "n": args.n,
                "d": args.d,
                "subset": bool(args.subset),
                "quadrics": [equations.quadric_to_dict(q) for q in quadrics],
            },
            args.output,
        )
    else:
        for q in quadrics:
            print(equations.quadric_to_text(q))
    return PASS


def _cmd_jacobian(args) -> int:
    rank, expected = equations.jacobian_fermat_rank(args.n, args.d)
    print("rank=%d expected=%d" % (rank, expected))
    return PASS if rank == expected else FAIL


def _cmd_groebner2(args) -> int:
    report = groebner2.report_to_dict(args.d)
    print(json.dumps(report, indent=1))
    return PASS if report["is_groebner"] else FAIL


def _cmd_eigencount(args) -> int:
    print(eigen_count(args.d, args.l))
    return PASS


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="odeco",
        description="Orthogonally decomposable tensor toolbox",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("synth", help="synthesize a random odeco tensor")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--lmin", type=float, default=0.5)
    p.add_argument("--lmax", type=float, default=1.5)
    p.add_argument("-o", "--output", required=True, metavar="T.json")
    p.add_argument("--decomp", metavar="D.json", help="also write the generating decomposition")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("decompose", help="power-method decomposition of a tensor file")
    p.add_argument("-i", "--input", required=True, metavar="T.json")
    p.add_argument("-o", "--output", required=True, metavar="D.json")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("eigen", help="enumerate all eigenvectors of a decomposition file")
    p.add_argument("-i", "--input", required=True, metavar="D.json")
    p.add_argument("--n", type=int, help="ambient dimension (default: from file)")
    p.add_argument("--d", type=int, help="order (default: from file)")
    p.add_argument("-o", "--output", required=True, metavar="E.json")
    p.set_defaults(func=_cmd_eigen)

    p = sub.add_parser("check", help="test a tensor file against the odeco equations")
    p.add_argument("-i", "--input", required=True, metavar="T.json")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("equations", help="generate the variety quadrics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--subset", action="store_true", help="spanning subset instead of all")
    p.add_argument("--count-only", action="store_true", help="print the independent count")
    p.add_argument("-o", "--output", metavar="Q.json", help="write JSON instead of text")
    p.set_defaults(func=_cmd_equations)

    p = sub.add_parser("jacobian", help="exact Jacobian rank at the Fermat point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_jacobian)

    p = sub.add_parser("groebner2", help="verify the n=2 Groebner-basis claims")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_groebner2)

    p = sub.add_parser("eigencount", help="closed-form isolated eigenvector count")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=_cmd_eigencount)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
