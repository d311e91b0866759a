"""Command-line entry point ``rrb``.

Every subcommand prints one JSON report on stdout (and writes it to
``--json PATH`` when given).  Exit status: 0 when every check holds, 1 when
a mathematical check fails, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Any

from . import bch as bchmod
from .groups import Perm
from .liegroup_numeric import FAMILIES, family_report
from .perm_rb import (
    RecursiveRBOp,
    check_pair_conditions,
    check_single_conditions,
    enumerate_pairs,
    enumerate_single,
    format_tuple,
    parse_tuple,
    sign_rep_operator,
    unordered_pair_count,
    well_defined,
)
from .rbops import (
    DEFAULT_SEED,
    Bounded,
    RelRBOp,
    brace_check,
    brace_from_rrb,
    cyclic_reduction_operator,
    descendent,
    gamma_check,
    gamma_matches_operator,
    graph_subgroup_check,
    pregroup_check,
    semidirect_projection,
    verify_derived_identities,
    verify_rrb,
)
from .report import Report, jsonable
from .tstruct import cyclic_reconstruct, power_formula_check, t_from_rrb, tstruct_check, tstruct_from_json, TStructure
from .ybe import DegenerateSolution, SetYBE, restrict_to_basis, roundtrip_check, structure_group, ybe_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """A precondition of the requested construction is mathematically false."""

    def __init__(self, body: dict):
        super().__init__(body.get("error", "check failed"))
        self.body = body


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _tuple_json(t) -> dict:
    return {"images": [[i + 1 for i in p.images] for p in t], "cycles": format_tuple(t)}


def _load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {path}: {e}") from None


def _parse_krange(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--krange expects LO:HI, got {text!r}") from None
    if lo > hi:
        raise UsageError("--krange needs LO <= HI")
    return range(lo, hi + 1)


def _reports(parts: dict[str, Report]) -> tuple[bool, dict]:
    return all(r.holds for r in parts.values()), {k: r.to_json() for k, r in parts.items()}


def _operator_from_args(args) -> tuple[RelRBOp, RecursiveRBOp | None]:
    seed = args.seed
    if args.tuple:
        sigma = parse_tuple(args.tuple, args.n)
        sigma_bar = parse_tuple(args.sigma_bar, len(sigma)) if args.sigma_bar else None
        if not check_pair_conditions(sigma, sigma if sigma_bar is None else sigma_bar):
            raise CheckFailed({"holds": False, "error": "the tuple violates the compatibility conditions"})
        op = RecursiveRBOp.from_sigma(sigma, sigma_bar)
        return op.as_relrb(Bounded(radius=args.bound, seed=seed)), op
    if args.semidirect:
        m, n, r = args.semidirect
        return semidirect_projection(m, n, r), None
    if args.reduction:
        m, n, r = args.reduction
        return cyclic_reduction_operator(m, n, r), None
    if args.sign:
        if args.n is None:
            raise UsageError("--sign needs --n")
        r1 = Perm.parse(args.sign[0], args.n)
        rm1 = Perm.parse(args.sign[1], args.n) if len(args.sign) > 1 else None
        return sign_rep_operator(args.n, r1, rm1, Bounded(radius=max(args.bound, 6), seed=seed)), None
    raise UsageError("give one of --tuple, --semidirect, --reduction or --sign")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_enumerate(args) -> tuple[int, dict]:
    n = args.n
    if args.pairs:
        pairs = enumerate_pairs(n)
        out = {"n": n, "pairs": True, "count": len(pairs), "unordered_count": unordered_pair_count(pairs)}
        if not args.count_only:
            out["items"] = [{"sigma": _tuple_json(s), "sigma_bar": _tuple_json(sb)} for s, sb in pairs]
    else:
        tuples = enumerate_single(n, threads=args.threads)
        out = {"n": n, "pairs": False, "count": len(tuples)}
        if not args.count_only:
            out["items"] = [_tuple_json(t) for t in tuples]
    return EXIT_OK, out


def cmd_verify(args) -> tuple[int, dict]:
    R, op = _operator_from_args(args)
    parts = {
        "rrb": verify_rrb(R),
        "derived_identities": verify_derived_identities(R),
        "graph_subgroup": graph_subgroup_check(R),
        "pregroup": pregroup_check(R),
    }
    if parts["rrb"].holds:
        parts["descendent_group"] = descendent(R, verify=False).check()
        parts["brace"] = brace_check(brace_from_rrb(R, verify=False))
        parts["tstruct"] = tstruct_check(t_from_rrb(R), _parse_krange(args.krange))
        parts["power_formula"] = power_formula_check(R)
    if op is not None:
        ok, v = well_defined(op, 4)
        parts["well_defined"] = Report("well_defined", ok, None if ok else {"v": v}, 1)
    holds, reps = _reports(parts)
    return (EXIT_OK if holds else EXIT_FAIL), {"operator": R.name, "holds": holds, "checks": reps}


def cmd_brace(args) -> tuple[int, dict]:
    R, _ = _operator_from_args(args)
    rrb = verify_rrb(R)
    if not rrb.holds:
        return EXIT_FAIL, {"operator": R.name, "holds": False, "checks": {"rrb": rrb.to_json()}}
    B = brace_from_rrb(R, verify=False)
    parts = {"rrb": rrb, "brace": brace_check(B), "gamma": gamma_check(B), "gamma_is_phi_R": gamma_matches_operator(B, R)}
    holds, reps = _reports(parts)
    out = {"operator": R.name, "holds": holds, "checks": reps}
    if R.signature.is_finite:
        out["fingerprint"] = B.fingerprint().to_json()
    return (EXIT_OK if holds else EXIT_FAIL), out


def cmd_ybe(args) -> tuple[int, dict]:
    if args.ybe_cmd == "from-tuple":
        sigma = parse_tuple(args.tuple, args.n)
        if not check_single_conditions(sigma):
            return EXIT_FAIL, {"holds": False, "error": "tuple violates the single-tuple conditions"}
        r = restrict_to_basis(sigma)
        rep = ybe_check(r)
        return (EXIT_OK if rep.holds else EXIT_FAIL), {"solution": r.to_json(), "check": rep.to_json(), "holds": rep.holds}
    obj = _load_json(args.file)
    if isinstance(obj, dict) and isinstance(obj.get("result"), dict) and "solution" in obj["result"]:
        obj = obj["result"]["solution"]  # a report written by ``from-tuple --json``
    try:
        r = SetYBE.from_json(obj)
    except DegenerateSolution as e:
        return EXIT_FAIL, {"holds": False, "error": str(e), "check": {"non_degenerate": False}}
    except (KeyError, TypeError) as e:
        raise UsageError(f"not a solution file: {e}") from None
    if args.ybe_cmd == "check":
        rep = ybe_check(r)
        return (EXIT_OK if rep.holds else EXIT_FAIL), {"solution": r.to_json(), "check": rep.to_json(), "holds": rep.holds}
    pre = ybe_check(r)
    if not pre.holds:
        return EXIT_FAIL, {"holds": False, "check": pre.to_json()}
    H = structure_group(r, args.bound)
    rep = roundtrip_check(r, args.bound, H)
    out = {
        "holds": rep.holds,
        "roundtrip": rep.to_json(),
        "bound": args.bound,
        "elements": len(H.elements),
        "stabilized": H.stabilized,
    }
    return (EXIT_OK if rep.holds else EXIT_FAIL), out


def _tstruct_from_file(obj: dict, args) -> TStructure:
    if "tuple" in obj:
        sigma = parse_tuple(obj["tuple"])
        sigma_bar = parse_tuple(obj["sigma_bar"], len(sigma)) if obj.get("sigma_bar") else None
        op = RecursiveRBOp.from_sigma(sigma, sigma_bar)
        return t_from_rrb(op.as_relrb(Bounded(radius=args.bound, seed=args.seed)))
    return tstruct_from_json(obj)


def cmd_tstruct(args) -> tuple[int, dict]:
    if args.ts_cmd == "check":
        obj = _load_json(args.file)
        try:
            T = _tstruct_from_file(obj, args)
        except (KeyError, TypeError) as e:
            raise UsageError(f"not a T-structure file: {e}") from None
        rep = tstruct_check(T, _parse_krange(args.krange))
        return (EXIT_OK if rep.holds else EXIT_FAIL), {"holds": rep.holds, "check": rep.to_json()}
    try:
        table = json.loads(args.table)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed --table: {e}") from None
    T = TStructure.cyclic(args.modulus, [int(x) for x in table])
    try:
        datum = cyclic_reconstruct(T)
    except ValueError as e:
        return EXIT_FAIL, {"holds": False, "error": str(e)}
    return EXIT_OK, {"holds": True, "datum": datum.to_json()}


def cmd_lie(args) -> tuple[int, dict]:
    reps = family_report(args.family, args.s, args.samples, args.seed)
    holds, out = _reports(reps)
    return (EXIT_OK if holds else EXIT_FAIL), {"family": args.family, "s": args.s, "holds": holds, "checks": out}


def cmd_bch(args) -> tuple[int, dict]:
    bchmod.check_degree(args.degree)
    gens = bchmod.generators(args.gens, args.degree)
    z = gens[0]
    for g in gens[1:]:
        z = bchmod.bch(z, g)
    dyn = bchmod.dynkin_report(z.poly)
    out = {"gens": args.gens, "degree": args.degree, "series": z.poly.to_json(), "dynkin": dyn.to_json(), "holds": dyn.holds}
    if args.lyndon:
        coords = bchmod.lyndon_coordinates(z)
        out["lyndon"] = {k: str(v) for k, v in coords.items()}
        out["display"] = bchmod.format_lie(z)
    return (EXIT_OK if dyn.holds else EXIT_FAIL), out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", metavar="PATH", help="also write the report to PATH")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for every sampled domain (default 42)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="cap on worker processes")
    return p


def _operator_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tuple", help="sigma tuple, e.g. '((1),(1),(12))'")
    p.add_argument("--sigma-bar", help="second tuple for a pair operator")
    p.add_argument("--n", type=int, help="degree (inferred from the tuple when omitted)")
    p.add_argument("--semidirect", type=int, nargs=3, metavar=("M", "N", "R"), help="projection Z_M x Z_N -> Z_N")
    p.add_argument("--reduction", type=int, nargs=3, metavar=("M", "N", "R"), help="reduction Z_M -> Z_N")
    p.add_argument("--sign", nargs="+", metavar="PERM", help="R(1) [R(-1)] for the sign module of S_n")
    p.add_argument("--bound", type=int, default=3, help="coordinate box radius for Z^n (default 3)")
    p.add_argument("--krange", default="-6:6", help="k window for the T-structure law")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="rrb", description="Relative Rota-Baxter operators and their derived structures.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate sigma tuples in S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pairs", action="store_true", help="distinct (sigma, sigma_bar) pairs instead")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run every operator check")
    _operator_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("brace", parents=[common], help="brace, gamma function and fingerprint of an operator")
    _operator_args(p)
    p.set_defaults(func=cmd_brace)

    p = sub.add_parser("ybe", help="set-theoretic Yang-Baxter solutions")
    ysub = p.add_subparsers(dest="ybe_cmd", required=True)
    q = ysub.add_parser("check", parents=[common])
    q.add_argument("file")
    q = ysub.add_parser("from-tuple", parents=[common])
    q.add_argument("--n", type=int)
    q.add_argument("--tuple", required=True)
    q = ysub.add_parser("roundtrip", parents=[common])
    q.add_argument("file")
    q.add_argument("--bound", type=int, default=4, help="word-length bound (default 4)")
    p.set_defaults(func=cmd_ybe)

    p = sub.add_parser("tstruct", help="T-structures")
    tsub = p.add_subparsers(dest="ts_cmd", required=True)
    q = tsub.add_parser("check", parents=[common])
    q.add_argument("file")
    q.add_argument("--krange", default="-6:6")
    q.add_argument("--bound", type=int, default=3)
    q = tsub.add_parser("reconstruct", parents=[common])
    q.add_argument("--modulus", type=int, required=True)
    q.add_argument("--table", required=True, help="JSON list [T(0), ..., T(m-1)]")
    p.set_defaults(func=cmd_tstruct)

    p = sub.add_parser("lie", help="numeric SL(2, R) checks")
    lsub = p.add_subparsers(dest="lie_cmd", required=True)
    q = lsub.add_parser("check", parents=[common])
    q.add_argument("--family", choices=FAMILIES, required=True)
    q.add_argument("--s", type=float, default=0.5)
    q.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_lie)

    p = sub.add_parser("bch", parents=[common], help="exact truncated BCH series")
    p.add_argument("--gens", type=int, default=2)
    p.add_argument("--degree", type=int, default=bchmod.DEFAULT_DEGREE)
    p.add_argument("--lyndon", action="store_true", help="add coordinates in the Lyndon basis")
    p.set_defaults(func=cmd_bch)
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    command = ["rrb"] + list(sys.argv[1:] if argv is None else argv)
    start = time.perf_counter()
    try:
        code, body = args.func(args)
    except CheckFailed as e:
        code, body = EXIT_FAIL, e.body
    except (UsageError, ValueError) as e:
        print(f"rrb: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    report = {"command": command, "seed": getattr(args, "seed", None), "exit": code, "result": jsonable(body)}
    report["wall_time"] = round(time.perf_counter() - start, 6)
    text = json.dumps(report, sort_keys=True)
    print(text, file=stdout)
    if getattr(args, "json", None):
        Path(args.json).write_text(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
