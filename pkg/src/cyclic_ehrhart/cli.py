"""Command-line interface.

Exit codes: 0 success, 1 engine mismatch in ``verify``, 2 usage error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .decomp import count_signed_boxes, decomposition_table, omega_signed_count
from .ehrhart import ehrhart_polynomial, fan_simplices, volume
from .errors import BudgetExceeded, DomainError
from .numeric import ExactPolynomial, poly_eval
from .oracle import count_by_fibers, enumerate_lattice
from .polytope import CyclicPolytope, HalfSpace, ParameterSet

METHODS = ("formula", "bruteforce", "fibers", "signed-boxes")
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
_VALUE_OPTS = ("--t", "--range")


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ engines


def count_points(T: ParameterSet, d: int, m: int, method: str, budget: int | None = None) -> int:
    if method == "formula":
        value = poly_eval(ehrhart_polynomial(T, d), m)
        assert value.denominator == 1
        return value.numerator
    if method == "bruteforce":
        return enumerate_lattice(T, d, m, budget=budget).count
    if method == "fibers":
        return count_by_fibers(T, d, m)
    if method == "signed-boxes":
        return count_signed_boxes(T, d, m)
    raise UsageError(f"unknown method {method!r}")


# --------------------------------------------------------------- formatting


def _jsonable(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, ExactPolynomial):
        return {"coefficients": [str(c) for c in x.coefficients], "text": x.format()}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _fmt_halfspace(h: HalfSpace) -> str:
    terms = []
    for i, a in enumerate(h.normal, start=1):
        if a == 0:
            continue
        mag = abs(a)
        body = f"x{i}" if mag == 1 else f"{mag}*x{i}"
        terms.append(("-" if a < 0 else "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return f"{out} >= {h.offset}"


def _fmt_sign(s: int) -> str:
    return "+" if s > 0 else "-"


def _tuple(xs) -> str:
    return "(" + ",".join(map(str, xs)) + ")"


# -------------------------------------------------------------- subcommands


def cmd_ehrhart(args) -> tuple[int, object, str]:
    p = ehrhart_polynomial(args.t, args.dim)
    payload = {"T": list(args.t), "dim": args.dim, "polynomial": p}
    return EXIT_OK, payload, p.format() + "\n"


def cmd_volume(args):
    v = volume(args.t, args.dim)
    return EXIT_OK, {"T": list(args.t), "dim": args.dim, "volume": v}, f"{v}\n"


def cmd_facets(args):
    P = CyclicPolytope(args.t, args.dim)
    rows, lines = [], []
    for f in P.facets:
        rows.append(
            {
                "indices": list(f.index_set),
                "sign": f.sign,
                "normal": list(f.halfspace.normal),
                "offset": f.halfspace.offset,
            }
        )
        idx = "{" + ",".join(map(str, f.index_set)) + "}"
        lines.append(f"{idx}  {_fmt_sign(f.sign)}  {_fmt_halfspace(f.halfspace)}")
    return EXIT_OK, {"T": list(args.t), "dim": args.dim, "facets": rows}, "\n".join(lines) + "\n"


def cmd_count(args):
    c = count_points(args.t, args.dim, args.m, args.method)
    payload = {"T": list(args.t), "dim": args.dim, "m": args.m, "method": args.method, "count": c}
    return EXIT_OK, payload, f"{c}\n"


def cmd_decompose(args):
    T, d, m = args.t, args.dim, args.m
    simplices = [tuple(range(1, d + 2))] if len(T) == d + 1 else fan_simplices(T, d)
    blocks, lines, grand = [], [], 0
    for simplex in simplices:
        sub = T.subset(simplex)
        table = decomposition_table(sub, d, m)
        total = omega_signed_count(sub, d, m)
        grand += total
        blocks.append({"simplex": list(simplex), "T": list(sub), "rows": table, "total": total})
        lines.append(f"simplex T=({sub})")
        for row in table:
            lines.append(
                f"  sigma={_tuple(row['permutation'])}  sign={_fmt_sign(row['sign'])}"
                f"  box={_tuple(row['box'])}  count={row['count']}"
            )
        lines.append(f"  signed total = {total}")
    lines.append(f"total = {grand}")
    payload = {"T": list(T), "dim": d, "m": m, "simplices": blocks, "total": grand}
    return EXIT_OK, payload, "\n".join(lines) + "\n"


def sample_instances(dmax: int, trials: int, seed: int, lo: int, hi: int, mmax: int):
    """Deterministic ``(T, d, m)`` triples; duplicate draws of ``T`` are resampled."""
    width = hi - lo + 1
    if dmax < 1 or width < 2 or mmax < 1:
        raise UsageError("need dmax >= 1, mmax >= 1 and a range holding at least 2 integers")
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        d = rng.randint(1, min(dmax, width - 1))
        n = rng.randint(d + 1, min(d + 3, width))
        while True:
            ts = [rng.randint(lo, hi) for _ in range(n)]
            if len(set(ts)) == n:
                break
        out.append((tuple(sorted(ts)), d, rng.randint(1, mmax)))
    return out


def _run_trial(inst):
    ts, d, m = inst
    T = ParameterSet(ts)
    try:
        return {meth: count_points(T, d, m, meth) for meth in METHODS}
    except BudgetExceeded as exc:
        return {"budget": str(exc)}


def cmd_verify(args):
    lo, hi = args.range
    instances = sample_instances(args.dmax, args.trials, args.seed, lo, hi, args.mmax)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_trial, instances, chunksize=4))
    else:
        results = [_run_trial(inst) for inst in instances]
    lines, records, code = [], [], EXIT_OK
    for (ts, d, m), res in zip(instances, results):
        tstr = ",".join(map(str, ts))
        if "budget" in res:
            lines.append(f"BUDGET T=({tstr}) d={d} m={m}: {res['budget']}")
            records.append({"T": list(ts), "dim": d, "m": m, "budget": res["budget"]})
            code = EXIT_BUDGET
            break
        agree = len(set(res.values())) == 1
        records.append({"T": list(ts), "dim": d, "m": m, "counts": res, "agree": agree})
        if not agree:
            bad = next(k for k in METHODS if res[k] != res["formula"])
            lines.append(f"MISMATCH T=({tstr}) d={d} m={m}: {res}")
            lines.append(f"reproduce: cyclic-ehrhart count --t={tstr} --dim {d} --m {m} --method {bad}")
            code = EXIT_MISMATCH
            break
    ok = sum(1 for r in records if r.get("agree"))
    lines.append(f"verified {ok}/{len(instances)} instances across {len(METHODS)} engines")
    payload = {"seed": args.seed, "trials": args.trials, "instances": records, "ok": code == EXIT_OK}
    return code, payload, "\n".join(lines) + "\n"


# -------------------------------------------------------------------- parser


def _param_list(text: str) -> ParameterSet:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    try:
        return ParameterSet(vals)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _int_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclic-ehrhart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_dim=True):
        p.add_argument("--t", type=_param_list, required=True, help="increasing integers, e.g. 1,2,3,4")
        if with_dim:
            p.add_argument("--dim", type=_positive, required=True)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="also write the output to this file")

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial as a volume sum")
    common(p)
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("volume", help="exact volume of C_dim(T)")
    common(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("facets", help="Gale facets with signs and half-spaces")
    common(p)
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("count", help="lattice points of m*C_dim(T)")
    common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="formula")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("decompose", help="signed box decomposition table")
    common(p)
    p.add_argument("--m", type=_positive, default=1)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="randomized cross-engine check")
    p.add_argument("--dmax", type=_positive, default=3)
    p.add_argument("--trials", type=_positive, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=_int_range, default=(-5, 10))
    p.add_argument("--mmax", type=_positive, default=3)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def _join_values(argv: list[str]) -> list[str]:
    """Let ``--t -3,1,2`` and ``--range -5:10`` through argparse's dash check."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    argv = _join_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, payload, text = args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    body = dump_json(payload) if args.format == "json" else text
    stdout.write(body)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(body)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
