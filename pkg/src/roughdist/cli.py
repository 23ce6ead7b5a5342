"""Command-line front end.

Exit codes: 0 success or feasible, 2 usage or parse error, 3 infeasible or
validation failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import isqrt
from typing import Sequence

from . import counting, feasibility, figures, granular, indices, poset
from .formats import ParseError, format_subset, parse_family, parse_gos, parse_poset

OK, USAGE, FAILED, IO_ERROR = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _rational(text: str) -> Fraction:
    try:
        return feasibility.as_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", IO_ERROR) from None


def _emit(out, args, payload: dict, lines: list[str]) -> None:
    if args.json:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _q(x) -> str:
    return str(x)


# --------------------------------------------------------------------------
# feasible


def run_feasible(args, out) -> int:
    case = {"0": "Case0", "1": "Case1", "1p": "Case1PowerSet", "2": "Case2"}[args.case]
    if case != "Case2" and (args.alpha is not None or args.pi is not None):
        raise CliError("--alpha/--pi only apply to --case 2", USAGE)
    if case == "Case2" and args.alpha is not None and args.pi is not None:
        raise CliError("give either --alpha or --pi", USAGE)
    if args.trimmed and case != "Case2":
        raise CliError("--trimmed only applies to --case 2", USAGE)
    n = args.n
    try:
        if case == "Case1PowerSet":
            return _powerset(args, out, n)
        query = feasibility.FeasibilityQuery(case, n, alpha=args.alpha, pi=args.pi)
        if case == "Case2" and args.pi is None:
            return _case2_alpha(args, out, query)
        report = feasibility.solve(query)
    except feasibility.FeasibilityError as exc:
        raise CliError(str(exc), USAGE) from None

    entries = [{"k": e.k, "rough": e.rough_count, **({"pi": _q(e.pi)} if e.pi is not None else {})} for e in report.admissible]
    payload = {"case": args.case, "n": n, "admissible": entries, "infeasible_reason": report.infeasible_reason}
    lines = []
    if case == "Case2":
        count = feasibility.case2_count_values(n, args.pi, trimmed=args.trimmed)
        payload.update(pi=_q(args.pi), trimmed=args.trimmed, candidate_count=count)
        lines.append(f"case 2: n={n} pi={args.pi}")
        lines.append(f"candidate k values: {count}")
    for e in report.admissible:
        lines.append(f"k={e.k} rough={e.rough_count}" + (f" pi={e.pi}" if case == "Case2" else ""))
    if not report.admissible:
        lines.append(f"infeasible: {report.infeasible_reason}")
    _emit(out, args, payload, lines)
    return OK if report.admissible else FAILED


def _powerset(args, out, n_bound: int) -> int:
    models = feasibility.case1_powerset_models(n_bound)
    powers = n_bound.bit_length()  # number of x >= 0 with 2**x <= n_bound
    reported = feasibility.REPORTED_POWERSET_MODELS.get(n_bound)
    payload = {
        "case": "1p",
        "n_bound": n_bound,
        "models": [{"x": x, "k": k, "n": m} for x, k, m in models],
        "count": len(models),
        "powers_of_two": powers,
        "reported_count": reported,
    }
    lines = [f"x={x} k={k} n={m}" for x, k, m in models]
    lines.append(f"models: {len(models)}")
    lines.append(f"powers of two <= {n_bound}: {powers}")
    if reported is not None:
        verdict = "agrees" if reported == len(models) else "DIFFERS from the enumeration"
        lines.append(f"reported count: {reported} ({verdict})")
    _emit(out, args, payload, lines)
    return OK if models else FAILED


def _case2_alpha(args, out, query) -> int:
    n = query.n
    alpha = query.alpha if query.alpha is not None else Fraction(1)
    report = feasibility.case2_admissible_ks(n, alpha)
    lo, hi = report.bounds_used
    root = isqrt(n)
    if args.trimmed:
        hi = min(hi, root)
    count = feasibility.case2_count_values(n, alpha, trimmed=args.trimmed)
    exact = report.trimmed if args.trimmed else report.admissible
    payload = {
        "case": "2",
        "n": n,
        "alpha": _q(alpha),
        "trimmed": args.trimmed,
        "k_range": [lo, hi],
        "admissible_count": count,
        "within_alpha": [{"k": e.k, "pi": _q(e.pi), "rough": e.rough_count} for e in exact],
    }
    lines = [
        f"case 2: n={n} alpha={alpha}" + (" (trimmed to k <= floor(sqrt(n)))" if args.trimmed else ""),
        f"k range: {lo}..{hi}",
        f"admissible k values: {count}",
        f"k with exact (n-k)/(k^2-k) <= alpha: {len(exact)}",
    ]
    lines += [f"k={e.k} pi={e.pi} rough={e.rough_count}" for e in exact]
    _emit(out, args, payload, lines)
    return OK if count else FAILED


# --------------------------------------------------------------------------
# count


def run_count(args, out) -> int:
    if args.chain_cover:
        if args.g is not None:
            raise CliError("--g does not apply with --chain-cover", USAGE)
        bounds = None
        if args.min is not None or args.max is not None:
            if args.min is None or args.max is None:
                raise CliError("--min and --max go together", USAGE)
            bounds = (args.min, args.max)
        p = _load_poset(args.chain_cover)
        try:
            res = counting.chain_cover_model_count(p, args.r, bounds)
        except counting.CountingError as exc:
            raise CliError(str(exc), FAILED) from None
        payload = {
            "width": res.width,
            "chains": [[str(x) for x in ch] for ch in res.chains],
            "slots_per_chain": list(res.slots_per_chain),
            "count": res.total,
            "r": args.r,
        }
        line = str(res)
        if res.n_o is not None:
            payload.update(n_o=res.n_o, lower=res.lower, upper=res.upper)
        lines = [line]
        code = OK
        if args.verify:
            oracle = counting.placement_oracle(p, args.r, bounds)
            payload["oracle"] = oracle
            lines.append(f"oracle={oracle} {'match' if oracle == res.total else 'MISMATCH'}")
            code = OK if oracle == res.total else FAILED
        _emit(out, args, payload, lines)
        return code

    missing = [f for f in ("g", "min", "max") if getattr(args, f) is None]
    if missing:
        raise CliError("missing --" + ", --".join(missing), USAGE)
    try:
        c = counting.PartitionConstraint(args.r, args.g, args.min, args.max)
    except counting.CountingError as exc:
        raise CliError(str(exc), USAGE) from None
    report = counting.bounded_model_count(c, unordered=args.unordered)
    assert report.lower <= report.B <= report.upper
    payload = {"r": c.r, "g": c.g, "min": c.a, "max": c.b, "n_o": report.n_o, "B": report.B,
               "lower": report.lower, "upper": report.upper, "unordered": args.unordered,
               "zero_parts": report.zero_parts}
    lines = [str(report)]
    if report.zero_parts and report.n_o:
        lines.append("note: min=0 admits zero parts, which contribute 0 to B")
    _emit(out, args, payload, lines)
    return OK


# --------------------------------------------------------------------------
# index


def run_index(args, out) -> int:
    space = _load_gos(args.space)
    try:
        fw = granular.build_framework(space, args.convention)
    except granular.ConventionMismatch as exc:
        raise CliError(str(exc), FAILED) from None
    idx = indices.iota(fw.pairs())
    payload = {"n": fw.n, "k": fw.k, "rough": fw.rough_count, "convention": args.convention,
               "c0": idx.c0, "c1": idx.c1, "c_pi": idx.c_pi, "c_e": idx.c_e, "iota": idx.render()}
    lines = [f"n={fw.n} k={fw.k} rough={fw.rough_count}",
             f"c0={idx.c0} c1={idx.c1} c_pi={idx.c_pi} c_e={idx.c_e}",
             f"iota: {idx.render()}"]
    if fw.n > fw.k:
        rel = indices.iota_star(idx, fw.n, fw.k)
        payload["iota_star"] = rel.render()
        lines.append(f"iota*: {rel.render()}")
    _emit(out, args, payload, lines)
    return OK


# --------------------------------------------------------------------------
# poset, gos


def _load_poset(path: str) -> poset.FinitePoset:
    try:
        return parse_poset(_read(path))
    except ParseError as exc:
        raise CliError(f"{path}: {exc}", USAGE) from None
    except poset.PosetError as exc:
        raise CliError(f"{path}: {exc}", FAILED) from None


def _load_gos(path: str) -> granular.GranularOperatorSpace:
    try:
        return parse_gos(_read(path))
    except ParseError as exc:
        raise CliError(f"{path}: {exc}", USAGE) from None


def run_poset(args, out) -> int:
    if args.sdr:
        try:
            fam = parse_family(_read(args.sdr))
        except ParseError as exc:
            raise CliError(f"{args.sdr}: {exc}", USAGE) from None
        sdr = poset.find_sdr(fam)
        payload = {"exists": sdr is not None, "representatives": None if sdr is None else [str(x) for x in sdr]}
        lines = ["sdr: none" if sdr is None else "sdr: " + " ".join(str(x) for x in sdr)]
        _emit(out, args, payload, lines)
        return OK if sdr is not None else FAILED

    p = _load_poset(args.file)
    payload: dict = {"elements": [str(e) for e in p.elements]}
    lines: list[str] = []
    if args.validate:
        payload["valid"] = True
        lines.append(f"valid poset with {len(p)} elements")
    if args.width:
        w, anti = poset.width(p)
        payload.update(width=w, antichain=[str(x) for x in anti])
        lines.append(str(w) if not args.verbose else f"width={w} antichain={' '.join(map(str, anti))}")
    if args.cover:
        cover = poset.disjoint_chain_cover(p)
        payload["cover"] = [[str(x) for x in c] for c in cover.chains]
        lines += [" < ".join(str(x) for x in c) for c in cover.chains]
    if args.hasse:
        hi = poset.hasse_index(p)
        payload["hasse_index"] = _q(hi)
        lines.append(f"hasse index: {hi}")
    if args.grading:
        g = poset.grading(p)
        if g is None:
            a, b = poset.grading_obstruction(p)
            payload["graded"] = False
            payload["obstruction"] = [str(a), str(b)]
            lines.append(f"not graded: cover {a} < {b} breaks the level condition")
        else:
            payload["graded"] = True
            payload["rank"] = {str(x): r for x, r in g.rank.items()}
            lines += [f"rank {i}: " + " ".join(str(x) for x in p.elements if x in lvl) for i, lvl in enumerate(g.levels)]
    _emit(out, args, payload, lines)
    return OK


def run_gos(args, out) -> int:
    space = _load_gos(args.file)
    code = OK
    payload: dict = {}
    lines: list[str] = []
    if args.validate:
        rep = granular.validate_space(space)
        adm = granular.check_admissible_granulation(space)
        checks = list(rep.checks) + list(adm.checks)
        payload["checks"] = [
            {"name": c.name, "ok": c.ok, "required": c.required, "witness": [format_subset(w) for w in c.witness]}
            for c in checks
        ]
        payload["valid"] = rep.ok and adm.ok
        lines += [str(c) for c in checks]
        lines.append("valid" if rep.ok and adm.ok else "INVALID")
        if not (rep.ok and adm.ok):
            code = FAILED
    if args.classify:
        try:
            oracle = granular.oracle_classify(space)
            q = granular.rough_quotient(space)
        except (granular.GranularError, poset.PosetError) as exc:
            payload["quotient_error"] = str(exc)
            lines.append(f"no rough quotient: {exc}")
            _emit(out, args, payload, lines)
            return FAILED
        payload.update(n=oracle.n, k=oracle.k, rough=oracle.rough, classes=[
            {"pair": str(p), "members": [format_subset(m) for m in ms]} for p, ms in q.classes
        ])
        lines.append(f"n={oracle.n} k={oracle.k} rough={oracle.rough} classes={len(q)}")
        for p, ms in q.classes:
            lines.append(f"{p}: " + " ".join(format_subset(m) for m in ms))
    _emit(out, args, payload, lines)
    return code


# --------------------------------------------------------------------------
# figures


def run_figures(args, out) -> int:
    if args.fig in (1, 2, 3) and (args.n_grid or args.pi_grid):
        raise CliError("--n-grid/--pi-grid apply to figures 4 and 5", USAGE)
    if args.fig in (4, 5) and args.n_max is not None:
        raise CliError("--n-max applies to figures 1-3", USAGE)
    try:
        comments, header, rows = figures.figure_rows(args.fig, args.n_max, args.n_grid, args.pi_grid)
    except feasibility.FeasibilityError as exc:
        raise CliError(str(exc), USAGE) from None
    text = figures.render_csv(comments, header, rows)
    if args.out in (None, "-"):
        out.write(text)
        return OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc.strerror}", IO_ERROR) from None
    return OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roughdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("feasible", parents=[common], help="admissible crisp counts k for n objects")
    p.add_argument("--case", required=True, choices=["0", "1", "1p", "2"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--alpha", type=_rational, help="upper bound on the pair fraction, P/Q")
    p.add_argument("--pi", type=_rational, help="exact pair fraction, P/Q")
    p.add_argument("--trimmed", action="store_true", help="also require k <= floor(sqrt(n))")
    p.set_defaults(func=run_feasible)

    p = sub.add_parser("count", parents=[common], help="bounded model counts")
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--min", type=int)
    p.add_argument("--max", type=int)
    p.add_argument("--unordered", action="store_true", help="sum over partitions instead of compositions")
    p.add_argument("--chain-cover", metavar="FILE", help="crisp poset file with 0 and 1")
    p.add_argument("--verify", action="store_true", help="compare with the brute-force placement count")
    p.set_defaults(func=run_count)

    p = sub.add_parser("index", parents=[common], help="rough distribution index of a space")
    p.add_argument("--space", required=True, metavar="FILE")
    p.add_argument("--convention", choices=["nondefinite", "maximal"], default="nondefinite")
    p.set_defaults(func=run_index)

    p = sub.add_parser("poset", parents=[common], help="poset validation, width, chain cover, SDR")
    p.add_argument("--validate", action="store_true")
    p.add_argument("--width", action="store_true")
    p.add_argument("--cover", action="store_true")
    p.add_argument("--hasse", action="store_true")
    p.add_argument("--grading", action="store_true")
    p.add_argument("--sdr", metavar="FAMILY_FILE")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=run_poset)

    p = sub.add_parser("gos", parents=[common], help="granular operator space checks")
    p.add_argument("--validate", action="store_true")
    p.add_argument("--classify", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=run_gos)

    p = sub.add_parser("figures", parents=[common], help="CSV data for figures 1-5")
    p.add_argument("--fig", required=True, type=int, choices=[1, 2, 3, 4, 5])
    p.add_argument("--n-max", type=int)
    p.add_argument("--n-grid", type=_int_list)
    p.add_argument("--pi-grid", type=_rational_list)
    p.add_argument("--out", help="output path, '-' for standard output")
    p.set_defaults(func=run_figures)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "poset" and not args.sdr and not args.file:
        print("roughdist poset: a FILE (or --sdr FAMILY_FILE) is required", file=sys.stderr)
        return USAGE
    if args.command == "poset" and not args.sdr and not any(
        (args.validate, args.width, args.cover, args.hasse, args.grading)
    ):
        args.validate = True
    if args.command == "gos" and not (args.validate or args.classify):
        args.validate = True
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"roughdist: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
