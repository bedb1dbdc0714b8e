"""Command line front end: ``rzeta rnum|zeta|exists|series|verify``.

Input is a JSON document::

    {"n": 2, "holonomy_rank": 2, "D": [[1, 1], [1, 0]], "d": [0, 0]}

Optional keys: ``"name"`` (label in reports) and ``"expected"`` (values the
``verify`` command checks: ``"rnum"``, ``"numerator"``, ``"denominator"``).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from . import group, oracles, zeta
from .group import INFINITE, AffineAut, Automorphism, DiagZ2Group, ValidationError
from .intlinalg import poly_divmod

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_ZETA_UNDEFINED = 4
EXIT_VERIFY_FAILED = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class JobSpec:
    n: int
    holonomy_rank: int
    D: list[list[int]]
    d: list[int]
    name: str | None = None
    expected: dict | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> JobSpec:
        try:
            n = doc["n"]
            k = doc["holonomy_rank"]
            D = doc["D"]
            d = doc.get("d", [0] * n)
        except (KeyError, TypeError) as exc:
            raise CliError(EXIT_VALIDATION, f"missing field {exc}") from None
        ints = [n, k] + list(d) + [x for row in D for x in row]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in ints):
            raise CliError(EXIT_VALIDATION, "n, holonomy_rank, D and d must hold integers")
        return cls(n, k, [list(r) for r in D], list(d), doc.get("name"), doc.get("expected"))

    def automorphism(self) -> Automorphism:
        try:
            g = DiagZ2Group(self.n, self.holonomy_rank)
            return group.validate(g, AffineAut.of(self.D, self.d))
        except ValidationError as exc:
            raise CliError(EXIT_VALIDATION, str(exc)) from None


def load_job(path: str) -> JobSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_IO, f"{path} is not valid UTF-8 JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CliError(EXIT_VALIDATION, "top level must be a JSON object")
    return JobSpec.from_dict(doc)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("RZETA_THREADS", "1")))
    except ValueError:
        return 1


def compute_rnumbers(auto: Automorphism, powers: list[int]) -> list[int | float]:
    workers = _threads()
    if workers > 1 and len(powers) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(partial(group.reidemeister_number, auto), powers))
    return [group.reidemeister_number(auto, m) for m in powers]


def _fmt_r(r) -> str:
    return "inf" if r == INFINITE else str(r)


def _parse_range(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo, hi = 1, int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad power range {text!r}; use A:B or N") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError("powers must satisfy 1 <= A <= B")
    return list(range(lo, hi + 1))


# formatting

def latex_poly(coeffs, var: str = "z") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            power = var if i == 1 else f"{var}^{{{i}}}"
            body = power if mag == 1 else f"{mag}{power}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def latex_zeta(res: zeta.ZetaResult, auto: Automorphism) -> str:
    f = res.function
    num = latex_poly(f.numerator)
    if auto.k == auto.n and res.second_factor_divides and res.combo and res.combo.coeffs:
        rest, _ = poly_divmod(list(f.denominator), list(res.second_factor.denominator))
        factors = " ".join(
            f"(1 - z{'' if i == 1 else f'^{{{i}}}'})^{{-{c}}}" if c != 1 else
            f"(1 - z{'' if i == 1 else f'^{{{i}}}'})^{{-1}}"
            for i, c in res.combo.coeffs.items())
        return f"R_\\varphi(z) = \\frac{{{num}}}{{{latex_poly([int(c) for c in rest])}}} \\, {factors}"
    return f"R_\\varphi(z) = \\frac{{{num}}}{{{latex_poly(f.denominator)}}}"


def zeta_json(res: zeta.ZetaResult, series_terms: int | None = None) -> str:
    f = res.function
    doc = {
        "numerator": list(f.numerator),
        "denominator": list(f.denominator),
        "radius": None if res.radius.is_infinite else res.radius.value,
        "radius_error": res.radius.error,
        "degree_bound": res.degree_bound,
        "certified": f.certified,
        "second_factor_c": {str(i): c for i, c in (res.combo.coeffs.items() if res.combo else [])},
    }
    if series_terms is not None:
        doc["series"] = [int(c) for c in f.series(series_terms)]
    return json.dumps(doc)


# commands

def cmd_rnum(args) -> int:
    job = load_job(args.input)
    auto = job.automorphism()
    values = compute_rnumbers(auto, args.powers)
    if args.json:
        print(json.dumps({"powers": args.powers, "rnum": [_fmt_r(r) for r in values]}))
    else:
        print("m\tR(phi^m)")
        for m, r in zip(args.powers, values):
            print(f"{m}\t{_fmt_r(r)}")
        if auto.group.has_r_infinity:
            print("# R_infinity: k = 1, every automorphism has infinitely many classes")
    return EXIT_OK


def _zeta_or_fail(auto: Automorphism) -> zeta.ZetaResult:
    try:
        return zeta.full_pipeline(auto)
    except zeta.ZetaUndefined as exc:
        raise CliError(EXIT_ZETA_UNDEFINED, f"ZETA_UNDEFINED: {exc}") from None


def cmd_zeta(args) -> int:
    auto = load_job(args.input).automorphism()
    res = _zeta_or_fail(auto)
    f = res.function
    if args.json:
        print(zeta_json(res, args.series))
        return EXIT_OK
    print(f"numerator:    {list(f.numerator)}")
    print(f"denominator:  {list(f.denominator)}")
    print(f"certified:    {str(f.certified).lower()} (degree bound {res.degree_bound}, "
          f"{res.diagnostics['terms_checked']} terms checked)")
    if res.radius.is_infinite:
        print("radius:       inf")
    else:
        print(f"radius:       {res.radius.value:.12f} (+/- {res.radius.error:g})")
    if res.combo is not None:
        print(f"second factor c_i: {res.combo.coeffs}")
    if args.series:
        print(f"series:       {[int(c) for c in f.series(args.series)]}")
    if args.latex:
        print(latex_zeta(res, auto))
    return EXIT_OK


def cmd_exists(args) -> int:
    auto = load_job(args.input).automorphism()
    ex = group.zeta_exists(auto)
    if args.json:
        print(json.dumps({"exists": ex.exists, "reason": ex.reason,
                          "cyclotomic_index": ex.cyclotomic_index}))
    else:
        print("true" if ex.exists else f"false: {ex.reason}")
    return EXIT_OK if ex.exists else EXIT_ZETA_UNDEFINED


def cmd_series(args) -> int:
    auto = load_job(args.input).automorphism()
    rn = group.reidemeister_numbers(auto, args.terms)
    try:
        series = zeta.zeta_series(rn)
    except zeta.ZetaUndefined as exc:
        raise CliError(EXIT_ZETA_UNDEFINED, f"ZETA_UNDEFINED: {exc}") from None
    coeffs = [str(c) if isinstance(c, Fraction) and c.denominator != 1 else str(int(c))
              for c in series.coeffs]
    if args.json:
        print(json.dumps({"rnum": rn, "series": coeffs}))
    else:
        print("k\tR(phi^k)\te_k")
        print(f"0\t-\t{coeffs[0]}")
        for k, (r, c) in enumerate(zip(rn, coeffs[1:]), start=1):
            print(f"{k}\t{r}\t{c}")
    return EXIT_OK


def cmd_verify(args) -> int:
    reports: list[oracles.VerifyReport] = []
    if args.inputs:
        jobs = []
        for path in args.inputs:
            job = load_job(path)
            jobs.append((job.name or path, job.automorphism(), job.expected))
        reports += oracles.verify_instances(jobs, windowed=not args.no_window)
    if args.random:
        reports += oracles.verify_random(args.random, seed=args.seed, dim=args.dim)
    if not reports:
        raise CliError(EXIT_VALIDATION, "nothing to verify: give input files or --random COUNT")
    for rep in reports:
        print(rep.line())
    failed = sum(len(r.failures) for r in reports)
    print(f"{'OK' if not failed else 'FAILED'}: {len(reports)} checks, {failed} failures")
    return EXIT_OK if not failed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rzeta", description=(
        "Reidemeister numbers and rational Reidemeister zeta functions for "
        "crystallographic groups with diagonal holonomy Z_2."))
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rnum", help="R(phi^m) for a range of powers")
    s.add_argument("input")
    s.add_argument("--powers", type=_parse_range, default=list(range(1, 11)),
                   help="A:B or N (meaning 1:N); default 1:10")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_rnum)

    s = sub.add_parser("zeta", help="certified rational zeta function")
    s.add_argument("input")
    s.add_argument("--series", type=int, metavar="N", help="also print the first N Taylor coefficients")
    s.add_argument("--latex", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("exists", help="does the zeta function exist")
    s.add_argument("input")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_exists)

    s = sub.add_parser("series", help="R(phi^k) and exact zeta series coefficients")
    s.add_argument("input")
    s.add_argument("--terms", type=int, default=12)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("verify", help="cross-check against brute-force oracles")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--random", type=int, default=0, metavar="COUNT")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dim", type=int, default=6, help="dimension cap for random instances")
    s.add_argument("--no-window", action="store_true", help="skip the windowed class count")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"rzeta: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
