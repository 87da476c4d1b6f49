"""Command-line driver.

Every subcommand writes one JSON document (to stdout, or to ``--out``);
``--format table`` prints the same data as aligned text instead.  Inputs
are JSON files written by earlier subcommands, or ``-`` for stdin, so

    ddfdesign construct davis --p 2 --r 2 | ddfdesign develop - | ddfdesign profile -

works as a pipeline.

Exit codes: 0 ok, 2 bad parameters, 3 unreadable input or output,
4 budget exceeded (or checks skipped), 5 a check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import reproduce as repro
from .designs import develop, incidence_p_rank, intersection_profile, verify_2design
from .errors import BudgetExceeded, CertificationFailure, NotAPermutation, ParameterError
from .families import build_family
from .galois_ring import ideal_elements, make_ring
from .groups import ring_group
from .iso import DEFAULT_MAX_BLOCKS, are_isomorphic, canonical
from .serialize import (
    FormatError,
    design_from_json,
    design_to_json,
    dumps,
    family_from_json,
    family_to_json,
)
from .verification import check_edf_ddf_bridge, is_ddf, is_difference_set, is_edf, is_relative_difference_set

EXIT_OK, EXIT_PARAMS, EXIT_IO, EXIT_BUDGET, EXIT_CHECK = 0, 2, 3, 4, 5


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- input / output ---------------------------------------------------------


def _load(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError(f"cannot read {path}: {exc}", EXIT_IO) from exc


def _load_family(path: str):
    try:
        return family_from_json(_load(path))
    except (FormatError, KeyError, TypeError, ValueError) as exc:
        raise CommandError(f"{path}: not a valid family file ({exc})", EXIT_IO) from exc


def _load_design(path: str):
    try:
        return design_from_json(_load(path))
    except (FormatError, KeyError, TypeError, ValueError) as exc:
        raise CommandError(f"{path}: not a valid design file ({exc})", EXIT_IO) from exc


def _table(data: dict) -> str:
    if data.get("type") == "reproduce":
        rows = [(o["status"], o["key"], o["claim"], o["detail"]) for o in data["results"]]
        width = [max(len(r[i]) for r in rows) for i in range(3)] if rows else [0, 0, 0]
        lines = [
            f"{s:<{width[0]}}  {k:<{width[1]}}  {c:<{width[2]}}  {d}".rstrip() for s, k, c, d in rows
        ]
        return "\n".join(lines) + "\n"
    lines = []
    for key in sorted(data):
        value = data[key]
        if isinstance(value, (list, dict)) and len(json.dumps(value)) > 72:
            value = json.dumps(value)[:69] + "..."
        lines.append(f"{key:<12} {json.dumps(value) if not isinstance(value, str) else value}")
    return "\n".join(lines) + "\n"


def _emit(args, data: dict) -> None:
    text = _table(data) if args.format == "table" else dumps(data)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise CommandError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc
    else:
        sys.stdout.write(text)


def _check_budget(args, design) -> None:
    if args.budget is not None and design.b > args.budget:
        raise BudgetExceeded(f"design has {design.b} blocks, budget {args.budget}")


def _iso_kw(args) -> dict:
    return {"max_blocks": DEFAULT_MAX_BLOCKS if args.budget is None else args.budget}


# -- subcommands ------------------------------------------------------------

_KIND_PARAMS = {"wilson": ("p", "m", "e"), "momihara": ("p", "n"), "davis": ("p", "r")}


def cmd_construct(args) -> int:
    names = _KIND_PARAMS[args.kind]
    params = {n: getattr(args, n) for n in names}
    missing = [f"--{n}" for n, v in params.items() if v is None]
    if missing:
        raise CommandError(f"{args.kind} needs {' '.join(missing)}", EXIT_PARAMS)
    _emit(args, family_to_json(build_family(args.kind, **params)))
    return EXIT_OK


def cmd_verify(args) -> int:
    out = {"type": "verify", "kind": args.check}
    try:
        if args.check == "rds":
            if args.p is None or args.r is None:
                raise CommandError("rds needs --p and --r", EXIT_PARAMS)
            ctx = make_ring(args.p, args.r)
            out["params"] = {"ring": ctx.describe(), "set": "teichmuller", "subgroup": "ideal"}
            m, n, k, lam = is_relative_difference_set(ring_group(ctx), ctx.teichmuller, ideal_elements(ctx))
            out.update({"lambda": lam, "holds": True, "rds": [m, n, k, lam]})
        else:
            if args.input is None:
                raise CommandError(f"{args.check} needs a family file", EXIT_PARAMS)
            fam = _load_family(args.input)
            out["params"] = {"group": fam.group.describe(), "label": dict(fam.label), "v": fam.v, "k": fam.k}
            if args.check == "bridge":
                rep = check_edf_ddf_bridge(fam)
                out.update({
                    "lambda": rep.lambda_edf,
                    "holds": bool(rep.holds),
                    "lambda_ddf": rep.lambda_ddf,
                    "lambda_edf": rep.lambda_edf,
                    "lambda_ds": rep.lambda_ds,
                })
            else:
                fn = {
                    "ddf": is_ddf,
                    "edf": is_edf,
                    "ds": lambda f: is_difference_set(f.group, f.union()),
                }[args.check]
                out.update({"lambda": fn(fam), "holds": True})
    except CertificationFailure as exc:
        out.update({
            "lambda": None,
            "holds": False,
            "witness": {"element": exc.witness, "multiplicity": exc.multiplicity, "reason": exc.reason},
        })
    _emit(args, out)
    return EXIT_OK if out["holds"] else EXIT_CHECK


def cmd_develop(args) -> int:
    fam = _load_family(args.input)
    if args.budget is not None and fam.b * fam.v > args.budget:
        raise BudgetExceeded(f"development has {fam.b * fam.v} blocks, budget {args.budget}")
    design = develop(fam)
    try:
        lam = verify_2design(design)
    except CertificationFailure:
        lam = None
    _emit(args, design_to_json(design, lam))
    return EXIT_OK if lam is not None else EXIT_CHECK


def cmd_profile(args) -> int:
    design = _load_design(args.input)
    _check_budget(args, design)
    prof = intersection_profile(design, threads=args.threads)
    _emit(args, dict(prof.to_json(), type="profile"))
    return EXIT_OK


def cmd_rank(args) -> int:
    design = _load_design(args.input)
    _check_budget(args, design)
    ell = 2 if args.p is None else args.p
    _emit(args, {"type": "rank", "ell": ell, "rank": incidence_p_rank(design, ell), "v": design.v, "b": design.b})
    return EXIT_OK


def cmd_iso(args) -> int:
    d1, d2 = _load_design(args.first), _load_design(args.second)
    bij = are_isomorphic(d1, d2, **_iso_kw(args))
    out = {"type": "iso", "isomorphic": bij is not None}
    if bij is not None:
        out["bijection"] = bij
        if args.witness:
            try:
                Path(args.witness).write_text(dumps({"bijection": bij}))
            except OSError as exc:
                raise CommandError(f"cannot write {args.witness}: {exc}", EXIT_IO) from exc
    _emit(args, out)
    return EXIT_OK


def cmd_aut(args) -> int:
    design = _load_design(args.input)
    res = canonical(design, **_iso_kw(args))
    _emit(args, {"type": "aut", "order": res.group_order, "v": design.v, "b": design.b})
    return EXIT_OK


def cmd_reproduce(args) -> int:
    settings = repro.Settings(
        budget=repro.DEFAULT_BUDGET if args.budget is None else args.budget,
        seed=args.seed,
        threads=args.threads,
        relabelings=args.relabelings,
    )
    checks = repro.select(args.only)
    if not checks:
        raise CommandError(f"--only {args.only!r} selects no checks", EXIT_PARAMS)
    outcomes = [repro.run_check(c, settings) for c in checks]
    data = {"type": "reproduce", "results": [o.to_json() for o in outcomes]}
    if args.format == "json":
        # timings vary between runs; keep the JSON byte-stable
        for r in data["results"]:
            r.pop("seconds")
    _emit(args, data)
    return repro.exit_status(outcomes)


# -- parser -----------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--budget", type=_non_negative, default=None,
                        help="largest number of blocks a design may have")
    common.add_argument("--seed", type=int, default=0)
    for flag in ("p", "n", "r", "m", "e"):
        common.add_argument(f"--{flag}", type=int)

    parser = argparse.ArgumentParser(prog="ddfdesign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a difference family")
    p.add_argument("kind", choices=sorted(_KIND_PARAMS))
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="certify a difference structure")
    p.add_argument("check", choices=("ddf", "edf", "ds", "rds", "bridge"))
    p.add_argument("input", nargs="?", help="family file (not used by rds)")
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("develop", cmd_develop, "develop a family into a design"),
        ("profile", cmd_profile, "block intersection profile"),
        ("rank", cmd_rank, "rank of the incidence matrix mod --p (default 2)"),
        ("aut", cmd_aut, "automorphism group order"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input")
        p.set_defaults(func=func)

    p = sub.add_parser("iso", parents=[common], help="isomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--witness", help="also write {bijection: [...]} here")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("reproduce", parents=[common], help="run the reproduction suite")
    p.add_argument("--only", help="comma-separated check keys or tags (wilson, momihara, davis)")
    p.add_argument("--relabelings", type=_non_negative, default=100)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParameterError, NotAPermutation) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
