"""Command-line driver.

Subcommands::

    affqsp verify SUITE [--max-rank N] [--type T --n N --i I] [--mode prob|exact] [--seed S]
    affqsp run MANIFEST.json
    affqsp braid apply --type B --n 2 --word "s1 s2" --gen F --index 1 [--side lusztig|qsp]
    affqsp igood check --type D --n 4 --i 2 [--cross-check-braid] [--exact]
    affqsp qchar sl2 --n 4
    affqsp qchar gamma --roots-file roots.json

Exit status: 0 when every check passes (budget skips allowed), 1 on a
mathematical failure, 2 on usage or resource errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from . import checks, iqg, qchar, weyl
from .braid import lusztig_T_word, qsp_T_word
from .freealg import BAlgebra, UqAlgebra
from .uq import DegreeCapExceeded, coefficient_fields

__all__ = ["main", "run", "load_manifest", "validate_manifest"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# manifests
# ---------------------------------------------------------------------------


def _schema() -> dict:
    text = resources.files("affqsp").joinpath("manifest.schema.json").read_text()
    return json.loads(text)


def validate_manifest(data) -> None:
    import jsonschema

    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        raise UsageError(f"invalid manifest: {exc.message}") from None
    for entry in data.get("checks", []):
        if entry["suite"] not in checks.SUITES:
            raise UsageError(f"unknown suite {entry['suite']!r}")


def load_manifest(path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read manifest: {exc}") from None
    validate_manifest(data)
    return data


def _job(args):
    check_id, suite, params, mode, seed, budget = args
    for c in checks.expand_suite(suite, params):
        if c.id == check_id:
            return checks.run_check(c, mode, seed, budget)
    raise KeyError(check_id)


def run(manifest: dict, jobs: int = 1) -> tuple[int, dict]:
    """Run every check named by a manifest.  Returns ``(exit code, report)``.

    The report lists checks sorted by id; wall times are kept in a separate
    ``timings`` map so that the rest is reproducible byte for byte.
    """
    validate_manifest(manifest)
    tasks = []
    seen = set()
    for entry in manifest.get("checks", []):
        params = entry.get("params", {})
        mode = entry.get("mode", "prob")
        seed = entry.get("seed", 0)
        budget = entry.get("budget_seconds")
        try:
            expanded = checks.expand_suite(entry["suite"], params)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        for c in expanded:
            key = (c.id, mode, seed)
            if key in seen:
                continue
            seen.add(key)
            tasks.append((c, entry["suite"], params, mode, seed, budget))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_job, [(c.id, s, p, m, sd, b) for c, s, p, m, sd, b in tasks]))
    else:
        outcomes = [checks.run_check(c, m, sd, b) for c, _, _, m, sd, b in tasks]

    outcomes.sort(key=lambda o: o.id)
    statuses = [o.status for o in outcomes]
    report = {
        "checks": [o.to_dict() for o in outcomes],
        "summary": {
            "total": len(outcomes),
            "pass": statuses.count("pass"),
            "fail": statuses.count("fail"),
            "skipped": statuses.count("skipped (budget)"),
        },
        "timings": {o.id: round(o.wall_time, 3) for o in outcomes},
    }
    return (EXIT_FAIL if "fail" in statuses else EXIT_OK), report


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _emit(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


def _datum(args) -> weyl.RootDatum:
    if args.type is None or args.n is None:
        raise UsageError("--type and --n are required")
    try:
        return weyl.root_datum(args.type, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _field(args):
    mode = "exact" if getattr(args, "exact", False) else args.mode
    return coefficient_fields(mode, args.seed)[0]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    params: dict = {}
    if args.max_rank is not None:
        params["max_rank"] = args.max_rank
    if args.type is not None:
        if args.n is None:
            raise UsageError("--type needs --n")
        params["types"] = [f"{args.type.upper()}{args.n}"]
        params["families"] = [args.type.upper()]
    if args.i is not None:
        params["i"] = args.i
    if args.corrected:
        params["corrected"] = True
        params["length_formula"] = "root_sum"
    mode = "exact" if args.exact else args.mode
    entry = {"suite": args.suite, "params": params, "mode": mode, "seed": args.seed}
    if args.budget is not None:
        entry["budget_seconds"] = args.budget
    code, report = run({"checks": [entry]}, jobs=args.jobs)
    if args.type is not None and args.suite == "table1":
        report["checks"] = [c for c in report["checks"] if c["details"].get("n") == args.n]
    _emit(report, args.json)
    return code


def cmd_run(args) -> int:
    manifest = load_manifest(args.manifest)
    code, report = run(manifest, jobs=args.jobs)
    _emit(report, args.json)
    return code


def cmd_braid(args) -> int:
    datum = _datum(args)
    f = _field(args)
    word = weyl.WeylWord.parse(args.word)
    try:
        word.validate(datum)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    j = args.index
    if j not in datum.I:
        raise UsageError(f"index {j} is not a node of {datum.name}")
    check = not args.no_reduced_check
    if check and not weyl.is_reduced(datum, word):
        raise UsageError(f"{word} is not reduced; pass --no-reduced-check to apply it anyway")
    if args.side == "qsp":
        if args.gen != "B":
            raise UsageError("the QSP action applies to B generators")
        img = qsp_T_word(word, BAlgebra(datum, f).B(j), check_reduced=check)
    else:
        uq = UqAlgebra(datum, f)
        gen = {"E": uq.E, "F": uq.F, "tE": uq.tE}.get(args.gen)
        if gen is None:
            raise UsageError("the Lusztig action applies to E, F or tE")
        img = lusztig_T_word(word, gen(j), check_reduced=check)
    _emit({"type": datum.name, "word": str(word), "generator": f"{args.gen}{j}", "side": args.side,
           "terms": len(img.terms), "image": img.to_sexpr()}, args.json)
    return EXIT_OK


def cmd_igood(args) -> int:
    datum = _datum(args)
    if args.i is None or args.i not in datum.I0:
        raise UsageError("--i must be a finite node")
    f = _field(args)
    uq = UqAlgebra(datum, f)
    p = iqg.omega_prime_polynomial(datum, args.i, f)
    rep = iqg.check_i_good(p, args.i, uq, cross_check_braid=args.cross_check_braid)
    out = {"type": datum.name, "report": rep.to_dict()}
    _emit(out, args.json)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_qchar_sl2(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    a = qchar.SpectralParam.parse(args.a)
    chi = qchar.chi_q_eval_sl2(args.n, a)
    twisted = qchar.y_twist(chi)
    direct = qchar.boundary_chi_eval_sl2_direct(args.n, a)
    partner = qchar.boundary_chi_eval_sl2_direct(args.n, qchar.onsager_partner(a))
    out = {
        "n": args.n,
        "a": str(a),
        "chi_q": chi.to_list(),
        "boundary_chi": twisted.to_list(),
        "twist_matches_direct_sum": twisted == direct,
        "symmetric_under_partner": twisted == partner,
        "monomialwise_symmetric": qchar.monomial_symmetry_check(args.n, a),
    }
    _emit(out, args.json)
    ok = out["twist_matches_direct_sum"] and out["symmetric_under_partner"] and out["monomialwise_symmetric"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_qchar_gamma(args) -> int:
    try:
        data = json.loads(Path(args.roots_file).read_text())
        e = qchar.EigenData.from_json(data)
    except (OSError, json.JSONDecodeError, ValueError, AttributeError) as exc:
        raise UsageError(f"cannot read roots file: {exc}") from None
    d = data.get("d", {}) if isinstance(data, dict) else {}
    nodes = sorted(set(e.Q) | set(e.R))
    out = {"gamma": [qchar.gamma_iota(e, i, int(d.get(str(i), 1))).to_dict() for i in nodes]}
    _emit(out, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, datum: bool = True) -> None:
    if datum:
        p.add_argument("--type", choices=["A", "B", "C", "D", "a", "b", "c", "d"])
        p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=["prob", "exact"], default="prob")
    p.add_argument("--exact", action="store_true", help="shorthand for --mode exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="PATH", help="write the JSON result here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affqsp", description="Batch verifier for split affine iquantum groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one verification suite")
    v.add_argument("suite", choices=sorted(checks.SUITES))
    _common(v)
    v.add_argument("--i", type=int)
    v.add_argument("--max-rank", type=int)
    v.add_argument("--corrected", action="store_true",
                   help="use the corrected closed forms where the tabulated ones are off")
    v.add_argument("--budget", type=float, help="wall-time budget per check, in seconds")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("run", help="run a JSON manifest of checks")
    r.add_argument("manifest")
    r.add_argument("--json", metavar="PATH")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_run)

    b = sub.add_parser("braid", help="braid group actions")
    bsub = b.add_subparsers(dest="braid_cmd", required=True)
    ba = bsub.add_parser("apply", help="apply a braid word to a generator")
    _common(ba)
    ba.add_argument("--word", required=True, help='e.g. "pi1 s0 s2"')
    ba.add_argument("--gen", default="F", choices=["B", "E", "F", "tE"])
    ba.add_argument("--index", type=int, required=True)
    ba.add_argument("--side", default="lusztig", choices=["lusztig", "qsp"])
    ba.add_argument("--no-reduced-check", action="store_true")
    ba.set_defaults(func=cmd_braid)

    g = sub.add_parser("igood", help="goodness checker")
    gsub = g.add_subparsers(dest="igood_cmd", required=True)
    gc = gsub.add_parser("check", help="check the nested bracket polynomial for node i")
    _common(gc)
    gc.add_argument("--i", type=int, required=True)
    gc.add_argument("--cross-check-braid", action="store_true")
    gc.set_defaults(func=cmd_igood)

    q = sub.add_parser("qchar", help="q-characters")
    qsub = q.add_subparsers(dest="qchar_cmd", required=True)
    qs = qsub.add_parser("sl2", help="evaluation module characters and the q-Onsager symmetry")
    qs.add_argument("--n", type=int, required=True)
    qs.add_argument("--a", default="a", help='spectral parameter, e.g. "a", "C a^-1 q^2"')
    qs.add_argument("--json", metavar="PATH")
    qs.set_defaults(func=cmd_qchar_sl2)
    qg = qsub.add_parser("gamma", help="eigenvalue series from root data")
    qg.add_argument("--roots-file", required=True)
    qg.add_argument("--json", metavar="PATH")
    qg.set_defaults(func=cmd_qchar_gamma)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"affqsp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegreeCapExceeded, MemoryError) as exc:
        print(f"affqsp: resource limit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
