"""Verification suites as lists of independent, named checks.

A suite expands its parameters into :class:`Check` objects.  Running a
check evaluates it once per coefficient field (one exact field, or several
random specialisations) and passes only if every evaluation passes.
"""
from __future__ import annotations

import signal
import time
from dataclasses import dataclass, field
from typing import Callable

from . import iqg, qchar, weyl
from .freealg import UqAlgebra
from .uq import DegreeCapExceeded, coefficient_fields, is_zero

__all__ = ["Check", "SUITES", "expand_suite", "run_check", "BudgetExceeded", "GRID"]

# the type/rank grid for the closed-form, goodness and compatibility suites
GRID = ("A2", "A3", "B2", "B3", "C2", "C3", "D4")

# families and rank ranges for the reduced-word table
TABLE_RANGES = {"A": (1, 6), "B": (2, 6), "C": (2, 6), "D": (4, 7)}


class BudgetExceeded(RuntimeError):
    """Raised inside a check when its wall-time budget runs out."""


@dataclass
class Check:
    id: str
    anchor: str
    fn: Callable  # (field) -> (bool, dict); field is None for field-free checks
    uses_field: bool = True
    rank: int = 0


@dataclass
class Outcome:
    id: str
    anchor: str
    status: str  # "pass" | "fail" | "skipped (budget)" | "error"
    details: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {"id": self.id, "paper_anchor": self.anchor, "status": self.status, "details": self.details}


def _parse_type(name: str) -> weyl.RootDatum:
    name = name.strip().upper()
    return weyl.root_datum(name[0], int(name[1:]))


def _types(params: dict, default) -> list[weyl.RootDatum]:
    names = params.get("types") or default
    return [_parse_type(t) for t in names]


def _indices(datum: weyl.RootDatum, params: dict) -> list[int]:
    wanted = params.get("i")
    if wanted is None:
        return list(datum.I0)
    wanted = [wanted] if isinstance(wanted, int) else list(wanted)
    return [i for i in datum.I0 if i in wanted]


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _table1(params: dict) -> list[Check]:
    max_rank = params.get("max_rank")
    families = params.get("families") or sorted(TABLE_RANGES)
    overrides = params.get("word_overrides") or {}
    use_root_sum = params.get("length_formula", "stated") == "root_sum"
    out = []
    for fam in families:
        lo, hi = TABLE_RANGES[fam]
        if max_rank is not None:
            hi = min(hi, max_rank + 1 if fam == "D" else max_rank)
        for n in range(lo, hi + 1):
            datum = weyl.root_datum(fam, n)
            for i in datum.I0:
                text = overrides.get(f"{datum.name}/{i}")
                word = weyl.WeylWord.parse(text) if text else None

                def fn(_f, datum=datum, i=i, word=word):
                    words = {i: word} if word is not None else None
                    row = next(r for r in weyl.table1_report(datum, words) if r["i"] == i)
                    if use_root_sum:
                        ok = row["reduced"] and row["is_translation"] and row["length"] == row["root_sum_length"]
                    else:
                        ok = row["pass"]
                    return ok, row

                out.append(Check(f"table1/{datum.name}/i{i}", "reduced words for fundamental weights", fn,
                                 uses_field=False, rank=n))
    return out


def _orbits(params: dict) -> list[Check]:
    max_rank = params.get("max_rank", 7)
    corrected = bool(params.get("corrected", False))
    out = []
    for fam in ("B", "C", "D"):
        lo = TABLE_RANGES[fam][0]
        for n in range(lo, max_rank + 1):
            datum = weyl.root_datum(fam, n)
            for row in weyl.verify_orbit_lemmas(datum):
                def fn(_f, row=row):
                    return (row["corrected_pass"] if corrected else row["pass"]), row

                out.append(Check(f"orbits/{datum.name}/{row['case']}", "images of simple roots under zeta words",
                                 fn, uses_field=False, rank=n))
    return out


def _fe(params: dict) -> list[Check]:
    out = []
    for datum in _types(params, ["A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4"]):
        def fn(f, datum=datum):
            rows = iqg.verify_fe_vanishing(datum, f)
            return all(r["pass"] for r in rows), {"pairs": rows}

        out.append(Check(f"fe_vanishing/{datum.name}", "F-tE commutation and one-step braid images", fn,
                         rank=datum.n))
    return out


def _rank_two(params: dict) -> list[Check]:
    out = []
    for datum in _types(params, ["B2", "C2"]):
        def fn(f, datum=datum):
            rows = iqg.verify_rank_two_braid(datum, f)
            return all(r["pass"] for r in rows), {"pairs": rows}

        out.append(Check(f"rank_two/{datum.name}", "two-step braid images on a double bond", fn, rank=datum.n))
    return out


def _closed_forms(params: dict) -> list[Check]:
    out = []
    for datum in _types(params, GRID):
        for i in _indices(datum, params):
            def fn(f, datum=datum, i=i):
                uq = UqAlgebra(datum, f)
                w = weyl.omega_prime_word(datum, i)
                _, img = iqg.qsp_image(w, i, uq)
                closed = iqg.eta(iqg.omega_prime_polynomial(datum, i, f), uq)
                return is_zero(img - closed), {"word": str(w)}

            out.append(Check(f"closed_forms/{datum.name}/i{i}", "nested bracket form of the braid image of B_i",
                             fn, rank=datum.n))
    return out


def _igood(params: dict) -> list[Check]:
    cross = params.get("cross_check_braid")
    out = []
    for datum in _types(params, GRID):
        for i in _indices(datum, params):
            def fn(f, datum=datum, i=i):
                uq = UqAlgebra(datum, f)
                p = iqg.omega_prime_polynomial(datum, i, f)
                use = datum.n <= 3 if cross is None else bool(cross)
                rep = iqg.check_i_good(p, i, uq, cross_check_braid=use)
                return rep.passed, rep.to_dict()

            out.append(Check(f"igood/{datum.name}/i{i}", "goodness of the nested bracket polynomial", fn,
                             rank=datum.n))
    return out


def _weak_compat(params: dict) -> list[Check]:
    cross = params.get("cross_check")
    out = []
    for datum in _types(params, GRID):
        for i in _indices(datum, params):
            def fn(f, datum=datum, i=i):
                use = datum.n <= 3 if cross is None else bool(cross)
                rep = iqg.weak_compat_report(datum, i, f, cross_check=use)
                return rep["pass"], rep

            out.append(Check(f"weak_compat/{datum.name}/i{i}",
                             "QSP and Lusztig braid images agree modulo the positive part", fn, rank=datum.n))
    return out


def _qi(params: dict) -> list[Check]:
    out = []
    for datum in _types(params, GRID):
        for i in _indices(datum, params):
            def fn(f, datum=datum, i=i):
                return iqg.qi_membership(datum, i, f), {}

            out.append(Check(f"qi/{datum.name}/i{i}", "correction term lies in the positive part", fn,
                             rank=datum.n))
    return out


_S8_CACHE: dict = {}


def _section8_rows(datum, f):
    key = (datum, f)
    if key not in _S8_CACHE:
        _S8_CACHE[key] = iqg.verify_section8_identities(datum, f)
    return _S8_CACHE[key]


def _section8(params: dict) -> list[Check]:
    out = []
    for datum in _types(params, ["D4", "D5"]):
        ids = ["vanish_one", "vanish_two"]
        ids += [f"commutator_{i}" for i in range(2, datum.n - 1)]
        for i in range(1, datum.n - 1):
            ids += [f"expansion_{i}", f"expansion_{i}_all_i"]
        for ident in ids:
            def fn(f, datum=datum, ident=ident):
                rows = _section8_rows(datum, f)
                row = next(r for r in rows if r["id"] == ident)
                return row["pass"], row

            out.append(Check(f"section8/{datum.name}/{ident}", "finite identities for the correction terms, type D",
                             fn, rank=datum.n))
    return out


def _chains(params: dict) -> list[Check]:
    max_len = params.get("max_length", 3)
    out = []
    for datum in _types(params, ["A3", "A4", "D4", "B3", "C3"]):
        for k in range(2, max_len + 1):
            for ch in iqg.chains(datum, k):
                def fn(f, datum=datum, ch=ch):
                    rows = iqg.verify_chain_identities(datum, ch, f)
                    return all(r["pass"] for r in rows), {"failed": [r for r in rows if not r["pass"]]}

                label = "-".join(map(str, ch))
                out.append(Check(f"chains/{datum.name}/{label}", "braid images along a type A chain", fn,
                                 rank=datum.n))
    return out


def _qchar(params: dict) -> list[Check]:
    max_n = params.get("max_n", 12)
    out = []
    for n in range(max_n + 1):
        def twist(_f, n=n):
            a = y = qchar.y_twist(qchar.chi_q_eval_sl2(n))
            return a == qchar.boundary_chi_eval_sl2_direct(n), {"terms": len(y)}

        def sym(_f, n=n):
            b = qchar.boundary_chi_eval_sl2(n)
            return b == qchar.boundary_chi_eval_sl2(n, qchar.onsager_partner(qchar.A)), {}

        def mono(_f, n=n):
            return qchar.monomial_symmetry_check(n), {}

        tag = f"n{n:02d}"
        out.append(Check(f"qchar/twist/{tag}", "boundary character as twisted q-character", twist, uses_field=False))
        out.append(Check(f"qchar/symmetry/{tag}", "q-Onsager parameter symmetry", sym, uses_field=False))
        out.append(Check(f"qchar/monomials/{tag}", "termwise q-Onsager symmetry", mono, uses_field=False))
    return out


SUITES: dict[str, Callable[[dict], list[Check]]] = {
    "table1": _table1,
    "orbits": _orbits,
    "fe_vanishing": _fe,
    "rank_two": _rank_two,
    "closed_forms": _closed_forms,
    "igood": _igood,
    "weak_compat": _weak_compat,
    "qi": _qi,
    "section8": _section8,
    "chains": _chains,
    "qchar": _qchar,
}


def expand_suite(name: str, params: dict | None = None) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](params or {})


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def _on_alarm(signum, frame):
    raise BudgetExceeded()


def run_check(check: Check, mode: str = "prob", seed: int = 0, budget: float | None = None) -> Outcome:
    """Evaluate ``check`` in every field of the mode, under an optional wall-time budget."""
    fields = coefficient_fields(mode, seed) if check.uses_field else [None]
    t0 = time.perf_counter()
    use_alarm = budget is not None and budget > 0 and hasattr(signal, "setitimer")
    if use_alarm:
        old = signal.signal(signal.SIGALRM, _on_alarm)
        signal.setitimer(signal.ITIMER_REAL, budget)
    try:
        ok, details = True, {}
        for f in fields:
            res, details = check.fn(f)
            if not res:
                ok = False
                break
        status = "pass" if ok else "fail"
    except (BudgetExceeded, DegreeCapExceeded, MemoryError) as exc:
        status, details = "skipped (budget)", {"reason": type(exc).__name__}
    finally:
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, old)
    return Outcome(check.id, check.anchor, status, _jsonable(details), time.perf_counter() - t0)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)
